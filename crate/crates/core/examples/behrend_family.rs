//! Sets without 3-term progressions lift the girth to at least 8.

use qc2d::construct::{behrend_family, behrend_set, default_config, BehrendParams, Family, GridDims};
use qc2d::graph::{girth, BlockTensor};

fn main() -> qc2d::Result<()> {
    let params = BehrendParams::with_best_norm(2, 1, 2)?;
    println!("{params:?}: set {:?}", params.set()?);
    println!("n=3, d=2, delta=2, norm 2: {:?}", behrend_set(3, 2, 2, 2)?);

    let dims = GridDims::new(7, 2, 2, 21)?;
    let cfg = default_config(Family::Behrend, dims, Some(params))?;
    println!("phi {:?}, psi {:?}", cfg.phi, cfg.psi);
    let plan = behrend_family(dims, &cfg)?;
    println!("girth {}", girth(&BlockTensor::new(plan).unfold()));
    Ok(())
}
