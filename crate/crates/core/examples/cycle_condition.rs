//! Decide whether a closed block path carries a cycle without building H.

use qc2d::construct::{default_config, prime_family, Family, GridDims, ShiftPlan};
use qc2d::graph::{cycle_exists_on_path, girth, BlockTensor, ClosedPath};

fn main() -> qc2d::Result<()> {
    let dims = GridDims::prime(3)?;
    let good = prime_family(3, &default_config(Family::Prime, dims, None)?)?;
    // constant shifts put a 4-cycle on every pair of blocks
    let flat = ShiftPlan::from_fn(Family::Custom, dims, |_, _, _| (0, 0))?;

    let path = ClosedPath::new(vec![(0, 0, 0), (1, 0, 1)])?;
    for (name, plan) in [("prime", &good), ("flat", &flat)] {
        let closes = cycle_exists_on_path(plan, &path)?;
        let g = girth(&BlockTensor::new(plan.clone()).unfold());
        println!("{name}: 4-cycle on {:?}: {closes}, girth {g}", path.steps());
    }
    Ok(())
}
