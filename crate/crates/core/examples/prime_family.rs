//! Prime-field construction: `p^2 x p^2 x p^2` blocks, girth and layer ranks.

use qc2d::construct::{default_config, prime_family, Family, GridDims};
use qc2d::graph::{girth, tensor_rank, BlockTensor};

fn main() -> qc2d::Result<()> {
    let p: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let dims = GridDims::prime(p)?;
    let plan = prime_family(p, &default_config(Family::Prime, dims, None)?)?;
    let t = BlockTensor::new(plan);
    let h = t.unfold();
    println!("p = {p}: H is {} x {}, row weight {}, column weight {}", h.rows(), h.cols(), dims.c * dims.b, dims.block_layers());
    println!("girth {}", girth(&h));
    for w in 1..=dims.block_layers() {
        let layers: Vec<usize> = (0..w).collect();
        println!("rank of {w} block-layer(s): {}", tensor_rank(&t, &layers)?);
    }
    Ok(())
}
