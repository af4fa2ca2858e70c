//! Composite sizes: any `p >= 3` works once the block grid is small enough.

use qc2d::construct::{composite_family, default_config, Family, GridDims};
use qc2d::graph::{girth, BlockTensor};

fn main() -> qc2d::Result<()> {
    for (p, c, b, h) in [(4, 2, 2, 8), (6, 2, 3, 12), (9, 3, 3, 27)] {
        let dims = GridDims::new(p, c, b, h)?;
        let plan = composite_family(dims, &default_config(Family::Composite, dims, None)?)?;
        let g = girth(&BlockTensor::new(plan).unfold());
        println!("p={p} grid {c}x{b}x{h}: length {}, girth {g}", dims.code_length());
    }

    // too many block-columns for p = 4
    let dims = GridDims::new(4, 5, 2, 8)?;
    match composite_family(dims, &default_config(Family::Composite, dims, None)?) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
