//! Shifted permutation tensors and the reduction of `P^a Q^b R^c` words.

use qc2d::tensor::{reduce_pqr, shifted_entry, ShiftPair};

fn main() -> qc2d::Result<()> {
    let p = 5;
    let s = ShiftPair::new(2, 3, p)?;
    println!("P^2 Q^3 (I) at p = {p}, one entry per layer:");
    for z in 0..p {
        let (x, y) = s.one_in_layer(z);
        assert!(shifted_entry(s, x, y, z)?);
        println!("  layer {z}: ({x}, {y})");
    }

    for (a, b, c) in [(1, 2, 1), (4, 0, 3), (3, 3, 3)] {
        let r = reduce_pqr(a, b, c, p)?;
        println!("P^{a} Q^{b} R^{c} = P^{} Q^{}", r.a(), r.b());
    }
    Ok(())
}
