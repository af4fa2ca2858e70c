//! Entanglement-assisted codes from block-layers of the prime family.

use qc2d::construct::{default_config, prime_family, Family, GridDims};
use qc2d::quantum::{family_one, family_two};

fn main() -> qc2d::Result<()> {
    for p in [3, 5] {
        let plan = prime_family(p, &default_config(Family::Prime, GridDims::prime(p)?, None)?)?;
        println!("p = {p}");
        println!("  two constituents, {{0}} and {{1}}: {}", family_one(&plan, &[0], &[1])?);
        println!("  two constituents, {{0}} and {{1,2}}: {}", family_one(&plan, &[0], &[1, 2])?);
        for w in 1..=p {
            let layers: Vec<usize> = (0..w).collect();
            println!("  one constituent, w = {w}: {}", family_two(&plan, &layers)?);
        }
    }
    Ok(())
}
