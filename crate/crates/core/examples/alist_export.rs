//! Write the parity-check matrix in alist format and read it back.

use qc2d::alist::{from_alist, to_alist};
use qc2d::construct::{default_config, prime_family, Family, GridDims};
use qc2d::graph::BlockTensor;

fn main() -> qc2d::Result<()> {
    let h = BlockTensor::new(prime_family(3, &default_config(Family::Prime, GridDims::prime(3)?, None)?)?).unfold();
    let text = to_alist(&h);
    for line in text.lines().take(4) {
        println!("{line}");
    }
    println!("... {} lines", text.lines().count());
    assert_eq!(from_alist(&text)?, h);
    Ok(())
}
