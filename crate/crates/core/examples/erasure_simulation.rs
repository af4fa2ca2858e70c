//! Monte Carlo erasure rates, reproducible from a seed.

use qc2d::construct::{default_config, prime_family, Family, GridDims};
use qc2d::erasure::{reports_to_csv, simulate, ErasureModel};
use qc2d::graph::BlockTensor;

fn main() -> qc2d::Result<()> {
    let p = 5;
    let t = BlockTensor::new(prime_family(p, &default_config(Family::Prime, GridDims::prime(p)?, None)?)?);
    let mut reports = Vec::new();
    for epsilon in [0.05, 0.1, 0.2, 0.3] {
        reports.push(simulate(&t, ErasureModel::Iid { epsilon }, 2000, 42)?);
    }
    for s in [5, 6, 8] {
        reports.push(simulate(&t, ErasureModel::Burst { s, t: s }, 2000, 42)?);
    }
    print!("{}", reports_to_csv(&reports));
    Ok(())
}
