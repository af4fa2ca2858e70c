//! Burst certificate and exhaustive peeling of every anchored burst.

use qc2d::construct::{default_config, prime_family, Family, GridDims};
use qc2d::erasure::{burst_correctable, burst_sweep, peel, ErasurePattern};
use qc2d::graph::BlockTensor;

fn main() -> qc2d::Result<()> {
    let p = 3;
    let t = BlockTensor::new(prime_family(p, &default_config(Family::Prime, GridDims::prime(p)?, None)?)?);
    for s in 1..=p + 1 {
        println!("{s}x{s} certificate: {}", burst_correctable(&t, s, s)?);
    }
    let sweep = burst_sweep(&t, p, p, false)?;
    println!("{} anchors, {} failed", sweep.anchors, sweep.failed_anchors.len());

    let h = t.unfold();
    let n = p * p;
    let burst = ErasurePattern::burst(n, n, (0, 0), 4, 4, false)?;
    let out = peel(&h, &burst)?;
    println!("4x4 corner burst: {} recovered, {} left", out.recovered.len(), out.residual.len());
    Ok(())
}
