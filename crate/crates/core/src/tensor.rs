//! Permutation tensors of size `p x p x p`.
//!
//! The identity tensor has ones exactly on `x = y = z`. Cyclic shifts along
//! x and y (the `P` and `Q` operators) move that diagonal; a z-shift (`R`) is
//! always expressible through the other two, so a shifted tensor is fully
//! described by the pair of x/y shift residues. Tensors are never stored
//! densely: every query is answered from `(a, b, p)`.

use crate::error::{check_index, Error, Result};

/// Shift residues `(a, b)` of `P^a ∘ Q^b` applied to the identity tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShiftPair {
    a: usize,
    b: usize,
    p: usize,
}

impl ShiftPair {
    pub fn new(a: usize, b: usize, p: usize) -> Result<Self> {
        if p < 3 {
            return Err(Error::InvalidParameter(format!("block size p = {p} must be at least 3")));
        }
        check_index("x-shift", a, p)?;
        check_index("y-shift", b, p)?;
        Ok(ShiftPair { a, b, p })
    }

    /// X-shift residue.
    #[inline]
    pub fn a(&self) -> usize {
        self.a
    }

    /// Y-shift residue.
    #[inline]
    pub fn b(&self) -> usize {
        self.b
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.p
    }

    /// The single one in local layer `z`, as `(x, y)`.
    #[inline]
    pub fn one_in_layer(&self, z: usize) -> (usize, usize) {
        ((z + self.a) % self.p, (z + self.b) % self.p)
    }

    /// Local layer through which local position `(x, y)` touches this tensor, if any.
    #[inline]
    pub fn layer_through(&self, x: usize, y: usize) -> Option<usize> {
        let p = self.p;
        let z = (x + p - self.a) % p;
        ((z + self.b) % p == y).then_some(z)
    }
}

fn check_coords(p: usize, x: usize, y: usize, z: usize) -> Result<()> {
    check_index("x", x, p)?;
    check_index("y", y, p)?;
    check_index("z", z, p)
}

/// Entry of the `p x p x p` identity tensor.
pub fn identity_entry(p: usize, x: usize, y: usize, z: usize) -> Result<bool> {
    check_coords(p, x, y, z)?;
    Ok(x == y && y == z)
}

/// Entry of `P^a ∘ Q^b(I)`: one iff `x ≡ z + a` and `y ≡ z + b` (mod p).
pub fn shifted_entry(s: ShiftPair, x: usize, y: usize, z: usize) -> Result<bool> {
    check_coords(s.p, x, y, z)?;
    Ok(s.one_in_layer(z) == (x, y))
}

/// Canonical shift pair of the word `P^a ∘ Q^b ∘ R^c`.
///
/// A z-shift by `c` equals x- and y-shifts by `-c`, so the word collapses to
/// `((a - c) mod p, (b - c) mod p)`. Exponents are taken mod `p`.
pub fn reduce_pqr(a: usize, b: usize, c: usize, p: usize) -> Result<ShiftPair> {
    if p < 3 {
        return Err(Error::InvalidParameter(format!("block size p = {p} must be at least 3")));
    }
    let (a, b, c) = (a % p, b % p, c % p);
    ShiftPair::new((a + p - c) % p, (b + p - c) % p, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_entries() {
        assert!(identity_entry(3, 2, 2, 2).unwrap());
        assert!(!identity_entry(3, 0, 1, 0).unwrap());
        let mut total = 0;
        for x in 0..5 {
            for y in 0..5 {
                for z in 0..5 {
                    total += identity_entry(5, x, y, z).unwrap() as usize;
                }
            }
        }
        assert_eq!(total, 5);
        assert!(identity_entry(3, 3, 0, 0).is_err());
    }

    #[test]
    fn shifted_entries() {
        let s = ShiftPair::new(0, 0, 3).unwrap();
        assert!(shifted_entry(s, 1, 1, 1).unwrap());
        let s = ShiftPair::new(1, 0, 3).unwrap();
        assert!(shifted_entry(s, 1, 0, 0).unwrap());
        assert!(!shifted_entry(s, 0, 0, 0).unwrap());
        assert!(shifted_entry(s, 0, 0, 5).is_err());
    }

    #[test]
    fn one_per_layer() {
        let s = ShiftPair::new(2, 4, 5).unwrap();
        for z in 0..5 {
            let mut count = 0;
            for x in 0..5 {
                for y in 0..5 {
                    count += shifted_entry(s, x, y, z).unwrap() as usize;
                }
            }
            assert_eq!(count, 1);
        }
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_pqr(0, 0, 1, 3).unwrap(), ShiftPair::new(2, 2, 3).unwrap());
        assert_eq!(reduce_pqr(1, 2, 0, 5).unwrap(), ShiftPair::new(1, 2, 5).unwrap());
        assert!(reduce_pqr(0, 0, 0, 2).is_err());
    }

    #[test]
    fn shift_pair_validation() {
        assert!(ShiftPair::new(3, 0, 3).is_err());
        assert!(ShiftPair::new(0, 3, 3).is_err());
        assert!(ShiftPair::new(0, 0, 2).is_err());
    }

    #[test]
    fn layer_through_inverts_one_in_layer() {
        let s = ShiftPair::new(3, 1, 7).unwrap();
        for z in 0..7 {
            let (x, y) = s.one_in_layer(z);
            assert_eq!(s.layer_through(x, y), Some(z));
        }
        let hits = (0..7)
            .flat_map(|x| (0..7).map(move |y| (x, y)))
            .filter(|&(x, y)| s.layer_through(x, y).is_some())
            .count();
        assert_eq!(hits, 7);
    }
}
