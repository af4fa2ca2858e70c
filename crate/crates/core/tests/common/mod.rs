//! Reference implementations used only by tests. Nothing here calls the
//! shift-pair entry logic of the library; tensors are built by applying the
//! cyclic index maps P, Q, R to the identity tensor directly.

#![allow(dead_code)]

use qc2d::construct::ShiftPlan;
use rand::Rng;

/// `P(i) = Q(i) = R(i) = i - 1 mod p`, applied `e` times.
pub fn back_shift(i: usize, e: usize, p: usize) -> usize {
    (i + p * e - e) % p
}

/// Entry of `P^a ∘ Q^b ∘ R^c (I)` at `(x, y, z)`: `I[P^a(x), Q^b(y), R^c(z)]`.
pub fn word_entry(a: usize, b: usize, c: usize, p: usize, x: usize, y: usize, z: usize) -> bool {
    let (u, v, w) = (back_shift(x, a, p), back_shift(y, b, p), back_shift(z, c, p));
    u == v && v == w
}

/// Dense `hp x (cp * bp)` unfolding with column `y * cp + x`, built from [`word_entry`].
pub fn dense_unfold(plan: &ShiftPlan) -> Vec<Vec<bool>> {
    let d = plan.dims();
    let p = d.p;
    let (w, hgt) = (d.c * p, d.b * p);
    let mut out = vec![vec![false; w * hgt]; d.h * p];
    for (row, line) in out.iter_mut().enumerate() {
        let (k, z) = (row / p, row % p);
        for y in 0..hgt {
            for x in 0..w {
                let s = plan.shift(x / p, y / p, k);
                line[y * w + x] = word_entry(s.a(), s.b(), 0, p, x % p, y % p, z);
            }
        }
    }
    out
}

/// Inner product of two layers from the closed form: `p^2`, 1 across block-layers, 0 within.
pub fn expected_layer_inner(p: usize, l1: usize, l2: usize) -> usize {
    let p2 = p * p;
    if l1 == l2 {
        p2
    } else if l1 / p2 != l2 / p2 {
        1
    } else {
        0
    }
}

pub fn rank_closed_form(p: usize, w: usize) -> usize {
    p * p + (w - 1) * (p * p - 1)
}

/// Whether a closed alternating walk exists that visits the block-columns and
/// block-layers of `steps` in order, searched directly on the dense matrix.
pub fn walk_exists(plan: &ShiftPlan, h: &[Vec<bool>], steps: &[(usize, usize, usize)]) -> bool {
    let d = plan.dims();
    let p = d.p;
    let width = d.c * p;
    let vars = |(i, j): (usize, usize)| -> Vec<usize> {
        (0..p).flat_map(|dy| (0..p).map(move |dx| (j * p + dy) * width + i * p + dx)).collect()
    };
    let layers = |k: usize| (k * p * p)..((k + 1) * p * p);
    let g = steps.len();
    fn go(
        m: usize,
        v: usize,
        v0: usize,
        g: usize,
        h: &[Vec<bool>],
        steps: &[(usize, usize, usize)],
        vars: &dyn Fn((usize, usize)) -> Vec<usize>,
        layers: &dyn Fn(usize) -> std::ops::Range<usize>,
    ) -> bool {
        for l in layers(steps[m].2) {
            if !h[l][v] {
                continue;
            }
            if m + 1 == g {
                if h[l][v0] {
                    return true;
                }
                continue;
            }
            let (i, j, _) = steps[m + 1];
            for nv in vars((i, j)) {
                if h[l][nv] && go(m + 1, nv, v0, g, h, steps, vars, layers) {
                    return true;
                }
            }
        }
        false
    }
    let (i0, j0, _) = steps[0];
    vars((i0, j0)).into_iter().any(|v0| go(0, v0, v0, g, h, steps, &vars, &layers))
}

/// Every closed path of half-length `g` (2 or 3) on the plan's grid.
pub fn all_paths(plan: &ShiftPlan, g: usize) -> Vec<Vec<(usize, usize, usize)>> {
    let d = plan.dims();
    let cols: Vec<(usize, usize)> = (0..d.c).flat_map(|i| (0..d.b).map(move |j| (i, j))).collect();
    let nk = d.block_layers();
    let mut out = Vec::new();
    let mut idx = vec![0usize; g];
    let mut ks = vec![0usize; g];
    let total_c = cols.len().pow(g as u32);
    let total_k = nk.pow(g as u32);
    for mut code in 0..total_c {
        for slot in idx.iter_mut() {
            *slot = code % cols.len();
            code /= cols.len();
        }
        if (0..g).any(|m| idx[m] == idx[(m + 1) % g]) {
            continue;
        }
        for mut kc in 0..total_k {
            for slot in ks.iter_mut() {
                *slot = kc % nk;
                kc /= nk;
            }
            if (0..g).any(|m| ks[m] == ks[(m + 1) % g]) {
                continue;
            }
            out.push((0..g).map(|m| (cols[idx[m]].0, cols[idx[m]].1, ks[m])).collect());
        }
    }
    out
}

pub fn naive_rank(mut m: Vec<Vec<u8>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] == 1) else { continue };
        m.swap(p, rank);
        for r in 0..rows {
            if r != rank && m[r][c] == 1 {
                for k in 0..cols {
                    m[r][k] ^= m[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn random_bits<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Vec<Vec<u8>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.random_range(0..2u8)).collect()).collect()
}
