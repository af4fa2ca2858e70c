//! The parity-check tensor as a whole: unfolding to a matrix, Tanner-graph
//! girth, the closed-path cycle condition, layer inner products and ranks of
//! block-layer selections.

use std::collections::VecDeque;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::construct::{GridDims, ShiftPlan};
use crate::error::{check_index, Error, Result};
use crate::gf2::BitMatrix;

/// Parity-check tensor of extent `cp x bp x hp`, answered from its shift plan.
///
/// Horizontal layer `l` (fixed z) is one parity check; it lies in tensor
/// k-index `l / p` and horizontal block-layer `l / p^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTensor {
    plan: ShiftPlan,
}

impl BlockTensor {
    pub fn new(plan: ShiftPlan) -> Self {
        BlockTensor { plan }
    }

    pub fn plan(&self) -> &ShiftPlan {
        &self.plan
    }

    pub fn dims(&self) -> GridDims {
        self.plan.dims()
    }

    pub fn entry(&self, x: usize, y: usize, z: usize) -> Result<bool> {
        let d = self.dims();
        check_index("x", x, d.width())?;
        check_index("y", y, d.height())?;
        check_index("z", z, d.layers())?;
        let p = d.p;
        let s = self.plan.shift(x / p, y / p, z / p);
        Ok(s.one_in_layer(z % p) == (x % p, y % p))
    }

    /// Positions `(x, y)` of the ones in horizontal layer `l`, one per block-column.
    pub fn layer_positions(&self, l: usize) -> Vec<(usize, usize)> {
        let d = self.dims();
        let p = d.p;
        let (k, z) = (l / p, l % p);
        let mut out = Vec::with_capacity(d.c * d.b);
        for i in 0..d.c {
            for j in 0..d.b {
                let (x, y) = self.plan.shift(i, j, k).one_in_layer(z);
                out.push((i * p + x, j * p + y));
            }
        }
        out
    }

    /// Horizontal layers containing a one at codeword position `(x, y)`.
    pub fn layers_through(&self, x: usize, y: usize) -> Vec<usize> {
        let d = self.dims();
        let p = d.p;
        (0..d.h)
            .filter_map(|k| {
                self.plan
                    .shift(x / p, y / p, k)
                    .layer_through(x % p, y % p)
                    .map(|z| k * p + z)
            })
            .collect()
    }

    /// Matrix column of codeword position `(x, y)`: `y * cp + x`.
    #[inline]
    pub fn column_of(&self, x: usize, y: usize) -> usize {
        y * self.dims().width() + x
    }

    /// Inverse of [`column_of`](Self::column_of).
    #[inline]
    pub fn position_of(&self, col: usize) -> (usize, usize) {
        let w = self.dims().width();
        (col % w, col / w)
    }

    /// Unfolds to the `hp x cbp^2` parity-check matrix; row `z` is layer `z`.
    pub fn unfold(&self) -> BitMatrix {
        let layers: Vec<usize> = (0..self.dims().layers()).collect();
        self.unfold_layers(&layers)
    }

    /// Rows of the unfolded matrix for the given horizontal block-layers, in order.
    pub fn unfold_block_layers(&self, block_layers: &[usize]) -> Result<BitMatrix> {
        let d = self.dims();
        let per = d.p * d.p;
        let mut layers = Vec::with_capacity(block_layers.len() * per);
        for &bl in block_layers {
            check_index("block-layer", bl, d.block_layers())?;
            layers.extend(bl * per..(bl + 1) * per);
        }
        Ok(self.unfold_layers(&layers))
    }

    fn unfold_layers(&self, layers: &[usize]) -> BitMatrix {
        let mut m = BitMatrix::zeros(layers.len(), self.dims().code_length());
        for (row, &l) in layers.iter().enumerate() {
            for (x, y) in self.layer_positions(l) {
                m.set(row, self.column_of(x, y), true);
            }
        }
        m
    }
}

/// Length of the shortest Tanner-graph cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    /// True when every cycle is strictly longer than `len`.
    pub fn exceeds(self, len: usize) -> bool {
        match self {
            Girth::Finite(g) => g > len,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("infinite"),
        }
    }
}

/// Exact girth of the Tanner graph of `h` (columns are variable nodes, rows
/// are check nodes). BFS from every node of the smaller side; the search
/// from each start is cut off once it can no longer beat the best cycle seen.
pub fn girth(h: &BitMatrix) -> Girth {
    let (m, n) = (h.rows(), h.cols());
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); m + n];
    for r in 0..m {
        for c in h.row_support(r) {
            adj[r].push((m + c) as u32);
            adj[m + c].push(r as u32);
        }
    }
    let starts: Vec<usize> = if m <= n { (0..m).collect() } else { (m..m + n).collect() };
    let best = AtomicUsize::new(usize::MAX);
    starts.par_iter().for_each_init(
        || (vec![u32::MAX; m + n], vec![u32::MAX; m + n], Vec::new()),
        |(dist, parent, touched), &s| {
            for &v in touched.iter() {
                dist[v] = u32::MAX;
                parent[v] = u32::MAX;
            }
            touched.clear();
            let mut queue = VecDeque::new();
            dist[s] = 0;
            touched.push(s);
            queue.push_back(s);
            let mut local = usize::MAX;
            while let Some(u) = queue.pop_front() {
                let du = dist[u] as usize;
                if 2 * du + 2 > local.min(best.load(Ordering::Relaxed)) {
                    break;
                }
                for &v in &adj[u] {
                    let v = v as usize;
                    if dist[v] == u32::MAX {
                        dist[v] = du as u32 + 1;
                        parent[v] = u as u32;
                        touched.push(v);
                        queue.push_back(v);
                    } else if parent[u] as usize != v {
                        local = local.min(du + dist[v] as usize + 1);
                    }
                }
            }
            best.fetch_min(local, Ordering::Relaxed);
        },
    );
    match best.into_inner() {
        usize::MAX => Girth::Infinite,
        g => Girth::Finite(g),
    }
}

/// Closed alternating path of block-columns and horizontal block-layers:
/// `(i_0,j_0,k_0),(i_1,j_1,k_0); (i_1,j_1,k_1),(i_2,j_2,k_1); ...; (i_{g-1},j_{g-1},k_{g-1}),(i_0,j_0,k_{g-1})`.
///
/// Stored as `g` triples `(i_m, j_m, k_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedPath {
    steps: Vec<(usize, usize, usize)>,
}

impl ClosedPath {
    pub fn new(steps: Vec<(usize, usize, usize)>) -> Result<Self> {
        let g = steps.len();
        if g < 2 {
            return Err(Error::InvalidParameter(format!("closed path needs g >= 2 steps, got {g}")));
        }
        for m in 0..g {
            let (i0, j0, k0) = steps[m];
            let (i1, j1, k1) = steps[(m + 1) % g];
            if (i0, j0) == (i1, j1) {
                return Err(Error::InvalidParameter(format!(
                    "steps {m} and {} share block-column ({i0},{j0})",
                    (m + 1) % g
                )));
            }
            if k0 == k1 {
                return Err(Error::InvalidParameter(format!(
                    "steps {m} and {} share block-layer {k0}",
                    (m + 1) % g
                )));
            }
        }
        Ok(ClosedPath { steps })
    }

    /// Half the cycle length.
    pub fn g(&self) -> usize {
        self.steps.len()
    }

    pub fn steps(&self) -> &[(usize, usize, usize)] {
        &self.steps
    }
}

/// Whether the Tanner graph has a `2g`-cycle running along `path`.
///
/// Searches every choice of tensor k-indices `kbar_m` inside block-layer
/// `k_m` (p^g choices). A choice closes a cycle iff the x- and y-shift
/// differences both sum to zero mod p, and each intermediate block-column
/// can be entered and left through the same variable node, i.e.
/// `a - b` agrees on the two tensors it touches.
pub fn cycle_exists_on_path(plan: &ShiftPlan, path: &ClosedPath) -> Result<bool> {
    let d = plan.dims();
    let p = d.p;
    for &(i, j, k) in path.steps() {
        check_index("i", i, d.c)?;
        check_index("j", j, d.b)?;
        check_index("block-layer", k, d.block_layers())?;
    }
    let g = path.g();
    let steps = path.steps();
    let col = |m: usize| (steps[m % g].0, steps[m % g].1);
    let mut offsets = vec![0usize; g];
    loop {
        let kbar = |m: usize| steps[m].2 * p + offsets[m];
        let mut sum_a = 0usize;
        let mut sum_b = 0usize;
        let mut connected = true;
        for m in 0..g {
            let (i0, j0) = col(m);
            let (i1, j1) = col(m + 1);
            let here = plan.shift(i0, j0, kbar(m));
            let next = plan.shift(i1, j1, kbar(m));
            sum_a += here.a() + p - next.a();
            sum_b += here.b() + p - next.b();
            // the variable node in column m+1 is shared by tensors kbar(m) and kbar(m+1)
            if m + 1 < g {
                let after = plan.shift(i1, j1, kbar(m + 1));
                if (next.a() + p - next.b()) % p != (after.a() + p - after.b()) % p {
                    connected = false;
                    break;
                }
            }
        }
        if connected && sum_a.is_multiple_of(p) && sum_b.is_multiple_of(p) {
            return Ok(true);
        }
        let mut pos = 0;
        while pos < g && offsets[pos] == p - 1 {
            offsets[pos] = 0;
            pos += 1;
        }
        if pos == g {
            return Ok(false);
        }
        offsets[pos] += 1;
    }
}

/// Integer inner product of horizontal layers `l1` and `l2`.
pub fn layer_inner(t: &BlockTensor, l1: usize, l2: usize) -> Result<usize> {
    let layers = t.dims().layers();
    check_index("layer", l1, layers)?;
    check_index("layer", l2, layers)?;
    let mut a = t.layer_positions(l1);
    let mut b = t.layer_positions(l2);
    a.sort_unstable();
    b.sort_unstable();
    let (mut ia, mut ib, mut count) = (0, 0, 0);
    while ia < a.len() && ib < b.len() {
        match a[ia].cmp(&b[ib]) {
            std::cmp::Ordering::Less => ia += 1,
            std::cmp::Ordering::Greater => ib += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                ia += 1;
                ib += 1;
            }
        }
    }
    Ok(count)
}

/// GF(2) rank of the layers in the selected horizontal block-layers.
pub fn tensor_rank(t: &BlockTensor, block_layers: &[usize]) -> Result<usize> {
    if block_layers.is_empty() {
        return Err(Error::InvalidParameter("block-layer selection is empty".into()));
    }
    let mut sorted = block_layers.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("block-layer selection has duplicates".into()));
    }
    Ok(t.unfold_block_layers(block_layers)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{
        behrend_family, default_config, prime_family, BehrendParams, Family, GridDims,
    };

    fn prime3() -> BlockTensor {
        let cfg = default_config(Family::Prime, GridDims::prime(3).unwrap(), None).unwrap();
        BlockTensor::new(prime_family(3, &cfg).unwrap())
    }

    #[test]
    fn unfold_shape_and_weights() {
        let t = prime3();
        let h = t.unfold();
        assert_eq!((h.rows(), h.cols()), (27, 81));
        assert!(h.row_weights().iter().all(|&w| w == 9));
        // each block-layer touches every position exactly once
        assert!(h.col_weights().iter().all(|&w| w == 3));
    }

    #[test]
    fn unfold_single_identity_block() {
        let dims = GridDims::new(3, 1, 1, 3).unwrap();
        let plan = ShiftPlan::from_fn(Family::Custom, dims, |_, _, _| (0, 0)).unwrap();
        let h = BlockTensor::new(plan).unfold();
        assert_eq!((h.rows(), h.cols()), (9, 9));
        assert!(h.row_weights().iter().all(|&w| w == 1));
    }

    #[test]
    fn unfold_round_trip() {
        let t = prime3();
        let h = t.unfold();
        for z in 0..27 {
            for col in 0..81 {
                let (x, y) = t.position_of(col);
                assert_eq!(t.column_of(x, y), col);
                assert_eq!(h.get(z, col), t.entry(x, y, z).unwrap());
            }
        }
        assert!(t.entry(9, 0, 0).is_err());
    }

    #[test]
    fn layers_through_matches_columns() {
        let t = prime3();
        let cols = t.unfold().col_supports();
        for (col, rows) in cols.iter().enumerate() {
            let (x, y) = t.position_of(col);
            assert_eq!(&t.layers_through(x, y), rows);
        }
    }

    #[test]
    fn girth_small_cases() {
        assert_eq!(girth(&BitMatrix::ones(2, 2)), Girth::Finite(4));
        assert_eq!(girth(&BitMatrix::identity(5)), Girth::Infinite);
        assert_eq!(girth(&BitMatrix::zeros(0, 0)), Girth::Infinite);
        // 6-cycle: three checks on three variables in a ring
        let ring = BitMatrix::from_rows(&[[1, 1, 0], [0, 1, 1], [1, 0, 1]]).unwrap();
        assert_eq!(girth(&ring), Girth::Finite(6));
        let tree = BitMatrix::from_rows(&[[1, 1, 1, 0], [0, 0, 1, 1]]).unwrap();
        assert_eq!(girth(&tree), Girth::Infinite);
        assert!(Girth::Finite(6).exceeds(4) && !Girth::Finite(4).exceeds(4) && Girth::Infinite.exceeds(100));
    }

    #[test]
    fn girth_of_families() {
        assert!(girth(&prime3().unfold()).exceeds(4));
        let dims = GridDims::new(7, 2, 2, 21).unwrap();
        let params = BehrendParams { n: 2, k_norm: 1, d: 1, delta: 2 };
        let cfg = default_config(Family::Behrend, dims, Some(params)).unwrap();
        let t = BlockTensor::new(behrend_family(dims, &cfg).unwrap());
        assert!(girth(&t.unfold()).exceeds(6));
    }

    #[test]
    fn closed_path_validation() {
        assert!(ClosedPath::new(vec![(0, 0, 0)]).is_err());
        assert!(ClosedPath::new(vec![(0, 0, 0), (0, 0, 1)]).is_err());
        assert!(ClosedPath::new(vec![(0, 0, 0), (1, 0, 0)]).is_err());
        assert!(ClosedPath::new(vec![(0, 0, 0), (1, 0, 1), (0, 0, 2)]).is_err());
        assert!(ClosedPath::new(vec![(0, 0, 0), (1, 0, 1)]).is_ok());
    }

    #[test]
    fn no_four_paths_close_on_prime_family() {
        let t = prime3();
        let cols: Vec<(usize, usize)> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
        for &c0 in &cols {
            for &c1 in &cols {
                for k0 in 0..3 {
                    for k1 in 0..3 {
                        if c0 == c1 || k0 == k1 {
                            continue;
                        }
                        let path = ClosedPath::new(vec![(c0.0, c0.1, k0), (c1.0, c1.1, k1)]).unwrap();
                        assert!(!cycle_exists_on_path(t.plan(), &path).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn zero_shift_plan_closes() {
        let dims = GridDims::new(3, 2, 1, 6).unwrap();
        let plan = ShiftPlan::from_fn(Family::Custom, dims, |_, _, _| (0, 0)).unwrap();
        let path = ClosedPath::new(vec![(0, 0, 0), (1, 0, 1)]).unwrap();
        assert!(cycle_exists_on_path(&plan, &path).unwrap());
        let out_of_grid = ClosedPath::new(vec![(0, 0, 0), (2, 0, 1)]).unwrap();
        assert!(cycle_exists_on_path(&plan, &out_of_grid).is_err());
    }

    #[test]
    fn layer_inner_examples() {
        let t = prime3();
        assert_eq!(layer_inner(&t, 0, 0).unwrap(), 9);
        assert_eq!(layer_inner(&t, 0, 4).unwrap(), 0);
        assert_eq!(layer_inner(&t, 0, 9).unwrap(), 1);
        assert!(layer_inner(&t, 0, 27).is_err());
    }

    #[test]
    fn tensor_rank_examples() {
        let t = prime3();
        assert_eq!(tensor_rank(&t, &[1]).unwrap(), 9);
        assert_eq!(tensor_rank(&t, &[0, 1, 2]).unwrap(), 25);
        assert!(tensor_rank(&t, &[]).is_err());
        assert!(tensor_rank(&t, &[0, 0]).is_err());
        assert!(tensor_rank(&t, &[3]).is_err());
    }

    #[test]
    fn block_layer_sums_to_all_ones() {
        let t = prime3();
        for bl in 0..3 {
            let mut m = t.unfold_block_layers(&[bl]).unwrap();
            for r in 1..9 {
                m.add_row(0, r);
            }
            assert_eq!(m.select_rows(&[0]).unwrap(), BitMatrix::ones(1, 81));
        }
    }
}
