//! Shift plans for the three stacked-tensor code families.
//!
//! All families share one shift rule on a `c x b x h` grid of `p x p x p`
//! permutation tensors:
//!
//! ```text
//! a(i, j, k) = (eta(k) + floor(k / p) * (phi(i) + psi(j))) mod p
//! b(i, j, k) = (floor(k / p) * phi(i)) mod p
//! ```
//!
//! They differ in what `phi` and `psi` may be and in the grid constraints:
//!
//! * prime: `p` an odd prime, `c = b = p`, `h = p^2`, `phi`/`psi` bijections of `Z_p`;
//! * composite: any `p >= 3` with `p | h`, `(c-1)(h/p-1) < p` and `(b-1)(h/p-1) < p`,
//!   `phi`/`psi` injective into `Z_p`;
//! * Behrend: `phi`/`psi` injective into a Behrend set `B(n, k, d, h/p - 1)` with
//!   `p >= (h/p - 1) * max(B) + 1`.
//!
//! `eta` is assembled from one bijection `zeta` of `Z_p` per group of `p`
//! consecutive k-indices: `eta(k) = zeta_{k / p}(k mod p)`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::tensor::ShiftPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Prime,
    Composite,
    Behrend,
    /// Arbitrary shift table, not produced by one of the constructions.
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Prime => "prime",
            Family::Composite => "composite",
            Family::Behrend => "behrend",
            Family::Custom => "custom",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prime" => Ok(Family::Prime),
            "composite" => Ok(Family::Composite),
            "behrend" => Ok(Family::Behrend),
            "custom" => Ok(Family::Custom),
            other => Err(Error::InvalidParameter(format!("unknown family `{other}`"))),
        }
    }
}

/// Block-grid extents: `c x b x h` tensors of size `p x p x p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridDims {
    pub p: usize,
    pub c: usize,
    pub b: usize,
    pub h: usize,
}

impl GridDims {
    pub fn new(p: usize, c: usize, b: usize, h: usize) -> Result<Self> {
        if p < 3 {
            return Err(Error::InvalidParameter(format!("p = {p} must be at least 3")));
        }
        if c == 0 || b == 0 || h == 0 {
            return Err(Error::InvalidParameter(format!(
                "grid extents must be positive (c = {c}, b = {b}, h = {h})"
            )));
        }
        if !h.is_multiple_of(p) {
            return Err(Error::Constraint(format!("p = {p} must divide h = {h}")));
        }
        Ok(GridDims { p, c, b, h })
    }

    /// Grid of the prime family: `p x p x p^2`.
    pub fn prime(p: usize) -> Result<Self> {
        Self::new(p, p, p, p * p)
    }

    /// Number of horizontal block-layers (`h / p`), each `p^2` horizontal layers thick.
    #[inline]
    pub fn block_layers(&self) -> usize {
        self.h / self.p
    }

    /// Codeword array extent along x.
    #[inline]
    pub fn width(&self) -> usize {
        self.c * self.p
    }

    /// Codeword array extent along y.
    #[inline]
    pub fn height(&self) -> usize {
        self.b * self.p
    }

    /// Code length `c * b * p^2`.
    #[inline]
    pub fn code_length(&self) -> usize {
        self.width() * self.height()
    }

    /// Number of horizontal layers (parity checks), `h * p`.
    #[inline]
    pub fn layers(&self) -> usize {
        self.h * self.p
    }

    #[inline]
    pub fn blocks(&self) -> usize {
        self.c * self.b * self.h
    }
}

/// Parameters of a Behrend set `B(n, k_norm, d, delta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BehrendParams {
    pub n: usize,
    pub k_norm: usize,
    pub d: usize,
    pub delta: usize,
}

impl BehrendParams {
    /// Picks the `k_norm` in `1..=n*d^2` giving the largest set, smallest on ties.
    pub fn with_best_norm(n: usize, d: usize, delta: usize) -> Result<Self> {
        let mut best: Option<(usize, usize)> = None;
        for k_norm in 1..=n * d * d {
            let size = behrend_set(n, k_norm, d, delta)?.len();
            if best.is_none_or(|(_, s)| size > s) {
                best = Some((k_norm, size));
            }
        }
        let (k_norm, _) = best.ok_or_else(|| {
            Error::InvalidParameter(format!("no admissible norm for n = {n}, d = {d}"))
        })?;
        Ok(BehrendParams { n, k_norm, d, delta })
    }

    pub fn set(&self) -> Result<Vec<usize>> {
        behrend_set(self.n, self.k_norm, self.d, self.delta)
    }
}

/// All `y = sum_{i<n} y_i (delta*d + 1)^i` with digits `0 <= y_i <= d` and
/// `sum y_i^2 = k_norm`, ascending.
pub fn behrend_set(n: usize, k_norm: usize, d: usize, delta: usize) -> Result<Vec<usize>> {
    if d < 1 {
        return Err(Error::InvalidParameter(format!("Behrend digit bound d = {d} must be >= 1")));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("Behrend length n = {n} must be >= 2")));
    }
    if delta < 2 {
        return Err(Error::InvalidParameter(format!("Behrend delta = {delta} must be >= 2")));
    }
    if k_norm < 1 || k_norm > n * d * d {
        return Err(Error::InvalidParameter(format!(
            "Behrend norm k = {k_norm} must lie in 1..={}",
            n * d * d
        )));
    }
    let base = delta * d + 1;
    let u32_n = u32::try_from(n).map_err(|_| Error::InvalidParameter(format!("n = {n} too large")))?;
    base.checked_pow(u32_n)
        .ok_or_else(|| Error::InvalidParameter(format!("{base}^{n} overflows")))?;

    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let norm: usize = digits.iter().map(|&y| y * y).sum();
        if norm == k_norm {
            let value = digits.iter().rev().fold(0usize, |acc, &y| acc * base + y);
            out.push(value);
        }
        // odometer increment
        let mut pos = 0;
        while pos < n && digits[pos] == d {
            digits[pos] = 0;
            pos += 1;
        }
        if pos == n {
            break;
        }
        digits[pos] += 1;
    }
    out.sort_unstable();
    Ok(out)
}

/// The maps `phi`, `psi` and the per-segment bijections behind `eta`, as explicit tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyConfig {
    pub phi: Vec<usize>,
    pub psi: Vec<usize>,
    /// `zetas[s]` is the bijection of `Z_p` used for k-indices `s*p .. (s+1)*p`.
    pub zetas: Vec<Vec<usize>>,
    pub behrend: Option<BehrendParams>,
}

impl FamilyConfig {
    #[inline]
    pub fn eta(&self, k: usize, p: usize) -> usize {
        self.zetas[k / p][k % p]
    }

    /// `eta(k)` for every `k < zetas.len() * p`.
    pub fn eta_table(&self, p: usize) -> Vec<usize> {
        (0..self.zetas.len() * p).map(|k| self.eta(k, p)).collect()
    }

    /// Random admissible maps for `family` on `dims`. For the Behrend family
    /// `behrend` must be given; `phi` and `psi` are drawn without replacement
    /// from its set.
    pub fn random<R: Rng + ?Sized>(
        family: Family,
        dims: GridDims,
        behrend: Option<BehrendParams>,
        rng: &mut R,
    ) -> Result<Self> {
        let p = dims.p;
        let pool: Vec<usize> = match family {
            Family::Behrend => {
                let params = behrend.ok_or_else(|| {
                    Error::InvalidParameter("Behrend family needs Behrend parameters".into())
                })?;
                params.set()?
            }
            _ => (0..p).collect(),
        };
        let pick = |count: usize, rng: &mut R| -> Result<Vec<usize>> {
            if count > pool.len() {
                return Err(Error::Constraint(format!(
                    "cannot map {count} indices injectively into a set of size {}",
                    pool.len()
                )));
            }
            let mut v = pool.clone();
            v.shuffle(rng);
            v.truncate(count);
            Ok(v)
        };
        let phi = pick(dims.c, rng)?;
        let psi = pick(dims.b, rng)?;
        let zetas = (0..dims.block_layers())
            .map(|_| {
                let mut z: Vec<usize> = (0..p).collect();
                z.shuffle(rng);
                z
            })
            .collect();
        Ok(FamilyConfig { phi, psi, zetas, behrend: if family == Family::Behrend { behrend } else { None } })
    }
}

/// Identity maps: `phi(i) = i`, `psi(j) = j`, `eta(k) = k mod p`. For the
/// Behrend family `phi`/`psi` enumerate the Behrend set ascending.
pub fn default_config(
    family: Family,
    dims: GridDims,
    behrend: Option<BehrendParams>,
) -> Result<FamilyConfig> {
    let zetas = vec![(0..dims.p).collect::<Vec<_>>(); dims.block_layers()];
    let (phi, psi) = match family {
        Family::Behrend => {
            let params = behrend.ok_or_else(|| {
                Error::InvalidParameter("Behrend family needs Behrend parameters".into())
            })?;
            let set = params.set()?;
            if set.len() < dims.c.max(dims.b) {
                return Err(Error::Constraint(format!(
                    "Behrend set has {} elements, need at least max(c, b) = {}",
                    set.len(),
                    dims.c.max(dims.b)
                )));
            }
            (set[..dims.c].to_vec(), set[..dims.b].to_vec())
        }
        _ => ((0..dims.c).collect(), (0..dims.b).collect()),
    };
    Ok(FamilyConfig {
        phi,
        psi,
        zetas,
        behrend: if family == Family::Behrend { behrend } else { None },
    })
}

/// A complete code description: the shift pair of every tensor in the grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftPlan {
    family: Family,
    dims: GridDims,
    /// Indexed `(i * b + j) * h + k`.
    shifts: Vec<ShiftPair>,
}

impl ShiftPlan {
    /// Builds a plan of the given family tag from an arbitrary shift rule.
    pub fn from_fn(
        family: Family,
        dims: GridDims,
        mut f: impl FnMut(usize, usize, usize) -> (usize, usize),
    ) -> Result<Self> {
        let mut shifts = Vec::with_capacity(dims.blocks());
        for i in 0..dims.c {
            for j in 0..dims.b {
                for k in 0..dims.h {
                    let (a, b) = f(i, j, k);
                    shifts.push(ShiftPair::new(a, b, dims.p)?);
                }
            }
        }
        Ok(ShiftPlan { family, dims, shifts })
    }

    #[inline]
    pub fn family(&self) -> Family {
        self.family
    }

    #[inline]
    pub fn dims(&self) -> GridDims {
        self.dims
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.dims.p
    }

    /// Shift pair of the tensor at grid position `(i, j, k)`. Panics when out of range.
    #[inline]
    pub fn shift(&self, i: usize, j: usize, k: usize) -> ShiftPair {
        let d = &self.dims;
        assert!(i < d.c && j < d.b && k < d.h, "block ({i},{j},{k}) outside grid");
        self.shifts[(i * d.b + j) * d.h + k]
    }

    /// Plain-text form: header lines `family`, `p`, `c`, `b`, `h`, then one
    /// `i j k a b` line per tensor in lexicographic `(i, j, k)` order.
    pub fn to_text(&self) -> String {
        let d = &self.dims;
        let mut s = format!(
            "family {}\np {}\nc {}\nb {}\nh {}\n",
            self.family, d.p, d.c, d.b, d.h
        );
        for i in 0..d.c {
            for j in 0..d.b {
                for k in 0..d.h {
                    let sp = self.shift(i, j, k);
                    s.push_str(&format!("{i} {j} {k} {} {}\n", sp.a(), sp.b()));
                }
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut family = None;
        let mut header: [Option<usize>; 4] = [None; 4];
        let mut entries: Vec<(usize, [usize; 5])> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |msg: String| Error::Parse { line: line_no, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "family" => {
                    if fields.len() != 2 {
                        return Err(parse_err("expected `family <name>`".into()));
                    }
                    family = Some(fields[1].parse::<Family>().map_err(|e| parse_err(e.to_string()))?);
                }
                key @ ("p" | "c" | "b" | "h") => {
                    if fields.len() != 2 {
                        return Err(parse_err(format!("expected `{key} <integer>`")));
                    }
                    let v = fields[1]
                        .parse::<usize>()
                        .map_err(|e| parse_err(format!("{key}: {e}")))?;
                    let slot = ["p", "c", "b", "h"].iter().position(|k| *k == key).unwrap();
                    header[slot] = Some(v);
                }
                _ => {
                    if fields.len() != 5 {
                        return Err(parse_err(format!(
                            "expected `i j k a b`, found {} fields",
                            fields.len()
                        )));
                    }
                    let mut vals = [0usize; 5];
                    for (v, f) in vals.iter_mut().zip(&fields) {
                        *v = f.parse().map_err(|e| parse_err(format!("`{f}`: {e}")))?;
                    }
                    entries.push((line_no, vals));
                }
            }
        }
        let missing = |what: &str| Error::Parse { line: 0, msg: format!("missing header `{what}`") };
        let family = family.ok_or_else(|| missing("family"))?;
        let [p, c, b, h] = header;
        let dims = GridDims::new(
            p.ok_or_else(|| missing("p"))?,
            c.ok_or_else(|| missing("c"))?,
            b.ok_or_else(|| missing("b"))?,
            h.ok_or_else(|| missing("h"))?,
        )?;
        let mut table: Vec<Option<ShiftPair>> = vec![None; dims.blocks()];
        for (line, [i, j, k, a, bb]) in entries {
            if i >= dims.c || j >= dims.b || k >= dims.h {
                return Err(Error::Parse { line, msg: format!("block ({i},{j},{k}) outside grid") });
            }
            let slot = &mut table[(i * dims.b + j) * dims.h + k];
            if slot.is_some() {
                return Err(Error::Parse { line, msg: format!("duplicate block ({i},{j},{k})") });
            }
            *slot = Some(ShiftPair::new(a, bb, dims.p).map_err(|e| Error::Parse { line, msg: e.to_string() })?);
        }
        let shifts = table
            .into_iter()
            .enumerate()
            .map(|(idx, s)| {
                s.ok_or_else(|| {
                    let k = idx % dims.h;
                    let j = (idx / dims.h) % dims.b;
                    let i = idx / (dims.h * dims.b);
                    Error::Parse { line: 0, msg: format!("block ({i},{j},{k}) missing") }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ShiftPlan { family, dims, shifts })
    }
}

fn is_odd_prime(p: usize) -> bool {
    p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn check_bijection(name: &str, table: &[usize], p: usize) -> Result<()> {
    if table.len() != p {
        return Err(Error::InvalidParameter(format!(
            "{name} must have {p} entries, found {}",
            table.len()
        )));
    }
    let mut seen = vec![false; p];
    for &v in table {
        if v >= p || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidParameter(format!("{name} is not a bijection of Z_{p}")));
        }
    }
    Ok(())
}

fn check_injective(name: &str, table: &[usize], len: usize, allowed: impl Fn(usize) -> bool, codomain: &str) -> Result<()> {
    if table.len() != len {
        return Err(Error::InvalidParameter(format!(
            "{name} must have {len} entries, found {}",
            table.len()
        )));
    }
    if let Some(&v) = table.iter().find(|&&v| !allowed(v)) {
        return Err(Error::InvalidParameter(format!("{name} value {v} lies outside {codomain}")));
    }
    let mut sorted = table.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Constraint(format!(
            "{name} is not injective (a map from {len} indices into {codomain})"
        )));
    }
    Ok(())
}

fn check_zetas(cfg: &FamilyConfig, dims: GridDims) -> Result<()> {
    if cfg.zetas.len() != dims.block_layers() {
        return Err(Error::InvalidParameter(format!(
            "eta needs {} segment bijections, found {}",
            dims.block_layers(),
            cfg.zetas.len()
        )));
    }
    for (s, z) in cfg.zetas.iter().enumerate() {
        check_bijection(&format!("zeta[{s}]"), z, dims.p)?;
    }
    Ok(())
}

fn stack_shifts(family: Family, dims: GridDims, cfg: &FamilyConfig) -> Result<ShiftPlan> {
    let p = dims.p;
    ShiftPlan::from_fn(family, dims, |i, j, k| {
        let f = k / p;
        let a = (cfg.eta(k, p) + f * (cfg.phi[i] + cfg.psi[j])) % p;
        let b = (f * cfg.phi[i]) % p;
        (a, b)
    })
}

/// Prime family on the `p x p x p^2` grid.
pub fn prime_family(p: usize, cfg: &FamilyConfig) -> Result<ShiftPlan> {
    if !is_odd_prime(p) {
        return Err(Error::InvalidParameter(format!("p = {p} is not an odd prime")));
    }
    let dims = GridDims::prime(p)?;
    check_bijection("phi", &cfg.phi, p)?;
    check_bijection("psi", &cfg.psi, p)?;
    check_zetas(cfg, dims)?;
    stack_shifts(Family::Prime, dims, cfg)
}

/// Composite-size family: any `p >= 3`, grid limited by `(c-1)(h/p-1) < p` and `(b-1)(h/p-1) < p`.
pub fn composite_family(dims: GridDims, cfg: &FamilyConfig) -> Result<ShiftPlan> {
    let p = dims.p;
    let span = dims.block_layers() - 1;
    for (name, extent) in [("c", dims.c), ("b", dims.b)] {
        let lhs = (extent - 1) * span;
        if lhs >= p {
            return Err(Error::Constraint(format!(
                "({name}-1)(h/p-1) < p fails: ({extent}-1)({}-1) = {lhs} is not < {p}",
                dims.block_layers()
            )));
        }
    }
    let codomain = format!("Z_{p}");
    check_injective("phi", &cfg.phi, dims.c, |v| v < p, &codomain)?;
    check_injective("psi", &cfg.psi, dims.b, |v| v < p, &codomain)?;
    check_zetas(cfg, dims)?;
    stack_shifts(Family::Composite, dims, cfg)
}

/// Behrend family: `phi`/`psi` valued in `B(n, k, d, h/p - 1)`, with `p >= (h/p - 1) max(B) + 1`.
pub fn behrend_family(dims: GridDims, cfg: &FamilyConfig) -> Result<ShiftPlan> {
    let params = cfg
        .behrend
        .ok_or_else(|| Error::InvalidParameter("Behrend family needs Behrend parameters".into()))?;
    let p = dims.p;
    let span = dims.block_layers() - 1;
    if params.delta != span {
        return Err(Error::Constraint(format!(
            "delta = {} must equal h/p - 1 = {span}",
            params.delta
        )));
    }
    let set = params.set()?;
    let need = dims.c.max(dims.b);
    if set.len() < need {
        return Err(Error::Constraint(format!(
            "|B| = {} is smaller than max(c, b) = {need}; no injective phi/psi exists",
            set.len()
        )));
    }
    let max_b = *set.last().expect("nonempty Behrend set");
    let bound = span * max_b + 1;
    if p < bound {
        return Err(Error::Constraint(format!(
            "p >= (h/p-1)*max(B)+1 fails: {p} < {span}*{max_b}+1 = {bound}"
        )));
    }
    let codomain = format!("B({},{},{},{})", params.n, params.k_norm, params.d, params.delta);
    check_injective("phi", &cfg.phi, dims.c, |v| set.binary_search(&v).is_ok(), &codomain)?;
    check_injective("psi", &cfg.psi, dims.b, |v| set.binary_search(&v).is_ok(), &codomain)?;
    check_zetas(cfg, dims)?;
    stack_shifts(Family::Behrend, dims, cfg)
}
