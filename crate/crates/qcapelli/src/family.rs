//! Constants of the three families: R-matrices, the reflection-equation
//! solutions J, the linear relations among the x_{ij}, weights and the
//! interpolation parameters.
//!
//! All indices are 1-based. In the diagonal family the second copy of gl_n
//! occupies indices n+1..2n.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Matrix, RatFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyKind {
    AI,
    AII,
    Diagonal,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 3] = [FamilyKind::AI, FamilyKind::AII, FamilyKind::Diagonal];

    pub fn slug(self) -> &'static str {
        match self {
            FamilyKind::AI => "ai",
            FamilyKind::AII => "aii",
            FamilyKind::Diagonal => "diag",
        }
    }
}

impl FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ai" => Ok(FamilyKind::AI),
            "aii" => Ok(FamilyKind::AII),
            "diag" | "diagonal" => Ok(FamilyKind::Diagonal),
            _ => Err(Error::Parse(format!("unknown family '{s}'"))),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Parts padded with zeros to length n.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    /// Multiplicities m_r = λ_r − λ_{r+1} of the fundamental partitions.
    pub fn fundamental_multiplicities(&self, n: usize) -> Vec<u32> {
        let p = self.padded(n + 1);
        (0..n).map(|r| p[r] - p[r + 1]).collect()
    }

    /// All partitions with at most `nparts` parts and size exactly `size`,
    /// in reverse lexicographic order.
    pub fn all_of_size(size: u32, nparts: usize) -> Vec<Partition> {
        fn rec(rem: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if slots == 0 {
                return;
            }
            for p in (1..=max.min(rem)).rev() {
                cur.push(p);
                rec(rem - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(size, size, nparts, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions with at most `nparts` parts and size ≤ `max`.
    pub fn all_up_to(max: u32, nparts: usize) -> Vec<Partition> {
        (0..=max).flat_map(|s| Partition::all_of_size(s, nparts)).collect()
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad partition entry '{x}'"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

/// Integer coordinates in the ε_i basis.
pub type WeightVec = Vec<i64>;

pub fn weight_add(a: &[i64], b: &[i64]) -> WeightVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn weight_dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Sparse table r^{ij}_{kl}.
#[derive(Clone, Debug)]
pub struct RMatrix {
    pub size: usize,
    entries: BTreeMap<[usize; 4], RatFunc>,
}

impl RMatrix {
    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> RatFunc {
        self.entries.get(&[i, j, k, l]).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> &BTreeMap<[usize; 4], RatFunc> {
        &self.entries
    }

    /// (R^{t1})^{ij}_{kl} = r^{kj}_{il}.
    pub fn t1(&self, i: usize, j: usize, k: usize, l: usize) -> RatFunc {
        self.entry(k, j, i, l)
    }

    /// (R^{t2})^{ij}_{kl} = r^{il}_{kj}.
    pub fn t2(&self, i: usize, j: usize, k: usize, l: usize) -> RatFunc {
        self.entry(i, l, k, j)
    }

    /// Nonzero entries of R^{t2} as ([i,j,k,l], value).
    pub fn t2_entries(&self) -> Vec<([usize; 4], RatFunc)> {
        self.entries.iter().map(|([i, l, k, j], v)| ([*i, *j, *k, *l], v.clone())).collect()
    }

    /// Dense N²×N² matrix with row (i,j) and column (k,l).
    pub fn dense(&self, f: impl Fn(usize, usize, usize, usize) -> RatFunc) -> Matrix {
        let n = self.size;
        let mut m = Matrix::zeros(n * n, n * n);
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        m.data[pair(n, i, j)][pair(n, k, l)] = f(i, j, k, l);
                    }
                }
            }
        }
        m
    }
}

fn pair(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * n + (j - 1)
}

/// The standard R-matrix entry of gl_N; only index comparisons matter.
pub fn standard_r(i: usize, j: usize, k: usize, l: usize) -> RatFunc {
    if i == j && k == i && l == j {
        RatFunc::q()
    } else if i != j && k == i && l == j {
        RatFunc::one()
    } else if j < i && k == j && l == i {
        RatFunc::q_minus_qinv()
    } else {
        RatFunc::zero()
    }
}

#[derive(Clone, Debug)]
pub struct FamilyDescriptor {
    pub kind: FamilyKind,
    pub n: usize,
    pub big_n: usize,
    pub gamma_x: RatFunc,
    pub gamma_d: RatFunc,
    pub canonical: Vec<(usize, usize)>,
    pub m_exponent: i64,
    pub a_param: RatFunc,
    pub g_param: RatFunc,
    pub r: RMatrix,
    pub j: BTreeMap<(usize, usize), RatFunc>,
}

impl FamilyDescriptor {
    pub fn new(kind: FamilyKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("n must be at least 1".into()));
        }
        let big_n = if kind == FamilyKind::AI { n } else { 2 * n };
        let q = RatFunc::q();
        let qi = RatFunc::q_pow(-1);
        let (gamma_x, gamma_d) = match kind {
            FamilyKind::AI => (q.clone(), qi.clone()),
            FamilyKind::AII => (-&qi, -&q),
            FamilyKind::Diagonal => (RatFunc::one(), RatFunc::one()),
        };
        let canonical = match kind {
            FamilyKind::AI => (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect(),
            FamilyKind::AII => (1..=big_n).flat_map(|i| (i + 1..=big_n).map(move |j| (i, j))).collect(),
            FamilyKind::Diagonal => (1..=n).flat_map(|i| (1..=n).map(move |j| (i, n + j))).collect(),
        };
        let (m_exponent, a_param, g_param) = match kind {
            FamilyKind::AI => (4, RatFunc::q_pow(4), RatFunc::q_pow(2)),
            FamilyKind::AII => (2, RatFunc::q_pow(2), RatFunc::q_pow(4)),
            FamilyKind::Diagonal => (2, RatFunc::q_pow(2), RatFunc::q_pow(2)),
        };
        let mut j = BTreeMap::new();
        match kind {
            FamilyKind::AI => {
                for k in 1..=n {
                    j.insert((k, k), RatFunc::one());
                }
            }
            FamilyKind::AII => {
                for k in 1..=n {
                    j.insert((2 * k - 1, 2 * k), RatFunc::one());
                    j.insert((2 * k, 2 * k - 1), -&q);
                }
            }
            FamilyKind::Diagonal => {
                for k in 1..=n {
                    j.insert((k, n + k), RatFunc::one());
                    j.insert((n + k, k), RatFunc::one());
                }
            }
        }
        let mut fam = FamilyDescriptor {
            kind,
            n,
            big_n,
            gamma_x,
            gamma_d,
            canonical,
            m_exponent,
            a_param,
            g_param,
            r: RMatrix { size: big_n, entries: BTreeMap::new() },
            j,
        };
        let mut entries = BTreeMap::new();
        for i in 1..=big_n {
            for jj in 1..=big_n {
                for k in 1..=big_n {
                    for l in 1..=big_n {
                        let v = fam.r_g(i, jj, k, l);
                        if !v.is_zero() {
                            entries.insert([i, jj, k, l], v);
                        }
                    }
                }
            }
        }
        fam.r.entries = entries;
        Ok(fam)
    }

    /// Block label (0 or 1) in the diagonal family; always 0 otherwise.
    pub fn block(&self, i: usize) -> usize {
        usize::from(self.kind == FamilyKind::Diagonal && i > self.n)
    }

    fn r_g(&self, i: usize, j: usize, k: usize, l: usize) -> RatFunc {
        if self.kind != FamilyKind::Diagonal {
            return standard_r(i, j, k, l);
        }
        if self.block(i) != self.block(k) || self.block(j) != self.block(l) {
            return RatFunc::zero();
        }
        if self.block(i) == self.block(j) {
            standard_r(i, j, k, l)
        } else if i == k && j == l {
            RatFunc::one()
        } else {
            RatFunc::zero()
        }
    }

    /// Whether t_{ij} is a generator (false for the off-diagonal blocks of
    /// the diagonal family).
    pub fn t_exists(&self, i: usize, j: usize) -> bool {
        self.block(i) == self.block(j)
    }

    /// The exponent ŝ used to scale the d generators.
    pub fn s_hat(&self, s: usize) -> i64 {
        if self.kind == FamilyKind::Diagonal && s > self.n {
            (s - self.n) as i64
        } else {
            s as i64
        }
    }

    pub fn in_zero_set(&self, i: usize, j: usize) -> bool {
        match self.kind {
            FamilyKind::AI => false,
            FamilyKind::AII => i == j,
            FamilyKind::Diagonal => self.block(i) == self.block(j),
        }
    }

    /// Rewrites x_{ij} (or d_{ij} when `dual`) as c·(canonical generator);
    /// None when it vanishes.
    pub fn canonicalize(&self, i: usize, j: usize, dual: bool) -> Option<(RatFunc, (usize, usize))> {
        if self.in_zero_set(i, j) {
            return None;
        }
        let gamma = if dual { &self.gamma_d } else { &self.gamma_x };
        if self.canonical.binary_search(&(i, j)).is_ok() {
            Some((RatFunc::one(), (i, j)))
        } else {
            // x_{ji} = γ x_{ij} for j < i
            Some((gamma.inv().unwrap(), (j, i)))
        }
    }

    /// Indices i of the E_i, F_i generators.
    pub fn ef_indices(&self) -> Vec<usize> {
        (1..self.big_n).filter(|&i| !(self.kind == FamilyKind::Diagonal && i == self.n)).collect()
    }

    /// The ambient weight 2λ.
    pub fn weight_2lambda(&self, lambda: &Partition) -> Result<WeightVec> {
        if lambda.len() > self.n {
            return Err(Error::Invalid(format!("{lambda} has more than {} parts", self.n)));
        }
        let p = lambda.padded(self.n);
        let mut w = vec![0i64; self.big_n];
        for (i, &l) in p.iter().enumerate() {
            let l = l as i64;
            match self.kind {
                FamilyKind::AI => w[i] += 2 * l,
                FamilyKind::AII => {
                    w[2 * i] += l;
                    w[2 * i + 1] += l;
                }
                FamilyKind::Diagonal => {
                    w[i] += l;
                    w[self.n + i] += l;
                }
            }
        }
        Ok(w)
    }

    /// Weight of x_{ij}: ε_i + ε_j.
    pub fn x_weight(&self, i: usize, j: usize) -> WeightVec {
        let mut w = vec![0; self.big_n];
        w[i - 1] += 1;
        w[j - 1] += 1;
        w
    }

    /// Simple root α_i.
    pub fn alpha(&self, i: usize) -> WeightVec {
        let mut w = vec![0; self.big_n];
        w[i - 1] = 1;
        w[i] = -1;
        w
    }

    /// Sub-family of restricted rank r whose generators sit in the leading
    /// block; its x(r)_{ij} correspond to x_{ij} (diagonal: shifted by n − r).
    pub fn leading_block(&self, r: usize) -> Result<FamilyDescriptor> {
        FamilyDescriptor::new(self.kind, r)
    }

    /// Index map from the rank-r sub-family to this family.
    pub fn lift_index(&self, r: usize, i: usize) -> usize {
        if self.kind == FamilyKind::Diagonal && i > r {
            i - r + self.n
        } else {
            i
        }
    }
}

/// Report of the reflection-equation check: violating (row, col) entries.
pub fn check_reflection_equation(fam: &FamilyDescriptor) -> Vec<((usize, usize), (usize, usize))> {
    let n = fam.big_n;
    let jm = |i: usize, k: usize| fam.j.get(&(i, k)).cloned().unwrap_or_default();
    let r = fam.r.dense(|i, j, k, l| fam.r.entry(i, j, k, l));
    let rt1 = fam.r.dense(|i, j, k, l| fam.r.t1(i, j, k, l));
    let j1 = fam.r.dense(|i, j, k, l| if j == l { jm(i, k) } else { RatFunc::zero() });
    let j2 = fam.r.dense(|i, j, k, l| if i == k { jm(j, l) } else { RatFunc::zero() });
    let lhs = r.mul(&j1).mul(&rt1).mul(&j2);
    let rhs = j2.mul(&rt1).mul(&j1).mul(&r);
    let diff = lhs.sub(&rhs);
    let mut bad = Vec::new();
    for a in 0..n * n {
        for b in 0..n * n {
            if !diff.data[a][b].is_zero() {
                bad.push(((a / n + 1, a % n + 1), (b / n + 1, b % n + 1)));
            }
        }
    }
    bad
}
