//! Borcherds–Cartan superdata, the polynomials `Q_ij` and the `γ` normalization constants.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// The first axiom a datum (with its tables) violates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("matrix shape does not match the {rank} vertices")]
    Shape { rank: usize },
    #[error("duplicate vertex name {name:?}")]
    DuplicateName { name: String },
    #[error("parity of vertex {i} must be 0 or 1")]
    ParityBit { i: usize },
    #[error("axiom (i): a_{i}{i} = {value} is neither 2 nor a non-positive even integer")]
    Diagonal { i: usize, value: i64 },
    #[error("axiom (ii): a_{i}{j} = {value} is positive")]
    OffDiagonalPositive { i: usize, j: usize, value: i64 },
    #[error("axiom (iii): a_{i}{j} = {aij} but a_{j}{i} = {aji}")]
    ZeroPattern { i: usize, j: usize, aij: i64, aji: i64 },
    #[error("axiom (iv): vertex {i} is odd but a_{i}{j} = {value} is odd")]
    OddRow { i: usize, j: usize, value: i64 },
    #[error("axiom (v): symmetrizer r_{i} = {value} is not positive")]
    Symmetrizer { i: usize, value: i64 },
    #[error("axiom (v): r_{i} a_{i}{j} != r_{j} a_{j}{i}")]
    NotSymmetric { i: usize, j: usize },
    #[error("Q table: pair ({i},{j}) missing")]
    QMissing { i: usize, j: usize },
    #[error("Q table: ({i},{j}) term u^{a} v^{b} is not homogeneous (r_i a + r_j b != -i.j)")]
    QDegree { i: usize, j: usize, a: u32, b: u32 },
    #[error("Q table: ({i},{j}) term u^{a} v^{b} has an odd power of an odd variable")]
    QParity { i: usize, j: usize, a: u32, b: u32 },
    #[error("Q table: t_{{{i},{j};{a},{b}}} != t_{{{j},{i};{b},{a}}}")]
    QSymmetry { i: usize, j: usize, a: u32, b: u32 },
    #[error("Q table: leading coefficient t_{{{i},{j};{a},0}} vanishes")]
    QLeading { i: usize, j: usize, a: u32 },
    #[error("Q table: ({i},{j}) has i.j = 0 but Q is not the constant 1")]
    QConstant { i: usize, j: usize },
    #[error("gamma table: entry ({i},{j}) missing")]
    GammaMissing { i: usize, j: usize },
    #[error("gamma table: gamma_{i}{j} = {value} must be 1 unless both vertices are odd")]
    GammaEven { i: usize, j: usize, value: String },
    #[error("gamma table: gamma_{i}{j} gamma_{j}{i} = {value}, expected -1/2")]
    GammaOdd { i: usize, j: usize, value: String },
}

impl Violation {
    /// Short axiom label such as `"iv"`, or `"qtable"` / `"gamma"` / `"shape"`.
    pub fn axiom(&self) -> &'static str {
        match self {
            Violation::Shape { .. } | Violation::DuplicateName { .. } | Violation::ParityBit { .. } => "shape",
            Violation::Diagonal { .. } => "i",
            Violation::OffDiagonalPositive { .. } => "ii",
            Violation::ZeroPattern { .. } => "iii",
            Violation::OddRow { .. } => "iv",
            Violation::Symmetrizer { .. } | Violation::NotSymmetric { .. } => "v",
            Violation::QMissing { .. }
            | Violation::QDegree { .. }
            | Violation::QParity { .. }
            | Violation::QSymmetry { .. }
            | Violation::QLeading { .. }
            | Violation::QConstant { .. } => "qtable",
            Violation::GammaMissing { .. } | Violation::GammaEven { .. } | Violation::GammaOdd { .. } => "gamma",
        }
    }
}

/// A Borcherds–Cartan superdatum. Vertices are indexed `0..rank` in a fixed total order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superdatum {
    names: Vec<String>,
    parity: Vec<u8>,
    sym: Vec<i64>,
    matrix: Vec<Vec<i64>>,
}

impl Superdatum {
    /// Builds a datum without checking the axioms; call [`Superdatum::validate`].
    pub fn new(names: Vec<String>, parity: Vec<u8>, symmetrizers: Vec<i64>, matrix: Vec<Vec<i64>>) -> Self {
        Superdatum { names, parity, sym: symmetrizers, matrix }
    }

    /// Convenience constructor from string names.
    pub fn from_parts(names: &[&str], parity: &[u8], symmetrizers: &[i64], matrix: &[&[i64]]) -> Self {
        Superdatum::new(
            names.iter().map(|s| s.to_string()).collect(),
            parity.to_vec(),
            symmetrizers.to_vec(),
            matrix.iter().map(|row| row.to_vec()).collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i]
    }

    pub fn r(&self, i: usize) -> i64 {
        self.sym[i]
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    /// The symmetric form `i·j = r_i a_ij`.
    pub fn dot(&self, i: usize, j: usize) -> i64 {
        self.sym[i] * self.matrix[i][j]
    }

    pub fn is_real(&self, i: usize) -> bool {
        self.matrix[i][i] == 2
    }

    pub fn is_imaginary(&self, i: usize) -> bool {
        !self.is_real(i)
    }

    /// Checks axioms (i)–(v) in order and returns the first violation.
    pub fn validate(&self) -> Result<(), Violation> {
        let n = self.rank();
        if self.parity.len() != n
            || self.sym.len() != n
            || self.matrix.len() != n
            || self.matrix.iter().any(|r| r.len() != n)
        {
            return Err(Violation::Shape { rank: n });
        }
        for i in 0..n {
            if self.names[..i].contains(&self.names[i]) {
                return Err(Violation::DuplicateName { name: self.names[i].clone() });
            }
            if self.parity[i] > 1 {
                return Err(Violation::ParityBit { i });
            }
        }
        for i in 0..n {
            let d = self.matrix[i][i];
            if d != 2 && (d > 0 || d % 2 != 0) {
                return Err(Violation::Diagonal { i, value: d });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && self.matrix[i][j] > 0 {
                    return Err(Violation::OffDiagonalPositive { i, j, value: self.matrix[i][j] });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (aij, aji) = (self.matrix[i][j], self.matrix[j][i]);
                if i != j && ((aij == 0) != (aji == 0)) {
                    return Err(Violation::ZeroPattern { i, j, aij, aji });
                }
            }
        }
        for i in 0..n {
            if self.parity[i] == 1 {
                for j in 0..n {
                    if self.matrix[i][j] % 2 != 0 {
                        return Err(Violation::OddRow { i, j, value: self.matrix[i][j] });
                    }
                }
            }
        }
        for i in 0..n {
            if self.sym[i] <= 0 {
                return Err(Violation::Symmetrizer { i, value: self.sym[i] });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.dot(i, j) != self.dot(j, i) {
                    return Err(Violation::NotSymmetric { i, j });
                }
            }
        }
        Ok(())
    }
}

/// One term `t u^a v^b` of `Q_ij(u, v)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QTerm {
    pub a: u32,
    pub b: u32,
    pub t: BigInt,
}

/// The coefficients `t_{i,j;a,b}`, stored for both orders of every pair.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QTable {
    entries: BTreeMap<(usize, usize), Vec<QTerm>>,
}

/// Algebra targets for evaluating `Q_ij(u, v)`.
pub trait QTarget: Sized {
    fn unit(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &BigInt) -> Self;
}

impl QTable {
    pub fn new() -> Self {
        QTable::default()
    }

    /// Sets `Q_ij` and the mirrored `Q_ji(v, u) = Q_ij(u, v)`. Zero terms are dropped.
    pub fn set(&mut self, i: usize, j: usize, terms: Vec<QTerm>) {
        let mut fwd: Vec<QTerm> = terms.into_iter().filter(|t| !t.t.is_zero()).collect();
        fwd.sort();
        let mut rev: Vec<QTerm> = fwd.iter().map(|t| QTerm { a: t.b, b: t.a, t: t.t.clone() }).collect();
        rev.sort();
        self.entries.insert((i, j), fwd);
        self.entries.insert((j, i), rev);
    }

    /// Inserts a single ordered entry without mirroring (used by config loading and tests).
    pub fn set_ordered(&mut self, i: usize, j: usize, terms: Vec<QTerm>) {
        let mut fwd: Vec<QTerm> = terms.into_iter().filter(|t| !t.t.is_zero()).collect();
        fwd.sort();
        self.entries.insert((i, j), fwd);
    }

    pub fn terms(&self, i: usize, j: usize) -> Option<&[QTerm]> {
        self.entries.get(&(i, j)).map(|v| v.as_slice())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<QTerm>)> {
        self.entries.iter()
    }

    /// `Σ t u^a v^b`, multiplying the `u` powers before the `v` powers.
    pub fn q_eval<T: QTarget>(&self, i: usize, j: usize, u: &T, v: &T) -> Option<T> {
        let terms = self.terms(i, j)?;
        let one = u.unit();
        let mut acc = one.scale(&BigInt::zero());
        for term in terms {
            let mut m = u.unit();
            for _ in 0..term.a {
                m = m.mul(u);
            }
            for _ in 0..term.b {
                m = m.mul(v);
            }
            acc = acc.add(&m.scale(&term.t));
        }
        Some(acc)
    }

    /// Renders `Q_ij` as text in decreasing powers of `u`, e.g. `u^2 + v^2`.
    pub fn describe(&self, i: usize, j: usize) -> String {
        let Some(terms) = self.terms(i, j) else {
            return "?".to_string();
        };
        if terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = terms
            .iter()
            .rev()
            .map(|t| {
                let mut s = String::new();
                if !t.t.is_one() || (t.a == 0 && t.b == 0) {
                    s.push_str(&t.t.to_string());
                }
                for (var, e) in [("u", t.a), ("v", t.b)] {
                    if e == 0 {
                        continue;
                    }
                    if !s.is_empty() {
                        s.push('*');
                    }
                    s.push_str(var);
                    if e > 1 {
                        s.push_str(&format!("^{}", e));
                    }
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}

/// `t_{i,j;-a_ij,0} = t_{i,j;0,-a_ji} = 1`, all other coefficients zero; constant 1 when `i·j = 0`.
pub fn default_qtable(d: &Superdatum) -> QTable {
    let mut table = QTable::new();
    for i in 0..d.rank() {
        for j in (i + 1)..d.rank() {
            let terms = if d.dot(i, j) == 0 {
                vec![QTerm { a: 0, b: 0, t: BigInt::one() }]
            } else {
                vec![
                    QTerm { a: (-d.a(i, j)) as u32, b: 0, t: BigInt::one() },
                    QTerm { a: 0, b: (-d.a(j, i)) as u32, t: BigInt::one() },
                ]
            };
            table.set(i, j, terms);
        }
    }
    table
}

/// The constants `γ_ij` for ordered pairs `i ≠ j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GammaTable {
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl GammaTable {
    pub fn new() -> Self {
        GammaTable::default()
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.entries.insert((i, j), value);
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&BigRational> {
        self.entries.get(&(i, j))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.entries.iter()
    }
}

/// `γ_ij = 1` unless both vertices are odd; for two odd vertices `i < j`, `γ_ij = 1` and `γ_ji = -1/2`.
pub fn default_gamma(d: &Superdatum) -> GammaTable {
    let mut g = GammaTable::new();
    let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
    for i in 0..d.rank() {
        for j in 0..d.rank() {
            if i == j {
                continue;
            }
            let v = if d.parity(i) == 1 && d.parity(j) == 1 && i > j { half.clone() } else { BigRational::one() };
            g.set(i, j, v);
        }
    }
    g
}

/// A superdatum together with the tables the quiver Hecke superalgebra needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeDatum {
    pub datum: Superdatum,
    pub qtable: QTable,
    pub gamma: GammaTable,
}

impl HeckeDatum {
    /// Attaches the default `Q` and `γ` tables.
    pub fn with_defaults(datum: Superdatum) -> Self {
        let qtable = default_qtable(&datum);
        let gamma = default_gamma(&datum);
        HeckeDatum { datum, qtable, gamma }
    }

    pub fn validate(&self) -> Result<(), Violation> {
        validate(&self.datum, &self.qtable, &self.gamma)
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.datum.parity(i)
    }

    pub fn r(&self, i: usize) -> i64 {
        self.datum.r(i)
    }

    pub fn dot(&self, i: usize, j: usize) -> i64 {
        self.datum.dot(i, j)
    }

    pub fn is_real(&self, i: usize) -> bool {
        self.datum.is_real(i)
    }

    pub fn q_terms(&self, i: usize, j: usize) -> &[QTerm] {
        self.qtable.terms(i, j).expect("validated Q table covers every pair")
    }

    pub fn gamma(&self, i: usize, j: usize) -> &BigRational {
        self.gamma.get(i, j).expect("validated gamma table covers every pair")
    }
}

/// Validates the datum axioms, then the `Q` table, then the `γ` table.
pub fn validate(d: &Superdatum, q: &QTable, g: &GammaTable) -> Result<(), Violation> {
    d.validate()?;
    let n = d.rank();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let terms = q.terms(i, j).ok_or(Violation::QMissing { i, j })?;
            if d.dot(i, j) == 0 {
                let one = [QTerm { a: 0, b: 0, t: BigInt::one() }];
                if terms != one {
                    return Err(Violation::QConstant { i, j });
                }
                continue;
            }
            for t in terms {
                if d.r(i) * t.a as i64 + d.r(j) * t.b as i64 != -d.dot(i, j) {
                    return Err(Violation::QDegree { i, j, a: t.a, b: t.b });
                }
                if (d.parity(i) == 1 && t.a % 2 == 1) || (d.parity(j) == 1 && t.b % 2 == 1) {
                    return Err(Violation::QParity { i, j, a: t.a, b: t.b });
                }
            }
            let rev = q.terms(j, i).ok_or(Violation::QMissing { i: j, j: i })?;
            for t in terms {
                let mirrored = rev.iter().find(|s| s.a == t.b && s.b == t.a);
                if mirrored.map(|s| &s.t) != Some(&t.t) {
                    return Err(Violation::QSymmetry { i, j, a: t.a, b: t.b });
                }
            }
            for s in rev {
                if !terms.iter().any(|t| t.a == s.b && t.b == s.a) {
                    return Err(Violation::QSymmetry { i, j, a: s.b, b: s.a });
                }
            }
            let lead = (-d.a(i, j)) as u32;
            if !terms.iter().any(|t| t.a == lead && t.b == 0) {
                return Err(Violation::QLeading { i, j, a: lead });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let gij = g.get(i, j).ok_or(Violation::GammaMissing { i, j })?;
            if d.parity(i) == 1 && d.parity(j) == 1 {
                let gji = g.get(j, i).ok_or(Violation::GammaMissing { i: j, j: i })?;
                let prod = gij * gji;
                if prod != BigRational::new(BigInt::from(-1), BigInt::from(2)) {
                    return Err(Violation::GammaOdd { i, j, value: prod.to_string() });
                }
            } else if !gij.is_one() {
                return Err(Violation::GammaEven { i, j, value: gij.to_string() });
            }
        }
    }
    Ok(())
}

/// An element of `N[I]`, stored as multiplicities per vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<u32>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("malformed weight {0:?}")]
    Malformed(String),
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn of_word(rank: usize, word: &[usize]) -> Self {
        let mut w = Weight::zero(rank);
        for &v in word {
            w.0[v] += 1;
        }
        w
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i] = 1;
        w
    }

    pub fn height(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other`, if nonnegative.
    pub fn checked_sub(&self, other: &Weight) -> Option<Weight> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Weight)
    }

    /// All weights of the given height, in lexicographic order.
    pub fn of_height(rank: usize, height: u32) -> Vec<Weight> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; rank];
        fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Weight>) {
            if k + 1 == cur.len() {
                cur[k] = left;
                out.push(Weight(cur.clone()));
                return;
            }
            for m in (0..=left).rev() {
                cur[k] = m;
                rec(k + 1, left - m, cur, out);
            }
        }
        if rank > 0 {
            rec(0, height, &mut cur, &mut out);
        }
        out
    }

    /// All weights `λ ≤ self` componentwise.
    pub fn below(&self) -> Vec<Weight> {
        let mut out = vec![Weight(Vec::new())];
        for &m in &self.0 {
            let mut next = Vec::new();
            for w in &out {
                for k in 0..=m {
                    let mut v = w.0.clone();
                    v.push(k);
                    next.push(Weight(v));
                }
            }
            out = next;
        }
        out
    }

    pub fn dot(&self, other: &Weight, d: &Superdatum) -> i64 {
        let mut s = 0;
        for i in 0..d.rank() {
            for j in 0..d.rank() {
                s += self.0[i] as i64 * other.0[j] as i64 * d.dot(i, j);
            }
        }
        s
    }

    pub fn parity(&self, d: &Superdatum) -> u8 {
        (self.0.iter().enumerate().map(|(i, m)| m * d.parity(i) as u32).sum::<u32>() % 2) as u8
    }

    /// All words with this weight, in lexicographic order.
    pub fn sequences(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut counts = self.0.clone();
        let mut cur = Vec::with_capacity(self.height() as usize);
        fn rec(counts: &mut Vec<u32>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, n: usize) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for v in 0..counts.len() {
                if counts[v] > 0 {
                    counts[v] -= 1;
                    cur.push(v);
                    rec(counts, cur, out, n);
                    cur.pop();
                    counts[v] += 1;
                }
            }
        }
        let n = self.height() as usize;
        rec(&mut counts, &mut cur, &mut out, n);
        out
    }

    /// Parses `i:2,j:1` (a bare name means multiplicity 1).
    pub fn parse(s: &str, d: &Superdatum) -> Result<Weight, WeightError> {
        let mut w = Weight::zero(d.rank());
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, mult) = match part.split_once(':') {
                Some((n, m)) => (n.trim(), m.trim().parse::<u32>().map_err(|_| WeightError::Malformed(s.to_string()))?),
                None => (part, 1),
            };
            let idx = d.index_of(name).ok_or_else(|| WeightError::UnknownVertex(name.to_string()))?;
            w.0[idx] += mult;
        }
        Ok(w)
    }

    pub fn display<'a>(&'a self, d: &'a Superdatum) -> WeightDisplay<'a> {
        WeightDisplay { w: self, d }
    }
}

pub struct WeightDisplay<'a> {
    w: &'a Weight,
    d: &'a Superdatum,
}

impl fmt::Display for WeightDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &m) in self.w.0.iter().enumerate() {
            if m == 0 {
                continue;
            }
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{}:{}", self.d.name(i), m)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Renders a word with vertex names, e.g. `i,j,i`.
pub fn word_name(d: &Superdatum, word: &[usize]) -> String {
    let names: Vec<&str> = word.iter().map(|&v| d.name(v)).collect();
    names.join(",")
}

/// Parses `i,j,i` (or `iji` when all names are single characters).
pub fn parse_word(d: &Superdatum, s: &str) -> Result<Vec<usize>, WeightError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let pieces: Vec<String> = if s.contains(',') {
        s.split(',').map(|p| p.trim().to_string()).collect()
    } else if d.index_of(s).is_some() {
        vec![s.to_string()]
    } else {
        s.chars().map(|c| c.to_string()).collect()
    };
    pieces.iter().map(|p| d.index_of(p).ok_or_else(|| WeightError::UnknownVertex(p.clone()))).collect()
}

/// Parity of a word: `Σ p(letter)` mod 2.
pub fn word_parity(d: &Superdatum, word: &[usize]) -> u8 {
    (word.iter().map(|&v| d.parity(v) as u32).sum::<u32>() % 2) as u8
}
