//! The quiver Hecke superalgebra `R(ν)` on the basis `x^u τ_ω 1_𝕚`, with a straightening
//! multiplication, bidegrees, the `ν = ni` specializations and cross-checks against the
//! polynomial representation.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::datum::{parse_word, word_name, HeckeDatum, Superdatum, Weight};
use crate::linalg::SparseEchelon;
use crate::perm::{braid_path, BraidMove, Perm};
use crate::scalar::{DimSeries, Scalar};
use crate::superpoly::{self, act_x, braid_correction, CliffordPoly, Monomial, Op, Reading, READING};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QhsaError {
    #[error("vertex {0} is not real")]
    NotReal(String),
    #[error("{0}")]
    Rep(#[from] superpoly::RepError),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("labels {0:?} and {1:?} have different weights")]
    WeightMismatch(Vec<usize>, Vec<usize>),
}

/// `x_1^{u_1} ⋯ x_n^{u_n} τ_ω 1_𝕚` with `τ_ω` taken along the canonical word of `ω`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasisSymbol {
    pub source: Vec<usize>,
    pub perm: Perm,
    pub dots: Vec<u32>,
}

impl BasisSymbol {
    pub fn idempotent(source: &[usize]) -> Self {
        BasisSymbol { source: source.to_vec(), perm: Perm::identity(source.len()), dots: vec![0; source.len()] }
    }

    pub fn strands(&self) -> usize {
        self.source.len()
    }

    pub fn target(&self) -> Vec<usize> {
        self.perm.apply(&self.source)
    }

    /// The symbol as a product of generators, leftmost first.
    pub fn word(&self) -> Vec<Op> {
        let mut w = Vec::new();
        for (k, &u) in self.dots.iter().enumerate() {
            w.extend(core::iter::repeat_n(Op::X(k), u as usize));
        }
        w.extend(self.perm.canonical_word().into_iter().map(Op::T));
        w
    }

    /// `(degree, parity)`: `Σ 2 r_{j_k} u_k − Σ i_a·i_b` over crossings, parity likewise.
    pub fn bidegree(&self, d: &Superdatum) -> (i64, u8) {
        let target = self.target();
        let mut deg = 0;
        let mut par = 0u32;
        for (k, &u) in self.dots.iter().enumerate() {
            deg += 2 * d.r(target[k]) * u as i64;
            par += d.parity(target[k]) as u32 * u;
        }
        for (a, b) in self.perm.crossings() {
            let (i, j) = (self.source[a], self.source[b]);
            deg -= d.dot(i, j);
            par += (d.parity(i) * d.parity(j)) as u32;
        }
        (deg, (par % 2) as u8)
    }
}

/// A finite integer combination of basis symbols.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QhsaElement {
    terms: BTreeMap<BasisSymbol, BigInt>,
}

impl QhsaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn idempotent(source: &[usize]) -> Self {
        Self::symbol(BasisSymbol::idempotent(source))
    }

    pub fn symbol(s: BasisSymbol) -> Self {
        let mut e = Self::zero();
        e.add_term(s, BigInt::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisSymbol, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s: &BasisSymbol) -> BigInt {
        self.terms.get(s).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, s: BasisSymbol, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, rhs: &QhsaElement, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for (s, v) in &rhs.terms {
            self.add_term(s.clone(), v * c);
        }
    }

    pub fn add(&self, rhs: &QhsaElement) -> QhsaElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigInt::one());
        out
    }

    pub fn sub(&self, rhs: &QhsaElement) -> QhsaElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigInt::one());
        out
    }

    pub fn scale(&self, c: &BigInt) -> QhsaElement {
        let mut out = QhsaElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// The common bidegree, if every term has the same one.
    pub fn bidegree(&self, d: &Superdatum) -> Option<(i64, u8)> {
        let mut it = self.terms.keys().map(|s| s.bidegree(d));
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    /// Canonical text, e.g. `2*x(1)^2*t(1)*e(i,j) - e(j,i)`.
    pub fn to_text(&self, d: &Superdatum) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (sym, c)) in self.terms.iter().enumerate() {
            if idx == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mag = c.abs();
            if !mag.is_one() {
                s.push_str(&format!("{}*", mag));
            }
            for (k, &u) in sym.dots.iter().enumerate() {
                if u == 1 {
                    s.push_str(&format!("x({})*", k + 1));
                } else if u > 1 {
                    s.push_str(&format!("x({})^{}*", k + 1, u));
                }
            }
            for k in sym.perm.canonical_word() {
                s.push_str(&format!("t({})*", k + 1));
            }
            s.push_str(&format!("e({})", word_name(d, &sym.source)));
        }
        s
    }
}

/// Normal-form multiplication by rewriting with the local relations.
///
/// Holds memo tables; one instance per thread.
pub struct Straightener<'a> {
    h: &'a HeckeDatum,
    reading: Reading,
    cache: BTreeMap<(Op, BasisSymbol), QhsaElement>,
    paths: BTreeMap<(Vec<usize>, Vec<usize>), Vec<BraidMove>>,
}

fn sign(neg: bool) -> BigInt {
    if neg {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

impl<'a> Straightener<'a> {
    pub fn new(h: &'a HeckeDatum) -> Self {
        Self::with_reading(h, READING)
    }

    pub fn with_reading(h: &'a HeckeDatum, reading: Reading) -> Self {
        Straightener { h, reading, cache: BTreeMap::new(), paths: BTreeMap::new() }
    }

    pub fn datum(&self) -> &'a HeckeDatum {
        self.h
    }

    fn odd(&self, v: usize) -> bool {
        self.h.parity(v) == 1
    }

    /// `a · b`.
    pub fn mult(&mut self, a: &QhsaElement, b: &QhsaElement) -> QhsaElement {
        let mut out = QhsaElement::zero();
        for (sa, ca) in &a.terms {
            let word = sa.word();
            for (sb, cb) in &b.terms {
                if sb.target() != sa.source {
                    continue;
                }
                let prod = self.apply_word(&word, &QhsaElement::symbol(sb.clone()));
                out.add_scaled(&prod, &(ca * cb));
            }
        }
        out
    }

    /// The generator word `ops` (leftmost first) times `1_source`, in normal form.
    pub fn word_element(&mut self, ops: &[Op], source: &[usize]) -> QhsaElement {
        self.apply_word(ops, &QhsaElement::idempotent(source))
    }

    /// Left-multiply `e` by the product `ops` (the last op is applied first).
    pub fn apply_word(&mut self, ops: &[Op], e: &QhsaElement) -> QhsaElement {
        let mut cur = e.clone();
        for &op in ops.iter().rev() {
            cur = self.left_op(op, &cur);
        }
        cur
    }

    /// `g · e` for a generator `g` (placed on the target side of every term).
    pub fn left_op(&mut self, op: Op, e: &QhsaElement) -> QhsaElement {
        let mut out = QhsaElement::zero();
        for (s, c) in &e.terms {
            let prod = self.left_gen(op, s);
            out.add_scaled(&prod, c);
        }
        out
    }

    fn left_gen(&mut self, op: Op, s: &BasisSymbol) -> QhsaElement {
        let key = (op, s.clone());
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let out = match op {
            Op::X(k) => self.left_x(k, s),
            Op::T(k) => self.left_tau(k, s),
        };
        self.cache.insert(key, out.clone());
        out
    }

    fn left_x(&self, k: usize, s: &BasisSymbol) -> QhsaElement {
        let target = s.target();
        let mut neg = false;
        if self.odd(target[k]) {
            for l in 0..k {
                if self.odd(target[l]) && s.dots[l] % 2 == 1 {
                    neg = !neg;
                }
            }
        }
        let mut s2 = s.clone();
        s2.dots[k] += 1;
        QhsaElement::symbol(s2).scale(&sign(neg))
    }

    fn left_tau(&mut self, k: usize, s: &BasisSymbol) -> QhsaElement {
        let Some(a) = s.dots.iter().position(|&u| u > 0) else {
            return self.tau_on_perm(k, &s.perm, &s.source);
        };
        let t = s.target();
        let (i, j) = (t[k], t[k + 1]);
        let mut rest = s.clone();
        rest.dots[a] -= 1;
        // τ_k x_a = c · x_b τ_k + c0
        let (b, c, c0): (usize, i64, i64) = if a != k && a != k + 1 {
            let e = self.odd(t[a]) && self.odd(i) && self.odd(j);
            (a, if e { -1 } else { 1 }, 0)
        } else {
            let other = if a == k { k + 1 } else { k };
            if i == j && self.h.is_real(i) && !self.odd(i) {
                let mirrored = self.reading.mirrored_even_dot_crossing;
                let c0 = match (a == k, mirrored) {
                    (true, true) | (false, false) => 1,
                    _ => -1,
                };
                (other, 1, c0)
            } else if i == j && self.h.is_real(i) {
                (other, -1, 1)
            } else {
                (other, if self.odd(i) && self.odd(j) { -1 } else { 1 }, 0)
            }
        };
        let inner = self.left_gen(Op::T(k), &rest);
        let mut out = self.left_op(Op::X(b), &inner).scale(&BigInt::from(c));
        if c0 != 0 {
            out.add_term(rest, BigInt::from(c0));
        }
        out
    }

    fn path(&mut self, from: &[usize], to: &[usize]) -> Vec<BraidMove> {
        let key = (from.to_vec(), to.to_vec());
        if let Some(p) = self.paths.get(&key) {
            return p.clone();
        }
        let p = braid_path(from, to).expect("reduced words of one permutation are braid-connected");
        self.paths.insert(key, p.clone());
        p
    }

    /// `τ_from 1_source = c · τ_to 1_source + corrections`, both reduced words of one permutation.
    fn rewrite(&mut self, from: &[usize], to: &[usize], source: &[usize]) -> (BigInt, QhsaElement) {
        let n = source.len();
        let mut w = from.to_vec();
        let mut coef = BigInt::one();
        let mut corr = QhsaElement::zero();
        for mv in self.path(from, to) {
            match mv {
                BraidMove::Commute(p) => {
                    let below = Perm::from_word(n, &w[p + 2..]).apply(source);
                    let (a, b) = (w[p], w[p + 1]);
                    if [below[a], below[a + 1], below[b], below[b + 1]].iter().all(|&v| self.odd(v)) {
                        coef = -coef;
                    }
                }
                BraidMove::Braid(p) => {
                    let below = Perm::from_word(n, &w[p + 3..]).apply(source);
                    let (a, b) = (w[p], w[p + 1]);
                    let k = a.min(b);
                    let (i, j, l) = (below[k], below[k + 1], below[k + 2]);
                    if i == l && i != j && self.h.is_real(i) {
                        // τ_k τ_{k+1} τ_k − τ_{k+1} τ_k τ_{k+1} = C
                        let sgn = if a == k { coef.clone() } else { -coef.clone() };
                        let base = self.word_element(&w[p + 3..].iter().map(|&x| Op::T(x)).collect::<Vec<_>>(), source);
                        for (c, dots) in braid_correction(self.h, i, j, k, self.reading.braid_scale) {
                            let mut ops: Vec<Op> = w[..p].iter().map(|&x| Op::T(x)).collect();
                            ops.extend(dots);
                            let term = self.apply_word(&ops, &base);
                            corr.add_scaled(&term, &(&sgn * BigInt::from(c)));
                        }
                    }
                }
            }
            mv.apply(&mut w);
        }
        (coef, corr)
    }

    fn tau_on_perm(&mut self, k: usize, perm: &Perm, source: &[usize]) -> QhsaElement {
        let n = source.len();
        let can = perm.canonical_word();
        let next = perm.left_mul(k);
        let next_can = next.canonical_word();
        if perm.left_ascent(k) {
            let mut from = vec![k];
            from.extend(&can);
            let (coef, mut corr) = self.rewrite(&from, &next_can, source);
            corr.add_term(BasisSymbol { source: source.to_vec(), perm: next, dots: vec![0; n] }, coef);
            return corr;
        }
        let mut to = vec![k];
        to.extend(&next_can);
        let (coef, corr) = self.rewrite(&can, &to, source);
        let mut out = self.left_op(Op::T(k), &corr);
        let lower = BasisSymbol { source: source.to_vec(), perm: next, dots: vec![0; n] };
        let t = lower.target();
        if t[k] != t[k + 1] {
            let base = QhsaElement::symbol(lower);
            for term in self.h.q_terms(t[k], t[k + 1]) {
                let mut ops = vec![Op::X(k); term.a as usize];
                ops.extend(vec![Op::X(k + 1); term.b as usize]);
                let e = self.apply_word(&ops, &base);
                out.add_scaled(&e, &(&coef * &term.t));
            }
        }
        out
    }

    /// `e_{i,n} = ± x_1^{n−1} ⋯ x_{n−1} τ_{ω₀} 1_{i^n}`, with sign `(−1)^{C(n,3)}` for odd `i`.
    pub fn e_idempotent(&mut self, i: usize, n: usize) -> Result<QhsaElement, QhsaError> {
        e_idempotent(self.h, i, n)
    }

    /// Whether `z` supercommutes with every `x_k 1_𝕚` and `τ_k 1_𝕚`, 𝕚 ∈ Seq(ν).
    pub fn center_probe(&mut self, nu: &Weight, z: &QhsaElement) -> bool {
        let d = &self.h.datum;
        let Some((_, pz)) = z.bidegree(d) else {
            return z.is_zero();
        };
        for label in nu.sequences() {
            let n = label.len();
            let mut gens = Vec::new();
            for k in 0..n {
                gens.push((Op::X(k), d.parity(label[k])));
            }
            for k in 0..n.saturating_sub(1) {
                gens.push((Op::T(k), d.parity(label[k]) * d.parity(label[k + 1])));
            }
            for (op, pg) in gens {
                let g = self.word_element(&[op], &label);
                let zg = self.mult(z, &g);
                let gz = self.mult(&g, z);
                let gz = if pz * pg == 1 { gz.scale(&-BigInt::one()) } else { gz };
                if zg != gz {
                    return false;
                }
            }
        }
        true
    }

    /// Parse the expression grammar: a sum of `[c*]factor*…*e(word)` with factors `x(k)`,
    /// `x(k)^m`, `t(k)` (1-based), straightened to normal form.
    pub fn parse(&mut self, text: &str) -> Result<QhsaElement, QhsaError> {
        let d = &self.h.datum;
        let err = |m: &str| QhsaError::Parse(m.to_string());
        let mut out = QhsaElement::zero();
        let src = text.trim();
        if src == "0" {
            return Ok(out);
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut depth = 0i32;
        for ch in src.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if depth == 0 && (ch == '+' || ch == '-') {
                if !cur.trim().is_empty() {
                    pieces.push((neg, cur.trim().to_string()));
                } else if ch == '-' {
                    neg = !neg;
                    continue;
                } else {
                    continue;
                }
                cur.clear();
                neg = ch == '-';
                continue;
            }
            cur.push(ch);
        }
        if cur.trim().is_empty() {
            return Err(err("dangling operator"));
        }
        pieces.push((neg, cur.trim().to_string()));
        for (neg, piece) in pieces {
            let factors: Vec<&str> = piece.split('*').map(str::trim).collect();
            let mut coef = BigInt::one();
            let mut ops = Vec::new();
            let mut source = None;
            for (idx, f) in factors.iter().enumerate() {
                if let Ok(c) = f.parse::<BigInt>() {
                    coef *= c;
                } else if let Some(rest) = f.strip_prefix("e(").and_then(|r| r.strip_suffix(')')) {
                    if idx + 1 != factors.len() {
                        return Err(err("e(..) must be the last factor"));
                    }
                    source = Some(parse_word(d, rest).map_err(|e| QhsaError::Parse(e.to_string()))?);
                } else if let Some(rest) = f.strip_prefix("x(") {
                    let (inner, pow) = match rest.split_once(")^") {
                        Some((a, b)) => (a, b.parse::<usize>().map_err(|_| err("bad exponent"))?),
                        None => (rest.strip_suffix(')').ok_or_else(|| err("unclosed x("))?, 1),
                    };
                    let k: usize = inner.parse().map_err(|_| err("bad strand index"))?;
                    if k == 0 {
                        return Err(err("strands are 1-based"));
                    }
                    ops.extend(core::iter::repeat_n(Op::X(k - 1), pow));
                } else if let Some(rest) = f.strip_prefix("t(").and_then(|r| r.strip_suffix(')')) {
                    let k: usize = rest.parse().map_err(|_| err("bad crossing index"))?;
                    if k == 0 {
                        return Err(err("crossings are 1-based"));
                    }
                    ops.push(Op::T(k - 1));
                } else {
                    return Err(QhsaError::Parse(format!("unknown factor `{f}`")));
                }
            }
            let source = source.ok_or_else(|| err("every term needs a trailing e(..)"))?;
            for op in &ops {
                let bad = match *op {
                    Op::X(k) => k >= source.len(),
                    Op::T(k) => k + 1 >= source.len(),
                };
                if bad {
                    return Err(err("index out of range"));
                }
            }
            let e = self.word_element(&ops, &source);
            out.add_scaled(&e, &if neg { -coef } else { coef });
        }
        Ok(out)
    }
}

/// `e_{i,n}` for a real vertex `i`.
pub fn e_idempotent(h: &HeckeDatum, i: usize, n: usize) -> Result<QhsaElement, QhsaError> {
    if !h.is_real(i) {
        return Err(QhsaError::NotReal(h.datum.name(i).to_string()));
    }
    let dots = (0..n).map(|k| (n - 1 - k) as u32).collect();
    let sym = BasisSymbol { source: vec![i; n], perm: Perm::longest(n), dots };
    let mut e = QhsaElement::symbol(sym);
    if h.parity(i) == 1 && binomial(n as u64, 3) % 2 == 1 {
        e = e.scale(&-BigInt::one());
    }
    Ok(e)
}

/// An element of `𝒫_ν = ⊕ 𝒫_𝕚`, keyed by label.
pub type PolyVec = BTreeMap<Vec<usize>, CliffordPoly>;

/// Add `p` into `v`, dropping zero components.
pub fn polyvec_add(v: &mut PolyVec, p: CliffordPoly) {
    if p.is_zero() {
        return;
    }
    let label = p.label().to_vec();
    let next = match v.remove(&label) {
        Some(old) => old.add(&p),
        None => p,
    };
    if !next.is_zero() {
        v.insert(label, next);
    }
}

/// Action of `a` on `f` through the generator words of its basis symbols.
pub fn act_on_poly(h: &HeckeDatum, a: &QhsaElement, f: &CliffordPoly) -> Result<PolyVec, QhsaError> {
    let mut out = PolyVec::new();
    for (s, c) in a.terms() {
        if s.source.as_slice() != f.label() {
            continue;
        }
        let g = superpoly::apply_ops(h, &s.word(), f)?;
        polyvec_add(&mut out, g.scale(&BigRational::from_integer(c.clone())));
    }
    Ok(out)
}

/// Action on a vector of polynomials.
pub fn act_on_polyvec(h: &HeckeDatum, a: &QhsaElement, v: &PolyVec) -> Result<PolyVec, QhsaError> {
    let mut out = PolyVec::new();
    for f in v.values() {
        for (_, p) in act_on_poly(h, a, f)? {
            polyvec_add(&mut out, p);
        }
    }
    Ok(out)
}

/// `dim^π_q 1_target R(ν) 1_source` truncated at `order`, from the basis description.
pub fn graded_dim(d: &Superdatum, target: &[usize], source: &[usize], order: i64) -> DimSeries {
    let mut out = DimSeries::zero(order);
    if target.len() != source.len() {
        return out;
    }
    let n = source.len();
    for perm in Perm::all(n) {
        if perm.apply(source) != target {
            continue;
        }
        let (deg, par) = BasisSymbol { source: source.to_vec(), perm, dots: vec![0; n] }.bidegree(d);
        let mut s = DimSeries::one(order - deg);
        for &v in target {
            s = s.mul(&DimSeries::geometric(d.parity(v), 2 * d.r(v), order - deg));
        }
        out = out.add(&s.shift(deg).pi_pow(par));
    }
    out
}

/// Basis symbols of `1_target R 1_source` with every dot exponent at most `max_dot`.
pub fn symbols(target: &[usize], source: &[usize], max_dot: u32) -> Vec<BasisSymbol> {
    let n = source.len();
    let mut dot_vecs: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..n {
        dot_vecs = dot_vecs
            .into_iter()
            .flat_map(|v| {
                (0..=max_dot).map(move |u| {
                    let mut v2 = v.clone();
                    v2.push(u);
                    v2
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for perm in Perm::all(n) {
        if perm.apply(source) != target {
            continue;
        }
        for dots in &dot_vecs {
            out.push(BasisSymbol { source: source.to_vec(), perm: perm.clone(), dots: dots.clone() });
        }
    }
    out
}

/// Evaluate `τ_{ω₀}` on `x_1^{n−1} x_2^{n−2} ⋯ x_{n−1} · 1`; `Some(c)` when the result is the
/// constant `c`.
pub fn tau_omega0_eval(h: &HeckeDatum, i: usize, n: usize) -> Result<Option<BigRational>, QhsaError> {
    let label = vec![i; n];
    let mut f = CliffordPoly::one(&h.datum, &label);
    for k in (0..n).rev() {
        for _ in 0..(n - 1 - k) {
            f = act_x(k, &f);
        }
    }
    let ops: Vec<Op> = Perm::longest(n).canonical_word().into_iter().map(Op::T).collect();
    let g = superpoly::apply_ops(h, &ops, &f)?;
    let c = g.coeff(&Monomial::one());
    if g.len() > 1 || (g.len() == 1 && c.is_zero()) {
        return Ok(None);
    }
    Ok(Some(c))
}

/// The probe vectors: `τ_{ω'} · Π_k (c_k^{p} w_k)^{n−k}` on every label, `w_k = y_k` for a
/// real and `z_k` for an imaginary strand.
pub fn probes(h: &HeckeDatum, nu: &Weight) -> Result<Vec<CliffordPoly>, QhsaError> {
    let d = &h.datum;
    let mut out = Vec::new();
    for label in nu.sequences() {
        let n = label.len();
        let mut f = CliffordPoly::one(d, &label);
        for k in (0..n).rev() {
            let mut m = if d.is_real(label[k]) { Monomial::y(k) } else { Monomial::z(k) };
            if d.parity(label[k]) == 1 {
                m.c = 1 << k;
            }
            for _ in 0..(n - 1 - k) {
                f = f.mul_monomial_left(&m);
            }
        }
        for perm in Perm::all(n) {
            let ops: Vec<Op> = perm.canonical_word().into_iter().map(Op::T).collect();
            let g = superpoly::apply_ops(h, &ops, &f)?;
            if !g.is_zero() {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// Whether the basis symbols of `R(ν)` with dots at most `max_dot` act linearly independently
/// on the probe vectors.
pub fn independence_check(h: &HeckeDatum, nu: &Weight, max_dot: u32) -> Result<bool, QhsaError> {
    let probes = probes(h, nu)?;
    let mut ech: SparseEchelon<(usize, Vec<usize>, Monomial)> = SparseEchelon::new();
    let mut count = 0usize;
    for source in nu.sequences() {
        for target in nu.sequences() {
            for s in symbols(&target, &source, max_dot) {
                count += 1;
                let e = QhsaElement::symbol(s);
                let mut v = BTreeMap::new();
                for (pi, p) in probes.iter().enumerate() {
                    for (label, g) in act_on_poly(h, &e, p)? {
                        for (m, c) in g.terms() {
                            v.insert((pi, label.clone(), *m), c.clone());
                        }
                    }
                }
                if !ech.insert(v) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(ech.rank() == count)
}

/// The trivial-module functional on `R(ni)` for imaginary `i`: `1_{i^n} ↦ 1`, every other
/// basis symbol to 0.
pub fn trivial_functional(e: &QhsaElement) -> BigInt {
    e.terms().filter(|(s, _)| s.perm.is_identity() && s.dots.iter().all(|&u| u == 0)).map(|(_, c)| c.clone()).sum()
}

/// `(−1)^{C(n,3)}`.
pub fn omega0_sign(n: usize) -> i64 {
    if binomial(n as u64, 3) % 2 == 1 {
        -1
    } else {
        1
    }
}

/// Series of one basis symbol, used by the brute-force dimension oracle.
pub fn symbol_scalar(d: &Superdatum, s: &BasisSymbol) -> Scalar {
    let (deg, par) = s.bidegree(d);
    Scalar::monomial(BigInt::one(), par, deg)
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}{:?}", self.dots, self.perm.canonical_word(), self.source)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::HeckeDatum;

    fn single(parity: u8, a: i64) -> HeckeDatum {
        HeckeDatum::with_defaults(Superdatum::from_parts(&["i"], &[parity], &[1], &[&[a]]))
    }

    fn pair() -> HeckeDatum {
        HeckeDatum::with_defaults(Superdatum::from_parts(&["i", "j"], &[1, 1], &[1, 1], &[&[2, -2], &[-2, -2]]))
    }

    #[test]
    fn tau_squared() {
        let h = single(0, 2);
        let mut st = Straightener::new(&h);
        assert!(st.word_element(&[Op::T(0), Op::T(0)], &[0, 0]).is_zero());
        let h = pair();
        let mut st = Straightener::new(&h);
        let e = st.word_element(&[Op::T(0), Op::T(0)], &[0, 1]);
        assert_eq!(e.to_text(&h.datum), "x(2)^2*e(i,j) + x(1)^2*e(i,j)");
    }

    #[test]
    fn odd_e2() {
        let h = single(1, 2);
        let mut st = Straightener::new(&h);
        let e = st.word_element(&[Op::X(0), Op::T(0)], &[0, 0]);
        assert_eq!(st.mult(&e, &e), e);
        assert_eq!(e_idempotent(&h, 0, 2).unwrap(), e);
    }

    #[test]
    fn idempotents() {
        for p in [0, 1] {
            let h = single(p, 2);
            let mut st = Straightener::new(&h);
            for n in 1..=4 {
                let e = e_idempotent(&h, 0, n).unwrap();
                assert_eq!(st.mult(&e, &e), e, "parity {p} n {n}");
            }
        }
        assert!(e_idempotent(&single(1, -2), 0, 2).is_err());
    }

    #[test]
    fn tau_omega0() {
        let h = single(1, 2);
        for n in 2..=5 {
            let c = tau_omega0_eval(&h, 0, n).unwrap().unwrap();
            assert_eq!(c, BigRational::from_integer(BigInt::from(omega0_sign(n))), "n = {n}");
        }
    }

    #[test]
    fn center() {
        let h = single(1, 2);
        let mut st = Straightener::new(&h);
        let nu = Weight(vec![2]);
        let sq = st.parse("x(1)^2*e(i,i) + x(2)^2*e(i,i)").unwrap();
        assert!(st.center_probe(&nu, &sq));
        let x1 = st.parse("x(1)*e(i,i)").unwrap();
        assert!(!st.center_probe(&nu, &x1));
    }

    #[test]
    fn text_roundtrip() {
        let h = pair();
        let mut st = Straightener::new(&h);
        let e = st.parse("2*x(1)*t(1)*x(1)*e(i,j) - t(1)*t(1)*e(j,i) + 3*e(j,i)").unwrap();
        let text = e.to_text(&h.datum);
        assert_eq!(st.parse(&text).unwrap(), e);
        assert!(st.parse("x(1)*e(i,j)*t(1)").is_err());
        assert!(st.parse("x(0)*e(i,j)").is_err());
    }

    #[test]
    fn graded_dim_single_strand() {
        let h = single(1, 2);
        let g = graded_dim(&h.datum, &[0], &[0], 6);
        assert_eq!(g, DimSeries::geometric(1, 2, 6));
    }

    fn mixed() -> HeckeDatum {
        HeckeDatum::with_defaults(Superdatum::from_parts(
            &["a", "b", "c"],
            &[0, 0, 1],
            &[1, 1, 1],
            &[&[2, -1, 0], &[-1, 0, -2], &[0, -2, 2]],
        ))
    }

    fn check_homomorphism(h: &HeckeDatum, nu: &Weight) {
        let mut st = Straightener::new(h);
        let labels = nu.sequences();
        let n = nu.height() as usize;
        let tests: Vec<CliffordPoly> = labels
            .iter()
            .flat_map(|l| {
                superpoly::monomials_up_to(n, 2)
                    .into_iter()
                    .step_by(7)
                    .map(|m| CliffordPoly::monomial(&h.datum, l, m, BigRational::one()))
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut all = Vec::new();
        for s in &labels {
            for t in &labels {
                all.extend(symbols(t, s, 1));
            }
        }
        for a in all.iter().step_by(3) {
            for b in all.iter().step_by(5) {
                if b.target() != a.source {
                    continue;
                }
                let ea = QhsaElement::symbol(a.clone());
                let eb = QhsaElement::symbol(b.clone());
                let ab = st.mult(&ea, &eb);
                if !ab.is_zero() {
                    let (da, pa) = a.bidegree(&h.datum);
                    let (db, pb) = b.bidegree(&h.datum);
                    assert_eq!(ab.bidegree(&h.datum), Some((da + db, (pa + pb) % 2)));
                }
                for f in &tests {
                    let lhs = act_on_poly(h, &ab, f).unwrap();
                    let rhs = act_on_polyvec(h, &ea, &act_on_poly(h, &eb, f).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{a} * {b} on {}", f.display());
                }
            }
        }
    }

    #[test]
    fn homomorphism_small() {
        let h = pair();
        for nu in [Weight(vec![2, 0]), Weight(vec![1, 1]), Weight(vec![0, 2]), Weight(vec![2, 1]), Weight(vec![1, 2])] {
            check_homomorphism(&h, &nu);
        }
        let h = mixed();
        for nu in [Weight(vec![2, 1, 0]), Weight(vec![1, 1, 1]), Weight(vec![0, 1, 2]), Weight(vec![1, 0, 2])] {
            check_homomorphism(&h, &nu);
        }
        let h = HeckeDatum::with_defaults(Superdatum::from_parts(&["i", "j"], &[0, 0], &[1, 1], &[&[2, -1], &[-1, 2]]));
        for nu in [Weight(vec![2, 1]), Weight(vec![1, 2]), Weight(vec![3, 0])] {
            check_homomorphism(&h, &nu);
        }
    }

    #[test]
    fn independence() {
        let oi = single(1, -2);
        assert!(independence_check(&oi, &Weight(vec![1]), 2).unwrap());
        assert!(independence_check(&oi, &Weight(vec![2]), 2).unwrap());
        assert!(independence_check(&oi, &Weight(vec![3]), 1).unwrap());
        assert!(independence_check(&pair(), &Weight(vec![1, 1]), 2).unwrap());
        assert!(independence_check(&mixed(), &Weight(vec![0, 2, 1]), 1).unwrap());
    }

    // Brute-force count of basis symbols by bidegree.
    #[test]
    fn graded_dim_matches_enumeration() {
        for h in [pair(), mixed(), single(0, 2), single(1, -2)] {
            let d = &h.datum;
            let rank = d.rank();
            for nu in [
                Weight((0..rank).map(|v| (v == 0) as u32 * 2).collect()),
                Weight((0..rank).map(|v| (v < 2) as u32).collect()),
            ] {
                for s in nu.sequences() {
                    for t in nu.sequences() {
                        let order = 8;
                        let mut oracle = DimSeries::zero(order);
                        for sym in symbols(&t, &s, 8) {
                            let (deg, par) = sym.bidegree(d);
                            if deg <= order {
                                let one = BigInt::one();
                                let zero = BigInt::zero();
                                if par == 0 {
                                    oracle.add_at(deg, &one, &zero);
                                } else {
                                    oracle.add_at(deg, &zero, &one);
                                }
                            }
                        }
                        assert_eq!(graded_dim(d, &t, &s, order), oracle, "{t:?} {s:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_module_kills_nonunit_symbols() {
        let h = single(1, -2);
        let mut st = Straightener::new(&h);
        for a in symbols(&[0, 0], &[0, 0], 2) {
            for b in symbols(&[0, 0], &[0, 0], 2) {
                let ea = QhsaElement::symbol(a.clone());
                let eb = QhsaElement::symbol(b.clone());
                let prod = trivial_functional(&st.mult(&ea, &eb));
                assert_eq!(prod, trivial_functional(&ea) * trivial_functional(&eb));
            }
        }
    }
}
