//! The polynomial representation: Clifford-polynomial superalgebras `𝒫_𝕚` in even variables
//! `y_k`, `z_k` and odd `c_k`, the operators `s_k`, `σ_k`, `σ′_k`, `s̃_k`, `≈s_k`, and the
//! action of the generators `x_k`, `τ_k` of `R(ν)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::datum::{HeckeDatum, Superdatum};

/// Largest number of strands a [`Monomial`] can carry.
pub const MAX_STRANDS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("s~/s≈ need equal even labels at positions {k} and {k}+1")]
    ParityPrecondition { k: usize },
    #[error("generator label does not match the polynomial label")]
    LabelMismatch,
    #[error("position {k} out of range for {n} strands")]
    Position { k: usize, n: usize },
    #[error("at most {MAX_STRANDS} strands are supported")]
    TooManyStrands,
}

/// A normal-ordered monomial `y^a z^b c_S` (the `c`'s in increasing order).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    pub y: [u8; MAX_STRANDS],
    pub z: [u8; MAX_STRANDS],
    pub c: u16,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn y(k: usize) -> Self {
        let mut m = Monomial::one();
        m.y[k] = 1;
        m
    }

    pub fn z(k: usize) -> Self {
        let mut m = Monomial::one();
        m.z[k] = 1;
        m
    }

    pub fn c(k: usize) -> Self {
        Monomial { c: 1 << k, ..Monomial::one() }
    }

    /// Total exponent in the even variables.
    pub fn degree(&self) -> u32 {
        self.y.iter().chain(self.z.iter()).map(|&e| e as u32).sum()
    }

    pub fn c_len(&self) -> u32 {
        self.c.count_ones()
    }

    /// Swap strands `k`, `k+1` in `y`, `z` and `c`; returns the reordering sign of the `c`'s.
    fn swap_all(&self, k: usize) -> (bool, Monomial) {
        let mut m = *self;
        m.y.swap(k, k + 1);
        m.z.swap(k, k + 1);
        let bk = (self.c >> k) & 1;
        let bk1 = (self.c >> (k + 1)) & 1;
        m.c = (self.c & !(0b11 << k)) | (bk << (k + 1)) | (bk1 << k);
        (bk == 1 && bk1 == 1, m)
    }
}

/// Sign and result of `m1 · m2` in `𝒫_𝕚` with strand parities `parity`.
pub fn mono_mul(parity: &[u8], m1: &Monomial, m2: &Monomial) -> (bool, Monomial) {
    let mut neg = false;
    // c_S moving right past y^{a'} z^{b'}
    let mut s = m1.c;
    while s != 0 {
        let k = s.trailing_zeros() as usize;
        s &= s - 1;
        if parity[k] == 1 && (m2.y[k] as u32 + m2.z[k] as u32) % 2 == 1 {
            neg = !neg;
        }
    }
    // c_S c_S': count pairs s in S, t in S' with s > t
    let mut t = m2.c;
    let mut inversions = 0u32;
    while t != 0 {
        let k = t.trailing_zeros();
        t &= t - 1;
        inversions += (m1.c >> (k + 1)).count_ones();
    }
    if inversions % 2 == 1 {
        neg = !neg;
    }
    let mut out = Monomial { c: m1.c ^ m2.c, ..Monomial::one() };
    for k in 0..MAX_STRANDS {
        out.y[k] = m1.y[k] + m2.y[k];
        out.z[k] = m1.z[k] + m2.z[k];
    }
    (neg, out)
}

/// An element of `𝒫_𝕚` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliffordPoly {
    label: Vec<usize>,
    parity: Vec<u8>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl CliffordPoly {
    pub fn zero(d: &Superdatum, label: &[usize]) -> Self {
        assert!(label.len() <= MAX_STRANDS, "too many strands");
        CliffordPoly {
            label: label.to_vec(),
            parity: label.iter().map(|&v| d.parity(v)).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(d: &Superdatum, label: &[usize]) -> Self {
        CliffordPoly::monomial(d, label, Monomial::one(), BigRational::one())
    }

    pub fn monomial(d: &Superdatum, label: &[usize], m: Monomial, c: BigRational) -> Self {
        let mut p = CliffordPoly::zero(d, label);
        p.add_term(m, c);
        p
    }

    fn empty_like(&self) -> Self {
        CliffordPoly { label: self.label.clone(), parity: self.parity.clone(), terms: BTreeMap::new() }
    }

    fn with_label(label: Vec<usize>, parity: Vec<u8>) -> Self {
        CliffordPoly { label, parity, terms: BTreeMap::new() }
    }

    pub fn label(&self) -> &[usize] {
        &self.label
    }

    pub fn parities(&self) -> &[u8] {
        &self.parity
    }

    pub fn strands(&self) -> usize {
        self.label.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn add_signed(&mut self, neg: bool, m: Monomial, c: &BigRational) {
        if neg {
            self.add_term(m, -c);
        } else {
            self.add_term(m, c.clone());
        }
    }

    pub fn add(&self, rhs: &CliffordPoly) -> CliffordPoly {
        assert_eq!(self.label, rhs.label, "adding polynomials with different labels");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &CliffordPoly) -> CliffordPoly {
        assert_eq!(self.label, rhs.label, "subtracting polynomials with different labels");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> CliffordPoly {
        if c.is_zero() {
            return self.empty_like();
        }
        let mut out = self.empty_like();
        out.terms = self.terms.iter().map(|(m, v)| (*m, v * c)).collect();
        out
    }

    pub fn neg(&self) -> CliffordPoly {
        self.scale(&-BigRational::one())
    }

    /// Product in `𝒫_𝕚`.
    pub fn mul(&self, rhs: &CliffordPoly) -> CliffordPoly {
        assert_eq!(self.label, rhs.label, "multiplying polynomials with different labels");
        let mut out = self.empty_like();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let (neg, m) = mono_mul(&self.parity, m1, m2);
                out.add_signed(neg, m, &(c1 * c2));
            }
        }
        out
    }

    /// `m · self`.
    pub fn mul_monomial_left(&self, m: &Monomial) -> CliffordPoly {
        let mut out = self.empty_like();
        for (m2, c) in &self.terms {
            let (neg, prod) = mono_mul(&self.parity, m, m2);
            out.add_signed(neg, prod, c);
        }
        out
    }

    /// `self · m`.
    pub fn mul_monomial_right(&self, m: &Monomial) -> CliffordPoly {
        let mut out = self.empty_like();
        for (m1, c) in &self.terms {
            let (neg, prod) = mono_mul(&self.parity, m1, m);
            out.add_signed(neg, prod, c);
        }
        out
    }

    fn check_pos(&self, k: usize) -> Result<(), RepError> {
        if k + 1 >= self.strands() {
            return Err(RepError::Position { k, n: self.strands() });
        }
        Ok(())
    }

    /// `s_k`: relabel strands `k ↔ k+1` in every symbol and in the label.
    pub fn sn_act(&self, k: usize) -> CliffordPoly {
        let mut label = self.label.clone();
        label.swap(k, k + 1);
        let mut parity = self.parity.clone();
        parity.swap(k, k + 1);
        let mut out = CliffordPoly::with_label(label, parity);
        for (m, c) in &self.terms {
            let (neg, m2) = m.swap_all(k);
            out.add_signed(neg, m2, c);
        }
        out
    }

    fn swap_vars(&self, k: usize, y: bool, z: bool) -> CliffordPoly {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            let mut m2 = *m;
            if y {
                m2.y.swap(k, k + 1);
            }
            if z {
                m2.z.swap(k, k + 1);
            }
            out.add_term(m2, c.clone());
        }
        out
    }

    fn check_even_pair(&self, k: usize) -> Result<(), RepError> {
        self.check_pos(k)?;
        if self.label[k] != self.label[k + 1] || self.parity[k] != 0 {
            return Err(RepError::ParityPrecondition { k });
        }
        Ok(())
    }

    /// `s̃_k`: swap `y_k ↔ y_{k+1}` only.
    pub fn tilde_s(&self, k: usize) -> Result<CliffordPoly, RepError> {
        self.check_even_pair(k)?;
        Ok(self.swap_vars(k, true, false))
    }

    /// `≈s_k`: swap `y_k ↔ y_{k+1}` and `z_k ↔ z_{k+1}`.
    pub fn approx_s(&self, k: usize) -> Result<CliffordPoly, RepError> {
        self.check_even_pair(k)?;
        Ok(self.swap_vars(k, true, true))
    }

    /// `(f − s̃_k f)/(y_k − y_{k+1})`, computed monomial by monomial.
    pub fn divided_difference_y(&self, k: usize) -> CliffordPoly {
        self.divided_difference(k, true)
    }

    /// `(f − s^z_k f)/(z_k − z_{k+1})` where `s^z_k` swaps only the `z`'s.
    pub fn divided_difference_z(&self, k: usize) -> CliffordPoly {
        self.divided_difference(k, false)
    }

    // y_k^a y_{k+1}^b ↦ sign · y_k^{min} y_{k+1}^{min} Σ_{r+s=|a−b|−1} y_k^r y_{k+1}^s
    fn divided_difference(&self, k: usize, on_y: bool) -> CliffordPoly {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            let (a, b) = if on_y { (m.y[k], m.y[k + 1]) } else { (m.z[k], m.z[k + 1]) };
            if a == b {
                continue;
            }
            let (lo, span, neg) = if a > b { (b, a - b, false) } else { (a, b - a, true) };
            for r in 0..span {
                let s = span - 1 - r;
                let mut m2 = *m;
                if on_y {
                    m2.y[k] = lo + r;
                    m2.y[k + 1] = lo + s;
                } else {
                    m2.z[k] = lo + r;
                    m2.z[k + 1] = lo + s;
                }
                out.add_signed(neg, m2, c);
            }
        }
        out
    }

    /// `σ_k`, by the Leibniz rule with `σ_k(y_k) = −1 − c_k c_{k+1}`, `σ_k(y_{k+1}) = 1 − c_k c_{k+1}`.
    pub fn sigma(&self, k: usize) -> CliffordPoly {
        self.sigma_generic(k, true)
    }

    /// `σ′_k`: as [`CliffordPoly::sigma`] with the roles of `y` and `z` exchanged.
    pub fn sigma_prime(&self, k: usize) -> CliffordPoly {
        self.sigma_generic(k, false)
    }

    fn sigma_generic(&self, k: usize, on_y: bool) -> CliffordPoly {
        let mut cache: BTreeMap<(u8, u8), CliffordPoly> = BTreeMap::new();
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            let (a, b) = if on_y { (m.y[k], m.y[k + 1]) } else { (m.z[k], m.z[k + 1]) };
            if a == 0 && b == 0 {
                continue;
            }
            // Leibniz with the y-part leftmost: σ′(Y·Z·C) = s_k(Y)·σ′(Z)·C, since σ′ kills y's.
            let mut rest = *m;
            let mut left = Monomial::one();
            if on_y {
                rest.y[k] = 0;
                rest.y[k + 1] = 0;
            } else {
                rest.z[k] = 0;
                rest.z[k + 1] = 0;
                left.y = rest.y;
                left.y.swap(k, k + 1);
                rest.y = [0; MAX_STRANDS];
            }
            let head = self.sigma_pure(k, a, b, on_y, &mut cache);
            for (hm, hc) in head.mul_monomial_left(&left).mul_monomial_right(&rest).terms {
                out.add_term(hm, hc * c);
            }
        }
        out
    }

    // σ of the pure power u_k^a u_{k+1}^b, with u = y or z.
    fn sigma_pure(
        &self,
        k: usize,
        a: u8,
        b: u8,
        on_y: bool,
        cache: &mut BTreeMap<(u8, u8), CliffordPoly>,
    ) -> CliffordPoly {
        if let Some(p) = cache.get(&(a, b)) {
            return p.clone();
        }
        let var = |pos: usize, e: u8| {
            let mut m = Monomial::one();
            if on_y {
                m.y[pos] = e;
            } else {
                m.z[pos] = e;
            }
            m
        };
        let result = if a == 0 && b == 0 {
            self.empty_like()
        } else {
            // Peel the leftmost variable: u_k if a > 0, else u_{k+1}.
            let (first, rest_a, rest_b, base_sign) = if a > 0 { (k, a - 1, b, -1) } else { (k + 1, a, b - 1, 1) };
            let mut rest_m = var(k, rest_a);
            if on_y {
                rest_m.y[k + 1] = rest_b;
            } else {
                rest_m.z[k + 1] = rest_b;
            }
            let mut base = self.empty_like();
            base.add_term(Monomial::one(), BigRational::from_integer(BigInt::from(base_sign)));
            base.add_term(Monomial { c: 0b11 << k, ..Monomial::one() }, -BigRational::one());
            let g = {
                let mut p = self.empty_like();
                p.add_term(rest_m, BigRational::one());
                p
            };
            let swapped = if first == k { k + 1 } else { k };
            let sg = self.sigma_pure(k, rest_a, rest_b, on_y, cache);
            base.mul(&g).add(&sg.mul_monomial_left(&var(swapped, 1)))
        };
        cache.insert((a, b), result.clone());
        result
    }

    /// Bidegree `(degree, parity)` of a monomial: `|y_k| = 2 r_{i_k}`, `|z_k| = i_k·i_k`,
    /// each `c_k` odd of degree 0.
    pub fn monomial_bidegree(&self, d: &Superdatum, m: &Monomial) -> (i64, u8) {
        let mut deg = 0i64;
        for (k, &v) in self.label.iter().enumerate() {
            deg += 2 * d.r(v) * m.y[k] as i64 + d.dot(v, v) * m.z[k] as i64;
        }
        (deg, (m.c_len() % 2) as u8)
    }

    /// Bidegree of a homogeneous polynomial (`None` if zero or inhomogeneous), including the
    /// label shift `−Σ_{a<b, i_a<i_b} i_a·i_b`.
    pub fn bidegree(&self, d: &Superdatum) -> Option<(i64, u8)> {
        let mut it = self.terms.keys().map(|m| self.monomial_bidegree(d, m));
        let first = it.next()?;
        if it.any(|x| x != first) {
            return None;
        }
        Some((first.0 + label_shift(d, &self.label), first.1))
    }

    pub fn display(&self) -> PolyDisplay<'_> {
        PolyDisplay(self)
    }
}

/// Grading shift on `𝒫_𝕚` making every generator act homogeneously.
pub fn label_shift(d: &Superdatum, label: &[usize]) -> i64 {
    let mut s = 0;
    for a in 0..label.len() {
        for b in (a + 1)..label.len() {
            if label[a] < label[b] {
                s -= d.dot(label[a], label[b]);
            }
        }
    }
    s
}

pub struct PolyDisplay<'a>(&'a CliffordPoly);

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.0.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            write!(f, "{}", c.abs())?;
            f.write_str(&monomial_text(m))?;
        }
        Ok(())
    }
}

/// `*y1^2*z2*c1*c3` style rendering (1-based indices).
pub fn monomial_text(m: &Monomial) -> String {
    let mut s = String::new();
    for (var, exps) in [("y", &m.y), ("z", &m.z)] {
        for (k, &e) in exps.iter().enumerate() {
            if e == 1 {
                s.push_str(&format!("*{}{}", var, k + 1));
            } else if e > 1 {
                s.push_str(&format!("*{}{}^{}", var, k + 1, e));
            }
        }
    }
    for k in 0..MAX_STRANDS {
        if m.c & (1 << k) != 0 {
            s.push_str(&format!("*c{}", k + 1));
        }
    }
    s
}

/// A generator of `R(ν)` acting on `𝒫_ν`; positions are 0-based.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub enum Op {
    X(usize),
    T(usize),
}

/// `x_k · f = c_k^{p(i_k)} y_k f`.
pub fn act_x(k: usize, f: &CliffordPoly) -> CliffordPoly {
    let mut m = Monomial::y(k);
    if f.parity[k] == 1 {
        // c_k y_k written in normal order is −y_k c_k.
        m.c = 1 << k;
        return f.mul_monomial_left(&m).neg();
    }
    f.mul_monomial_left(&m)
}

fn half_c_difference(label: Vec<usize>, parity: Vec<u8>, k: usize) -> CliffordPoly {
    let mut p = CliffordPoly::with_label(label, parity);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    p.add_term(Monomial::c(k), half.clone());
    p.add_term(Monomial::c(k + 1), -half);
    p
}

/// `Σ t x_{pu}^a x_{pv}^b · f` for the terms of `Q_ij`, applying the `x_{pv}` powers first.
pub fn q_apply(h: &HeckeDatum, i: usize, j: usize, pu: usize, pv: usize, f: &CliffordPoly) -> CliffordPoly {
    let mut out = f.empty_like();
    for t in h.q_terms(i, j) {
        let mut g = f.clone();
        for _ in 0..t.b {
            g = act_x(pv, &g);
        }
        for _ in 0..t.a {
            g = act_x(pu, &g);
        }
        out = out.add(&g.scale(&BigRational::from_integer(t.t.clone())));
    }
    out
}

/// `τ_k · f` by the six-case table; orientation `i → j` iff `i < j`.
pub fn act_tau(h: &HeckeDatum, k: usize, f: &CliffordPoly) -> Result<CliffordPoly, RepError> {
    f.check_pos(k)?;
    let (i, j) = (f.label[k], f.label[k + 1]);
    let d = &h.datum;
    if i == j {
        let out = match (d.is_real(i), d.parity(i)) {
            (true, 0) => f.divided_difference_y(k),
            (false, 0) => f.divided_difference_z(k).swap_vars(k, true, false),
            (true, _) => half_c_difference(f.label.clone(), f.parity.clone(), k).mul(&f.sigma(k)),
            (false, _) => half_c_difference(f.label.clone(), f.parity.clone(), k).mul(&f.sigma_prime(k)),
        };
        return Ok(out);
    }
    let mut g = f.sn_act(k);
    if i < j {
        // In s_k 𝕚 the strand labelled i sits at k+1.
        g = q_apply(h, i, j, k + 1, k, &g);
    }
    if d.parity(i) == 1 && d.parity(j) == 1 {
        g = half_c_difference(g.label.clone(), g.parity.clone(), k).mul(&g);
    }
    let gamma = h.gamma(i, j);
    Ok(g.scale(&gamma.recip()))
}

/// Apply a product of generators (`ops[0]` leftmost, so it acts last).
pub fn apply_ops(h: &HeckeDatum, ops: &[Op], f: &CliffordPoly) -> Result<CliffordPoly, RepError> {
    let mut g = f.clone();
    for op in ops.iter().rev() {
        g = match *op {
            Op::X(k) => {
                g.check_pos_x(k)?;
                act_x(k, &g)
            }
            Op::T(k) => act_tau(h, k, &g)?,
        };
    }
    Ok(g)
}

impl CliffordPoly {
    fn check_pos_x(&self, k: usize) -> Result<(), RepError> {
        if k >= self.strands() {
            return Err(RepError::Position { k, n: self.strands() });
        }
        Ok(())
    }
}

/// A generator together with its source idempotent, as in `x_{k,𝕚}`, `τ_{k,𝕚}`, `1_𝕚`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Generator {
    Idempotent(Vec<usize>),
    X(usize, Vec<usize>),
    T(usize, Vec<usize>),
}

/// Acts by zero on polynomials whose label differs from the generator's source.
pub fn act(h: &HeckeDatum, gen: &Generator, f: &CliffordPoly) -> Result<CliffordPoly, RepError> {
    let (label, op) = match gen {
        Generator::Idempotent(l) => (l, None),
        Generator::X(k, l) => (l, Some(Op::X(*k))),
        Generator::T(k, l) => (l, Some(Op::T(*k))),
    };
    if label.as_slice() != f.label() {
        return Ok(f.empty_like());
    }
    match op {
        None => Ok(f.clone()),
        Some(op) => apply_ops(h, &[op], f),
    }
}

/// All monomials in `n` strands with even-variable degree at most `max_degree`.
pub fn monomials_up_to(n: usize, max_degree: u32) -> Vec<Monomial> {
    let mut exps: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..2 * n {
        let mut next = Vec::new();
        for e in &exps {
            let used: u32 = e.iter().map(|&x| x as u32).sum();
            for v in 0..=(max_degree - used) {
                let mut e2 = e.clone();
                e2.push(v as u8);
                next.push(e2);
            }
        }
        exps = next;
    }
    let mut out = Vec::new();
    for e in exps {
        for c in 0..(1u16 << n) {
            let mut m = Monomial { c, ..Monomial::one() };
            for k in 0..n {
                m.y[k] = e[k];
                m.z[k] = e[n + k];
            }
            out.push(m);
        }
    }
    out.sort();
    out
}

/// Conventions used when reading the pictured relations as operator identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reading {
    /// Even-real dot/crossing relations read as `τ_k x_k − x_{k+1} τ_k = 1 = x_k τ_k − τ_k x_{k+1}`.
    pub mirrored_even_dot_crossing: bool,
    /// Multiplier on the braid correction term (1 in the correct reading).
    pub braid_scale: i64,
}

/// The frozen reading under which the representation satisfies every relation.
pub const READING: Reading = Reading { mirrored_even_dot_crossing: true, braid_scale: 1 };

/// A relation that failed on a specific monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationFailure {
    pub relation: String,
    pub label: Vec<usize>,
    pub monomial: Monomial,
}

/// Outcome of checking all local relations on one label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub checks: usize,
    pub failures: Vec<RelationFailure>,
}

struct Rel {
    name: String,
    lhs: Vec<(i64, Vec<Op>)>,
    /// Right side as a combination of operator words (the empty word is the identity).
    rhs: Vec<(i64, Vec<Op>)>,
}

fn eps(d: &Superdatum, vals: &[usize]) -> i64 {
    if vals.iter().all(|&v| d.parity(v) == 1) {
        -1
    } else {
        1
    }
}

fn local_relations(h: &HeckeDatum, label: &[usize], reading: Reading) -> Vec<Rel> {
    let d = &h.datum;
    let n = label.len();
    let mut rels = Vec::new();
    for k in 0..n {
        for l in 0..n {
            if k != l {
                rels.push(Rel {
                    name: format!("dots-commute(x{},x{})", k + 1, l + 1),
                    lhs: vec![(1, vec![Op::X(k), Op::X(l)])],
                    rhs: vec![(eps(d, &[label[k], label[l]]), vec![Op::X(l), Op::X(k)])],
                });
            }
        }
    }
    for k in 0..n.saturating_sub(1) {
        for l in 0..n.saturating_sub(1) {
            if k.abs_diff(l) > 1 {
                rels.push(Rel {
                    name: format!("crossings-commute(t{},t{})", k + 1, l + 1),
                    lhs: vec![(1, vec![Op::T(k), Op::T(l)])],
                    rhs: vec![(eps(d, &[label[k], label[k + 1], label[l], label[l + 1]]), vec![Op::T(l), Op::T(k)])],
                });
            }
        }
        for m in 0..n {
            if m != k && m != k + 1 {
                rels.push(Rel {
                    name: format!("dot-slides(x{},t{})", m + 1, k + 1),
                    lhs: vec![(1, vec![Op::X(m), Op::T(k)])],
                    rhs: vec![(eps(d, &[label[m], label[k], label[k + 1]]), vec![Op::T(k), Op::X(m)])],
                });
            }
        }
        let (i, j) = (label[k], label[k + 1]);
        let tt = vec![Op::T(k), Op::T(k)];
        if i == j {
            rels.push(Rel { name: format!("tau-squared(t{})", k + 1), lhs: vec![(1, tt)], rhs: vec![] });
        } else {
            let rhs = h
                .q_terms(i, j)
                .iter()
                .map(|t| {
                    let mut w = vec![Op::X(k); t.a as usize];
                    w.extend(vec![Op::X(k + 1); t.b as usize]);
                    (i64::try_from(&t.t).expect("small Q coefficients"), w)
                })
                .collect();
            rels.push(Rel { name: format!("tau-squared(t{})", k + 1), lhs: vec![(1, tt)], rhs });
        }
        let (xk, xk1, tk) = (Op::X(k), Op::X(k + 1), Op::T(k));
        if i == j && d.is_real(i) && d.parity(i) == 0 {
            if reading.mirrored_even_dot_crossing {
                rels.push(Rel {
                    name: format!("dot-crossing-a(t{})", k + 1),
                    lhs: vec![(1, vec![tk, xk]), (-1, vec![xk1, tk])],
                    rhs: vec![(1, vec![])],
                });
                rels.push(Rel {
                    name: format!("dot-crossing-b(t{})", k + 1),
                    lhs: vec![(1, vec![xk, tk]), (-1, vec![tk, xk1])],
                    rhs: vec![(1, vec![])],
                });
            } else {
                rels.push(Rel {
                    name: format!("dot-crossing-a(t{})", k + 1),
                    lhs: vec![(1, vec![xk1, tk]), (-1, vec![tk, xk])],
                    rhs: vec![(1, vec![])],
                });
                rels.push(Rel {
                    name: format!("dot-crossing-b(t{})", k + 1),
                    lhs: vec![(1, vec![tk, xk1]), (-1, vec![xk, tk])],
                    rhs: vec![(1, vec![])],
                });
            }
        } else if i == j && d.is_real(i) {
            rels.push(Rel {
                name: format!("dot-crossing-a(t{})", k + 1),
                lhs: vec![(1, vec![tk, xk]), (1, vec![xk1, tk])],
                rhs: vec![(1, vec![])],
            });
            rels.push(Rel {
                name: format!("dot-crossing-b(t{})", k + 1),
                lhs: vec![(1, vec![tk, xk1]), (1, vec![xk, tk])],
                rhs: vec![(1, vec![])],
            });
        } else {
            let e = eps(d, &[i, j]);
            rels.push(Rel {
                name: format!("dot-crossing-a(t{})", k + 1),
                lhs: vec![(1, vec![xk1, tk])],
                rhs: vec![(e, vec![tk, xk])],
            });
            rels.push(Rel {
                name: format!("dot-crossing-b(t{})", k + 1),
                lhs: vec![(1, vec![tk, xk1])],
                rhs: vec![(e, vec![xk, tk])],
            });
        }
    }
    for k in 0..n.saturating_sub(2) {
        let (a, b, c) = (label[k], label[k + 1], label[k + 2]);
        let lhs = vec![(1, vec![Op::T(k), Op::T(k + 1), Op::T(k)]), (-1, vec![Op::T(k + 1), Op::T(k), Op::T(k + 1)])];
        let rhs = if a == c && a != b && d.is_real(a) {
            braid_correction(h, a, b, k, reading.braid_scale)
        } else {
            Vec::new()
        };
        rels.push(Rel { name: format!("braid(t{},t{})", k + 1, k + 2), lhs, rhs });
    }
    rels
}

/// The braid correction for strands `i j i` at positions `k, k+1, k+2` as a combination of
/// dot words, with `u = x_k`, `v = x_{k+1}`, `w = x_{k+2}`.
pub fn braid_correction(h: &HeckeDatum, i: usize, j: usize, k: usize, scale: i64) -> Vec<(i64, Vec<Op>)> {
    let d = &h.datum;
    let (u, v, w) = (Op::X(k), Op::X(k + 1), Op::X(k + 2));
    let mut out = Vec::new();
    for t in h.q_terms(i, j) {
        let coeff = i64::try_from(&t.t).expect("small Q coefficients") * scale;
        if d.parity(i) == 0 {
            // Σ_{r+s=a−1} u^r w^s v^b
            for r in 0..t.a {
                let s = t.a - 1 - r;
                let mut word = vec![u; r as usize];
                word.extend(vec![w; s as usize]);
                word.extend(vec![v; t.b as usize]);
                out.push((coeff, word));
            }
        } else {
            // (−1)^{p(j)} (u − w) Σ_{r+s=a/2−1} u^{2r} w^{2s} v^b
            let sign = if d.parity(j) == 1 { -1 } else { 1 };
            if t.a == 0 {
                continue;
            }
            for r in 0..(t.a / 2) {
                let s = t.a / 2 - 1 - r;
                for (lead, lsign) in [(u, 1), (w, -1)] {
                    let mut word = vec![lead];
                    word.extend(vec![u; 2 * r as usize]);
                    word.extend(vec![w; 2 * s as usize]);
                    word.extend(vec![v; t.b as usize]);
                    out.push((coeff * sign * lsign, word));
                }
            }
        }
    }
    out
}

fn eval_combo(
    h: &HeckeDatum,
    combo: &[(i64, Vec<Op>)],
    f: &CliffordPoly,
    target: &[usize],
) -> Result<CliffordPoly, RepError> {
    let mut out = CliffordPoly::with_label(target.to_vec(), target.iter().map(|&v| h.parity(v)).collect());
    for (c, word) in combo {
        let g = apply_ops(h, word, f)?;
        if g.is_zero() {
            continue;
        }
        out = out.add(&g.scale(&BigRational::from_integer(BigInt::from(*c))));
    }
    Ok(out)
}

/// Label reached by applying the crossings of `ops` to `label`.
pub fn target_label(label: &[usize], ops: &[Op]) -> Vec<usize> {
    let mut l = label.to_vec();
    for op in ops.iter().rev() {
        if let Op::T(k) = op {
            l.swap(*k, k + 1);
        }
    }
    l
}

/// Checks every local relation on every monomial of degree at most `max_degree` of `𝒫_label`.
pub fn verify_relations(
    h: &HeckeDatum,
    label: &[usize],
    max_degree: u32,
    reading: Reading,
) -> Result<RelationReport, RepError> {
    if label.len() > MAX_STRANDS {
        return Err(RepError::TooManyStrands);
    }
    let rels = local_relations(h, label, reading);
    let monos = monomials_up_to(label.len(), max_degree);
    let mut report = RelationReport::default();
    for rel in &rels {
        let target = rel.lhs.first().map(|(_, w)| target_label(label, w)).unwrap_or_else(|| label.to_vec());
        for m in &monos {
            report.checks += 1;
            let f = CliffordPoly::monomial(&h.datum, label, *m, BigRational::one());
            let lhs = eval_combo(h, &rel.lhs, &f, &target)?;
            let rhs = eval_combo(h, &rel.rhs, &f, &target)?;
            if lhs != rhs {
                report.failures.push(RelationFailure {
                    relation: rel.name.clone(),
                    label: label.to_vec(),
                    monomial: *m,
                });
                break;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::HeckeDatum;

    fn r(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    fn odd() -> Superdatum {
        Superdatum::from_parts(&["i", "j"], &[1, 1], &[1, 1], &[&[2, -2], &[-2, -2]])
    }

    fn poly(d: &Superdatum, label: &[usize], terms: &[(Monomial, i64)]) -> CliffordPoly {
        let mut p = CliffordPoly::zero(d, label);
        for (m, c) in terms {
            p.add_term(*m, r(*c));
        }
        p
    }

    #[test]
    fn normal_order_examples() {
        let d = odd();
        let label = [0, 0];
        let c1 = poly(&d, &label, &[(Monomial::c(0), 1)]);
        let c2 = poly(&d, &label, &[(Monomial::c(1), 1)]);
        let c12 = Monomial { c: 0b11, ..Monomial::one() };
        assert_eq!(c2.mul(&c1), poly(&d, &label, &[(c12, -1)]));
        assert_eq!(c1.mul(&c1), CliffordPoly::one(&d, &label));
        let y1 = poly(&d, &label, &[(Monomial::y(0), 1)]);
        let y1c1 = Monomial { c: 1, ..Monomial::y(0) };
        assert_eq!(c1.mul(&y1), poly(&d, &label, &[(y1c1, -1)]));
        let even = Superdatum::from_parts(&["i"], &[0], &[1], &[&[2]]);
        let c1e = poly(&even, &[0, 0], &[(Monomial::c(0), 1)]);
        let y1e = poly(&even, &[0, 0], &[(Monomial::y(0), 1)]);
        assert_eq!(c1e.mul(&y1e), poly(&even, &[0, 0], &[(y1c1, 1)]));
    }

    #[test]
    fn sn_act_examples() {
        let d = odd();
        let p = poly(&d, &[0, 1], &[(Monomial::y(0), 1)]);
        let q = p.sn_act(0);
        assert_eq!(q.label(), &[1, 0]);
        assert_eq!(q, poly(&d, &[1, 0], &[(Monomial::y(1), 1)]));
        let c12 = Monomial { c: 0b11, ..Monomial::one() };
        assert_eq!(poly(&d, &[0, 1], &[(c12, 1)]).sn_act(0), poly(&d, &[1, 0], &[(c12, -1)]));
        assert_eq!(CliffordPoly::one(&d, &[0, 0]).sn_act(0), CliffordPoly::one(&d, &[0, 0]));
    }

    #[test]
    fn sigma_base_cases() {
        let d = odd();
        let label = [0, 0];
        let c12 = Monomial { c: 0b11, ..Monomial::one() };
        let s1 = poly(&d, &label, &[(Monomial::y(0), 1)]).sigma(0);
        assert_eq!(s1, poly(&d, &label, &[(Monomial::one(), -1), (c12, -1)]));
        let s2 = poly(&d, &label, &[(Monomial::y(1), 1)]).sigma(0);
        assert_eq!(s2, poly(&d, &label, &[(Monomial::one(), 1), (c12, -1)]));
        assert!(poly(&d, &label, &[(Monomial::z(0), 1), (Monomial::c(1), 3)]).sigma(0).is_zero());
    }

    #[test]
    fn tilde_examples() {
        let d = Superdatum::from_parts(&["i"], &[0], &[1], &[&[0]]);
        let label = [0, 0];
        let mut yz = Monomial::y(0);
        yz.z[0] = 1;
        let f = poly(&d, &label, &[(yz, 1)]);
        let mut y2z1 = Monomial::y(1);
        y2z1.z[0] = 1;
        let mut y2z2 = Monomial::y(1);
        y2z2.z[1] = 1;
        assert_eq!(f.tilde_s(0).unwrap(), poly(&d, &label, &[(y2z1, 1)]));
        assert_eq!(f.approx_s(0).unwrap(), poly(&d, &label, &[(y2z2, 1)]));
        let z1 = poly(&d, &label, &[(Monomial::z(0), 1)]);
        assert_eq!(z1.tilde_s(0).unwrap(), z1);
        assert!(CliffordPoly::one(&odd(), &[0, 0]).tilde_s(0).is_err());
    }

    #[test]
    fn generator_examples() {
        let even = HeckeDatum::with_defaults(Superdatum::from_parts(&["i"], &[0], &[1], &[&[2]]));
        let y1 = poly(&even.datum, &[0, 0], &[(Monomial::y(0), 1)]);
        assert_eq!(act_tau(&even, 0, &y1).unwrap(), CliffordPoly::one(&even.datum, &[0, 0]));
        let oddh = HeckeDatum::with_defaults(odd());
        let x1 = act_x(0, &CliffordPoly::one(&oddh.datum, &[0, 0]));
        assert_eq!(act_tau(&oddh, 0, &x1).unwrap(), CliffordPoly::one(&oddh.datum, &[0, 0]));
        let x2 = act_x(1, &CliffordPoly::one(&oddh.datum, &[0, 0]));
        assert_eq!(act_tau(&oddh, 0, &x2).unwrap(), CliffordPoly::one(&oddh.datum, &[0, 0]));
        for h in [
            HeckeDatum::with_defaults(Superdatum::from_parts(&["i"], &[0], &[1], &[&[0]])),
            HeckeDatum::with_defaults(Superdatum::from_parts(&["i"], &[1], &[1], &[&[-2]])),
        ] {
            assert!(act_tau(&h, 0, &CliffordPoly::one(&h.datum, &[0, 0])).unwrap().is_zero());
        }
        let one = CliffordPoly::one(&oddh.datum, &[0, 1]);
        assert_eq!(act(&oddh, &Generator::Idempotent(vec![0, 1]), &one).unwrap(), one);
        assert!(act(&oddh, &Generator::Idempotent(vec![1, 0]), &one).unwrap().is_zero());
    }

    #[test]
    fn nil_coxeter() {
        let d = odd();
        let label = [0, 0, 0, 0];
        for m in monomials_up_to(4, 3) {
            let f = CliffordPoly::monomial(&d, &label, m, BigRational::one());
            for k in 0..3 {
                assert!(f.sigma(k).sigma(k).is_zero());
                assert!(f.sigma_prime(k).sigma_prime(k).is_zero());
                if k < 2 {
                    assert_eq!(f.sigma(k).sigma(k + 1).sigma(k), f.sigma(k + 1).sigma(k).sigma(k + 1));
                }
            }
            assert_eq!(f.sigma(0).sigma(2), f.sigma(2).sigma(0));
        }
    }

    fn bundled() -> Vec<HeckeDatum> {
        [
            Superdatum::from_parts(&["i", "j"], &[1, 1], &[1, 1], &[&[2, -2], &[-2, -2]]),
            Superdatum::from_parts(&["i", "j"], &[0, 0], &[1, 1], &[&[2, -1], &[-1, 2]]),
            Superdatum::from_parts(&["a", "b", "c"], &[0, 0, 1], &[1, 1, 1], &[&[2, -1, 0], &[-1, 0, -2], &[0, -2, 2]]),
        ]
        .into_iter()
        .map(HeckeDatum::with_defaults)
        .collect()
    }

    fn labels(rank: usize, n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|l: Vec<usize>| {
                    (0..rank).map(move |v| {
                        let mut l2 = l.clone();
                        l2.push(v);
                        l2
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn relations_hold_small() {
        for h in bundled() {
            for n in 2..=3 {
                for label in labels(h.datum.rank(), n) {
                    let rep = verify_relations(&h, &label, 2, READING).unwrap();
                    assert!(rep.failures.is_empty(), "{:?}", rep.failures);
                }
            }
        }
    }

    #[test]
    fn mutated_reading_fails() {
        let even = HeckeDatum::with_defaults(Superdatum::from_parts(&["i"], &[0], &[1], &[&[2]]));
        let wrong = Reading { mirrored_even_dot_crossing: false, ..READING };
        assert!(!verify_relations(&even, &[0, 0], 1, wrong).unwrap().failures.is_empty());
        let h = &bundled()[1];
        let wrong = Reading { braid_scale: 2, ..READING };
        let rep = verify_relations(h, &[0, 1, 0], 2, wrong).unwrap();
        assert!(rep.failures.iter().any(|f| f.relation.starts_with("braid")));
    }

    // σ_k f = A + c_k c_{k+1} B with (y_k − y_{k+1}) A = s f − f and (y_k + y_{k+1}) B = s̄ f − f,
    // where s̄ also flips the sign of y_k, y_{k+1}.
    #[test]
    fn sigma_closed_form() {
        let d = odd();
        let label = [0, 0, 0];
        let c12 = Monomial { c: 0b011, ..Monomial::one() };
        for m in monomials_up_to(3, 3).into_iter().filter(|m| m.z == [0; MAX_STRANDS] && m.c == 0) {
            let f = CliffordPoly::monomial(&d, &label, m, BigRational::one());
            let sf = f.swap_vars(0, true, false);
            let mut sbar = f.empty_like();
            for (mm, c) in sf.terms() {
                let sign = (mm.y[0] + mm.y[1]) % 2 == 1;
                sbar.add_signed(sign, *mm, c);
            }
            let sigma = f.sigma(0);
            let mut a = f.empty_like();
            let mut b = f.empty_like();
            for (mm, c) in sigma.terms() {
                if mm.c & 0b11 == 0b11 {
                    let mut m2 = *mm;
                    m2.c &= !0b11;
                    b.add_term(m2, c.clone());
                } else {
                    a.add_term(*mm, c.clone());
                }
            }
            let ydiff = poly(&d, &label, &[(Monomial::y(0), 1), (Monomial::y(1), -1)]);
            let ysum = poly(&d, &label, &[(Monomial::y(0), 1), (Monomial::y(1), 1)]);
            assert_eq!(ydiff.mul(&a), sf.sub(&f));
            // B sits to the right of c_1 c_2 in normal order; moving it left costs (−1)^{deg}.
            let mut b_left = f.empty_like();
            for (mm, c) in b.terms() {
                b_left.add_signed((mm.y[0] + mm.y[1]) % 2 == 1, *mm, c);
            }
            assert_eq!(ysum.mul(&b_left), sbar.sub(&f), "{}", m.degree());
            let _ = c12;
        }
    }

    #[test]
    fn conjugated_sigma() {
        let d = odd();
        let label = [0, 0, 0];
        for m in monomials_up_to(3, 3).into_iter().filter(|m| m.z == [0; MAX_STRANDS]) {
            let f = CliffordPoly::monomial(&d, &label, m, BigRational::one());
            assert_eq!(f.sn_act(0).sigma(1).sn_act(0), f.sn_act(1).sigma(0).sn_act(1));
        }
    }

    #[test]
    fn homogeneous_action() {
        for h in bundled() {
            for label in labels(h.datum.rank(), 3) {
                for m in monomials_up_to(3, 2) {
                    let f = CliffordPoly::monomial(&h.datum, &label, m, BigRational::one());
                    let (deg, par) = f.bidegree(&h.datum).unwrap();
                    for k in 0..2 {
                        let (i, j) = (label[k], label[k + 1]);
                        let g = act_tau(&h, k, &f).unwrap();
                        if let Some((dg, pg)) = g.bidegree(&h.datum) {
                            assert_eq!(dg, deg - h.dot(i, j), "{label:?} {m:?} {k}");
                            assert_eq!(pg, (par + h.parity(i) * h.parity(j)) % 2);
                        } else {
                            assert!(g.is_zero());
                        }
                    }
                    for k in 0..3 {
                        let (dg, pg) = act_x(k, &f).bidegree(&h.datum).unwrap();
                        assert_eq!(dg, deg + 2 * h.r(label[k]));
                        assert_eq!(pg, (par + h.parity(label[k])) % 2);
                    }
                }
            }
        }
    }
}
