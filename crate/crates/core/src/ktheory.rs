//! Grothendieck-group numerics through graded dimensions: the pairing of projectives against the
//! covering form, idempotent truncations, the categorified Serre identity and the Mackey
//! dimension identity.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::One;
use thiserror::Error;

use crate::covering::form_words;
use crate::datum::{Superdatum, Weight};
use crate::linalg::SparseEchelon;
use crate::perm::Perm;
use crate::qhsa::{e_idempotent, graded_dim, BasisSymbol, QhsaElement, QhsaError, Straightener};
use crate::scalar::{parity_exponent, series_expand, DimSeries, Scalar, ScalarError};
use crate::superpoly::Op;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KError {
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("dimension recombination at degree {degree} is not integral")]
    NonIntegral { degree: i64 },
    #[error("weights do not add up")]
    IncompatibleWeights,
    #[error("height {0} exceeds the bound {1}")]
    BoundExceeded(u32, u32),
    #[error("{0}")]
    Scalar(#[from] ScalarError),
    #[error("{0}")]
    Qhsa(#[from] QhsaError),
}

/// How θ-words are matched with idempotents in the pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Identity,
    Reversed,
}

/// The frozen convention: `([P_𝕚],[P_𝕛])` is compared with `{θ_𝕚, θ_𝕛}`.
pub const ORIENTATION: Orientation = Orientation::Identity;

fn orient(o: Orientation, w: &[usize]) -> Vec<usize> {
    match o {
        Orientation::Identity => w.to_vec(),
        Orientation::Reversed => w.iter().rev().copied().collect(),
    }
}

/// Pick the orientation from the smallest example with two distinct labels of one weight
/// where the two conventions differ; defaults to the identity.
pub fn determine_orientation(d: &Superdatum, order: i64) -> Result<Orientation, KError> {
    for ht in 2..=3 {
        for nu in Weight::of_height(d.rank(), ht) {
            let seqs = nu.sequences();
            for s in &seqs {
                for t in &seqs {
                    let lhs = graded_dim(d, t, s, order);
                    let id = series_expand(&form_words(d, s, t), order)?;
                    let rev = series_expand(&form_words(d, &orient(Orientation::Reversed, s), t), order)?;
                    if id != rev {
                        return Ok(if lhs == id { Orientation::Identity } else { Orientation::Reversed });
                    }
                }
            }
        }
    }
    Ok(Orientation::Identity)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReport {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub order: i64,
    pub lhs: DimSeries,
    pub rhs: DimSeries,
    pub holds: bool,
}

/// `dim 1_target R 1_source` against the series of `{θ_source, θ_target}`.
pub fn pairing_check(d: &Superdatum, source: &[usize], target: &[usize], order: i64) -> Result<PairingReport, KError> {
    let lhs = graded_dim(d, target, source, order);
    let rhs = series_expand(&form_words(d, &orient(ORIENTATION, source), &orient(ORIENTATION, target)), order)?;
    let holds = lhs.same_as(&rhs)?;
    Ok(PairingReport { source: source.to_vec(), target: target.to_vec(), order, lhs, rhs, holds })
}

/// Dot vectors `u` with `Σ w_k u_k ≤ budget`.
fn bounded_dots(weights: &[i64], budget: i64) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &w in weights {
        let mut next = Vec::new();
        for v in out {
            let used: i64 = v.iter().zip(weights).map(|(&u, &w)| u as i64 * w).sum();
            let mut u = 0u32;
            while used + u as i64 * w <= budget {
                let mut v2 = v.clone();
                v2.push(u);
                next.push(v2);
                u += 1;
            }
        }
        out = next;
    }
    out
}

/// Basis symbols of `1_target R 1_source` of degree at most `order`, grouped by bidegree.
pub fn symbols_by_degree(
    d: &Superdatum,
    target: &[usize],
    source: &[usize],
    order: i64,
) -> BTreeMap<(i64, u8), Vec<BasisSymbol>> {
    let n = source.len();
    let weights: Vec<i64> = target.iter().map(|&v| 2 * d.r(v)).collect();
    let mut out: BTreeMap<(i64, u8), Vec<BasisSymbol>> = BTreeMap::new();
    for perm in Perm::all(n) {
        if perm.apply(source) != target {
            continue;
        }
        let (base, _) = BasisSymbol { source: source.to_vec(), perm: perm.clone(), dots: vec![0; n] }.bidegree(d);
        for dots in bounded_dots(&weights, order - base) {
            let s = BasisSymbol { source: source.to_vec(), perm: perm.clone(), dots };
            out.entry(s.bidegree(d)).or_default().push(s);
        }
    }
    out
}

/// Per-degree ranks of `b ↦ b·e` on `1_target R 1_source`, as `DimSeries`.
///
/// Ranks are taken over `ℚ` on each (degree, parity) slice; `r± = r_even ± r_odd` are the
/// `π = ±1` specializations and are recombined as `(r₊ + r₋)/2 + π (r₊ − r₋)/2`.
pub fn idempotent_trunc_dim(
    st: &mut Straightener<'_>,
    target: &[usize],
    e: &QhsaElement,
    order: i64,
) -> Result<DimSeries, KError> {
    if st.mult(e, e) != *e {
        return Err(KError::NotIdempotent);
    }
    let Some(source) = e.terms().next().map(|(s, _)| s.source.clone()) else {
        return Ok(DimSeries::zero(order));
    };
    let d = &st.datum().datum;
    let slices = symbols_by_degree(d, target, &source, order);
    let mut ranks: BTreeMap<i64, [usize; 2]> = BTreeMap::new();
    for ((deg, par), syms) in slices {
        let mut ech: SparseEchelon<BasisSymbol> = SparseEchelon::new();
        for s in syms {
            let prod = st.mult(&QhsaElement::symbol(s), e);
            let v =
                prod.terms().map(|(k, c)| (k.clone(), num_rational::BigRational::from_integer(c.clone()))).collect();
            ech.insert(v);
        }
        ranks.entry(deg).or_insert([0, 0])[par as usize] = ech.rank();
    }
    let mut out = DimSeries::zero(order);
    for (deg, [even, odd]) in ranks {
        let plus = (even + odd) as i64;
        let minus = even as i64 - odd as i64;
        if (plus + minus) % 2 != 0 {
            return Err(KError::NonIntegral { degree: deg });
        }
        out.add_at(deg, &BigInt::from((plus + minus) / 2), &BigInt::from((plus - minus) / 2));
    }
    Ok(out)
}

/// Juxtapose elements living on consecutive blocks of strands (each factor even).
pub fn juxtapose(st: &mut Straightener<'_>, blocks: &[QhsaElement]) -> QhsaElement {
    let mut label = Vec::new();
    let mut words: Vec<Vec<(Vec<Op>, BigInt)>> = Vec::new();
    for b in blocks {
        let offset = label.len();
        let mut block_label = None;
        let mut terms = Vec::new();
        for (s, c) in b.terms() {
            block_label.get_or_insert_with(|| s.source.clone());
            let shifted = s
                .word()
                .into_iter()
                .map(|op| match op {
                    Op::X(k) => Op::X(k + offset),
                    Op::T(k) => Op::T(k + offset),
                })
                .collect();
            terms.push((shifted, c.clone()));
        }
        label.extend(block_label.unwrap_or_default());
        words.push(terms);
    }
    let mut cur = QhsaElement::idempotent(&label);
    for terms in words.iter().rev() {
        let mut next = QhsaElement::zero();
        for (w, c) in terms {
            let e = st.apply_word(w, &cur);
            next.add_scaled(&e, c);
        }
        cur = next;
    }
    cur
}

/// `dim 1_𝕜 P_{i^(a) j^n i^(b)}`, i.e. `q^{(C(a,2)+C(b,2)) r_i} dim 1_𝕜 R (e_{i,a} ⊗ 1_{j^n} ⊗ e_{i,b})`.
pub fn divided_projective_dim(
    st: &mut Straightener<'_>,
    target: &[usize],
    i: usize,
    j: usize,
    a: usize,
    n: usize,
    b: usize,
    order: i64,
) -> Result<DimSeries, KError> {
    let h = st.datum();
    let shift = ((binomial(a, 2) + binomial(b, 2)) as i64) * h.r(i);
    let mut blocks = Vec::new();
    if a > 0 {
        blocks.push(e_idempotent(h, i, a)?);
    }
    if n > 0 {
        blocks.push(QhsaElement::idempotent(&vec![j; n]));
    }
    if b > 0 {
        blocks.push(e_idempotent(h, i, b)?);
    }
    let e = juxtapose(st, &blocks);
    Ok(idempotent_trunc_dim(st, target, &e, order - shift)?.shift(shift))
}

/// Outcome of one categorified Serre comparison at a label `𝕜`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreCatRow {
    pub label: Vec<usize>,
    pub even_side: DimSeries,
    pub odd_side: DimSeries,
}

impl SerreCatRow {
    pub fn holds(&self) -> bool {
        self.even_side == self.odd_side
    }
}

/// For `i` real and `m = 1 − n a_ij`: `Σ_{c even} π^{p(c;i,j;n)} dim 1_𝕜 P_{i^(c) j^n i^(m−c)}`
/// against the odd-`c` sum, for every `𝕜 ∈ Seq(mi + nj)`. When `i·j = 0` the instance is
/// `P_ij ≃ Π^{p(i)p(j)} P_ji`.
pub fn serre_categorified_check(
    st: &mut Straightener<'_>,
    i: usize,
    j: usize,
    n: usize,
    order: i64,
) -> Result<Vec<SerreCatRow>, KError> {
    let h = st.datum();
    let d = &h.datum;
    if d.dot(i, j) == 0 && n == 1 {
        let nu = Weight::simple(d.rank(), i).add(&Weight::simple(d.rank(), j));
        let mut rows = Vec::new();
        for k in nu.sequences() {
            let lhs = graded_dim(d, &k, &[i, j], order);
            let rhs = graded_dim(d, &k, &[j, i], order).pi_pow(d.parity(i) * d.parity(j));
            rows.push(SerreCatRow { label: k, even_side: lhs, odd_side: rhs });
        }
        return Ok(rows);
    }
    if !h.is_real(i) {
        return Err(QhsaError::NotReal(d.name(i).into()).into());
    }
    let m = (1 - n as i64 * d.a(i, j)) as usize;
    let mut nu = Weight::zero(d.rank());
    nu.0[i] += m as u32;
    nu.0[j] += n as u32;
    let (pi, pj) = (d.parity(i), d.parity(j));
    let mut rows = Vec::new();
    for k in nu.sequences() {
        let mut sides = [DimSeries::zero(order), DimSeries::zero(order)];
        for c in 0..=m {
            let dim = divided_projective_dim(st, &k, i, j, c, n, m - c, order)?;
            let p = parity_exponent(c as u32, pi, pj, n as u32);
            sides[c % 2] = sides[c % 2].add(&dim.pi_pow(p % 2));
        }
        let [even_side, odd_side] = sides;
        rows.push(SerreCatRow { label: k, even_side, odd_side });
    }
    Ok(rows)
}

/// Minimal-length coset representatives of `S_n / (S_a × S_{n−a})` (shuffles).
pub fn shuffles(a: usize, n: usize) -> Vec<Perm> {
    Perm::all(n)
        .into_iter()
        .filter(|p| {
            let inv = p.inverse();
            let s = inv.as_slice();
            s[..a].windows(2).all(|w| w[0] < w[1]) && s[a..].windows(2).all(|w| w[0] < w[1])
        })
        .collect()
}

/// `Σ_w π^{p(τ_w)} q^{deg τ_w}` over shuffles of `first` and `second`.
pub fn induction_factor(d: &Superdatum, first: &[usize], second: &[usize]) -> Scalar {
    let mut label = first.to_vec();
    label.extend_from_slice(second);
    let mut out = Scalar::zero();
    for w in shuffles(first.len(), label.len()) {
        let n = label.len();
        let (deg, par) = BasisSymbol { source: label.clone(), perm: w, dots: vec![0; n] }.bidegree(d);
        out = &out + &Scalar::monomial(BigInt::one(), par, deg);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MackeyReport {
    pub lhs: DimSeries,
    pub rhs: DimSeries,
    pub terms: usize,
    pub holds: bool,
}

fn concat(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

/// `dim Res_{ν,ν′} Ind_{μ,μ′} (P_𝕚 ⊗ P_𝕛)` against the sum over the Mackey subquotients.
pub fn mackey_dim_check(
    d: &Superdatum,
    nu: &Weight,
    nu2: &Weight,
    mu: &Weight,
    mu2: &Weight,
    i_seq: &[usize],
    j_seq: &[usize],
    order: i64,
) -> Result<MackeyReport, KError> {
    if nu.add(nu2) != mu.add(mu2) || Weight::of_word(d.rank(), i_seq) != *mu || Weight::of_word(d.rank(), j_seq) != *mu2
    {
        return Err(KError::IncompatibleWeights);
    }
    let total = concat(i_seq, j_seq);
    let mut lhs = DimSeries::zero(order);
    for k in nu.sequences() {
        for l in nu2.sequences() {
            lhs = lhs.add(&graded_dim(d, &concat(&k, &l), &total, order));
        }
    }
    // Work at a higher order so negative shifts do not eat into the comparison range.
    let ht = total.len() as i64;
    let max_dot = (0..d.rank())
        .flat_map(|a| (0..d.rank()).map(move |b| (a, b)))
        .map(|(a, b)| d.dot(a, b).abs())
        .max()
        .unwrap_or(0);
    let work = order + 2 * ht * ht * (max_dot + 1);
    let mut rhs = DimSeries::zero(order);
    let mut terms = 0;
    for lambda in mu2.below() {
        let (Some(a1w), Some(b2w)) = (nu.checked_sub(&lambda), mu2.checked_sub(&lambda)) else {
            continue;
        };
        let Some(a2w) = nu2.add(&lambda).checked_sub(mu2) else {
            continue;
        };
        terms += 1;
        let sign = (lambda.parity(d) * a2w.parity(d)) % 2;
        let shift = -lambda.dot(&a2w, d);
        let mut piece = DimSeries::zero(work);
        for a1 in a1w.sequences() {
            for a2 in a2w.sequences() {
                let dm = graded_dim(d, &concat(&a1, &a2), i_seq, work);
                if dm.is_zero() {
                    continue;
                }
                for b1 in lambda.sequences() {
                    for b2 in b2w.sequences() {
                        let dn = graded_dim(d, &concat(&b1, &b2), j_seq, work);
                        if dn.is_zero() {
                            continue;
                        }
                        let s1 = induction_factor(d, &a1, &b1);
                        let s2 = induction_factor(d, &a2, &b2);
                        let prod = (&s1 * &s2).shift(shift);
                        let term = dm.mul(&dn).scale_scalar(&prod);
                        piece = piece.add(&term);
                    }
                }
            }
        }
        rhs = rhs.add(&piece.pi_pow(sign).truncate(order));
    }
    if rhs.order() < order {
        return Err(KError::BoundExceeded(ht as u32, order as u32));
    }
    let holds = lhs.same_as(&rhs)?;
    Ok(MackeyReport { lhs, rhs, terms, holds })
}

/// All Mackey instances with `ht(μ + μ′) ≤ max_height` (both `μ, μ′` nonzero), one per
/// choice of `ν, ν′, μ, μ′, 𝕚, 𝕛`.
pub fn mackey_instances(
    d: &Superdatum,
    max_height: u32,
) -> Vec<(Weight, Weight, Weight, Weight, Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for ht in 2..=max_height {
        for total in Weight::of_height(d.rank(), ht) {
            let splits: Vec<Weight> = total.below().into_iter().filter(|w| w.height() > 0 && w.height() < ht).collect();
            for mu in &splits {
                let mu2 = total.checked_sub(mu).expect("split of total");
                for nu in &splits {
                    let nu2 = total.checked_sub(nu).expect("split of total");
                    for i_seq in mu.sequences() {
                        for j_seq in mu2.sequences() {
                            out.push((nu.clone(), nu2.clone(), mu.clone(), mu2.clone(), i_seq.clone(), j_seq));
                        }
                    }
                }
            }
        }
    }
    out
}
