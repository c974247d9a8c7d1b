//! The boson operators `e′_i`, `e″_i` on the free algebra generated by `f_i`, the form they
//! determine, and the operator and binomial identities behind the Serre relations.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use thiserror::Error;

use crate::covering::{commutator_element, serre_element, CoveringError, FreeElement, Word};
use crate::datum::{Superdatum, Weight};
use crate::linalg;
use crate::scalar::{parity_exponent, quantum_binom, Laurent, PiMode, RationalScalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BosonError {
    #[error("kappa for vertex {0} is zero")]
    ZeroKappa(usize),
    #[error("vertex {0} is not real")]
    NotReal(usize),
    #[error(transparent)]
    Covering(#[from] CoveringError),
}

/// Which derivation: `e′` twists by `q^{−i·j}`, `e″` by `q^{+i·j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BosonKind {
    Prime,
    DoublePrime,
}

/// `e′_i` or `e″_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct BosonOperator {
    pub kind: BosonKind,
    pub vertex: usize,
}

impl BosonOperator {
    pub fn prime(i: usize) -> Self {
        BosonOperator { kind: BosonKind::Prime, vertex: i }
    }

    pub fn dprime(i: usize) -> Self {
        BosonOperator { kind: BosonKind::DoublePrime, vertex: i }
    }

    /// Image of a single word: the sum over occurrences of the vertex, each removed with
    /// the twist collected from the letters before it.
    pub fn apply_word(&self, d: &Superdatum, mode: PiMode, w: &[usize]) -> Vec<(Word, Scalar)> {
        let i = self.vertex;
        let mut out = Vec::new();
        let mut parity = 0u8;
        let mut exp = 0i64;
        for (k, &letter) in w.iter().enumerate() {
            if letter == i {
                let mut rest = w[..k].to_vec();
                rest.extend_from_slice(&w[k + 1..]);
                out.push((rest, mode.pi_pow(parity).shift(exp)));
            }
            parity ^= d.parity(i) & d.parity(letter);
            match self.kind {
                BosonKind::Prime => exp -= d.dot(i, letter),
                BosonKind::DoublePrime => exp += d.dot(i, letter),
            }
        }
        out
    }

    pub fn apply(&self, d: &Superdatum, mode: PiMode, x: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w, c) in x.terms() {
            for (rest, s) in self.apply_word(d, mode, w) {
                out.add_term(rest, &c.mul_scalar(&s));
            }
        }
        out
    }
}

/// `e′_i(f_j w) = δ_ij w + s^{p(i)p(j)} q^{−i·j} f_j e′_i(w)`, with `s = −1` for
/// [`PiMode::Minus`], `π` for [`PiMode::Generic`].
pub fn e_prime(d: &Superdatum, i: usize, x: &FreeElement, mode: PiMode) -> FreeElement {
    BosonOperator::prime(i).apply(d, mode, x)
}

/// `e″_i(f_j w) = δ_ij w + s^{p(i)p(j)} q^{i·j} f_j e″_i(w)`.
pub fn e_dprime(d: &Superdatum, i: usize, x: &FreeElement, mode: PiMode) -> FreeElement {
    BosonOperator::dprime(i).apply(d, mode, x)
}

/// `⟨x, y⟩` determined by `⟨1,1⟩ = 1` and `⟨f_i x, y⟩ = κ_i ⟨x, e′_i y⟩`.
pub fn boson_form(
    d: &Superdatum,
    x: &FreeElement,
    y: &FreeElement,
    kappa: &[RationalScalar],
    mode: PiMode,
) -> Result<RationalScalar, BosonError> {
    if let Some(i) = kappa.iter().position(|k| k.is_zero()) {
        return Err(BosonError::ZeroKappa(i));
    }
    let mut acc = RationalScalar::zero();
    for (w, c) in x.terms() {
        let mut cur = y.clone();
        let mut factor = c.clone();
        for &letter in w {
            cur = e_prime(d, letter, &cur, mode);
            factor = &factor * &kappa[letter];
            if cur.is_zero() {
                break;
            }
        }
        let constant = cur.coeff(&[]);
        if !constant.is_zero() {
            acc = &acc + &(&factor * &constant);
        }
    }
    Ok(acc)
}

/// The κ values `(1 − π^{p(i)} q_i²)^{-1}` under a mode.
pub fn standard_kappa(d: &Superdatum, mode: PiMode) -> Vec<RationalScalar> {
    (0..d.rank()).map(|i| crate::covering::kappa(d, i).with_mode(mode)).collect()
}

/// The operator `S = Σ_{a+b=m} c_a e′_i^a e′_j e′_i^b` with `m = 1 − a_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerreOperator {
    pub i: usize,
    pub j: usize,
    pub m: u32,
    /// `coeffs[a]` multiplies `e′_i^a e′_j e′_i^{m−a}`.
    pub coeffs: Vec<Scalar>,
}

impl SerreOperator {
    /// `c_a = (−1)^{a + p(a;i,j)} [m choose a]_i^-`.
    pub fn new(d: &Superdatum, i: usize, j: usize) -> Result<Self, BosonError> {
        if !d.is_real(i) {
            return Err(BosonError::NotReal(i));
        }
        let m = (1 - d.a(i, j)) as u32;
        let coeffs = (0..=m)
            .map(|a| {
                let binom = quantum_binom(m as i64, a as i64, d.r(i) as u32, d.parity(i)).expect("0 <= a <= m");
                let sign = (a as u8 + parity_exponent(a, d.parity(i), d.parity(j), 1)) % 2;
                let b = Scalar::from_laurent(binom.specialize(-1));
                if sign == 1 {
                    -b
                } else {
                    b
                }
            })
            .collect();
        Ok(SerreOperator { i, j, m, coeffs })
    }

    /// Apply `S` (operators compose right to left: `e′_i^b` acts first).
    pub fn apply(&self, d: &Superdatum, x: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let b = self.m as usize - a;
            let mut cur = x.clone();
            for _ in 0..b {
                cur = e_prime(d, self.i, &cur, PiMode::Minus);
            }
            cur = e_prime(d, self.j, &cur, PiMode::Minus);
            for _ in 0..a {
                cur = e_prime(d, self.i, &cur, PiMode::Minus);
            }
            out = out.add(&cur.scale(&RationalScalar::from_scalar(c.clone())));
        }
        out
    }
}

/// All words of length at most `max_len`, shortest first.
pub fn all_words(rank: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for v in 0..rank {
                let mut x: Word = w.clone();
                x.push(v);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Checks `S f_k w = (−1)^{(m p(i)+p(j))p(k)} q^{−m k·i − k·j} f_k S w` on all words `w`
/// with `|w| < max_len`; returns the first counterexample word.
pub fn serre_operator_identity_check(d: &Superdatum, op: &SerreOperator, k: usize, max_len: usize) -> Option<Word> {
    let (i, j, m) = (op.i, op.j, op.m as i64);
    let sign_parity = ((m * d.parity(i) as i64 + d.parity(j) as i64) * d.parity(k) as i64) % 2;
    let factor =
        Scalar::monomial(BigInt::from(if sign_parity == 1 { -1 } else { 1 }), 0, -m * d.dot(k, i) - d.dot(k, j));
    let fk = FreeElement::generator(k);
    for w in all_words(d.rank(), max_len.saturating_sub(1)) {
        let x = FreeElement::word(w.clone());
        let lhs = op.apply(d, &fk.mult(&x));
        let rhs = fk.mult(&op.apply(d, &x)).scale(&RationalScalar::from_scalar(factor.clone()));
        if lhs != rhs {
            return Some(w);
        }
    }
    None
}

/// `Σ_{a+b=m} (−1)^{a + p(a;i,j) + b p(i)p(j)} q_i^{b(m−1)} [m choose a]_i^-`, which vanishes for
/// every admissible `m` (see [`admissible_serre_degree`]). For odd `i` and even `m` it does not.
pub fn identity_b3(m: u32, pi: u8, pj: u8, r: u32) -> Scalar {
    let mut acc = Laurent::zero();
    for a in 0..=m {
        let b = m - a;
        let binom = quantum_binom(m as i64, a as i64, r, pi).expect("0 <= a <= m").specialize(-1);
        let sign = (a as u64 + parity_exponent(a, pi, pj, 1) as u64 + b as u64 * (pi & pj) as u64) % 2;
        let term = binom.shift(r as i64 * b as i64 * (m as i64 - 1));
        acc = if sign == 1 { &acc - &term } else { &acc + &term };
    }
    Scalar::from_laurent(acc)
}

/// `Σ_{a+b=m} (−1)^{a + b(b−1)/2 p(i)} q_i^{b(m−1)} [m choose a]_i^-`, the specialization of the
/// classical vanishing sum at `v = (−1)^{p(i)/2} q_i`; zero for every `m ≥ 1`.
pub fn identity_b3_classical(m: u32, pi: u8, r: u32) -> Scalar {
    let mut acc = Laurent::zero();
    for a in 0..=m {
        let b = m - a;
        let binom = quantum_binom(m as i64, a as i64, r, pi).expect("0 <= a <= m").specialize(-1);
        let sign = (a as u64 + (b as u64 * (b as u64).saturating_sub(1) / 2) * pi as u64) % 2;
        let term = binom.shift(r as i64 * b as i64 * (m as i64 - 1));
        acc = if sign == 1 { &acc - &term } else { &acc + &term };
    }
    Scalar::from_laurent(acc)
}

/// Whether `m = 1 − a_ij` can occur: odd real vertices have even `a_ij`, so `m` is odd.
pub fn admissible_serre_degree(m: u32, pi: u8) -> bool {
    m >= 1 && (pi == 0 || m % 2 == 1)
}

/// `p(a;i,j) + (b−1)p(i) + p(a+1;i,j) + (m−1)p(i) + p(i)p(j)` mod 2 for `a + b = m`.
pub fn parity_congruence(a: u32, b: u32, pi: u8, pj: u8) -> u8 {
    let m = a + b;
    let total = parity_exponent(a, pi, pj, 1) as i64
        + (b as i64 - 1) * pi as i64
        + parity_exponent(a + 1, pi, pj, 1) as i64
        + (m as i64 - 1) * pi as i64
        + (pi & pj) as i64;
    total.rem_euclid(2) as u8
}

/// Checks `e′_i e″_j = s^{p(i)p(j)} q^{i·j} e″_j e′_i` on all words up to `max_len`.
pub fn commutation_check(d: &Superdatum, i: usize, j: usize, max_len: usize, mode: PiMode) -> Option<Word> {
    let factor = mode.pi_pow(d.parity(i) & d.parity(j)).shift(d.dot(i, j));
    for w in all_words(d.rank(), max_len) {
        let x = FreeElement::word(w.clone());
        let lhs = e_prime(d, i, &e_dprime(d, j, &x, mode), mode);
        let rhs = e_dprime(d, j, &e_prime(d, i, &x, mode), mode).scale(&RationalScalar::from_scalar(factor.clone()));
        if lhs != rhs {
            return Some(w);
        }
    }
    None
}

/// Ranks underlying the nondegeneracy statement for one weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NondegeneracyReport {
    pub words: usize,
    pub gram_rank: usize,
    pub ideal_dim: usize,
    /// Whether the Gram matrix kills every spanning vector of the ideal.
    pub ideal_in_radical: bool,
}

impl NondegeneracyReport {
    pub fn holds(&self) -> bool {
        self.ideal_in_radical && self.gram_rank + self.ideal_dim == self.words
    }
}

/// Compares the rank of the boson Gram matrix at `π = −1` with the codimension of the span
/// of `u·S·v` for Serre and commutator elements `S` and words `u`, `v`.
pub fn nondegeneracy(d: &Superdatum, nu: &Weight) -> Result<NondegeneracyReport, BosonError> {
    let words = nu.sequences();
    let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let kappa = vec![RationalScalar::one(); d.rank()];
    let gram: Vec<Vec<Laurent>> = words
        .iter()
        .map(|w| {
            words
                .iter()
                .map(|v| {
                    let f = boson_form(
                        d,
                        &FreeElement::word(w.clone()),
                        &FreeElement::word(v.clone()),
                        &kappa,
                        PiMode::Minus,
                    )
                    .expect("unit kappa");
                    f.as_scalar().expect("integral with unit kappa").specialize(-1)
                })
                .collect()
        })
        .collect();
    let gram_rank = linalg::rank(gram.clone());

    let mut relations: Vec<FreeElement> = Vec::new();
    for i in 0..d.rank() {
        for j in 0..d.rank() {
            if i == j {
                continue;
            }
            if d.is_real(i) {
                relations.push(serre_element(d, i, j, 1)?);
            } else if d.dot(i, j) == 0 && i < j {
                relations.push(commutator_element(d, i, j)?);
            }
        }
    }
    let mut vectors: Vec<Vec<Laurent>> = Vec::new();
    for rel in &relations {
        let Some(rel_weight) = rel.weight(d.rank()).map_err(BosonError::from)? else {
            continue;
        };
        let Some(rest) = nu.checked_sub(&rel_weight) else {
            continue;
        };
        for left in rest.below() {
            let right = rest.checked_sub(&left).expect("left <= rest");
            for u in left.sequences() {
                for v in right.sequences() {
                    let x = FreeElement::word(u.clone()).mult(rel).mult(&FreeElement::word(v.clone())).specialize(-1);
                    vectors.push(clear_denominators(&x, &words, &index));
                }
            }
        }
    }
    let ideal_in_radical = vectors.iter().all(|vec| {
        gram.iter().all(|row| row.iter().zip(vec).fold(Laurent::zero(), |acc, (g, c)| &acc + &(g * c)).is_zero())
    });
    let ideal_dim = linalg::rank(vectors);
    Ok(NondegeneracyReport { words: words.len(), gram_rank, ideal_dim, ideal_in_radical })
}

fn clear_denominators(x: &FreeElement, words: &[Word], index: &BTreeMap<&Word, usize>) -> Vec<Laurent> {
    let mut common = Laurent::one();
    for (_, c) in x.terms() {
        let den = c.denominator();
        let g = Laurent::gcd(&common, den);
        common = &common * &den.div_exact(&g).expect("gcd divides");
    }
    let mut out = vec![Laurent::zero(); words.len()];
    for (w, c) in x.terms() {
        let scale = common.div_exact(c.denominator()).expect("common multiple");
        out[index[w]] = &c.numerator().specialize(-1) * &scale;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering;

    fn sup() -> Superdatum {
        Superdatum::from_parts(&["i", "j"], &[1, 1], &[1, 1], &[&[2, -2], &[-2, -2]])
    }

    fn even() -> Superdatum {
        Superdatum::from_parts(&["i", "j"], &[0, 0], &[1, 1], &[&[2, -1], &[-1, 2]])
    }

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn derivation_examples() {
        let d = sup();
        let f = |w: Vec<usize>| FreeElement::word(w);
        assert_eq!(e_prime(&d, 0, &f(vec![0]), PiMode::Minus), FreeElement::one());
        assert_eq!(e_prime(&d, 0, &f(vec![1]), PiMode::Minus), FreeElement::zero());
        // (−1)^{p(i)p(j)} q^{−i·j} f_j with i·j = −2
        assert_eq!(e_prime(&d, 0, &f(vec![1, 0]), PiMode::Minus), f(vec![1]).scale(&s("-q^2").to_rational()));
        assert_eq!(e_dprime(&d, 0, &f(vec![0]), PiMode::Minus), FreeElement::one());
        // (1 + (−1)^{p(i)} q^{i·i}) f_i
        assert_eq!(e_dprime(&d, 0, &f(vec![0, 0]), PiMode::Minus), f(vec![0]).scale(&s("1 - q^2").to_rational()));
        assert_eq!(e_dprime(&d, 0, &f(vec![1]), PiMode::Minus), FreeElement::zero());
    }

    #[test]
    fn form_matches_covering() {
        for d in [sup(), even()] {
            let kappa = standard_kappa(&d, PiMode::Minus);
            let words = all_words(2, 4);
            for w in &words {
                for v in &words {
                    if w.len() != v.len() {
                        continue;
                    }
                    let (x, y) = (FreeElement::word(w.clone()), FreeElement::word(v.clone()));
                    let b = boson_form(&d, &x, &y, &kappa, PiMode::Minus).unwrap();
                    assert_eq!(b, covering::form(&d, &x, &y).specialize(-1));
                    assert_eq!(b, boson_form(&d, &y, &x, &kappa, PiMode::Minus).unwrap());
                }
            }
        }
    }

    #[test]
    fn zero_kappa_rejected() {
        let d = even();
        let kappa = vec![RationalScalar::zero(), RationalScalar::one()];
        assert_eq!(
            boson_form(&d, &FreeElement::one(), &FreeElement::one(), &kappa, PiMode::Minus),
            Err(BosonError::ZeroKappa(0))
        );
    }

    #[test]
    fn identity_b3_vanishes() {
        for m in 1..=6 {
            for pi in 0..=1 {
                assert!(identity_b3_classical(m, pi, 1).is_zero());
                for pj in 0..=1 {
                    for r in 1..=2 {
                        let v = identity_b3(m, pi, pj, r);
                        assert_eq!(v.is_zero(), admissible_serre_degree(m, pi), "m={m} pi={pi} pj={pj} r={r}");
                    }
                }
            }
        }
        for m in 0..=8 {
            for a in 0..=m {
                for pi in 0..=1 {
                    for pj in 0..=1 {
                        assert_eq!(parity_congruence(a, m - a, pi, pj), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn serre_operator_identity() {
        for d in [sup(), even()] {
            for (i, j) in [(0, 1)] {
                let op = SerreOperator::new(&d, i, j).unwrap();
                for k in 0..d.rank() {
                    assert_eq!(serre_operator_identity_check(&d, &op, k, 4), None);
                }
            }
        }
        let d = even();
        let mut bad = SerreOperator::new(&d, 0, 1).unwrap();
        bad.coeffs[1] = -bad.coeffs[1].clone();
        assert!((0..2).any(|k| serre_operator_identity_check(&d, &bad, k, 4).is_some()));
    }

    #[test]
    fn commutation_identity() {
        for d in [sup(), even()] {
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(commutation_check(&d, i, j, 4, PiMode::Minus), None);
                    assert_eq!(commutation_check(&d, i, j, 3, PiMode::Generic), None);
                }
            }
        }
    }

    #[test]
    fn nondegenerate_modulo_serre() {
        for d in [sup(), even()] {
            for h in 1..=4u32 {
                for a in 0..=h {
                    let r = nondegeneracy(&d, &Weight(vec![a, h - a])).unwrap();
                    assert!(r.holds(), "{:?} weight ({a},{})", r, h - a);
                }
            }
        }
    }
}
