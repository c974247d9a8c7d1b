//! The suite registry. Every suite expands into independent checks; checks run on a rayon
//! pool and are reported in id order, so the report does not depend on the pool width.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qhsa_core::boson::{
    admissible_serre_degree, all_words, boson_form, commutation_check, identity_b3, identity_b3_classical,
    nondegeneracy, parity_congruence, serre_operator_identity_check, standard_kappa, BosonKind, BosonOperator,
    SerreOperator,
};
use qhsa_core::covering::{
    self, commutator_element, coproduct, form_words, gram, kappa, radical_member, serre_element, tensor_form,
    FreeElement, TensorElement, DEFAULT_MAX_HEIGHT,
};
use qhsa_core::datum::{word_name, QTarget, Superdatum, Weight};
use qhsa_core::ktheory::{mackey_dim_check, mackey_instances, pairing_check, serre_categorified_check};
use qhsa_core::perm::Perm;
use qhsa_core::qhsa::{
    act_on_poly, act_on_polyvec, e_idempotent, independence_check, omega0_sign, symbols, tau_omega0_eval,
    trivial_functional, BasisSymbol, QhsaElement, Straightener,
};
use qhsa_core::scalar::{quantum_binom, series_expand, DimSeries, Laurent, PiMode, RationalScalar, Scalar};
use qhsa_core::superpoly::{monomial_text, monomials_up_to, verify_relations, CliffordPoly, Op, Reading};

use crate::config::{pi_name, ConfigError, LoadedDatum, RunConfig, Suite};
use crate::report::{CheckRecord, Header, Report, Verdict};

/// `Err` carries the witness.
pub type Outcome = Result<(), String>;

/// Degree bound for the relation checks of `rep-verify`.
pub const REP_DEGREE: u32 = 6;
/// Random pairs per datum in `qhsa-differential`.
pub const DIFFERENTIAL_PAIRS: usize = 500;
const DIFFERENTIAL_BATCH: usize = 50;

/// One planned check.
pub struct Check {
    pub id: String,
    /// The `explain` key of the identity.
    pub key: &'static str,
    pub inputs: BTreeMap<String, String>,
    run: Box<dyn Fn() -> Outcome + Send + Sync>,
}

impl Check {
    fn new(
        key: &'static str,
        detail: String,
        inputs: Vec<(&str, String)>,
        run: impl Fn() -> Outcome + Send + Sync + 'static,
    ) -> Check {
        let id = if detail.is_empty() { key.to_string() } else { format!("{key}[{detail}]") };
        let inputs = inputs.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        Check { id, key, inputs, run: Box::new(run) }
    }

    pub fn execute(&self) -> CheckRecord {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| (self.run)())).unwrap_or_else(|payload| {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            Err(format!("panicked: {msg}"))
        });
        let (verdict, witness) = match outcome {
            Ok(()) => (Verdict::Pass, None),
            Err(w) => (Verdict::Fail, Some(w)),
        };
        CheckRecord {
            id: self.id.clone(),
            refs: vec![self.key.to_string()],
            inputs: self.inputs.clone(),
            verdict,
            witness,
            millis: start.elapsed().as_millis(),
        }
    }
}

struct Ctx {
    data: Vec<Arc<LoadedDatum>>,
    max_height: Option<u32>,
    order: Option<i64>,
    pi: PiMode,
    seed: u64,
    reading: Reading,
}

impl Ctx {
    fn height(&self, default: u32) -> u32 {
        self.max_height.unwrap_or(default)
    }

    fn order(&self, default: i64) -> i64 {
        self.order.unwrap_or(default)
    }
}

/// The checks `cfg` selects, sorted by id.
pub fn plan(cfg: &RunConfig) -> Vec<Check> {
    let ctx = Ctx {
        data: cfg.datums.iter().cloned().map(Arc::new).collect(),
        max_height: cfg.max_height,
        order: cfg.order,
        pi: cfg.pi,
        seed: cfg.seed,
        reading: cfg.reading,
    };
    let mut checks = Vec::new();
    for suite in &cfg.suites {
        checks.extend(match suite {
            Suite::DatumValidate => datum_validate(&ctx),
            Suite::CoveringGram => covering_gram(&ctx),
            Suite::SerreRadical => serre_radical(&ctx),
            Suite::BosonIdentities => boson_identities(&ctx),
            Suite::RepVerify => rep_verify(&ctx),
            Suite::QhsaDifferential => qhsa_differential(&ctx),
            Suite::Onh => onh(&ctx),
            Suite::Pairing => pairing(&ctx),
            Suite::SerreCat => serre_cat(&ctx),
            Suite::Mackey => mackey(&ctx),
        });
    }
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    debug_assert!(checks.windows(2).all(|w| w[0].id != w[1].id), "check ids are unique");
    checks
}

/// Validates `cfg`, runs the selected checks on `cfg.jobs` threads and writes the report when
/// `cfg.out` is set.
pub fn run(cfg: &RunConfig) -> Result<Report, ConfigError> {
    cfg.validate()?;
    let checks = plan(cfg);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().expect("thread pool");
    let records: Vec<CheckRecord> = pool.install(|| checks.par_iter().map(Check::execute).collect());
    let failed = records.iter().filter(|r| !r.passed()).count();
    let reading = format!(
        "mirrored_even_dot_crossing={} braid_scale={}",
        cfg.reading.mirrored_even_dot_crossing, cfg.reading.braid_scale
    );
    let report = Report {
        report: Header {
            format: 1,
            orientation: "identity".to_string(),
            reading,
            pi: pi_name(cfg.pi).to_string(),
            seed: cfg.seed,
            data: cfg.datums.iter().map(|d| d.name.clone()).collect(),
            suites: cfg.suites.iter().map(|s| s.name().to_string()).collect(),
            checks: records.len(),
            failed,
        },
        check: records,
    };
    if let Some(path) = &cfg.out {
        report.write(path).map_err(|source| ConfigError::Io { path: path.clone(), source })?;
    }
    Ok(report)
}

fn names(d: &Superdatum, w: &[usize]) -> String {
    if w.is_empty() {
        "()".to_string()
    } else {
        word_name(d, w)
    }
}

fn series_text(a: &BigInt, b: &BigInt) -> String {
    if b.is_zero() {
        a.to_string()
    } else {
        format!("{a}+{b}pi")
    }
}

/// The first degree at which two series differ.
pub fn series_diff(lhs: &DimSeries, rhs: &DimSeries) -> String {
    if lhs.order() != rhs.order() {
        return format!("orders {} and {}", lhs.order(), rhs.order());
    }
    let low = lhs.low_bound().min(rhs.low_bound());
    for e in low..=lhs.order() {
        let (a, b) = lhs.coeff(e);
        let (c, d) = rhs.coeff(e);
        if a != c || b != d {
            return format!("q^{e}: {} vs {}", series_text(&a, &b), series_text(&c, &d));
        }
    }
    "series agree".to_string()
}

// ---------------------------------------------------------------- datum-validate

#[derive(Clone, Debug, PartialEq)]
struct PolyUv(BTreeMap<(u32, u32), BigInt>);

impl QTarget for PolyUv {
    fn unit(&self) -> Self {
        PolyUv(BTreeMap::from([((0, 0), BigInt::one())]))
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = BTreeMap::new();
        for ((a, b), c) in &self.0 {
            for ((x, y), d) in &rhs.0 {
                *out.entry((a + x, b + y)).or_insert_with(BigInt::zero) += c * d;
            }
        }
        out.retain(|_, c: &mut BigInt| !c.is_zero());
        PolyUv(out)
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.0.clone();
        for (k, c) in &rhs.0 {
            *out.entry(*k).or_insert_with(BigInt::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        PolyUv(out)
    }

    fn scale(&self, c: &BigInt) -> Self {
        let mut out: BTreeMap<_, _> = self.0.iter().map(|(k, v)| (*k, v * c)).collect();
        out.retain(|_, c: &mut BigInt| !c.is_zero());
        PolyUv(out)
    }
}

fn datum_validate(ctx: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();
    let examples: [(&str, Superdatum, Option<&str>); 3] = [
        ("sl2", Superdatum::from_parts(&["i"], &[0], &[1], &[&[2]]), None),
        ("odd-row", Superdatum::from_parts(&["i", "j"], &[1, 0], &[1, 1], &[&[2, -1], &[-1, 2]]), Some("iv")),
        ("zero-pattern", Superdatum::from_parts(&["i", "j"], &[0, 0], &[1, 1], &[&[2, -1], &[0, 2]]), Some("iii")),
    ];
    for (name, d, expected) in examples {
        let exp_text = expected.map_or("pass".to_string(), |a| format!("axiom {a}"));
        out.push(Check::new(
            "datum-validate.examples",
            name.to_string(),
            vec![("expected", exp_text)],
            move || match (d.validate(), expected) {
                (Ok(()), None) => Ok(()),
                (Err(v), Some(a)) if v.axiom() == a => Ok(()),
                (Ok(()), Some(a)) => Err(format!("passed, expected axiom {a} to fail")),
                (Err(v), _) => Err(format!("unexpected violation: {v}")),
            },
        ));
    }
    for ld in &ctx.data {
        let l = ld.clone();
        out.push(Check::new("datum-validate.tables", ld.name.clone(), vec![("datum", ld.name.clone())], move || {
            l.hecke.validate().map_err(|v| v.to_string())
        }));
        let l = ld.clone();
        out.push(Check::new(
            "datum-validate.q-symmetry",
            ld.name.clone(),
            vec![("datum", ld.name.clone())],
            move || {
                let h = &l.hecke;
                let alpha = PolyUv(BTreeMap::from([((0, 0), BigInt::one()), ((1, 0), BigInt::from(2))]));
                let beta = PolyUv(BTreeMap::from([((0, 1), BigInt::from(3)), ((1, 1), BigInt::from(-1))]));
                for i in 0..h.rank() {
                    for j in 0..h.rank() {
                        if i != j && h.qtable.q_eval(i, j, &alpha, &beta) != h.qtable.q_eval(j, i, &beta, &alpha) {
                            return Err(format!(
                                "Q_{{{},{}}}(α,β) != Q_{{{},{}}}(β,α)",
                                h.datum.name(i),
                                h.datum.name(j),
                                h.datum.name(j),
                                h.datum.name(i)
                            ));
                        }
                    }
                }
                Ok(())
            },
        ));
    }
    out
}

// ---------------------------------------------------------------- covering-gram

fn covering_gram(ctx: &Ctx) -> Vec<Check> {
    let max = ctx.height(4);
    let mut out = Vec::new();
    for ld in &ctx.data {
        let d = ld.datum();
        for i in 0..d.rank() {
            let l = ld.clone();
            let detail = format!("{}:{}", ld.name, d.name(i));
            out.push(Check::new(
                "covering-gram.kappa",
                detail,
                vec![("datum", ld.name.clone()), ("vertex", d.name(i).into())],
                move || {
                    let d = l.datum();
                    let g = FreeElement::generator(i);
                    let k = kappa(d, i);
                    if covering::form(d, &g, &g) != k {
                        return Err("form(θ_i, θ_i) differs from κ_i".into());
                    }
                    for sign in [1i64, -1] {
                        // 1 / (1 − sign^{p(i)} q^{2 r_i})
                        let s = if d.parity(i) == 1 { sign } else { 1 };
                        let den = Laurent::from_terms([(0, BigInt::one()), (2 * d.r(i), BigInt::from(-s))]);
                        let expected = RationalScalar::new(Scalar::one(), den);
                        if k.specialize(sign as i8) != expected {
                            return Err(format!("κ_i at π = {sign} is {}", k.specialize(sign as i8)));
                        }
                    }
                    Ok(())
                },
            ));
        }
        for ht in 1..=max {
            for nu in Weight::of_height(d.rank(), ht) {
                let wname = nu.display(d).to_string();
                let l = ld.clone();
                let nu2 = nu.clone();
                let inputs = vec![("datum", ld.name.clone()), ("weight", wname.clone())];
                out.push(Check::new(
                    "covering-gram.symmetry",
                    format!("{}:{}", ld.name, wname),
                    inputs.clone(),
                    move || {
                        let d = l.datum();
                        let g = gram(d, &nu2, max.max(DEFAULT_MAX_HEIGHT)).map_err(|e| e.to_string())?;
                        for a in 0..g.words.len() {
                            for b in 0..a {
                                if g.core[a][b] != g.core[b][a] {
                                    return Err(format!(
                                        "{{{},{}}} asymmetric",
                                        names(d, &g.words[a]),
                                        names(d, &g.words[b])
                                    ));
                                }
                            }
                        }
                        Ok(())
                    },
                ));
                if ht <= 3 {
                    let l = ld.clone();
                    out.push(Check::new(
                        "covering-gram.coproduct",
                        format!("{}:{}", ld.name, wname),
                        inputs,
                        move || {
                            let d = l.datum();
                            let words = nu.sequences();
                            for x in &words {
                                let cop = coproduct(d, &FreeElement::word(x.clone()));
                                for y in &words {
                                    for split in 0..=y.len() {
                                        let (a, b) = y.split_at(split);
                                        let lhs = form_words(d, x, y);
                                        let rhs = tensor_form(
                                            d,
                                            &cop,
                                            &TensorElement::pure(a.to_vec(), b.to_vec(), RationalScalar::one()),
                                        );
                                        if lhs != rhs {
                                            return Err(format!("x={} y={}|{}", names(d, x), names(d, a), names(d, b)));
                                        }
                                    }
                                }
                            }
                            Ok(())
                        },
                    ));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------- serre-radical

fn radical_outcome(d: &Superdatum, x: &FreeElement, expect_member: bool) -> Outcome {
    let cert = radical_member(d, x, DEFAULT_MAX_HEIGHT).map_err(|e| e.to_string())?;
    if !cert.criteria_agree() {
        return Err(format!("Gram criterion says {}, iterated ρ says {}", cert.member, cert.rho_criterion));
    }
    if cert.member != expect_member {
        let detail = cert
            .words
            .iter()
            .zip(&cert.product)
            .find(|(_, c)| !c.is_zero())
            .map(|(w, c)| format!("(G·x)[{}] = {c}", names(d, w)))
            .unwrap_or_default();
        return Err(format!("membership {} (expected {expect_member}) {detail}", cert.member));
    }
    Ok(())
}

fn serre_radical(ctx: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();
    for ld in &ctx.data {
        let d = ld.datum();
        for i in 0..d.rank() {
            let l = ld.clone();
            out.push(Check::new(
                "serre-radical.generator",
                format!("{}:{}", ld.name, d.name(i)),
                vec![("datum", ld.name.clone())],
                move || radical_outcome(l.datum(), &FreeElement::generator(i), false),
            ));
            for j in 0..d.rank() {
                if i == j {
                    continue;
                }
                if d.dot(i, j) == 0 && i < j {
                    let l = ld.clone();
                    let detail = format!("{}:{},{}", ld.name, d.name(i), d.name(j));
                    out.push(Check::new(
                        "serre-radical.commutator",
                        detail,
                        vec![("datum", ld.name.clone())],
                        move || {
                            let x = commutator_element(l.datum(), i, j).map_err(|e| e.to_string())?;
                            radical_outcome(l.datum(), &x, true)
                        },
                    ));
                }
                if !d.is_real(i) || 1 - d.a(i, j) > 3 {
                    continue;
                }
                for n in 1..=2u32 {
                    let m = 1 - n as i64 * d.a(i, j);
                    if m + n as i64 > DEFAULT_MAX_HEIGHT as i64 {
                        continue;
                    }
                    let l = ld.clone();
                    let detail = format!("{}:{},{};n={n}", ld.name, d.name(i), d.name(j));
                    let inputs = vec![("datum", ld.name.clone()), ("n", n.to_string())];
                    out.push(Check::new("serre-radical.serre", detail, inputs, move || {
                        let x = serre_element(l.datum(), i, j, n).map_err(|e| e.to_string())?;
                        radical_outcome(l.datum(), &x, true)
                    }));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------- boson-identities

fn binom_or_zero(n: i64, k: i64, r: u32, p: u8) -> Scalar {
    if k < 0 || k > n {
        Scalar::zero()
    } else {
        quantum_binom(n, k, r, p).expect("0 <= k <= n")
    }
}

/// Both Pascal recursions: the generic one and its `π = −1` specialization.
fn binomial_recursion(r: u32, p: u8) -> Outcome {
    for n in 1..=8i64 {
        for k in 0..=n {
            let lead = Scalar::monomial(BigInt::one(), ((p as i64 * k) % 2) as u8, r as i64 * k);
            let rhs = &(&lead * &binom_or_zero(n - 1, k, r, p))
                + &(&Scalar::q_pow(-(r as i64) * (n - k)) * &binom_or_zero(n - 1, k - 1, r, p));
            if binom_or_zero(n, k, r, p) != rhs {
                return Err(format!("generic recursion at n={n} k={k}"));
            }
            let minus = |n: i64, k: i64| binom_or_zero(n, k, r, p).specialize(-1);
            let sign = if ((n - k) * p as i64) % 2 == 1 { -1 } else { 1 };
            let rhs = &minus(n - 1, k).shift(-(r as i64) * k)
                + &minus(n - 1, k - 1).shift(r as i64 * (n - k)).scale(&BigInt::from(sign));
            if minus(n, k) != rhs {
                return Err(format!("π = −1 recursion at n={n} k={k}"));
            }
        }
    }
    Ok(())
}

fn recursion_check(d: &Superdatum, op: BosonOperator, mode: PiMode, max_len: usize) -> Outcome {
    let i = op.vertex;
    for w in all_words(d.rank(), max_len.saturating_sub(1)) {
        let x = FreeElement::word(w.clone());
        let opx = op.apply(d, mode, &x);
        for j in 0..d.rank() {
            let fj = FreeElement::generator(j);
            let lhs = op.apply(d, mode, &fj.mult(&x));
            let exp = match op.kind {
                BosonKind::Prime => -d.dot(i, j),
                BosonKind::DoublePrime => d.dot(i, j),
            };
            let twist = mode.pi_pow(d.parity(i) & d.parity(j)).shift(exp);
            let mut rhs = fj.mult(&opx).scale(&RationalScalar::from_scalar(twist));
            if i == j {
                rhs = rhs.add(&x);
            }
            if lhs != rhs {
                return Err(format!("word {}", names(d, &[&[j][..], &w[..]].concat())));
            }
        }
    }
    Ok(())
}

fn boson_identities(ctx: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();
    for r in 1..=2u32 {
        for p in 0..=1u8 {
            out.push(Check::new("boson-identities.binomial-recursion", format!("r={r},p={p}"), vec![], move || {
                binomial_recursion(r, p)
            }));
        }
    }
    for m in 1..=6u32 {
        for pi in 0..=1u8 {
            for pj in 0..=1u8 {
                let detail = format!("m={m},p={pi}{pj}");
                out.push(Check::new("boson-identities.serre-sum", detail, vec![], move || {
                    for r in 1..=2u32 {
                        let v = identity_b3(m, pi, pj, r);
                        if admissible_serre_degree(m, pi) {
                            if !v.is_zero() {
                                return Err(format!("r={r}: sum is {v}"));
                            }
                        } else if v.is_zero() || !identity_b3_classical(m, pi, r).is_zero() {
                            return Err(format!("r={r}: inadmissible degree behaves unexpectedly ({v})"));
                        }
                    }
                    Ok(())
                }));
            }
        }
    }
    out.push(Check::new("boson-identities.parity-congruence", String::new(), vec![], || {
        for m in 0..=8u32 {
            for a in 0..=m {
                for pi in 0..=1 {
                    for pj in 0..=1 {
                        if parity_congruence(a, m - a, pi, pj) != 0 {
                            return Err(format!("a={a} b={} p={pi}{pj}", m - a));
                        }
                    }
                }
            }
        }
        Ok(())
    }));

    let max_len = ctx.height(4) as usize;
    let mode = ctx.pi;
    for ld in &ctx.data {
        let d = ld.datum();
        let base = vec![("datum", ld.name.clone()), ("pi", pi_name(mode).to_string())];
        for i in 0..d.rank() {
            for (label, op) in [("e'", BosonOperator::prime(i)), ("e''", BosonOperator::dprime(i))] {
                let l = ld.clone();
                let detail = format!("{}:{}_{}", ld.name, label, d.name(i));
                out.push(Check::new("boson-identities.recursion", detail, base.clone(), move || {
                    recursion_check(l.datum(), op, mode, max_len)
                }));
            }
            for j in 0..d.rank() {
                let l = ld.clone();
                let detail = format!("{}:{},{}", ld.name, d.name(i), d.name(j));
                out.push(Check::new("boson-identities.commutation", detail, base.clone(), move || {
                    match commutation_check(l.datum(), i, j, max_len, mode) {
                        None => Ok(()),
                        Some(w) => Err(format!("word {}", names(l.datum(), &w))),
                    }
                }));
                if i == j || !d.is_real(i) {
                    continue;
                }
                for k in 0..d.rank() {
                    let l = ld.clone();
                    let detail = format!("{}:{},{};{}", ld.name, d.name(i), d.name(j), d.name(k));
                    out.push(Check::new(
                        "boson-identities.serre-operator",
                        detail,
                        vec![("datum", ld.name.clone())],
                        move || {
                            let d = l.datum();
                            let op = SerreOperator::new(d, i, j).map_err(|e| e.to_string())?;
                            match serre_operator_identity_check(d, &op, k, max_len) {
                                None => Ok(()),
                                Some(w) => Err(format!("word {}", names(d, &w))),
                            }
                        },
                    ));
                }
            }
        }
        for ht in 1..=max_len as u32 {
            for nu in Weight::of_height(d.rank(), ht) {
                let wname = nu.display(d).to_string();
                let l = ld.clone();
                let nu2 = nu.clone();
                let mut inputs = base.clone();
                inputs.push(("weight", wname.clone()));
                out.push(Check::new(
                    "boson-identities.form",
                    format!("{}:{}", ld.name, wname),
                    inputs.clone(),
                    move || {
                        let d = l.datum();
                        let kap = standard_kappa(d, mode);
                        let words = nu2.sequences();
                        for w in &words {
                            for v in &words {
                                let (x, y) = (FreeElement::word(w.clone()), FreeElement::word(v.clone()));
                                let b = boson_form(d, &x, &y, &kap, mode).map_err(|e| e.to_string())?;
                                let c = covering::form(d, &x, &y);
                                let c = match mode {
                                    PiMode::Generic => c,
                                    PiMode::Plus => c.specialize(1),
                                    PiMode::Minus => c.specialize(-1),
                                };
                                if b != c {
                                    return Err(format!("<{}, {}>: {b} vs {c}", names(d, w), names(d, v)));
                                }
                            }
                        }
                        Ok(())
                    },
                ));
                if ht <= 3 {
                    let l = ld.clone();
                    out.push(Check::new(
                        "boson-identities.nondegeneracy",
                        format!("{}:{}", ld.name, wname),
                        inputs,
                        move || {
                            let r = nondegeneracy(l.datum(), &nu).map_err(|e| e.to_string())?;
                            if r.holds() {
                                Ok(())
                            } else {
                                Err(format!(
                                    "words {} gram rank {} ideal dim {} ideal in radical {}",
                                    r.words, r.gram_rank, r.ideal_dim, r.ideal_in_radical
                                ))
                            }
                        },
                    ));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------- rep-verify

/// Labels of `2i`, `i+j`, `2i+j` and `i+2j` for every vertex pair.
pub fn rep_labels(d: &Superdatum) -> BTreeSet<Vec<usize>> {
    let rank = d.rank();
    let mut weights = Vec::new();
    for i in 0..rank {
        let mut w = Weight::zero(rank);
        w.0[i] = 2;
        weights.push(w);
        for j in (i + 1)..rank {
            for (a, b) in [(1, 1), (2, 1), (1, 2)] {
                let mut w = Weight::zero(rank);
                w.0[i] = a;
                w.0[j] = b;
                weights.push(w);
            }
        }
    }
    weights.iter().flat_map(Weight::sequences).collect()
}

fn rep_verify(ctx: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();
    let reading = ctx.reading;
    for ld in &ctx.data {
        let d = ld.datum();
        for label in rep_labels(d) {
            let l = ld.clone();
            let lname = word_name(d, &label);
            let inputs = vec![("datum", ld.name.clone()), ("label", lname.clone()), ("degree", REP_DEGREE.to_string())];
            out.push(Check::new("rep-verify.relations", format!("{}:{}", ld.name, lname), inputs, move || {
                let rep = verify_relations(&l.hecke, &label, REP_DEGREE, reading).map_err(|e| e.to_string())?;
                match rep.failures.first() {
                    None => Ok(()),
                    Some(f) => Err(format!(
                        "{} on 1_{} at {} ({} of {} checks fail)",
                        f.relation,
                        word_name(l.datum(), &f.label),
                        monomial_text(&f.monomial),
                        rep.failures.len(),
                        rep.checks
                    )),
                }
            }));
        }
    }
    out
}

// ---------------------------------------------------------------- qhsa-differential

fn random_symbol(rng: &mut ChaCha8Rng, perms: &[Perm], source: &[usize], max_dot: u32) -> BasisSymbol {
    let perm = perms[rng.random_range(0..perms.len())].clone();
    let dots = (0..source.len()).map(|_| rng.random_range(0..=max_dot)).collect();
    BasisSymbol { source: source.to_vec(), perm, dots }
}

fn differential_batch(ld: &LoadedDatum, max_height: u32, mut rng: ChaCha8Rng, pairs: usize) -> Outcome {
    let h = &ld.hecke;
    let d = &h.datum;
    let mut st = Straightener::new(h);
    let perms: Vec<Vec<Perm>> = (0..=max_height as usize).map(Perm::all).collect();
    let monos: Vec<_> = (0..=max_height as usize).map(|n| monomials_up_to(n, 2)).collect();
    for _ in 0..pairs {
        let n = rng.random_range(1..=max_height as usize);
        let source: Vec<usize> = (0..n).map(|_| rng.random_range(0..d.rank())).collect();
        let b = random_symbol(&mut rng, &perms[n], &source, 2);
        let a = random_symbol(&mut rng, &perms[n], &b.target(), 2);
        let (ea, eb) = (QhsaElement::symbol(a.clone()), QhsaElement::symbol(b.clone()));
        let ab = st.mult(&ea, &eb);
        if !ab.is_zero() {
            let (da, pa) = a.bidegree(d);
            let (db, pb) = b.bidegree(d);
            if ab.bidegree(d) != Some((da + db, (pa + pb) % 2)) {
                return Err(format!("{a} * {b}: product not homogeneous of the summed bidegree"));
            }
        }
        for _ in 0..3 {
            let m = monos[n][rng.random_range(0..monos[n].len())];
            let f = CliffordPoly::monomial(d, &source, m, BigRational::one());
            let lhs = act_on_poly(h, &ab, &f).map_err(|e| e.to_string())?;
            let rhs = act_on_polyvec(h, &ea, &act_on_poly(h, &eb, &f).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!("({a})*({b}) on {} over 1_{}", monomial_text(&m), word_name(d, &source)));
            }
        }
    }
    Ok(())
}

/// `2i` for every vertex, `3i` for odd imaginary ones, `i + j` for every pair.
fn independence_weights(d: &Superdatum) -> Vec<Weight> {
    let rank = d.rank();
    let mut out = Vec::new();
    for i in 0..rank {
        let mut w = Weight::zero(rank);
        w.0[i] = 2;
        out.push(w.clone());
        if !d.is_real(i) && d.parity(i) == 1 {
            w.0[i] = 3;
            out.push(w);
        }
        for j in (i + 1)..rank {
            out.push(Weight::simple(rank, i).add(&Weight::simple(rank, j)));
        }
    }
    out
}

fn qhsa_differential(ctx: &Ctx) -> Vec<Check> {
    let max_height = ctx.height(3);
    let mut out = Vec::new();
    for ld in &ctx.data {
        let d = ld.datum();
        for nu in independence_weights(d) {
            let l = ld.clone();
            let wname = nu.display(d).to_string();
            let inputs = vec![("datum", ld.name.clone()), ("weight", wname.clone()), ("max_dot", "2".to_string())];
            out.push(Check::new(
                "qhsa-differential.independence",
                format!("{}:{}", ld.name, wname),
                inputs,
                move || match independence_check(&l.hecke, &nu, 2) {
                    Ok(true) => Ok(()),
                    Ok(false) => Err("basis symbols act dependently on the probes".into()),
                    Err(e) => Err(e.to_string()),
                },
            ));
        }
    }
    for (di, ld) in ctx.data.iter().enumerate() {
        for batch in 0..DIFFERENTIAL_PAIRS / DIFFERENTIAL_BATCH {
            let l = ld.clone();
            let seed = ctx.seed;
            let inputs = vec![
                ("datum", ld.name.clone()),
                ("seed", seed.to_string()),
                ("pairs", DIFFERENTIAL_BATCH.to_string()),
                ("max_height", max_height.to_string()),
            ];
            out.push(Check::new(
                "qhsa-differential.homomorphism",
                format!("{}:batch={batch:02}", ld.name),
                inputs,
                move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(((di as u64) << 32) | batch as u64);
                    differential_batch(&l, max_height, rng, DIFFERENTIAL_BATCH)
                },
            ));
        }
    }
    out
}

// ---------------------------------------------------------------- onh

/// `Σ_{|S| = k} Π_{a∈S} x_a² · 1_{i^n}`.
fn elementary_in_squares(st: &mut Straightener<'_>, i: usize, n: usize, k: usize) -> QhsaElement {
    let label = vec![i; n];
    let mut out = QhsaElement::zero();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let ops: Vec<Op> = (0..n).filter(|a| mask >> a & 1 == 1).flat_map(|a| [Op::X(a), Op::X(a)]).collect();
        out = out.add(&st.word_element(&ops, &label));
    }
    out
}

fn onh(ctx: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();
    for ld in &ctx.data {
        let d = ld.datum();
        for i in 0..d.rank() {
            let vname = d.name(i).to_string();
            if !d.is_real(i) {
                if d.parity(i) == 1 {
                    let l = ld.clone();
                    out.push(Check::new(
                        "onh.trivial-module",
                        format!("{}:{}", ld.name, vname),
                        vec![("datum", ld.name.clone())],
                        move || {
                            let mut st = Straightener::new(&l.hecke);
                            for a in symbols(&[i, i], &[i, i], 2) {
                                for b in symbols(&[i, i], &[i, i], 2) {
                                    let (ea, eb) = (QhsaElement::symbol(a.clone()), QhsaElement::symbol(b.clone()));
                                    if trivial_functional(&st.mult(&ea, &eb))
                                        != trivial_functional(&ea) * trivial_functional(&eb)
                                    {
                                        return Err(format!("{a} * {b}"));
                                    }
                                }
                            }
                            Ok(())
                        },
                    ));
                }
                continue;
            }
            let inputs = vec![("datum", ld.name.clone()), ("vertex", vname.clone())];
            for n in 1..=4usize {
                let l = ld.clone();
                out.push(Check::new(
                    "onh.idempotent",
                    format!("{}:{};n={n}", ld.name, vname),
                    inputs.clone(),
                    move || {
                        let mut st = Straightener::new(&l.hecke);
                        let e = e_idempotent(&l.hecke, i, n).map_err(|e| e.to_string())?;
                        let e2 = st.mult(&e, &e);
                        if e2 == e {
                            Ok(())
                        } else {
                            Err(format!("e^2 = {}", e2.to_text(l.datum())))
                        }
                    },
                ));
            }
            for n in 2..=5usize {
                let l = ld.clone();
                out.push(Check::new(
                    "onh.tau-omega0",
                    format!("{}:{};n={n}", ld.name, vname),
                    inputs.clone(),
                    move || {
                        let expected = if l.datum().parity(i) == 1 { omega0_sign(n) } else { 1 };
                        match tau_omega0_eval(&l.hecke, i, n).map_err(|e| e.to_string())? {
                            Some(c) if c == BigRational::from_integer(BigInt::from(expected)) => Ok(()),
                            Some(c) => Err(format!("constant {c}, expected {expected}")),
                            None => Err("result is not a constant".into()),
                        }
                    },
                ));
            }
            if d.parity(i) == 1 {
                for n in 1..=3usize {
                    let l = ld.clone();
                    out.push(Check::new(
                        "onh.center",
                        format!("{}:{};n={n}", ld.name, vname),
                        inputs.clone(),
                        move || {
                            let mut st = Straightener::new(&l.hecke);
                            let mut nu = Weight::zero(l.datum().rank());
                            nu.0[i] = n as u32;
                            for k in 1..=n {
                                let z = elementary_in_squares(&mut st, i, n, k);
                                if !st.center_probe(&nu, &z) {
                                    return Err(format!("e_{k}(x^2) not central"));
                                }
                            }
                            let x1 = st.word_element(&[Op::X(0)], &vec![i; n]);
                            if st.center_probe(&nu, &x1) {
                                return Err("x_1 accepted as central".into());
                            }
                            Ok(())
                        },
                    ));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------- pairing

fn pairing(ctx: &Ctx) -> Vec<Check> {
    let max = ctx.height(3);
    let order = ctx.order(20);
    let mut out = Vec::new();
    for ld in &ctx.data {
        let d = ld.datum();
        for i in 0..d.rank() {
            let l = ld.clone();
            let inputs = vec![("datum", ld.name.clone()), ("order", order.to_string())];
            out.push(Check::new("pairing.kappa", format!("{}:{}", ld.name, d.name(i)), inputs, move || {
                let d = l.datum();
                let rep = pairing_check(d, &[i], &[i], order).map_err(|e| e.to_string())?;
                let exact = series_expand(&kappa(d, i), order).map_err(|e| e.to_string())?;
                if rep.lhs != exact {
                    return Err(format!("dim 1_i R(i) 1_i vs κ_i: {}", series_diff(&rep.lhs, &exact)));
                }
                Ok(())
            }));
        }
        for ht in 1..=max {
            for nu in Weight::of_height(d.rank(), ht) {
                let seqs = nu.sequences();
                for s in &seqs {
                    for t in &seqs {
                        let l = ld.clone();
                        let (s, t) = (s.clone(), t.clone());
                        let detail = format!("{}:{}|{}", ld.name, word_name(d, &s), word_name(d, &t));
                        let inputs = vec![("datum", ld.name.clone()), ("order", order.to_string())];
                        out.push(Check::new("pairing.series", detail, inputs, move || {
                            let rep = pairing_check(l.datum(), &s, &t, order).map_err(|e| e.to_string())?;
                            if rep.holds {
                                Ok(())
                            } else {
                                Err(series_diff(&rep.lhs, &rep.rhs))
                            }
                        }));
                    }
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------- serre-cat

fn serre_cat(ctx: &Ctx) -> Vec<Check> {
    let order = ctx.order(10);
    let mut out = Vec::new();
    for ld in &ctx.data {
        let d = ld.datum();
        for i in 0..d.rank() {
            for j in 0..d.rank() {
                if i == j {
                    continue;
                }
                let key = if d.dot(i, j) == 0 {
                    "serre-cat.orthogonal"
                } else if d.is_real(i) && 1 - d.a(i, j) <= 3 {
                    "serre-cat.serre"
                } else {
                    continue;
                };
                let l = ld.clone();
                let detail = format!("{}:{},{};n=1", ld.name, d.name(i), d.name(j));
                let inputs = vec![("datum", ld.name.clone()), ("order", order.to_string())];
                out.push(Check::new(key, detail, inputs, move || {
                    let mut st = Straightener::new(&l.hecke);
                    let rows = serre_categorified_check(&mut st, i, j, 1, order).map_err(|e| e.to_string())?;
                    match rows.iter().find(|r| !r.holds()) {
                        None => Ok(()),
                        Some(r) => Err(format!(
                            "1_{}: {}",
                            word_name(l.datum(), &r.label),
                            series_diff(&r.even_side, &r.odd_side)
                        )),
                    }
                }));
            }
        }
    }
    out
}

// ---------------------------------------------------------------- mackey

fn mackey(ctx: &Ctx) -> Vec<Check> {
    let max = ctx.height(3);
    let order = ctx.order(12);
    let mut out = Vec::new();
    for ld in &ctx.data {
        let d = ld.datum();
        for (nu, nu2, mu, mu2, iseq, jseq) in mackey_instances(d, max) {
            let detail = format!(
                "{}:{}|{}|{}|{}",
                ld.name,
                nu.display(d),
                nu2.display(d),
                word_name(d, &iseq),
                word_name(d, &jseq)
            );
            let inputs = vec![
                ("datum", ld.name.clone()),
                ("nu", nu.display(d).to_string()),
                ("nu2", nu2.display(d).to_string()),
                ("mu", mu.display(d).to_string()),
                ("mu2", mu2.display(d).to_string()),
                ("order", order.to_string()),
            ];
            let l = ld.clone();
            out.push(Check::new("mackey.dim", detail, inputs, move || {
                let r = mackey_dim_check(l.datum(), &nu, &nu2, &mu, &mu2, &iseq, &jseq, order)
                    .map_err(|e| e.to_string())?;
                if r.holds {
                    Ok(())
                } else {
                    Err(format!("{} λ-terms; {}", r.terms, series_diff(&r.lhs, &r.rhs)))
                }
            }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    #[test]
    fn empty_selection() {
        let cfg = RunConfig::new(data::all()).with_suites(&[]);
        let rep = run(&cfg).unwrap();
        assert!(rep.check.is_empty());
        assert!(rep.all_passed());
    }

    #[test]
    fn ids_unique_and_sorted() {
        let cfg = RunConfig::new(data::all());
        let checks = plan(&cfg);
        let ids: Vec<&str> = checks.iter().map(|c| c.id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
        for c in &checks {
            assert!(crate::explain::explain(&c.id).is_ok(), "{}", c.id);
        }
    }

    #[test]
    fn rep_labels_cover_pairs() {
        let d = data::bundled("even").unwrap();
        let labels = rep_labels(d.datum());
        assert_eq!(labels.len(), 1 + 1 + 2 + 3 + 3);
    }
}
