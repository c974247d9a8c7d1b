//! Exact arithmetic in `Z^π[q, q⁻¹]` (with `π² = 1`) and its fraction field with
//! π-free denominators, plus quantum integers and truncated graded-dimension series.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is a zero divisor (a multiple of 1 + pi or 1 - pi)")]
    ZeroDivisor,
    #[error("binomial out of range: n = {n}, k = {k}")]
    BinomialRange { n: i64, k: i64 },
    #[error("series expansion is not integral at q^{exponent}")]
    NonIntegralSeries { exponent: i64 },
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: i64, right: i64 },
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

/// How the parity variable π is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PiMode {
    Generic,
    Plus,
    Minus,
}

impl PiMode {
    /// `π^parity` under this mode.
    pub fn pi_pow(self, parity: u8) -> Scalar {
        if parity.is_multiple_of(2) {
            return Scalar::one();
        }
        match self {
            PiMode::Generic => Scalar::pi(),
            PiMode::Plus => Scalar::one(),
            PiMode::Minus => -Scalar::one(),
        }
    }
}

/// A π-free Laurent polynomial with integer coefficients, stored densely.
///
/// Invariant: either `coeffs` is empty (zero) or both its first and last entries are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Laurent::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent { low: exp, coeffs: vec![c] }
    }

    pub fn from_dense(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut l = Laurent { low, coeffs };
        l.trim();
        l
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let map: BTreeMap<i64, BigInt> = terms.into_iter().fold(BTreeMap::new(), |mut m, (e, c)| {
            *m.entry(e).or_insert_with(BigInt::zero) += c;
            m
        });
        let (lo, hi) = match (map.keys().next(), map.keys().next_back()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => return Laurent::zero(),
        };
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in map {
            coeffs[(e - lo) as usize] = c;
        }
        Laurent::from_dense(lo, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low_degree(&self) -> i64 {
        self.low
    }

    pub fn high_degree(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn lowest_coeff(&self) -> Option<&BigInt> {
        self.coeffs.first()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Laurent { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// gcd of the coefficients (nonnegative; 0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn div_scalar_exact(&self, c: &BigInt) -> Self {
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in `Z[q, q⁻¹]`.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let dn = d.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < dn {
            return None;
        }
        let qlen = rem.len() - dn + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        let lead = d.coeffs.last().unwrap();
        for k in (0..qlen).rev() {
            let top = &rem[k + dn - 1];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (t, dc) in d.coeffs.iter().enumerate() {
                rem[k + t] -= &qk * dc;
            }
            quot[k] = qk;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Laurent::from_dense(self.low - d.low, quot))
    }

    /// Primitive part normalized to `low = 0` and positive lowest coefficient.
    fn normalized_primitive(&self) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        let mut c = self.content();
        if self.coeffs[0].is_negative() {
            c = -c;
        }
        Laurent { low: 0, coeffs: self.div_scalar_exact(&c).coeffs }
    }

    /// Pseudo-remainder of `a` by `b` treated as ordinary polynomials.
    fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut r = a.to_vec();
        let db = b.len();
        let lb = b.last().unwrap().clone();
        while r.len() >= db {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - db;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (t, bc) in b.iter().enumerate() {
                r[shift + t] -= &lr * bc;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        r
    }

    /// Greatest common divisor in `Z[q, q⁻¹]`, normalized up to units `±q^k`
    /// (result has `low = 0` and positive lowest coefficient). `gcd(0, 0) = 0`.
    pub fn gcd(a: &Laurent, b: &Laurent) -> Laurent {
        if a.is_zero() {
            return b.normalized_primitive_with_content();
        }
        if b.is_zero() {
            return a.normalized_primitive_with_content();
        }
        let cont = a.content().gcd(&b.content());
        let mut x = a.normalized_primitive().coeffs;
        let mut y = b.normalized_primitive().coeffs;
        if x.len() < y.len() {
            core::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = Laurent::prem(&x, &y);
            x = y;
            y = Laurent::from_dense(0, r).normalized_primitive().coeffs;
        }
        let g = Laurent::from_dense(0, x).normalized_primitive();
        g.scale(&cont)
    }

    fn normalized_primitive_with_content(&self) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        let c = self.content();
        self.normalized_primitive().scale(&c)
    }

    /// Evaluate at an integer value of `q` (exact rational).
    pub fn eval(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            acc += BigRational::from_integer(c.clone()) * pow_rational(q, e);
        }
        acc
    }
}

fn pow_rational(q: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { q.recip() } else { q.clone() };
    let mut out = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        out *= &base;
    }
    out
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.low.min(rhs.low);
        let hi = self.high_degree().max(rhs.high_degree());
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in self.terms().chain(rhs.terms()) {
            coeffs[(e - lo) as usize] += c;
        }
        Laurent::from_dense(lo, coeffs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in rhs.coeffs.iter().enumerate() {
                coeffs[a + b] += x * y;
            }
        }
        Laurent::from_dense(self.low + rhs.low, coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned_binop!(Laurent, Add, add);
forward_owned_binop!(Laurent, Sub, sub);
forward_owned_binop!(Laurent, Mul, mul);

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&Scalar::from_laurent(self.clone()), f)
    }
}

/// An element `Σ (a_n + π b_n) q^n` of `Z^π[q, q⁻¹]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    even: Laurent,
    odd: Laurent,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { even: Laurent::zero(), odd: Laurent::zero() }
    }

    pub fn one() -> Self {
        Scalar::from_laurent(Laurent::one())
    }

    pub fn pi() -> Self {
        Scalar { even: Laurent::zero(), odd: Laurent::one() }
    }

    pub fn q_pow(k: i64) -> Self {
        Scalar::from_laurent(Laurent::monomial(BigInt::one(), k))
    }

    pub fn from_int(c: i64) -> Self {
        Scalar::from_laurent(Laurent::monomial(BigInt::from(c), 0))
    }

    /// `c · π^parity · q^exp`.
    pub fn monomial(c: BigInt, parity: u8, exp: i64) -> Self {
        let l = Laurent::monomial(c, exp);
        if parity.is_multiple_of(2) {
            Scalar { even: l, odd: Laurent::zero() }
        } else {
            Scalar { even: Laurent::zero(), odd: l }
        }
    }

    pub fn from_laurent(l: Laurent) -> Self {
        Scalar { even: l, odd: Laurent::zero() }
    }

    pub fn from_parts(even: Laurent, odd: Laurent) -> Self {
        Scalar { even, odd }
    }

    pub fn even_part(&self) -> &Laurent {
        &self.even
    }

    pub fn odd_part(&self) -> &Laurent {
        &self.odd
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.even.is_one() && self.odd.is_zero()
    }

    pub fn is_pi_free(&self) -> bool {
        self.odd.is_zero()
    }

    /// `(exponent, a_n, b_n)` for every exponent where `(a_n, b_n) ≠ (0, 0)`.
    pub fn terms(&self) -> Vec<(i64, BigInt, BigInt)> {
        let mut map: BTreeMap<i64, (BigInt, BigInt)> = BTreeMap::new();
        for (e, c) in self.even.terms() {
            map.entry(e).or_insert_with(|| (BigInt::zero(), BigInt::zero())).0 = c.clone();
        }
        for (e, c) in self.odd.terms() {
            map.entry(e).or_insert_with(|| (BigInt::zero(), BigInt::zero())).1 = c.clone();
        }
        map.into_iter().map(|(e, (a, b))| (e, a, b)).collect()
    }

    pub fn low_degree(&self) -> Option<i64> {
        match (self.even.is_zero(), self.odd.is_zero()) {
            (true, true) => None,
            (false, true) => Some(self.even.low_degree()),
            (true, false) => Some(self.odd.low_degree()),
            (false, false) => Some(self.even.low_degree().min(self.odd.low_degree())),
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        Scalar { even: self.even.shift(k), odd: self.odd.shift(k) }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Scalar { even: self.even.scale(c), odd: self.odd.scale(c) }
    }

    pub fn mul_pi(&self) -> Self {
        Scalar { even: self.odd.clone(), odd: self.even.clone() }
    }

    /// `a − π b` for `self = a + π b`.
    pub fn conj(&self) -> Self {
        Scalar { even: self.even.clone(), odd: -&self.odd }
    }

    /// `self · conj(self) = a² − b²`, which is π-free.
    pub fn norm(&self) -> Laurent {
        &(&self.even * &self.even) - &(&self.odd * &self.odd)
    }

    /// Evaluate `π ↦ sign` (`sign = ±1`).
    pub fn specialize(&self, sign: i8) -> Laurent {
        if sign >= 0 {
            &self.even + &self.odd
        } else {
            &self.even - &self.odd
        }
    }

    /// Apply a [`PiMode`]: generic leaves `self` untouched.
    pub fn with_mode(&self, mode: PiMode) -> Scalar {
        match mode {
            PiMode::Generic => self.clone(),
            PiMode::Plus => Scalar::from_laurent(self.specialize(1)),
            PiMode::Minus => Scalar::from_laurent(self.specialize(-1)),
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse in the fraction field (π-free denominator).
    pub fn invert(&self) -> Result<RationalScalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm();
        if n.is_zero() {
            return Err(ScalarError::ZeroDivisor);
        }
        Ok(RationalScalar::new(self.conj(), n))
    }

    pub fn to_rational(&self) -> RationalScalar {
        RationalScalar::from_scalar(self.clone())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { even: &self.even + &rhs.even, odd: &self.odd + &rhs.odd }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { even: &self.even - &rhs.even, odd: &self.odd - &rhs.odd }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.odd.is_zero() && rhs.odd.is_zero() {
            return Scalar::from_laurent(&self.even * &rhs.even);
        }
        let even = &(&self.even * &rhs.even) + &(&self.odd * &rhs.odd);
        let odd = &(&self.even * &rhs.odd) + &(&self.odd * &rhs.even);
        Scalar { even, odd }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { even: -&self.even, odd: -&self.odd }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

forward_owned_binop!(Scalar, Add, add);
forward_owned_binop!(Scalar, Sub, sub);
forward_owned_binop!(Scalar, Mul, mul);

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

/// Canonical text form: terms in increasing `q`-exponent, the π-free part of each exponent
/// first, each rendered `c*q^n` or `c*pi*q^n`, joined by ` + ` / ` - `; zero is `0`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, a, b) in self.terms() {
            for (c, pi) in [(a, false), (b, true)] {
                if c.is_zero() {
                    continue;
                }
                let neg = c.is_negative();
                let mag = c.abs();
                if first {
                    if neg {
                        f.write_str("-")?;
                    }
                } else {
                    f.write_str(if neg { " - " } else { " + " })?;
                }
                first = false;
                write!(f, "{}*", mag)?;
                if pi {
                    f.write_str("pi*")?;
                }
                write!(f, "q^{}", e)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Accepts the canonical form and relaxed variants (`q`, `pi`, `3`, `-q^-2`, `2*pi`, ...).
impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse(String::from(s));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut acc = Scalar::zero();
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut i = 0;
        let mut pieces: Vec<&str> = Vec::new();
        while i < bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && i > start && bytes[i - 1] != b'^' {
                pieces.push(&compact[start..i]);
                start = i;
            }
            i += 1;
        }
        pieces.push(&compact[start..]);
        for piece in pieces {
            let (neg, body) = match piece.as_bytes().first() {
                Some(b'-') => (true, &piece[1..]),
                Some(b'+') => (false, &piece[1..]),
                _ => (false, piece),
            };
            if body.is_empty() {
                return Err(err());
            }
            let mut coeff = BigInt::one();
            let mut parity = 0u8;
            let mut exp = 0i64;
            let mut seen_num = false;
            for factor in body.split('*') {
                if factor == "pi" {
                    parity ^= 1;
                } else if factor == "q" {
                    exp += 1;
                } else if let Some(e) = factor.strip_prefix("q^") {
                    exp += e.parse::<i64>().map_err(|_| err())?;
                } else if !seen_num && !factor.is_empty() && factor.bytes().all(|b| b.is_ascii_digit()) {
                    coeff = factor.parse::<BigInt>().map_err(|_| err())?;
                    seen_num = true;
                } else {
                    return Err(err());
                }
            }
            if neg {
                coeff = -coeff;
            }
            acc = &acc + &Scalar::monomial(coeff, parity, exp);
        }
        Ok(acc)
    }
}

/// An element of the fraction field `Q(q)^π`, kept as `numerator / denominator` with a
/// π-free denominator normalized to `low = 0` and positive lowest coefficient.
#[derive(Clone, Debug)]
pub struct RationalScalar {
    num: Scalar,
    den: Laurent,
}

impl RationalScalar {
    /// Panics if `den` is zero.
    pub fn new(num: Scalar, den: Laurent) -> Self {
        assert!(!den.is_zero(), "RationalScalar with zero denominator");
        let mut r = RationalScalar { num, den };
        r.reduce();
        r
    }

    pub fn from_scalar(num: Scalar) -> Self {
        RationalScalar { num, den: Laurent::one() }
    }

    pub fn zero() -> Self {
        RationalScalar::from_scalar(Scalar::zero())
    }

    pub fn one() -> Self {
        RationalScalar::from_scalar(Scalar::one())
    }

    pub fn from_int(c: i64) -> Self {
        RationalScalar::from_scalar(Scalar::from_int(c))
    }

    pub fn numerator(&self) -> &Scalar {
        &self.num
    }

    pub fn denominator(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The numerator when the denominator is 1.
    pub fn as_scalar(&self) -> Option<&Scalar> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Laurent::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let g = Laurent::gcd(&Laurent::gcd(&self.num.even, &self.num.odd), &self.den);
        if !g.is_one() {
            self.num = Scalar {
                even: self.num.even.div_exact(&g).expect("gcd divides even part"),
                odd: self.num.odd.div_exact(&g).expect("gcd divides odd part"),
            };
            self.den = self.den.div_exact(&g).expect("gcd divides denominator");
        }
        let s = self.den.low_degree();
        if s != 0 {
            self.den = self.den.shift(-s);
            self.num = self.num.shift(-s);
        }
        if self.den.lowest_coeff().is_some_and(|c| c.is_negative()) {
            self.den = -&self.den;
            self.num = -&self.num;
        }
    }

    pub fn inv(&self) -> Result<RationalScalar, ScalarError> {
        let n = self.num.invert()?;
        Ok(RationalScalar::new(&n.num * &Scalar::from_laurent(self.den.clone()), n.den))
    }

    pub fn div(&self, rhs: &RationalScalar) -> Result<RationalScalar, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn specialize(&self, sign: i8) -> RationalScalar {
        RationalScalar::new(Scalar::from_laurent(self.num.specialize(sign)), self.den.clone())
    }

    pub fn with_mode(&self, mode: PiMode) -> RationalScalar {
        match mode {
            PiMode::Generic => self.clone(),
            PiMode::Plus => self.specialize(1),
            PiMode::Minus => self.specialize(-1),
        }
    }

    pub fn mul_scalar(&self, s: &Scalar) -> RationalScalar {
        RationalScalar::new(&self.num * s, self.den.clone())
    }

    /// Truncated power series expansion to exponent `order` (inclusive).
    pub fn series(&self, order: i64) -> Result<DimSeries, ScalarError> {
        series_expand(self, order)
    }
}

impl PartialEq for RationalScalar {
    fn eq(&self, other: &Self) -> bool {
        let l = &self.num * &Scalar::from_laurent(other.den.clone());
        let r = &other.num * &Scalar::from_laurent(self.den.clone());
        l == r
    }
}

impl Eq for RationalScalar {}

impl Add for &RationalScalar {
    type Output = RationalScalar;
    fn add(self, rhs: &RationalScalar) -> RationalScalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RationalScalar::new(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &Scalar::from_laurent(rhs.den.clone()))
            + &(&rhs.num * &Scalar::from_laurent(self.den.clone()));
        RationalScalar::new(num, &self.den * &rhs.den)
    }
}

impl Sub for &RationalScalar {
    type Output = RationalScalar;
    fn sub(self, rhs: &RationalScalar) -> RationalScalar {
        self + &(-rhs)
    }
}

impl Mul for &RationalScalar {
    type Output = RationalScalar;
    fn mul(self, rhs: &RationalScalar) -> RationalScalar {
        if self.is_zero() || rhs.is_zero() {
            return RationalScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalScalar::from_scalar(&self.num * &rhs.num);
        }
        RationalScalar::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalScalar {
    type Output = RationalScalar;
    fn neg(self) -> RationalScalar {
        RationalScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalScalar {
    type Output = RationalScalar;
    fn neg(self) -> RationalScalar {
        -&self
    }
}

forward_owned_binop!(RationalScalar, Add, add);
forward_owned_binop!(RationalScalar, Sub, sub);
forward_owned_binop!(RationalScalar, Mul, mul);

impl From<Scalar> for RationalScalar {
    fn from(s: Scalar) -> Self {
        RationalScalar::from_scalar(s)
    }
}

impl fmt::Display for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// A truncated `(q, π)`-graded dimension series `Σ_{n ≤ order} (a_n + π b_n) q^n`.
///
/// `low` is a lower bound for the exponents that can occur; products use it to decide how
/// far their coefficients remain exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimSeries {
    order: i64,
    low: i64,
    coeffs: BTreeMap<i64, (BigInt, BigInt)>,
}

impl DimSeries {
    pub fn zero(order: i64) -> Self {
        DimSeries { order, low: order + 1, coeffs: BTreeMap::new() }
    }

    pub fn one(order: i64) -> Self {
        DimSeries::from_scalar(&Scalar::one(), order)
    }

    /// Truncation of a Laurent polynomial.
    pub fn from_scalar(s: &Scalar, order: i64) -> Self {
        let mut out = DimSeries::zero(order);
        out.low = s.low_degree().unwrap_or(order + 1).min(order + 1);
        for (e, a, b) in s.terms() {
            if e <= order {
                out.coeffs.insert(e, (a, b));
            }
        }
        out
    }

    /// `1 / (1 − π^parity q^step)` for `step > 0`.
    pub fn geometric(parity: u8, step: i64, order: i64) -> Self {
        assert!(step > 0);
        let mut out = DimSeries::zero(order);
        out.low = 0;
        let mut k = 0i64;
        while k * step <= order {
            let odd = (parity as i64 * k) % 2 == 1;
            let entry = if odd { (BigInt::zero(), BigInt::one()) } else { (BigInt::one(), BigInt::zero()) };
            out.coeffs.insert(k * step, entry);
            k += 1;
        }
        out
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn low_bound(&self) -> i64 {
        self.low
    }

    pub fn coeff(&self, exp: i64) -> (BigInt, BigInt) {
        self.coeffs.get(&exp).cloned().unwrap_or_else(|| (BigInt::zero(), BigInt::zero()))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &BigInt, &BigInt)> + '_ {
        self.coeffs.iter().map(|(e, (a, b))| (*e, a, b))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Set coefficient (zero pairs are dropped); ignored above the order.
    pub fn set(&mut self, exp: i64, a: BigInt, b: BigInt) {
        if exp > self.order {
            return;
        }
        if a.is_zero() && b.is_zero() {
            self.coeffs.remove(&exp);
        } else {
            self.coeffs.insert(exp, (a, b));
            self.low = self.low.min(exp);
        }
    }

    pub fn add_at(&mut self, exp: i64, a: &BigInt, b: &BigInt) {
        let (x, y) = self.coeff(exp);
        self.set(exp, x + a, y + b);
    }

    pub fn truncate(&self, order: i64) -> Self {
        let mut out = self.clone();
        out.order = order.min(self.order);
        out.coeffs.retain(|e, _| *e <= out.order);
        out
    }

    /// Coefficient equality; series of different orders are not comparable.
    pub fn same_as(&self, other: &DimSeries) -> Result<bool, ScalarError> {
        if self.order != other.order {
            return Err(ScalarError::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(self.coeffs == other.coeffs)
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        DimSeries {
            order: self.order + k,
            low: self.low + k,
            coeffs: self.coeffs.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    pub fn mul_pi(&self) -> Self {
        DimSeries {
            order: self.order,
            low: self.low,
            coeffs: self.coeffs.iter().map(|(e, (a, b))| (*e, (b.clone(), a.clone()))).collect(),
        }
    }

    pub fn pi_pow(&self, parity: u8) -> Self {
        if parity % 2 == 1 {
            self.mul_pi()
        } else {
            self.clone()
        }
    }

    pub fn add(&self, rhs: &DimSeries) -> DimSeries {
        let order = self.order.min(rhs.order);
        let mut out = self.truncate(order);
        out.low = self.low.min(rhs.low);
        for (e, (a, b)) in &rhs.coeffs {
            if *e <= order {
                out.add_at(*e, a, b);
            }
        }
        out
    }

    pub fn neg(&self) -> DimSeries {
        DimSeries {
            order: self.order,
            low: self.low,
            coeffs: self.coeffs.iter().map(|(e, (a, b))| (*e, (-a, -b))).collect(),
        }
    }

    pub fn sub(&self, rhs: &DimSeries) -> DimSeries {
        self.add(&rhs.neg())
    }

    /// Product; the result keeps only coefficients determined by both factors, and never
    /// exceeds the smaller of the two orders.
    pub fn mul(&self, rhs: &DimSeries) -> DimSeries {
        let order = self.order.min(rhs.order).min(self.order + rhs.low).min(rhs.order + self.low);
        let mut out = DimSeries::zero(order);
        out.low = self.low + rhs.low;
        for (e1, (a1, b1)) in &self.coeffs {
            for (e2, (a2, b2)) in &rhs.coeffs {
                let e = e1 + e2;
                if e > order {
                    continue;
                }
                let a = a1 * a2 + b1 * b2;
                let b = a1 * b2 + b1 * a2;
                out.add_at(e, &a, &b);
            }
        }
        out
    }

    /// Multiply by a Laurent polynomial; the order shifts by its lowest exponent at most.
    pub fn scale_scalar(&self, s: &Scalar) -> DimSeries {
        let mut out = DimSeries::zero(self.order + s.low_degree().unwrap_or(0).min(0));
        out.low = self.low + s.low_degree().unwrap_or(0);
        for (e2, a2, b2) in s.terms() {
            for (e1, (a1, b1)) in &self.coeffs {
                let a = a1 * &a2 + b1 * &b2;
                let b = a1 * &b2 + b1 * &a2;
                out.add_at(e1 + e2, &a, &b);
            }
        }
        out
    }
}

impl fmt::Display for DimSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = Scalar::zero();
        for (e, (a, b)) in &self.coeffs {
            s = &s + &Scalar::from_parts(Laurent::monomial(a.clone(), *e), Laurent::monomial(b.clone(), *e));
        }
        write!(f, "{} + O(q^{})", s, self.order + 1)
    }
}

/// Expand `x` as a power series in `q`, exact through exponent `order`.
pub fn series_expand(x: &RationalScalar, order: i64) -> Result<DimSeries, ScalarError> {
    let den = &x.den;
    let num = &x.num;
    if num.is_zero() {
        let mut z = DimSeries::zero(order);
        z.low = order + 1;
        return Ok(z);
    }
    // Denominator is normalized with low degree 0, so its constant term is nonzero.
    let d0 = den.coeff(0);
    let num_low = num.low_degree().unwrap();
    let need = order - num_low;
    if need < 0 {
        let mut z = DimSeries::zero(order);
        z.low = num_low;
        return Ok(z);
    }
    // inverse[k] = coefficient of q^k in 1/den, computed over Q.
    let d0r = BigRational::from_integer(d0.clone());
    let mut inverse: Vec<BigRational> = Vec::with_capacity(need as usize + 1);
    for k in 0..=need {
        let mut acc = if k == 0 { BigRational::one() } else { BigRational::zero() };
        for t in 1..=k {
            let dt = den.coeff(t);
            if dt.is_zero() {
                continue;
            }
            acc -= BigRational::from_integer(dt) * &inverse[(k - t) as usize];
        }
        inverse.push(acc / &d0r);
    }
    let mut staged: BTreeMap<i64, (BigRational, BigRational)> = BTreeMap::new();
    for (e, a, b) in num.terms() {
        let ar = BigRational::from_integer(a);
        let br = BigRational::from_integer(b);
        for (k, inv) in inverse.iter().enumerate() {
            let exp = e + k as i64;
            if exp > order {
                break;
            }
            if inv.is_zero() {
                continue;
            }
            let slot = staged.entry(exp).or_insert_with(|| (BigRational::zero(), BigRational::zero()));
            slot.0 += &ar * inv;
            slot.1 += &br * inv;
        }
    }
    let mut out = DimSeries::zero(order);
    out.low = num_low;
    for (exp, (a, b)) in staged {
        if !a.is_integer() || !b.is_integer() {
            return Err(ScalarError::NonIntegralSeries { exponent: exp });
        }
        out.set(exp, a.to_integer(), b.to_integer());
    }
    out.low = num_low;
    Ok(out)
}

/// `[n]^π` for symmetrizer `r` and parity `p`:
/// `((π^p q^r)^n − q^{−rn}) / (π^p q^r − q^{−r}) = Σ_{k<n} π^{p(n−1−k)} q^{r(n−1−2k)}`.
pub fn quantum_int(n: u32, r: u32, p: u8) -> Scalar {
    let mut acc = Scalar::zero();
    let n = n as i64;
    let r = r as i64;
    for k in 0..n {
        let parity = ((p as i64) * (n - 1 - k)).rem_euclid(2) as u8;
        acc = &acc + &Scalar::monomial(BigInt::one(), parity, r * (n - 1 - 2 * k));
    }
    acc
}

pub fn quantum_factorial(n: u32, r: u32, p: u8) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, k| &acc * &quantum_int(k, r, p))
}

/// `[n]! / ([k]! [n−k]!)`, computed by exact division in the fraction field.
pub fn quantum_binom(n: i64, k: i64, r: u32, p: u8) -> Result<Scalar, ScalarError> {
    if k < 0 || n < 0 || k > n {
        return Err(ScalarError::BinomialRange { n, k });
    }
    let top = quantum_factorial(n as u32, r, p);
    let bottom = &quantum_factorial(k as u32, r, p) * &quantum_factorial((n - k) as u32, r, p);
    let ratio = &top.to_rational() * &bottom.invert()?;
    match ratio.as_scalar() {
        Some(s) => Ok(s.clone()),
        None => unreachable!("quantum binomials are Laurent polynomials"),
    }
}

/// `p(a; i, j; n) = a n p(i) p(j) + a(a−1)/2 p(i)` reduced mod 2.
pub fn parity_exponent(a: u32, pi: u8, pj: u8, n: u32) -> u8 {
    let a = a as u64;
    let t1 = a * n as u64 * (pi as u64) * (pj as u64);
    let t2 = a * a.saturating_sub(1) / 2 * pi as u64;
    ((t1 + t2) % 2) as u8
}

/// Compare two Laurent polynomials by their coefficient lists (used for sorting keys).
pub fn cmp_laurent(a: &Laurent, b: &Laurent) -> Ordering {
    a.low.cmp(&b.low).then_with(|| a.coeffs.cmp(&b.coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    // Independent oracle: [n] as the quotient ((π^p q^r)^n − q^{−rn}) / (π^p q^r − q^{−r}).
    fn quantum_int_by_division(n: u32, r: u32, p: u8) -> Scalar {
        let a = Scalar::monomial(BigInt::one(), p, r as i64);
        let b = Scalar::q_pow(-(r as i64));
        let num = &a.pow(n) - &b.pow(n);
        let den = &a - &b;
        let quo = &num.to_rational() * &den.invert().unwrap();
        quo.as_scalar().cloned().expect("integral quotient")
    }

    #[test]
    fn quantum_int_examples() {
        assert_eq!(quantum_int(3, 1, 0), s("q^-2 + 1 + q^2"));
        assert_eq!(quantum_int(3, 1, 1), s("q^-2 + pi + q^2"));
        assert_eq!(quantum_int(2, 2, 1), s("q^-2 + pi*q^2"));
        assert_eq!(quantum_int(0, 1, 1), Scalar::zero());
    }

    #[test]
    fn quantum_int_matches_ratio() {
        for n in 0..=8 {
            for r in 1..=3 {
                for p in 0..=1 {
                    assert_eq!(quantum_int(n, r, p), quantum_int_by_division(n, r, p), "n={n} r={r} p={p}");
                }
            }
        }
    }

    #[test]
    fn binom_examples() {
        assert_eq!(quantum_binom(3, 1, 1, 1).unwrap(), s("q^-2 + pi + q^2"));
        assert_eq!(quantum_binom(4, 2, 1, 0).unwrap(), s("q^-4 + q^-2 + 2 + q^2 + q^4"));
        assert!(quantum_binom(2, 3, 1, 0).is_err());
    }

    #[test]
    fn binom_recursion() {
        // [n+1, k] = (π^p q^r)^k [n, k] + q^{−r(n+1−k)} [n, k−1]
        for n in 1..8i64 {
            for k in 1..=n {
                for r in 1..=2u32 {
                    for p in 0..=1u8 {
                        let lhs = quantum_binom(n + 1, k, r, p).unwrap();
                        let a = Scalar::monomial(BigInt::one(), (p as i64 * k % 2) as u8, r as i64 * k);
                        let rhs = &(&a * &quantum_binom(n, k, r, p).unwrap())
                            + &(&Scalar::q_pow(-(r as i64) * (n + 1 - k)) * &quantum_binom(n, k - 1, r, p).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn minus_binom_recursion() {
        // [n+1, k]^- = q^{-rk} [n, k]^- + (−1)^{(n−k+1)p} q^{r(n−k+1)} [n, k−1]^-
        for n in 0..8i64 {
            for k in 0..=n + 1 {
                for r in 1..=2u32 {
                    for p in 0..=1u8 {
                        let b = |n: i64, k: i64| {
                            if k < 0 || k > n {
                                Laurent::zero()
                            } else {
                                quantum_binom(n, k, r, p).unwrap().specialize(-1)
                            }
                        };
                        let sign = if ((n - k + 1) * p as i64) % 2 == 1 { -1 } else { 1 };
                        let rhs = &b(n, k).shift(-(r as i64) * k)
                            + &b(n, k - 1).shift(r as i64 * (n - k + 1)).scale(&BigInt::from(sign));
                        assert_eq!(b(n + 1, k), rhs, "n={n} k={k} r={r} p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn even_factorial_is_pi_free() {
        for n in 0..=8 {
            assert!(quantum_factorial(n, 1, 0).is_pi_free());
            assert_eq!(
                quantum_binom(n as i64, (n / 2) as i64, 1, 1).unwrap().specialize(1),
                quantum_binom(n as i64, (n / 2) as i64, 1, 0).unwrap().specialize(1)
            );
        }
    }

    #[test]
    fn invert_and_series() {
        let x = s("1 - pi*q^2");
        let inv = x.invert().unwrap();
        assert_eq!(
            inv,
            RationalScalar::new(s("1 + pi*q^2"), Laurent::from_terms([(0, BigInt::one()), (4, BigInt::from(-1))]))
        );
        let ser = inv.series(6).unwrap();
        assert_eq!(ser, DimSeries::geometric(1, 2, 6));
        assert_eq!(ser.to_string(), "1*q^0 + 1*pi*q^2 + 1*q^4 + 1*pi*q^6 + O(q^7)");
        assert_eq!(s("1 + pi").invert(), Err(ScalarError::ZeroDivisor));
        assert_eq!(Scalar::zero().invert(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn series_integrality_error() {
        let x = RationalScalar::new(Scalar::one(), Laurent::from_terms([(0, BigInt::from(2))]));
        assert_eq!(x.series(3), Err(ScalarError::NonIntegralSeries { exponent: 0 }));
    }

    #[test]
    fn series_mismatched_orders() {
        let a = DimSeries::one(4);
        let b = DimSeries::one(5);
        assert!(a.same_as(&b).is_err());
    }

    #[test]
    fn parity_exponent_table() {
        assert_eq!(parity_exponent(2, 1, 0, 1), 1);
        assert_eq!(parity_exponent(3, 1, 1, 1), 0);
        assert_eq!(parity_exponent(1, 1, 1, 1), 1);
        assert_eq!(parity_exponent(2, 0, 1, 3), 0);
    }

    #[test]
    fn text_format() {
        assert_eq!(s("q^-1 + pi*q").to_string(), "1*q^-1 + 1*pi*q^1");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(s("-2*pi*q^3 + 5").to_string(), "5*q^0 - 2*pi*q^3");
        assert!("q^".parse::<Scalar>().is_err());
        assert!("3x".parse::<Scalar>().is_err());
    }

    #[test]
    fn gcd_basic() {
        let a = Laurent::from_terms([(0, BigInt::from(1)), (2, BigInt::from(-1))]);
        let b = Laurent::from_terms([(0, BigInt::from(1)), (1, BigInt::from(1))]);
        let g = Laurent::gcd(&(&a * &b.shift(3)), &(&b * &b));
        assert_eq!(g, &b * &b);
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        proptest::collection::vec((-4i64..=4, -3i64..=3, -3i64..=3), 0..5).prop_map(|terms| {
            terms.into_iter().fold(Scalar::zero(), |acc, (e, a, b)| {
                &acc + &Scalar::from_parts(Laurent::monomial(BigInt::from(a), e), Laurent::monomial(BigInt::from(b), e))
            })
        })
    }

    proptest! {
        #[test]
        fn text_roundtrip(x in arb_scalar()) {
            prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
        }

        #[test]
        fn ring_laws(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b).specialize(-1), &a.specialize(-1) * &b.specialize(-1));
        }

        #[test]
        fn inverse_roundtrip(a in arb_scalar(), b in arb_scalar()) {
            if let Ok(inv) = a.invert() {
                prop_assert!((&inv * &a.to_rational()).is_one());
                let x = &b.to_rational() * &inv;
                prop_assert_eq!(&x * &a.to_rational(), b.to_rational());
            }
        }

        #[test]
        fn series_of_product(a in arb_scalar(), b in arb_scalar()) {
            let order = 12;
            let sa = DimSeries::from_scalar(&a, order);
            let sb = DimSeries::from_scalar(&b, order);
            let prod = sa.mul(&sb);
            let direct = DimSeries::from_scalar(&(&a * &b), prod.order());
            prop_assert_eq!(prod.same_as(&direct), Ok(true));
        }
    }
}
