//! Exact arithmetic in the Laurent ring ℚ[q, q⁻¹, π, π⁻¹] and its fraction field.
//!
//! Every matrix entry that appears in the generator catalog is a finite sum of
//! terms `c · q^j · π^k` with rational `c` and integer `j`, `k`. π is kept as a
//! formal symbol; it only becomes a float inside [`RingElem::eval`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent pair of a monomial `q^q · π^pi`. Ordered lexicographically by `(q, pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub q: i64,
    pub pi: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q: 0, pi: 0 };

    pub fn new(q: i64, pi: i64) -> Self {
        Monomial { q, pi }
    }

    fn mul(self, other: Monomial) -> Monomial {
        Monomial {
            q: self.q.checked_add(other.q).expect("q exponent overflow"),
            pi: self.pi.checked_add(other.pi).expect("pi exponent overflow"),
        }
    }

    fn inv(self) -> Monomial {
        Monomial { q: -self.q, pi: -self.pi }
    }
}

/// Element of ℚ[q, q⁻¹, π, π⁻¹] in canonical form: no zero coefficients and one
/// term per monomial. The zero element has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RingElem {
    terms: BTreeMap<Monomial, BigRational>,
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem::default()
    }

    pub fn one() -> Self {
        RingElem::monomial(BigRational::one(), 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        RingElem::monomial(BigRational::from_integer(n.into()), 0, 0)
    }

    /// `num/den · q^q · π^pi`. Panics if `den == 0`.
    pub fn term(num: i64, den: i64, q: i64, pi: i64) -> Self {
        assert!(den != 0, "zero denominator");
        RingElem::monomial(BigRational::new(num.into(), den.into()), q, pi)
    }

    pub fn monomial(coef: BigRational, q: i64, pi: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(Monomial::new(q, pi), coef);
        }
        RingElem { terms }
    }

    /// `q^k`
    pub fn q_pow(k: i64) -> Self {
        RingElem::term(1, 1, k, 0)
    }

    /// `π^k`
    pub fn pi_pow(k: i64) -> Self {
        RingElem::term(1, 1, 0, k)
    }

    /// Builds an element from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BigRational, Monomial)>,
    {
        let mut out = RingElem::zero();
        for (c, m) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_monomial()
            .map(|(c, m)| m == Monomial::ONE && c.is_one())
            .unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// The single term of a one-term element.
    pub fn as_monomial(&self) -> Option<(&BigRational, Monomial)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((c, *m))
        } else {
            None
        }
    }

    /// Multiplicative inverse of a nonzero one-term element.
    pub fn inverse_monomial(&self) -> Option<RingElem> {
        let (c, m) = self.as_monomial()?;
        let inv = m.inv();
        Some(RingElem::monomial(c.recip(), inv.q, inv.pi))
    }

    pub fn scale(&self, c: &BigRational) -> RingElem {
        if c.is_zero() {
            return RingElem::zero();
        }
        RingElem {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    fn leading(&self) -> Option<(Monomial, &BigRational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    /// (min q, max q, min π, max π) exponents over all terms.
    fn exponent_box(&self) -> Option<(i64, i64, i64, i64)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        Some(it.fold((first.q, first.q, first.pi, first.pi), |(ql, qh, pl, ph), m| {
            (ql.min(m.q), qh.max(m.q), pl.min(m.pi), ph.max(m.pi))
        }))
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    ///
    /// Long division on lex-leading terms. Extreme exponents in each variable
    /// add under multiplication, so every quotient term lies in a known finite
    /// box; leaving it proves the division inexact.
    pub fn div_exact(&self, divisor: &RingElem) -> Option<RingElem> {
        let (dlead, dcoef) = divisor.leading()?;
        if self.is_zero() {
            return Some(RingElem::zero());
        }
        if let Some(inv) = divisor.inverse_monomial() {
            return Some(self * &inv);
        }
        let (nql, nqh, npl, nph) = self.exponent_box()?;
        let (dql, dqh, dpl, dph) = divisor.exponent_box()?;
        let (ql, qh, pl, ph) = (nql - dql, nqh - dqh, npl - dpl, nph - dph);
        if ql > qh || pl > ph {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = RingElem::zero();
        loop {
            let Some((rlead, rcoef)) = rem.leading() else {
                return Some(quot);
            };
            let m = rlead.mul(dlead.inv());
            if m.q < ql || m.q > qh || m.pi < pl || m.pi > ph {
                return None;
            }
            let t = RingElem::monomial(rcoef / dcoef, m.q, m.pi);
            rem = &rem - &(&t * divisor);
            quot += &t;
        }
    }

    /// Numeric value at Fourier variable `q`, with π replaced by the machine constant.
    pub fn eval(&self, q: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                c * powi(q, m.q) * powi(std::f64::consts::PI, m.pi)
            })
            .sum()
    }
}

fn powi(x: f64, k: i64) -> f64 {
    match i32::try_from(k) {
        Ok(k) => x.powi(k),
        Err(_) => x.powf(k as f64),
    }
}

impl From<i64> for RingElem {
    fn from(n: i64) -> Self {
        RingElem::from_int(n)
    }
}

impl From<BigRational> for RingElem {
    fn from(c: BigRational) -> Self {
        RingElem::monomial(c, 0, 0)
    }
}

impl<'a> Add<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&RingElem> for RingElem {
    fn add_assign(&mut self, rhs: &RingElem) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&RingElem> for RingElem {
    fn sub_assign(&mut self, rhs: &RingElem) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl<'a> Sub<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        let mut out = RingElem::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(*mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<RingElem> for RingElem {
            type Output = RingElem;
            fn $f(self, rhs: RingElem) -> RingElem {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a RingElem> for RingElem {
            type Output = RingElem;
            fn $f(self, rhs: &RingElem) -> RingElem {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<RingElem> for &'a RingElem {
            type Output = RingElem;
            fn $f(self, rhs: RingElem) -> RingElem {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElem({self})")
    }
}

/// ASCII rendering, e.g. `-q^4/(8*pi)` or `1/2 + 1/(128*pi^2)`.
impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            write!(f, "{}", format_term(&c.abs(), *m))?;
        }
        Ok(())
    }
}

fn power(sym: &str, k: i64) -> String {
    if k == 1 {
        sym.to_string()
    } else {
        format!("{sym}^{k}")
    }
}

fn format_term(c: &BigRational, m: Monomial) -> String {
    let mut num = Vec::new();
    let mut den = Vec::new();
    if !c.numer().is_one() {
        num.push(c.numer().to_string());
    }
    if !c.denom().is_one() {
        den.push(c.denom().to_string());
    }
    match m.q.signum() {
        1 => num.push(power("q", m.q)),
        -1 => den.push(power("q", -m.q)),
        _ => {}
    }
    match m.pi.signum() {
        1 => num.push(power("pi", m.pi)),
        -1 => den.push(power("pi", -m.pi)),
        _ => {}
    }
    let top = if num.is_empty() { "1".to_string() } else { num.join("*") };
    match den.len() {
        0 => top,
        1 => format!("{top}/{}", den[0]),
        _ => format!("{top}/({})", den.join("*")),
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    num: String,
    den: String,
    q: i64,
    pi: i64,
}

#[derive(Serialize, Deserialize)]
struct RingElemRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for RingElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RingElemRepr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr {
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                    q: m.q,
                    pi: m.pi,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = RingElemRepr::deserialize(d)?;
        let mut out = RingElem::zero();
        for t in repr.terms {
            let num: BigInt = t.num.parse().map_err(D::Error::custom)?;
            let den: BigInt = t.den.parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            out.add_term(Monomial::new(t.q, t.pi), BigRational::new(num, den));
        }
        Ok(out)
    }
}

/// Element of the fraction field of [`RingElem`]. Equality is cross-multiplication.
///
/// Values are kept reduced when the denominator divides the numerator exactly;
/// in particular a one-term denominator is always absorbed into the numerator.
#[derive(Clone)]
pub struct FieldElem {
    num: RingElem,
    den: RingElem,
}

impl FieldElem {
    pub fn new(num: RingElem, den: RingElem) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(FieldElem::normalized(num, den))
    }

    pub fn zero() -> Self {
        FieldElem { num: RingElem::zero(), den: RingElem::one() }
    }

    pub fn one() -> Self {
        FieldElem { num: RingElem::one(), den: RingElem::one() }
    }

    fn normalized(num: RingElem, den: RingElem) -> Self {
        if num.is_zero() {
            return FieldElem::zero();
        }
        if den.is_one() {
            return FieldElem { num, den };
        }
        match num.div_exact(&den) {
            Some(quot) => FieldElem { num: quot, den: RingElem::one() },
            None => FieldElem { num, den },
        }
    }

    pub fn numer(&self) -> &RingElem {
        &self.num
    }

    pub fn denom(&self) -> &RingElem {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn invert(&self) -> Result<FieldElem> {
        if self.num.is_zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(FieldElem::normalized(self.den.clone(), self.num.clone()))
    }

    /// The value as a ring element, if the denominator divides out.
    pub fn to_ring(&self) -> Option<RingElem> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            self.num.div_exact(&self.den)
        }
    }

    pub fn eval(&self, q: f64) -> f64 {
        self.num.eval(q) / self.den.eval(q)
    }
}

impl From<RingElem> for FieldElem {
    fn from(num: RingElem) -> Self {
        FieldElem { num, den: RingElem::one() }
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for FieldElem {}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        if self.den == rhs.den {
            return FieldElem::normalized(&self.num + &rhs.num, self.den.clone());
        }
        FieldElem::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = Result<FieldElem>;
    fn div(self, rhs: &FieldElem) -> Result<FieldElem> {
        Ok(self * &rhs.invert()?)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({self})")
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn t(n: i64, d: i64, q: i64, pi: i64) -> RingElem {
        RingElem::term(n, d, q, pi)
    }

    #[test]
    fn like_terms_merge() {
        let q2 = RingElem::q_pow(2);
        assert_eq!(&q2 + &q2, t(2, 1, 2, 0));
    }

    #[test]
    fn opposite_terms_cancel_to_empty() {
        let a = t(1, 8, 4, -1);
        let b = t(-1, 8, 4, -1);
        let sum = &a + &b;
        assert!(sum.is_zero());
        assert_eq!(sum.len(), 0);
    }

    #[test]
    fn distinct_monomials_stay_separate() {
        let sum = &RingElem::q_pow(2) + &RingElem::pi_pow(-1);
        assert_eq!(sum.len(), 2);
        let again = RingElem::from_terms(sum.terms().map(|(m, c)| (c.clone(), *m)));
        assert_eq!(again, sum);
    }

    #[test]
    fn exponents_add_under_multiplication() {
        assert_eq!(&RingElem::q_pow(2) * &RingElem::q_pow(4), RingElem::q_pow(6));
        let a = t(-1, 8, 4, -1);
        let b = t(-8, 1, -4, 1);
        assert!((&a * &b).is_one());
        assert!((&a * &RingElem::zero()).is_zero());
    }

    #[test]
    fn eval_examples() {
        let v = t(1, 64, 4, -2).eval(2.0);
        assert!((v - 16.0 / (64.0 * PI * PI)).abs() < 1e-15);
        assert!((v - 0.025330295910584444).abs() < 1e-12);
        assert_eq!(RingElem::zero().eval(3.7), 0.0);
        assert_eq!(RingElem::q_pow(2).eval(1.5), 2.25);
    }

    #[test]
    fn field_examples() {
        let q2 = FieldElem::from(RingElem::q_pow(2));
        let inv = FieldElem::new(RingElem::one(), RingElem::q_pow(2)).unwrap();
        assert_eq!(&q2 * &inv, FieldElem::one());
        assert!(matches!(FieldElem::zero().invert(), Err(Error::ZeroDivision)));

        let a = FieldElem::from(t(1, 8, 4, -1));
        let b = FieldElem::from(t(1, 4, 2, -1));
        let quot = (&a / &b).unwrap();
        assert_eq!(quot, FieldElem::from(t(1, 2, 2, 0)));
        assert_eq!(quot.to_ring(), Some(t(1, 2, 2, 0)));
    }

    #[test]
    fn inexact_division_is_detected() {
        let a = RingElem::term(3, 1, 2, 0) + RingElem::term(-1, 1, 0, -1);
        let b = RingElem::term(1, 1, 1, 0) + RingElem::term(2, 1, 0, 1);
        assert_eq!(a.div_exact(&b), None);
        assert_eq!(b.div_exact(&a), None);
        let c = RingElem::term(5, 7, -3, 2) + RingElem::term(1, 1, 4, -2);
        assert_eq!((&a * &c).div_exact(&b), None);
        assert_eq!((&(&a * &b) * &c).div_exact(&(&b * &c)), Some(a));
    }

    #[test]
    fn polynomial_denominators_compare_by_cross_multiplication() {
        // (q^2 - 1)/(q - 1) = q + 1
        let num = &RingElem::q_pow(2) - &RingElem::one();
        let den = &RingElem::q_pow(1) - &RingElem::one();
        let x = FieldElem::new(num, den).unwrap();
        assert_eq!(x.to_ring(), Some(&RingElem::q_pow(1) + &RingElem::one()));

        // 1/(q + pi) has no ring representative
        let y = FieldElem::new(RingElem::one(), &RingElem::q_pow(1) + &RingElem::pi_pow(1)).unwrap();
        assert_eq!(y.to_ring(), None);
        let y2 = FieldElem::new(
            RingElem::from_int(2),
            &RingElem::term(2, 1, 1, 0) + &RingElem::term(2, 1, 0, 1),
        )
        .unwrap();
        assert_eq!(y, y2);
        assert_eq!(&y - &y2, FieldElem::zero());
    }

    #[test]
    fn div_exact_rejects_remainders() {
        let q1 = RingElem::q_pow(1);
        let num = &(&q1 * &q1) + &RingElem::one();
        let den = &q1 + &RingElem::one();
        assert_eq!(num.div_exact(&den), None);
        assert_eq!(num.div_exact(&RingElem::zero()), None);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(t(-1, 8, 4, -1).to_string(), "-q^4/(8*pi)");
        assert_eq!(t(1, 64, 4, -2).to_string(), "q^4/(64*pi^2)");
        assert_eq!(t(8, 1, 0, 1).to_string(), "8*pi");
        let s = &t(1, 2, 0, 0) + &t(1, 128, 0, -2);
        assert_eq!(s.to_string(), "1/(128*pi^2) + 1/2");
        assert_eq!(RingElem::zero().to_string(), "0");
    }

    #[test]
    fn json_uses_decimal_strings_in_canonical_order() {
        let big: BigInt = "123456789012345678901234567891".parse().unwrap();
        let x = &RingElem::monomial(BigRational::new(big, 7.into()), 2, 0) + &t(-1, 8, -1, 3);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(
            json,
            r#"{"terms":[{"num":"-1","den":"8","q":-1,"pi":3},{"num":"123456789012345678901234567891","den":"7","q":2,"pi":0}]}"#
        );
        let back: RingElem = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn deserialization_canonicalizes() {
        let json = r#"{"terms":[{"num":"1","den":"2","q":1,"pi":0},{"num":"2","den":"4","q":1,"pi":0},{"num":"0","den":"3","q":5,"pi":0}]}"#;
        let x: RingElem = serde_json::from_str(json).unwrap();
        assert_eq!(x, RingElem::q_pow(1));
        assert!(serde_json::from_str::<RingElem>(r#"{"terms":[{"num":"1","den":"0","q":0,"pi":0}]}"#).is_err());
    }
}
