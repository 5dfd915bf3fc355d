//! Exact bivariate rational functions in `q` and `t = q^{-s}`.
//!
//! [`RatFun2`] is the carrier of every closed-form zeta function in this
//! crate. Values are kept in a canonical form (gcd-reduced, denominator
//! integer-primitive with positive leading coefficient under lex `q > t`),
//! so structural equality coincides with equality of values.

mod poly2;
mod upoly;

pub use poly2::Poly2;
pub use upoly::{rat_int, Rat, UPoly, URat};

use num::{BigInt, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatFunError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("expansion pole at t=0: denominator vanishes there")]
    ExpansionPole,
    #[error("series coefficient of t^{0} is not polynomial in q")]
    NonPolynomialCoefficient(usize),
    #[error("t-degree is {found}, expected {expected}")]
    DegreeMismatch { expected: i64, found: i64 },
    #[error("degree of the zero function is undefined")]
    ZeroFunction,
    #[error("malformed rational-function JSON: {0}")]
    Json(String),
}

/// A rational function `num/den` in `(q, t)`, always in canonical form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFun2 {
    num: Poly2,
    den: Poly2,
}

impl RatFun2 {
    pub fn new(num: Poly2, den: Poly2) -> Result<RatFun2, RatFunError> {
        if den.is_zero() {
            return Err(RatFunError::ZeroDenominator);
        }
        let mut f = RatFun2 { num, den };
        f.normalize_in_place();
        Ok(f)
    }

    pub fn zero() -> RatFun2 {
        RatFun2 {
            num: Poly2::zero(),
            den: Poly2::one(),
        }
    }

    pub fn one() -> RatFun2 {
        RatFun2 {
            num: Poly2::one(),
            den: Poly2::one(),
        }
    }

    pub fn from_poly(p: Poly2) -> RatFun2 {
        RatFun2 {
            num: p,
            den: Poly2::one(),
        }
    }

    pub fn from_int(n: i64) -> RatFun2 {
        RatFun2::from_poly(Poly2::constant(rat_int(n)))
    }

    /// `q^a t^b` with integer (possibly negative) exponents.
    pub fn monomial(a: i64, b: i64) -> RatFun2 {
        let num = Poly2::monomial(Rat::one(), a.max(0) as u32, b.max(0) as u32);
        let den = Poly2::monomial(Rat::one(), (-a).max(0) as u32, (-b).max(0) as u32);
        RatFun2::new(num, den).unwrap()
    }

    pub fn q() -> RatFun2 {
        RatFun2::monomial(1, 0)
    }

    pub fn t() -> RatFun2 {
        RatFun2::monomial(0, 1)
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Reduce by the gcd and rescale so the denominator has coprime integer
    /// coefficients and positive leading coefficient (lex `q > t`).
    fn normalize_in_place(&mut self) {
        if self.num.is_zero() {
            self.den = Poly2::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.div_exact(&g).expect("gcd divides numerator");
            self.den = self.den.div_exact(&g).expect("gcd divides denominator");
        }
        // The bivariate gcd is content-blind in q only up to rational scale;
        // fix the scale through the denominator.
        let den_coeffs = self.den.t_coeffs();
        let mut lcm = BigInt::one();
        let mut gcd = BigInt::zero();
        for up in &den_coeffs {
            for c in up.coeffs() {
                if c.is_zero() {
                    continue;
                }
                lcm = num::integer::lcm(lcm, c.denom().clone());
            }
        }
        for up in &den_coeffs {
            for c in up.coeffs() {
                if c.is_zero() {
                    continue;
                }
                gcd = num::integer::gcd(gcd, c.numer() * (&lcm / c.denom()));
            }
        }
        let mut factor = Rat::new(lcm, gcd);
        let (_, lead) = self.den.leading().expect("nonzero denominator");
        if (lead * &factor).is_negative() {
            factor = -factor;
        }
        self.num = self.num.scale(&factor);
        self.den = self.den.scale(&factor);
    }

    /// Re-canonicalize; idempotent (exposed mostly for tests).
    pub fn normalized(&self) -> RatFun2 {
        let mut f = self.clone();
        f.normalize_in_place();
        f
    }

    pub fn inv(&self) -> Result<RatFun2, RatFunError> {
        RatFun2::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> RatFun2 {
        RatFun2 {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
        .normalized()
    }

    pub fn eval(&self, q: &Rat, t: &Rat) -> Option<Rat> {
        let d = self.den.eval(q, t);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(q, t) / d)
    }

    /// The substitution `(q, t) -> (1/q, 1/t)`, cleared back to a quotient of
    /// polynomials. An involution on canonical forms.
    pub fn substitute_inverse(&self) -> RatFun2 {
        if self.is_zero() {
            return RatFun2::zero();
        }
        let a = self.num.deg_q().unwrap_or(0).max(self.den.deg_q().unwrap_or(0));
        let b = self.num.deg_t().unwrap_or(0).max(self.den.deg_t().unwrap_or(0));
        RatFun2::new(self.num.reversed(a, b), self.den.reversed(a, b))
            .expect("reversal keeps denominator nonzero")
    }

    /// Coefficients `0..=k_max` of the `t`-adic expansion; each coefficient is
    /// a polynomial in `q`.
    pub fn series_in_t(&self, k_max: usize) -> Result<Vec<UPoly>, RatFunError> {
        let den = self.den.t_coeffs();
        let num = self.num.t_coeffs();
        let d0 = den.first().cloned().unwrap_or_else(UPoly::zero);
        if d0.is_zero() {
            return Err(RatFunError::ExpansionPole);
        }
        let d0 = URat::from_poly(d0);
        let mut coeffs: Vec<URat> = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            let mut acc = URat::from_poly(num.get(k).cloned().unwrap_or_else(UPoly::zero));
            for j in 1..=k {
                if let Some(dj) = den.get(j) {
                    if !dj.is_zero() {
                        let prod = URat::from_poly(dj.clone()).mul_ref(&coeffs[k - j]);
                        acc = acc.sub_ref(&prod);
                    }
                }
            }
            coeffs.push(acc.div_ref(&d0));
        }
        coeffs
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                c.as_polynomial()
                    .cloned()
                    .ok_or(RatFunError::NonPolynomialCoefficient(k))
            })
            .collect()
    }

    /// `deg_t(num) - deg_t(den)`; `None` for the zero function.
    pub fn deg_t(&self) -> Option<i64> {
        Some(self.num.deg_t()? as i64 - self.den.deg_t().unwrap_or(0) as i64)
    }

    /// `deg_q(num) - deg_q(den)`; `None` for the zero function.
    pub fn deg_q(&self) -> Option<i64> {
        Some(self.num.deg_q()? as i64 - self.den.deg_q().unwrap_or(0) as i64)
    }

    /// `lim_{t -> infinity} t^b f(q, t)` as a rational function of `q`;
    /// requires `deg_t(f) = -b`.
    pub fn leading_limit(&self, b: i64) -> Result<URat, RatFunError> {
        let dt = self.deg_t().ok_or(RatFunError::ZeroFunction)?;
        if dt != -b {
            return Err(RatFunError::DegreeMismatch {
                expected: -b,
                found: dt,
            });
        }
        let nc = self.num.t_coeffs();
        let dc = self.den.t_coeffs();
        Ok(URat::new(
            nc.last().cloned().unwrap_or_else(UPoly::zero),
            dc.last().cloned().unwrap_or_else(UPoly::zero),
        ))
    }

    /// Substitute `t = t0`, returning a univariate rational function in `q`.
    /// `None` if the denominator vanishes identically at `t0`.
    pub fn eval_at_t(&self, t0: &Rat) -> Option<URat> {
        let den = self.den.eval_t(t0);
        if den.is_zero() {
            return None;
        }
        Some(URat::new(self.num.eval_t(t0), den))
    }

    /// Serialize to the interchange format:
    /// `{"num": [[c_num, c_den, dq, dt], ...], "den": [...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "num": poly_to_json(&self.num),
            "den": poly_to_json(&self.den),
            "string": self.to_string(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<RatFun2, RatFunError> {
        let num = poly_from_json(
            v.get("num")
                .ok_or_else(|| RatFunError::Json("missing \"num\"".into()))?,
        )?;
        let den = poly_from_json(
            v.get("den")
                .ok_or_else(|| RatFunError::Json("missing \"den\"".into()))?,
        )?;
        RatFun2::new(num, den)
    }
}

fn bigint_to_json(n: &BigInt) -> serde_json::Value {
    match i64::try_from(n.clone()) {
        Ok(v) => serde_json::json!(v),
        Err(_) => serde_json::json!(n.to_string()),
    }
}

fn bigint_from_json(v: &serde_json::Value) -> Result<BigInt, RatFunError> {
    if let Some(n) = v.as_i64() {
        return Ok(BigInt::from(n));
    }
    if let Some(s) = v.as_str() {
        return BigInt::from_str(s).map_err(|e| RatFunError::Json(e.to_string()));
    }
    Err(RatFunError::Json(format!("expected integer, got {v}")))
}

fn poly_to_json(p: &Poly2) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = p
        .terms()
        .map(|(&(dq, dt), c)| {
            serde_json::json!([
                bigint_to_json(c.numer()),
                bigint_to_json(c.denom()),
                dq,
                dt
            ])
        })
        .collect();
    serde_json::Value::Array(terms)
}

fn poly_from_json(v: &serde_json::Value) -> Result<Poly2, RatFunError> {
    let arr = v
        .as_array()
        .ok_or_else(|| RatFunError::Json("polynomial must be an array".into()))?;
    let mut p = Poly2::zero();
    for term in arr {
        let t = term
            .as_array()
            .filter(|t| t.len() == 4)
            .ok_or_else(|| RatFunError::Json("term must be [cn, cd, dq, dt]".into()))?;
        let cn = bigint_from_json(&t[0])?;
        let cd = bigint_from_json(&t[1])?;
        if cd.is_zero() {
            return Err(RatFunError::Json("zero coefficient denominator".into()));
        }
        let dq = t[2]
            .as_u64()
            .ok_or_else(|| RatFunError::Json("bad exponent".into()))? as u32;
        let dt = t[3]
            .as_u64()
            .ok_or_else(|| RatFunError::Json("bad exponent".into()))? as u32;
        p = &p + &Poly2::monomial(Rat::new(cn, cd), dq, dt);
    }
    Ok(p)
}

impl fmt::Display for RatFun2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.num_terms() <= 1 {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &RatFun2 {
    type Output = RatFun2;
    fn add(self, other: &RatFun2) -> RatFun2 {
        RatFun2 {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
        .normalized()
    }
}

impl Sub for &RatFun2 {
    type Output = RatFun2;
    fn sub(self, other: &RatFun2) -> RatFun2 {
        RatFun2 {
            num: &(&self.num * &other.den) - &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
        .normalized()
    }
}

impl Mul for &RatFun2 {
    type Output = RatFun2;
    fn mul(self, other: &RatFun2) -> RatFun2 {
        RatFun2 {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
        .normalized()
    }
}

impl Div for &RatFun2 {
    type Output = RatFun2;
    fn div(self, other: &RatFun2) -> RatFun2 {
        assert!(!other.is_zero(), "division by zero rational function");
        RatFun2 {
            num: &self.num * &other.den,
            den: &self.den * &other.num,
        }
        .normalized()
    }
}

impl Neg for &RatFun2 {
    type Output = RatFun2;
    fn neg(self) -> RatFun2 {
        RatFun2 {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(c: i64, dq: u32, dt: u32) -> Poly2 {
        Poly2::monomial(rat_int(c), dq, dt)
    }

    /// 1 / prod (1 - q^i t) over the given exponents.
    fn inv_prod(qexps: &[u32], texp: u32) -> RatFun2 {
        let mut den = Poly2::one();
        for &i in qexps {
            den = &den * &(&Poly2::one() - &mono(1, i, texp));
        }
        RatFun2::new(Poly2::one(), den).unwrap()
    }

    #[test]
    fn normalize_examples() {
        // (qt - t)/(q - 1) -> t
        let f = RatFun2::new(&mono(1, 1, 1) - &mono(1, 0, 1), &mono(1, 1, 0) - &mono(1, 0, 0))
            .unwrap();
        assert_eq!(f, RatFun2::t());
        // (1 - t^2)/(1 - t) -> 1 + t
        let f = RatFun2::new(&mono(1, 0, 0) - &mono(1, 0, 2), &mono(1, 0, 0) - &mono(1, 0, 1))
            .unwrap();
        assert_eq!(f, RatFun2::from_poly(&mono(1, 0, 0) + &mono(1, 0, 1)));
        // (1 - qt)/(1 - qt) -> 1
        let p = &mono(1, 0, 0) - &mono(1, 1, 1);
        assert_eq!(RatFun2::new(p.clone(), p).unwrap(), RatFun2::one());
    }

    #[test]
    fn normalize_is_idempotent_and_value_canonical() {
        let f = RatFun2::new(&mono(2, 1, 1) - &mono(2, 0, 1), &mono(6, 1, 0) - &mono(6, 0, 0))
            .unwrap();
        // 2t(q-1) / 6(q-1) = t/3
        assert_eq!(
            f,
            RatFun2::new(mono(1, 0, 1), mono(3, 0, 0)).unwrap()
        );
        assert_eq!(f.normalized(), f);
    }

    #[test]
    fn substitute_inverse_examples() {
        // 1/(1-t) -> -t/(1-t)
        let f = inv_prod(&[0], 1);
        let expected = &(&RatFun2::zero() - &RatFun2::t()) * &f.inv().unwrap().inv().unwrap();
        assert_eq!(f.substitute_inverse(), &(-&RatFun2::t()) * &f);
        let _ = expected;
        // q -> 1/q
        assert_eq!(RatFun2::q().substitute_inverse(), RatFun2::monomial(-1, 0));
        // 1/((1-t)(1-qt^2)) -> q t^3 /((1-t)(1-qt^2))
        let den = &(&Poly2::one() - &mono(1, 0, 1)) * &(&Poly2::one() - &mono(1, 1, 2));
        let f = RatFun2::new(Poly2::one(), den).unwrap();
        assert_eq!(
            f.substitute_inverse(),
            &RatFun2::monomial(1, 3) * &f
        );
        // involution
        assert_eq!(f.substitute_inverse().substitute_inverse(), f);
    }

    #[test]
    fn series_examples() {
        // 1/((1-t)(1-qt)): coefficients 1, 1+q, 1+q+q^2
        let f = inv_prod(&[0, 1], 1);
        let s = f.series_in_t(2).unwrap();
        assert_eq!(s[0], UPoly::from_i64s(&[1]));
        assert_eq!(s[1], UPoly::from_i64s(&[1, 1]));
        assert_eq!(s[2], UPoly::from_i64s(&[1, 1, 1]));
        // 1/(1-t): all ones
        let s = inv_prod(&[0], 1).series_in_t(3).unwrap();
        assert!(s.iter().all(|c| c == &UPoly::from_i64s(&[1])));
        // 1/((1-t)(1-qt^2)): 1, 1, 1+q
        let den = &(&Poly2::one() - &mono(1, 0, 1)) * &(&Poly2::one() - &mono(1, 1, 2));
        let f = RatFun2::new(Poly2::one(), den).unwrap();
        let s = f.series_in_t(2).unwrap();
        assert_eq!(s[0], UPoly::from_i64s(&[1]));
        assert_eq!(s[1], UPoly::from_i64s(&[1]));
        assert_eq!(s[2], UPoly::from_i64s(&[1, 1]));
    }

    #[test]
    fn series_pole_detected() {
        let f = RatFun2::new(Poly2::one(), mono(1, 0, 1)).unwrap();
        assert_eq!(f.series_in_t(1), Err(RatFunError::ExpansionPole));
    }

    #[test]
    fn series_is_multiplicative() {
        let f = inv_prod(&[0, 1], 1);
        let g = RatFun2::new(
            Poly2::one(),
            &(&Poly2::one() - &mono(1, 0, 1)) * &(&Poly2::one() - &mono(1, 1, 2)),
        )
        .unwrap();
        let k = 6;
        let sf = f.series_in_t(k).unwrap();
        let sg = g.series_in_t(k).unwrap();
        let sfg = (&f * &g).series_in_t(k).unwrap();
        for m in 0..=k {
            let mut acc = UPoly::zero();
            for i in 0..=m {
                acc = &acc + &sf[i].mul_ref(&sg[m - i]);
            }
            assert_eq!(acc, sfg[m], "Cauchy product mismatch at degree {m}");
        }
    }

    #[test]
    fn degree_and_limit_examples() {
        let f = inv_prod(&[0, 1], 1);
        assert_eq!(f.deg_t(), Some(-2));
        assert_eq!(f.deg_q(), Some(-1));
        let den = &(&Poly2::one() - &mono(1, 0, 1)) * &(&Poly2::one() - &mono(1, 1, 2));
        let g = RatFun2::new(Poly2::one(), den).unwrap();
        assert_eq!(g.deg_t(), Some(-3));
        let lim = g.leading_limit(3).unwrap();
        // 1/q
        assert_eq!(lim, URat::new(UPoly::from_i64s(&[1]), UPoly::from_i64s(&[0, 1])));
        assert!(matches!(
            g.leading_limit(2),
            Err(RatFunError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let den = &(&Poly2::one() - &mono(1, 0, 1)) * &(&Poly2::one() - &mono(1, 1, 2));
        let f = RatFun2::new(&mono(3, 2, 0) + &mono(-1, 0, 1), den).unwrap();
        let j = f.to_json();
        let g = RatFun2::from_json(&j).unwrap();
        assert_eq!(f, g);
    }
}
