//! Dense univariate polynomials and rational functions over `Q`.
//!
//! These are the workhorses behind series coefficients (polynomials in `q`),
//! leading-term limits, palindromy checks in `T`, and the coefficient ring of
//! the bivariate gcd.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational scalar used everywhere in this crate.
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// A dense univariate polynomial with rational coefficients.
///
/// `coeffs[i]` holds the coefficient of `x^i`; the vector never has a zero
/// leading entry (the zero polynomial is the empty vector).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = UPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn monomial(c: Rat, deg: usize) -> Self {
        if c.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        UPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = UPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        UPoly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    /// Coefficient reversal: `x^d * p(1/x)` where `d = deg p`.
    pub fn reversed(&self) -> UPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        UPoly::from_coeffs(coeffs)
    }

    /// Largest `k` with `x^k | p`; 0 for the zero polynomial.
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Exact quotient by `x^k`; panics if `x^k` does not divide.
    pub fn shift_down(&self, k: usize) -> UPoly {
        assert!(self.trailing_zeros() >= k || self.is_zero());
        UPoly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Division with remainder; `div` must be nonzero.
    pub fn divrem(&self, div: &UPoly) -> (UPoly, UPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lead = div.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quo_coeffs = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().unwrap() / &lead;
            let k = rd - dd;
            for (i, dc) in div.coeffs.iter().enumerate() {
                let v = &rem.coeffs[i + k] - dc * &c;
                rem.coeffs[i + k] = v;
            }
            rem.trim();
            quo_coeffs[k] = c;
        }
        (UPoly::from_coeffs(quo_coeffs), rem)
    }

    /// Exact division; `None` if the remainder is nonzero.
    pub fn div_exact(&self, div: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divrem(div);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (1 for coprime inputs, 0 only if both inputs are 0).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.into_monic()
    }

    pub fn into_monic(mut self) -> UPoly {
        if let Some(l) = self.leading().cloned() {
            if !l.is_one() {
                for c in &mut self.coeffs {
                    *c = &*c / &l;
                }
            }
        }
        self
    }

    pub fn mul_ref(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let v = &coeffs[i + j] + a * b;
                coeffs[i + j] = v;
            }
        }
        UPoly::from_coeffs(coeffs)
    }

    pub fn pow(&self, mut e: u32) -> UPoly {
        let mut base = self.clone();
        let mut acc = UPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Scale so the coefficients are coprime integers with positive leading
    /// coefficient; returns the applied factor alongside.
    pub fn integer_primitive(&self) -> (UPoly, Rat) {
        if self.is_zero() {
            return (UPoly::zero(), Rat::one());
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut numer_gcd = BigInt::zero();
        for c in &self.coeffs {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            numer_gcd = num::integer::gcd(numer_gcd, scaled);
        }
        let mut factor = Rat::new(denom_lcm, numer_gcd);
        if self.leading().unwrap().signum() * factor.signum() < Rat::zero() {
            factor = -factor;
        }
        (self.scale(&factor), factor)
    }

    pub fn to_string_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    out.push('-');
                }
                first = false;
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                out.push_str(&abs.to_string());
            }
            if i > 0 {
                if show_coeff {
                    out.push('*');
                }
                out.push_str(var);
                if i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with("q"))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - other.coeff(i));
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, other: &UPoly) -> UPoly {
        self.mul_ref(other)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// A reduced univariate rational function: coprime numerator/denominator with
/// monic denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct URat {
    num: UPoly,
    den: UPoly,
}

impl URat {
    pub fn new(num: UPoly, den: UPoly) -> URat {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return URat {
                num,
                den: UPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).unwrap();
        let den = den.div_exact(&g).unwrap();
        let lead = den.leading().unwrap().clone();
        let inv = Rat::one() / lead;
        URat {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: UPoly) -> URat {
        URat {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> URat {
        URat::from_poly(UPoly::constant(c))
    }

    pub fn zero() -> URat {
        URat::from_poly(UPoly::zero())
    }

    pub fn one() -> URat {
        URat::from_poly(UPoly::one())
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&UPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn add_ref(&self, other: &URat) -> URat {
        URat::new(
            &self.num.mul_ref(&other.den) + &other.num.mul_ref(&self.den),
            self.den.mul_ref(&other.den),
        )
    }

    pub fn sub_ref(&self, other: &URat) -> URat {
        URat::new(
            &self.num.mul_ref(&other.den) - &other.num.mul_ref(&self.den),
            self.den.mul_ref(&other.den),
        )
    }

    pub fn mul_ref(&self, other: &URat) -> URat {
        URat::new(self.num.mul_ref(&other.num), self.den.mul_ref(&other.den))
    }

    pub fn div_ref(&self, other: &URat) -> URat {
        assert!(!other.is_zero(), "division by zero");
        URat::new(self.num.mul_ref(&other.den), self.den.mul_ref(&other.num))
    }

    pub fn neg_ref(&self) -> URat {
        URat {
            num: (-&self.num).clone(),
            den: self.den.clone(),
        }
    }

    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn to_string_with(&self, var: &str) -> String {
        if self.is_polynomial() {
            self.num.to_string_with(var)
        } else {
            format!(
                "({})/({})",
                self.num.to_string_with(var),
                self.den.to_string_with(var)
            )
        }
    }
}

impl fmt::Display for URat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with("q"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_and_gcd() {
        // (x^2 - 1) / (x - 1) = x + 1
        let a = UPoly::from_i64s(&[-1, 0, 1]);
        let b = UPoly::from_i64s(&[-1, 1]);
        let (q, r) = a.divrem(&b);
        assert!(r.is_zero());
        assert_eq!(q, UPoly::from_i64s(&[1, 1]));
        let g = a.gcd(&UPoly::from_i64s(&[1, 1]));
        assert_eq!(g, UPoly::from_i64s(&[1, 1]));
    }

    #[test]
    fn urat_reduces() {
        let f = URat::new(UPoly::from_i64s(&[0, 2]), UPoly::from_i64s(&[0, 0, 4]));
        // 2x / 4x^2 = (1/2) / x
        assert_eq!(f.den, UPoly::from_i64s(&[0, 1]));
        assert_eq!(f.num, UPoly::from_coeffs(vec![Rat::new(1.into(), 2.into())]));
    }

    #[test]
    fn integer_primitive_flips_sign() {
        let p = UPoly::from_i64s(&[2, 0, -4]);
        let (prim, _) = p.integer_primitive();
        assert_eq!(prim, UPoly::from_i64s(&[-1, 0, 2]));
    }
}
