//! Bivariate polynomials in `(q, t)` with rational coefficients.
//!
//! The monomial order is lexicographic with `q > t`, which fixes leading
//! terms, canonical forms and display order throughout the crate. The gcd is
//! a primitive polynomial-remainder sequence over `Q[q]`, viewing a bivariate
//! polynomial as a polynomial in `t` with `Q[q]` coefficients.

use super::upoly::{Rat, UPoly};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent pair `(dq, dt)`. Tuple ordering is exactly lex with `q > t`.
pub type Mono = (u32, u32);

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly2 {
    terms: BTreeMap<Mono, Rat>,
}

impl Poly2 {
    pub fn zero() -> Poly2 {
        Poly2 {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Poly2 {
        Poly2::monomial(Rat::one(), 0, 0)
    }

    pub fn constant(c: Rat) -> Poly2 {
        Poly2::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rat, dq: u32, dt: u32) -> Poly2 {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((dq, dt), c);
        }
        Poly2 { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && matches!(self.terms.get(&(0, 0)), Some(c) if c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, dq: u32, dt: u32) -> Rat {
        self.terms
            .get(&(dq, dt))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn insert_add(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// Leading (monomial, coefficient) in lex order with `q > t`.
    pub fn leading(&self) -> Option<(Mono, &Rat)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn deg_q(&self) -> Option<u32> {
        self.terms.keys().map(|&(dq, _)| dq).max()
    }

    pub fn deg_t(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, dt)| dt).max()
    }

    pub fn scale(&self, c: &Rat) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, dq: u32, dt: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + dq, b + dt), c.clone()))
                .collect(),
        }
    }

    /// `q^A t^B * p(1/q, 1/t)`; requires `A >= deg_q`, `B >= deg_t`.
    pub fn reversed(&self, a: u32, b: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(dq, dt), c)| ((a - dq, b - dt), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, q: &Rat, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(dq, dt), c) in &self.terms {
            let mut v = c.clone();
            for _ in 0..dq {
                v = v * q;
            }
            for _ in 0..dt {
                v = v * t;
            }
            acc = acc + v;
        }
        acc
    }

    /// Substitute `t = t0` (a rational), leaving a polynomial in `q`.
    pub fn eval_t(&self, t0: &Rat) -> UPoly {
        let mut coeffs: BTreeMap<u32, Rat> = BTreeMap::new();
        for (&(dq, dt), c) in &self.terms {
            let mut v = c.clone();
            for _ in 0..dt {
                v = v * t0;
            }
            let e = coeffs.entry(dq).or_insert_with(Rat::zero);
            *e = &*e + &v;
        }
        let deg = coeffs.keys().max().copied().unwrap_or(0) as usize;
        let mut out = vec![Rat::zero(); deg + 1];
        for (dq, c) in coeffs {
            out[dq as usize] = c;
        }
        UPoly::from_coeffs(out)
    }

    /// View as a polynomial in `t` with `Q[q]` coefficients: index = t-degree.
    pub fn t_coeffs(&self) -> Vec<UPoly> {
        let dt = match self.deg_t() {
            None => return vec![],
            Some(d) => d as usize,
        };
        let dq = self.deg_q().unwrap() as usize;
        let mut rows: Vec<Vec<Rat>> = vec![vec![Rat::zero(); dq + 1]; dt + 1];
        for (&(a, b), c) in &self.terms {
            rows[b as usize][a as usize] = c.clone();
        }
        rows.into_iter().map(UPoly::from_coeffs).collect()
    }

    pub fn from_t_coeffs(coeffs: &[UPoly]) -> Poly2 {
        let mut p = Poly2::zero();
        for (b, up) in coeffs.iter().enumerate() {
            for (a, c) in up.coeffs().iter().enumerate() {
                p.insert_add((a as u32, b as u32), c.clone());
            }
        }
        p
    }

    pub fn from_upoly_in_q(p: &UPoly) -> Poly2 {
        let mut out = Poly2::zero();
        for (a, c) in p.coeffs().iter().enumerate() {
            out.insert_add((a as u32, 0), c.clone());
        }
        out
    }

    pub fn from_upoly_in_t(p: &UPoly) -> Poly2 {
        let mut out = Poly2::zero();
        for (b, c) in p.coeffs().iter().enumerate() {
            out.insert_add((0, b as u32), c.clone());
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Poly2 {
        let mut base = self.clone();
        let mut acc = Poly2::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Gcd via primitive PRS in `t` over `Q[q]`, monic-normalized so the
    /// lex-leading coefficient is 1.
    pub fn gcd(&self, other: &Poly2) -> Poly2 {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let a = self.t_coeffs();
        let b = other.t_coeffs();
        let ca = content(&a);
        let cb = content(&b);
        let cg = ca.gcd(&cb);
        let mut ap = divide_content(&a, &ca);
        let mut bp = divide_content(&b, &cb);
        if ap.len() < bp.len() {
            std::mem::swap(&mut ap, &mut bp);
        }
        while !bp.is_empty() {
            let r = pseudo_rem(&ap, &bp);
            ap = bp;
            let rc = content(&r);
            bp = if rc.is_zero() {
                vec![]
            } else {
                divide_content(&r, &rc)
            };
        }
        let g = Poly2::from_t_coeffs(&ap);
        let cgp = Poly2::from_upoly_in_q(&cg);
        (&g * &cgp).monic()
    }

    /// Scale so the lex-leading coefficient is 1.
    pub fn monic(&self) -> Poly2 {
        match self.leading() {
            None => Poly2::zero(),
            Some((_, c)) => self.scale(&(Rat::one() / c)),
        }
    }

    /// Exact division; `None` when not divisible. Runs the division in
    /// `Q(q)[t]` and demands every quotient coefficient be polynomial.
    pub fn div_exact(&self, div: &Poly2) -> Option<Poly2> {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly2::zero());
        }
        let num = self.t_coeffs();
        let den = div.t_coeffs();
        let dd = den.len() - 1;
        let lead = den.last().unwrap();
        let mut rem = num;
        let mut quo: Vec<UPoly> = vec![UPoly::zero(); rem.len().saturating_sub(dd)];
        loop {
            while matches!(rem.last(), Some(c) if c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
            let rd = rem.len() - 1;
            let c = rem.last().unwrap().div_exact(lead)?;
            let k = rd - dd;
            for (i, dc) in den.iter().enumerate() {
                rem[i + k] = &rem[i + k] - &dc.mul_ref(&c);
            }
            quo[k] = c;
        }
        let rem_poly = Poly2::from_t_coeffs(&rem);
        rem_poly.is_zero().then(|| Poly2::from_t_coeffs(&quo))
    }

    pub fn to_string_with(&self, qv: &str, tv: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        // Ascending lex order reads like the displayed series denominators.
        for (&(dq, dt), c) in &self.terms {
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
            let mut parts: Vec<String> = vec![];
            if !abs.is_one() || (dq == 0 && dt == 0) {
                parts.push(abs.to_string());
            }
            if dq > 0 {
                parts.push(if dq == 1 {
                    qv.to_string()
                } else {
                    format!("{qv}^{dq}")
                });
            }
            if dt > 0 {
                parts.push(if dt == 1 {
                    tv.to_string()
                } else {
                    format!("{tv}^{dt}")
                });
            }
            out.push_str(&parts.join("*"));
        }
        out
    }
}

fn content(coeffs: &[UPoly]) -> UPoly {
    let mut g = UPoly::zero();
    for c in coeffs {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_content(coeffs: &[UPoly], c: &UPoly) -> Vec<UPoly> {
    coeffs
        .iter()
        .map(|a| a.div_exact(c).expect("content divides"))
        .collect()
}

/// Pseudo-remainder of `a` by `b` in `(Q[q])[t]`; `b` nonzero.
fn pseudo_rem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    let mut rem: Vec<UPoly> = a.to_vec();
    loop {
        while matches!(rem.last(), Some(c) if c.is_zero()) {
            rem.pop();
        }
        if rem.len() <= db {
            return rem;
        }
        let ra = rem.len() - 1;
        let top = rem.pop().unwrap();
        for c in rem.iter_mut() {
            *c = c.mul_ref(lead);
        }
        let k = ra - db;
        for i in 0..db {
            rem[i + k] = &rem[i + k] - &b[i].mul_ref(&top);
        }
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, -c);
        }
        out
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.insert_add((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with("q", "t"))
    }
}

#[cfg(test)]
mod tests {
    use super::super::upoly::rat_int;
    use super::*;

    fn qt(dq: u32, dt: u32) -> Poly2 {
        Poly2::monomial(rat_int(1), dq, dt)
    }

    #[test]
    fn gcd_common_factor() {
        // gcd(q*t - t, q - 1) = q - 1
        let a = &qt(1, 1) - &qt(0, 1);
        let b = &qt(1, 0) - &qt(0, 0);
        let g = a.gcd(&b);
        assert_eq!(g, b.monic());
        assert_eq!(a.div_exact(&g).unwrap(), qt(0, 1));
    }

    #[test]
    fn gcd_coprime() {
        let a = &qt(0, 0) - &qt(0, 1); // 1 - t
        let b = &qt(0, 0) - &qt(1, 2); // 1 - q t^2
        assert!(a.gcd(&b).is_one());
    }

    #[test]
    fn div_exact_detects_failure() {
        let a = &qt(0, 0) - &qt(0, 2); // 1 - t^2
        let b = &qt(0, 0) - &qt(0, 1); // 1 - t
        assert_eq!(a.div_exact(&b).unwrap(), &qt(0, 0) + &qt(0, 1));
        assert!(a.div_exact(&qt(1, 0)).is_none());
    }
}
