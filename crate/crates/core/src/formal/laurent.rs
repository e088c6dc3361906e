//! Sparse Laurent polynomials in two unit variables `u = e^{ix}`, `v = e^{iy}`
//! with exact Gaussian-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, Zero};

pub type Gaussian = Complex<BigInt>;

pub fn gaussian(re: i64, im: i64) -> Gaussian {
    Complex::new(BigInt::from(re), BigInt::from(im))
}

/// Renders `a`, `bi`, or `a+bi` / `a-bi`.
pub fn format_gaussian(c: &Gaussian) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (true, true) => "0".to_string(),
        (false, true) => c.re.to_string(),
        (true, false) => format!("{}i", c.im),
        (false, false) => {
            let sign = if c.im.is_negative() { '-' } else { '+' };
            format!("{}{}{}i", c.re, sign, c.im.abs())
        }
    }
}

/// `u^u v^v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub u: i32,
    pub v: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { u: 0, v: 0 };
    pub const U: Monomial = Monomial { u: 1, v: 0 };
    pub const V: Monomial = Monomial { u: 0, v: 1 };

    pub const fn new(u: i32, v: i32) -> Self {
        Self { u, v }
    }

    pub fn pow(self, k: i32) -> Self {
        Self {
            u: self.u * k,
            v: self.v * k,
        }
    }

    pub fn times(self, other: Monomial) -> Self {
        Self {
            u: self.u + other.u,
            v: self.v + other.v,
        }
    }

    pub fn inverse(self) -> Self {
        self.pow(-1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("u", self.u), ("v", self.v)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Invariant: no zero coefficient is ever stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Gaussian>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Monomial::ONE, Gaussian::one())
    }

    pub fn term(m: Monomial, c: Gaussian) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Gaussian)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> Gaussian {
        self.terms.get(m).cloned().unwrap_or_else(Gaussian::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Gaussian) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Gaussian::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_assign_ref(&mut self, other: &LaurentPoly) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    /// `self += factor * mono * other`.
    pub fn add_scaled(&mut self, other: &LaurentPoly, factor: &Gaussian, mono: Monomial) {
        for (m, c) in &other.terms {
            self.add_term(m.times(mono), c * factor);
        }
    }

    pub fn scale(&self, c: &Gaussian) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            out.add_term(*m, a * c);
        }
        out
    }

    /// Apply `f` to every monomial; `f` returns the new monomial and whether
    /// the coefficient flips sign.
    pub fn map_monomials(&self, f: impl Fn(Monomial) -> (Monomial, bool)) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (nm, flip) = f(*m);
            out.add_term(nm, if flip { -c.clone() } else { c.clone() });
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(*mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({})*{}", format_gaussian(c), m))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
