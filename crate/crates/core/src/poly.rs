//! Sparse multivariate polynomials over exact rationals.
//!
//! Terms are stored in a map keyed by monomial in grevlex order, so a
//! polynomial has exactly one representation and formatting needs no extra
//! sorting. Coefficients are arbitrary-precision rationals kept in lowest
//! terms with positive denominator.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::ring::Ring;

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Rational {
    BigRational::from(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Polynomial::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ring.arity()), c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Polynomial::term(ring, Monomial::var(ring.arity(), i, 1), Rational::one())
    }

    pub fn var_pow(ring: &Arc<Ring>, i: usize, e: u32) -> Self {
        Polynomial::term(ring, Monomial::var(ring.arity(), i, e), Rational::one())
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.arity(), ring.arity(), "monomial arity does not match ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: BTreeMap<Monomial, Rational>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<&Rational> {
        if self.is_constant() {
            self.terms.values().next()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var)).max()
    }

    fn same_ring(&self, other: &Polynomial) {
        assert!(*self.ring == *other.ring, "ring mismatch: {} vs {}", self.ring, other.ring);
    }

    fn add_assign_term(&mut self, m: &Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(m);
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, q)| (m.clone(), q * c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Multiply by the single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(mm, q)| (mm.mul(m), q * c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u64) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        let mut e = e;
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

    /// Leading term under the given order.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Monomial, Rational), Error> {
        self.leading(ord).map(|(m, c)| (m.clone(), c.clone())).ok_or(Error::ZeroPolynomial)
    }

    pub(crate) fn leading(&self, ord: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        if *ord == MonomialOrder::grevlex() {
            // Intrinsic map order is grevlex.
            return self.terms.iter().next_back();
        }
        self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0))
    }

    /// Transport to another ring by matching variable names. Every variable
    /// actually appearing in `self` must exist in `target`; unused variables
    /// may be dropped or added freely.
    pub fn into_ring(&self, target: &Arc<Ring>) -> Result<Polynomial, Error> {
        if *self.ring == **target {
            return Ok(Polynomial { ring: target.clone(), terms: self.terms.clone() });
        }
        let map: Vec<Option<usize>> = self
            .ring
            .vars()
            .iter()
            .map(|name| target.index_of(name))
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.arity()];
            for i in 0..self.ring.arity() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] = e,
                    None => {
                        return Err(Error::UnknownVariable {
                            name: self.ring.var_name(i).to_string(),
                        });
                    }
                }
            }
            terms.insert(Monomial::new(exps), c.clone());
        }
        Ok(Polynomial { ring: target.clone(), terms })
    }

    /// Scale so the leading coefficient under `ord` is 1.
    pub fn monic(&self, ord: &MonomialOrder) -> Result<Polynomial, Error> {
        let (_, c) = self.leading(ord).ok_or(Error::ZeroPolynomial)?;
        if c.is_one() {
            return Ok(self.clone());
        }
        Ok(self.scale(&c.recip()))
    }

    /// Total deterministic comparison: walk terms from the largest monomial
    /// under `ord` downward, comparing monomials then coefficients. Returns
    /// `Equal` only for equal polynomials.
    pub(crate) fn cmp_by_order(&self, other: &Polynomial, ord: &MonomialOrder) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let mut a: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        let mut b: Vec<(&Monomial, &Rational)> = other.terms.iter().collect();
        a.sort_by(|x, y| ord.cmp(y.0, x.0));
        b.sort_by(|x, y| ord.cmp(y.0, x.0));
        for ((ma, ca), (mb, cb)) in a.iter().zip(&b) {
            match ord.cmp(ma, mb) {
                Ordering::Equal => {}
                neq => return neq,
            }
            match ca.cmp(cb) {
                Ordering::Equal => {}
                neq => return neq,
            }
        }
        a.len().cmp(&b.len())
    }

    /// Image under the ring map sending variable `i` to `images[i]`.
    pub fn map_vars(&self, target: &Arc<Ring>, images: &[Polynomial]) -> Result<Polynomial, Error> {
        if images.len() != self.ring.arity() {
            return Err(Error::RingMismatch);
        }
        for img in images {
            if *img.ring != **target {
                return Err(Error::RingMismatch);
            }
        }
        // Successive powers of each image, built once.
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            let max = self.degree_in(i).unwrap_or(0);
            let mut tower = vec![Polynomial::one(target)];
            for _ in 0..max {
                tower.push(tower.last().unwrap() * img);
            }
            powers.push(tower);
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(target, c.clone());
            for i in 0..self.ring.arity() {
                let e = m.exp(i);
                if e > 0 {
                    prod = &prod * &powers[i][e as usize];
                }
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// Substitute `image` for the named variable. The image may live in the
    /// same ring or in an extension ring containing all current variables.
    pub fn substitute(&self, var: &str, image: &Polynomial) -> Result<Polynomial, Error> {
        let vi = self
            .ring
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable { name: var.to_string() })?;
        let target = if *image.ring == *self.ring {
            self.ring.clone()
        } else {
            for v in self.ring.vars() {
                if image.ring.index_of(v).is_none() && v != var {
                    return Err(Error::RingMismatch);
                }
            }
            image.ring.clone()
        };
        let images: Vec<Polynomial> = (0..self.ring.arity())
            .map(|j| {
                if j == vi {
                    image.clone()
                } else {
                    let name = self.ring.var_name(j);
                    let idx = target.index_of(name).expect("extension ring misses a variable");
                    Polynomial::var(&target, idx)
                }
            })
            .collect();
        self.map_vars(&target, &images)
    }

    /// Canonical display form: grevlex-descending terms, `*` between factors,
    /// `^` for exponents, coefficients in lowest terms.
    pub fn format_canonical(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term_string(&self.ring, m, &c.abs()));
        }
        out
    }
}

fn term_string(ring: &Ring, m: &Monomial, abs: &Rational) -> String {
    let mut parts: Vec<String> = Vec::new();
    if m.is_one() || !abs.is_one() {
        parts.push(abs.to_string());
    }
    for i in 0..ring.arity() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(ring.var_name(i).to_string()),
            e => parts.push(format!("{}^{}", ring.var_name(i), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_canonical())
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_assign_term(m, c);
        }
        out
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_assign_term(m, &-c.clone());
        }
        out
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.same_ring(rhs);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match terms.get_mut(&m) {
                    Some(existing) => {
                        *existing += c;
                        if existing.is_zero() {
                            terms.remove(&m);
                        }
                    }
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    Pow,
}

/// Checked binary ring operation. `Pow` requires the right operand to be a
/// constant non-negative integer.
pub fn ring_op(p: &Polynomial, q: &Polynomial, op: RingOp) -> Result<Polynomial, Error> {
    if *p.ring != *q.ring {
        return Err(Error::RingMismatch);
    }
    match op {
        RingOp::Add => Ok(p + q),
        RingOp::Sub => Ok(p - q),
        RingOp::Mul => Ok(p * q),
        RingOp::Pow => {
            let c = q
                .constant_value()
                .cloned()
                .or_else(|| q.is_zero().then(Rational::zero))
                .ok_or_else(|| Error::InvalidExponent {
                    detail: "exponent must be a constant".to_string(),
                })?;
            if !c.is_integer() {
                return Err(Error::InvalidExponent {
                    detail: format!("exponent {c} is not an integer"),
                });
            }
            if c.is_negative() {
                return Err(Error::NegativePower);
            }
            let e = c.to_integer().to_u64().ok_or_else(|| Error::InvalidExponent {
                detail: "exponent does not fit in 64 bits".to_string(),
            })?;
            Ok(p.pow(e))
        }
    }
}
