//! Ideals with cached reduced Gröbner bases and the arithmetic built on them.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::config;
use crate::error::Error;
use crate::groebner;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::ring::Ring;

/// The unique reduced Gröbner basis of an ideal for one monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Vector-space dimension of the quotient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(&self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(*n),
            Colength::Infinite => None,
        }
    }
}

impl std::fmt::Display for Colength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// A polynomial ideal, identified by its generators, with a write-once cache
/// of reduced Gröbner bases keyed by monomial order.
#[derive(Debug)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    cache: Mutex<BTreeMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().expect("cache lock").clone();
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), cache: Mutex::new(cache) }
    }
}

impl Ideal {
    /// Build an ideal from generators; zero generators are dropped. All
    /// generators must share `ring`.
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Ideal {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            assert!(**g.ring() == **ring, "generator ring mismatch");
        }
        Ideal { ring: ring.clone(), gens, cache: Mutex::new(BTreeMap::new()) }
    }

    pub fn zero(ring: &Arc<Ring>) -> Ideal {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<Ring>) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)])
    }

    pub fn parse(ring: &Arc<Ring>, texts: &[&str]) -> Result<Ideal, Error> {
        let gens = texts
            .iter()
            .map(|s| parse_polynomial(s, ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(ring, gens))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    fn check_same_ring(&self, other: &Ideal) -> Result<(), Error> {
        if *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn check_poly_ring(&self, p: &Polynomial) -> Result<(), Error> {
        if **p.ring() == *self.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// The reduced Gröbner basis under `ord`, computed once and cached.
    pub fn groebner_basis(&self, ord: &MonomialOrder) -> Result<Arc<GroebnerBasis>, Error> {
        if let Some(hit) = self.cache.lock().expect("cache lock").get(ord) {
            return Ok(hit.clone());
        }
        let elements = groebner::buchberger(&self.gens, ord)?;
        if config::certify() {
            groebner::certify_basis(&self.gens, &elements, ord)?;
        }
        let basis = Arc::new(GroebnerBasis { order: ord.clone(), elements });
        let mut cache = self.cache.lock().expect("cache lock");
        Ok(cache.entry(ord.clone()).or_insert(basis).clone())
    }

    fn canonical_basis(&self) -> Result<Arc<GroebnerBasis>, Error> {
        self.groebner_basis(&MonomialOrder::grevlex())
    }

    /// Canonical presentation: reduced grevlex basis, formatted, sorted
    /// descending by leading monomial.
    pub fn canonical_generators(&self) -> Result<Vec<String>, Error> {
        let basis = self.canonical_basis()?;
        Ok(basis.elements().iter().rev().map(Polynomial::format_canonical).collect())
    }

    /// Remainder of `p` modulo the reduced basis under `ord`.
    pub fn normal_form(&self, p: &Polynomial, ord: &MonomialOrder) -> Result<Polynomial, Error> {
        self.check_poly_ring(p)?;
        let basis = self.groebner_basis(ord)?;
        groebner::normal_form(p, basis.elements(), ord)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, Error> {
        Ok(self.normal_form(p, &MonomialOrder::grevlex())?.is_zero())
    }

    pub fn is_subideal_of(&self, other: &Ideal) -> Result<bool, Error> {
        self.check_same_ring(other)?;
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Mathematical equality: identical reduced bases under a shared order.
    pub fn equals(&self, other: &Ideal) -> Result<bool, Error> {
        self.check_same_ring(other)?;
        let a = self.canonical_basis()?;
        let b = other.canonical_basis()?;
        Ok(a.elements() == b.elements())
    }

    pub fn is_unit_ideal(&self) -> Result<bool, Error> {
        let basis = self.canonical_basis()?;
        Ok(basis.elements().len() == 1 && basis.elements()[0].is_constant())
    }

    /// Ideal sum: generators concatenated.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal, Error> {
        self.check_same_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, gens))
    }

    pub fn with_generator(&self, p: &Polynomial) -> Result<Ideal, Error> {
        self.check_poly_ring(p)?;
        let mut gens = self.gens.clone();
        gens.push(p.clone());
        Ok(Ideal::new(&self.ring, gens))
    }

    /// Transport every generator to `target` by variable name.
    pub fn into_ring(&self, target: &Arc<Ring>) -> Result<Ideal, Error> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.into_ring(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(target, gens))
    }

    /// Apply `substitute(var, image)` to every generator.
    pub fn substituted(&self, var: &str, image: &Polynomial) -> Result<Ideal, Error> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.substitute(var, image))
            .collect::<Result<Vec<_>, _>>()?;
        let ring = gens.first().map(|g| g.ring().clone()).unwrap_or_else(|| {
            if self.ring.index_of(var).is_some() {
                image.ring().clone()
            } else {
                self.ring.clone()
            }
        });
        Ok(Ideal::new(&ring, gens))
    }

    /// Ideal quotient (I : f), computed as ((I ∩ (f)) divided through by f).
    pub fn quotient(&self, f: &Polynomial) -> Result<Ideal, Error> {
        self.check_poly_ring(f)?;
        if f.is_zero() {
            return Err(Error::ZeroDivisorArgument);
        }
        let principal = Ideal::new(&self.ring, vec![f.clone()]);
        let meet = self.intersect(&principal)?;
        let ord = MonomialOrder::grevlex();
        let mut gens = Vec::with_capacity(meet.gens.len());
        for g in meet.canonical_basis()?.elements() {
            let (qs, r) = groebner::divide(g, std::slice::from_ref(f), &ord)?;
            assert!(r.is_zero(), "intersection with (f) must be divisible by f");
            gens.push(qs.into_iter().next().expect("single divisor"));
        }
        Ok(Ideal::new(&self.ring, gens))
    }

    /// Saturation (I : f^∞) by the auxiliary-variable method: eliminate z
    /// from I + (1 − z·f).
    pub fn saturation(&self, f: &Polynomial) -> Result<Ideal, Error> {
        self.check_poly_ring(f)?;
        if f.is_zero() {
            return Err(Error::ZeroDivisorArgument);
        }
        let (ext, zi) = self.ring.appended("z");
        let mut gens = Vec::with_capacity(self.gens.len() + 1);
        for g in &self.gens {
            gens.push(g.into_ring(&ext)?);
        }
        let one = Polynomial::one(&ext);
        let zf = &Polynomial::var(&ext, zi) * &f.into_ring(&ext)?;
        gens.push(&one - &zf);
        let extended = Ideal::new(&ext, gens);
        let eliminated = extended.eliminate_indices(&[zi])?;
        eliminated.into_ring(&self.ring)
    }

    /// Intersection via the tag construction z·I + (1 − z)·J, eliminating z.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal, Error> {
        self.check_same_ring(other)?;
        let (ext, zi) = self.ring.appended("z");
        let z = Polynomial::var(&ext, zi);
        let one_minus_z = &Polynomial::one(&ext) - &z;
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for g in &self.gens {
            gens.push(&z * &g.into_ring(&ext)?);
        }
        for g in &other.gens {
            gens.push(&one_minus_z * &g.into_ring(&ext)?);
        }
        let extended = Ideal::new(&ext, gens);
        let eliminated = extended.eliminate_indices(&[zi])?;
        eliminated.into_ring(&self.ring)
    }

    /// Elimination ideal I ∩ k[remaining variables], by names.
    pub fn eliminate(&self, drop: &[&str]) -> Result<Ideal, Error> {
        let indices = drop
            .iter()
            .map(|name| {
                self.ring
                    .index_of(name)
                    .ok_or_else(|| Error::UnknownVariable { name: name.to_string() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.eliminate_indices(&indices)
    }

    /// Elimination by variable indices; the result lives in the smaller ring.
    pub fn eliminate_indices(&self, drop: &[usize]) -> Result<Ideal, Error> {
        let ord = MonomialOrder::eliminating(drop.iter().copied());
        let basis = self.groebner_basis(&ord)?;
        let small = self.ring.without(drop);
        let kept = basis
            .elements()
            .iter()
            .filter(|g| {
                g.terms().all(|(m, _)| drop.iter().all(|&i| m.exp(i) == 0))
            })
            .map(|g| g.into_ring(&small))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(&small, kept))
    }

    /// Vector-space dimension of ring/I, from the staircase of the grevlex
    /// basis. Infinite exactly when some variable has no pure power among the
    /// leading terms.
    pub fn colength(&self) -> Result<Colength, Error> {
        let basis = self.canonical_basis()?;
        let ord = basis.order().clone();
        if basis.is_empty() {
            // the zero ideal: finite only over the empty ring
            return Ok(if self.ring.arity() == 0 {
                Colength::Finite(1)
            } else {
                Colength::Infinite
            });
        }
        let leads: Vec<Monomial> = basis
            .elements()
            .iter()
            .map(|g| g.leading_term(&ord).map(|(m, _)| m))
            .collect::<Result<_, _>>()?;
        if leads.iter().any(Monomial::is_one) {
            // unit ideal: the quotient is the zero ring
            return Ok(Colength::Finite(0));
        }
        let n = self.ring.arity();
        let mut bounds = vec![None::<u32>; n];
        for lm in &leads {
            for i in 0..n {
                let e = lm.exp(i);
                if e > 0 && (0..n).all(|j| j == i || lm.exp(j) == 0) {
                    bounds[i] = Some(bounds[i].map_or(e, |b| b.min(e)));
                }
            }
        }
        if bounds.iter().any(Option::is_none) {
            return Ok(Colength::Infinite);
        }
        let bounds: Vec<u32> = bounds.into_iter().map(Option::unwrap).collect();
        // walk the finite box under the staircase with an odometer
        let mut exps = vec![0u32; n];
        let mut count: u64 = 0;
        loop {
            let m = Monomial::new(exps.clone());
            if !leads.iter().any(|lm| lm.divides(&m)) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return Ok(Colength::Finite(count));
                }
                exps[i] += 1;
                if exps[i] < bounds[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    /// Image ideal under the ring map sending variable `i` to `images[i]`.
    pub fn map_vars(&self, target: &Arc<Ring>, images: &[Polynomial]) -> Result<Ideal, Error> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.map_vars(target, images))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(target, gens))
    }
}

impl std::fmt::Display for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        if self.gens.is_empty() {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}
