//! Families over a base parameter with a marked divisor coordinate.
//!
//! A family lives in a ring (t, y, x₁..x_d): t is the base parameter, {y = 0}
//! cuts the divisor on the central fiber, and the xᵢ are directions along the
//! divisor. The module computes fibers and divisor images, tests relativeness
//! (no associated data on the divisor), performs the weighted substitution
//! y = tᵃw with its flat limit, locates the critical exponent a*, and handles
//! the node ring (y₁, y₂, x..)/(y₁y₂): perfectness, Tor¹ presentations,
//! gluing, and restriction.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::error::Error;
use crate::ideal::{Colength, Ideal};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::{integer, Polynomial};
use crate::ring::Ring;

/// What the flatness check could certify at construction time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlatCertificate {
    /// Both the special and a generic fiber are finite with this colength.
    ZeroDim { colength: u64 },
    /// Fibers are positive-dimensional; flatness is the caller's assertion.
    PositiveDim,
}

pub(crate) fn fresh_against(base: &str, avoid: &[&str]) -> String {
    let mut name = base.to_string();
    while avoid.contains(&name.as_str()) {
        name.push('_');
    }
    name
}

/// Substitute an integer value for one variable and drop it from the ring.
pub(crate) fn fiber_of(ideal: &Ideal, var: usize, value: i64) -> Result<Ideal, Error> {
    let ring = ideal.ring();
    let c = Polynomial::constant(ring, integer(value));
    let substituted = ideal.substituted(ring.var_name(var), &c)?;
    substituted.into_ring(&ring.without(&[var]))
}

/// Compare a special colength against a generic sample, re-sampling once at
/// the guard value when they disagree (the first sample can hit a bad
/// parameter value).
fn certify_colengths(
    special: Colength,
    generic: Colength,
    resample: impl FnOnce() -> Result<Colength, Error>,
) -> Result<Result<FlatCertificate, (String, String)>, Error> {
    let agree = |a: Colength, b: Colength| match (a, b) {
        (Colength::Finite(x), Colength::Finite(y)) => x == y,
        (Colength::Infinite, Colength::Infinite) => true,
        _ => false,
    };
    let witness = if agree(special, generic) {
        generic
    } else {
        let guard = resample()?;
        if agree(special, guard) {
            guard
        } else {
            return Ok(Err((special.to_string(), guard.to_string())));
        }
    };
    Ok(Ok(match witness {
        Colength::Finite(n) => FlatCertificate::ZeroDim { colength: n },
        Colength::Infinite => FlatCertificate::PositiveDim,
    }))
}

/// An ideal in (t, y, x₁..x_d) presenting a flat family over the t-line.
///
/// Construction reorders the ring so the parameter sits at index 0 and the
/// divisor coordinate at index 1, then certifies flatness for
/// zero-dimensional data by comparing fiber colengths (special against
/// generic, with one guarded re-sample). Positive-dimensional inputs are
/// accepted on the caller's assertion and carry a [`FlatCertificate::PositiveDim`]
/// marker.
#[derive(Debug, Clone)]
pub struct FamilyIdeal {
    ideal: Ideal,
    certificate: FlatCertificate,
}

impl FamilyIdeal {
    pub fn new(ideal: &Ideal, t: &str, y: &str) -> Result<FamilyIdeal, Error> {
        let ring = ideal.ring();
        let ti = ring
            .index_of(t)
            .ok_or_else(|| Error::UnknownVariable { name: t.to_string() })?;
        let yi = ring
            .index_of(y)
            .ok_or_else(|| Error::UnknownVariable { name: y.to_string() })?;
        if ti == yi {
            return Err(Error::MalformedFamily {
                detail: "parameter and divisor roles name the same variable".to_string(),
            });
        }
        let mut names: Vec<&str> = vec![ring.var_name(ti), ring.var_name(yi)];
        for (k, v) in ring.vars().iter().enumerate() {
            if k != ti && k != yi {
                names.push(v);
            }
        }
        let canonical = Ring::new(names)?;
        let ideal = ideal.into_ring(&canonical)?;

        let special = fiber_of(&ideal, 0, 0)?.colength()?;
        let generic = fiber_of(&ideal, 0, 1)?.colength()?;
        let certificate =
            match certify_colengths(special, generic, || fiber_of(&ideal, 0, 2)?.colength())? {
                Ok(cert) => cert,
                Err((fiber, generic)) => {
                    return Err(Error::FlatnessViolation { fiber, generic });
                }
            };
        Ok(FamilyIdeal { ideal, certificate })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.ideal.ring()
    }

    pub fn t_name(&self) -> &str {
        self.ring().var_name(0)
    }

    pub fn y_name(&self) -> &str {
        self.ring().var_name(1)
    }

    pub fn certificate(&self) -> FlatCertificate {
        self.certificate
    }

    /// Fiber over t = c, an ideal in (y, x..).
    pub fn fiber_at(&self, c: i64) -> Result<Ideal, Error> {
        fiber_of(&self.ideal, 0, c)
    }

    /// Fiber over t = 0, an ideal in (y, x..).
    pub fn fiber_at_zero(&self) -> Result<Ideal, Error> {
        fiber_of(&self.ideal, 0, 0)
    }

    /// Sampled generic fiber (t = 1), an ideal in (y, x..).
    pub fn generic_fiber(&self) -> Result<Ideal, Error> {
        fiber_of(&self.ideal, 0, 1)
    }

    /// Divisor image I^D in (t, x..): generator images under y ↦ 0.
    pub fn divisor_image(&self) -> Result<Ideal, Error> {
        fiber_of(&self.ideal, 1, 0)
    }

    /// Family-level relativeness test: the divisor image's fiber at t = 0
    /// equals its ideal of t-leading coefficients. Must agree with
    /// [`is_relative`] applied to [`Self::fiber_at_zero`].
    pub fn is_relative_family(&self) -> Result<bool, Error> {
        let image = self.divisor_image()?;
        let lhs = fiber_of(&image, 0, 0)?;
        let rhs = initial_ideal_t(&image, 0)?;
        lhs.equals(&rhs)
    }

    fn substitution_ring(&self) -> Result<(Arc<Ring>, String, String), Error> {
        let xs: Vec<&str> = self.ring().vars()[2..].iter().map(String::as_str).collect();
        let s = fresh_against("s", &xs);
        let mut avoid = xs.clone();
        avoid.push(&s);
        let w = fresh_against("w", &avoid);
        let mut names: Vec<&str> = vec![&s, &w];
        names.extend(&xs);
        Ok((Ring::new(names)?, s.clone(), w.clone()))
    }

    /// The substituted ideal I(a): images of the generators under t ↦ s^q,
    /// y ↦ s^p·w, in the ring (s, w, x..).
    pub fn weight_substitute(&self, a: WeightExponent) -> Result<Ideal, Error> {
        let (target, _, _) = self.substitution_ring()?;
        let s = Polynomial::var(&target, 0);
        let w = Polynomial::var(&target, 1);
        let mut images = vec![s.pow(a.q()), &s.pow(a.p()) * &w];
        for i in 2..self.ring().arity() {
            let name = self.ring().var_name(i);
            images.push(Polynomial::var(&target, target.index_of(name).expect("x kept")));
        }
        self.ideal.map_vars(&target, &images)
    }

    fn limit_record(&self, a: WeightExponent, enforce: bool) -> Result<LimitRecord, Error> {
        let substituted = self.weight_substitute(a)?;
        let s = Polynomial::var(substituted.ring(), 0);
        let saturated = substituted.saturation(&s)?;
        let limit = fiber_of(&saturated, 0, 0)?;
        let divisor_image_of_limit = fiber_of(&limit, 0, 0)?;
        let certificate = if enforce {
            let special = limit.colength()?;
            let generic = fiber_of(&saturated, 0, 1)?.colength()?;
            match certify_colengths(special, generic, || {
                fiber_of(&saturated, 0, 2)?.colength()
            })? {
                Ok(cert) => Some(cert),
                Err((limit, generic)) => {
                    return Err(Error::FlatnessCertificateFailure { limit, generic });
                }
            }
        } else {
            None
        };
        Ok(LimitRecord { exponent: a, substituted, saturated, limit, divisor_image_of_limit, certificate })
    }

    /// Weighted flat limit: saturate I(a) by s and record the fiber at s = 0
    /// together with its divisor image. Fails with
    /// [`Error::FlatnessCertificateFailure`] when the limit's colength does
    /// not match the saturated family's generic fiber (guarded re-sample at
    /// s = 2), so a certified record really is the flat limit.
    pub fn flat_limit(&self, a: WeightExponent) -> Result<LimitRecord, Error> {
        self.limit_record(a, true)
    }

    /// Same computation without the colength certificate; used by scans that
    /// probe exponents where the polynomial model drops escaping data.
    pub fn limit_uncertified(&self, a: WeightExponent) -> Result<LimitRecord, Error> {
        self.limit_record(a, false)
    }

    /// True when the limit at `a` is the pullback of the t-leading data of
    /// I^D, i.e. carries nothing beyond the divisor's own limit.
    pub fn is_trivial_limit(&self, a: WeightExponent) -> Result<bool, Error> {
        let record = self.limit_uncertified(a)?;
        let leading = initial_ideal_t(&self.divisor_image()?, 0)?;
        let pulled = pullback_from_divisor(&leading, record.limit.ring())?;
        record.limit.equals(&pulled)
    }

    /// Candidate walls for the critical exponent: positive ratios
    /// (α_t(u) − α_t(v)) / (α_y(v) − α_y(u)) over term pairs of each element
    /// of a Gröbner basis under a t-first order. The limit along the weight
    /// ray can only change at these values.
    pub fn wall_candidates(&self) -> Result<Vec<BigRational>, Error> {
        let ord = MonomialOrder::eliminating([0]);
        let basis = self.ideal.groebner_basis(&ord)?;
        let mut walls: BTreeSet<BigRational> = BTreeSet::new();
        for g in basis.elements() {
            let terms: Vec<&Monomial> = g.terms().map(|(m, _)| m).collect();
            for u in &terms {
                for v in &terms {
                    let (yu, yv) = (u.exp(1), v.exp(1));
                    if yv <= yu {
                        continue;
                    }
                    let dt = i64::from(u.exp(0)) - i64::from(v.exp(0));
                    if dt > 0 {
                        walls.insert(BigRational::new(
                            BigInt::from(dt),
                            BigInt::from(i64::from(yv - yu)),
                        ));
                    }
                }
            }
        }
        Ok(walls.into_iter().collect())
    }

    /// The unique exponent a* whose limit is relative to {w = 0} and is not
    /// the pullback of the divisor's t-leading data.
    ///
    /// Scans the candidate walls (in parallel; the result is selected by
    /// candidate order, not completion order), then hardens the answer with
    /// midpoint probes between consecutive walls and a supra-critical
    /// triviality probe at a* + 1. [`Error::NoEscape`] signals an already
    /// relative family; [`Error::CandidateExhaustion`] is the internal guard
    /// and cannot fire on flat input with relative generic fiber.
    pub fn critical_exponent(&self) -> Result<(WeightExponent, LimitRecord), Error> {
        if self.is_relative_family()? {
            return Err(Error::NoEscape);
        }
        let walls = self.wall_candidates()?;
        if walls.is_empty() {
            return Err(Error::CandidateExhaustion {
                detail: "no exponent walls in the generator support".to_string(),
            });
        }
        let leading = initial_ideal_t(&self.divisor_image()?, 0)?;
        let probe = |a: &BigRational| -> Result<(WeightExponent, LimitRecord, bool), Error> {
            let e = WeightExponent::from_rational(a)?;
            let record = self.limit_uncertified(e)?;
            let relative = is_relative(&record.limit, 0)?;
            let pulled = pullback_from_divisor(&leading, record.limit.ring())?;
            let trivial = record.limit.equals(&pulled)?;
            Ok((e, record, relative && !trivial))
        };

        let scanned: Vec<(WeightExponent, LimitRecord, bool)> =
            walls.par_iter().map(probe).collect::<Result<_, _>>()?;
        let mut hits = scanned.into_iter().filter(|(_, _, hit)| *hit);
        let (a_star, record) = match (hits.next(), hits.next()) {
            (Some((a, r, _)), None) => (a, r),
            (None, _) => {
                return Err(Error::CandidateExhaustion {
                    detail: "no candidate wall yields a relative, non-pullback limit".to_string(),
                });
            }
            (Some(_), Some((b, _, _))) => {
                return Err(Error::CandidateExhaustion {
                    detail: format!("multiple walls qualify, second at {b}"),
                });
            }
        };

        let midpoints: Vec<BigRational> = walls
            .windows(2)
            .map(|pair| (&pair[0] + &pair[1]) / BigRational::from(BigInt::from(2)))
            .collect();
        let mid_hits: Vec<bool> = midpoints
            .par_iter()
            .map(|m| probe(m).map(|(_, _, hit)| hit))
            .collect::<Result<_, _>>()?;
        if let Some(k) = mid_hits.iter().position(|hit| *hit) {
            return Err(Error::CandidateExhaustion {
                detail: format!("wall scan missed a wall near {}", midpoints[k]),
            });
        }

        let above = WeightExponent::from_rational(&(a_star.as_rational() + BigRational::one()))?;
        if !self.is_trivial_limit(above)? {
            return Err(Error::CandidateExhaustion {
                detail: "limit above the critical exponent is not the pullback".to_string(),
            });
        }
        Ok((a_star, record))
    }
}

/// A positive rational weight p/q in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightExponent {
    p: u64,
    q: u64,
}

impl WeightExponent {
    pub fn new(p: u64, q: u64) -> Result<WeightExponent, Error> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidExponent {
                detail: "weight exponent must be a positive rational".to_string(),
            });
        }
        Self::from_rational(&BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(a: &BigRational) -> Result<WeightExponent, Error> {
        if !a.is_positive() {
            return Err(Error::InvalidExponent {
                detail: format!("weight exponent {a} is not positive"),
            });
        }
        let p = a.numer().to_u64().ok_or_else(|| Error::InvalidExponent {
            detail: "weight exponent numerator does not fit in 64 bits".to_string(),
        })?;
        let q = a.denom().to_u64().ok_or_else(|| Error::InvalidExponent {
            detail: "weight exponent denominator does not fit in 64 bits".to_string(),
        })?;
        Ok(WeightExponent { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn as_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.p), BigInt::from(self.q))
    }
}

impl std::fmt::Display for WeightExponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

/// Everything computed for one weighted limit.
#[derive(Debug, Clone)]
pub struct LimitRecord {
    pub exponent: WeightExponent,
    /// I(a) in (s, w, x..).
    pub substituted: Ideal,
    /// Ĩ(a) = (I(a) : s^∞).
    pub saturated: Ideal,
    /// Ĩ(a)₀, the fiber of the saturation at s = 0, in (w, x..).
    pub limit: Ideal,
    /// The limit's image under w ↦ 0, in (x..).
    pub divisor_image_of_limit: Ideal,
    /// Present when the limit was certified flat (colength match).
    pub certificate: Option<FlatCertificate>,
}

/// The t-adic valuation of `b` and its leading coefficient: the unique n with
/// b = b₀tⁿ + (terms of higher t-power), b₀ free of t.
pub fn t_leading_coefficient(b: &Polynomial, t: usize) -> Result<(u32, Polynomial), Error> {
    if b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = b.terms().map(|(m, _)| m.exp(t)).min().expect("nonzero");
    let small = b.ring().without(&[t]);
    let tn = Monomial::var(b.ring().arity(), t, n);
    let mut terms = std::collections::BTreeMap::new();
    for (m, c) in b.terms() {
        if m.exp(t) == n {
            let reduced = m.div(&tn).expect("minimal t-power divides");
            terms.insert(reduced.project(&[t]), c.clone());
        }
    }
    Ok((n, Polynomial::from_terms(&small, terms)))
}

/// The ideal of t-leading coefficients of J ⊂ k[t, x..]: the fiber at t = 0
/// of the saturation (J : t^∞), in (x..).
pub fn initial_ideal_t(j: &Ideal, t: usize) -> Result<Ideal, Error> {
    let tv = Polynomial::var(j.ring(), t);
    let saturated = j.saturation(&tv)?;
    fiber_of(&saturated, t, 0)
}

/// Relativeness with respect to the divisor {var = 0}: (I : var) = I, i.e.
/// the divisor coordinate is a nonzerodivisor on the quotient.
pub fn is_relative(i: &Ideal, divisor: usize) -> Result<bool, Error> {
    let y = Polynomial::var(i.ring(), divisor);
    let q = i.quotient(&y)?;
    q.equals(i)
}

/// View an ideal of the divisor ring (x..) in an extension (w, x..): same
/// generators, one more variable.
pub fn pullback_from_divisor(k: &Ideal, target: &Arc<Ring>) -> Result<Ideal, Error> {
    k.into_ring(target)
}

/// An ideal J of (y₁, y₂, x..) containing y₁y₂, i.e. an ideal of the node
/// ring k[y₁, y₂, x..]/(y₁y₂).
#[derive(Debug, Clone)]
pub struct NodeIdeal {
    ideal: Ideal,
}

impl NodeIdeal {
    /// Reorders the ring to (y₁, y₂, x..) and checks the defining invariant
    /// y₁y₂ ∈ J.
    pub fn new(ideal: &Ideal, y1: &str, y2: &str) -> Result<NodeIdeal, Error> {
        let ring = ideal.ring();
        let i1 = ring
            .index_of(y1)
            .ok_or_else(|| Error::UnknownVariable { name: y1.to_string() })?;
        let i2 = ring
            .index_of(y2)
            .ok_or_else(|| Error::UnknownVariable { name: y2.to_string() })?;
        if i1 == i2 {
            return Err(Error::InvalidRing {
                detail: "the two node branches name the same variable".to_string(),
            });
        }
        let mut names: Vec<&str> = vec![ring.var_name(i1), ring.var_name(i2)];
        for (k, v) in ring.vars().iter().enumerate() {
            if k != i1 && k != i2 {
                names.push(v);
            }
        }
        let canonical = Ring::new(names)?;
        let ideal = ideal.into_ring(&canonical)?;
        let node = &Polynomial::var(&canonical, 0) * &Polynomial::var(&canonical, 1);
        if !ideal.contains(&node)? {
            return Err(Error::NotNodeIdeal);
        }
        Ok(NodeIdeal { ideal })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.ideal.ring()
    }

    pub fn y_name(&self, component: u8) -> &str {
        assert!(component == 1 || component == 2, "component must be 1 or 2");
        self.ring().var_name(usize::from(component) - 1)
    }

    /// Presentation of Tor¹ against the chosen branch: the pair
    /// ((J : y_other), J + (y_component)). The Tor vanishes exactly when the
    /// first ideal is contained in the second.
    pub fn tor1(&self, component: u8) -> Result<(Ideal, Ideal), Error> {
        assert!(component == 1 || component == 2, "component must be 1 or 2");
        let yc = Polynomial::var(self.ring(), usize::from(component) - 1);
        let yo = Polynomial::var(self.ring(), usize::from(3 - component) - 1);
        Ok((self.ideal.quotient(&yo)?, self.ideal.with_generator(&yc)?))
    }

    /// Perfectness along the node: (J : y₁) ⊆ J + (y₂) and symmetrically.
    /// Equivalent to both Tor¹ presentations vanishing.
    pub fn is_perfect(&self) -> Result<bool, Error> {
        let y1 = Polynomial::var(self.ring(), 0);
        let y2 = Polynomial::var(self.ring(), 1);
        let q1 = self.ideal.quotient(&y1)?;
        if !q1.is_subideal_of(&self.ideal.with_generator(&y2)?)? {
            return Ok(false);
        }
        let q2 = self.ideal.quotient(&y2)?;
        q2.is_subideal_of(&self.ideal.with_generator(&y1)?)
    }

    /// Restriction to one branch: generator images under y_other ↦ 0, in
    /// (y_component, x..). Only defined for perfect ideals; otherwise the
    /// restriction has torsion and is refused.
    pub fn restrict(&self, component: u8) -> Result<Ideal, Error> {
        assert!(component == 1 || component == 2, "component must be 1 or 2");
        if !self.is_perfect()? {
            return Err(Error::NotPerfect);
        }
        let other = usize::from(3 - component) - 1;
        fiber_of(&self.ideal, other, 0)
    }
}

/// Glue ideals on the two branches of a node into one ideal of the node ring.
///
/// Both inputs must be relative to their divisor and induce the same ideal on
/// it. The result is intersect(I₁ + (y₂), I₂ + (y₁)) with y₁y₂ adjoined; it
/// is perfect and restricts back to the inputs.
pub fn glue_node(i1: &Ideal, y1: &str, i2: &Ideal, y2: &str) -> Result<NodeIdeal, Error> {
    let r1 = i1.ring();
    let r2 = i2.ring();
    let d1 = r1
        .index_of(y1)
        .ok_or_else(|| Error::UnknownVariable { name: y1.to_string() })?;
    let d2 = r2
        .index_of(y2)
        .ok_or_else(|| Error::UnknownVariable { name: y2.to_string() })?;
    let xs1: Vec<&str> = r1
        .vars()
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != d1)
        .map(|(_, v)| v.as_str())
        .collect();
    let xs2: Vec<&str> = r2
        .vars()
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != d2)
        .map(|(_, v)| v.as_str())
        .collect();
    if xs1 != xs2 || y1 == y2 {
        return Err(Error::RingMismatch);
    }

    let mut names1: Vec<&str> = vec![y1];
    names1.extend(&xs1);
    let c1 = i1.into_ring(&Ring::new(names1)?)?;
    let mut names2: Vec<&str> = vec![y2];
    names2.extend(&xs2);
    let c2 = i2.into_ring(&Ring::new(names2)?)?;

    if !is_relative(&c1, 0)? || !is_relative(&c2, 0)? {
        return Err(Error::NotRelativeInput);
    }
    let rest1 = fiber_of(&c1, 0, 0)?;
    let rest2 = fiber_of(&c2, 0, 0)?;
    if !rest1.equals(&rest2)? {
        return Err(Error::IncompatibleDivisorData);
    }

    let mut names: Vec<&str> = vec![y1, y2];
    names.extend(&xs1);
    let node_ring = Ring::new(names)?;
    let y1v = Polynomial::var(&node_ring, 0);
    let y2v = Polynomial::var(&node_ring, 1);
    let lift1 = c1.into_ring(&node_ring)?.with_generator(&y2v)?;
    let lift2 = c2.into_ring(&node_ring)?.with_generator(&y1v)?;
    let meet = lift1.intersect(&lift2)?;
    let glued = meet.with_generator(&(&y1v * &y2v))?;
    NodeIdeal::new(&glued, y1, y2)
}

/// Re-read an ideal of the node ring as a family: y₁ takes the parameter
/// role and y₂ the divisor role, realizing the substitution y₂ = y₁^c·w after
/// base change. Construction failures (unknown roles, fiber colength jumps)
/// surface as [`Error::MalformedNodeFamily`].
pub fn node_family_parameterize(g: &Ideal, y1: &str, y2: &str) -> Result<FamilyIdeal, Error> {
    FamilyIdeal::new(g, y1, y2).map_err(|e| Error::MalformedNodeFamily { detail: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn family(gens: &[&str]) -> FamilyIdeal {
        let ring = Ring::new(vec!["t", "y", "x"]).unwrap();
        FamilyIdeal::new(&Ideal::parse(&ring, gens).unwrap(), "t", "y").unwrap()
    }

    fn ideal(ring: &Arc<Ring>, gens: &[&str]) -> Ideal {
        Ideal::parse(ring, gens).unwrap()
    }

    fn assert_ideal_eq(actual: &Ideal, gens: &[&str]) {
        let expect = Ideal::parse(actual.ring(), gens).unwrap();
        assert!(
            actual.equals(&expect).unwrap(),
            "expected {expect}, got {actual}"
        );
    }

    #[test]
    fn fibers_and_divisor_images() {
        let f = family(&["y - t", "x"]);
        assert_ideal_eq(&f.fiber_at_zero().unwrap(), &["y", "x"]);
        assert_ideal_eq(&f.divisor_image().unwrap(), &["t", "x"]);

        let g = family(&["y^2 - t", "x"]);
        assert_ideal_eq(&g.fiber_at_zero().unwrap(), &["y^2", "x"]);

        let h = family(&["y - t*x"]);
        assert_ideal_eq(&h.fiber_at_zero().unwrap(), &["y"]);
        assert_ideal_eq(&h.divisor_image().unwrap(), &["t*x"]);

        let k = family(&["y - 1 + t", "x"]);
        assert_ideal_eq(&k.divisor_image().unwrap(), &["t - 1", "x"]);
        assert!(!k.divisor_image().unwrap().is_unit_ideal().unwrap());
    }

    #[test]
    fn t_leading_coefficients() {
        let ring = Ring::new(vec!["t", "w", "x"]).unwrap();
        let p = parse_polynomial("t^2*(w^2 - 1)", &ring).unwrap();
        let (n, b0) = t_leading_coefficient(&p, 0).unwrap();
        assert_eq!(n, 2);
        assert_eq!(b0.format_canonical(), "w^2 - 1");

        let x = parse_polynomial("x", &ring).unwrap();
        let (n, b0) = t_leading_coefficient(&x, 0).unwrap();
        assert_eq!((n, b0.format_canonical().as_str()), (0, "x"));

        let mixed = parse_polynomial("t*x + t^2*w", &ring).unwrap();
        let (n, b0) = t_leading_coefficient(&mixed, 0).unwrap();
        assert_eq!((n, b0.format_canonical().as_str()), (1, "x"));

        assert!(matches!(
            t_leading_coefficient(&Polynomial::zero(&ring), 0),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn initial_ideal_examples() {
        let ring = Ring::new(vec!["t", "x"]).unwrap();
        assert!(initial_ideal_t(&ideal(&ring, &["t", "x"]), 0).unwrap().is_unit_ideal().unwrap());
        assert_ideal_eq(&initial_ideal_t(&ideal(&ring, &["t*x"]), 0).unwrap(), &["x"]);
        assert_ideal_eq(&initial_ideal_t(&ideal(&ring, &["x^2", "t*x"]), 0).unwrap(), &["x"]);
    }

    #[test]
    fn relativeness_examples() {
        let ring = Ring::new(vec!["y", "x"]).unwrap();
        assert!(!is_relative(&ideal(&ring, &["y", "x"]), 0).unwrap());
        assert!(is_relative(&ideal(&ring, &["y - 1", "x"]), 0).unwrap());
        assert!(is_relative(&ideal(&ring, &["x"]), 0).unwrap());
    }

    #[test]
    fn relative_family_examples() {
        assert!(!family(&["y - t", "x"]).is_relative_family().unwrap());
        assert!(family(&["y - 1 + t", "x"]).is_relative_family().unwrap());
        assert!(!family(&["y - t*x"]).is_relative_family().unwrap());
    }

    #[test]
    fn family_and_fiber_tests_agree_on_pinned_families() {
        for gens in [
            vec!["y - t", "x"],
            vec!["y - 1 + t", "x"],
            vec!["y^2 - t", "x"],
            vec!["(y - t)*(y - t^2)", "x"],
            vec!["(y - 1)*(y - t)", "x"],
        ] {
            let f = family(&gens);
            let direct = is_relative(&f.fiber_at_zero().unwrap(), 0).unwrap();
            assert_eq!(
                f.is_relative_family().unwrap(),
                direct,
                "criterion mismatch on {gens:?}"
            );
        }
    }

    #[test]
    fn weight_substitution_examples() {
        let f = family(&["y - t", "x"]);
        let sub1 = f.weight_substitute(WeightExponent::new(1, 1).unwrap()).unwrap();
        assert_ideal_eq(&sub1, &["s*w - s", "x"]);
        let sub2 = f.weight_substitute(WeightExponent::new(2, 1).unwrap()).unwrap();
        assert_ideal_eq(&sub2, &["s^2*w - s", "x"]);

        let g = family(&["y^2 - t", "x"]);
        let sub = g.weight_substitute(WeightExponent::new(1, 2).unwrap()).unwrap();
        assert_ideal_eq(&sub, &["s^2*w^2 - s^2", "x"]);
    }

    #[test]
    fn flat_limit_examples() {
        let f = family(&["y - t", "x"]);
        let r1 = f.flat_limit(WeightExponent::new(1, 1).unwrap()).unwrap();
        assert_ideal_eq(&r1.limit, &["w - 1", "x"]);
        assert_eq!(r1.certificate, Some(FlatCertificate::ZeroDim { colength: 1 }));

        let g = family(&["y^2 - t", "x"]);
        let r2 = g.flat_limit(WeightExponent::new(1, 2).unwrap()).unwrap();
        assert_ideal_eq(&r2.limit, &["w^2 - 1", "x"]);

        // above the wall the point escapes to s = ∞: the uncertified record
        // sees the empty limit, the certified call refuses it
        let r3 = f.limit_uncertified(WeightExponent::new(2, 1).unwrap()).unwrap();
        assert!(r3.limit.is_unit_ideal().unwrap());
        assert_ideal_eq(&r3.saturated, &["s*w - 1", "x"]);
        assert!(matches!(
            f.flat_limit(WeightExponent::new(2, 1).unwrap()),
            Err(Error::FlatnessCertificateFailure { .. })
        ));
    }

    #[test]
    fn trivial_limit_examples() {
        let f = family(&["y - t", "x"]);
        assert!(f.is_trivial_limit(WeightExponent::new(2, 1).unwrap()).unwrap());
        assert!(!f.is_trivial_limit(WeightExponent::new(1, 1).unwrap()).unwrap());
        let h = family(&["y - t*x"]);
        assert!(h.is_trivial_limit(WeightExponent::new(2, 1).unwrap()).unwrap());
    }

    #[test]
    fn critical_exponent_regressions() {
        let f = family(&["y - t", "x"]);
        let (a, record) = f.critical_exponent().unwrap();
        assert_eq!(a, WeightExponent::new(1, 1).unwrap());
        assert_ideal_eq(&record.limit, &["w - 1", "x"]);

        let g = family(&["y^2 - t", "x"]);
        let (a, record) = g.critical_exponent().unwrap();
        assert_eq!(a, WeightExponent::new(1, 2).unwrap());
        assert_ideal_eq(&record.limit, &["w^2 - 1", "x"]);

        let h = family(&["y - t*x"]);
        let (a, record) = h.critical_exponent().unwrap();
        assert_eq!(a, WeightExponent::new(1, 1).unwrap());
        assert_ideal_eq(&record.limit, &["w - x"]);

        let relative = family(&["y - 1 + t", "x"]);
        assert!(matches!(relative.critical_exponent(), Err(Error::NoEscape)));
    }

    #[test]
    fn multi_rate_family_walls_and_exponent() {
        let f = family(&["(y - t)*(y - t^2)", "x"]);
        let walls = f.wall_candidates().unwrap();
        let expect: Vec<BigRational> = [(1, 1), (3, 2), (2, 1)]
            .iter()
            .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
            .collect();
        assert_eq!(walls, expect);
        let (a, record) = f.critical_exponent().unwrap();
        assert_eq!(a, WeightExponent::new(2, 1).unwrap());
        assert_ideal_eq(&record.limit, &["w - 1", "x"]);
    }

    #[test]
    fn node_ideal_construction_and_perfectness() {
        let ring = Ring::new(vec!["y1", "y2", "x"]).unwrap();
        let at_node = NodeIdeal::new(&ideal(&ring, &["y1", "y2", "x"]), "y1", "y2").unwrap();
        assert!(!at_node.is_perfect().unwrap());
        let off = NodeIdeal::new(&ideal(&ring, &["y1 - 1", "y2", "x"]), "y1", "y2").unwrap();
        assert!(off.is_perfect().unwrap());
        let curve = NodeIdeal::new(&ideal(&ring, &["x", "y1*y2"]), "y1", "y2").unwrap();
        assert!(curve.is_perfect().unwrap());

        assert!(matches!(
            NodeIdeal::new(&ideal(&ring, &["y1 - 1", "x"]), "y1", "y2"),
            Err(Error::NotNodeIdeal)
        ));
    }

    #[test]
    fn tor1_presentations() {
        let ring = Ring::new(vec!["y1", "y2", "x"]).unwrap();
        let at_node = NodeIdeal::new(&ideal(&ring, &["y1", "y2", "x"]), "y1", "y2").unwrap();
        let (q, sum) = at_node.tor1(1).unwrap();
        assert!(q.is_unit_ideal().unwrap());
        assert!(!q.is_subideal_of(&sum).unwrap());

        let off = NodeIdeal::new(&ideal(&ring, &["y1 - 1", "y2", "x"]), "y1", "y2").unwrap();
        let (q, sum) = off.tor1(1).unwrap();
        assert!(q.is_subideal_of(&sum).unwrap());
        assert!(q.equals(&sum).unwrap());

        let curve = NodeIdeal::new(&ideal(&ring, &["x", "y1*y2"]), "y1", "y2").unwrap();
        for c in [1, 2] {
            let (q, sum) = curve.tor1(c).unwrap();
            assert!(q.is_subideal_of(&sum).unwrap(), "component {c}");
        }
    }

    #[test]
    fn glue_and_restrict_round_trip() {
        let r1 = Ring::new(vec!["y1", "x"]).unwrap();
        let r2 = Ring::new(vec!["y2", "x"]).unwrap();

        let both_unit = glue_node(&Ideal::unit(&r1), "y1", &Ideal::unit(&r2), "y2").unwrap();
        assert!(both_unit.ideal().is_unit_ideal().unwrap());

        let i1 = ideal(&r1, &["y1 - 1", "x"]);
        let i2 = ideal(&r2, &["y2 - 2", "x"]);
        let glued = glue_node(&i1, "y1", &i2, "y2").unwrap();
        assert!(glued.is_perfect().unwrap());
        assert_eq!(glued.ideal().colength().unwrap(), Colength::Finite(2));
        assert!(glued.restrict(1).unwrap().equals(&i1).unwrap());
        assert!(glued.restrict(2).unwrap().equals(&i2).unwrap());

        let c1 = ideal(&r1, &["x - y1"]);
        let c2 = ideal(&r2, &["x"]);
        let curve = glue_node(&c1, "y1", &c2, "y2").unwrap();
        assert!(curve.is_perfect().unwrap());
        assert!(curve.restrict(1).unwrap().equals(&c1).unwrap());
        assert!(curve.restrict(2).unwrap().equals(&c2).unwrap());

        // divisor data (x) vs (x - 1): not gluable
        let j2 = ideal(&r2, &["x - 1 - y2"]);
        assert!(matches!(
            glue_node(&c1, "y1", &j2, "y2"),
            Err(Error::IncompatibleDivisorData)
        ));
        // non-relative input refused
        let on_divisor = ideal(&r1, &["y1", "x"]);
        assert!(matches!(
            glue_node(&on_divisor, "y1", &c2, "y2"),
            Err(Error::NotRelativeInput)
        ));
    }

    #[test]
    fn restriction_requires_perfectness() {
        let ring = Ring::new(vec!["y1", "y2", "x"]).unwrap();
        let at_node = NodeIdeal::new(&ideal(&ring, &["y1", "y2", "x"]), "y1", "y2").unwrap();
        assert!(matches!(at_node.restrict(1), Err(Error::NotPerfect)));

        let curve = NodeIdeal::new(&ideal(&ring, &["x", "y1*y2"]), "y1", "y2").unwrap();
        assert_ideal_eq(&curve.restrict(1).unwrap(), &["x"]);
        let off = NodeIdeal::new(&ideal(&ring, &["y1 - 1", "y2", "x"]), "y1", "y2").unwrap();
        assert!(off.restrict(2).unwrap().is_unit_ideal().unwrap());
    }

    #[test]
    fn node_family_exponents() {
        let ring = Ring::new(vec!["y1", "y2", "x"]).unwrap();
        let sym = node_family_parameterize(&ideal(&ring, &["y2 - y1", "x"]), "y1", "y2").unwrap();
        let (a, record) = sym.critical_exponent().unwrap();
        assert_eq!(a, WeightExponent::new(1, 1).unwrap());
        assert_ideal_eq(&record.limit, &["w - 1", "x"]);

        let tangent =
            node_family_parameterize(&ideal(&ring, &["y2 - y1^2", "x"]), "y1", "y2").unwrap();
        let (a, record) = tangent.critical_exponent().unwrap();
        assert_eq!(a, WeightExponent::new(2, 1).unwrap());
        assert_ideal_eq(&record.limit, &["w - 1", "x"]);

        let branch =
            node_family_parameterize(&ideal(&ring, &["y2^2 - y1", "x"]), "y1", "y2").unwrap();
        let (a, record) = branch.critical_exponent().unwrap();
        assert_eq!(a, WeightExponent::new(1, 2).unwrap());
        assert_ideal_eq(&record.limit, &["w^2 - 1", "x"]);

        assert!(matches!(
            node_family_parameterize(&ideal(&ring, &["y2 - y1", "x"]), "y1", "zz"),
            Err(Error::MalformedNodeFamily { .. })
        ));
    }

    #[test]
    fn weight_exponent_forms() {
        assert_eq!(WeightExponent::new(2, 4).unwrap(), WeightExponent::new(1, 2).unwrap());
        assert_eq!(WeightExponent::new(1, 2).unwrap().to_string(), "1/2");
        assert_eq!(WeightExponent::new(3, 1).unwrap().to_string(), "3");
        assert!(matches!(WeightExponent::new(0, 1), Err(Error::InvalidExponent { .. })));
        let neg = BigRational::new(BigInt::from(-1), BigInt::from(2));
        assert!(matches!(
            WeightExponent::from_rational(&neg),
            Err(Error::InvalidExponent { .. })
        ));
    }

    #[test]
    fn flatness_violation_detected() {
        let ring = Ring::new(vec!["t", "y", "x"]).unwrap();
        // t-torsion: the fiber at t=0 is the whole y-line, generic fibers a point
        let jumpy = Ideal::parse(&ring, &["t*y", "x"]).unwrap();
        assert!(matches!(
            FamilyIdeal::new(&jumpy, "t", "y"),
            Err(Error::FlatnessViolation { .. })
        ));
        // a flat pair of points passes even though the fiber at t=0 is fat
        let flat = Ideal::parse(&ring, &["y^2 - t*y", "x"]).unwrap();
        let f = FamilyIdeal::new(&flat, "t", "y").unwrap();
        assert_eq!(f.certificate(), FlatCertificate::ZeroDim { colength: 2 });
    }

    #[test]
    fn sandwich_and_alarge_properties() {
        let f = family(&["(y - t)*(y - t^2)", "x"]);
        let leading = initial_ideal_t(&f.divisor_image().unwrap(), 0).unwrap();
        let image0 = fiber_of(&f.divisor_image().unwrap(), 0, 0).unwrap();
        let mut previous: Option<Ideal> = None;
        for (p, q) in [(1u64, 2u64), (1, 1), (3, 2), (2, 1), (3, 1)] {
            let record = f.limit_uncertified(WeightExponent::new(p, q).unwrap()).unwrap();
            let image = record.divisor_image_of_limit;
            assert!(image0.is_subideal_of(&image).unwrap(), "below {p}/{q}");
            assert!(image.is_subideal_of(&leading).unwrap(), "above {p}/{q}");
            if let Some(prev) = previous {
                assert!(prev.is_subideal_of(&image).unwrap(), "monotone at {p}/{q}");
            }
            previous = Some(image);
        }
    }
}
