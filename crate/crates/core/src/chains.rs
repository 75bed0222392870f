//! Chains of components and the iterated reduction driver.
//!
//! A chain is the central fiber of an expanded degeneration: the original
//! component Y (ring (y, x..)) followed by bubbles Δ₁..Δₙ, each handled in
//! its affine chart k[w_k, x..]. In chart k the previous component sits at
//! w_k = ∞ and the next one (or the open end) at w_k = 0; the far divisor is
//! inspected through the substitution w_k = 1/v without materializing a
//! second chart ring. The driver repeats the weighted-limit step of
//! [`crate::degeneration`]: land the fastest-escaping points on a new bubble,
//! split them off, and push what is still moving into the next chart.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::degeneration::{
    fiber_of, fresh_against, is_relative, FamilyIdeal, FlatCertificate, LimitRecord,
    WeightExponent,
};
use crate::error::Error;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;

/// Central-fiber data on a chain Y ∪ Δ₁ ∪ ⋯ ∪ Δₙ with an open end after Δₙ.
///
/// Validated by [`build_chain`]: every component is relative at its
/// distinguished divisors and adjacent components induce the same ideal on
/// their shared divisor.
#[derive(Debug, Clone)]
pub struct ChainIdeal {
    components: Vec<Ideal>,
    end_divisor_data: Ideal,
}

impl ChainIdeal {
    /// All components, index 0 on Y and index k ≥ 1 on Δ_k.
    pub fn components(&self) -> &[Ideal] {
        &self.components
    }

    /// The induced ideal on the divisor at the open end, in (x..).
    pub fn end_divisor_data(&self) -> &Ideal {
        &self.end_divisor_data
    }

    /// Number of bubble components Δ_k.
    pub fn length(&self) -> usize {
        self.components.len() - 1
    }
}

/// Homogenize `g` in its chart coordinate: v^{deg_w g}·g(1/v, x..), written
/// in `chart` (same arity, first variable v).
fn g_infinity(g: &Polynomial, chart: &Arc<Ring>) -> Polynomial {
    let d = g.degree_in(0).expect("basis elements are nonzero");
    let mut terms = BTreeMap::new();
    for (m, c) in g.terms() {
        let mut exps = m.exps().to_vec();
        exps[0] = d - exps[0];
        terms.insert(Monomial::new(exps), c.clone());
    }
    Polynomial::from_terms(chart, terms)
}

/// The component's ideal in the far chart v = 1/w: homogenizations of a
/// Gröbner basis under a w-first order. The far divisor is {v = 0}.
fn far_chart(component: &Ideal) -> Result<Ideal, Error> {
    let ring = component.ring();
    let xs: Vec<&str> = ring.vars()[1..].iter().map(String::as_str).collect();
    let v = fresh_against("v", &xs);
    let mut names: Vec<&str> = vec![&v];
    names.extend(&xs);
    let chart = Ring::new(names)?;
    let basis = component.groebner_basis(&MonomialOrder::eliminating([0]))?;
    let gens = basis.elements().iter().map(|g| g_infinity(g, &chart)).collect();
    Ok(Ideal::new(&chart, gens))
}

/// The ideal a component induces on its far divisor (toward the previous
/// component), in (x..): the top-coefficient data at w = ∞.
pub fn far_divisor_image(component: &Ideal) -> Result<Ideal, Error> {
    fiber_of(&far_chart(component)?, 0, 0)
}

/// The ideal a component induces on its near divisor {w = 0} (toward the
/// next component or the open end), in (x..).
pub fn near_divisor_image(component: &Ideal) -> Result<Ideal, Error> {
    fiber_of(component, 0, 0)
}

/// Assemble and validate a chain.
///
/// Component 0 lives in (y, x..), component k ≥ 1 in (w_k, x..); all rings
/// must share the x-part, which is also the ring of `end_data`. Checks, in
/// order: relativeness of every component at each of its distinguished
/// divisors ([`Error::NotRelative`] with the component index), equality of
/// the shared-divisor restrictions ([`Error::DivisorMismatch`] with the index
/// of the component on the Y side of the offending divisor), and the open
/// end against `end_data` (reported as a mismatch at the last index).
pub fn build_chain(components: &[Ideal], end_data: &Ideal) -> Result<ChainIdeal, Error> {
    if components.is_empty() {
        return Err(Error::LengthMismatch { expected: 1, got: 0 });
    }
    let first = components[0].ring();
    if first.arity() == 0 {
        return Err(Error::RingMismatch);
    }
    let xs = &first.vars()[1..];
    for c in components {
        let ring = c.ring();
        if ring.arity() == 0 || &ring.vars()[1..] != xs {
            return Err(Error::RingMismatch);
        }
    }
    if end_data.ring().vars() != xs {
        return Err(Error::RingMismatch);
    }

    for (k, c) in components.iter().enumerate() {
        if !is_relative(c, 0)? {
            return Err(Error::NotRelative(k));
        }
        if k >= 1 && !is_relative(&far_chart(c)?, 0)? {
            return Err(Error::NotRelative(k));
        }
    }
    for k in 1..components.len() {
        let outgoing = near_divisor_image(&components[k - 1])?;
        let incoming = far_divisor_image(&components[k])?;
        if !outgoing.equals(&incoming)? {
            return Err(Error::DivisorMismatch(k - 1));
        }
    }
    let last = components.len() - 1;
    if !near_divisor_image(&components[last])?.equals(end_data)? {
        return Err(Error::DivisorMismatch(last));
    }
    Ok(ChainIdeal { components: components.to_vec(), end_divisor_data: end_data.clone() })
}

/// No bubble carries data pulled back from its own divisor: a component
/// equal to q*(its near-divisor image) is a trivial insert and the chain is
/// unstable (its automorphism group is positive-dimensional).
pub fn is_stable(chain: &ChainIdeal) -> Result<bool, Error> {
    for c in &chain.components()[1..] {
        let image = near_divisor_image(c)?;
        if c.equals(&image.into_ring(c.ring())?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An element (σ₁, …, σₙ) of the dilation group G[n] acting on a length-n
/// chain, one nonzero rational per bubble.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    sigma: Vec<BigRational>,
}

impl GroupElement {
    pub fn new(sigma: Vec<BigRational>) -> Result<GroupElement, Error> {
        for (index, s) in sigma.iter().enumerate() {
            if s.is_zero() {
                return Err(Error::InvalidGroupElement { index });
            }
        }
        Ok(GroupElement { sigma })
    }

    pub fn identity(n: usize) -> GroupElement {
        GroupElement { sigma: vec![BigRational::one(); n] }
    }

    pub fn sigma(&self) -> &[BigRational] {
        &self.sigma
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    /// The induced action (σ₁t₁, σ₁⁻¹σ₂t₂, …, σₙ⁻¹tₙ₊₁) on the n+1 base
    /// coordinates. Their product is t₁⋯tₙ₊₁ again: the element acts over
    /// the base, and the telescoping identity is asserted.
    pub fn base_coefficients(&self) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(self.sigma.len() + 1);
        let mut prev = BigRational::one();
        for s in &self.sigma {
            out.push(s / &prev);
            prev = s.clone();
        }
        out.push(prev.recip());
        let product: BigRational = out.iter().product();
        assert!(product.is_one(), "base coefficients must telescope to 1");
        out
    }
}

/// Act on a chain: bubble k is replaced by its pullback under the dilation
/// w_k ↦ σ_k⁻¹·w_k; Y, the end data, and both divisors of every bubble are
/// fixed. The result is re-validated.
pub fn apply_group_element(chain: &ChainIdeal, g: &GroupElement) -> Result<ChainIdeal, Error> {
    if g.len() != chain.length() {
        return Err(Error::LengthMismatch { expected: chain.length(), got: g.len() });
    }
    g.base_coefficients();
    let mut components = vec![chain.components()[0].clone()];
    for (c, s) in chain.components()[1..].iter().zip(g.sigma()) {
        let ring = c.ring().clone();
        let mut images = vec![Polynomial::var(&ring, 0).scale(&s.recip())];
        for i in 1..ring.arity() {
            images.push(Polynomial::var(&ring, i));
        }
        components.push(c.map_vars(&ring, &images)?);
    }
    build_chain(&components, chain.end_divisor_data())
}

/// One landing of the reduction driver.
#[derive(Debug, Clone)]
pub struct ReductionStep {
    /// Index of the bubble this step inserted (1-based).
    pub component: usize,
    /// Step exponent in the chart the step ran in.
    pub exponent: WeightExponent,
    /// Base-change degree of this step (the exponent's denominator).
    pub base_change: u64,
    /// Exponent on the original base: replaying the original family at this
    /// weight reproduces `record.limit` exactly.
    pub cumulative_exponent: BigRational,
    pub record: LimitRecord,
}

/// Full log of a reduction run.
#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    /// Product of the per-step base-change degrees.
    pub total_base_change: u64,
}

/// (I : J^∞) computed by iterating the generator-wise quotient until stable.
fn saturate_by_ideal(i: &Ideal, j: &Ideal) -> Result<Ideal, Error> {
    if j.generators().is_empty() {
        return Ok(Ideal::unit(i.ring()));
    }
    let mut current = i.clone();
    loop {
        let mut next: Option<Ideal> = None;
        for f in j.generators() {
            let q = current.quotient(f)?;
            next = Some(match next {
                None => q,
                Some(acc) => acc.intersect(&q)?,
            });
        }
        let next = next.expect("at least one generator");
        if next.equals(&current)? {
            return Ok(current);
        }
        current = next;
    }
}

/// The part of the family still moving toward the divisor: quotient out the
/// data that already landed (given in the family's own ring).
fn moving_part(family: &Ideal, landed: &Ideal) -> Result<Ideal, Error> {
    saturate_by_ideal(family, &landed.into_ring(family.ring())?)
}

/// Smallest wall where the uncertified limit carries interior data (survives
/// saturation by the chart coordinate). Everything still moving lands at a
/// finite rate, so on moving-part families this wall exists and nothing
/// escapes to w = ∞ below or at it.
fn first_landing(family: &FamilyIdeal) -> Result<Option<(WeightExponent, Ideal)>, Error> {
    for wall in family.wall_candidates()? {
        let e = WeightExponent::from_rational(&wall)?;
        let record = family.limit_uncertified(e)?;
        let w = Polynomial::var(record.limit.ring(), 0);
        let landed = record.limit.saturation(&w)?;
        if !landed.is_unit_ideal()? {
            return Ok(Some((e, landed)));
        }
    }
    Ok(None)
}

/// Resolve a zero-dimensional degeneration into a stable chain.
///
/// Requires a certified zero-dimensional family whose generic fiber is
/// disjoint from the divisor. Splits off the non-escaping part as the Y
/// component (empty = (1) when every point escapes), then repeatedly lands
/// the fastest remaining points: certified flat limit at the first landing
/// wall, bubble ideal = the limit's interior part, recursion on the moving
/// part of the saturated family in the new chart. Stops when a limit is
/// relative at its inner divisor {w = 0}. Each step's cumulative exponent
/// translates it back to the original base; the trace records all of them.
pub fn semistable_reduce(family: &FamilyIdeal) -> Result<(ChainIdeal, ReductionTrace), Error> {
    let bound = match family.certificate() {
        FlatCertificate::ZeroDim { colength } => colength,
        FlatCertificate::PositiveDim => return Err(Error::NonZeroDimensional),
    };
    // generic fibers are disjoint from the divisor iff no component of the
    // total space lies in {y = 0}; fiber sampling would false-positive on
    // families whose points cross the divisor at the sample value
    if !is_relative(family.ideal(), 1)? {
        return Err(Error::MalformedFamily {
            detail: "generic fiber meets the divisor".to_string(),
        });
    }

    let fiber = family.fiber_at_zero()?;
    let y = Polynomial::var(fiber.ring(), 0);
    let residual = fiber.saturation(&y)?;
    if family.is_relative_family()? {
        let chain = build_chain(&[residual.clone()], &near_divisor_image(&residual)?)?;
        return Ok((chain, ReductionTrace { steps: vec![], total_base_change: 1 }));
    }

    let mut steps: Vec<ReductionStep> = Vec::new();
    let mut bubbles: Vec<Ideal> = Vec::new();
    let mut cumulative = BigRational::zero();
    let mut base_so_far = BigRational::one();
    let mut total_base_change: u64 = 1;
    let mut current = reparameterize(&moving_part(family.ideal(), &residual)?)?;
    loop {
        if bubbles.len() as u64 >= bound {
            return Err(Error::CandidateExhaustion {
                detail: "chain length exceeded the generic colength bound".to_string(),
            });
        }
        let Some((exponent, landed)) = first_landing(&current)? else {
            return Err(Error::CandidateExhaustion {
                detail: "no landing wall for the moving part".to_string(),
            });
        };
        let record = current.flat_limit(exponent)?;
        cumulative += exponent.as_rational() / &base_so_far;
        base_so_far *= BigRational::from(BigInt::from(exponent.q()));
        total_base_change *= exponent.q();
        steps.push(ReductionStep {
            component: bubbles.len() + 1,
            exponent,
            base_change: exponent.q(),
            cumulative_exponent: cumulative.clone(),
            record: record.clone(),
        });
        bubbles.push(landed.clone());
        if is_relative(&record.limit, 0)? {
            break;
        }
        current = reparameterize(&moving_part(&record.saturated, &landed)?)?;
    }

    let xs: Vec<&str> = family.ring().vars()[2..].iter().map(String::as_str).collect();
    let mut components = vec![residual];
    for (k, bubble) in bubbles.iter().enumerate() {
        let name = fresh_against(&format!("w{}", k + 1), &xs);
        let mut names: Vec<&str> = vec![&name];
        names.extend(&xs);
        let target = Ring::new(names)?;
        let images: Vec<Polynomial> =
            (0..target.arity()).map(|i| Polynomial::var(&target, i)).collect();
        components.push(bubble.map_vars(&target, &images)?);
    }
    let end = near_divisor_image(components.last().expect("nonempty"))?;
    let chain = build_chain(&components, &end)?;
    debug_assert!(is_stable(&chain)?, "driver bubbles always carry interior data");
    Ok((chain, ReductionTrace { steps, total_base_change }))
}

/// View an ideal in (s, w, x..) as the next family: parameter s, divisor w.
fn reparameterize(ideal: &Ideal) -> Result<FamilyIdeal, Error> {
    let ring = ideal.ring();
    FamilyIdeal::new(ideal, ring.var_name(0), ring.var_name(1))
}
