//! Buchberger's algorithm and multivariate division.
//!
//! Pair selection follows the normal strategy: lowest lcm total degree first,
//! ties broken by generator index, so bases are reproducible. The coprime and
//! chain criteria prune pairs; when certification is switched on every
//! produced basis is re-checked against its defining properties.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use num_traits::One;

use crate::config;
use crate::error::Error;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::{Polynomial, Rational};

fn guard(p: &Polynomial) -> Result<(), Error> {
    if let Some(limit) = config::degree_guard() {
        if let Some(d) = p.total_degree() {
            if d > limit as u64 {
                return Err(Error::DegreeGuardExceeded { limit });
            }
        }
    }
    Ok(())
}

/// Multivariate division: `p = Σ qᵢ dᵢ + r` where no term of `r` is divisible
/// by any leading term of the divisors. The leading term is always reduced by
/// the first divisor that applies, so the result is deterministic.
pub fn divide(
    p: &Polynomial,
    divisors: &[Polynomial],
    ord: &MonomialOrder,
) -> Result<(Vec<Polynomial>, Polynomial), Error> {
    let ring = p.ring();
    let leads: Vec<(Monomial, Rational)> = divisors
        .iter()
        .map(|d| d.leading_term(ord))
        .collect::<Result<_, _>>()?;
    let mut quotients = vec![Polynomial::zero(ring); divisors.len()];
    let mut remainder = Polynomial::zero(ring);
    let mut work = p.clone();
    while !work.is_zero() {
        guard(&work)?;
        let (m, c) = {
            let (m, c) = work.leading(ord).expect("nonzero");
            (m.clone(), c.clone())
        };
        let mut reduced = false;
        for (i, (lm, lc)) in leads.iter().enumerate() {
            if let Some(q) = m.div(lm) {
                let qc = &c / lc;
                let step = divisors[i].mul_term(&q, &qc);
                work = &work - &step;
                quotients[i] = &quotients[i] + &Polynomial::term(ring, q, qc);
                reduced = true;
                break;
            }
        }
        if !reduced {
            let t = Polynomial::term(ring, m, c);
            remainder = &remainder + &t;
            work = &work - &t;
        }
    }
    Ok((quotients, remainder))
}

/// Remainder of `p` on division by `basis`.
pub fn normal_form(
    p: &Polynomial,
    basis: &[Polynomial],
    ord: &MonomialOrder,
) -> Result<Polynomial, Error> {
    if basis.is_empty() {
        return Ok(p.clone());
    }
    Ok(divide(p, basis, ord)?.1)
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Result<Polynomial, Error> {
    let (mf, cf) = f.leading_term(ord)?;
    let (mg, cg) = g.leading_term(ord)?;
    let lcm = mf.lcm(&mg);
    let a = f.mul_term(&lcm.div(&mf).expect("lcm divisible"), &cf.recip());
    let b = g.mul_term(&lcm.div(&mg).expect("lcm divisible"), &cg.recip());
    Ok(&a - &b)
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `ord`.
///
/// The order must be global (a well-order on monomials), otherwise division
/// need not terminate. Elements of the result are monic, pairwise
/// inter-reduced, and sorted ascending by leading monomial; the zero ideal
/// yields an empty basis and the unit ideal yields `[1]`.
pub fn buchberger(gens: &[Polynomial], ord: &MonomialOrder) -> Result<Vec<Polynomial>, Error> {
    if !ord.is_global() {
        return Err(Error::NonGlobalOrder);
    }
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.monic(ord)?);
        }
    }
    if basis.is_empty() {
        return Ok(Vec::new());
    }

    let pair_key = |basis: &[Polynomial], i: usize, j: usize| -> u64 {
        let (mi, _) = basis[i].leading(ord).expect("basis nonzero");
        let (mj, _) = basis[j].leading(ord).expect("basis nonzero");
        mi.lcm(mj).total_degree()
    };

    let mut queue: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();
    for j in 1..basis.len() {
        for i in 0..j {
            queue.push(Reverse((pair_key(&basis, i, j), i, j)));
        }
    }
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();

    while let Some(Reverse((_, i, j))) = queue.pop() {
        if !done.insert((i, j)) {
            continue;
        }
        let (mi, _) = basis[i].leading(ord).expect("basis nonzero");
        let (mj, _) = basis[j].leading(ord).expect("basis nonzero");
        if mi.coprime(mj) {
            continue;
        }
        // Chain criterion: some other leading term divides the lcm and both
        // connecting pairs were already treated (strictly earlier pops, so the
        // justification cannot be circular).
        let lcm = mi.lcm(mj);
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading(ord).expect("basis nonzero").0.divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], ord)?;
        let (_, r) = divide(&s, &basis, ord)?;
        if !r.is_zero() {
            guard(&r)?;
            let r = r.monic(ord)?;
            let new = basis.len();
            basis.push(r);
            for k in 0..new {
                queue.push(Reverse((pair_key(&basis, k, new), k, new)));
            }
        }
    }

    reduce_basis(basis, ord)
}

/// Turn any Gröbner basis into the reduced one: minimal leading terms, monic,
/// each element fully reduced modulo the others, sorted ascending by leading
/// monomial.
pub fn reduce_basis(basis: Vec<Polynomial>, ord: &MonomialOrder) -> Result<Vec<Polynomial>, Error> {
    let mut work: Vec<Polynomial> = Vec::new();
    for g in basis {
        if !g.is_zero() {
            work.push(g.monic(ord)?);
        }
    }
    work.sort_by(|a, b| a.cmp_by_order(b, ord));

    // Minimalize: keep an element only if no kept leading term divides its
    // leading term. Ascending order guarantees potential divisors come first.
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in work {
        let (mg, _) = g.leading(ord).expect("nonzero");
        let redundant = minimal
            .iter()
            .any(|h| h.leading(ord).expect("nonzero").0.divides(mg));
        if !redundant {
            minimal.push(g);
        }
    }

    // Tail-reduce each element modulo the others. Leading terms are pairwise
    // non-divisible, so each element's leading term survives its reduction.
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, h)| h.clone())
            .collect();
        if others.is_empty() {
            break;
        }
        let (_, r) = divide(&minimal[i], &others, ord)?;
        minimal[i] = r.monic(ord)?;
    }

    minimal.sort_by(|a, b| a.cmp_by_order(b, ord));
    Ok(minimal)
}

/// Re-check a finished basis: every S-polynomial reduces to zero and every
/// original generator reduces to zero.
pub fn certify_basis(
    original: &[Polynomial],
    basis: &[Polynomial],
    ord: &MonomialOrder,
) -> Result<(), Error> {
    for j in 1..basis.len() {
        for i in 0..j {
            let s = s_polynomial(&basis[i], &basis[j], ord)?;
            let (_, r) = divide(&s, basis, ord)?;
            if !r.is_zero() {
                return Err(Error::VerificationFailure {
                    detail: format!(
                        "S-polynomial of basis elements {i} and {j} does not reduce to zero"
                    ),
                });
            }
        }
    }
    for (k, g) in original.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        if basis.is_empty() {
            return Err(Error::VerificationFailure {
                detail: format!("generator {k} is nonzero but the basis is empty"),
            });
        }
        let (_, r) = divide(g, basis, ord)?;
        if !r.is_zero() {
            return Err(Error::VerificationFailure {
                detail: format!("generator {k} does not reduce to zero modulo the basis"),
            });
        }
    }
    for g in basis {
        let (m, c) = g.leading_term(ord)?;
        if !c.is_one() {
            return Err(Error::VerificationFailure {
                detail: "basis element is not monic".to_string(),
            });
        }
        let others = basis.iter().filter(|h| *h != g);
        for h in others {
            let (mh, _) = h.leading_term(ord)?;
            if mh.divides(&m) {
                return Err(Error::VerificationFailure {
                    detail: "leading terms are not pairwise minimal".to_string(),
                });
            }
        }
    }
    Ok(())
}
