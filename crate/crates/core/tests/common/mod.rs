//! Deterministic corpora and independent oracles for the acceptance suite.
//!
//! The generator RNG is a hand-rolled SplitMix64 so the streams are identical
//! on every platform and toolchain; the corpora below are therefore fixed
//! test data, reproduced from seeds instead of checked in.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use flatlimit::poly::rational;
use flatlimit::{FamilyIdeal, FlatCertificate, Ideal, Monomial, NodeIdeal, Polynomial, Rational, Ring};

pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough draw below `n`; modulo bias is irrelevant at test sizes.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// Append `- c*mono` to a generator string with the sign folded in, so the
/// text stays inside the grammar (no "- -2" substrings).
fn minus_term(buf: &mut String, c: i64, mono: &str) {
    if c == 0 {
        return;
    }
    let sign = if c > 0 { '-' } else { '+' };
    let abs = c.abs();
    buf.push(' ');
    buf.push(sign);
    buf.push(' ');
    if mono.is_empty() {
        buf.push_str(&abs.to_string());
    } else if abs == 1 {
        buf.push_str(mono);
    } else {
        buf.push_str(&format!("{abs}*{mono}"));
    }
}

/// One generated family plus what the generator knows about it.
pub struct CorpusFamily {
    pub family: FamilyIdeal,
    /// Some factor vanishes with t (k >= 1): the special fiber meets {y = 0}.
    pub moving: bool,
    /// Some factor stays away from the divisor (k = 0).
    pub residual: bool,
    pub label: String,
}

/// Flat zero-dimensional families in (t, y, x1[, x2]): a product of factors
/// (y - c*t^k*m(x)) together with one point constraint per transverse
/// variable, roots drawn from {1, 2, 3}. Every fiber consists of the same
/// number of points counted with multiplicity (the y-polynomial is monic of
/// fixed degree over each x-point), so the family is flat by construction;
/// the factor values c*t^k*m(x0) are nonzero away from t = 0, so the generic
/// fiber avoids the divisor.
pub fn corpus_family(rng: &mut SplitMix64) -> CorpusFamily {
    let d = 1 + rng.below(2) as usize;
    let mut names = vec!["t".to_string(), "y".to_string()];
    for i in 0..d {
        names.push(format!("x{}", i + 1));
    }
    let ring = Ring::new(names).unwrap();

    let force_relative = rng.below(3) == 0;
    let mut budget = 6i64;
    let mut product = String::new();
    let mut moving = false;
    let mut residual = false;
    let factors = 1 + rng.below(3);
    for j in 0..factors {
        let k = if force_relative {
            0
        } else if j == 0 {
            1 + rng.range(0, 1) // guarantee one escaping factor
        } else {
            rng.range(0, 2)
        };
        let xdeg = rng.range(0, 1);
        let cost = 1 + k + xdeg;
        if cost > budget {
            break;
        }
        budget -= cost;
        moving |= k >= 1;
        residual |= k == 0;

        let c = rng.range(1, 3) * if rng.below(2) == 0 { 1 } else { -1 };
        let mut mono = String::new();
        if k == 1 {
            mono.push('t');
        } else if k > 1 {
            mono.push_str(&format!("t^{k}"));
        }
        if xdeg == 1 {
            if !mono.is_empty() {
                mono.push('*');
            }
            mono.push_str(&format!("x{}", 1 + rng.below(d as u64)));
        }
        let mut factor = String::from("y");
        minus_term(&mut factor, c, &mono);
        if !product.is_empty() {
            product.push('*');
        }
        product.push_str(&format!("({factor})"));
    }

    let mut gens = vec![product];
    for i in 0..d {
        let roots = 1 + rng.below(2);
        let mut pool = vec![1i64, 2, 3];
        let mut constraint = String::new();
        for _ in 0..roots {
            let a = pool.remove(rng.below(pool.len() as u64) as usize);
            if !constraint.is_empty() {
                constraint.push('*');
            }
            constraint.push_str(&format!("(x{} - {a})", i + 1));
        }
        gens.push(constraint);
    }

    let label = gens.join(", ");
    let texts: Vec<&str> = gens.iter().map(String::as_str).collect();
    let ideal = Ideal::parse(&ring, &texts).unwrap();
    let family = FamilyIdeal::new(&ideal, "t", "y")
        .unwrap_or_else(|e| panic!("corpus family {label} failed construction: {e}"));
    assert!(
        matches!(family.certificate(), FlatCertificate::ZeroDim { .. }),
        "corpus family {label} is not certified zero-dimensional"
    );
    CorpusFamily { family, moving, residual, label }
}

pub fn family_corpus(n: usize, seed: u64) -> Vec<CorpusFamily> {
    let mut rng = SplitMix64::new(seed);
    (0..n).map(|_| corpus_family(&mut rng)).collect()
}

/// Random ideals of the node ring (y1, y2, x) containing y1*y2: intersections
/// of a few primitive pieces. The pieces mix perfect data (points off the
/// node, matched curves, principal ideals of node nonzerodivisors) with
/// imperfect data (the node point, fattenings sticking out of one branch).
pub fn random_node(rng: &mut SplitMix64) -> NodeIdeal {
    let ring = Ring::new(vec!["y1", "y2", "x"]).unwrap();
    let pieces = 1 + rng.below(3);
    let mut acc: Option<Ideal> = None;
    for _ in 0..pieces {
        let c = rng.range(1, 3);
        let at = {
            let mut s = String::from("x");
            minus_term(&mut s, rng.range(-1, 2), "");
            s
        };
        let gens: Vec<String> = match rng.below(7) {
            0 => vec!["y2".into(), format!("y1 - {c}"), at],
            1 => vec!["y1".into(), format!("y2 - {c}"), at],
            2 => vec!["y1".into(), "y2".into(), at],
            3 => vec!["y1*y2".into(), at],
            4 => vec!["y1*y2".into(), format!("y1 - {c}*y2")],
            5 => vec!["y1^2".into(), "y1*y2".into(), "y2^2".into(), at],
            _ => vec!["y1".into(), "y2^2".into(), at],
        };
        let texts: Vec<&str> = gens.iter().map(String::as_str).collect();
        let piece = Ideal::parse(&ring, &texts).unwrap();
        acc = Some(match acc {
            None => piece,
            Some(i) => i.intersect(&piece).unwrap(),
        });
    }
    NodeIdeal::new(&acc.unwrap(), "y1", "y2").unwrap()
}

/// A pair of branch ideals for gluing. Each side is a product of curve germs
/// x = gamma(y) in (y_c, x); the germs pass through the divisor points
/// gamma(0), which the two sides share exactly when `compatible`. Curve germs
/// transverse to the divisor are relative, a point of a zero-dimensional
/// ideal on the divisor never is, so curves are the natural gluable data.
pub struct GluePair {
    pub left: Ideal,
    pub right: Ideal,
}

pub fn glue_pair(rng: &mut SplitMix64, compatible: bool) -> GluePair {
    let branches = 1 + rng.below(2);
    let mut pool = vec![-2i64, -1, 1, 2, 3];
    let mut points = Vec::new();
    for _ in 0..branches {
        points.push(pool.remove(rng.below(pool.len() as u64) as usize));
    }

    let side = |rng: &mut SplitMix64, y: &str, points: &[i64]| -> Ideal {
        let ring = Ring::new(vec![y, "x"]).unwrap();
        let mut product = String::new();
        for &a in points {
            let mut germ = String::from("x");
            minus_term(&mut germ, a, "");
            minus_term(&mut germ, rng.range(-2, 2), y);
            minus_term(&mut germ, rng.range(0, 1), &format!("{y}^2"));
            if !product.is_empty() {
                product.push('*');
            }
            product.push_str(&format!("({germ})"));
        }
        Ideal::parse(&ring, &[&product]).unwrap()
    };

    let left = side(rng, "y1", &points);
    if !compatible {
        // move one divisor point off its partner
        let i = rng.below(points.len() as u64) as usize;
        let mut shifted = points[i] + 1;
        if points.contains(&shifted) {
            shifted += 3;
        }
        points[i] = shifted;
    }
    let right = side(rng, "y2", &points);
    GluePair { left, right }
}

/// A random sparse polynomial: up to `max_terms` terms of total degree at
/// most `max_deg`, the first of positive degree so the result is never a
/// constant, with small nonzero integer coefficients.
pub fn random_poly(rng: &mut SplitMix64, ring: &Arc<Ring>, max_deg: u32, max_terms: u64) -> Polynomial {
    let arity = ring.arity();
    let draw_exps = |rng: &mut SplitMix64, min_deg: u32| -> Vec<u32> {
        loop {
            let exps: Vec<u32> = (0..arity).map(|_| rng.below(u64::from(max_deg) + 1) as u32).collect();
            let total: u32 = exps.iter().sum();
            if total <= max_deg && total >= min_deg {
                return exps;
            }
        }
    };
    let coeff = |rng: &mut SplitMix64| -> Rational {
        let c = rng.range(-3, 3);
        rational(if c == 0 { 1 } else { c }, 1)
    };
    let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
    terms.insert(Monomial::new(draw_exps(rng, 1)), coeff(rng));
    for _ in 1..1 + rng.below(max_terms) {
        terms.insert(Monomial::new(draw_exps(rng, 0)), coeff(rng));
    }
    Polynomial::from_terms(ring, terms)
}

/// All exponent vectors of total degree <= bound.
fn monomials_up_to(arity: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; arity];
    loop {
        if cur.iter().sum::<u32>() <= bound {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == arity {
                return out;
            }
            if cur[i] < bound {
                cur[i] += 1;
                cur[..i].iter_mut().for_each(|e| *e = 0);
                break;
            }
            i += 1;
        }
    }
}

/// Rows in reduced echelon form: every stored row is normalized and zero at
/// all other pivots, so one pass over the rows fully reduces a vector.
struct Echelon {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    fn new() -> Echelon {
        Echelon { rows: Vec::new() }
    }

    fn reduce(&self, v: &mut [Rational]) {
        for (pivot, row) in &self.rows {
            let c = v[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
    }

    fn insert(&mut self, mut v: Vec<Rational>) {
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return;
        };
        let lead = v[pivot].clone();
        for x in v.iter_mut() {
            *x /= &lead;
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
        self.rows.push((pivot, v));
    }
}

/// Exact linear-algebra membership: is `h` in the span of the monomial
/// shifts { x^a * f : f in gens, deg(x^a * f) <= bound }? Complete exactly
/// for representations whose summands stay within the bound, so callers pick
/// bounds they can justify.
pub fn linear_membership(gens: &[Polynomial], h: &Polynomial, bound: u64) -> bool {
    let ring = h.ring();
    let arity = ring.arity();
    let bound = u32::try_from(bound).unwrap();
    let columns: BTreeMap<Vec<u32>, usize> = monomials_up_to(arity, bound)
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let width = columns.len();
    let vector_of = |p: &Polynomial| -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); width];
        for (m, c) in p.terms() {
            let col = columns.get(m.exps())?;
            v[*col] = c.clone();
        }
        Some(v)
    };

    let mut rows = Echelon::new();
    let one = rational(1, 1);
    for f in gens {
        let Some(df) = f.total_degree() else { continue };
        let df = u32::try_from(df).unwrap();
        if df > bound {
            continue;
        }
        for exps in monomials_up_to(arity, bound - df) {
            let shifted = f.mul_term(&Monomial::new(exps), &one);
            rows.insert(vector_of(&shifted).expect("shift stays within bound"));
        }
    }

    let Some(mut target) = vector_of(h) else {
        return false; // h exceeds the bound, no representation inside it
    };
    rows.reduce(&mut target);
    target.iter().all(Rational::is_zero)
}
