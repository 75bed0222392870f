//! Monomial orders: lex, grevlex, and weighted comparison with grevlex
//! tie-break, each with an optional eliminate-first block of variables.
//!
//! Weighted orders follow the valuation convention: the term of *smallest*
//! weighted degree is the largest monomial. With weight 1 on a parameter
//! variable this reproduces the leading-coefficient convention for expansions
//! along that parameter. Such an order is only a global (well-founded) order
//! when every weight is non-positive; basis computations reject the rest.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::monomial::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderKind {
    Lex,
    GrevLex,
    /// Weights per variable; smaller weighted degree wins, ties fall back to
    /// grevlex.
    Weighted(Vec<BigRational>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialOrder {
    kind: OrderKind,
    /// Variables compared first; a basis under such an order eliminates them.
    block: Option<BTreeSet<usize>>,
}

#[derive(Clone, Copy)]
enum Subset<'a> {
    All,
    In(&'a BTreeSet<usize>),
    Out(&'a BTreeSet<usize>),
}

impl Subset<'_> {
    fn contains(&self, i: usize) -> bool {
        match self {
            Subset::All => true,
            Subset::In(s) => s.contains(&i),
            Subset::Out(s) => !s.contains(&i),
        }
    }
}

impl MonomialOrder {
    pub fn lex() -> Self {
        MonomialOrder { kind: OrderKind::Lex, block: None }
    }

    pub fn grevlex() -> Self {
        MonomialOrder { kind: OrderKind::GrevLex, block: None }
    }

    pub fn weighted(weights: Vec<BigRational>) -> Self {
        MonomialOrder { kind: OrderKind::Weighted(weights), block: None }
    }

    /// Grevlex with the given variables compared first. Basis elements free of
    /// those variables generate the elimination ideal.
    pub fn eliminating(block: impl IntoIterator<Item = usize>) -> Self {
        MonomialOrder { kind: OrderKind::GrevLex, block: Some(block.into_iter().collect()) }
    }

    pub fn with_block(mut self, block: impl IntoIterator<Item = usize>) -> Self {
        self.block = Some(block.into_iter().collect());
        self
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn block(&self) -> Option<&BTreeSet<usize>> {
        self.block.as_ref()
    }

    /// True when the order is a term order (1 is minimal), so division and
    /// Buchberger terminate.
    pub fn is_global(&self) -> bool {
        match &self.kind {
            OrderKind::Lex | OrderKind::GrevLex => true,
            OrderKind::Weighted(ws) => ws.iter().all(|w| *w <= BigRational::zero()),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match &self.block {
            Some(block) => match self.kind_cmp(a, b, Subset::In(block)) {
                Ordering::Equal => self.kind_cmp(a, b, Subset::Out(block)),
                ord => ord,
            },
            None => self.kind_cmp(a, b, Subset::All),
        }
    }

    pub fn max<'m>(&self, monomials: impl Iterator<Item = &'m Monomial>) -> Option<&'m Monomial> {
        monomials.max_by(|a, b| self.cmp(a, b))
    }

    fn kind_cmp(&self, a: &Monomial, b: &Monomial, subset: Subset) -> Ordering {
        match &self.kind {
            OrderKind::Lex => lex_cmp(a, b, subset),
            OrderKind::GrevLex => grevlex_cmp(a, b, subset),
            OrderKind::Weighted(ws) => {
                let wa = weighted_degree(a, ws, subset);
                let wb = weighted_degree(b, ws, subset);
                // Valuation convention: lighter terms lead.
                match wb.cmp(&wa) {
                    Ordering::Equal => grevlex_cmp(a, b, subset),
                    ord => ord,
                }
            }
        }
    }
}

fn lex_cmp(a: &Monomial, b: &Monomial, subset: Subset) -> Ordering {
    for i in 0..a.arity() {
        if subset.contains(i) && a.exp(i) != b.exp(i) {
            return a.exp(i).cmp(&b.exp(i));
        }
    }
    Ordering::Equal
}

fn grevlex_cmp(a: &Monomial, b: &Monomial, subset: Subset) -> Ordering {
    let da: u64 = (0..a.arity()).filter(|&i| subset.contains(i)).map(|i| a.exp(i) as u64).sum();
    let db: u64 = (0..b.arity()).filter(|&i| subset.contains(i)).map(|i| b.exp(i) as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.arity()).rev() {
        if subset.contains(i) && a.exp(i) != b.exp(i) {
            return b.exp(i).cmp(&a.exp(i));
        }
    }
    Ordering::Equal
}

fn weighted_degree(m: &Monomial, ws: &[BigRational], subset: Subset) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, w) in ws.iter().enumerate() {
        if subset.contains(i) && m.exp(i) != 0 {
            acc += w * BigRational::from(BigInt::from(m.exp(i)));
        }
    }
    acc
}
