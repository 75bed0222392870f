//! Monomials as exponent vectors. The intrinsic `Ord` is graded reverse
//! lexicographic, which makes ordered term maps iterate in display order;
//! other orders are applied through [`crate::order::MonomialOrder`].

use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(arity: usize) -> Self {
        Monomial { exps: vec![0; arity] }
    }

    pub fn var(arity: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; arity];
        exps[i] = e;
        Monomial { exps }
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Degree in the given variable set only.
    pub fn degree_in(&self, vars: &[usize]) -> u64 {
        vars.iter().map(|&i| self.exps[i] as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.arity(), other.arity());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
            Some(Monomial { exps })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial { exps }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Keep the exponents at `keep`, zero elsewhere.
    pub fn restricted(&self, keep: &[usize]) -> Monomial {
        let mut exps = vec![0; self.exps.len()];
        for &i in keep {
            exps[i] = self.exps[i];
        }
        Monomial { exps }
    }

    /// Project onto a smaller arity by deleting the `drop` positions; the
    /// dropped exponents must be zero.
    pub fn project(&self, drop: &[usize]) -> Monomial {
        let exps = self
            .exps
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(i, &e)| {
                debug_assert!(!drop.contains(&i));
                e
            })
            .collect();
        let dropped_ok = drop.iter().all(|&i| self.exps[i] == 0);
        debug_assert!(dropped_ok, "projected monomial has support on dropped variables");
        Monomial { exps }
    }

    /// Graded reverse lexicographic comparison, variable 0 most significant.
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.exps.len()).rev() {
            if self.exps[i] != other.exps[i] {
                // Larger exponent late in the list means smaller monomial.
                return other.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grevlex_cmp(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn grevlex_orders_same_degree_by_reverse_lex() {
        // x > y: x^2 > x*y > y^2
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        assert!(m(&[0, 2]) > m(&[1, 0]));
    }

    #[test]
    fn lcm_and_division() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 3, 0]);
        assert_eq!(a.lcm(&b), m(&[2, 3, 0]));
        assert_eq!(a.lcm(&b).div(&a).unwrap(), m(&[0, 2, 0]));
        assert!(a.div(&b).is_none());
        assert!(m(&[1, 0, 0]).coprime(&m(&[0, 2, 1])));
    }
}
