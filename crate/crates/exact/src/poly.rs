use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::matrix::berkowitz_det;
use crate::scalar::{q_to_string, Scalar, Q};

/// Exponent vector with trailing zeros removed, so equal monomials compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exponent(i) + other.exponent(i)).collect())
    }

    /// All monomials of total degree `deg` in `nvars` variables, in graded
    /// lexicographic order.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial::new(cur.clone()));
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if deg == 0 {
                out.push(Monomial::default());
            }
            return out;
        }
        rec(0, deg, &mut cur, &mut out);
        out
    }
}

/// Sparse polynomial with rational coefficients in variables `x0, x1, ...`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn constant(c: Q) -> Self {
        let mut p = Poly::default();
        p.add_term(Monomial::default(), c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut p = Poly::default();
        p.add_term(Monomial::var(i), Q::one());
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Largest total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, deg: u32) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| m.degree() == deg).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            total += t;
        }
        total
    }

    /// Coefficient vector over the given monomial list.
    pub fn coefficients_in(&self, basis: &[Monomial]) -> Vec<Q> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), c * Q::from_integer(e.into()));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Q::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        let mut out = Poly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Scalar for Poly {
    fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    fn from_q(c: &Q) -> Self {
        Poly::constant(c.clone())
    }

    fn det_of(n: usize, data: &[Self]) -> Self {
        berkowitz_det(n, data)
    }

    fn pf_of(n: usize, data: &[Self]) -> Self {
        let m = crate::Matrix::from_fn(n, n, |i, j| data[i * n + j].clone());
        m.pf_expansion()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", q_to_string(c))?;
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn arithmetic_cancels() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let p = (x.clone() + y.clone()) * (x.clone() - y.clone());
        let expect = x.clone() * x - y.clone() * y;
        assert_eq!(p, expect);
        assert!((p.clone() - expect).is_zero());
        assert!(p.is_homogeneous());
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(5, 4).len(), 70);
        assert_eq!(Monomial::all_of_degree(0, 0).len(), 1);
    }

    #[test]
    fn symbolic_det_matches_eval() {
        let v: Vec<Poly> = (0..4).map(Poly::var).collect();
        let m = crate::Matrix::from_rows(vec![vec![v[0].clone(), v[1].clone()], vec![v[2].clone(), v[3].clone()]], 2).unwrap();
        let d = m.det();
        let pt = [q(2), q(3), q(5), q(7)];
        assert_eq!(d.eval(&pt), q(2 * 7 - 3 * 5));
    }

    #[test]
    fn derivative_of_square() {
        let x = Poly::var(0);
        assert_eq!((x.clone() * x.clone()).derivative(0), x.scale(&q(2)));
    }
}
