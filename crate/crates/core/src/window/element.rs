use std::fmt;

use crate::scalar::Field;

/// A pure monomial `t^deg` (branch 0) or `s^deg` (branch 1).
///
/// Branch indices above 1 are scratch namespaces used by the linear-algebra
/// kernels. Ordering is by branch, then degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub branch: u16,
    pub deg: i64,
}

impl Mono {
    pub const fn new(branch: u16, deg: i64) -> Self {
        Mono { branch, deg }
    }
}

/// A finite sum of monomials in `k((t)) × k((s))` with sorted, nonzero terms.
#[derive(Clone, PartialEq, Eq)]
pub struct Element<F: Field> {
    terms: Vec<(Mono, F)>,
}

impl<F: Field> Element<F> {
    pub fn zero() -> Self {
        Element { terms: Vec::new() }
    }

    pub fn monomial(branch: u16, deg: i64, coeff: F) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            Element { terms: vec![(Mono::new(branch, deg), coeff)] }
        }
    }

    /// `(t^a, s^b)`
    pub fn pair(a: i64, b: i64, params: &F::Params) -> Self {
        Element { terms: vec![(Mono::new(0, a), F::one(params)), (Mono::new(1, b), F::one(params))] }
    }

    /// The identity `(1, 1)`.
    pub fn unit(params: &F::Params) -> Self {
        Self::pair(0, 0, params)
    }

    pub fn from_terms(mut terms: Vec<(Mono, F)>) -> Self {
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(Mono, F)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
            if out.last().is_some_and(|(_, c)| c.is_zero()) {
                out.pop();
            }
        }
        Element { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Mono, F)> {
        self.terms.first()
    }

    pub fn coeff(&self, m: Mono) -> Option<&F> {
        self.terms.binary_search_by(|t| t.0.cmp(&m)).ok().map(|i| &self.terms[i].1)
    }

    /// Lowest degree occurring in `branch`.
    pub fn order(&self, branch: u16) -> Option<i64> {
        self.terms.iter().find(|(m, _)| m.branch == branch).map(|(m, _)| m.deg)
    }

    pub fn max_degree(&self, branch: u16) -> Option<i64> {
        self.terms.iter().rev().find(|(m, _)| m.branch == branch).map(|(m, _)| m.deg)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Element { terms: self.terms.iter().map(|(m, x)| (*m, x.mul(c))).collect() }
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &F, other: &Self) -> Self {
        self.merge(Some(c), other)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(None, other)
    }

    fn merge(&self, c: Option<&F>, other: &Self) -> Self {
        let scaled = |x: &F| match c {
            Some(c) => x.mul(c),
            None => x.clone(),
        };
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                let v = scaled(&b[j].1);
                if !v.is_zero() {
                    out.push((b[j].0, v));
                }
                j += 1;
            } else {
                let v = a[i].1.add(&scaled(&b[j].1));
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        Element { terms: out }
    }

    /// Componentwise product in `k((t)) × k((s))`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.branch == mb.branch {
                    terms.push((Mono::new(ma.branch, ma.deg + mb.deg), ca.mul(cb)));
                }
            }
        }
        Self::from_terms(terms)
    }

    /// Drops every term of degree `≥ bound[branch]`.
    pub fn truncate(&self, bound: [i64; 2]) -> Self {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.deg < bound[m.branch as usize])
                .cloned()
                .collect(),
        }
    }

    /// Shifts degrees of every term in scratch namespace `offset + branch`.
    pub fn relabel(&self, offset: u16) -> Self {
        Element { terms: self.terms.iter().map(|(m, c)| (Mono::new(m.branch + offset, m.deg), c.clone())).collect() }
    }

    /// Keeps the terms whose branch lies in `range`, moved back by `range.start`.
    pub fn restrict(&self, range: std::ops::Range<u16>) -> Self {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| range.contains(&m.branch))
                .map(|(m, c)| (Mono::new(m.branch - range.start, m.deg), c.clone()))
                .collect(),
        }
    }
}

impl<F: Field> fmt::Debug for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |b: u16, var: &str| -> String {
            let parts: Vec<String> = self
                .terms
                .iter()
                .filter(|(m, _)| m.branch == b)
                .map(|(m, c)| {
                    let mono = match m.deg {
                        0 => "1".to_string(),
                        1 => var.to_string(),
                        d => format!("{var}^{d}"),
                    };
                    if c.is_one() {
                        mono
                    } else {
                        format!("{c}·{mono}")
                    }
                })
                .collect();
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            }
        };
        write!(f, "({}, {})", side(0, "t"), side(1, "s"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::new(n, 1)
    }

    #[test]
    fn arithmetic() {
        let a = Element::from_terms(vec![(Mono::new(0, 2), q(1)), (Mono::new(1, -1), q(3))]);
        let b = Element::pair(1, 2, &());
        let p = a.mul(&b);
        assert_eq!(p.terms(), &[(Mono::new(0, 3), q(1)), (Mono::new(1, 1), q(3))]);
        assert!(a.axpy(&q(-1), &a).is_zero());
        assert_eq!(a.order(1), Some(-1));
        assert_eq!(a.truncate([2, 5]).terms().len(), 1);
        assert_eq!(p.to_string(), "(t^3, 3·s)");
    }

    #[test]
    fn from_terms_cancels() {
        let e = Element::from_terms(vec![(Mono::new(0, 1), q(2)), (Mono::new(0, 1), q(-2))]);
        assert!(e.is_zero());
    }
}
