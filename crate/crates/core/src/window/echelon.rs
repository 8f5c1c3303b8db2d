use crate::scalar::Field;

use super::element::{Element, Mono};

/// A subspace in reduced row-echelon form.
///
/// Every row has leading coefficient 1 at its pivot, pivots are strictly
/// increasing, and no row has a nonzero entry at another row's pivot. For a
/// fixed subspace this form is unique.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Echelon<F: Field> {
    rows: Vec<Element<F>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon { rows: Vec::new() }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors(vs: impl IntoIterator<Item = Element<F>>) -> Self {
        let mut e = Self::new();
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn rows(&self) -> &[Element<F>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = Mono> + '_ {
        self.rows.iter().map(|r| r.leading().unwrap().0)
    }

    fn pivot_row(&self, m: Mono) -> Option<&Element<F>> {
        self.rows
            .binary_search_by(|r| r.leading().unwrap().0.cmp(&m))
            .ok()
            .map(|i| &self.rows[i])
    }

    /// Remainder of `v` modulo the span; zero iff `v` lies in it.
    pub fn reduce(&self, v: &Element<F>) -> Element<F> {
        if self.rows.is_empty() {
            return v.clone();
        }
        let mut v = v.clone();
        let mut i = 0;
        while i < v.terms().len() {
            let (m, c) = v.terms()[i].clone();
            match self.pivot_row(m) {
                // the pivot row only touches monomials ≥ m, so the prefix is final
                Some(row) => v = v.axpy(&c.neg(), row),
                None => i += 1,
            }
        }
        v
    }

    pub fn contains(&self, v: &Element<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Element<F>) -> bool {
        let r = self.reduce(&v);
        let Some((p, c)) = r.leading().cloned() else {
            return false;
        };
        let r = r.scale(&c.inv());
        for row in &mut self.rows {
            if let Some(x) = row.coeff(p).cloned() {
                *row = row.axpy(&x.neg(), &r);
            }
        }
        let at = self.rows.partition_point(|row| row.leading().unwrap().0 < p);
        self.rows.insert(at, r);
        true
    }

    /// Drops the row equal to the bare monomial `m`, if there is one. The
    /// remaining rows stay reduced since none of them involves `m`.
    pub fn remove_monomial(&mut self, m: Mono) -> bool {
        match self.rows.binary_search_by(|r| r.leading().unwrap().0.cmp(&m)) {
            Ok(i) if self.rows[i].terms().len() == 1 => {
                self.rows.remove(i);
                true
            }
            _ => false,
        }
    }

    pub fn into_rows(self) -> Vec<Element<F>> {
        self.rows
    }
}

/// Basis of `{λ : Σ λ_j images[j] = 0}`, each vector given as `Σ λ_j e_j`
/// with `e_j` the `j`-th entry of `sources`.
pub fn kernel<F: Field>(images: &[Element<F>], sources: &[Element<F>], params: &F::Params) -> Vec<Element<F>> {
    assert_eq!(images.len(), sources.len());
    // tag namespace sits above every image namespace
    let tag = images
        .iter()
        .flat_map(|v| v.terms().iter().map(|(m, _)| m.branch))
        .max()
        .map_or(0, |b| b + 1);
    let mut ech: Echelon<F> = Echelon::new();
    let mut out = Vec::new();
    for (j, img) in images.iter().enumerate() {
        let aug = img.add(&Element::monomial(tag, j as i64, F::one(params)));
        let r = ech.reduce(&aug);
        if r.terms().first().is_some_and(|(m, _)| m.branch == tag) {
            let mut combo = Element::zero();
            for (m, lam) in r.terms() {
                combo = combo.axpy(lam, &sources[m.deg as usize]);
            }
            out.push(combo);
        } else {
            ech.insert(r);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, Fp, Rational};

    fn el(terms: &[(u16, i64, i64)]) -> Element<Rational> {
        Element::from_terms(terms.iter().map(|&(b, d, c)| (Mono::new(b, d), Rational::new(c, 1))).collect())
    }

    #[test]
    fn rref_is_canonical() {
        let a = Echelon::from_vectors([el(&[(0, 0, 1), (0, 1, 2)]), el(&[(0, 1, 1), (1, 0, 1)])]);
        let b = Echelon::from_vectors([el(&[(0, 0, 1), (1, 0, -2)]), el(&[(0, 1, 3), (1, 0, 3)])]);
        assert_eq!(a, b);
        assert_eq!(a.rank(), 2);
        assert!(a.contains(&el(&[(0, 0, 2), (0, 1, 5), (1, 0, 1)])));
        assert!(!a.contains(&el(&[(1, 0, 1)])));
    }

    #[test]
    fn kernel_of_dependent_images() {
        let imgs = vec![el(&[(0, 0, 1)]), el(&[(0, 0, 2)]), el(&[(0, 1, 1)])];
        let srcs = vec![el(&[(1, 5, 1)]), el(&[(1, 6, 1)]), el(&[(1, 7, 1)])];
        let k = kernel(&imgs, &srcs, &());
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], el(&[(1, 5, -2), (1, 6, 1)]));
    }

    #[test]
    fn prime_field_elimination() {
        let p = 1_000_003u64;
        let x = |c: i64| Fp::from_i64(c, &p);
        let v = Element::from_terms(vec![(Mono::new(0, 0), x(3)), (Mono::new(0, 2), x(5))]);
        let mut e = Echelon::new();
        assert!(e.insert(v.clone()));
        assert!(!e.insert(v.scale(&x(7))));
        assert!(e.rows()[0].leading().unwrap().1.is_one());
    }
}
