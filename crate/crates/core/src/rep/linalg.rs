//! Exact sparse row reduction over `Q(eps)`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::arith::{CyclotomicField, CyclotomicNumber};

/// Sparse coordinate vector: basis index -> nonzero coefficient.
pub type SparseVector = BTreeMap<usize, CyclotomicNumber>;

/// `v += c * w`, dropping cancelled entries.
pub fn axpy(v: &mut SparseVector, c: &CyclotomicNumber, w: &SparseVector) {
    for (i, x) in w {
        let y = c * x;
        match v.get_mut(i) {
            Some(z) => {
                *z = &*z + &y;
                if z.is_zero() {
                    v.remove(i);
                }
            }
            None => {
                if !y.is_zero() {
                    v.insert(*i, y);
                }
            }
        }
    }
}

fn leading(v: &SparseVector) -> Option<(usize, &CyclotomicNumber)> {
    v.iter().next().map(|(i, c)| (*i, c))
}

/// A subspace kept as rows in reduced echelon form. The pivot of a row is
/// its lowest index, normalized to 1 and absent from every other row.
#[derive(Clone, Debug, Default)]
pub struct SubspaceBasis {
    rows: BTreeMap<usize, SparseVector>,
}

impl SubspaceBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rows in ascending pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVector> {
        self.rows.values()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Union of the rows' supports.
    pub fn support(&self) -> BTreeSet<usize> {
        self.rows.values().flat_map(|r| r.keys().copied()).collect()
    }

    /// Remainder of `v` after eliminating every pivot.
    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        let mut out = v.clone();
        for (p, row) in &self.rows {
            if let Some(c) = out.get(p).cloned() {
                axpy(&mut out, &-&c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns the new normalized row if the rank grew.
    pub fn insert(&mut self, v: &SparseVector) -> Option<SparseVector> {
        let mut r = self.reduce(v);
        let (pivot, lead) = leading(&r)?;
        let inv = lead.inverse().expect("nonzero leading coefficient");
        for x in r.values_mut() {
            *x = &*x * &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                axpy(row, &-&c, &r);
            }
        }
        self.rows.insert(pivot, r.clone());
        Some(r)
    }
}

/// Basis of the kernel of the linear map sending the `j`-th domain basis
/// vector to `images[j]`, as domain coordinate vectors.
pub fn kernel(field: &Arc<CyclotomicField>, images: &[SparseVector]) -> Vec<SparseVector> {
    let mut echelon: BTreeMap<usize, (SparseVector, SparseVector)> = BTreeMap::new();
    let mut out = Vec::new();
    for (j, img) in images.iter().enumerate() {
        let mut img = img.clone();
        let mut combo = SparseVector::from([(j, CyclotomicNumber::from_int(field, 1))]);
        for (p, (row, row_combo)) in &echelon {
            if let Some(c) = img.get(p).cloned() {
                let c = -&c;
                axpy(&mut img, &c, row);
                axpy(&mut combo, &c, row_combo);
            }
        }
        match leading(&img) {
            None => out.push(combo),
            Some((pivot, lead)) => {
                let inv = lead.inverse().expect("nonzero leading coefficient");
                for x in img.values_mut().chain(combo.values_mut()) {
                    *x = &*x * &inv;
                }
                echelon.insert(pivot, (img, combo));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RootOrder;

    fn field() -> Arc<CyclotomicField> {
        CyclotomicField::new(RootOrder::new(5).unwrap())
    }

    fn vecof(f: &Arc<CyclotomicField>, entries: &[(usize, i64)]) -> SparseVector {
        entries.iter().filter(|(_, c)| *c != 0).map(|(i, c)| (*i, CyclotomicNumber::from_int(f, *c))).collect()
    }

    #[test]
    fn reduced_echelon() {
        let f = field();
        let mut b = SubspaceBasis::new();
        assert!(b.insert(&vecof(&f, &[(1, 2), (2, 4)])).is_some());
        assert!(b.insert(&vecof(&f, &[(2, 1), (3, 1)])).is_some());
        assert!(b.insert(&vecof(&f, &[(1, 1), (3, -2)])).is_none());
        assert_eq!(b.rank(), 2);
        assert_eq!(b.pivots(), vec![1, 2]);
        let first = b.rows().next().unwrap();
        assert!(first[&1].is_one());
        assert!(!first.contains_key(&2));
        assert!(b.contains(&vecof(&f, &[(2, 3), (3, 3)])));
        assert!(!b.contains(&vecof(&f, &[(0, 1)])));
    }

    #[test]
    fn eps_coefficients() {
        let f = field();
        let eps = CyclotomicNumber::eps_pow(&f, 1);
        let mut b = SubspaceBasis::new();
        let mut v = SparseVector::new();
        v.insert(0, eps.clone());
        v.insert(1, CyclotomicNumber::from_int(&f, 1));
        b.insert(&v);
        let mut w = SparseVector::new();
        w.insert(0, CyclotomicNumber::from_int(&f, 1));
        w.insert(1, CyclotomicNumber::eps_pow(&f, -1));
        assert!(b.contains(&w));
    }

    #[test]
    fn kernel_of_projection() {
        let f = field();
        // x0 -> e0, x1 -> e0, x2 -> 0
        let imgs = vec![vecof(&f, &[(0, 1)]), vecof(&f, &[(0, 1)]), SparseVector::new()];
        let k = kernel(&f, &imgs);
        assert_eq!(k.len(), 2);
        for v in &k {
            let mut total = SparseVector::new();
            for (j, c) in v {
                axpy(&mut total, c, &imgs[*j]);
            }
            assert!(total.is_empty());
        }
    }
}
