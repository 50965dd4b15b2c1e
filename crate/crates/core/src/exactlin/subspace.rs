use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::scalar::Rational;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn sparse_from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

fn lookup(v: &SparseVec, col: usize) -> Option<&Rational> {
    v.binary_search_by_key(&col, |(i, _)| *i)
        .ok()
        .map(|k| &v[k].1)
}

/// `v - c·w`.
fn sub_scaled(v: &SparseVec, c: &Rational, w: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let take_v = j >= w.len() || (i < v.len() && v[i].0 < w[j].0);
        let take_w = i >= v.len() || (j < w.len() && w[j].0 < v[i].0);
        if take_v {
            out.push(v[i].clone());
            i += 1;
        } else if take_w {
            out.push((w[j].0, -(c * &w[j].1)));
            j += 1;
        } else {
            let x = &v[i].1 - c * &w[j].1;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A subspace of `Q^ambient` kept in reduced row echelon form.
///
/// The reduced form is canonical, so two subspaces are equal exactly when
/// their sorted rows agree.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn spanned_by<'a>(ambient: usize, vectors: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut s = Subspace::new(ambient);
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, Rational)> = v
            .iter()
            .filter_map(|(col, x)| self.pivot_row.get(col).map(|&r| (r, x.clone())))
            .collect();
        if hits.is_empty() {
            return v.clone();
        }
        let mut acc: BTreeMap<usize, Rational> = v.iter().cloned().collect();
        for (r, x) in hits {
            for (col, y) in &self.rows[r] {
                let e = acc.entry(*col).or_insert_with(Rational::zero);
                *e -= &x * y;
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(&v);
        if r.is_empty() {
            return false;
        }
        let (pivot, lead) = r[0].clone();
        if !lead.is_one() {
            let inv = lead.recip();
            for (_, x) in r.iter_mut() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if let Some(c) = lookup(row, pivot).cloned() {
                *row = sub_scaled(row, &c, &r);
            }
        }
        self.pivot_row.insert(pivot, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn insert_dense(&mut self, v: &[Rational]) -> bool {
        self.insert(sparse_from_dense(v))
    }

    /// Canonical basis: reduced rows sorted by pivot column.
    pub fn basis(&self) -> Vec<SparseVec> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|r| r[0].0);
        rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_row.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Basis of `{x : <row, x> = 0 for every row}`, one vector per free column.
    pub fn orthogonal_kernel(&self) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for free in 0..self.ambient {
            if self.pivot_row.contains_key(&free) {
                continue;
            }
            let mut v: Vec<(usize, Rational)> = vec![(free, Rational::one())];
            for row in &self.rows {
                if let Some(c) = lookup(row, free) {
                    v.push((row[0].0, -c.clone()));
                }
            }
            v.sort_by_key(|(i, _)| *i);
            out.push(v);
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis() == other.basis()
    }
}

impl Eq for Subspace {}

/// Adds `vectors` to the span of `basis`; reports whether anything new appeared.
pub fn span_closure(basis: &Subspace, vectors: &[SparseVec]) -> (Subspace, bool) {
    let mut out = basis.clone();
    let mut grew = false;
    for v in vectors {
        grew |= out.insert(v.clone());
    }
    (out, grew)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::scalar::int;

    fn sv(v: &[i64]) -> SparseVec {
        sparse_from_dense(&v.iter().map(|&x| int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn reduced_form_is_canonical() {
        let a = Subspace::spanned_by(3, &[sv(&[1, 1, 0]), sv(&[0, 1, 1])]);
        let b = Subspace::spanned_by(3, &[sv(&[1, 2, 1]), sv(&[1, 0, -1])]);
        assert_eq!(a, b);
        let c = Subspace::spanned_by(3, &[sv(&[1, 0, 0]), sv(&[0, 1, 1])]);
        assert_ne!(a, c);
    }

    #[test]
    fn kernel_is_orthogonal() {
        let s = Subspace::spanned_by(4, &[sv(&[1, 2, 0, 1]), sv(&[0, 0, 1, 3])]);
        let k = s.orthogonal_kernel();
        assert_eq!(k.len(), 2);
        for x in &k {
            for r in [sv(&[1, 2, 0, 1]), sv(&[0, 0, 1, 3])] {
                let dot: Rational = r
                    .iter()
                    .filter_map(|(i, a)| lookup(x, *i).map(|b| a * b))
                    .sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn closure_flag() {
        let s = Subspace::spanned_by(2, &[sv(&[1, 1])]);
        let (t, grew) = span_closure(&s, &[sv(&[2, 2])]);
        assert!(!grew);
        assert_eq!(t.dim(), 1);
        let (t, grew) = span_closure(&t, &[sv(&[0, 1])]);
        assert!(grew);
        assert_eq!(t.dim(), 2);
    }
}
