//! Dimensions of invariant spaces computed straight from the group action,
//! with no diagrams involved.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use super::check_budget;
use crate::error::Result;
use crate::exactlin::{int, ExactMatrix, Rational, SparseVec, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    /// `O_d`, preserving the identity Gram matrix.
    Orthogonal,
    /// `Sp_d`, preserving the standard `J`.
    Symplectic,
    /// `GL_d`.
    General,
}

fn unit(d: usize, i: usize, j: usize) -> ExactMatrix {
    let mut e = ExactMatrix::zeros(d, d);
    e.set(i, j, int(1));
    e
}

/// A basis of the Lie algebra of the group.
pub fn lie_basis(group: Group, d: usize) -> Vec<ExactMatrix> {
    let mut out = Vec::new();
    match group {
        Group::General => {
            for i in 0..d {
                for j in 0..d {
                    out.push(unit(d, i, j));
                }
            }
        }
        Group::Orthogonal => {
            for i in 0..d {
                for j in i + 1..d {
                    out.push(unit(d, i, j).sub(&unit(d, j, i)).unwrap());
                }
            }
        }
        Group::Symplectic => {
            // X = -J·S for symmetric S satisfies Xᵀ J + J X = 0.
            let j = super::TensorForm::skew(d).expect("symplectic needs even d");
            let minus_j = j.theta().scale(&int(-1));
            for a in 0..d {
                for b in a..d {
                    let mut s = unit(d, a, b);
                    if a != b {
                        s = s.add(&unit(d, b, a)).unwrap();
                    }
                    out.push(minus_j.mul(&s).unwrap());
                }
            }
        }
    }
    out
}

/// Finite elements checked on top of the Lie algebra: the reflection
/// `diag(-1, 1, …, 1)` for the orthogonal group.
pub fn reflections(group: Group, d: usize) -> Vec<ExactMatrix> {
    match group {
        Group::Orthogonal if d > 0 => {
            let mut r = ExactMatrix::identity(d);
            r.set(0, 0, int(-1));
            vec![r]
        }
        _ => vec![],
    }
}

fn letters(mut index: usize, d: usize, len: usize) -> Vec<usize> {
    let mut w = vec![0; len];
    for k in (0..len).rev() {
        w[k] = index % d;
        index /= d;
    }
    w
}

/// Coordinates that survive the torus (or, for `O_d`, the coordinate
/// reflections, each conjugate in `O_d` to the one in [`reflections`]).
fn admissible(group: Group, d: usize, word: &[usize], n: usize) -> bool {
    let (b, a) = word.split_at(n);
    let count = |w: &[usize], x: usize| w.iter().filter(|&&y| y == x).count() as i64;
    match group {
        Group::General => (0..d).all(|x| count(b, x) == count(a, x)),
        Group::Symplectic => {
            let k = d / 2;
            (0..k).all(|i| {
                count(b, i) - count(b, i + k) == count(a, i) - count(a, i + k)
            })
        }
        Group::Orthogonal => (0..d).all(|x| (count(b, x) + count(a, x)) % 2 == 0),
    }
}

/// `dim Hom_G(V^⊗m, V^⊗n)` as the common null space of the Lie algebra
/// action `f ↦ X^(n) f - f X^(m)`, restricted first to torus weight zero.
pub fn invariant_dimension(group: Group, d: usize, m: usize, n: usize) -> Result<usize> {
    let len = m + n;
    let total = d.pow(len as u32);
    check_budget(total)?;
    if d == 0 {
        return Ok(if len == 0 { 1 } else { 0 });
    }
    let words: Vec<Vec<usize>> = (0..total)
        .map(|index| letters(index, d, len))
        .filter(|w| admissible(group, d, w, n))
        .collect();
    let mut equations = Subspace::new(words.len());
    let place = |w: &[usize]| w.iter().fold(0, |acc, &x| acc * d + x);
    for x in lie_basis(group, d) {
        let dual = x.transpose().scale(&int(-1));
        let mut rows: HashMap<usize, HashMap<usize, Rational>> = HashMap::new();
        for (var, u) in words.iter().enumerate() {
            for k in 0..len {
                let y = if k < n { &x } else { &dual };
                for r in 0..d {
                    let c = y.get(r, u[k]);
                    if c.is_zero() {
                        continue;
                    }
                    let mut w = u.clone();
                    w[k] = r;
                    *rows
                        .entry(place(&w))
                        .or_default()
                        .entry(var)
                        .or_insert_with(Rational::zero) += c;
                }
            }
        }
        let mut keys: Vec<usize> = rows.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let mut row: SparseVec = rows
                .remove(&key)
                .unwrap()
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            row.sort_by_key(|(i, _)| *i);
            if !row.is_empty() {
                equations.insert(row);
            }
        }
    }
    Ok(words.len() - equations.dim())
}

/// `X` acting on `V^⊗k` as the derivation `Σ 1 ⊗ … ⊗ X ⊗ … ⊗ 1`.
pub fn derivation_power(x: &ExactMatrix, k: usize) -> ExactMatrix {
    let d = x.rows();
    let mut acc = ExactMatrix::zeros(d.pow(k as u32), d.pow(k as u32));
    let id = ExactMatrix::identity(d);
    for pos in 0..k {
        let mut term = ExactMatrix::identity(1);
        for i in 0..k {
            term = term.kron(if i == pos { x } else { &id });
        }
        acc = acc.add(&term).unwrap();
    }
    acc
}

fn group_power(g: &ExactMatrix, k: usize) -> ExactMatrix {
    (0..k).fold(ExactMatrix::identity(1), |acc, _| acc.kron(g))
}

/// Whether `f: V^⊗m → V^⊗n` commutes with the Lie algebra and the reflections.
pub fn is_equivariant(group: Group, f: &ExactMatrix, d: usize, m: usize, n: usize) -> Result<bool> {
    for x in lie_basis(group, d) {
        let lhs = derivation_power(&x, n).mul(f)?;
        let rhs = f.mul(&derivation_power(&x, m))?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    for r in reflections(group, d) {
        if group_power(&r, n).mul(f)? != f.mul(&group_power(&r, m))? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_small_dimensions() {
        assert_eq!(invariant_dimension(Group::Symplectic, 2, 0, 4).unwrap(), 2);
        assert_eq!(invariant_dimension(Group::Orthogonal, 2, 1, 1).unwrap(), 1);
        assert_eq!(invariant_dimension(Group::General, 2, 3, 3).unwrap(), 5);
        assert_eq!(invariant_dimension(Group::Orthogonal, 3, 2, 2).unwrap(), 3);
        assert_eq!(invariant_dimension(Group::Orthogonal, 1, 1, 1).unwrap(), 1);
    }

    #[test]
    fn odd_total_vanishes() {
        for (m, n) in [(0, 1), (1, 2), (2, 3)] {
            assert_eq!(invariant_dimension(Group::Orthogonal, 2, m, n).unwrap(), 0);
            assert_eq!(invariant_dimension(Group::Symplectic, 2, m, n).unwrap(), 0);
        }
        assert_eq!(invariant_dimension(Group::General, 2, 1, 3).unwrap(), 0);
    }

    #[test]
    fn symplectic_basis_preserves_j() {
        let j = super::super::TensorForm::skew(4).unwrap();
        let j = j.theta();
        for x in lie_basis(Group::Symplectic, 4) {
            let s = x.transpose().mul(j).unwrap().add(&j.mul(&x).unwrap()).unwrap();
            assert!(s.is_zero());
        }
        assert_eq!(lie_basis(Group::Symplectic, 4).len(), 10);
    }

    #[test]
    fn derivation_on_a_square() {
        let x = unit(2, 0, 1);
        let dx = derivation_power(&x, 2);
        assert_eq!(dx, x.kron(&ExactMatrix::identity(2)).add(&ExactMatrix::identity(2).kron(&x)).unwrap());
    }
}
