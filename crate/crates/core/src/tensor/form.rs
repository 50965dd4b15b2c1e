use num_traits::{Signed, Zero};
use serde::Serialize;

use super::check_budget;
use crate::diagram::{inversions, BrauerDiagram};
use crate::error::{Error, Result};
use crate::exactlin::{int, ExactMatrix, Rational};
use crate::linear::DiagramFunctor;
use crate::palette::{ColouredDiagram, Palette};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Symmetric,
    Skew,
}

/// A nondegenerate bilinear form on `V = Q^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorForm {
    d: usize,
    kind: FormKind,
    theta: ExactMatrix,
    delta_claimed: Rational,
}

impl TensorForm {
    /// The identity Gram matrix; claimed parameter `d`.
    pub fn symmetric(d: usize) -> Self {
        TensorForm {
            d,
            kind: FormKind::Symmetric,
            theta: ExactMatrix::identity(d),
            delta_claimed: int(d as i64),
        }
    }

    /// `J = [[0, I_k], [-I_k, 0]]` with `d = 2k`; claimed parameter `-k`.
    pub fn skew(d: usize) -> Result<Self> {
        if !d.is_multiple_of(2) {
            return Err(Error::Dimension(format!("skew forms need even d, got {d}")));
        }
        let k = d / 2;
        let theta = ExactMatrix::from_fn(d, d, |i, j| {
            if j == i + k {
                int(1)
            } else if i == j + k {
                int(-1)
            } else {
                Rational::zero()
            }
        });
        Ok(TensorForm {
            d,
            kind: FormKind::Skew,
            theta,
            delta_claimed: int(-(k as i64)),
        })
    }

    pub fn new(kind: FormKind, d: usize) -> Result<Self> {
        match kind {
            FormKind::Symmetric => Ok(Self::symmetric(d)),
            FormKind::Skew => Self::skew(d),
        }
    }

    /// Any Gram matrix; it must be invertible and (skew-)symmetric per `kind`.
    pub fn with_theta(kind: FormKind, theta: ExactMatrix, delta_claimed: Rational) -> Result<Self> {
        let d = theta.rows();
        if theta.cols() != d {
            return Err(Error::Dimension("Gram matrix must be square".into()));
        }
        let expected = match kind {
            FormKind::Symmetric => theta.clone(),
            FormKind::Skew => theta.scale(&int(-1)),
        };
        if theta.transpose() != expected {
            return Err(Error::Dimension(format!("Gram matrix is not {kind:?}")));
        }
        if theta.inverse()?.is_none() {
            return Err(Error::Dimension("Gram matrix is degenerate".into()));
        }
        Ok(TensorForm {
            d,
            kind,
            theta,
            delta_claimed,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn theta(&self) -> &ExactMatrix {
        &self.theta
    }

    pub fn delta_claimed(&self) -> &Rational {
        &self.delta_claimed
    }

    /// `|δ|` in its conventional normalization.
    pub fn claimed_abs(&self) -> usize {
        self.delta_claimed.abs().to_integer().try_into().unwrap_or(0)
    }
}

fn nonzero_entries(m: &ExactMatrix) -> Vec<(usize, usize, Rational)> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m.get(i, j).is_zero() {
                out.push((i, j, m.get(i, j).clone()));
            }
        }
    }
    out
}

/// The strict monoidal functor `Br -> vect` with `1 ↦ V`, `∩ ↦ θ`, and
/// crossings sent to `±swap` according to the kind of form.
#[derive(Clone, Debug)]
pub struct EvalFunctor {
    form: TensorForm,
    cup: ExactMatrix,
    theta_nz: Vec<(usize, usize, Rational)>,
    cup_nz: Vec<(usize, usize, Rational)>,
    loop_scalar: Rational,
}

/// Through strands, caps and cups of an open diagram, read off in a fixed
/// order, with the parity of the reordering.
struct Shape {
    through: Vec<(usize, usize)>,
    caps: Vec<(usize, usize)>,
    cups: Vec<(usize, usize)>,
    odd: bool,
}

fn shape(f: &BrauerDiagram) -> Shape {
    let m = f.m();
    let mut through = Vec::new();
    let mut caps = Vec::new();
    let mut cups = Vec::new();
    for &(a, b) in f.pairs() {
        match (a < m, b < m) {
            (true, true) => caps.push((a, b)),
            (true, false) => through.push((a, b - m)),
            _ => cups.push((a - m, b - m)),
        }
    }
    through.sort_by_key(|&(_, t)| t);
    let mut sword: Vec<usize> = through.iter().map(|&(s, _)| s).collect();
    let mut tword: Vec<usize> = through.iter().map(|&(_, t)| t).collect();
    for &(a, b) in &caps {
        sword.extend([a, b]);
    }
    for &(a, b) in &cups {
        tword.extend([a, b]);
    }
    let odd = (inversions(&sword) + inversions(&tword)) % 2 == 1;
    Shape {
        through,
        caps,
        cups,
        odd,
    }
}

impl EvalFunctor {
    pub fn new(form: TensorForm) -> Result<Self> {
        // The cup is whatever makes (∩ ⊕ 1)(1 ⊕ ∪) = 1 hold, i.e. θ·U = I.
        let cup = if form.d == 0 {
            ExactMatrix::zeros(0, 0)
        } else {
            solve_triangle(&form.theta)?
        };
        let theta_nz = nonzero_entries(&form.theta);
        let cup_nz = nonzero_entries(&cup);
        let mut loop_scalar = Rational::zero();
        for (i, j, u) in &cup_nz {
            loop_scalar += u * form.theta.get(*i, *j);
        }
        Ok(EvalFunctor {
            form,
            cup,
            theta_nz,
            cup_nz,
            loop_scalar,
        })
    }

    pub fn symmetric(d: usize) -> Self {
        Self::new(TensorForm::symmetric(d)).unwrap()
    }

    pub fn skew(d: usize) -> Result<Self> {
        Self::new(TensorForm::skew(d)?)
    }

    pub fn form(&self) -> &TensorForm {
        &self.form
    }

    pub fn d(&self) -> usize {
        self.form.d
    }

    /// `U[i][j]`, the coefficient of `e_i ⊗ e_j` in the image of `∪`.
    pub fn cup_matrix(&self) -> &ExactMatrix {
        &self.cup
    }

    /// The image of `○`.
    pub fn loop_scalar(&self) -> &Rational {
        &self.loop_scalar
    }

    fn twisted(&self) -> bool {
        self.form.kind == FormKind::Skew
    }

    /// The image of `f` as a column vector of length `d^(m+n)`, indexed by
    /// `(b, a)` with the output word most significant.
    pub fn hom_vector(&self, f: &BrauerDiagram) -> Result<Vec<Rational>> {
        let m = self.evaluate(f)?;
        let mut out = Vec::with_capacity(m.rows() * m.cols());
        for i in 0..m.rows() {
            out.extend_from_slice(m.row(i));
        }
        Ok(out)
    }
}

fn solve_triangle(theta: &ExactMatrix) -> Result<ExactMatrix> {
    let d = theta.rows();
    let mut columns = Vec::with_capacity(d);
    for k in 0..d {
        let e: Vec<Rational> = (0..d).map(|i| if i == k { int(1) } else { int(0) }).collect();
        let x = theta
            .solve(&e)?
            .ok_or_else(|| Error::Dimension("form is degenerate; no cup exists".into()))?;
        columns.push(x);
    }
    ExactMatrix::from_columns(d, &columns)
}

fn pow(base: usize, e: usize) -> usize {
    base.pow(e as u32)
}

impl DiagramFunctor for EvalFunctor {
    fn evaluate(&self, f: &BrauerDiagram) -> Result<ExactMatrix> {
        let d = self.form.d;
        let (m, n) = (f.m(), f.n());
        let rows = pow(d, n);
        let cols = pow(d, m);
        check_budget(rows.saturating_mul(cols))?;
        let mut out = ExactMatrix::zeros(rows, cols);
        let s = shape(f);
        let mut base = self.loop_scalar.pow(f.closed() as i32);
        if s.odd && self.twisted() {
            base = -base;
        }
        if base.is_zero() {
            return Ok(out);
        }
        let (mut a, mut b) = (vec![0usize; m], vec![0usize; n]);
        let mut fill = |a: &[usize], b: &[usize], c: Rational| {
            let row = b.iter().fold(0, |acc, &x| acc * d + x);
            let col = a.iter().fold(0, |acc, &x| acc * d + x);
            out.set(row, col, c);
        };
        self.assign(&s, 0, &mut a, &mut b, base, &mut fill);
        Ok(out)
    }
}

impl EvalFunctor {
    /// Runs through every labelling of the strands of `s` with a nonzero weight.
    fn assign(
        &self,
        s: &Shape,
        step: usize,
        a: &mut Vec<usize>,
        b: &mut Vec<usize>,
        weight: Rational,
        fill: &mut impl FnMut(&[usize], &[usize], Rational),
    ) {
        let (nt, nc) = (s.through.len(), s.caps.len());
        if step == nt + nc + s.cups.len() {
            fill(a, b, weight);
        } else if step < nt {
            let (x, y) = s.through[step];
            for v in 0..self.form.d {
                a[x] = v;
                b[y] = v;
                self.assign(s, step + 1, a, b, weight.clone(), fill);
            }
        } else if step < nt + nc {
            let (x, y) = s.caps[step - nt];
            for (i, j, w) in &self.theta_nz {
                a[x] = *i;
                a[y] = *j;
                self.assign(s, step + 1, a, b, &weight * w, fill);
            }
        } else {
            let (x, y) = s.cups[step - nt - nc];
            for (i, j, w) in &self.cup_nz {
                b[x] = *i;
                b[y] = *j;
                self.assign(s, step + 1, a, b, &weight * w, fill);
            }
        }
    }
}

/// Oriented diagrams into `vect` with `↑ ↦ V`, `↓ ↦ V*` and every cap or
/// cup sent to the evaluation or coevaluation of the dual bases.
///
/// Every colour of the palette is sent to a `d`-dimensional space, with
/// `c` and `ω c` dual to each other.
#[derive(Clone, Debug)]
pub struct OrientedEvalFunctor {
    d: usize,
}

impl OrientedEvalFunctor {
    pub fn new(d: usize) -> Self {
        OrientedEvalFunctor { d }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn loop_scalar(&self) -> Rational {
        int(self.d as i64)
    }

    pub fn evaluate(&self, palette: &Palette, f: &ColouredDiagram) -> Result<ExactMatrix> {
        if let Some(c) = (0..palette.len()).find(|&c| palette.omega(c) == c) {
            return Err(Error::Palette(format!(
                "colour {} is self-dual; the oriented functor needs V and V* distinct",
                palette.name(c)
            )));
        }
        // Dual bases make every pairing a Kronecker delta, so the matrix only
        // depends on the underlying diagram.
        let plain = EvalFunctor::symmetric(self.d);
        let out = plain.evaluate(&f.base().open_part())?;
        if f.closed().is_empty() {
            return Ok(out);
        }
        Ok(out.scale(&self.loop_scalar().pow(f.closed().len() as i32)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Permutation;
    use crate::exactlin::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn row(xs: &[i64]) -> ExactMatrix {
        ExactMatrix::from_rows(vec![xs.iter().map(|&x| int(x)).collect()]).unwrap()
    }

    #[test]
    fn generator_images() {
        let f = EvalFunctor::symmetric(2);
        assert_eq!(f.evaluate(&BrauerDiagram::cap()).unwrap(), row(&[1, 0, 0, 1]));
        assert_eq!(f.evaluate(&BrauerDiagram::identity(2)).unwrap(), ExactMatrix::identity(4));
        let s = EvalFunctor::skew(2).unwrap();
        assert_eq!(s.evaluate(&BrauerDiagram::cap()).unwrap(), row(&[0, 1, -1, 0]));
        let swap = f.evaluate(&BrauerDiagram::sym()).unwrap();
        assert_eq!(s.evaluate(&BrauerDiagram::sym()).unwrap(), swap.scale(&int(-1)));
    }

    #[test]
    fn loop_scalars() {
        for d in 1..=4 {
            assert_eq!(EvalFunctor::symmetric(d).loop_scalar(), &int(d as i64));
        }
        assert_eq!(EvalFunctor::skew(2).unwrap().loop_scalar(), &int(-2));
        assert_eq!(EvalFunctor::skew(4).unwrap().loop_scalar(), &int(-4));
        assert!(EvalFunctor::symmetric(0).evaluate(&BrauerDiagram::bubble()).unwrap().is_zero());
    }

    #[test]
    fn triangle_identities() {
        for f in [EvalFunctor::symmetric(3), EvalFunctor::skew(4).unwrap()] {
            let d = f.d();
            let l = BrauerDiagram::compose(
                &BrauerDiagram::oplus(&BrauerDiagram::identity(1), &BrauerDiagram::cup()),
                &BrauerDiagram::oplus(&BrauerDiagram::cap(), &BrauerDiagram::identity(1)),
            )
            .unwrap();
            let cup = f.evaluate(&BrauerDiagram::cup()).unwrap();
            let cap = f.evaluate(&BrauerDiagram::cap()).unwrap();
            let id = ExactMatrix::identity(d);
            let by_hand = cap.kron(&id).mul(&id.kron(&cup)).unwrap();
            assert_eq!(by_hand, id);
            assert_eq!(f.evaluate(&l).unwrap(), id);
            let by_hand = id.kron(&cap).mul(&cup.kron(&id)).unwrap();
            assert_eq!(by_hand, id);
        }
    }

    #[test]
    fn antisymmetrizer_beyond_dimension_vanishes() {
        let alg = crate::linear::BrauerAlgebra::specialized(int(2));
        let f = EvalFunctor::symmetric(2);
        assert!(f.evaluate_lin(&alg.antisymmetrizer(3)).unwrap().is_zero());
        assert!(!f.evaluate_lin(&alg.antisymmetrizer(2)).unwrap().is_zero());
    }

    #[test]
    fn functorial_on_random_diagrams() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in [EvalFunctor::symmetric(2), EvalFunctor::skew(2).unwrap()] {
            for _ in 0..60 {
                let (m, k, n) = (1 + rand::Rng::gen_range(&mut rng, 0..3), 2, 1 + rand::Rng::gen_range(&mut rng, 0..3));
                let n = if (k + n) % 2 == 1 { n + 1 } else { n };
                let m = if (m + k) % 2 == 1 { m + 1 } else { m };
                let x = BrauerDiagram::random_open(m, k, &mut rng).unwrap();
                let y = BrauerDiagram::random_open(k, n, &mut rng).unwrap();
                let xy = BrauerDiagram::compose(&x, &y).unwrap();
                let lhs = f.evaluate(&xy).unwrap();
                let rhs = f.evaluate(&y).unwrap().mul(&f.evaluate(&x).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{x} then {y}");
                let sum = BrauerDiagram::oplus(&x, &y);
                let kron = f.evaluate(&x).unwrap().kron(&f.evaluate(&y).unwrap());
                assert_eq!(f.evaluate(&sum).unwrap(), kron);
            }
        }
    }

    #[test]
    fn skew_permutations_carry_their_sign() {
        let f = EvalFunctor::skew(2).unwrap();
        let plain = EvalFunctor::symmetric(2);
        for p in Permutation::all(3) {
            let d = BrauerDiagram::permutation(&p);
            let expected = plain.evaluate(&d).unwrap().scale(&int(p.sign() as i64));
            assert_eq!(f.evaluate(&d).unwrap(), expected);
        }
    }

    #[test]
    fn custom_gram_matrix() {
        let theta = ExactMatrix::from_rows(vec![vec![int(2), int(0)], vec![int(0), rat(1, 3)]]).unwrap();
        let f = EvalFunctor::new(TensorForm::with_theta(FormKind::Symmetric, theta, int(2)).unwrap()).unwrap();
        assert_eq!(f.loop_scalar(), &int(2));
        assert!(TensorForm::with_theta(FormKind::Skew, ExactMatrix::identity(2), int(1)).is_err());
    }

    #[test]
    fn oriented_triangles() {
        let p = Palette::oriented(&["v"]);
        let up = p.colour("v_up").unwrap();
        let dn = p.colour("v_dn").unwrap();
        let f = OrientedEvalFunctor::new(3);
        for c in [up, dn] {
            let id = ColouredDiagram::identity(&p, &[c]);
            let bend = crate::palette::coloured_compose(
                &p,
                &crate::palette::coloured_oplus(&id, &ColouredDiagram::cup(&p, p.omega(c))),
                &crate::palette::coloured_oplus(&ColouredDiagram::cap(&p, p.omega(c)), &id),
            )
            .unwrap();
            assert_eq!(bend, id);
            assert_eq!(f.evaluate(&p, &bend).unwrap(), ExactMatrix::identity(3));
        }
        let bubble = crate::palette::coloured_compose(
            &p,
            &ColouredDiagram::cup(&p, up),
            &ColouredDiagram::cap(&p, dn),
        )
        .unwrap();
        assert_eq!(f.evaluate(&p, &bubble).unwrap(), ExactMatrix::scalar(int(3)));
        assert!(f.evaluate(&Palette::monochrome(), &ColouredDiagram::identity(&Palette::monochrome(), &[0])).is_err());
    }
}
