//! Linear Brauer categories `Br_t` (coefficients in `Q[t]`) and `Br_δ`
//! (rational coefficients, `t` specialised to `δ`).
//!
//! Elements are combinations of open diagrams; every closed loop produced by
//! composition is absorbed into the coefficient as a factor of the loop value.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::diagram::{BrauerDiagram, Permutation};
use crate::error::{Error, Result};
use crate::exactlin::{
    ExactMatrix, LinComb, Poly, Rational, Scalar, SparseVec, Subspace,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinDiagram<S: Scalar> {
    m: usize,
    n: usize,
    terms: LinComb<BrauerDiagram, S>,
}

impl<S: Scalar> LinDiagram<S> {
    /// Builds `Σ c·d`; every `d` must be an open diagram `m -> n`.
    pub fn new(m: usize, n: usize, terms: impl IntoIterator<Item = (BrauerDiagram, S)>) -> Result<Self> {
        let terms: Vec<_> = terms.into_iter().collect();
        for (d, _) in &terms {
            if (d.m(), d.n()) != (m, n) {
                return Err(Error::ArityMismatch {
                    expected: m + n,
                    found: d.m() + d.n(),
                });
            }
            if !d.is_open() {
                return Err(Error::InvalidPairing(format!(
                    "{d} has closed loops; absorb them into the coefficient"
                )));
            }
        }
        Ok(LinDiagram {
            m,
            n,
            terms: LinComb::from_terms(terms),
        })
    }

    pub fn zero(m: usize, n: usize) -> Self {
        LinDiagram {
            m,
            n,
            terms: LinComb::zero(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &LinComb<BrauerDiagram, S> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, d: &BrauerDiagram) -> S {
        self.terms.coeff(d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BrauerDiagram, &S)> {
        self.terms.iter()
    }

    fn check_same_type(&self, other: &Self) -> Result<()> {
        if (self.m, self.n) != (other.m, other.n) {
            return Err(Error::ArityMismatch {
                expected: self.m + self.n,
                found: other.m + other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_type(other)?;
        Ok(LinDiagram {
            m: self.m,
            n: self.n,
            terms: self.terms.add(&other.terms),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_type(other)?;
        Ok(LinDiagram {
            m: self.m,
            n: self.n,
            terms: self.terms.sub(&other.terms),
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        LinDiagram {
            m: self.m,
            n: self.n,
            terms: self.terms.scale(c),
        }
    }
}

impl<S: Scalar + std::fmt::Display> std::fmt::Display for LinDiagram<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0 in {}->{}", self.m, self.n);
        }
        write!(f, "{}", self.terms)
    }
}

/// Composition rules for one choice of loop value.
#[derive(Clone, Debug)]
pub struct BrauerAlgebra<S: Scalar> {
    loop_value: S,
}

impl BrauerAlgebra<Poly> {
    /// `Br_t` with the loop as the indeterminate.
    pub fn generic() -> Self {
        BrauerAlgebra {
            loop_value: Poly::t(),
        }
    }
}

impl BrauerAlgebra<Rational> {
    /// `Br_δ`.
    pub fn specialized(delta: Rational) -> Self {
        BrauerAlgebra { loop_value: delta }
    }
}

impl<S: Scalar> BrauerAlgebra<S> {
    pub fn loop_value(&self) -> &S {
        &self.loop_value
    }

    /// The image of a single diagram, loops turned into loop-value powers.
    pub fn diagram(&self, d: &BrauerDiagram) -> LinDiagram<S> {
        LinDiagram {
            m: d.m(),
            n: d.n(),
            terms: LinComb::term(d.open_part(), self.loop_value.pow(d.closed())),
        }
    }

    pub fn identity(&self, n: usize) -> LinDiagram<S> {
        self.diagram(&BrauerDiagram::identity(n))
    }

    /// `y ∘ x`: `x` applied first.
    pub fn compose(&self, x: &LinDiagram<S>, y: &LinDiagram<S>) -> Result<LinDiagram<S>> {
        if x.n != y.m {
            return Err(Error::ArityMismatch {
                expected: x.n,
                found: y.m,
            });
        }
        let mut terms = LinComb::zero();
        for (a, c) in x.terms.iter() {
            for (b, e) in y.terms.iter() {
                let ab = BrauerDiagram::compose(a, b)?;
                let coeff = c.clone() * e.clone() * self.loop_value.pow(ab.closed());
                terms.add_term(ab.open_part(), coeff);
            }
        }
        Ok(LinDiagram {
            m: x.m,
            n: y.n,
            terms,
        })
    }

    pub fn oplus(&self, x: &LinDiagram<S>, y: &LinDiagram<S>) -> LinDiagram<S> {
        LinDiagram {
            m: x.m + y.m,
            n: x.n + y.n,
            terms: x
                .terms
                .bilinear(&y.terms, |a, b| LinComb::single(BrauerDiagram::oplus(a, b))),
        }
    }

    /// `Σ_σ sgn(σ) σ` in `(k, k)`.
    pub fn antisymmetrizer(&self, k: usize) -> LinDiagram<S> {
        self.signed_sum(k, BrauerDiagram::permutation)
    }

    /// `Σ_σ sgn(σ) coev(σ)` in `(0, 2k)`.
    pub fn coev_antisymmetrizer(&self, k: usize) -> LinDiagram<S> {
        self.signed_sum(k, |p| BrauerDiagram::permutation(p).coev())
    }

    fn signed_sum(&self, k: usize, f: impl Fn(&Permutation) -> BrauerDiagram) -> LinDiagram<S> {
        let mut out: Option<LinDiagram<S>> = None;
        for p in Permutation::all(k) {
            let d = f(&p);
            let c = if p.sign() > 0 { S::one() } else { -S::one() };
            let term = LinDiagram {
                m: d.m(),
                n: d.n(),
                terms: LinComb::term(d, c),
            };
            out = Some(match out {
                None => term,
                Some(acc) => acc.add(&term).unwrap(),
            });
        }
        out.unwrap()
    }

    /// Closes the last strand of `x: n+1 -> n+1` into a loop.
    pub fn partial_trace(&self, x: &LinDiagram<S>) -> Result<LinDiagram<S>> {
        if x.m != x.n || x.m == 0 {
            return Err(Error::ArityMismatch {
                expected: x.m.max(1),
                found: x.n,
            });
        }
        let n = x.m - 1;
        let top = self.diagram(&BrauerDiagram::oplus(
            &BrauerDiagram::identity(n),
            &BrauerDiagram::cup(),
        ));
        let mid = self.oplus(x, &self.identity(1));
        let bottom = self.diagram(&BrauerDiagram::oplus(
            &BrauerDiagram::identity(n),
            &BrauerDiagram::cap(),
        ));
        self.compose(&self.compose(&top, &mid)?, &bottom)
    }
}

pub fn specialize_lin(x: &LinDiagram<Poly>, delta: &Rational) -> LinDiagram<Rational> {
    LinDiagram {
        m: x.m,
        n: x.n,
        terms: crate::exactlin::specialize(&x.terms, delta),
    }
}

/// Open diagrams `m -> n` with a lookup table, used as coordinates.
#[derive(Clone, Debug)]
pub struct OpenBasis {
    pub m: usize,
    pub n: usize,
    diagrams: Vec<BrauerDiagram>,
    index: HashMap<BrauerDiagram, usize>,
}

impl OpenBasis {
    pub fn new(m: usize, n: usize) -> Self {
        Self::from_diagrams(m, n, BrauerDiagram::enumerate_open(m, n))
    }

    pub fn permutations(n: usize) -> Self {
        let mut ds: Vec<BrauerDiagram> = Permutation::all(n)
            .iter()
            .map(BrauerDiagram::permutation)
            .collect();
        ds.sort();
        Self::from_diagrams(n, n, ds)
    }

    fn from_diagrams(m: usize, n: usize, diagrams: Vec<BrauerDiagram>) -> Self {
        let index = diagrams
            .iter()
            .enumerate()
            .map(|(i, d)| (d.clone(), i))
            .collect();
        OpenBasis {
            m,
            n,
            diagrams,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn diagrams(&self) -> &[BrauerDiagram] {
        &self.diagrams
    }

    pub fn index_of(&self, d: &BrauerDiagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn to_vector(&self, x: &LinDiagram<Rational>) -> Result<SparseVec> {
        let mut v: SparseVec = Vec::with_capacity(x.terms.len());
        for (d, c) in x.terms.iter() {
            let i = self.index_of(d).ok_or_else(|| {
                Error::Unsupported(format!("{d} lies outside the chosen basis"))
            })?;
            v.push((i, c.clone()));
        }
        v.sort_by_key(|(i, _)| *i);
        Ok(v)
    }

    pub fn from_vector(&self, v: &SparseVec) -> LinDiagram<Rational> {
        LinDiagram {
            m: self.m,
            n: self.n,
            terms: LinComb::from_terms(v.iter().map(|(i, c)| (self.diagrams[*i].clone(), c.clone()))),
        }
    }
}

/// Which single diagrams the ideal is closed under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    /// All open Brauer diagrams.
    Brauer,
    /// Permutations only, inside the symmetric group algebras.
    Symmetric,
}

/// The slices `I(m, n)`, `m + n <= bound`, of a two-sided tensor ideal in `Br_δ`.
#[derive(Clone, Debug)]
pub struct IdealSlices {
    pub delta: Rational,
    pub bound: usize,
    pub closure: Closure,
    slices: BTreeMap<(usize, usize), Subspace>,
    bases: BTreeMap<(usize, usize), OpenBasis>,
}

impl IdealSlices {
    pub fn slice(&self, m: usize, n: usize) -> Option<&Subspace> {
        self.slices.get(&(m, n))
    }

    pub fn basis(&self, m: usize, n: usize) -> Option<&OpenBasis> {
        self.bases.get(&(m, n))
    }

    pub fn dim(&self, m: usize, n: usize) -> usize {
        self.slice(m, n).map_or(0, |s| s.dim())
    }

    pub fn elements(&self, m: usize, n: usize) -> Vec<LinDiagram<Rational>> {
        match (self.slice(m, n), self.basis(m, n)) {
            (Some(s), Some(b)) => s.basis().iter().map(|v| b.from_vector(v)).collect(),
            _ => Vec::new(),
        }
    }

    /// Every `(m, n)` with a non-zero slice.
    pub fn support(&self) -> Vec<(usize, usize)> {
        self.slices
            .iter()
            .filter(|(_, s)| s.dim() > 0)
            .map(|(k, _)| *k)
            .collect()
    }

    fn basis_for(&mut self, m: usize, n: usize) -> &OpenBasis {
        let closure = self.closure;
        self.bases.entry((m, n)).or_insert_with(|| match closure {
            Closure::Brauer => OpenBasis::new(m, n),
            Closure::Symmetric => OpenBasis::permutations(n),
        })
    }

    fn insert(&mut self, x: &LinDiagram<Rational>) -> Result<bool> {
        let (m, n) = (x.m, x.n);
        let v = self.basis_for(m, n).to_vector(x)?;
        let ambient = self.basis_for(m, n).len();
        Ok(self
            .slices
            .entry((m, n))
            .or_insert_with(|| Subspace::new(ambient))
            .insert(v))
    }
}

fn padded(i: usize, core: &BrauerDiagram, j: usize) -> BrauerDiagram {
    BrauerDiagram::oplus_all([
        &BrauerDiagram::identity(i),
        core,
        &BrauerDiagram::identity(j),
    ])
}

/// Elementary diagrams with source `k`: a single cup, cap or crossing among
/// identity strands.
fn elementary_from(k: usize, closure: Closure) -> Vec<BrauerDiagram> {
    let mut out = Vec::new();
    for i in 0..k.saturating_sub(1) {
        out.push(padded(i, &BrauerDiagram::sym(), k - 2 - i));
        if closure == Closure::Brauer {
            out.push(padded(i, &BrauerDiagram::cap(), k - 2 - i));
        }
    }
    if closure == Closure::Brauer {
        for i in 0..=k {
            out.push(padded(i, &BrauerDiagram::cup(), k - i));
        }
    }
    out
}

/// Applies a relabelling of boundary points termwise; `None` if it does not apply.
fn bent(
    x: &LinDiagram<Rational>,
    f: impl Fn(&BrauerDiagram) -> Option<BrauerDiagram>,
) -> Option<LinDiagram<Rational>> {
    let mut terms = Vec::with_capacity(x.terms.len());
    for (d, c) in x.iter() {
        terms.push((f(d)?, c.clone()));
    }
    let (m, n) = terms.first().map(|(d, _)| (d.m(), d.n()))?;
    Some(LinDiagram {
        m,
        n,
        terms: LinComb::from_terms(terms),
    })
}

/// Smallest subspaces containing `generators` and closed under padding with
/// identity strands, bending a boundary point across, and composition with
/// single open diagrams, with every slice kept inside `m + n <= bound`.
///
/// A general element `h ∘ (x ⊕ 1) ∘ g` of a slice of total `N` bends to a
/// permutation of partial traces of `x` beside some cups, all of total at
/// most `N`, so these moves reach the whole slice.
pub fn ideal_saturate(
    generators: &[LinDiagram<Rational>],
    delta: &Rational,
    bound: usize,
    closure: Closure,
) -> Result<IdealSlices> {
    let alg = BrauerAlgebra::specialized(delta.clone());
    let mut ideal = IdealSlices {
        delta: delta.clone(),
        bound,
        closure,
        slices: BTreeMap::new(),
        bases: BTreeMap::new(),
    };
    let mut queue: VecDeque<LinDiagram<Rational>> = VecDeque::new();
    for g in generators {
        if g.m + g.n <= bound && !g.is_zero() && ideal.insert(g)? {
            queue.push_back(g.clone());
        }
    }
    let mut from_cache: HashMap<usize, Vec<LinDiagram<Rational>>> = HashMap::new();
    let mut elementary = |k: usize| -> Vec<LinDiagram<Rational>> {
        from_cache
            .entry(k)
            .or_insert_with(|| {
                elementary_from(k, closure)
                    .iter()
                    .map(|d| alg.diagram(d))
                    .collect()
            })
            .clone()
    };
    let id1 = alg.identity(1);
    while let Some(x) = queue.pop_front() {
        let mut next = Vec::new();
        for e in elementary(x.n) {
            if x.m + e.n() <= bound {
                next.push(alg.compose(&x, &e)?);
            }
        }
        let mut sources = vec![x.m, x.m + 2];
        if x.m >= 2 {
            sources.push(x.m - 2);
        }
        for k in sources {
            if k + x.n > bound {
                continue;
            }
            for e in elementary(k) {
                if e.n() == x.m {
                    next.push(alg.compose(&e, &x)?);
                }
            }
        }
        if closure == Closure::Brauer {
            next.extend(bent(&x, BrauerDiagram::bend_down));
            next.extend(bent(&x, BrauerDiagram::bend_up));
        }
        if x.m + x.n + 2 <= bound && !(closure == Closure::Symmetric && x.m != x.n) {
            next.push(alg.oplus(&x, &id1));
            next.push(alg.oplus(&id1, &x));
        }
        for y in next {
            if !y.is_zero() && ideal.insert(&y)? {
                queue.push_back(y);
            }
        }
    }
    Ok(ideal)
}

/// A strict monoidal functor out of the Brauer category, given on diagrams.
pub trait DiagramFunctor {
    fn evaluate(&self, f: &BrauerDiagram) -> Result<ExactMatrix>;

    fn evaluate_lin(&self, x: &LinDiagram<Rational>) -> Result<ExactMatrix> {
        let mut acc: Option<ExactMatrix> = None;
        for (d, c) in x.iter() {
            let term = self.evaluate(d)?.scale(c);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term)?,
            });
        }
        match acc {
            Some(a) => Ok(a),
            None => {
                let id = |k: usize| self.evaluate(&BrauerDiagram::identity(k));
                let (rows, cols) = (id(x.n())?.rows(), id(x.m())?.cols());
                Ok(ExactMatrix::zeros(rows, cols))
            }
        }
    }
}

/// Whether the functor kills `○ - δ`, i.e. sends the loop to `δ`.
pub fn factors_through_delta(functor: &dyn DiagramFunctor, delta: &Rational) -> Result<bool> {
    let bubble = functor.evaluate(&BrauerDiagram::bubble())?;
    Ok(bubble == ExactMatrix::scalar(delta.clone()))
}

/// `dim Br(m, n) = (m+n-1)!!` counted by enumeration.
pub fn hom_dimension(m: usize, n: usize) -> usize {
    BrauerDiagram::enumerate_open(m, n).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, rat};
    use num_traits::One;

    fn br(delta: i64) -> BrauerAlgebra<Rational> {
        BrauerAlgebra::specialized(int(delta))
    }

    #[test]
    fn antisymmetrizer_is_quasi_idempotent() {
        let a = br(3);
        for k in 1..=4usize {
            let e = a.antisymmetrizer(k);
            let fact: i64 = (1..=k as i64).product();
            assert_eq!(a.compose(&e, &e).unwrap(), e.scale(&int(fact)));
            for p in Permutation::all(k) {
                let s = a.diagram(&BrauerDiagram::permutation(&p));
                assert_eq!(a.compose(&e, &s).unwrap(), e.scale(&int(p.sign() as i64)));
                assert_eq!(a.compose(&s, &e).unwrap(), e.scale(&int(p.sign() as i64)));
            }
        }
    }

    #[test]
    fn partial_trace_of_e2() {
        let g = BrauerAlgebra::generic();
        let tr = g.partial_trace(&g.antisymmetrizer(2)).unwrap();
        let expected = g.identity(1).scale(&(Poly::t() - Poly::one()));
        assert_eq!(tr, expected);
        let a = br(1);
        assert!(a.partial_trace(&a.antisymmetrizer(2)).unwrap().is_zero());
        assert_eq!(specialize_lin(&tr, &int(1)), LinDiagram::zero(1, 1));
    }

    #[test]
    fn loops_become_powers() {
        let g = BrauerAlgebra::generic();
        let x = g
            .compose(&g.diagram(&BrauerDiagram::cup()), &g.diagram(&BrauerDiagram::cap()))
            .unwrap();
        assert_eq!(x.coeff(&BrauerDiagram::empty()), Poly::t());
        let half = BrauerAlgebra::specialized(rat(1, 2));
        let y = half
            .compose(&half.diagram(&BrauerDiagram::cup()), &half.diagram(&BrauerDiagram::cap()))
            .unwrap();
        assert_eq!(y.coeff(&BrauerDiagram::empty()), rat(1, 2));
    }

    #[test]
    fn coev_antisymmetrizer_small_cases() {
        let a = br(2);
        let x = a.coev_antisymmetrizer(1);
        assert_eq!(x, a.diagram(&BrauerDiagram::cup()));
        let y = a.coev_antisymmetrizer(2);
        assert_eq!(y.terms().len(), 2);
        assert_eq!((y.m(), y.n()), (0, 4));
    }

    #[test]
    fn e2_ideal_at_delta_one() {
        let a = br(1);
        let ideal = ideal_saturate(&[a.antisymmetrizer(2)], &int(1), 4, Closure::Brauer).unwrap();
        assert_eq!(ideal.dim(1, 1), 0);
        assert_eq!(ideal.dim(0, 0), 0);
        // Bending through (0, 4) also reaches id - cup∘cap.
        assert_eq!(ideal.dim(2, 2), 2);
        assert_eq!(ideal.dim(0, 4), 2);
        let e = a.antisymmetrizer(2);
        let basis = ideal.basis(2, 2).unwrap();
        assert!(ideal.slice(2, 2).unwrap().contains(&basis.to_vector(&e).unwrap()));
    }

    #[test]
    fn hom_dims_are_double_factorials() {
        let expected = [1, 1, 3, 15, 105];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(hom_dimension(n, n), e);
        }
    }
}
