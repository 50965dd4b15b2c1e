//! Wheeled props on one oriented colour and the passage to and from
//! circuit algebras over the oriented palette.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{int, ExactMatrix, Rational};
use crate::palette::{Colour, Orientation, Palette};

use super::algebra::{finish, CachedCa, permutation_action, AxiomReport, CircuitAlgebra, Tally};

/// An element of `P(m, n)` as a column vector.
///
/// For tensor props the coordinates are `(a, b)`, inputs most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub m: usize,
    pub n: usize,
    pub data: ExactMatrix,
}

impl Morphism {
    /// From a `d^n × d^m` matrix.
    pub fn from_matrix(d: usize, m: usize, n: usize, matrix: &ExactMatrix) -> Result<Self> {
        let (rows, cols) = (d.pow(n as u32), d.pow(m as u32));
        if matrix.rows() != rows || matrix.cols() != cols {
            return Err(Error::Dimension(format!(
                "expected {rows}x{cols}, found {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let mut v = vec![int(0); rows * cols];
        for b in 0..rows {
            for a in 0..cols {
                v[a * rows + b] = matrix.get(b, a).clone();
            }
        }
        Ok(Morphism {
            m,
            n,
            data: ExactMatrix::column_vector(v),
        })
    }

    pub fn to_matrix(&self, d: usize) -> ExactMatrix {
        let (rows, cols) = (d.pow(self.n as u32), d.pow(self.m as u32));
        ExactMatrix::from_fn(rows, cols, |b, a| self.data.get(a * rows + b, 0).clone())
    }
}

/// A wheeled prop on one colour: a symmetric monoidal category generated by
/// one object, with a trace.
pub trait WheeledProp {
    fn dim(&self, m: usize, n: usize) -> Result<usize>;

    /// `g ∘ f`.
    fn compose(&self, f: &Morphism, g: &Morphism) -> Result<Morphism>;

    fn tensor(&self, f: &Morphism, g: &Morphism) -> Result<Morphism>;

    /// Traces the last input against the last output.
    fn trace(&self, f: &Morphism) -> Result<Morphism>;

    fn identity(&self, n: usize) -> Result<Morphism>;

    /// `σ ∈ P(2, 2)`.
    fn symmetry(&self) -> Result<Morphism>;
}

fn check_composable(f: &Morphism, g: &Morphism) -> Result<()> {
    if f.n != g.m {
        return Err(Error::ArityMismatch {
            expected: f.n,
            found: g.m,
        });
    }
    Ok(())
}

fn check_traceable(f: &Morphism) -> Result<()> {
    if f.m == 0 || f.n == 0 {
        return Err(Error::Unsupported("trace needs an input and an output".into()));
    }
    Ok(())
}

/// `P(m, n) = Hom(V^⊗m, V^⊗n)` for `dim V = d`.
pub struct TensorWheeledProp {
    d: usize,
}

impl TensorWheeledProp {
    pub fn new(d: usize) -> Self {
        TensorWheeledProp { d }
    }

    pub fn d(&self) -> usize {
        self.d
    }
}

impl WheeledProp for TensorWheeledProp {
    fn dim(&self, m: usize, n: usize) -> Result<usize> {
        let size = self.d.pow((m + n) as u32);
        crate::tensor::check_budget(size)?;
        Ok(size)
    }

    fn compose(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        check_composable(f, g)?;
        let prod = g.to_matrix(self.d).mul(&f.to_matrix(self.d))?;
        Morphism::from_matrix(self.d, f.m, g.n, &prod)
    }

    fn tensor(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        let k = f.to_matrix(self.d).kron(&g.to_matrix(self.d));
        Morphism::from_matrix(self.d, f.m + g.m, f.n + g.n, &k)
    }

    fn trace(&self, f: &Morphism) -> Result<Morphism> {
        check_traceable(f)?;
        let d = self.d;
        let x = f.to_matrix(d);
        let (rows, cols) = (d.pow(f.n as u32 - 1), d.pow(f.m as u32 - 1));
        let t = ExactMatrix::from_fn(rows, cols, |b, a| {
            let mut s = int(0);
            for k in 0..d {
                s += x.get(b * d + k, a * d + k);
            }
            s
        });
        Morphism::from_matrix(d, f.m - 1, f.n - 1, &t)
    }

    fn identity(&self, n: usize) -> Result<Morphism> {
        let k = self.d.pow(n as u32);
        Morphism::from_matrix(self.d, n, n, &ExactMatrix::identity(k))
    }

    fn symmetry(&self) -> Result<Morphism> {
        let d = self.d;
        let s = ExactMatrix::from_fn(d * d, d * d, |b, a| {
            int(if b == (a % d) * d + a / d { 1 } else { 0 })
        });
        Morphism::from_matrix(d, 2, 2, &s)
    }
}

fn down() -> Colour {
    Palette::oriented_colour(0, Orientation::Down)
}

fn up() -> Colour {
    Palette::oriented_colour(0, Orientation::Up)
}

/// Inputs are `↓` legs, outputs `↑` legs.
fn prop_word(m: usize, n: usize) -> Vec<Colour> {
    let mut w = vec![down(); m];
    w.extend(std::iter::repeat_n(up(), n));
    w
}

fn column(m: &ExactMatrix) -> Result<()> {
    if m.cols() != 1 {
        return Err(Error::Dimension("expected a column vector".into()));
    }
    Ok(())
}

/// The wheeled prop `P(m, n) = A(↓^m ↑^n)` of an oriented circuit algebra.
pub struct CaProp<'a> {
    ca: CachedCa<'a>,
    shuffles: RefCell<HashMap<Vec<usize>, Rc<ExactMatrix>>>,
}

/// Rejects palettes other than one colour and its dual.
pub fn ca_to_wheeled_prop(ca: &dyn CircuitAlgebra) -> Result<CaProp<'_>> {
    let p = ca.palette();
    if p.len() != 2 || p.omega(up()) != down() {
        return Err(Error::Palette(
            "a wheeled prop needs the oriented palette on one colour".into(),
        ));
    }
    Ok(CaProp {
        ca: CachedCa::new(ca),
        shuffles: RefCell::new(HashMap::new()),
    })
}

impl CaProp<'_> {
    fn shuffle(&self, word: &[Colour], images: &[usize]) -> Result<Rc<ExactMatrix>> {
        let mut key = images.to_vec();
        key.extend(word.iter().map(|&c| usize::MAX - c));
        if let Some(m) = self.shuffles.borrow().get(&key) {
            return Ok(m.clone());
        }
        let m = Rc::new(permutation_action(&self.ca, word, images)?);
        self.shuffles.borrow_mut().insert(key, m.clone());
        Ok(m)
    }

    fn product(&self, f: &Morphism, g: &Morphism) -> Result<ExactMatrix> {
        column(&f.data)?;
        column(&g.data)?;
        self.ca
            .product_rc(&prop_word(f.m, f.n), &prop_word(g.m, g.n))?
            .mul(&f.data.kron(&g.data))
    }
}

impl WheeledProp for CaProp<'_> {
    fn dim(&self, m: usize, n: usize) -> Result<usize> {
        self.ca.dim(&prop_word(m, n))
    }

    fn compose(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        check_composable(f, g)?;
        let (m, n) = (f.m, f.n);
        let mut v = self.product(f, g)?;
        let mut word = [prop_word(m, n), prop_word(n, g.n)].concat();
        for t in 0..n {
            // The next output of f sits at m, the next input of g after
            // the remaining outputs of f.
            let j = m + (n - t);
            v = self.ca.contraction_rc(&word, m, j)?.mul(&v)?;
            word.remove(j);
            word.remove(m);
        }
        Ok(Morphism { m, n: g.n, data: v })
    }

    fn tensor(&self, f: &Morphism, g: &Morphism) -> Result<Morphism> {
        let v = self.product(f, g)?;
        let (m, n, m2, n2) = (f.m, f.n, g.m, g.n);
        let word = [prop_word(m, n), prop_word(m2, n2)].concat();
        let images: Vec<usize> = (0..word.len())
            .map(|k| {
                if k < m {
                    k
                } else if k < m + n {
                    m2 + k
                } else if k < m + n + m2 {
                    k - n
                } else {
                    k
                }
            })
            .collect();
        let data = self.shuffle(&word, &images)?.mul(&v)?;
        Ok(Morphism {
            m: m + m2,
            n: n + n2,
            data,
        })
    }

    fn trace(&self, f: &Morphism) -> Result<Morphism> {
        check_traceable(f)?;
        let word = prop_word(f.m, f.n);
        let data = self.ca.contraction_rc(&word, f.m - 1, f.m + f.n - 1)?.mul(&f.data)?;
        Ok(Morphism {
            m: f.m - 1,
            n: f.n - 1,
            data,
        })
    }

    fn identity(&self, n: usize) -> Result<Morphism> {
        let eps = self.ca.epsilon_rc(down())?;
        let mut v = self.ca.unit()?;
        let mut word: Vec<Colour> = Vec::new();
        for _ in 0..n {
            v = self.ca.product_rc(&word, &[down(), up()])?.mul(&v.kron(&eps))?;
            word.extend([down(), up()]);
        }
        let images: Vec<usize> = (0..2 * n).map(|k| if k % 2 == 0 { k / 2 } else { n + k / 2 }).collect();
        let data = self.shuffle(&word, &images)?.mul(&v)?;
        Ok(Morphism { m: n, n, data })
    }

    fn symmetry(&self) -> Result<Morphism> {
        let eps = self.ca.epsilon_rc(down())?;
        let pair = [down(), up()];
        let v = self.ca.product_rc(&pair, &pair)?.mul(&eps.kron(&eps))?;
        let word = [pair, pair].concat();
        let data = self.shuffle(&word, &[0, 3, 1, 2])?.mul(&v)?;
        Ok(Morphism { m: 2, n: 2, data })
    }
}

/// Position of each leg of `word` in its walled form, `↓` legs first.
fn walled_images(word: &[Colour]) -> (usize, usize, Vec<usize>) {
    let m = word.iter().filter(|&&c| c == down()).count();
    let (mut di, mut ui) = (0, m);
    let images = word
        .iter()
        .map(|&c| {
            if c == down() {
                di += 1;
                di - 1
            } else {
                ui += 1;
                ui - 1
            }
        })
        .collect();
    (m, word.len() - m, images)
}

/// The oriented circuit algebra `A(w) = P(#↓, #↑)` of a wheeled prop,
/// identified through the walled form of `w`.
pub struct PropCa<'a> {
    prop: &'a dyn WheeledProp,
    palette: Palette,
    cache: RefCell<HashMap<(u8, Vec<Colour>, usize, usize), ExactMatrix>>,
}

pub fn wheeled_prop_to_ca(prop: &dyn WheeledProp) -> PropCa<'_> {
    PropCa {
        prop,
        palette: Palette::oriented(&["v"]),
        cache: RefCell::new(HashMap::new()),
    }
}

impl PropCa<'_> {
    fn cached(
        &self,
        key: (u8, Vec<Colour>, usize, usize),
        build: impl FnOnce() -> Result<ExactMatrix>,
    ) -> Result<ExactMatrix> {
        if let Some(m) = self.cache.borrow().get(&key) {
            return Ok(m.clone());
        }
        let m = build()?;
        self.cache.borrow_mut().insert(key, m.clone());
        Ok(m)
    }

    fn check_word(&self, word: &[Colour]) -> Result<()> {
        if let Some(&c) = word.iter().find(|&&c| c >= 2) {
            return Err(Error::Palette(format!("colour index {c} out of range")));
        }
        Ok(())
    }

    fn basis(&self, m: usize, n: usize) -> Result<Vec<Morphism>> {
        let dim = self.prop.dim(m, n)?;
        Ok((0..dim)
            .map(|k| {
                let v = (0..dim).map(|x| int(if x == k { 1 } else { 0 })).collect();
                Morphism {
                    m,
                    n,
                    data: ExactMatrix::column_vector(v),
                }
            })
            .collect())
    }

    /// Matrix of a linear map on `P(m, n)` from its values on a basis.
    fn tabulate(
        &self,
        m: usize,
        n: usize,
        rows: usize,
        f: impl Fn(&Morphism) -> Result<Morphism>,
    ) -> Result<ExactMatrix> {
        let columns: Result<Vec<Vec<Rational>>> = self
            .basis(m, n)?
            .iter()
            .map(|b| Ok(f(b)?.data.column(0)))
            .collect();
        ExactMatrix::from_columns(rows, &columns?)
    }

    /// Permutation morphism on `n` strands taking input `p` to output `images[p]`.
    fn permutation(&self, n: usize, images: &[usize]) -> Result<Morphism> {
        let mut acc = self.prop.identity(n)?;
        let mut strands: Vec<usize> = (0..n).collect();
        let mut sorted = false;
        while !sorted {
            sorted = true;
            for k in 0..n.saturating_sub(1) {
                if images[strands[k]] > images[strands[k + 1]] {
                    let left = self.prop.tensor(&self.prop.identity(k)?, &self.prop.symmetry()?)?;
                    let s = self.prop.tensor(&left, &self.prop.identity(n - k - 2)?)?;
                    acc = self.prop.compose(&acc, &s)?;
                    strands.swap(k, k + 1);
                    sorted = false;
                }
            }
        }
        Ok(acc)
    }
}

fn move_to_end(n: usize, k: usize) -> Vec<usize> {
    (0..n)
        .map(|x| if x == k { n - 1 } else if x > k { x - 1 } else { x })
        .collect()
}

fn move_from_end(n: usize, k: usize) -> Vec<usize> {
    (0..n)
        .map(|x| if x == n - 1 { k } else if x >= k { x + 1 } else { x })
        .collect()
}

impl CircuitAlgebra for PropCa<'_> {
    fn palette(&self) -> &Palette {
        &self.palette
    }

    fn dim(&self, word: &[Colour]) -> Result<usize> {
        self.check_word(word)?;
        let (m, n, _) = walled_images(word);
        self.prop.dim(m, n)
    }

    fn product(&self, c: &[Colour], d: &[Colour]) -> Result<ExactMatrix> {
        let key = (0, [c, d].concat(), c.len(), 0);
        self.cached(key, || self.build_product(c, d))
    }

    fn contraction(&self, word: &[Colour], i: usize, j: usize) -> Result<ExactMatrix> {
        let (i, j) = super::algebra::check_pair(&self.palette, word, i, j)?;
        self.cached((1, word.to_vec(), i, j), || self.build_contraction(word, i, j))
    }

    fn unit(&self) -> Result<ExactMatrix> {
        Ok(self.prop.identity(0)?.data)
    }

    fn epsilon(&self, c: Colour) -> Result<ExactMatrix> {
        self.check_word(&[c])?;
        Ok(self.prop.identity(1)?.data)
    }

    fn transposition(&self, word: &[Colour], k: usize) -> Result<ExactMatrix> {
        if k + 1 >= word.len() {
            return Err(Error::InvalidPairing(format!("no legs {k}, {} to swap", k + 1)));
        }
        self.cached((2, word.to_vec(), k, 0), || self.build_transposition(word, k))
    }
}

impl PropCa<'_> {
    fn build_product(&self, c: &[Colour], d: &[Colour]) -> Result<ExactMatrix> {
        let (m1, n1, _) = walled_images(c);
        let (m2, n2, _) = walled_images(d);
        let rows = self.prop.dim(m1 + m2, n1 + n2)?;
        let left = self.basis(m1, n1)?;
        let right = self.basis(m2, n2)?;
        let mut columns = Vec::with_capacity(left.len() * right.len());
        for x in &left {
            for y in &right {
                columns.push(self.prop.tensor(x, y)?.data.column(0));
            }
        }
        ExactMatrix::from_columns(rows, &columns)
    }

    fn build_contraction(&self, word: &[Colour], i: usize, j: usize) -> Result<ExactMatrix> {
        let (m, n, images) = walled_images(word);
        let (din, dout) = if word[i] == down() { (i, j) } else { (j, i) };
        let a = images[din];
        let b = images[dout] - m;
        let rows = self.prop.dim(m - 1, n - 1)?;
        // Input a fed from the last strand, output b sent to the last strand.
        let pin = self.permutation(m, &move_from_end(m, a))?;
        let pout = self.permutation(n, &move_to_end(n, b))?;
        self.tabulate(m, n, rows, |x| {
            let y = self.prop.compose(&pin, x)?;
            let y = self.prop.compose(&y, &pout)?;
            self.prop.trace(&y)
        })
    }

    fn build_transposition(&self, word: &[Colour], k: usize) -> Result<ExactMatrix> {
        let (m, n, images) = walled_images(word);
        let dim = self.prop.dim(m, n)?;
        if word[k] != word[k + 1] {
            return Ok(ExactMatrix::identity(dim));
        }
        let swap = |len: usize, p: usize| -> Vec<usize> {
            (0..len)
                .map(|x| if x == p { p + 1 } else if x == p + 1 { p } else { x })
                .collect()
        };
        if word[k] == down() {
            let s = self.permutation(m, &swap(m, images[k]))?;
            self.tabulate(m, n, dim, |x| self.prop.compose(&s, x))
        } else {
            let s = self.permutation(n, &swap(n, images[k] - m))?;
            self.tabulate(m, n, dim, |x| self.prop.compose(x, &s))
        }
    }
}

/// Canonical shuffle `A(w) → A(walled w)` of a circuit algebra.
pub fn walled_shuffle(ca: &dyn CircuitAlgebra, word: &[Colour]) -> Result<ExactMatrix> {
    let (_, _, images) = walled_images(word);
    permutation_action(ca, word, &images)
}

#[derive(Clone, Debug, Serialize)]
pub struct PropReport {
    pub axioms: AxiomReport,
    pub round_trip: AxiomReport,
    pub passed: bool,
}

fn random_morphism(rng: &mut ChaCha8Rng, prop: &dyn WheeledProp, m: usize, n: usize) -> Result<Morphism> {
    let dim = prop.dim(m, n)?;
    let v = (0..dim).map(|_| int(rng.gen_range(-3..=3))).collect();
    Ok(Morphism {
        m,
        n,
        data: ExactMatrix::column_vector(v),
    })
}

fn same(t: &mut Tally, a: &Morphism, b: &Morphism, describe: impl FnOnce() -> String) {
    t.record(&a.data, &b.data, describe);
}

/// Checks Vanishing, Superposing, Yanking and the naturality of the trace on
/// seeded random morphisms with up to `max_points` legs before tracing.
pub fn check_wheeled_prop(prop: &dyn WheeledProp, max_points: usize, seed: u64) -> Result<AxiomReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vanishing = Tally::new("vanishing");
    let mut superposing = Tally::new("superposing");
    let mut yanking = Tally::new("yanking");
    let mut naturality = Tally::new("naturality");
    let mut sliding = Tally::new("sliding");

    let sigma = prop.symmetry()?;
    same(&mut yanking, &prop.trace(&sigma)?, &prop.identity(1)?, || "tr(σ) against id".into());

    for total in 0..=max_points {
        for m in 0..=total {
            let n = total - m;
            // Vanishing at the unit: the empty trace is the identity, here
            // as tensoring with the identity of the unit object.
            let f = random_morphism(&mut rng, prop, m, n)?;
            same(&mut vanishing, &prop.tensor(&prop.identity(0)?, &f)?, &f, || {
                format!("unit trace on P({m},{n})")
            });
            if m == 0 || n == 0 {
                continue;
            }
            let g = random_morphism(&mut rng, prop, 1, 1)?;
            same(
                &mut superposing,
                &prop.tensor(&g, &prop.trace(&f)?)?,
                &prop.trace(&prop.tensor(&g, &f)?)?,
                || format!("P(1,1) beside P({m},{n})"),
            );
            let id1 = prop.identity(1)?;
            let h = random_morphism(&mut rng, prop, m - 1, m - 1)?;
            let k = random_morphism(&mut rng, prop, n - 1, n - 1)?;
            let inner = prop.compose(&prop.tensor(&h, &id1)?, &f)?;
            let inner = prop.compose(&inner, &prop.tensor(&k, &id1)?)?;
            let rhs = prop.compose(&prop.compose(&h, &prop.trace(&f)?)?, &k)?;
            same(&mut naturality, &prop.trace(&inner)?, &rhs, || format!("P({m},{n})"));
            let p = random_morphism(&mut rng, prop, 1, 1)?;
            let after = prop.compose(&f, &prop.tensor(&prop.identity(n - 1)?, &p)?)?;
            let before = prop.compose(&prop.tensor(&prop.identity(m - 1)?, &p)?, &f)?;
            same(&mut sliding, &prop.trace(&after)?, &prop.trace(&before)?, || {
                format!("P({m},{n})")
            });
            if m >= 2 && n >= 2 {
                // Tracing two strands does not depend on their order.
                let swap_in = prop.tensor(&prop.identity(m - 2)?, &sigma)?;
                let swap_out = prop.tensor(&prop.identity(n - 2)?, &sigma)?;
                let swapped = prop.compose(&prop.compose(&swap_in, &f)?, &swap_out)?;
                same(
                    &mut vanishing,
                    &prop.trace(&prop.trace(&f)?)?,
                    &prop.trace(&prop.trace(&swapped)?)?,
                    || format!("double trace on P({m},{n})"),
                );
            }
        }
    }
    Ok(finish(max_points, vec![vanishing, superposing, yanking, naturality, sliding]))
}

/// Compares the circuit algebra built back from `ca_to_wheeled_prop(ca)`
/// with `ca` itself, through the walled shuffles.
pub fn ca_round_trip(ca: &dyn CircuitAlgebra, max_grade: usize) -> Result<AxiomReport> {
    let prop = ca_to_wheeled_prop(ca)?;
    let back = wheeled_prop_to_ca(&prop);
    let words = super::algebra::words_up_to(ca.palette(), max_grade);
    let p = ca.palette();
    let name = |w: &[Colour]| p.word_names(w);
    let mut t = Tally::new("ca round trip");
    t.record(&back.unit()?, &ca.unit()?, || "unit".into());
    for c in 0..p.len() {
        let w = [c, p.omega(c)];
        t.record(&back.epsilon(c)?, &walled_shuffle(ca, &w)?.mul(&ca.epsilon(c)?)?, || {
            format!("epsilon {}", p.name(c))
        });
    }
    for w in &words {
        let s = walled_shuffle(ca, w)?;
        for (i, j) in super::algebra::contractible_pairs(p, w) {
            let rest = super::algebra::remove_legs(w, &[i, j]);
            let lhs = back.contraction(w, i, j)?.mul(&s)?;
            let rhs = walled_shuffle(ca, &rest)?.mul(&ca.contraction(w, i, j)?)?;
            t.record(&lhs, &rhs, || format!("contraction ({i},{j}) on {}", name(w)));
        }
        for k in 0..w.len().saturating_sub(1) {
            let mut sw = w.clone();
            sw.swap(k, k + 1);
            let lhs = back.transposition(w, k)?.mul(&s)?;
            let rhs = walled_shuffle(ca, &sw)?.mul(&ca.transposition(w, k)?)?;
            t.record(&lhs, &rhs, || format!("transposition {k} on {}", name(w)));
        }
        for d in &words {
            if w.len() + d.len() > max_grade {
                continue;
            }
            let wd = [w.clone(), d.clone()].concat();
            let lhs = back.product(w, d)?.mul(&s.kron(&walled_shuffle(ca, d)?))?;
            let rhs = walled_shuffle(ca, &wd)?.mul(&ca.product(w, d)?)?;
            t.record(&lhs, &rhs, || format!("product of {} and {}", name(w), name(d)));
        }
    }
    Ok(finish(max_grade, vec![t]))
}

/// Compares the prop built back from `wheeled_prop_to_ca(prop)` with `prop`
/// on identities, the symmetry and seeded random operands.
pub fn prop_round_trip(prop: &dyn WheeledProp, max_points: usize, seed: u64) -> Result<AxiomReport> {
    let ca = wheeled_prop_to_ca(prop);
    let back = ca_to_wheeled_prop(&ca)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::new("prop round trip");
    same(&mut t, &back.symmetry()?, &prop.symmetry()?, || "symmetry".into());
    for n in 0..=max_points {
        same(&mut t, &back.identity(n)?, &prop.identity(n)?, || format!("identity {n}"));
    }
    for total in 0..=max_points {
        for m in 0..=total {
            let n = total - m;
            let f = random_morphism(&mut rng, prop, m, n)?;
            for p in 0..=max_points.saturating_sub(n) {
                let g = random_morphism(&mut rng, prop, n, p)?;
                same(&mut t, &back.compose(&f, &g)?, &prop.compose(&f, &g)?, || {
                    format!("compose P({m},{n}) with P({n},{p})")
                });
            }
            let g = random_morphism(&mut rng, prop, 1, 1)?;
            same(&mut t, &back.tensor(&f, &g)?, &prop.tensor(&f, &g)?, || {
                format!("tensor P({m},{n}) with P(1,1)")
            });
            if m > 0 && n > 0 {
                same(&mut t, &back.trace(&f)?, &prop.trace(&f)?, || format!("trace on P({m},{n})"));
            }
        }
    }
    Ok(finish(max_points, vec![t]))
}

/// Axioms of the prop built from `ca` plus both round trips.
pub fn check_prop_bridge(ca: &dyn CircuitAlgebra, tensor: &dyn WheeledProp, max_points: usize, seed: u64) -> Result<PropReport> {
    let prop = ca_to_wheeled_prop(ca)?;
    let axioms = check_wheeled_prop(&prop, max_points, seed)?;
    let mut round_trip = ca_round_trip(ca, max_points)?;
    let other = prop_round_trip(tensor, max_points, seed)?;
    round_trip.results.extend(other.results);
    round_trip.passed &= other.passed;
    let passed = axioms.passed && round_trip.passed;
    Ok(PropReport {
        axioms,
        round_trip,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wiring::algebra::EndomorphismCa;

    #[test]
    fn tensor_prop_axioms() {
        let p = TensorWheeledProp::new(2);
        let r = check_wheeled_prop(&p, 3, 1).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn yanking_in_the_ca_prop() {
        let ca = EndomorphismCa::oriented(2);
        let p = ca_to_wheeled_prop(&ca).unwrap();
        assert_eq!(p.trace(&p.symmetry().unwrap()).unwrap(), p.identity(1).unwrap());
    }

    #[test]
    fn ca_prop_matches_tensor_prop() {
        let ca = EndomorphismCa::oriented(2);
        let p = ca_to_wheeled_prop(&ca).unwrap();
        let t = TensorWheeledProp::new(2);
        assert_eq!(p.symmetry().unwrap(), t.symmetry().unwrap());
        assert_eq!(p.identity(2).unwrap(), t.identity(2).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_morphism(&mut rng, &t, 2, 1).unwrap();
        let g = random_morphism(&mut rng, &t, 1, 2).unwrap();
        assert_eq!(p.compose(&f, &g).unwrap(), t.compose(&f, &g).unwrap());
        assert_eq!(p.tensor(&f, &g).unwrap(), t.tensor(&f, &g).unwrap());
        assert_eq!(p.trace(&g).unwrap(), t.trace(&g).unwrap());
    }

    #[test]
    fn bridge_round_trips() {
        let ca = EndomorphismCa::oriented(2);
        let t = TensorWheeledProp::new(2);
        let r = check_prop_bridge(&ca, &t, 3, 5).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn monochrome_is_rejected() {
        let ca = EndomorphismCa::symmetric(2);
        assert!(matches!(ca_to_wheeled_prop(&ca), Err(Error::Palette(_))));
    }

    #[test]
    fn prop_ca_passes_ca_axioms() {
        let t = TensorWheeledProp::new(2);
        let ca = wheeled_prop_to_ca(&t);
        let r = super::super::algebra::check_ca_axioms(&ca, 3).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
