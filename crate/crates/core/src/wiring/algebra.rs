//! Circuit algebras presented by exact matrices, and checkers for their
//! axioms and for the modular operad they carry.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::diagram::{BrauerDiagram, Permutation};
use crate::error::{Error, Result};
use crate::exactlin::{int, ExactMatrix, Rational};
use crate::linear::DiagramFunctor;
use crate::palette::{Colour, ColouredDiagram, Palette};
use crate::tensor::{EvalFunctor, OrientedEvalFunctor};

/// A circuit algebra given by its structure maps on each colour word.
///
/// Vectors of `A(c) ⊗ A(d)` are indexed with the left factor most significant.
pub trait CircuitAlgebra {
    fn palette(&self) -> &Palette;

    fn dim(&self, word: &[Colour]) -> Result<usize>;

    /// `⊠ : A(c) ⊗ A(d) → A(cd)`.
    fn product(&self, c: &[Colour], d: &[Colour]) -> Result<ExactMatrix>;

    /// `ζ^{i‡j} : A(w) → A(w without i, j)`, defined when `w_j = ω w_i`.
    fn contraction(&self, word: &[Colour], i: usize, j: usize) -> Result<ExactMatrix>;

    /// `η`, a column spanning the image of the ground field in `A(∅)`.
    fn unit(&self) -> Result<ExactMatrix>;

    /// `ε_c ∈ A(c, ω c)` as a column.
    fn epsilon(&self, c: Colour) -> Result<ExactMatrix>;

    /// The symmetric action swapping legs `k` and `k + 1`.
    fn transposition(&self, word: &[Colour], k: usize) -> Result<ExactMatrix>;
}

pub(crate) fn check_pair(palette: &Palette, word: &[Colour], i: usize, j: usize) -> Result<(usize, usize)> {
    let (i, j) = (i.min(j), i.max(j));
    if i == j || j >= word.len() {
        return Err(Error::InvalidPairing(format!(
            "legs ({i}, {j}) invalid for a word of length {}",
            word.len()
        )));
    }
    if word[j] != palette.omega(word[i]) {
        return Err(Error::TypeMismatch {
            index: j,
            expected: palette.name(palette.omega(word[i])).to_string(),
            found: palette.name(word[j]).to_string(),
        });
    }
    Ok((i, j))
}

/// `word` with the listed legs removed.
pub fn remove_legs(word: &[Colour], legs: &[usize]) -> Vec<Colour> {
    word.iter()
        .enumerate()
        .filter(|(k, _)| !legs.contains(k))
        .map(|(_, &c)| c)
        .collect()
}

/// Position of leg `k` once the legs in `removed` are gone.
pub fn shifted(k: usize, removed: &[usize]) -> usize {
    k - removed.iter().filter(|&&r| r < k).count()
}

/// Pairs `i < j` that a contraction may join.
pub fn contractible_pairs(palette: &Palette, word: &[Colour]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[j] == palette.omega(word[i]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Every word of length at most `max_len`, shortest first.
pub fn words_up_to(palette: &Palette, max_len: usize) -> Vec<Vec<Colour>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for c in 0..palette.len() {
                let mut v: Vec<Colour> = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn contraction_diagram(len: usize, i: usize, j: usize) -> Result<BrauerDiagram> {
    let rest: Vec<usize> = (0..len).filter(|&k| k != i && k != j).collect();
    let pairs = std::iter::once((i, j)).chain(rest.iter().enumerate().map(|(t, &k)| (k, len + t)));
    BrauerDiagram::new(len, len - 2, pairs, 0)
}

/// Matrix of the leg permutation sending leg `i` of `word` to `images[i]`,
/// built from adjacent transpositions.
pub fn permutation_action(ca: &dyn CircuitAlgebra, word: &[Colour], images: &[usize]) -> Result<ExactMatrix> {
    let sigma = Permutation::from_images(images.to_vec())?;
    let mut legs: Vec<usize> = (0..word.len()).collect();
    let mut current = word.to_vec();
    let mut acc = ExactMatrix::identity(ca.dim(word)?);
    let mut sorted = false;
    while !sorted {
        sorted = true;
        for k in 0..legs.len().saturating_sub(1) {
            if sigma.apply(legs[k]) > sigma.apply(legs[k + 1]) {
                acc = ca.transposition(&current, k)?.mul(&acc)?;
                legs.swap(k, k + 1);
                current.swap(k, k + 1);
                sorted = false;
            }
        }
    }
    Ok(acc)
}

/// `A ⊗ B → B ⊗ A` on plain vector spaces of dimensions `a` and `b`.
pub fn swap_matrix(a: usize, b: usize) -> ExactMatrix {
    let mut out = ExactMatrix::zeros(a * b, a * b);
    for x in 0..a {
        for y in 0..b {
            out.set(y * a + x, x * b + y, int(1));
        }
    }
    out
}

enum Backend {
    Plain(EvalFunctor),
    Oriented(OrientedEvalFunctor),
}

/// `A(w) = V^⊗|w|` with the structure maps the images of Brauer diagrams,
/// either under a form `θ` on one self-dual colour or, for the oriented
/// palette, under the pairing of `V` with `V*`.
pub struct EndomorphismCa {
    palette: Palette,
    backend: Backend,
}

impl EndomorphismCa {
    /// Over the monochrome palette. Skew forms give a super circuit algebra,
    /// which fails the symmetry part of (c1) here.
    pub fn new(functor: EvalFunctor) -> Self {
        EndomorphismCa {
            palette: Palette::monochrome(),
            backend: Backend::Plain(functor),
        }
    }

    pub fn symmetric(d: usize) -> Self {
        Self::new(EvalFunctor::symmetric(d))
    }

    /// Over the oriented palette with one unoriented colour.
    pub fn oriented(d: usize) -> Self {
        EndomorphismCa {
            palette: Palette::oriented(&["v"]),
            backend: Backend::Oriented(OrientedEvalFunctor::new(d)),
        }
    }

    fn d(&self) -> usize {
        match &self.backend {
            Backend::Plain(f) => f.d(),
            Backend::Oriented(f) => f.d(),
        }
    }

    fn evaluate(&self, base: BrauerDiagram, input: &[Colour], output: &[Colour]) -> Result<ExactMatrix> {
        match &self.backend {
            Backend::Plain(f) => f.evaluate(&base),
            Backend::Oriented(f) => {
                let body = ColouredDiagram::from_types(&self.palette, base, input, output, vec![])?;
                f.evaluate(&self.palette, &body)
            }
        }
    }
}

impl CircuitAlgebra for EndomorphismCa {
    fn palette(&self) -> &Palette {
        &self.palette
    }

    fn dim(&self, word: &[Colour]) -> Result<usize> {
        let size = self.d().pow(word.len() as u32);
        crate::tensor::check_budget(size)?;
        Ok(size)
    }

    fn product(&self, c: &[Colour], d: &[Colour]) -> Result<ExactMatrix> {
        Ok(ExactMatrix::identity(self.dim(c)? * self.dim(d)?))
    }

    fn contraction(&self, word: &[Colour], i: usize, j: usize) -> Result<ExactMatrix> {
        let (i, j) = check_pair(&self.palette, word, i, j)?;
        let base = contraction_diagram(word.len(), i, j)?;
        self.evaluate(base, word, &remove_legs(word, &[i, j]))
    }

    fn unit(&self) -> Result<ExactMatrix> {
        Ok(ExactMatrix::identity(1))
    }

    fn epsilon(&self, c: Colour) -> Result<ExactMatrix> {
        self.evaluate(BrauerDiagram::cup(), &[], &[c, self.palette.omega(c)])
    }

    fn transposition(&self, word: &[Colour], k: usize) -> Result<ExactMatrix> {
        if k + 1 >= word.len() {
            return Err(Error::InvalidPairing(format!("no legs {k}, {} to swap", k + 1)));
        }
        let s = Permutation::transposition(word.len(), k, k + 1);
        let mut out = word.to_vec();
        out.swap(k, k + 1);
        self.evaluate(BrauerDiagram::permutation(&s), word, &out)
    }
}

/// `A(w)` the ground field for every word, every structure map the identity.
pub struct TrivialCa {
    palette: Palette,
}

impl TrivialCa {
    pub fn new(palette: Palette) -> Self {
        TrivialCa { palette }
    }
}

impl CircuitAlgebra for TrivialCa {
    fn palette(&self) -> &Palette {
        &self.palette
    }

    fn dim(&self, _: &[Colour]) -> Result<usize> {
        Ok(1)
    }

    fn product(&self, _: &[Colour], _: &[Colour]) -> Result<ExactMatrix> {
        Ok(ExactMatrix::identity(1))
    }

    fn contraction(&self, word: &[Colour], i: usize, j: usize) -> Result<ExactMatrix> {
        check_pair(&self.palette, word, i, j)?;
        Ok(ExactMatrix::identity(1))
    }

    fn unit(&self) -> Result<ExactMatrix> {
        Ok(ExactMatrix::identity(1))
    }

    fn epsilon(&self, _: Colour) -> Result<ExactMatrix> {
        Ok(ExactMatrix::identity(1))
    }

    fn transposition(&self, _: &[Colour], _: usize) -> Result<ExactMatrix> {
        Ok(ExactMatrix::identity(1))
    }
}

/// Wraps a circuit algebra and adds `E₀₀` to one contraction map.
pub struct PerturbedCa<'a> {
    inner: &'a dyn CircuitAlgebra,
    word: Vec<Colour>,
    pair: (usize, usize),
}

impl<'a> PerturbedCa<'a> {
    pub fn new(inner: &'a dyn CircuitAlgebra, word: Vec<Colour>, i: usize, j: usize) -> Self {
        PerturbedCa {
            inner,
            word,
            pair: (i.min(j), i.max(j)),
        }
    }
}

impl CircuitAlgebra for PerturbedCa<'_> {
    fn palette(&self) -> &Palette {
        self.inner.palette()
    }

    fn dim(&self, word: &[Colour]) -> Result<usize> {
        self.inner.dim(word)
    }

    fn product(&self, c: &[Colour], d: &[Colour]) -> Result<ExactMatrix> {
        self.inner.product(c, d)
    }

    fn contraction(&self, word: &[Colour], i: usize, j: usize) -> Result<ExactMatrix> {
        let mut z = self.inner.contraction(word, i, j)?;
        if word == self.word.as_slice() && (i.min(j), i.max(j)) == self.pair && z.rows() > 0 && z.cols() > 0 {
            let bumped = z.get(0, 0) + int(1);
            z.set(0, 0, bumped);
        }
        Ok(z)
    }

    fn unit(&self) -> Result<ExactMatrix> {
        self.inner.unit()
    }

    fn epsilon(&self, c: Colour) -> Result<ExactMatrix> {
        self.inner.epsilon(c)
    }

    fn transposition(&self, word: &[Colour], k: usize) -> Result<ExactMatrix> {
        self.inner.transposition(word, k)
    }
}

/// Remembers every structure matrix it has handed out.
pub struct CachedCa<'a> {
    inner: &'a dyn CircuitAlgebra,
    cache: RefCell<HashMap<(u8, Vec<Colour>, usize, usize), Rc<ExactMatrix>>>,
}

impl<'a> CachedCa<'a> {
    pub fn new(inner: &'a dyn CircuitAlgebra) -> Self {
        CachedCa {
            inner,
            cache: RefCell::new(HashMap::new()),
        }
    }

    fn get(
        &self,
        key: (u8, Vec<Colour>, usize, usize),
        build: impl FnOnce() -> Result<ExactMatrix>,
    ) -> Result<Rc<ExactMatrix>> {
        if let Some(m) = self.cache.borrow().get(&key) {
            return Ok(m.clone());
        }
        let m = Rc::new(build()?);
        self.cache.borrow_mut().insert(key, m.clone());
        Ok(m)
    }

    pub fn product_rc(&self, c: &[Colour], d: &[Colour]) -> Result<Rc<ExactMatrix>> {
        self.get((0, [c, d].concat(), c.len(), 0), || self.inner.product(c, d))
    }

    pub fn contraction_rc(&self, word: &[Colour], i: usize, j: usize) -> Result<Rc<ExactMatrix>> {
        self.get((1, word.to_vec(), i.min(j), i.max(j)), || self.inner.contraction(word, i, j))
    }

    pub fn epsilon_rc(&self, c: Colour) -> Result<Rc<ExactMatrix>> {
        self.get((2, vec![c], 0, 0), || self.inner.epsilon(c))
    }

    pub fn transposition_rc(&self, word: &[Colour], k: usize) -> Result<Rc<ExactMatrix>> {
        self.get((3, word.to_vec(), k, 0), || self.inner.transposition(word, k))
    }
}

impl CircuitAlgebra for CachedCa<'_> {
    fn palette(&self) -> &Palette {
        self.inner.palette()
    }

    fn dim(&self, word: &[Colour]) -> Result<usize> {
        self.inner.dim(word)
    }

    fn product(&self, c: &[Colour], d: &[Colour]) -> Result<ExactMatrix> {
        Ok((*self.product_rc(c, d)?).clone())
    }

    fn contraction(&self, word: &[Colour], i: usize, j: usize) -> Result<ExactMatrix> {
        Ok((*self.contraction_rc(word, i, j)?).clone())
    }

    fn unit(&self) -> Result<ExactMatrix> {
        self.inner.unit()
    }

    fn epsilon(&self, c: Colour) -> Result<ExactMatrix> {
        Ok((*self.epsilon_rc(c)?).clone())
    }

    fn transposition(&self, word: &[Colour], k: usize) -> Result<ExactMatrix> {
        Ok((*self.transposition_rc(word, k)?).clone())
    }
}

// ---------------------------------------------------------------------------
// Table oracles

#[derive(Serialize, Deserialize)]
struct TableFile {
    palette: serde_json::Value,
    max_length: usize,
    dims: BTreeMap<String, usize>,
    unit: Vec<Vec<String>>,
    epsilon: BTreeMap<String, Vec<Vec<String>>>,
    product: BTreeMap<String, Vec<Vec<String>>>,
    contraction: BTreeMap<String, Vec<Vec<String>>>,
    transposition: BTreeMap<String, Vec<Vec<String>>>,
}

/// A circuit algebra read from a JSON table of its structure matrices on
/// every word up to a length bound.
///
/// Keys: words are colour names joined by spaces; products use `"c|d"`,
/// contractions `"w:i,j"` with `i < j`, transpositions `"w:k"`. Entries are
/// rationals written as strings such as `"-3/2"`.
pub struct TableCa {
    palette: Palette,
    max_length: usize,
    dims: BTreeMap<String, usize>,
    unit: ExactMatrix,
    epsilon: BTreeMap<String, ExactMatrix>,
    product: BTreeMap<String, ExactMatrix>,
    contraction: BTreeMap<String, ExactMatrix>,
    transposition: BTreeMap<String, ExactMatrix>,
}

fn word_key(palette: &Palette, word: &[Colour]) -> String {
    word.iter().map(|&c| palette.name(c)).collect::<Vec<_>>().join(" ")
}

fn parse_matrix(rows: &[Vec<String>]) -> Result<ExactMatrix> {
    let parsed: Result<Vec<Vec<Rational>>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| {
                    s.trim()
                        .parse::<Rational>()
                        .map_err(|_| Error::Oracle(format!("bad entry {s:?}")))
                })
                .collect()
        })
        .collect();
    let parsed = parsed?;
    if parsed.is_empty() {
        return Ok(ExactMatrix::zeros(0, 0));
    }
    ExactMatrix::from_rows(parsed)
}

fn print_matrix(m: &ExactMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
        .collect()
}

fn parse_all(map: BTreeMap<String, Vec<Vec<String>>>) -> Result<BTreeMap<String, ExactMatrix>> {
    map.into_iter()
        .map(|(k, v)| Ok((k, parse_matrix(&v)?)))
        .collect()
}

impl TableCa {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(text).map_err(|e| Error::Oracle(e.to_string()))?;
        let palette = Palette::from_json(&file.palette.to_string())?;
        Ok(TableCa {
            palette,
            max_length: file.max_length,
            dims: file.dims,
            unit: parse_matrix(&file.unit)?,
            epsilon: parse_all(file.epsilon)?,
            product: parse_all(file.product)?,
            contraction: parse_all(file.contraction)?,
            transposition: parse_all(file.transposition)?,
        })
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    fn lookup<'m>(map: &'m BTreeMap<String, ExactMatrix>, key: &str, what: &str) -> Result<&'m ExactMatrix> {
        map.get(key)
            .ok_or_else(|| Error::Oracle(format!("no {what} entry for {key:?}")))
    }
}

impl CircuitAlgebra for TableCa {
    fn palette(&self) -> &Palette {
        &self.palette
    }

    fn dim(&self, word: &[Colour]) -> Result<usize> {
        let key = word_key(&self.palette, word);
        self.dims
            .get(&key)
            .copied()
            .ok_or_else(|| Error::Oracle(format!("no dimension for {key:?}")))
    }

    fn product(&self, c: &[Colour], d: &[Colour]) -> Result<ExactMatrix> {
        let key = format!("{}|{}", word_key(&self.palette, c), word_key(&self.palette, d));
        Self::lookup(&self.product, &key, "product").cloned()
    }

    fn contraction(&self, word: &[Colour], i: usize, j: usize) -> Result<ExactMatrix> {
        let (i, j) = check_pair(&self.palette, word, i, j)?;
        let key = format!("{}:{i},{j}", word_key(&self.palette, word));
        Self::lookup(&self.contraction, &key, "contraction").cloned()
    }

    fn unit(&self) -> Result<ExactMatrix> {
        Ok(self.unit.clone())
    }

    fn epsilon(&self, c: Colour) -> Result<ExactMatrix> {
        Self::lookup(&self.epsilon, self.palette.name(c), "epsilon").cloned()
    }

    fn transposition(&self, word: &[Colour], k: usize) -> Result<ExactMatrix> {
        let key = format!("{}:{k}", word_key(&self.palette, word));
        Self::lookup(&self.transposition, &key, "transposition").cloned()
    }
}

/// Writes every structure matrix of `ca` on words up to `max_length` in
/// the format read by [`TableCa::from_json`].
pub fn export_table(ca: &dyn CircuitAlgebra, max_length: usize) -> Result<String> {
    let palette = ca.palette();
    let words = words_up_to(palette, max_length);
    let mut file = TableFile {
        palette: serde_json::from_str(&palette.to_json()).map_err(|e| Error::Oracle(e.to_string()))?,
        max_length,
        dims: BTreeMap::new(),
        unit: print_matrix(&ca.unit()?),
        epsilon: BTreeMap::new(),
        product: BTreeMap::new(),
        contraction: BTreeMap::new(),
        transposition: BTreeMap::new(),
    };
    for w in &words {
        let key = word_key(palette, w);
        file.dims.insert(key.clone(), ca.dim(w)?);
        for (i, j) in contractible_pairs(palette, w) {
            file.contraction
                .insert(format!("{key}:{i},{j}"), print_matrix(&ca.contraction(w, i, j)?));
        }
        for k in 0..w.len().saturating_sub(1) {
            file.transposition
                .insert(format!("{key}:{k}"), print_matrix(&ca.transposition(w, k)?));
        }
    }
    for c in &words {
        for d in &words {
            if c.len() + d.len() <= max_length {
                let key = format!("{}|{}", word_key(palette, c), word_key(palette, d));
                file.product.insert(key, print_matrix(&ca.product(c, d)?));
            }
        }
    }
    if max_length >= 2 {
        for c in 0..palette.len() {
            file.epsilon
                .insert(palette.name(c).to_string(), print_matrix(&ca.epsilon(c)?));
        }
    }
    serde_json::to_string_pretty(&file).map_err(|e| Error::Oracle(e.to_string()))
}

// ---------------------------------------------------------------------------
// Axiom checks

#[derive(Clone, Debug, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub cases: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub max_grade: usize,
    pub results: Vec<AxiomResult>,
    pub passed: bool,
}

impl AxiomReport {
    pub fn result(&self, axiom: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }
}

pub(crate) struct Tally {
    result: AxiomResult,
}

impl Tally {
    pub(crate) fn new(axiom: &str) -> Self {
        Tally {
            result: AxiomResult {
                axiom: axiom.to_string(),
                cases: 0,
                passed: true,
                counterexample: None,
            },
        }
    }

    pub(crate) fn record<T: PartialEq>(&mut self, lhs: &T, rhs: &T, describe: impl FnOnce() -> String) {
        self.result.cases += 1;
        if lhs != rhs && self.result.passed {
            self.result.passed = false;
            self.result.counterexample = Some(describe());
        }
    }
}

pub(crate) fn finish(max_grade: usize, tallies: Vec<Tally>) -> AxiomReport {
    let results: Vec<AxiomResult> = tallies.into_iter().map(|t| t.result).collect();
    let passed = results.iter().all(|r| r.passed);
    AxiomReport {
        max_grade,
        results,
        passed,
    }
}

fn id(ca: &dyn CircuitAlgebra, w: &[Colour]) -> Result<ExactMatrix> {
    Ok(ExactMatrix::identity(ca.dim(w)?))
}

fn cat(a: &[Colour], b: &[Colour]) -> Vec<Colour> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

/// Checks (c1), (c2), (c3), (e1) and equivariance of `ζ` and `⊠` on every
/// index pattern whose inputs have at most `max_grade` legs in total.
pub fn check_ca_axioms(ca: &dyn CircuitAlgebra, max_grade: usize) -> Result<AxiomReport> {
    let p = ca.palette();
    let words = words_up_to(p, max_grade);
    let name = |w: &[Colour]| p.word_names(w);

    let mut c1 = Tally::new("c1");
    for a in &words {
        for b in &words {
            if a.len() + b.len() > max_grade {
                continue;
            }
            let pab = ca.product(a, b)?;
            // Unit.
            if b.is_empty() {
                let lhs = pab.mul(&id(ca, a)?.kron(&ca.unit()?))?;
                c1.record(&lhs, &id(ca, a)?, || format!("right unit on {}", name(a)));
                let lhs = ca.product(b, a)?.mul(&ca.unit()?.kron(&id(ca, a)?))?;
                c1.record(&lhs, &id(ca, a)?, || format!("left unit on {}", name(a)));
            }
            // Symmetry.
            let ab = cat(a, b);
            let images: Vec<usize> = (0..ab.len())
                .map(|k| if k < a.len() { k + b.len() } else { k - a.len() })
                .collect();
            let lhs = ca.product(b, a)?.mul(&swap_matrix(ca.dim(a)?, ca.dim(b)?))?;
            let rhs = permutation_action(ca, &ab, &images)?.mul(&pab)?;
            c1.record(&lhs, &rhs, || format!("symmetry for {} and {}", name(a), name(b)));
            // Associativity.
            for c in &words {
                if a.len() + b.len() + c.len() > max_grade {
                    continue;
                }
                let bc = cat(b, c);
                let lhs = ca.product(&ab, c)?.mul(&pab.kron(&id(ca, c)?))?;
                let rhs = ca.product(a, &bc)?.mul(&id(ca, a)?.kron(&ca.product(b, c)?))?;
                c1.record(&lhs, &rhs, || {
                    format!("associativity for {}, {}, {}", name(a), name(b), name(c))
                });
            }
        }
    }

    let mut c2 = Tally::new("c2");
    for w in &words {
        let pairs = contractible_pairs(p, w);
        for (x, &(i, j)) in pairs.iter().enumerate() {
            for &(k, l) in &pairs[x + 1..] {
                if [i, j].contains(&k) || [i, j].contains(&l) {
                    continue;
                }
                let wij = remove_legs(w, &[i, j]);
                let wkl = remove_legs(w, &[k, l]);
                let lhs = ca
                    .contraction(&wij, shifted(k, &[i, j]), shifted(l, &[i, j]))?
                    .mul(&ca.contraction(w, i, j)?)?;
                let rhs = ca
                    .contraction(&wkl, shifted(i, &[k, l]), shifted(j, &[k, l]))?
                    .mul(&ca.contraction(w, k, l)?)?;
                c2.record(&lhs, &rhs, || {
                    format!("pairs ({i},{j}) and ({k},{l}) on {}", name(w))
                });
            }
        }
    }

    let mut c3 = Tally::new("c3");
    for a in &words {
        for b in &words {
            if a.len() + b.len() > max_grade {
                continue;
            }
            let ab = cat(a, b);
            let pab = ca.product(a, b)?;
            for (i, j) in contractible_pairs(p, a) {
                let lhs = ca.contraction(&ab, i, j)?.mul(&pab)?;
                let a2 = remove_legs(a, &[i, j]);
                let rhs = ca
                    .product(&a2, b)?
                    .mul(&ca.contraction(a, i, j)?.kron(&id(ca, b)?))?;
                c3.record(&lhs, &rhs, || {
                    format!("left pair ({i},{j}) on {} and {}", name(a), name(b))
                });
            }
            for (i, j) in contractible_pairs(p, b) {
                let s = a.len();
                let lhs = ca.contraction(&ab, s + i, s + j)?.mul(&pab)?;
                let b2 = remove_legs(b, &[i, j]);
                let rhs = ca
                    .product(a, &b2)?
                    .mul(&id(ca, a)?.kron(&ca.contraction(b, i, j)?))?;
                c3.record(&lhs, &rhs, || {
                    format!("right pair ({i},{j}) on {} and {}", name(a), name(b))
                });
            }
        }
    }

    let mut e1 = Tally::new("e1");
    for w in &words {
        if w.len() + 2 > max_grade.max(2) {
            continue;
        }
        for j in 0..w.len() {
            let lhs = unit_law(ca, w, j)?;
            e1.record(&lhs, &id(ca, w)?, || format!("leg {j} of {}", name(w)));
        }
    }

    let mut eq = Tally::new("equivariance");
    for w in &words {
        for k in 0..w.len().saturating_sub(1) {
            let t = ca.transposition(w, k)?;
            let mut sw = w.clone();
            sw.swap(k, k + 1);
            let s = |x: usize| if x == k { k + 1 } else if x == k + 1 { k } else { x };
            for (i, j) in contractible_pairs(p, w) {
                let lhs = ca.contraction(&sw, s(i), s(j))?.mul(&t)?;
                let rest = remove_legs(w, &[i, j]);
                let images: Vec<usize> = (0..w.len())
                    .filter(|x| *x != i && *x != j)
                    .map(|x| {
                        let (si, sj) = (s(i), s(j));
                        shifted(s(x), &[si, sj])
                    })
                    .collect();
                let rhs = permutation_action(ca, &rest, &images)?.mul(&ca.contraction(w, i, j)?)?;
                eq.record(&lhs, &rhs, || {
                    format!("contraction ({i},{j}) after swap {k} on {}", name(w))
                });
            }
        }
    }
    for a in &words {
        for b in &words {
            if a.len() + b.len() > max_grade {
                continue;
            }
            let ab = cat(a, b);
            for k in 0..a.len().saturating_sub(1) {
                let mut sa = a.clone();
                sa.swap(k, k + 1);
                let lhs = ca.product(&sa, b)?.mul(&ca.transposition(a, k)?.kron(&id(ca, b)?))?;
                let rhs = ca.transposition(&ab, k)?.mul(&ca.product(a, b)?)?;
                eq.record(&lhs, &rhs, || {
                    format!("product after swap {k} on {} and {}", name(a), name(b))
                });
            }
        }
    }

    Ok(finish(max_grade, vec![c1, c2, c3, e1, eq]))
}

/// `x ↦ ζ(x ⊠ ε_a)` on leg `j`, moved back to position `j`; the identity
/// when (e1) holds.
fn unit_law(ca: &dyn CircuitAlgebra, w: &[Colour], j: usize) -> Result<ExactMatrix> {
    let p = ca.palette();
    let a = p.omega(w[j]);
    let eps_word = [a, p.omega(a)];
    let glued = diamond(ca, w, &eps_word, j, 0)?.mul(&id(ca, w)?.kron(&ca.epsilon(a)?))?;
    let len = w.len();
    let images: Vec<usize> = (0..len)
        .map(|x| if x == len - 1 { j } else if x >= j { x + 1 } else { x })
        .collect();
    let rest = cat(&remove_legs(w, &[j]), &[w[j]]);
    permutation_action(ca, &rest, &images)?.mul(&glued)
}

/// `⋄_{i,j} = ζ^{i ‡ |c|+j} ∘ ⊠ : A(c) ⊗ A(d) → A((c∖i)(d∖j))`.
pub fn diamond(ca: &dyn CircuitAlgebra, c: &[Colour], d: &[Colour], i: usize, j: usize) -> Result<ExactMatrix> {
    let cd = cat(c, d);
    ca.contraction(&cd, i, c.len() + j)?.mul(&ca.product(c, d)?)
}

/// The modular operad underlying a circuit algebra.
pub struct ModularOperad<'a> {
    ca: &'a dyn CircuitAlgebra,
}

pub fn derive_modular_operad(ca: &dyn CircuitAlgebra) -> ModularOperad<'_> {
    ModularOperad { ca }
}

impl ModularOperad<'_> {
    pub fn multiply(&self, c: &[Colour], d: &[Colour], i: usize, j: usize) -> Result<ExactMatrix> {
        diamond(self.ca, c, d, i, j)
    }

    pub fn contract(&self, w: &[Colour], i: usize, j: usize) -> Result<ExactMatrix> {
        self.ca.contraction(w, i, j)
    }

    pub fn unit(&self, c: Colour) -> Result<ExactMatrix> {
        self.ca.epsilon(c)
    }

    /// Checks (m1)–(m4) and the unit law on every index pattern whose inputs
    /// have at most `max_grade` legs in total.
    pub fn check(&self, max_grade: usize) -> Result<AxiomReport> {
        let ca = self.ca;
        let p = ca.palette();
        let words = words_up_to(p, max_grade);
        let name = |w: &[Colour]| p.word_names(w);
        let glue = |c: &[Colour], d: &[Colour]| -> Vec<(usize, usize)> {
            let mut out = Vec::new();
            for i in 0..c.len() {
                for j in 0..d.len() {
                    if d[j] == p.omega(c[i]) {
                        out.push((i, j));
                    }
                }
            }
            out
        };

        let mut m1 = Tally::new("m1");
        for c in &words {
            for d in &words {
                for e in &words {
                    if c.len() + d.len() + e.len() > max_grade {
                        continue;
                    }
                    for (i, j) in glue(c, d) {
                        for (k, l) in glue(d, e) {
                            if k == j {
                                continue;
                            }
                            let cd = cat(&remove_legs(c, &[i]), &remove_legs(d, &[j]));
                            let k1 = c.len() - 1 + shifted(k, &[j]);
                            let lhs = diamond(ca, &cd, e, k1, l)?
                                .mul(&diamond(ca, c, d, i, j)?.kron(&id(ca, e)?))?;
                            let de = cat(&remove_legs(d, &[k]), &remove_legs(e, &[l]));
                            let rhs = diamond(ca, c, &de, i, shifted(j, &[k]))?
                                .mul(&id(ca, c)?.kron(&diamond(ca, d, e, k, l)?))?;
                            m1.record(&lhs, &rhs, || {
                                format!(
                                    "({i},{j}) then ({k},{l}) on {}, {}, {}",
                                    name(c),
                                    name(d),
                                    name(e)
                                )
                            });
                        }
                    }
                }
            }
        }

        let mut m2 = Tally::new("m2");
        for w in &words {
            let pairs = contractible_pairs(p, w);
            for (x, &(i, j)) in pairs.iter().enumerate() {
                for &(k, l) in &pairs[x + 1..] {
                    if [i, j].contains(&k) || [i, j].contains(&l) {
                        continue;
                    }
                    let lhs = ca
                        .contraction(&remove_legs(w, &[i, j]), shifted(k, &[i, j]), shifted(l, &[i, j]))?
                        .mul(&ca.contraction(w, i, j)?)?;
                    let rhs = ca
                        .contraction(&remove_legs(w, &[k, l]), shifted(i, &[k, l]), shifted(j, &[k, l]))?
                        .mul(&ca.contraction(w, k, l)?)?;
                    m2.record(&lhs, &rhs, || format!("({i},{j}) and ({k},{l}) on {}", name(w)));
                }
            }
        }

        let mut m3 = Tally::new("m3");
        for c in &words {
            for d in &words {
                if c.len() + d.len() > max_grade {
                    continue;
                }
                for (i, j) in glue(c, d) {
                    let glued = diamond(ca, c, d, i, j)?;
                    let cd = cat(&remove_legs(c, &[i]), &remove_legs(d, &[j]));
                    for (a, b) in contractible_pairs(p, c) {
                        if a == i || b == i {
                            continue;
                        }
                        let lhs = ca
                            .contraction(&cd, shifted(a, &[i]), shifted(b, &[i]))?
                            .mul(&glued)?;
                        let c2 = remove_legs(c, &[a, b]);
                        let rhs = diamond(ca, &c2, d, shifted(i, &[a, b]), j)?
                            .mul(&ca.contraction(c, a, b)?.kron(&id(ca, d)?))?;
                        m3.record(&lhs, &rhs, || {
                            format!("left ({a},{b}) with ({i},{j}) on {}, {}", name(c), name(d))
                        });
                    }
                    for (a, b) in contractible_pairs(p, d) {
                        if a == j || b == j {
                            continue;
                        }
                        let s = c.len() - 1;
                        let lhs = ca
                            .contraction(&cd, s + shifted(a, &[j]), s + shifted(b, &[j]))?
                            .mul(&glued)?;
                        let d2 = remove_legs(d, &[a, b]);
                        let rhs = diamond(ca, c, &d2, i, shifted(j, &[a, b]))?
                            .mul(&id(ca, c)?.kron(&ca.contraction(d, a, b)?))?;
                        m3.record(&lhs, &rhs, || {
                            format!("right ({a},{b}) with ({i},{j}) on {}, {}", name(c), name(d))
                        });
                    }
                }
            }
        }

        let mut m4 = Tally::new("m4");
        for c in &words {
            for d in &words {
                if c.len() + d.len() > max_grade {
                    continue;
                }
                let pairs = glue(c, d);
                for (x, &(i1, j1)) in pairs.iter().enumerate() {
                    for &(i2, j2) in &pairs[x + 1..] {
                        if i1 == i2 || j1 == j2 {
                            continue;
                        }
                        let side = |(ia, ja): (usize, usize), (ib, jb): (usize, usize)| -> Result<ExactMatrix> {
                            let cd = cat(&remove_legs(c, &[ia]), &remove_legs(d, &[ja]));
                            let s = c.len() - 1;
                            ca.contraction(&cd, shifted(ib, &[ia]), s + shifted(jb, &[ja]))?
                                .mul(&diamond(ca, c, d, ia, ja)?)
                        };
                        let lhs = side((i1, j1), (i2, j2))?;
                        let rhs = side((i2, j2), (i1, j1))?;
                        m4.record(&lhs, &rhs, || {
                            format!("({i1},{j1}) and ({i2},{j2}) on {}, {}", name(c), name(d))
                        });
                    }
                }
            }
        }

        let mut unit = Tally::new("unit");
        for w in &words {
            if w.len() + 2 > max_grade.max(2) {
                continue;
            }
            for j in 0..w.len() {
                unit.record(&unit_law(ca, w, j)?, &id(ca, w)?, || format!("leg {j} of {}", name(w)));
            }
        }

        Ok(finish(max_grade, vec![m1, m2, m3, m4, unit]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endomorphism_ca_passes() {
        for d in [1, 2] {
            let ca = EndomorphismCa::symmetric(d);
            let r = check_ca_axioms(&ca, 4).unwrap();
            assert!(r.passed, "{r:?}");
            assert!(r.results.iter().all(|t| t.cases > 0), "{r:?}");
            let m = derive_modular_operad(&ca).check(4).unwrap();
            assert!(m.passed, "{m:?}");
        }
    }

    #[test]
    fn oriented_ca_passes() {
        let ca = EndomorphismCa::oriented(2);
        let r = check_ca_axioms(&ca, 4).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(derive_modular_operad(&ca).check(4).unwrap().passed);
    }

    #[test]
    fn trivial_ca_passes() {
        let ca = TrivialCa::new(Palette::oriented(&["v"]));
        assert!(check_ca_axioms(&ca, 4).unwrap().passed);
    }

    #[test]
    fn perturbation_breaks_c2() {
        let ca = EndomorphismCa::symmetric(2);
        let bad = PerturbedCa::new(&ca, vec![0; 4], 0, 1);
        let r = check_ca_axioms(&bad, 4).unwrap();
        assert!(!r.result("c2").unwrap().passed);
        assert!(r.result("c2").unwrap().counterexample.is_some());
    }

    #[test]
    fn skew_form_fails_symmetry_only_through_c1() {
        let ca = EndomorphismCa::new(EvalFunctor::skew(2).unwrap());
        let r = check_ca_axioms(&ca, 4).unwrap();
        assert!(!r.result("c1").unwrap().passed);
        assert!(r.result("c2").unwrap().passed);
        assert!(r.result("c3").unwrap().passed);
    }

    #[test]
    fn smallest_parallel_pattern() {
        let ca = EndomorphismCa::symmetric(2);
        let mo = derive_modular_operad(&ca);
        let w = [0, 0];
        // Gluing two 2-legged elements along both legs either way round.
        let a = mo.contract(&[0, 0], 0, 1).unwrap().mul(&mo.multiply(&w, &w, 0, 0).unwrap()).unwrap();
        let b = mo.contract(&[0, 0], 0, 1).unwrap().mul(&mo.multiply(&w, &w, 1, 1).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn table_round_trip() {
        let ca = EndomorphismCa::symmetric(2);
        let text = export_table(&ca, 3).unwrap();
        let table = TableCa::from_json(&text).unwrap();
        assert!(check_ca_axioms(&table, 3).unwrap().passed);
        assert_eq!(table.contraction(&[0, 0, 0], 0, 2).unwrap(), ca.contraction(&[0, 0, 0], 0, 2).unwrap());
        assert!(matches!(table.product(&[0, 0], &[0, 0]), Err(Error::Oracle(_))));
    }

    #[test]
    fn contraction_types_are_checked() {
        let ca = EndomorphismCa::oriented(2);
        let up = Palette::oriented_colour(0, crate::palette::Orientation::Up);
        assert!(ca.contraction(&[up, up], 0, 1).is_err());
    }
}
