//! Strict symmetric monoidal and compact closed laws of the diagram category,
//! checked by exact equality of diagrams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::{BrauerDiagram, Permutation};
use crate::error::Result;

#[derive(Clone, Debug, Serialize)]
pub struct LawResult {
    pub law: String,
    pub cases: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LawsReport {
    pub max_points: usize,
    pub random_cases: usize,
    pub random_max_points: usize,
    pub seed: u64,
    pub results: Vec<LawResult>,
    pub passed: bool,
}

impl LawsReport {
    pub fn result(&self, law: &str) -> Option<&LawResult> {
        self.results.iter().find(|r| r.law == law)
    }
}

struct Tally(LawResult);

impl Tally {
    fn new(law: &str) -> Self {
        Tally(LawResult {
            law: law.to_string(),
            cases: 0,
            passed: true,
            counterexample: None,
        })
    }

    fn record(&mut self, lhs: &BrauerDiagram, rhs: &BrauerDiagram, describe: impl FnOnce() -> String) {
        self.0.cases += 1;
        if lhs != rhs && self.0.passed {
            self.0.passed = false;
            self.0.counterexample = Some(format!("{}: {lhs} != {rhs}", describe()));
        }
    }
}

fn comp(f: &BrauerDiagram, g: &BrauerDiagram) -> Result<BrauerDiagram> {
    BrauerDiagram::compose(f, g)
}

fn sum(f: &BrauerDiagram, g: &BrauerDiagram) -> BrauerDiagram {
    BrauerDiagram::oplus(f, g)
}

/// The symmetry `x ⊕ y -> y ⊕ x` on blocks of `x` and `y` strands.
pub fn block_swap(x: usize, y: usize) -> BrauerDiagram {
    let images = (0..x + y).map(|i| if i < x { y + i } else { i - x }).collect();
    BrauerDiagram::permutation(&Permutation::from_images(images).expect("block swap"))
}

/// Every diagram `m -> n` with `m + n <= max_points` and at most one loop.
fn small_homs(max_points: usize) -> Vec<BrauerDiagram> {
    let mut out = Vec::new();
    for m in 0..=max_points {
        for n in 0..=max_points - m {
            out.extend(BrauerDiagram::enumerate(m, n, 1));
        }
    }
    out
}

struct Laws {
    assoc: Tally,
    units: Tally,
    interchange: Tally,
    monoidal: Tally,
    naturality: Tally,
    involution: Tally,
    braid: Tally,
    triangle: Tally,
}

impl Laws {
    fn new() -> Self {
        Laws {
            assoc: Tally::new("associativity"),
            units: Tally::new("units"),
            interchange: Tally::new("interchange"),
            monoidal: Tally::new("monoidal-associativity"),
            naturality: Tally::new("symmetry-naturality"),
            involution: Tally::new("symmetry-involution"),
            braid: Tally::new("braid"),
            triangle: Tally::new("triangle"),
        }
    }

    fn associativity(&mut self, f: &BrauerDiagram, g: &BrauerDiagram, h: &BrauerDiagram) -> Result<()> {
        let lhs = comp(&comp(f, g)?, h)?;
        let rhs = comp(f, &comp(g, h)?)?;
        self.assoc.record(&lhs, &rhs, || format!("f={f} g={g} h={h}"));
        Ok(())
    }

    fn units(&mut self, f: &BrauerDiagram) -> Result<()> {
        let left = comp(&BrauerDiagram::identity(f.m()), f)?;
        let right = comp(f, &BrauerDiagram::identity(f.n()))?;
        self.units.record(&left, f, || format!("id∘ on f={f}"));
        self.units.record(&right, f, || format!("∘id on f={f}"));
        let e = BrauerDiagram::empty();
        self.units.record(&sum(&e, f), f, || format!("∅⊕ on f={f}"));
        self.units.record(&sum(f, &e), f, || format!("⊕∅ on f={f}"));
        Ok(())
    }

    fn interchange(
        &mut self,
        f: &BrauerDiagram,
        g: &BrauerDiagram,
        f2: &BrauerDiagram,
        g2: &BrauerDiagram,
    ) -> Result<()> {
        let lhs = comp(&sum(f, f2), &sum(g, g2))?;
        let rhs = sum(&comp(f, g)?, &comp(f2, g2)?);
        self.interchange
            .record(&lhs, &rhs, || format!("f={f} g={g} f'={f2} g'={g2}"));
        Ok(())
    }

    fn monoidal(&mut self, f: &BrauerDiagram, g: &BrauerDiagram, h: &BrauerDiagram) {
        let lhs = sum(&sum(f, g), h);
        let rhs = sum(f, &sum(g, h));
        self.monoidal.record(&lhs, &rhs, || format!("f={f} g={g} h={h}"));
    }

    fn naturality(&mut self, f: &BrauerDiagram, g: &BrauerDiagram) -> Result<()> {
        let lhs = comp(&sum(f, g), &block_swap(f.n(), g.n()))?;
        let rhs = comp(&block_swap(f.m(), g.m()), &sum(g, f))?;
        self.naturality.record(&lhs, &rhs, || format!("f={f} g={g}"));
        Ok(())
    }

    fn symmetry(&mut self, x: usize, y: usize, z: usize) -> Result<()> {
        let there_and_back = comp(&block_swap(x, y), &block_swap(y, x))?;
        self.involution
            .record(&there_and_back, &BrauerDiagram::identity(x + y), || {
                format!("x={x} y={y}")
            });
        let id = BrauerDiagram::identity;
        // (σ_{y,z} ⊕ id_x)(id_y ⊕ σ_{x,z})(σ_{x,y} ⊕ id_z)
        let lhs = comp(
            &comp(&sum(&block_swap(x, y), &id(z)), &sum(&id(y), &block_swap(x, z)))?,
            &sum(&block_swap(y, z), &id(x)),
        )?;
        // (id_z ⊕ σ_{x,y})(σ_{x,z} ⊕ id_y)(id_x ⊕ σ_{y,z})
        let rhs = comp(
            &comp(&sum(&id(x), &block_swap(y, z)), &sum(&block_swap(x, z), &id(y)))?,
            &sum(&id(z), &block_swap(x, y)),
        )?;
        self.braid.record(&lhs, &rhs, || format!("x={x} y={y} z={z}"));
        Ok(())
    }

    fn triangle(&mut self, n: usize) -> Result<()> {
        let id = BrauerDiagram::identity(n);
        let (cup, cap) = (BrauerDiagram::cup_n(n), BrauerDiagram::cap_n(n));
        let left = comp(&sum(&id, &cup), &sum(&cap, &id))?;
        let right = comp(&sum(&cup, &id), &sum(&id, &cap))?;
        self.triangle.record(&left, &id, || format!("(∩_{n} ⊕ id)(id ⊕ ∪_{n}), n={n}"));
        self.triangle.record(&right, &id, || format!("(id ⊕ ∩_{n})(∪_{n} ⊕ id), n={n}"));
        Ok(())
    }

    fn finish(self, max_points: usize, random_cases: usize, random_max_points: usize, seed: u64) -> LawsReport {
        let results: Vec<LawResult> = [
            self.assoc,
            self.units,
            self.interchange,
            self.monoidal,
            self.naturality,
            self.involution,
            self.braid,
            self.triangle,
        ]
        .into_iter()
        .map(|t| t.0)
        .collect();
        LawsReport {
            max_points,
            random_cases,
            random_max_points,
            seed,
            passed: results.iter().all(|r| r.passed),
            results,
        }
    }
}

/// A random diagram `m -> n` with up to two loops.
fn random_diagram(rng: &mut ChaCha8Rng, m: usize, n: usize) -> BrauerDiagram {
    let f = BrauerDiagram::random_open(m, n, rng).expect("even boundary");
    f.with_closed(rng.gen_range(0..=2))
}

/// An object `b` with `a + b` even and at most `max_points`.
fn next_object(rng: &mut ChaCha8Rng, a: usize, max_points: usize) -> usize {
    let choices: Vec<usize> = (0..=max_points - a).filter(|b| (a + b).is_multiple_of(2)).collect();
    choices[rng.gen_range(0..choices.len())]
}

fn random_chain(rng: &mut ChaCha8Rng, len: usize, max_points: usize) -> Vec<BrauerDiagram> {
    let mut a = rng.gen_range(0..=max_points);
    (0..len)
        .map(|_| {
            let b = next_object(rng, a, max_points);
            let f = random_diagram(rng, a, b);
            a = b;
            f
        })
        .collect()
}

/// Runs every law exhaustively on hom-sets with at most `max_points`
/// boundary points (triangles for `n <= max(max_points, 4)`), then
/// `random_cases` seeded cases on diagrams with up to `random_max_points`.
pub fn check_category_laws(
    max_points: usize,
    random_cases: usize,
    random_max_points: usize,
    seed: u64,
) -> Result<LawsReport> {
    let mut laws = Laws::new();
    let homs = small_homs(max_points);
    let from = |m: usize| homs.iter().filter(move |f| f.m() == m);

    for f in &homs {
        laws.units(f)?;
        for g in from(f.n()) {
            for h in from(g.n()) {
                laws.associativity(f, g, h)?;
            }
        }
    }
    let pairs: Vec<(&BrauerDiagram, &BrauerDiagram)> = homs
        .iter()
        .flat_map(|f| from(f.n()).map(move |g| (f, g)))
        .collect();
    for &(f, g) in &pairs {
        for &(f2, g2) in &pairs {
            laws.interchange(f, g, f2, g2)?;
        }
    }
    for f in &homs {
        for g in &homs {
            laws.naturality(f, g)?;
            for h in &homs {
                laws.monoidal(f, g, h);
            }
        }
    }
    for x in 0..=max_points {
        for y in 0..=max_points - x {
            for z in 0..=max_points - x - y {
                laws.symmetry(x, y, z)?;
            }
        }
    }
    for n in 0..=max_points.max(4) {
        laws.triangle(n)?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = random_max_points;
    for i in 0..random_cases {
        match i % 5 {
            0 => {
                let c = random_chain(&mut rng, 3, r);
                laws.associativity(&c[0], &c[1], &c[2])?;
            }
            1 => {
                let c = random_chain(&mut rng, 2, r);
                let c2 = random_chain(&mut rng, 2, r);
                laws.interchange(&c[0], &c[1], &c2[0], &c2[1])?;
            }
            2 => {
                let f = random_chain(&mut rng, 1, r).remove(0);
                let g = random_chain(&mut rng, 1, r).remove(0);
                laws.naturality(&f, &g)?;
            }
            3 => {
                let f = random_chain(&mut rng, 1, r).remove(0);
                laws.units(&f)?;
                let g = random_chain(&mut rng, 1, r).remove(0);
                let h = random_chain(&mut rng, 1, r).remove(0);
                laws.monoidal(&f, &g, &h);
            }
            _ => {
                let x = rng.gen_range(0..=r);
                let y = rng.gen_range(0..=r - x);
                laws.symmetry(x, y, r - x - y)?;
            }
        }
    }
    Ok(laws.finish(max_points, random_cases, random_max_points, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let r = check_category_laws(2, 50, 6, 3).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.results.iter().all(|l| l.cases > 0));
    }

    #[test]
    fn block_swap_of_single_strands_is_sym() {
        assert_eq!(block_swap(1, 1), BrauerDiagram::sym());
        assert_eq!(block_swap(0, 3), BrauerDiagram::identity(3));
    }

    #[test]
    fn broken_equality_is_caught() {
        let mut t = Tally::new("x");
        t.record(&BrauerDiagram::cup(), &BrauerDiagram::cup(), || "same".into());
        t.record(&BrauerDiagram::bubble(), &BrauerDiagram::empty(), || "loop".into());
        assert!(!t.0.passed);
        assert!(t.0.counterexample.unwrap().starts_with("loop"));
    }
}
