use std::collections::BTreeMap;

use crate::diagram::Permutation;
use crate::error::{Error, Result};
use crate::palette::{Colour, Palette};

use super::operad::{gamma, WiringDiagram};

/// Generators of a free circuit algebra, each with its colour word.
pub type Generators = BTreeMap<String, Vec<Colour>>;

/// A wiring diagram with a generator label in every block, stored in a
/// canonical form for the block permutation action.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedElement {
    wiring: WiringDiagram,
    labels: Vec<String>,
}

impl DecoratedElement {
    pub fn new(
        palette: &Palette,
        generators: &Generators,
        wiring: WiringDiagram,
        labels: Vec<String>,
    ) -> Result<Self> {
        if labels.len() != wiring.arity() {
            return Err(Error::ArityMismatch {
                expected: wiring.arity(),
                found: labels.len(),
            });
        }
        for (i, (label, word)) in labels.iter().zip(wiring.block_words(palette)).enumerate() {
            let grade = generators
                .get(label)
                .ok_or_else(|| Error::Unsupported(format!("unknown generator {label}")))?;
            if grade != &word {
                return Err(Error::GradeMismatch {
                    block: i,
                    expected: palette.word_names(grade),
                    found: palette.word_names(&word),
                });
            }
        }
        DecoratedElement { wiring, labels }.canonical(palette)
    }

    /// The generator itself, as the unit diagram with one labelled block.
    pub fn generator(palette: &Palette, generators: &Generators, label: &str) -> Result<Self> {
        let word = generators
            .get(label)
            .ok_or_else(|| Error::Unsupported(format!("unknown generator {label}")))?;
        Self::new(
            palette,
            generators,
            WiringDiagram::identity(palette, word),
            vec![label.to_string()],
        )
    }

    pub fn wiring(&self) -> &WiringDiagram {
        &self.wiring
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn grade(&self) -> Vec<Colour> {
        self.wiring.output()
    }

    /// Least representative of the orbit under block permutations: blocks
    /// sorted by grade and label, ties broken by the smallest body.
    fn canonical(self, palette: &Palette) -> Result<Self> {
        let k = self.labels.len();
        let words = self.wiring.block_words(palette);
        let key = |i: usize| (words[i].clone(), self.labels[i].clone());
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&i| key(i));
        // Runs of equal keys may be permuted freely.
        let mut runs: Vec<Vec<usize>> = Vec::new();
        for &i in &order {
            match runs.last_mut() {
                Some(run) if key(run[0]) == key(i) => run.push(i),
                _ => runs.push(vec![i]),
            }
        }
        let mut best: Option<WiringDiagram> = None;
        let mut choices: Vec<Vec<Permutation>> =
            runs.iter().map(|r| Permutation::all(r.len())).collect();
        if choices.iter().map(|c| c.len()).product::<usize>() > 40_320 {
            choices = runs.iter().map(|r| vec![Permutation::identity(r.len())]).collect();
        }
        let mut counter = vec![0usize; runs.len()];
        loop {
            let mut arrangement = Vec::with_capacity(k);
            for (run, (c, perms)) in runs.iter().zip(counter.iter().zip(&choices)) {
                let p = &perms[*c];
                arrangement.extend((0..run.len()).map(|j| run[p.apply(j)]));
            }
            // Block arrangement[pos] moves to position pos.
            let mut images = vec![0; k];
            for (pos, &i) in arrangement.iter().enumerate() {
                images[i] = pos;
            }
            let w = self
                .wiring
                .permute_blocks(palette, &Permutation::from_images(images)?)?;
            if best.as_ref().is_none_or(|b| &w < b) {
                best = Some(w);
            }
            let mut slot = 0;
            while slot < counter.len() {
                counter[slot] += 1;
                if counter[slot] < choices[slot].len() {
                    break;
                }
                counter[slot] = 0;
                slot += 1;
            }
            if slot == counter.len() {
                break;
            }
        }
        let labels = order.iter().map(|&i| self.labels[i].clone()).collect();
        Ok(DecoratedElement {
            wiring: best.expect("at least one arrangement"),
            labels,
        })
    }
}

/// The free circuit algebra action: plug `elements` into the blocks of `w`.
pub fn free_ca_apply(
    palette: &Palette,
    w: &WiringDiagram,
    elements: &[DecoratedElement],
) -> Result<DecoratedElement> {
    let fs: Vec<WiringDiagram> = elements.iter().map(|e| e.wiring.clone()).collect();
    let wiring = gamma(palette, w, &fs)?;
    let labels = elements.iter().flat_map(|e| e.labels.iter().cloned()).collect();
    DecoratedElement {
        wiring,
        labels,
    }
    .canonical(palette)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::BrauerDiagram;
    use crate::wiring::operad::enumerate_plain;
    use rand::{Rng, SeedableRng};

    fn setup() -> (Palette, Generators) {
        let p = Palette::monochrome();
        let mut s = Generators::new();
        s.insert("x".into(), vec![0]);
        s.insert("y".into(), vec![0, 0]);
        (p, s)
    }

    #[test]
    fn canonical_form_forgets_block_order() {
        let (p, s) = setup();
        let x = DecoratedElement::generator(&p, &s, "x").unwrap();
        let y = DecoratedElement::generator(&p, &s, "y").unwrap();
        let w = WiringDiagram::plain(BrauerDiagram::identity(3), vec![1, 2]).unwrap();
        let a = free_ca_apply(&p, &w, &[x.clone(), y.clone()]).unwrap();
        let sigma = Permutation::from_images(vec![1, 0]).unwrap();
        let w2 = w.permute_blocks(&p, &sigma).unwrap();
        let b = free_ca_apply(&p, &w2, &[y, x]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.labels(), &["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn equal_labels_are_interchangeable() {
        let (p, s) = setup();
        let x = DecoratedElement::generator(&p, &s, "x").unwrap();
        // x ⊗ x with strands swapped equals x ⊗ x with blocks swapped.
        let straight = WiringDiagram::plain(BrauerDiagram::identity(2), vec![1, 1]).unwrap();
        let crossed = WiringDiagram::plain(BrauerDiagram::sym(), vec![1, 1]).unwrap();
        let a = free_ca_apply(&p, &straight, &[x.clone(), x.clone()]).unwrap();
        let b = free_ca_apply(&p, &crossed, &[x.clone(), x]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn action_is_associative() {
        let (p, s) = setup();
        let x = DecoratedElement::generator(&p, &s, "x").unwrap();
        let y = DecoratedElement::generator(&p, &s, "y").unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let outer_all = enumerate_plain(&[2, 2], 2);
        let inner_a = enumerate_plain(&[1, 1], 2);
        let inner_b = enumerate_plain(&[2, 2], 2);
        for _ in 0..60 {
            let g = &outer_all[rng.gen_range(0..outer_all.len())];
            let fa = &inner_a[rng.gen_range(0..inner_a.len())];
            let fb = &inner_b[rng.gen_range(0..inner_b.len())];
            let whole = gamma(&p, g, &[fa.clone(), fb.clone()]).unwrap();
            let args = [x.clone(), x.clone(), y.clone(), y.clone()];
            let lhs = free_ca_apply(&p, &whole, &args).unwrap();
            let ea = free_ca_apply(&p, fa, &args[..2]).unwrap();
            let eb = free_ca_apply(&p, fb, &args[2..]).unwrap();
            let rhs = free_ca_apply(&p, g, &[ea, eb]).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn grade_is_checked() {
        let (p, s) = setup();
        let x = DecoratedElement::generator(&p, &s, "x").unwrap();
        let w = WiringDiagram::plain(BrauerDiagram::identity(2), vec![2]).unwrap();
        assert!(matches!(
            free_ca_apply(&p, &w, &[x]),
            Err(Error::GradeMismatch { .. })
        ));
    }
}
