use crate::diagram::{BrauerDiagram, Permutation};
use crate::error::{Error, Result};
use crate::palette::{coloured_compose, coloured_oplus, Colour, ColouredDiagram, Palette};

/// A coloured diagram whose sources are cut into consecutive input blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WiringDiagram {
    body: ColouredDiagram,
    blocks: Vec<usize>,
}

impl WiringDiagram {
    pub fn new(body: ColouredDiagram, blocks: Vec<usize>) -> Result<Self> {
        let total: usize = blocks.iter().sum();
        if total != body.base().m() {
            return Err(Error::ArityMismatch {
                expected: body.base().m(),
                found: total,
            });
        }
        Ok(WiringDiagram { body, blocks })
    }

    /// Uncoloured shorthand over the monochrome palette.
    pub fn plain(base: BrauerDiagram, blocks: Vec<usize>) -> Result<Self> {
        let p = Palette::monochrome();
        let body = ColouredDiagram::new(&p, base.clone(), vec![0; base.points()], vec![0; base.closed()])?;
        Self::new(body, blocks)
    }

    /// The operad unit on `word`: one block, identity strands.
    pub fn identity(palette: &Palette, word: &[Colour]) -> Self {
        WiringDiagram {
            body: ColouredDiagram::identity(palette, word),
            blocks: vec![word.len()],
        }
    }

    pub fn body(&self) -> &ColouredDiagram {
        &self.body
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn arity(&self) -> usize {
        self.blocks.len()
    }

    fn block_starts(&self) -> Vec<usize> {
        let mut starts = Vec::with_capacity(self.blocks.len());
        let mut at = 0;
        for &b in &self.blocks {
            starts.push(at);
            at += b;
        }
        starts
    }

    /// Colour words of the input blocks.
    pub fn block_words(&self, palette: &Palette) -> Vec<Vec<Colour>> {
        let input = self.body.input(palette);
        self.block_starts()
            .iter()
            .zip(&self.blocks)
            .map(|(&s, &b)| input[s..s + b].to_vec())
            .collect()
    }

    pub fn output(&self) -> Vec<Colour> {
        self.body.output()
    }

    /// Block of each source point.
    fn block_of(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(i, &b)| std::iter::repeat_n(i, b))
            .collect()
    }

    /// The block permutation action: block `i` moves to position `sigma(i)`.
    pub fn permute_blocks(&self, palette: &Palette, sigma: &Permutation) -> Result<Self> {
        if sigma.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: sigma.len(),
            });
        }
        let starts = self.block_starts();
        let inv = sigma.inverse();
        let new_blocks: Vec<usize> = (0..self.arity()).map(|k| self.blocks[inv.apply(k)]).collect();
        let mut new_starts = Vec::with_capacity(self.arity());
        let mut at = 0;
        for &b in &new_blocks {
            new_starts.push(at);
            at += b;
        }
        let mut images = vec![0; self.body.base().m()];
        for (i, (&s, &b)) in starts.iter().zip(&self.blocks).enumerate() {
            for off in 0..b {
                images[s + off] = new_starts[sigma.apply(i)] + off;
            }
        }
        // Relabel sources: precompose the body with the shuffle taking the
        // new order to the old one.
        let shuffle = Permutation::from_images(images)?;
        let input = self.body.input(palette);
        let mut new_input = vec![0; input.len()];
        for (i, &c) in input.iter().enumerate() {
            new_input[shuffle.apply(i)] = c;
        }
        let p = ColouredDiagram::permutation(palette, &shuffle.inverse(), &new_input)?;
        let body = coloured_compose(palette, &p, &self.body)?;
        Ok(WiringDiagram {
            body,
            blocks: new_blocks,
        })
    }

    /// Whether the body is a downward diagram, the operations of a
    /// non-unital circuit algebra.
    pub fn is_nonunital_admissible(&self) -> bool {
        self.body.base().is_downward()
    }

    /// Connectedness: no closed loops, and the graph on blocks and strands,
    /// with each strand joined to the blocks it touches, is connected. A
    /// strand touching only outputs is an isolated vertex. Without blocks
    /// only the empty diagram counts as connected.
    pub fn is_connected(&self) -> bool {
        let base = self.body.base();
        if base.closed() > 0 {
            return false;
        }
        let k = self.arity();
        if k == 0 {
            return base.pairs().is_empty();
        }
        let block_of = self.block_of();
        let m = base.m();
        let strands = base.pairs().len();
        let mut parent: Vec<usize> = (0..k + strands).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for (s, &(a, b)) in base.pairs().iter().enumerate() {
            for x in [a, b] {
                if x < m {
                    let (u, v) = (find(&mut parent, k + s), find(&mut parent, block_of[x]));
                    parent[u] = v;
                }
            }
        }
        let root = find(&mut parent, 0);
        (0..k + strands).all(|v| find(&mut parent, v) == root)
    }
}

/// Operadic composition `γ(g; f_1, …, f_k) = g ∘ (f_1 ⊕ … ⊕ f_k)`.
pub fn gamma(palette: &Palette, g: &WiringDiagram, fs: &[WiringDiagram]) -> Result<WiringDiagram> {
    if fs.len() != g.arity() {
        return Err(Error::ArityMismatch {
            expected: g.arity(),
            found: fs.len(),
        });
    }
    let words = g.block_words(palette);
    for (i, (f, w)) in fs.iter().zip(&words).enumerate() {
        let out = f.output();
        if &out != w {
            return Err(Error::GradeMismatch {
                block: i,
                expected: palette.word_names(w),
                found: palette.word_names(&out),
            });
        }
    }
    let mut stack = ColouredDiagram::identity(palette, &[]);
    let mut blocks = Vec::new();
    for f in fs {
        stack = coloured_oplus(&stack, &f.body);
        blocks.extend_from_slice(&f.blocks);
    }
    let body = coloured_compose(palette, &stack, &g.body)?;
    Ok(WiringDiagram { body, blocks })
}

/// Every monochrome wiring diagram with `points` sources cut into the given
/// block sizes and `outputs` targets, with no loops.
pub fn enumerate_plain(blocks: &[usize], outputs: usize) -> Vec<WiringDiagram> {
    let m: usize = blocks.iter().sum();
    BrauerDiagram::enumerate_open(m, outputs)
        .into_iter()
        .map(|d| WiringDiagram::plain(d, blocks.to_vec()).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono() -> Palette {
        Palette::monochrome()
    }

    fn wd(m: usize, n: usize, pairs: &[(usize, usize)], blocks: &[usize]) -> WiringDiagram {
        // Pairs use 1-based sources 1..=m and targets m+1..=m+n.
        let pairs = pairs.iter().map(|&(a, b)| (a - 1, b - 1));
        WiringDiagram::plain(BrauerDiagram::new(m, n, pairs, 0).unwrap(), blocks.to_vec()).unwrap()
    }

    #[test]
    fn cap_into_cup_is_a_loop() {
        let p = mono();
        let cap = WiringDiagram::plain(BrauerDiagram::cap(), vec![2]).unwrap();
        let cup = WiringDiagram::plain(BrauerDiagram::cup(), vec![]).unwrap();
        let x = gamma(&p, &cap, &[cup]).unwrap();
        assert_eq!(x.arity(), 0);
        assert_eq!(x.body().base(), &BrauerDiagram::bubble());
        assert!(!x.is_connected());
    }

    #[test]
    fn identity_is_a_unit() {
        let p = mono();
        let f = wd(4, 2, &[(1, 6), (3, 5), (2, 4)], &[3, 1]);
        assert_eq!(gamma(&p, &WiringDiagram::identity(&p, &[0, 0]), std::slice::from_ref(&f)).unwrap(), f);
        let ids = [WiringDiagram::identity(&p, &[0; 3]), WiringDiagram::identity(&p, &[0])];
        assert_eq!(gamma(&p, &f, &ids).unwrap(), f);
    }

    #[test]
    fn three_block_composite() {
        let p = mono();
        let g = wd(
            9,
            3,
            &[(1, 11), (2, 8), (3, 5), (4, 10), (6, 9), (7, 12)],
            &[2, 4, 3],
        );
        let f1 = wd(4, 2, &[(1, 6), (3, 5), (2, 4)], &[3, 1]);
        let f2 = wd(2, 4, &[(1, 4), (2, 6), (3, 5)], &[2]);
        let f3 = wd(3, 3, &[(1, 4), (2, 3), (5, 6)], &[1, 1, 1]);
        let x = gamma(&p, &g, &[f1, f2, f3]).unwrap();
        assert_eq!(x.blocks(), &[3, 1, 2, 1, 1, 1]);
        assert_eq!(x.body().base().closed(), 1);
        let expected = wd(
            9,
            3,
            &[(1, 6), (3, 11), (5, 10), (7, 12), (2, 4), (8, 9)],
            &[3, 1, 2, 1, 1, 1],
        );
        assert_eq!(x.body().base().open_part(), expected.body().base().clone());
    }

    #[test]
    fn connectedness_examples() {
        let cap = WiringDiagram::plain(BrauerDiagram::cap(), vec![2]).unwrap();
        assert!(cap.is_connected());
        let split = WiringDiagram::plain(BrauerDiagram::identity(2), vec![1, 1]).unwrap();
        assert!(!split.is_connected());
        let loop_ = WiringDiagram::plain(BrauerDiagram::cap().with_closed(1), vec![2]).unwrap();
        assert!(!loop_.is_connected());
        let cup = WiringDiagram::plain(BrauerDiagram::cup(), vec![]).unwrap();
        assert!(!cup.is_connected());
        assert!(WiringDiagram::plain(BrauerDiagram::empty(), vec![]).unwrap().is_connected());
    }

    #[test]
    fn admissibility() {
        assert!(WiringDiagram::plain(BrauerDiagram::cap(), vec![2]).unwrap().is_nonunital_admissible());
        assert!(!WiringDiagram::plain(BrauerDiagram::cup(), vec![]).unwrap().is_nonunital_admissible());
    }

    #[test]
    fn block_permutation_composes() {
        let p = mono();
        let f = wd(4, 2, &[(1, 6), (3, 5), (2, 4)], &[3, 1]);
        let s = Permutation::from_images(vec![1, 0]).unwrap();
        let g = f.permute_blocks(&p, &s).unwrap();
        assert_eq!(g.blocks(), &[1, 3]);
        assert_eq!(g.permute_blocks(&p, &s).unwrap(), f);
    }
}
