//! Coloured Brauer diagrams over a palette with a colour involution `ω`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{BrauerDiagram, Permutation, Point};
use crate::error::{Error, Result};

pub type Colour = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Palette {
    names: Vec<String>,
    omega: Vec<Colour>,
}

#[derive(Serialize, Deserialize)]
struct PaletteFile {
    colours: Vec<String>,
    omega: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Up,
    Down,
}

/// A word in oriented colours `(d, ↑)` or `(d, ↓)`, `d` indexing an unoriented set.
pub type OrientedWord = Vec<(usize, Orientation)>;

impl Palette {
    pub fn new(names: Vec<String>, omega: Vec<Colour>) -> Result<Self> {
        if names.len() != omega.len() {
            return Err(Error::Palette("omega must be defined on every colour".into()));
        }
        for (c, &w) in omega.iter().enumerate() {
            if w >= omega.len() || omega[w] != c {
                return Err(Error::Palette(format!(
                    "omega is not an involution at {}",
                    names[c]
                )));
            }
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::Palette("duplicate colour names".into()));
        }
        if names
            .iter()
            .any(|n| n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_'))
        {
            return Err(Error::Palette("colour names must be alphanumeric".into()));
        }
        Ok(Palette { names, omega })
    }

    /// One self-dual colour; recovers uncoloured diagrams.
    pub fn monochrome() -> Self {
        Palette::new(vec!["x".into()], vec![0]).unwrap()
    }

    /// Colours `name_up` and `name_dn` for each unoriented name, swapped by `ω`.
    pub fn oriented(unoriented: &[&str]) -> Self {
        let mut names = Vec::new();
        let mut omega = Vec::new();
        for (i, d) in unoriented.iter().enumerate() {
            names.push(format!("{d}_up"));
            names.push(format!("{d}_dn"));
            omega.push(2 * i + 1);
            omega.push(2 * i);
        }
        Palette::new(names, omega).unwrap()
    }

    pub fn oriented_colour(d: usize, o: Orientation) -> Colour {
        match o {
            Orientation::Up => 2 * d,
            Orientation::Down => 2 * d + 1,
        }
    }

    pub fn oriented_word(word: &[(usize, Orientation)]) -> Vec<Colour> {
        word.iter().map(|&(d, o)| Self::oriented_colour(d, o)).collect()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn omega(&self, c: Colour) -> Colour {
        self.omega[c]
    }

    pub fn name(&self, c: Colour) -> &str {
        &self.names[c]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn colour(&self, name: &str) -> Result<Colour> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Palette(format!("unknown colour {name}")))
    }

    /// Representative of the `ω`-orbit of `c`.
    pub fn orbit(&self, c: Colour) -> Colour {
        c.min(self.omega[c])
    }

    pub fn word_names(&self, word: &[Colour]) -> String {
        let parts: Vec<&str> = word.iter().map(|&c| self.name(c)).collect();
        format!("({})", parts.join(" "))
    }

    /// Reverses the word and applies `ω`.
    pub fn dual_object(&self, word: &[Colour]) -> Vec<Colour> {
        word.iter().rev().map(|&c| self.omega[c]).collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PaletteFile =
            serde_json::from_str(text).map_err(|e| Error::Palette(e.to_string()))?;
        let mut omega = Vec::with_capacity(file.colours.len());
        for c in &file.colours {
            let target = file
                .omega
                .get(c)
                .ok_or_else(|| Error::Palette(format!("omega missing for {c}")))?;
            let idx = file
                .colours
                .iter()
                .position(|n| n == target)
                .ok_or_else(|| Error::Palette(format!("omega maps to unknown colour {target}")))?;
            omega.push(idx);
        }
        Palette::new(file.colours, omega)
    }

    pub fn to_json(&self) -> String {
        let file = PaletteFile {
            colours: self.names.clone(),
            omega: self
                .names
                .iter()
                .enumerate()
                .map(|(c, n)| (n.clone(), self.names[self.omega[c]].clone()))
                .collect(),
        };
        serde_json::to_string(&file).unwrap()
    }
}

/// A Brauer diagram with a colour on every boundary point and a multiset of
/// colour orbits on its closed loops.
///
/// Colours obey `λ(τ x) = ω λ(x)` along every strand. The input type reads
/// `ω ∘ λ` on sources, the output type reads `λ` on targets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColouredDiagram {
    base: BrauerDiagram,
    boundary: Vec<Colour>,
    closed: Vec<Colour>,
}

impl ColouredDiagram {
    pub fn new(
        palette: &Palette,
        base: BrauerDiagram,
        boundary: Vec<Colour>,
        mut closed: Vec<Colour>,
    ) -> Result<Self> {
        if boundary.len() != base.points() {
            return Err(Error::ArityMismatch {
                expected: base.points(),
                found: boundary.len(),
            });
        }
        if closed.len() != base.closed() {
            return Err(Error::ArityMismatch {
                expected: base.closed(),
                found: closed.len(),
            });
        }
        if let Some(&c) = boundary.iter().chain(&closed).find(|&&c| c >= palette.len()) {
            return Err(Error::Palette(format!("colour index {c} out of range")));
        }
        for &(a, b) in base.pairs() {
            if boundary[b] != palette.omega(boundary[a]) {
                return Err(Error::TypeMismatch {
                    index: b,
                    expected: palette.name(palette.omega(boundary[a])).to_string(),
                    found: palette.name(boundary[b]).to_string(),
                });
            }
        }
        for c in closed.iter_mut() {
            *c = palette.orbit(*c);
        }
        closed.sort_unstable();
        Ok(ColouredDiagram {
            base,
            boundary,
            closed,
        })
    }

    /// Colours the boundary from the input and output types; only open diagrams.
    pub fn from_types(
        palette: &Palette,
        base: BrauerDiagram,
        input: &[Colour],
        output: &[Colour],
        closed: Vec<Colour>,
    ) -> Result<Self> {
        if input.len() != base.m() || output.len() != base.n() {
            return Err(Error::ArityMismatch {
                expected: base.m() + base.n(),
                found: input.len() + output.len(),
            });
        }
        let boundary = input
            .iter()
            .map(|&c| palette.omega(c))
            .chain(output.iter().copied())
            .collect();
        Self::new(palette, base, boundary, closed)
    }

    pub fn base(&self) -> &BrauerDiagram {
        &self.base
    }

    pub fn boundary(&self) -> &[Colour] {
        &self.boundary
    }

    pub fn closed(&self) -> &[Colour] {
        &self.closed
    }

    pub fn input(&self, palette: &Palette) -> Vec<Colour> {
        self.boundary[..self.base.m()]
            .iter()
            .map(|&c| palette.omega(c))
            .collect()
    }

    pub fn output(&self) -> Vec<Colour> {
        self.boundary[self.base.m()..].to_vec()
    }

    pub fn identity(palette: &Palette, word: &[Colour]) -> Self {
        Self::from_types(palette, BrauerDiagram::identity(word.len()), word, word, vec![]).unwrap()
    }

    pub fn cup(palette: &Palette, c: Colour) -> Self {
        Self::from_types(palette, BrauerDiagram::cup(), &[], &[c, palette.omega(c)], vec![])
            .unwrap()
    }

    /// Cap with input type `(ω c, c)`.
    pub fn cap(palette: &Palette, c: Colour) -> Self {
        Self::from_types(palette, BrauerDiagram::cap(), &[palette.omega(c), c], &[], vec![])
            .unwrap()
    }

    pub fn sym(palette: &Palette, c: Colour, d: Colour) -> Self {
        Self::from_types(palette, BrauerDiagram::sym(), &[c, d], &[d, c], vec![]).unwrap()
    }

    /// Permutation diagram on the input word `word`.
    pub fn permutation(palette: &Palette, sigma: &Permutation, word: &[Colour]) -> Result<Self> {
        if sigma.len() != word.len() {
            return Err(Error::ArityMismatch {
                expected: word.len(),
                found: sigma.len(),
            });
        }
        let mut output = vec![0; word.len()];
        for (i, &c) in word.iter().enumerate() {
            output[sigma.apply(i)] = c;
        }
        Self::from_types(palette, BrauerDiagram::permutation(sigma), word, &output, vec![])
    }

    pub fn to_text(&self, palette: &Palette) -> String {
        let mut s = format!("{}->{} :", self.base.m(), self.base.n());
        if !self.base.pairs().is_empty() {
            s.push(' ');
        }
        for &(a, b) in self.base.pairs() {
            s.push_str(&format!(
                "({}:{} {}:{})",
                self.base.point(a),
                palette.name(self.boundary[a]),
                self.base.point(b),
                palette.name(self.boundary[b])
            ));
        }
        if !self.closed.is_empty() {
            s.push_str(" +");
            for &c in &self.closed {
                s.push_str(&format!(" [{}]", palette.name(c)));
            }
        }
        s
    }

    pub fn colour_at(&self, p: Point) -> Colour {
        self.boundary[self.base.index_of(p)]
    }
}

/// `g ∘ f` for coloured diagrams, checking that the output type of `f`
/// matches the input type of `g`.
pub fn coloured_compose(
    palette: &Palette,
    f: &ColouredDiagram,
    g: &ColouredDiagram,
) -> Result<ColouredDiagram> {
    let out = f.output();
    let inp = g.input(palette);
    if out.len() != inp.len() {
        return Err(Error::ArityMismatch {
            expected: out.len(),
            found: inp.len(),
        });
    }
    if let Some(i) = (0..out.len()).find(|&i| out[i] != inp[i]) {
        return Err(Error::TypeMismatch {
            index: i,
            expected: palette.name(out[i]).to_string(),
            found: palette.name(inp[i]).to_string(),
        });
    }
    let composite = BrauerDiagram::compose_traced(&f.base, &g.base)?;
    let m = f.base.m();
    let mut boundary = f.boundary[..m].to_vec();
    boundary.extend_from_slice(&g.boundary[g.base.m()..]);
    let mut closed = f.closed.clone();
    closed.extend_from_slice(&g.closed);
    for cycle in &composite.cycles {
        closed.push(f.boundary[m + cycle[0]]);
    }
    ColouredDiagram::new(palette, composite.diagram, boundary, closed)
}

pub fn coloured_oplus(f: &ColouredDiagram, g: &ColouredDiagram) -> ColouredDiagram {
    let base = BrauerDiagram::oplus(&f.base, &g.base);
    let (fm, gm) = (f.base.m(), g.base.m());
    let mut boundary = f.boundary[..fm].to_vec();
    boundary.extend_from_slice(&g.boundary[..gm]);
    boundary.extend_from_slice(&f.boundary[fm..]);
    boundary.extend_from_slice(&g.boundary[gm..]);
    let mut closed = f.closed.clone();
    closed.extend_from_slice(&g.closed);
    closed.sort_unstable();
    ColouredDiagram {
        base,
        boundary,
        closed,
    }
}

/// Stable partition putting every `↑` before every `↓`.
///
/// Returns the normal form and the shuffle sending position `i` of `word`
/// to its position in the normal form.
pub fn walled_normal_form(word: &[(usize, Orientation)]) -> (OrientedWord, Permutation) {
    let ups: Vec<usize> = (0..word.len())
        .filter(|&i| word[i].1 == Orientation::Up)
        .collect();
    let downs: Vec<usize> = (0..word.len())
        .filter(|&i| word[i].1 == Orientation::Down)
        .collect();
    let mut images = vec![0; word.len()];
    let mut normal = Vec::with_capacity(word.len());
    for (k, &i) in ups.iter().chain(&downs).enumerate() {
        images[i] = k;
        normal.push(word[i]);
    }
    (normal, Permutation::from_images(images).unwrap())
}

/// Relabels colours along `phi`, which must commute with the involutions.
pub fn palette_pushforward(
    source: &Palette,
    target: &Palette,
    phi: &[Colour],
    f: &ColouredDiagram,
) -> Result<ColouredDiagram> {
    if phi.len() != source.len() {
        return Err(Error::Palette("colour map must cover the source palette".into()));
    }
    for c in 0..source.len() {
        if phi[c] >= target.len() {
            return Err(Error::Palette(format!("colour map sends {c} out of range")));
        }
        if phi[source.omega(c)] != target.omega(phi[c]) {
            return Err(Error::NotEquivariant(source.name(c).to_string()));
        }
    }
    ColouredDiagram::new(
        target,
        f.base.clone(),
        f.boundary.iter().map(|&c| phi[c]).collect(),
        f.closed.iter().map(|&c| phi[c]).collect(),
    )
}

/// Open coloured diagrams between the given types, sorted.
pub fn enumerate_coloured(
    palette: &Palette,
    input: &[Colour],
    output: &[Colour],
) -> Vec<ColouredDiagram> {
    BrauerDiagram::enumerate_open(input.len(), output.len())
        .into_iter()
        .filter_map(|d| ColouredDiagram::from_types(palette, d, input, output, vec![]).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::BrauerDiagram;

    fn two_tone() -> Palette {
        Palette::new(vec!["a".into(), "b".into(), "c".into()], vec![1, 0, 2]).unwrap()
    }

    #[test]
    fn rejects_non_involution() {
        assert!(Palette::new(vec!["a".into(), "b".into()], vec![1, 1]).is_err());
    }

    #[test]
    fn cup_cap_leaves_coloured_bubble() {
        let p = two_tone();
        let x = coloured_compose(&p, &ColouredDiagram::cup(&p, 1), &ColouredDiagram::cap(&p, 0))
            .unwrap();
        assert_eq!(x.closed(), &[0]);
        assert_eq!(x.to_text(&p), "0->0 : + [a]");
    }

    #[test]
    fn mismatch_reports_first_index() {
        let p = two_tone();
        let f = ColouredDiagram::identity(&p, &[0, 2]);
        let g = ColouredDiagram::identity(&p, &[0, 1]);
        match coloured_compose(&p, &f, &g) {
            Err(Error::TypeMismatch { index, .. }) => assert_eq!(index, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn compatibility_is_enforced() {
        let p = two_tone();
        assert!(ColouredDiagram::new(&p, BrauerDiagram::cup(), vec![0, 0], vec![]).is_err());
        assert!(ColouredDiagram::new(&p, BrauerDiagram::cup(), vec![0, 1], vec![]).is_ok());
    }

    #[test]
    fn dual_reverses_and_flips() {
        let p = two_tone();
        assert_eq!(p.dual_object(&[0, 2, 0]), vec![1, 2, 1]);
        assert_eq!(p.dual_object(&p.dual_object(&[0, 2, 1])), vec![0, 2, 1]);
    }

    #[test]
    fn walled_examples() {
        use Orientation::*;
        let (nf, s) = walled_normal_form(&[(0, Down), (0, Up)]);
        assert_eq!(nf, vec![(0, Up), (0, Down)]);
        assert_eq!(s, Permutation::transposition(2, 0, 1));
        let (nf, s) = walled_normal_form(&[(0, Up), (0, Down), (0, Up), (0, Down)]);
        assert_eq!(nf, vec![(0, Up), (0, Up), (0, Down), (0, Down)]);
        assert_eq!(s.cycles(), vec![vec![2, 3]]);
    }

    #[test]
    fn pushforward_checks_equivariance() {
        let p = two_tone();
        let q = Palette::monochrome();
        let f = ColouredDiagram::cup(&p, 0);
        let g = palette_pushforward(&p, &q, &[0, 0, 0], &f).unwrap();
        assert_eq!(g.base(), f.base());
        let r = Palette::new(vec!["u".into(), "v".into()], vec![0, 1]).unwrap();
        assert!(matches!(
            palette_pushforward(&p, &r, &[0, 1, 0], &f),
            Err(Error::NotEquivariant(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let p = two_tone();
        assert_eq!(Palette::from_json(&p.to_json()).unwrap(), p);
        let text = r#"{"colours":["up","down"],"omega":{"up":"down","down":"up"}}"#;
        let q = Palette::from_json(text).unwrap();
        assert_eq!(q.omega(0), 1);
    }
}
