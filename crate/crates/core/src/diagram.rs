//! Brauer diagrams: perfect matchings on `m` source and `n` target points,
//! plus a count of closed loops.
//!
//! Points are numbered `0..m` for sources and `m..m+n` for targets. The
//! pairing is stored as the sorted list of `(lo, hi)` pairs, which makes
//! equality, hashing and ordering canonical.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// A permutation of `0..n`, stored by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPairing(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation of `0..n` from cycles written with 1-based labels.
    /// The cycle `(1 2 3)` sends 1 to 2, 2 to 3 and 3 to 1.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(Error::InvalidPairing(format!(
                        "cycle label {a} out of range 1..={n}"
                    )));
                }
                if used[a - 1] {
                    return Err(Error::InvalidPairing(format!(
                        "label {a} appears twice in cycle notation"
                    )));
                }
                used[a - 1] = true;
                let b = cycle[(k + 1) % cycle.len()];
                images[a - 1] = b - 1;
            }
        }
        Ok(Permutation(images))
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Permutation(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    pub fn inversions(&self) -> usize {
        inversions(&self.0)
    }

    pub fn sign(&self) -> i32 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All permutations of `0..n` in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation(cur.clone()));
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }

    /// Cycle notation with 1-based labels, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }
}

pub(crate) fn inversions(word: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                count += 1;
            }
        }
    }
    count
}

/// A boundary point of a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Source(usize),
    Target(usize),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Source(i) => write!(f, "s{}", i + 1),
            Point::Target(i) => write!(f, "t{}", i + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrauerDiagram {
    m: usize,
    n: usize,
    pairs: Vec<(usize, usize)>,
    closed: usize,
}

/// Result of a composition together with the middle cycles that closed up.
#[derive(Debug, Clone)]
pub struct Composite {
    pub diagram: BrauerDiagram,
    /// Each entry lists the middle points (indices into the shared boundary)
    /// visited by one new closed loop.
    pub cycles: Vec<Vec<usize>>,
}

/// Connected components of a diagram as a cospan over its boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryCospan {
    /// Component index of each boundary point.
    pub legs: Vec<usize>,
    pub components: usize,
}

impl BrauerDiagram {
    pub fn new(
        m: usize,
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
        closed: usize,
    ) -> Result<Self> {
        let total = m + n;
        let mut partner = vec![usize::MAX; total];
        for (a, b) in pairs {
            if a >= total || b >= total || a == b {
                return Err(Error::InvalidPairing(format!(
                    "pair ({a}, {b}) invalid for {total} points"
                )));
            }
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Error::InvalidPairing(format!(
                    "point in pair ({a}, {b}) paired twice"
                )));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if let Some(p) = partner.iter().position(|&x| x == usize::MAX) {
            return Err(Error::InvalidPairing(format!("point {p} left unpaired")));
        }
        Ok(Self::from_partner_unchecked(m, n, &partner, closed))
    }

    pub fn from_partner(m: usize, n: usize, partner: &[usize], closed: usize) -> Result<Self> {
        if partner.len() != m + n {
            return Err(Error::ArityMismatch {
                expected: m + n,
                found: partner.len(),
            });
        }
        for (i, &p) in partner.iter().enumerate() {
            if p >= partner.len() || p == i || partner[p] != i {
                return Err(Error::InvalidPairing(format!(
                    "partner table is not a fixed-point-free involution at {i}"
                )));
            }
        }
        Ok(Self::from_partner_unchecked(m, n, partner, closed))
    }

    fn from_partner_unchecked(m: usize, n: usize, partner: &[usize], closed: usize) -> Self {
        let pairs = partner
            .iter()
            .enumerate()
            .filter(|(i, &p)| *i < p)
            .map(|(i, &p)| (i, p))
            .collect();
        BrauerDiagram {
            m,
            n,
            pairs,
            closed,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn closed(&self) -> usize {
        self.closed
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn points(&self) -> usize {
        self.m + self.n
    }

    pub fn point(&self, index: usize) -> Point {
        if index < self.m {
            Point::Source(index)
        } else {
            Point::Target(index - self.m)
        }
    }

    pub fn index_of(&self, p: Point) -> usize {
        match p {
            Point::Source(i) => i,
            Point::Target(j) => self.m + j,
        }
    }

    pub fn partner(&self) -> Vec<usize> {
        let mut partner = vec![0; self.points()];
        for &(a, b) in &self.pairs {
            partner[a] = b;
            partner[b] = a;
        }
        partner
    }

    pub fn with_closed(&self, closed: usize) -> Self {
        BrauerDiagram {
            closed,
            ..self.clone()
        }
    }

    pub fn open_part(&self) -> Self {
        self.with_closed(0)
    }

    pub fn identity(n: usize) -> Self {
        BrauerDiagram {
            m: n,
            n,
            pairs: (0..n).map(|i| (i, n + i)).collect(),
            closed: 0,
        }
    }

    pub fn empty() -> Self {
        Self::identity(0)
    }

    /// The closed loop as an endomorphism of the unit object.
    pub fn bubble() -> Self {
        Self::empty().with_closed(1)
    }

    pub fn cup() -> Self {
        BrauerDiagram {
            m: 0,
            n: 2,
            pairs: vec![(0, 1)],
            closed: 0,
        }
    }

    pub fn cap() -> Self {
        BrauerDiagram {
            m: 2,
            n: 0,
            pairs: vec![(0, 1)],
            closed: 0,
        }
    }

    pub fn sym() -> Self {
        Self::permutation(&Permutation::transposition(2, 0, 1))
    }

    /// `n`-fold cup `0 -> 2n` with nested strands, `t_i` paired with `t_{2n+1-i}`.
    pub fn cup_n(n: usize) -> Self {
        BrauerDiagram::new(0, 2 * n, (0..n).map(|i| (i, 2 * n - 1 - i)), 0).unwrap()
    }

    /// `n`-fold cap `2n -> 0` with nested strands.
    pub fn cap_n(n: usize) -> Self {
        BrauerDiagram::new(2 * n, 0, (0..n).map(|i| (i, 2 * n - 1 - i)), 0).unwrap()
    }

    /// Pairs `s_i` with `t_{σ(i)}`.
    pub fn permutation(sigma: &Permutation) -> Self {
        let n = sigma.len();
        BrauerDiagram::new(n, n, (0..n).map(|i| (i, n + sigma.apply(i))), 0).unwrap()
    }

    /// The generating set `id_1`, cup, cap, sym.
    pub fn generators() -> Vec<BrauerDiagram> {
        vec![Self::identity(1), Self::cup(), Self::cap(), Self::sym()]
    }

    /// `g ∘ f` with `f` applied first; reports the middle cycles that close.
    pub fn compose_traced(f: &BrauerDiagram, g: &BrauerDiagram) -> Result<Composite> {
        if f.n != g.m {
            return Err(Error::ArityMismatch {
                expected: f.n,
                found: g.m,
            });
        }
        let (m, k, n) = (f.m, f.n, g.n);
        let pf = f.partner();
        let pg = g.partner();
        let mut visited = vec![false; k];
        let mut partner = vec![usize::MAX; m + n];

        // Walk from a point of f (index into f's boundary) that sits on the middle.
        let walk_from_middle_into_g = |mut j: usize, visited: &mut Vec<bool>| -> usize {
            // j is a middle index just entered from f; returns result index.
            loop {
                visited[j] = true;
                let q = pg[j];
                if q >= k {
                    return m + (q - k);
                }
                visited[q] = true;
                let p = pf[m + q];
                if p < m {
                    return p;
                }
                j = p - m;
            }
        };

        for s in 0..m {
            if partner[s] != usize::MAX {
                continue;
            }
            let p = pf[s];
            let end = if p < m {
                p
            } else {
                walk_from_middle_into_g(p - m, &mut visited)
            };
            partner[s] = end;
            partner[end] = s;
        }
        for t in 0..n {
            let r = m + t;
            if partner[r] != usize::MAX {
                continue;
            }
            let mut q = pg[k + t];
            let end = loop {
                if q >= k {
                    break m + (q - k);
                }
                visited[q] = true;
                let p = pf[m + q];
                if p < m {
                    break p;
                }
                let j = p - m;
                visited[j] = true;
                q = pg[j];
            };
            partner[r] = end;
            partner[end] = r;
        }

        let mut cycles = Vec::new();
        for start in 0..k {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            loop {
                visited[j] = true;
                cycle.push(j);
                let q = pg[j];
                visited[q] = true;
                cycle.push(q);
                let next = pf[m + q] - m;
                if next == start {
                    break;
                }
                j = next;
            }
            cycles.push(cycle);
        }

        let diagram = BrauerDiagram::from_partner_unchecked(
            m,
            n,
            &partner,
            f.closed + g.closed + cycles.len(),
        );
        Ok(Composite { diagram, cycles })
    }

    /// `g ∘ f`: `f` on top, applied first.
    pub fn compose(f: &BrauerDiagram, g: &BrauerDiagram) -> Result<BrauerDiagram> {
        Ok(Self::compose_traced(f, g)?.diagram)
    }

    /// Horizontal juxtaposition, `f` to the left of `g`.
    pub fn oplus(f: &BrauerDiagram, g: &BrauerDiagram) -> BrauerDiagram {
        let (m, n) = (f.m + g.m, f.n + g.n);
        let map_f = |x: usize| if x < f.m { x } else { m + (x - f.m) };
        let map_g = |x: usize| {
            if x < g.m {
                f.m + x
            } else {
                m + f.n + (x - g.m)
            }
        };
        let pairs = f
            .pairs
            .iter()
            .map(|&(a, b)| (map_f(a), map_f(b)))
            .chain(g.pairs.iter().map(|&(a, b)| (map_g(a), map_g(b))));
        BrauerDiagram::new(m, n, pairs, f.closed + g.closed).unwrap()
    }

    pub fn oplus_all<'a>(parts: impl IntoIterator<Item = &'a BrauerDiagram>) -> BrauerDiagram {
        parts
            .into_iter()
            .fold(BrauerDiagram::empty(), |acc, d| Self::oplus(&acc, d))
    }

    /// The dual morphism `n -> m`.
    pub fn transpose(&self) -> BrauerDiagram {
        let (m, n) = (self.m, self.n);
        let top = Self::oplus(&Self::identity(n), &Self::cup_n(m));
        let mid = Self::oplus_all([&Self::identity(n), self, &Self::identity(m)]);
        let bottom = Self::oplus(&Self::cap_n(n), &Self::identity(m));
        let x = Self::compose(&top, &mid).unwrap();
        Self::compose(&x, &bottom).unwrap()
    }

    /// Evaluation `n + m -> 0`, bending the targets down to the left.
    pub fn ev(&self) -> BrauerDiagram {
        let x = Self::oplus(&Self::identity(self.n), self);
        Self::compose(&x, &Self::cap_n(self.n)).unwrap()
    }

    /// Coevaluation `0 -> n + m`, bending the sources up to the right.
    pub fn coev(&self) -> BrauerDiagram {
        let y = Self::oplus(self, &Self::identity(self.m));
        Self::compose(&Self::cup_n(self.m), &y).unwrap()
    }

    /// `(x ⊕ id₁) ∘ (id_{m-1} ⊕ ∪)`: the last source becomes the last target.
    pub fn bend_down(&self) -> Option<BrauerDiagram> {
        if self.m == 0 {
            return None;
        }
        let last = self.m - 1;
        let end = self.m + self.n - 1;
        let move_point = |i: usize| match i.cmp(&last) {
            std::cmp::Ordering::Less => i,
            std::cmp::Ordering::Equal => end,
            std::cmp::Ordering::Greater => i - 1,
        };
        Some(self.relabel(self.m - 1, self.n + 1, move_point))
    }

    /// Inverse of [`Self::bend_down`]: the last target becomes the last source.
    pub fn bend_up(&self) -> Option<BrauerDiagram> {
        if self.n == 0 {
            return None;
        }
        let end = self.m + self.n - 1;
        let m = self.m;
        let move_point = |i: usize| {
            if i < m {
                i
            } else if i == end {
                m
            } else {
                i + 1
            }
        };
        Some(self.relabel(self.m + 1, self.n - 1, move_point))
    }

    fn relabel(&self, m: usize, n: usize, f: impl Fn(usize) -> usize) -> BrauerDiagram {
        let mut partner = vec![0; m + n];
        for &(a, b) in &self.pairs {
            partner[f(a)] = f(b);
            partner[f(b)] = f(a);
        }
        Self::from_partner_unchecked(m, n, &partner, self.closed)
    }

    pub fn is_open(&self) -> bool {
        self.closed == 0
    }

    pub fn is_downward(&self) -> bool {
        self.is_open()
            && self
                .pairs
                .iter()
                .all(|&(a, b)| a < self.m || b < self.m)
    }

    pub fn is_upward(&self) -> bool {
        self.is_open()
            && self
                .pairs
                .iter()
                .all(|&(a, b)| a >= self.m || b >= self.m)
    }

    pub fn is_permutation(&self) -> bool {
        self.is_downward() && self.is_upward()
    }

    /// Position of a boundary point on the circle: sources left to right,
    /// then targets right to left.
    fn circle_position(&self, index: usize) -> usize {
        if index < self.m {
            index
        } else {
            self.m + (self.n - 1 - (index - self.m))
        }
    }

    pub fn is_planar(&self) -> bool {
        if !self.is_open() {
            return false;
        }
        let total = self.points();
        let mut at = vec![0; total];
        let partner = self.partner();
        for i in 0..total {
            at[self.circle_position(i)] = i;
        }
        let mut stack = Vec::new();
        for pos in 0..total {
            let i = at[pos];
            let other = self.circle_position(partner[i]);
            if other > pos {
                stack.push(pos);
            } else if stack.pop() != Some(other) {
                return false;
            }
        }
        true
    }

    /// The permutation `σ` with `s_i` paired to `t_{σ(i)}`, if this is one.
    pub fn as_permutation(&self) -> Option<Permutation> {
        if !self.is_permutation() {
            return None;
        }
        let partner = self.partner();
        Some(Permutation((0..self.m).map(|i| partner[i] - self.m).collect()))
    }

    pub fn boundary_cospan(&self) -> BoundaryCospan {
        let mut legs = vec![0; self.points()];
        for (c, &(a, b)) in self.pairs.iter().enumerate() {
            legs[a] = c;
            legs[b] = c;
        }
        BoundaryCospan {
            legs,
            components: self.pairs.len() + self.closed,
        }
    }

    /// All diagrams `m -> n` with at most `max_closed` loops, sorted.
    pub fn enumerate(m: usize, n: usize, max_closed: usize) -> Vec<BrauerDiagram> {
        let mut out = Vec::new();
        for open in Self::enumerate_open(m, n) {
            for k in 0..=max_closed {
                out.push(open.with_closed(k));
            }
        }
        out
    }

    /// All open diagrams `m -> n` in lexicographic order of their pairs.
    pub fn enumerate_open(m: usize, n: usize) -> Vec<BrauerDiagram> {
        let total = m + n;
        let mut out = Vec::new();
        if total % 2 == 1 {
            return out;
        }
        let mut used = vec![false; total];
        let mut pairs = Vec::with_capacity(total / 2);
        fn rec(
            m: usize,
            n: usize,
            used: &mut [bool],
            pairs: &mut Vec<(usize, usize)>,
            out: &mut Vec<BrauerDiagram>,
        ) {
            let Some(a) = used.iter().position(|&u| !u) else {
                out.push(BrauerDiagram {
                    m,
                    n,
                    pairs: pairs.clone(),
                    closed: 0,
                });
                return;
            };
            used[a] = true;
            for b in a + 1..used.len() {
                if used[b] {
                    continue;
                }
                used[b] = true;
                pairs.push((a, b));
                rec(m, n, used, pairs, out);
                pairs.pop();
                used[b] = false;
            }
            used[a] = false;
        }
        rec(m, n, &mut used, &mut pairs, &mut out);
        out
    }

    /// A uniformly random open diagram `m -> n`.
    pub fn random_open<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Result<Self> {
        if (m + n) % 2 == 1 {
            return Err(Error::InvalidPairing(format!(
                "no pairing on an odd number ({}) of points",
                m + n
            )));
        }
        let mut points: Vec<usize> = (0..m + n).collect();
        points.shuffle(rng);
        let pairs = points.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1])));
        Self::new(m, n, pairs.collect::<Vec<_>>(), 0)
    }
}

/// `(k-1)!!`, the number of perfect matchings on `k` points; zero for odd `k`.
pub fn open_count(points: usize) -> u128 {
    if points % 2 == 1 {
        return 0;
    }
    (1..points as u128).step_by(2).product()
}

impl fmt::Display for BrauerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} :", self.m, self.n)?;
        if !self.pairs.is_empty() {
            write!(f, " ")?;
        }
        for &(a, b) in &self.pairs {
            write!(f, "({} {})", self.point(a), self.point(b))?;
        }
        if self.closed > 0 {
            write!(f, " + {}", self.closed)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BrauerDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::expr::parse_diagram(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn d(s: &str) -> BrauerDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn cup_then_cap_is_a_bubble() {
        let x = BrauerDiagram::compose(&BrauerDiagram::cup(), &BrauerDiagram::cap()).unwrap();
        assert_eq!(x, BrauerDiagram::bubble());
    }

    #[test]
    fn sym_then_cap() {
        let x = BrauerDiagram::compose(&BrauerDiagram::sym(), &BrauerDiagram::cap()).unwrap();
        assert_eq!(x, BrauerDiagram::cap());
    }

    #[test]
    fn coev_then_ev_of_id2_gives_two_loops() {
        let id2 = BrauerDiagram::identity(2);
        let x = BrauerDiagram::compose(&id2.coev(), &id2.ev()).unwrap();
        assert_eq!(x, BrauerDiagram::empty().with_closed(2));
    }

    #[test]
    fn oplus_cup_cap() {
        let x = BrauerDiagram::oplus(&BrauerDiagram::cup(), &BrauerDiagram::cap());
        assert_eq!(x, d("2->2 : (s1 s2)(t1 t2)"));
    }

    #[test]
    fn three_cycle() {
        let p = Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap();
        let x = BrauerDiagram::permutation(&p);
        assert_eq!(x, d("3->3 : (s1 t2)(s2 t3)(s3 t1)"));
        assert_eq!(p.cycles(), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn permutation_composition_is_contravariant_in_order() {
        for p in Permutation::all(3) {
            for q in Permutation::all(3) {
                let lhs = BrauerDiagram::permutation(&p.after(&q));
                let rhs = BrauerDiagram::compose(
                    &BrauerDiagram::permutation(&q),
                    &BrauerDiagram::permutation(&p),
                )
                .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(BrauerDiagram::sym().transpose(), BrauerDiagram::sym());
        assert_eq!(BrauerDiagram::cup().transpose(), BrauerDiagram::cap());
        assert_eq!(BrauerDiagram::identity(3).transpose(), BrauerDiagram::identity(3));
    }

    #[test]
    fn bends_match_their_composites() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let x = BrauerDiagram::random_open(3, 3, &mut rng).unwrap();
            let by_hand = BrauerDiagram::compose(
                &BrauerDiagram::oplus(&BrauerDiagram::identity(2), &BrauerDiagram::cup()),
                &BrauerDiagram::oplus(&x, &BrauerDiagram::identity(1)),
            )
            .unwrap();
            let down = x.bend_down().unwrap();
            assert_eq!(down, by_hand);
            assert_eq!(down.bend_up().unwrap(), x);
        }
        assert!(BrauerDiagram::cup().bend_down().is_none());
    }

    #[test]
    fn snake_identities() {
        for n in 0..4 {
            let id = BrauerDiagram::identity(n);
            let a = BrauerDiagram::oplus(&id, &BrauerDiagram::cup_n(n));
            let b = BrauerDiagram::oplus(&BrauerDiagram::cap_n(n), &id);
            assert_eq!(BrauerDiagram::compose(&a, &b).unwrap(), id);
            let a = BrauerDiagram::oplus(&BrauerDiagram::cup_n(n), &id);
            let b = BrauerDiagram::oplus(&id, &BrauerDiagram::cap_n(n));
            assert_eq!(BrauerDiagram::compose(&a, &b).unwrap(), id);
        }
    }

    #[test]
    fn predicates() {
        let cap = BrauerDiagram::cap();
        assert!(cap.is_downward() && !cap.is_upward() && cap.is_planar());
        let cup = BrauerDiagram::cup();
        assert!(!cup.is_downward() && cup.is_upward());
        assert!(!BrauerDiagram::sym().is_planar());
        assert!(BrauerDiagram::identity(3).is_planar());
        assert!(d("2->2 : (s1 s2)(t1 t2)").is_planar());
        assert!(!d("2->2 : (s1 t2)(s2 t1)").is_planar());
        assert!(!BrauerDiagram::bubble().is_open());
    }

    #[test]
    fn cospan_component_count() {
        for x in BrauerDiagram::enumerate(2, 4, 2) {
            assert_eq!(x.boundary_cospan().components, 3 + x.closed());
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        for total in 0..=8 {
            for m in 0..=total {
                let all = BrauerDiagram::enumerate_open(m, total - m);
                assert_eq!(all.len() as u128, open_count(total));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
        assert_eq!(BrauerDiagram::enumerate(0, 0, 3).len(), 4);
    }

    #[test]
    fn rejects_bad_pairings() {
        assert!(BrauerDiagram::new(1, 1, [(0, 0)], 0).is_err());
        assert!(BrauerDiagram::new(2, 0, [], 0).is_err());
        assert!(BrauerDiagram::new(2, 2, [(0, 1), (1, 2)], 0).is_err());
        assert!(BrauerDiagram::compose(&BrauerDiagram::cup(), &BrauerDiagram::identity(1)).is_err());
    }

    #[test]
    fn display_form() {
        assert_eq!(BrauerDiagram::cap().to_string(), "2->0 : (s1 s2)");
        assert_eq!(BrauerDiagram::empty().with_closed(2).to_string(), "0->0 : + 2");
        assert_eq!(BrauerDiagram::empty().to_string(), "0->0 :");
    }
}
