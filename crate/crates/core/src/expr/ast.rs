use crate::diagram::{BrauerDiagram, Point};
use crate::exactlin::Poly;
use crate::palette::{ColouredDiagram, Palette};

/// A parsed expression. Positions point at the first character of the node
/// and are ignored by equality.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: usize,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    /// `id(n)` or `id<a b>`.
    Id(IdArg),
    /// `cup` or `cup<a>`.
    Cup(Option<String>),
    /// `cap` or `cap<a>`, input type `(ω a, a)`.
    Cap(Option<String>),
    /// `sym` or `sym<a b>`.
    Sym(Option<(String, String)>),
    /// `perm(1 2 3)` or `perm((1 2)(3 4))`; acts on `max label` strands.
    Perm(Vec<Vec<usize>>),
    /// `e(k)`, the antisymmetrizer.
    Antisym(usize),
    /// `ecoev(k)`, the bent antisymmetrizer in `(0, 2k)`.
    CoevAntisym(usize),
    /// `loop`.
    Loop,
    Literal(Literal),
    Name(String),
    /// `a * b` is `a ∘ b`: `b` applied first.
    Compose(Box<Expr>, Box<Expr>),
    /// `a ++ b`.
    Oplus(Box<Expr>, Box<Expr>),
    /// `c·a`.
    Scale(Poly, Box<Expr>),
    /// `a + b`.
    Sum(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdArg {
    Count(usize),
    Colours(Vec<String>),
}

/// A diagram written out point by point, optionally coloured.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Literal {
    pub m: usize,
    pub n: usize,
    pub pairs: Vec<(LitPoint, LitPoint)>,
    pub closed: ClosedSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LitPoint {
    pub point: Point,
    pub colour: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedSpec {
    Count(usize),
    Orbits(Vec<String>),
}

impl Expr {
    pub fn new(kind: ExprKind) -> Self {
        Expr { kind, pos: 0 }
    }

    pub fn compose(a: Expr, b: Expr) -> Self {
        Expr::new(ExprKind::Compose(Box::new(a), Box::new(b)))
    }

    pub fn oplus(a: Expr, b: Expr) -> Self {
        Expr::new(ExprKind::Oplus(Box::new(a), Box::new(b)))
    }

    pub fn sum(a: Expr, b: Expr) -> Self {
        Expr::new(ExprKind::Sum(Box::new(a), Box::new(b)))
    }

    pub fn scale(c: Poly, a: Expr) -> Self {
        Expr::new(ExprKind::Scale(c, Box::new(a)))
    }

    pub fn literal_of(d: &BrauerDiagram) -> Self {
        let pairs = d
            .pairs()
            .iter()
            .map(|&(a, b)| {
                (
                    LitPoint {
                        point: d.point(a),
                        colour: None,
                    },
                    LitPoint {
                        point: d.point(b),
                        colour: None,
                    },
                )
            })
            .collect();
        Expr::new(ExprKind::Literal(Literal {
            m: d.m(),
            n: d.n(),
            pairs,
            closed: ClosedSpec::Count(d.closed()),
        }))
    }

    pub fn coloured_literal_of(d: &ColouredDiagram, palette: &Palette) -> Self {
        let base = d.base();
        let pairs = base
            .pairs()
            .iter()
            .map(|&(a, b)| {
                (
                    LitPoint {
                        point: base.point(a),
                        colour: Some(palette.name(d.boundary()[a]).to_string()),
                    },
                    LitPoint {
                        point: base.point(b),
                        colour: Some(palette.name(d.boundary()[b]).to_string()),
                    },
                )
            })
            .collect();
        Expr::new(ExprKind::Literal(Literal {
            m: base.m(),
            n: base.n(),
            pairs,
            closed: if d.closed().is_empty() {
                ClosedSpec::Count(0)
            } else {
                ClosedSpec::Orbits(d.closed().iter().map(|&c| palette.name(c).to_string()).collect())
            },
        }))
    }

    /// Whether the expression uses sums, scalars or named elements.
    pub fn is_linear(&self) -> bool {
        match &self.kind {
            ExprKind::Scale(..) | ExprKind::Sum(..) | ExprKind::Name(_) => true,
            ExprKind::Antisym(_) | ExprKind::CoevAntisym(_) => true,
            ExprKind::Compose(a, b) | ExprKind::Oplus(a, b) => a.is_linear() || b.is_linear(),
            _ => false,
        }
    }

    pub fn is_coloured(&self) -> bool {
        match &self.kind {
            ExprKind::Id(IdArg::Colours(_)) => true,
            ExprKind::Cup(c) | ExprKind::Cap(c) => c.is_some(),
            ExprKind::Sym(c) => c.is_some(),
            ExprKind::Literal(l) => {
                matches!(l.closed, ClosedSpec::Orbits(ref o) if !o.is_empty())
                    || l.pairs.iter().any(|(a, b)| a.colour.is_some() || b.colour.is_some())
            }
            ExprKind::Compose(a, b)
            | ExprKind::Oplus(a, b)
            | ExprKind::Sum(a, b) => a.is_coloured() || b.is_coloured(),
            ExprKind::Scale(_, a) => a.is_coloured(),
            _ => false,
        }
    }
}
