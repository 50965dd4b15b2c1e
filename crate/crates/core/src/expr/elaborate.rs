use std::collections::HashMap;

use super::ast::{ClosedSpec, Expr, ExprKind, IdArg, Literal};
use crate::diagram::{BrauerDiagram, Permutation};
use crate::error::{Error, Result};
use crate::exactlin::Poly;
use crate::linear::{BrauerAlgebra, LinDiagram};
use crate::palette::{coloured_compose, coloured_oplus, ColouredDiagram, Palette};

fn at(pos: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } | Error::At { .. } => e,
        other => Error::At {
            pos,
            msg: other.to_string(),
        },
    }
}

/// Named elements available to linear expressions.
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub names: HashMap<String, LinDiagram<Poly>>,
}

pub fn literal_diagram(l: &Literal) -> Result<BrauerDiagram> {
    let k = match &l.closed {
        ClosedSpec::Count(k) => *k,
        ClosedSpec::Orbits(_) => {
            return Err(Error::Unsupported(
                "coloured loops need a palette".into(),
            ))
        }
    };
    if l.pairs.iter().any(|(a, b)| a.colour.is_some() || b.colour.is_some()) {
        return Err(Error::Unsupported("coloured points need a palette".into()));
    }
    let index = |p: &crate::diagram::Point| match *p {
        crate::diagram::Point::Source(i) => i,
        crate::diagram::Point::Target(j) => l.m + j,
    };
    BrauerDiagram::new(
        l.m,
        l.n,
        l.pairs
            .iter()
            .map(|(a, b)| (index(&a.point), index(&b.point)))
            .collect::<Vec<_>>(),
        k,
    )
}

pub fn literal_coloured(l: &Literal, palette: &Palette) -> Result<ColouredDiagram> {
    let index = |p: &crate::diagram::Point| match *p {
        crate::diagram::Point::Source(i) => i,
        crate::diagram::Point::Target(j) => l.m + j,
    };
    let mut boundary = vec![usize::MAX; l.m + l.n];
    for (a, b) in &l.pairs {
        for p in [a, b] {
            let c = p
                .colour
                .as_ref()
                .ok_or_else(|| Error::Palette(format!("point {} has no colour", p.point)))?;
            boundary[index(&p.point)] = palette.colour(c)?;
        }
    }
    let closed = match &l.closed {
        ClosedSpec::Count(0) => vec![],
        ClosedSpec::Count(_) => {
            return Err(Error::Palette("coloured loops must name their colours".into()))
        }
        ClosedSpec::Orbits(os) => os
            .iter()
            .map(|o| palette.colour(o))
            .collect::<Result<Vec<_>>>()?,
    };
    let mut uncoloured = l.clone();
    uncoloured.closed = ClosedSpec::Count(closed.len());
    for (a, b) in uncoloured.pairs.iter_mut() {
        a.colour = None;
        b.colour = None;
    }
    let base = literal_diagram(&uncoloured)?;
    ColouredDiagram::new(palette, base, boundary, closed)
}

fn perm_size(cycles: &[Vec<usize>]) -> usize {
    cycles.iter().flatten().copied().max().unwrap_or(0)
}

/// Evaluates an expression built only from single diagrams.
pub fn eval_diagram(e: &Expr) -> Result<BrauerDiagram> {
    let r = match &e.kind {
        ExprKind::Id(IdArg::Count(n)) => Ok(BrauerDiagram::identity(*n)),
        ExprKind::Cup(None) => Ok(BrauerDiagram::cup()),
        ExprKind::Cap(None) => Ok(BrauerDiagram::cap()),
        ExprKind::Sym(None) => Ok(BrauerDiagram::sym()),
        ExprKind::Loop => Ok(BrauerDiagram::bubble()),
        ExprKind::Perm(cycles) => {
            Permutation::from_cycles(perm_size(cycles), cycles).map(|p| BrauerDiagram::permutation(&p))
        }
        ExprKind::Literal(l) => literal_diagram(l),
        ExprKind::Compose(a, b) => {
            let (x, y) = (eval_diagram(a)?, eval_diagram(b)?);
            BrauerDiagram::compose(&y, &x)
        }
        ExprKind::Oplus(a, b) => Ok(BrauerDiagram::oplus(&eval_diagram(a)?, &eval_diagram(b)?)),
        _ => Err(Error::Unsupported(
            "linear or coloured construct in a single-diagram expression".into(),
        )),
    };
    r.map_err(|err| at(e.pos, err))
}

/// Evaluates in `Br_t`.
pub fn eval_linear(e: &Expr, env: &Env) -> Result<LinDiagram<Poly>> {
    let alg = BrauerAlgebra::generic();
    let r = match &e.kind {
        ExprKind::Antisym(k) => Ok(alg.antisymmetrizer(*k)),
        ExprKind::CoevAntisym(k) => Ok(alg.coev_antisymmetrizer(*k)),
        ExprKind::Name(n) => env
            .names
            .get(n)
            .cloned()
            .ok_or_else(|| Error::Unsupported(format!("unknown name `{n}`"))),
        ExprKind::Compose(a, b) => {
            let (x, y) = (eval_linear(a, env)?, eval_linear(b, env)?);
            alg.compose(&y, &x)
        }
        ExprKind::Oplus(a, b) => Ok(alg.oplus(&eval_linear(a, env)?, &eval_linear(b, env)?)),
        ExprKind::Scale(c, a) => Ok(eval_linear(a, env)?.scale(c)),
        ExprKind::Sum(a, b) => eval_linear(a, env)?.add(&eval_linear(b, env)?),
        _ => eval_diagram(e).map(|d| alg.diagram(&d)),
    };
    r.map_err(|err| at(e.pos, err))
}

/// Evaluates an expression whose atoms all carry colours.
pub fn eval_coloured(e: &Expr, palette: &Palette) -> Result<ColouredDiagram> {
    let colour = |name: &str| palette.colour(name);
    let r = match &e.kind {
        ExprKind::Id(IdArg::Colours(cs)) => cs
            .iter()
            .map(|c| colour(c))
            .collect::<Result<Vec<_>>>()
            .map(|w| ColouredDiagram::identity(palette, &w)),
        ExprKind::Cup(Some(c)) => colour(c).map(|c| ColouredDiagram::cup(palette, c)),
        ExprKind::Cap(Some(c)) => colour(c).map(|c| ColouredDiagram::cap(palette, c)),
        ExprKind::Sym(Some((a, b))) => {
            Ok(ColouredDiagram::sym(palette, colour(a)?, colour(b)?))
        }
        ExprKind::Literal(l) => literal_coloured(l, palette),
        ExprKind::Compose(a, b) => {
            let (x, y) = (eval_coloured(a, palette)?, eval_coloured(b, palette)?);
            coloured_compose(palette, &y, &x)
        }
        ExprKind::Oplus(a, b) => Ok(coloured_oplus(
            &eval_coloured(a, palette)?,
            &eval_coloured(b, palette)?,
        )),
        ExprKind::Id(IdArg::Count(0)) => Ok(ColouredDiagram::identity(palette, &[])),
        _ => Err(Error::Unsupported(
            "every atom of a coloured expression needs colour annotations".into(),
        )),
    };
    r.map_err(|err| at(e.pos, err))
}
