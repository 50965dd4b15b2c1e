use rand::Rng;

use super::ast::{Expr, ExprKind, IdArg};
use crate::diagram::{BrauerDiagram, Permutation};
use crate::exactlin::{Poly, Rational};

fn random_coefficient<R: Rng + ?Sized>(rng: &mut R) -> Poly {
    let kind = rng.gen_range(0..4);
    let mut r = || Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into());
    match kind {
        0 => Poly::t(),
        1 => Poly::new(vec![r(), r(), r()]),
        _ => Poly::constant(r()),
    }
}

fn random_atom<R: Rng + ?Sized>(rng: &mut R) -> Expr {
    let kind = match rng.gen_range(0..10) {
        0 => ExprKind::Id(IdArg::Count(rng.gen_range(0..4))),
        1 => ExprKind::Cup(None),
        2 => ExprKind::Cap(None),
        3 => ExprKind::Sym(None),
        4 => {
            let n = rng.gen_range(1..5);
            let images: Vec<usize> = {
                let mut v: Vec<usize> = (0..n).collect();
                rand::seq::SliceRandom::shuffle(v.as_mut_slice(), rng);
                v
            };
            ExprKind::Perm(Permutation::from_images(images).unwrap().cycles())
        }
        5 => ExprKind::Antisym(rng.gen_range(1..4)),
        6 => ExprKind::Loop,
        7 => ExprKind::Name(["x", "gen", "a1"][rng.gen_range(0..3)].to_string()),
        _ => {
            let m = rng.gen_range(0..4);
            let n = if m % 2 == 0 {
                2 * rng.gen_range(0..2)
            } else {
                1 + 2 * rng.gen_range(0..2)
            };
            let d = BrauerDiagram::random_open(m, n, rng)
                .unwrap()
                .with_closed(rng.gen_range(0..2));
            return Expr::literal_of(&d);
        }
    };
    Expr::new(kind)
}

/// A random expression in canonical form, nested at most `depth` levels.
pub fn random_expr<R: Rng + ?Sized>(rng: &mut R, depth: usize) -> Expr {
    if depth == 0 || rng.gen_bool(0.3) {
        return random_atom(rng);
    }
    match rng.gen_range(0..4) {
        0 => Expr::compose(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
        1 => Expr::oplus(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
        2 => Expr::scale(random_coefficient(rng), random_expr(rng, depth - 1)),
        _ => Expr::sum(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
    }
}

/// A random diagram with up to `max_points` boundary points and a few loops.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, max_points: usize) -> BrauerDiagram {
    let total = 2 * rng.gen_range(0..=max_points / 2);
    let m = rng.gen_range(0..=total);
    BrauerDiagram::random_open(m, total - m, rng)
        .unwrap()
        .with_closed(rng.gen_range(0..3))
}
