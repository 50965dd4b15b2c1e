//! A small language for diagram expressions.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := [coeff "·"] comp
//! comp   := oplus ("*" oplus)*        a * b = a ∘ b, b applied first
//! oplus  := atom ("++" atom)*
//! atom   := id(n) | cup | cap | sym | perm(1 2 3) | e(k) | ecoev(k) | loop
//!         | [m->n : (s1 t1)... + k] | name | "(" expr ")"
//! ```
//!
//! Coefficients are rationals (`3/2`, `(-1)`) or polynomials in `t`
//! (`t`, `(t^2 - 1)`). Colours attach as `cup<a>`, `id<a b>`, `sym<a b>`,
//! and `s1:a` inside literals.

mod ast;
mod elaborate;
mod parser;
mod print;
mod random;
mod roundtrip;

pub use ast::{ClosedSpec, Expr, ExprKind, IdArg, LitPoint, Literal};
pub use elaborate::{eval_coloured, eval_diagram, eval_linear, literal_coloured, literal_diagram, Env};
pub use parser::parse;
pub use print::{coefficient_text, literal_text, print};
pub use random::{random_diagram, random_expr};
pub use roundtrip::{check_round_trips, RoundTripReport};

use crate::diagram::BrauerDiagram;
use crate::error::{Error, Result};
use crate::palette::{ColouredDiagram, Palette};

fn expect_literal(text: &str) -> Result<Literal> {
    let e = parse(text)?;
    match e.kind {
        ExprKind::Literal(l) => Ok(l),
        _ => Err(Error::Parse {
            pos: 0,
            msg: "expected a diagram literal `m->n : ...`".into(),
        }),
    }
}

/// Parses the canonical text of a single diagram.
pub fn parse_diagram(text: &str) -> Result<BrauerDiagram> {
    literal_diagram(&expect_literal(text)?)
}

pub fn parse_coloured_diagram(text: &str, palette: &Palette) -> Result<ColouredDiagram> {
    literal_coloured(&expect_literal(text)?, palette)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn snake_from_text() {
        let e = parse("(cap ++ id(1)) * (id(1) ++ cup)").unwrap();
        assert_eq!(eval_diagram(&e).unwrap(), BrauerDiagram::identity(1));
        let e = parse("(id(1) ++ cup) * (cap ++ id(1))").unwrap();
        let d = eval_diagram(&e).unwrap();
        assert_eq!((d.m(), d.n()), (3, 3));
    }

    #[test]
    fn bare_literals() {
        assert_eq!(parse_diagram("2->0:(s1 s2)").unwrap(), BrauerDiagram::cap());
        assert_eq!(
            parse_diagram("0->0: + 2").unwrap(),
            BrauerDiagram::empty().with_closed(2)
        );
    }

    #[test]
    fn round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let e = random_expr(&mut rng, 4);
            let text = print(&e);
            let back = parse(&text).unwrap_or_else(|err| panic!("{text}: {err}"));
            assert_eq!(back, e, "{text}");
            assert_eq!(print(&back), text);
        }
    }

    #[test]
    fn round_trip_report() {
        let r = check_round_trips(100, 8, 1);
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn coloured_text() {
        let p = Palette::new(vec!["a".into(), "b".into()], vec![1, 0]).unwrap();
        let e = parse("cap<a> * cup<b>").unwrap();
        let d = eval_coloured(&e, &p).unwrap();
        let text = d.to_text(&p);
        assert_eq!(text, "0->0 : + [a]");
        assert_eq!(parse_coloured_diagram(&text, &p).unwrap(), d);
        let bad = parse("cap<b> * cup<b>").unwrap();
        assert!(matches!(eval_coloured(&bad, &p), Err(Error::At { .. })));
    }

    #[test]
    fn linear_text() {
        let e = parse("e(2) * e(2) + (-2)·e(2)").unwrap();
        assert!(eval_linear(&e, &Env::default()).unwrap().is_zero());
    }
}
