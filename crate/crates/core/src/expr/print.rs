use num_traits::Signed;

use super::ast::{ClosedSpec, Expr, ExprKind, IdArg, LitPoint, Literal};
use crate::exactlin::Poly;

const SUM: u8 = 0;
const TERM: u8 = 1;
const COMP: u8 = 2;
const OPLUS: u8 = 3;
const ATOM: u8 = 4;

fn level(e: &Expr) -> u8 {
    match e.kind {
        ExprKind::Sum(..) => SUM,
        ExprKind::Scale(..) => TERM,
        ExprKind::Compose(..) => COMP,
        ExprKind::Oplus(..) => OPLUS,
        _ => ATOM,
    }
}

/// Canonical text. A top-level literal is printed bare, nested ones in brackets.
pub fn print(e: &Expr) -> String {
    match &e.kind {
        ExprKind::Literal(l) => literal_text(l),
        _ => {
            let mut s = String::new();
            write_expr(&mut s, e, SUM);
            s
        }
    }
}

pub fn coefficient_text(c: &Poly) -> String {
    if let Some(r) = c.as_constant() {
        if r.is_negative() {
            format!("({r})")
        } else {
            r.to_string()
        }
    } else if *c == Poly::t() {
        "t".into()
    } else {
        format!("({c})")
    }
}

fn point_text(p: &LitPoint) -> String {
    match &p.colour {
        Some(c) => format!("{}:{c}", p.point),
        None => p.point.to_string(),
    }
}

pub fn literal_text(l: &Literal) -> String {
    let mut s = format!("{}->{} :", l.m, l.n);
    if !l.pairs.is_empty() {
        s.push(' ');
    }
    for (a, b) in &l.pairs {
        s.push_str(&format!("({} {})", point_text(a), point_text(b)));
    }
    match &l.closed {
        ClosedSpec::Count(0) => {}
        ClosedSpec::Count(k) => s.push_str(&format!(" + {k}")),
        ClosedSpec::Orbits(os) => {
            s.push_str(" +");
            for o in os {
                s.push_str(&format!(" [{o}]"));
            }
        }
    }
    s
}

fn write_expr(s: &mut String, e: &Expr, min: u8) {
    let paren = level(e) < min;
    if paren {
        s.push('(');
    }
    match &e.kind {
        ExprKind::Id(IdArg::Count(n)) => s.push_str(&format!("id({n})")),
        ExprKind::Id(IdArg::Colours(cs)) => s.push_str(&format!("id<{}>", cs.join(" "))),
        ExprKind::Cup(c) => {
            s.push_str("cup");
            if let Some(c) = c {
                s.push_str(&format!("<{c}>"));
            }
        }
        ExprKind::Cap(c) => {
            s.push_str("cap");
            if let Some(c) = c {
                s.push_str(&format!("<{c}>"));
            }
        }
        ExprKind::Sym(c) => {
            s.push_str("sym");
            if let Some((a, b)) = c {
                s.push_str(&format!("<{a} {b}>"));
            }
        }
        ExprKind::Perm(cycles) => {
            let cyc = |c: &Vec<usize>| {
                c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            };
            if cycles.len() == 1 {
                s.push_str(&format!("perm({})", cyc(&cycles[0])));
            } else {
                let inner: String = cycles.iter().map(|c| format!("({})", cyc(c))).collect();
                s.push_str(&format!("perm({inner})"));
            }
        }
        ExprKind::Antisym(k) => s.push_str(&format!("e({k})")),
        ExprKind::CoevAntisym(k) => s.push_str(&format!("ecoev({k})")),
        ExprKind::Loop => s.push_str("loop"),
        ExprKind::Literal(l) => s.push_str(&format!("[{}]", literal_text(l))),
        ExprKind::Name(n) => s.push_str(n),
        ExprKind::Compose(a, b) => {
            write_expr(s, a, COMP);
            s.push_str(" * ");
            write_expr(s, b, OPLUS);
        }
        ExprKind::Oplus(a, b) => {
            write_expr(s, a, OPLUS);
            s.push_str(" ++ ");
            write_expr(s, b, ATOM);
        }
        ExprKind::Scale(c, a) => {
            s.push_str(&coefficient_text(c));
            s.push('·');
            write_expr(s, a, COMP);
        }
        ExprKind::Sum(a, b) => {
            write_expr(s, a, SUM);
            s.push_str(" + ");
            write_expr(s, b, TERM);
        }
    }
    if paren {
        s.push(')');
    }
}
