use anyhow::{anyhow, bail, Context, Result};
use serde_json::json;

use brauerkit::diagram::open_count;
use brauerkit::exactlin::{ExactMatrix, Rational};
use brauerkit::expr::{eval_coloured, eval_diagram, eval_linear, parse, print, Env, Expr};
use brauerkit::linear::{hom_dimension, ideal_saturate, specialize_lin, Closure, DiagramFunctor};
use brauerkit::palette::Palette;
use brauerkit::tensor::{EvalFunctor, OrientedEvalFunctor};
use brauerkit::BrauerDiagram;

use crate::{Common, Kind, Output};

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| anyhow!("not a rational number: {s:?}"))
}

pub fn load_palette(common: &Common) -> Result<Option<Palette>> {
    match &common.palette {
        None => Ok(None),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            Ok(Some(Palette::from_json(&text)?))
        }
    }
}

fn palette_or_oriented(common: &Common) -> Result<Palette> {
    Ok(load_palette(common)?.unwrap_or_else(|| Palette::oriented(&["v"])))
}

pub fn functor(kind: Kind, d: usize) -> Result<EvalFunctor> {
    match kind {
        Kind::Symmetric => Ok(EvalFunctor::symmetric(d)),
        Kind::Skew => Ok(EvalFunctor::skew(d)?),
        Kind::Gl => bail!("the gl kind uses oriented diagrams, not a form"),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value")
}

fn parse_expr(text: &str) -> Result<Expr> {
    parse(text).with_context(|| format!("parsing {text:?}"))
}

pub fn compose(exprs: &[String], common: &Common) -> Result<Output> {
    let mut acc: Option<Expr> = None;
    for text in exprs {
        let e = parse_expr(text)?;
        acc = Some(match acc {
            None => e,
            Some(prev) => Expr::compose(e, prev),
        });
    }
    let e = acc.expect("at least one expression");
    let (m, n, result) = if e.is_coloured() {
        let palette = palette_or_oriented(common)?;
        let f = eval_coloured(&e, &palette)?;
        (f.base().m(), f.base().n(), f.to_text(&palette))
    } else if e.is_linear() {
        let x = eval_linear(&e, &Env::default())?;
        let text = match &common.delta {
            Some(delta) => specialize_lin(&x, &parse_rational(delta)?).to_string(),
            None => x.to_string(),
        };
        (x.m(), x.n(), text)
    } else {
        let f = eval_diagram(&e)?;
        (f.m(), f.n(), f.to_string())
    };
    let text = if common.csv {
        format!("m,n,result\n{m},{n},\"{result}\"")
    } else {
        pretty(&json!({ "expr": print(&e), "m": m, "n": n, "result": result }))
    };
    Ok(Output { text, passed: true })
}

pub fn eval(text: &str, common: &Common) -> Result<Output> {
    let e = parse_expr(text)?;
    let matrix: ExactMatrix = match common.kind {
        Kind::Gl => {
            let palette = palette_or_oriented(common)?;
            let f = eval_coloured(&e, &palette)?;
            OrientedEvalFunctor::new(common.d).evaluate(&palette, &f)?
        }
        kind => {
            let f = functor(kind, common.d)?;
            if e.is_linear() {
                let x = eval_linear(&e, &Env::default())?;
                f.evaluate_lin(&specialize_lin(&x, f.loop_scalar()))?
            } else {
                f.evaluate(&eval_diagram(&e)?)?
            }
        }
    };
    let rows: Vec<Vec<String>> = (0..matrix.rows())
        .map(|i| matrix.row(i).iter().map(|x| x.to_string()).collect())
        .collect();
    let text = if common.csv {
        rows.iter().map(|r| r.join(",")).collect::<Vec<_>>().join("\n")
    } else {
        let entries: Vec<&String> = rows.iter().flatten().collect();
        pretty(&json!({
            "expr": print(&e),
            "kind": format!("{:?}", common.kind).to_lowercase(),
            "d": common.d,
            "rows": matrix.rows(),
            "cols": matrix.cols(),
            "entries": entries,
        }))
    };
    Ok(Output { text, passed: true })
}

pub fn dims(m_max: usize, n_max: usize, common: &Common) -> Result<Output> {
    let mut table = Vec::new();
    for m in 0..=m_max {
        for n in 0..=n_max {
            let dim = hom_dimension(m, n);
            let formula = open_count(m + n);
            table.push((m, n, dim, formula));
        }
    }
    let passed = table.iter().all(|&(_, _, d, f)| d as u128 == f);
    let text = if common.csv {
        let mut s = String::from("m,n,dim,double_factorial");
        for (m, n, d, f) in &table {
            s.push_str(&format!("\n{m},{n},{d},{f}"));
        }
        s
    } else {
        let rows: Vec<_> = table
            .iter()
            .map(|&(m, n, d, f)| json!({ "m": m, "n": n, "dim": d, "double_factorial": f.to_string() }))
            .collect();
        pretty(&json!({ "m_max": m_max, "n_max": n_max, "table": rows, "passed": passed }))
    };
    Ok(Output { text, passed })
}

pub fn enumerate((m, n): (usize, usize), max_closed: usize, common: &Common) -> Result<Output> {
    let all: Vec<String> = BrauerDiagram::enumerate(m, n, max_closed)
        .iter()
        .map(|d| d.to_string())
        .collect();
    let text = if common.csv {
        all.join("\n")
    } else {
        pretty(&json!({ "m": m, "n": n, "max_closed": max_closed, "count": all.len(), "diagrams": all }))
    };
    Ok(Output { text, passed: true })
}

pub fn ideal(gens: &[String], symmetric_only: bool, common: &Common) -> Result<Output> {
    let delta = parse_rational(common.delta.as_deref().unwrap_or("1"))?;
    let bound = common.bound.unwrap_or(4);
    let generators = gens
        .iter()
        .map(|g| Ok(specialize_lin(&eval_linear(&parse_expr(g)?, &Env::default())?, &delta)))
        .collect::<Result<Vec<_>>>()?;
    let closure = if symmetric_only { Closure::Symmetric } else { Closure::Brauer };
    let ideal = ideal_saturate(&generators, &delta, bound, closure)?;
    let mut slices = Vec::new();
    for total in (0..=bound).step_by(2) {
        for m in 0..=total {
            let n = total - m;
            let basis: Vec<String> = ideal.elements(m, n).iter().map(|x| x.to_string()).collect();
            slices.push((m, n, hom_dimension(m, n), basis));
        }
    }
    let text = if common.csv {
        let mut s = String::from("m,n,index,element");
        for (m, n, _, basis) in &slices {
            for (i, b) in basis.iter().enumerate() {
                s.push_str(&format!("\n{m},{n},{i},\"{b}\""));
            }
        }
        s
    } else {
        let rows: Vec<_> = slices
            .iter()
            .map(|(m, n, ambient, basis)| {
                json!({ "m": m, "n": n, "ambient": ambient, "dim": basis.len(), "basis": basis })
            })
            .collect();
        pretty(&json!({
            "generators": gens,
            "delta": delta.to_string(),
            "bound": bound,
            "closure": if symmetric_only { "symmetric" } else { "brauer" },
            "slices": rows,
        }))
    };
    Ok(Output { text, passed: true })
}
