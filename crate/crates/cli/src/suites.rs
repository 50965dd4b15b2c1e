use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use brauerkit::diagram::open_count;
use brauerkit::expr::check_round_trips;
use brauerkit::laws::check_category_laws;
use brauerkit::linear::{factors_through_delta, hom_dimension};
use brauerkit::tensor::{ca_ideal_kernel_check, fft_check, gl_check, sft_check, EvalFunctor};
use brauerkit::wiring::{
    check_ca_axioms, check_operad_laws, check_prop_bridge, derive_modular_operad, CircuitAlgebra,
    EndomorphismCa, TableCa, TensorWheeledProp,
};

use crate::commands::functor;
use crate::{Common, Kind, Output, Suite};

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable report")
}

/// Runs independent units on scoped threads and returns results in order.
fn pool<U: Sync, T: Send>(units: &[U], f: impl Fn(&U) -> Result<T> + Sync) -> Result<Vec<T>> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = units.len().div_ceil(threads.max(1)).max(1);
    let f = &f;
    std::thread::scope(|s| {
        let handles: Vec<_> = units
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(f).collect::<Result<Vec<T>>>()))
            .collect();
        let mut out = Vec::with_capacity(units.len());
        for h in handles {
            out.extend(h.join().expect("worker panicked")?);
        }
        Ok(out)
    })
}

fn circuit_algebra(common: &Common) -> Result<Box<dyn CircuitAlgebra>> {
    if let Some(path) = &common.oracle {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(Box::new(TableCa::from_json(&text)?));
    }
    Ok(match common.kind {
        Kind::Symmetric => Box::new(EndomorphismCa::symmetric(common.d)),
        Kind::Skew => Box::new(EndomorphismCa::new(EvalFunctor::skew(common.d)?)),
        Kind::Gl => Box::new(EndomorphismCa::oriented(common.d)),
    })
}

fn counting(common: &Common) -> Result<(Value, bool)> {
    let max_total = common.max_total.unwrap_or(10);
    let mut rows = Vec::new();
    let mut passed = true;
    for total in 0..=max_total {
        for m in 0..=total {
            let count = hom_dimension(m, total - m);
            let expected = open_count(total);
            passed &= count as u128 == expected;
            rows.push(json!({ "m": m, "n": total - m, "count": count, "expected": expected.to_string() }));
        }
    }
    Ok((json!({ "max_total": max_total, "counts": rows }), passed))
}

fn specialization(common: &Common) -> Result<(Value, bool)> {
    let f = functor(common.kind, common.d)?;
    let loop_scalar = f.loop_scalar().clone();
    let d = common.d as i64;
    let mut accepted = Vec::new();
    let mut candidates = Vec::new();
    for k in -4 * d..=4 * d {
        let delta = brauerkit::exactlin::rat(k, 2);
        if factors_through_delta(&f, &delta)? {
            accepted.push(delta.to_string());
        }
        candidates.push(delta);
    }
    let at_scalar = factors_through_delta(&f, &loop_scalar)?;
    let passed = at_scalar && accepted.iter().all(|a| *a == loop_scalar.to_string());
    Ok((
        json!({
            "loop_scalar": loop_scalar.to_string(),
            "delta_claimed": f.form().delta_claimed().to_string(),
            "candidates": candidates.len(),
            "accepted": accepted,
            "accepted_at_loop_scalar": at_scalar,
        }),
        passed,
    ))
}

fn fft(common: &Common) -> Result<(Value, bool)> {
    let f = functor(common.kind, common.d)?;
    let max_total = common.max_total.unwrap_or(6);
    let units: Vec<(usize, usize)> = match common.mn {
        Some(mn) => vec![mn],
        None => (0..=max_total)
            .flat_map(|t| (0..=t).map(move |m| (m, t - m)))
            .collect(),
    };
    let reports = pool(&units, |&(m, n)| Ok(fft_check(&f, m, n)?))?;
    let passed = reports.iter().all(|r| r.passed);
    Ok((json!({ "max_total": max_total, "checks": to_value(&reports) }), passed))
}

fn sft(common: &Common) -> Result<(Value, bool)> {
    let f = functor(common.kind, common.d)?;
    let total = 2 * f.form().claimed_abs() + 2;
    let units: Vec<(usize, usize)> = match common.mn {
        Some(mn) => vec![mn],
        None => (0..=total).map(|m| (m, total - m)).collect(),
    };
    let reports = pool(&units, |&(m, n)| {
        Ok(sft_check(&f, m, n, common.bound.unwrap_or(m + n))?)
    })?;
    let passed = reports.iter().all(|r| r.passed);
    Ok((json!({ "checks": to_value(&reports) }), passed))
}

fn gl(common: &Common) -> Result<(Value, bool)> {
    let max_n = common.max_total.unwrap_or(3);
    let units: Vec<usize> = (1..=max_n).collect();
    let reports = pool(&units, |&n| Ok(gl_check(common.d, n)?))?;
    let passed = reports.iter().all(|r| r.passed);
    Ok((json!({ "checks": to_value(&reports) }), passed))
}

fn ca_ideal(common: &Common) -> Result<(Value, bool)> {
    let f = functor(common.kind, common.d)?;
    let r = ca_ideal_kernel_check(&f, common.bound.unwrap_or(4))?;
    Ok((to_value(&r), r.passed))
}

fn ca_axioms(common: &Common) -> Result<(Value, bool)> {
    let ca = circuit_algebra(common)?;
    let r = check_ca_axioms(ca.as_ref(), common.max_total.unwrap_or(4))?;
    Ok((to_value(&r), r.passed))
}

fn modular_operad(common: &Common) -> Result<(Value, bool)> {
    let ca = circuit_algebra(common)?;
    let r = derive_modular_operad(ca.as_ref()).check(common.max_total.unwrap_or(5))?;
    Ok((to_value(&r), r.passed))
}

fn prop(common: &Common) -> Result<(Value, bool)> {
    if common.oracle.is_none() && common.kind != Kind::Gl {
        bail!("the prop suite needs an oriented circuit algebra: use --kind gl or --oracle");
    }
    let ca = circuit_algebra(common)?;
    let tensor = TensorWheeledProp::new(common.d);
    let r = check_prop_bridge(ca.as_ref(), &tensor, common.max_points.unwrap_or(3), common.seed)?;
    Ok((to_value(&r), r.passed))
}

fn operad(common: &Common) -> Result<(Value, bool)> {
    let r = check_operad_laws(
        common.max_points.unwrap_or(2),
        common.cases.unwrap_or(200),
        common.seed,
    )?;
    Ok((to_value(&r), r.passed))
}

fn category_laws(common: &Common) -> Result<(Value, bool)> {
    let r = check_category_laws(
        common.max_points.unwrap_or(4),
        common.cases.unwrap_or(1000),
        common.max_total.unwrap_or(8),
        common.seed,
    )?;
    Ok((to_value(&r), r.passed))
}

fn parser(common: &Common) -> Result<(Value, bool)> {
    let r = check_round_trips(
        common.cases.unwrap_or(1000),
        common.max_points.unwrap_or(8),
        common.seed,
    );
    Ok((to_value(&r), r.passed))
}

fn suite_name(suite: Suite) -> String {
    use clap::ValueEnum;
    suite
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default()
}

pub fn run_suite(suite: Suite, common: &Common) -> Result<Output> {
    let (report, passed) = match suite {
        Suite::Counting => counting(common)?,
        Suite::CategoryLaws => category_laws(common)?,
        Suite::Specialization => specialization(common)?,
        Suite::Fft => fft(common)?,
        Suite::Sft => sft(common)?,
        Suite::Gl => gl(common)?,
        Suite::CaIdeal => ca_ideal(common)?,
        Suite::CaAxioms => ca_axioms(common)?,
        Suite::ModularOperad => modular_operad(common)?,
        Suite::Prop => prop(common)?,
        Suite::Operad => operad(common)?,
        Suite::Parser => parser(common)?,
    };
    let config = json!({
        "kind": format!("{:?}", common.kind).to_lowercase(),
        "d": common.d,
        "delta": common.delta,
        "max_total": common.max_total,
        "mn": common.mn,
        "bound": common.bound,
        "max_points": common.max_points,
        "cases": common.cases,
        "oracle": common.oracle.as_ref().map(|p| p.display().to_string()),
        "seed": common.seed,
    });
    let value = json!({ "suite": suite_name(suite), "config": config, "passed": passed, "report": report });
    let text = if common.csv {
        format!("suite,passed\n{},{}", suite_name(suite), passed)
    } else {
        serde_json::to_string_pretty(&value)?
    };
    Ok(Output { text, passed })
}
