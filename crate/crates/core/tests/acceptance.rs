//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use brauerkit::diagram::open_count;
use brauerkit::exactlin::{rat, Rational};
use brauerkit::expr::check_round_trips;
use brauerkit::laws::check_category_laws;
use brauerkit::linear::{factors_through_delta, hom_dimension};
use brauerkit::tensor::{ca_ideal_kernel_check, fft_check, gl_check, sft_check, EvalFunctor, FormKind};
use brauerkit::wiring::{
    check_ca_axioms, check_operad_laws, check_prop_bridge, derive_modular_operad, EndomorphismCa,
    TensorWheeledProp,
};
use brauerkit::Result;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Result<Verdict> {
    Ok(Verdict {
        passed,
        detail: detail.into(),
    })
}

fn within(passed: bool, detail: String, elapsed: Duration, limit: Option<Duration>) -> Verdict {
    match limit {
        Some(l) if elapsed > l => Verdict {
            passed: false,
            detail: format!("{detail}; over the {}s limit", l.as_secs()),
        },
        _ => Verdict { passed, detail },
    }
}

fn counting() -> Result<Verdict> {
    let mut cases = 0;
    let mut bad = Vec::new();
    for total in 0..=10 {
        for m in 0..=total {
            cases += 1;
            if hom_dimension(m, total - m) as u128 != open_count(total) {
                bad.push(format!("({m},{})", total - m));
            }
        }
    }
    for n in 0..=5 {
        cases += 1;
        if hom_dimension(n, n) as u128 != open_count(2 * n) {
            bad.push(format!("Br({n},{n})"));
        }
    }
    verdict(bad.is_empty(), format!("{cases} hom-sets enumerated; mismatches {bad:?}"))
}

fn category_laws() -> Result<Verdict> {
    let r = check_category_laws(4, 1000, 8, 0)?;
    let cases: usize = r.results.iter().map(|l| l.cases).sum();
    let failing: Vec<String> = r
        .results
        .iter()
        .filter(|l| !l.passed)
        .map(|l| format!("{}: {}", l.law, l.counterexample.clone().unwrap_or_default()))
        .collect();
    verdict(r.passed, format!("{cases} equalities over {} laws; failing {failing:?}", r.results.len()))
}

fn specialization() -> Result<Verdict> {
    let mut functors = Vec::new();
    for d in 1..=4 {
        functors.push(EvalFunctor::symmetric(d));
    }
    for d in [2, 4] {
        functors.push(EvalFunctor::skew(d)?);
    }
    let mut bad = Vec::new();
    let mut probes = 0;
    for f in &functors {
        let scalar = f.loop_scalar().clone();
        let mut candidates: Vec<Rational> = (-16..=16).map(|k| rat(k, 2)).collect();
        candidates.push(scalar.clone());
        candidates.push(f.form().delta_claimed().clone());
        for delta in candidates {
            probes += 1;
            if factors_through_delta(f, &delta)? != (delta == scalar) {
                bad.push(format!("{:?} d={} at {delta}", f.form().kind(), f.d()));
            }
        }
    }
    verdict(bad.is_empty(), format!("{probes} probes over {} functors; wrong {bad:?}", functors.len()))
}

fn fft() -> Result<Verdict> {
    let mut checked = 0;
    let mut bad = Vec::new();
    for d in 1..=3 {
        let f = EvalFunctor::symmetric(d);
        for total in 0..=6 {
            for m in 0..=total {
                let r = fft_check(&f, m, total - m)?;
                checked += 1;
                if !r.passed {
                    bad.push(format!("d={d} ({m},{}): {:?}", total - m, r.failures));
                }
            }
        }
    }
    verdict(bad.is_empty(), format!("{checked} (d,m,n) ranks match the oracle; failing {bad:?}"))
}

fn sft() -> Result<Verdict> {
    let mut dims = Vec::new();
    let mut bad = Vec::new();
    for d in 1..=2 {
        let f = EvalFunctor::symmetric(d);
        let total = 2 * d + 2;
        for m in 0..=total {
            let r = sft_check(&f, m, total - m, total)?;
            dims.push(r.kernel_dim);
            if !r.equal {
                bad.push(format!("d={d} ({m},{}): {:?}", total - m, r.witness));
            }
        }
    }
    verdict(bad.is_empty(), format!("kernel = ideal slice, kernel dims {dims:?}; failing {bad:?}"))
}

fn symplectic() -> Result<Verdict> {
    let mut parts = Vec::new();
    let mut complete = true;
    for d in [2, 4] {
        let f = EvalFunctor::skew(d)?;
        let mut equal = 0;
        let mut slices = 0;
        for total in (0..=6).step_by(2) {
            for m in 0..=total {
                let r = sft_check(&f, m, total - m, total)?;
                complete &= r.kind == FormKind::Skew;
                slices += 1;
                equal += r.equal as usize;
            }
        }
        parts.push(format!(
            "d={d}: loop {} vs claimed {}, kernel = ideal on {equal}/{slices} slices",
            f.loop_scalar(),
            f.form().delta_claimed()
        ));
    }
    verdict(complete, format!("reported, brute-force kernel authoritative; {}", parts.join("; ")))
}

fn gl() -> Result<Verdict> {
    let two = gl_check(2, 2)?;
    let three = gl_check(2, 3)?;
    let passed = two.passed
        && two.rank == 2
        && two.kernel_dim == 0
        && three.passed
        && three.rank == 5
        && three.kernel_dim == 1
        && three.kernel_equals_ideal
        && three.oriented_kernel_agrees;
    verdict(
        passed,
        format!(
            "n=2 rank {}, n=3 rank {} kernel {} = <e(3)> {}, oriented agrees {}",
            two.rank, three.rank, three.kernel_dim, three.kernel_equals_ideal, three.oriented_kernel_agrees
        ),
    )
}

fn circuit_algebra_axioms() -> Result<Verdict> {
    let mut parts = Vec::new();
    let mut passed = true;
    for (d, mo_grade) in [(2, 6), (3, 5)] {
        let ca = EndomorphismCa::symmetric(d);
        let axioms = check_ca_axioms(&ca, 4)?;
        let mo = derive_modular_operad(&ca).check(mo_grade)?;
        passed &= axioms.passed && mo.passed;
        let cases = |r: &brauerkit::wiring::AxiomReport| r.results.iter().map(|x| x.cases).sum::<usize>();
        parts.push(format!(
            "d={d}: c1-c3,e1 {} ({} cases), m1-m4 {} ({} cases)",
            axioms.passed,
            cases(&axioms),
            mo.passed,
            cases(&mo)
        ));
    }
    verdict(passed, parts.join("; "))
}

fn wheeled_prop() -> Result<Verdict> {
    let ca = EndomorphismCa::oriented(2);
    let tensor = TensorWheeledProp::new(2);
    let r = check_prop_bridge(&ca, &tensor, 3, 0)?;
    let failing: Vec<&str> = r
        .axioms
        .results
        .iter()
        .chain(&r.round_trip.results)
        .filter(|x| !x.passed)
        .map(|x| x.axiom.as_str())
        .collect();
    verdict(r.passed, format!("prop axioms and round trip on <= 3 points; failing {failing:?}"))
}

fn operad() -> Result<Verdict> {
    let r = check_operad_laws(2, 200, 0)?;
    let summary: Vec<String> = r
        .results
        .iter()
        .map(|x| format!("{} {}/{}", x.axiom, if x.passed { "ok" } else { "FAIL" }, x.cases))
        .collect();
    verdict(r.passed, summary.join(", "))
}

fn ideal_kernel() -> Result<Verdict> {
    let r = ca_ideal_kernel_check(&EvalFunctor::symmetric(2), 6)?;
    let dims: Vec<String> = r
        .grades
        .iter()
        .map(|g| format!("n={}:{}/{}", g.n, g.kernel_dim, g.ideal_dim))
        .collect();
    verdict(r.passed, format!("kernel/ideal dims {}", dims.join(" ")))
}

fn parser() -> Result<Verdict> {
    let r = check_round_trips(1000, 8, 0);
    verdict(
        r.passed,
        format!(
            "{} diagrams and {} expressions; failures {} {:?}",
            r.diagram_cases, r.expression_cases, r.failures, r.witness
        ),
    )
}

type Criterion = (&'static str, fn() -> Result<Verdict>, Option<u64>);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("counting", counting, Some(10)),
        ("category laws", category_laws, Some(30)),
        ("specialization", specialization, None),
        ("FFT orthogonal", fft, Some(120)),
        ("SFT orthogonal", sft, Some(120)),
        ("symplectic", symplectic, None),
        ("GL", gl, None),
        ("circuit-algebra axioms", circuit_algebra_axioms, Some(60)),
        ("wheeled-prop bridge", wheeled_prop, None),
        ("operad structure", operad, None),
        ("ideal-kernel circuit algebra", ideal_kernel, Some(300)),
        ("parser round trips", parser, None),
    ];
    let mut failures = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = match run() {
            Ok(v) => v,
            Err(e) => Verdict {
                passed: false,
                detail: format!("error: {e}"),
            },
        };
        let elapsed = start.elapsed();
        let v = within(v.passed, v.detail, elapsed, limit.map(Duration::from_secs));
        failures += !v.passed as usize;
        println!(
            "criterion {:>2} {:<30} {} ({:.2}s) {}",
            i + 1,
            name,
            if v.passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            v.detail
        );
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failures, failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
