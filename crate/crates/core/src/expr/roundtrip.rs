use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{parse, parse_diagram, print, random_diagram, random_expr};

#[derive(Clone, Debug, Serialize)]
pub struct RoundTripReport {
    pub seed: u64,
    pub diagram_cases: usize,
    pub expression_cases: usize,
    pub failures: usize,
    pub witness: Option<String>,
    pub passed: bool,
}

/// Byte-exact `print ∘ parse` and `parse ∘ print` on `cases` random canonical
/// diagrams and as many random expressions.
pub fn check_round_trips(cases: usize, max_points: usize, seed: u64) -> RoundTripReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut witness = None;
    let mut fail = |text: String| {
        failures += 1;
        witness.get_or_insert(text);
    };
    for _ in 0..cases {
        let d = random_diagram(&mut rng, max_points);
        let text = d.to_string();
        match (parse_diagram(&text), parse(&text)) {
            (Ok(back), Ok(e)) if back == d && back.to_string() == text && print(&e) == text => {}
            _ => fail(format!("diagram {text}")),
        }
    }
    for _ in 0..cases {
        let e = random_expr(&mut rng, 4);
        let text = print(&e);
        match parse(&text) {
            Ok(back) if back == e && print(&back) == text => {}
            _ => fail(format!("expression {text}")),
        }
    }
    RoundTripReport {
        seed,
        diagram_cases: cases,
        expression_cases: cases,
        failures,
        passed: failures == 0,
        witness,
    }
}
