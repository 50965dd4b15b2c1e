//! Operad laws for `γ` on monochrome wiring diagrams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::{finish, AxiomReport, Tally};
use super::operad::{enumerate_plain, gamma, WiringDiagram};
use crate::diagram::{BrauerDiagram, Permutation};
use crate::error::Result;
use crate::palette::Palette;

fn show(w: &WiringDiagram) -> String {
    format!("{} blocks {:?}", w.body().base(), w.blocks())
}

fn show_all(ws: &[WiringDiagram]) -> String {
    ws.iter().map(show).collect::<Vec<_>>().join("; ")
}

/// Loop-free diagrams with at most two blocks of at most `max_block`
/// points each and at most `max_block` outputs.
fn small_diagrams(max_block: usize) -> Vec<WiringDiagram> {
    let mut configs: Vec<Vec<usize>> = vec![vec![]];
    for a in 0..=max_block {
        configs.push(vec![a]);
        for b in 0..=max_block {
            configs.push(vec![a, b]);
        }
    }
    let mut out = Vec::new();
    for blocks in &configs {
        for n in 0..=max_block {
            out.extend(enumerate_plain(blocks, n));
        }
    }
    out
}

fn fillings(all: &[WiringDiagram], g: &WiringDiagram) -> Vec<Vec<WiringDiagram>> {
    let mut acc: Vec<Vec<WiringDiagram>> = vec![vec![]];
    for &b in g.blocks() {
        let options: Vec<&WiringDiagram> = all.iter().filter(|w| w.output().len() == b).collect();
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&f| {
                    let mut v = prefix.clone();
                    v.push(f.clone());
                    v
                })
            })
            .collect();
    }
    acc
}

fn random_wiring(rng: &mut ChaCha8Rng, blocks: Vec<usize>, n: usize) -> Result<WiringDiagram> {
    let m: usize = blocks.iter().sum();
    WiringDiagram::plain(BrauerDiagram::random_open(m, n, rng)?, blocks)
}

/// `γ(γ(g; fs); hs)` against `γ(g; γ(f_i; hs_i))`.
fn associativity(
    p: &Palette,
    tally: &mut Tally,
    g: &WiringDiagram,
    fs: &[WiringDiagram],
    hs: &[WiringDiagram],
) -> Result<()> {
    let left = gamma(p, &gamma(p, g, fs)?, hs)?;
    let mut rest = hs;
    let mut inner = Vec::with_capacity(fs.len());
    for f in fs {
        let (now, later) = rest.split_at(f.arity());
        rest = later;
        inner.push(gamma(p, f, now)?);
    }
    let right = gamma(p, g, &inner)?;
    tally.record(&left, &right, || {
        format!("g={} fs=[{}] hs=[{}]", show(g), show_all(fs), show_all(hs))
    });
    Ok(())
}

/// Unit, associativity and block-swap equivariance of `γ`, plus closure of
/// connected and of downward diagrams, exhaustively on diagrams with at
/// most two blocks of at most `max_block` points and then on
/// `random_cases` seeded larger composites.
pub fn check_operad_laws(max_block: usize, random_cases: usize, seed: u64) -> Result<AxiomReport> {
    let p = Palette::monochrome();
    let all = small_diagrams(max_block);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut units = Tally::new("units");
    let mut assoc = Tally::new("associativity");
    let mut equiv = Tally::new("equivariance");
    let mut connected = Tally::new("connected-closure");
    let mut downward = Tally::new("downward-closure");

    for g in &all {
        let ids: Vec<WiringDiagram> = g
            .block_words(&p)
            .iter()
            .map(|w| WiringDiagram::identity(&p, w))
            .collect();
        units.record(&gamma(&p, g, &ids)?, g, || format!("right unit on {}", show(g)));
        let unit = WiringDiagram::identity(&p, &g.output());
        units.record(&gamma(&p, &unit, std::slice::from_ref(g))?, g, || format!("left unit on {}", show(g)));

        for fs in fillings(&all, g) {
            // One seeded third level per inner block.
            let mut hs = Vec::new();
            for f in &fs {
                for &b in f.blocks() {
                    let options: Vec<&WiringDiagram> =
                        all.iter().filter(|w| w.output().len() == b).collect();
                    hs.push(options[rng.gen_range(0..options.len())].clone());
                }
            }
            associativity(&p, &mut assoc, g, &fs, &hs)?;

            if g.arity() == 2 {
                let sigma = Permutation::from_images(vec![1, 0])?;
                let swapped = [fs[1].clone(), fs[0].clone()];
                let lhs = gamma(&p, &g.permute_blocks(&p, &sigma)?, &swapped)?;
                let (a, b) = (fs[0].arity(), fs[1].arity());
                let images = (0..a + b).map(|j| if j < a { b + j } else { j - a }).collect();
                let rhs = gamma(&p, g, &fs)?.permute_blocks(&p, &Permutation::from_images(images)?)?;
                equiv.record(&lhs, &rhs, || format!("g={} fs=[{}]", show(g), show_all(&fs)));
            }
            if g.is_connected() && fs.iter().all(|f| f.is_connected()) {
                let x = gamma(&p, g, &fs)?;
                connected.record(&x.is_connected(), &true, || {
                    format!("g={} fs=[{}]", show(g), show_all(&fs))
                });
            }
            if g.is_nonunital_admissible() && fs.iter().all(|f| f.is_nonunital_admissible()) {
                let x = gamma(&p, g, &fs)?;
                let ok = x.is_nonunital_admissible() && x.body().base().closed() == 0;
                downward.record(&ok, &true, || format!("g={} fs=[{}]", show(g), show_all(&fs)));
            }
        }
    }

    for _ in 0..random_cases {
        let k = rng.gen_range(1..=3);
        let outer: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
        let total: usize = outer.iter().sum();
        let n = rng.gen_range(0..=2) * 2 + total % 2;
        let g = random_wiring(&mut rng, outer.clone(), n)?;
        let mut fs = Vec::new();
        let mut hs = Vec::new();
        for &b in &outer {
            let mut inner: Vec<usize> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(0..=2)).collect();
            if (inner.iter().sum::<usize>() + b) % 2 == 1 {
                inner.push(1);
            }
            fs.push(random_wiring(&mut rng, inner.clone(), b)?);
            for &c in &inner {
                let leaf = rng.gen_range(0..=2) * 2 + c % 2;
                hs.push(random_wiring(&mut rng, vec![leaf], c)?);
            }
        }
        associativity(&p, &mut assoc, &g, &fs, &hs)?;
    }
    Ok(finish(max_block, vec![units, assoc, equiv, connected, downward]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let r = check_operad_laws(1, 20, 0).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.results.iter().all(|x| x.cases > 0), "{r:?}");
    }
}
