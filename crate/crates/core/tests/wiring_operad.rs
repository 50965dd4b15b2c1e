use brauerkit::diagram::{BrauerDiagram, Permutation};
use brauerkit::palette::Palette;
use brauerkit::wiring::{enumerate_plain, gamma, WiringDiagram};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every loop-free monochrome wiring diagram with at most two blocks of at
/// most two points and at most two outputs.
fn small_diagrams() -> Vec<WiringDiagram> {
    let mut configs: Vec<Vec<usize>> = vec![vec![]];
    for a in 0..=2 {
        configs.push(vec![a]);
        for b in 0..=2 {
            configs.push(vec![a, b]);
        }
    }
    let mut out = Vec::new();
    for blocks in &configs {
        for n in 0..=2 {
            out.extend(enumerate_plain(blocks, n));
        }
    }
    out
}

fn with_outputs(all: &[WiringDiagram], n: usize) -> Vec<&WiringDiagram> {
    all.iter().filter(|w| w.output().len() == n).collect()
}

/// Every choice of one diagram per block of `g`, with matching outputs.
fn fillings<'a>(all: &'a [WiringDiagram], g: &WiringDiagram) -> Vec<Vec<&'a WiringDiagram>> {
    let mut acc: Vec<Vec<&WiringDiagram>> = vec![vec![]];
    for &b in g.blocks() {
        let options = with_outputs(all, b);
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&f| {
                    let mut v = prefix.clone();
                    v.push(f);
                    v
                })
            })
            .collect();
    }
    acc
}

fn owned(fs: &[&WiringDiagram]) -> Vec<WiringDiagram> {
    fs.iter().map(|&f| f.clone()).collect()
}

fn random_wiring(rng: &mut ChaCha8Rng, blocks: Vec<usize>, n: usize) -> WiringDiagram {
    let m: usize = blocks.iter().sum();
    WiringDiagram::plain(BrauerDiagram::random_open(m, n, rng).unwrap(), blocks).unwrap()
}

#[test]
fn unit_laws_exhaustive() {
    let p = Palette::monochrome();
    for g in small_diagrams() {
        let ids: Vec<WiringDiagram> = g
            .block_words(&p)
            .iter()
            .map(|w| WiringDiagram::identity(&p, w))
            .collect();
        assert_eq!(gamma(&p, &g, &ids).unwrap(), g);
        let unit = WiringDiagram::identity(&p, &g.output());
        assert_eq!(gamma(&p, &unit, std::slice::from_ref(&g)).unwrap(), g);
    }
}

#[test]
fn associativity_exhaustive_outer_levels() {
    let p = Palette::monochrome();
    let all = small_diagrams();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cases = 0;
    for g in &all {
        for fs in fillings(&all, g) {
            // Third level: one seeded choice per inner block.
            let hs: Vec<Vec<WiringDiagram>> = fs
                .iter()
                .map(|f| {
                    f.blocks()
                        .iter()
                        .map(|&b| {
                            let options = with_outputs(&all, b);
                            options[rng.gen_range(0..options.len())].clone()
                        })
                        .collect()
                })
                .collect();
            let fs = owned(&fs);
            let left = gamma(&p, &gamma(&p, g, &fs).unwrap(), &hs.concat()).unwrap();
            let inner: Vec<WiringDiagram> = fs
                .iter()
                .zip(&hs)
                .map(|(f, h)| gamma(&p, f, h).unwrap())
                .collect();
            let right = gamma(&p, g, &inner).unwrap();
            assert_eq!(left, right);
            cases += 1;
        }
    }
    assert!(cases > 1000, "only {cases} cases");
}

#[test]
fn associativity_random_larger() {
    let p = Palette::monochrome();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let k = rng.gen_range(1..=3);
        let outer_blocks: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
        let total: usize = outer_blocks.iter().sum();
        let n = rng.gen_range(0..=2) * 2 + total % 2;
        let g = random_wiring(&mut rng, outer_blocks.clone(), n);
        let mut fs = Vec::new();
        let mut hs = Vec::new();
        for &b in &outer_blocks {
            let inner_k = rng.gen_range(0..=2);
            let mut inner_blocks: Vec<usize> = (0..inner_k).map(|_| rng.gen_range(0..=2)).collect();
            if (inner_blocks.iter().sum::<usize>() + b) % 2 == 1 {
                inner_blocks.push(1);
            }
            let f = random_wiring(&mut rng, inner_blocks.clone(), b);
            for &c in &inner_blocks {
                let leaf = rng.gen_range(0..=2) * 2 + c % 2;
                hs.push(random_wiring(&mut rng, vec![leaf], c));
            }
            fs.push(f);
        }
        let left = gamma(&p, &gamma(&p, &g, &fs).unwrap(), &hs).unwrap();
        let mut rest = hs.as_slice();
        let inner: Vec<WiringDiagram> = fs
            .iter()
            .map(|f| {
                let (now, later) = rest.split_at(f.arity());
                rest = later;
                gamma(&p, f, now).unwrap()
            })
            .collect();
        assert_eq!(left, gamma(&p, &g, &inner).unwrap());
    }
}

#[test]
fn equivariance_exhaustive() {
    let p = Palette::monochrome();
    let all = small_diagrams();
    for g in all.iter().filter(|g| g.arity() == 2) {
        let sigma = Permutation::from_images(vec![1, 0]).unwrap();
        let g_sigma = g.permute_blocks(&p, &sigma).unwrap();
        for fs in fillings(&all, g) {
            let fs = owned(&fs);
            let swapped = [fs[1].clone(), fs[0].clone()];
            let lhs = gamma(&p, &g_sigma, &swapped).unwrap();
            // The composite's blocks move as whole groups.
            let (a, b) = (fs[0].arity(), fs[1].arity());
            let images: Vec<usize> = (0..a + b).map(|j| if j < a { b + j } else { j - a }).collect();
            let rhs = gamma(&p, g, &fs)
                .unwrap()
                .permute_blocks(&p, &Permutation::from_images(images).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn connected_diagrams_are_closed() {
    let p = Palette::monochrome();
    let all = small_diagrams();
    let connected: Vec<WiringDiagram> = all.iter().filter(|w| w.is_connected()).cloned().collect();
    let mut cases = 0;
    for g in &connected {
        for fs in fillings(&connected, g) {
            let x = gamma(&p, g, &owned(&fs)).unwrap();
            assert!(x.is_connected(), "{g:?} with {fs:?}");
            cases += 1;
        }
    }
    assert!(cases > 100, "only {cases} cases");
}

#[test]
fn downward_diagrams_are_closed_and_loop_free() {
    let p = Palette::monochrome();
    let all = small_diagrams();
    let downward: Vec<WiringDiagram> = all
        .iter()
        .filter(|w| w.is_nonunital_admissible())
        .cloned()
        .collect();
    for g in &downward {
        for fs in fillings(&downward, g) {
            let x = gamma(&p, g, &owned(&fs)).unwrap();
            assert!(x.is_nonunital_admissible());
            assert_eq!(x.body().base().closed(), 0);
        }
    }
}

#[test]
fn output_only_strand_is_disconnected() {
    // The cap beside a cup on the outputs is a disjoint sum.
    let base = BrauerDiagram::oplus(&BrauerDiagram::cap(), &BrauerDiagram::cup());
    let w = WiringDiagram::plain(base, vec![2]).unwrap();
    assert!(!w.is_connected());
}

#[test]
fn type_mismatch_is_reported() {
    let p = Palette::monochrome();
    let g = WiringDiagram::plain(BrauerDiagram::cap(), vec![2]).unwrap();
    let f = WiringDiagram::plain(BrauerDiagram::identity(1), vec![1]).unwrap();
    assert!(gamma(&p, &g, &[f]).is_err());
    assert!(gamma(&p, &g, &[]).is_err());
}
