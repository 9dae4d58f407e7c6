//! The default verification corpus.

use cliquedim_core::{ConceptClass, Family};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct Entry {
    pub name: String,
    pub family: Family,
    pub class: ConceptClass,
}

fn label(f: &Family) -> String {
    match f {
        Family::Full { n }
        | Family::Singleton { n }
        | Family::Thresholds { n }
        | Family::Parities { n }
        | Family::DisjointPairs { n } => {
            format!("{}_{n}", f.name())
        }
        Family::PaperExample => f.name().to_string(),
        Family::Random { seed, n, k } => format!("random_{n}_{k}_{seed:016x}"),
    }
}

/// Ten random classes: universe 2..=4 points, 1..=8 rows, parameters drawn
/// from a stream seeded with `seed`.
pub fn random_families(seed: u64, count: usize) -> Vec<Family> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=4usize);
            let k = rng.gen_range(1..=(1usize << n).min(8));
            Family::Random {
                seed: rng.gen(),
                n,
                k,
            }
        })
        .collect()
}

pub fn default_families() -> Vec<Family> {
    let mut out = vec![Family::Singleton { n: 2 }];
    out.extend((1..=3).map(|n| Family::Full { n }));
    out.extend((3..=5).map(|n| Family::Thresholds { n }));
    out.push(Family::Parities { n: 3 });
    out.push(Family::DisjointPairs { n: 2 });
    out.push(Family::PaperExample);
    out.extend(random_families(0, 10));
    out
}

pub fn default_corpus() -> Vec<Entry> {
    default_families()
        .into_iter()
        .map(|family| Entry {
            name: label(&family),
            class: family.generate().expect("corpus families are valid"),
            family,
        })
        .collect()
}
