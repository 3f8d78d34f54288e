//! Erdős–Rényi experiments on critical groups and the limiting
//! probabilities they are compared against.

mod constants;
mod pairings;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::critgrp::{critical_group, is_prime, spanning_tree_count, AbelianGroup};
use crate::error::{Error, Result};
use crate::graphs::Multigraph;

pub use constants::{cyclic_constant, macwilliams_count, mean_spanning_trees, zeta};
pub use pairings::{
    aut_order, count_pairings, odd_zeta_product, wood_probability, GRAM_TABLE_LIMIT,
    PAIRING_ORDER_LIMIT,
};

/// Bound on `n³·samples`, a rough proxy for the elimination work of an experiment.
pub const EXPERIMENT_WORK_LIMIT: u64 = 100_000_000_000;
/// Largest `n` for [`census`].
pub const CENSUS_LIMIT: usize = 6;

const WOOD_TOLERANCE: f64 = 1e-15;
const CYCLIC_TERMS: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub n: usize,
    /// Edge probability, strictly between 0 and 1.
    pub q: BigRational,
    pub samples: u64,
    pub p: u64,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        if !self.q.is_positive() || self.q >= BigRational::one() {
            return Err(Error::InvalidParameter(format!("q = {} must lie strictly between 0 and 1", self.q)));
        }
        if self.samples == 0 {
            return Err(Error::InvalidParameter("samples must be positive".into()));
        }
        if !is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        let work = (self.n as u64)
            .checked_pow(3)
            .and_then(|c| c.checked_mul(self.samples));
        if work.is_none_or(|w| w > EXPERIMENT_WORK_LIMIT) {
            return Err(Error::guard("n³·samples", EXPERIMENT_WORK_LIMIT));
        }
        Ok(())
    }

    /// `floor(q·2^64)`: an edge is kept when a uniform 64-bit word falls below it.
    fn threshold(&self) -> u64 {
        let scaled = (self.q.numer() << 64u32) / self.q.denom();
        scaled.to_u64().expect("q < 1")
    }

    fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "q": self.q.to_string(),
            "samples": self.samples,
            "p": self.p,
            "seed": self.seed,
        })
    }
}

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the generator for sample `index`: `splitmix64(seed ^ splitmix64(index))`.
pub fn sample_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

/// Sample `index` of `G(n, q)`: one ChaCha8 word per pair `i < j`, in
/// lexicographic order.
pub fn sample_er(config: &ExperimentConfig, index: u64) -> Result<Multigraph> {
    config.validate()?;
    let threshold = config.threshold();
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed(config.seed, index));
    let mut g = Multigraph::numbered(config.n);
    for i in 0..config.n {
        for j in i + 1..config.n {
            if rng.next_u64() < threshold {
                g.add_edges(i, j, 1)?;
            }
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub connected: u64,
    pub disconnected: u64,
    /// Sylow p-subgroups of the critical groups of the connected samples.
    pub sylow_tallies: BTreeMap<AbelianGroup, u64>,
    pub cyclic: u64,
    pub odd_order: u64,
}

fn ratio(count: u64, total: u64) -> Option<f64> {
    (total > 0).then(|| count as f64 / total as f64)
}

fn decimal(x: Option<f64>) -> Value {
    x.map_or(Value::Null, |x| Value::String(format!("{x:.6}")))
}

impl ExperimentReport {
    pub fn samples(&self) -> u64 {
        self.connected + self.disconnected
    }

    pub fn trivial_sylow(&self) -> u64 {
        self.sylow_tallies.get(&AbelianGroup::trivial()).copied().unwrap_or(0)
    }

    /// Share of connected samples, or `None` when there are none.
    pub fn frequency(&self, count: u64) -> Option<f64> {
        ratio(count, self.connected)
    }

    pub fn raw_frequency(&self, count: u64) -> Option<f64> {
        ratio(count, self.samples())
    }

    fn statistic(&self, count: u64, predicted: Option<f64>) -> Value {
        json!({
            "count": count,
            "frequency": decimal(self.frequency(count)),
            "frequency_raw": decimal(self.raw_frequency(count)),
            "predicted": decimal(predicted),
        })
    }

    /// Report document. Conditioned frequencies divide by the number of
    /// connected samples, raw ones by all samples.
    pub fn to_json(&self) -> Value {
        let p = self.config.p;
        let mut tallies = Map::new();
        for (group, &count) in &self.sylow_tallies {
            let wood = wood_probability(group, p, WOOD_TOLERANCE).ok();
            tallies.insert(
                group.to_string(),
                json!({
                    "count": count,
                    "frequency": decimal(self.frequency(count)),
                    "frequency_raw": decimal(self.raw_frequency(count)),
                    "wood_probability": decimal(wood),
                }),
            );
        }
        let trivial = wood_probability(&AbelianGroup::trivial(), p, WOOD_TOLERANCE).ok();
        let odd = wood_probability(&AbelianGroup::trivial(), 2, WOOD_TOLERANCE).ok();
        json!({
            "config": self.config.to_json(),
            "samples": self.samples(),
            "connected": self.connected,
            "disconnected": self.disconnected,
            "sylow_tallies": tallies,
            "statistics": {
                "trivial_sylow": self.statistic(self.trivial_sylow(), trivial),
                "cyclic": self.statistic(self.cyclic, Some(cyclic_constant(CYCLIC_TERMS))),
                "odd_order": self.statistic(self.odd_order, odd),
            },
            "conditioning": "frequency counts connected samples only; frequency_raw counts all samples",
        })
    }
}

enum Outcome {
    Disconnected,
    Connected { sylow: AbelianGroup, cyclic: bool, odd: bool },
}

/// Samples `config.samples` graphs in parallel and tallies their critical
/// groups. The result does not depend on the number of worker threads.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let outcomes: Vec<Outcome> = (0..config.samples)
        .into_par_iter()
        .map(|i| -> Result<Outcome> {
            let g = sample_er(config, i)?;
            if !g.is_connected() {
                return Ok(Outcome::Disconnected);
            }
            let k = critical_group(&g)?;
            Ok(Outcome::Connected {
                sylow: k.sylow(config.p)?,
                cyclic: k.is_cyclic(),
                odd: k.order().is_odd(),
            })
        })
        .collect::<Result<_>>()?;

    let mut report = ExperimentReport {
        config: config.clone(),
        connected: 0,
        disconnected: 0,
        sylow_tallies: BTreeMap::new(),
        cyclic: 0,
        odd_order: 0,
    };
    for outcome in outcomes {
        match outcome {
            Outcome::Disconnected => report.disconnected += 1,
            Outcome::Connected { sylow, cyclic, odd } => {
                report.connected += 1;
                *report.sylow_tallies.entry(sylow).or_default() += 1;
                report.cyclic += cyclic as u64;
                report.odd_order += odd as u64;
            }
        }
    }
    Ok(report)
}

/// Exact statistics over all `2^C(n,2)` labelled simple graphs on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    pub graphs: u64,
    pub connected: u64,
    /// Average spanning-tree count, disconnected graphs contributing 0.
    pub mean_spanning_trees: BigRational,
    /// Sylow p-subgroups over the connected graphs.
    pub sylow: BTreeMap<AbelianGroup, u64>,
}

pub fn census(n: usize, p: u64) -> Result<Census> {
    if n == 0 || n > CENSUS_LIMIT {
        return Err(Error::guard("census size", CENSUS_LIMIT as u64));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let graphs = 1u64 << pairs.len();
    let mut total = BigInt::zero();
    let mut connected = 0;
    let mut sylow = BTreeMap::new();
    for mask in 0..graphs {
        let mut g = Multigraph::numbered(n);
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                g.add_edges(i, j, 1)?;
            }
        }
        total += spanning_tree_count(&g);
        if g.is_connected() {
            connected += 1;
            *sylow.entry(critical_group(&g)?.sylow(p)?).or_default() += 1;
        }
    }
    Ok(Census {
        n,
        graphs,
        connected,
        mean_spanning_trees: BigRational::new(total, BigInt::from(graphs)),
        sylow,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(n: usize, q: (i64, i64), samples: u64, seed: u64) -> ExperimentConfig {
        ExperimentConfig {
            n,
            q: BigRational::new(q.0.into(), q.1.into()),
            samples,
            p: 2,
            seed,
        }
    }

    #[test]
    fn config_validation() {
        assert!(config(5, (1, 2), 10, 0).validate().is_ok());
        assert!(config(5, (1, 1), 10, 0).validate().is_err());
        assert!(config(5, (0, 1), 10, 0).validate().is_err());
        assert!(config(5, (1, 2), 0, 0).validate().is_err());
        assert!(config(0, (1, 2), 1, 0).validate().is_err());
        let mut c = config(5, (1, 2), 1, 0);
        c.p = 4;
        assert_eq!(c.validate(), Err(Error::NotPrime(4)));
        assert!(matches!(config(10_000, (1, 2), 1000, 0).validate(), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn threshold_is_exact() {
        assert_eq!(config(3, (1, 2), 1, 0).threshold(), 1 << 63);
        assert_eq!(config(3, (1, 4), 1, 0).threshold(), 1 << 62);
        assert_eq!(config(3, (1, 3), 1, 0).threshold(), u64::MAX / 3);
    }

    #[test]
    fn sampling_is_deterministic() {
        let c = config(8, (1, 2), 1, 42);
        assert_eq!(sample_er(&c, 7).unwrap(), sample_er(&c, 7).unwrap());
        let distinct = (0..20).map(|i| sample_er(&c, i).unwrap()).collect::<std::collections::HashSet<_>>();
        assert!(distinct.len() > 15);
    }

    #[test]
    fn sampled_tree_counts_average_three_quarters() {
        let c = config(3, (1, 2), 10_000, 9);
        let mean = (0..c.samples)
            .map(|i| spanning_tree_count(&sample_er(&c, i).unwrap()).to_f64().unwrap())
            .sum::<f64>()
            / c.samples as f64;
        // per-graph variance is 27/16, so 3σ at 10⁴ samples is about 0.039
        assert!((mean - 0.75).abs() < 0.039, "{mean}");
    }

    #[test]
    fn single_sample_report() {
        let r = run_experiment(&config(6, (1, 2), 1, 3)).unwrap();
        assert_eq!(r.samples(), 1);
        assert_eq!(r.sylow_tallies.values().sum::<u64>(), r.connected);
    }

    #[test]
    fn report_is_reproducible() {
        let c = config(10, (1, 2), 50, 5);
        let a = run_experiment(&c).unwrap().to_json().to_string();
        let b = run_experiment(&c).unwrap().to_json().to_string();
        assert_eq!(a, b);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let serial = pool.install(|| run_experiment(&c).unwrap().to_json().to_string());
        assert_eq!(a, serial);
    }

    #[test]
    fn census_of_small_graphs() {
        let c = census(3, 2).unwrap();
        assert_eq!(c.graphs, 8);
        assert_eq!(c.connected, 4);
        assert_eq!(c.mean_spanning_trees, mean_spanning_trees(3).unwrap());
        let c = census(4, 2).unwrap();
        assert_eq!(c.graphs, 64);
        assert_eq!(c.mean_spanning_trees, mean_spanning_trees(4).unwrap());
        assert!(census(7, 2).is_err());
    }
}
