//! Betti-strata census over registered per-stratum constructions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::witness::{plane, random_linear_change, H1, H2};
use crate::apolarity::random_level_quotient;
use crate::artinian::ArtinianAlgebra;
use crate::betti::{betti_table, level_betti_minima, BettiTable};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ring::{Form, GradedIdeal, Monomial, Ring};
use crate::rng::{random_element, rng_from_seed, sub_seed, LabRng};

/// Hilbert functions with registered strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CensusTarget {
    H1,
    H2,
}

impl CensusTarget {
    pub fn hilbert(self) -> &'static [usize] {
        match self {
            CensusTarget::H1 => &H1,
            CensusTarget::H2 => &H2,
        }
    }

    pub fn strategies(self) -> &'static [Strategy] {
        match self {
            CensusTarget::H1 => &[Strategy::H1Ci, Strategy::H1LinePoint, Strategy::H1Stratum3],
            CensusTarget::H2 => &[
                Strategy::H2Ci33,
                Strategy::H2XiV,
                Strategy::H2LineCi22,
                Strategy::H2Beta4,
            ],
        }
    }
}

impl FromStr for CensusTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "H1" | "1,3,4,4" => Ok(CensusTarget::H1),
            "H2" | "1,3,6,8,9,3" => Ok(CensusTarget::H2),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// A construction aimed at one Betti stratum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Strategy {
    /// `I_2` a complete intersection of two quadrics.
    H1Ci,
    /// `I_2 = ℓ·⟨a, b⟩`: a line union a point.
    H1LinePoint,
    /// `(xy, xz, f)` with `f ∈ k[y,z]_3`, or `(x², xy, f)` with
    /// `f ∈ ⟨xz², y³, y²z, yz²⟩`, in random coordinates.
    H1Stratum3,
    /// `I_3` a complete intersection of two cubics.
    H2Ci33,
    /// `I_3 = ξ·V`, plus a quartic.
    H2XiV,
    /// `I_3 = ℓ·⟨g, h⟩` with `(g, h)` a complete intersection.
    H2LineCi22,
    /// `(ℓρx, ℓρy, ℓq_3)` with `q_3 ∈ (x, y)`, in random coordinates.
    H2Beta4,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::H1Ci => "ci22",
            Strategy::H1LinePoint => "line_point",
            Strategy::H1Stratum3 => "stratum3_normal_form",
            Strategy::H2Ci33 => "ci33",
            Strategy::H2XiV => "xi_v",
            Strategy::H2LineCi22 => "line_ci22",
            Strategy::H2Beta4 => "beta4_normal_form",
        }
    }

    pub fn target(self) -> CensusTarget {
        match self {
            Strategy::H1Ci | Strategy::H1LinePoint | Strategy::H1Stratum3 => CensusTarget::H1,
            _ => CensusTarget::H2,
        }
    }

    /// Structural ideal whose perp the level algebra is sampled from.
    fn structure(self, field: PrimeField, seed: u64) -> Result<GradedIdeal> {
        let r = plane(field);
        let mut rng = rng_from_seed(seed);
        let mut rand = |d: usize| Form::random(r, d, &mut rng);
        let gens = match self {
            Strategy::H1Ci => vec![rand(2), rand(2)],
            Strategy::H1LinePoint => {
                let (l, a, b) = (rand(1), rand(1), rand(1));
                vec![l.multiply(&a)?, l.multiply(&b)?]
            }
            Strategy::H2Ci33 => vec![rand(3), rand(3)],
            Strategy::H2XiV => {
                let (xi, v1, v2, f) = (rand(2), rand(1), rand(1), rand(4));
                vec![xi.multiply(&v1)?, xi.multiply(&v2)?, f]
            }
            Strategy::H2LineCi22 => {
                let (l, g, h) = (rand(1), rand(2), rand(2));
                vec![l.multiply(&g)?, l.multiply(&h)?]
            }
            Strategy::H1Stratum3 | Strategy::H2Beta4 => {
                return self.normal_form(field, seed);
            }
        };
        GradedIdeal::new(r, gens, None)
    }

    fn normal_form(self, field: PrimeField, seed: u64) -> Result<GradedIdeal> {
        let r = plane(field);
        let mut rng = rng_from_seed(sub_seed(seed, 1));
        let combo = |rng: &mut LabRng, terms: &[[u16; 3]]| -> Form {
            let mut f = Form::zero(r, 3);
            for &e in terms {
                f = f
                    .add(&monomial(r, e).scale(random_element(field, rng)))
                    .unwrap();
            }
            f
        };
        let gens = match self {
            Strategy::H1Stratum3 => {
                if rng.gen_bool(0.5) {
                    let f = combo(&mut rng, &[[0, 3, 0], [0, 2, 1], [0, 1, 2], [0, 0, 3]]);
                    vec![monomial(r, [1, 1, 0]), monomial(r, [1, 0, 1]), f]
                } else {
                    let f = combo(&mut rng, &[[1, 0, 2], [0, 3, 0], [0, 2, 1], [0, 1, 2]]);
                    vec![monomial(r, [2, 0, 0]), monomial(r, [1, 1, 0]), f]
                }
            }
            _ => {
                let l = Form::random(r, 1, &mut rng);
                let rho = Form::random(r, 1, &mut rng);
                let (x, y) = (Form::variable(r, 0), Form::variable(r, 1));
                let q3 = x
                    .multiply(&Form::random(r, 2, &mut rng))?
                    .add(&y.multiply(&Form::random(r, 2, &mut rng))?)?;
                let lr = l.multiply(&rho)?;
                vec![lr.multiply(&x)?, lr.multiply(&y)?, l.multiply(&q3)?]
            }
        };
        let images = random_linear_change(r, &mut rng);
        GradedIdeal::new(r, gens, None)?.transform(&images)
    }

    /// One draw from this construction; its Hilbert function is not
    /// checked.
    pub fn sample(self, field: PrimeField, seed: u64) -> Result<ArtinianAlgebra> {
        self.draw(field, seed, false)
    }

    /// Re-draws until the target Hilbert function is met.
    pub fn sample_retrying(self, field: PrimeField, seed: u64) -> Result<ArtinianAlgebra> {
        self.draw(field, seed, true)
    }

    fn draw(self, field: PrimeField, seed: u64, retry: bool) -> Result<ArtinianAlgebra> {
        let h = self.target().hilbert();
        let j = h.len() - 1;
        let structure = self.structure(field, seed)?;
        random_level_quotient(&structure, j, h[j], retry.then_some(h), sub_seed(seed, 2))
    }
}

fn monomial(r: Ring, e: [u16; 3]) -> Form {
    Form::monomial(r, &Monomial(e.to_vec()), 1)
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StrategyStats {
    pub samples: usize,
    pub failures: usize,
}

#[derive(Debug, Clone)]
pub struct StrataCensus {
    pub hilbert: Vec<usize>,
    pub strategies: BTreeMap<String, StrategyStats>,
    /// Distinct tables with their frequencies, in table order.
    pub tables: Vec<(BettiTable, usize)>,
    /// Indices into `tables` of the poset-minimal level tables.
    pub minima: Vec<usize>,
    pub euler_ok: bool,
}

impl StrataCensus {
    pub fn distinct(&self) -> usize {
        self.tables.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "H": self.hilbert,
            "strategies": self.strategies,
            "tables": self
                .tables
                .iter()
                .map(|(t, n)| json!({"betti": t.to_json(), "count": n}))
                .collect::<Vec<_>>(),
            "minima": self.minima.len(),
        })
    }

    pub fn render(&self) -> String {
        let mut s = format!("census for H = {:?}\n", self.hilbert);
        for (name, st) in &self.strategies {
            s.push_str(&format!(
                "  strategy {name}: {} samples, {} failures\n",
                st.samples, st.failures
            ));
        }
        for (idx, (t, n)) in self.tables.iter().enumerate() {
            let mark = if self.minima.contains(&idx) {
                " (minimal)"
            } else {
                ""
            };
            s.push_str(&format!(
                "table {} seen {n} times{mark}\n{}",
                idx + 1,
                t.render()
            ));
        }
        s.push_str(&format!(
            "{} distinct tables, {} minima\n",
            self.tables.len(),
            self.minima.len()
        ));
        s
    }
}

/// Samples every strategy of `target` `samples` times, with per-sample seeds
/// derived from `seed`, and folds the resulting tables.
pub fn strata_census(
    target: CensusTarget,
    strategies: &[Strategy],
    samples: usize,
    field: PrimeField,
    seed: u64,
) -> Result<StrataCensus> {
    let h = target.hilbert();
    let j = h.len() - 1;
    if let Some(s) = strategies.iter().find(|s| s.target() != target) {
        return Err(Error::InvalidArgument(format!(
            "strategy {s} does not target {h:?}"
        )));
    }
    let jobs: Vec<(usize, usize)> = (0..strategies.len())
        .flat_map(|s| (0..samples).map(move |n| (s, n)))
        .collect();
    let results: Vec<(usize, Option<BettiTable>)> = jobs
        .par_iter()
        .map(|&(s, n)| {
            let strategy = strategies[s];
            let sample_seed = sub_seed(seed, ((s as u64) << 32) | n as u64);
            let table = strategy
                .sample(field, sample_seed)
                .ok()
                .filter(|a| a.hilbert_values() == h)
                .and_then(|a| betti_table(&a, j + 3).ok());
            (s, table)
        })
        .collect();

    let mut stats: BTreeMap<String, StrategyStats> = strategies
        .iter()
        .map(|s| (s.name().to_string(), StrategyStats::default()))
        .collect();
    let mut counts: BTreeMap<BettiTable, usize> = BTreeMap::new();
    for (s, table) in results {
        let st = stats.get_mut(strategies[s].name()).unwrap();
        st.samples += 1;
        match table {
            Some(t) => *counts.entry(t).or_default() += 1,
            None => st.failures += 1,
        }
    }
    let tables: Vec<(BettiTable, usize)> = counts.into_iter().collect();
    let list: Vec<BettiTable> = tables.iter().map(|(t, _)| t.clone()).collect();
    let euler_ok = list.iter().all(|t| t.euler_identity_holds(h, j + 3));
    let minima = level_betti_minima(&list, j).minima;
    Ok(StrataCensus {
        hilbert: h.to_vec(),
        strategies: stats,
        tables,
        minima,
        euler_ok,
    })
}
