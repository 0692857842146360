//! Socle, level type and Jordan type of Artinian graded quotients.

use std::ops::Deref;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::{Form, GradedIdeal, GradedQuotient};
use crate::rng::random_vector;

/// A graded quotient known to vanish above its socle degree.
#[derive(Debug, Clone)]
pub struct ArtinianAlgebra {
    quotient: GradedQuotient,
}

impl Deref for ArtinianAlgebra {
    type Target = GradedQuotient;
    fn deref(&self) -> &GradedQuotient {
        &self.quotient
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Socle {
    /// `dims[d] = dim Soc(A)_d`
    pub dims: Vec<usize>,
    /// Basis of `Soc(A)_d` in the standard-monomial coordinates of `A_d`.
    pub bases: Vec<Vec<Vec<u64>>>,
}

impl Socle {
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LevelType {
    pub is_level: bool,
    pub cm_type: usize,
    pub socle_degree: usize,
}

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct JordanPartition {
    pub parts: Vec<usize>,
}

impl JordanPartition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        JordanPartition { parts }
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Dominance order: every partial sum of `self` is at least that of
    /// `other`.
    pub fn dominates(&self, other: &JordanPartition) -> bool {
        let n = self.parts.len().max(other.parts.len());
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..n {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }
}

impl std::fmt::Display for JordanPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LefschetzReport {
    pub expected: JordanPartition,
    pub samples: Vec<JordanPartition>,
    pub generic: JordanPartition,
    pub strong_lefschetz: bool,
}

/// Rows of the bar graph of `h`: part `m` is `#{i : h_i ≥ m}`.
pub fn bar_graph_partition(h: &[usize]) -> JordanPartition {
    let top = h.iter().copied().max().unwrap_or(0);
    JordanPartition::new(
        (1..=top)
            .map(|m| h.iter().filter(|&&v| v >= m).count())
            .collect(),
    )
}

/// Partition whose parts are given through `ranks[k] = rank ℓ^k`
/// (`ranks[0] = n`): the number of parts `≥ k` is `ranks[k−1] − ranks[k]`.
pub fn partition_from_ranks(ranks: &[usize]) -> JordanPartition {
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for (k, &c) in at_least.iter().enumerate() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k + 1, c - next));
    }
    JordanPartition::new(parts)
}

impl ArtinianAlgebra {
    pub fn from_quotient(quotient: GradedQuotient) -> Result<Self> {
        if !quotient.is_artinian() {
            return Err(Error::NotArtinian(quotient.top_degree()));
        }
        Ok(ArtinianAlgebra { quotient })
    }

    pub fn from_ideal(ideal: &GradedIdeal) -> Result<Self> {
        Self::from_quotient(GradedQuotient::artinian_from_ideal(ideal)?)
    }

    pub fn quotient(&self) -> &GradedQuotient {
        &self.quotient
    }

    pub fn into_quotient(self) -> GradedQuotient {
        self.quotient
    }

    /// `h_0, …, h_j`
    pub fn hilbert_values(&self) -> Vec<usize> {
        self.hilbert_function().trimmed()
    }

    pub fn socle(&self) -> Socle {
        let q = &self.quotient;
        let j = q.socle_degree();
        let field = q.ring().field;
        let mut dims = Vec::with_capacity(j + 1);
        let mut bases = Vec::with_capacity(j + 1);
        for d in 0..=j {
            let h = q.dim(d);
            let mut stacked = Matrix::zeros(field, 0, h);
            for k in 0..q.ring().nvars {
                if let Some(m) = q.multiplication_ref(d, k) {
                    stacked = stacked.vstack(m);
                }
            }
            let kernel = stacked.kernel();
            dims.push(kernel.len());
            bases.push(kernel);
        }
        Socle { dims, bases }
    }

    pub fn level_type(&self) -> LevelType {
        let socle = self.socle();
        let j = self.quotient.socle_degree();
        LevelType {
            is_level: socle.dims[..j].iter().all(|&s| s == 0),
            cm_type: socle.total(),
            socle_degree: j,
        }
    }

    /// Jordan type of `×ℓ` on `A`.
    pub fn jordan_type(&self, l: &Form) -> Result<JordanPartition> {
        if l.degree() != 1 {
            return Err(Error::InvalidArgument(
                "Jordan type needs a linear form".into(),
            ));
        }
        self.quotient.ring().check_same(&l.ring())?;
        if l.is_zero() {
            return Err(Error::InvalidArgument("linear form is zero".into()));
        }
        Ok(self.jordan_type_of(l.coeffs()))
    }

    fn jordan_type_of(&self, l: &[u64]) -> JordanPartition {
        let q = &self.quotient;
        let j = q.socle_degree();
        let maps: Vec<Matrix> = (0..=j).map(|d| q.multiply_linear(d, l)).collect();
        let n = q.length();
        // ranks[k] = Σ_d rank(ℓ^k : A_d → A_{d+k})
        let mut ranks = vec![n];
        let mut chains: Vec<Option<Matrix>> = (0..=j).map(|_| None).collect();
        for k in 1..=j + 1 {
            let mut total = 0;
            for (d, chain) in chains.iter_mut().enumerate() {
                if d + k > j {
                    *chain = None;
                    continue;
                }
                let next = match chain.take() {
                    None => maps[d].clone(),
                    Some(c) => maps[d + k - 1].mul(&c),
                };
                total += next.rank();
                *chain = Some(next);
            }
            ranks.push(total);
        }
        partition_from_ranks(&ranks)
    }

    /// Samples `trials` random linear forms; strong Lefschetz holds when one
    /// of them attains the bar-graph partition of `H`.
    pub fn strong_lefschetz<R: Rng + ?Sized>(&self, trials: usize, rng: &mut R) -> LefschetzReport {
        let ring = self.quotient.ring();
        let expected = bar_graph_partition(&self.hilbert_values());
        let mut samples = Vec::with_capacity(trials);
        for _ in 0..trials.max(1) {
            let l = loop {
                let v = random_vector(ring.field, ring.dim(1), rng);
                if v.iter().any(|&c| c != 0) {
                    break v;
                }
            };
            samples.push(self.jordan_type_of(&l));
        }
        let generic = samples
            .iter()
            .find(|s| samples.iter().all(|o| s.dominates(o)))
            .or_else(|| samples.iter().max())
            .cloned()
            .unwrap();
        LefschetzReport {
            strong_lefschetz: samples.contains(&expected),
            expected,
            samples,
            generic,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::ring::{parse_form, parse_ideal, Ring};
    use crate::rng::rng_from_seed;

    fn r3() -> Ring {
        Ring::new(3, PrimeField::new(32003).unwrap())
    }

    #[test]
    fn socle_of_square_of_maximal_ideal() {
        let a = ArtinianAlgebra::from_ideal(&GradedIdeal::power_of_maximal(r3(), 2)).unwrap();
        assert_eq!(a.socle().dims, vec![0, 3]);
        assert_eq!(a.level_type().cm_type, 3);
    }

    #[test]
    fn socle_of_cubes() {
        let a = ArtinianAlgebra::from_ideal(&parse_ideal(r3(), "x^3, y^3, z^3").unwrap()).unwrap();
        let s = a.socle();
        assert_eq!(s.total(), 1);
        assert_eq!(s.dims[6], 1);
    }

    #[test]
    fn non_level_example() {
        let a = ArtinianAlgebra::from_ideal(&parse_ideal(r3(), "x^2, x*y, x*z + m^4").unwrap())
            .unwrap();
        let lt = a.level_type();
        assert!(!lt.is_level);
        assert_eq!(a.socle().dims[1], 1);
    }

    #[test]
    fn single_block() {
        let r1 = Ring::new(1, PrimeField::new(32003).unwrap());
        let a = ArtinianAlgebra::from_ideal(&parse_ideal(r1, "x^4").unwrap()).unwrap();
        let p = a.jordan_type(&parse_form(r1, "x").unwrap()).unwrap();
        assert_eq!(p.parts, vec![4]);
    }

    #[test]
    fn bar_graphs() {
        assert_eq!(bar_graph_partition(&[1, 3, 4, 4]).parts, vec![4, 3, 3, 2]);
        assert_eq!(
            bar_graph_partition(&[1, 3, 6, 8, 9, 3]).parts,
            vec![6, 5, 5, 3, 3, 3, 2, 2, 1]
        );
    }

    #[test]
    fn zero_form_rejected() {
        let a = ArtinianAlgebra::from_ideal(&GradedIdeal::power_of_maximal(r3(), 2)).unwrap();
        let zero = Form::zero(r3(), 1);
        assert!(a.jordan_type(&zero).is_err());
    }

    #[test]
    fn lefschetz_on_ci() {
        let a = ArtinianAlgebra::from_ideal(&parse_ideal(r3(), "x^2, y^2, z^2").unwrap()).unwrap();
        let rep = a.strong_lefschetz(3, &mut rng_from_seed(11));
        assert!(rep.strong_lefschetz);
        assert_eq!(rep.generic.parts, vec![4, 2, 2]);
    }
}
