//! Experimental pipeline building a type-three level algebra with Hilbert
//! function `H(c)` from three Gorenstein quotients through point sets.
//!
//! `U` is a subset of `CI(a, 2c − a) ∪ CI(c − a, c − a)` in P² with `N`
//! points. It is split into three parts of near-equal size, each with the
//! generic Hilbert function. A random dual generator of degree `2c − 1`
//! orthogonal to each part's ideal gives a Gorenstein ideal. The level
//! algebra is the quotient by their intersection, which equals the
//! annihilator of the three generators.

use rand::seq::SliceRandom;
use serde::Serialize;

use super::series::{h_of_c, min_admissible_gcd_degree, r};
use crate::apolarity::{annihilator, DualForm, DualSubspace, RETRY_BUDGET};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{Matrix, Subspace};
use crate::points::PointSet;
use crate::ring::Ring;
use crate::rng::{random_element, random_vector, rng_from_seed, sub_seed, LabRng};

/// Shuffles tried when looking for a partition with generic parts.
pub const PARTITION_ATTEMPTS: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub c: u64,
    pub a: u64,
    /// `N = max_i H(c)_i`
    pub n: usize,
    /// `3 r_a − 3`, for `a > 0`
    pub bound: Option<u64>,
    pub inequality_holds: Option<bool>,
    /// Hilbert function of `U` through degree `2c − 1`.
    pub point_hilbert: Vec<usize>,
    pub part_sizes: Vec<usize>,
    pub gorenstein: Vec<Vec<usize>>,
    /// `min{r_i, |U_ℓ|, r_{2c−1−i}}` per part.
    pub gorenstein_expected: Vec<Vec<usize>>,
    pub hilbert: Vec<usize>,
    pub expected: Vec<usize>,
    pub matches: bool,
    pub partition_attempts: usize,
    pub gorenstein_attempts: usize,
}

fn distinct_elements(field: PrimeField, n: usize, rng: &mut LabRng) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(n);
    while out.len() < n {
        let v = random_element(field, rng);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Grid complete intersection `∏(x − α_i z) = ∏(y − β_j z) = 0`.
fn grid(field: PrimeField, rows: usize, cols: usize, rng: &mut LabRng) -> Vec<Vec<u64>> {
    let xs = distinct_elements(field, rows, rng);
    let ys = distinct_elements(field, cols, rng);
    xs.iter()
        .flat_map(|&x| ys.iter().map(move |&y| vec![x, y, 1]))
        .collect()
}

fn generic_hilbert(m: usize, dmax: usize) -> Vec<usize> {
    (0..=dmax).map(|i| (r(i as i64) as usize).min(m)).collect()
}

/// Sizes `s_1 ≤ s_2 ≤ s_3 ≤ s_1 + 1` summing to `n`.
fn balanced(n: usize) -> [usize; 3] {
    let q = n / 3;
    let extra = n % 3;
    [q, q + usize::from(extra >= 2), q + usize::from(extra >= 1)]
}

pub fn verify_partition_construction(
    c: u64,
    a: u64,
    field: PrimeField,
    seed: u64,
) -> Result<PartitionReport> {
    let expected_u64 = h_of_c(c)?;
    if a >= c || (a != 0 && a < min_admissible_gcd_degree(c)) {
        return Err(Error::InvalidArgument(format!(
            "a = {a} is outside the admissible range for c = {c}"
        )));
    }
    let expected: Vec<usize> = expected_u64.iter().map(|&v| v as usize).collect();
    let j = (2 * c - 1) as usize;
    let n = *expected.iter().max().unwrap();
    let ring = Ring::new(3, field);
    let mut rng = rng_from_seed(seed);

    let (ci, ai) = (c as usize, a as usize);
    let w_all = grid(field, ci - ai, ci - ai, &mut rng);
    let v_all = if a > 0 {
        grid(field, ai, 2 * ci - ai, &mut rng)
    } else {
        Vec::new()
    };
    let w_count = w_all.len().min(n);
    let v_count = n - w_count;
    if v_count > v_all.len() {
        return Err(Error::InvalidArgument(format!(
            "need {v_count} points from CI({a}, {}), which has {}",
            2 * c - a,
            v_all.len()
        )));
    }
    // random projective frame so that no coordinate line is special
    let frame = loop {
        let m = Matrix::from_vec(field, 3, 3, random_vector(field, 9, &mut rng));
        if m.rank() == 3 {
            break m;
        }
    };

    // partition search
    let mut chosen = None;
    let mut attempts = 0;
    for _ in 0..PARTITION_ATTEMPTS {
        attempts += 1;
        let mut w = w_all.clone();
        let mut v = v_all.clone();
        w.shuffle(&mut rng);
        v.shuffle(&mut rng);
        w.truncate(w_count);
        v.truncate(v_count);
        let ws = balanced(w.len());
        let mut vs = balanced(v.len());
        vs.reverse();
        let (mut wi, mut vi) = (0, 0);
        let mut parts = Vec::with_capacity(3);
        for l in 0..3 {
            let mut part: Vec<Vec<u64>> = w[wi..wi + ws[l]].to_vec();
            part.extend_from_slice(&v[vi..vi + vs[l]]);
            wi += ws[l];
            vi += vs[l];
            let part: Vec<Vec<u64>> = part.iter().map(|p| frame.mul_vec(p)).collect();
            parts.push(PointSet::new(field, 2, part)?);
        }
        let generic = parts
            .iter()
            .all(|u| u.hilbert_function(j).values == generic_hilbert(u.len(), j));
        if generic {
            chosen = Some(parts);
            break;
        }
    }
    let parts = chosen.ok_or_else(|| Error::RetriesExhausted {
        attempts: PARTITION_ATTEMPTS,
        stage: "partition into parts with generic Hilbert functions".into(),
    })?;
    let all_points: Vec<Vec<u64>> = parts.iter().flat_map(|u| u.points().to_vec()).collect();
    let union = PointSet::new(field, 2, all_points)?;
    let point_hilbert = union.hilbert_function(j).values;

    // perps of the parts' degree-j ideal pieces
    let perps: Vec<DualSubspace> = parts
        .iter()
        .map(|u| {
            let kernel = u.evaluation_matrix(j).kernel();
            let piece = Subspace::span(field, ring.dim(j), &kernel).expect("kernel width");
            DualSubspace::perp_of(ring, j, &piece)
        })
        .collect();
    let gorenstein_expected: Vec<Vec<usize>> = parts
        .iter()
        .map(|u| {
            (0..=j)
                .map(|i| {
                    (r(i as i64) as usize)
                        .min(u.len())
                        .min(r((j - i) as i64) as usize)
                })
                .collect()
        })
        .collect();

    let mut last = None;
    for attempt in 0..RETRY_BUDGET {
        let mut grng = rng_from_seed(sub_seed(seed, 1 + attempt as u64));
        let gens: Vec<DualForm> = perps
            .iter()
            .map(|p| p.random_subspace(1, &mut grng).map(|mut v| v.remove(0)))
            .collect::<Result<_>>()?;
        let gorenstein: Vec<Vec<usize>> = gens
            .iter()
            .map(|w| annihilator(ring, std::slice::from_ref(w)).map(|g| g.hilbert_values()))
            .collect::<Result<_>>()?;
        let hilbert = annihilator(ring, &gens)?.hilbert_values();
        let matches = hilbert == expected;
        let bound = (a > 0).then(|| 3 * r(a as i64) - 3);
        let report = PartitionReport {
            c,
            a,
            n,
            bound,
            inequality_holds: bound.map(|b| n as u64 <= b),
            point_hilbert: point_hilbert.clone(),
            part_sizes: parts.iter().map(PointSet::len).collect(),
            gorenstein,
            gorenstein_expected: gorenstein_expected.clone(),
            hilbert,
            expected: expected.clone(),
            matches,
            partition_attempts: attempts,
            gorenstein_attempts: attempt + 1,
        };
        if matches && report.gorenstein == report.gorenstein_expected {
            return Ok(report);
        }
        last = Some(report);
    }
    Ok(last.unwrap())
}
