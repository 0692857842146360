//! Graded Betti numbers as dimensions of Koszul homology of `A`.
//!
//! The Koszul complex `Λ^i(k^r) ⊗ A` is graded so that `e_S ⊗ a` with
//! `|S| = i`, `a ∈ A_{k−i}` lies in internal degree `k`, and
//! `∂(e_S ⊗ a) = Σ_t (−1)^t e_{S∖s_t} ⊗ x_{s_t} a`. Then
//! `β_{i,k} = C(r,i) h_{k−i} − rank ∂_{i,k} − rank ∂_{i+1,k}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::monomial::binomial;
use crate::ring::{GradedIdeal, GradedQuotient};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BettiTable {
    r: usize,
    entries: BTreeMap<(usize, usize), usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct BettiEntry {
    i: usize,
    k: usize,
    b: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct BettiJson {
    r: usize,
    entries: Vec<BettiEntry>,
    #[serde(default)]
    display: Vec<Vec<usize>>,
}

impl BettiTable {
    pub fn new(r: usize) -> Self {
        BettiTable {
            r,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a table from `(i, k, β_{i,k})` triples; zeros are dropped.
    pub fn from_entries(r: usize, entries: &[(usize, usize, usize)]) -> Self {
        let mut t = BettiTable::new(r);
        for &(i, k, b) in entries {
            t.set(i, k, b);
        }
        t
    }

    /// Builds a table from display rows: `rows[d][i] = β_{i,i+d}`.
    pub fn from_display(r: usize, rows: &[Vec<usize>]) -> Self {
        let mut t = BettiTable::new(r);
        for (d, row) in rows.iter().enumerate() {
            for (i, &b) in row.iter().enumerate() {
                t.set(i, i + d, b);
            }
        }
        t
    }

    pub fn num_vars(&self) -> usize {
        self.r
    }

    pub fn get(&self, i: usize, k: usize) -> usize {
        self.entries.get(&(i, k)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, k: usize, b: usize) {
        if b == 0 {
            self.entries.remove(&(i, k));
        } else {
            self.entries.insert((i, k), b);
        }
    }

    /// Nonzero entries `((i, k), β_{i,k})` in increasing order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.entries.iter().map(|(&key, &b)| (key, b))
    }

    pub fn totals(&self) -> Vec<usize> {
        let mut t = vec![0; self.r + 1];
        for (&(i, _), &b) in &self.entries {
            t[i] += b;
        }
        t
    }

    /// `rows[d][i] = β_{i,i+d}`, rows up to the last nonzero one.
    pub fn display_rows(&self) -> Vec<Vec<usize>> {
        let nrows = self
            .entries
            .keys()
            .map(|&(i, k)| k - i + 1)
            .max()
            .unwrap_or(0);
        let mut rows = vec![vec![0; self.r + 1]; nrows];
        for (&(i, k), &b) in &self.entries {
            rows[k - i][i] = b;
        }
        rows
    }

    /// Coefficients of `Σ (−1)^i β_{i,k} t^k`.
    pub fn euler_polynomial(&self) -> Vec<i64> {
        let len = self.entries.keys().map(|&(_, k)| k + 1).max().unwrap_or(0);
        let mut out = vec![0i64; len];
        for (&(i, k), &b) in &self.entries {
            let s = if i % 2 == 0 { 1 } else { -1 };
            out[k] += s * b as i64;
        }
        out
    }

    /// Checks `Σ(−1)^i β_{i,k} t^k = H(t)(1−t)^r` in degrees `≤ kmax`, where
    /// `h` holds `h_0..h_kmax` (missing values count as zero).
    pub fn euler_identity_holds(&self, h: &[usize], kmax: usize) -> bool {
        let lhs = self.euler_polynomial();
        (0..=kmax).all(|k| {
            let rhs: i64 = (0..=self.r.min(k))
                .map(|m| {
                    let s = if m % 2 == 0 { 1 } else { -1 };
                    s * binomial(self.r, m) as i64 * h.get(k - m).copied().unwrap_or(0) as i64
                })
                .sum();
            lhs.get(k).copied().unwrap_or(0) == rhs
        }) && lhs.len() <= kmax + 1
    }

    /// Level in the Betti sense: the last module sits in the single degree
    /// `j + r`.
    pub fn is_level(&self, j: usize) -> bool {
        self.entries
            .iter()
            .filter(|(&(i, _), _)| i == self.r)
            .all(|(&(_, k), _)| k == j + self.r)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = BettiJson {
            r: self.r,
            entries: self
                .entries
                .iter()
                .map(|(&(i, k), &b)| BettiEntry { i, k, b })
                .collect(),
            display: self.display_rows(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let j: BettiJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidArgument(format!("Betti JSON: {e}")))?;
        let t = BettiTable::from_entries(
            j.r,
            &j.entries
                .iter()
                .map(|e| (e.i, e.k, e.b))
                .collect::<Vec<_>>(),
        );
        if !j.display.is_empty() && t.display_rows() != j.display {
            return Err(Error::InvalidArgument(
                "Betti JSON display disagrees with entries".into(),
            ));
        }
        Ok(t)
    }

    /// Text rendering with a `total:` line and rows `d:` holding
    /// `β_{i,i+d}`; zeros print as `-`.
    pub fn render(&self) -> String {
        let rows = self.display_rows();
        let totals = self.totals();
        let cells = |v: &[usize], dash: bool| -> String {
            v.iter()
                .map(|&b| {
                    if b == 0 && dash {
                        format!("{:>4}", "-")
                    } else {
                        format!("{b:>4}")
                    }
                })
                .collect()
        };
        let mut out = format!("{:>7}{}\n", "total:", cells(&totals, false));
        for (d, row) in rows.iter().enumerate() {
            out.push_str(&format!("{:>7}{}\n", format!("{d}:"), cells(row, true)));
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Subsets of `{0..r}` of size `i` as sorted index lists, with a lookup by
/// bitmask.
fn subsets(r: usize, i: usize) -> (Vec<Vec<usize>>, BTreeMap<u32, usize>) {
    let mut list = Vec::new();
    for mask in 0u32..(1 << r) {
        if mask.count_ones() as usize == i {
            list.push((0..r).filter(|&b| mask & (1 << b) != 0).collect::<Vec<_>>());
        }
    }
    let index = list
        .iter()
        .enumerate()
        .map(|(n, s)| (s.iter().fold(0u32, |m, &b| m | (1 << b)), n))
        .collect();
    (list, index)
}

/// Matrix of `∂_{i,k} : Λ^i ⊗ A_{k−i} → Λ^{i−1} ⊗ A_{k−i+1}`.
fn koszul_differential(q: &GradedQuotient, i: usize, k: usize) -> Matrix {
    let r = q.ring().nvars;
    let field = q.ring().field;
    let d = k - i;
    let (h_src, h_dst) = (q.dim(d), q.dim(d + 1));
    let (src, _) = subsets(r, i);
    let (_, dst_index) = subsets(r, i - 1);
    let mut m = Matrix::zeros(field, dst_index.len() * h_dst, src.len() * h_src);
    if h_src == 0 || h_dst == 0 {
        return m;
    }
    for (sn, s) in src.iter().enumerate() {
        let mask = s.iter().fold(0u32, |m, &b| m | (1 << b));
        for (t, &var) in s.iter().enumerate() {
            let Some(mult) = q.multiplication_ref(d, var) else {
                continue;
            };
            let target = dst_index[&(mask & !(1 << var))];
            let sign_neg = t % 2 == 1;
            for a in 0..h_src {
                for b in 0..h_dst {
                    let v = mult.get(b, a);
                    if v != 0 {
                        let v = if sign_neg { field.neg(v) } else { v };
                        m.set(target * h_dst + b, sn * h_src + a, v);
                    }
                }
            }
        }
    }
    m
}

/// Betti table of `A` from Koszul homology in internal degrees `≤ kmax`.
/// Artinian quotients need `kmax ≥ j + r`; otherwise `A` must be stored
/// through degree `kmax`.
pub fn betti_table(q: &GradedQuotient, kmax: usize) -> Result<BettiTable> {
    let r = q.ring().nvars;
    if q.is_artinian() {
        let need = q.socle_degree() + r;
        if kmax < need {
            return Err(Error::DegreeTooSmall(
                kmax,
                format!("Koszul homology is nonzero up to degree {need}"),
            ));
        }
    } else if q.top_degree() < kmax {
        return Err(Error::DegreeTooSmall(
            kmax,
            format!("quotient stored only through degree {}", q.top_degree()),
        ));
    }
    let kmax = if q.is_artinian() {
        kmax.min(q.socle_degree() + r)
    } else {
        kmax
    };
    // rank ∂_{i,k} for 1 ≤ i ≤ r, i ≤ k ≤ kmax
    let jobs: Vec<(usize, usize)> = (1..=r)
        .flat_map(|i| (i..=kmax).map(move |k| (i, k)))
        .filter(|&(i, k)| q.stored_dim(k - i).is_some_and(|h| h > 0))
        .collect();
    let ranks: BTreeMap<(usize, usize), usize> = jobs
        .par_iter()
        .map(|&(i, k)| ((i, k), koszul_differential(q, i, k).rank()))
        .collect();
    let rank = |i: usize, k: usize| ranks.get(&(i, k)).copied().unwrap_or(0);
    let mut table = BettiTable::new(r);
    for i in 0..=r {
        for k in i..=kmax {
            let dim = binomial(r, i) as usize * q.stored_dim(k - i).unwrap_or(0);
            if dim == 0 {
                continue;
            }
            let b = dim - rank(i, k) - rank(i + 1, k);
            table.set(i, k, b);
        }
    }
    Ok(table)
}

/// Betti table of an Artinian `R/I`.
pub fn betti_table_artinian(ideal: &GradedIdeal) -> Result<BettiTable> {
    let q = GradedQuotient::artinian_from_ideal(ideal)?;
    betti_table(&q, q.socle_degree() + q.ring().nvars)
}

/// Betti table of a non-Artinian `R/I` whose Hilbert function stabilizes
/// within `probe` degrees: `kmax = L + r + 2` with `L` the last degree where
/// `ΔH ≠ 0`, confirmed by recomputing at `kmax + 2`.
pub fn betti_table_stable(ideal: &GradedIdeal, probe: usize) -> Result<(BettiTable, usize)> {
    let r = ideal.ring().nvars;
    let h = ideal.hilbert_function(probe);
    if h.artinian {
        return Ok((betti_table_artinian(ideal)?, 0));
    }
    if h.stabilized_value.is_none() {
        return Err(Error::DegreeTooSmall(
            probe,
            "Hilbert function has not stabilized".into(),
        ));
    }
    let last = h.first_difference().len().saturating_sub(1);
    let kmax = last + r + 2;
    let q = GradedQuotient::from_ideal(ideal, kmax + 2);
    let t1 = betti_table(&q, kmax)?;
    let t2 = betti_table(&q, kmax + 2)?;
    if t1 != t2 {
        return Err(Error::DegreeTooSmall(
            kmax,
            "Betti table changed when the degree bound was raised".into(),
        ));
    }
    Ok((t1, kmax))
}

pub fn betti_leq(a: &BettiTable, b: &BettiTable) -> bool {
    a.r == b.r
        && a.entries
            .iter()
            .all(|(key, &v)| v <= b.entries.get(key).copied().unwrap_or(0))
}

/// One consecutive cancellation: `β_{i0,k0}` and `β_{i0−1,k0}` each drop by 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cancellation {
    pub i: usize,
    pub k: usize,
}

/// Steps turning `from` into `to`, or `None` when no sequence of
/// consecutive cancellations does.
pub fn cancellation_path(from: &BettiTable, to: &BettiTable) -> Option<Vec<Cancellation>> {
    if from.r != to.r || !betti_leq(to, from) {
        return None;
    }
    let r = from.r;
    let degrees: BTreeSet<usize> = from.entries.keys().map(|&(_, k)| k).collect();
    let mut steps = Vec::new();
    for k in degrees {
        let d: Vec<i64> = (0..=r)
            .map(|i| from.get(i, k) as i64 - to.get(i, k) as i64)
            .collect();
        // c_i cancellations at (i, k): d_0 = c_1, d_i = c_i + c_{i+1}, d_r = c_r
        let mut c = vec![0i64; r + 2];
        c[1] = d[0];
        for i in 1..r {
            c[i + 1] = d[i] - c[i];
        }
        if c.iter().any(|&v| v < 0) || d[r] != c[r] {
            return None;
        }
        for (i, &n) in c.iter().enumerate().skip(1).take(r) {
            steps.extend(std::iter::repeat_n(Cancellation { i, k }, n as usize));
        }
    }
    Some(steps)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelMinima {
    pub level: Vec<bool>,
    /// Indices (into the input) of poset-minimal level tables.
    pub minima: Vec<usize>,
}

pub fn level_betti_minima(tables: &[BettiTable], j: usize) -> LevelMinima {
    let level: Vec<bool> = tables.iter().map(|t| t.is_level(j)).collect();
    let minima = (0..tables.len())
        .filter(|&a| level[a])
        .filter(|&a| {
            !(0..tables.len())
                .any(|b| level[b] && tables[b] != tables[a] && betti_leq(&tables[b], &tables[a]))
        })
        .collect();
    LevelMinima { level, minima }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::ring::{parse_ideal, Ring};

    fn r3() -> Ring {
        Ring::new(3, PrimeField::new(32003).unwrap())
    }

    #[test]
    fn complete_intersection_koszul() {
        let i = parse_ideal(r3(), "x^2, y^2, z^2").unwrap();
        let t = betti_table_artinian(&i).unwrap();
        assert_eq!(t.totals(), vec![1, 3, 3, 1]);
        assert_eq!(t.get(1, 2), 3);
        assert_eq!(t.get(2, 4), 3);
        assert_eq!(t.get(3, 6), 1);
    }

    #[test]
    fn euler_identity_for_truncated_ci() {
        let i = parse_ideal(r3(), "x^2, y^2 + m^4").unwrap();
        let q = GradedQuotient::artinian_from_ideal(&i).unwrap();
        let t = betti_table(&q, 6).unwrap();
        assert!(t.euler_identity_holds(&q.hilbert_function().values, 8));
    }

    #[test]
    fn small_kmax_rejected() {
        let i = parse_ideal(r3(), "x^2, y^2 + m^4").unwrap();
        let q = GradedQuotient::artinian_from_ideal(&i).unwrap();
        assert!(matches!(betti_table(&q, 5), Err(Error::DegreeTooSmall(..))));
    }

    #[test]
    fn path_examples() {
        let a = BettiTable::from_entries(3, &[(0, 0, 1), (1, 3, 1), (2, 3, 1)]);
        let b = BettiTable::from_entries(3, &[(0, 0, 1)]);
        assert_eq!(
            cancellation_path(&a, &b),
            Some(vec![Cancellation { i: 2, k: 3 }])
        );
        assert_eq!(cancellation_path(&a, &a), Some(vec![]));
        let c = BettiTable::from_entries(3, &[(0, 0, 1), (1, 3, 1)]);
        assert_eq!(cancellation_path(&c, &b), None);
    }

    #[test]
    fn json_round_trip() {
        let t = BettiTable::from_entries(3, &[(0, 0, 1), (1, 2, 2), (2, 4, 1)]);
        let v = t.to_json();
        assert_eq!(BettiTable::from_json(&v).unwrap(), t);
        assert_eq!(v["display"][1], serde_json::json!([0, 2, 0, 0]));
    }
}
