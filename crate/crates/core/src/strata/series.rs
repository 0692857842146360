//! Closed forms for the type-three series `H(c)` of socle degree `2c − 1`.

use serde::Serialize;

use crate::error::{Error, Result};

/// `r_i = dim k[x,y,z]_i`, zero for negative `i`.
pub fn r(i: i64) -> u64 {
    if i < 0 {
        0
    } else {
        let i = i as u64;
        (i + 1) * (i + 2) / 2
    }
}

fn check_c(c: u64) -> Result<()> {
    if c < 3 {
        return Err(Error::InvalidArgument(format!(
            "c must be at least 3, got {c}"
        )));
    }
    Ok(())
}

/// `H(c)_i = min{r_i − 2 r_{i−c}, 3 r_{2c−1−i}}` for `0 ≤ i ≤ 2c − 1`.
pub fn h_of_c(c: u64) -> Result<Vec<u64>> {
    check_c(c)?;
    let c = c as i64;
    Ok((0..2 * c)
        .map(|i| (r(i) - 2 * r(i - c)).min(3 * r(2 * c - 1 - i)))
        .collect())
}

/// `α(c) = 2c − sqrt((c² − 1)/2)`.
pub fn alpha(c: u64) -> Result<f64> {
    check_c(c)?;
    let c = c as f64;
    Ok(2.0 * c - ((c * c - 1.0) / 2.0).sqrt())
}

/// Smallest `a` with `a² ≥ (c² − 1)/2`, i.e. `2a² ≥ c² − 1`.
pub fn min_admissible_gcd_degree(c: u64) -> u64 {
    let target = c * c - 1;
    let mut a = (((target / 2) as f64).sqrt() as u64).saturating_sub(1);
    while 2 * a * a < target {
        a += 1;
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeriesDimensions {
    pub c: u64,
    pub a: u64,
    /// `dim G(c)_a`
    pub stratum: u64,
    /// Dimension of the component dominating `G(c)_a`; `None` when `a` is
    /// outside the admissible range.
    pub component: Option<u64>,
}

pub fn series_dimensions(c: u64, a: u64) -> Result<SeriesDimensions> {
    check_c(c)?;
    if a >= c {
        return Err(Error::InvalidArgument(format!(
            "need a < c, got a = {a}, c = {c}"
        )));
    }
    let (ci, ai) = (c as i64, a as i64);
    let stratum = if a == 0 {
        2 * (r(ci) - 2)
    } else {
        r(ai) + 2 * r(ci - ai) - 5
    };
    let component = if a == 0 {
        Some(4 * c * c + 3 * c - 11)
    } else if a >= min_admissible_gcd_degree(c) {
        Some(4 * c * c + 3 * c - 12 + (c - a) * (c - a))
    } else {
        None
    };
    Ok(SeriesDimensions {
        c,
        a,
        stratum,
        component,
    })
}

/// `c + 1 − ⌈sqrt((c² − 1)/2)⌉`.
pub fn component_count(c: u64) -> Result<u64> {
    check_c(c)?;
    Ok(c + 1 - min_admissible_gcd_degree(c))
}

/// `(c, d)` with `c² − 2d² = 1` and `3 ≤ c ≤ limit`, read off the odd-index
/// convergents `p_k/q_k` of `sqrt 2`.
pub fn pell_alphas(limit: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    // p_0/q_0 = 1/1, p_{k+1} = p_k + 2 q_k, q_{k+1} = p_k + q_k
    let (mut p, mut q) = (1u64, 1u64);
    for k in 1.. {
        let (np, nq) = (p + 2 * q, p + q);
        p = np;
        q = nq;
        if p > limit {
            break;
        }
        if k % 2 == 1 && p >= 3 {
            out.push((p, q));
        }
    }
    out
}

/// Series summary for `c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesData {
    pub c: u64,
    pub hilbert: Vec<u64>,
    pub alpha: f64,
    pub alpha_integral: bool,
    pub min_gcd_degree: u64,
    pub component_count: u64,
    pub dimensions: Vec<SeriesDimensions>,
}

pub fn series_data(c: u64) -> Result<SeriesData> {
    let a_min = min_admissible_gcd_degree(c);
    let alpha_integral = {
        let t = c * c - 1;
        t.is_multiple_of(2) && a_min * a_min * 2 == t
    };
    let mut dimensions = vec![series_dimensions(c, 0)?];
    for a in a_min.max(1)..c {
        dimensions.push(series_dimensions(c, a)?);
    }
    Ok(SeriesData {
        c,
        hilbert: h_of_c(c)?,
        alpha: alpha(c)?,
        alpha_integral,
        min_gcd_degree: a_min,
        component_count: component_count(c)?,
        dimensions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(h_of_c(3).unwrap(), vec![1, 3, 6, 8, 9, 3]);
        assert_eq!(min_admissible_gcd_degree(3), 2);
        assert_eq!(min_admissible_gcd_degree(7), 5);
        assert!(h_of_c(2).is_err());
    }

    #[test]
    fn out_of_range_component() {
        let d = series_dimensions(7, 2).unwrap();
        assert_eq!(d.component, None);
        assert_eq!(d.stratum, r(2) + 2 * r(5) - 5);
        assert!(series_dimensions(3, 3).is_err());
    }

    #[test]
    fn integral_alpha_flag() {
        assert!(series_data(3).unwrap().alpha_integral);
        assert!(!series_data(4).unwrap().alpha_integral);
        assert_eq!(alpha(17).unwrap(), 22.0);
    }
}
