//! Reduced point configurations in P² and P³ over GF(p).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::apolarity::RETRY_BUDGET;
use crate::artinian::ArtinianAlgebra;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{Matrix, Subspace};
use crate::ring::form::monomial_value;
use crate::ring::monomial::monomial_basis;
use crate::ring::{Form, GradedIdeal, GradedQuotient, HilbertFunction, Ring};
use crate::rng::{random_element, random_nonzero, random_vector, rng_from_seed, sub_seed, LabRng};
use crate::univariate;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    field: PrimeField,
    dim: usize,
    points: Vec<Vec<u64>>,
}

/// Scales so that the first nonzero coordinate is 1; `None` for zero.
pub fn normalize_point(field: PrimeField, p: &[u64]) -> Option<Vec<u64>> {
    let lead = p.iter().copied().find(|&c| field.reduce(c) != 0)?;
    let inv = field.inv(field.reduce(lead));
    Some(p.iter().map(|&c| field.mul(field.reduce(c), inv)).collect())
}

impl PointSet {
    pub fn new(field: PrimeField, dim: usize, points: Vec<Vec<u64>>) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::InvalidArgument(format!(
                "points live in P^2 or P^3, not P^{dim}"
            )));
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(points.len());
        for p in points {
            if p.len() != dim + 1 {
                return Err(Error::DimensionMismatch {
                    left: dim + 1,
                    right: p.len(),
                });
            }
            let q = normalize_point(field, &p)
                .ok_or_else(|| Error::InvalidArgument("zero vector is not a point".into()))?;
            if !seen.insert(q.clone()) {
                return Err(Error::InvalidArgument(format!("repeated point {q:?}")));
            }
            out.push(q);
        }
        if out.is_empty() {
            return Err(Error::InvalidArgument("empty point set".into()));
        }
        Ok(PointSet {
            field,
            dim,
            points: out,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }
    pub fn points(&self) -> &[Vec<u64>] {
        &self.points
    }
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
    pub fn ring(&self) -> Ring {
        Ring::new(self.dim + 1, self.field)
    }

    /// `points × monomials` values in degree `d`.
    pub fn evaluation_matrix(&self, d: usize) -> Matrix {
        let basis = monomial_basis(self.dim + 1, d);
        let rows: Vec<Vec<u64>> = self
            .points
            .iter()
            .map(|p| {
                basis
                    .monomials()
                    .iter()
                    .map(|m| monomial_value(self.field, m, p))
                    .collect()
            })
            .collect();
        Matrix::from_rows(self.field, basis.len(), &rows)
    }

    /// First degree `σ` with `T(σ) = |Z|`.
    pub fn stabilization_degree(&self) -> usize {
        (0..)
            .find(|&d| self.evaluation_matrix(d).rank() == self.len())
            .unwrap()
    }

    /// Coordinate ring `S/I_Z` through degree `dmax`.
    pub fn quotient(&self, dmax: usize) -> GradedQuotient {
        let rels = (0..=dmax).map(|d| self.evaluation_matrix(d)).collect();
        GradedQuotient::from_relations(self.ring(), rels).expect("evaluation widths")
    }

    pub fn hilbert_function(&self, dmax: usize) -> HilbertFunction {
        HilbertFunction::from_values(
            (0..=dmax)
                .map(|d| self.evaluation_matrix(d).rank())
                .collect(),
        )
    }

    /// `ΔT` of the postulation.
    pub fn h_vector(&self) -> Vec<usize> {
        let s = self.stabilization_degree();
        self.hilbert_function(s + 1).first_difference()
    }

    /// `I_Z` from evaluation kernels through `dmax`. Minimal generators sit
    /// in degrees `≤ σ + 1`, so `dmax` must reach that.
    pub fn ideal(&self, dmax: usize) -> Result<GradedIdeal> {
        let h = self.hilbert_function(dmax);
        let stable = dmax >= 1 && h.values[dmax - 1] == self.len() && h.values[dmax] == self.len();
        if !stable {
            return Err(Error::DegreeTooSmall(
                dmax,
                format!("postulation {:?} has not reached {}", h.values, self.len()),
            ));
        }
        let ring = self.ring();
        let pieces = (0..=dmax)
            .map(|d| {
                let m = self.evaluation_matrix(d);
                Subspace::span(self.field, ring.dim(d), &m.kernel()).expect("kernel width")
            })
            .collect();
        GradedIdeal::from_pieces(ring, pieces, None)
    }

    /// `I_Z` with the degree bound chosen from the stabilization degree.
    pub fn ideal_auto(&self) -> Result<GradedIdeal> {
        self.ideal(self.stabilization_degree() + 2)
    }

    /// Quotient by a linear form not vanishing on `Z`, realized by solving
    /// `ℓ = 0` for one variable and substituting into the generators.
    pub fn artinian_reduction(&self, l: &Form) -> Result<ArtinianAlgebra> {
        let ring = self.ring();
        ring.check_same(&l.ring())?;
        if l.degree() != 1 || l.is_zero() {
            return Err(Error::InvalidArgument(
                "reduction needs a nonzero linear form".into(),
            ));
        }
        if self.points.iter().any(|p| l.evaluate(p) == 0) {
            return Err(Error::DegenerateLinearForm);
        }
        let ideal = self.ideal_auto()?;
        let f = self.field;
        let lin: Vec<u64> = (0..ring.nvars)
            .map(|k| l.coeff_of(&crate::ring::Monomial::variable(ring.nvars, k)))
            .collect();
        let k = lin.iter().rposition(|&c| c != 0).unwrap();
        let target = Ring::new(ring.nvars - 1, f);
        let inv = f.inv(lin[k]);
        let mut images = Vec::with_capacity(ring.nvars);
        let mut next = 0;
        for i in 0..ring.nvars {
            if i == k {
                let coeffs: Vec<u64> = (0..ring.nvars)
                    .filter(|&m| m != k)
                    .map(|m| f.neg(f.mul(lin[m], inv)))
                    .collect();
                images.push(Form::linear(target, &coeffs));
            } else {
                images.push(Form::variable(target, next));
                next += 1;
            }
        }
        ArtinianAlgebra::from_ideal(&ideal.transform(&images)?)
    }

    /// A random linear form not vanishing on `Z`.
    pub fn random_reduction<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<ArtinianAlgebra> {
        let ring = self.ring();
        for _ in 0..RETRY_BUDGET {
            let l = Form::linear(ring, &random_vector(self.field, ring.nvars, rng));
            match self.artinian_reduction(&l) {
                Err(Error::DegenerateLinearForm) | Err(Error::InvalidArgument(_)) => continue,
                other => return other,
            }
        }
        Err(Error::RetriesExhausted {
            attempts: RETRY_BUDGET,
            stage: "linear form avoiding the points".into(),
        })
    }

    pub fn to_file_string(&self) -> String {
        let mut s = format!("p={} dim={}\n", self.field.modulus(), self.dim);
        for p in &self.points {
            let line: Vec<String> = p.iter().map(|c| c.to_string()).collect();
            s.push_str(&line.join(","));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_file_string())
    }
}

impl FromStr for PointSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse {
            token: "<empty>".into(),
            message: "missing header".into(),
        })?;
        let (mut p, mut dim) = (None, None);
        for part in header.split_whitespace() {
            let bad = || Error::Parse {
                token: part.to_string(),
                message: "expected `p=<prime>` or `dim=<2|3>`".into(),
            };
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            let value: u64 = value.parse().map_err(|_| bad())?;
            match key {
                "p" => p = Some(value),
                "dim" => dim = Some(value as usize),
                _ => return Err(bad()),
            }
        }
        let field = PrimeField::new(p.ok_or_else(|| Error::Parse {
            token: header.to_string(),
            message: "header lacks p=".into(),
        })?)?;
        let dim = dim.ok_or_else(|| Error::Parse {
            token: header.to_string(),
            message: "header lacks dim=".into(),
        })?;
        let points = lines
            .map(|line| {
                line.split(',')
                    .map(|t| {
                        t.trim().parse::<u64>().map_err(|_| Error::Parse {
                            token: t.trim().to_string(),
                            message: "expected a coordinate".into(),
                        })
                    })
                    .collect::<Result<Vec<u64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(field, dim, points)
    }
}

/// Restriction of a form to the slice `x_0 = a`, `x_last = 1`, as a table
/// `c[e1][e2]` of the two remaining variables (P³) or `c[e1][0]` (P²).
fn slice_table(f: &Form, a: u64) -> Vec<Vec<u64>> {
    let field = f.ring().field;
    let d = f.degree();
    let mut table = vec![vec![0u64; d + 1]; d + 1];
    for (c, m) in f.terms() {
        let e = &m.0;
        let v = field.mul(c, field.pow(a, e[0] as u64));
        let (e1, e2) = if e.len() == 4 {
            (e[1], e[2])
        } else {
            (e[1], 0)
        };
        table[e1 as usize][e2 as usize] = field.add(table[e1 as usize][e2 as usize], v);
    }
    table
}

/// Univariate polynomial in the last free variable after fixing `y`.
fn specialize(field: PrimeField, table: &[Vec<u64>], y: u64) -> Vec<u64> {
    let n = table.len();
    let mut out = vec![0u64; n];
    for (e2, slot) in out.iter_mut().enumerate() {
        let mut acc = 0;
        for e1 in (0..n).rev() {
            acc = field.add(field.mul(acc, y), table[e1][e2]);
        }
        *slot = acc;
    }
    univariate::trim(out)
}

/// `needed` distinct points on `{f = 0 for f in surfaces}`, found on random
/// slices `x = a` of the affine chart where the last coordinate is 1.
pub fn curve_points(surfaces: &[Form], needed: usize, seed: u64) -> Result<PointSet> {
    let Some(first) = surfaces.first() else {
        return Err(Error::InvalidArgument("no equations given".into()));
    };
    let ring = first.ring();
    let field = ring.field;
    let dim = ring.nvars - 1;
    if dim != 2 && dim != 3 {
        return Err(Error::InvalidArgument("curves live in P^2 or P^3".into()));
    }
    let mut rng = rng_from_seed(seed);
    let mut found: BTreeSet<Vec<u64>> = BTreeSet::new();
    let budget = 64 + 16 * needed;
    for _ in 0..budget {
        if found.len() >= needed {
            break;
        }
        let a = random_element(field, &mut rng);
        let tables: Vec<Vec<Vec<u64>>> = surfaces.iter().map(|f| slice_table(f, a)).collect();
        if dim == 2 {
            // x = a, z = 1: one polynomial in y per equation
            let mut g: Vec<u64> = Vec::new();
            for t in &tables {
                let poly: Vec<u64> = univariate::trim(t.iter().map(|row| row[0]).collect());
                g = univariate::gcd(field, &g, &poly);
            }
            if g.is_empty() {
                continue;
            }
            for y in univariate::roots(field, &g, &mut rng) {
                found.insert(vec![a, y, 1]);
            }
        } else {
            for y in 0..field.modulus() {
                let mut g: Vec<u64> = Vec::new();
                for t in &tables {
                    g = univariate::gcd(field, &g, &specialize(field, t, y));
                    if univariate::degree(&g) == Some(0) {
                        break;
                    }
                }
                if g.is_empty() || univariate::degree(&g) == Some(0) {
                    continue;
                }
                for z in univariate::roots(field, &g, &mut rng) {
                    found.insert(vec![a, y, z, 1]);
                }
            }
        }
    }
    if found.len() < needed {
        return Err(Error::RetriesExhausted {
            attempts: budget,
            stage: format!("found {} of {needed} curve points", found.len()),
        });
    }
    // keep a seeded random subset of the right size
    let mut all: Vec<Vec<u64>> = found.into_iter().collect();
    for i in (1..all.len()).rev() {
        let j = rng.gen_range(0..=i);
        all.swap(i, j);
    }
    all.truncate(needed);
    all.sort();
    PointSet::new(field, dim, all)
}

/// The named configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ConfigurationKind {
    T1C1,
    T1C2,
    T1Da,
    T1Db,
    T1Dab,
    T2C1,
    T2C2,
}

impl ConfigurationKind {
    pub const ALL: [ConfigurationKind; 7] = [
        ConfigurationKind::T1C1,
        ConfigurationKind::T1C2,
        ConfigurationKind::T1Da,
        ConfigurationKind::T1Db,
        ConfigurationKind::T1Dab,
        ConfigurationKind::T2C1,
        ConfigurationKind::T2C2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConfigurationKind::T1C1 => "T1_C1",
            ConfigurationKind::T1C2 => "T1_C2",
            ConfigurationKind::T1Da => "T1_Da",
            ConfigurationKind::T1Db => "T1_Db",
            ConfigurationKind::T1Dab => "T1_Dab",
            ConfigurationKind::T2C1 => "T2_C1",
            ConfigurationKind::T2C2 => "T2_C2",
        }
    }

    /// Target h-vector.
    pub fn h_vector(self) -> &'static [usize] {
        match self {
            ConfigurationKind::T2C1 | ConfigurationKind::T2C2 => &[1, 3, 6, 8, 9, 3],
            _ => &[1, 3, 4, 4],
        }
    }
}

impl FromStr for ConfigurationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ConfigurationKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

impl fmt::Display for ConfigurationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn random_matrix(field: PrimeField, rows: usize, cols: usize, rng: &mut LabRng) -> Matrix {
    Matrix::from_vec(field, rows, cols, random_vector(field, rows * cols, rng))
}

fn embed(m: &Matrix, p: &[u64]) -> Vec<u64> {
    m.mul_vec(p)
}

/// A random point of P^n with nonzero last coordinate.
fn random_point(field: PrimeField, n: usize, rng: &mut LabRng) -> Vec<u64> {
    let mut p = random_vector(field, n, rng);
    p.push(1);
    p
}

/// Random form of degree `d` vanishing at the given points.
fn random_form_through(ring: Ring, d: usize, pts: &[Vec<u64>], rng: &mut LabRng) -> Form {
    let field = ring.field;
    let rows: Vec<Vec<u64>> = pts
        .iter()
        .map(|p| {
            monomial_basis(ring.nvars, d)
                .monomials()
                .iter()
                .map(|m| monomial_value(field, m, p))
                .collect()
        })
        .collect();
    let kernel = Matrix::from_rows(field, ring.dim(d), &rows).kernel();
    let mut coeffs = vec![0; ring.dim(d)];
    for v in &kernel {
        let c = random_element(field, rng);
        for (a, &b) in coeffs.iter_mut().zip(v) {
            *a = field.mul_add(*a, c, b);
        }
    }
    Form::from_coeffs(ring, d, coeffs).unwrap()
}

fn line_points(field: PrimeField, line: &Matrix, count: usize, rng: &mut LabRng) -> Vec<Vec<u64>> {
    (0..count)
        .map(|_| embed(line, &[random_element(field, rng), 1]))
        .collect()
}

pub fn configuration_attempt(
    kind: ConfigurationKind,
    field: PrimeField,
    seed: u64,
) -> Result<PointSet> {
    let mut rng = rng_from_seed(seed);
    let r4 = Ring::new(4, field);
    let r3 = Ring::new(3, field);
    let plane = random_matrix(field, 4, 3, &mut rng);
    let mut line = random_matrix(field, 4, 2, &mut rng);
    let pts: Vec<Vec<u64>> = match kind {
        ConfigurationKind::T1C1 | ConfigurationKind::T2C1 => {
            let (deg, n) = if kind == ConfigurationKind::T1C1 {
                (2, 12)
            } else {
                (3, 30)
            };
            let eqs = [
                Form::random(r4, deg, &mut rng),
                Form::random(r4, deg, &mut rng),
            ];
            return curve_points(&eqs, n, sub_seed(seed, 1));
        }
        ConfigurationKind::T1C2 => {
            let cubic = Form::random(r3, 3, &mut rng);
            let mut v: Vec<Vec<u64>> = curve_points(&[cubic], 9, sub_seed(seed, 1))?
                .points
                .iter()
                .map(|p| embed(&plane, p))
                .collect();
            v.extend(line_points(field, &line, 3, &mut rng));
            v
        }
        ConfigurationKind::T1Da | ConfigurationKind::T1Dab => {
            let p = random_point(field, 2, &mut rng);
            let cubic = random_form_through(r3, 3, std::slice::from_ref(&p), &mut rng);
            let on_cubic = curve_points(&[cubic], 10, sub_seed(seed, 1))?;
            let others: Vec<Vec<u64>> = on_cubic
                .points
                .iter()
                .filter(|q| **q != normalize_point(field, &p).unwrap())
                .cloned()
                .collect();
            let pp = embed(&plane, &p);
            let q = random_vector(field, 4, &mut rng);
            line = Matrix::from_rows(
                field,
                2,
                &(0..4).map(|i| vec![pp[i], q[i]]).collect::<Vec<_>>(),
            );
            // line points other than the plane point
            let on_line: Vec<Vec<u64>> = (0..3)
                .map(|_| embed(&line, &[random_element(field, &mut rng), 1]))
                .collect();
            let mut v: Vec<Vec<u64>> = if kind == ConfigurationKind::T1Da {
                others.iter().take(9).map(|c| embed(&plane, c)).collect()
            } else {
                let mut v = vec![pp];
                v.extend(others.iter().take(8).map(|c| embed(&plane, c)));
                v
            };
            v.extend(on_line);
            v
        }
        ConfigurationKind::T1Db => {
            let mut v: Vec<Vec<u64>> = (0..8)
                .map(|_| embed(&plane, &random_point(field, 2, &mut rng)))
                .collect();
            v.extend(line_points(field, &line, 4, &mut rng));
            v
        }
        ConfigurationKind::T2C2 => {
            let on_line = line_points(field, &line, 4, &mut rng);
            let quartic = random_form_through(r4, 4, &on_line, &mut rng);
            let quadric = Form::random(r4, 2, &mut rng);
            let mut v = curve_points(&[quadric, quartic], 26, sub_seed(seed, 1))?.points;
            v.extend(on_line);
            v
        }
    };
    PointSet::new(field, 3, pts)
}

/// Builds a named configuration and checks its h-vector, re-drawing with
/// sub-seeds up to the retry budget.
pub fn configuration(kind: ConfigurationKind, field: PrimeField, seed: u64) -> Result<PointSet> {
    for attempt in 0..RETRY_BUDGET {
        let s = sub_seed(seed, 1000 + attempt as u64);
        let Ok(z) = configuration_attempt(kind, field, s) else {
            continue;
        };
        if z.h_vector() == kind.h_vector() {
            return Ok(z);
        }
    }
    Err(Error::RetriesExhausted {
        attempts: RETRY_BUDGET,
        stage: format!("configuration {kind} with h-vector {:?}", kind.h_vector()),
    })
}

/// A random nonzero scalar, re-exported for configuration-style callers.
pub fn random_scalar(field: PrimeField, rng: &mut LabRng) -> u64 {
    random_nonzero(field, rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn single_point() {
        let z = PointSet::new(gf(), 3, vec![vec![0, 2, 4, 6]]).unwrap();
        assert_eq!(z.points()[0], vec![0, 1, 2, 3]);
        assert_eq!(z.hilbert_function(3).values, vec![1, 1, 1, 1]);
        assert_eq!(z.h_vector(), vec![1]);
        let a = z.random_reduction(&mut rng_from_seed(1)).unwrap();
        assert_eq!(a.hilbert_values(), vec![1]);
    }

    #[test]
    fn duplicates_rejected() {
        assert!(PointSet::new(gf(), 2, vec![vec![1, 2, 3], vec![2, 4, 6]]).is_err());
    }

    #[test]
    fn file_round_trip() {
        let z = PointSet::new(gf(), 2, vec![vec![1, 2, 3], vec![0, 1, 5]]).unwrap();
        let back: PointSet = z.to_file_string().parse().unwrap();
        assert_eq!(back, z);
        let e = "p=32003 dim=2\n1,2,q\n".parse::<PointSet>().unwrap_err();
        assert!(matches!(e, Error::Parse { token, .. } if token == "q"));
    }

    #[test]
    fn plane_curve_points_vanish() {
        let r = Ring::new(3, gf());
        let f = Form::random(r, 3, &mut rng_from_seed(2));
        let z = curve_points(std::slice::from_ref(&f), 9, 4).unwrap();
        assert_eq!(z.len(), 9);
        assert!(z.points().iter().all(|p| f.evaluate(p) == 0));
    }

    #[test]
    fn space_curve_points_vanish() {
        let r = Ring::new(4, gf());
        let mut rng = rng_from_seed(5);
        let eqs = [Form::random(r, 2, &mut rng), Form::random(r, 2, &mut rng)];
        let z = curve_points(&eqs, 12, 6).unwrap();
        assert_eq!(z.len(), 12);
        assert!(z
            .points()
            .iter()
            .all(|p| eqs.iter().all(|f| f.evaluate(p) == 0)));
    }

    #[test]
    fn degree_bound_reported() {
        let pts: Vec<Vec<u64>> = (1..=6).map(|i| vec![1, i, i * i]).collect();
        let z = PointSet::new(gf(), 2, pts).unwrap();
        assert!(matches!(z.ideal(2), Err(Error::DegreeTooSmall(..))));
        assert!(z.ideal_auto().is_ok());
    }
}
