//! Tangent dimensions as `dim Hom_R(I, A)_0`.
//!
//! Maps are parametrized degree by degree. In degree `d` the ideal piece is
//! spanned by `x_k b` for `b` in a basis of `I_{d−1}`, plus new minimal
//! generators, which receive `h_d` fresh parameters each. A linear relation
//! among the spanning elements forces the same relation among their images;
//! the parameter space is cut down to the kernel of those conditions before
//! moving to the next degree.

use serde::Serialize;

use crate::artinian::ArtinianAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::ring::ideal::shift_vector;
use crate::ring::{GradedIdeal, GradedQuotient};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TangentReport {
    pub dimension: usize,
    #[serde(rename = "D")]
    pub truncation_degree: usize,
    pub stabilized: bool,
}

/// Running parametrization: a basis of `I_d` and, for each basis element,
/// its image in `A_d` as an `h_d × P` matrix linear in the parameters.
struct HomSystem<'a> {
    q: &'a GradedQuotient,
    degree: Option<usize>,
    basis: Vec<Vec<u64>>,
    images: Vec<Matrix>,
    params: usize,
}

/// Rows are absorbed in chunks so the working matrix stays near `P` rows.
fn constraint_kernel(field: crate::field::PrimeField, params: usize, rows: Vec<Matrix>) -> Matrix {
    let mut acc = Matrix::zeros(field, 0, params);
    let mut pending = Matrix::zeros(field, 0, params);
    for block in rows {
        pending = pending.vstack(&block);
        if pending.rows() >= params.max(64) {
            acc = acc.vstack(&pending).rref().0;
            pending = Matrix::zeros(field, 0, params);
        }
    }
    if pending.rows() > 0 {
        acc = acc.vstack(&pending).rref().0;
    }
    acc.kernel_matrix()
}

impl<'a> HomSystem<'a> {
    fn new(q: &'a GradedQuotient) -> Self {
        HomSystem {
            q,
            degree: None,
            basis: Vec::new(),
            images: Vec::new(),
            params: 0,
        }
    }

    /// Advances to the next degree and returns the new parameter count.
    fn step(&mut self) -> usize {
        let q = self.q;
        let ring = q.ring();
        let field = ring.field;
        let d = self.degree.map_or(0, |e| e + 1);
        let n = ring.dim(d);
        let h = q.dim(d);

        let mut spanning: Vec<Vec<u64>> = Vec::new();
        let mut images: Vec<Matrix> = Vec::new();
        if let Some(prev) = self.degree {
            for (b, img) in self.basis.iter().zip(&self.images) {
                for k in 0..ring.nvars {
                    spanning.push(shift_vector(ring, prev, k, b));
                    images.push(match q.multiplication_ref(prev, k) {
                        Some(m) if h > 0 => m.mul(img),
                        _ => Matrix::zeros(field, h, self.params),
                    });
                }
            }
        }

        // new minimal generators
        let piece = q.ideal_piece(d);
        let mut span = Subspace::span(field, n, &spanning).expect("spanning width");
        let mut generators = Vec::new();
        for v in piece.basis_vectors() {
            if !span.contains_vector(&v) {
                span = span
                    .sum(&Subspace::span(field, n, std::slice::from_ref(&v)).unwrap())
                    .unwrap();
                generators.push(v);
            }
        }
        let fresh = h * generators.len();
        let total = self.params + fresh;
        if fresh > 0 {
            for img in images.iter_mut() {
                *img = img.hstack(&Matrix::zeros(field, h, fresh));
            }
        }
        for (g, v) in generators.into_iter().enumerate() {
            let mut img = Matrix::zeros(field, h, total);
            for i in 0..h {
                img.set(i, self.params + g * h + i, 1);
            }
            spanning.push(v);
            images.push(img);
        }

        // relations among spanning elements and the induced conditions
        let st = Matrix::from_rows(field, spanning.len(), &transpose_rows(&spanning, n));
        let red = st.reduce();
        let kernel = if h == 0 || total == 0 {
            Matrix::identity(field, total)
        } else {
            let blocks: Vec<Matrix> = red
                .kernel
                .iter()
                .map(|c| {
                    let mut acc = Matrix::zeros(field, h, total);
                    for (s, &cs) in c.iter().enumerate() {
                        if cs != 0 {
                            acc.add_scaled(cs, &images[s]);
                        }
                    }
                    acc
                })
                .collect();
            constraint_kernel(field, total, blocks)
        };

        self.basis = red
            .pivot_columns
            .iter()
            .map(|&s| spanning[s].clone())
            .collect();
        self.images = red
            .pivot_columns
            .iter()
            .map(|&s| images[s].mul(&kernel))
            .collect();
        self.params = kernel.cols();
        self.degree = Some(d);
        self.params
    }
}

fn transpose_rows(rows: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
    (0..n)
        .map(|c| rows.iter().map(|r| r[c]).collect())
        .collect()
}

/// `dim Hom(I, A)_0` for Artinian `A = R/I`; the system is finite because
/// every map into degrees above the socle degree vanishes.
pub fn tangent_dim_artinian(a: &ArtinianAlgebra) -> TangentReport {
    let top = a.top_degree();
    let mut sys = HomSystem::new(a.quotient());
    let mut dim = 0;
    for _ in 0..=top {
        dim = sys.step();
    }
    TangentReport {
        dimension: dim,
        truncation_degree: top,
        stabilized: true,
    }
}

/// Number of extra degrees tried past `Dstart` before giving up.
pub const POINTS_EXTRA_DEGREES: usize = 6;

/// `dim Hom(I_Z, S/I_Z)_0` truncated at degree `D`, raised from `Dstart`
/// (default: largest generator degree + 2) until two consecutive values
/// agree.
pub fn tangent_dim_points(ideal: &GradedIdeal, dstart: Option<usize>) -> Result<TangentReport> {
    let dstart = dstart.unwrap_or(ideal.max_generator_degree() + 2);
    let dlimit = dstart + POINTS_EXTRA_DEGREES;
    let q = GradedQuotient::from_ideal(ideal, dlimit + 1);
    if q.is_artinian() {
        return Err(Error::InvalidArgument(
            "point ideal expected, got an Artinian quotient".into(),
        ));
    }
    let mut sys = HomSystem::new(&q);
    let mut dims = Vec::new();
    for _ in 0..=dlimit + 1 {
        dims.push(sys.step());
    }
    for d in dstart..=dlimit {
        if dims[d] == dims[d + 1] {
            return Ok(TangentReport {
                dimension: dims[d],
                truncation_degree: d,
                stabilized: true,
            });
        }
    }
    Err(Error::NotStabilized(dlimit))
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
    fn maximal_ideal_square() {
        // Hom(m^2, R/m^2)_0 = Hom((m^2)_2, A_2 = 0) = 0
        let a = ArtinianAlgebra::from_ideal(&GradedIdeal::power_of_maximal(r3(), 2)).unwrap();
        assert_eq!(tangent_dim_artinian(&a).dimension, 0);
    }

    #[test]
    fn one_variable_truncation() {
        // R = k[x], I = (x^n): φ(x^n) ∈ A_n = 0, so the tangent space is 0;
        // I = (x^2) + m^3 in two variables is checked against a hand count.
        let r2 = Ring::new(2, PrimeField::new(32003).unwrap());
        let i = parse_ideal(r2, "x^2 + m^3").unwrap();
        let a = ArtinianAlgebra::from_ideal(&i).unwrap();
        // φ(x^2) ∈ A_2 = <xy, y^2>, degree-3 conditions vanish: dimension 2
        assert_eq!(tangent_dim_artinian(&a).dimension, 2);
    }

    #[test]
    fn a3_has_nine() {
        let i = parse_ideal(r3(), "x^2, x*y, y^3, x*z^3, y^2*z^2, y*z^3, z^4").unwrap();
        let a = ArtinianAlgebra::from_ideal(&i).unwrap();
        assert_eq!(tangent_dim_artinian(&a).dimension, 9);
    }
}
