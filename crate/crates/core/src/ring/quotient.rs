//! Degreewise presentation of a graded quotient `A = R/I`.
//!
//! Degree `d` is stored as a row-reduced matrix `nf_d` of shape `h_d × r_d`
//! whose kernel is `I_d`; its pivot columns are the standard monomials, on
//! which `nf_d` is the identity. Coordinates of `A_d` are taken with respect
//! to those monomials.

use super::form::{Form, Ring};
use super::ideal::{GradedIdeal, HilbertFunction};
use super::monomial::shift_tables;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Clone)]
pub struct GradedQuotient {
    ring: Ring,
    nf: Vec<Matrix>,
    standard: Vec<Vec<usize>>,
    /// `mult[d][k]`: `×x_k : A_d → A_{d+1}` as an `h_{d+1} × h_d` matrix.
    mult: Vec<Vec<Matrix>>,
    artinian: bool,
}

impl GradedQuotient {
    /// Builds the quotient from matrices `rel[d]` with `ker rel[d] = I_d`.
    /// When the last stored degree has `h = 0` the quotient is Artinian and
    /// every higher degree is zero.
    pub fn from_relations(ring: Ring, relations: Vec<Matrix>) -> Result<Self> {
        let mut nf = Vec::with_capacity(relations.len());
        let mut standard = Vec::with_capacity(relations.len());
        for (d, m) in relations.into_iter().enumerate() {
            if m.cols() != ring.dim(d) {
                return Err(Error::DimensionMismatch {
                    left: ring.dim(d),
                    right: m.cols(),
                });
            }
            let (r, pivots) = m.rref();
            nf.push(r);
            standard.push(pivots);
        }
        Ok(Self::assemble(ring, nf, standard))
    }

    fn assemble(ring: Ring, nf: Vec<Matrix>, standard: Vec<Vec<usize>>) -> Self {
        let artinian = nf.len() > 1 && nf.last().is_some_and(|m| m.rows() == 0);
        let mult = (0..nf.len().saturating_sub(1))
            .map(|d| {
                let tables = shift_tables(ring.nvars, d);
                (0..ring.nvars)
                    .map(|k| {
                        let target = &nf[d + 1];
                        let mut m = Matrix::zeros(ring.field, target.rows(), standard[d].len());
                        for (col, &s) in standard[d].iter().enumerate() {
                            let image = tables[k][s];
                            for row in 0..target.rows() {
                                m.set(row, col, target.get(row, image));
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        GradedQuotient {
            ring,
            nf,
            standard,
            mult,
            artinian,
        }
    }

    /// `R/I` in degrees `0..=dmax`.
    pub fn from_ideal(ideal: &GradedIdeal, dmax: usize) -> Self {
        let ring = ideal.ring();
        let mut nf = Vec::with_capacity(dmax + 1);
        let mut standard = Vec::with_capacity(dmax + 1);
        for d in 0..=dmax {
            let piece = ideal.piece(d);
            let (m, free) = complement_projection(ring, d, &piece);
            nf.push(m);
            standard.push(free);
        }
        Self::assemble(ring, nf, standard)
    }

    /// `R/I` up to the first vanishing degree. Fails when `h_d ≠ 0` up to
    /// the bound `r·g + 1` (`g` the largest generator degree), which exceeds
    /// the socle degree of any Artinian quotient.
    pub fn artinian_from_ideal(ideal: &GradedIdeal) -> Result<Self> {
        let ring = ideal.ring();
        let limit = ring.nvars * ideal.max_generator_degree().max(1) + 1;
        let mut nf = Vec::new();
        let mut standard = Vec::new();
        for d in 0..=limit {
            let piece = ideal.piece(d);
            let (m, free) = complement_projection(ring, d, &piece);
            let done = d > 0 && m.rows() == 0;
            nf.push(m);
            standard.push(free);
            if done {
                return Ok(Self::assemble(ring, nf, standard));
            }
        }
        Err(Error::NotArtinian(limit))
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_artinian(&self) -> bool {
        self.artinian
    }

    /// Highest stored degree.
    pub fn top_degree(&self) -> usize {
        self.nf.len() - 1
    }

    /// `h_d`; zero above the top for Artinian quotients.
    pub fn dim(&self, d: usize) -> usize {
        match self.nf.get(d) {
            Some(m) => m.rows(),
            None if self.artinian => 0,
            None => panic!("degree {d} beyond the stored range"),
        }
    }

    pub fn stored_dim(&self, d: usize) -> Option<usize> {
        match self.nf.get(d) {
            Some(m) => Some(m.rows()),
            None if self.artinian => Some(0),
            None => None,
        }
    }

    pub fn hilbert_function(&self) -> HilbertFunction {
        HilbertFunction::from_values(self.nf.iter().map(|m| m.rows()).collect())
    }

    /// Largest degree with `h_d ≠ 0`.
    pub fn socle_degree(&self) -> usize {
        self.nf.iter().rposition(|m| m.rows() > 0).unwrap_or(0)
    }

    pub fn length(&self) -> usize {
        self.nf.iter().map(|m| m.rows()).sum()
    }

    /// Standard monomial indices (in the degree-`d` monomial basis).
    pub fn standard_monomials(&self, d: usize) -> &[usize] {
        &self.standard[d]
    }

    pub fn normal_form_matrix(&self, d: usize) -> &Matrix {
        &self.nf[d]
    }

    /// Image of a coordinate vector of `R_d` in `A_d`.
    pub fn normal_form(&self, d: usize, v: &[u64]) -> Vec<u64> {
        self.nf[d].mul_vec(v)
    }

    pub fn reduce_form(&self, f: &Form) -> Vec<u64> {
        self.normal_form(f.degree(), f.coeffs())
    }

    /// `×x_k : A_d → A_{d+1}`. For Artinian quotients a map into a zero
    /// space is returned past the top.
    pub fn multiplication(&self, d: usize, k: usize) -> Matrix {
        match self.mult.get(d) {
            Some(ms) => ms[k].clone(),
            None => Matrix::zeros(self.ring.field, self.dim(d + 1), self.dim(d)),
        }
    }

    pub fn multiplication_ref(&self, d: usize, k: usize) -> Option<&Matrix> {
        self.mult.get(d).map(|ms| &ms[k])
    }

    /// `×ℓ : A_d → A_{d+1}` for a linear form `ℓ`.
    pub fn multiply_linear(&self, d: usize, l: &[u64]) -> Matrix {
        let field = self.ring.field;
        let mut acc = Matrix::zeros(field, self.dim(d + 1), self.dim(d));
        let Some(ms) = self.mult.get(d) else {
            return acc;
        };
        let lin = super::monomial::monomial_basis(self.ring.nvars, 1);
        for (k, m) in ms.iter().enumerate() {
            let idx = lin
                .index_of(&super::monomial::Monomial::variable(self.ring.nvars, k))
                .unwrap();
            let c = l[idx];
            if c == 0 {
                continue;
            }
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let v = field.mul_add(acc.get(i, j), c, m.get(i, j));
                    acc.set(i, j, v);
                }
            }
        }
        acc
    }

    /// `I_d` as the kernel of the normal form.
    pub fn ideal_piece(&self, d: usize) -> Subspace {
        let field = self.ring.field;
        match self.nf.get(d) {
            Some(m) => {
                let kernel = m.kernel();
                Subspace::span(field, m.cols(), &kernel).expect("kernel dimension")
            }
            None => Subspace::full(field, self.ring.dim(d)),
        }
    }

    /// The ideal `I` with generators read off the stored degrees; Artinian
    /// quotients get the truncation at the first zero degree.
    pub fn to_ideal(&self) -> Result<GradedIdeal> {
        let pieces: Vec<Subspace> = (0..self.nf.len()).map(|d| self.ideal_piece(d)).collect();
        let truncation = self.artinian.then(|| self.top_degree());
        GradedIdeal::from_pieces(self.ring, pieces, truncation)
    }
}

/// Projection `R_d → A_d` along `I_d` onto the complement spanned by the
/// non-pivot monomials of the reduced basis of `I_d`.
fn complement_projection(ring: Ring, d: usize, piece: &Subspace) -> (Matrix, Vec<usize>) {
    let field = ring.field;
    let n = ring.dim(d);
    let pivots = piece.pivots();
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut m = Matrix::zeros(field, free.len(), n);
    let basis = piece.basis();
    for (q, &j) in free.iter().enumerate() {
        m.set(q, j, 1);
        for (row, &c) in pivots.iter().enumerate() {
            let a = basis.get(row, j);
            if a != 0 {
                m.set(q, c, field.neg(a));
            }
        }
    }
    (m, free)
}
