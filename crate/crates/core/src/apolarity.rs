//! Inverse systems under the contraction action `x^b ∘ X^a = X^{a−b}`.

use std::fmt;

use rand::Rng;

use crate::artinian::ArtinianAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::ring::form::render_terms;
use crate::ring::monomial::{dual_variable_names, monomial_basis, Monomial};
use crate::ring::{parse_dual_coeffs, Form, GradedIdeal, GradedQuotient, Ring};
use crate::rng::{rng_from_seed, sub_seed};

/// Retry budget for targeted random constructions.
pub const RETRY_BUDGET: usize = 20;

/// An element of the dual ring, indexed by the same monomial order as forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualForm {
    ring: Ring,
    degree: usize,
    coeffs: Vec<u64>,
}

impl DualForm {
    pub fn from_coeffs(ring: Ring, degree: usize, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.len() != ring.dim(degree) {
            return Err(Error::DimensionMismatch {
                left: ring.dim(degree),
                right: coeffs.len(),
            });
        }
        let coeffs = coeffs.into_iter().map(|c| ring.field.reduce(c)).collect();
        Ok(DualForm {
            ring,
            degree,
            coeffs,
        })
    }

    pub fn monomial(ring: Ring, exps: &[u16]) -> Self {
        let f = Form::monomial(ring, &Monomial(exps.to_vec()), 1);
        DualForm {
            ring,
            degree: f.degree(),
            coeffs: f.into_coeffs(),
        }
    }

    /// Divided power `L^[j]` of `L = Σ l_k X_k`: the coefficient of `X^a`
    /// is `l^a`, so that `x^b ∘ L^[j] = l^b L^[j−|b|]`.
    pub fn linear_power(ring: Ring, l: &[u64], j: usize) -> Self {
        let f = ring.field;
        let coeffs = monomial_basis(ring.nvars, j)
            .monomials()
            .iter()
            .map(|m| {
                m.0.iter()
                    .zip(l)
                    .fold(1, |acc, (&e, &c)| f.mul(acc, f.pow(c, e as u64)))
            })
            .collect();
        DualForm {
            ring,
            degree: j,
            coeffs,
        }
    }

    pub fn parse(ring: Ring, text: &str) -> Result<Self> {
        let (degree, coeffs) = parse_dual_coeffs(ring, text)?;
        DualForm::from_coeffs(ring, degree, coeffs)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn render(&self) -> String {
        let basis = monomial_basis(self.ring.nvars, self.degree);
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (c, basis.get(i).clone()))
            .collect::<Vec<_>>();
        render_terms(
            self.ring.field,
            terms.into_iter(),
            &dual_variable_names(self.ring.nvars),
        )
    }
}

impl fmt::Display for DualForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A subspace of the degree-`j` dual piece.
#[derive(Debug, Clone)]
pub struct DualSubspace {
    ring: Ring,
    degree: usize,
    space: Subspace,
}

impl DualSubspace {
    pub fn span(ring: Ring, degree: usize, forms: &[DualForm]) -> Result<Self> {
        let mut vecs = Vec::with_capacity(forms.len());
        for w in forms {
            ring.check_same(&w.ring)?;
            if w.degree != degree {
                return Err(Error::InvalidArgument(format!(
                    "dual form of degree {} in a degree-{degree} subspace",
                    w.degree
                )));
            }
            vecs.push(w.coeffs.clone());
        }
        Ok(DualSubspace {
            ring,
            degree,
            space: Subspace::span(ring.field, ring.dim(degree), &vecs)?,
        })
    }

    /// `(V)^⊥` for `V ⊆ R_j` under the monomial pairing.
    pub fn perp_of(ring: Ring, degree: usize, v: &Subspace) -> Self {
        let vecs = v.basis().kernel();
        DualSubspace {
            ring,
            degree,
            space: Subspace::span(ring.field, ring.dim(degree), &vecs).expect("perp dimension"),
        }
    }

    /// The forms of `R_j` pairing to zero with this subspace.
    pub fn perp(&self) -> Subspace {
        let vecs = self.space.basis().kernel();
        Subspace::span(self.ring.field, self.ring.dim(self.degree), &vecs).expect("perp dimension")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<DualForm> {
        self.space
            .basis_vectors()
            .into_iter()
            .map(|c| DualForm {
                ring: self.ring,
                degree: self.degree,
                coeffs: c,
            })
            .collect()
    }

    /// A random subspace of dimension `t` (a random `t`-tuple of elements;
    /// may drop dimension on a measure-zero event).
    pub fn random_subspace<R: Rng + ?Sized>(&self, t: usize, rng: &mut R) -> Result<Vec<DualForm>> {
        if self.dim() < t {
            return Err(Error::PerpTooSmall {
                needed: t,
                available: self.dim(),
            });
        }
        let f = self.ring.field;
        let basis = self.space.basis_vectors();
        Ok((0..t)
            .map(|_| {
                let mut acc = vec![0; self.ring.dim(self.degree)];
                for b in &basis {
                    let c = crate::rng::random_element(f, rng);
                    for (a, &x) in acc.iter_mut().zip(b) {
                        *a = f.mul_add(*a, c, x);
                    }
                }
                DualForm {
                    ring: self.ring,
                    degree: self.degree,
                    coeffs: acc,
                }
            })
            .collect())
    }
}

/// `f ∘ w`, of degree `j − a`.
pub fn contract(f: &Form, w: &DualForm) -> Result<DualForm> {
    f.ring().check_same(&w.ring)?;
    let (a, j) = (f.degree(), w.degree);
    if a > j {
        return Err(Error::InvalidArgument(format!(
            "cannot contract a degree-{a} form into degree {j}"
        )));
    }
    let field = w.ring.field;
    let nv = w.ring.nvars;
    let (bf, bw, bo) = (
        monomial_basis(nv, a),
        monomial_basis(nv, j),
        monomial_basis(nv, j - a),
    );
    let mut out = vec![0; bo.len()];
    for (fi, &fc) in f.coeffs().iter().enumerate() {
        if fc == 0 {
            continue;
        }
        for (wi, &wc) in w.coeffs.iter().enumerate() {
            if wc == 0 {
                continue;
            }
            if let Some(rest) = bw.get(wi).checked_div(bf.get(fi)) {
                let idx = bo.index_of(&rest).unwrap();
                out[idx] = field.mul_add(out[idx], fc, wc);
            }
        }
    }
    Ok(DualForm {
        ring: w.ring,
        degree: j - a,
        coeffs: out,
    })
}

/// Matrix of `R_d → D_{j−d}, f ↦ f ∘ w` (rows: dual monomials of degree
/// `j − d`, columns: monomials of degree `d`).
fn contraction_matrix(w: &DualForm, d: usize) -> Matrix {
    let ring = w.ring;
    let nv = ring.nvars;
    let (bd, bu, bj) = (
        monomial_basis(nv, d),
        monomial_basis(nv, w.degree - d),
        monomial_basis(nv, w.degree),
    );
    let mut m = Matrix::zeros(ring.field, bu.len(), bd.len());
    for (col, mono) in bd.monomials().iter().enumerate() {
        for (row, u) in bu.monomials().iter().enumerate() {
            let idx = bj.index_of(&mono.mul(u)).unwrap();
            m.set(row, col, w.coeffs[idx]);
        }
    }
    m
}

fn relation_matrix(ring: Ring, generators: &[DualForm], d: usize) -> Matrix {
    let mut m = Matrix::zeros(ring.field, 0, ring.dim(d));
    for w in generators.iter().filter(|w| w.degree >= d) {
        m = m.vstack(&contraction_matrix(w, d));
    }
    m
}

/// `Ann(w_1, …, w_s)_d = {f ∈ R_d : f ∘ w_i = 0 for all i}`.
pub fn annihilator_piece(ring: Ring, generators: &[DualForm], d: usize) -> Subspace {
    let m = relation_matrix(ring, generators, d);
    Subspace::span(ring.field, ring.dim(d), &m.kernel()).expect("kernel dimension")
}

/// `R / Ann(w_1, …, w_s)`; generators may have mixed degrees.
pub fn annihilator(ring: Ring, generators: &[DualForm]) -> Result<ArtinianAlgebra> {
    for w in generators {
        ring.check_same(&w.ring)?;
    }
    if generators.iter().all(|w| w.is_zero()) {
        return Err(Error::InvalidArgument("inverse system is zero".into()));
    }
    let top = generators.iter().map(|w| w.degree).max().unwrap_or(0);
    let relations = (0..=top + 1)
        .map(|d| relation_matrix(ring, generators, d))
        .collect();
    ArtinianAlgebra::from_quotient(GradedQuotient::from_relations(ring, relations)?)
}

pub fn annihilator_ideal(ring: Ring, generators: &[DualForm]) -> Result<GradedIdeal> {
    annihilator(ring, generators)?.to_ideal()
}

/// `h_i = dim R_{j−i} ∘ W` for `0 ≤ i ≤ j`, computed from contractions
/// rather than from the annihilator.
pub fn catalecticant_profile(w: &DualSubspace) -> Vec<usize> {
    let j = w.degree;
    let basis = w.basis();
    (0..=j)
        .map(|i| {
            let d = j - i;
            let mut m = Matrix::zeros(w.ring.field, 0, w.ring.dim(i));
            for b in &basis {
                m = m.vstack(&contraction_matrix(b, d).transpose());
            }
            m.rank()
        })
        .collect()
}

/// Ancestor ideal of a single dual generator: `Ann(w)` through degree `j`,
/// all of `R` above.
pub fn gorenstein_ancestor(w: &DualForm) -> Result<GradedIdeal> {
    if w.is_zero() {
        return Err(Error::InvalidArgument("dual generator is zero".into()));
    }
    annihilator_ideal(w.ring, std::slice::from_ref(w))
}

/// `R/Ann(W)` for `W` a random `t`-dimensional subspace of
/// `(constraint_j)^⊥`; since `W ⊆ (I_j)^⊥` the result contains the
/// constraint in degrees `≤ j`. With a `target` Hilbert function, re-draws
/// (sub-seeded) until it is met, up to [`RETRY_BUDGET`] attempts.
pub fn random_level_quotient(
    constraint: &GradedIdeal,
    j: usize,
    t: usize,
    target: Option<&[usize]>,
    seed: u64,
) -> Result<ArtinianAlgebra> {
    let ring = constraint.ring();
    let perp = DualSubspace::perp_of(ring, j, &constraint.piece(j));
    if perp.dim() < t {
        return Err(Error::PerpTooSmall {
            needed: t,
            available: perp.dim(),
        });
    }
    for attempt in 0..RETRY_BUDGET {
        let mut rng = rng_from_seed(sub_seed(seed, attempt as u64));
        let w = perp.random_subspace(t, &mut rng)?;
        let a = annihilator(ring, &w)?;
        match target {
            Some(h) if a.hilbert_values() != h => continue,
            _ => return Ok(a),
        }
    }
    Err(Error::RetriesExhausted {
        attempts: RETRY_BUDGET,
        stage: format!("random level quotient with target {target:?}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::ring::{parse_form, parse_ideal};

    fn r3() -> Ring {
        Ring::new(3, PrimeField::new(32003).unwrap())
    }

    fn dual(text: &str) -> DualForm {
        DualForm::parse(r3(), text).unwrap()
    }

    #[test]
    fn contraction_examples() {
        let r = r3();
        let x = parse_form(r, "x").unwrap();
        assert_eq!(contract(&x, &dual("X^3")).unwrap(), dual("X^2"));
        assert!(contract(&x, &dual("Y^3")).unwrap().is_zero());
        let x2 = parse_form(r, "x^2").unwrap();
        assert_eq!(contract(&x2, &dual("X^3 + X*Y^2")).unwrap(), dual("X"));
        assert!(contract(&parse_form(r, "x^4").unwrap(), &dual("X^3")).is_err());
    }

    #[test]
    fn cubes_annihilator_in_degree_two() {
        let r = r3();
        let w = [dual("X^3"), dual("Y^3"), dual("Z^3")];
        let piece = annihilator_piece(r, &w, 2);
        let expected = parse_ideal(r, "x*y, x*z, y*z").unwrap();
        assert!(piece.same_as(&expected.piece(2)));
    }

    #[test]
    fn full_dual_space_has_zero_annihilator() {
        let r = r3();
        let basis: Vec<DualForm> = monomial_basis(3, 3)
            .monomials()
            .iter()
            .map(|m| DualForm::monomial(r, &m.0))
            .collect();
        for d in 0..=3 {
            assert_eq!(annihilator_piece(r, &basis, d).dim(), 0);
        }
    }

    #[test]
    fn catalecticants() {
        let r = r3();
        let w = DualSubspace::span(r, 3, &[dual("X^3 + Y^3 + Z^3")]).unwrap();
        assert_eq!(catalecticant_profile(&w), vec![1, 3, 3, 1]);
        let w = DualSubspace::span(r, 3, &[dual("X^3")]).unwrap();
        assert_eq!(catalecticant_profile(&w), vec![1, 1, 1, 1]);
    }

    #[test]
    fn divided_power_contracts_to_lower_power() {
        let r = r3();
        let l = [1, 2, 0];
        let w = DualForm::linear_power(r, &l, 3);
        let y = parse_form(r, "y").unwrap();
        let expected = DualForm::linear_power(r, &l, 2);
        let got = contract(&y, &w).unwrap();
        let two = r.field.reduce(2);
        assert_eq!(
            got.coeffs(),
            expected
                .coeffs()
                .iter()
                .map(|&c| r.field.mul(c, two))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn random_level_quotient_without_constraint() {
        let r = r3();
        let a = random_level_quotient(&GradedIdeal::zero(r), 3, 4, None, 5).unwrap();
        assert_eq!(a.hilbert_values(), vec![1, 3, 6, 4]);
        assert!(a.level_type().is_level);
    }

    #[test]
    fn perp_too_small() {
        let r = r3();
        let c = parse_ideal(r, "x, y").unwrap();
        assert!(matches!(
            random_level_quotient(&c, 3, 2, None, 1),
            Err(Error::PerpTooSmall {
                needed: 2,
                available: 1
            })
        ));
    }
}
