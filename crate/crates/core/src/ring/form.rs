use std::fmt;

use rand::Rng;

use super::monomial::{monomial_basis, num_monomials, variable_names, Monomial};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::rng::random_vector;

/// The polynomial ring `k[x_1..x_r]` over a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    pub nvars: usize,
    pub field: PrimeField,
}

impl Ring {
    pub fn new(nvars: usize, field: PrimeField) -> Self {
        Ring { nvars, field }
    }

    /// `r_d`
    pub fn dim(&self, degree: usize) -> usize {
        num_monomials(self.nvars, degree)
    }

    pub fn check_same(&self, other: &Ring) -> Result<()> {
        if self != other {
            return Err(Error::RingMismatch(format!(
                "{} variables over GF({}) vs {} variables over GF({})",
                self.nvars,
                self.field.modulus(),
                other.nvars,
                other.field.modulus()
            )));
        }
        Ok(())
    }
}

/// A homogeneous form, stored as its coordinate vector in the canonical
/// monomial basis of its degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Form {
    ring: Ring,
    degree: usize,
    coeffs: Vec<u64>,
}

impl Form {
    pub fn zero(ring: Ring, degree: usize) -> Self {
        Form {
            ring,
            degree,
            coeffs: vec![0; ring.dim(degree)],
        }
    }

    pub fn from_coeffs(ring: Ring, degree: usize, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.len() != ring.dim(degree) {
            return Err(Error::DimensionMismatch {
                left: ring.dim(degree),
                right: coeffs.len(),
            });
        }
        let coeffs = coeffs.into_iter().map(|c| ring.field.reduce(c)).collect();
        Ok(Form {
            ring,
            degree,
            coeffs,
        })
    }

    pub fn monomial(ring: Ring, m: &Monomial, coeff: u64) -> Self {
        let mut f = Form::zero(ring, m.degree());
        let idx = monomial_basis(ring.nvars, m.degree())
            .index_of(m)
            .expect("monomial in basis");
        f.coeffs[idx] = ring.field.reduce(coeff);
        f
    }

    pub fn variable(ring: Ring, k: usize) -> Self {
        Form::monomial(ring, &Monomial::variable(ring.nvars, k), 1)
    }

    /// Linear form `Σ c_k x_k`.
    pub fn linear(ring: Ring, coeffs: &[u64]) -> Self {
        let mut f = Form::zero(ring, 1);
        let basis = monomial_basis(ring.nvars, 1);
        for (k, &c) in coeffs.iter().enumerate() {
            let idx = basis.index_of(&Monomial::variable(ring.nvars, k)).unwrap();
            f.coeffs[idx] = ring.field.reduce(c);
        }
        f
    }

    /// Builds a form from `(coefficient, exponents)` terms, all of one degree.
    pub fn from_terms(ring: Ring, terms: &[(i64, &[u16])]) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::InvalidArgument("empty term list".into()));
        };
        let degree: usize = first.iter().map(|&e| e as usize).sum();
        let mut f = Form::zero(ring, degree);
        let basis = monomial_basis(ring.nvars, degree);
        for (c, e) in terms {
            if e.len() != ring.nvars {
                return Err(Error::DimensionMismatch {
                    left: ring.nvars,
                    right: e.len(),
                });
            }
            let idx = basis
                .index_of(&Monomial(e.to_vec()))
                .ok_or_else(|| Error::InvalidArgument("terms of mixed degree in a form".into()))?;
            f.coeffs[idx] = ring.field.add(f.coeffs[idx], ring.field.from_i64(*c));
        }
        Ok(f)
    }

    pub fn random<R: Rng + ?Sized>(ring: Ring, degree: usize, rng: &mut R) -> Self {
        Form {
            ring,
            degree,
            coeffs: random_vector(ring.field, ring.dim(degree), rng),
        }
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
    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn coeff_of(&self, m: &Monomial) -> u64 {
        monomial_basis(self.ring.nvars, self.degree)
            .index_of(m)
            .map_or(0, |i| self.coeffs[i])
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, Monomial)> + '_ {
        let basis = monomial_basis(self.ring.nvars, self.degree);
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (c, basis.get(i).clone()))
            .collect::<Vec<_>>()
            .into_iter()
    }

    fn check_compatible(&self, other: &Form) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.degree != other.degree {
            return Err(Error::InvalidArgument(format!(
                "forms of degree {} and {} cannot be added",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.check_compatible(other)?;
        let f = self.ring.field;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Form {
            coeffs,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.add(&other.scale(self.ring.field.neg(1)))
    }

    pub fn scale(&self, c: u64) -> Form {
        let f = self.ring.field;
        Form {
            ring: self.ring,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Product `R_a × R_b → R_{a+b}`.
    pub fn multiply(&self, other: &Form) -> Result<Form> {
        self.ring.check_same(&other.ring)?;
        let field = self.ring.field;
        let degree = self.degree + other.degree;
        let nv = self.ring.nvars;
        let (ba, bb, bc) = (
            monomial_basis(nv, self.degree),
            monomial_basis(nv, other.degree),
            monomial_basis(nv, degree),
        );
        let mut coeffs = vec![0; bc.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let idx = bc.index_of(&ba.get(i).mul(bb.get(j))).unwrap();
                coeffs[idx] = field.mul_add(coeffs[idx], a, b);
            }
        }
        Ok(Form {
            ring: self.ring,
            degree,
            coeffs,
        })
    }

    pub fn pow(&self, e: usize) -> Form {
        let mut acc = Form::monomial(self.ring, &Monomial::one(self.ring.nvars), 1);
        for _ in 0..e {
            acc = acc.multiply(self).expect("same ring");
        }
        acc
    }

    /// Substitutes `x_k ↦ images[k]`; all images share a degree and a ring.
    pub fn compose(&self, images: &[Form]) -> Result<Form> {
        if images.len() != self.ring.nvars {
            return Err(Error::DimensionMismatch {
                left: self.ring.nvars,
                right: images.len(),
            });
        }
        let target = images[0].ring;
        let e = images[0].degree;
        for im in images {
            target.check_same(&im.ring)?;
            if im.degree != e {
                return Err(Error::InvalidArgument(
                    "substitution images must share a degree".into(),
                ));
            }
        }
        // powers[k][t] = images[k]^t
        let powers: Vec<Vec<Form>> = images
            .iter()
            .map(|im| {
                let mut v = vec![Form::monomial(target, &Monomial::one(target.nvars), 1)];
                for t in 1..=self.degree {
                    let next = v[t - 1].multiply(im).expect("same ring");
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Form::zero(target, self.degree * e);
        for (c, m) in self.terms() {
            let mut term = Form::monomial(target, &Monomial::one(target.nvars), c);
            for (k, &ek) in m.0.iter().enumerate() {
                if ek > 0 {
                    term = term.multiply(&powers[k][ek as usize])?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Value at a point given by its coordinates.
    pub fn evaluate(&self, point: &[u64]) -> u64 {
        let f = self.ring.field;
        let basis = monomial_basis(self.ring.nvars, self.degree);
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold(0, |acc, (i, &c)| {
                f.mul_add(acc, c, monomial_value(f, basis.get(i), point))
            })
    }

    pub fn render(&self, names: &[String]) -> String {
        render_terms(self.ring.field, self.terms(), names)
    }
}

pub(crate) fn monomial_value(f: PrimeField, m: &Monomial, point: &[u64]) -> u64 {
    m.0.iter()
        .zip(point)
        .fold(1, |acc, (&e, &x)| f.mul(acc, f.pow(x, e as u64)))
}

pub(crate) fn render_terms(
    field: PrimeField,
    terms: impl Iterator<Item = (u64, Monomial)>,
    names: &[String],
) -> String {
    let mut out = String::new();
    for (c, m) in terms {
        let s = field.to_signed(c);
        let mono = m.render(names);
        let body = match (s.abs(), mono.as_str()) {
            (a, "1") => a.to_string(),
            (1, _) => mono,
            (a, _) => format!("{a}*{mono}"),
        };
        if out.is_empty() {
            if s < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if s < 0 { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&variable_names(self.ring.nvars)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64) -> Ring {
        Ring::new(3, PrimeField::new(p).unwrap())
    }

    #[test]
    fn product_of_variables() {
        let r = ring(101);
        let xy = Form::variable(r, 0)
            .multiply(&Form::variable(r, 1))
            .unwrap();
        assert_eq!(xy.to_string(), "x*y");
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(101);
        let (x, y) = (Form::variable(r, 0), Form::variable(r, 1));
        let p = x.add(&y).unwrap().multiply(&x.sub(&y).unwrap()).unwrap();
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn linear_times_cubic() {
        let r = ring(32003);
        let (x, y, z) = (
            Form::variable(r, 0),
            Form::variable(r, 1),
            Form::variable(r, 2),
        );
        let f = y
            .multiply(&z)
            .unwrap()
            .multiply(&y.add(&z).unwrap())
            .unwrap();
        let p = x.multiply(&f).unwrap();
        let expected = Form::from_terms(r, &[(1, &[1, 2, 1]), (1, &[1, 1, 2])]).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn ring_mismatch() {
        let a = Form::variable(ring(101), 0);
        let b = Form::variable(Ring::new(4, PrimeField::new(101).unwrap()), 0);
        assert!(matches!(a.multiply(&b), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn compose_swaps_variables() {
        let r = ring(101);
        let f = Form::from_terms(r, &[(1, &[2, 1, 0])]).unwrap();
        let images = [
            Form::variable(r, 1),
            Form::variable(r, 0),
            Form::variable(r, 2),
        ];
        assert_eq!(f.compose(&images).unwrap().to_string(), "x*y^2");
    }
}
