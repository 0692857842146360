use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::form::{Form, Ring};
use super::monomial::{monomial_basis, shift_tables, variable_names};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// A homogeneous ideal given by generators, optionally truncated: every
/// piece of degree `>= t` is all of `R_t` (the `+ m^t` suffix).
///
/// Degree pieces are computed on demand as `R_1 I_{d-1} + <generators of
/// degree d>` and cached.
#[derive(Debug)]
pub struct GradedIdeal {
    ring: Ring,
    generators: Vec<Form>,
    truncation: Option<usize>,
    cache: Mutex<Vec<Option<Arc<Subspace>>>>,
}

impl Clone for GradedIdeal {
    fn clone(&self) -> Self {
        GradedIdeal {
            ring: self.ring,
            generators: self.generators.clone(),
            truncation: self.truncation,
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl GradedIdeal {
    pub fn new(ring: Ring, generators: Vec<Form>, truncation: Option<usize>) -> Result<Self> {
        for g in &generators {
            ring.check_same(&g.ring())?;
        }
        let mut generators: Vec<Form> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        generators.sort_by_key(|g| g.degree());
        Ok(GradedIdeal {
            ring,
            generators,
            truncation,
            cache: Mutex::new(Vec::new()),
        })
    }

    pub fn zero(ring: Ring) -> Self {
        GradedIdeal::new(ring, Vec::new(), None).unwrap()
    }

    /// The maximal ideal power `m^t`.
    pub fn power_of_maximal(ring: Ring, t: usize) -> Self {
        GradedIdeal::new(ring, Vec::new(), Some(t)).unwrap()
    }

    /// Builds the ideal whose degree-`d` piece is `pieces[d]` for
    /// `d < pieces.len()`, generated by the minimal generators read off those
    /// pieces. Pieces must nest (`R_1 pieces[d] ⊆ pieces[d+1]`).
    pub fn from_pieces(
        ring: Ring,
        pieces: Vec<Subspace>,
        truncation: Option<usize>,
    ) -> Result<Self> {
        let mut generators = Vec::new();
        let mut prev: Option<&Subspace> = None;
        for (d, piece) in pieces.iter().enumerate() {
            if piece.ambient() != ring.dim(d) {
                return Err(Error::DimensionMismatch {
                    left: ring.dim(d),
                    right: piece.ambient(),
                });
            }
            if truncation.is_some_and(|t| d >= t) {
                break;
            }
            let mut span = match prev {
                Some(p) => times_linear_forms(ring, d - 1, p),
                None => Subspace::zero(ring.field, ring.dim(d)),
            };
            if !piece.contains(&span)? {
                return Err(Error::InvalidArgument(format!(
                    "pieces do not nest in degree {d}"
                )));
            }
            for v in piece.basis_vectors() {
                if !span.contains_vector(&v) {
                    generators.push(Form::from_coeffs(ring, d, v.clone())?);
                    span = span.sum(&Subspace::span(ring.field, ring.dim(d), &[v])?)?;
                }
            }
            prev = Some(piece);
        }
        let ideal = GradedIdeal::new(ring, generators, truncation)?;
        {
            let mut cache = ideal.cache.lock().unwrap();
            *cache = pieces.into_iter().map(|p| Some(Arc::new(p))).collect();
        }
        Ok(ideal)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }
    pub fn generators(&self) -> &[Form] {
        &self.generators
    }
    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn generators_of_degree(&self, d: usize) -> impl Iterator<Item = &Form> {
        self.generators.iter().filter(move |g| g.degree() == d)
    }

    pub fn max_generator_degree(&self) -> usize {
        let g = self
            .generators
            .iter()
            .map(|g| g.degree())
            .max()
            .unwrap_or(0);
        g.max(self.truncation.unwrap_or(0))
    }

    /// Same ideal with an added truncation `+ m^t` (keeps the smaller one).
    pub fn truncated(&self, t: usize) -> Self {
        let t = self.truncation.map_or(t, |s| s.min(t));
        GradedIdeal::new(self.ring, self.generators.clone(), Some(t)).unwrap()
    }

    /// Row-reduced basis of `I_d`.
    pub fn piece(&self, d: usize) -> Arc<Subspace> {
        {
            let cache = self.cache.lock().unwrap();
            if let Some(Some(p)) = cache.get(d) {
                return Arc::clone(p);
            }
        }
        // find the highest cached degree below d and build upward
        let (mut start, mut prev) = {
            let cache = self.cache.lock().unwrap();
            let mut found = (0, None);
            for e in (0..d.min(cache.len())).rev() {
                if let Some(p) = &cache[e] {
                    found = (e + 1, Some(Arc::clone(p)));
                    break;
                }
            }
            found
        };
        let mut built = Vec::new();
        while start <= d {
            let piece = Arc::new(self.build_piece(start, prev.as_deref()));
            built.push((start, Arc::clone(&piece)));
            prev = Some(piece);
            start += 1;
        }
        let mut cache = self.cache.lock().unwrap();
        for (e, p) in built {
            if cache.len() <= e {
                cache.resize(e + 1, None);
            }
            if cache[e].is_none() {
                cache[e] = Some(p);
            }
        }
        Arc::clone(cache[d].as_ref().unwrap())
    }

    fn build_piece(&self, d: usize, prev: Option<&Subspace>) -> Subspace {
        let ring = self.ring;
        let n = ring.dim(d);
        if self.truncation.is_some_and(|t| d >= t) {
            return Subspace::full(ring.field, n);
        }
        let mut m = match (d, prev) {
            (0, _) | (_, None) => Matrix::zeros(ring.field, 0, n),
            (_, Some(p)) => times_linear_forms_matrix(ring, d - 1, p),
        };
        for g in self.generators_of_degree(d) {
            m.push_row(g.coeffs());
        }
        Subspace::row_space(&m)
    }

    pub fn piece_dim(&self, d: usize) -> usize {
        self.piece(d).dim()
    }

    pub fn contains(&self, f: &Form) -> Result<bool> {
        self.ring.check_same(&f.ring())?;
        Ok(self.piece(f.degree()).contains_vector(f.coeffs()))
    }

    /// Number of minimal generators in degree `d`: `dim I_d − dim R_1 I_{d−1}`.
    pub fn minimal_generator_count(&self, d: usize) -> usize {
        let here = self.piece_dim(d);
        if d == 0 {
            return here;
        }
        here - times_linear_forms(self.ring, d - 1, &self.piece(d - 1)).dim()
    }

    /// `h_d = r_d − dim I_d` for `0 ≤ d ≤ dmax`.
    pub fn hilbert_function(&self, dmax: usize) -> HilbertFunction {
        let values = (0..=dmax)
            .map(|d| self.ring.dim(d) - self.piece_dim(d))
            .collect();
        HilbertFunction::from_values(values)
    }

    /// Applies the substitution `x_k ↦ images[k]` to every generator.
    pub fn transform(&self, images: &[Form]) -> Result<GradedIdeal> {
        let target = images
            .first()
            .map(|f| f.ring())
            .ok_or_else(|| Error::InvalidArgument("empty substitution".into()))?;
        let gens = self
            .generators
            .iter()
            .map(|g| g.compose(images))
            .collect::<Result<Vec<_>>>()?;
        GradedIdeal::new(target, gens, self.truncation)
    }

    pub fn render(&self) -> String {
        let names = variable_names(self.ring.nvars);
        let mut s = self
            .generators
            .iter()
            .map(|g| g.render(&names).replace(' ', ""))
            .collect::<Vec<_>>()
            .join(", ");
        if let Some(t) = self.truncation {
            if s.is_empty() {
                s = format!("m^{t}");
            } else {
                s.push_str(&format!(" + m^{t}"));
            }
        }
        format!("ideal: {s}")
    }
}

impl fmt::Display for GradedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Spanning matrix of `R_1 V` for `V ⊆ R_d`.
pub fn times_linear_forms_matrix(ring: Ring, d: usize, v: &Subspace) -> Matrix {
    let tables = shift_tables(ring.nvars, d);
    let n = ring.dim(d + 1);
    let mut m = Matrix::zeros(ring.field, 0, n);
    let mut row = vec![0; n];
    for b in v.basis_vectors() {
        for table in tables.iter() {
            row.iter_mut().for_each(|e| *e = 0);
            for (i, &c) in b.iter().enumerate() {
                if c != 0 {
                    row[table[i]] = c;
                }
            }
            m.push_row(&row);
        }
    }
    m
}

/// `R_1 V ⊆ R_{d+1}`.
pub fn times_linear_forms(ring: Ring, d: usize, v: &Subspace) -> Subspace {
    Subspace::row_space(&times_linear_forms_matrix(ring, d, v))
}

/// Shifts a coordinate vector of `R_d` by the variable `x_k`.
pub fn shift_vector(ring: Ring, d: usize, k: usize, v: &[u64]) -> Vec<u64> {
    let tables = shift_tables(ring.nvars, d);
    let mut out = vec![0; ring.dim(d + 1)];
    for (i, &c) in v.iter().enumerate() {
        if c != 0 {
            out[tables[k][i]] = c;
        }
    }
    out
}

/// Hilbert function values with Artinian / stabilization markers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertFunction {
    pub values: Vec<usize>,
    pub artinian: bool,
    pub stabilized_value: Option<usize>,
}

impl HilbertFunction {
    pub fn from_values(values: Vec<usize>) -> Self {
        let artinian = values.iter().skip(1).any(|&h| h == 0);
        let stabilized_value = match values.len() {
            n if n >= 3 && !artinian => {
                let tail = &values[n - 3..];
                (tail[0] == tail[1] && tail[1] == tail[2]).then_some(tail[0])
            }
            _ => None,
        };
        HilbertFunction {
            values,
            artinian,
            stabilized_value,
        }
    }

    /// Values up to the last nonzero one.
    pub fn trimmed(&self) -> Vec<usize> {
        let end = self
            .values
            .iter()
            .rposition(|&h| h != 0)
            .map_or(0, |i| i + 1);
        self.values[..end].to_vec()
    }

    /// Top nonzero degree, for Artinian sequences.
    pub fn socle_degree(&self) -> Option<usize> {
        self.values.iter().rposition(|&h| h != 0)
    }

    pub fn length(&self) -> usize {
        self.values.iter().sum()
    }

    /// First difference `ΔT`, dropping trailing zeros.
    pub fn first_difference(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.values.len());
        let mut prev = 0usize;
        for &v in &self.values {
            out.push(v.saturating_sub(prev));
            prev = v;
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }
}

/// Checks that subspaces `V_s, V_{s+1}, …` (with `V_i ⊆ R_i`) have the
/// dimensions `r_i − h_i` prescribed by `declared` and satisfy
/// `R_1 V_i ⊆ V_{i+1}`, i.e. form the pieces of a graded ideal.
pub fn validate_graded_sequence(
    ring: Ring,
    start_degree: usize,
    pieces: &[Subspace],
    declared: &[usize],
) -> Result<bool> {
    for (offset, v) in pieces.iter().enumerate() {
        let d = start_degree + offset;
        let expected = declared
            .get(d)
            .map(|&h| ring.dim(d).checked_sub(h))
            .ok_or_else(|| Error::InvalidArgument(format!("no declared value in degree {d}")))?;
        if v.ambient() != ring.dim(d) || Some(v.dim()) != expected {
            return Err(Error::DimensionMismatch {
                left: expected.unwrap_or(0),
                right: v.dim(),
            });
        }
    }
    for (offset, pair) in pieces.windows(2).enumerate() {
        let d = start_degree + offset;
        if !pair[1].contains(&times_linear_forms(ring, d, &pair[0]))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coordinate vector of a monomial basis element, for building subspaces.
pub fn monomial_vector(ring: Ring, exps: &[u16]) -> Vec<u64> {
    let d = exps.iter().map(|&e| e as usize).sum();
    let basis = monomial_basis(ring.nvars, d);
    let mut v = vec![0; basis.len()];
    v[basis
        .index_of(&super::monomial::Monomial(exps.to_vec()))
        .expect("monomial")] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn r3() -> Ring {
        Ring::new(3, PrimeField::new(32003).unwrap())
    }

    fn mono(ring: Ring, e: &[u16]) -> Form {
        Form::from_terms(ring, &[(1, e)]).unwrap()
    }

    #[test]
    fn complete_intersection_of_squares() {
        let r = r3();
        let i = GradedIdeal::new(r, vec![mono(r, &[2, 0, 0]), mono(r, &[0, 2, 0])], None).unwrap();
        assert_eq!(i.piece_dim(3), 6);
        assert_eq!(r.dim(3) - i.piece_dim(3), 4);
        assert_eq!(i.piece_dim(1), 0);
    }

    #[test]
    fn one_linear_syzygy() {
        let r = r3();
        let i = GradedIdeal::new(r, vec![mono(r, &[1, 1, 0]), mono(r, &[1, 0, 1])], None).unwrap();
        assert_eq!(i.piece_dim(3), 5);
    }

    #[test]
    fn maximal_ideal_hilbert() {
        let r = r3();
        let i = GradedIdeal::power_of_maximal(r, 1);
        let h = i.hilbert_function(4);
        assert_eq!(h.values, vec![1, 0, 0, 0, 0]);
        assert!(h.artinian);
        assert_eq!(h.trimmed(), vec![1]);
    }

    #[test]
    fn ideal_pieces_nest() {
        let r = r3();
        let i =
            GradedIdeal::new(r, vec![mono(r, &[2, 0, 0]), mono(r, &[0, 1, 2])], Some(6)).unwrap();
        let pieces: Vec<Subspace> = (2..=4).map(|d| (*i.piece(d)).clone()).collect();
        let declared = i.hilbert_function(4).values;
        assert!(validate_graded_sequence(r, 2, &pieces, &declared).unwrap());
    }

    #[test]
    fn missing_multiple_breaks_nesting() {
        let r = r3();
        let f = r.field;
        let v2 = Subspace::span(
            f,
            6,
            &[
                monomial_vector(r, &[2, 0, 0]),
                monomial_vector(r, &[0, 2, 0]),
            ],
        )
        .unwrap();
        let v3 = Subspace::span(
            f,
            10,
            &[
                monomial_vector(r, &[3, 0, 0]),
                monomial_vector(r, &[2, 1, 0]),
                monomial_vector(r, &[2, 0, 1]),
                monomial_vector(r, &[0, 3, 0]),
                monomial_vector(r, &[0, 2, 1]),
            ],
        )
        .unwrap();
        // declared H = (1,3,4,5) fixes dim V_2 = 2, dim V_3 = 5
        assert!(!validate_graded_sequence(r, 2, &[v2.clone(), v3.clone()], &[1, 3, 4, 5]).unwrap());
        assert!(matches!(
            validate_graded_sequence(r, 2, &[v2, v3], &[1, 3, 4, 4]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn zero_pieces_nest() {
        let r = r3();
        let pieces: Vec<Subspace> = (2..=4).map(|d| Subspace::zero(r.field, r.dim(d))).collect();
        assert!(validate_graded_sequence(r, 2, &pieces, &[1, 3, 6, 10, 15]).unwrap());
    }

    #[test]
    fn from_pieces_recovers_generators() {
        let r = r3();
        let i = GradedIdeal::new(
            r,
            vec![
                mono(r, &[1, 1, 0]),
                mono(r, &[1, 0, 1]),
                mono(r, &[0, 3, 0]),
            ],
            None,
        )
        .unwrap();
        let pieces: Vec<Subspace> = (0..=4).map(|d| (*i.piece(d)).clone()).collect();
        let j = GradedIdeal::from_pieces(r, pieces, None).unwrap();
        assert_eq!(j.generators().len(), 3);
        for d in 0..=6 {
            assert!(i.piece(d).same_as(&j.piece(d)));
        }
    }
}
