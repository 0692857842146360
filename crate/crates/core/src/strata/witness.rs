//! Named witness ideals and the two one-parameter deformation families.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::apolarity::{annihilator_ideal, random_level_quotient, DualForm};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::Matrix;
use crate::ring::{parse_form, parse_ideal, Form, GradedIdeal, Ring};
use crate::rng::{random_vector, rng_from_seed};

pub const H1: [usize; 4] = [1, 3, 4, 4];
pub const H2: [usize; 6] = [1, 3, 6, 8, 9, 3];

pub(crate) fn plane(field: PrimeField) -> Ring {
    Ring::new(3, field)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Witness {
    H1A1,
    H1A2,
    H1A3,
    H2C1,
    H2C2,
    H2B3,
    H2B4,
    H1MaxBetti,
}

impl Witness {
    pub const ALL: [Witness; 8] = [
        Witness::H1A1,
        Witness::H1A2,
        Witness::H1A3,
        Witness::H2C1,
        Witness::H2C2,
        Witness::H2B3,
        Witness::H2B4,
        Witness::H1MaxBetti,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Witness::H1A1 => "H1_A1",
            Witness::H1A2 => "H1_A2",
            Witness::H1A3 => "H1_A3",
            Witness::H2C1 => "H2_C1",
            Witness::H2C2 => "H2_C2",
            Witness::H2B3 => "H2_B3",
            Witness::H2B4 => "H2_B4",
            Witness::H1MaxBetti => "H1_maxBetti",
        }
    }

    /// Whether the ideal depends on a seed (a random `W`-part).
    pub fn is_seeded(self) -> bool {
        matches!(
            self,
            Witness::H2C1 | Witness::H2C2 | Witness::H2B3 | Witness::H2B4
        )
    }

    pub fn hilbert(self) -> &'static [usize] {
        match self {
            Witness::H2C1 | Witness::H2C2 | Witness::H2B3 | Witness::H2B4 => &H2,
            _ => &H1,
        }
    }

    /// Ideal through its socle degree. Seeded witnesses re-draw their
    /// `W`-part until the documented Hilbert function is met; unseeded
    /// witnesses ignore `seed`.
    pub fn ideal(self, field: PrimeField, seed: u64) -> Result<GradedIdeal> {
        self.build(field, seed, true)
    }

    /// As [`Witness::ideal`], but keeps the first draw whatever its
    /// Hilbert function.
    pub fn first_draw(self, field: PrimeField, seed: u64) -> Result<GradedIdeal> {
        self.build(field, seed, false)
    }

    fn build(self, field: PrimeField, seed: u64, retry: bool) -> Result<GradedIdeal> {
        let r = plane(field);
        let level = |structure: &str| -> Result<GradedIdeal> {
            let c = parse_ideal(r, structure)?;
            let target = retry.then_some(&H2[..]);
            random_level_quotient(&c, 5, 3, target, seed)?.to_ideal()
        };
        match self {
            Witness::H1A1 => parse_ideal(r, "x^2, y^2 + m^4"),
            Witness::H1A2 => parse_ideal(r, "x^2, x*y, z^3, y^4, y^2*z^2, y^3*z"),
            Witness::H1A3 => parse_ideal(r, "x^2, x*y, y^3, x*z^3, y^2*z^2, y*z^3, z^4"),
            Witness::H2C1 => level("x^3, y^3"),
            Witness::H2C2 => level("x^3, x^2*y, z^4"),
            // line z = 0 union the four points (±1, ±1, 1)
            Witness::H2B3 => level("z*(x^2 - z^2), z*(y^2 - z^2)"),
            // ℓ = z, ρ = x + y + z, q3 = x^3 + y^3 + x*z^2 - y*z^2
            Witness::H2B4 => {
                level("z*(x + y + z)*x, z*(x + y + z)*y, z*(x^3 + y^3 + x*z^2 - y*z^2)")
            }
            Witness::H1MaxBetti => {
                let gens = [
                    DualForm::linear_power(r, &[1, 0, 0], 3),
                    DualForm::linear_power(r, &[0, 1, 0], 3),
                    DualForm::linear_power(r, &[1, 1, 0], 3),
                    DualForm::linear_power(r, &[1, 2, 0], 3),
                    DualForm::linear_power(r, &[0, 0, 1], 2),
                ];
                annihilator_ideal(r, &gens)
            }
        }
    }
}

impl FromStr for Witness {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Witness::ALL
            .into_iter()
            .find(|w| w.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn witness(name: &str, field: PrimeField, seed: u64) -> Result<GradedIdeal> {
    name.parse::<Witness>()?.ideal(field, seed)
}

/// Images of the variables under a random invertible linear substitution.
pub fn random_linear_change<R: Rng + ?Sized>(ring: Ring, rng: &mut R) -> Vec<Form> {
    let n = ring.nvars;
    loop {
        let m = Matrix::from_vec(ring.field, n, n, random_vector(ring.field, n * n, rng));
        if m.rank() == n {
            return (0..n).map(|i| Form::linear(ring, m.row(i))).collect();
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// `I(t) = (xy, xz + t z(y+z), m^4)`, `I(0) = (xy, xz, yz(y+z), m^4)`.
    H1,
    /// `J(t) = (xh + t f1, yh + t f2)`, `J(0) = (xh, yh, x f2 − y f1)`.
    H2,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::H1, Family::H2];

    pub fn name(self) -> &'static str {
        match self {
            Family::H1 => "H1_family",
            Family::H2 => "H2_family",
        }
    }

    /// The random data `(h, f1, f2)` of the H2 family.
    fn h2_data(field: PrimeField, seed: u64) -> (Form, Form, Form) {
        let r = plane(field);
        let mut rng = rng_from_seed(seed);
        let h = Form::random(r, 2, &mut rng);
        let f1 = Form::random(r, 3, &mut rng);
        let f2 = Form::random(r, 3, &mut rng);
        (h, f1, f2)
    }

    /// Member at `t`; `t = 0` gives the explicit limit ideal.
    pub fn member(self, field: PrimeField, t: u64, seed: u64) -> Result<GradedIdeal> {
        let r = plane(field);
        let t = field.reduce(t);
        match self {
            Family::H1 if t == 0 => parse_ideal(r, "x*y, x*z, y*z*(y + z) + m^4"),
            Family::H1 => {
                let g = parse_form(r, "x*z")?.add(&parse_form(r, "z*(y + z)")?.scale(t))?;
                GradedIdeal::new(r, vec![parse_form(r, "x*y")?, g], Some(4))
            }
            Family::H2 => {
                let (h, f1, f2) = Self::h2_data(field, seed);
                let x = Form::variable(r, 0);
                let y = Form::variable(r, 1);
                let xh = x.multiply(&h)?;
                let yh = y.multiply(&h)?;
                let gens = if t == 0 {
                    vec![xh, yh, self.limit_witness(field, seed)?]
                } else {
                    vec![xh.add(&f1.scale(t))?, yh.add(&f2.scale(t))?]
                };
                GradedIdeal::new(r, gens, None)
            }
        }
    }

    /// The form that every member contains and that survives to the limit:
    /// `yz(y+z)` for H1, `x f2 − y f1` for H2.
    pub fn limit_witness(self, field: PrimeField, seed: u64) -> Result<Form> {
        let r = plane(field);
        match self {
            Family::H1 => parse_form(r, "y*z*(y + z)"),
            Family::H2 => {
                let (_, f1, f2) = Self::h2_data(field, seed);
                let x = Form::variable(r, 0);
                let y = Form::variable(r, 1);
                x.multiply(&f2)?.sub(&y.multiply(&f1)?)
            }
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn deformation(name: &str, field: PrimeField, t: u64, seed: u64) -> Result<GradedIdeal> {
    name.parse::<Family>()?.member(field, t, seed)
}
