//! Independent recomputations of library results.
//!
//! Each oracle uses only ideal pieces (as subspaces of `R_d`) and monomial
//! bookkeeping, never the quotient normal forms, Koszul code or tangent
//! parametrization it is checking.

use levalg::apolarity::{annihilator_ideal, DualForm};
use levalg::artinian::ArtinianAlgebra;
use levalg::betti::{betti_table_artinian, BettiTable};
use levalg::linalg::{Matrix, Subspace};
use levalg::reference;
use levalg::ring::{monomial_basis, parse_ideal, GradedIdeal, Monomial, Ring};
use levalg::rng::{rng_from_seed, sub_seed};
use levalg::strata::{component_count, pell_alphas, Strategy, Witness, H2};
use levalg::tangent::tangent_dim_artinian;
use levalg::PrimeField;

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// `R/I` described by reduced ideal pieces, degree by degree.
struct Pieces {
    ring: Ring,
    pieces: Vec<Subspace>,
}

impl Pieces {
    fn new(ideal: &GradedIdeal, top: usize) -> Self {
        let pieces = (0..=top + 1).map(|d| (*ideal.piece(d)).clone()).collect();
        Pieces {
            ring: ideal.ring(),
            pieces,
        }
    }

    fn top(&self) -> usize {
        self.pieces.len() - 2
    }

    /// Standard positions of `A_d`: the non-pivot monomials.
    fn standard(&self, d: usize) -> Vec<usize> {
        let piv = self.pieces[d].pivots();
        (0..self.ring.dim(d)).filter(|c| !piv.contains(c)).collect()
    }

    fn h(&self, d: usize) -> usize {
        self.ring.dim(d) - self.pieces[d].dim()
    }

    /// Class of `v ∈ R_d` in standard coordinates of `A_d`.
    fn class(&self, d: usize, v: &[u64]) -> Vec<u64> {
        let r = self.pieces[d].reduce_vector(v);
        self.standard(d).iter().map(|&c| r[c]).collect()
    }

    /// Coordinates of `v ∈ I_d` in the reduced basis of `I_d`.
    fn ideal_coords(&self, d: usize, v: &[u64]) -> Vec<u64> {
        assert!(self.pieces[d].contains_vector(v));
        self.pieces[d].pivots().iter().map(|&c| v[c]).collect()
    }
}

fn times_variable(ring: Ring, d: usize, k: usize, v: &[u64]) -> Vec<u64> {
    let src = monomial_basis(ring.nvars, d);
    let dst = monomial_basis(ring.nvars, d + 1);
    let xk = Monomial::variable(ring.nvars, k);
    let mut out = vec![0; dst.len()];
    for (i, &c) in v.iter().enumerate() {
        if c != 0 {
            out[dst.index_of(&src.get(i).mul(&xk)).unwrap()] = c;
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<u64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// `dim Hom(I, R/I)_0` from the full system of maps `φ_d : I_d → A_d`
/// with `x_k φ_d(f) = φ_{d+1}(x_k f)`.
fn tangent_oracle(ideal: &GradedIdeal, socle: usize) -> usize {
    let p = Pieces::new(ideal, socle);
    let f = p.ring.field;
    let n = p.ring.nvars;
    // unknown offsets: Φ_d[a][i] for a < h_d, i < dim I_d
    let mut offset = Vec::with_capacity(p.top() + 2);
    let mut total = 0;
    for d in 0..=p.top() {
        offset.push(total);
        total += p.h(d) * p.pieces[d].dim();
    }
    offset.push(total);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for d in 0..=p.top() {
        let basis = p.pieces[d].basis_vectors();
        let std_d = p.standard(d);
        let h_next = if d < p.top() { p.h(d + 1) } else { 0 };
        if h_next == 0 {
            continue;
        }
        for (i, b) in basis.iter().enumerate() {
            for k in 0..n {
                // x_k φ_d(b_i): sum over a of Φ_d[a][i] · class(x_k m_a)
                let mut eqs = vec![vec![0u64; total]; h_next];
                for (a, &m) in std_d.iter().enumerate() {
                    let img = p.class(
                        d + 1,
                        &times_variable(p.ring, d, k, &unit(p.ring.dim(d), m)),
                    );
                    let var = offset[d] + a * basis.len() + i;
                    for (row, &c) in img.iter().enumerate() {
                        eqs[row][var] = f.add(eqs[row][var], c);
                    }
                }
                // minus φ_{d+1}(x_k b_i)
                let coords = p.ideal_coords(d + 1, &times_variable(p.ring, d, k, b));
                let width = p.pieces[d + 1].dim();
                for (j, &c) in coords.iter().enumerate() {
                    for (row, eq) in eqs.iter_mut().enumerate() {
                        let var = offset[d + 1] + row * width + j;
                        eq[var] = f.sub(eq[var], c);
                    }
                }
                rows.extend(eqs);
            }
        }
    }
    let rank = if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(f, total, &rows).rank()
    };
    total - rank
}

#[test]
fn tangent_matches_full_hom_system() {
    let f = gf(32003);
    let a3 = Witness::H1A3.ideal(f, 0).unwrap();
    assert_eq!(tangent_oracle(&a3, 3), 9);
    for w in [Witness::H1A1, Witness::H1A2] {
        let i = w.ideal(f, 0).unwrap();
        let a = ArtinianAlgebra::from_ideal(&i).unwrap();
        assert_eq!(
            tangent_dim_artinian(&a).dimension,
            tangent_oracle(&i, 3),
            "{w}"
        );
    }
    for s in 0..3 {
        for strategy in [Strategy::H1Ci, Strategy::H1LinePoint] {
            let a = strategy.sample(f, sub_seed(11, s)).unwrap();
            let oracle = tangent_oracle(&a.to_ideal().unwrap(), 3);
            assert_eq!(oracle, 8, "{} seed {s}", strategy.name());
            assert_eq!(tangent_dim_artinian(&a).dimension, oracle);
        }
    }
}

#[test]
fn h2_artinian_tangent_is_34() {
    let f = gf(32003);
    let a = Strategy::H2Ci33.sample(f, 5).unwrap();
    assert_eq!(a.hilbert_values(), H2);
    let oracle = tangent_oracle(&a.to_ideal().unwrap(), 5);
    assert_eq!(oracle, 34);
    assert_eq!(tangent_dim_artinian(&a).dimension, oracle);
}

#[test]
fn tangent_on_random_monomial_ideals() {
    let f = gf(32003);
    let r = Ring::new(3, f);
    for text in [
        "x^2, y^2, z^2",
        "x^2, x*y, y^3, z^2",
        "x*y, x*z, y*z, x^3, y^3, z^3",
        "x^3, y^2, z^2, x*y*z",
        "x, y^2, y*z, z^4",
    ] {
        let i = parse_ideal(r, text).unwrap();
        let a = ArtinianAlgebra::from_ideal(&i).unwrap();
        let s = a.socle_degree();
        assert_eq!(
            tangent_dim_artinian(&a).dimension,
            tangent_oracle(&i, s),
            "{text}"
        );
    }
}

/// Jordan type from ranks of powers of the full `n × n` multiplication
/// matrix of `ℓ` on `A`.
fn jordan_oracle(ideal: &GradedIdeal, socle: usize, l: &[u64]) -> Vec<usize> {
    let p = Pieces::new(ideal, socle);
    let f = p.ring.field;
    let sizes: Vec<usize> = (0..=socle).map(|d| p.h(d)).collect();
    let starts: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let v = *acc;
            *acc += s;
            Some(v)
        })
        .collect();
    let n: usize = sizes.iter().sum();
    let mut m = Matrix::zeros(f, n, n);
    for d in 0..socle {
        for (a, &mono) in p.standard(d).iter().enumerate() {
            let mut prod = vec![0u64; p.ring.dim(d + 1)];
            for (k, &c) in l.iter().enumerate() {
                let t = times_variable(p.ring, d, k, &unit(p.ring.dim(d), mono));
                for (o, x) in prod.iter_mut().zip(t) {
                    *o = f.mul_add(*o, c, x);
                }
            }
            for (b, c) in p.class(d + 1, &prod).into_iter().enumerate() {
                m.set(starts[d + 1] + b, starts[d] + a, c);
            }
        }
    }
    let mut ranks = vec![n];
    let mut power = Matrix::identity(f, n);
    loop {
        power = m.mul(&power);
        let r = power.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    // parts ≥ k: ranks[k−1] − ranks[k]
    let mut parts = Vec::new();
    for k in 1..ranks.len() {
        let at_least = ranks[k - 1] - ranks[k];
        let next = if k + 1 < ranks.len() {
            ranks[k] - ranks[k + 1]
        } else {
            0
        };
        parts.extend(std::iter::repeat_n(k, at_least - next));
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

#[test]
fn jordan_types_match_full_matrix_powers() {
    let f = gf(32003);
    let r = Ring::new(3, f);
    let mut rng = rng_from_seed(3);
    let cases = [
        Witness::H1A3.ideal(f, 0).unwrap(),
        Witness::H1A1.ideal(f, 0).unwrap(),
        Witness::H2B4.ideal(f, 4).unwrap(),
        parse_ideal(r, "x^2, y^3, z^4").unwrap(),
    ];
    for ideal in &cases {
        let a = ArtinianAlgebra::from_ideal(ideal).unwrap();
        for l in [
            vec![1, 0, 0],
            vec![0, 1, 1],
            levalg::rng::random_vector(f, 3, &mut rng),
        ] {
            let form = levalg::ring::Form::linear(r, &l);
            let lib = a.jordan_type(&form).unwrap().parts;
            assert_eq!(
                lib,
                jordan_oracle(ideal, a.socle_degree(), &l),
                "{ideal} ℓ = {l:?}"
            );
        }
    }
    // (x^2, y^3, z^4) under x + y + z is strong Lefschetz
    let ci = parse_ideal(r, "x^2, y^3, z^4").unwrap();
    assert_eq!(jordan_oracle(&ci, 6, &[1, 1, 1]), vec![7, 5, 5, 3, 3, 1]);
}

/// Monomial complete intersection `(x^a, y^b, z^c)`: the Koszul complex is
/// the minimal resolution.
fn koszul_ci(a: usize, b: usize, c: usize) -> BettiTable {
    let mut t = BettiTable::new(3);
    t.set(0, 0, 1);
    for (i, degs) in [
        (1, vec![a, b, c]),
        (2, vec![a + b, a + c, b + c]),
        (3, vec![a + b + c]),
    ] {
        for k in degs {
            t.set(i, k, t.get(i, k) + 1);
        }
    }
    t
}

#[test]
fn betti_of_monomial_complete_intersections() {
    let f = gf(32003);
    let r = Ring::new(3, f);
    for a in 1..=4 {
        for b in a..=4 {
            for c in b..=4 {
                let i = parse_ideal(r, &format!("x^{a}, y^{b}, z^{c}")).unwrap();
                assert_eq!(
                    betti_table_artinian(&i).unwrap(),
                    koszul_ci(a, b, c),
                    "({a},{b},{c})"
                );
            }
        }
    }
}

/// `(x, y, z)^t` has a linear resolution (Eagon-Northcott).
#[test]
fn betti_of_powers_of_the_maximal_ideal() {
    let f = gf(32003);
    let r = Ring::new(3, f);
    for t in 1..=4usize {
        let i = GradedIdeal::power_of_maximal(r, t);
        let table = betti_table_artinian(&i).unwrap();
        // β_{1,t} = C(t+2,2), β_{2,t+1} = t(t+2), β_{3,t+2} = C(t+1,2)
        let mut want = BettiTable::new(3);
        want.set(0, 0, 1);
        want.set(1, t, (t + 2) * (t + 1) / 2);
        want.set(2, t + 1, t * (t + 2));
        want.set(3, t + 2, (t + 1) * t / 2);
        assert_eq!(table, want, "t = {t}");
    }
}

/// Standard monomials counted directly for a monomial ideal.
fn monomial_hilbert(nvars: usize, gens: &[Vec<u16>], dmax: usize) -> Vec<usize> {
    (0..=dmax)
        .map(|d| {
            monomial_basis(nvars, d)
                .monomials()
                .iter()
                .filter(|m| {
                    !gens
                        .iter()
                        .any(|g| g.iter().zip(m.exponents()).all(|(a, b)| a <= b))
                })
                .count()
        })
        .collect()
}

#[test]
fn hilbert_functions_of_monomial_ideals() {
    let f = gf(101);
    let r = Ring::new(3, f);
    let cases: [(&str, Vec<Vec<u16>>); 3] = [
        (
            "x^2, x*y, y^3, x*z^3, y^2*z^2, y*z^3, z^4",
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![0, 3, 0],
                vec![1, 0, 3],
                vec![0, 2, 2],
                vec![0, 1, 3],
                vec![0, 0, 4],
            ],
        ),
        (
            "x^3, y^3, z^3",
            vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]],
        ),
        (
            "x*y, y*z, z^5, x^2",
            vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 5], vec![2, 0, 0]],
        ),
    ];
    for (text, gens) in cases {
        let i = parse_ideal(r, text).unwrap();
        assert_eq!(
            i.hilbert_function(8).values,
            monomial_hilbert(3, &gens, 8),
            "{text}"
        );
    }
}

#[test]
fn inverse_system_of_a_monomial() {
    // Ann(X^[a] Y^[b] Z^[c]) = (x^{a+1}, y^{b+1}, z^{c+1})
    let f = gf(32003);
    let r = Ring::new(3, f);
    for (a, b, c) in [(1, 1, 1), (2, 1, 3), (3, 0, 2)] {
        let w = DualForm::monomial(r, &[a, b, c]);
        let ann = annihilator_ideal(r, &[w]).unwrap();
        let want = parse_ideal(r, &format!("x^{}, y^{}, z^{}", a + 1, b + 1, c + 1)).unwrap();
        for d in 0..=(a + b + c + 2) as usize {
            assert!(
                ann.piece(d).same_as(&want.piece(d)),
                "({a},{b},{c}) degree {d}"
            );
        }
    }
    // a power of a linear form has H = (1, 1, ..., 1)
    let w = DualForm::linear_power(r, &[1, 2, 3], 5);
    let a = ArtinianAlgebra::from_ideal(&annihilator_ideal(r, &[w]).unwrap()).unwrap();
    assert_eq!(a.hilbert_values(), vec![1; 6]);
}

/// All `n`-vectors over GF(5), for brute-force kernels.
fn all_vectors(n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..5).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

#[test]
fn gf5_rank_and_kernel_by_enumeration() {
    let f = gf(5);
    let mut rng = rng_from_seed(9);
    for trial in 0..40 {
        let rows = 1 + trial % 4;
        let cols = 1 + (trial / 4) % 5;
        let mut data = levalg::rng::random_vector(f, rows * cols, &mut rng);
        if trial % 3 == 0 {
            // force a dependent row
            for j in 0..cols {
                data[j] = data[(rows - 1) * cols + j];
            }
        }
        let m = Matrix::from_vec(f, rows, cols, data);
        let kernel_size = all_vectors(cols)
            .iter()
            .filter(|v| m.mul_vec(v).iter().all(|&x| x == 0))
            .count();
        let rank = m.rank();
        assert_eq!(
            kernel_size,
            5usize.pow((cols - rank) as u32),
            "trial {trial}"
        );
        let k = m.kernel();
        assert_eq!(k.len(), cols - rank);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
        // row space membership agrees with enumeration of combinations
        let span = Subspace::row_space(&m);
        let members = all_vectors(cols)
            .into_iter()
            .filter(|v| span.contains_vector(v))
            .count();
        assert_eq!(members, 5usize.pow(rank as u32));
    }
}

#[test]
fn pell_by_search() {
    let mut brute = Vec::new();
    for c in 3u64..=4000 {
        let t = c * c - 1;
        if t % 2 == 0 {
            let d = ((t / 2) as f64).sqrt() as u64;
            for dd in d.saturating_sub(1)..=d + 1 {
                if 2 * dd * dd == t {
                    brute.push((c, dd));
                }
            }
        }
    }
    assert_eq!(pell_alphas(4000), brute);
    assert_eq!(brute, reference::PELL_TABLE);
    let (c, d) = reference::PELL_PRINTED_FIFTH;
    assert_ne!(c * c, 2 * d * d + 1);
}

#[test]
fn component_count_by_search() {
    for c in 3u64..=300 {
        let admissible = 1 + (1..c).filter(|&a| 2 * a * a >= c * c - 1).count() as u64;
        assert_eq!(component_count(c).unwrap(), admissible, "c = {c}");
    }
}

#[test]
fn generic_points_in_the_plane() {
    let f = gf(32003);
    let mut rng = rng_from_seed(21);
    for n in [1usize, 4, 6, 7, 10, 13] {
        let pts: Vec<Vec<u64>> = (0..n)
            .map(|_| levalg::rng::random_vector(f, 3, &mut rng))
            .collect();
        let z = levalg::points::PointSet::new(f, 2, pts).unwrap();
        let want: Vec<usize> = (0..=6).map(|d| ((d + 1) * (d + 2) / 2).min(n)).collect();
        assert_eq!(z.hilbert_function(6).values, want, "n = {n}");
    }
    // collinear points: H_d = min(d + 1, n)
    let pts: Vec<Vec<u64>> = (1..=5).map(|t| vec![1, t, 0]).collect();
    let z = levalg::points::PointSet::new(f, 2, pts).unwrap();
    assert_eq!(z.hilbert_function(5).values, vec![1, 2, 3, 4, 5, 5]);
}

#[test]
fn seeded_h2_witnesses_recompute_from_pieces() {
    // Hilbert function of every seeded H2 witness from raw piece dimensions
    let f = gf(32003);
    let r = Ring::new(3, f);
    for w in [Witness::H2C1, Witness::H2C2, Witness::H2B3, Witness::H2B4] {
        let i = w.ideal(f, 8).unwrap();
        let h: Vec<usize> = (0..=6).map(|d| r.dim(d) - i.piece(d).dim()).collect();
        assert_eq!(h, [1, 3, 6, 8, 9, 3, 0], "{w}");
    }
}
