use proptest::prelude::*;

use levalg::apolarity::{annihilator, random_level_quotient, DualSubspace};
use levalg::artinian::{bar_graph_partition, ArtinianAlgebra};
use levalg::betti::{betti_table, cancellation_path, BettiTable};
use levalg::linalg::Matrix;
use levalg::ring::{parse_form, parse_ideal, Form, GradedIdeal, Ring};
use levalg::rng::rng_from_seed;
use levalg::PrimeField;

fn gf() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn plane() -> Ring {
    Ring::new(3, gf())
}

/// Random Artinian monomial ideal: pure powers plus a few mixed monomials.
fn monomial_ideal() -> impl Strategy<Value = String> {
    (
        1u16..=4,
        1u16..=4,
        1u16..=4,
        prop::collection::vec((0u16..3, 0u16..3, 0u16..3), 0..4),
    )
        .prop_map(|(a, b, c, extra)| {
            let mut gens = vec![format!("x^{a}"), format!("y^{b}"), format!("z^{c}")];
            for (i, j, k) in extra {
                if i + j + k > 0 {
                    gens.push(format!("x^{i}*y^{j}*z^{k}"));
                }
            }
            gens.join(", ")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kernel_vectors_are_annihilated(rows in 1usize..7, cols in 1usize..7, seed: u64) {
        let f = gf();
        let data = levalg::rng::random_vector(f, rows * cols, &mut rng_from_seed(seed));
        let mut m = Matrix::from_vec(f, rows, cols, data);
        if rows > 1 {
            let r0 = m.row(0).to_vec();
            m.row_mut(rows - 1).copy_from_slice(&r0);
        }
        let k = m.kernel();
        prop_assert_eq!(k.len() + m.rank(), cols);
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn euler_identity_on_monomial_quotients(text in monomial_ideal()) {
        let ideal = parse_ideal(plane(), &text).unwrap();
        let a = ArtinianAlgebra::from_ideal(&ideal).unwrap();
        let kmax = a.socle_degree() + 3;
        let t = betti_table(&a, kmax).unwrap();
        prop_assert!(t.euler_identity_holds(&a.hilbert_values(), kmax));
        prop_assert_eq!(t.get(0, 0), 1);
        // last column counts the socle
        let socle: usize = a.socle().total();
        prop_assert_eq!(t.totals()[3], socle);
    }

    #[test]
    fn betti_json_round_trip(text in monomial_ideal()) {
        let ideal = parse_ideal(plane(), &text).unwrap();
        let a = ArtinianAlgebra::from_ideal(&ideal).unwrap();
        let t = betti_table(&a, a.socle_degree() + 3).unwrap();
        let back = BettiTable::from_json(&t.to_json()).unwrap();
        prop_assert_eq!(cancellation_path(&t, &back), Some(vec![]));
        prop_assert_eq!(back, t);
    }

    #[test]
    fn form_render_parse_round_trip(degree in 0usize..5, seed: u64) {
        let r = plane();
        let f = Form::random(r, degree, &mut rng_from_seed(seed));
        let text = f.to_string();
        let back = parse_form(r, &text).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn level_quotient_duality(j in 1usize..6, t in 1usize..4, seed: u64) {
        let r = plane();
        let t = t.min(r.dim(j));
        let a = random_level_quotient(&GradedIdeal::zero(r), j, t, None, seed).unwrap();
        let lt = a.level_type();
        prop_assert!(lt.is_level);
        prop_assert_eq!(lt.cm_type, t);
        let ideal = a.to_ideal().unwrap();
        let perp = DualSubspace::perp_of(r, j, &ideal.piece(j));
        prop_assert_eq!(perp.dim(), t);
        let back = annihilator(r, &perp.basis()).unwrap();
        prop_assert_eq!(back.hilbert_values(), a.hilbert_values());
    }

    #[test]
    fn jordan_type_is_a_partition_of_the_length(j in 1usize..6, t in 1usize..4, seed: u64) {
        let r = plane();
        let t = t.min(r.dim(j));
        let a = random_level_quotient(&GradedIdeal::zero(r), j, t, None, seed).unwrap();
        let mut rng = rng_from_seed(seed ^ 0x5a5a);
        let l = Form::random(r, 1, &mut rng);
        prop_assume!(!l.is_zero());
        let p = a.jordan_type(&l).unwrap();
        prop_assert_eq!(p.total(), a.length());
        // the bar-graph partition dominates every Jordan type
        prop_assert!(bar_graph_partition(&a.hilbert_values()).dominates(&p));
        // number of parts is at least the Sperner number max h_i
        let max_h = *a.hilbert_values().iter().max().unwrap();
        prop_assert!(p.parts.len() >= max_h);
    }

    #[test]
    fn linear_change_preserves_hilbert_function(text in monomial_ideal(), seed: u64) {
        let r = plane();
        let ideal = parse_ideal(r, &text).unwrap();
        let images = levalg::strata::random_linear_change(r, &mut rng_from_seed(seed));
        let moved = ideal.transform(&images).unwrap();
        let h = ArtinianAlgebra::from_ideal(&ideal).unwrap().hilbert_values();
        prop_assert_eq!(ArtinianAlgebra::from_ideal(&moved).unwrap().hilbert_values(), h);
    }
}
