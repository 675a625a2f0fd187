//! Randomized law checks for the polynomial engine: ring axioms over Q and
//! F_32452843, the mod-p homomorphism, derivative and term-order laws, and
//! the parse/render round trip.

use isochron_algebra::coeff::{big_rat, ratio_mod_p, Coeff, ModP};
use isochron_algebra::groebner::normal_form;
use isochron_algebra::parse::{parse_poly, render_poly};
use isochron_algebra::poly::{MPoly, QPoly};
use isochron_algebra::vars::{Monomial, OrderKind, TermOrder, VarTable};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::sync::Arc;

const PAPER_PRIME: u64 = 32452843;

fn table() -> Arc<VarTable> {
    VarTable::new(&["x", "y", "z"])
}

fn random_qpoly(rng: &mut StdRng, t: &Arc<VarTable>, max_terms: usize) -> QPoly {
    let n = rng.gen_range(0..=max_terms);
    let mut terms = Vec::new();
    for _ in 0..n {
        let m = Monomial(vec![
            rng.gen_range(0..4u32),
            rng.gen_range(0..4u32),
            rng.gen_range(0..3u32),
        ]);
        let c = big_rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=5));
        terms.push((m, c));
    }
    QPoly::from_terms(t, &TermOrder::grevlex(3), terms)
}

#[test]
fn ring_axioms_over_q_and_fp() {
    let t = table();
    let mut rng = StdRng::seed_from_u64(0xA11CE);
    for _ in 0..1000 {
        let a = random_qpoly(&mut rng, &t, 4);
        let b = random_qpoly(&mut rng, &t, 4);
        let c = random_qpoly(&mut rng, &t, 4);
        // Associativity, commutativity, distributivity over Q.
        assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        // Same laws over the paper's prime field.
        let (ap, bp, cp) = (
            a.mod_p(PAPER_PRIME).unwrap(),
            b.mod_p(PAPER_PRIME).unwrap(),
            c.mod_p(PAPER_PRIME).unwrap(),
        );
        assert_eq!(ap.add(&bp).add(&cp), ap.add(&bp.add(&cp)));
        assert_eq!(ap.mul(&bp), bp.mul(&ap));
        assert_eq!(ap.mul(&bp.add(&cp)), ap.mul(&bp).add(&ap.mul(&cp)));
    }
}

#[test]
fn mod_p_is_ring_homomorphism() {
    let t = table();
    let mut rng = StdRng::seed_from_u64(0xB0B);
    for _ in 0..200 {
        let a = random_qpoly(&mut rng, &t, 4);
        let b = random_qpoly(&mut rng, &t, 4);
        let prod = a.mul(&b).mod_p(PAPER_PRIME).unwrap();
        let prod_images = a.mod_p(PAPER_PRIME).unwrap().mul(&b.mod_p(PAPER_PRIME).unwrap());
        assert_eq!(prod, prod_images);
        let sum = a.add(&b).mod_p(PAPER_PRIME).unwrap();
        let sum_images = a.mod_p(PAPER_PRIME).unwrap().add(&b.mod_p(PAPER_PRIME).unwrap());
        assert_eq!(sum, sum_images);
    }
}

#[test]
fn parse_render_identity_200() {
    let t = table();
    let mut rng = StdRng::seed_from_u64(0xC0FFEE);
    for _ in 0..200 {
        let p = random_qpoly(&mut rng, &t, 8);
        let s = render_poly(&p);
        let q = parse_poly(&s, &t).unwrap();
        assert_eq!(p, q, "round-trip failed on {s}");
    }
}

#[test]
fn leibniz_rule() {
    let t = table();
    let mut rng = StdRng::seed_from_u64(0xD1CE);
    for _ in 0..200 {
        let f = random_qpoly(&mut rng, &t, 5);
        let g = random_qpoly(&mut rng, &t, 5);
        for v in ["x", "y", "z"] {
            let dfg = f.mul(&g).partial_derivative(v).unwrap();
            let expect = f
                .partial_derivative(v)
                .unwrap()
                .mul(&g)
                .add(&f.mul(&g.partial_derivative(v).unwrap()));
            assert_eq!(dfg, expect);
        }
    }
}

#[test]
fn substitution_is_homomorphism() {
    let t = table();
    let mut rng = StdRng::seed_from_u64(0xF00D);
    for _ in 0..100 {
        let f = random_qpoly(&mut rng, &t, 4);
        let g = random_qpoly(&mut rng, &t, 4);
        let img = random_qpoly(&mut rng, &t, 3);
        let bind: Vec<(&str, &QPoly)> = vec![("x", &img)];
        let lhs = f.mul(&g).substitute(&bind).unwrap();
        let rhs = f.substitute(&bind).unwrap().mul(&g.substitute(&bind).unwrap());
        assert_eq!(lhs, rhs);
        let lhs2 = f.add(&g).substitute(&bind).unwrap();
        let rhs2 = f.substitute(&bind).unwrap().add(&g.substitute(&bind).unwrap());
        assert_eq!(lhs2, rhs2);
    }
}

#[test]
fn term_order_laws() {
    let mut rng = StdRng::seed_from_u64(0xABBA);
    for kind in [OrderKind::Lex, OrderKind::GrevLex] {
        let ord = TermOrder::new(kind, vec![0, 1, 2]);
        let one = Monomial::one(3);
        for _ in 0..500 {
            let rand_mono = |rng: &mut StdRng| {
                Monomial(vec![
                    rng.gen_range(0..5u32),
                    rng.gen_range(0..5u32),
                    rng.gen_range(0..5u32),
                ])
            };
            let a = rand_mono(&mut rng);
            let b = rand_mono(&mut rng);
            let c = rand_mono(&mut rng);
            // Multiplicativity: a < b implies a*c < b*c.
            let ab = ord.cmp(&a, &b);
            assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), ab);
            // 1 is minimal.
            if !a.is_one() {
                assert_eq!(ord.cmp(&a, &one), std::cmp::Ordering::Greater);
            }
            // Totality/antisymmetry sanity.
            assert_eq!(ord.cmp(&a, &a), std::cmp::Ordering::Equal);
        }
    }
}

#[test]
fn normal_form_is_canonical_for_groebner_bases() {
    // Remainders modulo a Groebner basis are unique: reduce the same element
    // written two different ways.
    let t = table();
    let ord = TermOrder::grevlex(3);
    let gens = vec![
        parse_poly("x^2 - y", &t).unwrap().with_order(&ord),
        parse_poly("y^2 - 1", &t).unwrap().with_order(&ord),
    ];
    let f1 = parse_poly("x^4 + x^2*y^2", &t).unwrap();
    let f2 = parse_poly("(x^2 - y)*(x^2 + y) + y^2 + x^2*y^2", &t).unwrap();
    assert_eq!(f1, f2);
    assert_eq!(
        normal_form(&f1, &gens, &ord),
        normal_form(&f2, &gens, &ord)
    );
}

#[test]
fn modp_inverse_roundtrip() {
    let mut rng = StdRng::seed_from_u64(0xFACE);
    for _ in 0..500 {
        let v = rng.gen_range(1..PAPER_PRIME);
        let a = ModP::from_u64(v, PAPER_PRIME);
        assert_eq!(a.mul(&a.inv()), a.one_like());
    }
}

#[test]
fn rational_image_respects_field_ops() {
    let mut rng = StdRng::seed_from_u64(0x5EED);
    for _ in 0..300 {
        let a = big_rat(rng.gen_range(-50i64..=50), rng.gen_range(1i64..=50));
        let b = big_rat(rng.gen_range(-50i64..=50), rng.gen_range(1i64..=50));
        let pa = ratio_mod_p(&a, PAPER_PRIME).unwrap();
        let pb = ratio_mod_p(&b, PAPER_PRIME).unwrap();
        let sum: BigRational = &a + &b;
        assert_eq!(ratio_mod_p(&sum, PAPER_PRIME).unwrap(), pa.add(&pb));
        let prod: BigRational = &a * &b;
        assert_eq!(ratio_mod_p(&prod, PAPER_PRIME).unwrap(), pa.mul(&pb));
    }
}

mod proptest_laws {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = QPoly> {
        proptest::collection::vec(
            (
                proptest::collection::vec(0u32..4, 3),
                (-9i64..=9, 1i64..=5),
            ),
            0..6,
        )
        .prop_map(|raw| {
            let t = table();
            let terms = raw
                .into_iter()
                .map(|(e, (n, d))| (Monomial(e), big_rat(n, d)))
                .collect();
            QPoly::from_terms(&t, &TermOrder::grevlex(3), terms)
        })
    }

    proptest! {
        #[test]
        fn add_then_subtract_is_identity(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.add(&b).sub(&b), a);
        }

        #[test]
        fn render_parse_roundtrip(a in arb_poly()) {
            let s = render_poly(&a);
            let t = table();
            prop_assert_eq!(parse_poly(&s, &t).unwrap(), a);
        }

        #[test]
        fn zero_annihilates(a in arb_poly()) {
            let t = table();
            let z = MPoly::zero(&t);
            prop_assert!(a.mul(&z).is_zero());
        }
    }
}
