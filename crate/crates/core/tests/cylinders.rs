use flatlab::builders::{l_surface, square_torus, stack_of_boxes, SequenceSpec};
use flatlab::cylinders::{decompose, gap_certificate, lemma22_check, v_set, Lemma22};
use flatlab::veech::{is_veech, twist_matrix};
use flatlab::{Scalar, TranslationSurface, Vec2};
use proptest::prelude::*;

fn q(s: &str) -> Scalar {
    s.parse().unwrap()
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    (a, b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn stack3() -> TranslationSurface {
    let n = SequenceSpec::power(-1, 1);
    stack_of_boxes(&n, &n, 3).unwrap().surface
}

#[test]
fn l_surface_diagonal() {
    // the (1,1) direction of the L is a single cylinder of area 3
    let c = decompose(&l_surface(), &Vec2::ints(1, 1)).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].core_holonomy, Vec2::ints(3, 3));
    assert_eq!(c[0].modulus, q("1/6"));
}

#[test]
fn stack_horizontal_cylinders() {
    // boxes of the truncation are glued side to side into horizontal
    // cylinders of circumference w_n and height h_n
    let c = decompose(&stack3(), &Vec2::ints(1, 0)).unwrap();
    let mut cores: Vec<Scalar> = c.iter().map(|c| c.core_holonomy.x.clone()).collect();
    cores.sort();
    assert_eq!(cores, vec![q("1/3"), q("1/2"), q("1")]);
    for cyl in &c {
        assert_eq!(cyl.modulus, Scalar::one());
    }
}

#[test]
fn boundaries_close_up() {
    for s in [l_surface(), stack3()] {
        for d in [Vec2::ints(1, 0), Vec2::ints(0, 1), Vec2::ints(2, 1)] {
            for c in decompose(&s, &d).unwrap() {
                for side in [&c.bottom_boundary, &c.top_boundary] {
                    assert!(!side.is_empty());
                    let total = side.iter().fold(Vec2::zero(), |acc, sc| &acc + &sc.holonomy);
                    assert_eq!(total, c.core_holonomy);
                }
            }
        }
    }
}

#[test]
fn vset_neighbours_on_the_l() {
    let vs = v_set(&l_surface(), &q("1"), &q("4")).unwrap();
    for e in &vs.entries {
        let g = gap_certificate(&vs, &e.vector).unwrap();
        assert!(g.predicate_holds);
        assert_eq!(g.non_disjoint_pairs, 0);
        assert!(g.neighbors.iter().all(|n| n.disjoint));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn areas_are_conserved(x in -5i64..=5, y in -5i64..=5, pick in 0usize..3) {
        prop_assume!(gcd(x, y) == 1);
        let s = vec![square_torus(), l_surface(), stack3()].swap_remove(pick);
        let cyl = decompose(&s, &Vec2::ints(x, y)).unwrap();
        let total: Scalar = cyl.iter().map(|c| c.area.clone()).sum();
        prop_assert_eq!(total, s.area());
        for c in &cyl {
            prop_assert_eq!(&c.area, &(&c.modulus * &c.circumference_sq()));
            prop_assert_eq!(&c.height_sq, &(c.modulus.square() * c.circumference_sq()));
            prop_assert_eq!(c.direction.clone(), Vec2::ints(x, y));
            prop_assert_eq!(lemma22_check(c, c).unwrap(), Lemma22::Coincide);
        }
    }

    #[test]
    fn twists_are_unipotent_members(x in -3i64..=3, y in -3i64..=3) {
        prop_assume!(gcd(x, y) == 1);
        let l = l_surface();
        let d = Vec2::ints(x, y);
        let m = twist_matrix(&l, &d).unwrap();
        prop_assert_eq!(m.trace(), Scalar::from_int(2));
        prop_assert!(!m.is_identity());
        prop_assert_eq!(m.apply(&d), d);
        prop_assert!(is_veech(&l, &m).unwrap().is_member());
    }

    #[test]
    fn angle_lemma_on_random_pairs(a in (-4i64..=4, -4i64..=4), b in (-4i64..=4, -4i64..=4)) {
        prop_assume!(gcd(a.0, a.1) == 1 && gcd(b.0, b.1) == 1);
        let s = l_surface();
        let ca = decompose(&s, &Vec2::ints(a.0, a.1)).unwrap();
        let cb = decompose(&s, &Vec2::ints(b.0, b.1)).unwrap();
        for x in &ca {
            for y in &cb {
                prop_assert!(!lemma22_check(x, y).unwrap().is_violation());
            }
        }
    }
}
