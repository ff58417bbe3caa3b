use flatlab::builders::{l_surface, square_torus, stack_of_boxes, SequenceSpec};
use flatlab::{Mat2, TranslationSurface, Vec2};
use proptest::prelude::*;

fn generators() -> [Mat2; 4] {
    [
        Mat2::ints(1, 1, 0, 1).unwrap(),
        Mat2::ints(1, -1, 0, 1).unwrap(),
        Mat2::ints(0, -1, 1, 0).unwrap(),
        Mat2::ints(0, 1, -1, 0).unwrap(),
    ]
}

fn word(letters: &[usize]) -> Mat2 {
    let g = generators();
    letters.iter().fold(Mat2::identity(), |m, &i| m.mul(&g[i]))
}

fn surfaces() -> Vec<TranslationSurface> {
    let n = SequenceSpec::power(-1, 1);
    vec![square_torus(), l_surface(), stack_of_boxes(&n, &n, 3).unwrap().surface]
}

#[test]
fn json_round_trip_is_exact() {
    for s in surfaces() {
        let text = s.to_json();
        let back = TranslationSurface::from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json(), text);
    }
}

#[test]
fn malformed_json_reports_location() {
    let err = TranslationSurface::from_json("{\n  \"backend\": \"exact\",\n  \"polygons\": [oops]\n}").unwrap_err();
    assert!(err.to_string().contains("line 3"), "{err}");
}

#[test]
fn canonical_form_ignores_presentation() {
    let s = l_surface();
    let moved = s
        .relabel(&[2, 0, 1], &[1, 3, 2])
        .unwrap()
        .translate_polygons(&[Vec2::ints(7, 1), Vec2::ints(-3, 4), Vec2::ints(0, -9)]);
    assert_eq!(moved.delaunay_canonical().unwrap(), s.delaunay_canonical().unwrap());
    assert!(moved.equivalent(&s).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sl2z_images_of_torus_are_equivalent(letters in prop::collection::vec(0usize..4, 0..8)) {
        let t = square_torus();
        let image = t.apply_matrix(&word(&letters)).unwrap();
        prop_assert_eq!(image.area(), t.area());
        prop_assert!(image.validate().is_valid());
        prop_assert!(image.equivalent(&t).unwrap());
    }

    #[test]
    fn area_and_genus_survive_area_preserving_maps(letters in prop::collection::vec(0usize..4, 0..6), idx in 0usize..3) {
        let s = surfaces().swap_remove(idx);
        let image = s.apply_matrix(&word(&letters)).unwrap();
        prop_assert_eq!(image.area(), s.area());
        prop_assert_eq!(image.genus().unwrap(), s.genus().unwrap());
        let canon = image.delaunay_canonical().unwrap();
        prop_assert_eq!(canon.area(), s.area());
        prop_assert_eq!(canon.delaunay_canonical().unwrap(), canon.clone());
    }

    #[test]
    fn canonical_form_is_a_complete_invariant_under_relabeling(shift in prop::collection::vec(0usize..4, 3), perm in 0usize..6) {
        let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let s = l_surface();
        let r = s.relabel(&orders[perm], &shift).unwrap();
        prop_assert!(r.validate().is_valid());
        prop_assert!(r.equivalent(&s).unwrap());
    }
}
