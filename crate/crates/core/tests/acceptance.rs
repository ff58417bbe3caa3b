//! Acceptance suite: one PASS/FAIL line per criterion.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use flatlab::builders::{l_surface, square_torus, stack_of_boxes, SequenceSpec};
use flatlab::cylinders::{decompose, gap_certificate, lemma22_check, v_set, Cylinder, Lemma22};
use flatlab::finiteness::{self, classify_finite_surface, classify_stack, power_series_enclosure, FinitenessReport, Verdict};
use flatlab::flow::saddle_connections;
use flatlab::inequalities::gap_holds;
use flatlab::veech::{is_veech, rotation_orbit_gap, twist_matrix};
use flatlab::{ApproxScalar, Mat2, Scalar, Vec2};

type Check = Result<String, String>;

fn q(s: &str) -> Scalar {
    s.parse().unwrap()
}

fn spec(s: &str) -> SequenceSpec {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn verdicts(r: &FinitenessReport) -> [Verdict; 4] {
    [r.finite_area.value, r.bounded.value, r.totally_bounded.value, r.finite_analytic_type.value]
}

fn example_table() -> Check {
    use Verdict::{No, Yes};
    let start = Instant::now();
    // [finite area, bounded, totally bounded, finite analytic type]
    let stacks = [
        ("n^-1", "n^-1", [Yes, Yes, Yes, No]),
        ("n^1", "n^-3", [Yes, No, No, No]),
        ("n^0", "n^-2", [Yes, Yes, No, No]),
        ("n^0", "n^-1", [No, Yes, No, No]),
        ("n^-1/2", "n^-1/2", [No, Yes, Yes, No]),
    ];
    for (h, w, expected) in stacks {
        let r = classify_stack(&spec(h), &spec(w)).map_err(|e| format!("h={h} w={w}: {e}"))?;
        ensure(verdicts(&r) == expected, || format!("h={h} w={w}: got {:?}", verdicts(&r)))?;
    }
    let cyl = finiteness::preset("infinite-cylinder").ok_or("no infinite-cylinder preset")?;
    ensure(verdicts(&cyl.report) == [No, No, No, Yes], || format!("infinite cylinder: {:?}", verdicts(&cyl.report)))?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("6 examples in {:?}", start.elapsed()))
}

fn report_corpus() -> Vec<FinitenessReport> {
    let mut out: Vec<FinitenessReport> = finiteness::preset_table().into_iter().map(|e| e.report).collect();
    for ph in ["-2", "-1", "-1/2", "0", "1/2", "1", "2"] {
        for pw in ["-3", "-2", "-3/2", "-1", "-1/2"] {
            let (h, w) = (spec(&format!("n^{ph}")), spec(&format!("n^{pw}")));
            out.push(classify_stack(&h, &w).unwrap());
        }
    }
    for s in [square_torus(), l_surface()] {
        out.push(classify_finite_surface(&s).unwrap());
    }
    for n in 1..=6 {
        let st = stack_of_boxes(&spec("n^-1"), &spec("n^-1"), n).unwrap();
        out.push(classify_finite_surface(&st.surface).unwrap());
    }
    out
}

fn proposition_invariant() -> Check {
    let corpus = report_corpus();
    let bad = corpus.iter().filter(|r| !r.is_consistent()).count();
    ensure(bad == 0, || format!("{bad} reports totally bounded but unbounded"))?;
    Ok(format!("{} reports", corpus.len()))
}

fn torus_veech_completeness() -> Check {
    let start = Instant::now();
    let t = square_torus();
    let (mut members, mut checked) = (0, 0);
    for [a, b, c, d] in Mat2::integer_box(3) {
        let det = a * d - b * c;
        let member = match Mat2::ints(a, b, c, d) {
            Ok(m) => is_veech(&t, &m).map_err(|e| e.to_string())?.is_member(),
            Err(_) => false,
        };
        ensure(member == (det == 1), || format!("[[{a},{b}],[{c},{d}]]: member={member}, det={det}"))?;
        members += member as usize;
        checked += 1;
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("{checked} matrices, {members} members, {:?}", start.elapsed()))
}

fn primitive_directions(r: i64) -> Vec<Vec2> {
    let gcd = |mut a: i64, mut b: i64| {
        (a, b) = (a.abs(), b.abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let mut out = Vec::new();
    for p in 0..=r {
        for q in -r..=r {
            if gcd(p, q) == 1 && (p > 0 || q > 0) {
                out.push(Vec2::ints(p, q));
            }
        }
    }
    out
}

fn lemma22_sweep() -> Check {
    let mut summary = Vec::new();
    for (name, s) in [("torus", square_torus()), ("l-surface", l_surface())] {
        let cyls: Vec<Cylinder> = primitive_directions(5)
            .iter()
            .map(|d| decompose(&s, d))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?
            .into_iter()
            .flatten()
            .collect();
        let (mut holds, mut violations) = (0, 0);
        for i in 0..cyls.len() {
            for j in i + 1..cyls.len() {
                match lemma22_check(&cyls[i], &cyls[j]).map_err(|e| e.to_string())? {
                    Lemma22::Holds { .. } => holds += 1,
                    Lemma22::Violation { .. } => violations += 1,
                    _ => {}
                }
            }
        }
        ensure(violations == 0, || format!("{name}: {violations} violations"))?;
        ensure(holds > 0, || format!("{name}: no intersecting pairs were tested"))?;
        summary.push(format!("{name}: {} cylinders, {holds} intersecting pairs", cyls.len()));
    }
    Ok(summary.join("; "))
}

fn gap_certificates() -> Check {
    let start = Instant::now();
    let vs = v_set(&square_torus(), &q("1"), &q("5")).map_err(|e| e.to_string())?;
    ensure(!vs.entries.is_empty(), || "empty VSet".into())?;
    let mut neighbors = 0;
    for e in &vs.entries {
        ensure(e.epsilon.is_positive(), || format!("{}: epsilon {}", e.vector, e.epsilon))?;
        ensure(gap_holds(&vs.area, &e.vector, &e.epsilon), || format!("{}: predicate fails", e.vector))?;
        let cert = gap_certificate(&vs, &e.vector).map_err(|e| e.to_string())?;
        ensure(cert.predicate_holds && cert.non_disjoint_pairs == 0, || format!("{}: {cert:?}", e.vector))?;
        neighbors += cert.neighbors.len();
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("{} vectors, {neighbors} neighbors, {:?}", vs.entries.len(), start.elapsed()))
}

fn saddle_counts() -> Check {
    // primitive integer vectors of norm <= L, counted by brute force
    let expected = [(q("1"), 4), (q("3/2"), 8), (q("2"), 8), (q("3"), 16), (q("4"), 32), (q("5"), 48), (q("6"), 72), (q("7"), 88), (q("8"), 120), (q("9"), 152), (q("10"), 192)];
    let t = square_torus();
    for (l, n) in &expected {
        let got = saddle_connections(&t, l).map_err(|e| e.to_string())?.len();
        ensure(got == *n, || format!("L={l}: {got} != {n}"))?;
    }
    Ok(format!("{} bounds", expected.len()))
}

fn twist_elements() -> Check {
    let l = l_surface();
    let h = twist_matrix(&l, &Vec2::ints(1, 0)).map_err(|e| e.to_string())?;
    ensure(h == Mat2::ints(1, 2, 0, 1).unwrap(), || format!("horizontal twist {h}"))?;
    ensure(is_veech(&l, &h).map_err(|e| e.to_string())?.is_member(), || "horizontal twist not a member".into())?;
    let v = twist_matrix(&l, &Vec2::ints(0, 1)).map_err(|e| e.to_string())?;
    ensure(v == Mat2::ints(1, 0, -2, 1).unwrap(), || format!("vertical twist {v}"))?;
    ensure(is_veech(&l, &v).map_err(|e| e.to_string())?.is_member(), || "vertical twist not a member".into())?;
    ensure(is_veech(&l, &v.inverse()).map_err(|e| e.to_string())?.is_member(), || "inverse vertical twist".into())?;
    Ok(format!("horizontal {h}, vertical {v}"))
}

fn stack_geometry() -> Check {
    let n_spec = spec("n^-1");
    let limit = power_series_enclosure(&Scalar::one(), &q("-2"), 10_000).bounds().ok_or("divergent enclosure")?.1;
    let mut partial = Scalar::zero();
    let mut prev = Scalar::zero();
    for n in 1..=100u64 {
        partial += &Scalar::ratio(1, (n * n) as i64).unwrap();
        let st = stack_of_boxes(&n_spec, &n_spec, n as usize).map_err(|e| e.to_string())?;
        let area = st.surface.area();
        ensure(area == partial, || format!("N={n}: area {area} != {partial}"))?;
        ensure(area > prev, || format!("N={n}: not increasing"))?;
        ensure(area < limit, || format!("N={n}: above enclosure"))?;
        prev = area;
    }
    ensure(prev == partial, || "final partial sum".into())?;
    let mut genera = Vec::new();
    for n in 2..=6 {
        genera.push(stack_of_boxes(&n_spec, &n_spec, n).unwrap().surface.genus().map_err(|e| e.to_string())?);
    }
    ensure(genera.windows(2).all(|w| w[0] < w[1]), || format!("genera {genera:?}"))?;
    Ok(format!("areas N=1..100 exact, genera N=2..6 {genera:?}"))
}

fn rhombus_orbit() -> Check {
    let theta = ApproxScalar::exact(1.0);
    let mut gaps = Vec::new();
    for k in [100u64, 1_000, 10_000] {
        let r = rotation_orbit_gap(&theta, k).map_err(|e| e.to_string())?;
        ensure(r.finite_order.is_none(), || format!("K={k}: finite order {:?}", r.finite_order))?;
        let g = r.min_gap.ok_or("no gap")?;
        let bound = 2.0 * std::f64::consts::PI / k as f64;
        ensure(g.value <= bound + g.error, || format!("K={k}: gap {g} above {bound}"))?;
        gaps.push(g.value);
    }
    ensure(gaps.windows(2).all(|w| w[1] <= w[0]), || format!("gaps not nonincreasing: {gaps:?}"))?;
    Ok(format!("gaps {gaps:?}"))
}

fn equivariance() -> Check {
    let torus_twist = Mat2::ints(1, 1, 0, 1).unwrap();
    let l_twist = Mat2::ints(1, 2, 0, 1).unwrap();
    let cases = [
        (square_torus(), torus_twist.clone(), Vec2::ints(1, 0)),
        (square_torus(), torus_twist, Vec2::ints(1, 1)),
        (l_surface(), l_twist.clone(), Vec2::ints(1, 0)),
        (l_surface(), l_twist, Vec2::ints(1, 1)),
    ];
    let mut matched = 0;
    for (s, m, d) in cases {
        let image = s.apply_matrix(&m).map_err(|e| e.to_string())?;
        let before = decompose(&s, &d).map_err(|e| e.to_string())?;
        let mut after = decompose(&image, &m.apply(&d)).map_err(|e| e.to_string())?;
        ensure(before.len() == after.len(), || format!("{d}: different cylinder counts"))?;
        let mut moved: Vec<Cylinder> = before.iter().map(|c| c.transformed(&m, image.fingerprint())).collect();
        let key = |c: &Cylinder| c.normalized_footprint();
        moved.sort_by_key(key);
        after.sort_by_key(key);
        for (a, b) in moved.iter().zip(&after) {
            ensure(a.area == b.area, || format!("{d}: areas {} vs {}", a.area, b.area))?;
            ensure(a.modulus == b.modulus, || format!("{d}: moduli {} vs {}", a.modulus, b.modulus))?;
            ensure(a.core_holonomy == b.core_holonomy, || format!("{d}: cores differ"))?;
            ensure(a.normalized_footprint() == b.normalized_footprint(), || format!("{d}: footprints differ"))?;
            ensure(lemma22_check(a, b).map_err(|e| e.to_string())? == Lemma22::Coincide, || format!("{d}: not the same cylinder"))?;
            matched += 1;
        }
    }
    Ok(format!("{matched} cylinders matched in 4 decompositions"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("paper example table", example_table),
        ("total boundedness implies boundedness", proposition_invariant),
        ("torus Veech completeness", torus_veech_completeness),
        ("cylinder angle sweep", lemma22_sweep),
        ("gap certificates", gap_certificates),
        ("saddle connection counts", saddle_counts),
        ("twist elements", twist_elements),
        ("stack of boxes geometry", stack_geometry),
        ("rhombus orbit gaps", rhombus_orbit),
        ("twist equivariance", equivariance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
