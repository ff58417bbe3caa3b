use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use flatlab::builders::{self, stack_of_boxes, unfold_rhombus, SequenceSpec};
use flatlab::cylinders::{decompose, gap_certificate, lemma22_check, v_set, Cylinder, Lemma22};
use flatlab::finiteness::{self, classify_finite_surface, classify_stack};
use flatlab::flow::saddle_connections;
use flatlab::veech::{is_veech, rotation_orbit_gap, twist_matrix};
use flatlab::{ApproxScalar, Mat2, Scalar, TranslationSurface, Vec2};

use crate::{svg, AnalyzeArgs, BuildArgs, Command, Failure};

type Outcome = Result<(), Failure>;

pub fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Build(args) => build(args),
        Command::Analyze(args) => analyze(args),
        Command::Saddles { surface, length } => {
            let s = load(&surface)?;
            let found = saddle_connections(&s, &scalar(&length)?)?;
            let mut out = String::from("hol_x,hol_y,norm_sq,start_class,end_class\n");
            for c in found {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    c.holonomy.x,
                    c.holonomy.y,
                    c.length_sq(),
                    c.start_class,
                    c.end_class
                ));
            }
            print!("{out}");
            Ok(())
        }
        Command::Cylinders { surface, dir } => {
            let s = load(&surface)?;
            emit(&decompose(&s, &vector(&dir)?)?)
        }
        Command::Vset { surface, area, length, gap } => {
            let s = load(&surface)?;
            let vs = v_set(&s, &scalar(&area)?, &scalar(&length)?)?;
            let mut value = to_value(&vs)?;
            if gap {
                let certs = vs.entries.iter().map(|e| gap_certificate(&vs, &e.vector)).collect::<Result<Vec<_>, _>>()?;
                let bad = certs.iter().filter(|c| !c.predicate_holds || c.non_disjoint_pairs > 0).count();
                value["certificates"] = to_value(&certs)?;
                print_value(&value);
                if bad > 0 {
                    return Err(Failure::Verdict(format!("{bad} gap certificates failed")));
                }
                return Ok(());
            }
            print_value(&value);
            Ok(())
        }
        Command::Veech { surface, matrix } => {
            let s = load(&surface)?;
            emit(&is_veech(&s, &parse_matrix(&matrix)?)?)
        }
        Command::Twist { surface, dir } => {
            let s = load(&surface)?;
            let d = vector(&dir)?;
            let m = twist_matrix(&s, &d)?;
            emit(&json!({ "direction": d, "matrix": m }))
        }
        Command::RhombusGap { angle, k } => {
            let bits = ApproxScalar::precision_from_env();
            // the decimal input is only known to within half an ulp
            let theta = ApproxScalar::with_error(angle, angle.abs() * f64::EPSILON / 2.0, bits);
            emit(&rotation_orbit_gap(&theta, k)?)
        }
        Command::VerifyLemmas { preset, max_slope, length } => verify_lemmas(&preset, max_slope, length.as_deref()),
    }
}

fn build(args: BuildArgs) -> Outcome {
    let surface = if let Some(name) = &args.preset {
        builders::preset(name)
            .ok_or_else(|| anyhow!("unknown preset {name:?}; expected one of {}", builders::PRESETS.join(", ")))?
    } else if let Some(spec) = &args.stack {
        let (h, w) = stack_specs(spec)?;
        let levels = args.levels.ok_or_else(|| anyhow!("--stack needs --levels"))?;
        stack_of_boxes(&h, &w, levels)?.surface
    } else if let Some(alpha) = args.rhombus {
        let bits = ApproxScalar::precision_from_env();
        let u = unfold_rhombus(&ApproxScalar::with_error(alpha, alpha.abs() * f64::EPSILON / 2.0, bits))?;
        if u.non_closing {
            eprintln!("warning: the unfolding did not close within {} copies", u.copies.len());
        }
        u.surface
    } else {
        return Err(anyhow!("build needs one of --preset, --stack or --rhombus").into());
    };
    let text = pretty(&to_value(&surface)?);
    match &args.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    if let Some(path) = &args.svg {
        fs::write(path, svg::layout(&surface)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn analyze(args: AnalyzeArgs) -> Outcome {
    if let Some(path) = &args.surface {
        let s = load(path)?;
        let mut value = to_value(&classify_finite_surface(&s)?)?;
        let cones = s.cone_points()?;
        value["surface"] = json!({
            "backend": s.backend(),
            "polygons": s.polygons().len(),
            "genus": s.genus()?,
            "cone_angle_multiples": cones.iter().map(|c| c.angle_multiple).collect::<Vec<_>>(),
        });
        print_value(&value);
        Ok(())
    } else if let Some(spec) = &args.stack {
        let (h, w) = stack_specs(spec)?;
        emit(&classify_stack(&h, &w)?)
    } else if let Some(name) = &args.example {
        let names: Vec<&str> = finiteness::preset_table().iter().map(|e| e.name).collect();
        let entry = finiteness::preset(name)
            .ok_or_else(|| anyhow!("unknown example {name:?}; expected one of {}", names.join(", ")))?;
        emit(&entry)
    } else {
        Err(anyhow!("analyze needs a surface file, --stack or --example").into())
    }
}

#[derive(Default, Serialize)]
struct SweepCounts {
    pairs: usize,
    disjoint: usize,
    coincide: usize,
    holds: usize,
    violations: usize,
}

fn verify_lemmas(preset: &str, max_slope: i64, length: Option<&str>) -> Outcome {
    let s = builders::preset(preset)
        .ok_or_else(|| anyhow!("unknown preset {preset:?}; expected one of {}", builders::PRESETS.join(", ")))?;
    if max_slope < 1 {
        return Err(anyhow!("--max-slope must be at least 1").into());
    }
    let mut dirs = Vec::new();
    for p in 0..=max_slope {
        for q in -max_slope..=max_slope {
            if num_gcd(p, q) == 1 && (p > 0 || q > 0) {
                dirs.push(Vec2::ints(p, q));
            }
        }
    }
    let per_dir: Vec<Vec<Cylinder>> = dirs.par_iter().map(|d| decompose(&s, d)).collect::<Result<_, _>>()?;
    let cylinders: Vec<&Cylinder> = per_dir.iter().flatten().collect();
    let pairs: Vec<(usize, usize)> =
        (0..cylinders.len()).flat_map(|i| (i + 1..cylinders.len()).map(move |j| (i, j))).collect();
    let results: Vec<Lemma22> =
        pairs.par_iter().map(|&(i, j)| lemma22_check(cylinders[i], cylinders[j])).collect::<Result<_, _>>()?;
    let mut counts = SweepCounts { pairs: results.len(), ..Default::default() };
    let mut violations = Vec::new();
    for (r, &(i, j)) in results.iter().zip(&pairs) {
        match r {
            Lemma22::Disjoint => counts.disjoint += 1,
            Lemma22::Coincide => counts.coincide += 1,
            Lemma22::Holds { .. } => counts.holds += 1,
            Lemma22::Violation { .. } => {
                counts.violations += 1;
                violations.push(json!({
                    "first": cylinders[i].core_holonomy,
                    "second": cylinders[j].core_holonomy,
                    "result": r,
                }));
            }
        }
    }

    let bound = match length {
        Some(l) => scalar(l)?,
        None => Scalar::from_int(max_slope),
    };
    let areas: BTreeSet<Scalar> = cylinders.iter().map(|c| c.area.clone()).collect();
    let mut gap_reports = Vec::new();
    let mut gap_failures = 0;
    for area in &areas {
        let vs = v_set(&s, area, &bound)?;
        let mut failed = 0;
        let mut neighbors = 0;
        for e in &vs.entries {
            let cert = gap_certificate(&vs, &e.vector)?;
            neighbors += cert.neighbors.len();
            if !cert.predicate_holds || cert.non_disjoint_pairs > 0 {
                failed += 1;
            }
        }
        gap_failures += failed;
        gap_reports.push(json!({
            "area": area,
            "length": bound,
            "vectors": vs.entries.len(),
            "neighbors_within_gap": neighbors,
            "failed_certificates": failed,
        }));
    }

    let pass = counts.violations == 0 && gap_failures == 0;
    print_value(&json!({
        "preset": preset,
        "max_slope": max_slope,
        "directions": dirs.len(),
        "cylinders": cylinders.len(),
        "cylinder_angle": counts,
        "violations": violations,
        "gap_certificates": gap_reports,
        "pass": pass,
    }));
    if pass {
        Ok(())
    } else {
        Err(Failure::Verdict(format!(
            "{} angle violations, {gap_failures} failed gap certificates",
            counts.violations
        )))
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn load(path: &Path) -> anyhow::Result<TranslationSurface> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    TranslationSurface::from_json(&text).with_context(|| format!("loading {}", path.display()))
}

fn scalar(s: &str) -> anyhow::Result<Scalar> {
    s.parse::<Scalar>().map_err(|e| anyhow!("{e}"))
}

fn vector(s: &str) -> anyhow::Result<Vec2> {
    let parts: Vec<&str> = s.split(',').collect();
    let [x, y] = parts.as_slice() else {
        bail!("expected a direction `p,q`, got {s:?}");
    };
    Ok(Vec2::new(scalar(x)?, scalar(y)?))
}

fn parse_matrix(s: &str) -> anyhow::Result<Mat2> {
    let rows: Vec<Vec2> = s.split(';').map(vector).collect::<anyhow::Result<_>>().map_err(|_| {
        anyhow!("expected a matrix `a,b;c,d`, got {s:?}")
    })?;
    let [r0, r1] = rows.as_slice() else {
        bail!("expected a matrix `a,b;c,d`, got {s:?}");
    };
    Ok(Mat2::new(r0.x.clone(), r0.y.clone(), r1.x.clone(), r1.y.clone())?)
}

fn stack_specs(args: &[String]) -> anyhow::Result<(SequenceSpec, SequenceSpec)> {
    let (mut h, mut w) = (None, None);
    for a in args {
        match a.split_once('=') {
            Some(("h", spec)) => h = Some(spec.parse::<SequenceSpec>()?),
            Some(("w", spec)) => w = Some(spec.parse::<SequenceSpec>()?),
            _ => bail!("expected `h=<spec>` or `w=<spec>`, got {a:?}"),
        }
    }
    match (h, w) {
        (Some(h), Some(w)) => Ok((h, w)),
        _ => bail!("--stack needs both h=<spec> and w=<spec>"),
    }
}

fn to_value<T: Serialize>(x: &T) -> anyhow::Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

fn print_value(v: &Value) {
    print!("{}", pretty(v));
}

fn emit<T: Serialize>(x: &T) -> Outcome {
    print_value(&to_value(x)?);
    Ok(())
}
