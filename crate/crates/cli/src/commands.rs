//! Subcommand implementations.

use crate::input;
use anyhow::{anyhow, bail, Context, Result};
use mixed_links::covering::{self, CoveringSpec, Orientation};
use mixed_links::geometry;
use mixed_links::homogeneity::{detect_weights, euler_residuals, WeightVector};
use mixed_links::link_certifier::{
    certify_holomorphic_like, certify_open_book, sample_link, sample_off_link,
    transversality_check, CertificationReport, SampleConfig, Sign, Verdict,
};
use mixed_links::mixed_poly::MixedPolynomial;
use mixed_links::newton_boundary::{self, FaceClass, NewtonError};
use mixed_links::random;
use mixed_links::rel_err;
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};

/// Render a float exactly as serde_json would, so text and JSON output carry
/// identical digit strings.
fn num(v: f64) -> String {
    serde_json::to_string(&v).expect("finite float")
}

fn face_class_json(c: &FaceClass) -> Value {
    match c {
        FaceClass::StronglyPolarPositive => json!({"kind": "strongly-polar-positive"}),
        FaceClass::PolarPositive { witness, polar_degree } => json!({
            "kind": "polar-positive",
            "witness": witness.entries(),
            "polar_degree": polar_degree,
        }),
        FaceClass::Neither => json!({"kind": "neither"}),
    }
}

pub fn analyze(
    file: &Path,
    n: Option<usize>,
    json: bool,
    probe_trials: usize,
    probe_tol: f64,
    seed: u64,
) -> Result<u8> {
    let (poly, dim) = input::load_polynomial(file, n)?;
    if poly.is_zero() {
        bail!("degenerate input: the zero polynomial has no analysis");
    }
    let homogeneity = detect_weights(&poly).map_err(|e| anyhow!("{e}"))?;
    let conv = newton_boundary::is_convenient(&poly);
    let faces = newton_boundary::top_faces(&poly).map_err(|e| anyhow!("{e}"))?;
    let classified = match newton_boundary::classify_face_type_seeded(&poly, seed) {
        Ok(rep) => Some(rep),
        Err(NewtonError::NotConvenient { .. }) => None,
        Err(e) => return Err(anyhow!("{e}")),
    };
    let probe = newton_boundary::nondegeneracy_probe(&poly, probe_trials, probe_tol, seed)
        .map_err(|e| anyhow!("{e}"))?;

    let convenience_note = if conv.convenient {
        None
    } else {
        Some(format!(
            "not convenient: axes {} missing",
            conv.missing_axes.iter().map(|a| (a + 1).to_string()).collect::<Vec<_>>().join(",")
        ))
    };

    let report = json!({
        "polynomial": poly.to_input_syntax('z'),
        "n": dim,
        "homogeneity": homogeneity,
        "convenient": conv.convenient,
        "missing_axes": conv.missing_axes.iter().map(|a| a + 1).collect::<Vec<_>>(),
        "note": convenience_note,
        "top_faces": faces.iter().map(|f| json!({
            "normal": f.normal.entries(),
            "dimension": f.dimension,
            "radial_degree": f.radial_degree,
            "face_polynomial": f.face_poly.to_input_syntax('z'),
            "classification": face_class_json(&f.classification),
        })).collect::<Vec<_>>(),
        "overall": classified.as_ref().map(|r| serde_json::to_value(r.overall).unwrap()),
        "subface_trials": classified.as_ref().map(|r| r.subface_trials),
        "subface_failures": classified.as_ref().map(|r| {
            r.subface_failures.iter().map(|w| w.entries().to_vec()).collect::<Vec<_>>()
        }),
        "nondegeneracy": {
            "trials": probe.trials,
            "tol": probe.tol,
            "witness_found": probe.witness_found,
            "min_residual": probe.min_residual,
            "note": probe.note,
            "faces": probe.faces.iter().map(|f| json!({
                "normal": f.normal.entries(),
                "attempted": f.attempted,
                "converged": f.converged,
                "torus_points": f.torus_points,
                "failed": f.failed,
                "min_residual": f.min_residual,
                "witness": f.witness.as_ref().map(|(pt, r)| json!({
                    "point": pt.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                    "residual": r,
                })),
            })).collect::<Vec<_>>(),
        },
    });

    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("polynomial: {}", poly.to_input_syntax('z'));
        match (&homogeneity.radial, &homogeneity.polar) {
            (Some(r), Some(p)) => {
                println!(
                    "radial: Q={:?} m_r={}{}",
                    r.weights.entries(),
                    r.degree,
                    if r.unique { "" } else { " (non-unique)" }
                );
                println!(
                    "polar:  P={:?} m_p={}{}",
                    p.weights.entries(),
                    p.degree,
                    if p.unique { "" } else { " (non-unique)" }
                );
                println!(
                    "strongly polar: {} (positive: {})",
                    homogeneity.strongly_polar, homogeneity.strongly_polar_positive
                );
            }
            _ => println!(
                "weighted homogeneity: radial {}, polar {}",
                homogeneity.radial.is_some(),
                homogeneity.polar.is_some()
            ),
        }
        match &convenience_note {
            Some(note) => println!("{note}"),
            None => println!("convenient: true"),
        }
        for f in &faces {
            println!(
                "top face P={:?} rdeg={} dim={} class={} poly={}",
                f.normal.entries(),
                f.radial_degree,
                f.dimension,
                match &f.classification {
                    FaceClass::StronglyPolarPositive => "strongly-polar-positive".to_string(),
                    FaceClass::PolarPositive { witness, polar_degree } =>
                        format!("polar-positive(P'={:?}, pdeg={})", witness.entries(), polar_degree),
                    FaceClass::Neither => "neither".to_string(),
                },
                f.face_poly.to_input_syntax('z')
            );
        }
        if let Some(rep) = &classified {
            println!("overall: {}", serde_json::to_value(rep.overall)?.as_str().unwrap_or("?"));
            println!(
                "subface probe: {} trials, {} failures",
                rep.subface_trials,
                rep.subface_failures.len()
            );
        }
        println!(
            "non-degeneracy: witness_found={} min_residual={} ({})",
            probe.witness_found,
            probe.min_residual.map(num).unwrap_or_else(|| "none".into()),
            probe.note
        );
    }
    Ok(0)
}

pub fn pullback(
    file: &Path,
    a: &str,
    b: &str,
    n: Option<usize>,
    out: Option<PathBuf>,
) -> Result<u8> {
    let (f, dim) = input::load_polynomial(file, n)?;
    let spec = input::covering_spec(a, b, dim)?;
    let g = covering::pullback(&f, &spec).map_err(|e| anyhow!("{e}"))?;
    let text = g.to_input_syntax('w');
    match &out {
        Some(path) => {
            std::fs::write(path, format!("{text}\n"))
                .with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {}", path.display());
        }
        None => println!("{text}"),
    }
    println!("covering degree: {}", covering::covering_degree(&spec));
    if !f.is_zero() {
        let rep = detect_weights(&f).map_err(|e| anyhow!("{e}"))?;
        if let (Some(rad), Some(pol)) = (rep.radial, rep.polar) {
            if pol.degree != 0 {
                let t = covering::transform_weights(
                    &rad.weights,
                    rad.degree,
                    &pol.weights,
                    pol.degree,
                    &spec,
                )
                .map_err(|e| anyhow!("{e}"))?;
                println!(
                    "pullback radial: Q={:?} rdeg {}",
                    t.radial.weights.entries(),
                    t.radial.degree
                );
                println!(
                    "pullback polar:  P={:?} pdeg {}",
                    t.polar.weights.entries(),
                    t.polar.degree
                );
            }
        }
    }
    Ok(0)
}

pub struct CertifyArgs {
    pub file: Option<PathBuf>,
    pub n: Option<usize>,
    pub check: String,
    pub radius: String,
    pub samples: usize,
    pub seed: u64,
    pub sphere_weights: Option<String>,
    pub expect_sign: Option<String>,
    pub pullback_of: Option<PathBuf>,
    pub a: Option<String>,
    pub b: Option<String>,
    pub tube_delta: f64,
    pub emit_samples: Option<PathBuf>,
    pub json: bool,
}

/// Resolve (g, optional (f, spec)) from the positional file and/or the
/// --pullback-of metadata.
fn resolve_inputs(args: &CertifyArgs) -> Result<(MixedPolynomial, usize, Option<(MixedPolynomial, CoveringSpec)>)> {
    match (&args.file, &args.pullback_of) {
        (file, Some(fpath)) => {
            let (f, dim) = input::load_polynomial(fpath, args.n)?;
            let (a, b) = match (&args.a, &args.b) {
                (Some(a), Some(b)) => (a.clone(), b.clone()),
                _ => bail!("--pullback-of requires --a and --b"),
            };
            let spec = input::covering_spec(&a, &b, dim)?;
            let g = covering::pullback(&f, &spec).map_err(|e| anyhow!("{e}"))?;
            if let Some(gpath) = file {
                let (g_given, _) = input::load_polynomial(gpath, Some(dim))?;
                if g_given != g {
                    bail!(
                        "{} does not equal the pull-back of {} under the given covering",
                        gpath.display(),
                        fpath.display()
                    );
                }
            }
            Ok((g, dim, Some((f, spec))))
        }
        (Some(gpath), None) => {
            let (g, dim) = input::load_polynomial(gpath, args.n)?;
            Ok((g, dim, None))
        }
        (None, None) => bail!("provide a polynomial file or --pullback-of"),
    }
}

pub fn certify(args: CertifyArgs) -> Result<u8> {
    let (g, dim, lift) = resolve_inputs(&args)?;
    let radii = input::parse_radii(&args.radius)?;
    let sphere_weights = match &args.sphere_weights {
        Some(t) => WeightVector::new(input::parse_weights(t, dim)?)
            .map_err(|e| anyhow!("{e}"))?,
        None => WeightVector::ones(dim),
    };
    let expected = match args.expect_sign.as_deref() {
        Some("-") => Sign::Negative,
        Some(_) => Sign::Positive,
        None => match &lift {
            Some((_, spec)) if spec.orientation == Orientation::AntiHolomorphicLike => {
                Sign::Negative
            }
            _ => Sign::Positive,
        },
    };
    let checks: Vec<&str> = match args.check.as_str() {
        "all" => {
            let mut v = vec!["transversality", "contact"];
            if lift.is_some() {
                v.push("openbook");
            }
            v
        }
        one => vec![one],
    };
    if checks.contains(&"openbook") && lift.is_none() {
        bail!("the openbook check needs --pullback-of FILE --a A --b B");
    }

    // One job per (radius, check) pair; parallel execution with the output
    // kept in input order, so runs are deterministic.
    let jobs: Vec<(f64, &str)> = radii
        .iter()
        .flat_map(|&r| checks.iter().map(move |&c| (r, c)))
        .collect();
    let make_cfg = |radius: f64| SampleConfig {
        radius,
        sphere_weights: sphere_weights.clone(),
        n_samples: args.samples,
        seed: args.seed,
        tube_delta: args.tube_delta,
        ..SampleConfig::new(dim)
    };
    let reports: Vec<CertificationReport> = jobs
        .par_iter()
        .map(|&(radius, check)| {
            let cfg = make_cfg(radius);
            match check {
                "transversality" => transversality_check(&g, &cfg).map_err(|e| anyhow!("{e}")),
                "contact" => {
                    certify_holomorphic_like(&g, &cfg, expected).map_err(|e| anyhow!("{e}"))
                }
                "openbook" => {
                    let (f, spec) = lift.as_ref().expect("checked above");
                    certify_open_book(f, spec, &cfg).map_err(|e| anyhow!("{e}"))
                }
                other => Err(anyhow!("unknown check '{other}'")),
            }
        })
        .collect::<Result<_>>()?;

    let mut csv_rows: Vec<String> = Vec::new();
    if args.emit_samples.is_some() {
        for &radius in &radii {
            collect_csv_rows(&g, &make_cfg(radius), &lift, &checks, &mut csv_rows)?;
        }
    }

    if let Some(path) = &args.emit_samples {
        write_csv(path, dim, &csv_rows)?;
    }

    if args.json {
        println!("{}", serde_json::to_string_pretty(&reports)?);
    } else {
        for r in &reports {
            println!("{}", report_line(r));
        }
    }

    let mut code = 0u8;
    for r in &reports {
        match r.verdict {
            Verdict::CertifiedOnSamples => {}
            Verdict::Inconclusive => code = code.max(2),
            Verdict::Violated => code = code.max(3),
        }
    }
    Ok(code)
}

fn report_line(r: &CertificationReport) -> String {
    let mut line = format!(
        "check={} radius={} verdict={} samples={} attempted={} failed={}",
        r.check,
        num(r.config.radius),
        serde_json::to_value(r.verdict).unwrap().as_str().unwrap(),
        r.samples,
        r.attempted,
        r.failed
    );
    if let Some(m) = r.margin {
        line.push_str(&format!(" margin={}", num(m)));
    }
    if let Some(c) = r.c_threshold {
        line.push_str(&format!(" c_threshold={}", num(c)));
    }
    if let Some(w) = &r.witness {
        line.push_str(&format!(" witness_value={}", num(w.value)));
    }
    line
}

/// Per-sample CSV rows: link samples carry C and min_sv (dθ(R) is undefined
/// on the link); tube samples carry C and dθ(R).
fn collect_csv_rows(
    g: &MixedPolynomial,
    cfg: &SampleConfig,
    lift: &Option<(MixedPolynomial, CoveringSpec)>,
    checks: &[&str],
    rows: &mut Vec<String>,
) -> Result<()> {
    let derivs = geometry::Derivatives::of(g);
    let fmt_point = |pt: &[Complex64]| -> String {
        pt.iter().map(|z| format!("{},{}", num(z.re), num(z.im))).collect::<Vec<_>>().join(",")
    };
    if checks.iter().any(|&c| c == "transversality" || c == "contact") {
        let batch = sample_link(g, cfg).map_err(|e| anyhow!("{e}"))?;
        for s in &batch.samples {
            let bundle = derivs.bundle(&s.point).map_err(|e| anyhow!("{e}"))?;
            let cert = geometry::c_certificate_from(&bundle, &s.point).map_err(|e| anyhow!("{e}"))?;
            rows.push(format!(
                "{},{},NaN,{}",
                fmt_point(&s.point),
                num(cert.total),
                num(s.jacobian_min_sv)
            ));
        }
    }
    if checks.iter().any(|&c| c == "openbook") {
        if let Some((f, spec)) = lift {
            let batch = sample_off_link(g, cfg).map_err(|e| anyhow!("{e}"))?;
            for pt in &batch.points {
                let bundle = derivs.bundle(pt).map_err(|e| anyhow!("{e}"))?;
                let cert = geometry::c_certificate_from(&bundle, pt).map_err(|e| anyhow!("{e}"))?;
                let terms = geometry::open_book_terms(f, spec, pt).map_err(|e| anyhow!("{e}"))?;
                rows.push(format!(
                    "{},{},{},NaN",
                    fmt_point(pt),
                    num(cert.total),
                    num(terms.dtheta_r)
                ));
            }
        }
    }
    Ok(())
}

fn write_csv(path: &Path, n: usize, rows: &[String]) -> Result<()> {
    let mut header: Vec<String> = Vec::new();
    for j in 1..=n {
        header.push(format!("re_w{j}"));
        header.push(format!("im_w{j}"));
    }
    header.push("C".into());
    header.push("dthetaR".into());
    header.push("min_sv".into());
    let mut out = std::fs::File::create(path)
        .with_context(|| format!("creating {}", path.display()))?;
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        writeln!(out, "{row}")?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn identity_check(
    file: &Path,
    which: &str,
    trials: usize,
    seed: u64,
    n: Option<usize>,
    pullback_of: Option<PathBuf>,
    a: Option<String>,
    b: Option<String>,
    json: bool,
) -> Result<u8> {
    let (g, dim) = input::load_polynomial(file, n)?;
    let lift = match &pullback_of {
        Some(fpath) => {
            let (f, fdim) = input::load_polynomial(fpath, Some(dim))?;
            let (a, b) = match (&a, &b) {
                (Some(a), Some(b)) => (a.clone(), b.clone()),
                _ => bail!("--pullback-of requires --a and --b"),
            };
            let spec = input::covering_spec(&a, &b, fdim)?;
            let built = covering::pullback(&f, &spec).map_err(|e| anyhow!("{e}"))?;
            if built != g {
                bail!("input is not the pull-back of {} under the given covering", fpath.display());
            }
            Some((f, spec))
        }
        None => None,
    };

    let (max_err, threshold, pass, detail): (Option<f64>, Option<f64>, bool, String) = match which {
        "euler" => {
            let rep = detect_weights(&g).map_err(|e| anyhow!("{e}"))?;
            let (Some(rad), Some(pol)) = (rep.radial, rep.polar) else {
                bail!("euler identity needs a polar weighted homogeneous input");
            };
            let res = euler_residuals(&g, &rad.weights, rad.degree, &pol.weights, pol.degree)
                .map_err(|e| anyhow!("{e}"))?;
            let pass = res.all_zero();
            let detail = if pass {
                "all residuals identically zero".to_string()
            } else {
                format!(
                    "nonzero residuals: radial {} terms, polar {} terms",
                    res.radial.num_terms(),
                    res.polar.num_terms()
                )
            };
            (None, None, pass, detail)
        }
        "cab" => {
            let Some((f, spec)) = &lift else {
                bail!("cab identity needs --pullback-of FILE --a A --b B");
            };
            let mut max_err = 0.0f64;
            for t in 0..trials {
                let mut rng = random::substream(seed, t as u64);
                let pt = random::random_point(dim, &mut rng);
                let direct = geometry::c_certificate(&g, &pt).map_err(|e| anyhow!("{e}"))?;
                let fact = geometry::c_factored(f, spec, &pt).map_err(|e| anyhow!("{e}"))?;
                max_err = max_err.max(rel_err(direct.total, fact.total));
                for j in 0..dim {
                    for k in 0..dim {
                        max_err = max_err.max(rel_err(direct.matrix[j][k], fact.matrix[j][k]));
                    }
                }
            }
            (Some(max_err), Some(1e-10), max_err < 1e-10, String::new())
        }
        "fourform" => {
            if dim != 2 && dim != 3 {
                bail!("fourform identity needs n in {{2, 3}}, got {dim}");
            }
            let mut max_err = 0.0f64;
            for t in 0..trials {
                let mut rng = random::substream(seed, t as u64);
                let pt = random::random_point(dim, &mut rng);
                let w = geometry::wedge_verify(&g, &pt).map_err(|e| anyhow!("{e}"))?;
                max_err = max_err.max(rel_err(w.lhs, w.rhs));
            }
            (Some(max_err), Some(1e-9), max_err < 1e-9, String::new())
        }
        "positivity" => {
            let Some((f, spec)) = &lift else {
                bail!("positivity identity needs --pullback-of FILE --a A --b B");
            };
            let (av, bv) = spec.homogeneous_pair().map_err(|e| anyhow!("{e}"))?;
            let (af, bf) = (f64::from(av), f64::from(bv));
            let mut max_err = 0.0f64;
            let mut done = 0usize;
            let mut attempt = 0u64;
            while done < trials {
                let mut rng = random::substream(seed, attempt);
                attempt += 1;
                if attempt > 20 * trials as u64 {
                    bail!("could not find enough points off the zero set");
                }
                let pt = random::random_point(dim, &mut rng);
                let terms = match geometry::open_book_terms(f, spec, &pt) {
                    Ok(t) => t,
                    Err(geometry::GeometryError::OnZeroSet) => continue,
                    Err(e) => return Err(anyhow!("{e}")),
                };
                let g_sq = terms.g_value.norm_sqr();
                let v11: f64 = terms.v11.iter().map(|z| z.norm_sqr()).sum();
                let v21: f64 = terms.v21.iter().map(|z| z.norm_sqr()).sum();
                max_err = max_err.max(rel_err(v11, af * af * g_sq * (terms.gamma - terms.beta)));
                max_err = max_err.max(rel_err(v21, bf * bf * g_sq * (terms.gamma - terms.beta)));
                if terms.correction < -1e-10 * (af * af * g_sq * terms.gamma).max(1e-30) {
                    max_err = max_err.max(1.0);
                }
                done += 1;
            }
            (Some(max_err), Some(1e-10), max_err < 1e-10, String::new())
        }
        "chainrule" => {
            let h_step = 1e-5;
            let mut max_err = 0.0f64;
            for t in 0..trials {
                let mut rng = random::substream(seed, t as u64);
                let part = if t % 2 == 0 { g.real_part() } else { g.imag_part() };
                if part.is_zero() {
                    continue;
                }
                let u = random::random_point(dim, &mut rng);
                let v = random::random_point(dim, &mut rng);
                let line = |s: f64| -> Vec<Complex64> {
                    u.iter().zip(&v).map(|(x, d)| x + s * d).collect()
                };
                let fd = (part.evaluate(&line(h_step)).map_err(|e| anyhow!("{e}"))?
                    - part.evaluate(&line(-h_step)).map_err(|e| anyhow!("{e}"))?)
                    / (2.0 * h_step);
                let bundle = geometry::gradient_bundle(&part, &u).map_err(|e| anyhow!("{e}"))?;
                let grad = bundle.hermitian.ok_or_else(|| anyhow!("part not real-valued"))?;
                let exact = geometry::hermitian(&v, &grad).re;
                let scale = exact.abs().max(1.0);
                max_err = max_err.max((fd.re - exact).abs() / scale);
            }
            (Some(max_err), Some(1e-6), max_err < 1e-6, String::new())
        }
        other => bail!("unknown identity '{other}'"),
    };

    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "identity": which,
                "trials": trials,
                "max_rel_err": max_err,
                "threshold": threshold,
                "pass": pass,
                "detail": if detail.is_empty() { Value::Null } else { Value::String(detail.clone()) },
            }))?
        );
    } else {
        match (max_err, threshold) {
            (Some(e), Some(t)) => println!(
                "identity {which}: {} (max rel err {} vs threshold {})",
                if pass { "PASS" } else { "FAIL" },
                num(e),
                num(t)
            ),
            _ => println!(
                "identity {which}: {} ({detail})",
                if pass { "PASS" } else { "FAIL" }
            ),
        }
    }
    Ok(if pass { 0 } else { 3 })
}

pub fn sample(
    file: &Path,
    n: Option<usize>,
    radius: f64,
    samples: usize,
    seed: u64,
    emit_samples: Option<PathBuf>,
    json: bool,
) -> Result<u8> {
    let (g, dim) = input::load_polynomial(file, n)?;
    let cfg = SampleConfig {
        radius,
        n_samples: samples,
        seed,
        ..SampleConfig::new(dim)
    };
    let batch = sample_link(&g, &cfg).map_err(|e| anyhow!("{e}"))?;
    let derivs = geometry::Derivatives::of(&g);

    if let Some(path) = &emit_samples {
        let mut rows = Vec::new();
        for s in &batch.samples {
            let bundle = derivs.bundle(&s.point).map_err(|e| anyhow!("{e}"))?;
            let cert = geometry::c_certificate_from(&bundle, &s.point).map_err(|e| anyhow!("{e}"))?;
            let coords = s
                .point
                .iter()
                .map(|z| format!("{},{}", num(z.re), num(z.im)))
                .collect::<Vec<_>>()
                .join(",");
            rows.push(format!("{coords},{},NaN,{}", num(cert.total), num(s.jacobian_min_sv)));
        }
        write_csv(path, dim, &rows)?;
    }

    if json {
        let arr: Vec<Value> = batch
            .samples
            .iter()
            .map(|s| {
                json!({
                    "point": s.point.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                    "residual_g": s.residual_g,
                    "residual_rho": s.residual_rho,
                    "jacobian_min_sv": s.jacobian_min_sv,
                    "smooth": s.smooth,
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "attempted": batch.attempted,
                "failed": batch.failed,
                "samples": arr,
            }))?
        );
    } else {
        println!(
            "accepted {} of {} seeds (failed {})",
            batch.samples.len(),
            batch.attempted,
            batch.failed
        );
        if let Some(min_sv) = batch
            .samples
            .iter()
            .map(|s| s.jacobian_min_sv)
            .min_by(|a, b| a.partial_cmp(b).expect("finite"))
        {
            println!("min jacobian_min_sv: {}", num(min_sv));
        }
    }
    Ok(if batch.samples.is_empty() { 2 } else { 0 })
}
