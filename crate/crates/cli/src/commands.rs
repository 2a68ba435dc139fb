//! Command implementations; each prints a summary and optionally a report.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use monotypy::criteria::{
    check_m3prime, check_s4prime, classify_with, Certificate, Condition, MonotypyClass, Verdict,
};
use monotypy::exact::{RVec, Rat};
use monotypy::format::InstanceFile;
use monotypy::par::Exec;
use monotypy::polytope::{intersect_translate, is_summand, off_sidecar, shapes, to_off, Polytope};
use monotypy::search::{find_example, random_normal_set, SearchSpec};
use monotypy::witness::{construct_witness_with, verify_witness, WitnessError};

use crate::args::{
    parse_facets, AnalyzeArgs, Command, ExportArgs, Output, SearchArgs, SelftestArgs, SummandArgs,
    WitnessArgs,
};
use crate::report::{ReportFile, WitnessOutcome};
use crate::CliError;

const PINNED_FIXTURE: &str = include_str!("../../../fixtures/mono-not-strong-r3.json");

pub fn run(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Analyze(a) => analyze(a),
        Command::Witness(a) => witness(a),
        Command::Summand(a) => summand(a),
        Command::Search(a) => search(a),
        Command::Export(a) => export(a),
        Command::Selftest(a) => selftest(a),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::input(&path.display().to_string(), e))
}

fn parse_instance(bytes: &[u8], path: &Path) -> Result<InstanceFile, CliError> {
    let text =
        std::str::from_utf8(bytes).map_err(|e| CliError::input(&path.display().to_string(), e))?;
    InstanceFile::parse(text).map_err(|e| CliError::input(&path.display().to_string(), e))
}

fn load_polytope(path: &Path) -> Result<(Vec<u8>, Polytope), CliError> {
    let bytes = read(path)?;
    let file = parse_instance(&bytes, path)?;
    let p = file
        .polytope()
        .map_err(|e| with_path(CliError::from(e), path))?;
    Ok((bytes, p))
}

fn with_path(e: CliError, path: &Path) -> CliError {
    match e {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    }
}

/// Writes through a temporary file so readers never see partial output.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::input(&path.display().to_string(), e);
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

fn finish(mut report: ReportFile, output: &Output) -> Result<(), CliError> {
    if output.timestamp {
        report.generated_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
    }
    if let Some(path) = &output.json {
        write_atomic(path, &report.to_json())?;
        println!("report: {}", path.display());
    }
    Ok(())
}

fn print_verdict(v: &Verdict) {
    match &v.certificate {
        Certificate::Holds {
            examined,
            candidates,
        } => {
            println!(
                "{}: holds ({examined} examined, {candidates} candidates)",
                v.condition
            )
        }
        cert => println!(
            "{}: fails, certificate {}",
            v.condition,
            serde_json::to_string(cert).expect("plain data serializes")
        ),
    }
}

fn analyze(a: &AnalyzeArgs) -> Result<(), CliError> {
    let bytes = read(&a.path)?;
    let file = parse_instance(&bytes, &a.path)?;
    let n = file
        .normal_set()
        .map_err(|e| with_path(e.into(), &a.path))?;
    if file.supports.is_some() {
        file.polytope().map_err(|e| with_path(e.into(), &a.path))?;
    }
    let c = classify_with(&n, Exec::default())?;
    println!("class: {}", c.class);
    print_verdict(&c.d);
    print_verdict(&c.dd);
    let mut report = ReportFile::new("analyze", &[&bytes]);
    report.class = Some(c.class);
    report.verdicts = vec![c.d.clone(), c.dd.clone()];
    if a.full {
        let m3 = check_m3prime(&n)?;
        let s4 = check_s4prime(&n, a.cap)?;
        print_verdict(&m3);
        print_verdict(&s4);
        if m3.holds != c.d.holds || s4.holds != c.dd.holds {
            return Err(CliError::Internal(
                "the M3′/S4′ sweeps disagree with D/DD".into(),
            ));
        }
        report.verdicts.extend([m3, s4]);
    }
    finish(report, &a.output)
}

fn witness(a: &WitnessArgs) -> Result<(), CliError> {
    let (bytes, p) = load_polytope(&a.path)?;
    let mut report = ReportFile::new("witness", &[&bytes]);
    match construct_witness_with(&p, Exec::default(), a.budget) {
        Err(WitnessError::NotApplicable(class)) => {
            println!("class: {class}");
            println!("witness: not applicable");
            report.class = Some(class);
            report.witness = Some(WitnessOutcome::NotApplicable { class });
        }
        Err(WitnessError::RedundantNormal(i)) => {
            return Err(CliError::Input(format!(
                "{}: normal {i} {} does not define a facet",
                a.path.display(),
                p.normals().get(i)
            )))
        }
        Err(e) => return Err(e.into()),
        Ok(w) => {
            if !verify_witness(&p, &w.t)? {
                return Err(CliError::Internal(
                    "constructed translate fails verification".into(),
                ));
            }
            println!("class: {}", MonotypyClass::MonotypicNotStrong);
            println!("t: {}", w.t);
            println!("eps0: {}", w.eps0);
            for c in &w.checks {
                println!(
                    "check {}: {}",
                    c.name,
                    if c.passed { "pass" } else { "FAIL" }
                );
            }
            if w.fallback_used {
                println!("translate found by fallback search");
            }
            println!("P ∩ (P + t) is a summand of P: false");
            if let Some(dir) = &a.export {
                let cap = intersect_translate(&p, &w.t)
                    .ok_or_else(|| CliError::Internal("witness intersection is empty".into()))?;
                for (name, poly) in [("P", p.clone()), ("Pt", p.translate(&w.t)), ("cap", cap)] {
                    write_off(&poly, dir, name, a.precision)?;
                }
            }
            report.class = Some(MonotypyClass::MonotypicNotStrong);
            report.witness = Some(WitnessOutcome::Found(Box::new(w)));
        }
    }
    finish(report, &a.output)
}

fn write_off(p: &Polytope, dir: &Path, name: &str, precision: usize) -> Result<(), CliError> {
    let off = to_off(p, precision)?;
    let sidecar = off_sidecar(p, precision)?;
    let off_path = dir.join(format!("{name}.off"));
    write_atomic(&off_path, &off)?;
    let json = serde_json::to_string_pretty(&sidecar).expect("plain data serializes") + "\n";
    write_atomic(&dir.join(format!("{name}.sidecar.json")), &json)?;
    println!("wrote {}", off_path.display());
    Ok(())
}

fn summand(a: &SummandArgs) -> Result<(), CliError> {
    let (sb, s) = load_polytope(&a.summand)?;
    let (pb, p) = load_polytope(&a.polytope)?;
    if s.ambient_dim() != p.ambient_dim() {
        return Err(CliError::Input(format!(
            "dimension mismatch: {} is in dimension {}, {} in dimension {}",
            a.summand.display(),
            s.ambient_dim(),
            a.polytope.display(),
            p.ambient_dim()
        )));
    }
    let r = is_summand(&s, &p)?;
    println!("summand: {}", r.is_summand);
    for m in &r.edge_table {
        println!(
            "edge ({}, {}) -> ({}, {}) ratio {}",
            m.edge.0, m.edge.1, m.image.0, m.image.1, m.ratio
        );
    }
    if let Some(f) = &r.failure {
        println!(
            "reason: {}",
            serde_json::to_string(f).expect("plain data serializes")
        );
    }
    let mut report = ReportFile::new("summand", &[&sb, &pb]);
    report.summand = Some(r);
    finish(report, &a.output)
}

fn search(a: &SearchArgs) -> Result<(), CliError> {
    let facets = match &a.facets {
        None => (a.dim + 1, 2 * a.dim + 2),
        Some(s) => parse_facets(s)
            .ok_or_else(|| CliError::Usage(format!("--facets: cannot parse {s:?}")))?,
    };
    let spec = SearchSpec::new(a.dim, facets, a.class.into(), a.seed, a.budget);
    spec.validate()?;
    match find_example(&spec, Exec::default())? {
        None => println!(
            "found 0 instances of class {} within budget {}",
            spec.target, a.budget
        ),
        Some(inst) => {
            let name = format!(
                "{}-d{}-s{}-i{}.json",
                class_slug(spec.target),
                a.dim,
                a.seed,
                inst.provenance.index
            );
            let path = a.out.join(name);
            write_atomic(
                &path,
                &(InstanceFile::from_instance(&inst).to_json() + "\n"),
            )?;
            println!(
                "found 1 instance of class {}: {}",
                spec.target,
                path.display()
            );
        }
    }
    Ok(())
}

fn class_slug(c: MonotypyClass) -> &'static str {
    match c {
        MonotypyClass::StronglyMonotypic => "strong",
        MonotypyClass::MonotypicNotStrong => "mono-not-strong",
        MonotypyClass::NotMonotypic => "not-mono",
    }
}

fn export(a: &ExportArgs) -> Result<(), CliError> {
    let (_, p) = load_polytope(&a.path)?;
    let stem = a
        .path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("polytope");
    write_off(&p, &a.out, stem, a.precision)
}

type Check<'a> = (&'static str, Box<dyn Fn() -> bool + 'a>);

fn selftest(a: &SelftestArgs) -> Result<(), CliError> {
    let checks: Vec<Check<'_>> = vec![
        (
            "cube is strongly monotypic",
            Box::new(|| {
                classify_with(&shapes::cube_normals(3), Exec::default())
                    .map(|c| c.class == MonotypyClass::StronglyMonotypic)
                    .unwrap_or(false)
            }),
        ),
        (
            "cube with a corner cut is not monotypic",
            Box::new(|| {
                let mut dirs = shapes::cube_normals(3).directions().to_vec();
                dirs.push(RVec::from_ints(&[1, 1, 1]));
                let n = monotypy::cone::NormalSet::new(3, dirs).expect("distinct directions");
                classify_with(&n, Exec::default())
                    .map(|c| c.class == MonotypyClass::NotMonotypic && c.d.validate(&n))
                    .unwrap_or(false)
            }),
        ),
        (
            "segment is a summand of the square, the diamond is not",
            Box::new(|| {
                let sq = shapes::cube(2, 1);
                let seg =
                    Polytope::from_points(2, &[RVec::from_ints(&[0, 0]), RVec::from_ints(&[1, 0])]);
                let diamond = Polytope::from_hpoly(shapes::cross_polytope(2).hrep())
                    .map(|d| d.scale(&Rat::new(3, 2)));
                match (seg, diamond) {
                    (Ok(seg), Ok(d)) => {
                        is_summand(&seg, &sq).map(|r| r.is_summand).unwrap_or(false)
                            && is_summand(&d, &sq).map(|r| !r.is_summand).unwrap_or(false)
                    }
                    _ => false,
                }
            }),
        ),
        (
            "pinned instance has a verified witness",
            Box::new(|| {
                let Ok(p) = InstanceFile::parse(PINNED_FIXTURE).and_then(|f| f.polytope()) else {
                    return false;
                };
                match construct_witness_with(&p, Exec::default(), 64) {
                    Ok(w) => w.all_checks_pass() && verify_witness(&p, &w.t).unwrap_or(false),
                    Err(_) => false,
                }
            }),
        ),
        (
            "D agrees with M3′ and DD with S4′ on random sets",
            Box::new(move || {
                let spec = SearchSpec::new(3, (5, 7), MonotypyClass::StronglyMonotypic, a.seed, 1);
                (0..20).all(|i| {
                    let Ok(n) = random_normal_set(&spec, i) else {
                        return false;
                    };
                    let (Ok(c), Ok(m3), Ok(s4)) = (
                        classify_with(&n, Exec::default()),
                        check_m3prime(&n),
                        check_s4prime(&n, 20),
                    ) else {
                        return false;
                    };
                    c.d.holds == m3.holds
                        && c.dd.holds == s4.holds
                        && [&c.d, &c.dd, &m3, &s4].iter().all(|v| v.validate(&n))
                        && (c.dd.condition == Condition::DD)
                })
            }),
        ),
        (
            "cube translates meet in summands",
            Box::new(|| {
                let cube = shapes::cube(3, 1);
                let steps = [-3, -1, 0, 2, 3];
                steps.iter().all(|&x| {
                    steps.iter().all(|&y| {
                        steps.iter().all(|&z| {
                            let t: RVec = [x, y, z].iter().map(|&k| Rat::new(k, 2)).collect();
                            match intersect_translate(&cube, &t) {
                                None => true,
                                Some(cap) => is_summand(&cap, &cube)
                                    .map(|r| r.is_summand)
                                    .unwrap_or(false),
                            }
                        })
                    })
                })
            }),
        ),
    ];
    let mut failed = Vec::new();
    for (name, check) in &checks {
        let ok = check();
        println!("{} {name}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failed.push(*name);
        }
    }
    if failed.is_empty() {
        println!("selftest: {} checks passed", checks.len());
        Ok(())
    } else {
        Err(CliError::Internal(format!(
            "selftest failed: {}",
            failed.join(", ")
        )))
    }
}
