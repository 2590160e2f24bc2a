use nalgebra::DMatrix;
use ptclone_core::irreps::{decompose, Decomposition, IrrepBlock, DEFAULT_ZERO_TOL};
use ptclone_core::oracle::{
    choi_state, clone_fidelity_from_singlet, full_vs_block_spectrum, haar_isometry, singlet_fractions, singlet_from_clone_fidelity,
    special_state, GaussianRng, SpecialState,
};
use ptclone_core::regions::{build_hull_with, n_point_with, sample_block_region, Membership, Region, SphereScheme};
use ptclone_core::Partition;

use crate::config::{Command, Format, RunConfig};
use crate::error::CliError;
use crate::output::{csv, json, num};
use crate::report::*;

/// Rendered output of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub body: String,
    /// False when a `check` run found a violated tolerance.
    pub passed: bool,
}

impl RunOutput {
    fn ok(body: String) -> Self {
        RunOutput { body, passed: true }
    }
}

pub fn run(config: &RunConfig) -> Result<RunOutput, CliError> {
    config.validate()?;
    match config.command {
        Command::Irreps => irreps(config),
        Command::Region => region(config),
        Command::Hull => hull(config),
        Command::Check => check(config),
        Command::Channels => channels(config),
        Command::Symmetric => symmetric(config),
        Command::Convert => convert(config),
    }
}

fn unsupported_format(config: &RunConfig) -> CliError {
    CliError::Invalid(format!("{:?} output is not available for {:?}", config.format, config.command).to_lowercase())
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn parts(p: &Partition) -> Vec<usize> {
    p.parts().to_vec()
}

fn decomposition(config: &RunConfig) -> Result<Decomposition, CliError> {
    Ok(decompose(config.n(), config.d, DEFAULT_ZERO_TOL)?)
}

fn fidelity_header(n: usize) -> impl Iterator<Item = String> {
    (2..=n).map(|k| format!("F_1{}", k))
}

fn block_report(b: &IrrepBlock) -> BlockReport {
    BlockReport {
        alpha: parts(&b.alpha),
        dim: b.dim(),
        dim_phi: b.q.dim_phi,
        q: rows(&b.q.entries),
        eigenvalues: b.eigenvalues.clone(),
        labels: b.labels.iter().map(parts).collect(),
        dropped: b.dropped.as_ref().map(parts),
        z: rows(&b.z),
        generators: b.generators.iter().map(rows).collect(),
    }
}

fn irreps(config: &RunConfig) -> Result<RunOutput, CliError> {
    let dec = decomposition(config)?;
    match config.format {
        Format::Json => {
            let report = DecompositionReport {
                n: dec.n,
                d: dec.d,
                blocks: dec.blocks.iter().map(block_report).collect(),
                n_irreps: dec.n_irreps.iter().map(parts).collect(),
            };
            Ok(RunOutput::ok(json(config, report)?))
        }
        Format::Csv => {
            let header: Vec<String> = ["alpha", "nu", "eigenvalue", "multiplicity"].map(String::from).to_vec();
            let body: Vec<Vec<String>> = dec
                .blocks
                .iter()
                .flat_map(|b| b.spectrum().into_iter().map(move |(nu, value, mult)| vec![b.alpha.to_string(), nu.to_string(), num(value), mult.to_string()]))
                .collect();
            Ok(RunOutput::ok(csv(&header, &body)?))
        }
        Format::Text => Err(unsupported_format(config)),
    }
}

fn region(config: &RunConfig) -> Result<RunOutput, CliError> {
    let dec = decomposition(config)?;
    let n_point = n_point_with(dec.n, dec.d, config.n_point_convention.into())?;
    let mut blocks = Vec::new();
    for b in &dec.blocks {
        let sample = sample_block_region(b, config.samples, SphereScheme::default_for(b.dim()))?;
        blocks.push(RegionBlock {
            alpha: parts(&b.alpha),
            points: sample.points.iter().map(|p| p.values().to_vec()).collect(),
            states: sample.states.unwrap_or_default(),
        });
    }
    match config.format {
        Format::Json => Ok(RunOutput::ok(json(config, RegionReport { n: dec.n, d: dec.d, blocks, n_point: n_point.into_values() })?)),
        Format::Csv => {
            let m = dec.blocks.iter().map(|b| b.dim()).max().unwrap_or(0);
            let header: Vec<String> = std::iter::once("source".to_string()).chain((1..=m).map(|i| format!("a_{}", i))).chain(fidelity_header(dec.n)).collect();
            let mut body = Vec::new();
            for (rb, b) in blocks.iter().zip(&dec.blocks) {
                for (state, point) in rb.states.iter().zip(&rb.points) {
                    let mut row = vec![b.alpha.to_string()];
                    row.extend((0..m).map(|i| state.get(i).map(|&x| num(x)).unwrap_or_default()));
                    row.extend(point.iter().map(|&x| num(x)));
                    body.push(row);
                }
            }
            let mut row = vec!["N".to_string()];
            row.extend(std::iter::repeat_n(String::new(), m));
            row.extend(n_point.values().iter().map(|&x| num(x)));
            body.push(row);
            Ok(RunOutput::ok(csv(&header, &body)?))
        }
        Format::Text => Err(unsupported_format(config)),
    }
}

fn hull(config: &RunConfig) -> Result<RunOutput, CliError> {
    let dec = decomposition(config)?;
    let convention = config.n_point_convention.into();
    let hull = build_hull_with(&dec, config.samples, convention, None)?;
    let data = HullData {
        dim: hull.dim,
        vertices: hull.vertices.iter().map(|v| v.values().to_vec()).collect(),
        sources: hull.sources.iter().map(|s| s.label()).collect(),
        facets: hull.facets.iter().map(|f| FacetData { normal: f.normal.clone(), offset: f.offset }).collect(),
        volume: hull.volume(),
    };
    match config.format {
        Format::Json => {
            let n_point = n_point_with(dec.n, dec.d, convention)?.into_values();
            Ok(RunOutput::ok(json(config, HullReport { n: dec.n, d: dec.d, n_point, hull: data })?))
        }
        Format::Csv => {
            let header: Vec<String> = std::iter::once("source".to_string()).chain(fidelity_header(dec.n)).collect();
            let body: Vec<Vec<String>> = data
                .vertices
                .iter()
                .zip(&data.sources)
                .map(|(v, s)| std::iter::once(s.clone()).chain(v.iter().map(|&x| num(x))).collect())
                .collect();
            Ok(RunOutput::ok(csv(&header, &body)?))
        }
        Format::Text => Err(unsupported_format(config)),
    }
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

fn item(name: &str, max_error: f64, tolerance: f64, detail: String) -> CheckItem {
    CheckItem { name: name.to_string(), passed: max_error <= tolerance, max_error, tolerance, detail }
}

fn check(config: &RunConfig) -> Result<RunOutput, CliError> {
    let dec = decomposition(config)?;
    let (n, d, tol) = (dec.n, dec.d, config.tol);
    let df = d as f64;
    let generators = || dec.blocks.iter().flat_map(|b| b.generators.iter().map(move |g| (b, g)));
    let count = generators().count();
    let mut checks = Vec::new();

    let err = generators().map(|(_, g)| max_abs(&(g * g - g * df))).fold(0.0, f64::max);
    checks.push(item("idempotency B^2 = dB", err, tol, format!("{} generators", count)));
    let err = generators().map(|(_, g)| max_abs(&(g - g.transpose()))).fold(0.0, f64::max);
    checks.push(item("symmetry B = B^T", err, tol, format!("{} generators", count)));
    let err = generators().map(|(b, g)| (g.trace() - df * b.q.dim_phi as f64).abs()).fold(0.0, f64::max);
    checks.push(item("trace B = d dim(phi)", err, tol, format!("{} generators", count)));

    let mut err: f64 = 0.0;
    for b in &dec.blocks {
        let k = b.dim();
        err = err.max(max_abs(&(b.z.transpose() * &b.z - DMatrix::identity(k, k))));
        err = err.max(max_abs(&(b.z.transpose() * &b.q.entries * &b.z - DMatrix::from_diagonal(&b.eigenvalues.clone().into()))));
    }
    checks.push(item("Z orthonormal and diagonalises Q", err, tol, format!("{} blocks", dec.blocks.len())));

    let mut err: f64 = 0.0;
    let mut mismatches = Vec::new();
    for b in &dec.blocks {
        for (nu, value, mult) in b.spectrum() {
            if mult as u64 != nu.dimension() {
                mismatches.push(format!("{} -> {}: multiplicity {} vs dim {}", b.alpha, nu, mult, nu.dimension()));
            }
            let content = b.alpha.added_box_content(&nu).unwrap_or(i64::MIN / 2);
            err = err.max((value - (df + content as f64)).abs());
        }
    }
    let mut q_item = item("Q multiplicities match branching", err, tol, "eigenvalue d + content of the added box".to_string());
    if !mismatches.is_empty() {
        q_item.passed = false;
        q_item.detail = mismatches.join("; ");
    }
    checks.push(q_item);

    let mut rng = GaussianRng::new(config.seed);
    let mut gap: f64 = 0.0;
    let mut all_passed = true;
    let mut detail = String::from("5 random directions");
    for _ in 0..5 {
        match full_vs_block_spectrum(&dec, &rng.normal_vector(n - 1), tol) {
            Ok(rep) => {
                gap = gap.max(rep.max_abs_gap);
                all_passed &= rep.passed();
            }
            Err(e) => {
                all_passed = false;
                detail = e.to_string();
            }
        }
    }
    let mut spectrum_item = item("full-space vs block spectra", gap, tol * df * (n as f64), detail);
    spectrum_item.passed &= all_passed;
    checks.push(spectrum_item);

    let f = singlet_fractions(&special_state(SpecialState::ClassicalClone, n, d)?)?;
    let np = n_point_with(n, d, Default::default())?;
    let err = f.values().iter().zip(np.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    checks.push(item("classical clone equals N-point", err, tol.min(1e-12), format!("N-point 1/d = {}", num(1.0 / df))));

    let passed = checks.iter().all(|c| c.passed);
    let report = CheckReport { n, d, passed, checks };
    let body = match config.format {
        Format::Json => json(config, &report)?,
        Format::Csv => {
            let header: Vec<String> = ["name", "passed", "max_error", "tolerance", "detail"].map(String::from).to_vec();
            let body: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| vec![c.name.clone(), c.passed.to_string(), num(c.max_error), num(c.tolerance), c.detail.clone()])
                .collect();
            csv(&header, &body)?
        }
        Format::Text => {
            let mut s = String::new();
            for c in &report.checks {
                s.push_str(&format!("{} {}: max error {:.3e} (tol {:.1e}) {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.max_error, c.tolerance, c.detail));
            }
            s
        }
    };
    Ok(RunOutput { body, passed })
}

fn channels(config: &RunConfig) -> Result<RunOutput, CliError> {
    let dec = decomposition(config)?;
    let region = Region::with_convention(&dec, config.n_point_convention.into());
    let mut report = ChannelsReport {
        n: dec.n,
        d: dec.d,
        n_point_convention: config.n_point_convention,
        channels: Vec::with_capacity(config.samples),
        inside: 0,
        boundary: 0,
        outside: 0,
    };
    for i in 0..config.samples as u64 {
        let seed = config.seed.wrapping_add(i);
        let f = singlet_fractions(&choi_state(&haar_isometry(dec.d, dec.n - 1, seed)?)?)?;
        let m = region.membership(&f, config.tol)?;
        match m.verdict {
            Membership::Inside => report.inside += 1,
            Membership::Boundary => report.boundary += 1,
            Membership::Outside => report.outside += 1,
        }
        report.channels.push(ChannelRow { seed, fidelities: f.into_values(), verdict: m.verdict.name().to_string(), margin: m.margin });
    }
    match config.format {
        Format::Json => Ok(RunOutput::ok(json(config, report)?)),
        Format::Csv => {
            let header: Vec<String> = std::iter::once("seed".to_string())
                .chain(fidelity_header(dec.n))
                .chain(["verdict", "margin"].map(String::from))
                .collect();
            let body: Vec<Vec<String>> = report
                .channels
                .iter()
                .map(|c| {
                    std::iter::once(c.seed.to_string())
                        .chain(c.fidelities.iter().map(|&x| num(x)))
                        .chain([c.verdict.clone(), num(c.margin)])
                        .collect()
                })
                .collect();
            Ok(RunOutput::ok(csv(&header, &body)?))
        }
        Format::Text => Err(unsupported_format(config)),
    }
}

fn symmetric(config: &RunConfig) -> Result<RunOutput, CliError> {
    let dec = decomposition(config)?;
    let (big_n, df) = ((dec.n - 1) as f64, dec.d as f64);
    let t = Region::with_convention(&dec, config.n_point_convention.into()).symmetric_max();
    let werner_fidelity = (2.0 * big_n + df - 1.0) / (big_n * (df + 1.0));
    let report = SymmetricReport {
        n: dec.n,
        d: dec.d,
        symmetric_max: t,
        clone_fidelity: clone_fidelity_from_singlet(t.clamp(0.0, 1.0), dec.d)?,
        werner_fidelity,
        werner_singlet: singlet_from_clone_fidelity(werner_fidelity, dec.d)?,
    };
    match config.format {
        Format::Json => Ok(RunOutput::ok(json(config, report)?)),
        Format::Text => Ok(RunOutput::ok(format!(
            "F = {:.6}, f = {:.6}\nWerner reference: F = {:.6}, f = {:.6}\n",
            report.symmetric_max, report.clone_fidelity, report.werner_singlet, report.werner_fidelity
        ))),
        Format::Csv => {
            let header: Vec<String> = ["n", "d", "symmetric_max", "clone_fidelity", "werner_fidelity", "werner_singlet"].map(String::from).to_vec();
            let row = vec![
                report.n.to_string(),
                report.d.to_string(),
                num(report.symmetric_max),
                num(report.clone_fidelity),
                num(report.werner_fidelity),
                num(report.werner_singlet),
            ];
            Ok(RunOutput::ok(csv(&header, &[row])?))
        }
    }
}

fn convert(config: &RunConfig) -> Result<RunOutput, CliError> {
    let report = match (config.singlet, config.fidelity) {
        (Some(s), None) => ConvertReport { d: config.d, singlet: s, clone_fidelity: clone_fidelity_from_singlet(s, config.d)? },
        (None, Some(f)) => ConvertReport { d: config.d, singlet: singlet_from_clone_fidelity(f, config.d)?, clone_fidelity: f },
        _ => return Err(CliError::Invalid("convert needs exactly one of --singlet or --fidelity".into())),
    };
    match config.format {
        Format::Json => Ok(RunOutput::ok(json(config, report)?)),
        Format::Text => Ok(RunOutput::ok(format!("F = {:.9}, f = {:.9}\n", report.singlet, report.clone_fidelity))),
        Format::Csv => {
            let header: Vec<String> = ["d", "singlet", "clone_fidelity"].map(String::from).to_vec();
            Ok(RunOutput::ok(csv(&header, &[vec![report.d.to_string(), num(report.singlet), num(report.clone_fidelity)]])?))
        }
    }
}
