//! Command-line front end.

mod render;
mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::certify::{
    certify, classify, eigenvector, support_sample, truncation_oracle, Certificate, MAX_ORACLE_N,
};
use crate::cpoly::DEFAULT_TOL;
use crate::critical::{critical_values, CriticalReport, RootSource};
use crate::error::Error;
use crate::families::{
    family, lambda_of_alpha, parametric_analysis, thresholds, FamilyName, FamilySpec,
};
use crate::recur::{CoefficientFile, CoefficientSet, PhiSequence};

pub use render::{Document, Format};
pub use verify::{run_suite, Check};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(
    name = "pjacobi",
    version,
    about = "Discrete spectrum of periodic complex Jacobi matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Built-in family: generic-n3, parametric, elementary-3, elementary-4, elementary-5
    #[arg(long, global = true)]
    pub family: Option<String>,

    /// Comma-separated family parameters
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub params: Option<String>,

    /// JSON coefficient file
    #[arg(long, global = true)]
    pub coeffs: Option<PathBuf>,

    /// Root residual tolerance, in (0, 1e-2)
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// θ grid size for `support`, at least 2
    #[arg(long, global = true, default_value_t = 64)]
    pub grid: usize,

    /// Truncation size for `oracle`
    #[arg(long, global = true, default_value_t = 32)]
    pub max_n: usize,

    /// Seed for the randomized checks of `verify`
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Index for `phi`, component count for eigenvectors
    #[arg(long, global = true)]
    pub n: Option<usize>,

    /// Complex point as `re,im`
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mu: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Polynomials φ_0..φ_n
    Phi,
    /// Period polynomial P_N
    Pn,
    /// Critical polynomial and critical values
    Critical,
    /// Certificate for one point --mu
    Certify,
    /// Certified critical values and eigenvectors
    Spectrum,
    /// Sampled support of the continuous spectrum
    Support,
    /// Family coefficients and closed-form expectations
    Family,
    /// Roots of φ_n, the truncated matrix eigenvalues
    Oracle,
    /// Regression suite against the closed-form results
    Verify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Self::Phi => "phi",
            Self::Pn => "pn",
            Self::Critical => "critical",
            Self::Certify => "certify",
            Self::Spectrum => "spectrum",
            Self::Support => "support",
            Self::Family => "family",
            Self::Oracle => "oracle",
            Self::Verify => "verify",
        }
    }
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Mismatch = 1,
    BadInput = 2,
    Numerical = 3,
}

/// A failed run: exit status and message for standard error.
#[derive(Debug)]
pub struct Failure {
    pub exit: Exit,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::Input(_)
            | Error::UnknownFamily(_)
            | Error::InvalidParams(_)
            | Error::InvalidCoefficients(_) => Exit::BadInput,
            _ => Exit::Numerical,
        };
        Self {
            exit,
            message: e.to_string(),
        }
    }
}

fn bad(message: impl Into<String>) -> Failure {
    Failure {
        exit: Exit::BadInput,
        message: message.into(),
    }
}

struct Input {
    seq: PhiSequence<f64>,
    spec: Option<FamilySpec>,
    descriptor: (String, Value),
}

impl Cli {
    fn validate(&self) -> Result<(), Failure> {
        if !(self.tol > 0.0 && self.tol < 1e-2) {
            return Err(bad(format!(
                "--tol must lie in (0, 1e-2), got {}",
                self.tol
            )));
        }
        if self.grid < 2 {
            return Err(bad(format!("--grid must be at least 2, got {}", self.grid)));
        }
        if !(1..=MAX_ORACLE_N).contains(&self.max_n) {
            return Err(bad(format!(
                "--max-n must lie in 1..={MAX_ORACLE_N}, got {}",
                self.max_n
            )));
        }
        Ok(())
    }

    fn params(&self) -> Result<Vec<f64>, Failure> {
        match &self.params {
            None => Ok(Vec::new()),
            Some(s) => s
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| bad(format!("--params: `{}` is not a number", t.trim())))
                })
                .collect(),
        }
    }

    fn mu(&self) -> Result<Option<Complex64>, Failure> {
        let Some(s) = &self.mu else { return Ok(None) };
        let parts: Vec<&str> = s.split(',').collect();
        let parse = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| bad(format!("--mu: `{}` is not a number", t.trim())))
        };
        match parts.as_slice() {
            [re] => Ok(Some(Complex64::new(parse(re)?, 0.0))),
            [re, im] => Ok(Some(Complex64::new(parse(re)?, parse(im)?))),
            _ => Err(bad("--mu expects `re,im`")),
        }
    }

    fn input(&self) -> Result<Input, Failure> {
        match (&self.family, &self.coeffs) {
            (Some(_), Some(_)) => Err(bad("give either --family or --coeffs, not both")),
            (None, None) => Err(bad("an input is required: --family or --coeffs")),
            (Some(name), None) => {
                let params = self.params()?;
                let spec = family(name, &params)?;
                let descriptor = json!({"name": spec.name.as_str(), "params": params});
                Ok(Input {
                    seq: PhiSequence::new(spec.coeffs.clone()),
                    spec: Some(spec),
                    descriptor: ("family".into(), descriptor),
                })
            }
            (None, Some(path)) => {
                if self.params.is_some() {
                    return Err(bad("--params applies to --family only"));
                }
                let text = fs::read_to_string(path)
                    .map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
                let file = CoefficientFile::parse(&text)?;
                let set = file.to_coefficients()?;
                Ok(Input {
                    descriptor: ("coefficients".into(), coefficients_json(&set)),
                    seq: PhiSequence::new(set),
                    spec: None,
                })
            }
        }
    }
}

fn coefficients_json(set: &CoefficientSet<f64>) -> Value {
    json!({
        "period": set.period(),
        "alpha": set.alpha().iter().map(|z| render::cjson(*z)).collect::<Vec<_>>(),
        "beta": set.beta().iter().map(|z| render::cjson(*z)).collect::<Vec<_>>(),
        "convention": "recurrence-minus",
    })
}

/// Run one invocation and write its document.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Exit, Failure> {
    cli.validate()?;
    let (doc, exit) = build(cli)?;
    let write = |w: &mut dyn Write| match doc.write(cli.format, w) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(bad(format!("cannot write output: {e}")))
        }
        _ => Ok(()),
    };
    match &cli.out {
        Some(path) => {
            let mut file = fs::File::create(path)
                .map_err(|e| bad(format!("cannot create {}: {e}", path.display())))?;
            write(&mut file)?;
        }
        None => write(out)?,
    }
    Ok(exit)
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                Exit::BadInput as i32
            } else {
                0
            };
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(&cli, &mut lock) {
        Ok(exit) => exit as i32,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.exit as i32
        }
    }
}

fn envelope(cli: &Cli, input: Option<&Input>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("version".into(), json!(VERSION));
    m.insert("command".into(), json!(cli.command.name()));
    m.insert("tol".into(), json!(cli.tol));
    if let Some(i) = input {
        m.insert(i.descriptor.0.clone(), i.descriptor.1.clone());
    }
    m
}

fn build(cli: &Cli) -> Result<(Document, Exit), Failure> {
    if cli.command == Command::Verify {
        return Ok(verify_doc(cli));
    }
    let input = cli.input()?;
    let mut m = envelope(cli, Some(&input));
    let doc = match cli.command {
        Command::Phi => phi_doc(cli, &input, &mut m)?,
        Command::Pn => pn_doc(&input, &mut m)?,
        Command::Critical => critical_doc(cli, &input, &mut m)?,
        Command::Certify => certify_doc(cli, &input, &mut m)?,
        Command::Spectrum => spectrum_doc(cli, &input, &mut m)?,
        Command::Support => support_doc(cli, &input, &mut m)?,
        Command::Family => family_doc(cli, &input, &mut m)?,
        Command::Oracle => oracle_doc(cli, &input, &mut m)?,
        Command::Verify => unreachable!(),
    };
    Ok((doc, Exit::Ok))
}

fn finish(m: Map<String, Value>, doc: Document) -> Document {
    Document {
        json: Value::Object(m),
        ..doc
    }
}

fn poly_rows(doc: &mut Document, label: &str, p: &crate::cpoly::CPoly<f64>) {
    for (k, z) in p.coeffs().iter().enumerate() {
        doc.row(vec![
            label.to_string(),
            k.to_string(),
            render::num(z.re),
            render::num(z.im),
        ]);
    }
}

fn phi_doc(cli: &Cli, input: &Input, m: &mut Map<String, Value>) -> Result<Document, Failure> {
    let n = cli.n.unwrap_or(2 * input.seq.period() - 1);
    let mut doc = Document::new(Value::Null)
        .summary(format!("phi_0 .. phi_{n}"))
        .columns(&["poly", "power", "re", "im"]);
    let mut list = Vec::new();
    for k in 0..=n {
        let p = input.seq.phi(k as isize);
        poly_rows(&mut doc, &format!("phi_{k}"), &p);
        doc.summary.push(format!("phi_{k} = {p}"));
        list.push(json!({"n": k, "coeffs": render::pjson(&p)}));
    }
    m.insert("phi".into(), Value::Array(list));
    if let Some(mu) = cli.mu()? {
        let values = input.seq.phi_eval_stream(mu, n + 1)?;
        m.insert("mu".into(), render::cjson(mu));
        m.insert(
            "values".into(),
            Value::Array(values.iter().map(|z| render::cjson(*z)).collect()),
        );
    }
    Ok(finish(std::mem::take(m), doc))
}

fn pn_doc(input: &Input, m: &mut Map<String, Value>) -> Result<Document, Failure> {
    let period = input.seq.period() as isize;
    let pn = input.seq.extract_pn()?;
    let (_, rem) = input
        .seq
        .phi(2 * period - 1)
        .div_rem(&input.seq.phi(period - 1))?;
    let relative = rem.norm_inf() / input.seq.phi(2 * period - 1).norm_inf();
    m.insert("pn".into(), render::pjson(&pn));
    m.insert("remainder_relative".into(), json!(relative));
    let mut doc = Document::new(Value::Null)
        .summary(format!("P_{period} = {pn}"))
        .summary(format!("division remainder (relative) = {relative:e}"))
        .columns(&["poly", "power", "re", "im"]);
    poly_rows(&mut doc, "pn", &pn);
    Ok(finish(std::mem::take(m), doc))
}

fn sources_text(sources: &[RootSource]) -> String {
    sources
        .iter()
        .map(|s| s.as_str())
        .collect::<Vec<_>>()
        .join("+")
}

fn report_json(report: &CriticalReport<f64>, m: &mut Map<String, Value>) {
    m.insert("pn".into(), render::pjson(&report.pn));
    m.insert("phi_nm1".into(), render::pjson(&report.phi_nm1));
    m.insert("delta0".into(), render::pjson(&report.delta0));
    m.insert("qn".into(), render::pjson(&report.qn));
    m.insert(
        "division_remainder".into(),
        json!(report.division_remainder),
    );
    m.insert(
        "root_residual".into(),
        json!(report.critical_values.residual),
    );
    m.insert("warnings".into(), json!(report.warnings));
}

fn certificate_json(cert: &Certificate<f64>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("value".into(), render::cjson(cert.mu));
    m.insert("verdict".into(), json!(cert.verdict.as_str()));
    m.insert("norm_sq".into(), render::real_json(cert.norm_sq));
    m.insert("z_minus".into(), render::cjson(cert.z_minus));
    m.insert("z_plus".into(), render::cjson(cert.z_plus));
    m.insert("pn_at_mu".into(), render::cjson(cert.pn_at_mu));
    m.insert(
        "growth_coeffs".into(),
        Value::Array(
            cert.growth_coeffs
                .iter()
                .map(|z| render::cjson(*z))
                .collect(),
        ),
    );
    m.insert(
        "formal_sum".into(),
        cert.formal_sum.map_or(Value::Null, render::cjson),
    );
    m.insert("diagnostics".into(), json!(cert.diagnostics));
    m
}

fn critical_doc(cli: &Cli, input: &Input, m: &mut Map<String, Value>) -> Result<Document, Failure> {
    let report = critical_values(&input.seq, cli.tol)?;
    report_json(&report, m);
    let mut doc = Document::new(Value::Null)
        .summary(format!("P_N     = {}", report.pn))
        .summary(format!("phi_N-1 = {}", report.phi_nm1))
        .summary(format!("Delta_0 = {}", report.delta0))
        .summary(format!("Q_N     = {}", report.qn))
        .columns(&["re", "im", "multiplicity", "source"]);
    for w in &report.warnings {
        doc.summary.push(format!("warning: {w}"));
    }
    let mut list = Vec::new();
    for v in report.values() {
        let source = sources_text(&v.sources);
        doc.row(vec![
            render::num(v.value.re),
            render::num(v.value.im),
            v.multiplicity.to_string(),
            source,
        ]);
        list.push(json!({
            "value": render::cjson(v.value),
            "multiplicity": v.multiplicity,
            "source": v.sources,
        }));
    }
    m.insert("critical_values".into(), Value::Array(list));
    Ok(finish(std::mem::take(m), doc))
}

fn certificate_rows(doc: &mut Document, cert: &Certificate<f64>, mult: usize, source: &str) {
    doc.row(vec![
        render::num(cert.mu.re),
        render::num(cert.mu.im),
        mult.to_string(),
        source.to_string(),
        cert.verdict.as_str().to_string(),
        render::num(cert.norm_sq),
        render::num(cert.z_minus.re),
        render::num(cert.z_minus.im),
    ]);
}

const CERT_COLUMNS: [&str; 8] = [
    "re",
    "im",
    "multiplicity",
    "source",
    "verdict",
    "norm_sq",
    "z_minus_re",
    "z_minus_im",
];

fn eigenvector_json(
    input: &Input,
    cert: &Certificate<f64>,
    count: usize,
) -> Result<Value, Failure> {
    let v = eigenvector(&input.seq, cert, count)?;
    Ok(json!({
        "x": v.x.iter().map(|z| render::cjson(*z)).collect::<Vec<_>>(),
        "y": v.y.iter().map(|z| render::cjson(*z)).collect::<Vec<_>>(),
        "residual": v.residual,
    }))
}

fn certify_doc(cli: &Cli, input: &Input, m: &mut Map<String, Value>) -> Result<Document, Failure> {
    let mu = cli.mu()?.ok_or_else(|| bad("certify needs --mu re,im"))?;
    let cert = certify(&input.seq, mu, cli.tol)?;
    m.insert("pn".into(), render::pjson(&input.seq.extract_pn()?));
    let mut c = certificate_json(&cert);
    if cert.is_eigenvalue() {
        let count = cli.n.unwrap_or(4 * input.seq.period());
        c.insert("eigenvector".into(), eigenvector_json(input, &cert, count)?);
    }
    m.insert("certificate".into(), Value::Object(c));
    let mut doc = Document::new(Value::Null)
        .summary(format!("mu       = {}", render::ctext(cert.mu)))
        .summary(format!("P_N(mu)  = {}", render::ctext(cert.pn_at_mu)))
        .summary(format!(
            "z-, z+   = {}, {}",
            render::ctext(cert.z_minus),
            render::ctext(cert.z_plus)
        ))
        .summary(format!("verdict  = {}", cert.verdict.as_str()))
        .summary(format!("norm_sq  = {}", render::rtext(cert.norm_sq)))
        .summary(format!("details  = {}", cert.diagnostics))
        .columns(&CERT_COLUMNS);
    certificate_rows(&mut doc, &cert, 1, "query");
    Ok(finish(std::mem::take(m), doc))
}

fn spectrum_doc(cli: &Cli, input: &Input, m: &mut Map<String, Value>) -> Result<Document, Failure> {
    let report = critical_values(&input.seq, cli.tol)?;
    report_json(&report, m);
    let classified = classify(&input.seq, &report, cli.tol)?;
    let count = cli.n.unwrap_or(4 * input.seq.period());
    let mut doc = Document::new(Value::Null).columns(&CERT_COLUMNS);
    let mut list = Vec::new();
    let mut eigen = Vec::new();
    for item in &classified {
        let cert = &item.certificate;
        let source = sources_text(&item.critical.sources);
        certificate_rows(&mut doc, cert, item.critical.multiplicity, &source);
        let mut c = certificate_json(cert);
        c.insert("multiplicity".into(), json!(item.critical.multiplicity));
        c.insert("source".into(), json!(item.critical.sources));
        if cert.is_eigenvalue() {
            c.insert("eigenvector".into(), eigenvector_json(input, cert, count)?);
            eigen.push(render::cjson(cert.mu));
        }
        list.push(Value::Object(c));
    }
    doc.summary.push(format!("P_N = {}", report.pn));
    doc.summary.push(format!(
        "{} critical values, {} eigenvalues",
        classified.len(),
        eigen.len()
    ));
    for w in &report.warnings {
        doc.summary.push(format!("warning: {w}"));
    }
    m.insert("eigenvalues".into(), Value::Array(eigen));
    m.insert("critical_values".into(), Value::Array(list));
    Ok(finish(std::mem::take(m), doc))
}

fn support_doc(cli: &Cli, input: &Input, m: &mut Map<String, Value>) -> Result<Document, Failure> {
    let curve = support_sample(&input.seq, cli.grid)?;
    let n = input.seq.period();
    let mut doc = Document::new(Value::Null).columns(&["branch", "index", "theta", "re", "im"]);
    for (b, branch) in curve.branches.iter().enumerate() {
        for (j, z) in branch.iter().enumerate() {
            doc.row(vec![
                b.to_string(),
                j.to_string(),
                render::num(curve.theta[j]),
                render::num(z.re),
                render::num(z.im),
            ]);
        }
    }
    let radii = |j: usize| {
        let mut r: Vec<f64> = curve.points[j * n..(j + 1) * n]
            .iter()
            .map(|z| z.norm())
            .collect();
        r.sort_by(|a, b| a.total_cmp(b));
        r
    };
    let endpoints = json!({"theta_0": radii(0), "theta_pi": radii(cli.grid - 1)});
    m.insert("grid".into(), json!(cli.grid));
    m.insert("pn".into(), render::pjson(&input.seq.extract_pn()?));
    m.insert(
        "theta".into(),
        Value::Array(curve.theta.iter().map(|t| json!(t)).collect()),
    );
    m.insert(
        "branches".into(),
        Value::Array(
            curve
                .branches
                .iter()
                .map(|b| Value::Array(b.iter().map(|z| render::cjson(*z)).collect()))
                .collect(),
        ),
    );
    m.insert("endpoint_radii".into(), endpoints);
    doc.summary
        .push(format!("{} points on {} branches", curve.points.len(), n));
    doc.summary
        .push(format!("endpoint radii at theta = 0:  {:?}", radii(0)));
    doc.summary.push(format!(
        "endpoint radii at theta = pi: {:?}",
        radii(cli.grid - 1)
    ));
    if let Some(spec) = &input.spec {
        if spec.name == FamilyName::Parametric {
            let lambda = lambda_of_alpha(spec.params[0]);
            m.insert("lambda".into(), json!(lambda));
            doc.summary.push(format!("lambda(alpha) = {lambda}"));
        }
    }
    Ok(finish(std::mem::take(m), doc))
}

fn family_doc(cli: &Cli, input: &Input, m: &mut Map<String, Value>) -> Result<Document, Failure> {
    let spec = input
        .spec
        .as_ref()
        .ok_or_else(|| bad("the family command needs --family"))?;
    let e = &spec.expectations;
    m.insert("coefficients".into(), coefficients_json(&spec.coeffs));
    m.insert("notes".into(), json!(spec.notes));
    let mut exp = Map::new();
    if let Some(p) = &e.pn {
        exp.insert("pn".into(), render::pjson(p));
    }
    if let Some(p) = &e.critical_poly {
        exp.insert("critical_poly".into(), render::pjson(p));
    }
    exp.insert(
        "critical_roots".into(),
        Value::Array(
            e.critical_roots
                .iter()
                .map(|(z, k)| json!({"value": render::cjson(*z), "multiplicity": k}))
                .collect(),
        ),
    );
    exp.insert(
        "eigenvalues".into(),
        Value::Array(
            e.eigenvalues
                .iter()
                .map(|ev| json!({"value": render::cjson(ev.mu), "norm_sq": ev.norm_sq}))
                .collect(),
        ),
    );
    exp.insert(
        "non_eigenvalues".into(),
        Value::Array(
            e.non_eigenvalues
                .iter()
                .map(|z| render::cjson(*z))
                .collect(),
        ),
    );
    exp.insert(
        "phi_table".into(),
        Value::Array(e.phi_table.iter().map(render::pjson).collect()),
    );
    m.insert("expectations".into(), Value::Object(exp));
    let mut doc = Document::new(Value::Null)
        .summary(format!("family {}", spec.name))
        .columns(&["index", "alpha_re", "alpha_im", "beta_re", "beta_im"]);
    for (k, (a, b)) in spec
        .coeffs
        .alpha()
        .iter()
        .zip(spec.coeffs.beta())
        .enumerate()
    {
        doc.row(vec![
            k.to_string(),
            render::num(a.re),
            render::num(a.im),
            render::num(b.re),
            render::num(b.im),
        ]);
    }
    for ev in &e.eigenvalues {
        doc.summary
            .push(format!("expected eigenvalue {}", render::ctext(ev.mu)));
    }
    for note in &spec.notes {
        doc.summary.push(format!("note: {note}"));
    }
    if spec.name == FamilyName::Parametric {
        let a = parametric_analysis(spec.params[0], cli.tol)?;
        let t = thresholds();
        m.insert(
            "analysis".into(),
            json!({
                "alpha": a.alpha,
                "mu12": [render::cjson(a.mu12[0]), render::cjson(a.mu12[1])],
                "mu34": [render::cjson(a.mu34[0]), render::cjson(a.mu34[1])],
                "lambda": a.lambda,
                "verdicts": a.verdicts.iter().map(|v| v.as_str()).collect::<Vec<_>>(),
                "eigenvalue_flags": a.eigenvalue_flags,
                "region": a.region,
                "thresholds": [t.alpha1, t.alpha2, t.alpha3],
                "root_mismatch": a.root_mismatch,
            }),
        );
        doc.summary.push(format!(
            "region {:?}, eigenvalue flags mu1..mu4 = {:?}, lambda = {}",
            a.region, a.eigenvalue_flags, a.lambda
        ));
    }
    Ok(finish(std::mem::take(m), doc))
}

fn oracle_doc(cli: &Cli, input: &Input, m: &mut Map<String, Value>) -> Result<Document, Failure> {
    let n = cli.max_n;
    let set = truncation_oracle(&input.seq, n, cli.tol)?;
    let curve = support_sample(&input.seq, cli.grid)?;
    let report = critical_values(&input.seq, cli.tol)?;
    let classified = classify(&input.seq, &report, cli.tol)?;
    let mut doc = Document::new(Value::Null)
        .summary(format!("roots of phi_{n}"))
        .columns(&["re", "im", "multiplicity", "support_distance"]);
    let mut roots = Vec::new();
    for r in &set.roots {
        let d = curve.distance(r.value);
        doc.row(vec![
            render::num(r.value.re),
            render::num(r.value.im),
            r.multiplicity.to_string(),
            render::num(d),
        ]);
        roots.push(json!({
            "value": render::cjson(r.value),
            "multiplicity": r.multiplicity,
            "support_distance": d,
        }));
    }
    let mut nearest = Vec::new();
    for item in &classified {
        let (_, d) = set.nearest(item.certificate.mu).expect("phi_n has roots");
        doc.summary.push(format!(
            "{} ({}): nearest truncation root at distance {:e}",
            render::ctext(item.certificate.mu),
            item.certificate.verdict.as_str(),
            d
        ));
        nearest.push(json!({
            "value": render::cjson(item.certificate.mu),
            "verdict": item.certificate.verdict.as_str(),
            "distance": d,
        }));
    }
    m.insert("n".into(), json!(n));
    m.insert("roots".into(), Value::Array(roots));
    m.insert("critical_values".into(), Value::Array(nearest));
    Ok(finish(std::mem::take(m), doc))
}

fn verify_doc(cli: &Cli) -> (Document, Exit) {
    let checks = run_suite(cli.seed, cli.tol);
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut m = envelope(cli, None);
    m.insert("seed".into(), json!(cli.seed));
    m.insert("total".into(), json!(checks.len()));
    m.insert("failed".into(), json!(failed));
    m.insert(
        "checks".into(),
        serde_json::to_value(&checks).expect("checks serialize"),
    );
    let mut doc = Document::new(Value::Object(m))
        .summary(format!("{} checks, {} failed", checks.len(), failed))
        .columns(&["check", "result", "detail"]);
    for c in &checks {
        doc.row(vec![
            c.name.clone(),
            if c.passed { "pass" } else { "FAIL" }.into(),
            c.detail.clone(),
        ]);
    }
    (
        doc,
        if failed == 0 {
            Exit::Ok
        } else {
            Exit::Mismatch
        },
    )
}
