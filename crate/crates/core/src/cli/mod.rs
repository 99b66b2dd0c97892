//! Command-line frontend behind the `possing` binary.

mod render;

use std::ffi::OsString;
use std::io::Read;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::equiv::Equivalence;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grading::{condition_from_basis, Condition, GrMode, GradedAlgebra};
use crate::localalg;
use crate::newton::{newton_diagram, CPolytope, Extension};
use crate::nondeg::{detect_qh, innd_check, sqh_check};
use crate::normalform::{determinacy, generic_truncation, normal_form};
use crate::parse::{parse_poly, parse_vars, parse_weights};
use crate::poly::{with_variable_names, Mono, Poly};
use crate::selftest;

#[derive(Parser, Debug)]
#[command(name = "possing", version, about = "Singularity invariants, filtrations and normal forms over Q and F_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Job {
    /// Polynomial, e.g. "x^5+x^2*y^2+y^4"; "-" reads standard input.
    pub polynomial: String,
    /// Characteristic: 0 for Q, or a prime.
    #[arg(long = "char", default_value_t = 0)]
    pub characteristic: u64,
    /// Comma-separated variable names; inferred from the polynomial when omitted.
    #[arg(long)]
    pub vars: Option<String>,
    /// Facet weight vectors, e.g. "4,6;5,5". Defaults to the Newton diagram.
    #[arg(long)]
    pub weights: Option<String>,
    /// Extension rule for non-convenient Newton diagrams: virtual | single.
    #[arg(long, default_value = "virtual")]
    pub extension: Extension,
    /// Equivalence: right | contact.
    #[arg(long, default_value = "contact")]
    pub mode: Equivalence,
    /// Emit JSON instead of aligned text.
    #[arg(long)]
    pub json: bool,
    /// Report wall-clock time on standard error.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Milnor number and standard monomials of the Milnor algebra.
    Mu(Job),
    /// Tjurina number and standard monomials of the Tjurina algebra.
    Tau(Job),
    /// Newton diagram: support, vertices, facets, faces.
    Newton(Job),
    /// The C-polytope in use, from --weights or the Newton diagram.
    Cpoly(Job),
    /// Piecewise valuation and the facets attaining it.
    Val(Job),
    /// Principal part and facet initial forms.
    Inform(Job),
    /// Conditions A, AA, AC, AAC with graded dimensions.
    Conditions(Job),
    /// Regular basis of the graded algebra selected by --mode or --graded.
    Regbasis {
        #[command(flatten)]
        job: Job,
        /// a | ac | plain-milnor | plain-tjurina (overrides --mode).
        #[arg(long)]
        graded: Option<GrMode>,
        /// Largest multiple scanned along each extremal ray.
        #[arg(long)]
        ray_bound: Option<u32>,
    },
    /// Inner Newton non-degeneracy, face by face.
    Innd(Job),
    /// Quasihomogeneity, semi-quasihomogeneity, INND and the A-conditions in one report.
    Classify(Job),
    /// Normal form In_P(f) + sum c_a x^a with the transformation log.
    Normalform {
        #[command(flatten)]
        job: Job,
        /// Truncate at the generic determinacy bound instead of reducing.
        #[arg(long)]
        generic_truncation: bool,
    },
    /// Generic and filtered determinacy bounds.
    Determinacy(Job),
    /// Run the built-in fixture suite.
    Selftest {
        /// Random cases per property.
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
        #[arg(long)]
        json: bool,
    },
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REFUSED: i32 = 2;

/// Parsed ring, polynomial and polytope options.
pub struct Context {
    pub vars: Vec<String>,
    pub field: Field,
    pub f: Poly,
    pub job: Job,
}

/// Variables in order of appearance, with x, y, z, w first.
pub fn infer_vars(text: &str) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    let mut cur = String::new();
    for c in text.chars().chain(std::iter::once(' ')) {
        if c.is_alphabetic() || c == '_' || (!cur.is_empty() && c.is_alphanumeric()) {
            cur.push(c);
        } else if !cur.is_empty() {
            if !names.contains(&cur) {
                names.push(std::mem::take(&mut cur));
            }
            cur.clear();
        }
    }
    let rank = |s: &String| ["x", "y", "z", "w"].iter().position(|v| v == s).unwrap_or(4);
    names.sort_by(|a, b| rank(a).cmp(&rank(b)).then_with(|| a.cmp(b)));
    if names.is_empty() {
        names.push("x".into());
    }
    names
}

impl Context {
    pub fn new(job: &Job) -> Result<Context> {
        let field = Field::new(job.characteristic)?;
        let text = if job.polynomial == "-" {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::InvalidArgument(format!("reading standard input: {e}")))?;
            s
        } else {
            job.polynomial.clone()
        };
        let vars = match &job.vars {
            Some(v) => parse_vars(v)?,
            None => infer_vars(&text),
        };
        let f = parse_poly(text.trim(), &vars, field)?;
        Ok(Context { vars, field, f, job: job.clone() })
    }

    pub fn polytope(&self) -> Result<CPolytope> {
        match &self.job.weights {
            Some(w) => CPolytope::from_weights(&parse_weights(w, self.vars.len())?),
            None => CPolytope::from_poly(&self.f, self.job.extension),
        }
    }

    fn echo(&self, command: &str) -> Value {
        json!({
            "command": command,
            "characteristic": self.field.characteristic(),
            "variables": self.vars,
            "polynomial": self.f.to_string(),
            "weights": self.job.weights,
            "mode": self.job.mode,
        })
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn mono_list(ms: &[Mono]) -> Value {
    Value::Array(ms.iter().map(|m| Value::String(m.to_string())).collect())
}

fn polytope_value(p: &CPolytope) -> Value {
    to_value(p)
}

fn quotient(gens: &[Poly]) -> Result<Value> {
    let q = localalg::local_quotient(gens)?;
    Ok(json!({ "value": q.dimension, "standard_monomials": mono_list(&q.standard_monomials) }))
}

fn conditions(p: &CPolytope, f: &Poly) -> Result<Value> {
    let mut out = serde_json::Map::new();
    let mut dims = serde_json::Map::new();
    for mode in [GrMode::A, GrMode::AC] {
        let mut gr = GradedAlgebra::new(p, f, mode)?;
        let rb = gr.regular_basis(None);
        let key = if mode == GrMode::A { "grA" } else { "grAC" };
        dims.insert(key.into(), to_value(&rb.dimension));
        let (strict, almost) = if mode == GrMode::A { (Condition::A, Condition::AA) } else { (Condition::AC, Condition::AAC) };
        for c in [strict, almost] {
            let rep = condition_from_basis(f, c, &rb)?;
            out.insert(format!("{c:?}"), json!(rep.holds));
            out.insert(format!("{c:?}_certificate"), to_value(&rep.certificate));
        }
    }
    dims.insert("mu".into(), to_value(&localalg::milnor(f)?));
    dims.insert("tau".into(), to_value(&localalg::tjurina(f)?));
    out.insert("dims".into(), Value::Object(dims));
    Ok(Value::Object(out))
}

fn normal_form_value(p: &CPolytope, f: &Poly, mode: Equivalence) -> Result<Value> {
    let nf = normal_form(p, f, mode)?;
    let table: Vec<Value> = nf
        .tail
        .iter()
        .map(|(m, c)| json!({ "exponent": m, "monomial": m.to_string(), "coefficient": c }))
        .collect();
    Ok(json!({
        "principal_part": nf.principal_part,
        "normal_form": nf.normal_form,
        "coefficients": table,
        "log": nf.log,
        "residual": nf.residual,
        "residual_valuation": nf.residual_valuation,
        "filtered_degree": nf.filtered_degree,
        "determinacy": nf.determinacy,
        "k0": nf.k0,
        "cutoff": nf.cutoff,
    }))
}

fn classify(p: &CPolytope, f: &Poly) -> Result<Value> {
    let qh = detect_qh(f);
    let mut out = serde_json::Map::new();
    out.insert("quasihomogeneous".into(), to_value(&qh));
    if let Some(w) = qh.as_ref().map(|q| q.weights.clone()).or_else(|| p.is_single_weight().then(|| p.weights()[0].clone())) {
        out.insert("sqh_right".into(), to_value(&sqh_check(f, &w, Equivalence::Right)?));
        out.insert("sqh_contact".into(), to_value(&sqh_check(f, &w, Equivalence::Contact)?));
    }
    let innd = innd_check(f, p)?;
    out.insert("innd".into(), json!(innd.innd));
    out.insert("innd_failing_face".into(), to_value(&innd.failing()));
    out.insert("conditions".into(), conditions(p, f)?);
    Ok(Value::Object(out))
}

/// Computes the report body for a polynomial command.
pub fn run(command: &Command) -> Result<Value> {
    let (name, job) = match command {
        Command::Mu(j) => ("mu", j),
        Command::Tau(j) => ("tau", j),
        Command::Newton(j) => ("newton", j),
        Command::Cpoly(j) => ("cpoly", j),
        Command::Val(j) => ("val", j),
        Command::Inform(j) => ("inform", j),
        Command::Conditions(j) => ("conditions", j),
        Command::Regbasis { job, .. } => ("regbasis", job),
        Command::Innd(j) => ("innd", j),
        Command::Classify(j) => ("classify", j),
        Command::Normalform { job, .. } => ("normalform", job),
        Command::Determinacy(j) => ("determinacy", j),
        Command::Selftest { .. } => return Err(Error::InvalidArgument("selftest has no polynomial job".into())),
    };
    let ctx = Context::new(job)?;
    with_variable_names(&ctx.vars, || {
        let f = &ctx.f;
        let uses_polytope = !matches!(name, "mu" | "tau" | "newton");
        let p = if uses_polytope { Some(ctx.polytope()?) } else { None };
        let result = match command {
            Command::Mu(_) => quotient(&localalg::jacobian_ideal(f))?,
            Command::Tau(_) => quotient(&localalg::tjurina_ideal(f))?,
            Command::Newton(_) => to_value(&newton_diagram(f)?),
            Command::Cpoly(_) => polytope_value(p.as_ref().expect("polytope")),
            Command::Val(_) => to_value(&p.as_ref().expect("polytope").valuation(f)),
            Command::Inform(_) => {
                let p = p.as_ref().expect("polytope");
                let facets: Vec<Value> = (0..p.weights().len())
                    .map(|i| json!({ "weight": p.weights()[i], "initial_form": p.facet_initial_form(i, f) }))
                    .collect();
                json!({ "principal_part": p.initial_form(f), "valuation": p.val(f), "facets": facets })
            }
            Command::Conditions(_) => conditions(p.as_ref().expect("polytope"), f)?,
            Command::Regbasis { graded, ray_bound, .. } => {
                let mode = graded.unwrap_or(job.mode.graded_mode());
                let p = p.as_ref().expect("polytope");
                let mut gr = GradedAlgebra::new(p, f, mode)?;
                let rb = gr.regular_basis(*ray_bound);
                let ms: Vec<Mono> = rb.basis.iter().map(|(m, _)| m.clone()).collect();
                json!({
                    "graded": mode,
                    "status": rb.status,
                    "dimension": rb.dimension,
                    "basis": mono_list(&ms),
                    "valuations": rb.basis.iter().map(|(_, v)| *v).collect::<Vec<_>>(),
                    "witness": rb.witness,
                })
            }
            Command::Innd(_) => to_value(&innd_check(f, p.as_ref().expect("polytope"))?),
            Command::Classify(_) => classify(p.as_ref().expect("polytope"), f)?,
            Command::Normalform { generic_truncation: true, .. } => {
                let (k, t) = generic_truncation(f, job.mode)?;
                json!({ "generic_bound": k, "truncation": t })
            }
            Command::Normalform { .. } => normal_form_value(p.as_ref().expect("polytope"), f, job.mode)?,
            Command::Determinacy(_) => to_value(&determinacy(p.as_ref().expect("polytope"), f, job.mode)?),
            Command::Selftest { .. } => unreachable!(),
        };
        let mut report = json!({ "input": ctx.echo(name), "result": result });
        if let Some(p) = &p {
            report["polytope"] = json!({
                "origin": p.origin(),
                "weights": p.weights(),
                "scale": p.scale(),
            });
        }
        Ok(report)
    })
}

/// Writes to standard output, ignoring a closed pipe.
fn out(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit_error(e: &Error, json_mode: bool) -> i32 {
    eprintln!("error[{}]: {}", e.code(), e);
    if json_mode {
        out(&format!("{}\n", json!({ "error": { "code": e.code(), "message": e.to_string() } })));
    }
    if e.is_usage() {
        EXIT_USAGE
    } else {
        EXIT_REFUSED
    }
}

fn selftest_main(cases: usize, only: Option<u8>, json_mode: bool) -> i32 {
    let outcomes = match only {
        Some(id) => match selftest::criterion(id, cases) {
            Some(o) => vec![o],
            None => return emit_error(&Error::InvalidArgument(format!("no criterion {id}")), json_mode),
        },
        None => selftest::run_all(cases),
    };
    if json_mode {
        out(&format!("{}\n", render::json_text(&to_value(&outcomes))));
    } else {
        out(&render::selftest_table(&outcomes));
    }
    if outcomes.iter().all(|o| o.passed()) {
        EXIT_OK
    } else {
        EXIT_REFUSED
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            if code == EXIT_OK {
                out(&e.to_string());
            } else {
                let msg = e.to_string();
                let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
                eprintln!("error[usage]: {first}");
            }
            return code;
        }
    };
    if let Command::Selftest { cases, criterion, json } = cli.command {
        return selftest_main(cases, criterion, json);
    }
    let job = match &cli.command {
        Command::Regbasis { job, .. } | Command::Normalform { job, .. } => job,
        Command::Mu(j)
        | Command::Tau(j)
        | Command::Newton(j)
        | Command::Cpoly(j)
        | Command::Val(j)
        | Command::Inform(j)
        | Command::Conditions(j)
        | Command::Innd(j)
        | Command::Classify(j)
        | Command::Determinacy(j) => j,
        Command::Selftest { .. } => unreachable!(),
    };
    let (json_mode, timing) = (job.json, job.timing);
    let start = Instant::now();
    let outcome = run(&cli.command);
    if timing {
        eprintln!("elapsed: {:.3} ms", start.elapsed().as_secs_f64() * 1e3);
    }
    match outcome {
        Ok(report) => {
            if json_mode {
                out(&format!("{}\n", render::json_text(&report)));
            } else {
                out(&render::text(&report));
            }
            EXIT_OK
        }
        Err(e) => emit_error(&e, json_mode),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inferred_variable_order() {
        assert_eq!(infer_vars("z^2+x*y"), ["x", "y", "z"]);
        assert_eq!(infer_vars("b1*a+x^3"), ["x", "a", "b1"]);
        assert_eq!(infer_vars("7"), ["x"]);
    }

    #[test]
    fn text_rows_are_aligned() {
        let v = serde_json::json!({"input": {"n": 2}, "result": {"value": 16, "list": [1, 2]}});
        let t = render::text(&v);
        assert_eq!(t, "input.n  2\nlist     [1, 2]\nvalue    16\n");
    }
}
