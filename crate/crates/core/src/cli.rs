//! Command-line front end.
//!
//! Every subcommand prints `key = value` lines in a fixed order. Matrices are
//! printed as `begin <name>` / `end <name>` blocks whose body is a valid matrix
//! file. Exit codes: 0 on success, 1 on a domain error, 2 on a usage or input
//! error. Errors print a single `error = <Name>: <detail>` line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};

use crate::field::{FieldElement, FieldSpec};
use crate::forms::{is_isotropic_witness, HermitianForm};
use crate::isotropy::{
    cw_solve, isotropic_any, norm, norm_solve, IsotropyError, IsotropyOutcome, DEFAULT_CW_BOUND,
    DEFAULT_SEARCH_BOUND,
};
use crate::linalg::{format_vector, is_zero_vector, Matrix, Subspace};
use crate::maschke::{
    average_form, close_group, counterexample_report, decompose, equivariant_projector,
    is_invariant_form, is_invariant_subspace, MaschkeError, Representation, DEFAULT_GROUP_CAP,
    DEFAULT_PROBES,
};
use crate::text::{format_matrix, parse_form, parse_poly, parse_rep, TextError};

#[derive(Parser, Debug)]
#[command(
    name = "isoform",
    version,
    about = "Exact Hermitian forms over fields with involution"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orthogonal basis for a form given as a matrix file.
    Diagonalize { input: String },
    /// Nonzero isotropic vector of a form.
    Isotropic {
        input: String,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        search_bound: u64,
    },
    /// Solve x * conj(x) = target.
    NormSolve {
        #[arg(long)]
        field: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        search_bound: u64,
    },
    /// Nontrivial zero of a homogeneous polynomial over a finite field.
    CwSolve {
        input: String,
        #[arg(long, default_value_t = DEFAULT_CW_BOUND)]
        search_bound: u64,
    },
    /// Close a set of generators into a finite group.
    RepClose {
        input: String,
        #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
        max_group: usize,
    },
    /// Average a form over a group.
    RepAverage {
        rep: String,
        form: String,
        #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
        max_group: usize,
    },
    /// Split a representation into invariant summands.
    RepDecompose {
        input: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
        max_group: usize,
    },
    /// Isotropic line of an averaged form and its two complements.
    Counterexample {
        rep: String,
        form: String,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        search_bound: u64,
        #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
        max_group: usize,
    },
}

enum Failure {
    Usage(String),
    Domain(&'static str, String),
}

impl From<IsotropyError> for Failure {
    fn from(e: IsotropyError) -> Self {
        Failure::Domain(e.name(), e.to_string())
    }
}

impl From<MaschkeError> for Failure {
    fn from(e: MaschkeError) -> Self {
        Failure::Domain(e.name(), e.to_string())
    }
}

/// Output accumulated until the command succeeds.
#[derive(Default)]
struct Report(String);

impl Report {
    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.0, "{key} = {value}");
    }

    fn matrix(&mut self, name: &str, m: &Matrix) {
        let _ = writeln!(self.0, "begin {name}\n{}\nend {name}", format_matrix(m));
    }
}

/// Runs the command line `args` (program name first). Returns the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                2
            } else {
                let _ = write!(stdout, "{}", e.render());
                0
            };
            return code;
        }
    };
    let mut inputs = Inputs { stdin, used: false };
    let result = execute(cli.command, &mut inputs);
    match result {
        Ok(report) => {
            let _ = stdout.write_all(report.0.as_bytes());
            0
        }
        Err(Failure::Usage(detail)) => {
            let _ = writeln!(stdout, "error = InputError: {detail}");
            2
        }
        Err(Failure::Domain(name, detail)) => {
            let _ = writeln!(stdout, "error = {name}: {detail}");
            1
        }
    }
}

struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    used: bool,
}

impl Inputs<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            if self.used {
                return Err(Failure::Usage(
                    "standard input can be read only once".into(),
                ));
            }
            self.used = true;
            let mut text = String::new();
            self.stdin
                .read_to_string(&mut text)
                .map_err(|e| Failure::Usage(format!("<stdin>: {e}")))?;
            Ok(text)
        } else {
            std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
        }
    }
}

fn parsed<T>(path: &str, r: Result<T, TextError>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn load_form(inputs: &mut Inputs<'_>, path: &str) -> Result<HermitianForm, Failure> {
    let text = inputs.read(path)?;
    parsed(path, parse_form(&text))
}

fn load_rep(inputs: &mut Inputs<'_>, path: &str, cap: usize) -> Result<Representation, Failure> {
    let text = inputs.read(path)?;
    let file = parsed(path, parse_rep(&text))?;
    match close_group(file.field, file.dim, file.generators, cap) {
        Err(MaschkeError::SingularGenerator(i)) => {
            Err(Failure::Usage(format!("{path}: generator {i} is singular")))
        }
        other => Ok(other?),
    }
}

fn execute(command: Command, inputs: &mut Inputs<'_>) -> Result<Report, Failure> {
    let mut out = Report::default();
    match command {
        Command::Diagonalize { input } => {
            let form = load_form(inputs, &input)?;
            out.kv("command", "diagonalize");
            out.kv("field", form.field());
            out.kv("dim", form.dim());
            let diag = form.diagonalize();
            out.kv("diagonal", format_vector(&diag.diagonal));
            out.matrix("basis_change", &diag.basis_change);
            let congruent = form
                .congruent_gram(&diag.basis_change)
                .map_err(domain_form)?;
            out.kv(
                "diagonal_check",
                congruent == Matrix::diagonal(form.field(), &diag.diagonal),
            );
            let det = diag
                .basis_change
                .determinant()
                .map_err(|e| Failure::Domain("LinalgError", e.to_string()))?;
            out.kv("invertible_check", !det.is_zero());
            out.kv(
                "fixed_check",
                diag.diagonal.iter().all(FieldElement::is_fixed),
            );
        }
        Command::Isotropic {
            input,
            search_bound,
        } => {
            let form = load_form(inputs, &input)?;
            out.kv("command", "isotropic");
            out.kv("field", form.field());
            out.kv("dim", form.dim());
            out.kv("search_bound", search_bound);
            match isotropic_any(&form, search_bound)? {
                IsotropyOutcome::Found(w) => {
                    out.kv("construction", w.construction());
                    out.kv("witness", format_vector(w.vector()));
                    out.kv("nonzero_check", !is_zero_vector(w.vector()));
                    out.kv(
                        "isotropic_check",
                        is_isotropic_witness(&form, w.vector()).map_err(domain_form)?,
                    );
                }
                IsotropyOutcome::NotFound { exhaustive: true } => {
                    return Err(Failure::Domain(
                        "NotFound",
                        "the form is anisotropic".into(),
                    ))
                }
                IsotropyOutcome::NotFound { exhaustive: false } => {
                    return Err(Failure::Domain(
                        "NotFound",
                        format!("no isotropic vector within search bound {search_bound}"),
                    ))
                }
            }
        }
        Command::NormSolve {
            field,
            target,
            search_bound,
        } => {
            let spec: FieldSpec = field
                .parse()
                .map_err(|e| Failure::Usage(format!("--field: {e}")))?;
            let c = spec
                .parse(&target)
                .map_err(|e| Failure::Usage(format!("--target: {e}")))?;
            let x = norm_solve(spec, &c, search_bound)?;
            let nx = norm(&x);
            out.kv("command", "norm-solve");
            out.kv("field", spec);
            out.kv("target", &c);
            out.kv("solution", &x);
            out.kv("norm", &nx);
            out.kv("norm_check", nx == c);
        }
        Command::CwSolve {
            input,
            search_bound,
        } => {
            let text = inputs.read(&input)?;
            let f = parsed(&input, parse_poly(&text))?;
            let v = cw_solve(&f, search_bound)?;
            out.kv("command", "cw-solve");
            out.kv("field", f.field());
            out.kv("n_vars", f.n_vars());
            out.kv("degree", f.degree());
            out.kv("polynomial", &f);
            out.kv("chevalley_applies", (f.degree() as usize) < f.n_vars());
            out.kv("search_bound", search_bound);
            out.kv("solution", format_vector(&v));
            out.kv("nonzero_check", !is_zero_vector(&v));
            out.kv("zero_check", f.evaluate(&v)?.is_zero());
        }
        Command::RepClose { input, max_group } => {
            let rep = load_rep(inputs, &input, max_group)?;
            out.kv("command", "rep-close");
            rep_header(&mut out, &rep);
            for (i, g) in rep.elements().iter().enumerate() {
                out.matrix(&format!("element_{i}"), g);
            }
            out.kv("closure_check", closure_check(&rep)?);
        }
        Command::RepAverage {
            rep,
            form,
            max_group,
        } => {
            let rep = load_rep(inputs, &rep, max_group)?;
            let seed = load_form(inputs, &form)?;
            let averaged = average_form(&rep, &seed)?;
            out.kv("command", "rep-average");
            rep_header(&mut out, &rep);
            out.matrix("averaged_form", averaged.gram());
            out.kv("invariant_check", is_invariant_form(&rep, &averaged)?);
            out.kv("radical_dim", averaged.radical().dim());
            out.kv("nondegenerate", averaged.is_nondegenerate());
        }
        Command::RepDecompose {
            input,
            seed,
            max_group,
        } => {
            let rep = load_rep(inputs, &input, max_group)?;
            let parts = decompose(&rep, DEFAULT_PROBES, seed)?;
            out.kv("command", "rep-decompose");
            rep_header(&mut out, &rep);
            out.kv("seed", seed);
            out.kv("probes", DEFAULT_PROBES);
            out.kv("summands", parts.len());
            let mut invariant = true;
            for (i, s) in parts.iter().enumerate() {
                out.kv(&format!("summand_{i}_dim"), s.dim());
                out.matrix(&format!("summand_{i}"), s.basis());
                invariant &= is_invariant_subspace(&rep, s)?;
            }
            let total: usize = parts.iter().map(Subspace::dim).sum();
            out.kv("dim_sum_check", total == rep.dim());
            out.kv("invariance_check", invariant);
            out.kv("direct_sum_check", direct_sum_check(&rep, &parts)?);
        }
        Command::Counterexample {
            rep,
            form,
            search_bound,
            max_group,
        } => {
            let rep = load_rep(inputs, &rep, max_group)?;
            let seed = load_form(inputs, &form)?;
            let report = counterexample_report(&rep, &seed, search_bound)?;
            out.kv("command", "counterexample");
            rep_header(&mut out, &rep);
            out.kv("search_bound", search_bound);
            out.matrix("averaged_form", report.form.gram());
            out.kv("invariant_check", is_invariant_form(&rep, &report.form)?);
            out.kv("construction", report.witness.construction());
            out.kv("witness", format_vector(report.witness.vector()));
            out.kv(
                "isotropic_check",
                is_isotropic_witness(&report.form, report.witness.vector()).map_err(domain_form)?,
            );
            out.kv("w_dim", report.w_subspace.dim());
            out.kv("w_perp_dim", report.w_perp.dim());
            out.kv("w_contained_in_w_perp", report.contains);
            out.kv("restriction_rank", report.restriction_rank);
            out.matrix("maschke_complement", report.maschke_complement.basis());
            out.matrix("projector", &report.projector);
            let p = &report.projector;
            let idempotent = p.mul(p).map_err(linalg_failure)? == *p;
            let mut commutes = true;
            for g in rep.generators() {
                commutes &=
                    g.mul(p).map_err(linalg_failure)? == p.mul(g).map_err(linalg_failure)?;
            }
            out.kv("projector_idempotent_check", idempotent);
            out.kv("projector_equivariant_check", commutes);
            out.kv(
                "complement_invariant_check",
                is_invariant_subspace(&rep, &report.maschke_complement)?,
            );
            out.kv("direct_sum_check", report.direct_sum);
            let split = equivariant_projector(&rep, &report.w_subspace)?;
            out.kv(
                "complement_reproducible_check",
                split.complement == report.maschke_complement,
            );
        }
    }
    Ok(out)
}

fn domain_form(e: crate::forms::FormError) -> Failure {
    Failure::Domain("FormError", e.to_string())
}

fn linalg_failure(e: crate::linalg::LinalgError) -> Failure {
    Failure::Domain("LinalgError", e.to_string())
}

fn rep_header(out: &mut Report, rep: &Representation) {
    out.kv("field", rep.field());
    out.kv("dim", rep.dim());
    out.kv("generators", rep.generators().len());
    out.kv("order", rep.order());
    out.kv("order_invertible", rep.order_is_invertible());
}

fn closure_check(rep: &Representation) -> Result<bool, Failure> {
    let elements: std::collections::HashSet<&Matrix> = rep.elements().iter().collect();
    let identity = Matrix::identity(rep.field(), rep.dim());
    if !elements.contains(&identity) || elements.len() != rep.order() {
        return Ok(false);
    }
    for g in rep.elements() {
        for h in rep.generators() {
            if !elements.contains(&g.mul(h).map_err(linalg_failure)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn direct_sum_check(rep: &Representation, parts: &[Subspace]) -> Result<bool, Failure> {
    let columns: Vec<Vec<FieldElement>> = parts.iter().flat_map(Subspace::basis_vectors).collect();
    if columns.len() != rep.dim() {
        return Ok(false);
    }
    let m = Matrix::from_columns(rep.field(), rep.dim(), &columns).map_err(linalg_failure)?;
    Ok(m.rank() == rep.dim())
}
