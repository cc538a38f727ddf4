use clap::Args;
use hermrep::fockspace::{ccr_check, energy_spectrum, vacuum_characterization, weyl_relation_error, weyl_unitarity_defect, FockBasis};
use hermrep::jhtriple::{check_axioms, TripleKind, TripleSign, TripleSystem};
use hermrep::liealg::{check_lie, theta_exp_residual};
use hermrep::sampling::{gaussian_vector, rng};
use hermrep::C64;
use serde::Serialize;

use crate::io::{CliError, Output, EXIT_FAIL, EXIT_OK};

const CCR_TOL: f64 = 1e-12;
const WEYL_TOL: f64 = 1e-6;
const THETA_TOL: f64 = 1e-8;
const MAX_FOCK_DIM: usize = 4000;

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Module {
    Jhtriple,
    Liealg,
    Fock,
}

#[allow(clippy::upper_case_acronyms)]
#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TypeArg {
    #[value(name = "I", alias = "i")]
    I,
    #[value(name = "II", alias = "ii")]
    II,
    #[value(name = "III", alias = "iii")]
    III,
    #[value(name = "IV", alias = "iv")]
    IV,
}

#[derive(Args)]
pub struct CheckArgs {
    /// Run every suite.
    #[arg(long, conflicts_with = "module")]
    all: bool,
    #[arg(long, value_enum, required_unless_present = "all")]
    module: Option<Module>,
    /// Triple type for jhtriple/liealg; all types when omitted.
    #[arg(long = "type", value_enum)]
    kind: Option<TypeArg>,
    /// Matrix size for jhtriple/liealg (p = q = dim for type I), number of modes for fock.
    #[arg(long)]
    dim: Option<usize>,
    /// Fock cutoff degree.
    #[arg(long, default_value_t = 6)]
    degree: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Debug, Serialize)]
struct Line {
    suite: String,
    metric: &'static str,
    value: f64,
    tol: f64,
    pass: bool,
}

#[derive(Debug, Default, Serialize)]
struct CheckReport {
    lines: Vec<Line>,
    pass: bool,
}

impl CheckReport {
    fn push(&mut self, suite: impl Into<String>, metric: &'static str, value: f64, tol: f64) {
        self.lines.push(Line { suite: suite.into(), metric, value, tol, pass: value <= tol });
    }

    fn flag(&mut self, suite: impl Into<String>, metric: &'static str, ok: bool) {
        self.lines.push(Line { suite: suite.into(), metric, value: if ok { 0.0 } else { 1.0 }, tol: 0.0, pass: ok });
    }

    fn render(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            s += &format!("{:<4} {:<26} {:<20} {:>11.3e} (tol {:.0e})\n", if l.pass { "ok" } else { "FAIL" }, l.suite, l.metric, l.value, l.tol);
        }
        s += if self.pass { "all checks passed\n" } else { "some checks failed\n" };
        s
    }
}

fn kinds(kind: Option<TypeArg>, dim: Option<usize>) -> Vec<TripleKind> {
    let sizes: Vec<usize> = dim.map_or_else(|| (1..=3).collect(), |d| vec![d]);
    let mut out = Vec::new();
    for &n in &sizes {
        let all = [TripleKind::I { p: n, q: n }, TripleKind::II { n }, TripleKind::III { n }, TripleKind::IV { n }];
        for k in all {
            let keep = matches!(
                (kind, k),
                (None, _)
                    | (Some(TypeArg::I), TripleKind::I { .. })
                    | (Some(TypeArg::II), TripleKind::II { .. })
                    | (Some(TypeArg::III), TripleKind::III { .. })
                    | (Some(TypeArg::IV), TripleKind::IV { .. })
            );
            if keep {
                out.push(k);
            }
        }
        if dim.is_none() && n < 3 && kind.is_none_or(|k| k == TypeArg::I) {
            out.push(TripleKind::I { p: n, q: n + 1 });
        }
    }
    out
}

fn systems(a: &CheckArgs) -> Result<Vec<TripleSystem>, CliError> {
    let mut out = Vec::new();
    for k in kinds(a.kind, a.dim) {
        if matches!(k, TripleKind::II { n: 1 }) && a.dim.is_none() {
            continue;
        }
        for sign in [TripleSign::Positive, TripleSign::Negative] {
            out.push(TripleSystem::new(k, sign)?);
        }
    }
    Ok(out)
}

fn jhtriple_suite(a: &CheckArgs, r: &mut CheckReport) -> Result<(), CliError> {
    for sys in systems(a)? {
        let rep = check_axioms(&sys, a.trials, a.tol, a.seed)?;
        let name = format!("jhtriple {sys}");
        r.push(name.clone(), "jh1", rep.jh1, a.tol);
        r.push(name.clone(), "jh2", rep.jh2, a.tol);
        r.push(name.clone(), "jh3", rep.jh3, a.tol);
        r.push(name, "box_adjoint", rep.box_adjoint, a.tol);
    }
    Ok(())
}

fn liealg_suite(a: &CheckArgs, r: &mut CheckReport) -> Result<(), CliError> {
    for sys in systems(a)? {
        let rep = check_lie::<C64>(&sys, a.trials, a.tol, a.seed)?;
        let name = format!("liealg {sys}");
        r.push(name.clone(), "kkt_jacobi", rep.kkt_jacobi, a.tol);
        r.push(name.clone(), "real_form_closure", rep.real_form_closure, a.tol);
        r.push(name.clone(), "theta_automorphism", rep.theta_automorphism, a.tol);
        r.push(name.clone(), "cocycle", rep.cocycle, a.tol);
        r.push(name.clone(), "k_invariance", rep.k_invariance, a.tol);
        r.push(name.clone(), "hat_jacobi", rep.hat_jacobi, a.tol);
        r.push(name, "motion_jacobi", rep.motion_jacobi, a.tol);
    }
    if a.kind.is_none_or(|k| k == TypeArg::I) && a.dim.is_none_or(|d| d == 2) {
        let sys = TripleSystem::positive(TripleKind::I { p: 2, q: 2 })?;
        r.push("liealg I(2,2)", "theta_exp_pi_ad_d", theta_exp_residual(&sys)?, THETA_TOL);
    }
    Ok(())
}

fn fock_basis(m: usize, n: usize) -> Result<FockBasis, CliError> {
    let basis = FockBasis::new(m, n)?;
    if basis.dim() > MAX_FOCK_DIM {
        return Err(CliError::new(format!("Fock space of {m} modes up to degree {n} has dimension {} > {MAX_FOCK_DIM}", basis.dim())));
    }
    Ok(basis)
}

fn ccr_lines(basis: &FockBasis, seed: u64, r: &mut CheckReport) -> Result<(), CliError> {
    let mut g = rng(seed);
    let m = basis.modes();
    let name = format!("fock m={m} N={}", basis.cutoff());
    let mut worst = [0.0f64; 3];
    for _ in 0..5 {
        let v = gaussian_vector(&mut g, m);
        let w = gaussian_vector(&mut g, m);
        let c = ccr_check(basis, &v, &w)?;
        worst[0] = worst[0].max(c.annihilators);
        worst[1] = worst[1].max(c.creators);
        worst[2] = worst[2].max(c.canonical);
    }
    r.push(name.clone(), "ccr_annihilators", worst[0], CCR_TOL);
    r.push(name.clone(), "ccr_creators", worst[1], CCR_TOL);
    r.push(name.clone(), "ccr_canonical", worst[2], CCR_TOL);
    r.flag(name, "vacuum_unique", vacuum_characterization(m, basis.cutoff())?);
    Ok(())
}

fn weyl_line(basis: &FockBasis, r: &mut CheckReport) -> Result<(), CliError> {
    let m = basis.modes();
    let mut v = vec![C64::new(0.0, 0.0); m];
    let mut w = vec![C64::new(0.0, 0.0); m];
    v[0] = C64::new(1.0, 0.0);
    w[m - 1] = C64::new(0.0, 1.0);
    let name = format!("fock m={m} N={}", basis.cutoff());
    r.push(name, "weyl_relation", weyl_relation_error(basis, &v, &w, 2)?, WEYL_TOL);
    Ok(())
}

fn fock_suite(a: &CheckArgs, r: &mut CheckReport) -> Result<(), CliError> {
    match a.dim {
        Some(m) => {
            let basis = fock_basis(m, a.degree)?;
            ccr_lines(&basis, a.seed, r)?;
            weyl_line(&basis, r)?;
        }
        None => {
            for m in 1..=3 {
                for n in 1..=6 {
                    ccr_lines(&fock_basis(m, n)?, a.seed, r)?;
                }
            }
            weyl_line(&fock_basis(1, 40)?, r)?;
        }
    }
    Ok(())
}

pub fn run_check(a: &CheckArgs, out: &Output) -> Result<i32, CliError> {
    let mut report = CheckReport::default();
    let modules: Vec<Module> = match a.module {
        Some(m) if !a.all => vec![m],
        _ => vec![Module::Jhtriple, Module::Liealg, Module::Fock],
    };
    for m in modules {
        match m {
            Module::Jhtriple => jhtriple_suite(a, &mut report)?,
            Module::Liealg => liealg_suite(a, &mut report)?,
            Module::Fock => fock_suite(a, &mut report)?,
        }
    }
    report.pass = report.lines.iter().all(|l| l.pass);
    out.emit(&report, || report.render())?;
    Ok(if report.pass { EXIT_OK } else { EXIT_FAIL })
}

#[derive(Args)]
pub struct FockArgs {
    #[arg(long, default_value_t = 1)]
    modes: usize,
    #[arg(long, default_value_t = 20)]
    cutoff: usize,
    /// Central charge for the energy spectrum `c + N`.
    #[arg(long, default_value_t = 0.0)]
    charge: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Debug, Serialize)]
struct FockReport {
    modes: usize,
    cutoff: usize,
    dim: usize,
    ccr_canonical: f64,
    vacuum_unique: bool,
    weyl_relation_error: f64,
    weyl_unitarity_defect: f64,
    lowest_energies: Vec<f64>,
}

pub fn run_fock(a: &FockArgs, out: &Output) -> Result<i32, CliError> {
    if a.charge < 0.0 {
        return Err(CliError::new("the Fock representation needs charge >= 0"));
    }
    let basis = fock_basis(a.modes, a.cutoff)?;
    let mut g = rng(a.seed);
    let v = gaussian_vector(&mut g, a.modes);
    let w = gaussian_vector(&mut g, a.modes);
    let mut energies = energy_spectrum(&basis, a.charge);
    energies.dedup_by(|x, y| (*x - *y).abs() < 1e-9);
    energies.truncate(5);
    let report = FockReport {
        modes: a.modes,
        cutoff: a.cutoff,
        dim: basis.dim(),
        ccr_canonical: ccr_check(&basis, &v, &w)?.canonical,
        vacuum_unique: vacuum_characterization(a.modes, a.cutoff)?,
        weyl_relation_error: weyl_relation_error(&basis, &v, &w, 2.min(a.cutoff))?,
        weyl_unitarity_defect: weyl_unitarity_defect(&basis, &v, 2.min(a.cutoff))?,
        lowest_energies: energies,
    };
    out.emit(&report, || crate::io::key_values(&serde_json::to_value(&report).unwrap_or_default()))?;
    Ok(EXIT_OK)
}
