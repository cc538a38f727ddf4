//! Finite-rank positive-definiteness tests for scalar holomorphic kernels on `U(p,q)` and its
//! type II/III subgroups, via the block factorization `g = p⁺ · k · p⁻`.

use nalgebra::DMatrix;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::{classify, ClassifyError, Family, GroupSpec, RepData, Shape, Verdict};
use crate::fockspace::{heisenberg_relation_error, FockBasis};
use crate::rational::{format_rational, to_f64, Rational};
use crate::sampling::{gaussian_matrix, rng};
use crate::scalar::{max_abs, C64};
use crate::weights::IndexSet;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KernelError {
    #[error("matrix is {rows}x{cols}, expected {want}x{want}")]
    Shape { rows: usize, cols: usize, want: usize },
    #[error("lower-right block is singular: the point is outside P+ K P-")]
    Singular,
    #[error("{block} has an eigenvalue {eig} off the open right half plane; sample closer to the identity")]
    Branch { block: &'static str, eig: String },
    #[error("only {got} of {want} samples admit a branch-safe decomposition")]
    InsufficientSamples { got: usize, want: usize },
    #[error("sample count must be positive")]
    NoSamples,
    #[error("sampling radius must be positive and finite, got {0}")]
    BadRadius(f64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TripleDecomposition {
    pub x: DMatrix<C64>,
    pub k1: DMatrix<C64>,
    pub k2: DMatrix<C64>,
    pub y: DMatrix<C64>,
}

/// `g = [[1, X], [0, 1]] diag(k1, k2) [[1, 0], [Y, 1]]` with `p` the size of the first block.
pub fn tridec(g: &DMatrix<C64>, p: usize) -> Result<TripleDecomposition, KernelError> {
    let n = g.nrows();
    if g.ncols() != n || p > n {
        return Err(KernelError::Shape { rows: g.nrows(), cols: g.ncols(), want: n });
    }
    let q = n - p;
    let a = g.view((0, 0), (p, p));
    let b = g.view((0, p), (p, q));
    let c = g.view((p, 0), (q, p));
    let d = g.view((p, p), (q, q)).into_owned();
    let scale = max_abs(g).max(1.0);
    let d_inv = d.clone().try_inverse().ok_or(KernelError::Singular)?;
    if !d_inv.iter().all(|z| z.re.is_finite() && z.im.is_finite()) || max_abs(&d_inv) * scale > 1e12 {
        return Err(KernelError::Singular);
    }
    let x = b * &d_inv;
    let y = &d_inv * c;
    let k1 = a - &x * c;
    Ok(TripleDecomposition { x, k1, k2: d, y })
}

impl TripleDecomposition {
    pub fn p(&self) -> usize {
        self.k1.nrows()
    }

    pub fn q(&self) -> usize {
        self.k2.nrows()
    }

    /// Reassembles `[[1, X], [0, 1]] diag(k1, k2) [[1, 0], [Y, 1]]`.
    pub fn assemble(&self) -> DMatrix<C64> {
        let (p, q) = (self.p(), self.q());
        let mut upper = DMatrix::<C64>::identity(p + q, p + q);
        upper.view_mut((0, p), (p, q)).copy_from(&self.x);
        let mut lower = DMatrix::<C64>::identity(p + q, p + q);
        lower.view_mut((p, 0), (q, p)).copy_from(&self.y);
        let mut k = DMatrix::<C64>::zeros(p + q, p + q);
        k.view_mut((0, 0), (p, p)).copy_from(&self.k1);
        k.view_mut((p, p), (q, q)).copy_from(&self.k2);
        upper * k * lower
    }
}

/// `diag(k1, k2) -> det(k1)^{c₊} det(k2)^{c₋}`, non-integer powers through the principal
/// logarithm of the eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScalarCharacter {
    #[serde(with = "crate::rational::as_string")]
    pub c_plus: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub c_minus: Rational,
}

fn det_power(k: &DMatrix<C64>, e: Rational, block: &'static str) -> Result<C64, KernelError> {
    if e.is_zero() {
        return Ok(C64::new(1.0, 0.0));
    }
    if e.is_integer() {
        return Ok(k.determinant().powi(*e.numer() as i32));
    }
    let eig = nalgebra::Schur::new(k.clone()).eigenvalues().ok_or(KernelError::Singular)?;
    let mut log = C64::new(0.0, 0.0);
    for l in eig.iter() {
        if l.re <= 0.0 {
            return Err(KernelError::Branch { block, eig: format!("{l}") });
        }
        log += l.ln();
    }
    Ok((log * to_f64(&e)).exp())
}

impl ScalarCharacter {
    /// The scalar character of charge `c` on the `J₋` side: `(0, -c)`.
    pub fn of_charge(c: Rational) -> Self {
        ScalarCharacter { c_plus: Rational::zero(), c_minus: -c }
    }

    pub fn eval(&self, k1: &DMatrix<C64>, k2: &DMatrix<C64>) -> Result<C64, KernelError> {
        Ok(det_power(k1, self.c_plus, "k1")? * det_power(k2, self.c_minus, "k2")?)
    }

    /// `f(g) = χ(κ(g))` for the middle factor `κ(g) = diag(k1, k2)`.
    pub fn on_group(&self, g: &DMatrix<C64>, p: usize) -> Result<C64, KernelError> {
        let t = tridec(g, p)?;
        self.eval(&t.k1, &t.k2)
    }
}

/// `F(g, h) = conj(f(h))⁻¹ f(h⁻¹ g) f(g)⁻¹`.
pub fn kernel_value(g: &DMatrix<C64>, h: &DMatrix<C64>, chi: &ScalarCharacter, p: usize) -> Result<C64, KernelError> {
    let h_inv = h.clone().try_inverse().ok_or(KernelError::Singular)?;
    let fg = chi.on_group(g, p)?;
    let fh = chi.on_group(h, p)?;
    let fhg = chi.on_group(&(h_inv * g), p)?;
    Ok(fhg / (fh.conj() * fg))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum KernelFamily {
    I { p: usize, q: usize },
    II { n: usize },
    III { n: usize },
}

impl KernelFamily {
    pub fn blocks(&self) -> (usize, usize) {
        match *self {
            KernelFamily::I { p, q } => (p, q),
            KernelFamily::II { n } | KernelFamily::III { n } => (n, n),
        }
    }

    fn validate(&self) -> Result<(), KernelError> {
        match *self {
            KernelFamily::I { p, q } if p == 0 || q == 0 => Err(KernelError::Unsupported("type I needs p, q >= 1".into())),
            KernelFamily::II { n } if n < 2 => Err(KernelError::Unsupported("type II needs n >= 2".into())),
            KernelFamily::III { n: 0 } => Err(KernelError::Unsupported("type III needs n >= 1".into())),
            _ => Ok(()),
        }
    }

    /// Random off-diagonal block: any `p x q` matrix for I, skew for II, symmetric for III.
    fn random_block<R: Rng>(&self, rng: &mut R) -> DMatrix<C64> {
        let (p, q) = self.blocks();
        let z = gaussian_matrix(rng, p, q);
        match self {
            KernelFamily::I { .. } => z,
            KernelFamily::II { .. } => (&z - z.transpose()) * C64::new(0.5, 0.0),
            KernelFamily::III { .. } => (&z + z.transpose()) * C64::new(0.5, 0.0),
        }
    }
}

pub fn operator_norm(m: &DMatrix<C64>) -> f64 {
    m.clone().singular_values().max()
}

/// `exp [[0, Z], [Z*, 0]]`, an element of `exp(p)` in `U(p,q)`.
pub fn exp_p(z: &DMatrix<C64>) -> DMatrix<C64> {
    let (p, q) = z.shape();
    let mut xi = DMatrix::<C64>::zeros(p + q, p + q);
    xi.view_mut((0, p), (p, q)).copy_from(z);
    xi.view_mut((p, 0), (q, p)).copy_from(&z.adjoint());
    let eig = xi.symmetric_eigen();
    let e = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| C64::new(l.exp(), 0.0)));
    &eig.eigenvectors * e * eig.eigenvectors.adjoint()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GramOptions {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub radius: f64,
}

impl GramOptions {
    pub fn new(samples: usize, seed: u64, tol: f64) -> Self {
        GramOptions { samples, seed, tol, radius: 0.6 }
    }
}

impl Default for GramOptions {
    fn default() -> Self {
        GramOptions::new(40, 7, 1e-8)
    }
}

/// Complex number as `[re, im]` in reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cplx(pub f64, pub f64);

impl From<C64> for Cplx {
    fn from(z: C64) -> Self {
        Cplx(z.re, z.im)
    }
}

fn rows_of(m: &DMatrix<C64>) -> Vec<Vec<Cplx>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)].into()).collect()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GramVerdict {
    Positive,
    NotPositive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramReport {
    pub family: KernelFamily,
    pub character: ScalarCharacter,
    pub options: GramOptions,
    /// `X = b d⁻¹` of each sample, its image in the bounded domain.
    pub sample_points: Vec<Vec<Vec<Cplx>>>,
    pub gram: Vec<Vec<Cplx>>,
    pub hermitian_residual: f64,
    pub min_eigenvalue: f64,
    pub verdict: GramVerdict,
}

impl GramReport {
    pub fn positive(&self) -> bool {
        self.verdict == GramVerdict::Positive
    }
}

/// Seeded samples `exp(ξ)`, `ξ ∈ p` with `‖ξ‖ <= radius`, that decompose branch-safely.
pub fn sample_group(family: KernelFamily, chi: &ScalarCharacter, opts: &GramOptions) -> Result<Vec<DMatrix<C64>>, KernelError> {
    family.validate()?;
    if opts.samples == 0 {
        return Err(KernelError::NoSamples);
    }
    if !(opts.radius > 0.0 && opts.radius.is_finite()) {
        return Err(KernelError::BadRadius(opts.radius));
    }
    let (p, _) = family.blocks();
    let mut g = rng(opts.seed);
    let mut out = Vec::with_capacity(opts.samples);
    for _ in 0..opts.samples * 20 {
        if out.len() == opts.samples {
            break;
        }
        let z = family.random_block(&mut g);
        let norm = operator_norm(&z);
        let r: f64 = g.random::<f64>() * opts.radius;
        if norm == 0.0 {
            continue;
        }
        let elem = exp_p(&(z * C64::new(r / norm, 0.0)));
        if chi.on_group(&elem, p).is_ok() {
            out.push(elem);
        }
    }
    if out.len() < opts.samples {
        return Err(KernelError::InsufficientSamples { got: out.len(), want: opts.samples });
    }
    Ok(out)
}

/// Gram matrix `[F(g_i, g_j)]` of the scalar kernel; positive iff its least eigenvalue is
/// at least `-tol`. Entries are computed in parallel; the result only depends on the options.
pub fn gram_test(family: KernelFamily, chi: ScalarCharacter, opts: GramOptions) -> Result<GramReport, KernelError> {
    let samples = sample_group(family, &chi, &opts)?;
    let (p, _) = family.blocks();
    let n = samples.len();
    let f: Vec<C64> = samples.iter().map(|g| chi.on_group(g, p)).collect::<Result<_, _>>()?;
    let inv: Vec<DMatrix<C64>> = samples.iter().map(|g| g.clone().try_inverse().ok_or(KernelError::Singular)).collect::<Result<_, _>>()?;
    let rows: Vec<Vec<C64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let fhg = chi.on_group(&(&inv[j] * &samples[i]), p)?;
                    Ok(fhg / (f[j].conj() * f[i]))
                })
                .collect::<Result<Vec<C64>, KernelError>>()
        })
        .collect::<Result<_, _>>()?;
    let gram = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let hermitian_residual = max_abs(&(&gram - gram.adjoint()));
    let sym = (&gram + gram.adjoint()) * C64::new(0.5, 0.0);
    let min_eigenvalue = sym.symmetric_eigen().eigenvalues.min();
    let sample_points = samples.iter().map(|g| rows_of(&tridec(g, p).expect("sampled points decompose").x)).collect();
    Ok(GramReport {
        family,
        character: chi,
        options: opts,
        sample_points,
        gram: rows_of(&gram),
        hermitian_residual,
        min_eigenvalue,
        verdict: if min_eigenvalue >= -opts.tol { GramVerdict::Positive } else { GramVerdict::NotPositive },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossRow {
    #[serde(with = "crate::rational::as_string")]
    pub c: Rational,
    pub classifier: bool,
    pub numeric: bool,
    pub agree: bool,
    /// Least Gram eigenvalue (type I) or Heisenberg homomorphism defect (flat).
    pub statistic: Option<f64>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossTable {
    pub spec: GroupSpec,
    pub options: GramOptions,
    pub rows: Vec<CrossRow>,
    pub all_agree: bool,
}

pub type Classifier<'a> = &'a (dyn Fn(&GroupSpec, &RepData) -> Result<Verdict, ClassifyError> + Sync);

/// Classifier verdicts next to the numerical check for each charge in `grid`: scalar kernels
/// on `U(p,q)` for type I with both sides finite, the charge-`c` Fock representation for the
/// flat case.
pub fn cross_validate(spec: &GroupSpec, grid: &[Rational], opts: &GramOptions) -> Result<CrossTable, KernelError> {
    cross_validate_with(spec, grid, opts, &classify)
}

pub fn cross_validate_with(spec: &GroupSpec, grid: &[Rational], opts: &GramOptions, classifier: Classifier<'_>) -> Result<CrossTable, KernelError> {
    let shape = spec.shape()?;
    let mut rows = Vec::with_capacity(grid.len());
    match shape {
        Shape::IFin { plus: IndexSet::Finite { n: p }, minus: IndexSet::Finite { n: q } } if spec.curvature == crate::classifier::Curvature::Domain => {
            let family = KernelFamily::I { p: p as usize, q: q as usize };
            for &c in grid {
                let v = classifier(spec, &RepData::scalar_ifin(q, c)?)?;
                let report = gram_test(family, ScalarCharacter::of_charge(c), *opts)?;
                rows.push(CrossRow {
                    c,
                    classifier: v.inducible,
                    numeric: report.positive(),
                    agree: v.inducible == report.positive(),
                    statistic: Some(report.min_eigenvalue),
                    reason: v.reason.message,
                });
            }
        }
        Shape::Flat => {
            let basis = FockBasis::new(1, 40).expect("one mode");
            let v = [C64::new(0.5, 0.2)];
            let w = [C64::new(-0.1, 0.6)];
            for &c in grid {
                let verdict = classifier(spec, &RepData::single(crate::weights::Weight::zero(), c))?;
                let defect = heisenberg_relation_error(&basis, to_f64(&c), (0.3, &v), (-1.1, &w), 2).ok();
                let numeric = defect.is_some_and(|d| d <= 1e-6);
                rows.push(CrossRow {
                    c,
                    classifier: verdict.inducible,
                    numeric,
                    agree: verdict.inducible == numeric,
                    statistic: defect,
                    reason: verdict.reason.message,
                });
            }
        }
        _ => {
            return Err(KernelError::Unsupported(format!(
                "cross-validation covers type I domains with finite Jplus and Jminus and the flat case, not {:?} {:?}",
                spec.family, spec.curvature
            )))
        }
    }
    let all_agree = rows.iter().all(|r| r.agree);
    Ok(CrossTable { spec: *spec, options: *opts, rows, all_agree })
}

impl CrossTable {
    pub fn render(&self) -> String {
        let mut s = format!("{:>6}  {:>10}  {:>8}  {:>7}  {:>12}\n", "c", "classifier", "numeric", "agree", "statistic");
        for r in &self.rows {
            let stat = r.statistic.map_or("-".to_string(), |x| format!("{x:.3e}"));
            s += &format!("{:>6}  {:>10}  {:>8}  {:>7}  {:>12}\n", format_rational(&r.c), r.classifier, r.numeric, r.agree, stat);
        }
        s
    }
}

/// Type of the classifier spec matching a kernel family (for labeling).
pub fn family_label(f: &KernelFamily) -> Family {
    match f {
        KernelFamily::I { .. } => Family::I,
        KernelFamily::II { .. } => Family::II,
        KernelFamily::III { .. } => Family::III,
    }
}
