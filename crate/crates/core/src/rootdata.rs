//! Root systems of the four hermitian matrix models on a finite window, their splitting
//! into compact and `p±` roots, coroots, and the matrix test for compactness.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::scalar::C64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("[x, x*] pairs to zero with {0}; the root is neither compact nor noncompact")]
    Degenerate(String),
    #[error("root {0} does not belong to the model")]
    NotInModel(String),
    #[error("quadrature needs at least 4 points, got {0}")]
    TooFewPoints(usize),
    #[error("matrix has shape {got:?}, model expects {want}x{want}")]
    Shape { got: (usize, usize), want: usize },
    #[error("bad model: {0}")]
    BadModel(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootFamily {
    A,
    C,
    D,
    #[serde(rename = "BD-IV")]
    IV,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootForm {
    /// `e_j - e_k`
    Diff(u32, u32),
    /// `e_j + e_k`
    Sum(u32, u32),
    /// `-e_j - e_k`
    NegSum(u32, u32),
    /// `2 e_j`
    Double(u32),
    /// `-2 e_j`
    NegDouble(u32),
}

impl RootForm {
    pub fn indices(&self) -> Vec<u32> {
        match *self {
            RootForm::Diff(j, k) | RootForm::Sum(j, k) | RootForm::NegSum(j, k) => vec![j, k],
            RootForm::Double(j) | RootForm::NegDouble(j) => vec![j],
        }
    }

    /// Coefficients `(index, c)` of the root as a combination of the `e_j`.
    pub fn coefficients(&self) -> Vec<(u32, i64)> {
        match *self {
            RootForm::Diff(j, k) => vec![(j, 1), (k, -1)],
            RootForm::Sum(j, k) => vec![(j, 1), (k, 1)],
            RootForm::NegSum(j, k) => vec![(j, -1), (k, -1)],
            RootForm::Double(j) => vec![(j, 2)],
            RootForm::NegDouble(j) => vec![(j, -2)],
        }
    }

    pub fn negate(&self) -> RootForm {
        match *self {
            RootForm::Diff(j, k) => RootForm::Diff(k, j),
            RootForm::Sum(j, k) => RootForm::NegSum(j, k),
            RootForm::NegSum(j, k) => RootForm::Sum(j, k),
            RootForm::Double(j) => RootForm::NegDouble(j),
            RootForm::NegDouble(j) => RootForm::Double(j),
        }
    }
}

impl fmt::Display for RootForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootForm::Diff(j, k) => write!(f, "e{j}-e{k}"),
            RootForm::Sum(j, k) => write!(f, "e{j}+e{k}"),
            RootForm::NegSum(j, k) => write!(f, "-e{j}-e{k}"),
            RootForm::Double(j) => write!(f, "2e{j}"),
            RootForm::NegDouble(j) => write!(f, "-2e{j}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Root {
    pub form: RootForm,
    pub family: RootFamily,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sector {
    #[serde(rename = "k")]
    K,
    #[serde(rename = "p+")]
    PPlus,
    #[serde(rename = "p-")]
    PMinus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Compactness {
    Compact,
    Noncompact,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootClassification {
    pub root: Root,
    pub sector: Sector,
    pub compactness: Compactness,
}

/// One JSON row of a root table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootRow {
    pub form: String,
    pub indices: Vec<u32>,
    pub sector: Sector,
    pub compact: bool,
}

impl From<&RootClassification> for RootRow {
    fn from(c: &RootClassification) -> Self {
        RootRow {
            form: c.root.form.to_string(),
            indices: c.root.form.indices(),
            sector: c.sector,
            compact: c.compactness == Compactness::Compact,
        }
    }
}

/// The four hermitian matrix models, truncated to a finite window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HermitianModel {
    /// `u(p,q)` with `J = plus ⊔ minus`.
    I { plus: Vec<u32>, minus: Vec<u32> },
    /// `o*(2n)`.
    II { window: Vec<u32> },
    /// `sp(2n, R)`.
    III { window: Vec<u32> },
    /// `o(2, n)` with distinguished index `j0`.
    IV { window: Vec<u32>, j0: u32 },
}

/// Which real form the adjoint is taken in: the hermitian group itself, or its compact
/// c-dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RealForm {
    Domain,
    Cdual,
}

impl HermitianModel {
    pub fn family(&self) -> RootFamily {
        match self {
            HermitianModel::I { .. } => RootFamily::A,
            HermitianModel::II { .. } => RootFamily::D,
            HermitianModel::III { .. } => RootFamily::C,
            HermitianModel::IV { .. } => RootFamily::IV,
        }
    }

    /// Window indices in matrix order.
    pub fn window(&self) -> Vec<u32> {
        match self {
            HermitianModel::I { plus, minus } => plus.iter().chain(minus).copied().collect(),
            HermitianModel::II { window } | HermitianModel::III { window } | HermitianModel::IV { window, .. } => {
                window.clone()
            }
        }
    }

    pub fn validate(&self) -> Result<(), RootError> {
        let w = self.window();
        let mut sorted = w.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != w.len() {
            return Err(RootError::BadModel("window indices must be distinct".into()));
        }
        if w.is_empty() {
            return Err(RootError::BadModel("window is empty".into()));
        }
        if let HermitianModel::IV { window, j0 } = self {
            if !window.contains(j0) {
                return Err(RootError::BadModel(format!("j0 = {j0} is not in the window")));
            }
        }
        Ok(())
    }

    /// `-i d` evaluated on `e_j`, i.e. the coordinate `h_j` of `-i d` in the Cartan.
    pub fn d_coordinate(&self, j: u32) -> Rational {
        match self {
            HermitianModel::I { plus, .. } => {
                if plus.contains(&j) {
                    Rational::new(1, 2)
                } else {
                    Rational::new(-1, 2)
                }
            }
            HermitianModel::II { .. } | HermitianModel::III { .. } => Rational::new(1, 2),
            HermitianModel::IV { j0, .. } => Rational::from_integer((j == *j0) as i64),
        }
    }

    fn forms(&self) -> Vec<RootForm> {
        let w = self.window();
        let mut out = Vec::new();
        for &j in &w {
            for &k in &w {
                if j != k {
                    out.push(RootForm::Diff(j, k));
                }
            }
        }
        if matches!(self, HermitianModel::I { .. }) {
            return out;
        }
        for (a, &j) in w.iter().enumerate() {
            for &k in &w[a + 1..] {
                out.push(RootForm::Sum(j, k));
                out.push(RootForm::NegSum(j, k));
            }
        }
        if matches!(self, HermitianModel::III { .. }) {
            for &j in &w {
                out.push(RootForm::Double(j));
                out.push(RootForm::NegDouble(j));
            }
        }
        out
    }

    pub fn contains(&self, form: &RootForm) -> bool {
        self.forms().contains(form)
    }

    fn pos(&self, j: u32) -> usize {
        self.window().iter().position(|&x| x == j).expect("index in window")
    }

    pub fn size(&self) -> usize {
        match self {
            HermitianModel::I { .. } => self.window().len(),
            _ => 2 * self.window().len(),
        }
    }

    /// Signs of the form whose adjoint defines the real form (`x* = S x^† S`).
    pub fn form_signs(&self, real: RealForm) -> Vec<i64> {
        let n = self.size();
        if real == RealForm::Cdual {
            return vec![1; n];
        }
        match self {
            HermitianModel::I { plus, minus } => {
                plus.iter().map(|_| 1).chain(minus.iter().map(|_| -1)).collect()
            }
            HermitianModel::II { window } | HermitianModel::III { window } => {
                window.iter().map(|_| 1).chain(window.iter().map(|_| -1)).collect()
            }
            HermitianModel::IV { window, j0 } => {
                let q: Vec<i64> = window.iter().map(|&j| if j == *j0 { 1 } else { -1 }).collect();
                q.iter().chain(q.iter()).copied().collect()
            }
        }
    }

    /// Sign `q_j` of the quadratic form in type IV, `+1` off type IV.
    fn q(&self, j: u32) -> i64 {
        match self {
            HermitianModel::IV { j0, .. } if j != *j0 => -1,
            _ => 1,
        }
    }

    /// Root vector of `form` in the complexified matrix algebra, with integer entries.
    pub fn root_vector(&self, form: &RootForm) -> Result<DMatrix<i64>, RootError> {
        if !self.contains(form) {
            return Err(RootError::NotInModel(form.to_string()));
        }
        let size = self.size();
        let n = self.window().len();
        let mut x = DMatrix::<i64>::zeros(size, size);
        if let HermitianModel::I { .. } = self {
            if let RootForm::Diff(j, k) = *form {
                x[(self.pos(j), self.pos(k))] = 1;
            }
            return Ok(x);
        }
        // symmetric pieces for III, skew (twisted by q) for II and IV
        let mirror = |j: u32, k: u32| -> i64 {
            match self {
                HermitianModel::III { .. } => 1,
                _ => -self.q(j) * self.q(k),
            }
        };
        match *form {
            RootForm::Diff(j, k) => {
                let (a, b) = (self.pos(j), self.pos(k));
                x[(a, b)] = 1;
                x[(n + b, n + a)] = match self {
                    HermitianModel::IV { .. } => -self.q(j) * self.q(k),
                    _ => -1,
                };
            }
            RootForm::Sum(j, k) => {
                let (a, b) = (self.pos(j), self.pos(k));
                x[(a, n + b)] = 1;
                x[(b, n + a)] = mirror(j, k);
            }
            RootForm::NegSum(j, k) => {
                let (a, b) = (self.pos(j), self.pos(k));
                x[(n + a, b)] = 1;
                x[(n + b, a)] = mirror(j, k);
            }
            RootForm::Double(j) => {
                let a = self.pos(j);
                x[(a, n + a)] = 1;
            }
            RootForm::NegDouble(j) => {
                let a = self.pos(j);
                x[(n + a, a)] = 1;
            }
        }
        Ok(x)
    }

    /// Cartan element `diag(h)` (type I) or `diag(h, -h)`, as integers.
    pub fn cartan(&self, h: &[i64]) -> DMatrix<i64> {
        let diag: Vec<i64> = match self {
            HermitianModel::I { .. } => h.to_vec(),
            _ => h.iter().copied().chain(h.iter().map(|v| -v)).collect(),
        };
        DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag))
    }

    /// `h_j` read off the diagonal of a Cartan matrix.
    pub fn cartan_coordinate(&self, m: &DMatrix<i64>, j: u32) -> i64 {
        let a = self.pos(j);
        m[(a, a)]
    }

    /// Diagonal of `d` in the matrix model.
    pub fn d_diagonal(&self) -> Vec<C64> {
        let w = self.window();
        let first: Vec<C64> = w.iter().map(|&j| C64::new(0.0, crate::rational::to_f64(&self.d_coordinate(j)))).collect();
        match self {
            HermitianModel::I { .. } => first,
            _ => first.iter().copied().chain(first.iter().map(|z| -z)).collect(),
        }
    }

    /// `x^* = S x^T S` for a real matrix.
    pub fn star(&self, x: &DMatrix<i64>, real: RealForm) -> DMatrix<i64> {
        let s = self.form_signs(real);
        let t = x.transpose();
        DMatrix::from_fn(t.nrows(), t.ncols(), |a, b| s[a] * t[(a, b)] * s[b])
    }
}

fn sector_of(model: &HermitianModel, form: &RootForm) -> Sector {
    let v: Rational = form
        .coefficients()
        .iter()
        .map(|&(j, c)| Rational::from_integer(c) * model.d_coordinate(j))
        .sum();
    if v == Rational::from_integer(0) {
        Sector::K
    } else if v > Rational::from_integer(0) {
        Sector::PPlus
    } else {
        Sector::PMinus
    }
}

/// The full root list of the model with sector and compactness tags.
pub fn roots_of(model: &HermitianModel, real: RealForm) -> Result<Vec<RootClassification>, RootError> {
    model.validate()?;
    let family = model.family();
    Ok(model
        .forms()
        .into_iter()
        .map(|form| {
            let sector = sector_of(model, &form);
            let compactness = match (real, sector) {
                (RealForm::Cdual, _) | (RealForm::Domain, Sector::K) => Compactness::Compact,
                _ => Compactness::Noncompact,
            };
            RootClassification { root: Root { form, family }, sector, compactness }
        })
        .collect())
}

/// Coroot as a dense integer vector on `window`.
pub fn coroot(form: &RootForm, window: &[u32]) -> Vec<i64> {
    let coeffs: Vec<(u32, i64)> = match *form {
        RootForm::Double(j) => vec![(j, 1)],
        RootForm::NegDouble(j) => vec![(j, -1)],
        _ => form.coefficients(),
    };
    window
        .iter()
        .map(|&i| coeffs.iter().filter(|(j, _)| *j == i).map(|(_, c)| c).sum())
        .collect()
}

/// `alpha(h)` for `h` given densely on `window`.
pub fn pairing(form: &RootForm, window: &[u32], h: &[i64]) -> i64 {
    form.coefficients()
        .iter()
        .map(|&(j, c)| c * window.iter().position(|&i| i == j).map_or(0, |p| h[p]))
        .sum()
}

/// Sign of `alpha([x_alpha, x_alpha^*])`: `+1` compact, `-1` noncompact.
pub fn compactness_sign(form: &RootForm, model: &HermitianModel, real: RealForm) -> Result<i8, RootError> {
    let x = model.root_vector(form)?;
    let xs = model.star(&x, real);
    let h = &x * &xs - &xs * &x;
    let v: i64 = form
        .coefficients()
        .iter()
        .map(|&(j, c)| c * model.cartan_coordinate(&h, j))
        .sum();
    match v.signum() {
        0 => Err(RootError::Degenerate(form.to_string())),
        s => Ok(s as i8),
    }
}

/// `(1/N) Σ_k e^{θ_k ad d} x` with `θ_k = 2πk/N`.
pub fn torus_average(model: &HermitianModel, x: &DMatrix<C64>, points: usize) -> Result<DMatrix<C64>, RootError> {
    if points < 4 {
        return Err(RootError::TooFewPoints(points));
    }
    let n = model.size();
    if x.shape() != (n, n) {
        return Err(RootError::Shape { got: x.shape(), want: n });
    }
    let d = model.d_diagonal();
    let mut acc = DMatrix::<C64>::zeros(n, n);
    for k in 0..points {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / points as f64;
        let left = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, d.iter().map(|z| (z * theta).exp())));
        let right = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, d.iter().map(|z| (-z * theta).exp())));
        acc += left * x * right;
    }
    Ok(acc / C64::new(points as f64, 0.0))
}

/// Entries of `x` on which `ad d` vanishes: the block-diagonal part.
pub fn fixed_part(model: &HermitianModel, x: &DMatrix<C64>) -> DMatrix<C64> {
    let d = model.d_diagonal();
    DMatrix::from_fn(x.nrows(), x.ncols(), |a, b| {
        if (d[a] - d[b]).norm() < 1e-12 {
            x[(a, b)]
        } else {
            C64::new(0.0, 0.0)
        }
    })
}
