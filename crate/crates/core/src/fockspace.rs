//! Truncated symmetric Fock space over `C^m` with creation and annihilation operators, Weyl
//! operators, the unitary action `S(U)` and the charge-`c` Fock representation.
//!
//! Basis vectors are `e_α = v^α / sqrt(α!)` for multi-indices `|α| <= N`, orthonormal for the
//! permanent inner product. Then `a*(e_j) e_α = sqrt(α_j + 1) e_{α+e_j}` (zero above degree
//! `N`) and `a(e_j) e_α = sqrt(α_j) e_{α-e_j}`.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::rational::Rational;
use crate::scalar::{inner, max_abs, C64};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FockError {
    #[error("matrix is not unitary (residual {0:.3e})")]
    NonUnitary(f64),
    #[error("vector has {got} modes, the Fock space has {want}")]
    Modes { got: usize, want: usize },
    #[error("the Fock space needs at least one mode")]
    NoModes,
    #[error("charge must be nonnegative, got {0}")]
    NegativeCharge(f64),
    #[error("degree {degree} exceeds the cutoff {cutoff}")]
    Degree { degree: usize, cutoff: usize },
}

#[derive(Debug, Clone)]
pub struct FockBasis {
    m: usize,
    cutoff: usize,
    multi: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

fn compositions(n: u32, m: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() + 1 == m {
        prefix.push(n);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for k in (0..=n).rev() {
        prefix.push(k);
        compositions(n - k, m, prefix, out);
        prefix.pop();
    }
}

impl FockBasis {
    pub fn new(m: usize, cutoff: usize) -> Result<Self, FockError> {
        if m == 0 {
            return Err(FockError::NoModes);
        }
        let mut multi = Vec::new();
        for n in 0..=cutoff as u32 {
            compositions(n, m, &mut Vec::with_capacity(m), &mut multi);
        }
        let index = multi.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        Ok(FockBasis { m, cutoff, multi, index })
    }

    pub fn modes(&self) -> usize {
        self.m
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.multi.len()
    }

    pub fn multi_index(&self, i: usize) -> &[u32] {
        &self.multi[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.multi[i].iter().sum::<u32>() as usize
    }

    pub fn position(&self, alpha: &[u32]) -> Option<usize> {
        self.index.get(alpha).copied()
    }

    /// Positions of the basis vectors of degree at most `n`.
    pub fn up_to_degree(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(move |&i| self.degree(i) <= n)
    }

    /// Positions of the basis vectors of degree exactly `n`.
    pub fn of_degree(&self, n: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == n).collect()
    }

    pub fn vacuum(&self) -> DVector<C64> {
        let mut v = DVector::zeros(self.dim());
        v[0] = C64::new(1.0, 0.0);
        v
    }

    fn check_modes(&self, v: &[C64]) -> Result<(), FockError> {
        if v.len() != self.m {
            return Err(FockError::Modes { got: v.len(), want: self.m });
        }
        Ok(())
    }

    pub fn annihilate_mode(&self, j: usize) -> DMatrix<C64> {
        let d = self.dim();
        let mut a = DMatrix::zeros(d, d);
        for (col, alpha) in self.multi.iter().enumerate() {
            if alpha[j] > 0 {
                let mut beta = alpha.clone();
                beta[j] -= 1;
                a[(self.index[&beta], col)] = C64::new((alpha[j] as f64).sqrt(), 0.0);
            }
        }
        a
    }

    pub fn create_mode(&self, j: usize) -> DMatrix<C64> {
        let d = self.dim();
        let mut a = DMatrix::zeros(d, d);
        for (col, alpha) in self.multi.iter().enumerate() {
            let mut beta = alpha.clone();
            beta[j] += 1;
            if let Some(&row) = self.index.get(&beta) {
                a[(row, col)] = C64::new(((alpha[j] + 1) as f64).sqrt(), 0.0);
            }
        }
        a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DegreeShift {
    #[serde(rename = "+1")]
    Raise,
    #[serde(rename = "-1")]
    Lower,
    #[serde(rename = "0")]
    Preserve,
    #[serde(rename = "mixed")]
    Mixed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    pub matrix: DMatrix<C64>,
    pub shift: DegreeShift,
}

/// `a*(v) = Σ v_j a*(e_j)`.
pub fn create(basis: &FockBasis, v: &[C64]) -> Result<FockOperator, FockError> {
    basis.check_modes(v)?;
    let d = basis.dim();
    let mut m = DMatrix::zeros(d, d);
    for (j, c) in v.iter().enumerate() {
        m += basis.create_mode(j) * *c;
    }
    Ok(FockOperator { matrix: m, shift: DegreeShift::Raise })
}

/// `a(v) = Σ conj(v_j) a(e_j)`, conjugate linear in `v`.
pub fn annihilate(basis: &FockBasis, v: &[C64]) -> Result<FockOperator, FockError> {
    basis.check_modes(v)?;
    let d = basis.dim();
    let mut m = DMatrix::zeros(d, d);
    for (j, c) in v.iter().enumerate() {
        m += basis.annihilate_mode(j) * c.conj();
    }
    Ok(FockOperator { matrix: m, shift: DegreeShift::Lower })
}

fn vinner(v: &[C64], w: &[C64]) -> C64 {
    v.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}

fn restrict_columns(basis: &FockBasis, m: &DMatrix<C64>, max_degree: usize) -> f64 {
    basis
        .up_to_degree(max_degree)
        .map(|c| m.column(c).iter().map(|z| z.norm()).fold(0.0, f64::max))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CcrResiduals {
    /// `[a(v), a(w)]`
    pub annihilators: f64,
    /// `[a*(v), a*(w)]`
    pub creators: f64,
    /// `[a(v), a*(w)] - <w, v>`
    pub canonical: f64,
}

/// CCR residuals on the states of degree at most `N - 1`.
pub fn ccr_check(basis: &FockBasis, v: &[C64], w: &[C64]) -> Result<CcrResiduals, FockError> {
    let av = annihilate(basis, v)?.matrix;
    let aw = annihilate(basis, w)?.matrix;
    let cv = create(basis, v)?.matrix;
    let cw = create(basis, w)?.matrix;
    let top = basis.cutoff().saturating_sub(1);
    let id = DMatrix::<C64>::identity(basis.dim(), basis.dim());
    Ok(CcrResiduals {
        annihilators: restrict_columns(basis, &(&av * &aw - &aw * &av), top),
        // creators only commute below degree N - 1, where neither product is truncated
        creators: restrict_columns(basis, &(&cv * &cw - &cw * &cv), basis.cutoff().saturating_sub(2)),
        canonical: restrict_columns(basis, &(&av * &cw - &cw * &av - id * vinner(w, v)), top),
    })
}

/// `<a*(v) ξ, η> - <ξ, a(v) η>`.
pub fn adjointness_residual(basis: &FockBasis, v: &[C64], xi: &DVector<C64>, eta: &DVector<C64>) -> Result<f64, FockError> {
    let c = create(basis, v)?.matrix;
    let a = annihilate(basis, v)?.matrix;
    let lhs = (&c * xi).dotc(eta).conj();
    let rhs = xi.dotc(&(&a * eta)).conj();
    Ok((lhs - rhs).norm())
}

fn exp_i_hermitian(g: &DMatrix<C64>, scale: f64) -> DMatrix<C64> {
    let h = (g + g.adjoint()) * C64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| C64::new(0.0, scale * l).exp()));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

/// `W(v) = exp(i/sqrt 2 (a(v) + a*(v)))` on the truncated space.
pub fn weyl(basis: &FockBasis, v: &[C64]) -> Result<FockOperator, FockError> {
    let g = annihilate(basis, v)?.matrix + create(basis, v)?.matrix;
    Ok(FockOperator { matrix: exp_i_hermitian(&g, std::f64::consts::FRAC_1_SQRT_2), shift: DegreeShift::Mixed })
}

/// `max |(W(v)W(w) - e^{(i/2) Im<v,w>} W(v+w)) e_α|` over `|α| <= max_degree`.
pub fn weyl_relation_error(basis: &FockBasis, v: &[C64], w: &[C64], max_degree: usize) -> Result<f64, FockError> {
    let sum: Vec<C64> = v.iter().zip(w).map(|(a, b)| a + b).collect();
    let phase = C64::new(0.0, 0.5 * vinner(v, w).im).exp();
    let lhs = weyl(basis, v)?.matrix * weyl(basis, w)?.matrix;
    let rhs = weyl(basis, &sum)?.matrix * phase;
    Ok(column_norm(basis, &(lhs - rhs), max_degree))
}

fn column_norm(basis: &FockBasis, m: &DMatrix<C64>, max_degree: usize) -> f64 {
    basis.up_to_degree(max_degree).map(|c| m.column(c).norm()).fold(0.0, f64::max)
}

/// `max | |W(v) e_α| - 1 |` over `|α| <= max_degree`.
pub fn weyl_unitarity_defect(basis: &FockBasis, v: &[C64], max_degree: usize) -> Result<f64, FockError> {
    let w = weyl(basis, v)?.matrix;
    Ok(basis.up_to_degree(max_degree).map(|c| (w.column(c).norm() - 1.0).abs()).fold(0.0, f64::max))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeylConvergence {
    pub small_cutoff: usize,
    pub large_cutoff: usize,
    pub error_small: f64,
    pub error_large: f64,
    pub ratio: f64,
}

/// Weyl-relation error at two cutoffs, for the doubling criterion.
pub fn weyl_convergence(m: usize, v: &[C64], w: &[C64], small: usize, large: usize, max_degree: usize) -> Result<WeylConvergence, FockError> {
    let e_small = weyl_relation_error(&FockBasis::new(m, small)?, v, w, max_degree)?;
    let e_large = weyl_relation_error(&FockBasis::new(m, large)?, v, w, max_degree)?;
    Ok(WeylConvergence {
        small_cutoff: small,
        large_cutoff: large,
        error_small: e_small,
        error_large: e_large,
        ratio: e_small / e_large.max(f64::MIN_POSITIVE),
    })
}

fn check_unitary(u: &DMatrix<C64>) -> Result<(), FockError> {
    let n = u.nrows();
    let r = max_abs(&(u.adjoint() * u - DMatrix::<C64>::identity(n, n)));
    if u.ncols() != n || r > 1e-10 {
        return Err(FockError::NonUnitary(r));
    }
    Ok(())
}

type Poly = HashMap<Vec<u32>, C64>;

fn poly_mul(p: &Poly, q: &Poly) -> Poly {
    let mut out: Poly = HashMap::new();
    for (a, x) in p {
        for (b, y) in q {
            let k: Vec<u32> = a.iter().zip(b).map(|(s, t)| s + t).collect();
            *out.entry(k).or_insert(C64::new(0.0, 0.0)) += x * y;
        }
    }
    out
}

fn factorial_sqrt(alpha: &[u32]) -> f64 {
    alpha.iter().map(|&k| (1..=k).map(|i| (i as f64).sqrt()).product::<f64>()).product()
}

/// `S^n(U)` on the degree-`n` block, in the basis order of [`FockBasis::of_degree`].
pub fn k_action(basis: &FockBasis, u: &DMatrix<C64>, n: usize) -> Result<DMatrix<C64>, FockError> {
    if u.nrows() != basis.modes() {
        return Err(FockError::Modes { got: u.nrows(), want: basis.modes() });
    }
    check_unitary(u)?;
    if n > basis.cutoff() {
        return Err(FockError::Degree { degree: n, cutoff: basis.cutoff() });
    }
    let m = basis.modes();
    let block = basis.of_degree(n);
    let local: HashMap<&[u32], usize> = block.iter().enumerate().map(|(k, &i)| (basis.multi_index(i), k)).collect();
    // images U e_j = Σ_i U_ij e_i as linear polynomials
    let lin: Vec<Poly> = (0..m)
        .map(|j| {
            (0..m)
                .map(|i| {
                    let mut mono = vec![0u32; m];
                    mono[i] = 1;
                    (mono, u[(i, j)])
                })
                .collect()
        })
        .collect();
    let mut out = DMatrix::zeros(block.len(), block.len());
    for (col, &i) in block.iter().enumerate() {
        let alpha = basis.multi_index(i);
        let mut p: Poly = [(vec![0u32; m], C64::new(1.0, 0.0))].into();
        for (j, &k) in alpha.iter().enumerate() {
            for _ in 0..k {
                p = poly_mul(&p, &lin[j]);
            }
        }
        let norm_alpha = factorial_sqrt(alpha);
        for (beta, c) in p {
            let row = local[beta.as_slice()];
            out[(row, col)] = c * (factorial_sqrt(&beta) / norm_alpha);
        }
    }
    Ok(out)
}

/// `S(U)` on the whole truncated space, block diagonal in the degree.
pub fn s_of(basis: &FockBasis, u: &DMatrix<C64>) -> Result<DMatrix<C64>, FockError> {
    let d = basis.dim();
    let mut out = DMatrix::zeros(d, d);
    for n in 0..=basis.cutoff() {
        let block = basis.of_degree(n);
        let s = k_action(basis, u, n)?;
        for (a, &i) in block.iter().enumerate() {
            for (b, &j) in block.iter().enumerate() {
                out[(i, j)] = s[(a, b)];
            }
        }
    }
    Ok(out)
}

/// Second quantization `dΓ(X) = Σ X_ij a*(e_i) a(e_j)`.
pub fn d_gamma(basis: &FockBasis, x: &DMatrix<C64>) -> DMatrix<C64> {
    let d = basis.dim();
    let mut out = DMatrix::zeros(d, d);
    for i in 0..basis.modes() {
        let ci = basis.create_mode(i);
        for j in 0..basis.modes() {
            if x[(i, j)] != C64::new(0.0, 0.0) {
                out += &ci * basis.annihilate_mode(j) * x[(i, j)];
            }
        }
    }
    out
}

pub fn number_operator(basis: &FockBasis) -> DMatrix<C64> {
    d_gamma(basis, &DMatrix::identity(basis.modes(), basis.modes()))
}

/// Spectrum of `-i dπ_c(d)`, i.e. of `c + N`, sorted ascending.
pub fn energy_spectrum(basis: &FockBasis, c: f64) -> Vec<f64> {
    let m = basis.modes();
    let d = DMatrix::<C64>::identity(m, m) * C64::new(0.0, 1.0);
    let h = (d_gamma(basis, &d) + DMatrix::<C64>::identity(basis.dim(), basis.dim()) * C64::new(0.0, c)) * C64::new(0.0, -1.0);
    let mut ev: Vec<f64> = ((&h + h.adjoint()) * C64::new(0.5, 0.0)).symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `π_c(t, v) = e^{ict} W(sqrt(2c) v)`, the Fock representation rescaled to charge `c`.
pub fn heisenberg_weyl(basis: &FockBasis, c: f64, t: f64, v: &[C64]) -> Result<DMatrix<C64>, FockError> {
    if c < 0.0 {
        return Err(FockError::NegativeCharge(c));
    }
    let h = (2.0 * c).sqrt();
    let hv: Vec<C64> = v.iter().map(|z| z * h).collect();
    Ok(weyl(basis, &hv)?.matrix * C64::new(0.0, c * t).exp())
}

/// Defect of `π_c(g) π_c(g') = π_c(g g')` with `(t,v)(t',v') = (t + t' + Im<v,v'>, v + v')`.
pub fn heisenberg_relation_error(
    basis: &FockBasis,
    c: f64,
    g: (f64, &[C64]),
    h: (f64, &[C64]),
    max_degree: usize,
) -> Result<f64, FockError> {
    let sum: Vec<C64> = g.1.iter().zip(h.1).map(|(a, b)| a + b).collect();
    let t = g.0 + h.0 + vinner(g.1, h.1).im;
    let lhs = heisenberg_weyl(basis, c, g.0, g.1)? * heisenberg_weyl(basis, c, h.0, h.1)?;
    let rhs = heisenberg_weyl(basis, c, t, &sum)?;
    Ok(column_norm(basis, &(lhs - rhs), max_degree))
}

/// Dimension of the joint kernel of `a(e_j)`, `j` in `modes`, on degrees `<= N`, computed
/// exactly in the monomial basis where `a(e_j) v^α = α_j v^{α - e_j}`.
pub fn joint_kernel_dim(basis: &FockBasis, modes: &[usize]) -> usize {
    let d = basis.dim();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for &j in modes {
        let mut block = vec![vec![Rational::from_integer(0); d]; d];
        for (col, alpha) in basis.multi.iter().enumerate() {
            if alpha[j] > 0 {
                let mut beta = alpha.clone();
                beta[j] -= 1;
                block[basis.index[&beta]][col] = Rational::from_integer(alpha[j] as i64);
            }
        }
        rows.extend(block);
    }
    d - rank(rows, d)
}

#[allow(clippy::needless_range_loop)]
fn rank(mut rows: Vec<Vec<Rational>>, cols: usize) -> usize {
    let zero = Rational::from_integer(0);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != zero) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c];
        for i in 0..rows.len() {
            if i != r && rows[i][c] != zero {
                let f = rows[i][c] / pivot;
                for k in c..cols {
                    let delta = f * rows[r][k];
                    rows[i][k] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

/// Whether the vectors killed by every `a(e_j)` are exactly the multiples of the vacuum.
pub fn vacuum_characterization(m: usize, cutoff: usize) -> Result<bool, FockError> {
    let basis = FockBasis::new(m, cutoff)?;
    let modes: Vec<usize> = (0..m).collect();
    Ok(joint_kernel_dim(&basis, &modes) == 1)
}

/// `<ξ, η>` on the truncated space.
pub fn state_inner(xi: &DVector<C64>, eta: &DVector<C64>) -> C64 {
    inner(&DMatrix::from_column_slice(xi.len(), 1, xi.as_slice()), &DMatrix::from_column_slice(eta.len(), 1, eta.as_slice()))
}
