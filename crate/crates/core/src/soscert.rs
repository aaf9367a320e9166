//! Sum-of-squares certificates for the facet functional of the N-gon.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interp::theta_rank_interpolant;
use crate::momentmap::{basis_product, rat_to_f64};
use crate::poly::ChebPoly;
use crate::trigspace::{check_modulus, real_basis, FrequencySet, RealBasisFn, RealCoeffs, TrigPoly};

/// `ℓ = cos(π/N) − c_1`: zero on vertices 1 and N, positive elsewhere.
pub fn facet_functional(n: usize) -> Result<TrigPoly> {
    check_modulus(n)?;
    Ok(&TrigPoly::constant(n, (PI / n as f64).cos()) - &TrigPoly::cos(n, 1))
}

/// The facet functional rotated by `r` steps.
pub fn rotated_facet(n: usize, r: i64) -> Result<TrigPoly> {
    Ok(facet_functional(n)?.rotate(r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    PowersOfTwo,
    Hierarchy,
    Custom,
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Scheme::PowersOfTwo => "powers-of-two",
            Scheme::Hierarchy => "hierarchy",
            Scheme::Custom => "custom",
        })
    }
}

/// `target = Σ |h_i|²` on the vertex set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SosCertificate {
    pub n: usize,
    pub target: TrigPoly,
    pub squares: Vec<TrigPoly>,
    pub scheme: Scheme,
}

const SUPPORT_TOL: f64 = 1e-12;

impl SosCertificate {
    pub fn new(target: TrigPoly, squares: Vec<TrigPoly>, scheme: Scheme) -> Result<Self> {
        let n = target.modulus();
        if let Some(bad) = squares.iter().find(|h| h.modulus() != n) {
            return Err(Error::ModulusMismatch(n, bad.modulus()));
        }
        Ok(SosCertificate { n, target, squares, scheme })
    }

    pub fn sum_of_squares(&self) -> TrigPoly {
        self.squares.iter().fold(TrigPoly::zero(self.n), |acc, h| &acc + &h.abs_sq())
    }

    /// Real frequencies `min(k, N−k)` used by the squares.
    pub fn support(&self) -> FrequencySet {
        let mut ks = BTreeSet::new();
        for h in &self.squares {
            ks.extend(h.real_support(SUPPORT_TOL));
        }
        FrequencySet::new(self.n, ks.into_iter().map(|k| k as i64))
    }

    /// Residues `k` with a nonzero `e_k` coefficient in some square.
    pub fn hermitian_support(&self) -> FrequencySet {
        let mut out = FrequencySet::empty(self.n);
        for h in &self.squares {
            for (k, c) in h.terms() {
                if c.norm() > SUPPORT_TOL {
                    out.insert(k as i64);
                }
            }
        }
        out
    }

    /// Certificate for the rotated target, obtained by rotating every square.
    pub fn rotate(&self, r: i64) -> SosCertificate {
        SosCertificate {
            n: self.n,
            target: self.target.rotate(r),
            squares: self.squares.iter().map(|h| h.rotate(r)).collect(),
            scheme: self.scheme,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cert: SosCertificate = serde_json::from_str(s)?;
        if cert.target.modulus() != cert.n {
            return Err(Error::ModulusMismatch(cert.n, cert.target.modulus()));
        }
        if let Some(h) = cert.squares.iter().find(|h| h.modulus() != cert.n) {
            return Err(Error::ModulusMismatch(cert.n, h.modulus()));
        }
        Ok(cert)
    }
}

/// Coefficient of the k-th square, `sin(π/N) / (2^k sin(2^{k+1}π/N))`.
pub fn powers_of_two_weight(n: u32, k: u32) -> f64 {
    let big_n = 2f64.powi(n as i32);
    (PI / big_n).sin() / (2f64.powi(k as i32) * (2f64.powi(k as i32 + 1) * PI / big_n).sin())
}

/// The `n − 1` squares `√w_k (cos(2^kπ/N) c_0 − c_{2^k})` for `N = 2^n`.
pub fn powers_of_two_certificate(n: u32) -> Result<SosCertificate> {
    if !(2..=30).contains(&n) {
        return Err(Error::InvalidArgument(format!("n must lie in 2..=30, got {n}")));
    }
    let big_n = 1usize << n;
    let squares = (0..n - 1)
        .map(|k| {
            let f = 1i64 << k;
            let c = (f as f64 * PI / big_n as f64).cos();
            let h = &TrigPoly::constant(big_n, c) - &TrigPoly::cos(big_n, f);
            &h * powers_of_two_weight(n, k).sqrt()
        })
        .collect();
    SosCertificate::new(facet_functional(big_n)?, squares, Scheme::PowersOfTwo)
}

/// `cos(π/N) − cos θ − Σ w_k (cos(2^kπ/N) − cos(2^kθ))² + sin(π/N) cos(2^{n−1}θ)/2^{n−1}`
/// at an arbitrary angle; vanishes identically.
pub fn powers_of_two_identity_residual(n: u32, theta: f64) -> f64 {
    let big_n = 2f64.powi(n as i32);
    let a = PI / big_n;
    let mut rhs = 0.0;
    for k in 0..n - 1 {
        let f = 2f64.powi(k as i32);
        rhs += powers_of_two_weight(n, k) * ((f * a).cos() - (f * theta).cos()).powi(2);
    }
    let top = 2f64.powi(n as i32 - 1);
    rhs -= a.sin() * (top * theta).cos() / top;
    (a.cos() - theta.cos() - rhs).abs()
}

/// `(√3/4)(−1 + (2/√3)c_1)² + (√3/36)(−2s_1 + s_3)²`.
pub fn hexagon_certificate() -> SosCertificate {
    let n = 6;
    let r3 = 3f64.sqrt();
    let h1 = &(&TrigPoly::cos(n, 1) * (2.0 / r3)) - &TrigPoly::constant(n, 1.0);
    let h2 = &TrigPoly::sin(n, 3) - &(&TrigPoly::sin(n, 1) * 2.0);
    let squares = vec![&h1 * (r3 / 4.0).sqrt(), &h2 * (r3 / 36.0).sqrt()];
    SosCertificate::new(facet_functional(n).expect("N = 6"), squares, Scheme::Custom).expect("same modulus")
}

/// `Σ b_j T_j(c_1) = Σ b_j c_j` on the vertex set.
fn cheb_in_c1(n: usize, p: &ChebPoly) -> TrigPoly {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b != 0.0)
        .fold(TrigPoly::zero(n), |acc, (j, &b)| &acc + &(&TrigPoly::cos(n, j as i64) * b))
}

/// Certificate from the nonnegative interpolant `p`: write `p = h1² + h2²`
/// and substitute `x = c_1`.
pub fn hierarchy_certificate(n: usize) -> Result<SosCertificate> {
    let p = theta_rank_interpolant(n)?;
    let (h1, h2) = p.two_squares()?;
    let squares = [h1, h2]
        .iter()
        .filter(|h| h.coeffs().iter().any(|&c| c != 0.0))
        .map(|h| cheb_in_c1(n, h))
        .collect();
    SosCertificate::new(facet_functional(n)?, squares, Scheme::Hierarchy)
}

/// Outcome of checking a certificate.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub max_vertex_residual: f64,
    pub coefficient_residual: f64,
    pub support: FrequencySet,
    pub tol: f64,
    pub passed: bool,
}

/// Compares `Σ|h_i|²` with the target at every vertex and coefficientwise.
pub fn verify_certificate(cert: &SosCertificate, tol: f64) -> VerificationReport {
    let sos = cert.sum_of_squares();
    let max_vertex_residual = sos.max_vertex_diff(&cert.target);
    let coefficient_residual = sos.max_coeff_diff(&cert.target);
    VerificationReport {
        max_vertex_residual,
        coefficient_residual,
        support: cert.support(),
        tol,
        passed: max_vertex_residual <= tol && coefficient_residual <= tol,
    }
}

/// Gram representation `f = T_V(Q) = Σ_{a,b} Q_ab f_a f_b` over a real basis.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    pub n: usize,
    pub basis: Vec<RealBasisFn>,
    pub q: DMatrix<f64>,
}

impl GramMatrix {
    pub fn t_v(&self) -> TrigPoly {
        let funcs: Vec<TrigPoly> = self.basis.iter().map(|&f| TrigPoly::basis_fn(self.n, f)).collect();
        let mut out = TrigPoly::zero(self.n);
        for a in 0..funcs.len() {
            for b in 0..funcs.len() {
                let w = self.q[(a, b)];
                if w != 0.0 {
                    out = &out + &(&(&funcs[a] * &funcs[b]) * w);
                }
            }
        }
        out
    }

    /// `T_V(Q)` through the exact product table, in the real basis.
    pub fn t_v_real(&self) -> RealCoeffs {
        let mut out = RealCoeffs::zero(self.n);
        for (a, &f) in self.basis.iter().enumerate() {
            for (b, &g) in self.basis.iter().enumerate() {
                let w = self.q[(a, b)];
                if w == 0.0 {
                    continue;
                }
                for (&h, &c) in &basis_product(f, g, self.n).terms {
                    out.set(h, out.get(h) + w * rat_to_f64(c));
                }
            }
        }
        out
    }

    pub fn min_eigenvalue(&self) -> f64 {
        if self.q.nrows() == 0 {
            return 0.0;
        }
        SymmetricEigen::new(self.q.clone()).eigenvalues.min()
    }

    pub fn is_psd(&self) -> bool {
        self.min_eigenvalue() >= -1e-12 * self.q.norm().max(1.0)
    }

    /// Squares `√λ_j Σ_a u_j[a] f_a` from the eigendecomposition of `Q`.
    pub fn extract_squares(&self) -> Vec<TrigPoly> {
        if self.q.nrows() == 0 {
            return Vec::new();
        }
        let eig = SymmetricEigen::new(self.q.clone());
        let cutoff = 1e-14 * self.q.norm().max(1.0);
        let mut out = Vec::new();
        for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda <= cutoff {
                continue;
            }
            let col = eig.eigenvectors.column(j);
            let h = self.basis.iter().enumerate().fold(TrigPoly::zero(self.n), |acc, (a, &f)| {
                &acc + &(&TrigPoly::basis_fn(self.n, f) * (col[a] * lambda.sqrt()))
            });
            out.push(h);
        }
        out
    }
}

/// Real and imaginary parts of `h` as real functions: `|h|² = re² + im²`.
fn real_parts(h: &TrigPoly) -> (TrigPoly, TrigPoly) {
    let hc = h.conj();
    let re = &(h + &hc) * 0.5;
    let im = (h - &hc).scale(Complex64::new(0.0, -0.5));
    (re, im)
}

/// `Q = Σ_i v_i v_iᵀ` with `v_i` the coordinates of the real and imaginary
/// parts of each square in the real basis of `V`.
pub fn gram_from_certificate(cert: &SosCertificate, v: &FrequencySet) -> Result<GramMatrix> {
    let n = cert.n;
    if v.modulus() != n {
        return Err(Error::ModulusMismatch(n, v.modulus()));
    }
    let basis = real_basis(&v.iter().map(|k| k.min(n - k)).collect::<Vec<_>>(), n)?;
    let d = basis.len();
    let mut q = DMatrix::<f64>::zeros(d, d);
    for (index, h) in cert.squares.iter().enumerate() {
        let (re, im) = real_parts(h);
        for part in [re, im] {
            let rc = part.to_real_basis(1e-9)?;
            let coords: Vec<f64> = basis.iter().map(|&f| rc.get(f)).collect();
            // Anything left over lies outside span(V).
            let mut rest = rc.clone();
            for &f in &basis {
                rest.set(f, 0.0);
            }
            let scale = coords.iter().fold(1.0f64, |m, c| m.max(c.abs()));
            let leftover = rest.cos.iter().chain(&rest.sin).fold(0.0f64, |m, c| m.max(c.abs()));
            if leftover > SUPPORT_TOL * scale {
                return Err(Error::OutsideSubspace { index });
            }
            for a in 0..d {
                for b in 0..d {
                    q[(a, b)] += coords[a] * coords[b];
                }
            }
        }
    }
    Ok(GramMatrix { n, basis, q })
}

/// `|LHS − RHS|` of the doubling identity
/// `(cos a − cos θ)/sin a = (cos a − cos θ)²/sin 2a + ½(cos 2a − cos 2θ)/sin 2a`, `a = π/N`.
pub fn doubling_identity_residual(n: usize, theta: f64) -> f64 {
    let a = PI / n as f64;
    let lhs = (a.cos() - theta.cos()) / a.sin();
    let rhs = (a.cos() - theta.cos()).powi(2) / (2.0 * a).sin()
        + 0.5 * ((2.0 * a).cos() - (2.0 * theta).cos()) / (2.0 * a).sin();
    (lhs - rhs).abs()
}
