//! Psd lifts of the regular N-gon assembled from moment matrices, and
//! their verification without an SDP solver.
//!
//! A lift is checked in three legs: every vertex lifts to a feasible point,
//! a blockwise Gram certificate reproduces the facet functional, and the
//! same holds for all rotated facets.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::momentmap::{moment_matrix, Assignment, MomentMatrixSymbolic, Var};
use crate::soscert::{
    facet_functional, gram_from_certificate, hierarchy_certificate, powers_of_two_certificate, GramMatrix, Scheme,
    SosCertificate,
};
use crate::trigspace::{check_modulus, residue, FrequencySet, TrigPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftScheme {
    Chained,
    Single,
    Hierarchy,
}

impl std::fmt::Display for LiftScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LiftScheme::Chained => "chained",
            LiftScheme::Single => "single",
            LiftScheme::Hierarchy => "hierarchy",
        })
    }
}

impl std::str::FromStr for LiftScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chained" => Ok(LiftScheme::Chained),
            "single" => Ok(LiftScheme::Single),
            "hierarchy" => Ok(LiftScheme::Hierarchy),
            _ => Err(Error::Parse(format!("unknown lift scheme {s:?}"))),
        }
    }
}

/// One LMI block: the moment matrix of `⊕_{k∈K} T_k(N)` with `u_0 = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftBlock {
    pub k_set: FrequencySet,
    pub matrix: MomentMatrixSymbolic,
}

impl LiftBlock {
    pub fn new(k_set: FrequencySet) -> Result<Self> {
        let n = k_set.modulus();
        let matrix = moment_matrix(&k_set, n)?.with_u0_one();
        Ok(LiftBlock { k_set, matrix })
    }

    pub fn size(&self) -> usize {
        self.matrix.dim()
    }
}

/// `conv(X_N) = {(u_1, v_1) : every block is psd}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftDescription {
    pub n: usize,
    pub scheme: LiftScheme,
    pub blocks: Vec<LiftBlock>,
    pub projection: (Var, Var),
}

impl LiftDescription {
    pub fn new(n: usize, scheme: LiftScheme, k_sets: Vec<FrequencySet>) -> Result<Self> {
        let blocks = k_sets.into_iter().map(LiftBlock::new).collect::<Result<Vec<_>>>()?;
        Ok(LiftDescription { n, scheme, blocks, projection: (Var::U(1), Var::V(1)) })
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(LiftBlock::size).collect()
    }

    pub fn total_size(&self) -> usize {
        self.block_sizes().iter().sum()
    }

    /// Variable pool in the order `u_1, v_1, u_2, v_2, …`.
    pub fn variables(&self) -> Vec<Var> {
        let mut pool: BTreeSet<Var> = self.blocks.iter().flat_map(|b| b.matrix.variables()).collect();
        pool.insert(self.projection.0);
        pool.insert(self.projection.1);
        let mut v: Vec<Var> = pool.into_iter().collect();
        v.sort_by_key(|x| (x.frequency(), matches!(x, Var::V(_))));
        v
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn export_json(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn import_json(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

fn two_power_modulus(n: u32) -> Result<usize> {
    if !(2..=30).contains(&n) {
        return Err(Error::InvalidArgument(format!("n must lie in 2..=30, got {n}")));
    }
    Ok(1usize << n)
}

/// `n − 1` blocks over `T_0 ⊕ T_{2^i}`, `i = 0…n−2`, for `N = 2^n`.
pub fn build_chained_lift(n: u32) -> Result<LiftDescription> {
    let big_n = two_power_modulus(n)?;
    let sets = (0..n - 1).map(|i| FrequencySet::new(big_n, [0, 1i64 << i])).collect();
    LiftDescription::new(big_n, LiftScheme::Chained, sets)
}

/// One block over `T_0 ⊕ T_1 ⊕ T_2 ⊕ T_4 ⊕ … ⊕ T_{2^{n−2}}`, size `2n − 1`.
pub fn build_single_block_lift(n: u32) -> Result<LiftDescription> {
    let big_n = two_power_modulus(n)?;
    let set = FrequencySet::new(big_n, std::iter::once(0).chain((0..n - 1).map(|i| 1i64 << i)));
    LiftDescription::new(big_n, LiftScheme::Single, vec![set])
}

/// One block over `T_0 ⊕ … ⊕ T_{⌈N/4⌉}`.
pub fn build_hierarchy_lift(n: usize) -> Result<LiftDescription> {
    check_modulus(n)?;
    let set = FrequencySet::interval(n, n.div_ceil(4));
    LiftDescription::new(n, LiftScheme::Hierarchy, vec![set])
}

/// The certificate whose squares fit the blocks of `lift`.
pub fn matching_certificate(lift: &LiftDescription) -> Result<SosCertificate> {
    match lift.scheme {
        LiftScheme::Chained | LiftScheme::Single => powers_of_two_certificate(lift.n.trailing_zeros()),
        LiftScheme::Hierarchy => hierarchy_certificate(lift.n),
    }
}

/// `(cos(2πm/N), sin(2πm/N))` with exact values on the axes.
fn unit_root(m: i64, n: usize) -> (f64, f64) {
    let r = residue(m, n);
    if r == 0 {
        return (1.0, 0.0);
    }
    if 2 * r == n {
        return (-1.0, 0.0);
    }
    if 4 * r == n {
        return (0.0, 1.0);
    }
    if 4 * r == 3 * n {
        return (0.0, -1.0);
    }
    let t = 2.0 * PI * r as f64 / n as f64;
    (t.cos(), t.sin())
}

/// A full assignment of lift variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftPoint {
    pub n: usize,
    pub values: Assignment,
}

impl LiftPoint {
    pub fn projection(&self) -> (f64, f64) {
        (self.values.get(&Var::U(1)).copied().unwrap_or(0.0), self.values.get(&Var::V(1)).copied().unwrap_or(0.0))
    }

    pub fn max_diff(&self, other: &LiftPoint) -> f64 {
        self.values
            .iter()
            .map(|(x, v)| (v - other.values.get(x).copied().unwrap_or(f64::NAN)).abs())
            .fold(0.0, f64::max)
    }

    /// Convex combination `Σ w_j p_j` over a common variable set.
    pub fn combine(points: &[(f64, &LiftPoint)]) -> LiftPoint {
        let first = points[0].1;
        let values = first
            .values
            .keys()
            .map(|x| (*x, points.iter().map(|(w, p)| w * p.values[x]).sum()))
            .collect();
        LiftPoint { n: first.n, values }
    }
}

/// Evaluation at vertex `i`: `u_k = cos(kθ_i)`, `v_k = sin(kθ_i)` over the
/// lift's variables.
pub fn vertex_lift_point(lift: &LiftDescription, i: usize) -> Result<LiftPoint> {
    let n = lift.n;
    if i == 0 || i > n {
        return Err(Error::VertexOutOfRange { index: i, n });
    }
    let mut values = Assignment::new();
    for x in lift.variables() {
        // kθ_i = πk(2i−1)/N = 2π·m/(2N)
        let m = (x.frequency() * (2 * i - 1)) as i64;
        let (c, s) = unit_root(m, 2 * n);
        values.insert(x, if matches!(x, Var::U(_)) { c } else { s });
    }
    Ok(LiftPoint { n, values })
}

/// `u_0 = 1`, all other moments zero.
pub fn barycenter_point(lift: &LiftDescription) -> LiftPoint {
    LiftPoint { n: lift.n, values: lift.variables().into_iter().map(|x| (x, 0.0)).collect() }
}

/// Rotation by `2πr/N`: each pair `(u_k, v_k)` turns by `2πkr/N`.
pub fn rotate_lift_point(p: &LiftPoint, r: i64) -> LiftPoint {
    let mut values = Assignment::new();
    for &x in p.values.keys() {
        let k = x.frequency();
        let (c, s) = unit_root(k as i64 * r, p.n);
        let u = p.values.get(&Var::U(k)).copied().unwrap_or(0.0);
        let v = p.values.get(&Var::V(k)).copied().unwrap_or(0.0);
        let val = match x {
            Var::U(_) => c * u - s * v,
            Var::V(_) => s * u + c * v,
        };
        values.insert(x, val);
    }
    LiftPoint { n: p.n, values }
}

/// Smallest eigenvalue of each instantiated block, normalized by `max(1, ‖M‖_∞)`.
pub fn block_min_eigenvalues(lift: &LiftDescription, p: &LiftPoint) -> Result<Vec<f64>> {
    let mut values = p.values.clone();
    values.entry(Var::U(0)).or_insert(1.0);
    lift.blocks
        .iter()
        .map(|b| {
            let m = b.matrix.instantiate(&values)?;
            Ok(min_eig_scaled(m))
        })
        .collect()
}

fn min_eig_scaled(m: DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    let norm = m.row_iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(1.0, f64::max);
    SymmetricEigen::new(m).eigenvalues.min() / norm
}

pub fn is_feasible(lift: &LiftDescription, p: &LiftPoint, slack: f64) -> Result<bool> {
    Ok(block_min_eigenvalues(lift, p)?.iter().all(|&e| e >= -slack))
}

/// Assigns each square to the first block whose frequency set holds its
/// support and forms one Gram matrix per block.
pub fn block_grams(lift: &LiftDescription, cert: &SosCertificate) -> Result<Vec<GramMatrix>> {
    let mut groups: Vec<Vec<TrigPoly>> = vec![Vec::new(); lift.blocks.len()];
    for (index, h) in cert.squares.iter().enumerate() {
        let one = SosCertificate::new(cert.target.clone(), vec![h.clone()], Scheme::Custom)?;
        let support = one.support();
        let slot = lift
            .blocks
            .iter()
            .position(|b| support.is_subset(&b.k_set))
            .ok_or(Error::OutsideSubspace { index })?;
        groups[slot].push(h.clone());
    }
    lift.blocks
        .iter()
        .zip(groups)
        .map(|(b, squares)| {
            let sub = SosCertificate::new(cert.target.clone(), squares, Scheme::Custom)?;
            gram_from_certificate(&sub, &b.k_set)
        })
        .collect()
}

/// Coefficientwise `|Σ_b T_{V_b}(Q_b) − target|` and the smallest scaled
/// Gram eigenvalue.
fn gram_leg(lift: &LiftDescription, cert: &SosCertificate) -> Result<(f64, f64)> {
    let grams = block_grams(lift, cert)?;
    let mut total = crate::trigspace::RealCoeffs::zero(lift.n);
    let mut min_eig = f64::INFINITY;
    for g in &grams {
        let part = g.t_v_real();
        for k in 0..total.cos.len() {
            total.cos[k] += part.cos[k];
            total.sin[k] += part.sin[k];
        }
        if g.q.nrows() > 0 {
            min_eig = min_eig.min(g.min_eigenvalue() / g.q.norm().max(1.0));
        }
    }
    let target = cert.target.to_real_basis(1e-9)?;
    Ok((total.max_abs_diff(&target), min_eig))
}

#[derive(Debug, Clone, Serialize)]
pub struct LegReport {
    pub passed: bool,
    pub worst: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftReport {
    pub n: usize,
    pub scheme: LiftScheme,
    pub block_sizes: Vec<usize>,
    pub vertex_feasibility: LegReport,
    pub gram_reproduction: LegReport,
    pub rotated_facets: LegReport,
    pub passed: bool,
}

pub const PSD_SLACK: f64 = 1e-10;
pub const GRAM_TOL: f64 = 1e-10;

/// Runs the three verification legs against `cert`.
pub fn verify_lift(lift: &LiftDescription, cert: &SosCertificate) -> LiftReport {
    verify_lift_with(lift, cert, PSD_SLACK, GRAM_TOL)
}

pub fn verify_lift_with(lift: &LiftDescription, cert: &SosCertificate, slack: f64, tol: f64) -> LiftReport {
    let n = lift.n;

    // (a) every vertex lifts to a feasible point projecting onto itself
    let mut worst_eig = f64::INFINITY;
    let mut worst_proj: f64 = 0.0;
    let mut detail = String::new();
    for i in 1..=n {
        match vertex_lift_point(lift, i).and_then(|p| Ok((block_min_eigenvalues(lift, &p)?, p))) {
            Ok((eigs, p)) => {
                for e in eigs {
                    if e < worst_eig {
                        worst_eig = e;
                        if e < -slack {
                            detail = format!("vertex {i} infeasible");
                        }
                    }
                }
                let t = crate::trigspace::vertex_angle(n, i);
                let (x, y) = p.projection();
                worst_proj = worst_proj.max((x - t.cos()).abs()).max((y - t.sin()).abs());
            }
            Err(e) => {
                worst_eig = f64::NEG_INFINITY;
                detail = e.to_string();
            }
        }
    }
    let vertex_feasibility = LegReport {
        passed: worst_eig >= -slack && worst_proj <= 1e-12,
        worst: worst_eig,
        detail: if detail.is_empty() { format!("projection error {worst_proj:.2e}") } else { detail },
    };

    // (b) Gram reproduction of the facet functional
    let facet_ok = facet_functional(n).map(|l| l.max_coeff_diff(&cert.target) <= tol).unwrap_or(false);
    let gram_reproduction = match gram_leg(lift, cert) {
        Ok((res, eig)) => LegReport {
            passed: facet_ok && res <= tol && eig >= -1e-12,
            worst: res,
            detail: if facet_ok {
                format!("min Gram eigenvalue {eig:.2e}")
            } else {
                "certificate target is not the facet functional".into()
            },
        },
        Err(e) => LegReport { passed: false, worst: f64::INFINITY, detail: e.to_string() },
    };

    // (c) all rotated facets through rotated squares
    let mut worst = 0.0f64;
    let mut detail = String::new();
    for r in 0..n as i64 {
        match gram_leg(lift, &cert.rotate(r)) {
            Ok((res, eig)) => {
                if res > worst {
                    worst = res;
                }
                if (res > tol || eig < -1e-12) && detail.is_empty() {
                    detail = format!("rotation {r} fails");
                }
            }
            Err(e) => {
                worst = f64::INFINITY;
                detail = format!("rotation {r}: {e}");
            }
        }
    }
    let rotated_facets = LegReport {
        passed: facet_ok && worst <= tol && detail.is_empty(),
        worst,
        detail: if detail.is_empty() { format!("{n} rotations") } else { detail },
    };

    let passed = vertex_feasibility.passed && gram_reproduction.passed && rotated_facets.passed;
    LiftReport {
        n,
        scheme: lift.scheme,
        block_sizes: lift.block_sizes(),
        vertex_feasibility,
        gram_reproduction,
        rotated_facets,
        passed,
    }
}

/// Frequencies `k_j` with Hermitian psd `A′`, `B′`; squares come from a
/// rank-one splitting of `A′∘B′`.
#[derive(Debug, Clone)]
pub struct FactorizationInput {
    pub n: usize,
    pub freqs: Vec<i64>,
    pub a: DMatrix<Complex64>,
    pub b: DMatrix<Complex64>,
}

fn hermitian_min_eig(m: &DMatrix<Complex64>) -> Result<f64> {
    let defect = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if defect > 1e-10 * m.iter().map(|z| z.norm()).fold(1.0, f64::max) {
        return Err(Error::InvalidArgument(format!("matrix is not Hermitian (defect {defect:.2e})")));
    }
    if m.nrows() == 0 {
        return Ok(0.0);
    }
    Ok(SymmetricEigen::new(m.clone()).eigenvalues.min())
}

/// `A′∘B′ = Σ_i v_i v_i^*` and `h_i = Σ_j conj(v_ij) e_{k_j}`.
pub fn extract_certificate_from_factorization(fin: &FactorizationInput) -> Result<SosCertificate> {
    let d = fin.freqs.len();
    if fin.a.shape() != (d, d) || fin.b.shape() != (d, d) {
        return Err(Error::InvalidArgument(format!(
            "expected {d}x{d} matrices, got {:?} and {:?}",
            fin.a.shape(),
            fin.b.shape()
        )));
    }
    let scale = |m: &DMatrix<Complex64>| m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    for m in [&fin.a, &fin.b] {
        let e = hermitian_min_eig(m)?;
        if e < -PSD_SLACK * scale(m) {
            return Err(Error::Indefinite(e));
        }
    }
    let h = fin.a.component_mul(&fin.b);
    let e = hermitian_min_eig(&h)?;
    if e < -PSD_SLACK * scale(&h) {
        return Err(Error::Indefinite(e));
    }
    let eig = SymmetricEigen::new(h.clone());
    let cutoff = 1e-14 * scale(&h);
    let mut squares = Vec::new();
    for (idx, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda <= cutoff {
            continue;
        }
        let v = eig.eigenvectors.column(idx) * Complex64::new(lambda.sqrt(), 0.0);
        let sq = TrigPoly::from_terms(fin.n, fin.freqs.iter().zip(v.iter()).map(|(&k, c)| (k, c.conj())));
        squares.push(sq);
    }
    SosCertificate::new(facet_functional(fin.n)?, squares, Scheme::Custom)
}

/// Inverse direction: `A′ = m(θ_1)m(θ_1)^*` (all ones) and `B′ = Σ ḡ_i g_iᵀ`
/// with `g_i` the `e_k`-coordinates of the squares.
pub fn factorization_from_certificate(cert: &SosCertificate) -> FactorizationInput {
    let freqs: Vec<i64> = cert.hermitian_support().iter().map(|k| k as i64).collect();
    let d = freqs.len();
    let a = DMatrix::from_element(d, d, Complex64::new(1.0, 0.0));
    let mut b = DMatrix::<Complex64>::zeros(d, d);
    for h in &cert.squares {
        let g = DMatrix::from_iterator(d, 1, freqs.iter().map(|&k| h.coeff(k)));
        b += g.map(|z| z.conj()) * g.transpose();
    }
    FactorizationInput { n: cert.n, freqs, a, b }
}
