//! Real univariate polynomials in the monomial and Chebyshev bases.
//!
//! Nonnegativity is decided by locating every real critical point (roots
//! of the derivative, found as eigenvalues of the companion or colleague
//! matrix and polished with Newton steps) and evaluating the polynomial
//! there. A negative value is returned as a witness.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};

const TRIM: f64 = 1e-14;

/// Default relative tolerance used by nonnegativity decisions.
pub const NONNEG_TOL: f64 = 1e-9;

/// Imaginary-part threshold under which a computed root counts as real
/// when pairing roots.
pub const ROOT_CLUSTER_TOL: f64 = 1e-7;

fn trim(mut c: Vec<f64>) -> Vec<f64> {
    let scale = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    while c.len() > 1 && c.last().is_some_and(|v| v.abs() <= TRIM * scale) {
        c.pop();
    }
    if c.is_empty() {
        c.push(0.0);
    }
    c
}

/// Outcome of a nonnegativity decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Nonnegativity {
    Yes,
    No { witness: f64, value: f64 },
}

impl Nonnegativity {
    pub fn is_yes(&self) -> bool {
        matches!(self, Nonnegativity::Yes)
    }
}

/// Where nonnegativity is required.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Global,
    /// The half-line `[lo, ∞)`.
    AtLeast(f64),
}

/// Shared surface of the two polynomial representations.
pub trait Univariate: Clone {
    fn degree(&self) -> usize;
    fn eval(&self, x: f64) -> f64;
    fn derivative(&self) -> Self;
    /// Leading coefficient in the monomial basis.
    fn leading_monomial(&self) -> f64;
    fn complex_roots(&self) -> Vec<Complex64>;
    /// Magnitude reference for tolerances (largest stored coefficient).
    fn coeff_scale(&self) -> f64;
    fn is_zero(&self) -> bool;
}

/// Decides `p(x) ≥ −tol·scale` on the domain, returning a witness otherwise.
pub fn decide_nonnegative<P: Univariate>(p: &P, domain: Domain, tol: f64) -> Nonnegativity {
    if p.is_zero() {
        return Nonnegativity::Yes;
    }
    let slack = tol * p.coeff_scale().max(f64::MIN_POSITIVE);
    let deg = p.degree();
    let lead = p.leading_monomial();
    let anchor = match domain {
        Domain::Global => 0.0,
        Domain::AtLeast(lo) => lo,
    };
    if deg == 0 {
        let v = p.eval(anchor);
        return if v >= -slack { Nonnegativity::Yes } else { Nonnegativity::No { witness: anchor, value: v } };
    }
    // Far-away behaviour is governed by the leading term.
    let far = far_point(p);
    if lead < 0.0 {
        let x = anchor.abs() + far;
        return Nonnegativity::No { witness: x, value: p.eval(x) };
    }
    if deg % 2 == 1 && domain == Domain::Global {
        let x = -far;
        return Nonnegativity::No { witness: x, value: p.eval(x) };
    }

    let mut candidates = critical_points(p);
    if let Domain::AtLeast(lo) = domain {
        candidates.retain(|&x| x >= lo);
        candidates.push(lo);
    }
    let mut worst = (anchor, p.eval(anchor));
    for x in candidates {
        let v = p.eval(x);
        if v < worst.1 {
            worst = (x, v);
        }
    }
    if worst.1 >= -slack {
        Nonnegativity::Yes
    } else {
        Nonnegativity::No { witness: worst.0, value: worst.1 }
    }
}

/// A point beyond which `|p|` is dominated by its leading term.
fn far_point<P: Univariate>(p: &P) -> f64 {
    let roots = p.complex_roots();
    let r = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    2.0 * r + 10.0
}

/// Approximate real critical points of `p`, polished with Newton's method.
pub fn critical_points<P: Univariate>(p: &P) -> Vec<f64> {
    let dp = p.derivative();
    if dp.is_zero() || dp.degree() == 0 {
        return Vec::new();
    }
    let ddp = dp.derivative();
    let mut out = Vec::new();
    for z in dp.complex_roots() {
        // Generous acceptance: spurious candidates only cost an evaluation.
        if z.im.abs() > 0.1 * (1.0 + z.re.abs()) {
            continue;
        }
        let mut x = z.re;
        for _ in 0..8 {
            let d2 = ddp.eval(x);
            if d2 == 0.0 {
                break;
            }
            let next = x - dp.eval(x) / d2;
            if !next.is_finite() || dp.eval(next).abs() >= dp.eval(x).abs() {
                break;
            }
            x = next;
        }
        out.push(x);
        if x != z.re {
            out.push(z.re);
        }
    }
    out
}

/// Splits a root multiset of a nonnegative polynomial into one
/// representative per conjugate pair (real roots are paired by adjacency).
fn half_roots(roots: &[Complex64], degree: usize) -> Result<Vec<Complex64>> {
    let mut upper = Vec::new();
    let mut real = Vec::new();
    for z in roots {
        let tol = ROOT_CLUSTER_TOL * (1.0 + z.norm());
        if z.im > tol {
            upper.push(*z);
        } else if z.im.abs() <= tol {
            real.push(z.re);
        }
    }
    if real.len() % 2 == 1 {
        let w = real[real.len() / 2];
        return Err(Error::NotNonnegative { witness: w, value: f64::NAN });
    }
    real.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for pair in real.chunks(2) {
        upper.push(Complex64::new(0.5 * (pair[0] + pair[1]), 0.0));
    }
    if 2 * upper.len() != degree {
        return Err(Error::Degenerate(format!(
            "root pairing produced {} of {} conjugate pairs",
            upper.len(),
            degree / 2
        )));
    }
    Ok(upper)
}

/// A few Newton steps on each root; keeps a step only if it shrinks |p|.
fn polish_roots(roots: &mut [Complex64], eval: impl Fn(Complex64) -> (Complex64, Complex64)) {
    for z in roots.iter_mut() {
        for _ in 0..6 {
            let (v, d) = eval(*z);
            if d.norm() == 0.0 {
                break;
            }
            let next = *z - v / d;
            if !(next.re.is_finite() && next.im.is_finite()) || eval(next).0.norm() >= v.norm() {
                break;
            }
            *z = next;
        }
    }
}

/// Eigenvalues through a bounded Schur iteration. Unconverged matrices
/// (nilpotent companions, for instance) are retried with a diagonal shift.
fn eigenvalues(m: DMatrix<f64>) -> Vec<Complex64> {
    let n = m.nrows();
    for shift in [0.0, 0.3, -0.55, 1.25] {
        let shifted = &m + DMatrix::<f64>::identity(n, n) * shift;
        if let Some(schur) = Schur::try_new(shifted, f64::EPSILON, 10_000) {
            return schur.complex_eigenvalues().iter().map(|z| z - shift).collect();
        }
    }
    panic!("Schur iteration failed to converge on a {n}x{n} matrix");
}

/// Dense polynomial `Σ c_i x^i`, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly1 {
    coeffs: Vec<f64>,
}

impl Poly1 {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Poly1 { coeffs: trim(coeffs) }
    }

    pub fn zero() -> Self {
        Poly1 { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> Self {
        Poly1::new(vec![c])
    }

    pub fn x() -> Self {
        Poly1::new(vec![0.0, 1.0])
    }

    /// Monic `Π (x − r)`.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut c = vec![1.0];
        for &r in roots {
            let mut next = vec![0.0; c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= r * a;
            }
            c = next;
        }
        Poly1 { coeffs: c }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn add(&self, other: &Poly1) -> Poly1 {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len)
            .map(|i| self.coeffs.get(i).unwrap_or(&0.0) + other.coeffs.get(i).unwrap_or(&0.0))
            .collect();
        Poly1::new(c)
    }

    pub fn sub(&self, other: &Poly1) -> Poly1 {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Poly1 {
        Poly1::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Poly1) -> Poly1 {
        let mut c = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly1::new(c)
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Poly1) -> Poly1 {
        let mut acc = Poly1::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly1::constant(c));
        }
        acc
    }

    /// Synthetic division by `(x − r)`: returns quotient and remainder.
    pub fn deflate(&self, r: f64) -> (Poly1, f64) {
        let n = self.coeffs.len();
        if n == 1 {
            return (Poly1::zero(), self.coeffs[0]);
        }
        let mut q = vec![0.0; n - 1];
        let mut carry = 0.0;
        for i in (0..n).rev() {
            let v = self.coeffs[i] + carry * r;
            if i == 0 {
                return (Poly1::new(q), v);
            }
            q[i - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    fn eval_complex(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            d = d * z + v;
            v = v * z + c;
        }
        (v, d)
    }

    /// Writes `self = h1² + h2²` by pairing conjugate roots:
    /// `h1 + i·h2 = √lead · Π (x − z_j)` over one root per conjugate pair.
    pub fn two_squares(&self) -> Result<(Poly1, Poly1)> {
        if let Nonnegativity::No { witness, value } = decide_nonnegative(self, Domain::Global, NONNEG_TOL) {
            return Err(Error::NotNonnegative { witness, value });
        }
        let d = self.degree();
        let lead = self.leading_monomial();
        if d == 0 {
            return Ok((Poly1::constant(lead.max(0.0).sqrt()), Poly1::zero()));
        }
        let mut roots = self.complex_roots();
        polish_roots(&mut roots, |z| self.eval_complex(z));
        let half = half_roots(&roots, d)?;
        let mut h = vec![Complex64::new(lead.sqrt(), 0.0)];
        for z in half {
            let mut next = vec![Complex64::new(0.0, 0.0); h.len() + 1];
            for (i, &a) in h.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= z * a;
            }
            h = next;
        }
        let h1 = Poly1::new(h.iter().map(|c| c.re).collect());
        let h2 = Poly1::new(h.iter().map(|c| c.im).collect());
        let back = h1.mul(&h1).add(&h2.mul(&h2));
        let err = back.sub(self).coeff_scale() / self.coeff_scale();
        if err > 1e-8 {
            return Err(Error::Degenerate(format!("two-squares residual {err:.3e}")));
        }
        Ok((h1, h2))
    }
}

impl Univariate for Poly1 {
    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    fn derivative(&self) -> Poly1 {
        if self.coeffs.len() == 1 {
            return Poly1::zero();
        }
        Poly1::new(self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| i as f64 * c).collect())
    }

    fn leading_monomial(&self) -> f64 {
        *self.coeffs.last().unwrap()
    }

    /// Eigenvalues of the companion matrix of the normalized polynomial.
    fn complex_roots(&self) -> Vec<Complex64> {
        let d = self.degree();
        if d == 0 {
            return Vec::new();
        }
        let scale = self.coeff_scale();
        let c: Vec<f64> = self.coeffs.iter().map(|v| v / scale).collect();
        let lead = c[d];
        let mut m = DMatrix::<f64>::zeros(d, d);
        for i in 1..d {
            m[(i, i - 1)] = 1.0;
        }
        for i in 0..d {
            m[(i, d - 1)] = -c[i] / lead;
        }
        eigenvalues(m)
    }

    fn coeff_scale(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }
}

/// Polynomial `Σ c_k T_k(x)` in the Chebyshev basis.
///
/// Stable for the polynomials built from cosine levels, whose monomial
/// coefficients grow like `2^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebPoly {
    coeffs: Vec<f64>,
}

impl ChebPoly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        ChebPoly { coeffs: trim(coeffs) }
    }

    /// `T_m`.
    pub fn basis(m: usize) -> Self {
        let mut c = vec![0.0; m + 1];
        c[m] = 1.0;
        ChebPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Monic `Π (x − r)` expanded in the Chebyshev basis.
    ///
    /// Factors `2(x − r)` are multiplied in Leja order so partial products
    /// stay of moderate size; the power of two is removed at the end.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for r in leja_order(roots) {
            c = cheb_mul_linear(&c, Complex64::new(r, 0.0));
            for v in c.iter_mut() {
                *v *= 2.0;
            }
        }
        let unscale = 0.5f64.powi(roots.len() as i32);
        ChebPoly::new(c.iter().map(|z| z.re * unscale).collect())
    }

    pub fn add(&self, other: &ChebPoly) -> ChebPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        ChebPoly::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&0.0) + other.coeffs.get(i).unwrap_or(&0.0))
                .collect(),
        )
    }

    pub fn sub(&self, other: &ChebPoly) -> ChebPoly {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> ChebPoly {
        ChebPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Product via `T_a T_b = (T_{a+b} + T_{|a−b|}) / 2`.
    pub fn mul(&self, other: &ChebPoly) -> ChebPoly {
        let mut c = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += 0.5 * a * b;
                c[i.abs_diff(j)] += 0.5 * a * b;
            }
        }
        ChebPoly::new(c)
    }

    /// Multiplication by `x`.
    pub fn mul_x(&self) -> ChebPoly {
        let c: Vec<Complex64> = self.coeffs.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        ChebPoly::new(cheb_mul_linear(&c, Complex64::new(0.0, 0.0)).iter().map(|z| z.re).collect())
    }

    pub fn to_monomial(&self) -> Poly1 {
        let mut acc = vec![0.0; self.coeffs.len()];
        let mut prev = vec![1.0];
        let mut cur = vec![0.0, 1.0];
        for (k, &c) in self.coeffs.iter().enumerate() {
            let t: &[f64] = match k {
                0 => &prev,
                _ => &cur,
            };
            for (i, v) in t.iter().enumerate() {
                acc[i] += c * v;
            }
            if k >= 1 {
                let mut next = vec![0.0; cur.len() + 1];
                for (i, v) in cur.iter().enumerate() {
                    next[i + 1] += 2.0 * v;
                }
                for (i, v) in prev.iter().enumerate() {
                    next[i] -= v;
                }
                prev = std::mem::replace(&mut cur, next);
            }
        }
        Poly1::new(acc)
    }

    fn eval_complex(&self, z: Complex64) -> (Complex64, Complex64) {
        // Clenshaw for value; derivative via the derivative series.
        let v = clenshaw_c(&self.coeffs, z);
        let d = clenshaw_c(&self.derivative().coeffs, z);
        (v, d)
    }

    /// Writes `self = h1² + h2²` with both factors in the Chebyshev basis.
    pub fn two_squares(&self) -> Result<(ChebPoly, ChebPoly)> {
        if let Nonnegativity::No { witness, value } = decide_nonnegative(self, Domain::Global, NONNEG_TOL) {
            return Err(Error::NotNonnegative { witness, value });
        }
        let d = self.degree();
        let lead = self.leading_monomial();
        if d == 0 {
            return Ok((ChebPoly::new(vec![lead.max(0.0).sqrt()]), ChebPoly::new(vec![0.0])));
        }
        let mut roots = self.complex_roots();
        polish_roots(&mut roots, |z| self.eval_complex(z));
        let half = half_roots(&roots, d)?;
        let mut h = vec![Complex64::new(lead.sqrt(), 0.0)];
        for z in half {
            h = cheb_mul_linear(&h, z);
        }
        let h1 = ChebPoly::new(h.iter().map(|c| c.re).collect());
        let h2 = ChebPoly::new(h.iter().map(|c| c.im).collect());
        let back = h1.mul(&h1).add(&h2.mul(&h2));
        let err = back.sub(self).coeff_scale() / self.coeff_scale();
        if err > 1e-8 {
            return Err(Error::Degenerate(format!("two-squares residual {err:.3e}")));
        }
        Ok((h1, h2))
    }
}

/// Greedy Leja ordering: each next point maximizes the product of
/// distances to the points already chosen.
fn leja_order(points: &[f64]) -> Vec<f64> {
    let mut rest = points.to_vec();
    let mut out = Vec::with_capacity(rest.len());
    let mut score: Vec<f64> = rest.iter().map(|r| r.abs()).collect();
    while !rest.is_empty() {
        let best = (0..rest.len())
            .max_by(|&i, &j| score[i].partial_cmp(&score[j]).unwrap())
            .unwrap();
        let chosen = rest.swap_remove(best);
        score.swap_remove(best);
        for (s, r) in score.iter_mut().zip(&rest) {
            *s *= (r - chosen).abs();
        }
        out.push(chosen);
    }
    out
}

/// `(x − r)·Σ c_k T_k` using `x T_0 = T_1`, `x T_k = (T_{k+1} + T_{k−1})/2`.
fn cheb_mul_linear(c: &[Complex64], r: Complex64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); c.len() + 1];
    for (k, &a) in c.iter().enumerate() {
        if k == 0 {
            out[1] += a;
        } else {
            out[k + 1] += a * 0.5;
            out[k - 1] += a * 0.5;
        }
        out[k] -= r * a;
    }
    out
}

fn clenshaw(c: &[f64], x: f64) -> f64 {
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &a in c.iter().skip(1).rev() {
        let b0 = a + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    c[0] + x * b1 - b2
}

fn clenshaw_c(c: &[f64], x: Complex64) -> Complex64 {
    let mut b1 = Complex64::new(0.0, 0.0);
    let mut b2 = Complex64::new(0.0, 0.0);
    for &a in c.iter().skip(1).rev() {
        let b0 = a + x * b1 * 2.0 - b2;
        b2 = b1;
        b1 = b0;
    }
    c[0] + x * b1 - b2
}

impl Univariate for ChebPoly {
    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn eval(&self, x: f64) -> f64 {
        clenshaw(&self.coeffs, x)
    }

    fn derivative(&self) -> ChebPoly {
        let n = self.coeffs.len() - 1;
        if n == 0 {
            return ChebPoly::new(vec![0.0]);
        }
        // d_{k−1} = d_{k+1} + 2k c_k, with d_0 halved.
        let mut d = vec![0.0; n + 1];
        for k in (1..=n).rev() {
            d[k - 1] = d.get(k + 1).copied().unwrap_or(0.0) + 2.0 * k as f64 * self.coeffs[k];
        }
        d[0] *= 0.5;
        d.truncate(n);
        ChebPoly::new(d)
    }

    fn leading_monomial(&self) -> f64 {
        let d = self.degree();
        let c = self.coeffs[d];
        if d == 0 {
            c
        } else {
            c * 2f64.powi(d as i32 - 1)
        }
    }

    /// Eigenvalues of the colleague matrix.
    fn complex_roots(&self) -> Vec<Complex64> {
        let d = self.degree();
        if d == 0 {
            return Vec::new();
        }
        let c = &self.coeffs;
        if d == 1 {
            return vec![Complex64::new(-c[0] / c[1], 0.0)];
        }
        let mut m = DMatrix::<f64>::zeros(d, d);
        m[(0, 1)] = 1.0;
        for k in 1..d - 1 {
            m[(k, k - 1)] = 0.5;
            m[(k, k + 1)] = 0.5;
        }
        for k in 0..d {
            m[(d - 1, k)] -= c[k] / (2.0 * c[d]);
        }
        m[(d - 1, d - 2)] += 0.5;
        eigenvalues(m)
    }

    fn coeff_scale(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }
}

/// Decides global nonnegativity of a monomial-basis polynomial.
pub fn is_globally_nonnegative(p: &Poly1) -> Nonnegativity {
    decide_nonnegative(p, Domain::Global, NONNEG_TOL)
}

/// Writes a globally nonnegative `p` as `h1² + h2²`.
pub fn two_squares_factorization(p: &Poly1) -> Result<(Poly1, Poly1)> {
    p.two_squares()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sorted_real(mut v: Vec<Complex64>) -> Vec<f64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        v.iter().map(|z| z.re).collect()
    }

    #[test]
    fn roots_both_bases() {
        let p = Poly1::from_roots(&[-0.5, 0.25, 2.0]);
        let r = sorted_real(p.complex_roots());
        for (a, b) in r.iter().zip([-0.5, 0.25, 2.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
        let c = ChebPoly::from_roots(&[-0.5, 0.25, 2.0]);
        let r = sorted_real(c.complex_roots());
        for (a, b) in r.iter().zip([-0.5, 0.25, 2.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
        // Same polynomial in both bases.
        let m = c.to_monomial();
        for (a, b) in m.coeffs().iter().zip(p.coeffs()) {
            assert_abs_diff_eq!(*a, *b, epsilon = 1e-13);
        }
    }

    #[test]
    fn chebyshev_derivative_and_mul() {
        let c = ChebPoly::new(vec![0.3, -1.0, 0.25, 2.0, -0.5]);
        let m = c.to_monomial();
        for x in [-1.3, -0.2, 0.0, 0.7, 1.9] {
            assert_abs_diff_eq!(c.eval(x), m.eval(x), epsilon = 1e-12);
            assert_abs_diff_eq!(c.derivative().eval(x), m.derivative().eval(x), epsilon = 1e-11);
            assert_abs_diff_eq!(c.mul(&c).eval(x), m.eval(x).powi(2), epsilon = 1e-10);
            assert_abs_diff_eq!(c.mul_x().eval(x), x * m.eval(x), epsilon = 1e-12);
        }
        assert_abs_diff_eq!(c.leading_monomial(), m.leading_monomial(), epsilon = 1e-12);
    }

    #[test]
    fn simple_nonnegativity() {
        assert!(is_globally_nonnegative(&Poly1::new(vec![0.0, 0.0, 1.0])).is_yes());
        match is_globally_nonnegative(&Poly1::new(vec![-1.0, 0.0, 1.0])) {
            Nonnegativity::No { witness, value } => {
                assert_abs_diff_eq!(witness, 0.0, epsilon = 1e-12);
                assert_abs_diff_eq!(value, -1.0, epsilon = 1e-12);
            }
            Nonnegativity::Yes => panic!("x^2 - 1 is not nonnegative"),
        }
        match is_globally_nonnegative(&Poly1::new(vec![0.0, 0.0, 0.0, 1.0])) {
            Nonnegativity::No { value, .. } => assert!(value < 0.0),
            Nonnegativity::Yes => panic!("odd degree"),
        }
        match is_globally_nonnegative(&Poly1::new(vec![1.0, 0.0, -1.0])) {
            Nonnegativity::No { value, .. } => assert!(value < 0.0),
            Nonnegativity::Yes => panic!("negative leading coefficient"),
        }
        // Quadruple root at 1.
        let p = Poly1::from_roots(&[1.0, 1.0, 1.0, 1.0]);
        assert!(is_globally_nonnegative(&p).is_yes());
        // Half-line: x^3 is nonnegative on [0, ∞) but not on [−1, ∞).
        let cube = Poly1::new(vec![0.0, 0.0, 0.0, 1.0]);
        assert!(decide_nonnegative(&cube, Domain::AtLeast(0.0), NONNEG_TOL).is_yes());
        assert!(!decide_nonnegative(&cube, Domain::AtLeast(-1.0), NONNEG_TOL).is_yes());
    }

    #[test]
    fn two_squares_small_cases() {
        let (h1, h2) = two_squares_factorization(&Poly1::new(vec![1.0, 0.0, 1.0])).unwrap();
        // x^2 + 1 = x^2 + 1^2 up to a unit complex rotation of (h1, h2)
        let back = h1.mul(&h1).add(&h2.mul(&h2));
        for (a, b) in back.coeffs().iter().zip([1.0, 0.0, 1.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
        assert_eq!(h1.degree().max(h2.degree()), 1);

        let (h1, h2) = two_squares_factorization(&Poly1::new(vec![0.0, 0.0, 1.0])).unwrap();
        assert!(h2.is_zero() || h2.coeff_scale() < 1e-12);
        assert_abs_diff_eq!(h1.coeffs()[1].abs(), 1.0, epsilon = 1e-12);

        assert!(matches!(
            two_squares_factorization(&Poly1::new(vec![-1.0, 0.0, 1.0])),
            Err(Error::NotNonnegative { .. })
        ));
    }

    #[test]
    fn deflation() {
        let p = Poly1::from_roots(&[2.0, -1.0, 0.5]);
        let (q, r) = p.deflate(2.0);
        assert_abs_diff_eq!(r, 0.0, epsilon = 1e-14);
        let expect = Poly1::from_roots(&[-1.0, 0.5]);
        for (a, b) in q.coeffs().iter().zip(expect.coeffs()) {
            assert_abs_diff_eq!(*a, *b, epsilon = 1e-14);
        }
    }
}
