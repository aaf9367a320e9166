//! Functions on the vertex set of the regular N-gon.
//!
//! The vertices sit at angles `θ_i = (2i−1)π/N`, `i = 1..=N`. A function on
//! the vertex set is stored in the twisted Fourier basis
//! `e_k(θ) = e^{−ikπ/N} e^{ikθ}`, which is periodic in `k` with period `N`
//! (`e_{k+N} = e_k` exactly), conjugates as `e_k^* = e_{−k}` and multiplies
//! as `e_k e_{k'} = e_{k+k'}`. A real view in terms of `c_k = cos(kθ)` and
//! `s_k = sin(kθ)`, `0 ≤ k ≤ ⌊N/2⌋`, is available through [`RealCoeffs`].

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn check_modulus(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::ModulusTooSmall(n));
    }
    Ok(())
}

/// Canonical residue of `k` modulo `n` in `0..n`.
pub fn residue(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}

/// Angle of vertex `i` (1-based): `(2i−1)π/N`.
pub fn vertex_angle(n: usize, i: usize) -> f64 {
    (2 * i as i64 - 1) as f64 * PI / n as f64
}

/// `e^{2πi·m/N}` with the exponent reduced modulo `N` first.
fn root_of_unity(m: i64, n: usize) -> Complex64 {
    let r = residue(m, n);
    Complex64::from_polar(1.0, 2.0 * PI * r as f64 / n as f64)
}

/// `e^{iπ·k/N}` for a signed `k`, reduced modulo `2N`.
fn half_root(k: i64, n: usize) -> Complex64 {
    let r = k.rem_euclid(2 * n as i64);
    Complex64::from_polar(1.0, PI * r as f64 / n as f64)
}

/// An element of `Z_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frequency {
    value: usize,
    modulus: usize,
}

impl Frequency {
    pub fn new(k: i64, modulus: usize) -> Self {
        Frequency { value: residue(k, modulus), modulus }
    }

    pub fn value(&self) -> usize {
        self.value
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }
}

impl Add for Frequency {
    type Output = Frequency;

    fn add(self, rhs: Frequency) -> Frequency {
        assert_eq!(self.modulus, rhs.modulus, "frequency modulus mismatch");
        Frequency::new(self.value as i64 + rhs.value as i64, self.modulus)
    }
}

impl Neg for Frequency {
    type Output = Frequency;

    fn neg(self) -> Frequency {
        Frequency::new(-(self.value as i64), self.modulus)
    }
}

/// Distance between two residues on the cycle graph of length `n`.
pub(crate) fn cyclic_dist(a: usize, b: usize, n: usize) -> usize {
    let d = a.abs_diff(b) % n;
    d.min(n - d)
}

/// Shortest arc length between two frequencies on the cycle graph `Z_N`.
pub fn cycle_distance(k: Frequency, other: Frequency) -> Result<usize> {
    if k.modulus != other.modulus {
        return Err(Error::ModulusMismatch(k.modulus, other.modulus));
    }
    Ok(cyclic_dist(k.value, other.value, k.modulus))
}

/// A subset of `Z_N`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrequencySet {
    n: usize,
    members: BTreeSet<usize>,
}

impl FrequencySet {
    /// Builds a set from arbitrary integers, reducing each modulo `n`.
    pub fn new<I: IntoIterator<Item = i64>>(n: usize, ks: I) -> Self {
        FrequencySet { n, members: ks.into_iter().map(|k| residue(k, n)).collect() }
    }

    pub fn empty(n: usize) -> Self {
        FrequencySet { n, members: BTreeSet::new() }
    }

    /// The interval `{0, 1, ..., r}`.
    pub fn interval(n: usize, r: usize) -> Self {
        FrequencySet::new(n, 0..=r as i64)
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.members.contains(&(k % self.n))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.iter().copied().collect()
    }

    pub fn insert(&mut self, k: i64) {
        self.members.insert(residue(k, self.n));
    }

    pub fn union(&self, other: &FrequencySet) -> FrequencySet {
        assert_eq!(self.n, other.n, "frequency set modulus mismatch");
        FrequencySet { n: self.n, members: self.members.union(&other.members).copied().collect() }
    }

    pub fn is_subset(&self, other: &FrequencySet) -> bool {
        self.n == other.n && self.members.is_subset(&other.members)
    }

    /// `K ∪ (−K)`.
    pub fn symmetric_closure(&self) -> FrequencySet {
        let mut out = self.clone();
        for k in &self.members {
            out.members.insert((self.n - k) % self.n);
        }
        out
    }

    /// `K + t`.
    pub fn translate(&self, t: i64) -> FrequencySet {
        FrequencySet::new(self.n, self.members.iter().map(|&k| k as i64 + t))
    }

    /// Smallest `r` such that the set fits in a cyclic interval `[x, x+r]`,
    /// computed as `N` minus the largest cyclic gap between members. The
    /// full set `Z_N` therefore gets `N − 1`.
    pub fn in_diameter(&self) -> Result<usize> {
        let first = *self.members.iter().next().ok_or(Error::EmptySet)?;
        let last = *self.members.iter().next_back().unwrap();
        let mut max_gap = first + self.n - last;
        let mut prev = first;
        for &k in self.members.iter().skip(1) {
            max_gap = max_gap.max(k - prev);
            prev = k;
        }
        Ok(self.n - max_gap)
    }

    /// `min d(k, k')` over `k ∈ self`, `k' ∈ other`.
    pub fn distance_to(&self, other: &FrequencySet) -> usize {
        let mut best = usize::MAX;
        for &a in &self.members {
            for &b in &other.members {
                best = best.min(cyclic_dist(a, b, self.n));
            }
        }
        best
    }
}

impl fmt::Display for FrequencySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|k| k.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A real basis function `c_k` or `s_k` of the vertex space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RealBasisFn {
    Cos(usize),
    Sin(usize),
}

impl RealBasisFn {
    pub fn frequency(&self) -> usize {
        match *self {
            RealBasisFn::Cos(k) | RealBasisFn::Sin(k) => k,
        }
    }

    /// Whether this function is identically zero on the vertices
    /// (`s_0`, and `c_{N/2}` for even `N`).
    pub fn vanishes(&self, n: usize) -> bool {
        match *self {
            RealBasisFn::Sin(0) => true,
            RealBasisFn::Cos(k) => n.is_multiple_of(2) && k == n / 2,
            RealBasisFn::Sin(_) => false,
        }
    }

    pub fn eval_angle(&self, theta: f64) -> f64 {
        match *self {
            RealBasisFn::Cos(k) => (k as f64 * theta).cos(),
            RealBasisFn::Sin(k) => (k as f64 * theta).sin(),
        }
    }
}

impl fmt::Display for RealBasisFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealBasisFn::Cos(k) => write!(f, "c{k}"),
            RealBasisFn::Sin(k) => write!(f, "s{k}"),
        }
    }
}

impl std::str::FromStr for RealBasisFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad basis label {s:?}"));
        let (head, tail) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i).ok_or_else(bad)?);
        let k: usize = tail.trim_start_matches('_').parse().map_err(|_| bad())?;
        match head {
            "c" => Ok(RealBasisFn::Cos(k)),
            "s" => Ok(RealBasisFn::Sin(k)),
            _ => Err(bad()),
        }
    }
}

/// Ordered real basis of `⊕_{k∈K} T_k(N)`: `c_0` first when `0 ∈ K`, then
/// `c_k, s_k` for each `k` ascending, dropping functions that vanish on
/// the vertices.
pub fn real_basis(k_set: &[usize], n: usize) -> Result<Vec<RealBasisFn>> {
    let max = n / 2;
    let mut ks: Vec<usize> = k_set.to_vec();
    ks.sort_unstable();
    ks.dedup();
    let mut basis = Vec::new();
    for k in ks {
        if k > max {
            return Err(Error::FrequencyOutOfRange { k, max });
        }
        for f in [RealBasisFn::Cos(k), RealBasisFn::Sin(k)] {
            if !f.vanishes(n) {
                basis.push(f);
            }
        }
    }
    Ok(basis)
}

/// Coefficients of a real function in the `c_k, s_k` basis, `0 ≤ k ≤ ⌊N/2⌋`.
///
/// `sin[0]` is always zero and so is `cos[N/2]` for even `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealCoeffs {
    pub n: usize,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

impl RealCoeffs {
    pub fn zero(n: usize) -> Self {
        let m = n / 2 + 1;
        RealCoeffs { n, cos: vec![0.0; m], sin: vec![0.0; m] }
    }

    pub fn get(&self, f: RealBasisFn) -> f64 {
        match f {
            RealBasisFn::Cos(k) => self.cos.get(k).copied().unwrap_or(0.0),
            RealBasisFn::Sin(k) => self.sin.get(k).copied().unwrap_or(0.0),
        }
    }

    pub fn set(&mut self, f: RealBasisFn, value: f64) {
        match f {
            RealBasisFn::Cos(k) => self.cos[k] = value,
            RealBasisFn::Sin(k) => self.sin[k] = value,
        }
    }

    /// Evaluates `Σ cos[k] cos(kθ) + sin[k] sin(kθ)` at an arbitrary angle,
    /// i.e. the natural trigonometric extension off the vertex set.
    pub fn eval_angle(&self, theta: f64) -> f64 {
        let mut acc = 0.0;
        for k in 0..self.cos.len() {
            let t = k as f64 * theta;
            acc += self.cos[k] * t.cos() + self.sin[k] * t.sin();
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &RealCoeffs) -> f64 {
        let c = self.cos.iter().zip(&other.cos).map(|(a, b)| (a - b).abs());
        let s = self.sin.iter().zip(&other.sin).map(|(a, b)| (a - b).abs());
        c.chain(s).fold(0.0, f64::max)
    }

    /// Frequencies carrying a coefficient with magnitude above `tol`.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        (0..self.cos.len()).filter(|&k| self.cos[k].abs() > tol || self.sin[k].abs() > tol).collect()
    }
}

/// A function on the N-gon vertex set in the `e_k` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    n: usize,
    coeffs: BTreeMap<usize, Complex64>,
}

impl TrigPoly {
    pub fn zero(n: usize) -> Self {
        TrigPoly { n, coeffs: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: f64) -> Self {
        let mut p = TrigPoly::zero(n);
        p.add_term(0, Complex64::new(c, 0.0));
        p
    }

    /// The pure frequency `e_k`.
    pub fn e(n: usize, k: i64) -> Self {
        let mut p = TrigPoly::zero(n);
        p.add_term(k, Complex64::new(1.0, 0.0));
        p
    }

    /// `c_k = (e^{ikπ/N} e_k + e^{−ikπ/N} e_{−k}) / 2`, valid for any integer `k`.
    pub fn cos(n: usize, k: i64) -> Self {
        let mut p = TrigPoly::zero(n);
        p.add_term(k, half_root(k, n) * 0.5);
        p.add_term(-k, half_root(-k, n) * 0.5);
        p
    }

    /// `s_k = (e^{ikπ/N} e_k − e^{−ikπ/N} e_{−k}) / 2i`.
    pub fn sin(n: usize, k: i64) -> Self {
        let mut p = TrigPoly::zero(n);
        let inv_2i = Complex64::new(0.0, -0.5);
        p.add_term(k, half_root(k, n) * inv_2i);
        p.add_term(-k, -half_root(-k, n) * inv_2i);
        p
    }

    pub fn basis_fn(n: usize, f: RealBasisFn) -> Self {
        match f {
            RealBasisFn::Cos(k) => TrigPoly::cos(n, k as i64),
            RealBasisFn::Sin(k) => TrigPoly::sin(n, k as i64),
        }
    }

    pub fn from_real_basis(rc: &RealCoeffs) -> Self {
        let n = rc.n;
        let mut p = TrigPoly::zero(n);
        for k in 0..rc.cos.len() {
            if rc.cos[k] != 0.0 {
                p = &p + &(&TrigPoly::cos(n, k as i64) * rc.cos[k]);
            }
            if rc.sin[k] != 0.0 {
                p = &p + &(&TrigPoly::sin(n, k as i64) * rc.sin[k]);
            }
        }
        p
    }

    /// Builds from `(k, coefficient)` pairs; duplicate residues are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, Complex64)>>(n: usize, terms: I) -> Self {
        let mut p = TrigPoly::zero(n);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// Adds `c·e_k`. Coefficients that cancel to exactly zero are pruned.
    pub fn add_term(&mut self, k: i64, c: Complex64) {
        let r = residue(k, self.n);
        let entry = self.coeffs.entry(r).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.coeffs.remove(&r);
        }
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coeffs.get(&residue(k, self.n)).copied().unwrap_or_default()
    }

    /// Stored `(residue, coefficient)` pairs in ascending residue order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn support(&self) -> FrequencySet {
        FrequencySet { n: self.n, members: self.coeffs.keys().copied().collect() }
    }

    /// Real frequencies `min(k, N−k)` touched by coefficients above `tol`.
    pub fn real_support(&self, tol: f64) -> BTreeSet<usize> {
        self.coeffs
            .iter()
            .filter(|(_, c)| c.norm() > tol)
            .map(|(&k, _)| k.min(self.n - k))
            .collect()
    }

    pub fn scale(&self, c: Complex64) -> TrigPoly {
        TrigPoly { n: self.n, coeffs: self.coeffs.iter().map(|(&k, &v)| (k, v * c)).collect() }
    }

    /// Pointwise product; frequencies add modulo `N`.
    pub fn mul(&self, other: &TrigPoly) -> Result<TrigPoly> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch(self.n, other.n));
        }
        let mut out = TrigPoly::zero(self.n);
        for (&a, &ca) in &self.coeffs {
            for (&b, &cb) in &other.coeffs {
                out.add_term((a + b) as i64, ca * cb);
            }
        }
        Ok(out)
    }

    /// Pointwise complex conjugate: the coefficient of `e_k` becomes the
    /// conjugate of the coefficient of `e_{−k}`.
    pub fn conj(&self) -> TrigPoly {
        TrigPoly {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(&k, &c)| ((self.n - k) % self.n, c.conj())).collect(),
        }
    }

    /// `|f|^2 = f^* f`.
    pub fn abs_sq(&self) -> TrigPoly {
        self.conj().mul(self).expect("same modulus")
    }

    /// Value at vertex `i` (1-based).
    pub fn eval_at_vertex(&self, i: usize) -> Result<Complex64> {
        if i == 0 || i > self.n {
            return Err(Error::VertexOutOfRange { index: i, n: self.n });
        }
        // e_k(θ_i) = e^{2πi k (i−1) / N}
        let step = (i - 1) as i64;
        Ok(self.coeffs.iter().map(|(&k, &c)| c * root_of_unity(k as i64 * step, self.n)).sum())
    }

    pub fn eval_all_vertices(&self) -> Vec<Complex64> {
        (1..=self.n).map(|i| self.eval_at_vertex(i).expect("index in range")).collect()
    }

    /// Rotation by `r` steps: `result(θ) = f(θ − 2πr/N)`.
    pub fn rotate(&self, r: i64) -> TrigPoly {
        TrigPoly {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, &c)| (k, c * root_of_unity(-(k as i64) * r, self.n)))
                .collect(),
        }
    }

    /// Largest violation of `coeff(−k) = conj(coeff(k))`.
    pub fn realness_defect(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(&k, &c)| (c - self.coeff(-(k as i64)).conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.realness_defect() <= tol
    }

    /// Expansion in `c_k, s_k`. Fails if the function is not real-valued
    /// within `tol`.
    pub fn to_real_basis(&self, tol: f64) -> Result<RealCoeffs> {
        let defect = self.realness_defect();
        if defect > tol {
            return Err(Error::NotRealValued(defect));
        }
        let n = self.n;
        let mut rc = RealCoeffs::zero(n);
        rc.cos[0] = self.coeff(0).re;
        for k in 1..=n / 2 {
            let ki = k as i64;
            if 2 * k == n {
                // e_{N/2} coincides with s_{N/2} on the vertices.
                rc.sin[k] = self.coeff(ki).re;
                continue;
            }
            let alpha = self.coeff(ki) * half_root(-ki, n);
            let beta = self.coeff(-ki) * half_root(ki, n);
            let a = (alpha + beta.conj()) * 0.5;
            rc.cos[k] = 2.0 * a.re;
            rc.sin[k] = -2.0 * a.im;
        }
        Ok(rc)
    }

    /// Largest coefficient magnitude of `self − other`.
    pub fn max_coeff_diff(&self, other: &TrigPoly) -> f64 {
        (self - other).coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest vertex-wise magnitude of `self − other`.
    pub fn max_vertex_diff(&self, other: &TrigPoly) -> f64 {
        (self - other).eval_all_vertices().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Pointwise product of two functions on the same N-gon.
pub fn trig_mul(f: &TrigPoly, g: &TrigPoly) -> Result<TrigPoly> {
    f.mul(g)
}

fn assert_same(a: &TrigPoly, b: &TrigPoly) {
    assert_eq!(a.n, b.n, "TrigPoly modulus mismatch");
}

impl Add for &TrigPoly {
    type Output = TrigPoly;

    /// Panics if the moduli differ.
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        assert_same(self, rhs);
        let mut out = self.clone();
        for (&k, &c) in &rhs.coeffs {
            out.add_term(k as i64, c);
        }
        out
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;

    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        assert_same(self, rhs);
        let mut out = self.clone();
        for (&k, &c) in &rhs.coeffs {
            out.add_term(k as i64, -c);
        }
        out
    }
}

impl Mul<f64> for &TrigPoly {
    type Output = TrigPoly;

    fn mul(self, rhs: f64) -> TrigPoly {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

impl Mul for &TrigPoly {
    type Output = TrigPoly;

    /// Panics if the moduli differ; see [`trig_mul`] for the checked form.
    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        TrigPoly::mul(self, rhs).expect("TrigPoly modulus mismatch")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    k: i64,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct TrigPolyRepr {
    n: usize,
    coeffs: Vec<TermRepr>,
}

impl Serialize for TrigPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TrigPolyRepr {
            n: self.n,
            coeffs: self.terms().map(|(k, c)| TermRepr { k: k as i64, re: c.re, im: c.im }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TrigPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TrigPolyRepr::deserialize(d)?;
        check_modulus(repr.n).map_err(serde::de::Error::custom)?;
        Ok(TrigPoly::from_terms(repr.n, repr.coeffs.into_iter().map(|t| (t.k, Complex64::new(t.re, t.im)))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn cos_squared_on_hexagon() {
        let c1 = TrigPoly::cos(6, 1);
        let lhs = &c1 * &c1;
        let rhs = &(&TrigPoly::cos(6, 0) + &TrigPoly::cos(6, 2)) * 0.5;
        assert!(lhs.max_coeff_diff(&rhs) < 1e-15);
    }

    #[test]
    fn e_products_wrap_without_phase() {
        let p = &TrigPoly::e(12, 5) * &TrigPoly::e(12, 9);
        assert_eq!(p, TrigPoly::e(12, 2));
        assert!(p.max_vertex_diff(&TrigPoly::e(12, 2)) < 1e-12);
        assert_eq!(TrigPoly::e(7, 9), TrigPoly::e(7, 2));
    }

    #[test]
    fn conjugation_rules() {
        assert_eq!(TrigPoly::e(8, 1).conj(), TrigPoly::e(8, 7));
        let f = TrigPoly::cos(9, 2);
        assert!(f.conj().max_coeff_diff(&f) < 1e-15);
        let ie0 = TrigPoly::from_terms(5, [(0, Complex64::new(0.0, 1.0))]);
        assert_eq!(ie0.conj(), TrigPoly::from_terms(5, [(0, Complex64::new(0.0, -1.0))]));
    }

    #[test]
    fn vertex_evaluation() {
        let v = TrigPoly::cos(6, 1).eval_at_vertex(1).unwrap();
        assert_abs_diff_eq!(v.re, 3f64.sqrt() / 2.0, epsilon = 1e-15);
        let e2 = TrigPoly::e(4, 2);
        let vals: Vec<f64> = e2.eval_all_vertices().iter().map(|z| z.re).collect();
        for (i, v) in vals.iter().enumerate() {
            let expected = if i % 2 == 0 { 1.0 } else { -1.0 };
            assert_abs_diff_eq!(*v, expected, epsilon = 1e-15);
        }
        assert!(matches!(e2.eval_at_vertex(0), Err(Error::VertexOutOfRange { .. })));
        assert!(matches!(e2.eval_at_vertex(5), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn real_basis_conversion() {
        let one = TrigPoly::constant(10, 1.0).to_real_basis(1e-12).unwrap();
        assert_eq!(one.cos[0], 1.0);
        assert!(one.cos[1..].iter().chain(&one.sin).all(|&c| c == 0.0));

        let c3 = TrigPoly::cos(6, 3);
        assert!(c3.num_terms() == 0 || c3.terms().all(|(_, c)| c.norm() < 1e-15));
        let rc = c3.to_real_basis(1e-12).unwrap();
        assert!(rc.cos.iter().chain(&rc.sin).all(|c| c.abs() < 1e-15));

        let s3 = TrigPoly::sin(6, 3).to_real_basis(1e-12).unwrap();
        assert_abs_diff_eq!(s3.sin[3], 1.0, epsilon = 1e-15);

        let bad = TrigPoly::from_terms(5, [(1, Complex64::new(1.0, 0.0))]);
        assert!(matches!(bad.to_real_basis(1e-9), Err(Error::NotRealValued(_))));
    }

    #[test]
    fn cosine_from_partner_combination() {
        let n = 11;
        for k in 1..=5i64 {
            let p = TrigPoly::from_terms(
                n,
                [(k, half_root(k, n) * 0.5), (-k, half_root(-k, n) * 0.5)],
            );
            for i in 1..=n {
                let v = p.eval_at_vertex(i).unwrap();
                assert_abs_diff_eq!(v.re, (k as f64 * vertex_angle(n, i)).cos(), epsilon = 1e-13);
                assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn rotation() {
        let n = 9;
        let ell = &TrigPoly::constant(n, (PI / n as f64).cos()) - &TrigPoly::cos(n, 1);
        assert_eq!(ell.rotate(0), ell);
        assert!(ell.rotate(1).eval_at_vertex(2).unwrap().norm() < 1e-15);
        assert!(ell.rotate(n as i64).max_coeff_diff(&ell) < 1e-15);
        let a = ell.rotate(3).rotate(4);
        assert!(a.max_coeff_diff(&ell.rotate(7)) < 1e-15);
    }

    #[test]
    fn distances_and_in_diameter() {
        let f = |k| Frequency::new(k, 12);
        assert_eq!(cycle_distance(f(1), f(11)).unwrap(), 2);
        assert_eq!(cycle_distance(f(4), f(4)).unwrap(), 0);
        assert_eq!(cycle_distance(Frequency::new(0, 20), Frequency::new(7, 20)).unwrap(), 7);
        assert!(cycle_distance(f(1), Frequency::new(1, 13)).is_err());

        assert_eq!(FrequencySet::new(12, [0, 1, 3]).in_diameter().unwrap(), 3);
        assert_eq!(FrequencySet::new(12, [5]).in_diameter().unwrap(), 0);
        assert_eq!(FrequencySet::new(12, [0, 1, 3, 4, 6, 7, 8]).in_diameter().unwrap(), 8);
        assert_eq!(FrequencySet::new(12, 0..12).in_diameter().unwrap(), 11);
        assert!(matches!(FrequencySet::empty(12).in_diameter(), Err(Error::EmptySet)));
    }

    #[test]
    fn basis_labels() {
        assert_eq!(
            real_basis(&[0, 1, 3], 6).unwrap(),
            vec![RealBasisFn::Cos(0), RealBasisFn::Cos(1), RealBasisFn::Sin(1), RealBasisFn::Sin(3)]
        );
        assert!(real_basis(&[4], 6).is_err());
        assert_eq!("s12".parse::<RealBasisFn>().unwrap(), RealBasisFn::Sin(12));
        assert_eq!(RealBasisFn::Cos(3).to_string(), "c3");
    }

    #[test]
    fn json_round_trip() {
        let p = &TrigPoly::cos(7, 2) + &TrigPoly::e(7, 3);
        let s = serde_json::to_string(&p).unwrap();
        let back: TrigPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<TrigPoly>(r#"{"n":2,"coeffs":[]}"#).is_err());
    }
}
