//! Symbolic moment matrices over the real cosine/sine basis.
//!
//! Entries are affine forms in `u_k = z(c_k)` and `v_k = z(s_k)` with exact
//! rational coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trigspace::{check_modulus, real_basis, vertex_angle, FrequencySet, RealBasisFn, TrigPoly};

pub type Rat = Rational64;

/// `u_k` or `v_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U(usize),
    V(usize),
}

impl Var {
    pub fn of(f: RealBasisFn) -> Var {
        match f {
            RealBasisFn::Cos(k) => Var::U(k),
            RealBasisFn::Sin(k) => Var::V(k),
        }
    }

    pub fn frequency(&self) -> usize {
        match *self {
            Var::U(k) | Var::V(k) => k,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::U(k) => write!(f, "u{k}"),
            Var::V(k) => write!(f, "v{k}"),
        }
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Var> {
        let bad = || Error::Parse(format!("bad variable {s:?}"));
        let rest = s.get(1..).ok_or_else(bad)?.trim_start_matches('_');
        let k: usize = rest.parse().map_err(|_| bad())?;
        match s.as_bytes().first() {
            Some(b'u') => Ok(Var::U(k)),
            Some(b'v') => Ok(Var::V(k)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Var {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Var {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Values for the moment variables.
pub type Assignment = BTreeMap<Var, f64>;

/// Assignment of the evaluation functional at vertex `i`:
/// `u_k = cos(kθ_i)`, `v_k = sin(kθ_i)` for `0 ≤ k ≤ ⌊N/2⌋`.
pub fn vertex_assignment(n: usize, i: usize) -> Assignment {
    let t = vertex_angle(n, i);
    let mut a = Assignment::new();
    for k in 0..=n / 2 {
        a.insert(Var::U(k), (k as f64 * t).cos());
        a.insert(Var::V(k), (k as f64 * t).sin());
    }
    a
}

/// Average of all vertex functionals: `u_0 = 1`, everything else 0.
pub fn barycenter_assignment(n: usize) -> Assignment {
    let mut a = Assignment::new();
    for k in 0..=n / 2 {
        a.insert(Var::U(k), if k == 0 { 1.0 } else { 0.0 });
        a.insert(Var::V(k), 0.0);
    }
    a
}

/// `c + Σ α_k u_k + Σ β_k v_k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearFunctionalExpr {
    pub constant: Rat,
    pub u: BTreeMap<usize, Rat>,
    pub v: BTreeMap<usize, Rat>,
}

impl LinearFunctionalExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        LinearFunctionalExpr { constant: c, ..Self::default() }
    }

    pub fn var(x: Var) -> Self {
        let mut e = Self::zero();
        e.add_term(x, Rat::one());
        e
    }

    pub fn add_term(&mut self, x: Var, c: Rat) {
        let map = match x {
            Var::U(_) => &mut self.u,
            Var::V(_) => &mut self.v,
        };
        let k = x.frequency();
        let entry = map.entry(k).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            map.remove(&k);
        }
    }

    pub fn coeff(&self, x: Var) -> Rat {
        let map = match x {
            Var::U(_) => &self.u,
            Var::V(_) => &self.v,
        };
        map.get(&x.frequency()).copied().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Var, Rat)> + '_ {
        let us = self.u.iter().map(|(&k, &c)| (Var::U(k), c));
        let vs = self.v.iter().map(|(&k, &c)| (Var::V(k), c));
        us.chain(vs)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.u.is_empty() && self.v.is_empty()
    }

    pub fn scale(&self, s: Rat) -> Self {
        let mut out = Self::constant(self.constant * s);
        for (x, c) in self.terms() {
            out.add_term(x, c * s);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant += other.constant;
        for (x, c) in other.terms() {
            out.add_term(x, c);
        }
        out
    }

    /// Replaces `x` by the constant `value`.
    pub fn substitute(&self, x: Var, value: Rat) -> Self {
        let mut out = self.clone();
        let c = out.coeff(x);
        if !c.is_zero() {
            out.add_term(x, -c);
            out.constant += c * value;
        }
        out
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms().map(|(x, _)| x).collect()
    }

    pub fn eval(&self, a: &Assignment) -> Result<f64> {
        let mut acc = rat_to_f64(self.constant);
        for (x, c) in self.terms() {
            let v = a.get(&x).ok_or_else(|| Error::MissingVariable(x.to_string()))?;
            acc += rat_to_f64(c) * v;
        }
        Ok(acc)
    }
}

pub fn rat_to_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Prints with a common denominator, e.g. `(u0 + u2)/2`, `-v1 + v3`, `v2/2`.
impl fmt::Display for LinearFunctionalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(Option<Var>, Rat)> = Vec::new();
        if !self.constant.is_zero() {
            parts.push((None, self.constant));
        }
        parts.extend(self.terms().map(|(x, c)| (Some(x), c)));
        if parts.is_empty() {
            return f.write_str("0");
        }
        let d = parts.iter().fold(1i64, |acc, (_, c)| acc.lcm(c.denom()));
        let mut s = String::new();
        for (i, (x, c)) in parts.iter().enumerate() {
            let num = (*c * Rat::from_integer(d)).to_integer();
            let mag = num.abs();
            if i == 0 {
                if num < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if num < 0 { " - " } else { " + " });
            }
            match x {
                None => s.push_str(&mag.to_string()),
                Some(x) if mag == 1 => s.push_str(&x.to_string()),
                Some(x) => s.push_str(&format!("{mag}{x}")),
            }
        }
        if d == 1 {
            f.write_str(&s)
        } else if parts.len() == 1 {
            write!(f, "{s}/{d}")
        } else {
            write!(f, "({s})/{d}")
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ExprRepr {
    #[serde(rename = "const")]
    constant: String,
    u: BTreeMap<usize, String>,
    v: BTreeMap<usize, String>,
}

fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

impl Serialize for LinearFunctionalExpr {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ExprRepr {
            constant: self.constant.to_string(),
            u: self.u.iter().map(|(&k, c)| (k, c.to_string())).collect(),
            v: self.v.iter().map(|(&k, c)| (k, c.to_string())).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for LinearFunctionalExpr {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = ExprRepr::deserialize(de)?;
        let mut e = LinearFunctionalExpr::constant(parse_rat(&r.constant).map_err(D::Error::custom)?);
        for (k, c) in r.u {
            e.add_term(Var::U(k), parse_rat(&c).map_err(D::Error::custom)?);
        }
        for (k, c) in r.v {
            e.add_term(Var::V(k), parse_rat(&c).map_err(D::Error::custom)?);
        }
        Ok(e)
    }
}

/// A real function as an exact combination of `c_k, s_k`, `0 ≤ k ≤ ⌊N/2⌋`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RealExpr {
    pub terms: BTreeMap<RealBasisFn, Rat>,
}

impl RealExpr {
    fn add(&mut self, f: RealBasisFn, c: Rat) {
        let entry = self.terms.entry(f).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&f);
        }
    }

    /// Adds `c · (c_m or s_m)` for an arbitrary integer index `m`.
    fn add_signed(&mut self, cos: bool, m: i64, c: Rat, n: usize) {
        if let Some((f, sign)) = canonical(cos, m, n) {
            self.add(f, c * Rat::from_integer(sign));
        }
    }

    pub fn to_trigpoly(&self, n: usize) -> TrigPoly {
        self.terms
            .iter()
            .fold(TrigPoly::zero(n), |acc, (&f, &c)| &acc + &(&TrigPoly::basis_fn(n, f) * rat_to_f64(c)))
    }

    /// Replaces `c_k → u_k`, `s_k → v_k`.
    pub fn to_moment_expr(&self) -> LinearFunctionalExpr {
        let mut e = LinearFunctionalExpr::zero();
        for (&f, &c) in &self.terms {
            e.add_term(Var::of(f), c);
        }
        e
    }
}

impl fmt::Display for RealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.to_moment_expr();
        let s = e.to_string().replace('u', "c").replace('v', "s");
        f.write_str(&s)
    }
}

/// Canonical form of `c_m` / `s_m` on the N-gon as `sign · f` with
/// `f` a nonvanishing basis function, or `None` if it vanishes.
pub fn canonical(cos: bool, m: i64, n: usize) -> Option<(RealBasisFn, i64)> {
    let two_n = 2 * n as i64;
    let mut r = m.rem_euclid(two_n);
    let mut sign = 1;
    // c_{k+N} = −c_k, s_{k+N} = −s_k
    if r >= n as i64 {
        r -= n as i64;
        sign = -sign;
    }
    // c_{N−k} = −c_k, s_{N−k} = s_k
    if 2 * r > n as i64 {
        r = n as i64 - r;
        if cos {
            sign = -sign;
        }
    }
    let k = r as usize;
    let f = if cos { RealBasisFn::Cos(k) } else { RealBasisFn::Sin(k) };
    if f.vanishes(n) {
        None
    } else {
        Some((f, sign))
    }
}

/// Exact product of two basis functions.
pub fn basis_product(f: RealBasisFn, g: RealBasisFn, n: usize) -> RealExpr {
    let half = Rat::new(1, 2);
    let mut e = RealExpr::default();
    let (a, b) = (f.frequency() as i64, g.frequency() as i64);
    match (f, g) {
        (RealBasisFn::Cos(_), RealBasisFn::Cos(_)) => {
            e.add_signed(true, a + b, half, n);
            e.add_signed(true, a - b, half, n);
        }
        (RealBasisFn::Sin(_), RealBasisFn::Sin(_)) => {
            e.add_signed(true, a - b, half, n);
            e.add_signed(true, a + b, -half, n);
        }
        (RealBasisFn::Cos(_), RealBasisFn::Sin(_)) => {
            e.add_signed(false, a + b, half, n);
            e.add_signed(false, a - b, -half, n);
        }
        (RealBasisFn::Sin(_), RealBasisFn::Cos(_)) => {
            e.add_signed(false, a + b, half, n);
            e.add_signed(false, a - b, half, n);
        }
    }
    e
}

fn checked_basis(k_set: &FrequencySet, n: usize) -> Result<Vec<RealBasisFn>> {
    check_modulus(n)?;
    if k_set.modulus() != n {
        return Err(Error::ModulusMismatch(n, k_set.modulus()));
    }
    real_basis(&k_set.to_vec(), n)
}

/// Pairwise products of the real basis of `⊕_{k∈K} T_k(N)`.
pub fn product_table(k_set: &FrequencySet, n: usize) -> Result<(Vec<RealBasisFn>, Vec<Vec<RealExpr>>)> {
    let basis = checked_basis(k_set, n)?;
    let table = basis
        .iter()
        .map(|&f| basis.iter().map(|&g| basis_product(f, g, n)).collect())
        .collect();
    Ok((basis, table))
}

/// `M_V`: entry `(a, b)` is the product `f_a f_b` with `c_m ↦ u_m`, `s_m ↦ v_m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentMatrixSymbolic {
    #[serde(with = "basis_labels")]
    pub basis: Vec<RealBasisFn>,
    pub entries: Vec<Vec<LinearFunctionalExpr>>,
}

mod basis_labels {
    use super::RealBasisFn;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(b: &[RealBasisFn], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(b.iter().map(|f| f.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<RealBasisFn>, D::Error> {
        let labels = Vec::<String>::deserialize(d)?;
        labels
            .iter()
            .map(|l| l.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

pub fn moment_matrix(k_set: &FrequencySet, n: usize) -> Result<MomentMatrixSymbolic> {
    let (basis, table) = product_table(k_set, n)?;
    let entries = table
        .iter()
        .map(|row| row.iter().map(RealExpr::to_moment_expr).collect())
        .collect();
    Ok(MomentMatrixSymbolic { basis, entries })
}

impl MomentMatrixSymbolic {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn map_entries(&self, f: impl Fn(&LinearFunctionalExpr) -> LinearFunctionalExpr) -> Self {
        MomentMatrixSymbolic {
            basis: self.basis.clone(),
            entries: self.entries.iter().map(|row| row.iter().map(&f).collect()).collect(),
        }
    }

    /// Normalization `z(c_0) = 1`.
    pub fn with_u0_one(&self) -> Self {
        self.map_entries(|e| e.substitute(Var::U(0), Rat::one()))
    }

    pub fn scale(&self, s: Rat) -> Self {
        self.map_entries(|e| e.scale(s))
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.entries.iter().flatten().flat_map(|e| e.variables()).collect()
    }

    pub fn instantiate(&self, a: &Assignment) -> Result<DMatrix<f64>> {
        let d = self.dim();
        let mut m = DMatrix::<f64>::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let v = self.entries[i][j].eval(a)?;
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        Ok(m)
    }

    /// Aligned text rendering with basis labels as headers.
    pub fn pretty(&self) -> String {
        let cells: Vec<Vec<String>> =
            self.entries.iter().map(|row| row.iter().map(|e| e.to_string()).collect()).collect();
        let labels: Vec<String> = self.basis.iter().map(|f| f.to_string()).collect();
        let label_w = labels.iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.dim())
            .map(|j| cells.iter().map(|r| r[j].len()).chain([labels[j].len()]).max().unwrap_or(0))
            .collect();
        let mut out = format!("{:label_w$}", "");
        for (j, l) in labels.iter().enumerate() {
            out.push_str(&format!("  {:>w$}", l, w = widths[j]));
        }
        out.push('\n');
        for (i, row) in cells.iter().enumerate() {
            out.push_str(&format!("{:label_w$}", labels[i]));
            for (j, c) in row.iter().enumerate() {
                out.push_str(&format!("  {:>w$}", c, w = widths[j]));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Parses an expression written like the pretty-printer output,
/// e.g. `(u0 + u2)/2`, `-v1 + v3`, `1`.
pub fn parse_expr(s: &str) -> Result<LinearFunctionalExpr> {
    let bad = || Error::Parse(format!("bad expression {s:?}"));
    let s = s.trim();
    let (body, denom) = match s.rsplit_once('/') {
        Some((b, d)) if !d.contains(|c: char| c.is_alphabetic()) => (b.trim(), parse_rat(d)?),
        _ => (s, Rat::one()),
    };
    let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
    let mut e = LinearFunctionalExpr::zero();
    let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    let normalized = compact.replace('-', " -").replace('+', " +");
    for tok in normalized.split_whitespace() {
        if tok == "+" || tok == "-" {
            return Err(bad());
        }
        let (sign, rest) = match tok.strip_prefix('-') {
            Some(r) => (-Rat::one(), r),
            None => (Rat::one(), tok.trim_start_matches('+')),
        };
        if rest.is_empty() {
            continue;
        }
        let split = rest.find(['u', 'v']).unwrap_or(rest.len());
        let (coef, var) = rest.split_at(split);
        let c = if coef.is_empty() { Rat::one() } else { parse_rat(coef)? };
        if var.is_empty() {
            e.constant += sign * c;
        } else {
            e.add_term(var.parse()?, sign * c);
        }
    }
    Ok(e.scale(Rat::one() / denom))
}
