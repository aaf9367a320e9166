//! SDPA sparse (`.dat-s`) export and import of lift descriptions.
//!
//! Convention: `Σ x_i F_i − F_0 ⪰ 0` with a zero objective, so `F_0` holds
//! the negated constant parts. Metadata needed to rebuild the symbolic
//! blocks rides along in `*` comment lines.

use std::fmt::Write as _;
use std::path::Path;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lift::{LiftBlock, LiftDescription, LiftScheme};
use crate::momentmap::{rat_to_f64, LinearFunctionalExpr, MomentMatrixSymbolic, Rat, Var};
use crate::trigspace::{FrequencySet, RealBasisFn};

/// Shortest decimal that round-trips through `f64`.
fn decimal(r: Rat) -> String {
    format!("{}", rat_to_f64(r))
}

/// Exact value of a plain decimal literal such as `-0.25` or `3`.
fn parse_decimal(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("bad SDPA value {s:?}"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if frac.len() > 18 {
        return Err(bad());
    }
    let den = 10i64.pow(frac.len() as u32);
    let int: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
    let frac: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let num = int.checked_mul(den).and_then(|x| x.checked_add(frac)).ok_or_else(bad)?;
    let r = Rat::new(num, den);
    Ok(if neg { -r } else { r })
}

pub fn export_sdpa_string(lift: &LiftDescription) -> String {
    let vars = lift.variables();
    let mut out = String::new();
    let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "* ngonlift {} lift", lift.scheme);
    let _ = writeln!(out, "* modulus {}", lift.n);
    let _ = writeln!(out, "* variables {}", names.join(" "));
    for (b, block) in lift.blocks.iter().enumerate() {
        let basis: Vec<String> = block.matrix.basis.iter().map(|f| f.to_string()).collect();
        let ks: Vec<String> = block.k_set.iter().map(|k| k.to_string()).collect();
        let _ = writeln!(out, "* block {} basis {} K {}", b + 1, basis.join(" "), ks.join(" "));
    }
    let _ = writeln!(out, "{}", vars.len());
    let _ = writeln!(out, "{}", lift.blocks.len());
    let sizes: Vec<String> = lift.block_sizes().iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "{}", sizes.join(" "));
    let _ = writeln!(out, "{}", vec!["0"; vars.len()].join(" "));
    for (b, block) in lift.blocks.iter().enumerate() {
        let d = block.size();
        for i in 0..d {
            for j in i..d {
                let e = &block.matrix.entries[i][j];
                if !e.constant.is_zero() {
                    let _ = writeln!(out, "0 {} {} {} {}", b + 1, i + 1, j + 1, decimal(-e.constant));
                }
                for (x, c) in e.terms() {
                    let m = vars.iter().position(|v| *v == x).expect("pool holds every entry variable") + 1;
                    let _ = writeln!(out, "{m} {} {} {} {}", b + 1, i + 1, j + 1, decimal(c));
                }
            }
        }
    }
    out
}

pub fn export_sdpa(lift: &LiftDescription, path: &Path) -> Result<()> {
    std::fs::write(path, export_sdpa_string(lift))?;
    Ok(())
}

struct BlockMeta {
    basis: Vec<RealBasisFn>,
    k_set: Vec<i64>,
}

pub fn import_sdpa_str(text: &str) -> Result<LiftDescription> {
    let bad = |m: &str| Error::Parse(format!("SDPA: {m}"));
    let mut scheme = None;
    let mut n = None;
    let mut vars: Vec<Var> = Vec::new();
    let mut metas: Vec<BlockMeta> = Vec::new();
    let mut data: Vec<&str> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(c) = line.strip_prefix('*').or_else(|| line.strip_prefix('"')) {
            let words: Vec<&str> = c.split_whitespace().collect();
            match words.as_slice() {
                ["ngonlift", s, "lift"] => scheme = Some(s.parse::<LiftScheme>()?),
                ["modulus", m] => n = Some(m.parse::<usize>().map_err(|_| bad("modulus"))?),
                ["variables", rest @ ..] => vars = rest.iter().map(|v| v.parse()).collect::<Result<_>>()?,
                ["block", _, "basis", rest @ ..] => {
                    let split = rest.iter().position(|w| *w == "K").ok_or_else(|| bad("block metadata"))?;
                    let basis = rest[..split].iter().map(|w| w.parse()).collect::<Result<_>>()?;
                    let k_set = rest[split + 1..]
                        .iter()
                        .map(|w| w.parse::<i64>().map_err(|_| bad("block K")))
                        .collect::<Result<_>>()?;
                    metas.push(BlockMeta { basis, k_set });
                }
                _ => {}
            }
        } else if !line.is_empty() {
            data.push(line);
        }
    }
    let n = n.ok_or_else(|| bad("missing modulus comment"))?;
    let scheme = scheme.ok_or_else(|| bad("missing scheme comment"))?;
    let field = |s: &str| s.split(|c: char| c.is_whitespace() || ",{}()".contains(c)).filter(|w| !w.is_empty()).map(str::to_owned).collect::<Vec<_>>();
    let mut it = data.into_iter();
    let m_dim: usize = it.next().and_then(|l| field(l).first()?.parse().ok()).ok_or_else(|| bad("mDIM"))?;
    let n_block: usize = it.next().and_then(|l| field(l).first()?.parse().ok()).ok_or_else(|| bad("nBLOCK"))?;
    let sizes: Vec<usize> = it
        .next()
        .map(|l| field(l).iter().map(|w| w.parse::<i64>().map(|v| v.unsigned_abs() as usize)).collect::<std::result::Result<_, _>>())
        .transpose()
        .map_err(|_| bad("blockStruct"))?
        .ok_or_else(|| bad("blockStruct"))?;
    it.next().ok_or_else(|| bad("objective"))?;
    if m_dim != vars.len() || n_block != metas.len() || sizes.len() != n_block {
        return Err(bad("header disagrees with metadata"));
    }
    let mut entries: Vec<Vec<Vec<LinearFunctionalExpr>>> =
        sizes.iter().map(|&d| vec![vec![LinearFunctionalExpr::zero(); d]; d]).collect();
    for line in it {
        let w = field(line);
        if w.len() != 5 {
            return Err(bad(&format!("bad entry line {line:?}")));
        }
        let idx = |s: &str| s.parse::<usize>().map_err(|_| bad(&format!("bad index in {line:?}")));
        let (mat, blk, i, j) = (idx(&w[0])?, idx(&w[1])?, idx(&w[2])?, idx(&w[3])?);
        let value = parse_decimal(&w[4])?;
        if blk == 0 || blk > n_block || i == 0 || j == 0 || i > sizes[blk - 1] || j > sizes[blk - 1] || mat > m_dim {
            return Err(bad(&format!("entry out of range {line:?}")));
        }
        let (i, j) = (i.min(j) - 1, i.max(j) - 1);
        let e = &mut entries[blk - 1][i][j];
        if mat == 0 {
            e.constant -= value;
        } else {
            e.add_term(vars[mat - 1], value);
        }
    }
    let mut blocks = Vec::with_capacity(n_block);
    for ((mut ent, meta), &d) in entries.into_iter().zip(metas).zip(&sizes) {
        if meta.basis.len() != d {
            return Err(bad("basis length disagrees with blockStruct"));
        }
        for i in 1..d {
            let (upper, lower) = ent.split_at_mut(i);
            for (j, row) in upper.iter().enumerate() {
                lower[0][j] = row[i].clone();
            }
        }
        blocks.push(LiftBlock {
            k_set: FrequencySet::new(n, meta.k_set),
            matrix: MomentMatrixSymbolic { basis: meta.basis, entries: ent },
        });
    }
    Ok(LiftDescription { n, scheme, blocks, projection: (Var::U(1), Var::V(1)) })
}

pub fn import_sdpa(path: &Path) -> Result<LiftDescription> {
    import_sdpa_str(&std::fs::read_to_string(path)?)
}

/// Distinct numeric coefficients appearing in the entry lines.
pub fn sdpa_values(text: &str) -> Result<Vec<Rat>> {
    let mut seen: Vec<Rat> = Vec::new();
    for line in text.lines().filter(|l| !l.trim_start().starts_with('*')).skip(4) {
        if let Some(v) = line.split_whitespace().nth(4) {
            let r = parse_decimal(v)?;
            if !seen.contains(&r) {
                seen.push(r);
            }
        }
    }
    seen.sort_by(|a, b| a.abs().cmp(&b.abs()).then(a.cmp(b)));
    Ok(seen)
}
