//! JSON descriptors and element literals shared by every subcommand.
//!
//! Ring descriptors:
//!   {"kind":"gfp","p":7}
//!   {"kind":"zmod","p":3,"k":2}
//!   {"kind":"zloc","p":5}
//!   {"kind":"dual","p":7}
//!   {"kind":"sqrt-ext","base":{...},"r":"2"}
//!
//! Element literals: decimal strings for residues, "a/b" fractions for
//! Z_(p), "a+b*eps" pairs for dual numbers, "(A)+(B)*sqrt" pairs for
//! quadratic extensions.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use chevalley_core::ring::{
    self, adjoin_sqrt, dual_pair, ext_parts, frac_parts, kind_name, pair_parts, zlocal_fraction,
    Ring, RingCtx, RingKind, RingOps, RingValue,
};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RingDescriptor {
    Gfp { p: u64 },
    Zmod { p: u64, k: u32 },
    Zloc { p: u64 },
    Dual { p: u64 },
    SqrtExt { base: Box<RingDescriptor>, r: String },
}

impl RingDescriptor {
    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).context("invalid ring descriptor JSON")
    }

    pub fn to_ring(&self) -> Result<Ring> {
        Ok(match self {
            RingDescriptor::Gfp { p } => RingCtx::prime_field(*p)?,
            RingDescriptor::Zmod { p, k } => RingCtx::zmod(*p, *k)?,
            RingDescriptor::Zloc { p } => RingCtx::zlocal(*p)?,
            RingDescriptor::Dual { p } => RingCtx::dual(*p)?,
            RingDescriptor::SqrtExt { base, r } => {
                let base_ring = base.to_ring()?;
                let rv = parse_element(&base_ring, r)?;
                adjoin_sqrt(&base_ring, &rv)?
            }
        })
    }

    pub fn from_ring(ring: &Ring) -> Self {
        match ring.kind() {
            RingKind::PrimeField { p } => RingDescriptor::Gfp { p: *p },
            RingKind::ZMod { p, k } => RingDescriptor::Zmod { p: *p, k: *k },
            RingKind::ZLocal { p } => RingDescriptor::Zloc { p: *p },
            RingKind::Dual { p } => RingDescriptor::Dual { p: *p },
            RingKind::SqrtExt { base, r } => RingDescriptor::SqrtExt {
                base: Box::new(RingDescriptor::from_ring(base)),
                r: format_element(r),
            },
        }
    }
}

/// Canonical literal for an element, parseable by [`parse_element`].
pub fn format_element(v: &RingValue) -> String {
    match v.ctx().kind() {
        RingKind::PrimeField { .. } | RingKind::ZMod { .. } => v.to_string(),
        RingKind::ZLocal { .. } => {
            let (n, d) = frac_parts(v).expect("zloc value");
            if d == "1" {
                n
            } else {
                format!("{n}/{d}")
            }
        }
        RingKind::Dual { .. } => {
            let (a, b) = pair_parts(v).expect("dual value");
            format!("{a}+{b}*eps")
        }
        RingKind::SqrtExt { .. } => {
            let (a, b) = pair_parts(v).expect("ext value");
            format!("({})+({})*sqrt", format_element(&a), format_element(&b))
        }
    }
}

/// Parse a literal in the given context.
pub fn parse_element(ctx: &Ring, s: &str) -> Result<RingValue> {
    let s = s.trim();
    match ctx.kind() {
        RingKind::PrimeField { .. } | RingKind::ZMod { .. } => {
            let n: i64 = s.parse().with_context(|| format!("bad residue literal {s:?}"))?;
            Ok(ctx.from_i64(n))
        }
        RingKind::ZLocal { .. } => {
            if let Some((n, d)) = s.split_once('/') {
                let n: i64 = n.trim().parse().context("bad numerator")?;
                let d: i64 = d.trim().parse().context("bad denominator")?;
                Ok(zlocal_fraction(ctx, n, d)?)
            } else {
                let n: i64 = s.parse().with_context(|| format!("bad integer literal {s:?}"))?;
                Ok(ctx.from_i64(n))
            }
        }
        RingKind::Dual { .. } => {
            if let Some(rest) = s.strip_suffix("*eps") {
                let (a, b) = rest
                    .rsplit_once('+')
                    .ok_or_else(|| anyhow!("dual literal must be a+b*eps, got {s:?}"))?;
                Ok(dual_pair(ctx, a.trim().parse()?, b.trim().parse()?)?)
            } else {
                let n: i64 = s.parse().with_context(|| format!("bad dual literal {s:?}"))?;
                Ok(ctx.from_i64(n))
            }
        }
        RingKind::SqrtExt { base, .. } => {
            if let Some(rest) = s.strip_suffix("*sqrt") {
                // "(A)+(B)" with parenthesized base literals
                let rest = rest.trim();
                let (a_part, b_part) = rest
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|r| r.split_once(")+("))
                    .ok_or_else(|| anyhow!("ext literal must be (A)+(B)*sqrt, got {s:?}"))?;
                let a = parse_element(base, a_part)?;
                let b = parse_element(base, b_part)?;
                Ok(ext_parts(ctx, a, b)?)
            } else if let Ok(n) = s.parse::<i64>() {
                Ok(ctx.from_i64(n))
            } else {
                bail!("ext literal must be (A)+(B)*sqrt or an integer, got {s:?}")
            }
        }
    }
}

/// The matrix wire format: {"ring": ..., "rank": l, "rows": [[...]]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub ring: RingDescriptor,
    pub rank: usize,
    pub rows: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_mat(rank: usize, m: &chevalley_core::group::RMat) -> Self {
        let rows = (0..m.n())
            .map(|r| (0..m.n()).map(|c| format_element(m.get(r, c))).collect())
            .collect();
        MatrixJson { ring: RingDescriptor::from_ring(m.ctx()), rank, rows }
    }

    pub fn to_mat(&self) -> Result<(Ring, chevalley_core::group::RMat)> {
        let ring = self.ring.to_ring()?;
        let n = self.rows.len();
        let mut m = chevalley_core::group::RMat::zero(&ring, n);
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != n {
                bail!("matrix rows must be square");
            }
            for (c, lit) in row.iter().enumerate() {
                m.set(r, c, parse_element(&ring, lit)?);
            }
        }
        Ok((ring, m))
    }
}

/// Integer matrix output (for the adjoint matrices).
pub fn int_matrix_rows(m: &chevalley_core::algebra::IMat) -> Vec<Vec<i64>> {
    (0..m.n()).map(|r| (0..m.n()).map(|c| m.get(r, c)).collect()).collect()
}

/// The coefficient wire format of the decomposition lemma.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffsJson {
    pub lambda: String,
    pub s: Vec<String>,
    pub t: Vec<String>,
    pub u: Vec<String>,
}

impl CoeffsJson {
    pub fn from_coeffs(c: &chevalley_core::bruhat::RadicalCoefficients) -> Self {
        CoeffsJson {
            lambda: format_element(&c.lambda),
            s: c.s.iter().map(format_element).collect(),
            t: c.t.iter().map(format_element).collect(),
            u: c.u.iter().map(format_element).collect(),
        }
    }

    pub fn to_coeffs(
        &self,
        ring: &Ring,
    ) -> Result<chevalley_core::bruhat::RadicalCoefficients> {
        let pe = |s: &String| parse_element(ring, s);
        Ok(chevalley_core::bruhat::RadicalCoefficients {
            lambda: pe(&self.lambda)?,
            s: self.s.iter().map(pe).collect::<Result<_>>()?,
            t: self.t.iter().map(pe).collect::<Result<_>>()?,
            u: self.u.iter().map(pe).collect::<Result<_>>()?,
        })
    }
}

/// Accept either a paper label ("a4", "-a4") or a coordinate
/// expression ("e1-e2", "-e1+e3", "e2").
pub fn parse_root(
    rs: &chevalley_core::roots::RootSystem,
    s: &str,
) -> Result<chevalley_core::roots::SignedRoot> {
    let s = s.trim();
    if let Some(idx) = label_to_signed(rs, s) {
        return Ok(idx);
    }
    let mut coords = vec![0i32; rs.rank()];
    let mut rest = s;
    let mut sign = 1i32;
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix('+') {
            sign = 1;
            rest = r;
            continue;
        }
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
            continue;
        }
        let r = rest
            .strip_prefix('e')
            .ok_or_else(|| anyhow!("bad root expression {s:?}"))?;
        let digits: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            bail!("bad root expression {s:?}");
        }
        let k: usize = digits.parse()?;
        if k < 1 || k > rs.rank() {
            bail!("coordinate e{k} out of range for rank {}", rs.rank());
        }
        coords[k - 1] += sign;
        rest = &r[digits.len()..];
        sign = 1;
    }
    let root = chevalley_core::roots::Root::new(coords);
    rs.signed_index_of(&root)
        .ok_or_else(|| anyhow!("{s:?} is not a root of B_{}", rs.rank()))
}

fn label_to_signed(
    rs: &chevalley_core::roots::RootSystem,
    s: &str,
) -> Option<chevalley_core::roots::SignedRoot> {
    let (neg, rest) = match s.strip_prefix("-a") {
        Some(r) => (true, r),
        None => (false, s.strip_prefix('a')?),
    };
    let i: usize = rest.parse().ok()?;
    if i >= 1 && i <= rs.num_positive() {
        Some(chevalley_core::roots::SignedRoot { idx: i - 1, neg })
    } else {
        None
    }
}

pub fn ring_name(ring: &Ring) -> &'static str {
    kind_name(ring)
}

pub use ring::enumerate;
