//! Embedded transcriptions of the explicit rank-3 matrices, diffed
//! against the generated objects.
//!
//! Each fixture carries the verbatim transcription and a list of
//! corrections; every correction replaces one printed term and cites
//! the oracle computation that forces it. The checker applies the
//! corrections, builds the expected integer matrix, and compares
//! entrywise with the generated w / ad / h matrix. A fixture passes
//! only on an exact match; verbatim-matching fixtures have an empty
//! correction list.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use chevalley_core::algebra::{Chevalley, IMat};

pub const FIXTURES_B3: &str = include_str!("../data/fixtures_b3.json");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixtureFile {
    pub rank: usize,
    pub basis_note: String,
    pub fixtures: Vec<Fixture>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub generator: GeneratorRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verbatim_terms: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verbatim_diag: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_positions: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block: Option<Vec<Vec<i64>>>,
    pub corrections: Vec<Correction>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorRef {
    W { simple: usize },
    Ad { simple: usize },
    HNeg1 { simple: usize },
    Wtilde { simple: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Correction {
    pub from: String,
    pub to: String,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub matches: bool,
    pub corrections_applied: usize,
    pub verbatim_deviations: Vec<String>,
}

pub fn load() -> Result<FixtureFile> {
    serde_json::from_str(FIXTURES_B3).context("embedded fixture file is well-formed")
}

/// Parse one term like "+2e[a5,a2]" into (row, col, value).
fn parse_term(ch: &Chevalley, term: &str) -> Result<(usize, usize, i64)> {
    let t = term.trim();
    let (coeff_str, rest) = t
        .split_once("e[")
        .ok_or_else(|| anyhow!("bad term {term:?}"))?;
    let coeff: i64 = match coeff_str {
        "" | "+" => 1,
        "-" => -1,
        s => s.parse().with_context(|| format!("bad coefficient in {term:?}"))?,
    };
    let inner = rest
        .strip_suffix(']')
        .ok_or_else(|| anyhow!("bad term {term:?}"))?;
    let (row_l, col_l) = inner
        .split_once(',')
        .ok_or_else(|| anyhow!("bad term {term:?}"))?;
    let row = ch
        .basis
        .parse_label(row_l.trim())
        .ok_or_else(|| anyhow!("unknown label {row_l:?}"))?;
    let col = ch
        .basis
        .parse_label(col_l.trim())
        .ok_or_else(|| anyhow!("unknown label {col_l:?}"))?;
    Ok((row, col, coeff))
}

fn terms_to_matrix(ch: &Chevalley, terms: &[String]) -> Result<IMat> {
    let mut m = IMat::zero(ch.basis.n);
    for t in terms {
        let (r, c, v) = parse_term(ch, t)?;
        m.set(r, c, m.get(r, c) + v);
    }
    Ok(m)
}

fn generated(ch: &Chevalley, gen: &GeneratorRef) -> IMat {
    match gen {
        GeneratorRef::W { simple } => ch.w_int(ch.rs().simple_signed(*simple)),
        GeneratorRef::Ad { simple } => ch.ad_matrix(ch.rs().simple_signed(*simple)).clone(),
        GeneratorRef::HNeg1 { simple } => ch.h_int_m1(ch.rs().simple_signed(*simple)),
        GeneratorRef::Wtilde { simple } => ch.weyl_cartan_block(*simple),
    }
}

/// Check one fixture; the report lists the corrected terms (the
/// deviations of the print from the oracle).
pub fn check_fixture(ch: &Chevalley, fx: &Fixture) -> Result<FixtureReport> {
    let got = generated(ch, &fx.generator);
    let expected = if let Some(diag) = &fx.verbatim_diag {
        if !fx.corrections.is_empty() {
            bail!("diagonal fixtures carry no corrections");
        }
        let mut m = IMat::zero(ch.basis.n);
        if diag.len() != ch.basis.n {
            bail!("{}: diagonal length mismatch", fx.name);
        }
        for (i, v) in diag.iter().enumerate() {
            m.set(i, i, *v);
        }
        m
    } else if let Some(block) = &fx.block {
        if !fx.corrections.is_empty() {
            bail!("block fixtures carry no corrections");
        }
        let pos = fx
            .block_positions
            .as_ref()
            .ok_or_else(|| anyhow!("{}: block fixture needs positions", fx.name))?;
        // the w-tilde blocks are identity outside the listed positions
        let l = ch.rank();
        let mut m = IMat::identity(l);
        for (bi, row) in block.iter().enumerate() {
            for (bj, v) in row.iter().enumerate() {
                m.set(pos[bi] - 1, pos[bj] - 1, *v);
            }
        }
        m
    } else if let Some(terms) = &fx.verbatim_terms {
        let mut corrected = terms.clone();
        for corr in &fx.corrections {
            let at = corrected
                .iter()
                .position(|t| t == &corr.from)
                .ok_or_else(|| anyhow!("{}: correction source {:?} not found", fx.name, corr.from))?;
            corrected[at] = corr.to.clone();
        }
        terms_to_matrix(ch, &corrected)?
    } else {
        bail!("{}: fixture has no content", fx.name);
    };
    Ok(FixtureReport {
        name: fx.name.clone(),
        matches: got == expected,
        corrections_applied: fx.corrections.len(),
        verbatim_deviations: fx
            .corrections
            .iter()
            .map(|c| format!("{} -> {} ({})", c.from, c.to, c.note))
            .collect(),
    })
}

/// Check every fixture of the embedded rank-3 file.
pub fn check_all() -> Result<Vec<FixtureReport>> {
    let file = load()?;
    let ch = Chevalley::new(file.rank)?;
    file.fixtures.iter().map(|fx| check_fixture(&ch, fx)).collect()
}
