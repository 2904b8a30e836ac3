//! Colored Young diagrams of Jordan types.
//!
//! Rows are printed top to bottom, so the first line is row `s` (a single
//! box `α_s`) and the last line is the bottom row
//! `α_s((1-s)ℓ) … α_2(-ℓ) α_1`.

use std::str::FromStr;

use num_bigint::BigInt;

use super::JordanType;
use crate::error::Error;
use crate::ktheory::CurveModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramFormat {
    Text,
    /// A `ytableau` environment.
    Tex,
}

impl FromStr for DiagramFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "text" => Ok(DiagramFormat::Text),
            "tex" => Ok(DiagramFormat::Tex),
            other => Err(Error::Parse(format!("unknown diagram format `{other}`"))),
        }
    }
}

/// Lays out `label(i, j)` for rows `i = s..=1` and columns `j = s..=i`.
fn layout(s: usize, format: DiagramFormat, label: impl Fn(usize, usize) -> String) -> String {
    let (sep, eol) = match format {
        DiagramFormat::Text => (" ", "\n"),
        DiagramFormat::Tex => (" & ", " \\\\\n"),
    };
    let rows: Vec<String> = (1..=s)
        .rev()
        .map(|i| {
            (i..=s)
                .rev()
                .map(|j| label(i, j))
                .collect::<Vec<_>>()
                .join(sep)
        })
        .collect();
    match format {
        DiagramFormat::Text => {
            let mut out = rows.join(eol);
            out.push('\n');
            out
        }
        DiagramFormat::Tex => format!(
            "\\begin{{ytableau}}\n{}\n\\end{{ytableau}}\n",
            rows.join(eol)
        ),
    }
}

/// Diagram of `t` with every box labeled by its numerical class.
pub fn render_young(t: &JordanType, curve: &CurveModel, format: DiagramFormat) -> String {
    let ell = curve.canonical_degree();
    layout(t.len(), format, |i, j| {
        let shift = BigInt::from(i as i64 - j as i64) * &ell;
        let c = t.entries()[j - 1].twist(&shift);
        format!("({},{})", c.rank, c.degree)
    })
}

/// Diagram of a generic length-`s` type with symbolic labels `α_j(-kℓ)`.
pub fn render_young_symbolic(s: usize, format: DiagramFormat) -> String {
    layout(s, format, |i, j| {
        let k = j - i;
        match format {
            DiagramFormat::Text => match k {
                0 => format!("α{j}"),
                1 => format!("α{j}(-ℓ)"),
                _ => format!("α{j}(-{k}ℓ)"),
            },
            DiagramFormat::Tex => match k {
                0 => format!("\\alpha_{j}"),
                1 => format!("\\alpha_{j}(-\\ell)"),
                _ => format!("\\alpha_{j}(-{k}\\ell)"),
            },
        }
    })
}
