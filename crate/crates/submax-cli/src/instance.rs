//! Instance file loading: kind inference, parsing with line/field error
//! positions, checksums, and canonical re-serialization.

use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};
use submax::objectives::{CardinalityProfile, FacilityMatrix, ModularWeights, Objective};
use submax::SetFunction;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    /// Facility coverage matrix: CSV rows are customers, fields are locations.
    Facility,
    /// Additive weights: one non-negative value per line.
    Modular,
    /// Size-only profile: line i holds f(any set of size i); may be negative.
    Profile,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Facility => "facility",
            Kind::Modular => "modular",
            Kind::Profile => "profile",
        }
    }

    fn from_extension(path: &Path) -> Option<Kind> {
        match path.extension()?.to_str()? {
            "csv" => Some(Kind::Facility),
            "weights" => Some(Kind::Modular),
            "profile" => Some(Kind::Profile),
            _ => None,
        }
    }
}

pub struct Instance {
    pub path: String,
    pub kind: Kind,
    pub objective: Objective,
    pub checksum: String,
    /// Customer count; facility matrices only.
    pub customers: Option<usize>,
    pub ground: usize,
}

pub fn load(path: &Path, kind: Option<Kind>, header: bool) -> Result<Instance, Failure> {
    let shown = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|e| Failure::parse(format!("{shown}: {e}")))?;
    let checksum = format!("sha256:{:x}", Sha256::digest(&bytes));
    let text = std::str::from_utf8(&bytes)
        .map_err(|_| Failure::parse(format!("{shown}: not valid UTF-8")))?;
    let kind = match kind {
        Some(k) => k,
        None => Kind::from_extension(path).ok_or_else(|| {
            Failure::args(format!(
                "{shown}: cannot infer instance kind from the extension; pass --kind"
            ))
        })?,
    };
    let objective = parse_text(&shown, kind, header, text)?;
    let customers = match &objective {
        Objective::Facility(f) => Some(f.customers()),
        _ => None,
    };
    let ground = objective.ground_size();
    Ok(Instance {
        path: shown,
        kind,
        objective,
        checksum,
        customers,
        ground,
    })
}

/// Parse instance text of the given kind. `shown` prefixes error messages.
pub fn parse_text(
    shown: &str,
    kind: Kind,
    header: bool,
    text: &str,
) -> Result<Objective, Failure> {
    // Lines keep their 1-based file positions so errors point at the file,
    // not at a post-filtering index. Trailing blank lines are tolerated;
    // blank lines inside the data are not.
    let mut lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .collect();
    while lines.last().is_some_and(|(_, l)| l.trim().is_empty()) {
        lines.pop();
    }
    let data = match (header, lines.as_slice()) {
        (true, []) => return Err(Failure::parse(format!("{shown}: empty file"))),
        (true, rest) => &rest[1..],
        (false, rest) => rest,
    };
    if data.is_empty() {
        return Err(Failure::parse(format!("{shown}: no data rows")));
    }

    Ok(match kind {
        Kind::Facility => Objective::Facility(parse_matrix(shown, data)?),
        Kind::Modular => {
            let values = parse_column(shown, data, false)?;
            Objective::Modular(ModularWeights::new(values).map_err(Failure::from)?)
        }
        Kind::Profile => {
            let values = parse_column(shown, data, true)?;
            Objective::Profile(CardinalityProfile::new(values).map_err(Failure::from)?)
        }
    })
}

fn parse_field(shown: &str, line: usize, field: usize, raw: &str) -> Result<f64, Failure> {
    let trimmed = raw.trim();
    let value: f64 = trimmed.parse().map_err(|_| {
        Failure::parse(format!(
            "{shown}: line {line}, field {field}: cannot parse {trimmed:?} as a real number"
        ))
    })?;
    if !value.is_finite() {
        return Err(Failure::parse(format!(
            "{shown}: line {line}, field {field}: entries must be finite"
        )));
    }
    Ok(value)
}

fn parse_matrix(shown: &str, data: &[(usize, &str)]) -> Result<FacilityMatrix, Failure> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(data.len());
    let mut width = 0usize;
    for &(line, content) in data {
        if content.trim().is_empty() {
            return Err(Failure::parse(format!(
                "{shown}: line {line}: blank row inside the data"
            )));
        }
        let mut row = Vec::new();
        for (i, raw) in content.split(',').enumerate() {
            let value = parse_field(shown, line, i + 1, raw)?;
            if value < 0.0 {
                return Err(Failure::parse(format!(
                    "{shown}: line {line}, field {}: negative entry {value}",
                    i + 1
                )));
            }
            row.push(value);
        }
        if rows.is_empty() {
            width = row.len();
        } else if row.len() != width {
            return Err(Failure::parse(format!(
                "{shown}: line {line}: expected {width} fields, got {}",
                row.len()
            )));
        }
        rows.push(row);
    }
    FacilityMatrix::new(rows).map_err(Failure::from)
}

fn parse_column(
    shown: &str,
    data: &[(usize, &str)],
    allow_negative: bool,
) -> Result<Vec<f64>, Failure> {
    let mut values = Vec::with_capacity(data.len());
    for &(line, content) in data {
        if content.contains(',') {
            return Err(Failure::parse(format!(
                "{shown}: line {line}: expected one value per line"
            )));
        }
        if content.trim().is_empty() {
            return Err(Failure::parse(format!(
                "{shown}: line {line}: blank row inside the data"
            )));
        }
        let value = parse_field(shown, line, 1, content)?;
        if !allow_negative && value < 0.0 {
            return Err(Failure::parse(format!(
                "{shown}: line {line}: negative value {value}"
            )));
        }
        values.push(value);
    }
    Ok(values)
}

/// 17 significant digits: enough for the decimal text to parse back to the
/// exact same f64.
#[cfg_attr(not(test), allow(dead_code))]
fn full_precision(v: f64) -> String {
    format!("{v:.16e}")
}

impl Instance {
    /// The instance as decimal text that reparses to bit-identical values.
    /// Part of the file-format contract; exercised by the round-trip tests.
    #[cfg_attr(not(test), allow(dead_code))]
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        match &self.objective {
            Objective::Facility(f) => {
                for row in f.rows() {
                    let mut first = true;
                    for &v in row {
                        if !first {
                            out.push(',');
                        }
                        let _ = write!(out, "{}", full_precision(v));
                        first = false;
                    }
                    out.push('\n');
                }
            }
            Objective::Modular(f) => {
                for &v in f.weights() {
                    let _ = writeln!(out, "{}", full_precision(v));
                }
            }
            Objective::Profile(f) => {
                for &v in f.values() {
                    let _ = writeln!(out, "{}", full_precision(v));
                }
            }
        }
        out
    }
}
