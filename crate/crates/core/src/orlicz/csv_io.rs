//! `t,u1,...,uN` CSV encoding of grid functions, one row per node.

use std::io::{Read, Write};

use crate::error::OrliczError;

use super::GridFunction;

fn csv_err(e: impl std::fmt::Display) -> OrliczError {
    OrliczError::Csv(e.to_string())
}

/// Writes the header and one row per node. Floats use the shortest
/// representation that parses back to the same value.
pub fn write_csv<W: Write>(u: &GridFunction, out: W) -> Result<(), OrliczError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["t".to_string()];
    header.extend((1..=u.dim()).map(|i| format!("u{i}")));
    w.write_record(&header).map_err(csv_err)?;
    for k in 0..=u.n() {
        let mut row = vec![format!("{:?}", u.t(k))];
        row.extend(u.node(k).iter().map(|v| format!("{v:?}")));
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush().map_err(csv_err)
}

/// Parses a CSV written by [`write_csv`]. Node times must be uniformly spaced.
pub fn read_csv<R: Read>(input: R) -> Result<GridFunction, OrliczError> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header = r.headers().map_err(csv_err)?.clone();
    if header.get(0) != Some("t") || header.len() < 2 {
        return Err(OrliczError::Csv(format!(
            "expected header `t,u1,...`, got `{}`",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    for (i, name) in header.iter().enumerate().skip(1) {
        if name != format!("u{i}") {
            return Err(OrliczError::Csv(format!("column {i} should be `u{i}`, got `{name}`")));
        }
    }
    let dim = header.len() - 1;
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        if rec.len() != dim + 1 {
            return Err(OrliczError::Csv(format!(
                "row {}: expected {} fields, got {}",
                line + 2,
                dim + 1,
                rec.len()
            )));
        }
        let parse = |s: &str| -> Result<f64, OrliczError> {
            s.parse::<f64>()
                .map_err(|e| OrliczError::Csv(format!("row {}: `{s}`: {e}", line + 2)))
        };
        times.push(parse(&rec[0])?);
        for f in rec.iter().skip(1) {
            values.push(parse(f)?);
        }
    }
    if times.len() < 3 {
        return Err(OrliczError::Csv("need at least three rows".into()));
    }
    let (a, b) = (times[0], times[times.len() - 1]);
    let h = (b - a) / (times.len() - 1) as f64;
    for (k, t) in times.iter().enumerate() {
        if (t - (a + h * k as f64)).abs() > 1e-9 * (b - a) {
            return Err(OrliczError::Csv(format!(
                "row {}: time {t} is off the uniform grid",
                k + 2
            )));
        }
    }
    GridFunction::new(a, b, dim, values)
}
