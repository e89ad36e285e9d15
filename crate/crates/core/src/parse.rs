//! Text input for cubic coefficients.

use crate::error::{Error, Result};

/// Parses exactly four finite coefficients, highest degree first.
pub fn parse_coefficients<S: AsRef<str>>(fields: &[S]) -> Result<[f64; 4]> {
    if fields.len() != 4 {
        return Err(Error::Parse(format!(
            "expected 4 coefficients, got {}",
            fields.len()
        )));
    }
    let mut out = [0.0; 4];
    for (slot, field) in out.iter_mut().zip(fields) {
        let text = field.as_ref().trim();
        let value: f64 = text
            .parse()
            .map_err(|_| Error::Parse(format!("`{text}` is not a number")))?;
        if !value.is_finite() {
            return Err(Error::Parse(format!("`{text}` is not finite")));
        }
        *slot = value;
    }
    Ok(out)
}

/// Parses a line such as `1 0 -7 6` or `1, 0, -7, 6`.
pub fn parse_coefficient_line(line: &str) -> Result<[f64; 4]> {
    let fields: Vec<&str> = line
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|f| !f.is_empty())
        .collect();
    parse_coefficients(&fields)
}
