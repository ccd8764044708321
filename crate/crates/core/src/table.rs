//! Exact tables of `zeta_r(-n)` with the fixed decimal roundings used for
//! published comparisons.

use crate::error::{Error, Result};
use crate::multizeta::eval_exact;
use crate::rational::{DecimalRounding, Rational};

pub const MAX_TABLE_R: usize = 30;

/// One row: `zeta_r(-n)` for each requested `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub r: usize,
    pub values: Vec<(usize, Rational)>,
}

/// Decimal places and rounding for the `zeta_r(-n)` column: the `n = 0`
/// column keeps 15 places with ties rounded toward zero, the `n = 1` column
/// is cut after 11 places, other columns keep 15 places rounded half away
/// from zero.
pub fn column_rounding(n: usize) -> (usize, DecimalRounding) {
    match n {
        0 => (15, DecimalRounding::HalfTowardZero),
        1 => (11, DecimalRounding::Truncate),
        _ => (15, DecimalRounding::HalfAwayFromZero),
    }
}

/// Decimal with an explicit sign; zero prints as `+0.000...`.
pub fn signed_decimal(value: &Rational, places: usize, mode: DecimalRounding) -> String {
    let d = value.to_decimal(places, mode);
    if d.starts_with('-') {
        d
    } else {
        format!("+{d}")
    }
}

/// [`signed_decimal`] with the column's rounding.
pub fn rounded_cell(value: &Rational, n: usize) -> String {
    let (places, mode) = column_rounding(n);
    signed_decimal(value, places, mode)
}

/// Rows `r = 1..=r_max` of `zeta_r(-n)` for each `n` in `args`.
pub fn value_table(r_max: usize, args: &[usize]) -> Result<Vec<TableRow>> {
    if r_max == 0 || r_max > MAX_TABLE_R {
        return Err(Error::domain(format!("r_max must be in 1..={MAX_TABLE_R}, got {r_max}")));
    }
    let profiles = args.iter().map(|&n| eval_exact(n, r_max)).collect::<Result<Vec<_>>>()?;
    Ok((1..=r_max)
        .map(|r| TableRow {
            r,
            values: args.iter().zip(&profiles).map(|(&n, p)| (n, p.values[r].clone())).collect(),
        })
        .collect())
}
