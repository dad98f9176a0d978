//! The three reference comparison tables as deterministic CSV.
//!
//! Formatting reproduces the reference tables digit for digit:
//! scientific columns carry 3 significant figures with an uppercase `E`
//! and a two-digit-minimum exponent; entropy columns are rounded to 6
//! significant figures and printed with exactly 5 decimal places; two
//! derived columns are pre-rounded at a fixed decimal place before the
//! scientific display (3 decimals for the log-domain absolute error of
//! table 1, 4 decimals for the relative Stirling error of table 2).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::approx::{rps_envelope_limit, stirling, stirling_log2};
use crate::combinatorics::{factorial, s_envelope};
use crate::entropy::{max_entropy_value, EntropyKind};
use crate::error::{Error, Result};
use crate::interval::round_decimals;
use crate::log2::log2_of;
use crate::par::map_collect;

/// Upper limit on table sweeps (tables 1 and 3); table 2 stops at the
/// direct Stirling cap.
pub const TABLE_RANGE_CAP: u32 = 1_000;

/// One rendered row: the `N` column followed by the table's cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: u32,
    pub cells: Vec<String>,
}

/// `log2_of` at the 12-digit contract, falling back to 9 digits for
/// magnitudes beyond what f64 can certify at 12 (still far below the
/// printed precision).
fn log2_for_display(x: &BigUint) -> Result<f64> {
    match log2_of(x, 12) {
        Err(Error::PrecisionUnattainable { .. }) => log2_of(x, 9),
        other => other,
    }
}

fn digits10(x: &BigUint) -> i64 {
    x.to_string().len() as i64
}

/// Compare `p/q` (positive) against `10^g`.
fn cmp_pow10(p: &BigUint, q: &BigUint, g: i64) -> std::cmp::Ordering {
    if g >= 0 {
        p.cmp(&(q * BigUint::from(10u32).pow(g as u32)))
    } else {
        (p * BigUint::from(10u32).pow((-g) as u32)).cmp(q)
    }
}

/// Scientific notation with `sig` significant digits, uppercase `E`,
/// half-away-from-zero rounding, exponent zero-padded to two digits.
pub fn sci_rational(value: &BigRational, sig: u32) -> String {
    assert!(sig >= 1);
    if value.is_zero() {
        let zeros = "0".repeat(sig as usize - 1);
        return format!("0.{zeros}E+00");
    }
    let negative = value.is_negative();
    let p = value.numer().abs().to_biguint().unwrap();
    let q = value.denom().abs().to_biguint().unwrap();

    // exponent g with 10^g <= p/q < 10^(g+1)
    let mut g = digits10(&p) - digits10(&q);
    if cmp_pow10(&p, &q, g) == std::cmp::Ordering::Less {
        g -= 1;
    }
    if cmp_pow10(&p, &q, g + 1) != std::cmp::Ordering::Less {
        g += 1;
    }

    // mantissa = round(p/q * 10^(sig-1-g)), half away from zero
    let shift = sig as i64 - 1 - g;
    let (num, den) = if shift >= 0 {
        (p * BigUint::from(10u32).pow(shift as u32), q)
    } else {
        (p, q * BigUint::from(10u32).pow((-shift) as u32))
    };
    let mut mantissa = (BigUint::from(2u32) * num + &den) / (BigUint::from(2u32) * den);
    if mantissa == BigUint::from(10u32).pow(sig) {
        mantissa /= BigUint::from(10u32);
        g += 1;
    }

    let digits = mantissa.to_string();
    debug_assert_eq!(digits.len(), sig as usize);
    let (head, tail) = digits.split_at(1);
    let sign = if negative { "-" } else { "" };
    let exp_sign = if g < 0 { '-' } else { '+' };
    format!("{sign}{head}.{tail}E{exp_sign}{:02}", g.abs())
}

/// Scientific display of a float through the exact-rational formatter.
pub fn sci_f64(value: f64, sig: u32) -> String {
    let rational = BigRational::from_float(value).expect("finite value");
    sci_rational(&rational, sig)
}

/// Entropy cell: round to 6 significant figures, print with exactly 5
/// decimal places (the reference-table convention, e.g. 10.927778 -> 10.92780).
pub fn entropy_cell(bits: f64) -> String {
    if bits == 0.0 {
        return "0.00000".into();
    }
    let sci = format!("{:.5e}", bits); // d.ddddd e exp, 6 significant digits
    let (mantissa, exp) = sci.split_once('e').expect("float formatting");
    let exp: i32 = exp.parse().expect("float exponent");
    if exp < 0 {
        // below 1: 6 significant figures already exceed 5 decimals
        return format!("{bits:.5}");
    }
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let int_len = exp as usize + 1;
    let (int_part, frac_part) = if int_len >= digits.len() {
        (format!("{digits:0<int_len$}"), String::new())
    } else {
        let (i, f) = digits.split_at(int_len);
        (i.to_string(), f.to_string())
    };
    let sign = if negative { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part:0<5}")
}

/// Percent cell with two decimals; `n/a` when the reference is zero.
pub fn percent_cell(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{v:.2}%"),
        None => "n/a".into(),
    }
}

fn big_rational(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Table 1 row: exact envelope against its limit.
/// Columns: S, S_lim, dS_abs, dS_rel, H_max_RPS, H_lim_RPS, dH_abs, dH_rel.
pub fn table1_row(n: u32) -> Result<TableRow> {
    let s_exact = big_rational(s_envelope(n));
    let s_lim = rps_envelope_limit(n).midpoint();
    let ds_abs = &s_lim - &s_exact;
    let ds_rel = &ds_abs / &s_exact;

    let h_max = log2_for_display(&s_envelope(n))?;
    let h_lim = std::f64::consts::LOG2_E + 2.0 * log2_for_display(&factorial(n))?;
    let dh_abs = h_lim - h_max;
    // the reference tables pre-round this column to 3 decimals
    let dh_abs_rounded =
        round_decimals(&BigRational::from_float(dh_abs).expect("finite"), 3);
    let dh_rel = if h_max == 0.0 { None } else { Some(dh_abs / h_max) };

    Ok(TableRow {
        n,
        cells: vec![
            sci_rational(&s_exact, 3),
            sci_rational(&s_lim, 3),
            sci_rational(&ds_abs, 3),
            sci_rational(&ds_rel, 3),
            sci_f64(h_max, 3),
            sci_f64(h_lim, 3),
            sci_rational(&dh_abs_rounded, 3),
            match dh_rel {
                Some(v) => sci_f64(v, 3),
                None => "n/a".into(),
            },
        ],
    })
}

/// Table 2 row: factorial against Stirling's formula.
/// Columns: factorial, stirling, dSt_abs, dSt_rel, log2_factorial,
/// log2_stirling, dlog_abs, dlog_rel.
pub fn table2_row(n: u32) -> Result<TableRow> {
    let fact = big_rational(factorial(n));
    let st = stirling(n)?;
    let dst_abs = &st - &fact;
    // the reference tables pre-round the relative column to 4 decimals
    let dst_rel = round_decimals(&(&dst_abs / &fact), 4);

    let log2_fact = log2_of(&factorial(n), 12)?;
    let log2_st = stirling_log2(n);
    let dlog_abs = log2_st - log2_fact;
    let dlog_rel = dlog_abs / log2_fact;

    Ok(TableRow {
        n,
        cells: vec![
            sci_rational(&fact, 3),
            sci_rational(&st, 3),
            sci_rational(&dst_abs, 3),
            sci_rational(&dst_rel, 3),
            sci_f64(log2_fact, 3),
            sci_f64(log2_st, 3),
            sci_f64(dlog_abs, 3),
            sci_f64(dlog_rel, 3),
        ],
    })
}

/// Table 3 row: the three maxima and the limit form.
/// Columns: H_max_SE, H_max_DE, H_max_RPS, H_lim_RPS, dH_RPS.
pub fn table3_row(n: u32) -> Result<TableRow> {
    let h_se = max_entropy_value(EntropyKind::Shannon, n)?;
    let h_de = log2_for_display(&crate::entropy::deng_envelope(n))?;
    let h_rps = log2_for_display(&s_envelope(n))?;
    let h_lim = std::f64::consts::LOG2_E + 2.0 * log2_for_display(&factorial(n))?;
    let pct = if h_rps == 0.0 {
        None
    } else {
        Some((h_lim - h_rps) / h_rps * 100.0)
    };

    Ok(TableRow {
        n,
        cells: vec![
            entropy_cell(h_se),
            entropy_cell(h_de),
            entropy_cell(h_rps),
            entropy_cell(h_lim),
            percent_cell(pct),
        ],
    })
}

/// Column headers per table, `N` first.
pub fn table_header(which: u8) -> &'static [&'static str] {
    match which {
        1 => &[
            "N", "S", "S_lim", "dS_abs", "dS_rel", "H_max_RPS", "H_lim_RPS", "dH_abs", "dH_rel",
        ],
        2 => &[
            "N",
            "factorial",
            "stirling",
            "dSt_abs",
            "dSt_rel",
            "log2_factorial",
            "log2_stirling",
            "dlog_abs",
            "dlog_rel",
        ],
        3 => &["N", "H_max_SE", "H_max_DE", "H_max_RPS", "H_lim_RPS", "dH_RPS"],
        _ => panic!("tables are numbered 1..=3"),
    }
}

/// Inclusive sweep parameters for a table render.
#[derive(Debug, Clone, Copy)]
pub struct Sweep {
    pub from: u32,
    pub to: u32,
    pub step: u32,
}

impl Sweep {
    pub fn values(&self) -> Vec<u32> {
        (self.from..=self.to).step_by(self.step.max(1) as usize).collect()
    }
}

/// Default sweeps matching the reference tables.
pub fn default_sweep(which: u8) -> Sweep {
    match which {
        1 | 2 => Sweep { from: 10, to: 100, step: 10 },
        3 => Sweep { from: 1, to: 10, step: 1 },
        _ => panic!("tables are numbered 1..=3"),
    }
}

/// Render a table as CSV with a header row. Rows are computed
/// independently (in parallel when enabled) and emitted in order of `n`.
pub fn render_table(which: u8, sweep: Sweep) -> Result<String> {
    if sweep.from < 1 || sweep.from > sweep.to || sweep.step < 1 {
        return Err(Error::Parse(format!(
            "bad sweep: from={} to={} step={}",
            sweep.from, sweep.to, sweep.step
        )));
    }
    let cap = match which {
        2 => crate::approx::STIRLING_DIRECT_CAP,
        _ => TABLE_RANGE_CAP,
    };
    if sweep.to > cap {
        return Err(Error::Parse(format!(
            "table {which} sweeps are capped at N = {cap}, got {}",
            sweep.to
        )));
    }
    let row_fn = match which {
        1 => table1_row as fn(u32) -> Result<TableRow>,
        2 => table2_row,
        3 => table3_row,
        _ => return Err(Error::Parse("tables are numbered 1..=3".into())),
    };
    let rows = map_collect(sweep.values(), row_fn);

    let mut out = String::new();
    out.push_str(&table_header(which).join(","));
    out.push('\n');
    for row in rows {
        let row = row?;
        out.push_str(&row.n.to_string());
        for cell in &row.cells {
            out.push(',');
            out.push_str(cell);
        }
        out.push('\n');
    }
    Ok(out)
}
