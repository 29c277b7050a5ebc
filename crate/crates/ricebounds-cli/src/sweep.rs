//! Grid sweeps over one varying parameter, emitted as CSV.

use std::io::Write;

use ricebounds::{EvalContext, Error};

/// One CSV column: a label and an evaluator over the varying parameter.
pub struct Column {
    pub label: String,
    pub eval: Box<dyn Fn(f64, &EvalContext) -> Result<f64, Error>>,
}

/// Uniform grid of `steps` points (inclusive endpoints).
pub fn grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let n = steps.max(2);
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Fixed 17-significant-figure formatting: deterministic bytes across runs
/// and platforms.
pub fn fmt_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// Evaluate every column over the grid and write the CSV (UTF-8, LF, header
/// row, comma separator). A failing cell is left empty and reported on
/// stderr; it never aborts the sweep.
pub fn run_sweep<W: Write>(
    varying: &str,
    points: &[f64],
    columns: &[Column],
    ctx: &EvalContext,
    out: &mut W,
) -> std::io::Result<()> {
    let mut header = String::from(varying);
    for c in columns {
        header.push(',');
        header.push_str(&c.label);
    }
    writeln!(out, "{header}")?;
    for &v in points {
        let mut row = fmt_value(v);
        for c in columns {
            row.push(',');
            match (c.eval)(v, ctx) {
                Ok(value) => row.push_str(&fmt_value(value)),
                Err(err) => {
                    eprintln!("warning: {} failed at {varying}={v}: {err}", c.label);
                }
            }
        }
        writeln!(out, "{row}")?;
    }
    Ok(())
}
