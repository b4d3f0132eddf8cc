use std::io::Write;
use std::time::Instant;

use unram_exact::{format_factored, BigRational};
use unram_localize::localize::{Evaluation, SideTable};
use unram_localize::{multiple_cover_invariant, LocalizeError};

use crate::breakdown::write_record;
use crate::reference::ReferenceTable;

/// Largest degree `compute` accepts unless raised on the command line.
pub const DEFAULT_MAX_DEGREE: u32 = 12;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    Mismatch,
    Usage,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::Mismatch => 1,
            ExitStatus::Usage => 2,
        }
    }
}

fn render(q: &BigRational, factored: bool) -> String {
    if factored {
        format_factored(q).unwrap_or_else(|_| "0".to_string())
    } else {
        q.to_string()
    }
}

/// Writes every configuration record followed by `sum=`, and returns the sum.
pub fn cmd_breakdown<W: Write>(d: u32, out: &mut W) -> Result<BigRational, LocalizeError> {
    let table = SideTable::new(d, Evaluation::Parallel)?;
    let mut sum = BigRational::default();
    for i in 0..table.zero.len() {
        for j in 0..table.infinity.len() {
            let report = table.report(i, j)?;
            sum += report.total.coeff();
            write_record(out, &report).expect("write breakdown");
        }
    }
    writeln!(out, "sum={sum}").expect("write breakdown");
    Ok(sum)
}

pub fn cmd_compute<W: Write, E: Write>(
    d: u32,
    factored: bool,
    breakdown: bool,
    max_degree: u32,
    out: &mut W,
    err: &mut E,
) -> ExitStatus {
    if d < 2 {
        let _ = writeln!(err, "error: degree must be at least 2");
        return ExitStatus::Usage;
    }
    if d > max_degree {
        let _ = writeln!(
            err,
            "error: degree {d} exceeds the maximum {max_degree} (raise --max-degree)"
        );
        return ExitStatus::Usage;
    }
    let result = if breakdown {
        cmd_breakdown(d, out)
    } else {
        multiple_cover_invariant(d)
    };
    match result {
        Ok(q) => {
            let _ = writeln!(out, "{}", render(&q, factored));
            ExitStatus::Success
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitStatus::Mismatch
        }
    }
}

/// Recomputes degrees `2..=max_degree` and compares each exactly with the
/// table. One `d=<d> PASS|FAIL` line per degree.
pub fn cmd_verify<W: Write, E: Write>(
    max_degree: u32,
    table: &ReferenceTable,
    out: &mut W,
    err: &mut E,
) -> ExitStatus {
    if !(2..=9).contains(&max_degree) {
        let _ = writeln!(err, "error: --max-degree must be between 2 and 9");
        return ExitStatus::Usage;
    }
    let mut all = true;
    for d in 2..=max_degree {
        let start = Instant::now();
        let got = match multiple_cover_invariant(d) {
            Ok(q) => q,
            Err(e) => {
                all = false;
                let _ = writeln!(out, "d={d} FAIL error: {e}");
                continue;
            }
        };
        let ms = start.elapsed().as_millis();
        match table.rows.get(&d) {
            Some(want) if *want == got => {
                let _ = writeln!(out, "d={d} PASS ({ms} ms)");
            }
            Some(want) => {
                all = false;
                let _ = writeln!(
                    out,
                    "d={d} FAIL expected {} got {}",
                    render(want, true),
                    render(&got, true)
                );
            }
            None => {
                all = false;
                let _ = writeln!(out, "d={d} FAIL no reference row");
            }
        }
    }
    if all {
        ExitStatus::Success
    } else {
        ExitStatus::Mismatch
    }
}
