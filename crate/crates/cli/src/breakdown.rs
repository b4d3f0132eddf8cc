//! Line-oriented `key=value` records, one block per fixed locus:
//!
//! ```text
//! config=<chain over 0> | <chain over ∞>
//! factor.base=<coeff>*a^<power>
//! factor.zero.node1=...
//! ...
//! total=<coeff>
//! ```
//!
//! Blocks are separated by blank lines and followed by one `sum=` line.
//! Factor labels are `node<i>` (node smoothing before step i), `main<i>`
//! (the component weight, possibly `...*psi`), `psi<i>` (ψ integral of a
//! ruled family), `dual<i>` (ψ^∨ pairing of an end family), `aux<i>` and
//! `aut<i>` (predeformability and automorphism factors).

use std::io::{self, Write};

use unram_localize::ConfigurationReport;

pub fn write_record<W: Write>(out: &mut W, report: &ConfigurationReport) -> io::Result<()> {
    let cfg = &report.configuration;
    writeln!(out, "config={} | {}", cfg.chain_zero, cfg.chain_infinity)?;
    for f in &report.per_factor_trace {
        writeln!(out, "factor.{}={}", f.label, f.value)?;
    }
    writeln!(out, "total={}", report.total)?;
    writeln!(out)
}
