//! The flat `key=value` soundness report.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use jcc_core::model::{ModelConfig, Report, Tri};

/// Renders a report. Judgment names are used verbatim in keys.
pub fn render_report(file: &Path, cfg: ModelConfig, report: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "file={}", file.display());
    let _ = writeln!(s, "depth={}", cfg.fixpoint_depth);
    let _ = writeln!(s, "rank={}", cfg.universe_rank);
    let _ = writeln!(s, "sample_budget={}", cfg.sample_budget);
    let _ = writeln!(s, "judgments={}", report.judgments.len());
    let _ = writeln!(s, "yes={}", report.count(Tri::Yes));
    let _ = writeln!(s, "no={}", report.count(Tri::No));
    let _ = writeln!(s, "unknown={}", report.count(Tri::Unknown));
    for j in &report.judgments {
        let _ = writeln!(s, "judgment.{}={}", j.name, j.verdict);
        let _ = writeln!(s, "judgment.{}.valuations={}", j.name, j.valuations);
        let _ = writeln!(s, "judgment.{}.samples={}", j.name, j.samples);
        if let Some(n) = &j.note {
            let _ = writeln!(s, "judgment.{}.note={}", j.name, n.replace('\n', " "));
        }
    }
    s
}

pub fn write_report(path: &Path, file: &Path, cfg: ModelConfig, report: &Report) -> io::Result<()> {
    std::fs::write(path, render_report(file, cfg, report))
}

/// Reads a report back into its key/value pairs, in file order.
pub fn parse_report(text: &str) -> Vec<(String, String)> {
    text.lines().filter_map(|l| l.split_once('=').map(|(k, v)| (k.to_string(), v.to_string()))).collect()
}
