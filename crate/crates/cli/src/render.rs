//! Plain-text tables. Rationals are printed exactly, never as decimals.

use std::fmt::Write;

use quadorth::ortho::OrthoReport;

use crate::commands::{AnalyzeReport, DecomposeReport, DeriveReport, SweepReport, VerifyReport};

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".into(), T::to_string)
}

pub fn decompose(r: &DecomposeReport) -> String {
    let map = &r.matrix.map;
    let mut s = String::new();
    let _ = writeln!(s, "omega = x^2 + ({})x + ({}), a = {}", map.p(), map.q(), map.a());
    let _ = writeln!(s, "{:>3}  {:<28} {:<28} {:<28} R_n", "n", "P_n", "a_{n-1}", "b_n");
    for row in &r.matrix.rows {
        let _ = writeln!(
            s,
            "{:>3}  {:<28} {:<28} {:<28} {}",
            row.n,
            row.p.to_string(),
            row.a_prev.to_string(),
            row.b.to_string(),
            row.r
        );
    }
    let _ = writeln!(s, "reconstruction: {}", if r.reconstruction { "ok" } else { "FAILED" });
    s
}

fn ortho_lines(s: &mut String, title: &str, r: &OrthoReport) {
    let _ = writeln!(
        s,
        "{title}: detected d = {} (orders up to {}, rows up to {})",
        opt(&r.detected_d),
        r.dmax,
        r.range
    );
    if !r.regularity_ok {
        let _ = writeln!(s, "  lowest band vanishes at row {}", opt(&r.first_irregular));
    }
    for w in &r.witnesses {
        let _ = writeln!(
            s,
            "  d = {:<3} rejected by chi[{}][{}] = {} ({:?})",
            w.d, w.n, w.nu, w.value, w.kind
        );
    }
}

pub fn analyze(r: &AnalyzeReport) -> String {
    let mut s = String::new();
    ortho_lines(&mut s, "sequence", &r.orthogonality);
    ortho_lines(&mut s, "derivative", &r.derivative);
    let _ = writeln!(s, "classical: {}", r.classical);
    let _ = writeln!(s, "d-symmetric for d in {:?}", r.d_symmetric);
    s
}

pub fn derive(r: &DeriveReport) -> String {
    let mut s = String::new();
    for (n, w) in r.derivative.iter().enumerate() {
        let _ = writeln!(s, "W1_{n} = {w}");
    }
    ortho_lines(&mut s, "derivative", &r.orthogonality);
    s
}

pub fn verify(r: &VerifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "case {}: {} of {} tuples pass (nmax {}, dmax {}, seed {})",
        r.case_id,
        r.passed,
        r.total,
        r.nmax,
        r.dmax,
        opt(&r.seed)
    );
    for (i, v) in r.verdicts.iter().enumerate() {
        let state = if v.passed {
            "pass"
        } else if v.exceptional {
            "exceptional"
        } else {
            "FAIL"
        };
        let _ = writeln!(s, "tuple {i}: {state}");
        for c in &v.component_reports {
            let mismatch = c.first_mismatch.as_ref().map_or_else(String::new, |m| {
                format!(
                    " first mismatch {} n={} index={} computed {} expected {}",
                    m.what,
                    m.n,
                    opt(&m.index),
                    m.computed,
                    m.expected
                )
            });
            let _ = writeln!(
                s,
                "  {:<6} {:<20} d={:<3} matches={:<5} coincides={}{}",
                c.label,
                format!("{:?}", c.claim),
                opt(&c.orthogonal_d),
                c.matches_expected,
                opt(&c.coincides_with),
                mismatch
            );
        }
        for id in &v.identities {
            let _ = writeln!(s, "  [{}] {}", if id.holds { "ok" } else { "FAILED" }, id.claim);
        }
    }
    s
}

pub fn sweep(r: &SweepReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "case {}: total {}, passed {}, failed {}, exceptional {}, skipped {}",
        r.case_id, r.total, r.passed, r.failed, r.exceptional, r.skipped
    );
    for t in &r.skipped_tuples {
        let _ = writeln!(s, "  skipped {}: {}", t.index, t.reason);
    }
    for t in &r.failures {
        let _ = writeln!(s, "  failed {}: {}", t.index, t.details.join(", "));
    }
    for t in &r.exceptional_tuples {
        let _ = writeln!(s, "  exceptional {}: {}", t.index, t.details.join(", "));
    }
    s
}
