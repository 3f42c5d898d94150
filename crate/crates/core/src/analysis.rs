//! Per-frame analysis and verification, producing [`Report`] records.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::demorgan::{
    booleanization, booleanization_via_dense_opens, demorganization, is_boolean,
    is_extremally_disconnected, oracle_largest_dense_ed, oracle_least_dense,
    oracle_unique_boolean_dense, sublocale_is_boolean, sublocale_is_extremally_disconnected,
    verify_nearly_open, DemorganError,
};
use crate::frame::Frame;
use crate::laws::verify_heyting_laws;
use crate::sublocale::{
    closed_sublocale, enumerate_sublocales_capped, intersect_sublocales, is_sublocale,
    join_sublocales, open_sublocale, Sublocale, SublocaleError, DEFAULT_ENUMERATION_CAP,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub dense_ok: bool,
    #[serde(rename = "fitted_B")]
    pub fitted_b: bool,
    #[serde(rename = "fitted_M")]
    pub fitted_m: bool,
    pub ed: bool,
    pub boolean: bool,
    #[serde(rename = "B_equals_M")]
    pub b_equals_m: bool,
    #[serde(rename = "M_equals_L")]
    pub m_equals_l: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleStatus {
    pub ran: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
}

impl OracleStatus {
    pub const NOT_RUN: OracleStatus = OracleStatus {
        ran: false,
        agree: None,
    };
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub frame_name: String,
    pub frame_size: usize,
    pub booleanization: Vec<String>,
    pub demorganization: Vec<String>,
    pub flags: Flags,
    pub oracle: OracleStatus,
    pub law_failures: Vec<String>,
    /// Wall-clock time; `null` where output must be reproducible.
    pub runtime_ms: Option<u64>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.law_failures.is_empty() && self.oracle.agree != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Integrity(DemorganError),
    #[error("oracle mode needs at most {cap} elements, frame has {size}")]
    TooLarge { size: usize, cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    Off,
    /// Run the enumeration oracles; frames over the cap are an error.
    Required,
    /// Run them when the frame is small enough, otherwise skip.
    IfFeasible,
}

/// Booleanization, DeMorganization and the structural flags.
pub fn analyze(name: &str, frame: &Frame) -> Result<Report, AnalysisError> {
    let started = Instant::now();
    let b = booleanization(frame).map_err(AnalysisError::Integrity)?;
    let m = demorganization(frame);
    let ed = is_extremally_disconnected(frame).map_err(AnalysisError::Integrity)?;
    let flags = Flags {
        dense_ok: b.is_dense() && m.is_dense(),
        fitted_b: b.is_fitted(),
        fitted_m: m.is_fitted(),
        ed,
        boolean: is_boolean(frame),
        b_equals_m: b == m,
        m_equals_l: m.len() == frame.size(),
    };
    Ok(Report {
        frame_name: name.to_string(),
        frame_size: frame.size(),
        booleanization: b.labels(),
        demorganization: m.labels(),
        flags,
        oracle: OracleStatus::NOT_RUN,
        law_failures: Vec::new(),
        runtime_ms: Some(started.elapsed().as_millis() as u64),
    })
}

/// Runs every invariant check on `frame` and records failures in
/// `law_failures`; with oracles, also cross-checks the formulas against
/// brute-force enumeration of all sublocales.
pub fn verify(name: &str, frame: &Frame, oracle: OracleMode) -> Result<Report, AnalysisError> {
    let started = Instant::now();
    let run_oracle = match oracle {
        OracleMode::Off => false,
        OracleMode::IfFeasible => frame.size() <= DEFAULT_ENUMERATION_CAP,
        OracleMode::Required => {
            if frame.size() > DEFAULT_ENUMERATION_CAP {
                return Err(AnalysisError::TooLarge {
                    size: frame.size(),
                    cap: DEFAULT_ENUMERATION_CAP,
                });
            }
            true
        }
    };

    let mut failures = Vec::new();
    let laws = verify_heyting_laws(frame);
    failures.extend(laws.describe_failures(frame));
    check_tables(frame, &mut failures);
    check_open_closed(frame, &mut failures);

    let mut report = match analyze(name, frame) {
        Ok(report) => report,
        Err(AnalysisError::Integrity(e)) => {
            failures.push(e.to_string());
            return Ok(broken_report(name, frame, failures, started));
        }
        Err(e) => return Err(e),
    };
    check_constructions(frame, &report, &mut failures);

    if run_oracle {
        let agree = check_oracles(frame, &mut failures);
        check_every_sublocale(frame, &mut failures);
        report.oracle = OracleStatus {
            ran: true,
            agree: Some(agree),
        };
    }
    report.law_failures = failures;
    report.runtime_ms = Some(started.elapsed().as_millis() as u64);
    Ok(report)
}

fn broken_report(name: &str, frame: &Frame, failures: Vec<String>, started: Instant) -> Report {
    Report {
        frame_name: name.to_string(),
        frame_size: frame.size(),
        booleanization: Vec::new(),
        demorganization: Vec::new(),
        flags: Flags {
            dense_ok: false,
            fitted_b: false,
            fitted_m: false,
            ed: false,
            boolean: false,
            b_equals_m: false,
            m_equals_l: false,
        },
        oracle: OracleStatus::NOT_RUN,
        law_failures: failures,
        runtime_ms: Some(started.elapsed().as_millis() as u64),
    }
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn check_tables(f: &Frame, out: &mut Vec<String>) {
    let l = |a| f.label(a);
    let mut local = Vec::new();
    let failures = &mut local;
    for a in f.elements() {
        check(failures, f.meet(a, a) == a && f.join(a, a) == a, || {
            format!("idempotence fails at {}", l(a))
        });
        let aa = f.pseudocomplement(f.pseudocomplement(a));
        check(failures, f.leq(a, aa), || {
            format!("a ≤ a** fails at {}", l(a))
        });
        check(
            failures,
            f.pseudocomplement(aa) == f.pseudocomplement(a),
            || format!("a* = a*** fails at {}", l(a)),
        );
        for b in f.elements() {
            check(
                failures,
                f.meet(a, b) == f.meet(b, a) && f.join(a, b) == f.join(b, a),
                || format!("commutativity fails at {}, {}", l(a), l(b)),
            );
            check(
                failures,
                f.meet(a, f.join(a, b)) == a && f.join(a, f.meet(a, b)) == a,
                || format!("absorption fails at {}, {}", l(a), l(b)),
            );
            let dd = |x| f.pseudocomplement(f.pseudocomplement(x));
            check(failures, dd(f.meet(a, b)) == f.meet(dd(a), dd(b)), || {
                format!("(a∧b)** = a**∧b** fails at {}, {}", l(a), l(b))
            });
            for c in f.elements() {
                check(
                    failures,
                    f.meet(a, f.meet(b, c)) == f.meet(f.meet(a, b), c)
                        && f.join(a, f.join(b, c)) == f.join(f.join(a, b), c),
                    || format!("associativity fails at {}, {}, {}", l(a), l(b), l(c)),
                );
                check(
                    failures,
                    f.leq(c, f.heyting(a, b)) == f.leq(f.meet(a, c), b),
                    || format!("adjunction fails at a={}, b={}, c={}", l(a), l(b), l(c)),
                );
            }
        }
    }
    dedupe_by_kind(&mut local);
    out.extend(local);
}

/// Keeps the first failure of each kind so a corrupted table does not
/// produce thousands of lines.
fn dedupe_by_kind(failures: &mut Vec<String>) {
    let mut seen = std::collections::HashSet::new();
    failures.retain(|line| {
        let kind = line.split(" fails").next().unwrap_or(line).to_string();
        seen.insert(kind)
    });
}

fn check_open_closed(f: &Frame, failures: &mut Vec<String>) {
    let l = |a| f.label(a);
    let whole = Sublocale::whole(f);
    let trivial = Sublocale::trivial(f);
    let mut local = Vec::new();
    for a in f.elements() {
        let (o, c) = (open_sublocale(f, a), closed_sublocale(f, a));
        check(
            &mut local,
            is_sublocale(f, o.members()) && is_sublocale(f, c.members()),
            || format!("o(a), c(a) are sublocales fails at {}", l(a)),
        );
        let both = [o.clone(), c.clone()];
        check(
            &mut local,
            intersect_sublocales(f, &both).unwrap() == trivial
                && join_sublocales(f, &both).unwrap() == whole,
            || format!("o(a), c(a) complementary fails at {}", l(a)),
        );
        check(&mut local, o.is_dense() == f.is_dense_element(a), || {
            format!("o(a) dense ⟺ a* = 0 fails at {}", l(a))
        });
        for b in f.elements() {
            let (ob, cb) = (open_sublocale(f, b), closed_sublocale(f, b));
            check(
                &mut local,
                intersect_sublocales(f, &[c.clone(), cb.clone()]).unwrap()
                    == closed_sublocale(f, f.join(a, b)),
                || format!("c(a)∩c(b) = c(a∨b) fails at {}, {}", l(a), l(b)),
            );
            check(
                &mut local,
                join_sublocales(f, &[c.clone(), cb]).unwrap() == closed_sublocale(f, f.meet(a, b)),
                || format!("c(a)∨c(b) = c(a∧b) fails at {}, {}", l(a), l(b)),
            );
            check(
                &mut local,
                join_sublocales(f, &[o.clone(), ob.clone()]).unwrap()
                    == open_sublocale(f, f.join(a, b)),
                || format!("o(a)∨o(b) = o(a∨b) fails at {}, {}", l(a), l(b)),
            );
            check(
                &mut local,
                intersect_sublocales(f, &[o.clone(), ob]).unwrap()
                    == open_sublocale(f, f.meet(a, b)),
                || format!("o(a)∩o(b) = o(a∧b) fails at {}, {}", l(a), l(b)),
            );
        }
    }
    dedupe_by_kind(&mut local);
    failures.extend(local);
}

fn check_constructions(f: &Frame, report: &Report, failures: &mut Vec<String>) {
    let push_err = |failures: &mut Vec<String>, e: DemorganError| failures.push(e.to_string());
    let b = match booleanization(f) {
        Ok(b) => b,
        Err(e) => return push_err(failures, e),
    };
    let m = demorganization(f);
    match booleanization_via_dense_opens(f) {
        Ok(alt) => check(failures, alt == b, || {
            format!("⋂ dense opens {alt:?} differs from regular elements {b:?}")
        }),
        Err(e) => push_err(failures, e),
    }
    let flags = &report.flags;
    check(failures, b.members().is_subset(m.members()), || {
        "B_L ⊆ M_L fails".into()
    });
    check(failures, flags.dense_ok, || {
        "B_L and M_L dense fails".into()
    });
    check(failures, flags.fitted_b, || "B_L fitted fails".into());
    check(failures, flags.fitted_m, || "M_L fitted fails".into());
    check(failures, flags.ed == flags.m_equals_l, || {
        "extremally disconnected ⟺ M_L = L fails".into()
    });
    check(failures, flags.boolean == (b.len() == f.size()), || {
        "Boolean ⟺ B_L = L fails".into()
    });
    check(failures, sublocale_is_boolean(&b), || {
        "B_L Boolean fails".into()
    });
    match sublocale_is_extremally_disconnected(&m) {
        Ok(ed) => check(failures, ed, || "M_L extremally disconnected fails".into()),
        Err(e) => push_err(failures, e),
    }
    for s in [&b, &m] {
        match verify_nearly_open(f, s) {
            Ok(r) => check(failures, r.passed(), || {
                format!(
                    "nearly open fails for {s:?} at {:?}",
                    labels(f, &r.failures)
                )
            }),
            Err(e) => push_err(failures, e),
        }
    }
    for a in f.elements() {
        let of_form = f.elements().any(|x| a == f.join(x, f.pseudocomplement(x)));
        check(failures, f.is_dense_element(a) == of_form, || {
            format!("dense ⟺ of the form b∨b* fails at {}", f.label(a))
        });
    }
}

fn labels(f: &Frame, ids: &[crate::frame::ElementId]) -> Vec<String> {
    ids.iter().map(|&a| f.label(a)).collect()
}

/// Runs the three enumeration oracles, appending any disagreement to
/// `failures`; returns whether all agree with the formulas.
pub fn check_oracles(f: &Frame, failures: &mut Vec<String>) -> bool {
    let before = failures.len();
    let (b, m) = match booleanization(f) {
        Ok(b) => (b, demorganization(f)),
        Err(e) => {
            failures.push(e.to_string());
            return false;
        }
    };
    let mut compare =
        |what: &str, got: Result<Sublocale<'_>, DemorganError>, want: &Sublocale<'_>| match got {
            Ok(s) if &s == want => {}
            Ok(s) => failures.push(format!("oracle {what} gave {s:?}, formula gave {want:?}")),
            Err(e) => failures.push(format!("oracle {what}: {e}")),
        };
    compare("least dense", oracle_least_dense(f), &b);
    compare("unique Boolean dense", oracle_unique_boolean_dense(f), &b);
    compare(
        "largest dense extremally disconnected",
        oracle_largest_dense_ed(f),
        &m,
    );
    failures.len() == before
}

/// Per-sublocale invariants over all of `S(L)`.
fn check_every_sublocale(f: &Frame, failures: &mut Vec<String>) {
    let all = match enumerate_sublocales_capped(f, DEFAULT_ENUMERATION_CAP) {
        Ok(all) => all,
        Err(SublocaleError::TooLarge { .. }) => return,
        Err(e) => return failures.push(e.to_string()),
    };
    let opens: Vec<Sublocale<'_>> = f.elements().map(|a| open_sublocale(f, a)).collect();
    let mut local = Vec::new();
    for s in &all {
        let nu = s.nucleus();
        check(&mut local, nu.is_nucleus(), || {
            format!("nucleus laws fail for {s:?}")
        });
        check(&mut local, &nu.fixed_points() == s.members(), || {
            format!("nucleus fixed points fail for {s:?}")
        });
        let lm = f.elements().all(|a| {
            s.members()
                .iter()
                .all(|x| f.heyting(nu.apply(a), x) == f.heyting(a, x))
        });
        check(&mut local, lm, || format!("ν(a)→s = a→s fails for {s:?}"));

        let fit = s.fitting();
        check(
            &mut local,
            s.members().is_subset(fit.members()) && fit.fitting() == fit,
            || format!("fitting is a closure fails for {s:?}"),
        );
        let containing: Vec<Sublocale<'_>> = opens
            .iter()
            .filter(|o| s.members().is_subset(o.members()))
            .cloned()
            .collect();
        let is_meet_of_opens = intersect_sublocales(f, &containing).unwrap() == *s;
        check(&mut local, s.is_fitted() == is_meet_of_opens, || {
            format!("fitted ⟺ intersection of opens fails for {s:?}")
        });

        if s.is_dense() {
            let induced = s.induced_frame();
            let inherited = s.members().iter().all(|x| {
                let inner = induced.from_ambient(x).unwrap();
                induced.to_ambient(induced.frame.pseudocomplement(inner)) == f.pseudocomplement(x)
            });
            check(&mut local, inherited, || {
                format!("pseudocomplement inherited fails for {s:?}")
            });
            match verify_nearly_open(f, s) {
                Ok(r) => check(&mut local, r.passed(), || {
                    format!("nearly open fails for {s:?}")
                }),
                Err(e) => local.push(e.to_string()),
            }
        }
    }
    failures.extend(local);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{fixtures, from_topology, standard_frame, StandardFamily};

    #[test]
    fn analyze_f5_topology() {
        let f = from_topology(&fixtures::f5_topology()).unwrap();
        let r = analyze("F5", &f).unwrap();
        assert_eq!(r.booleanization, ["∅", "{x}", "{y}", "{x,y,z}"]);
        assert_eq!(r.demorganization, r.booleanization);
        assert!(!r.flags.ed);
        assert!(r.flags.b_equals_m);
        assert!(!r.flags.m_equals_l);
    }

    #[test]
    fn analyze_c3_and_b4() {
        let r = analyze("C3", &fixtures::c3()).unwrap();
        assert_eq!(r.booleanization, ["0", "1"]);
        assert_eq!(r.demorganization, ["0", "m", "1"]);
        assert!(r.flags.ed && r.flags.m_equals_l && !r.flags.b_equals_m);
        let r = analyze("B4", &standard_frame(StandardFamily::Boolean, 2).unwrap()).unwrap();
        assert!(r.flags.boolean && r.flags.m_equals_l);
    }

    #[test]
    fn verify_with_oracles() {
        for (name, f) in [
            ("C3", fixtures::c3()),
            ("F5", fixtures::f5()),
            ("B4", fixtures::b4()),
        ] {
            let r = verify(name, &f, OracleMode::Required).unwrap();
            assert!(r.law_failures.is_empty(), "{name}: {:?}", r.law_failures);
            assert_eq!(r.oracle.agree, Some(true));
            assert!(r.ok());
        }
    }

    #[test]
    fn verify_reports_tampering() {
        let c3 = fixtures::c3();
        let mut table = Vec::new();
        for a in c3.elements() {
            for b in c3.elements() {
                table.push(c3.heyting(a, b).index());
            }
        }
        table[3] = 1; // m → 0 := m
        let bad = c3.with_heyting_table(table).unwrap();
        let r = verify("bad", &bad, OracleMode::Off).unwrap();
        assert!(r.law_failures.iter().any(|l| l.starts_with("H5:")));
        assert!(!r.ok());
    }

    #[test]
    fn oracle_mode_limits() {
        let big = standard_frame(StandardFamily::Boolean, 5).unwrap();
        assert!(matches!(
            verify("big", &big, OracleMode::Required),
            Err(AnalysisError::TooLarge { size: 32, .. })
        ));
        let r = verify("big", &big, OracleMode::IfFeasible).unwrap();
        assert!(!r.oracle.ran && r.oracle.agree.is_none());
        assert!(r.ok(), "{:?}", r.law_failures);
    }

    #[test]
    fn report_json_field_names() {
        let r = analyze("C3", &fixtures::c3()).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        let flags = json["flags"].as_object().unwrap();
        for key in [
            "dense_ok",
            "fitted_B",
            "fitted_M",
            "ed",
            "boolean",
            "B_equals_M",
            "M_equals_L",
        ] {
            assert!(flags.contains_key(key), "{key}");
        }
        assert!(json["oracle"].get("agree").is_none());
        let back: Report = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
    }
}
