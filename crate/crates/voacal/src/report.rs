//! JSON and text rendering of check reports.
//!
//! Document shape:
//!
//! ```json
//! {
//!   "reports": [
//!     {"suite": "bdm", "identity": "phi_intertwining", "params": {"N": "2", ...},
//!      "status": "pass", "k": null, "witness": null, "ms": 0,
//!      "informational": false}
//!   ],
//!   "summary": {"total": 1, "pass": 1, "fail": 0, "informational": 0, "inconclusive": 0}
//! }
//! ```
//!
//! `witness`, when present, is `{"at": {"x0": "-6", ...}, "lhs": str, "rhs": str}`.
//! Informational reports count only under `informational`.

use serde_json::{json, Map, Value};
use voacal_core::voa::{CheckReport, Status};

/// A report tagged with the suite that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub report: CheckReport,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub informational: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn of<'a>(reports: impl IntoIterator<Item = &'a CheckReport>) -> Self {
        let mut s = Summary::default();
        for r in reports {
            s.total += 1;
            if r.informational {
                s.informational += 1;
                continue;
            }
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Inconclusive => s.inconclusive += 1,
            }
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "total": self.total,
            "pass": self.pass,
            "fail": self.fail,
            "informational": self.informational,
            "inconclusive": self.inconclusive,
        })
    }
}

pub fn report_json(suite: &str, r: &CheckReport) -> Value {
    let mut params = Map::new();
    for (k, v) in &r.params {
        params.insert(k.clone(), Value::String(v.clone()));
    }
    let witness = r.witness.as_ref().map(|w| {
        let mut at = Map::new();
        for (v, e) in &w.at {
            at.insert(v.name().to_string(), Value::String(e.to_string()));
        }
        json!({"at": at, "lhs": w.lhs, "rhs": w.rhs})
    });
    json!({
        "suite": suite,
        "identity": r.identity,
        "params": params,
        "status": r.status.name(),
        "k": r.k,
        "witness": witness,
        "ms": r.ms,
        "informational": r.informational,
    })
}

pub fn document(reports: &[SuiteReport]) -> Value {
    let list: Vec<Value> = reports.iter().map(|r| report_json(r.suite, &r.report)).collect();
    json!({
        "reports": list,
        "summary": Summary::of(reports.iter().map(|r| &r.report)).to_json(),
    })
}

/// One line per report, then a summary line.
pub fn render_text(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(r.suite);
        out.push_str(": ");
        out.push_str(&r.report.to_string());
        out.push('\n');
    }
    let s = Summary::of(reports.iter().map(|r| &r.report));
    out.push_str(&format!(
        "total={} pass={} fail={} informational={} inconclusive={}\n",
        s.total, s.pass, s.fail, s.informational, s.inconclusive
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use voacal_core::formal::{FracExp, VarId};
    use voacal_core::voa::Witness;

    #[test]
    fn summary_counts() {
        let pass = CheckReport::new("a").pass(Some(2));
        let fail = CheckReport::new("b").fail(Witness {
            at: vec![(VarId::X, FracExp::new(-1, 2))],
            lhs: "1".into(),
            rhs: "0".into(),
        });
        let info = fail.clone().informational();
        let s = Summary::of([&pass, &fail, &info]);
        assert_eq!((s.total, s.pass, s.fail, s.informational), (3, 1, 1, 1));
    }

    #[test]
    fn json_shape() {
        let r = CheckReport::new("phi_intertwining").param("N", 2).fail(Witness {
            at: vec![(VarId::X0, FracExp::int(-6))],
            lhs: "a[-1]|0>".into(),
            rhs: "0".into(),
        });
        let v = report_json("bdm", &r);
        assert_eq!(v["status"], "fail");
        assert_eq!(v["params"]["N"], "2");
        assert_eq!(v["witness"]["at"]["x0"], "-6");
        assert_eq!(v["k"], Value::Null);
    }
}
