use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::measure::{VolumeEstimate, VolumeKind};
use crate::precise::Interval;
use crate::scalar::{self, serde_q, Q};

/// A compared quantity: an exact rational, a rigorous enclosure, or an
/// estimate with standard error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Quantity {
    Exact {
        #[serde(with = "serde_q")]
        value: Q,
    },
    Interval {
        #[serde(with = "serde_q")]
        lo: Q,
        #[serde(with = "serde_q")]
        hi: Q,
        approx: f64,
    },
    Estimate {
        value: f64,
        stderr: f64,
    },
}

impl Quantity {
    pub fn exact(value: Q) -> Self {
        Quantity::Exact { value }
    }

    pub fn int(n: i64) -> Self {
        Quantity::Exact { value: scalar::q(n) }
    }

    pub fn enclosure(i: &Interval) -> Self {
        if i.is_point() {
            return Quantity::Exact { value: i.lower() };
        }
        Quantity::Interval { lo: i.lower(), hi: i.upper(), approx: i.mid_f64() }
    }

    pub fn bounds(lo: Q, hi: Q) -> Self {
        if lo == hi {
            return Quantity::Exact { value: lo };
        }
        let approx = scalar::to_f64(&((&lo + &hi) / scalar::q(2)));
        Quantity::Interval { lo, hi, approx }
    }

    pub fn volume(v: &VolumeEstimate) -> Self {
        match v.kind {
            VolumeKind::Exact | VolumeKind::Grid => Quantity::Exact { value: v.value.clone() },
            VolumeKind::MonteCarlo => Quantity::Estimate { value: v.value_f64(), stderr: v.stderr },
        }
    }

    /// Smallest value the quantity may take.
    pub fn lower(&self) -> Q {
        match self {
            Quantity::Exact { value } => value.clone(),
            Quantity::Interval { lo, .. } => lo.clone(),
            Quantity::Estimate { value, .. } => scalar::from_f64(*value).expect("finite estimate"),
        }
    }

    /// Largest value the quantity may take.
    pub fn upper(&self) -> Q {
        match self {
            Quantity::Exact { value } => value.clone(),
            Quantity::Interval { hi, .. } => hi.clone(),
            Quantity::Estimate { value, .. } => scalar::from_f64(*value).expect("finite estimate"),
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            Quantity::Exact { value } => scalar::to_f64(value),
            Quantity::Interval { approx, .. } => *approx,
            Quantity::Estimate { value, .. } => *value,
        }
    }
}

/// `lhs <= rhs` for a side condition of a check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub pass: bool,
}

impl Condition {
    pub fn le(name: impl Into<String>, lhs: Quantity, rhs: Quantity) -> Self {
        let pass = lhs.upper() <= rhs.lower();
        Condition { name: name.into(), lhs, rhs, pass }
    }

    pub fn holds(name: impl Into<String>, pass: bool) -> Self {
        let flag = |b: bool| Quantity::int(i64::from(b));
        Condition { name: name.into(), lhs: Quantity::int(1), rhs: flag(pass), pass }
    }
}

/// Outcome of one inequality verification, oriented as `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub name: String,
    pub lhs: Quantity,
    pub rhs: Quantity,
    /// `lhs / rhs`, absent when `rhs` is zero.
    pub ratio: Option<f64>,
    #[serde(with = "serde_q")]
    pub error_budget: Q,
    pub pass: bool,
    pub inputs: Vec<String>,
    pub parameters: BTreeMap<String, Value>,
    pub conditions: Vec<Condition>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Value::is_null", default)]
    pub details: Value,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, lhs: Quantity, rhs: Quantity, error_budget: Q) -> Self {
        let rhs_value = rhs.approx();
        let ratio = (rhs_value != 0.0).then(|| lhs.approx() / rhs_value);
        let mut report = CheckReport {
            name: name.into(),
            lhs,
            rhs,
            ratio,
            error_budget,
            pass: false,
            inputs: Vec::new(),
            parameters: BTreeMap::new(),
            conditions: Vec::new(),
            notes: Vec::new(),
            details: Value::Null,
        };
        report.pass = report.recompute_pass();
        report
    }

    /// `upper(lhs) <= lower(rhs) + errorBudget` and every side condition.
    pub fn recompute_pass(&self) -> bool {
        self.lhs.upper() <= self.rhs.lower() + &self.error_budget && self.conditions.iter().all(|c| c.pass)
    }

    pub fn with_input(mut self, description: impl Into<String>) -> Self {
        self.inputs.push(description.into());
        self
    }

    pub fn with_param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn with_condition(mut self, condition: Condition) -> Self {
        self.conditions.push(condition);
        self.pass = self.recompute_pass();
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = details;
        self
    }
}

/// Rolls many reports into one: `lhs` counts failures against zero.
pub fn aggregate(name: impl Into<String>, reports: &[CheckReport]) -> CheckReport {
    let failed: Vec<usize> = reports.iter().enumerate().filter(|(_, r)| !r.pass).map(|(i, _)| i).collect();
    let max_ratio = reports.iter().filter_map(|r| r.ratio).fold(None, |acc: Option<f64>, r| {
        Some(acc.map_or(r, |a| a.max(r)))
    });
    CheckReport::new(name, Quantity::int(failed.len() as i64), Quantity::int(0), scalar::q(0))
        .with_param("cases", reports.len())
        .with_details(serde_json::json!({ "failedCases": failed, "maxRatio": max_ratio }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, ratio};

    #[test]
    fn pass_is_recomputable_and_honours_budget() {
        let r = CheckReport::new("t", Quantity::exact(ratio(11, 10)), Quantity::int(1), ratio(1, 10));
        assert!(r.pass);
        assert_eq!(r.pass, r.recompute_pass());
        let r = CheckReport::new("t", Quantity::exact(ratio(12, 10)), Quantity::int(1), ratio(1, 10));
        assert!(!r.pass);
        let r = r.with_condition(Condition::holds("never", false));
        assert!(!r.recompute_pass());
    }

    #[test]
    fn aggregate_counts_failures() {
        let ok = CheckReport::new("a", Quantity::int(1), Quantity::int(2), q(0));
        let bad = CheckReport::new("b", Quantity::int(3), Quantity::int(2), q(0));
        let agg = aggregate("all", &[ok.clone(), bad, ok]);
        assert!(!agg.pass);
        assert_eq!(agg.lhs, Quantity::int(1));
        assert_eq!(agg.details["failedCases"], serde_json::json!([1]));
        assert_eq!(agg.details["maxRatio"], 1.5);
    }

    #[test]
    fn intervals_compare_conservatively() {
        let overlap = Condition::le("x", Quantity::bounds(q(1), q(3)), Quantity::bounds(q(2), q(4)));
        assert!(!overlap.pass);
        let apart = Condition::le("x", Quantity::bounds(q(1), q(2)), Quantity::bounds(q(2), q(4)));
        assert!(apart.pass);
    }

    #[test]
    fn json_field_names() {
        let r = CheckReport::new("demo", Quantity::exact(ratio(1, 3)), Quantity::int(0), q(0)).with_param("seed", 42);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["errorBudget"], "0");
        assert_eq!(v["lhs"]["kind"], "exact");
        assert_eq!(v["lhs"]["value"], "1/3");
        assert!(v["ratio"].is_null());
        assert!(v.get("details").is_none());
        let back: CheckReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
