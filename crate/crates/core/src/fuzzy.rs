//! Membership functions, linguistic variables and fuzzification.
//!
//! Crisp sensor values are mapped to label→degree states by piecewise-linear
//! membership functions. Actuation uses max-membership selection plus
//! threshold scaling; there is no defuzzification stage.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("membership break points must be non-decreasing: {0:?}")]
    InvalidBreakPoints(Vec<f64>),
    #[error("degree {0} outside [0,1]")]
    DegreeOutOfRange(f64),
    #[error("no labels present for variable `{0}`")]
    EmptyState(String),
}

/// A triangular or trapezoidal membership function.
///
/// Degenerate edges act as shoulders: `triangular(a,a,c)` stays at 1 for all
/// `x <= a`, and `triangular(a,c,c)` stays at 1 for all `x >= c`, so a
/// variable's first and last labels cover the whole axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum MembershipFunction {
    Triangular { a: f64, b: f64, c: f64 },
    Trapezoidal { a: f64, b: f64, c: f64, d: f64 },
}

impl MembershipFunction {
    pub fn triangular(a: f64, b: f64, c: f64) -> Result<MembershipFunction, FuzzyError> {
        if a <= b && b <= c {
            Ok(MembershipFunction::Triangular { a, b, c })
        } else {
            Err(FuzzyError::InvalidBreakPoints(vec![a, b, c]))
        }
    }

    pub fn trapezoidal(a: f64, b: f64, c: f64, d: f64) -> Result<MembershipFunction, FuzzyError> {
        if a <= b && b <= c && c <= d {
            Ok(MembershipFunction::Trapezoidal { a, b, c, d })
        } else {
            Err(FuzzyError::InvalidBreakPoints(vec![a, b, c, d]))
        }
    }

    pub fn break_points(&self) -> Vec<f64> {
        match *self {
            MembershipFunction::Triangular { a, b, c } => vec![a, b, c],
            MembershipFunction::Trapezoidal { a, b, c, d } => vec![a, b, c, d],
        }
    }

    /// Membership degree at `x`, always within [0,1].
    pub fn membership(&self, x: f64) -> f64 {
        let (a, b, c, d) = match *self {
            MembershipFunction::Triangular { a, b, c } => (a, b, b, c),
            MembershipFunction::Trapezoidal { a, b, c, d } => (a, b, c, d),
        };
        if x < b {
            if a == b {
                1.0 // left shoulder
            } else if x <= a {
                0.0
            } else {
                (x - a) / (b - a)
            }
        } else if x <= c {
            1.0
        } else if c == d {
            1.0 // right shoulder
        } else if x >= d {
            0.0
        } else {
            (d - x) / (d - c)
        }
    }
}

/// A named variable with an ordered label set over a crisp universe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinguisticVariable {
    pub name: String,
    pub universe: (f64, f64),
    pub labels: Vec<(String, MembershipFunction)>,
}

impl LinguisticVariable {
    pub fn new(
        name: &str,
        universe: (f64, f64),
        labels: Vec<(&str, MembershipFunction)>,
    ) -> LinguisticVariable {
        debug_assert!(labels.len() >= 2, "a linguistic variable needs >= 2 labels");
        LinguisticVariable {
            name: name.to_string(),
            universe,
            labels: labels
                .into_iter()
                .map(|(l, mf)| (l.to_string(), mf))
                .collect(),
        }
    }

    pub fn label_names(&self) -> Vec<&str> {
        self.labels.iter().map(|(l, _)| l.as_str()).collect()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|(l, _)| l == label)
    }

    /// Degrees for every label at crisp input `x`, in declaration order.
    pub fn fuzzify(&self, x: f64) -> Vec<(String, f64)> {
        self.labels
            .iter()
            .map(|(label, mf)| (label.clone(), mf.membership(x)))
            .collect()
    }

    /// Label with the strictly greatest degree at `x`; ties go to the first
    /// declared label.
    pub fn dominant(&self, x: f64) -> (String, f64) {
        let degrees = self.fuzzify(x);
        // fuzzify always returns >= 2 labels, so the unwrap cannot fire
        let (label, degree) = dominant_label(&degrees).unwrap();
        (label.to_string(), degree)
    }
}

/// Argmax over a label→degree slice; ties break toward the earliest entry.
pub fn dominant_label(degrees: &[(String, f64)]) -> Option<(&str, f64)> {
    let mut best: Option<(&str, f64)> = None;
    for (label, degree) in degrees {
        match best {
            Some((_, best_degree)) if *degree <= best_degree => {}
            _ => best = Some((label.as_str(), *degree)),
        }
    }
    best
}

/// Per-variable label→degree snapshot produced by fuzzification.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FuzzyState {
    vars: Vec<(String, Vec<(String, f64)>)>,
}

impl FuzzyState {
    pub fn new() -> FuzzyState {
        FuzzyState::default()
    }

    pub fn insert(&mut self, var: &str, degrees: Vec<(String, f64)>) {
        if let Some(entry) = self.vars.iter_mut().find(|(name, _)| name == var) {
            entry.1 = degrees;
        } else {
            self.vars.push((var.to_string(), degrees));
        }
    }

    pub fn get(&self, var: &str) -> Option<&[(String, f64)]> {
        self.vars
            .iter()
            .find(|(name, _)| name == var)
            .map(|(_, d)| d.as_slice())
    }

    pub fn dominant(&self, var: &str) -> Result<(&str, f64), FuzzyError> {
        self.get(var)
            .and_then(dominant_label)
            .ok_or_else(|| FuzzyError::EmptyState(var.to_string()))
    }

    pub fn vars(&self) -> impl Iterator<Item = (&str, &[(String, f64)])> {
        self.vars.iter().map(|(n, d)| (n.as_str(), d.as_slice()))
    }
}

/// Builds the fuzzy state for a set of variables from crisp readings.
pub fn fuzzify_all(vars: &[LinguisticVariable], readings: &[(String, f64)]) -> FuzzyState {
    let mut state = FuzzyState::new();
    for var in vars {
        if let Some((_, x)) = readings.iter().find(|(name, _)| name == &var.name) {
            state.insert(&var.name, var.fuzzify(*x));
        }
    }
    state
}

/// Scales an action threshold by a membership degree. The result never
/// exceeds the threshold for non-negative thresholds.
pub fn scale_action(threshold: f64, degree: f64) -> Result<f64, FuzzyError> {
    if !(0.0..=1.0).contains(&degree) {
        return Err(FuzzyError::DegreeOutOfRange(degree));
    }
    Ok(threshold * degree)
}

/// The fan-controller temperature variable used by the worked examples:
/// cold/warm/hot over 0..40 degrees.
pub fn fan_temperature_variable() -> LinguisticVariable {
    LinguisticVariable::new(
        "temp",
        (0.0, 40.0),
        vec![
            ("cold", MembershipFunction::triangular(0.0, 0.0, 20.0).unwrap()),
            ("warm", MembershipFunction::triangular(10.0, 22.0, 34.0).unwrap()),
            ("hot", MembershipFunction::triangular(25.0, 40.0, 40.0).unwrap()),
        ],
    )
}
