//! Soft sets over a finite universe and finite parameter set, soft points,
//! and soft real numbers with pointwise arithmetic and partial-order
//! comparison.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An ordered, finite, duplicate-free list of parameter labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParameterSet {
    labels: Vec<String>,
}

impl ParameterSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::Invalid("parameter set must be non-empty".into()));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::Invalid(format!("duplicate parameter label {l:?}")));
            }
        }
        Ok(Self { labels })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A finitely-indexed soft real number: one value per parameter label.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftReal<T> {
    params: ParameterSet,
    values: Vec<T>,
}

/// Outcome of a pointwise comparison of two soft reals. The pointwise order
/// is partial, so two values may be incomparable. The strongest relation
/// that holds is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ComparisonOutcome {
    Eq,
    Lt,
    Le,
    Gt,
    Ge,
    Incomparable,
}

impl<T: Scalar> SoftReal<T> {
    pub fn new(params: ParameterSet, values: Vec<T>) -> Result<Self> {
        if values.len() != params.len() {
            return Err(Error::Invalid(format!(
                "expected {} values, got {}",
                params.len(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { params, values })
    }

    /// The constant soft real with the same value at every parameter.
    pub fn constant(params: ParameterSet, value: T) -> Result<Self> {
        let n = params.len();
        Self::new(params, vec![value; n])
    }

    pub fn params(&self) -> &ParameterSet {
        &self.params
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value_at(&self, label: &str) -> Option<T> {
        self.params.index_of(label).map(|i| self.values[i])
    }

    /// Pointwise sum. Both operands must share the same parameter set.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.params != other.params {
            return Err(Error::ParameterMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| a + b)
            .collect();
        Self::new(self.params.clone(), values)
    }

    /// Pointwise comparison, reporting the strongest relation that holds.
    pub fn compare(&self, other: &Self) -> Result<ComparisonOutcome> {
        if self.params != other.params {
            return Err(Error::ParameterMismatch);
        }
        let mut all_eq = true;
        let mut all_le = true;
        let mut all_lt = true;
        let mut all_ge = true;
        let mut all_gt = true;
        for (&a, &b) in self.values.iter().zip(&other.values) {
            all_eq &= a == b;
            all_le &= a <= b;
            all_lt &= a < b;
            all_ge &= a >= b;
            all_gt &= a > b;
        }
        Ok(if all_eq {
            ComparisonOutcome::Eq
        } else if all_lt {
            ComparisonOutcome::Lt
        } else if all_le {
            ComparisonOutcome::Le
        } else if all_gt {
            ComparisonOutcome::Gt
        } else if all_ge {
            ComparisonOutcome::Ge
        } else {
            ComparisonOutcome::Incomparable
        })
    }
}

impl<T: Scalar + Serialize> Serialize for SoftReal<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a, T> {
            params: &'a [String],
            values: BTreeMap<&'a str, T>,
        }
        let values = self
            .params
            .labels()
            .iter()
            .map(|l| l.as_str())
            .zip(self.values.iter().copied())
            .collect();
        Repr {
            params: self.params.labels(),
            values,
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for SoftReal<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr<T> {
            params: Vec<String>,
            values: BTreeMap<String, T>,
        }
        let repr = Repr::<T>::deserialize(d)?;
        let params = ParameterSet::new(repr.params).map_err(serde::de::Error::custom)?;
        let mut values = Vec::with_capacity(params.len());
        for label in params.labels() {
            match repr.values.get(label) {
                Some(&v) => values.push(v),
                None => {
                    return Err(serde::de::Error::custom(format!(
                        "missing value for parameter {label:?}"
                    )))
                }
            }
        }
        SoftReal::new(params, values).map_err(serde::de::Error::custom)
    }
}

/// A soft set: each parameter label maps to a subset of a finite universe.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftSet {
    params: ParameterSet,
    universe: Vec<String>,
    // one element-index set per parameter label, in parameter order
    assignment: Vec<BTreeSet<usize>>,
}

/// A soft point: as a soft set, exactly one parameter maps to a singleton
/// and all other parameters map to the empty set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SoftPoint {
    pub element: String,
    pub param: String,
}

impl SoftSet {
    pub fn new<I, S>(
        params: ParameterSet,
        universe: I,
        assignment: &BTreeMap<String, Vec<String>>,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let universe: Vec<String> = universe.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for u in &universe {
            if !seen.insert(u.clone()) {
                return Err(Error::Invalid(format!("duplicate universe element {u:?}")));
            }
        }
        for key in assignment.keys() {
            if params.index_of(key).is_none() {
                return Err(Error::Invalid(format!(
                    "assignment references unknown parameter {key:?}"
                )));
            }
        }
        let mut sets = vec![BTreeSet::new(); params.len()];
        for (label, elements) in assignment {
            let pi = params.index_of(label).expect("checked above");
            for el in elements {
                match universe.iter().position(|u| u == el) {
                    Some(ei) => {
                        sets[pi].insert(ei);
                    }
                    None => {
                        return Err(Error::Invalid(format!(
                            "element {el:?} not in declared universe"
                        )))
                    }
                }
            }
        }
        Ok(Self {
            params,
            universe,
            assignment: sets,
        })
    }

    /// The null soft set: every parameter maps to the empty set.
    pub fn null<I, S>(params: ParameterSet, universe: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::new(params, universe, &BTreeMap::new())
    }

    /// The absolute soft set: every parameter maps to the whole universe.
    pub fn absolute<I, S>(params: ParameterSet, universe: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let universe: Vec<String> = universe.into_iter().map(Into::into).collect();
        let assignment = params
            .labels()
            .iter()
            .map(|l| (l.clone(), universe.clone()))
            .collect();
        Self::new(params, universe, &assignment)
    }

    pub fn params(&self) -> &ParameterSet {
        &self.params
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn is_null(&self) -> bool {
        self.assignment.iter().all(|s| s.is_empty())
    }

    pub fn elements_at(&self, label: &str) -> Option<Vec<&str>> {
        let pi = self.params.index_of(label)?;
        Some(
            self.assignment[pi]
                .iter()
                .map(|&ei| self.universe[ei].as_str())
                .collect(),
        )
    }

    /// Decomposes the soft set into its soft points, one per
    /// (parameter, element) pair, in parameter order then universe order.
    /// The null soft set decomposes into the empty list.
    pub fn to_points(&self) -> Vec<SoftPoint> {
        let mut points = Vec::new();
        for (pi, label) in self.params.labels().iter().enumerate() {
            for &ei in &self.assignment[pi] {
                points.push(SoftPoint {
                    element: self.universe[ei].clone(),
                    param: label.clone(),
                });
            }
        }
        points
    }

    /// Rebuilds a soft set from a list of soft points. Inverse of
    /// [`SoftSet::to_points`] for any soft set over the same universe and
    /// parameter set.
    pub fn from_points<I, S>(points: &[SoftPoint], params: ParameterSet, universe: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = Self::null(params, universe)?;
        for p in points {
            let pi = set
                .params
                .index_of(&p.param)
                .ok_or_else(|| Error::Invalid(format!("point parameter {:?} not declared", p.param)))?;
            let ei = set
                .universe
                .iter()
                .position(|u| u == &p.element)
                .ok_or_else(|| {
                    Error::Invalid(format!("point element {:?} not in universe", p.element))
                })?;
            set.assignment[pi].insert(ei);
        }
        Ok(set)
    }
}

impl Serialize for SoftSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            params: &'a [String],
            universe: &'a [String],
            assignment: BTreeMap<&'a str, Vec<&'a str>>,
        }
        let assignment = self
            .params
            .labels()
            .iter()
            .enumerate()
            .map(|(pi, l)| {
                (
                    l.as_str(),
                    self.assignment[pi]
                        .iter()
                        .map(|&ei| self.universe[ei].as_str())
                        .collect(),
                )
            })
            .collect();
        Repr {
            params: self.params.labels(),
            universe: &self.universe,
            assignment,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SoftSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            params: Vec<String>,
            universe: Vec<String>,
            assignment: BTreeMap<String, Vec<String>>,
        }
        let repr = Repr::deserialize(d)?;
        let params = ParameterSet::new(repr.params).map_err(serde::de::Error::custom)?;
        SoftSet::new(params, repr.universe, &repr.assignment).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(labels: &[&str]) -> ParameterSet {
        ParameterSet::new(labels.iter().copied()).unwrap()
    }

    fn sr(labels: &[&str], values: &[f64]) -> SoftReal<f64> {
        SoftReal::new(params(labels), values.to_vec()).unwrap()
    }

    #[test]
    fn add_is_componentwise() {
        let r = sr(&["a", "b"], &[1.0, 2.0]);
        let s = sr(&["a", "b"], &[3.0, 4.0]);
        assert_eq!(r.add(&s).unwrap().values(), &[4.0, 6.0]);
    }

    #[test]
    fn add_identity() {
        let z = sr(&["a", "b"], &[0.0, 0.0]);
        let s = sr(&["a", "b"], &[5.0, -1.0]);
        assert_eq!(z.add(&s).unwrap(), s);
    }

    #[test]
    fn add_rejects_mismatched_params() {
        let r = sr(&["a", "b"], &[1.0, 1.0]);
        let s = sr(&["a", "c"], &[1.0, 1.0]);
        assert_eq!(r.add(&s), Err(Error::ParameterMismatch));
    }

    #[test]
    fn compare_outcomes() {
        let cmp = |a: &[f64], b: &[f64]| {
            sr(&["a", "b"], a).compare(&sr(&["a", "b"], b)).unwrap()
        };
        assert_eq!(cmp(&[1.0, 2.0], &[2.0, 3.0]), ComparisonOutcome::Lt);
        assert_eq!(cmp(&[1.0, 3.0], &[2.0, 2.0]), ComparisonOutcome::Incomparable);
        assert_eq!(cmp(&[1.0, 2.0], &[1.0, 2.0]), ComparisonOutcome::Eq);
        assert_eq!(cmp(&[1.0, 2.0], &[1.0, 3.0]), ComparisonOutcome::Le);
        assert_eq!(cmp(&[2.0, 3.0], &[1.0, 2.0]), ComparisonOutcome::Gt);
        assert_eq!(cmp(&[1.0, 3.0], &[1.0, 2.0]), ComparisonOutcome::Ge);
    }

    #[test]
    fn singleton_decomposition() {
        let assignment = BTreeMap::from([("a".to_string(), vec!["x".to_string()])]);
        let s = SoftSet::new(params(&["a", "b"]), ["x", "y"], &assignment).unwrap();
        assert_eq!(
            s.to_points(),
            vec![SoftPoint {
                element: "x".into(),
                param: "a".into()
            }]
        );
    }

    #[test]
    fn null_set_has_no_points() {
        let s = SoftSet::null(params(&["a", "b"]), ["x", "y"]).unwrap();
        assert!(s.is_null());
        assert!(s.to_points().is_empty());
    }

    #[test]
    fn absolute_set_decomposes_fully() {
        let s = SoftSet::absolute(params(&["a"]), ["x", "y"]).unwrap();
        let pts = s.to_points();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].element, "x");
        assert_eq!(pts[1].element, "y");
    }

    #[test]
    fn from_points_empty_is_null() {
        let s = SoftSet::from_points(&[], params(&["a"]), ["x"]).unwrap();
        assert!(s.is_null());
    }

    #[test]
    fn from_points_rejects_unknown_element() {
        let pt = SoftPoint {
            element: "z".into(),
            param: "a".into(),
        };
        assert!(SoftSet::from_points(&[pt], params(&["a"]), ["x"]).is_err());
    }

    #[test]
    fn round_trip_small_random() {
        let assignment = BTreeMap::from([
            ("a".to_string(), vec!["x".to_string(), "z".to_string()]),
            ("b".to_string(), vec!["y".to_string()]),
        ]);
        let s = SoftSet::new(params(&["a", "b"]), ["x", "y", "z"], &assignment).unwrap();
        let back =
            SoftSet::from_points(&s.to_points(), s.params().clone(), ["x", "y", "z"]).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn soft_real_json_round_trip() {
        let r = sr(&["a", "b"], &[1.5, -2.0]);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"params":["a","b"],"values":{"a":1.5,"b":-2.0}}"#);
        let back: SoftReal<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn soft_set_json_round_trip() {
        let assignment = BTreeMap::from([("a".to_string(), vec!["x".to_string()])]);
        let s = SoftSet::new(params(&["a"]), ["x", "y"], &assignment).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        let back: SoftSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
