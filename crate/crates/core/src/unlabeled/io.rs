//! Distance files and configuration JSON.
//!
//! Distance file: first line `n m d`, then `m` whitespace-separated squared
//! distances (line breaks among them are ignored).

use serde_json::Value;

use super::DistanceMultiset;
use crate::error::{Error, Result};
use crate::linalg::Configuration;

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceFile {
    pub n: usize,
    pub d: usize,
    pub values: DistanceMultiset,
}

pub fn parse_distance_file(src: &str) -> Result<DistanceFile> {
    let mut lines = src.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty distance file".into()))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header token {t:?}"))))
        .collect::<Result<_>>()?;
    let [n, m, d] = nums[..] else {
        return Err(Error::Parse(format!("header must be `n m d`, got {header:?}")));
    };
    let values: Vec<f64> = lines
        .flat_map(str::split_whitespace)
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad distance {t:?}"))))
        .collect::<Result<_>>()?;
    if values.len() != m {
        return Err(Error::Parse(format!("expected {m} distances, found {}", values.len())));
    }
    Ok(DistanceFile { n, d, values: DistanceMultiset::new(values)? })
}

pub fn to_distance_file(n: usize, d: usize, values: &DistanceMultiset) -> String {
    let body: Vec<String> = values.values().iter().map(|v| format!("{v:?}")).collect();
    format!("{n} {} {d}\n{}\n", values.len(), body.join(" "))
}

/// Reads `[[x, y, ...], ...]`, or an object with such a `coords` field
/// (a solution record from the reconstruction output).
pub fn parse_configuration_json(src: &str) -> Result<Configuration> {
    let value: Value = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
    let arr = match &value {
        Value::Object(o) => o.get("coords").ok_or_else(|| Error::Parse("object without `coords`".into()))?,
        v => v,
    };
    let points: Vec<Vec<f64>> = serde_json::from_value(arr.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let d = points.first().map_or(0, Vec::len);
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::Parse("points of unequal dimension".into()));
    }
    if points.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Parse("non-finite coordinate".into()));
    }
    Ok(Configuration::from_points(&points))
}
