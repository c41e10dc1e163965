//! The shifting result type shared by the generic engine and the surface algorithms.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::Face;
use crate::lex;
use crate::surface_shift::TraceSummary;

/// How a dimension of a result was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certification {
    /// Exact: the computed family is forced by the one-sided error of specialization.
    Certified,
    /// Not certified; this many fresh seeds reproduced the reported family.
    MonteCarlo(usize),
    /// Derived by the surface theorems and the certified small-case tables.
    CertifiedByTheorem,
}

impl Certification {
    pub fn is_exact(self) -> bool {
        !matches!(self, Certification::MonteCarlo(_))
    }
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certification::Certified => f.write_str("certified"),
            Certification::MonteCarlo(k) => write!(f, "monte-carlo({k})"),
            Certification::CertifiedByTheorem => f.write_str("certified-by-theorem"),
        }
    }
}

impl FromStr for Certification {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "certified" => Ok(Certification::Certified),
            "certified-by-theorem" => Ok(Certification::CertifiedByTheorem),
            _ => s
                .strip_prefix("monte-carlo(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|k| k.parse().ok())
                .map(Certification::MonteCarlo)
                .ok_or_else(|| format!("unknown certification '{s}'")),
        }
    }
}

impl Serialize for Certification {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Certification {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// Faces of the shifted complex per dimension, with provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftResult {
    pub n: usize,
    /// Field modulus of the specialization; absent for theorem-derived results.
    pub modulus: Option<u64>,
    pub seeds: Vec<u64>,
    /// Lex-sorted faces of each dimension.
    pub faces_by_dim: Vec<Vec<Face>>,
    pub certified_by_dim: Vec<Certification>,
    pub trace: Option<TraceSummary>,
}

impl ShiftResult {
    pub fn faces(&self, d: usize) -> &[Face] {
        self.faces_by_dim.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dim.iter().map(Vec::len).collect()
    }

    pub fn contains(&self, face: &[u32]) -> bool {
        !face.is_empty() && self.faces(face.len() - 1).binary_search_by(|f| f.as_slice().cmp(face)).is_ok()
    }

    /// Faces maximal under `<=_p` within each dimension `>= 1`.
    pub fn maximal_faces(&self) -> Vec<Face> {
        lex::maximal_faces(&self.faces_by_dim)
    }

    pub fn is_exact(&self) -> bool {
        self.certified_by_dim.iter().all(|c| c.is_exact())
    }

    /// Same faces in every dimension, ignoring provenance.
    pub fn same_faces(&self, other: &ShiftResult) -> bool {
        self.n == other.n && self.faces_by_dim == other.faces_by_dim
    }

    /// Betti numbers read off the shifted complex: `b_d` counts `d`-faces without vertex 1
    /// whose cone from vertex 1 is not a face. Dimension 0 is reported unreduced.
    pub fn betti(&self) -> Vec<usize> {
        betti_from_shift(&self.faces_by_dim)
    }
}

/// Betti numbers from a shifted family; see [`ShiftResult::betti`].
pub fn betti_from_shift(faces_by_dim: &[Vec<Face>]) -> Vec<usize> {
    let sets: Vec<HashSet<&[u32]>> = faces_by_dim.iter().map(|fs| fs.iter().map(Vec::as_slice).collect()).collect();
    let mut out = Vec::with_capacity(faces_by_dim.len());
    for (d, fs) in faces_by_dim.iter().enumerate() {
        let count = fs
            .iter()
            .filter(|f| f[0] != 1)
            .filter(|f| {
                let mut cone = Vec::with_capacity(f.len() + 1);
                cone.push(1);
                cone.extend_from_slice(f);
                sets.get(d + 1).is_none_or(|s| !s.contains(cone.as_slice()))
            })
            .count();
        out.push(if d == 0 && !fs.is_empty() { count + 1 } else { count });
    }
    out
}

struct DimMap<'a, T>(&'a [T]);

impl<T: Serialize> Serialize for DimMap<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (d, v) in self.0.iter().enumerate() {
            map.serialize_entry(&d.to_string(), v)?;
        }
        map.end()
    }
}

impl Serialize for ShiftResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("modulus", &self.modulus)?;
        map.serialize_entry("seeds", &self.seeds)?;
        map.serialize_entry("faces_by_dim", &DimMap(&self.faces_by_dim))?;
        map.serialize_entry("maximal_faces", &self.maximal_faces())?;
        map.serialize_entry("certified_by_dim", &DimMap(&self.certified_by_dim))?;
        if let Some(trace) = &self.trace {
            map.serialize_entry("trace", trace)?;
        }
        map.end()
    }
}

#[derive(Deserialize)]
struct ShiftResultJson {
    n: usize,
    modulus: Option<u64>,
    seeds: Vec<u64>,
    faces_by_dim: BTreeMap<String, Vec<Face>>,
    certified_by_dim: BTreeMap<String, Certification>,
    #[serde(default)]
    trace: Option<TraceSummary>,
}

fn by_dim<T, E: serde::de::Error>(map: BTreeMap<String, T>) -> Result<Vec<T>, E> {
    let mut keyed: Vec<(usize, T)> = map
        .into_iter()
        .map(|(k, v)| k.parse::<usize>().map(|d| (d, v)).map_err(|_| E::custom(format!("bad dimension key '{k}'"))))
        .collect::<Result<_, _>>()?;
    keyed.sort_by_key(|(d, _)| *d);
    if keyed.iter().enumerate().any(|(i, (d, _))| i != *d) {
        return Err(E::custom("dimension keys must be 0..=dim"));
    }
    Ok(keyed.into_iter().map(|(_, v)| v).collect())
}

impl<'de> Deserialize<'de> for ShiftResult {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = ShiftResultJson::deserialize(d)?;
        Ok(ShiftResult {
            n: raw.n,
            modulus: raw.modulus,
            seeds: raw.seeds,
            faces_by_dim: by_dim(raw.faces_by_dim)?,
            certified_by_dim: by_dim(raw.certified_by_dim)?,
            trace: raw.trace,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certification_strings() {
        for c in [Certification::Certified, Certification::MonteCarlo(3), Certification::CertifiedByTheorem] {
            assert_eq!(c.to_string().parse::<Certification>(), Ok(c));
        }
        assert!("monte-carlo(x)".parse::<Certification>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = ShiftResult {
            n: 3,
            modulus: Some(7),
            seeds: vec![1],
            faces_by_dim: vec![vec![vec![1], vec![2], vec![3]], vec![vec![1, 2], vec![1, 3]]],
            certified_by_dim: vec![Certification::Certified, Certification::MonteCarlo(3)],
            trace: None,
        };
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"maximal_faces\":[[1,3]]"));
        let back: ShiftResult = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
