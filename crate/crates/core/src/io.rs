//! Text and JSON forms of families and good cyclic orders.
//!
//! Line form: one set per line, labels comma-separated in ascending order,
//! sets in canonical order, every line newline-terminated.
//! JSON form: `{"n":…,"r":…,"sets":[[…],…]}` with `n` the edge count of
//! `M_n`.

use serde::{Deserialize, Serialize};

use crate::circle::GoodCyclicOrder;
use crate::error::{param_err, Result};
use crate::family::UniformFamily;
use crate::vertex_set::{MatchingGraph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub n: u32,
    pub r: u32,
    pub sets: Vec<Vec<u32>>,
}

impl FamilyDoc {
    pub fn from_family(n: u32, fam: &UniformFamily) -> Self {
        FamilyDoc {
            n,
            r: fam.r(),
            sets: fam.sets().iter().map(|s| s.vertices().collect()).collect(),
        }
    }

    pub fn into_family(self) -> Result<UniformFamily> {
        MatchingGraph::new(self.n)?;
        let sets = self
            .sets
            .into_iter()
            .map(VertexSet::from_vertices)
            .collect::<Result<Vec<_>>>()?;
        UniformFamily::new(2 * self.n, self.r, sets)
    }
}

pub fn family_to_lines(fam: &UniformFamily) -> String {
    let mut out = String::new();
    for s in fam.sets() {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}

fn parse_set(line: &str) -> Result<VertexSet> {
    let labels = line
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .map_err(|_| param_err!("bad vertex label {tok:?} in line {line:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    let s = VertexSet::from_vertices(labels.iter().copied())?;
    if s.len() as usize != labels.len() {
        return Err(param_err!("repeated label in line {line:?}"));
    }
    Ok(s)
}

/// Parses the line form for `M_n`. The cardinality is read from the first
/// set; `r` must be supplied for an empty file.
pub fn family_from_lines(text: &str, n: u32, r: Option<u32>) -> Result<UniformFamily> {
    MatchingGraph::new(n)?;
    let sets = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_set)
        .collect::<Result<Vec<_>>>()?;
    let r = match (r, sets.first()) {
        (Some(r), _) => r,
        (None, Some(s)) => s.len(),
        (None, None) => return Err(param_err!("empty family file needs an explicit r")),
    };
    UniformFamily::new(2 * n, r, sets)
}

pub fn family_to_json(n: u32, fam: &UniformFamily) -> String {
    serde_json::to_string(&FamilyDoc::from_family(n, fam)).expect("plain data serializes")
}

pub fn family_from_json(text: &str) -> Result<(u32, UniformFamily)> {
    let doc: FamilyDoc =
        serde_json::from_str(text).map_err(|e| param_err!("malformed family JSON: {e}"))?;
    let n = doc.n;
    Ok((n, doc.into_family()?))
}

pub fn order_to_string(order: &GoodCyclicOrder) -> String {
    order.to_string()
}

pub fn order_from_str(text: &str) -> Result<GoodCyclicOrder> {
    let seq = text
        .trim()
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .map_err(|_| param_err!("bad vertex label {tok:?} in order"))
        })
        .collect::<Result<Vec<_>>>()?;
    GoodCyclicOrder::new(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{enumerate_family, FamilyKind};

    #[test]
    fn line_form_is_exact() {
        let fam = enumerate_family(2, 2, FamilyKind::Union).unwrap();
        let text = family_to_lines(&fam);
        assert_eq!(text, "1,2\n2,3\n1,4\n3,4\n");
        assert_eq!(family_from_lines(&text, 2, None).unwrap(), fam);
    }

    #[test]
    fn json_form_is_exact() {
        let fam = enumerate_family(2, 2, FamilyKind::Union).unwrap();
        let text = family_to_json(2, &fam);
        assert_eq!(text, r#"{"n":2,"r":2,"sets":[[1,2],[2,3],[1,4],[3,4]]}"#);
        let (n, back) = family_from_json(&text).unwrap();
        assert_eq!(n, 2);
        assert_eq!(back, fam);
    }

    #[test]
    fn parse_errors() {
        assert!(family_from_lines("1,x\n", 2, None).is_err());
        assert!(family_from_lines("1,1\n", 2, None).is_err());
        assert!(family_from_lines("1,2\n1,2,3\n", 2, None).is_err());
        assert!(family_from_lines("", 2, None).is_err());
        assert!(family_from_lines("", 2, Some(2)).unwrap().is_empty());
        assert!(family_from_json("{\"n\":2}").is_err());
    }

    #[test]
    fn order_round_trip() {
        let o = order_from_str("1,2,3,4,5,6").unwrap();
        assert_eq!(order_to_string(&o), "1,2,3,4,5,6");
        assert!(order_from_str("1,2,3,5,4,6").is_err());
    }
}
