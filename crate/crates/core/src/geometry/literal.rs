//! JSON literal for polytopes: `{"vertices": [[..], ..]}` or
//! `{"halfspaces": [{"h": [..], "k": ..}, ..]}`. Written literals carry both.

use serde::{Deserialize, Serialize};

use super::{Halfspace, Polytope};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HalfspaceLiteral {
    pub h: Vec<f64>,
    pub k: f64,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PolytopeLiteral {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halfspaces: Option<Vec<HalfspaceLiteral>>,
}

impl PolytopeLiteral {
    /// Halfspaces win when both forms are present.
    pub fn to_polytope(&self) -> Result<Polytope> {
        if let Some(hs) = &self.halfspaces {
            let dim = hs
                .first()
                .map(|h| h.h.len())
                .ok_or_else(|| Error::Problem("polytope literal has no halfspaces".into()))?;
            let rows = hs.iter().map(|h| Halfspace::new(h.h.clone(), h.k)).collect();
            return Polytope::from_halfspaces(dim, rows);
        }
        match &self.vertices {
            Some(v) => Polytope::hull(v),
            None => Err(Error::Problem(
                "polytope literal needs \"vertices\" or \"halfspaces\"".into(),
            )),
        }
    }
}

impl From<&Polytope> for PolytopeLiteral {
    fn from(p: &Polytope) -> Self {
        Self {
            vertices: Some(p.vertices().to_vec()),
            halfspaces: Some(
                p.halfspaces()
                    .iter()
                    .map(|h| HalfspaceLiteral {
                        h: h.normal.clone(),
                        k: h.offset,
                    })
                    .collect(),
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_forms_parse() {
        let v: PolytopeLiteral = serde_json::from_str(r#"{"vertices": [[0,0],[1,0],[0,1]]}"#).unwrap();
        assert!((v.to_polytope().unwrap().volume() - 0.5).abs() < 1e-12);
        let h: PolytopeLiteral = serde_json::from_str(
            r#"{"halfspaces": [{"h":[-1,0],"k":0},{"h":[1,0],"k":2},{"h":[0,-1],"k":0},{"h":[0,1],"k":1}]}"#,
        )
        .unwrap();
        assert!((h.to_polytope().unwrap().volume() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn round_trip() {
        let p = Polytope::boxed(&[0.0, -1.0], &[3.0, 1.0]);
        let text = serde_json::to_string(&PolytopeLiteral::from(&p)).unwrap();
        let back: PolytopeLiteral = serde_json::from_str(&text).unwrap();
        assert!((back.to_polytope().unwrap().volume() - 6.0).abs() < 1e-12);
    }
}
