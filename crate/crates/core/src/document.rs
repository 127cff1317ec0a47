//! JSON interchange format for coverings.
//!
//! ```json
//! { "schema_version": 1,
//!   "metadata": { "construction": "cs1", "n": 4, "eps": "1/5" },
//!   "target": [triangle, ...],
//!   "pieces": [triangle, ...] }
//! ```
//!
//! A triangle is `{ "base_y", "base_x_left", "base_len", "apex_x", "apex_y" }`
//! with every value an exact rational string `"p/q"` (or `"p"`). Floats are
//! never written or accepted.

use serde::{Deserialize, Serialize};

use crate::constructions::{Construction, PieceRole};
use crate::error::{Error, Result};
use crate::geom::{Covering, HTriangle, Region};
use crate::rat::Rat;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Drawing role per piece, parallel to `pieces`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roles: Option<Vec<PieceRole>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringDocument {
    pub schema_version: u32,
    #[serde(default)]
    pub metadata: Metadata,
    pub target: Vec<HTriangle>,
    pub pieces: Vec<HTriangle>,
}

impl CoveringDocument {
    pub fn from_covering(c: &Covering) -> Self {
        CoveringDocument {
            schema_version: SCHEMA_VERSION,
            metadata: Metadata { label: Some(c.label.clone()).filter(|l| !l.is_empty()), ..Metadata::default() },
            target: c.target.parts().to_vec(),
            pieces: c.pieces().to_vec(),
        }
    }

    pub fn from_construction(c: &Construction) -> Self {
        let mut doc = CoveringDocument::from_covering(&c.covering);
        doc.metadata.construction = Some(c.params.variant.name().to_string());
        doc.metadata.n = Some(c.params.n);
        doc.metadata.eps = Some(c.params.eps.clone());
        doc.metadata.roles = Some(c.roles.clone());
        doc
    }

    pub fn parse(json: &str) -> Result<Self> {
        let doc: CoveringDocument = serde_json::from_str(json)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::SchemaVersion(doc.schema_version));
        }
        if let Some(roles) = &doc.metadata.roles {
            if roles.len() != doc.pieces.len() {
                return Err(Error::InvalidInput(format!(
                    "{} roles for {} pieces",
                    roles.len(),
                    doc.pieces.len()
                )));
            }
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn to_covering(&self) -> Result<Covering> {
        let label = self.metadata.label.clone().unwrap_or_default();
        Covering::new(Region::new(self.target.clone())?, self.pieces.clone(), label)
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cs1;
    use crate::rat::rat;

    #[test]
    fn triangle_schema_is_exact_strings() {
        let c = cs1(2, rat(1, 3)).unwrap();
        let doc = CoveringDocument::from_construction(&c);
        let json: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(json["schema_version"], 1);
        assert_eq!(json["metadata"]["eps"], "1/3");
        assert_eq!(json["metadata"]["construction"], "cs1");
        let t = &json["target"][0];
        assert_eq!(t["base_len"], "7/3");
        assert_eq!(t["apex_x"], "7/6");
        for key in ["base_y", "base_x_left", "base_len", "apex_x", "apex_y"] {
            assert!(t[key].is_string());
        }
        assert_eq!(json["pieces"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(CoveringDocument::parse("{").is_err());
        let v2 = r#"{"schema_version": 2, "target": [], "pieces": []}"#;
        assert!(matches!(CoveringDocument::parse(v2), Err(Error::SchemaVersion(2))));
        let float = r#"{"schema_version": 1, "target": [{"base_y": 0.5, "base_x_left": "0", "base_len": "1", "apex_x": "1/2", "apex_y": "1"}], "pieces": []}"#;
        assert!(CoveringDocument::parse(float).is_err());
        let empty = r#"{"schema_version": 1, "target": [], "pieces": []}"#;
        assert!(CoveringDocument::parse(empty).unwrap().to_covering().is_err());
    }
}
