//! The versioned JSON description format for categories and embeddings.
//!
//! ```json
//! {
//!   "invcat-spec": 1,
//!   "objects": ["*"],
//!   "morphisms": [
//!     {"name": "e", "src": "*", "tgt": "*"},
//!     {"name": "g", "src": "*", "tgt": "*"}
//!   ],
//!   "identities": {"*": "e"},
//!   "composition": [
//!     {"left": "e", "right": "e", "result": "e"},
//!     {"left": "e", "right": "g", "result": "g"},
//!     {"left": "g", "right": "e", "result": "g"},
//!     {"left": "g", "right": "g", "result": "e"}
//!   ]
//! }
//! ```
//!
//! An optional `"inverse"` map is checked against the computed inverses.
//! Unknown fields are rejected.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::category::{CategoryBuilder, FiniteCategory, Functor, InverseCategory};
use crate::error::{Error, Result};

pub const SPEC_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDecl {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionEntry {
    pub left: String,
    pub right: String,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpecFile {
    #[serde(rename = "invcat-spec")]
    pub version: u32,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDecl>,
    pub identities: BTreeMap<String, String>,
    pub composition: Vec<CompositionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingFile {
    #[serde(rename = "invcat-embedding")]
    pub version: u32,
    /// Morphism names of the source mapped to morphism names of the target.
    pub morphisms: BTreeMap<String, String>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(e.to_string()),
    })
}

/// Drops the trailing position that serde_json appends to its messages.
fn strip_position(mut message: String) -> String {
    if let Some(i) = message.rfind(" at line ") {
        message.truncate(i);
    }
    message
}

fn check_version(found: u32, what: &str) -> Result<()> {
    if found == SPEC_VERSION {
        Ok(())
    } else {
        Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("unsupported {what} version {found}"),
        })
    }
}

impl CategorySpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: CategorySpecFile = parse_json(text)?;
        check_version(spec.version, "invcat-spec")?;
        Ok(spec)
    }

    /// The category as declared; it is not validated.
    pub fn to_category(&self) -> Result<FiniteCategory> {
        let mut b = CategoryBuilder::new();
        for o in &self.objects {
            b.object(o);
        }
        for m in &self.morphisms {
            b.morphism(&m.name, &m.src, &m.tgt);
        }
        for (o, m) in &self.identities {
            b.identity(o, m);
        }
        for c in &self.composition {
            b.compose(&c.left, &c.right, &c.result);
        }
        b.build()
    }

    /// Validates the category and computes its inverses, checking them
    /// against the declared ones if present.
    pub fn to_inverse(&self) -> Result<InverseCategory> {
        let cat = self.to_category()?;
        let supplied = match &self.inverse {
            Some(map) => map
                .iter()
                .map(|(s, t)| Ok((cat.morphism(s)?, cat.morphism(t)?)))
                .collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        InverseCategory::with_inverse(cat, &supplied)
    }

    pub fn from_category(cat: &FiniteCategory) -> Self {
        let mut composition = Vec::new();
        for f in cat.morphisms() {
            for &g in cat.star(cat.tgt(f)) {
                if let Some(gf) = cat.compose(g, f) {
                    composition.push(CompositionEntry {
                        left: cat.name(g).to_string(),
                        right: cat.name(f).to_string(),
                        result: cat.name(gf).to_string(),
                    });
                }
            }
        }
        CategorySpecFile {
            version: SPEC_VERSION,
            objects: cat.objects().map(|x| cat.object_name(x).to_string()).collect(),
            morphisms: cat
                .morphisms()
                .map(|s| MorphismDecl {
                    name: cat.name(s).to_string(),
                    src: cat.object_name(cat.src(s)).to_string(),
                    tgt: cat.object_name(cat.tgt(s)).to_string(),
                })
                .collect(),
            identities: cat
                .objects()
                .filter_map(|x| {
                    cat.identity(x)
                        .map(|i| (cat.object_name(x).to_string(), cat.name(i).to_string()))
                })
                .collect(),
            composition,
            inverse: None,
        }
    }

    pub fn from_inverse(cat: &InverseCategory) -> Self {
        let mut spec = Self::from_category(cat);
        spec.inverse = Some(
            cat.morphisms()
                .map(|s| (cat.name(s).to_string(), cat.name(cat.inv(s)).to_string()))
                .collect(),
        );
        spec
    }

    /// Line-oriented JSON: one declaration per line.
    pub fn to_text(&self) -> String {
        let q = |s: &str| serde_json::to_string(s).expect("string");
        let map_lines = |m: &BTreeMap<String, String>| {
            m.iter()
                .map(|(k, v)| format!("    {}: {}", q(k), q(v)))
                .collect::<Vec<_>>()
                .join(",\n")
        };
        let mut out = String::new();
        let _ = writeln!(out, "{{");
        let _ = writeln!(out, "  \"invcat-spec\": {},", self.version);
        let objects: Vec<String> = self.objects.iter().map(|o| q(o)).collect();
        let _ = writeln!(out, "  \"objects\": [{}],", objects.join(", "));
        let morphisms: Vec<String> = self
            .morphisms
            .iter()
            .map(|m| format!("    {{\"name\": {}, \"src\": {}, \"tgt\": {}}}", q(&m.name), q(&m.src), q(&m.tgt)))
            .collect();
        let _ = writeln!(out, "  \"morphisms\": [\n{}\n  ],", morphisms.join(",\n"));
        let _ = writeln!(out, "  \"identities\": {{\n{}\n  }},", map_lines(&self.identities));
        let composition: Vec<String> = self
            .composition
            .iter()
            .map(|c| {
                format!(
                    "    {{\"left\": {}, \"right\": {}, \"result\": {}}}",
                    q(&c.left),
                    q(&c.right),
                    q(&c.result)
                )
            })
            .collect();
        let _ = write!(out, "  \"composition\": [\n{}\n  ]", composition.join(",\n"));
        if let Some(inv) = &self.inverse {
            let _ = write!(out, ",\n  \"inverse\": {{\n{}\n  }}", map_lines(inv));
        }
        let _ = writeln!(out, "\n}}");
        out
    }
}

impl EmbeddingFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: EmbeddingFile = parse_json(text)?;
        check_version(file.version, "invcat-embedding")?;
        Ok(file)
    }

    pub fn to_functor(&self, source: &FiniteCategory, target: &FiniteCategory) -> Result<Functor> {
        Functor::from_names(
            source,
            target,
            self.morphisms.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
    }
}
