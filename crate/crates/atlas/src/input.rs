//! Block description files.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use atlas_core::cyclic::{CyclicGroupParams, ModuleError};
use atlas_core::dade::{DadeElement, DadeError};
use atlas_core::tree::{BrauerTree, RawEdge, RawTree, RawVertex, Sign, TreeError};
use atlas_core::classify::ClassifyError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid block file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("dade bit {index} is {value}, expected 0 or 1")]
    BadBit { index: usize, value: u64 },
    #[error(transparent)]
    Core(#[from] atlas_core::Error),
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for bad input, 3 when two computations disagree.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_consistency_failure() => 3,
            CliError::Consistency(_) => 3,
            _ => 2,
        }
    }
}

macro_rules! core_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Core(e.into())
            }
        }
    )*};
}
core_error!(TreeError, DadeError, ClassifyError, ModuleError);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexInput {
    pub label: String,
    #[serde(default)]
    pub exceptional: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeInput {
    pub label: String,
    pub endpoints: [String; 2],
}

/// JSON block description. `dade` lists `a_1, ..., a_{n-1}`; when absent the
/// source is trivial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockInputFile {
    pub p: u64,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u64>,
    pub vertices: Vec<VertexInput>,
    pub edges: Vec<EdgeInput>,
    #[serde(default)]
    pub rotation: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positive_vertex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dade: Option<Vec<u64>>,
}

/// A validated tree together with its source parameter.
#[derive(Debug, Clone)]
pub struct Block {
    pub tree: BrauerTree,
    pub dade: DadeElement,
    /// `a_{n-1}` was given as 1 with `p = 2` and has been cleared.
    pub dade_cleared: bool,
}

impl BlockInputFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn to_raw(&self) -> RawTree {
        RawTree {
            p: self.p,
            n: self.n,
            e: self.e,
            vertices: self
                .vertices
                .iter()
                .map(|v| RawVertex { label: v.label.clone(), exceptional: v.exceptional })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| RawEdge {
                    label: e.label.clone(),
                    endpoints: (e.endpoints[0].clone(), e.endpoints[1].clone()),
                })
                .collect(),
            rotation: self.rotation.clone(),
            sign_anchors: self.positive_vertex.iter().map(|v| (v.clone(), Sign::Plus)).collect(),
        }
    }

    pub fn from_raw(raw: &RawTree, dade: Option<&DadeElement>) -> Self {
        let positive_vertex = raw.sign_anchors.first().map(|(label, sign)| match sign {
            Sign::Plus => label.clone(),
            // the neighbour across any edge has the opposite sign
            Sign::Minus => raw
                .edges
                .iter()
                .find_map(|e| {
                    if e.endpoints.0 == *label {
                        Some(e.endpoints.1.clone())
                    } else if e.endpoints.1 == *label {
                        Some(e.endpoints.0.clone())
                    } else {
                        None
                    }
                })
                .expect("anchor has an edge"),
        });
        Self {
            p: raw.p,
            n: raw.n,
            e: raw.e,
            vertices: raw
                .vertices
                .iter()
                .map(|v| VertexInput { label: v.label.clone(), exceptional: v.exceptional })
                .collect(),
            edges: raw
                .edges
                .iter()
                .map(|e| EdgeInput { label: e.label.clone(), endpoints: [e.endpoints.0.clone(), e.endpoints.1.clone()] })
                .collect(),
            rotation: raw.rotation.clone(),
            positive_vertex,
            dade: dade.map(|x| x.bits()[1..].iter().map(|&b| u64::from(b)).collect()),
        }
    }

    pub fn block(&self) -> Result<Block, CliError> {
        let tree = BrauerTree::validate(&self.to_raw())?;
        let group = CyclicGroupParams::new(self.p, self.n).map_err(ModuleError::from)?;
        let tail = match &self.dade {
            None => vec![false; self.n as usize - 1],
            Some(bits) => bits
                .iter()
                .enumerate()
                .map(|(k, &b)| match b {
                    0 => Ok(false),
                    1 => Ok(true),
                    value => Err(CliError::BadBit { index: k + 1, value }),
                })
                .collect::<Result<_, _>>()?,
        };
        let mut bits = vec![false];
        bits.extend(tail);
        let (dade, dade_cleared) = DadeElement::canonicalize(group, &bits).map_err(|e| match e {
            DadeError::BitLength { expected, found } => DadeError::BitLength { expected: expected - 1, found: found - 1 },
            other => other,
        })?;
        Ok(Block { tree, dade, dade_cleared })
    }
}
