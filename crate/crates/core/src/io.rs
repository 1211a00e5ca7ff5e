// SPDX-License-Identifier: Apache-2.0

//! JSON forms of matrices, channels, walks and block operators.
//!
//! ```json
//! {"rows": 2, "cols": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}
//! ```
//!
//! `im` may be omitted for real matrices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::oqrw::{Site, WalkSpec};
use crate::stationary::{barrier_walk, StationaryOperator};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        let part = |f: fn(&C64) -> f64| {
            (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| f(&m.get(i, j))).collect())
                .collect()
        };
        Self {
            rows: m.rows(),
            cols: m.cols(),
            re: part(|z| z.re),
            im: Some(part(|z| z.im)),
        }
    }
}

impl TryFrom<&MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(j: &MatrixJson) -> Result<Self> {
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == j.rows && rows.iter().all(|r| r.len() == j.cols);
        if !shape_ok(&j.re) || !j.im.as_ref().map_or(true, shape_ok) {
            return Err(Error::Parse(format!(
                "matrix entries do not match the declared shape {}x{}",
                j.rows, j.cols
            )));
        }
        if j.rows == 0 || j.cols == 0 {
            return Err(Error::Parse("empty matrix".into()));
        }
        Ok(ComplexMatrix::from_fn(j.rows, j.cols, |r, c| {
            C64::new(j.re[r][c], j.im.as_ref().map_or(0.0, |im| im[r][c]))
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelJson {
    pub dim: usize,
    pub kraus: Vec<MatrixJson>,
}

impl From<&KrausChannel> for ChannelJson {
    fn from(ch: &KrausChannel) -> Self {
        Self {
            dim: ch.dim(),
            kraus: ch.kraus().iter().map(MatrixJson::from).collect(),
        }
    }
}

impl ChannelJson {
    pub fn to_channel(&self, tol: f64) -> Result<KrausChannel> {
        let kraus = self
            .kraus
            .iter()
            .map(ComplexMatrix::try_from)
            .collect::<Result<Vec<_>>>()?;
        if kraus.iter().any(|k| k.rows() != self.dim || k.cols() != self.dim) {
            return Err(Error::DimensionMismatch {
                context: "Kraus operator vs declared dim",
                expected: self.dim,
                found: kraus.iter().map(|k| k.rows()).find(|&r| r != self.dim).unwrap_or(0),
            });
        }
        KrausChannel::new(kraus, tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionJson {
    pub from: Site,
    pub to: Site,
    pub matrix: MatrixJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarrierJson {
    pub p11: f64,
    pub p22: f64,
    pub window_hi: Site,
}

/// The three accepted walk descriptions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WalkJson {
    Barrier {
        barrier: BarrierJson,
    },
    Transitions {
        dim: usize,
        window: (Site, Site),
        transitions: Vec<TransitionJson>,
    },
    NearestNeighbour {
        dim: usize,
        #[serde(rename = "L")]
        l: MatrixJson,
        #[serde(rename = "R")]
        r: MatrixJson,
        window: (Site, Site),
    },
}

impl WalkJson {
    pub fn to_walk(&self, tol: f64) -> Result<WalkSpec> {
        let check = |dim: usize, m: &ComplexMatrix| {
            if m.rows() == dim && m.cols() == dim {
                Ok(())
            } else {
                Err(Error::DimensionMismatch {
                    context: "walk matrix vs declared dim",
                    expected: dim,
                    found: m.rows(),
                })
            }
        };
        match self {
            WalkJson::Barrier { barrier } => barrier_walk(barrier.p11, barrier.p22, barrier.window_hi),
            WalkJson::Transitions {
                dim,
                window,
                transitions,
            } => {
                let mut list = Vec::with_capacity(transitions.len());
                for t in transitions {
                    let m = ComplexMatrix::try_from(&t.matrix)?;
                    check(*dim, &m)?;
                    list.push((t.from, t.to, m));
                }
                WalkSpec::from_transitions(*dim, *window, list, tol)
            }
            WalkJson::NearestNeighbour { dim, l, r, window } => {
                let l = ComplexMatrix::try_from(l)?;
                let r = ComplexMatrix::try_from(r)?;
                check(*dim, &l)?;
                check(*dim, &r)?;
                WalkSpec::nearest_neighbour(&l, &r, *window, tol)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockJson {
    pub site: Site,
    pub matrix: MatrixJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorJson {
    pub dim: usize,
    pub blocks: Vec<BlockJson>,
}

impl OperatorJson {
    pub fn to_operator(&self, tol: f64) -> Result<StationaryOperator> {
        let mut blocks = BTreeMap::new();
        for b in &self.blocks {
            let m = ComplexMatrix::try_from(&b.matrix)?;
            if m.rows() != self.dim || m.cols() != self.dim {
                return Err(Error::DimensionMismatch {
                    context: "operator block vs declared dim",
                    expected: self.dim,
                    found: m.rows(),
                });
            }
            if blocks.insert(b.site, m).is_some() {
                return Err(Error::Parse(format!("site {} appears twice", b.site)));
            }
        }
        StationaryOperator::new(blocks, tol)
    }
}

impl From<&StationaryOperator> for OperatorJson {
    fn from(op: &StationaryOperator) -> Self {
        Self {
            dim: op.blocks().values().next().map_or(0, ComplexMatrix::rows),
            blocks: op
                .blocks()
                .iter()
                .map(|(&site, m)| BlockJson {
                    site,
                    matrix: MatrixJson::from(m),
                })
                .collect(),
        }
    }
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    ComplexMatrix::try_from(&serde_json::from_str::<MatrixJson>(text)?)
}

pub fn parse_channel(text: &str, tol: f64) -> Result<KrausChannel> {
    serde_json::from_str::<ChannelJson>(text)?.to_channel(tol)
}

pub fn parse_walk(text: &str, tol: f64) -> Result<WalkSpec> {
    serde_json::from_str::<WalkJson>(text)?.to_walk(tol)
}

pub fn parse_operator(text: &str, tol: f64) -> Result<StationaryOperator> {
    serde_json::from_str::<OperatorJson>(text)?.to_operator(tol)
}
