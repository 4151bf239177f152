//! Frame file formats.

use super::{Closure, Frame, GeneralFrame};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// `{"worlds":[..], "edges":[[a,b],..], "closures":[..]?, "generators":[[..],..]?}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameJson {
    pub worlds: Vec<String>,
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closures: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<String>>>,
}

impl FrameJson {
    pub fn parse(text: &str) -> Result<FrameJson> {
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
    }

    /// Builds the frame, applying closures in listed order. Generators are ignored here.
    pub fn frame(&self) -> Result<Frame> {
        let mut f = Frame::new(&self.worlds, &self.edges)?;
        for c in self.closures.iter().flatten() {
            f = f.closure(c.parse::<Closure>()?);
        }
        Ok(f)
    }

    /// Absent generators mean the full powerset.
    pub fn general(&self) -> Result<GeneralFrame> {
        let f = self.frame()?;
        match &self.generators {
            None => Ok(GeneralFrame::kripke(f)),
            Some(gens) => {
                let mut sets = Vec::with_capacity(gens.len());
                for g in gens {
                    let ids: Vec<&str> = g.iter().map(String::as_str).collect();
                    sets.push(f.set_of(&ids)?);
                }
                Ok(GeneralFrame::close_internal(&f, &sets))
            }
        }
    }

    pub fn from_frame(f: &Frame) -> FrameJson {
        FrameJson {
            worlds: f.ids().to_vec(),
            edges: f.edges().map(|(a, b)| (f.id(a).to_string(), f.id(b).to_string())).collect(),
            closures: None,
            generators: None,
        }
    }

    /// Non-Kripke families are written as their atoms.
    pub fn from_general(g: &GeneralFrame) -> FrameJson {
        let mut j = Self::from_frame(g.base());
        if !g.is_kripke() {
            j.generators = Some(g.atoms().iter().map(|a| g.base().names(a)).collect());
        }
        j
    }
}

/// `{"family":"kt"|"s4t", "I":[..], "FL":<frame>, "uL":id, "wL":id}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolicJson {
    pub family: String,
    #[serde(rename = "I")]
    pub i: Vec<u64>,
    #[serde(rename = "FL")]
    pub fl: FrameJson,
    #[serde(rename = "uL")]
    pub u_l: String,
    #[serde(rename = "wL")]
    pub w_l: String,
}
