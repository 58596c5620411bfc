//! Self-describing JSON envelopes for file interchange.
//!
//! Every input file is a single object `{"kind": …, "payload": …}`; the
//! kind selects the payload schema, so one `validate` entry point covers
//! every structure. Rational scalars serialize as `"p/q"` strings
//! (or bare integers, accepted on input).

use crate::cochain::Cochain;
use crate::deform::DeformationTruncation;
use crate::error::Result;
use crate::ext::{DerivationCouple, ExtensionDatum};
use crate::lie::{LieAlgebra, ReynoldsLieDerPair};
use crate::rep::{ReynoldsRep, RldRep};
use serde::{Deserialize, Serialize};

/// Abelian-extension input: a module and the datum that twists the
/// semidirect product into the extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionBundle {
    pub module: RldRep,
    pub datum: ExtensionDatum,
}

/// Central-extension input for obstruction queries: a derivation-free
/// module with trivial action, the Reynolds extension datum, and the
/// candidate derivation couple to lift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralExtensionBundle {
    pub module: ReynoldsRep,
    pub theta: Cochain,
    pub xi: Cochain,
    pub couple: DerivationCouple,
}

/// One file, one envelope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum Envelope {
    LieAlgebra(LieAlgebra),
    Pair(ReynoldsLieDerPair),
    Representation(RldRep),
    Cochain(Cochain),
    Deformation(DeformationTruncation),
    Extension(ExtensionBundle),
    CentralExtension(CentralExtensionBundle),
}

impl Envelope {
    pub fn kind(&self) -> &'static str {
        match self {
            Envelope::LieAlgebra(_) => "lie_algebra",
            Envelope::Pair(_) => "pair",
            Envelope::Representation(_) => "representation",
            Envelope::Cochain(_) => "cochain",
            Envelope::Deformation(_) => "deformation",
            Envelope::Extension(_) => "extension",
            Envelope::CentralExtension(_) => "central_extension",
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
