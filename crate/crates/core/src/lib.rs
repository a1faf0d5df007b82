//! Non-interactive short-term implicit certificates for vehicular PKI.
//!
//! A CA issues one sanitizable implicit certificate per cocoon key; the
//! vehicle then derives up to `n_cs` unlinkable pseudonym certificates and
//! key pairs from it without talking to the CA again. Explicit and SIMPL
//! implicit certificates are implemented alongside as baselines.

use serde::{Deserialize, Serialize};

pub mod adversary;
pub mod butterfly;
pub mod ca;
pub mod cert;
pub mod costmodel;
pub mod ecies;
pub mod error;
pub mod group;
pub mod linkage;
pub mod selftest;
pub mod signature;
pub mod store;
pub mod vehicle;
pub mod verification;
pub mod wire;

pub use error::{Error, Result};

/// Certificate provisioning approach.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Approach {
    Explicit,
    Simpl,
    Noins,
}

impl Approach {
    pub const ALL: [Approach; 3] = [Approach::Explicit, Approach::Simpl, Approach::Noins];

    pub fn as_str(self) -> &'static str {
        match self {
            Approach::Explicit => "explicit",
            Approach::Simpl => "simpl",
            Approach::Noins => "noins",
        }
    }
}

impl std::fmt::Display for Approach {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Approach {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Approach::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| format!("unknown approach `{s}`"))
    }
}
