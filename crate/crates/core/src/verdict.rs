use serde::{Deserialize, Serialize};

/// A yes/no answer with a witness explaining a negative (or notable) result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Verdict {
    pub fn yes() -> Self {
        Verdict { holds: true, witness: None }
    }

    pub fn no(witness: impl Into<String>) -> Self {
        Verdict { holds: false, witness: Some(witness.into()) }
    }

    pub fn from_bool(holds: bool, witness: impl FnOnce() -> String) -> Self {
        if holds {
            Self::yes()
        } else {
            Self::no(witness())
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (&self.witness, self.holds) {
            (None, true) => write!(f, "yes"),
            (None, false) => write!(f, "no"),
            (Some(w), true) => write!(f, "yes ({w})"),
            (Some(w), false) => write!(f, "no: {w}"),
        }
    }
}
