use crate::syntax::{Sequent, Signature};

/// Named axiom sequents over a signature. Axioms are schematic in their
/// free variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    pub signature: Signature,
    pub axioms: Vec<(String, Sequent)>,
}

impl Theory {
    /// The theory with no axioms.
    pub fn empty() -> Theory {
        Theory { name: "none".to_string(), ..Theory::default() }
    }

    pub fn new(name: impl Into<String>, signature: Signature) -> Theory {
        Theory { name: name.into(), signature, axioms: Vec::new() }
    }

    pub fn with_axiom(mut self, name: impl Into<String>, s: Sequent) -> Self {
        self.axioms.push((name.into(), s));
        self
    }

    pub fn axiom(&self, name: &str) -> Option<&Sequent> {
        self.axioms.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn sequents(&self) -> Vec<Sequent> {
        self.axioms.iter().map(|(_, s)| s.clone()).collect()
    }

    pub fn pair_const(&self) -> Option<&str> {
        self.signature.pair_const.as_deref()
    }
}
