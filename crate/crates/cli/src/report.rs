//! Command results, their citations, and the failure classes that map to
//! exit codes.

use serde::Serialize;
use serde_json::{json, Value as Json};
use thiserror::Error;

use motivecalc_core::MotiveError;

/// The mathematical fact a result rests on, named by role.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Citation {
    ChowGrothendieckRing,
    ComparisonFunctor,
    IntrinsicZeta,
    KapranovZeta,
    KimuraFiniteness,
    LedgerRelations,
    MotivicMeasure,
    NoncommutativeClass,
    NonFactoring,
    OrbitHom,
    RiemannRoch,
    SchurFunctor,
}

impl Citation {
    pub fn tag(self) -> &'static str {
        match self {
            Citation::ChowGrothendieckRing => "chow-grothendieck-ring",
            Citation::ComparisonFunctor => "comparison-functor",
            Citation::IntrinsicZeta => "intrinsic-zeta",
            Citation::KapranovZeta => "kapranov-zeta",
            Citation::KimuraFiniteness => "kimura-finiteness",
            Citation::LedgerRelations => "ledger-relations",
            Citation::MotivicMeasure => "motivic-measure",
            Citation::NoncommutativeClass => "noncommutative-class",
            Citation::NonFactoring => "non-factoring",
            Citation::OrbitHom => "orbit-hom",
            Citation::RiemannRoch => "riemann-roch",
            Citation::SchurFunctor => "schur-functor",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Failure {
    /// Malformed input: exit code 2.
    #[error("{0}")]
    Parse(String),
    /// Well-formed input the mathematics does not accept: exit code 3.
    #[error("{0}")]
    Precondition(String),
    /// The engine disagrees with itself or a check failed: exit code 4.
    #[error("{0}")]
    Internal(String),
}

impl Failure {
    pub fn from_motive(e: MotiveError) -> Self {
        match e {
            MotiveError::Parse(_) | MotiveError::UnregisteredSymbol(_) => Failure::Parse(e.to_string()),
            MotiveError::InternalConsistency(_) => Failure::Internal(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Precondition(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Parse(_) => "parse",
            Failure::Precondition(_) => "precondition",
            Failure::Internal(_) => "internal-consistency",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub result: Json,
    pub citations: Vec<Citation>,
    /// Human-readable rendering of `result`.
    pub text: String,
    /// Set when the command ran but a verification it performed failed.
    pub failed: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, result: Json, text: impl Into<String>) -> Self {
        Report { command: command.into(), result, citations: Vec::new(), text: text.into(), failed: false }
    }

    pub fn cite(mut self, citations: impl IntoIterator<Item = Citation>) -> Self {
        self.citations.extend(citations);
        self.citations.sort();
        self.citations.dedup();
        self
    }

    pub fn failed_if(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }

    pub fn to_json(&self) -> Json {
        json!({ "command": self.command, "result": self.result, "citations": self.citations })
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.to_json()).expect("reports serialize");
            s.push('\n');
            return s;
        }
        let mut s = self.text.clone();
        if !s.ends_with('\n') {
            s.push('\n');
        }
        if !self.citations.is_empty() {
            let tags: Vec<&str> = self.citations.iter().map(|c| c.tag()).collect();
            s.push_str(&format!("[{}]\n", tags.join(", ")));
        }
        s
    }
}

pub fn render_failure(f: &Failure, as_json: bool) -> String {
    if as_json {
        let v = json!({ "error": { "kind": f.kind(), "message": f.to_string() } });
        format!("{}\n", serde_json::to_string_pretty(&v).expect("errors serialize"))
    } else {
        format!("error: {f}\n")
    }
}
