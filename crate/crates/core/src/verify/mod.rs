//! Machine checks of the algebraic laws, logical properties and structural
//! theorems, each run exhaustively (or on a seeded sample) over the
//! generating algebras and reported as a [`LawReport`].

mod laws;
mod logic;
mod structure;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

pub use laws::{check_arrow_props, check_cyc_imp_laws, check_t_laws, Law, Statement};
pub use logic::{
    check_blok_pigozzi, check_consequence_properties, check_equivalential, check_lfi, check_lfu,
    check_propagation, check_selfextensionality_samples, SampleSizes,
};
pub use structure::{
    check_correspondence, check_deductive_systems, check_leibniz_noninjectivity, check_simplicity,
    probe_implicativity, test_battery,
};

/// Budget for suite queries; the searches prune heavily, so the nominal
/// |A|^vars × nodes figure can exceed the interactive default.
pub const SUITE_WORK_BUDGET: u128 = 1 << 36;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub algebra: String,
    pub assignment: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawItem {
    pub law: String,
    /// Whether the statement is true of the checked algebras.
    pub holds: bool,
    /// The verdict the item is supposed to have (false for mutants and
    /// non-derivability clauses).
    pub expected: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub mutant: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl LawItem {
    pub fn passed(&self) -> bool {
        self.holds == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub suite: String,
    pub k: usize,
    pub passed: bool,
    pub items: Vec<LawItem>,
    /// Why checking the generators settles the quantified statements.
    pub completeness: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl LawReport {
    pub(crate) fn new(
        suite: &str,
        k: usize,
        completeness: &str,
        items: Vec<LawItem>,
        warnings: Vec<String>,
    ) -> Self {
        LawReport {
            suite: suite.to_string(),
            k,
            passed: items.iter().all(LawItem::passed),
            items,
            completeness: completeness.to_string(),
            warnings,
        }
    }

    pub fn failures(&self) -> Vec<&LawItem> {
        self.items.iter().filter(|i| !i.passed()).collect()
    }

    pub fn item(&self, law: &str) -> Option<&LawItem> {
        self.items.iter().find(|i| i.law == law)
    }
}

pub(crate) const EQUATIONAL: &str = "equations hold in every algebra of the variety iff they hold in T3,k and T4,k, which generate it";
pub(crate) const QUASI: &str = "quasi-identities are preserved by subalgebras and products; every algebra is a subdirect product of simple algebras, each embedded in T3,k or T4,k";
pub(crate) const SEMANTIC: &str = "both consequence relations are decided over T4,k and T3,k: the degree-preserving one by variety generation, the assertional one by semisimplicity";

pub const SUITES: &[&str] = &[
    "t-laws",
    "cyc-imp",
    "arrow",
    "lfi",
    "lfu",
    "propagation",
    "equivalential",
    "blok-pigozzi",
    "leibniz",
    "implicativity",
    "selfextensional",
    "consequence",
    "simplicity",
    "deductive",
    "correspondence",
];

/// Per-suite default k cap.
pub fn default_k_cap(suite: &str) -> usize {
    match suite {
        "selfextensional" => 2,
        "simplicity" => 4,
        _ => 3,
    }
}

/// Runs one suite by name for period `k`.
pub fn run_suite(name: &str, k: usize, samples: &SampleSizes) -> Result<LawReport> {
    if k == 0 {
        return Err(Error::usage("k must be at least 1"));
    }
    match name {
        "t-laws" => check_t_laws(k),
        "cyc-imp" => check_cyc_imp_laws(k),
        "arrow" => check_arrow_props(k),
        "lfi" => check_lfi(k),
        "lfu" => check_lfu(k),
        "propagation" => check_propagation(k),
        "equivalential" => check_equivalential(k),
        "blok-pigozzi" => check_blok_pigozzi(k),
        "leibniz" => check_leibniz_noninjectivity(k),
        "implicativity" => probe_implicativity(k),
        "selfextensional" => check_selfextensionality_samples(k, samples.selfextensional),
        "consequence" => check_consequence_properties(k, samples),
        "simplicity" => check_simplicity(k),
        "deductive" => check_deductive_systems(k),
        "correspondence" => check_correspondence(k),
        _ => Err(Error::usage(format!(
            "unknown suite `{name}`; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}
