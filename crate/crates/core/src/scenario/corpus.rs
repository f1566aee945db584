//! The bundled scenario files and the named examples built on them.

use super::checks::{run_checks, CheckOptions, Report};
use super::{Scenario, ScenarioError};

macro_rules! corpus {
    ($($file:literal),* $(,)?) => {
        &[$(($file, include_str!(concat!("../../../../corpus/", $file)))),*]
    };
}

/// `(file name, contents)` for every bundled scenario.
pub const CORPUS: &[(&str, &str)] = corpus![
    "crossed_conj.toml",
    "delta1_sum.toml",
    "gsimple_not_simple.toml",
    "gvalex.toml",
    "m2_full.toml",
    "m3_dyadic.toml",
    "quaternion.toml",
    "quaternion_matrix.toml",
    "triangular_valuation.toml",
    "twisted_sqrt.toml",
];

/// Example name, scenario file, and the check groups it exercises (empty
/// for all of them).
const EXAMPLES: &[(&str, &str, &[&str])] = &[
    ("crossed-conj", "crossed_conj.toml", &[]),
    ("delta1-sum", "delta1_sum.toml", &[]),
    ("delta2-order", "triangular_valuation.toml", &["order"]),
    ("gsimple-not-simple", "gsimple_not_simple.toml", &["structure"]),
    ("gvalex", "gvalex.toml", &[]),
    ("m2-full", "m2_full.toml", &[]),
    ("m3-dyadic", "m3_dyadic.toml", &[]),
    ("quaternion", "quaternion.toml", &[]),
    ("quaternion-matrix", "quaternion_matrix.toml", &[]),
    ("triangular-valuation", "triangular_valuation.toml", &["valuation", "order"]),
    ("twisted-sqrt", "twisted_sqrt.toml", &[]),
];

pub fn corpus_names() -> impl Iterator<Item = &'static str> {
    CORPUS.iter().map(|(n, _)| *n)
}

pub fn example_names() -> impl Iterator<Item = &'static str> {
    EXAMPLES.iter().map(|(n, _, _)| *n)
}

pub fn corpus_file(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

/// Loads the named example and runs its check groups. Groups already set
/// in `options` take precedence.
pub fn reproduce(name: &str, options: &CheckOptions) -> Result<Report, ScenarioError> {
    let (_, file, groups) = EXAMPLES
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| ScenarioError::UnknownExample(name.to_string(), example_names().collect::<Vec<_>>().join(", ")))?;
    let text = corpus_file(file).expect("examples point into the corpus");
    let scenario = Scenario::from_toml(text)?;
    let mut opts = options.clone();
    if opts.groups.is_empty() {
        opts.groups = groups.to_vec();
    }
    Ok(run_checks(&scenario, &opts))
}
