//! A small hand-checked instance used throughout the tests and the README.
//!
//! Three men and four women. `m2` is indifferent between `w3` and `w4`, `m3`
//! between `w1` and `w2`, and `w2` between `m1` and `m3`.

use crate::format::parse;
use crate::instance::Instance;
use crate::matching::Matching;

pub const SAMPLE_TEXT: &str = "\
men 3
women 4
m1: w2 w4
m2: w1 (w3 w4)
m3: (w1 w2)
w1: m2 m3
w2: (m1 m3)
w3: m2
w4: m2 m1
";

pub fn sample_instance() -> Instance {
    parse(SAMPLE_TEXT).expect("sample instance is well-formed")
}

/// Two stable matchings of the sample instance whose between-subgraph has a
/// single nontrivial component: `{m2-w1, m1-w2}` and `{m2-w1, m3-w2, m1-w4}`.
pub fn sample_pair() -> (Matching, Matching) {
    (
        "m1-w2,m2-w1".parse().unwrap(),
        "m1-w4,m2-w1,m3-w2".parse().unwrap(),
    )
}
