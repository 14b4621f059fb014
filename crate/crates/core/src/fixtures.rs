//! Small reference algebras used throughout the tests and the CLI examples.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::format::parse_algebra;

/// `F_2[x]/(x^3)`.
pub const A1: &str = "field p=2\nvertices 1\narrows a:1->1\nrelations a*a*a\n";

/// Linear quiver `1 -> 2 -> 3` with the composite killed.
pub const A2: &str = "field p=2\nvertices 1 2 3\narrows a:1->2 b:2->3\nrelations b*a\n";

/// Hereditary algebra of the quiver `1 -> 2`.
pub const A3: &str = "field p=2\nvertices 1 2\narrows a:1->2\nrelations\n";

/// Kronecker quiver: two parallel arrows, not Nakayama.
pub const KRONECKER: &str = "field p=2\nvertices 1 2\narrows a:1->2 b:1->2\nrelations\n";

pub fn a1() -> Arc<Algebra> {
    parse_algebra(A1).expect("fixture")
}

pub fn a2() -> Arc<Algebra> {
    parse_algebra(A2).expect("fixture")
}

pub fn a3() -> Arc<Algebra> {
    parse_algebra(A3).expect("fixture")
}

pub fn kronecker() -> Arc<Algebra> {
    parse_algebra(KRONECKER).expect("fixture")
}

/// `n` isolated vertices over `F_2`.
pub fn semisimple(n: usize) -> Arc<Algebra> {
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    parse_algebra(&format!("field p=2\nvertices {}\narrows\nrelations\n", labels.join(" "))).expect("fixture")
}
