//! Symbol alphabet shared by every polynomial and rational function in the crate.

use super::name::Name;
use std::fmt;

/// Which of the two kernel arguments a torus slot belongs to.
///
/// Group 1 carries the subobject (algebra) torus, group 2 the
/// quotient/orthosymplectic torus. Elements are graded in group-1 variables
/// (algebra) or group-2 variables (module).
pub type GroupTag = u8;

/// A formal variable. The derived ordering (variant first, then fields) is the
/// canonical variable order used for monomial comparison, linear-form
/// normalization and serialization.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Variable {
    /// `x{vertex}_{group}_{slot}`: torus coordinate, slot index starts at 1.
    Torus { vertex: u32, group: GroupTag, slot: u32 },
    /// `u{vertex}_{index}`: auto-generated framing weight at a vertex.
    Framing { vertex: u32, index: u32 },
    /// A named edge-weight parameter such as `t1`.
    Weight(Name),
    /// The deformation parameter `hbar`.
    Hbar,
    /// A named expansion variable such as `w`.
    Series(Name),
}

impl Variable {
    pub fn torus(vertex: u32, group: GroupTag, slot: u32) -> Self {
        debug_assert!(group == 1 || group == 2);
        debug_assert!(slot >= 1);
        Variable::Torus { vertex, group, slot }
    }

    pub fn weight(name: &str) -> Self {
        Variable::Weight(Name::new(name).expect("bad weight name"))
    }

    pub fn series(name: &str) -> Self {
        Variable::Series(Name::new(name).expect("bad series name"))
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Torus { vertex, group, slot } => write!(f, "x{vertex}_{group}_{slot}"),
            Variable::Framing { vertex, index } => write!(f, "u{vertex}_{index}"),
            Variable::Weight(n) => write!(f, "{n}"),
            Variable::Hbar => write!(f, "hbar"),
            Variable::Series(n) => write!(f, "{n}"),
        }
    }
}
