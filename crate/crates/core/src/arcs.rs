//! Arc classes of a depth-first search and their per-instance counts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::Var;
use crate::error::{Error, Result};

/// Classification of one explored arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArcKind {
    Loop,
    Tree,
    Back,
    Forward,
    Cross,
}

/// Which count of an [`ArcTally`] a generating-function variable marks:
/// `L ↔ w`, `F ↔ x`, `B ↔ y`, `C ↔ z`, `T ↔ t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Role {
    L,
    F,
    B,
    C,
    T,
}

impl Role {
    pub const ALL: [Role; 5] = [Role::L, Role::F, Role::B, Role::C, Role::T];

    /// The symbolic variable carrying this count; `None` for `T`, which is
    /// never symbolic (it factors out per tree).
    pub fn var(self) -> Option<Var> {
        match self {
            Role::L => Some(Var::W),
            Role::F => Some(Var::X),
            Role::B => Some(Var::Y),
            Role::C => Some(Var::Z),
            Role::T => None,
        }
    }

    pub fn of_kind(kind: ArcKind) -> Role {
        match kind {
            ArcKind::Loop => Role::L,
            ArcKind::Forward => Role::F,
            ArcKind::Back => Role::B,
            ArcKind::Cross => Role::C,
            ArcKind::Tree => Role::T,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Role::L => "L",
            Role::F => "F",
            Role::B => "B",
            Role::C => "C",
            Role::T => "T",
        };
        f.write_str(s)
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "L" | "l" | "loop" => Ok(Role::L),
            "F" | "f" | "forward" => Ok(Role::F),
            "B" | "b" | "back" => Ok(Role::B),
            "C" | "c" | "cross" => Ok(Role::C),
            "T" | "t" | "tree" => Ok(Role::T),
            other => Err(Error::Parse(format!("unknown arc role {other:?}"))),
        }
    }
}

/// Counts `(L, F, B, C, T)` of loops, forward, back, cross and tree arcs.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct ArcTally {
    #[serde(rename = "L")]
    pub loops: u64,
    #[serde(rename = "F")]
    pub forward: u64,
    #[serde(rename = "B")]
    pub back: u64,
    #[serde(rename = "C")]
    pub cross: u64,
    #[serde(rename = "T")]
    pub tree: u64,
}

impl ArcTally {
    pub fn new(loops: u64, forward: u64, back: u64, cross: u64, tree: u64) -> Self {
        ArcTally { loops, forward, back, cross, tree }
    }

    pub fn record(&mut self, kind: ArcKind) {
        *self.get_mut(Role::of_kind(kind)) += 1;
    }

    pub fn get(&self, role: Role) -> u64 {
        match role {
            Role::L => self.loops,
            Role::F => self.forward,
            Role::B => self.back,
            Role::C => self.cross,
            Role::T => self.tree,
        }
    }

    fn get_mut(&mut self, role: Role) -> &mut u64 {
        match role {
            Role::L => &mut self.loops,
            Role::F => &mut self.forward,
            Role::B => &mut self.back,
            Role::C => &mut self.cross,
            Role::T => &mut self.tree,
        }
    }

    pub fn total(&self) -> u64 {
        self.loops + self.forward + self.back + self.cross + self.tree
    }

    pub fn as_array(&self) -> [u64; 5] {
        [self.loops, self.forward, self.back, self.cross, self.tree]
    }
}
