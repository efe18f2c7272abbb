//! Finite-group workbench: enumerated groups with bitset subgroup
//! machinery, word value sets and exact word width, Holt-style perfect
//! groups, free class-2 exponent-p groups, subgroup censuses, the height
//! function, and the subgroup-growth bound recursion.

pub mod error;
pub mod experiments;
pub mod field;
pub mod group;
pub mod bounds;
pub mod census;
pub mod height;
pub mod holt;
pub mod pgroup;
pub mod report;
pub mod set;
pub mod simple_table;
pub mod spec;
pub mod word;

pub use error::{Error, Result};
pub use group::{Group, GroupHandle};
pub use set::ElementSet;
