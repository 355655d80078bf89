//! Signed permutations of type `C_{n+1}` restricted to the cosets indexed by
//! `(w(1)|w(2))`: labels, lengths, reflections and the Bruhat order.

mod label;
mod perm;
mod poset;

pub use label::{BarValue, FlagLabel};
pub use perm::{Reflection, Root, SignedPermutation};
pub use poset::{
    bruhat_leq, covers, dimension_report, down_set, enumerate_even_labels, enumerate_labels, DimensionReport,
    SchubertPoset,
};
