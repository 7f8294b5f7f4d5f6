//! Concrete right LCM semigroups.

pub mod builtins;
pub mod free;
pub mod groups;
pub mod nat;
pub mod self_similar;
pub mod spec_file;
pub mod zappa_szep;

use crate::semigroup::RightLcmSemigroup;
use crate::word::Word;

use self_similar::SelfSimilarGroup;

/// A semigroup of the form `X* ⋈ G` whose principal right ideals form a
/// tree: every element splits as a word followed by a group element.
pub trait TreeSemigroup: RightLcmSemigroup {
    type Group: SelfSimilarGroup;

    fn group(&self) -> &Self::Group;
    fn split(&self, p: &Self::Elem) -> (Word, <Self::Group as SelfSimilarGroup>::Elem);
    fn join(&self, word: Word, g: <Self::Group as SelfSimilarGroup>::Elem) -> Self::Elem;
}
