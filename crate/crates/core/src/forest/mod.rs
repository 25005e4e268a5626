//! Dynamic forests over `G − T′`.
//!
//! [`LevelForest`] keeps a maximal spanning forest under batches of edge
//! and vertex deletions. [`RcForest`] is a rake-and-compress hierarchy over
//! a copy of that forest with separator flags and deepest-segment-neighbour
//! augmentation. [`SegmentOracleState`] ties both together behind the four
//! queries the absorption loop needs.

mod ett;
mod hdt;
mod oracle;
mod rc;

pub use hdt::{ForestChange, LevelForest};
pub use oracle::{FindCc, SegmentOracleState};
pub use rc::{Cluster, ClusterView, Fate, Low, RcForest, VertexValue};
