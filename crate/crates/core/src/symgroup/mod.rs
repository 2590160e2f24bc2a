//! Partitions, permutations and real orthogonal irreducible representations
//! of symmetric groups in Young's orthogonal form.

mod partition;
mod permutation;
mod young;

pub use partition::{partition_stats, partitions_of, Partition, PartitionStats};
pub use permutation::Permutation;
pub use young::{rep_matrix, standard_tableaux, young_orthogonal_rep, OrthogonalRep, Tableau};
