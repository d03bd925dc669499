//! Brute-force ground truth over fully enumerated groups: conjugacy classes,
//! distances in class Cayley graphs, class-product counts and orbital
//! diameters of the simple diagonal action.

mod bfs;
mod classes;
mod convolution;
mod group;
mod orbdiam;

pub use bfs::{cayley_levels, class_distance, d_inv, dist_to_set, reported_classes, ClassDistance, DistanceReport};
pub use classes::{classes, ClassTable};
pub use convolution::{class_product_count, class_product_count_direct};
pub use group::{build_group, group_order, GroupTable, DEFAULT_ORDER_CAP, TABLE_LIMIT};
pub use orbdiam::{orbdiam_diag, OrbDiamReport};

use crate::gf::GfError;
use crate::matrix::GroupSpec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{spec} has order {order}, above the enumeration cap {cap}")]
    TooLarge { spec: GroupSpec, order: u128, cap: u64 },
    #[error("unsupported group {0}")]
    Unsupported(GroupSpec),
    #[error("only k = 2 is supported, got k = {0}")]
    UnsupportedK(usize),
    #[error(transparent)]
    Field(GfError),
    #[error("internal: {0}")]
    Internal(&'static str),
}
