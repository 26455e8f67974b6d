//! Similar sublattices and coincidence site modules of four-dimensional
//! lattices, counted through quaternion orders over `Z`, `Z[τ]` and `Z[√2]`.

pub mod arith;
pub mod asymptotics;
pub mod counting;
pub mod dirichlet;
pub mod error;
pub mod hnf;
pub mod oracle;
pub mod order;
pub mod quadratic;
pub mod quaternion;

pub use asymptotics::{ConstantName, GrowthModel};
pub use counting::{IndexKind, TargetId};
pub use dirichlet::CoeffSeq;
pub use error::{Error, Result};
pub use hnf::LatticeKey;
pub use oracle::{AmbientLattice, SsmKind};
pub use order::{OrderElement, OrderId};
pub use quadratic::{PrimeClass, QuadInt, RingId};
pub use quaternion::{FieldElem, Quat};
