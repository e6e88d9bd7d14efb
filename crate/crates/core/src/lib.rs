pub mod chains;
pub mod error;
pub mod model;
pub mod root_system;
pub mod tables;
pub mod type_a;
pub mod verify;
pub mod weyl;
pub mod yb;

pub use chains::{ChainMove, LambdaChain};
pub use error::{Error, Result};
pub use model::{CrystalGraph, Model};
pub use root_system::{CartanType, Rank2Kind, Rank2Subsystem, RootRef, RootSystem, Series, Weight};
pub use weyl::{Direction, EdgeKind, ElemId, QBGraph, WeylGroup};
pub use yb::YBContext;
