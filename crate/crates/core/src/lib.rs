pub mod bounds;
pub mod code;
pub mod cyclic;
pub mod cyclotomic;
pub mod doc;
pub mod error;
pub mod field;
pub mod ideal;
pub mod linalg;
pub mod random;
pub mod ring;
pub mod search;
pub mod subset;
pub mod table;
pub mod verify;
pub mod weight;

pub use code::{Code, DualMode, Independence, Vector};
pub use cyclotomic::CycInt;
pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use ideal::Ideal;
pub use linalg::Matrix;
pub use ring::{Ring, RingElement};
