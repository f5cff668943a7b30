pub mod cli;
pub mod error;
pub mod families;
pub mod field;
pub mod map;
pub mod report;
pub mod search;
pub mod spectra;
pub mod theorems;
pub mod walsh;

pub use error::{Error, Result};
pub use field::{Elem, FieldSpec};
pub use map::{MapTable, PolyRepr};
