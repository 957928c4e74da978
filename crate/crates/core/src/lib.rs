//! Major index and NE-chain statistics for 01-fillings of moon polyominoes.

pub mod encode;
pub mod error;
pub mod filling;
pub mod foata;
pub mod gen;
pub mod genfun;
pub mod qpoly;
pub mod rearrange;
pub mod shape;
pub mod verify;

pub use error::{Error, Result};
pub use filling::{Filling, FillingClassSpec};
pub use qpoly::QPoly;
pub use shape::{MoonPolyomino, Rect, ShapeClass};
