use thiserror::Error;

use crate::shape::ShapeClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape has no rows")]
    EmptyShape,
    #[error("row {row} is empty (left {left} > right {right}) or uses column 0")]
    EmptyRow { row: usize, left: usize, right: usize },
    #[error("rows {row_a} and {row_b} are not comparable by containment")]
    NotComparable { row_a: usize, row_b: usize },
    #[error("column {column} meets a non-contiguous set of rows")]
    NotConvex { column: usize },
    #[error("leftmost occupied column is {0}, expected 1")]
    NotNormalized(usize),
    #[error("column {column} out of range 1..={width}")]
    ColumnOutOfRange { column: usize, width: usize },
    #[error("row {row} out of range 1..={height}")]
    RowOutOfRange { row: usize, height: usize },
    #[error("shape class {found} is not accepted here (expected {expected})")]
    WrongShapeClass { expected: &'static str, found: ShapeClass },
    #[error("cell ({row}, {column}) lies outside the shape")]
    CellOutsideShape { row: usize, column: usize },
    #[error("filling has {found} rows but the shape has {expected}")]
    RowCountMismatch { expected: usize, found: usize },
    #[error("infeasible filling class: {0}")]
    InfeasibleSpec(String),
    #[error("letter {letter} is outside the alphabet 1..={alphabet}")]
    LetterOutOfRange { letter: u32, alphabet: u32 },
    #[error("word is empty")]
    EmptyWord,
    #[error("inserted letter {letter} lies inside the range of the word")]
    LetterInsideRange { letter: u32 },
    #[error("invalid arc diagram: {0}")]
    InvalidArcs(String),
    #[error("columns of the two shapes are not a permutation of each other: {0}")]
    ColumnMismatch(String),
    #[error("enumeration exceeds the limit of {limit} fillings")]
    TooManyFillings { limit: u64 },
    #[error("{0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
