use thiserror::Error;

use crate::pattern::Cell;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid tile literal {0:?}: expected 4 binary digits in W,N,E,S order")]
    Tile(String),
    #[error("invalid tileset literal {0:?}: expected comma-separated tiles or a 0xHHHH mask")]
    Tileset(String),
    #[error("invalid size {0:?}: expected WxH")]
    Size(String),
    #[error("invalid word {0:?}: expected letters W and B")]
    Word(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("pattern is not a full rectangle")]
    NotRectangular,
    #[error("pattern is not locally valid")]
    InvalidPattern,
    #[error("pattern contains an odd tile at {0:?}")]
    OddTile(Cell),
    #[error("pattern cannot be lifted to a bit grid")]
    NotLiftable,
    #[error("dimensions {width}x{height} are not compatible with blocks of {block_w}x{block_h}")]
    DimensionMismatch {
        width: usize,
        height: usize,
        block_w: usize,
        block_h: usize,
    },
    #[error("tileset {0} contains an odd tile")]
    NotEven(String),
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("class {0} induces the empty subshift")]
    EmptyClass(String),
    #[error("no valid filling exists")]
    Unsatisfiable,
    #[error("no valid block filling exists")]
    NoValidFill,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
