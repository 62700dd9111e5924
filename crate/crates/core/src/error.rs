use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("sheet dimension mismatch: {left_height}x{left_width} vs {right_height}x{right_width}")]
    DimensionMismatch {
        left_height: usize,
        left_width: usize,
        right_height: usize,
        right_width: usize,
    },

    /// The supermex scan found no unmarked cell in a row inside the truncation width.
    #[error("overflow: row {row} has no unmarked cell within width {width}{}", level_suffix(*level))]
    Overflow {
        row: usize,
        width: usize,
        level: Option<u32>,
    },

    #[error("diagonal-add precondition: row 0 has no set cell")]
    DiagonalRowEmpty,

    #[error("diagonal-add precondition: row 0 has {count} set cells, expected exactly one")]
    DiagonalRowAmbiguous { count: usize },

    #[error("invalid position [{x},{y},{z}] for {game}")]
    InvalidPosition {
        game: &'static str,
        x: u32,
        y: u32,
        z: u32,
    },

    #[error("format error: {0}")]
    Format(String),

    #[error("integrity error: checksum mismatch for {}", .0.display())]
    Integrity(PathBuf),

    #[error("io error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

fn level_suffix(level: Option<u32>) -> String {
    match level {
        Some(x) => format!(" at level {x}"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Attach a level to an overflow raised by a level-agnostic operator.
    pub(crate) fn at_level(self, level: u32) -> Self {
        match self {
            Error::Overflow { row, width, .. } => Error::Overflow {
                row,
                width,
                level: Some(level),
            },
            other => other,
        }
    }
}
