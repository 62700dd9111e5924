pub mod analysis;
pub mod bitgrid;
pub mod cli;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod persist;
pub mod rules;

pub use bitgrid::{Sheet, SheetKind};
pub use error::{Error, Result};
pub use rules::{Game, Position};
