//! `SHT1` binary sheet files.
//!
//! ```text
//! offset  size  field
//!      0     4  magic "SHT1"
//!      4     1  version (1)
//!      5     1  game (0 = Nim3, 1 = Chomp3)
//!      6     1  kind (0 W, 1 L, 2 What, 3 Lhat, 4 V, 5 Wt, 6 Lt)
//!      7     1  reserved (0)
//!      8     4  level, u32 LE
//!     12     4  height, u32 LE
//!     16     4  width, u32 LE
//!     20     .  height rows of ceil(width / 8) bytes, LSB-first
//! ```

use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Sheet, WORD_BITS};
use crate::error::{Error, Result};
use crate::rules::Game;

const MAGIC: &[u8; 4] = b"SHT1";
const VERSION: u8 = 1;
const HEADER_LEN: usize = 20;

/// Which family of sheets a file holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SheetKind {
    /// Instant winners, pass used (or pure game).
    W,
    /// Losers, pass used (or pure game).
    L,
    /// Instant winners, pass available.
    What,
    /// Losers, pass available.
    Lhat,
    /// Variant (designated automatic N) cells.
    V,
    /// Instant winners of a generic game.
    Wt,
    /// Losers of a generic game.
    Lt,
}

impl SheetKind {
    pub const ALL: [SheetKind; 7] = [
        SheetKind::W,
        SheetKind::L,
        SheetKind::What,
        SheetKind::Lhat,
        SheetKind::V,
        SheetKind::Wt,
        SheetKind::Lt,
    ];

    pub fn code(self) -> u8 {
        match self {
            SheetKind::W => 0,
            SheetKind::L => 1,
            SheetKind::What => 2,
            SheetKind::Lhat => 3,
            SheetKind::V => 4,
            SheetKind::Wt => 5,
            SheetKind::Lt => 6,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        SheetKind::ALL.into_iter().find(|k| k.code() == code)
    }

    pub fn name(self) -> &'static str {
        match self {
            SheetKind::W => "w",
            SheetKind::L => "l",
            SheetKind::What => "what",
            SheetKind::Lhat => "lhat",
            SheetKind::V => "v",
            SheetKind::Wt => "wt",
            SheetKind::Lt => "lt",
        }
    }

    pub fn is_loser(self) -> bool {
        matches!(self, SheetKind::L | SheetKind::Lhat | SheetKind::Lt)
    }

    /// File name inside a run directory.
    pub fn file_name(self, level: u32) -> String {
        format!("{}_{:06}.sht", self.name(), level)
    }
}

impl fmt::Display for SheetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SheetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SheetKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::config(format!("unknown sheet kind {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SheetHeader {
    pub game: Game,
    pub kind: SheetKind,
    pub level: u32,
}

fn row_bytes(width: usize) -> usize {
    width.div_ceil(8)
}

pub fn write_sheet<W: Write>(mut out: W, header: SheetHeader, sheet: &Sheet) -> std::io::Result<()> {
    let mut head = [0u8; HEADER_LEN];
    head[..4].copy_from_slice(MAGIC);
    head[4] = VERSION;
    head[5] = header.game.code();
    head[6] = header.kind.code();
    head[7] = 0;
    head[8..12].copy_from_slice(&header.level.to_le_bytes());
    head[12..16].copy_from_slice(&(sheet.height() as u32).to_le_bytes());
    head[16..20].copy_from_slice(&(sheet.width() as u32).to_le_bytes());
    out.write_all(&head)?;

    let nbytes = row_bytes(sheet.width());
    let mut buf = Vec::with_capacity(nbytes);
    for y in 0..sheet.height() {
        buf.clear();
        for w in sheet.row(y) {
            buf.extend_from_slice(&w.to_le_bytes());
        }
        out.write_all(&buf[..nbytes])?;
    }
    Ok(())
}

/// Encode into a byte vector.
pub(crate) fn encode(header: SheetHeader, sheet: &Sheet) -> Vec<u8> {
    let mut bytes = Vec::with_capacity(HEADER_LEN + sheet.height() * row_bytes(sheet.width()));
    write_sheet(&mut bytes, header, sheet).expect("writing to a Vec cannot fail");
    bytes
}

pub fn read_sheet<R: Read>(mut input: R) -> Result<(SheetHeader, Sheet)> {
    let mut bytes = Vec::new();
    input
        .read_to_end(&mut bytes)
        .map_err(|e| Error::io("<reader>", e))?;
    decode(&bytes)
}

pub(crate) fn decode(bytes: &[u8]) -> Result<(SheetHeader, Sheet)> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Format(format!("truncated header: {} bytes", bytes.len())));
    }
    if &bytes[..4] != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    if bytes[4] != VERSION {
        return Err(Error::Format(format!("unsupported version {}", bytes[4])));
    }
    let game = Game::from_code(bytes[5])
        .ok_or_else(|| Error::Format(format!("unknown game code {}", bytes[5])))?;
    let kind = SheetKind::from_code(bytes[6])
        .ok_or_else(|| Error::Format(format!("unknown kind code {}", bytes[6])))?;
    if bytes[7] != 0 {
        return Err(Error::Format("reserved byte is not zero".into()));
    }
    let le = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().unwrap());
    let level = le(8);
    let height = le(12) as usize;
    let width = le(16) as usize;
    if height == 0 || width == 0 {
        return Err(Error::Format(format!("empty extents {height}x{width}")));
    }

    let nbytes = row_bytes(width);
    let body = &bytes[HEADER_LEN..];
    if body.len() != height * nbytes {
        return Err(Error::Format(format!(
            "body is {} bytes, expected {}",
            body.len(),
            height * nbytes
        )));
    }

    let mut sheet = Sheet::new(height, width).map_err(|e| Error::Format(e.to_string()))?;
    for (y, chunk) in body.chunks_exact(nbytes).enumerate() {
        let row = sheet.row_mut(y);
        for (i, byte) in chunk.iter().enumerate() {
            row[i / 8] |= (*byte as u64) << ((i % 8) * 8);
        }
    }
    if !sheet.is_canonical() {
        return Err(Error::Format("non-zero padding bits".into()));
    }
    debug_assert_eq!(sheet.stride(), width.div_ceil(WORD_BITS));
    Ok((SheetHeader { game, kind, level }, sheet))
}

pub fn write_sheet_file(path: &Path, header: SheetHeader, sheet: &Sheet) -> Result<()> {
    crate::persist::write_atomic(path, &encode(header, sheet))
}

pub fn read_sheet_file(path: &Path) -> Result<(SheetHeader, Sheet)> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode(&bytes)
}
