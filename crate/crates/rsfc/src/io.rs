//! Symbol file format shared by the CLI tools.
//!
//! Codeword and received-word files carry a header: the magic `RSFC`, one
//! version byte, then m, n, k as little-endian u32. Symbols follow, one per
//! byte for m = 8 and one per little-endian u16 for 8 < m <= 16. Message
//! files are raw symbols with no header (their length is implied by k).

use crate::gf::FieldElement;
use std::fmt;
use std::io::{Read, Write};

pub const MAGIC: [u8; 4] = *b"RSFC";
pub const VERSION: u8 = 1;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct FileHeader {
    pub m: u32,
    pub n: usize,
    pub k: usize,
}

#[derive(Debug)]
pub enum IoError {
    Io(std::io::Error),
    BadMagic([u8; 4]),
    BadVersion(u8),
    BadHeader(&'static str),
    SymbolOutOfRange { index: usize, value: u32 },
    TruncatedSymbols { expected: usize, got: usize },
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoError::Io(e) => write!(f, "i/o error: {}", e),
            IoError::BadMagic(m) => write!(f, "bad magic {:?}, not a codeword file", m),
            IoError::BadVersion(v) => write!(f, "unsupported file version {}", v),
            IoError::BadHeader(why) => write!(f, "bad header: {}", why),
            IoError::SymbolOutOfRange { index, value } => {
                write!(f, "symbol {} at index {} exceeds the field", value, index)
            }
            IoError::TruncatedSymbols { expected, got } => {
                write!(f, "expected {} symbols, found {}", expected, got)
            }
        }
    }
}

impl std::error::Error for IoError {}

impl From<std::io::Error> for IoError {
    fn from(e: std::io::Error) -> IoError {
        IoError::Io(e)
    }
}

/// Bytes per symbol for the given field degree.
pub fn symbol_width(m: u32) -> usize {
    if m <= 8 {
        1
    } else {
        2
    }
}

/// Decode a raw symbol buffer (no header) of exactly `count` symbols.
pub fn symbols_from_bytes(
    bytes: &[u8],
    m: u32,
    count: usize,
) -> Result<Vec<FieldElement>, IoError> {
    let width = symbol_width(m);
    if bytes.len() != count * width {
        return Err(IoError::TruncatedSymbols {
            expected: count,
            got: bytes.len() / width,
        });
    }
    let limit = 1u32 << m;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let v = if width == 1 {
            u32::from(bytes[i])
        } else {
            u32::from(u16::from_le_bytes([bytes[2 * i], bytes[2 * i + 1]]))
        };
        if v >= limit {
            return Err(IoError::SymbolOutOfRange { index: i, value: v });
        }
        out.push(FieldElement(v as u16));
    }
    Ok(out)
}

pub fn symbols_to_bytes(symbols: &[FieldElement], m: u32) -> Vec<u8> {
    let width = symbol_width(m);
    let mut out = Vec::with_capacity(symbols.len() * width);
    for s in symbols {
        if width == 1 {
            out.push(s.0 as u8);
        } else {
            out.extend_from_slice(&s.0.to_le_bytes());
        }
    }
    out
}

/// Write a headered codeword file.
pub fn write_codeword<W: Write>(
    w: &mut W,
    header: FileHeader,
    symbols: &[FieldElement],
) -> Result<(), IoError> {
    debug_assert_eq!(symbols.len(), header.n);
    w.write_all(&MAGIC)?;
    w.write_all(&[VERSION])?;
    w.write_all(&header.m.to_le_bytes())?;
    w.write_all(&(header.n as u32).to_le_bytes())?;
    w.write_all(&(header.k as u32).to_le_bytes())?;
    w.write_all(&symbols_to_bytes(symbols, header.m))?;
    Ok(())
}

/// Read a headered codeword file.
pub fn read_codeword<R: Read>(r: &mut R) -> Result<(FileHeader, Vec<FieldElement>), IoError> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if magic != MAGIC {
        return Err(IoError::BadMagic(magic));
    }
    let mut version = [0u8; 1];
    r.read_exact(&mut version)?;
    if version[0] != VERSION {
        return Err(IoError::BadVersion(version[0]));
    }
    let mut word = [0u8; 4];
    r.read_exact(&mut word)?;
    let m = u32::from_le_bytes(word);
    r.read_exact(&mut word)?;
    let n = u32::from_le_bytes(word) as usize;
    r.read_exact(&mut word)?;
    let k = u32::from_le_bytes(word) as usize;
    if !(2..=16).contains(&m) {
        return Err(IoError::BadHeader("field degree out of range"));
    }
    if n > (1usize << m) || k >= n || k == 0 {
        return Err(IoError::BadHeader("inconsistent n, k"));
    }
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    let symbols = symbols_from_bytes(&bytes, m, n)?;
    Ok((FileHeader { m, n, k }, symbols))
}
