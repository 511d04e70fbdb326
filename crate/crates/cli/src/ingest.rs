//! Turning command-line operands into byte sequences.
//!
//! An operand naming an existing file is read from disk; anything else is
//! taken literally. Files are plain bytes unless they are FASTA, in which case
//! the first record's sequence is used.

use std::fs;
use std::path::Path;

use crate::error::{HarnessError, Result};

/// Resolve `operand` to a sequence. With `fasta`, file contents are always
/// parsed as FASTA; without it, only files starting with `>` are.
pub fn load_operand(operand: &str, fasta: bool) -> Result<Vec<u8>> {
    let path = Path::new(operand);
    if !path.exists() {
        return Ok(operand.as_bytes().to_vec());
    }
    let bytes = fs::read(path).map_err(|source| HarnessError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    if fasta || bytes.first() == Some(&b'>') {
        return first_fasta_record(&bytes).ok_or_else(|| HarnessError::EmptyFasta {
            path: operand.to_string(),
        });
    }
    Ok(strip_line_end(bytes))
}

fn strip_line_end(mut bytes: Vec<u8>) -> Vec<u8> {
    while matches!(bytes.last(), Some(b'\n' | b'\r')) {
        bytes.pop();
    }
    bytes
}

/// Sequence of the first record: header lines start with `>`, sequence lines
/// are concatenated with whitespace removed. `None` when there is no header.
pub fn first_fasta_record(bytes: &[u8]) -> Option<Vec<u8>> {
    let mut lines = bytes.split(|&b| b == b'\n');
    lines.by_ref().find(|l| l.first() == Some(&b'>'))?;
    let mut seq = Vec::new();
    for line in lines {
        if line.first() == Some(&b'>') {
            break;
        }
        seq.extend(line.iter().filter(|b| !b.is_ascii_whitespace()));
    }
    Some(seq)
}
