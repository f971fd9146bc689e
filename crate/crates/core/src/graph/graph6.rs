//! graph6 text encoding for graphs on at most 62 vertices.
//!
//! Layout: one size byte `63 + n`, then the upper triangle read column by
//! column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`) packed six bits per byte,
//! most significant first, zero padded, each byte offset by 63.

use super::{bit, SmallGraph, MAX_VERTICES};
use crate::error::{Error, Result};

pub(super) fn encode(g: &SmallGraph) -> String {
    let n = g.n();
    debug_assert!(n <= MAX_VERTICES);
    let bit_len = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(1 + bit_len.div_ceil(6));
    out.push(63 + n as u8);

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub(super) fn decode(text: &str) -> Result<SmallGraph> {
    let bytes = text.trim().as_bytes();
    let (&head, body) = bytes
        .split_first()
        .ok_or_else(|| Error::Graph6("empty input".into()))?;
    if head == b'~' {
        return Err(Error::Graph6(format!(
            "multi-byte size header (more than {MAX_VERTICES} vertices) is not supported"
        )));
    }
    if !(63..=126).contains(&head) {
        return Err(Error::Graph6(format!("invalid size byte {head:#04x}")));
    }
    let n = (head - 63) as usize;
    let bit_len = n * n.saturating_sub(1) / 2;
    let expected = bit_len.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for n={n}, found {}",
            body.len()
        )));
    }

    let mut adj = vec![0u64; n];
    let mut pos = 0usize;
    for &byte in body {
        if !(63..=126).contains(&byte) {
            return Err(Error::Graph6(format!("invalid data byte {byte:#04x}")));
        }
        let group = byte - 63;
        for shift in (0..6).rev() {
            let set = (group >> shift) & 1 == 1;
            if pos >= bit_len {
                if set {
                    return Err(Error::Graph6("non-zero padding bits".into()));
                }
                continue;
            }
            if set {
                let (i, j) = triangle_position(pos);
                adj[i] |= bit(j);
                adj[j] |= bit(i);
            }
            pos += 1;
        }
    }
    Ok(SmallGraph::from_rows_unchecked(adj))
}

/// Maps a bit index in column-major upper-triangle order back to `(i, j)`, `i < j`.
fn triangle_position(pos: usize) -> (usize, usize) {
    let mut j = 1;
    let mut start = 0;
    while start + j <= pos {
        start += j;
        j += 1;
    }
    (pos - start, j)
}
