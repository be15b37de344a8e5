//! graph6 encoding of simple undirected graphs.
//!
//! The size header is `n + 63` for `n <= 62`, `~` plus three 6-bit bytes for
//! `n <= 258047`, and `~~` plus six bytes beyond that. The body packs the upper
//! triangle column by column (`(0,1), (0,2), (1,2), (0,3), ...`), six bits per
//! byte, most significant first, each byte offset by 63. Padding bits are zero.

use crate::error::{Error, Result};
use crate::graph::Graph;

const OFFSET: u8 = 63;
const HEADER: &str = ">>graph6<<";

fn push_size(out: &mut String, n: usize) {
    if n <= 62 {
        out.push((n as u8 + OFFSET) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + OFFSET) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + OFFSET) as char);
        }
    }
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = String::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + OFFSET) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + OFFSET) as char);
    }
    out
}

fn sixbits(bytes: &[u8], at: usize) -> Result<u8> {
    match bytes.get(at) {
        None => Err(Error::parse(at, "unexpected end of input")),
        Some(&b) if (OFFSET..=126).contains(&b) => Ok(b - OFFSET),
        Some(&b) => Err(Error::parse(at, format!("byte 0x{b:02x} outside the graph6 range"))),
    }
}

/// Parse one graph6 string. Surrounding whitespace and an optional
/// `>>graph6<<` header are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (base, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, trimmed),
    };
    let bytes = body.as_bytes();
    let err = |e: Error| match e {
        Error::Parse { offset, message } => Error::Parse { offset: offset + base, message },
        other => other,
    };
    parse_bytes(bytes).map_err(err)
}

fn parse_bytes(bytes: &[u8]) -> Result<Graph> {
    if bytes.is_empty() {
        return Err(Error::parse(0, "empty input"));
    }
    let (n, mut pos) = if bytes[0] != b'~' {
        (sixbits(bytes, 0)? as usize, 1)
    } else if bytes.get(1) != Some(&b'~') {
        let mut n = 0usize;
        for i in 1..4 {
            n = (n << 6) | sixbits(bytes, i)? as usize;
        }
        (n, 4)
    } else {
        let mut n = 0usize;
        for i in 2..8 {
            n = (n << 6) | sixbits(bytes, i)? as usize;
        }
        (n, 8)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if bytes.len() != pos + need {
        let at = bytes.len().min(pos + need);
        return Err(Error::parse(at, format!("expected {need} data bytes for n={n}, found {}", bytes.len() - pos)));
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    let mut cur = 0u8;
    for j in 1..n {
        for i in 0..j {
            if k.is_multiple_of(6) {
                cur = sixbits(bytes, pos)?;
                pos += 1;
            }
            if cur >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if !k.is_multiple_of(6) {
        let pad = 6 - k % 6;
        if cur & ((1 << pad) - 1) != 0 {
            return Err(Error::parse(pos - 1, "nonzero padding bits"));
        }
    }
    Graph::from_edges(n, edges)
}
