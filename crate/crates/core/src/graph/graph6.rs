//! graph6 encoding for graphs of order at most 62.
//!
//! Format: one header byte `n + 63`, then the upper triangle of the
//! adjacency matrix in column order (`x(0,1), x(0,2), x(1,2), x(0,3), ...`)
//! packed six bits per byte, most significant bit first, each byte offset
//! by 63. The final byte is padded with zero bits.

use super::Graph;
use crate::error::{Error, Result};

const BIAS: u8 = 63;
const MAX_PRINTABLE: u8 = 126;

fn g6_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    let Some(&header) = bytes.first() else {
        return Err(g6_err(0, "empty input"));
    };
    if !(BIAS..=MAX_PRINTABLE).contains(&header) {
        return Err(g6_err(0, format!("invalid header byte 0x{header:02x}")));
    }
    if header == MAX_PRINTABLE {
        return Err(g6_err(0, "multi-byte order header (n > 62) is not supported"));
    }
    let n = usize::from(header - BIAS);
    let expected = 1 + data_len(n);
    if bytes.len() < expected {
        return Err(g6_err(
            bytes.len(),
            format!("truncated bit stream: expected {expected} bytes, found {}", bytes.len()),
        ));
    }
    if bytes.len() > expected {
        return Err(g6_err(expected, format!("trailing data after {expected} bytes")));
    }
    for (i, &b) in bytes.iter().enumerate().skip(1) {
        if !(BIAS..=MAX_PRINTABLE).contains(&b) {
            return Err(g6_err(i, format!("invalid data byte 0x{b:02x}")));
        }
    }

    let mut g = Graph::empty(n)?;
    let mut pos = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = bytes[1 + pos / 6] - BIAS;
            if byte >> (5 - pos % 6) & 1 == 1 {
                g.add_edge(u, v)?;
            }
            pos += 1;
        }
    }
    if !pos.is_multiple_of(6) {
        let last = bytes[expected - 1] - BIAS;
        let pad_bits = 6 - pos % 6;
        if last & ((1 << pad_bits) - 1) != 0 {
            return Err(g6_err(expected - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push(BIAS + n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(BIAS + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(BIAS + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 output is printable ASCII")
}
