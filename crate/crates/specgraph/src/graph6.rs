//! The graph6 format: a size field followed by the upper triangle of the
//! adjacency matrix, column by column, six bits per printable byte.

use specgraph_core::{Graph, GraphError, MAX_ORDER};
use thiserror::Error;

const HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("expected {expected} bytes, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("nonzero padding bits in the final byte")]
    Padding,
    #[error("order {0} exceeds the supported maximum")]
    TooLarge(u64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn edge_bits(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + BIAS));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + BIAS));
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + edge_bits(n).div_ceil(6));
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u8, Graph6Error> {
    match bytes.get(offset) {
        Some(&b) if (BIAS..=126).contains(&b) => Ok(b - BIAS),
        Some(&b) => Err(Graph6Error::InvalidByte { offset, byte: b }),
        None => Err(Graph6Error::BadLength {
            expected: offset + 1,
            found: bytes.len(),
        }),
    }
}

fn decode_size(bytes: &[u8]) -> Result<(u64, usize), Graph6Error> {
    let first = sextet(bytes, 0)?;
    if first != 63 {
        return Ok((first as u64, 1));
    }
    let (start, count) = if bytes.get(1) == Some(&126) { (2, 6) } else { (1, 3) };
    let mut n = 0u64;
    for i in start..start + count {
        n = n << 6 | sextet(bytes, i)? as u64;
    }
    Ok((n, start + count))
}

/// Decodes one graph6 string. An optional `>>graph6<<` header and
/// surrounding whitespace are accepted.
pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (n, start) = decode_size(bytes)?;
    if n > MAX_ORDER as u64 {
        return Err(Graph6Error::TooLarge(n));
    }
    let n = n as usize;
    let body = &bytes[start..];
    let expected = edge_bits(n).div_ceil(6);
    if body.len() != expected {
        return Err(Graph6Error::BadLength {
            expected: start + expected,
            found: bytes.len(),
        });
    }
    for (i, &b) in body.iter().enumerate() {
        sextet(body, i).map_err(|_| Graph6Error::InvalidByte { offset: start + i, byte: b })?;
    }
    let bit = |k: usize| (body[k / 6] - BIAS) >> (5 - k % 6) & 1 == 1;
    let spare = expected * 6 - edge_bits(n);
    if (edge_bits(n)..edge_bits(n) + spare).any(bit) {
        return Err(Graph6Error::Padding);
    }
    // bit index of (i, j), i < j, is j(j−1)/2 + i
    Ok(Graph::from_fn(n, |i, j| bit(j * (j - 1) / 2 + i))?)
}
