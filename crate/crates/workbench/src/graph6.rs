//! graph6 encoding (as used by nauty's `geng`/`showg`).
//!
//! A header `N(n)` followed by the upper triangle of the adjacency matrix
//! in column order `(0,1), (0,2), (1,2), (0,3), …`, packed six bits per
//! byte, each byte offset by 63. The parser is strict: non-minimal size
//! headers and nonzero padding bits are rejected, so `emit(parse(s)) == s`
//! for every accepted `s`.

use koszulgraph_core::{Graph, MAX_VERTICES};

use crate::error::WorkbenchError;

/// Optional file header some tools write before the first graph.
pub const HEADER: &str = ">>graph6<<";

const BIAS: u8 = 63;
const LONG: u8 = 126;

fn malformed(offset: usize, reason: impl Into<String>) -> WorkbenchError {
    WorkbenchError::MalformedGraph6 { offset, reason: reason.into() }
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(LONG);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parses one graph6 line. A trailing `\n` / `\r\n` is tolerated.
pub fn parse_graph6(line: &str) -> Result<Graph, WorkbenchError> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(malformed(0, "empty input"));
    }
    if let Some(pos) = bytes.iter().position(|&b| !(BIAS..=126).contains(&b)) {
        return Err(malformed(pos, format!("byte 0x{:02x} outside 63..=126", bytes[pos])));
    }
    let six = |b: u8| (b - BIAS) as usize;

    let (n, body_start) = if bytes[0] != LONG {
        (six(bytes[0]), 1)
    } else if bytes.len() >= 2 && bytes[1] == LONG {
        // 8-byte header: at least 258048 vertices
        if bytes.len() < 8 {
            return Err(malformed(bytes.len(), "truncated 8-byte size header"));
        }
        let n = bytes[2..8].iter().fold(0usize, |acc, &b| acc << 6 | six(b));
        if n < 258_048 {
            return Err(malformed(0, format!("non-minimal size header for n = {n}")));
        }
        return Err(WorkbenchError::CapExceeded { requested: n, cap: MAX_VERTICES });
    } else {
        if bytes.len() < 4 {
            return Err(malformed(bytes.len(), "truncated 4-byte size header"));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | six(b));
        if n < 63 {
            return Err(malformed(0, format!("non-minimal size header for n = {n}")));
        }
        (n, 4)
    };
    if n > MAX_VERTICES {
        return Err(WorkbenchError::CapExceeded { requested: n, cap: MAX_VERTICES });
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let body = &bytes[body_start..];
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(malformed(
            body_start + body.len().min(expected),
            format!("expected {expected} edge bytes for n = {n}, found {}", body.len()),
        ));
    }
    if nbits % 6 != 0 {
        let last = six(*body.last().expect("nonempty when nbits > 0"));
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(malformed(bytes.len() - 1, "nonzero padding bits"));
        }
    }

    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let bit = six(body[k / 6]) >> (5 - k % 6) & 1;
            if bit == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(Graph::from_rows(rows).expect("decoded rows are symmetric and loop-free"))
}
