//! graph6 text codec. One graph per string: a length header (`n+63` for
//! n <= 62, `'~'` plus three sextet bytes up to the crate capacity), then the
//! upper-triangle adjacency bits x(0,1), x(0,2), x(1,2), x(0,3), ... packed
//! big-endian six to a byte, each byte offset by 63 into the printable range.
//! Parsing is strict: canonical header form only, zero padding bits, no
//! trailing bytes; every rejection carries the byte offset. On everything the
//! parser accepts, `write_graph6` after `parse_graph6` reproduces the input.

use alloc::string::String;

use crate::error::{Error, Graph6Error, Result};
use crate::graph::{Graph, GraphBuilder, MAX_VERTICES};

/// Optional prefix some tools put in front of the first line of a file.
pub const HEADER: &str = ">>graph6<<";

fn bad(kind: Graph6Error, offset: usize) -> Error {
    Error::Graph6 { kind, offset }
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u32> {
    match bytes.get(offset) {
        None => Err(bad(Graph6Error::BadLength, offset)),
        Some(&b) if (63..=126).contains(&b) => Ok(b as u32 - 63),
        Some(_) => Err(bad(Graph6Error::BadChar, offset)),
    }
}

/// Parses a single graph6 string (optionally prefixed by [`HEADER`]).
/// Offsets in errors are byte positions within `input`.
pub fn parse_graph6(input: &str) -> Result<Graph> {
    let bytes = input.as_bytes();
    let start = if input.starts_with(HEADER) { HEADER.len() } else { 0 };
    if bytes.len() == start {
        return Err(bad(Graph6Error::Empty, start));
    }

    // Length header.
    let (n, mut pos) = {
        let b0 = sextet(bytes, start)?;
        if b0 < 63 {
            (b0 as usize, start + 1)
        } else {
            // b0 == 63 is '~': multi-byte length.
            if bytes.get(start + 1) == Some(&b'~') {
                // The eight-byte length form starts at 258048 vertices,
                // far beyond the fixed row capacity.
                return Err(bad(Graph6Error::TooLarge, start));
            }
            let mut n = 0usize;
            for k in 0..3 {
                n = n << 6 | sextet(bytes, start + 1 + k)? as usize;
            }
            if n < 63 {
                return Err(bad(Graph6Error::NonCanonicalLength, start));
            }
            (n, start + 4)
        }
    };
    if n > MAX_VERTICES {
        return Err(bad(Graph6Error::TooLarge, start));
    }

    let pairs = n * n.saturating_sub(1) / 2;
    let data_bytes = pairs.div_ceil(6);
    let mut b = GraphBuilder::new(n).expect("size checked above");

    let (mut i, mut j) = (0u16, 1u16);
    let mut pair = 0usize;
    for k in 0..data_bytes {
        let val = match bytes.get(pos + k) {
            None => return Err(bad(Graph6Error::Truncated, bytes.len())),
            Some(&c) if (63..=126).contains(&c) => c - 63,
            Some(_) => return Err(bad(Graph6Error::BadChar, pos + k)),
        };
        for shift in (0..6).rev() {
            let bit = val >> shift & 1;
            if pair < pairs {
                if bit != 0 {
                    b.add_edge(i, j).expect("column-major walk stays in range");
                }
                pair += 1;
                i += 1;
                if i == j {
                    i = 0;
                    j += 1;
                }
            } else if bit != 0 {
                return Err(bad(Graph6Error::PaddingBits, pos + k));
            }
        }
    }
    pos += data_bytes;
    if pos != bytes.len() {
        return Err(bad(Graph6Error::TrailingData, pos));
    }
    Ok(b.freeze())
}

/// Encodes a graph in canonical (shortest-header) graph6 form, no [`HEADER`].
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n() as usize;
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12u32, 6, 0] {
            out.push(((n >> shift & 63) as u8 + 63) as char);
        }
    }

    let mut acc = 0u8;
    let mut filled = 0u8;
    for j in 1..n as u16 {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}
