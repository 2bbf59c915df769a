//! graph6 text encoding.
//!
//! The size header is one byte `63 + n` for `n <= 62`, otherwise `~`
//! followed by `n` as three 6-bit bytes. Then the upper triangle of the adjacency matrix
//! read column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), packed six
//! bits per byte, most significant bit first, each byte offset by 63.

use thiserror::Error;

use super::{Graph, GraphError};

/// Largest order representable with the one-byte size header.
pub const SHORT_HEADER_MAX_ORDER: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    InvalidCharacter { offset: usize, byte: u8 },
    #[error("order {0} is not supported (graphs have 1..={max} vertices)", max = super::MAX_ORDER)]
    UnsupportedOrder(usize),
    #[error("size header is cut short")]
    TruncatedHeader,
    #[error("expected {expected} data bytes for order {order}, found {found}")]
    Truncated { order: usize, expected: usize, found: usize },
    #[error("{extra} unexpected trailing bytes after the edge field")]
    TrailingData { extra: usize },
    #[error("padding bits in the final byte are not zero")]
    NonZeroPadding,
}

fn data_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

/// Decodes one graph6 line. A single trailing `\n` (or `\r\n`) is accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let bytes = line.as_bytes();
    let (&head, data) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    if !(63..=126).contains(&head) {
        return Err(Graph6Error::InvalidCharacter { offset: 0, byte: head });
    }
    if let Some((i, &b)) = data.iter().enumerate().find(|(_, &b)| !(63..=126).contains(&b)) {
        return Err(Graph6Error::InvalidCharacter { offset: i + 1, byte: b });
    }
    let (n, data) = if head == 126 {
        // `~~` announces a 36-bit size; `~` alone an 18-bit size
        let width = if data.first() == Some(&126) { 7 } else { 3 };
        if data.len() < width {
            return Err(Graph6Error::TruncatedHeader);
        }
        let digits = &data[width - 3 * (width / 3)..width];
        let n = digits.iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, &data[width..])
    } else {
        ((head - 63) as usize, data)
    };
    if n == 0 || n > super::MAX_ORDER {
        return Err(Graph6Error::UnsupportedOrder(n));
    }
    let expected = data_len(n);
    if data.len() < expected {
        return Err(Graph6Error::Truncated { order: n, expected, found: data.len() });
    }
    if data.len() > expected {
        return Err(Graph6Error::TrailingData { extra: data.len() - expected });
    }

    let mut g = Graph::empty(n).map_err(|e| match e {
        GraphError::OrderOutOfRange(k) => Graph6Error::UnsupportedOrder(k),
        _ => unreachable!("empty() only fails on order"),
    })?;
    let total = n * (n - 1) / 2;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j).expect("indices are in range");
            }
            k += 1;
        }
    }
    let pad = expected * 6 - total;
    if pad > 0 && (data[expected - 1] - 63) & ((1u8 << pad) - 1) != 0 {
        return Err(Graph6Error::NonZeroPadding);
    }
    Ok(g)
}

/// Encodes `g` without a trailing newline.
pub fn to_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + data_len(n));
    if n <= SHORT_HEADER_MAX_ORDER {
        out.push(63 + n as u8);
    } else {
        out.extend([126, 63 + (n >> 12 & 63) as u8, 63 + (n >> 6 & 63) as u8, 63 + (n & 63) as u8]);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent reference encoder: builds the bit string as text, pads it,
    /// and converts six-character chunks with `u8::from_str_radix`.
    fn reference_encode(n: usize, edges: &[(usize, usize)]) -> String {
        let has = |i: usize, j: usize| edges.iter().any(|&(a, b)| (a, b) == (i, j) || (b, a) == (i, j));
        let mut bitstr = String::new();
        for j in 1..n {
            for i in 0..j {
                bitstr.push(if has(i, j) { '1' } else { '0' });
            }
        }
        while bitstr.len() % 6 != 0 {
            bitstr.push('0');
        }
        let mut s = String::new();
        if n <= 62 {
            s.push(char::from(63 + n as u8));
        } else {
            let size = format!("{n:018b}");
            s.push('~');
            for chunk in size.as_bytes().chunks(6) {
                s.push(char::from(63 + u8::from_str_radix(std::str::from_utf8(chunk).unwrap(), 2).unwrap()));
            }
        }
        for chunk in bitstr.as_bytes().chunks(6) {
            let v = u8::from_str_radix(std::str::from_utf8(chunk).unwrap(), 2).unwrap();
            s.push(char::from(63 + v));
        }
        s
    }

    #[test]
    fn reference_oracle_values() {
        assert_eq!(reference_encode(3, &[(0, 1), (0, 2), (1, 2)]), "Bw");
        assert_eq!(reference_encode(2, &[(0, 1)]), "A_");
        assert_eq!(reference_encode(2, &[]), "A?");
    }

    #[test]
    fn decodes_small_examples() {
        let k3 = parse_graph6("Bw").unwrap();
        assert_eq!((k3.order(), k3.size()), (3, 3));
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!((k2.order(), k2.size()), (2, 1));
        let e2 = parse_graph6("A?").unwrap();
        assert_eq!((e2.order(), e2.size()), (2, 0));
        assert_eq!(parse_graph6("@\n").unwrap().order(), 1);
    }

    #[test]
    fn encodes_small_examples() {
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(to_graph6(&k3).unwrap(), "Bw");
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(to_graph6(&k2).unwrap(), "A_");
        assert_eq!(to_graph6(&Graph::empty(1).unwrap()).unwrap(), "@");
    }

    #[test]
    fn matches_reference_encoder() {
        let cases: Vec<(usize, Vec<(usize, usize)>)> = vec![
            (4, vec![(0, 1), (1, 2), (2, 3)]),
            (5, vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)]),
            (7, vec![(0, 6), (2, 5), (3, 4), (1, 6)]),
            (12, (0..11).map(|i| (i, i + 1)).collect()),
        ];
        for (n, edges) in cases {
            let g = Graph::from_edges(n, &edges).unwrap();
            assert_eq!(to_graph6(&g).unwrap(), reference_encode(n, &edges));
        }
    }

    #[test]
    fn error_variants_are_distinct() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(parse_graph6("B"), Err(Graph6Error::Truncated { order: 3, expected: 1, found: 0 }));
        assert_eq!(parse_graph6("Bww"), Err(Graph6Error::TrailingData { extra: 1 }));
        assert_eq!(parse_graph6("B w"), Err(Graph6Error::InvalidCharacter { offset: 1, byte: b' ' }));
        assert_eq!(parse_graph6("~??"), Err(Graph6Error::TruncatedHeader));
        assert_eq!(parse_graph6("~?A@"), Err(Graph6Error::UnsupportedOrder(129)));
        assert_eq!(parse_graph6("~~??????"), Err(Graph6Error::UnsupportedOrder(0)));
        assert_eq!(parse_graph6("?"), Err(Graph6Error::UnsupportedOrder(0)));
        // K3 uses 3 of 6 bits; low padding bit set
        assert_eq!(parse_graph6("Bx"), Err(Graph6Error::NonZeroPadding));
    }

    #[test]
    fn order_62_roundtrip() {
        let mut g = Graph::empty(62).unwrap();
        for i in 0..61 {
            g.add_edge(i, i + 1).unwrap();
        }
        g.add_edge(0, 61).unwrap();
        let s = to_graph6(&g).unwrap();
        assert_eq!(s.len(), 1 + (62 * 61 / 2usize).div_ceil(6));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn long_header_orders() {
        for n in [63, 64, 99, 128] {
            let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).chain([(0, n - 1), (3, 40)]).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            let s = to_graph6(&g).unwrap();
            assert_eq!(s, reference_encode(n, &edges));
            assert_eq!(parse_graph6(&s).unwrap(), g);
        }
        // n = 63 is `~` then 000000 000000 111111
        assert!(to_graph6(&Graph::empty(63).unwrap()).unwrap().starts_with("~??~"));
    }
}
