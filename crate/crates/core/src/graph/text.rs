//! The `<n>:<e1[*m1]>,<e2[*m2]>,...` text form.

use std::str::FromStr;

use super::CirculantGraph;
use crate::error::{Error, Result};

fn parse_error(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn parse_int<T: FromStr>(text: &str, offset: usize, what: &str) -> Result<T> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(parse_error(offset, format!("expected {what}")));
    }
    trimmed
        .parse()
        .map_err(|_| parse_error(offset, format!("invalid {what} {trimmed:?}")))
}

/// Parses e.g. `12:1,5,11` or `12:3*2,9`. Elements are reduced mod n and
/// duplicates merge into multiplicities. Positions in errors are byte
/// offsets into `text`.
pub fn parse_graph(text: &str) -> Result<CirculantGraph> {
    let colon = text
        .find(':')
        .ok_or_else(|| parse_error(text.len(), "expected ':' after the modulus"))?;
    let n: usize = parse_int(&text[..colon], 0, "modulus")?;
    if n < 2 {
        return Err(parse_error(0, format!("modulus must be >= 2, got {n}")));
    }
    let body = &text[colon + 1..];
    let mut values = Vec::new();
    let mut offset = colon + 1;
    for item in body.split(',') {
        let (elem, mult) = match item.find('*') {
            Some(star) => {
                let m: u32 = parse_int(&item[star + 1..], offset + star + 1, "multiplicity")?;
                if m == 0 {
                    return Err(parse_error(offset + star + 1, "multiplicity must be >= 1"));
                }
                (&item[..star], m)
            }
            None => (item, 1),
        };
        let e: i64 = parse_int(elem, offset, "element")?;
        if e.rem_euclid(n as i64) == 0 {
            return Err(parse_error(offset, format!("element {e} ≡ 0 mod {n}")));
        }
        values.extend(std::iter::repeat(e).take(mult as usize));
        offset += item.len() + 1;
    }
    CirculantGraph::from_elements(n, values)
}

impl FromStr for CirculantGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}
