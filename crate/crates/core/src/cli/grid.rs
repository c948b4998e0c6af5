//! Text sign-grid files.
//!
//! ```text
//! # order=4
//! # weights=3
//! # kind=dw
//! 0+++
//! -0-+
//! -+0-
//! --+0
//! ```
//!
//! Header lines are `# key=value`; other `#` lines are comments. Each block
//! is `order` rows of `order` characters from `+ - 0`, blocks separated by
//! one or more blank lines.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::json;

use crate::error::{Error, Result};
use crate::matcore::TernaryMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignGridFile {
    pub header: BTreeMap<String, String>,
    pub matrices: Vec<TernaryMatrix>,
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

impl SignGridFile {
    /// `order` is taken from the matrices; all must share it.
    pub fn new(kind: &str, matrices: Vec<TernaryMatrix>) -> Self {
        let mut header = BTreeMap::new();
        header.insert("kind".to_string(), kind.to_string());
        if let Some(m) = matrices.first() {
            header.insert("order".to_string(), m.order().to_string());
        }
        Self { header, matrices }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.header.insert(key.to_string(), value.to_string());
        self
    }

    pub fn order(&self) -> Option<usize> {
        self.header.get("order")?.parse().ok()
    }

    pub fn kind(&self) -> Option<&str> {
        self.header.get("kind").map(String::as_str)
    }

    /// Comma-separated `weights` header.
    pub fn weights(&self) -> Result<Option<Vec<usize>>> {
        let Some(raw) = self.header.get("weights") else { return Ok(None) };
        raw.split(',')
            .map(|w| w.trim().parse().map_err(|_| Error::ParamMismatch(format!("bad weights header {raw:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header = BTreeMap::new();
        let mut order: Option<usize> = None;
        let mut matrices = Vec::new();
        let mut block: Vec<i8> = Vec::new();
        let mut block_start = 0;
        let mut last_line = 0;
        let close = |block: &mut Vec<i8>, start: usize, line: usize, order: usize, out: &mut Vec<TernaryMatrix>| {
            if block.is_empty() {
                return Ok(());
            }
            let rows = block.len() / order;
            if rows != order {
                return Err(parse_err(
                    line,
                    1,
                    format!("block starting at line {start} has {rows} rows, expected {order}"),
                ));
            }
            out.push(TernaryMatrix::new(order, std::mem::take(block)).expect("entries already validated"));
            Ok(())
        };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let body = raw.trim_end();
            if let Some(rest) = body.strip_prefix('#') {
                if !block.is_empty() {
                    return Err(parse_err(line, 1, "header line inside a block"));
                }
                if let Some((k, v)) = rest.split_once('=') {
                    let (k, v) = (k.trim(), v.trim());
                    if k == "order" {
                        let o: usize = v.parse().map_err(|_| parse_err(line, raw.find('=').unwrap() + 2, "order is not a number"))?;
                        if o == 0 {
                            return Err(parse_err(line, 1, "order must be positive"));
                        }
                        if !matrices.is_empty() && order != Some(o) {
                            return Err(parse_err(line, 1, "order changed after the first block"));
                        }
                        order = Some(o);
                    }
                    header.insert(k.to_string(), v.to_string());
                }
                continue;
            }
            if body.is_empty() {
                if let Some(o) = order {
                    close(&mut block, block_start, line, o, &mut matrices)?;
                }
                continue;
            }
            let o = order.ok_or_else(|| parse_err(line, 1, "matrix row before the order header"))?;
            if block.is_empty() {
                block_start = line;
            }
            if block.len() == o * o {
                return Err(parse_err(line, 1, format!("block starting at line {block_start} has more than {o} rows")));
            }
            let mut width = 0;
            for (c, ch) in body.chars().enumerate() {
                let v = match ch {
                    '+' => 1,
                    '-' => -1,
                    '0' => 0,
                    other => return Err(parse_err(line, c + 1, format!("unexpected character {other:?}"))),
                };
                if c == o {
                    return Err(parse_err(line, c + 1, format!("row longer than order {o}")));
                }
                block.push(v);
                width += 1;
            }
            if width < o {
                return Err(parse_err(line, width + 1, format!("row has {width} entries, expected {o}")));
            }
        }
        match order {
            Some(o) => close(&mut block, block_start, last_line + 1, o, &mut matrices)?,
            None => return Err(parse_err(last_line + 1, 1, "missing order header")),
        }
        if matrices.is_empty() {
            return Err(parse_err(last_line + 1, 1, "no matrix blocks"));
        }
        Ok(Self { header, matrices })
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.header {
            writeln!(out, "# {k}={v}").unwrap();
        }
        for (i, m) in self.matrices.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            for row in m.to_sign_rows() {
                out.push_str(&row);
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "header": self.header,
            "matrices": self.matrices.iter().map(|m| m.to_sign_rows()).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_error(text: &str) -> (usize, usize) {
        match SignGridFile::parse(text) {
            Err(Error::Parse { line, col, .. }) => (line, col),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn round_trip() {
        let k = TernaryMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let f = SignGridFile::new("dw", vec![k.clone(), k.negate()]).with("weights", "1,1");
        let back = SignGridFile::parse(&f.to_text()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.weights().unwrap(), Some(vec![1, 1]));
    }

    #[test]
    fn error_positions() {
        assert_eq!(parse_error("# order=2\n0+\n-x\n"), (3, 2));
        assert_eq!(parse_error("# order=2\n0+\n-\n"), (3, 2));
        assert_eq!(parse_error("# order=2\n0+\n-00\n"), (3, 3));
        assert_eq!(parse_error("# order=2\n0+\n"), (3, 1));
        assert_eq!(parse_error("0+\n-0\n"), (1, 1));
        assert_eq!(parse_error("# order=2\n0+\n-0\n+0\n"), (4, 1));
    }
}
