//! Cayley table text format.
//!
//! ```text
//! # comments run to end of line
//! 2
//! 0 0
//! 1 1
//! labels: a b
//! ```
//!
//! The first line is the order `n`, then `n` rows of `n` zero-based indices;
//! entry `(x, y)` is `x·y`. A `labels:` line may follow the rows.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::semigroup::Semigroup;

const LABELS: &str = "labels:";

pub fn parse_cayley(text: &str) -> Result<Semigroup> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (first, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let order: usize = header.parse().map_err(|_| Error::Parse {
        line: first,
        message: format!("expected the order, found {header:?}"),
    })?;
    if order == 0 {
        return Err(Error::Parse {
            line: first,
            message: "order must be positive".into(),
        });
    }

    let mut table = Vec::with_capacity(order * order);
    let mut last = first;
    for row in 0..order {
        let (line, content) = lines.next().ok_or(Error::Parse {
            line: last + 1,
            message: format!("expected {order} rows, found {row}"),
        })?;
        last = line;
        let entries: Vec<&str> = content.split_whitespace().collect();
        if entries.len() != order {
            return Err(Error::Parse {
                line,
                message: format!("row has {} entries, expected {order}", entries.len()),
            });
        }
        for token in entries {
            let v: usize = token.parse().map_err(|_| Error::Parse {
                line,
                message: format!("non-numeric entry {token:?}"),
            })?;
            if v >= order {
                return Err(Error::IndexOutOfRange { index: v, order });
            }
            table.push(v);
        }
    }

    let mut labels = None;
    if let Some((line, content)) = lines.next() {
        let Some(rest) = content.strip_prefix(LABELS) else {
            return Err(Error::Parse {
                line,
                message: "unexpected content after the table".into(),
            });
        };
        let names: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
        if names.len() != order {
            return Err(Error::Parse {
                line,
                message: format!("{} labels for {order} elements", names.len()),
            });
        }
        labels = Some(names);
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse {
                line,
                message: "unexpected content after the labels".into(),
            });
        }
    }

    let s = Semigroup::from_table(order, table)?;
    match labels {
        Some(l) => s.with_labels(l),
        None => Ok(s),
    }
}

pub fn render_cayley(s: &Semigroup) -> String {
    let n = s.order();
    let mut out = format!("{n}\n");
    for x in 0..n {
        let row: Vec<String> = (0..n).map(|y| s.mul(x, y).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    if let Some(labels) = s.labels() {
        let _ = writeln!(out, "{LABELS} {}", labels.join(" "));
    }
    out
}
