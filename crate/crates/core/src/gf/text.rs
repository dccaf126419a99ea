//! Plain-text matrix format.
//!
//! ```text
//! q=2^1 rows=3 cols=7
//! 1 0 1 0 1 0 1
//! 0 1 1 0 0 1 1
//! 0 0 0 1 1 1 1
//! ```
//!
//! An optional `poly=c_0 c_1 ... c_r` line directly after the header selects
//! a custom reduction polynomial. Blank lines and lines starting with `#` are
//! ignored.

use std::fmt::Write;

use super::{prime_power, Elem, Field, Matrix};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_uint(line: usize, token: &str, what: &str) -> Result<u32> {
    token
        .parse::<u32>()
        .map_err(|_| parse_err(line, format!("invalid {what} `{token}`")))
}

pub fn parse_matrix(input: &str) -> Result<Matrix> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .peekable();

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing header line"))?;
    let (mut pr, mut rows, mut cols) = (None, None, None);
    for tok in header.split_whitespace() {
        let (key, val) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(hline, format!("unexpected header token `{tok}`")))?;
        match key {
            "q" => {
                pr = Some(match val.split_once('^') {
                    Some((p, r)) => (
                        parse_uint(hline, p, "characteristic")?,
                        parse_uint(hline, r, "degree")?,
                    ),
                    None => {
                        let q = parse_uint(hline, val, "field order")?;
                        prime_power(q).ok_or_else(|| {
                            parse_err(hline, format!("`{val}` is not a prime power"))
                        })?
                    }
                });
            }
            "rows" => rows = Some(parse_uint(hline, val, "row count")? as usize),
            "cols" => cols = Some(parse_uint(hline, val, "column count")? as usize),
            _ => return Err(parse_err(hline, format!("unknown header key `{key}`"))),
        }
    }
    let (p, r) = pr.ok_or_else(|| parse_err(hline, "header lacks `q=`"))?;
    let rows = rows.ok_or_else(|| parse_err(hline, "header lacks `rows=`"))?;
    let cols = cols.ok_or_else(|| parse_err(hline, "header lacks `cols=`"))?;

    let mut poly = None;
    if let Some(&(pline, l)) = lines.peek() {
        if let Some(rest) = l.strip_prefix("poly=") {
            let coeffs = rest
                .split_whitespace()
                .map(|t| parse_uint(pline, t, "polynomial coefficient"))
                .collect::<Result<Vec<_>>>()?;
            poly = Some(coeffs);
            lines.next();
        }
    }
    let field = Field::new(p, r, poly.as_deref()).map_err(|e| parse_err(hline, e.to_string()))?;

    let mut data: Vec<Elem> = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for (lno, l) in lines {
        if seen == rows {
            return Err(parse_err(lno, format!("expected {rows} rows, found more")));
        }
        let before = data.len();
        for tok in l.split_whitespace() {
            let v = parse_uint(lno, tok, "element")?;
            let e = field.element(v).map_err(|_| {
                parse_err(
                    lno,
                    format!("element `{tok}` is not below q={}", field.order()),
                )
            })?;
            data.push(e);
        }
        if data.len() - before != cols {
            return Err(parse_err(
                lno,
                format!("expected {cols} entries, found {}", data.len() - before),
            ));
        }
        seen += 1;
    }
    if seen != rows {
        return Err(parse_err(
            input.lines().count().max(1),
            format!("expected {rows} rows, found {seen}"),
        ));
    }
    Matrix::new(&field, rows, cols, data)
}

pub fn format_matrix(m: &Matrix) -> String {
    let f = m.field();
    let mut s = String::new();
    let _ = writeln!(
        s,
        "q={}^{} rows={} cols={}",
        f.characteristic(),
        f.degree(),
        m.rows(),
        m.cols()
    );
    if let Some(c) = f.poly() {
        let _ = writeln!(s, "poly={}", join(c.iter()));
    }
    for r in m.row_iter() {
        let _ = writeln!(s, "{}", join(r.iter()));
    }
    s
}

fn join<T: ToString>(it: impl Iterator<Item = T>) -> String {
    it.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
