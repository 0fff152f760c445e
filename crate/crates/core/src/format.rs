//! Whitespace-delimited decimal text formats. Lines starting with `#` are
//! comments. Writers are deterministic; every writer's output parses back
//! to the same value.
//!
//! - set family: header `q r t m`, then one sorted set of `r + 1` elements per line
//! - matrix: header `rows cols q`, then one row per line
//! - word: header `n q`, then `n` entries on one line, `?` for an erasure

use std::fmt::Write as _;
use std::str::FromStr;

use crate::codec::{Codeword, ReceivedWord};
use crate::error::{Error, Result};
use crate::gf::{FieldContext, FieldElement};
use crate::lrc::Matrix;
use crate::setfam::SetFamily;

struct Tokens<'a> {
    iter: Box<dyn Iterator<Item = (usize, &'a str)> + 'a>,
    last_line: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let iter = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('#'))
            .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t)));
        Tokens {
            iter: Box::new(iter),
            last_line: 0,
        }
    }

    fn next_raw(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.iter.next() {
            Some((line, tok)) => {
                self.last_line = line;
                Ok((line, tok))
            }
            None => Err(Error::parse(
                self.last_line.max(1),
                format!("unexpected end of input, expected {what}"),
            )),
        }
    }

    fn next<T: FromStr>(&mut self, what: &str) -> Result<T> {
        let (line, tok) = self.next_raw(what)?;
        tok.parse()
            .map_err(|_| Error::parse(line, format!("invalid {what} `{tok}`")))
    }

    fn finish(mut self) -> Result<()> {
        match self.iter.next() {
            None => Ok(()),
            Some((line, tok)) => Err(Error::parse(line, format!("unexpected trailing token `{tok}`"))),
        }
    }
}

pub fn write_family(family: &SetFamily) -> String {
    let mut out = format!("{} {} {} {}\n", family.q(), family.r(), family.t(), family.m());
    for set in family.sets() {
        push_row(&mut out, set.iter());
    }
    out
}

pub fn parse_family(text: &str) -> Result<SetFamily> {
    let mut tok = Tokens::new(text);
    let q: u32 = tok.next("q")?;
    let r: usize = tok.next("r")?;
    let t: usize = tok.next("t")?;
    let m: usize = tok.next("m")?;
    let mut sets = Vec::with_capacity(m);
    for _ in 0..m {
        let set = (0..=r).map(|_| tok.next("element")).collect::<Result<Vec<u32>>>()?;
        sets.push(set);
    }
    tok.finish()?;
    SetFamily::new(q, r, t, sets)
}

pub fn write_matrix(matrix: &Matrix, q: u32) -> String {
    let mut out = format!("{} {} {}\n", matrix.rows(), matrix.cols(), q);
    for r in 0..matrix.rows() {
        push_row(&mut out, matrix.row(r).iter().map(|x| x.value()));
    }
    out
}

/// Returns the field order from the header and the matrix.
pub fn parse_matrix(text: &str) -> Result<(u32, Matrix)> {
    let mut tok = Tokens::new(text);
    let rows: usize = tok.next("row count")?;
    let cols: usize = tok.next("column count")?;
    let q: u64 = tok.next("field order")?;
    let field = FieldContext::new(q).map_err(|e| Error::parse(tok.last_line, e.to_string()))?;
    let mut data = Vec::with_capacity(rows);
    for _ in 0..rows {
        let mut row = Vec::with_capacity(cols);
        for _ in 0..cols {
            row.push(element(&field, &mut tok)?);
        }
        data.push(row);
    }
    tok.finish()?;
    let m = if rows == 0 {
        Matrix::zeros(0, cols)
    } else {
        Matrix::from_rows(data)?
    };
    Ok((field.order(), m))
}

pub fn write_word(word: &ReceivedWord, q: u32) -> String {
    let mut out = format!("{} {}\n", word.len(), q);
    let entries: Vec<String> = word
        .symbols()
        .iter()
        .map(|s| match s {
            Some(v) => v.value().to_string(),
            None => "?".to_string(),
        })
        .collect();
    out.push_str(&entries.join(" "));
    out.push('\n');
    out
}

pub fn write_codeword(word: &Codeword, q: u32) -> String {
    write_word(&ReceivedWord::from_codeword(word), q)
}

/// Returns the field order from the header and the word.
pub fn parse_word(text: &str) -> Result<(u32, ReceivedWord)> {
    let mut tok = Tokens::new(text);
    let n: usize = tok.next("length")?;
    let q: u64 = tok.next("field order")?;
    let field = FieldContext::new(q).map_err(|e| Error::parse(tok.last_line, e.to_string()))?;
    let mut symbols = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, t) = tok.next_raw("symbol")?;
        if t == "?" {
            symbols.push(None);
        } else {
            let v: u64 = t
                .parse()
                .map_err(|_| Error::parse(line, format!("invalid symbol `{t}`")))?;
            symbols.push(Some(field.elem(v).map_err(|e| Error::parse(line, e.to_string()))?));
        }
    }
    tok.finish()?;
    Ok((field.order(), ReceivedWord(symbols)))
}

fn element(field: &FieldContext, tok: &mut Tokens<'_>) -> Result<FieldElement> {
    let (line, t) = tok.next_raw("entry")?;
    let v: u64 = t
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid entry `{t}`")))?;
    field.elem(v).map_err(|e| Error::parse(line, e.to_string()))
}

fn push_row<T: std::fmt::Display>(out: &mut String, items: impl Iterator<Item = T>) {
    let mut first = true;
    for x in items {
        if !first {
            out.push(' ');
        }
        first = false;
        write!(out, "{x}").expect("writing to a String");
    }
    out.push('\n');
}
