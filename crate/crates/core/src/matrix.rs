//! Zero-one matrices with no zero rows or columns, and the plain-text block
//! format used to exchange them.
//!
//! The format writes one block per matrix: a header line `k l`, then `k`
//! lines of `l` characters from `{0,1}`. Consecutive blocks are separated by
//! a single blank line.

use std::fmt;
use std::io::{self, BufRead, Write};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IncidenceMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
    ones: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum MatrixError {
    #[error("grid has {got} cells, expected {rows}x{cols}")]
    Shape {
        rows: usize,
        cols: usize,
        got: usize,
    },
    #[error("row {0} is all zero")]
    ZeroRow(usize),
    #[error("column {0} is all zero")]
    ZeroColumn(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl IncidenceMatrix {
    /// Builds a matrix from a row-major grid, checking that no row or
    /// column is all zero.
    pub fn new(rows: usize, cols: usize, bits: Vec<bool>) -> Result<Self, MatrixError> {
        if bits.len() != rows * cols {
            return Err(MatrixError::Shape {
                rows,
                cols,
                got: bits.len(),
            });
        }
        for r in 0..rows {
            if !bits[r * cols..(r + 1) * cols].iter().any(|&b| b) {
                return Err(MatrixError::ZeroRow(r));
            }
        }
        for c in 0..cols {
            if !(0..rows).any(|r| bits[r * cols + c]) {
                return Err(MatrixError::ZeroColumn(c));
            }
        }
        let ones = bits.iter().filter(|&&b| b).count();
        Ok(IncidenceMatrix {
            rows,
            cols,
            bits,
            ones,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ones(&self) -> usize {
        self.ones
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.cols + col]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn transpose(&self) -> Self {
        let mut bits = vec![false; self.bits.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                bits[c * self.rows + r] = self.get(r, c);
            }
        }
        IncidenceMatrix {
            rows: self.cols,
            cols: self.rows,
            bits,
            ones: self.ones,
        }
    }
}

impl fmt::Display for IncidenceMatrix {
    /// One block of the text format, without a trailing blank line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = self.bits[r * self.cols..(r + 1) * self.cols]
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Writes matrices as blank-line separated blocks.
pub fn write_matrices<'a, W, I>(mut out: W, matrices: I) -> io::Result<()>
where
    W: Write,
    I: IntoIterator<Item = &'a IncidenceMatrix>,
{
    for (i, m) in matrices.into_iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        write!(out, "{m}")?;
    }
    Ok(())
}

/// Parses every block of the text format.
pub fn read_matrices<R: BufRead>(input: R) -> Result<Vec<IncidenceMatrix>, MatrixError> {
    let mut out = Vec::new();
    let mut lines = input.lines().enumerate();
    while let Some((idx, line)) = lines.next() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parse_err = |msg: &str| MatrixError::Parse {
            line: idx + 1,
            msg: msg.to_string(),
        };
        let mut dims = line.split_whitespace().map(str::parse::<usize>);
        let (rows, cols) = match (dims.next(), dims.next(), dims.next()) {
            (Some(Ok(r)), Some(Ok(c)), None) => (r, c),
            _ => return Err(parse_err("expected header \"k l\"")),
        };
        let mut bits = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (ridx, row) = lines.next().ok_or_else(|| parse_err("truncated block"))?;
            let row = row?;
            if row.len() != cols {
                return Err(MatrixError::Parse {
                    line: ridx + 1,
                    msg: format!("expected {cols} cells"),
                });
            }
            for ch in row.chars() {
                match ch {
                    '0' => bits.push(false),
                    '1' => bits.push(true),
                    _ => {
                        return Err(MatrixError::Parse {
                            line: ridx + 1,
                            msg: format!("unexpected character {ch:?}"),
                        })
                    }
                }
            }
        }
        out.push(IncidenceMatrix::new(rows, cols, bits)?);
    }
    Ok(out)
}
