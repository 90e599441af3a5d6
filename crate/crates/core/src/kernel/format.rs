//! Plain-text kernel files.
//!
//! ```text
//! m=<int> L=<int> poly=<int>
//! <L space-separated integers>      (L lines, row-major)
//! poles=<int,int,...>               (optional, descending)
//! ```

use super::{KernelMatrix, Matrix};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_int<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} '{s}'")))
}

impl KernelMatrix {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "m={} L={} poly={}\n",
            self.ctx.m(),
            self.size(),
            self.ctx.modulus()
        );
        for r in 0..self.size() {
            let row: Vec<String> = self.row(r).iter().map(|e| e.0.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        if let Some(poles) = self.pole_orders() {
            let p: Vec<String> = poles.iter().map(u64::to_string).collect();
            out.push_str("poles=");
            out.push_str(&p.join(","));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
        let (mut m, mut size, mut poly) = (None, None, None);
        for tok in header.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| parse_err(1, format!("expected key=value, got '{tok}'")))?;
            match key {
                "m" => m = Some(parse_int::<u32>(1, val, "m")?),
                "L" => size = Some(parse_int::<usize>(1, val, "L")?),
                "poly" => poly = Some(parse_int::<u64>(1, val, "poly")?),
                other => return Err(parse_err(1, format!("unknown header key '{other}'"))),
            }
        }
        let m = m.ok_or_else(|| parse_err(1, "missing m"))?;
        let size = size.ok_or_else(|| parse_err(1, "missing L"))?;
        let poly = poly.ok_or_else(|| parse_err(1, "missing poly"))?;
        if size == 0 {
            return Err(parse_err(1, "L must be positive"));
        }
        let ctx = FieldCtx::with_modulus(m, poly)?;

        let mut rows = Vec::with_capacity(size);
        for _ in 0..size {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| parse_err(rows.len() + 2, "missing matrix row"))?;
            let row = line
                .split_whitespace()
                .map(|t| {
                    let v: u64 = parse_int(ln, t, "entry")?;
                    if v >= ctx.size() {
                        return Err(parse_err(ln, format!("entry {v} out of range for m={m}")));
                    }
                    Ok(FieldElement(v as u32))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != size {
                return Err(parse_err(
                    ln,
                    format!("expected {size} entries, got {}", row.len()),
                ));
            }
            rows.push(row);
        }
        let mut poles = None;
        for (ln, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if poles.is_some() {
                return Err(parse_err(ln, "unexpected trailing content"));
            }
            let list = line
                .strip_prefix("poles=")
                .ok_or_else(|| parse_err(ln, "expected poles=... or end of file"))?;
            let p = list
                .split(',')
                .map(|t| parse_int::<u64>(ln, t.trim(), "pole order"))
                .collect::<Result<Vec<_>>>()?;
            if p.len() != size {
                return Err(parse_err(
                    ln,
                    format!("expected {size} pole orders, got {}", p.len()),
                ));
            }
            poles = Some(p);
        }
        let kernel = KernelMatrix::new(ctx, Matrix::from_rows(rows)?)?;
        match poles {
            Some(p) => kernel.with_pole_orders(p),
            None => Ok(kernel),
        }
    }
}
