use std::fmt::Write as _;

use itertools::Itertools;
use num_traits::Zero;

use super::{cell_count, cell_rank, cells, CechCurveComplexon, Complexon, Curve, HomogeneousComplexon, StepComplexon};
use crate::error::{Error, Result};
use crate::rational::{format_rational, in_unit_interval, parse_rational, Rational};

/// Diagnostics from [`parse_complexon`]. Entries absent from the file are 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParseReport {
    pub missing: usize,
}

impl ParseReport {
    pub fn has_warnings(&self) -> bool {
        self.missing > 0
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn value(line: usize, token: &str) -> Result<Rational> {
    let v = parse_rational(token).map_err(|e| perr(line, e.to_string()))?;
    if !in_unit_interval(&v) {
        return Err(perr(line, format!("value {token} outside [0, 1]")));
    }
    Ok(v)
}

fn number<T: std::str::FromStr>(line: usize, token: Option<&str>, what: &str) -> Result<T> {
    token
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| perr(line, format!("expected {what}")))
}

/// Parses the complexon text format.
pub fn parse_complexon(text: &str) -> Result<(Complexon, ParseReport)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "missing header"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    match h.as_slice() {
        ["complexon", "step", "m", m, "D", d] => {
            let m: usize = number(hl, Some(m), "block count")?;
            let dmax: usize = number(hl, Some(d), "dimension")?;
            if m == 0 {
                return Err(perr(hl, "block count must be positive"));
            }
            let mut tables: Vec<Vec<Option<Rational>>> =
                (1..=dmax).map(|d| vec![None; cell_count(m, d)]).collect();
            let mut widths = None;
            for (ln, l) in lines {
                let t: Vec<&str> = l.split_whitespace().collect();
                if t[0] == "widths" {
                    let w = t[1..]
                        .iter()
                        .map(|x| parse_rational(x).map_err(|e| perr(ln, e.to_string())))
                        .collect::<Result<Vec<_>>>()?;
                    widths = Some((ln, w));
                    continue;
                }
                if t[0] != "d" || t.len() < 2 {
                    return Err(perr(ln, "expected `d <d> <blocks> <value>`"));
                }
                let d: usize = number(ln, Some(t[1]), "dimension")?;
                if d == 0 || d > dmax {
                    return Err(perr(ln, format!("dimension {d} outside 1..={dmax}")));
                }
                if t.len() != d + 4 {
                    return Err(perr(ln, format!("dimension {d} needs {} block indices and a value", d + 1)));
                }
                let blocks = t[2..d + 3]
                    .iter()
                    .map(|b| number::<usize>(ln, Some(b), "block index"))
                    .collect::<Result<Vec<_>>>()?;
                if blocks.iter().any(|&b| b == 0 || b > m) {
                    return Err(perr(ln, format!("block index outside 1..={m}")));
                }
                if blocks.windows(2).any(|w| w[0] > w[1]) {
                    return Err(perr(ln, "block indices must be sorted"));
                }
                let c: Vec<usize> = blocks.iter().map(|b| b - 1).collect();
                let slot = &mut tables[d - 1][cell_rank(&c)];
                if slot.is_some() {
                    return Err(perr(ln, "duplicate entry"));
                }
                *slot = Some(value(ln, t[d + 3])?);
            }
            let missing = tables.iter().flatten().filter(|v| v.is_none()).count();
            let s = StepComplexon::from_fn_exact(m, dmax, |d, c| {
                tables[d - 1][cell_rank(c)].clone().unwrap_or_else(Rational::zero)
            })?;
            let s = match widths {
                Some((ln, w)) => s.with_widths(w).map_err(|e| perr(ln, e.to_string()))?,
                None => s,
            };
            Ok((Complexon::Step(s), ParseReport { missing }))
        }
        ["complexon", "homog", "D", d] => {
            let dmax: usize = number(hl, Some(d), "dimension")?;
            let mut probs: Vec<Option<Rational>> = vec![None; dmax];
            for (ln, l) in lines {
                let t: Vec<&str> = l.split_whitespace().collect();
                if t.len() != 3 || t[0] != "d" {
                    return Err(perr(ln, "expected `d <d> <value>`"));
                }
                let d: usize = number(ln, Some(t[1]), "dimension")?;
                if d == 0 || d > dmax {
                    return Err(perr(ln, format!("dimension {d} outside 1..={dmax}")));
                }
                if probs[d - 1].is_some() {
                    return Err(perr(ln, "duplicate entry"));
                }
                probs[d - 1] = Some(value(ln, t[2])?);
            }
            let missing = probs.iter().filter(|p| p.is_none()).count();
            let h = HomogeneousComplexon::new(probs.into_iter().map(|p| p.unwrap_or_else(Rational::zero)).collect())?;
            Ok((Complexon::Homogeneous(h), ParseReport { missing }))
        }
        ["complexon", "cech", "bouquet", "eps", e, "D", d] => {
            let eps: f64 = number(hl, Some(e), "epsilon")?;
            let dmax: usize = number(hl, Some(d), "dimension")?;
            if let Some((ln, _)) = lines.next() {
                return Err(perr(ln, "unexpected content after a curve header"));
            }
            let c = CechCurveComplexon::bouquet(eps, dmax).map_err(|e| perr(hl, e.to_string()))?;
            Ok((Complexon::Cech(c), ParseReport::default()))
        }
        _ => Err(perr(
            hl,
            "expected `complexon step m <M> D <D>`, `complexon homog D <D>` or `complexon cech bouquet eps <e> D <D>`",
        )),
    }
}

fn fmt_value(exact: Option<Rational>, float: f64) -> String {
    match exact {
        Some(r) => format_rational(&r),
        None => format!("{float}"),
    }
}

impl Complexon {
    /// Text form accepted by [`parse_complexon`]. Polyline curves have none.
    pub fn to_text(&self) -> Result<String> {
        let mut out = String::new();
        match self {
            Complexon::Step(s) => {
                writeln!(out, "complexon step m {} D {}", s.m(), s.max_dim()).unwrap();
                if !s.is_uniform() {
                    writeln!(out, "widths {}", s.widths().iter().map(format_rational).join(" ")).unwrap();
                }
                for d in 1..=s.max_dim() {
                    for c in cells(s.m(), d) {
                        writeln!(
                            out,
                            "d {d} {} {}",
                            c.iter().map(|b| b + 1).join(" "),
                            fmt_value(s.exact_at(&c), s.value_at(&c))
                        )
                        .unwrap();
                    }
                }
            }
            Complexon::Homogeneous(h) => {
                writeln!(out, "complexon homog D {}", h.probs().len()).unwrap();
                for (i, p) in h.probs().iter().enumerate() {
                    writeln!(out, "d {} {}", i + 1, format_rational(p)).unwrap();
                }
            }
            Complexon::Cech(c) => match c.curve() {
                Curve::Bouquet => {
                    writeln!(out, "complexon cech bouquet eps {} D {}", c.epsilon(), c.max_dim).unwrap();
                }
                Curve::Polyline(_) => {
                    return Err(Error::InvalidArgument("polyline curves have no text form".into()))
                }
            },
        }
        Ok(out)
    }
}
