//! The line-oriented algebra-definition format.
//!
//! ```text
//! ring: x, y
//! mode: poly            # or "frac"
//! basis: e1, e2
//! anchor e1: 1, 0
//! anchor e2: 0, x
//! bracket [e1,e2]: e1 + x*e2
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{LElement, LrPresentation};
use crate::coeffring::{Mode, Rational, Ring, Scalar};
use crate::error::{Error, Result};
use crate::expr::{self, ExprAlgebra, Pos};

struct Line<'a> {
    number: usize,
    key: &'a str,
    key_col: usize,
    value: &'a str,
    value_col: usize,
}

fn char_col(line: &str, byte: usize) -> usize {
    line[..byte].chars().count()
}

fn split_lines(text: &str) -> Result<Vec<Line<'_>>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let number = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let col = char_col(content, content.len() - content.trim_start().len()) + 1;
            return Err(Error::parse(number, col, "expected `key: value`"));
        };
        let key_raw = &content[..colon];
        let key_start = key_raw.len() - key_raw.trim_start().len();
        let value_raw = &content[colon + 1..];
        let value_start = colon + 1 + (value_raw.len() - value_raw.trim_start().len());
        out.push(Line {
            number,
            key: key_raw.trim(),
            key_col: char_col(content, key_start) + 1,
            value: value_raw.trim(),
            value_col: char_col(content, value_start),
        });
    }
    Ok(out)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn name_list(line: &Line<'_>) -> Result<Vec<String>> {
    if line.value.is_empty() {
        return Ok(Vec::new());
    }
    let mut offset = 0;
    let mut names = Vec::new();
    for piece in line.value.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let name = piece.trim();
        if !is_identifier(name) {
            return Err(Error::parse(
                line.number,
                line.value_col + char_col(line.value, offset + lead) + 1,
                format!("invalid name `{name}`"),
            ));
        }
        names.push(name.to_string());
        offset += piece.len() + 1;
    }
    Ok(names)
}

/// Parses a definition file into an unvalidated presentation.
pub fn parse_definition(text: &str) -> Result<LrPresentation> {
    let lines = split_lines(text)?;
    let mut vars: Option<Vec<String>> = None;
    let mut mode: Option<Mode> = None;
    let mut basis: Option<Vec<String>> = None;
    let mut rest = Vec::new();

    let duplicate =
        |l: &Line<'_>| Error::parse(l.number, l.key_col, format!("duplicate `{}` line", l.key));
    for line in lines {
        match line.key {
            "ring" => {
                if vars.is_some() {
                    return Err(duplicate(&line));
                }
                vars = Some(name_list(&line)?);
            }
            "basis" => {
                if basis.is_some() {
                    return Err(duplicate(&line));
                }
                basis = Some(name_list(&line)?);
            }
            "mode" => {
                if mode.is_some() {
                    return Err(duplicate(&line));
                }
                mode = Some(match line.value {
                    "poly" => Mode::Polynomial,
                    "frac" => Mode::FractionField,
                    other => {
                        return Err(Error::parse(
                            line.number,
                            line.value_col + 1,
                            format!("unknown mode `{other}` (expected `poly` or `frac`)"),
                        ))
                    }
                });
            }
            k if k.starts_with("anchor") || k.starts_with("bracket") => rest.push(line),
            other => {
                return Err(Error::parse(
                    line.number,
                    line.key_col,
                    format!("unknown key `{other}`"),
                ))
            }
        }
    }

    let ring = Ring::new(vars.unwrap_or_default(), mode.unwrap_or(Mode::Polynomial));
    let basis = basis.ok_or_else(|| Error::parse(1, 1, "missing `basis` line"))?;
    for (i, b) in basis.iter().enumerate() {
        if basis[..i].contains(b) || ring.var_index(b).is_some() {
            return Err(Error::Invalid(format!("duplicate name `{b}`")));
        }
    }
    let m = basis.len();
    let n = ring.nvars();
    let mut anchor: Vec<Option<Vec<Scalar>>> = vec![None; m];
    let mut brackets: BTreeMap<(usize, usize), LElement> = BTreeMap::new();
    let skeleton = LrPresentation {
        ring: ring.clone(),
        basis: basis.clone(),
        anchor: vec![vec![ring.zero(); n]; m],
        brackets: BTreeMap::new(),
        validated: false,
    };

    for line in rest {
        if let Some(name) = line.key.strip_prefix("anchor") {
            let name = name.trim();
            let i = skeleton.basis_index(name).ok_or_else(|| {
                Error::parse(
                    line.number,
                    line.key_col,
                    format!("unknown basis element `{name}`"),
                )
            })?;
            if anchor[i].is_some() {
                return Err(duplicate(&line));
            }
            let mut entries = Vec::new();
            if !line.value.is_empty() {
                let mut offset = 0;
                for piece in line.value.split(',') {
                    let col = line.value_col + char_col(line.value, offset);
                    entries.push(ring.parse_at(piece, line.number, col)?);
                    offset += piece.len() + 1;
                }
            }
            if entries.len() != n {
                return Err(Error::parse(
                    line.number,
                    line.value_col + 1,
                    format!(
                        "anchor of `{name}` has {} entries, expected {n}",
                        entries.len()
                    ),
                ));
            }
            anchor[i] = Some(entries);
        } else if let Some(pair) = line.key.strip_prefix("bracket") {
            let pair = pair.trim();
            let inner = pair
                .strip_prefix('[')
                .and_then(|p| p.strip_suffix(']'))
                .ok_or_else(|| {
                    Error::parse(line.number, line.key_col, "expected `bracket [a,b]`")
                })?;
            let mut parts = inner.split(',').map(str::trim);
            let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::parse(
                    line.number,
                    line.key_col,
                    "expected `bracket [a,b]`",
                ));
            };
            let lookup = |s: &str| {
                skeleton.basis_index(s).ok_or_else(|| {
                    Error::parse(
                        line.number,
                        line.key_col,
                        format!("unknown basis element `{s}`"),
                    )
                })
            };
            let (i, j) = (lookup(a)?, lookup(b)?);
            if i >= j {
                return Err(Error::parse(
                    line.number,
                    line.key_col,
                    format!("bracket [{a},{b}] must list the earlier basis element first"),
                ));
            }
            if brackets.contains_key(&(i, j)) {
                return Err(duplicate(&line));
            }
            let value = parse_l_element(&skeleton, line.value, line.number, line.value_col)?;
            brackets.insert((i, j), value);
        } else {
            return Err(Error::parse(
                line.number,
                line.key_col,
                format!("unknown key `{}`", line.key),
            ));
        }
    }

    let anchor = anchor
        .into_iter()
        .map(|row| row.unwrap_or_else(|| vec![ring.zero(); n]))
        .collect();
    LrPresentation::new(ring, basis, anchor, brackets)
}

/// Writes a presentation in the definition-file format.
pub fn write_definition(p: &LrPresentation) -> String {
    let ring = p.ring();
    let mut out = String::new();
    out.push_str(&format!("ring: {}\n", ring.vars().join(", ")).replace(": \n", ":\n"));
    out.push_str(&format!("mode: {}\n", ring.mode()));
    out.push_str(&format!("basis: {}\n", p.basis_names().join(", ")));
    if ring.nvars() > 0 {
        for (i, name) in p.basis_names().iter().enumerate() {
            let row: Vec<String> = p.anchor[i].iter().map(|s| ring.display(s)).collect();
            out.push_str(&format!("anchor {name}: {}\n", row.join(", ")));
        }
    }
    for (&(i, j), v) in &p.brackets {
        out.push_str(&format!(
            "bracket [{},{}]: {}\n",
            p.basis[i],
            p.basis[j],
            v.display(p)
        ));
    }
    out
}

#[derive(Clone)]
enum LinValue {
    Scalar(Scalar),
    Vector(LElement),
}

struct LinearContext<'a> {
    pres: &'a LrPresentation,
}

impl LinearContext<'_> {
    fn to_vector(&self, v: LinValue) -> Result<LElement> {
        match v {
            LinValue::Vector(x) => Ok(x),
            LinValue::Scalar(s) if s.is_zero() => Ok(self.pres.zero()),
            LinValue::Scalar(_) => Err(Error::Invalid(
                "expected an element of the Lie-Rinehart algebra, found a nonzero scalar".into(),
            )),
        }
    }
}

impl ExprAlgebra for LinearContext<'_> {
    type Value = LinValue;

    fn number(&self, n: &BigInt) -> Result<LinValue> {
        Ok(LinValue::Scalar(
            self.pres.ring().constant(Rational::from_integer(n.clone())),
        ))
    }

    fn ident(&self, name: &str, pos: Pos) -> Result<LinValue> {
        if let Some(i) = self.pres.basis_index(name) {
            return Ok(LinValue::Vector(self.pres.generator(i)));
        }
        self.pres.ring().ident(name, pos).map(LinValue::Scalar)
    }

    fn add(&self, a: LinValue, b: LinValue) -> Result<LinValue> {
        match (a, b) {
            (LinValue::Scalar(a), LinValue::Scalar(b)) => Ok(LinValue::Scalar(&a + &b)),
            (a, b) => Ok(LinValue::Vector(
                self.to_vector(a)?.add(&self.to_vector(b)?),
            )),
        }
    }

    fn sub(&self, a: LinValue, b: LinValue) -> Result<LinValue> {
        let nb = self.neg(b)?;
        self.add(a, nb)
    }

    fn neg(&self, a: LinValue) -> Result<LinValue> {
        Ok(match a {
            LinValue::Scalar(s) => LinValue::Scalar(-&s),
            LinValue::Vector(x) => LinValue::Vector(x.neg()),
        })
    }

    fn mul(&self, a: LinValue, b: LinValue) -> Result<LinValue> {
        match (a, b) {
            (LinValue::Scalar(a), LinValue::Scalar(b)) => Ok(LinValue::Scalar(&a * &b)),
            (LinValue::Scalar(s), LinValue::Vector(x))
            | (LinValue::Vector(x), LinValue::Scalar(s)) => Ok(LinValue::Vector(x.scale(&s))),
            (LinValue::Vector(_), LinValue::Vector(_)) => Err(Error::Invalid(
                "product of two Lie-Rinehart elements is not an element".into(),
            )),
        }
    }

    fn div(&self, a: LinValue, b: LinValue, pos: Pos) -> Result<LinValue> {
        let LinValue::Scalar(b) = b else {
            return Err(Error::parse(
                pos.line,
                pos.column,
                "can only divide by a scalar",
            ));
        };
        let inv = self.pres.ring().one().div(&b).map_err(|e| match e {
            Error::ZeroDivisor => Error::parse(pos.line, pos.column, "division by zero"),
            other => other,
        })?;
        self.mul(a, LinValue::Scalar(inv))
    }

    fn pow(&self, a: LinValue, n: u32, pos: Pos) -> Result<LinValue> {
        match a {
            LinValue::Scalar(s) => Ok(LinValue::Scalar(s.pow(n))),
            LinValue::Vector(x) if n == 1 => Ok(LinValue::Vector(x)),
            LinValue::Vector(_) => Err(Error::parse(
                pos.line,
                pos.column,
                "powers of Lie-Rinehart elements are not elements",
            )),
        }
    }
}

/// Parses an `R`-linear combination of basis names. Products are read as the
/// module action, so `x*e2` and `e2*x` both denote `x . e2`.
pub(super) fn parse_l_element(
    pres: &LrPresentation,
    text: &str,
    line: usize,
    col_offset: usize,
) -> Result<LElement> {
    let e = expr::parse_at(text, line, col_offset)?;
    let ctx = LinearContext { pres };
    expr::evaluate(&e, &ctx)
        .and_then(|v| ctx.to_vector(v))
        .map_err(|err| match err {
            Error::Invalid(msg) | Error::ModeMismatch(msg) => {
                Error::parse(line, col_offset + 1, msg)
            }
            other => other,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn spec_example_file() {
        let text = "ring: x, y\nmode: poly            # or \"frac\"\nbasis: e1, e2\nanchor e1: 1, 0       # comment\nanchor e2: 0, x\nbracket [e1,e2]: e1 + x*e2    # LElement expression\n";
        let p = parse_definition(text).unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.nvars(), 2);
        let b = p.basis_bracket(0, 1);
        assert_eq!(b.display(&p).to_string(), "e1 + x*e2");
        assert_eq!(p.basis_bracket(1, 0), b.neg());
        assert_eq!(p.ring().display(p.anchor_entry(1, 1)), "x");
    }

    #[test]
    fn write_parse_round_trip() {
        for (_, p) in catalog::test_algebras() {
            let text = write_definition(&p);
            let q = parse_definition(&text).unwrap();
            assert_eq!(write_definition(&q), text);
            assert_eq!(q.basis_names(), p.basis_names());
        }
        let loc = catalog::aff1().localize().unwrap();
        let text = write_definition(&loc);
        assert!(text.contains("mode: frac"));
        let q = parse_definition(&text).unwrap();
        assert_eq!(q.mode(), Mode::FractionField);
    }

    #[test]
    fn sl2_written_form() {
        assert_eq!(
            write_definition(&catalog::sl2()),
            "ring:\nmode: poly\nbasis: e, f, h\nbracket [e,f]: h\nbracket [e,h]: -2*e\nbracket [f,h]: 2*f\n"
        );
    }

    #[test]
    fn errors() {
        let err = |t: &str| parse_definition(t).unwrap_err();
        assert!(matches!(
            err("basis: a\nfoo: 1\n"),
            Error::Parse {
                line: 2,
                column: 1,
                ..
            }
        ));
        assert!(matches!(
            err("basis: a, b\nbracket [a,b]: a\nbracket [a,b]: b\n"),
            Error::Parse { line: 3, .. }
        ));
        assert!(matches!(
            err("basis: a, b\nbracket [b,a]: a\n"),
            Error::Parse { line: 2, .. }
        ));
        assert!(matches!(
            err("ring: x\nbasis: a\nanchor a: 1, 2\n"),
            Error::Parse { line: 3, .. }
        ));
        assert!(matches!(
            err("ring: x\nbasis: a\nanchor a: y\n"),
            Error::UnknownSymbol {
                line: 3,
                column: 11,
                ..
            }
        ));
        assert!(matches!(
            err("ring: x\nbasis: a\nanchor a: x +\n"),
            Error::Parse {
                line: 3,
                column: 14,
                ..
            }
        ));
        assert!(matches!(
            err("basis: a, b\nbracket [a,b]: a*b\n"),
            Error::Parse { line: 2, .. }
        ));
        assert!(matches!(
            err("basis: a, b\nbracket [a,b]: 1\n"),
            Error::Parse { line: 2, .. }
        ));
        assert!(matches!(err("ring: x\n"), Error::Parse { .. }));
        assert!(matches!(
            err("basis: a\nmode: weird\n"),
            Error::Parse {
                line: 2,
                column: 7,
                ..
            }
        ));
        assert!(matches!(
            err("basis: a\nbasis: b\n"),
            Error::Parse { line: 2, .. }
        ));
    }

    #[test]
    fn omitted_lines_default_to_zero() {
        let p = parse_definition("ring: x\nbasis: a, b\n").unwrap();
        assert!(p.basis_bracket(0, 1).is_zero());
        assert!(p.anchor_entry(0, 0).is_zero());
    }
}
