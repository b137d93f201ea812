//! Text format for algebras.
//!
//! ```text
//! name: g3
//! mode: bounded
//! size: 3
//! leq:
//! 111
//! 011
//! 001
//! mul:
//! 0 0 0
//! 0 1 1
//! 0 1 2
//! one: 2
//! zero: 0
//! ```
//!
//! Row `a` of `leq` has a `1` in column `b` when `a ≤ b`. The `zero` line is
//! present exactly in bounded mode. Blank lines and `#` comments are ignored.

use std::fmt::Write;

use super::{AlgebraSpec, Mode};
use crate::parse::{Cursor, ParseError};

pub fn print_algebra(spec: &AlgebraSpec) -> String {
    let mut s = String::new();
    writeln!(s, "name: {}", spec.name).unwrap();
    writeln!(s, "mode: {}", spec.mode().keyword()).unwrap();
    writeln!(s, "size: {}", spec.size()).unwrap();
    s.push_str("leq:\n");
    for row in &spec.leq {
        let line: String = row.iter().map(|&b| if b { '1' } else { '0' }).collect();
        writeln!(s, "{line}").unwrap();
    }
    s.push_str("mul:\n");
    for row in &spec.mul {
        let line: Vec<String> = row.iter().map(usize::to_string).collect();
        writeln!(s, "{}", line.join(" ")).unwrap();
    }
    writeln!(s, "one: {}", spec.one).unwrap();
    if let Some(z) = spec.zero {
        writeln!(s, "zero: {z}").unwrap();
    }
    s
}

pub fn parse_algebra(text: &str) -> Result<AlgebraSpec, ParseError> {
    let mut cur = Cursor::new(text);
    let spec = read_algebra(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input after algebra record"));
    }
    Ok(spec)
}

pub(crate) fn read_algebra(cur: &mut Cursor<'_>) -> Result<AlgebraSpec, ParseError> {
    let name = cur.field("name")?.to_string();
    if name.is_empty() || name.chars().any(char::is_whitespace) {
        return Err(cur.error("name must be a single nonempty word"));
    }
    let mode = match cur.field("mode")? {
        "bounded" => Mode::Bounded,
        "gmtl" => Mode::Gmtl,
        other => return Err(cur.error(format!("unknown mode `{other}`"))),
    };
    let n = cur.number("size")?;
    cur.header("leq")?;
    let mut leq = Vec::with_capacity(n);
    for _ in 0..n {
        let l = cur.next_line()?;
        let row: Option<Vec<bool>> = l
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        match row {
            Some(r) if r.len() == n => leq.push(r),
            _ => return Err(cur.error(format!("leq row must have {n} binary digits, found `{l}`"))),
        }
    }
    cur.header("mul")?;
    let mut mul = Vec::with_capacity(n);
    for _ in 0..n {
        let row = cur.indices()?;
        if row.len() != n {
            return Err(cur.error(format!("mul row must have {n} entries")));
        }
        mul.push(row);
    }
    let one = cur.number("one")?;
    let zero = match mode {
        Mode::Bounded => Some(cur.number("zero")?),
        Mode::Gmtl => None,
    };
    Ok(AlgebraSpec {
        name,
        leq,
        mul,
        one,
        zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn g3_text_is_canonical() {
        let text = print_algebra(&fixtures::g3().spec());
        assert_eq!(
            text,
            "name: g3\nmode: bounded\nsize: 3\nleq:\n111\n011\n001\nmul:\n0 0 0\n0 1 1\n0 1 2\none: 2\nzero: 0\n"
        );
        assert_eq!(print_algebra(&parse_algebra(&text).unwrap()), text);
    }

    #[test]
    fn gmtl_records_omit_zero() {
        let text = print_algebra(&fixtures::goedel_hoop(2).spec());
        assert!(!text.contains("zero"));
        assert_eq!(parse_algebra(&text).unwrap().zero, None);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# two elements\nname: b\nmode: bounded\n\nsize: 2\nleq:\n11\n01\nmul:\n0 0\n0 1\none: 1\nzero: 0\n";
        assert_eq!(
            parse_algebra(text).unwrap(),
            fixtures::bool2().with_name("b").spec()
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_algebra("name: x\nmode: bounded\nsize: 2\nleq:\n12\n").unwrap_err();
        assert_eq!(err.line, 5);
        assert!(parse_algebra("name: x\nmode: odd\n").is_err());
    }
}
