//! Text formats.
//!
//! DNF: one term per line, whitespace-separated signed integers
//! (`1 -3 4` is x1 ∧ ¬x3 ∧ x4); a line consisting of `T` is the empty,
//! always-true term; lines are OR'ed together.
//!
//! Truth table: `n=<dim> tt=<hex>` with bit 0 (the least significant bit of
//! the hex value) holding the function value at the all-zero point.

use super::{BoolFnError, Dnf, Literal, Term, TruthTable};

pub fn format_dnf(f: &Dnf) -> String {
    let mut out = String::new();
    for t in f.terms() {
        if t.is_empty() {
            out.push('T');
        } else {
            let parts: Vec<String> = t
                .literals()
                .iter()
                .map(|l| {
                    if l.positive {
                        l.var.to_string()
                    } else {
                        format!("-{}", l.var)
                    }
                })
                .collect();
            out.push_str(&parts.join(" "));
        }
        out.push('\n');
    }
    out
}

pub fn parse_dnf(text: &str, n: usize) -> Result<Dnf, BoolFnError> {
    let mut terms = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line == "T" {
            terms.push(Term::TRUE);
            continue;
        }
        let mut lits = Vec::new();
        for tok in line.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| BoolFnError::Parse(format!("bad literal token {tok:?}")))?;
            if v == 0 {
                return Err(BoolFnError::Parse("literal index 0".into()));
            }
            lits.push(Literal::signed(v));
        }
        terms.push(Term::new(lits)?);
    }
    Dnf::new(terms, n)
}

pub fn format_truth_table(t: &TruthTable) -> String {
    let nibbles = (t.size().max(4)) / 4;
    let mut hex = String::with_capacity(nibbles);
    for i in (0..nibbles).rev() {
        let mut nib = 0u8;
        for b in 0..4 {
            let idx = i * 4 + b;
            if idx < t.size() && t.get_index(idx) {
                nib |= 1 << b;
            }
        }
        hex.push(char::from_digit(nib as u32, 16).unwrap());
    }
    format!("n={} tt={}", t.n(), hex)
}

pub fn parse_truth_table(s: &str) -> Result<TruthTable, BoolFnError> {
    let bad = || BoolFnError::Parse(format!("bad truth table line {s:?}"));
    let mut n: Option<usize> = None;
    let mut hex: Option<&str> = None;
    for tok in s.split_whitespace() {
        if let Some(v) = tok.strip_prefix("n=") {
            n = Some(v.parse().map_err(|_| bad())?);
        } else if let Some(v) = tok.strip_prefix("tt=") {
            hex = Some(v);
        }
    }
    let (n, hex) = (n.ok_or_else(bad)?, hex.ok_or_else(bad)?);
    let size = 1usize << n;
    let mut words = vec![0u64; size.div_ceil(64)];
    for (pos, c) in hex.chars().rev().enumerate() {
        let nib = c.to_digit(16).ok_or_else(bad)? as u64;
        let idx = pos * 4;
        if idx >= size && nib != 0 {
            return Err(bad());
        }
        if idx < size {
            words[idx / 64] |= nib << (idx % 64);
        }
    }
    Ok(TruthTable::from_words(n, words))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{BoolFn, Point};

    #[test]
    fn dnf_text_roundtrip() {
        let f = Dnf::new(vec![Term::of(&[1, -3, 4]), Term::TRUE], 4).unwrap();
        let text = format_dnf(&f);
        assert_eq!(text, "1 -3 4\nT\n");
        let back = parse_dnf(&text, 4).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn truth_table_roundtrip() {
        let f = Dnf::new(vec![Term::of(&[1, 2]), Term::of(&[-3])], 3).unwrap();
        let t = TruthTable::from_fn(&f).unwrap();
        let line = format_truth_table(&t);
        let back = parse_truth_table(&line).unwrap();
        for idx in 0..8 {
            assert_eq!(back.get_index(idx), t.get_index(idx));
        }
    }

    #[test]
    fn lsb_is_all_zero_point() {
        // Only the all-zero point satisfies: hex must be ...01.
        let f = Dnf::new(vec![Term::of(&[-1, -2])], 2).unwrap();
        let t = TruthTable::from_fn(&f).unwrap();
        assert_eq!(format_truth_table(&t), "n=2 tt=1");
        assert!(t.eval(Point::zero(2)));
    }
}
