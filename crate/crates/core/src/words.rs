//! The compact word notation for positive roots: the word 1^x 2^y 3^z
//! stands for x*a3 + y*a2 + z*a1, i.e. (n1, n2, n3) = (z, y, x). Exponents
//! of 1 are omitted; larger exponents are written with braces, "1^{13}".

use crate::lattice::Root;
use crate::{Error, Result};

pub fn parse_word(w: &str) -> Result<Root> {
    let bad = |msg: &str| Error::Parse(format!("word {w:?}: {msg}"));
    let bytes = w.as_bytes();
    let mut i = 0;
    let mut exps: [Option<i64>; 3] = [None; 3];
    while i < bytes.len() {
        let digit = match bytes[i] {
            b'1' => 0,
            b'2' => 1,
            b'3' => 2,
            _ => return Err(bad("expected digit 1, 2 or 3")),
        };
        i += 1;
        let mut exp = 1i64;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            let braced = i < bytes.len() && bytes[i] == b'{';
            if braced {
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(bad("missing exponent"));
            }
            exp = w[start..i].parse().map_err(|_| bad("exponent out of range"))?;
            if braced {
                if i < bytes.len() && bytes[i] == b'}' {
                    i += 1;
                } else {
                    return Err(bad("unclosed brace"));
                }
            }
        }
        if exp == 0 {
            return Err(bad("zero exponent"));
        }
        if exps[digit].is_some() {
            return Err(bad("repeated digit"));
        }
        if exps[digit + 1..].iter().any(Option::is_some) {
            return Err(bad("digits out of order"));
        }
        exps[digit] = Some(exp);
    }
    if exps.iter().all(Option::is_none) {
        return Err(bad("empty word"));
    }
    let [x, y, z] = exps.map(|e| e.unwrap_or(0));
    Ok(Root::new(z, y, x))
}

pub fn emit_word(r: Root) -> Result<String> {
    if !r.is_positive() {
        return Err(Error::Parse(format!("{r} is not a positive root")));
    }
    let mut out = String::new();
    for (digit, e) in [('1', r.n3), ('2', r.n2), ('3', r.n1)] {
        match e {
            0 => {}
            1 => out.push(digit),
            _ => out.push_str(&format!("{digit}^{{{e}}}")),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_word("123").unwrap(), Root::new(1, 1, 1));
        assert_eq!(parse_word("1^{2}23").unwrap(), Root::new(1, 1, 2));
        assert_eq!(parse_word("1^{13}2^{5}3^{2}").unwrap(), Root::new(2, 5, 13));
        assert_eq!(parse_word("1^2").unwrap(), Root::new(0, 0, 2));
        assert_eq!(parse_word("2").unwrap(), Root::new(0, 1, 0));
    }

    #[test]
    fn parse_rejects_malformed() {
        for w in ["", "11", "21", "1^{0}", "1^", "4", "1^{2", "1x", "3^{}"] {
            assert!(parse_word(w).is_err(), "{w:?} should not parse");
        }
    }

    #[test]
    fn emit_examples() {
        assert_eq!(emit_word(Root::new(1, 1, 1)).unwrap(), "123");
        assert_eq!(emit_word(Root::new(0, 1, 2)).unwrap(), "1^{2}2");
        assert_eq!(emit_word(Root::new(2, 5, 13)).unwrap(), "1^{13}2^{5}3^{2}");
        assert!(emit_word(Root::new(0, 0, 0)).is_err());
        assert!(emit_word(Root::new(-1, 0, 1)).is_err());
    }
}
