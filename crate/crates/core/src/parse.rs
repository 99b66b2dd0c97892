//! Text syntax for polynomials and weight lists.
//!
//! ```text
//! poly   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor ("*" factor)*
//! factor := INTEGER | IDENT ["^" INTEGER]
//! ```
//! Whitespace is ignored. Juxtaposition and parentheses are rejected.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Mono, Poly};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((pos, Tok::Int(text.parse().expect("digits"))));
                continue;
            }
            _ if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((pos, Tok::Ident(text)));
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    position: pos,
                    message: format!("unexpected character {c:?}"),
                })
            }
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

/// Parses `text` as a polynomial in the variables `vars` over `field`.
pub fn parse_poly<S: AsRef<str>>(text: &str, vars: &[S], field: Field) -> Result<Poly> {
    let names: Vec<&str> = vars.iter().map(|s| s.as_ref()).collect();
    let n = names.len();
    if n == 0 {
        return Err(Error::InvalidArgument("no variables declared".into()));
    }
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            position: 0,
            message: "empty polynomial".into(),
        });
    }
    let end = text.len();
    let mut poly = Poly::zero(field, n);
    let mut k = 0;
    let at = |k: usize| toks.get(k).map_or(end, |t| t.0);
    loop {
        let mut negative = false;
        if let Some((_, Tok::Plus | Tok::Minus)) = toks.get(k) {
            negative = toks[k].1 == Tok::Minus;
            k += 1;
        } else if k > 0 {
            return Err(Error::Parse {
                position: at(k),
                message: "expected '+' or '-' (implicit multiplication is not allowed)".into(),
            });
        }
        let mut coeff = BigInt::from(1);
        let mut exps = vec![0u32; n];
        loop {
            match toks.get(k) {
                Some((_, Tok::Int(v))) => {
                    coeff *= v;
                    k += 1;
                    if let Some((p, Tok::Caret)) = toks.get(k) {
                        return Err(Error::Parse {
                            position: *p,
                            message: "exponent on an integer literal".into(),
                        });
                    }
                }
                Some((p, Tok::Ident(name))) => {
                    let idx = names.iter().position(|v| v == name).ok_or_else(|| Error::Parse {
                        position: *p,
                        message: format!("unknown variable {name:?}"),
                    })?;
                    k += 1;
                    let mut e = 1u32;
                    if let Some((_, Tok::Caret)) = toks.get(k) {
                        k += 1;
                        match toks.get(k) {
                            Some((p, Tok::Int(v))) => {
                                e = u32::try_from(v.clone()).map_err(|_| Error::Parse {
                                    position: *p,
                                    message: format!("exponent {v} too large"),
                                })?;
                                k += 1;
                            }
                            _ => {
                                return Err(Error::Parse {
                                    position: at(k),
                                    message: "expected integer exponent after '^'".into(),
                                })
                            }
                        }
                    }
                    exps[idx] += e;
                }
                _ => {
                    return Err(Error::Parse {
                        position: at(k),
                        message: "expected integer or variable".into(),
                    })
                }
            }
            match toks.get(k) {
                Some((_, Tok::Star)) => k += 1,
                _ => break,
            }
        }
        if negative {
            coeff = -coeff;
        }
        poly.add_term(Mono::new(&exps), field.from_bigint(&coeff));
        if k >= toks.len() {
            break;
        }
    }
    Ok(poly)
}

/// Parses a comma-separated variable list such as `x,y,z`.
pub fn parse_vars(text: &str) -> Result<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let name = part.trim();
        let valid = name
            .chars()
            .next()
            .is_some_and(|c| c.is_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !valid {
            return Err(Error::Parse {
                position: offset,
                message: format!("invalid variable name {name:?}"),
            });
        }
        if out.iter().any(|v| v == name) {
            return Err(Error::Parse {
                position: offset,
                message: format!("duplicate variable {name:?}"),
            });
        }
        out.push(name.to_string());
        offset += part.len() + 1;
    }
    Ok(out)
}

/// Parses `"4,6;5,5"` or `"1/2,1/3"` into rational weight vectors of length `n`.
pub fn parse_weights(text: &str, n: usize) -> Result<Vec<Vec<BigRational>>> {
    let mut out = Vec::new();
    for (vi, vec_text) in text.split(';').enumerate() {
        let mut w = Vec::new();
        for entry in vec_text.split(',') {
            let e = entry.trim();
            let q = match e.split_once('/') {
                Some((a, b)) => {
                    let a: BigInt = a.trim().parse().map_err(|_| bad_weight(vi, e))?;
                    let b: BigInt = b.trim().parse().map_err(|_| bad_weight(vi, e))?;
                    if b.is_zero() {
                        return Err(bad_weight(vi, e));
                    }
                    BigRational::new(a, b)
                }
                None => BigRational::from_integer(e.parse().map_err(|_| bad_weight(vi, e))?),
            };
            if !q.is_positive() {
                return Err(Error::InvalidWeights(format!(
                    "weight vector {} has non-positive entry {e}",
                    vi + 1
                )));
            }
            w.push(q);
        }
        if w.len() != n {
            return Err(Error::InvalidWeights(format!(
                "weight vector {} has {} entries, expected {n}",
                vi + 1,
                w.len()
            )));
        }
        out.push(w);
    }
    Ok(out)
}

fn bad_weight(vi: usize, e: &str) -> Error {
    Error::InvalidWeights(format!("weight vector {}: cannot parse {e:?}", vi + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    const XY: [&str; 2] = ["x", "y"];

    #[test]
    fn parses_and_prints() {
        let f = parse_poly("x^5 + x^2*y^2 + y^4", &XY, Field::prime(2)).unwrap();
        assert_eq!(f.to_string(), "x^5+x^2*y^2+y^4");
        let g = parse_poly("-3*x*2 + x^1*x", &XY, Field::rationals()).unwrap();
        assert_eq!(g.to_string(), "x^2-6*x");
    }

    #[test]
    fn coefficients_reduce() {
        let f = parse_poly("3*x+4*y", &XY, Field::prime(3)).unwrap();
        assert_eq!(f.to_string(), "y");
    }

    #[test]
    fn rejects_implicit_multiplication() {
        let e = parse_poly("2x", &XY, Field::rationals()).unwrap_err();
        assert_eq!(e, Error::Parse { position: 1, message: "expected '+' or '-' (implicit multiplication is not allowed)".into() });
        assert!(parse_poly("x y", &XY, Field::rationals()).is_err());
        assert!(parse_poly("(x+y)", &XY, Field::rationals()).is_err());
    }

    #[test]
    fn unknown_variable_position() {
        match parse_poly("x+ t", &XY, Field::rationals()) {
            Err(Error::Parse { position, message }) => {
                assert_eq!(position, 3);
                assert!(message.contains("\"t\""));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn weights() {
        let w = parse_weights("4,6;5,5", 2).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w[0][1], BigRational::from_integer(6.into()));
        let r = parse_weights("1/2, 1/3", 2).unwrap();
        assert_eq!(r[0][0], BigRational::new(1.into(), 2.into()));
        assert!(parse_weights("4,0", 2).is_err());
        assert!(parse_weights("4,6,1", 2).is_err());
        assert!(parse_weights("a,b", 2).is_err());
    }

    #[test]
    fn vars() {
        assert_eq!(parse_vars("x, y,z").unwrap(), vec!["x", "y", "z"]);
        assert!(parse_vars("x,x").is_err());
        assert!(parse_vars("x,2y").is_err());
    }
}
