//! Polynomial expressions: parsing and printing.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := base ('^' uint)?
//! base   := rational | var | '(' expr ')'
//! ```
//!
//! Rationals are `p` or `p/q`. There is no implicit multiplication.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::{format_rational, Monomial, MultiPoly, Rational, UniPoly};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((
                pos,
                Tok::Ident(chars[start..i].iter().map(|&(_, c)| c).collect()),
            ));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Syntax {
                pos,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.eat('-') {
            Ok(-&self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let b = self.base()?;
        if !self.eat('^') {
            return Ok(b);
        }
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(k)) => {
                self.at += 1;
                if self.peek() == Some(&Tok::Sym('/')) {
                    return Err(Error::BadExponent { pos });
                }
                let k: u32 = k.try_into().map_err(|_| Error::BadExponent { pos })?;
                Ok(b.pow(k))
            }
            Some(Tok::Sym('-')) => Err(Error::BadExponent { pos }),
            _ => Err(Error::Syntax {
                pos,
                msg: "expected an exponent".into(),
            }),
        }
    }

    fn base(&mut self) -> Result<MultiPoly> {
        let pos = self.pos();
        let n = self.vars.len();
        match self.peek().cloned() {
            Some(Tok::Num(p)) => {
                self.at += 1;
                if self.eat('/') {
                    let qpos = self.pos();
                    let Some(Tok::Num(q)) = self.peek().cloned() else {
                        return Err(Error::Syntax {
                            pos: qpos,
                            msg: "expected a denominator".into(),
                        });
                    };
                    self.at += 1;
                    if q.is_zero() {
                        return Err(Error::Syntax {
                            pos: qpos,
                            msg: "zero denominator".into(),
                        });
                    }
                    Ok(MultiPoly::constant(n, Rational::new(p, q)))
                } else {
                    Ok(MultiPoly::constant(n, Rational::from_integer(p)))
                }
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(MultiPoly::var(n, i)),
                    None => Err(Error::UnknownVariable { name, pos }),
                }
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Syntax {
                        pos: self.pos(),
                        msg: "expected `)`".into(),
                    });
                }
                Ok(e)
            }
            Some(Tok::Sym(c)) => Err(Error::Syntax {
                pos,
                msg: format!("unexpected `{c}`"),
            }),
            None => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parses `text` as a polynomial in `vars` (in order).
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<MultiPoly> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        end: text.len(),
        vars,
    };
    let out = p.expr()?;
    if p.at < p.toks.len() {
        return Err(Error::Syntax {
            pos: p.pos(),
            msg: "unexpected trailing input".into(),
        });
    }
    Ok(out)
}

fn write_terms<'a>(terms: impl Iterator<Item = (String, &'a Rational)>) -> String {
    let mut out = String::new();
    for (mono, c) in terms {
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        match (mono.is_empty(), a.is_one()) {
            (true, _) => out.push_str(&format_rational(&a)),
            (false, true) => out.push_str(&mono),
            (false, false) => {
                out.push_str(&format_rational(&a));
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn monomial_string(m: &Monomial, vars: &[String]) -> String {
    m.exponents()
        .iter()
        .zip(vars)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| {
            if *e == 1 {
                v.clone()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Prints `p` with terms in graded-lex descending order, e.g. `X^2*Y - 3/2*X + 1`.
pub fn format_polynomial(p: &MultiPoly, vars: &[String]) -> String {
    assert_eq!(p.nvars(), vars.len(), "one name per variable");
    write_terms(p.terms().rev().map(|(m, c)| (monomial_string(m, vars), c)))
}

/// Prints `p` in the variable `var`, highest degree first.
pub fn format_univariate(p: &UniPoly, var: &str) -> String {
    let terms = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let m = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            (m, c)
        });
    write_terms(terms)
}

/// Splits `X,Y,Z` into names, rejecting empty or duplicate entries.
pub fn parse_var_list(list: &str) -> Result<Vec<String>> {
    let vars: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
    for (i, v) in vars.iter().enumerate() {
        let ok = v
            .chars()
            .next()
            .is_some_and(|c| c.is_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::Syntax {
                pos: i,
                msg: format!("invalid variable name `{v}`"),
            });
        }
        if vars[..i].contains(v) {
            return Err(Error::Syntax {
                pos: i,
                msg: format!("duplicate variable `{v}`"),
            });
        }
    }
    Ok(vars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;
    use proptest::prelude::*;

    fn xy() -> Vec<String> {
        vec!["X".into(), "Y".into()]
    }

    #[test]
    fn parses_products() {
        let p = parse_polynomial("(1+X+Y^2)*(X+Y)", &xy()).unwrap();
        let q = parse_polynomial("X + X^2 + X*Y^2 + Y + Y*X + Y^3", &xy()).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.num_terms(), 6);
    }

    #[test]
    fn zero_and_rationals() {
        assert!(parse_polynomial("0", &xy()).unwrap().is_zero());
        let p = parse_polynomial("3/2*X^2 - Y", &xy()).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coefficient(&Monomial::new(vec![2, 0])), ratio(3, 2));
        assert_eq!(format_polynomial(&p, &xy()), "3/2*X^2 - Y");
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let p = parse_polynomial("-X^2", &xy()).unwrap();
        assert_eq!(format_polynomial(&p, &xy()), "-X^2");
        assert_eq!(
            parse_polynomial("X*-Y", &xy()).unwrap(),
            parse_polynomial("-(X*Y)", &xy()).unwrap()
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_polynomial("X + Z", &xy()),
            Err(Error::UnknownVariable {
                name: "Z".into(),
                pos: 4
            })
        );
        assert_eq!(
            parse_polynomial("X^-1", &xy()),
            Err(Error::BadExponent { pos: 2 })
        );
        assert_eq!(
            parse_polynomial("X^1/2", &xy()),
            Err(Error::BadExponent { pos: 2 })
        );
        assert!(matches!(
            parse_polynomial("(X + Y", &xy()),
            Err(Error::Syntax { pos: 6, .. })
        ));
        assert!(matches!(
            parse_polynomial("X Y", &xy()),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_polynomial("2X", &xy()),
            Err(Error::Syntax { pos: 1, .. })
        ));
        assert!(matches!(
            parse_polynomial("X # 1", &xy()),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_polynomial("", &xy()),
            Err(Error::Syntax { pos: 0, .. })
        ));
    }

    #[test]
    fn univariate_printing() {
        let u = UniPoly::new(vec![ratio(1, 3), Rational::zero(), -Rational::one()]);
        assert_eq!(format_univariate(&u, "T"), "-T^2 + 1/3");
        assert_eq!(format_univariate(&UniPoly::zero(), "T"), "0");
    }

    #[test]
    fn var_lists() {
        assert_eq!(parse_var_list("X, Y,Z").unwrap(), vec!["X", "Y", "Z"]);
        assert!(parse_var_list("X,X").is_err());
        assert!(parse_var_list("X,,Y").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..4, 0u32..4, 0u32..3), (-20i64..20, 1i64..6)), 0..8).prop_map(
            |ts| {
                let n = 3;
                MultiPoly::from_terms(
                    n,
                    ts.into_iter()
                        .map(|((a, b, c), (p, q))| (vec![a, b, c], ratio(p, q))),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in arb_poly()) {
            let vars: Vec<String> = vec!["X".into(), "Y".into(), "Z".into()];
            let s = format_polynomial(&p, &vars);
            prop_assert_eq!(parse_polynomial(&s, &vars).unwrap(), p);
        }
    }
}
