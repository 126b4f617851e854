//! Tokens of the `.cc` vernacular. Comments are `(* ... *)` and nest.

use jcc_core::diag::{Diagnostic, Location};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub loc: Location,
}

const SYMBOLS: &[&str] = &[":=", "=>", "->", "(", ")", ":", ",", "|", ".", "/", "=", "_"];

pub fn syntax_error(loc: Location, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::error("syntax", msg).at(loc)
}

fn ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let loc = Location { line, col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
            continue;
        }
        if c == '(' && chars.get(i + 1) == Some(&'*') {
            let mut depth = 0;
            loop {
                if i >= chars.len() {
                    return Err(syntax_error(loc, "unterminated comment"));
                }
                if chars[i] == '(' && chars.get(i + 1) == Some(&'*') {
                    depth += 1;
                    advance(&mut i, &mut line, &mut col, 2);
                } else if chars[i] == '*' && chars.get(i + 1) == Some(&')') {
                    depth -= 1;
                    advance(&mut i, &mut line, &mut col, 2);
                    if depth == 0 {
                        break;
                    }
                } else {
                    advance(&mut i, &mut line, &mut col, 1);
                }
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(&mut i, &mut line, &mut col, 1);
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| syntax_error(loc, "number too large"))?;
            out.push(Token { tok: Tok::Num(n), loc });
            continue;
        }
        if ident_start(c) && !(c == '_' && !chars.get(i + 1).is_some_and(|&d| ident_char(d))) {
            let start = i;
            while i < chars.len() && ident_char(chars[i]) {
                advance(&mut i, &mut line, &mut col, 1);
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), loc });
            continue;
        }
        let rest: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                advance(&mut i, &mut line, &mut col, s.len());
                out.push(Token { tok: Tok::Sym(s), loc });
            }
            None => return Err(syntax_error(loc, format!("unexpected character `{}`", c))),
        }
    }
    out.push(Token { tok: Tok::Eof, loc: Location { line, col } });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn symbols_and_idents() {
        assert_eq!(
            toks("fun (x:nat) => S x'."),
            vec![
                Tok::Ident("fun".into()),
                Tok::Sym("("),
                Tok::Ident("x".into()),
                Tok::Sym(":"),
                Tok::Ident("nat".into()),
                Tok::Sym(")"),
                Tok::Sym("=>"),
                Tok::Ident("S".into()),
                Tok::Ident("x'".into()),
                Tok::Sym("."),
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn nested_comments_and_wildcards() {
        assert_eq!(toks("(* a (* b *) c *) _ _x"), vec![Tok::Sym("_"), Tok::Ident("_x".into()), Tok::Eof]);
    }

    #[test]
    fn locations() {
        let t = tokenize("a\n  b").unwrap();
        assert_eq!(t[1].loc, Location { line: 2, col: 3 });
    }

    #[test]
    fn unterminated_comment() {
        assert!(tokenize("(* oops").is_err());
    }
}
