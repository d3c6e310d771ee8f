use crate::syntax::Span;

use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    Forall,
    Let,
    In,
    True,
    False,
    Backslash,
    BigLambda,
    Dot,
    Arrow,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    ColonColon,
    PlusPlus,
    Plus,
    Eq,
    Semi,
    Tilde,
    Dollar,
    At,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::Forall => "forall",
            Tok::Let => "let",
            Tok::In => "in",
            Tok::True => "True",
            Tok::False => "False",
            Tok::Backslash => "\\",
            Tok::BigLambda => "/\\",
            Tok::Dot => ".",
            Tok::Arrow => "->",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::ColonColon => "::",
            Tok::PlusPlus => "++",
            Tok::Plus => "+",
            Tok::Eq => "=",
            Tok::Semi => ";",
            Tok::Tilde => "~",
            Tok::Dollar => "$",
            Tok::At => "@",
            Tok::Ident(_) | Tok::Int(_) | Tok::Eof => "",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    // advances over one char, tracking line and column
    macro_rules! bump {
        () => {{
            let (_, c) = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }};
    }
    while let Some(&(start, c)) = chars.peek() {
        let (l0, c0) = (line, col);
        let span_to = |end: usize| Span::new(start, end, l0, c0);
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '-' && src[start..].starts_with("--") {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump!();
            }
            continue;
        }
        if is_ident_start(c) {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if !is_ident_char(c) {
                    break;
                }
                end = i + c.len_utf8();
                bump!();
            }
            let word = &src[start..end];
            let tok = match word {
                "forall" => Tok::Forall,
                "let" => Tok::Let,
                "in" => Tok::In,
                "True" => Tok::True,
                "False" => Tok::False,
                _ => Tok::Ident(word.to_string()),
            };
            out.push(Token {
                tok,
                span: span_to(end),
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                end = i + 1;
                bump!();
            }
            let n = src[start..end]
                .parse::<i64>()
                .map_err(|_| ParseError::Syntax {
                    message: "integer literal out of range".to_string(),
                    span: span_to(end),
                })?;
            out.push(Token {
                tok: Tok::Int(n),
                span: span_to(end),
            });
            continue;
        }
        let rest = &src[start..];
        let two = [
            ("->", Tok::Arrow),
            ("::", Tok::ColonColon),
            ("++", Tok::PlusPlus),
            ("/\\", Tok::BigLambda),
        ];
        if let Some((text, tok)) = two.iter().find(|(t, _)| rest.starts_with(t)) {
            bump!();
            bump!();
            out.push(Token {
                tok: tok.clone(),
                span: span_to(start + text.len()),
            });
            continue;
        }
        let tok = match c {
            '\\' | 'λ' => Tok::Backslash,
            'Λ' => Tok::BigLambda,
            '∀' => Tok::Forall,
            '→' => Tok::Arrow,
            '.' => Tok::Dot,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            ':' => Tok::Colon,
            '+' => Tok::Plus,
            '=' => Tok::Eq,
            ';' => Tok::Semi,
            '~' => Tok::Tilde,
            '$' => Tok::Dollar,
            '@' => Tok::At,
            _ => {
                return Err(ParseError::Syntax {
                    message: format!("unexpected character `{}`", c.escape_debug()),
                    span: span_to(start + c.len_utf8()),
                })
            }
        };
        bump!();
        out.push(Token {
            tok,
            span: span_to(start + c.len_utf8()),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span::new(src.len(), src.len(), line, col),
    });
    Ok(out)
}
