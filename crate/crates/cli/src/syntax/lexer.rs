use super::{ParseError, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    /// Unsigned decimal integer, kept as text so any size parses.
    Int(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Colon,
    Semicolon,
    Equals,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("`{s}`"),
            TokenKind::Int(s) => format!("`{s}`"),
            other => {
                let c = match other {
                    TokenKind::LBrace => "{",
                    TokenKind::RBrace => "}",
                    TokenKind::LParen => "(",
                    TokenKind::RParen => ")",
                    TokenKind::Comma => ",",
                    TokenKind::Colon => ":",
                    TokenKind::Semicolon => ";",
                    TokenKind::Equals => "=",
                    TokenKind::Plus => "+",
                    TokenKind::Minus => "-",
                    TokenKind::Star => "*",
                    TokenKind::Caret => "^",
                    TokenKind::Slash => "/",
                    TokenKind::Ident(_) | TokenKind::Int(_) => unreachable!(),
                };
                format!("`{c}`")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

/// Splits `text` into tokens. Whitespace separates tokens; `#` and `//`
/// start comments that run to the end of the line.
pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    let (mut line, mut line_start) = (1usize, 0usize);
    while let Some(&(start, c)) = chars.peek() {
        let column = text[line_start..start].chars().count() + 1;
        let span_to = |end: usize| Span { line, column, start, end };
        if c == '\n' {
            chars.next();
            line += 1;
            line_start = start + 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '#' || (c == '/' && text[start..].starts_with("//")) {
            while chars.peek().is_some_and(|&(_, c)| c != '\n') {
                chars.next();
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                    end = i + c.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            tokens.push(Token { kind: TokenKind::Ident(text[start..end].to_string()), span: span_to(end) });
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if c.is_ascii_digit() {
                    end = i + 1;
                    chars.next();
                } else {
                    break;
                }
            }
            tokens.push(Token { kind: TokenKind::Int(text[start..end].to_string()), span: span_to(end) });
            continue;
        }
        let kind = match c {
            '{' => TokenKind::LBrace,
            '}' => TokenKind::RBrace,
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            ',' => TokenKind::Comma,
            ':' => TokenKind::Colon,
            ';' => TokenKind::Semicolon,
            '=' => TokenKind::Equals,
            '+' => TokenKind::Plus,
            '-' | '−' => TokenKind::Minus,
            '*' => TokenKind::Star,
            '^' => TokenKind::Caret,
            '/' => TokenKind::Slash,
            other => {
                return Err(ParseError::Syntax { line, column, message: format!("unexpected character `{other}`") });
            }
        };
        chars.next();
        tokens.push(Token { kind, span: span_to(start + c.len_utf8()) });
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        tokenize(text).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn symbols_numbers_and_names() {
        use TokenKind::*;
        assert_eq!(
            kinds("delta a1 X1 = 5/2*X1^2 - (X2)"),
            vec![
                Ident("delta".into()),
                Ident("a1".into()),
                Ident("X1".into()),
                Equals,
                Int("5".into()),
                Slash,
                Int("2".into()),
                Star,
                Ident("X1".into()),
                Caret,
                Int("2".into()),
                Minus,
                LParen,
                Ident("X2".into()),
                RParen
            ]
        );
    }

    #[test]
    fn comments_and_positions() {
        let t = tokenize("# header\n  x // trailing\n// only\n y").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!((t[0].span.line, t[0].span.column), (2, 3));
        assert_eq!((t[1].span.line, t[1].span.column), (4, 2));
    }

    #[test]
    fn stray_character_is_located() {
        let e = tokenize("x\n  @").unwrap_err();
        assert_eq!(e, ParseError::Syntax { line: 2, column: 3, message: "unexpected character `@`".into() });
    }
}
