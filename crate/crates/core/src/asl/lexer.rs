//! Tokenizer for the AgentSpeak subset. Tracks line/column for error
//! reporting; `//` comments run to end of line.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Token {
    /// lowercase identifier (atom / functor)
    Ident(String),
    /// uppercase or `_` identifier (variable)
    VarIdent(String),
    Num(f64),
    Str(String),
    /// `.name` internal-action identifier, e.g. `.send`
    DotIdent(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semicolon,
    Colon,
    ColonDash, // :-
    Arrow,     // <-
    Dot,
    Bang,
    Question,
    Amp,
    Pipe,
    Plus,
    Minus,
    MinusPlus, // -+
    Star,
    Slash,
    Assign, // =
    EqEq,   // ==
    Neq,    // \==
    Gt,
    Lt,
    Ge,
    Le,
    Eof,
}

impl Token {
    pub fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("identifier `{s}`"),
            Token::VarIdent(s) => format!("variable `{s}`"),
            Token::Num(n) => format!("number `{n}`"),
            Token::Str(s) => format!("string \"{s}\""),
            Token::DotIdent(s) => format!("`.{s}`"),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::LBracket => "`[`".into(),
            Token::RBracket => "`]`".into(),
            Token::Comma => "`,`".into(),
            Token::Semicolon => "`;`".into(),
            Token::Colon => "`:`".into(),
            Token::ColonDash => "`:-`".into(),
            Token::Arrow => "`<-`".into(),
            Token::Dot => "`.`".into(),
            Token::Bang => "`!`".into(),
            Token::Question => "`?`".into(),
            Token::Amp => "`&`".into(),
            Token::Pipe => "`|`".into(),
            Token::Plus => "`+`".into(),
            Token::Minus => "`-`".into(),
            Token::MinusPlus => "`-+`".into(),
            Token::Star => "`*`".into(),
            Token::Slash => "`/`".into(),
            Token::Assign => "`=`".into(),
            Token::EqEq => "`==`".into(),
            Token::Neq => "`\\==`".into(),
            Token::Gt => "`>`".into(),
            Token::Lt => "`<`".into(),
            Token::Ge => "`>=`".into(),
            Token::Le => "`<=`".into(),
            Token::Eof => "end of input".into(),
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spanned {
    pub token: Token,
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("lex error at {line}:{col}: {message}")]
pub struct LexError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

pub fn lex(source: &str) -> Result<Vec<Spanned>, LexError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = source.chars().collect();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;

    macro_rules! push {
        ($tok:expr, $l:expr, $c:expr) => {
            tokens.push(Spanned {
                token: $tok,
                line: $l,
                col: $c,
            })
        };
    }

    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        };

        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col);
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                advance(&mut i, &mut line, &mut col);
            }
            let word: String = chars[start..i].iter().collect();
            let first = word.chars().next().unwrap();
            if first.is_ascii_uppercase() || first == '_' {
                push!(Token::VarIdent(word), tl, tc);
            } else {
                push!(Token::Ident(word), tl, tc);
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(&mut i, &mut line, &mut col);
            }
            // fraction — only when the dot is followed by a digit, so `5.` stays
            // `5` + statement terminator
            if chars.get(i) == Some(&'.') && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                advance(&mut i, &mut line, &mut col);
                while i < chars.len() && chars[i].is_ascii_digit() {
                    advance(&mut i, &mut line, &mut col);
                }
            }
            let text: String = chars[start..i].iter().collect();
            let value = text.parse::<f64>().map_err(|e| LexError {
                line: tl,
                col: tc,
                message: format!("bad number `{text}`: {e}"),
            })?;
            push!(Token::Num(value), tl, tc);
            continue;
        }
        match c {
            '"' => {
                advance(&mut i, &mut line, &mut col);
                let mut value = String::new();
                let mut closed = false;
                while i < chars.len() {
                    let ch = chars[i];
                    if ch == '\\' && i + 1 < chars.len() {
                        advance(&mut i, &mut line, &mut col);
                        value.push(chars[i]);
                        advance(&mut i, &mut line, &mut col);
                        continue;
                    }
                    advance(&mut i, &mut line, &mut col);
                    if ch == '"' {
                        closed = true;
                        break;
                    }
                    value.push(ch);
                }
                if !closed {
                    return Err(LexError {
                        line: tl,
                        col: tc,
                        message: "unterminated string".into(),
                    });
                }
                push!(Token::Str(value), tl, tc);
            }
            '.' => {
                advance(&mut i, &mut line, &mut col);
                if i < chars.len() && chars[i].is_ascii_lowercase() {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        advance(&mut i, &mut line, &mut col);
                    }
                    let name: String = chars[start..i].iter().collect();
                    push!(Token::DotIdent(name), tl, tc);
                } else {
                    push!(Token::Dot, tl, tc);
                }
            }
            '(' => {
                advance(&mut i, &mut line, &mut col);
                push!(Token::LParen, tl, tc);
            }
            ')' => {
                advance(&mut i, &mut line, &mut col);
                push!(Token::RParen, tl, tc);
            }
            '[' => {
                advance(&mut i, &mut line, &mut col);
                push!(Token::LBracket, tl, tc);
            }
            ']' => {
                advance(&mut i, &mut line, &mut col);
                push!(Token::RBracket, tl, tc);
            }
            ',' => {
                advance(&mut i, &mut line, &mut col);
                push!(Token::Comma, tl, tc);
            }
            ';' => {
                advance(&mut i, &mut line, &mut col);
                push!(Token::Semicolon, tl, tc);
            }
            ':' => {
                advance(&mut i, &mut line, &mut col);
                if chars.get(i) == Some(&'-') {
                    advance(&mut i, &mut line, &mut col);
                    push!(Token::ColonDash, tl, tc);
                } else {
                    push!(Token::Colon, tl, tc);
                }
            }
            '<' => {
                advance(&mut i, &mut line, &mut col);
                match chars.get(i) {
                    Some('-') => {
                        advance(&mut i, &mut line, &mut col);
                        push!(Token::Arrow, tl, tc);
                    }
                    Some('=') => {
                        advance(&mut i, &mut line, &mut col);
                        push!(Token::Le, tl, tc);
                    }
                    _ => push!(Token::Lt, tl, tc),
                }
            }
            '>' => {
                advance(&mut i, &mut line, &mut col);
                if chars.get(i) == Some(&'=') {
                    advance(&mut i, &mut line, &mut col);
                    push!(Token::Ge, tl, tc);
                } else {
                    push!(Token::Gt, tl, tc);
                }
            }
            '=' => {
                advance(&mut i, &mut line, &mut col);
                if chars.get(i) == Some(&'=') {
                    advance(&mut i, &mut line, &mut col);
                    push!(Token::EqEq, tl, tc);
                } else {
                    push!(Token::Assign, tl, tc);
                }
            }
            '\\' => {
                advance(&mut i, &mut line, &mut col);
                if chars.get(i) == Some(&'=') && chars.get(i + 1) == Some(&'=') {
                    advance(&mut i, &mut line, &mut col);
                    advance(&mut i, &mut line, &mut col);
                    push!(Token::Neq, tl, tc);
                } else {
                    return Err(LexError {
                        line: tl,
                        col: tc,
                        message: "expected `\\==`".into(),
                    });
                }
            }
            '!' => {
                advance(&mut i, &mut line, &mut col);
                push!(Token::Bang, tl, tc);
            }
            '?' => {
                advance(&mut i, &mut line, &mut col);
                push!(Token::Question, tl, tc);
            }
            '&' => {
                advance(&mut i, &mut line, &mut col);
                // tolerate Jason's `&&` spelling
                if chars.get(i) == Some(&'&') {
                    advance(&mut i, &mut line, &mut col);
                }
                push!(Token::Amp, tl, tc);
            }
            '|' => {
                advance(&mut i, &mut line, &mut col);
                if chars.get(i) == Some(&'|') {
                    advance(&mut i, &mut line, &mut col);
                }
                push!(Token::Pipe, tl, tc);
            }
            '+' => {
                advance(&mut i, &mut line, &mut col);
                push!(Token::Plus, tl, tc);
            }
            '-' => {
                advance(&mut i, &mut line, &mut col);
                if chars.get(i) == Some(&'+') {
                    advance(&mut i, &mut line, &mut col);
                    push!(Token::MinusPlus, tl, tc);
                } else {
                    push!(Token::Minus, tl, tc);
                }
            }
            '*' => {
                advance(&mut i, &mut line, &mut col);
                push!(Token::Star, tl, tc);
            }
            '/' => {
                advance(&mut i, &mut line, &mut col);
                push!(Token::Slash, tl, tc);
            }
            other => {
                return Err(LexError {
                    line: tl,
                    col: tc,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    tokens.push(Spanned {
        token: Token::Eof,
        line,
        col,
    });
    Ok(tokens)
}
