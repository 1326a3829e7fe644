//! Service profiles and the `.svc` descriptor format.
//!
//! A descriptor names a service and lists its typed input and output
//! parameters, one service per document:
//!
//! ```text
//! # currency conversion
//! service "CurrencyConvert" in(amount: Real, code: String) out(converted: Real)
//! ```
//!
//! Whitespace and `#`-to-end-of-line comments are insignificant. Datatype
//! tokens are matched case-insensitively (`real` is `Real`); parameter
//! names are case-sensitive identifiers and must be unique within each
//! list. Service names are double-quoted strings with backslash escapes
//! for `"` and `\`.

use std::fmt;

use thiserror::Error;

/// The closed set of parameter datatypes the similarity rules know about.
///
/// Parsing any other token is an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DataType {
    Integer,
    Real,
    String,
    Date,
    Boolean,
}

impl DataType {
    /// All datatypes, in table row/column order.
    pub const ALL: [DataType; 5] = [
        DataType::Integer,
        DataType::Real,
        DataType::String,
        DataType::Date,
        DataType::Boolean,
    ];

    /// Row/column index used by the similarity table.
    pub fn index(self) -> usize {
        self as usize
    }

    /// Case-insensitive lookup of a datatype token.
    pub fn from_token(token: &str) -> Option<DataType> {
        DataType::ALL
            .into_iter()
            .find(|dt| dt.name().eq_ignore_ascii_case(token))
    }

    /// Canonical capitalised name.
    pub fn name(self) -> &'static str {
        match self {
            DataType::Integer => "Integer",
            DataType::Real => "Real",
            DataType::String => "String",
            DataType::Date => "Date",
            DataType::Boolean => "Boolean",
        }
    }
}

impl fmt::Display for DataType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A named, typed parameter of a service.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parameter {
    /// Identifier, case-preserved. Valid names match `[A-Za-z_][A-Za-z0-9_]*`.
    pub name: String,
    pub datatype: DataType,
}

impl Parameter {
    pub fn new(name: impl Into<String>, datatype: DataType) -> Parameter {
        Parameter {
            name: name.into(),
            datatype,
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.datatype)
    }
}

/// A service profile: the name plus ordered input and output parameter lists.
///
/// Fields are plain data; [`validate_profile`] is the invariant gate and
/// [`parse_profile`] only ever produces profiles that pass it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServiceProfile {
    pub name: String,
    pub inputs: Vec<Parameter>,
    pub outputs: Vec<Parameter>,
}

impl ServiceProfile {
    pub fn new(
        name: impl Into<String>,
        inputs: Vec<Parameter>,
        outputs: Vec<Parameter>,
    ) -> ServiceProfile {
        ServiceProfile {
            name: name.into(),
            inputs,
            outputs,
        }
    }
}

/// 1-based line/column position inside a descriptor document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: u32,
    pub column: u32,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// What went wrong while parsing, without the position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unterminated string literal")]
    UnterminatedString,
    #[error("invalid escape sequence `\\{0}`")]
    InvalidEscape(char),
    #[error("expected {wanted}, found {found}")]
    Expected { wanted: &'static str, found: String },
    #[error("unknown datatype `{0}`")]
    UnknownDataType(String),
    #[error("duplicate parameter name `{0}`")]
    DuplicateParameter(String),
    #[error("missing service name")]
    MissingServiceName,
}

/// A parse failure with the position it was detected at.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{position}: {kind}")]
pub struct ParseError {
    pub position: Position,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn new(position: Position, kind: ParseErrorKind) -> ParseError {
        ParseError { position, kind }
    }

    /// Shift line numbers, for errors reported out of a larger document
    /// (registry bundles embed descriptors at arbitrary offsets).
    pub fn offset_lines(mut self, lines: u32) -> ParseError {
        self.position.line += lines;
        self
    }
}

/// Severity of a validation diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

/// Stable machine-readable code for a validation diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticCode {
    EmptyServiceName,
    InvalidParameterName,
    DuplicateParameter,
    VacuousProfile,
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagnosticCode::EmptyServiceName => "empty-service-name",
            DiagnosticCode::InvalidParameterName => "invalid-parameter-name",
            DiagnosticCode::DuplicateParameter => "duplicate-parameter",
            DiagnosticCode::VacuousProfile => "vacuous-profile",
        })
    }
}

/// One finding from [`validate_profile`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: DiagnosticCode,
    pub message: String,
}

impl Diagnostic {
    fn error(code: DiagnosticCode, message: String) -> Diagnostic {
        Diagnostic {
            severity: Severity::Error,
            code,
            message,
        }
    }

    fn warning(code: DiagnosticCode, message: String) -> Diagnostic {
        Diagnostic {
            severity: Severity::Warning,
            code,
            message,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.severity, self.code, self.message)
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn is_valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if is_ident_start(c) => chars.all(is_ident_continue),
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    Ident(String),
    Str(String),
    LParen,
    RParen,
    Comma,
    Colon,
    Eof,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("`{s}`"),
            TokenKind::Str(_) => "string".to_string(),
            TokenKind::LParen => "`(`".to_string(),
            TokenKind::RParen => "`)`".to_string(),
            TokenKind::Comma => "`,`".to_string(),
            TokenKind::Colon => "`:`".to_string(),
            TokenKind::Eof => "end of document".to_string(),
        }
    }
}

#[derive(Debug)]
struct Token {
    kind: TokenKind,
    position: Position,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Lexer<'a> {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn position(&self) -> Position {
        Position {
            line: self.line,
            column: self.column,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(&c) = self.chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn next_token(&mut self) -> Result<Token, ParseError> {
        self.skip_trivia();
        let position = self.position();
        let Some(c) = self.bump() else {
            return Ok(Token {
                kind: TokenKind::Eof,
                position,
            });
        };
        let kind = match c {
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            ',' => TokenKind::Comma,
            ':' => TokenKind::Colon,
            '"' => TokenKind::Str(self.string_body(position)?),
            c if is_ident_start(c) => {
                let mut ident = String::from(c);
                while let Some(&c) = self.chars.peek() {
                    if !is_ident_continue(c) {
                        break;
                    }
                    ident.push(c);
                    self.bump();
                }
                TokenKind::Ident(ident)
            }
            c => return Err(ParseError::new(position, ParseErrorKind::UnexpectedChar(c))),
        };
        Ok(Token { kind, position })
    }

    fn string_body(&mut self, start: Position) -> Result<String, ParseError> {
        let mut body = String::new();
        loop {
            let escape_position = self.position();
            match self.bump() {
                None => {
                    return Err(ParseError::new(start, ParseErrorKind::UnterminatedString));
                }
                Some('"') => return Ok(body),
                Some('\\') => match self.bump() {
                    Some(c @ ('"' | '\\')) => body.push(c),
                    Some(c) => {
                        return Err(ParseError::new(
                            escape_position,
                            ParseErrorKind::InvalidEscape(c),
                        ));
                    }
                    None => {
                        return Err(ParseError::new(start, ParseErrorKind::UnterminatedString));
                    }
                },
                Some(c) => body.push(c),
            }
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    lookahead: Option<Token>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser {
            lexer: Lexer::new(text),
            lookahead: None,
        }
    }

    fn next(&mut self) -> Result<Token, ParseError> {
        match self.lookahead.take() {
            Some(tok) => Ok(tok),
            None => self.lexer.next_token(),
        }
    }

    fn peek(&mut self) -> Result<&Token, ParseError> {
        if self.lookahead.is_none() {
            self.lookahead = Some(self.lexer.next_token()?);
        }
        Ok(self.lookahead.as_ref().expect("lookahead just filled"))
    }

    fn expect_keyword(&mut self, keyword: &'static str) -> Result<(), ParseError> {
        let tok = self.next()?;
        match &tok.kind {
            TokenKind::Ident(s) if s == keyword => Ok(()),
            kind => Err(ParseError::new(
                tok.position,
                ParseErrorKind::Expected {
                    wanted: match keyword {
                        "service" => "`service`",
                        "in" => "`in`",
                        "out" => "`out`",
                        _ => keyword,
                    },
                    found: kind.describe(),
                },
            )),
        }
    }

    fn expect(&mut self, kind: TokenKind, wanted: &'static str) -> Result<(), ParseError> {
        let tok = self.next()?;
        if tok.kind == kind {
            Ok(())
        } else {
            Err(ParseError::new(
                tok.position,
                ParseErrorKind::Expected {
                    wanted,
                    found: tok.kind.describe(),
                },
            ))
        }
    }

    fn document(&mut self) -> Result<ServiceProfile, ParseError> {
        self.expect_keyword("service")?;
        let name = self.service_name()?;
        self.expect_keyword("in")?;
        self.expect(TokenKind::LParen, "`(`")?;
        let inputs = self.param_list()?;
        self.expect_keyword("out")?;
        self.expect(TokenKind::LParen, "`(`")?;
        let outputs = self.param_list()?;
        let tok = self.next()?;
        if tok.kind != TokenKind::Eof {
            return Err(ParseError::new(
                tok.position,
                ParseErrorKind::Expected {
                    wanted: "end of document",
                    found: tok.kind.describe(),
                },
            ));
        }
        Ok(ServiceProfile {
            name,
            inputs,
            outputs,
        })
    }

    fn service_name(&mut self) -> Result<String, ParseError> {
        let tok = self.next()?;
        match tok.kind {
            TokenKind::Str(name) if !name.is_empty() => Ok(name),
            TokenKind::Str(_) => Err(ParseError::new(
                tok.position,
                ParseErrorKind::MissingServiceName,
            )),
            _ => Err(ParseError::new(
                tok.position,
                ParseErrorKind::MissingServiceName,
            )),
        }
    }

    /// Parses `paramlist? )`, consuming the closing parenthesis.
    fn param_list(&mut self) -> Result<Vec<Parameter>, ParseError> {
        let mut params: Vec<Parameter> = Vec::new();
        if self.peek()?.kind == TokenKind::RParen {
            self.next()?;
            return Ok(params);
        }
        loop {
            let (param, position) = self.param()?;
            if params.iter().any(|p| p.name == param.name) {
                return Err(ParseError::new(
                    position,
                    ParseErrorKind::DuplicateParameter(param.name),
                ));
            }
            params.push(param);
            let tok = self.next()?;
            match tok.kind {
                TokenKind::Comma => continue,
                TokenKind::RParen => return Ok(params),
                kind => {
                    return Err(ParseError::new(
                        tok.position,
                        ParseErrorKind::Expected {
                            wanted: "`,` or `)`",
                            found: kind.describe(),
                        },
                    ));
                }
            }
        }
    }

    fn param(&mut self) -> Result<(Parameter, Position), ParseError> {
        let tok = self.next()?;
        let (name, name_position) = match tok.kind {
            TokenKind::Ident(name) => (name, tok.position),
            kind => {
                return Err(ParseError::new(
                    tok.position,
                    ParseErrorKind::Expected {
                        wanted: "parameter name",
                        found: kind.describe(),
                    },
                ));
            }
        };
        self.expect(TokenKind::Colon, "`:`")?;
        let tok = self.next()?;
        let datatype = match tok.kind {
            TokenKind::Ident(token) => DataType::from_token(&token).ok_or_else(|| {
                ParseError::new(tok.position, ParseErrorKind::UnknownDataType(token))
            })?,
            kind => {
                return Err(ParseError::new(
                    tok.position,
                    ParseErrorKind::Expected {
                        wanted: "datatype",
                        found: kind.describe(),
                    },
                ));
            }
        };
        Ok((Parameter { name, datatype }, name_position))
    }
}

/// Parse a descriptor document into a profile.
///
/// Total over UTF-8 input: every document yields either a profile or a
/// positioned [`ParseError`], never a panic. The returned profile always
/// passes [`validate_profile`] with no error-severity diagnostics.
///
/// # Example
///
/// ```
/// use matchmaker_core::descriptor::{parse_profile, DataType};
///
/// let profile = parse_profile(
///     r#"service "CurrencyConvert" in(amount: Real, code: String) out(converted: Real)"#,
/// )
/// .unwrap();
/// assert_eq!(profile.name, "CurrencyConvert");
/// assert_eq!(profile.inputs.len(), 2);
/// assert_eq!(profile.outputs[0].datatype, DataType::Real);
/// ```
pub fn parse_profile(text: &str) -> Result<ServiceProfile, ParseError> {
    Parser::new(text).document()
}

fn escape_name(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    for c in name.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

/// Render a profile as a single-line descriptor document.
///
/// Round-trip identity: `parse_profile(&serialize_profile(p))` structurally
/// equals `p` for every profile that satisfies the invariants.
pub fn serialize_profile(profile: &ServiceProfile) -> String {
    let render = |params: &[Parameter]| {
        params
            .iter()
            .map(Parameter::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "service \"{}\" in({}) out({})",
        escape_name(&profile.name),
        render(&profile.inputs),
        render(&profile.outputs),
    )
}

/// Check a profile against the invariants.
///
/// Returns an empty list iff every invariant holds and the profile has at
/// least one parameter; a profile with both lists empty is legal but gets
/// a [`DiagnosticCode::VacuousProfile`] warning.
pub fn validate_profile(profile: &ServiceProfile) -> Vec<Diagnostic> {
    let mut diagnostics = Vec::new();
    if profile.name.is_empty() {
        diagnostics.push(Diagnostic::error(
            DiagnosticCode::EmptyServiceName,
            "service name is empty".to_string(),
        ));
    }
    for (label, params) in [("input", &profile.inputs), ("output", &profile.outputs)] {
        let mut seen: Vec<&str> = Vec::new();
        for param in params {
            if !is_valid_ident(&param.name) {
                diagnostics.push(Diagnostic::error(
                    DiagnosticCode::InvalidParameterName,
                    format!(
                        "{label} parameter name `{}` is not an identifier",
                        param.name
                    ),
                ));
            }
            if seen.contains(&param.name.as_str()) {
                diagnostics.push(Diagnostic::error(
                    DiagnosticCode::DuplicateParameter,
                    format!("{label} parameter `{}` declared more than once", param.name),
                ));
            } else {
                seen.push(&param.name);
            }
        }
    }
    if profile.inputs.is_empty() && profile.outputs.is_empty() {
        diagnostics.push(Diagnostic::warning(
            DiagnosticCode::VacuousProfile,
            "profile has no inputs and no outputs".to_string(),
        ));
    }
    diagnostics
}
