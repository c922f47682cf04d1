//! Reader and printer for `.stmt` statement files.
//!
//! ```text
//! file        := [dim-decl] "points" ident+ "hypotheses" constraint* "conclusion" constraint+
//! dim-decl    := "dimension" INT
//! constraint  := ident+ (":" | "<=" | ">=") INT
//! ```
//!
//! An empty `hypotheses` block may omit its keyword.
//! `#` starts a comment running to the end of the line. Identifiers are runs
//! of alphanumeric characters and `_`, optionally followed by primes (`B'`).
//! A run of ASCII digits is an integer.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::error::StatementError;
use crate::statement::{RankConstraint, Relation, Statement};
use crate::universe::{PointSet, PointUniverse, DEFAULT_MAX_POINTS};

pub const DEFAULT_DIMENSION: u32 = 3;

/// 1-based line and column of a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Expected {
        expected: &'static str,
        found: String,
    },
    #[error("integer `{0}` is out of range")]
    IntOverflow(String),
    #[error("duplicate point name `{0}`")]
    DuplicatePoint(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("rank value {value} exceeds the dimension cap {cap}")]
    ValueAboveCap { value: u32, cap: u32 },
    #[error("the conclusion section is empty")]
    EmptyConclusion,
    #[error("{0}")]
    Invalid(StatementError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {}, column {}: {kind}", span.line, span.column)]
pub struct ParseError {
    pub span: Span,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, Copy)]
pub struct ParseOptions {
    /// Used when the file has no `dimension` declaration.
    pub default_dimension: u32,
    pub max_points: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            default_dimension: DEFAULT_DIMENSION,
            max_points: DEFAULT_MAX_POINTS,
        }
    }
}

/// A parsed statement together with where each constraint came from.
#[derive(Debug, Clone)]
pub struct SourceStatement {
    pub text: String,
    pub statement: Statement,
    /// Whether the file carried its own `dimension` declaration.
    pub declared_dimension: Option<u32>,
    pub hypothesis_spans: Vec<Span>,
    pub conclusion_spans: Vec<Span>,
}

/// Parses statement text, using `default_dimension` if the file does not
/// declare one.
pub fn parse_statement(text: &str, default_dimension: u32) -> Result<Statement, ParseError> {
    let opts = ParseOptions {
        default_dimension,
        ..ParseOptions::default()
    };
    parse_source(text, &opts).map(|s| s.statement)
}

pub fn parse_source(text: &str, opts: &ParseOptions) -> Result<SourceStatement, ParseError> {
    let tokens = tokenize(text)?;
    Parser {
        tokens,
        pos: 0,
        end: end_span(text),
    }
    .file(text, opts)
}

/// Canonical text of a statement: a dimension header, one constraint per
/// line, points of each set in universe order.
pub fn print_statement(stmt: &Statement) -> String {
    let u = stmt.universe();
    let mut out = String::new();
    let _ = writeln!(out, "dimension {}", u.dimension());
    out.push_str("points\n ");
    for name in u.names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push_str("\nhypotheses\n");
    for h in stmt.hypotheses() {
        let _ = writeln!(out, "  {}", h.display(u));
    }
    out.push_str("conclusion\n");
    for c in stmt.conclusions() {
        let _ = writeln!(out, "  {}", c.display(u));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Int(String),
    Rel(Relation),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Int(i) => format!("integer `{i}`"),
            Tok::Rel(r) => format!("`{}`", r.symbol()),
        }
    }
}

const KEYWORDS: [&str; 4] = ["dimension", "points", "hypotheses", "conclusion"];

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn end_span(text: &str) -> Span {
    let line = text.lines().count().max(1);
    let column = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
    Span { line, column }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let span = Span {
                line: lineno + 1,
                column: i + 1,
            };
            if c.is_whitespace() {
                i += 1;
            } else if c == '#' {
                break;
            } else if c == ':' {
                out.push((Tok::Rel(Relation::Eq), span));
                i += 1;
            } else if (c == '<' || c == '>') && chars.get(i + 1) == Some(&'=') {
                let rel = if c == '<' { Relation::Le } else { Relation::Ge };
                out.push((Tok::Rel(rel), span));
                i += 2;
            } else if is_ident_char(c) {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                while i < chars.len() && chars[i] == '\'' {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if word.chars().all(|c| c.is_ascii_digit()) {
                    out.push((Tok::Int(word), span));
                } else {
                    out.push((Tok::Word(word), span));
                }
            } else {
                return Err(ParseError {
                    span,
                    kind: ParseErrorKind::UnexpectedChar(c),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Tok, Span)>,
    pos: usize,
    end: Span,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, Span)> {
        self.tokens.get(self.pos)
    }

    fn span(&self) -> Span {
        self.peek().map_or(self.end, |t| t.1)
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            span: self.span(),
            kind,
        }
    }

    fn expected(&self, expected: &'static str) -> ParseError {
        let found = self
            .peek()
            .map_or_else(|| "end of input".to_string(), |t| t.0.describe());
        self.error(ParseErrorKind::Expected { expected, found })
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some((Tok::Word(w), _)) if w == kw)
    }

    fn keyword(&mut self, kw: &'static str) -> Result<(), ParseError> {
        if self.at_keyword(kw) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.expected(kw))
        }
    }

    fn int(&mut self) -> Result<(u32, Span), ParseError> {
        match self.peek() {
            Some((Tok::Int(s), span)) => {
                let span = *span;
                let v = s.parse::<u32>().map_err(|_| ParseError {
                    span,
                    kind: ParseErrorKind::IntOverflow(s.clone()),
                })?;
                self.pos += 1;
                Ok((v, span))
            }
            _ => Err(self.expected("an integer")),
        }
    }

    /// A non-keyword identifier, if one is next.
    fn ident(&mut self) -> Option<(String, Span)> {
        match self.peek() {
            Some((Tok::Word(w), span)) if !KEYWORDS.contains(&w.as_str()) => {
                let out = (w.clone(), *span);
                self.pos += 1;
                Some(out)
            }
            _ => None,
        }
    }

    fn file(mut self, text: &str, opts: &ParseOptions) -> Result<SourceStatement, ParseError> {
        let mut declared_dimension = None;
        if self.at_keyword("dimension") {
            self.pos += 1;
            let (d, span) = self.int()?;
            if d < 2 {
                return Err(ParseError {
                    span,
                    kind: ParseErrorKind::Invalid(StatementError::DimensionTooSmall(d)),
                });
            }
            declared_dimension = Some(d);
        }
        let dimension = declared_dimension.unwrap_or(opts.default_dimension);

        let points_span = self.span();
        self.keyword("points")?;
        let mut names: Vec<String> = Vec::new();
        while let Some((name, span)) = self.ident() {
            if names.contains(&name) {
                return Err(ParseError {
                    span,
                    kind: ParseErrorKind::DuplicatePoint(name),
                });
            }
            names.push(name);
        }
        if names.is_empty() {
            return Err(self.expected("a point name"));
        }
        let universe = PointUniverse::with_max_points(names, dimension, opts.max_points)
            .map_err(|e| ParseError {
                span: points_span,
                kind: ParseErrorKind::Invalid(e),
            })?;

        // The block header may be left out when there are no hypotheses.
        if !self.at_keyword("conclusion") {
            self.keyword("hypotheses")?;
        }
        let mut hypotheses = Vec::new();
        let mut hypothesis_spans = Vec::new();
        while !self.at_keyword("conclusion") {
            if self.peek().is_none() {
                return Err(self.expected("conclusion"));
            }
            let (c, span) = self.constraint(&universe)?;
            hypotheses.push(c);
            hypothesis_spans.push(span);
        }
        let conclusion_span = self.span();
        self.keyword("conclusion")?;
        let mut conclusions = Vec::new();
        let mut conclusion_spans = Vec::new();
        while self.peek().is_some() {
            let (c, span) = self.constraint(&universe)?;
            conclusions.push(c);
            conclusion_spans.push(span);
        }
        if conclusions.is_empty() {
            return Err(ParseError {
                span: conclusion_span,
                kind: ParseErrorKind::EmptyConclusion,
            });
        }
        let statement =
            Statement::new(universe, hypotheses, conclusions).map_err(|e| ParseError {
                span: conclusion_span,
                kind: ParseErrorKind::Invalid(e),
            })?;
        Ok(SourceStatement {
            text: text.to_string(),
            statement,
            declared_dimension,
            hypothesis_spans,
            conclusion_spans,
        })
    }

    fn constraint(
        &mut self,
        universe: &PointUniverse,
    ) -> Result<(RankConstraint, Span), ParseError> {
        let start = self.span();
        let mut set = PointSet::EMPTY;
        let mut any = false;
        while let Some((name, span)) = self.ident() {
            let i = universe.index_of(&name).ok_or(ParseError {
                span,
                kind: ParseErrorKind::UnknownPoint(name),
            })?;
            set = set.with(i);
            any = true;
        }
        if !any {
            return Err(self.expected("a point name"));
        }
        let relation = match self.peek() {
            Some((Tok::Rel(r), _)) => *r,
            _ => return Err(self.expected("`:`, `<=` or `>=`")),
        };
        self.pos += 1;
        let (value, vspan) = self.int()?;
        let cap = universe.rank_cap();
        if value > cap {
            return Err(ParseError {
                span: vspan,
                kind: ParseErrorKind::ValueAboveCap { value, cap },
            });
        }
        Ok((RankConstraint::new(set, relation, value), start))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE4_LEFT: &str = "points
  A B C A' B' C' M N P
hypotheses
  A B C : 3
  A' B' C' : 3
  A B C A' B' C' : 4
  M A B C : 3
  N A B C : 3
  P A B C : 3
  M A' B' C' : 3
  N A' B' C' : 3
  P A' B' C' : 3
  M N : 2
conclusion
  M N P : 2  # collinearity
";

    #[test]
    fn parses_plane_intersection() {
        let s = parse_statement(TABLE4_LEFT, 3).unwrap();
        assert_eq!(s.universe().len(), 9);
        assert_eq!(s.dimension(), 3);
        assert_eq!(s.hypotheses().len(), 10);
        assert!(s.hypotheses().iter().all(|h| h.relation == Relation::Eq));
        assert_eq!(s.conclusions().len(), 1);
        let mnp = s.universe().set_of(["M", "N", "P"]).unwrap();
        assert_eq!(s.conclusions()[0], RankConstraint::eq(mnp, 2));
    }

    #[test]
    fn minimal_file() {
        let s = parse_statement("points A conclusion A : 1", 3).unwrap();
        assert_eq!(s.universe().len(), 1);
        assert!(s.hypotheses().is_empty());
        assert_eq!(s.conclusions(), &[RankConstraint::eq(PointSet::singleton(0), 1)]);
    }

    #[test]
    fn dimension_declaration_wins() {
        let s = parse_statement("dimension 5 points A B conclusion A B : 2", 3).unwrap();
        assert_eq!(s.dimension(), 5);
        let s = parse_statement("points A B conclusion A B <= 2", 4).unwrap();
        assert_eq!(s.dimension(), 4);
        assert_eq!(s.conclusions()[0].relation, Relation::Le);
    }

    #[test]
    fn relations_and_printing() {
        let s = parse_statement(
            "points M N Q hypotheses M N >= 2 conclusion M N Q >= 2 M N <= 3",
            3,
        )
        .unwrap();
        let text = print_statement(&s);
        assert!(text.contains("M N >= 2"));
        assert!(text.contains("M N <= 3"));
        assert_eq!(parse_statement(&text, 3).unwrap(), s);
    }

    #[test]
    fn print_orders_points_by_universe() {
        let s = parse_statement("points A B C conclusion C A : 2", 3).unwrap();
        assert!(print_statement(&s).contains("  A C : 2\n"));
    }

    #[test]
    fn round_trip_is_fixed_point() {
        let s = parse_statement(TABLE4_LEFT, 3).unwrap();
        let printed = print_statement(&s);
        let again = parse_statement(&printed, 7).unwrap();
        assert_eq!(again, s);
        assert_eq!(print_statement(&again), printed);
    }

    #[test]
    fn primes_and_p_suffix_are_distinct_names() {
        let s = parse_statement("points A A' Ap conclusion A A' Ap : 3", 3).unwrap();
        assert_eq!(s.universe().names(), &["A", "A'", "Ap"]);
    }

    fn err(text: &str) -> ParseError {
        parse_statement(text, 3).unwrap_err()
    }

    #[test]
    fn error_duplicate_point() {
        let e = err("points A B\n A\nconclusion A : 1");
        assert_eq!(e.kind, ParseErrorKind::DuplicatePoint("A".into()));
        assert_eq!(e.span, Span { line: 2, column: 2 });
    }

    #[test]
    fn error_unknown_point() {
        let e = err("points A B\nhypotheses\n  A Z : 2\nconclusion A : 1");
        assert_eq!(e.kind, ParseErrorKind::UnknownPoint("Z".into()));
        assert_eq!(e.span.line, 3);
    }

    #[test]
    fn error_value_above_cap() {
        let e = err("points A B C D E\nhypotheses\nconclusion\n A B C D E : 5");
        assert_eq!(e.kind, ParseErrorKind::ValueAboveCap { value: 5, cap: 4 });
        assert_eq!(e.span.line, 4);
    }

    #[test]
    fn error_empty_conclusion() {
        let e = err("points A B\nhypotheses\n A B : 2\nconclusion\n");
        assert_eq!(e.kind, ParseErrorKind::EmptyConclusion);
        assert_eq!(e.span.line, 4);
    }

    #[test]
    fn error_syntax() {
        let e = err("points A B\nhypotheses\n A B = 2\nconclusion A : 1");
        assert_eq!(e.kind, ParseErrorKind::UnexpectedChar('='));
        assert_eq!(e.span, Span { line: 3, column: 6 });
        let e = err("points A B\nhypotheses\n A B : \nconclusion A : 1");
        assert!(matches!(e.kind, ParseErrorKind::Expected { .. }));
        assert_eq!(e.span.line, 4);
        let e = err("hypotheses A : 1");
        assert!(matches!(e.kind, ParseErrorKind::Expected { expected: "points", .. }));
        let e = err("points A hypotheses A : 1");
        assert!(matches!(e.kind, ParseErrorKind::Expected { expected: "conclusion", .. }));
    }

    #[test]
    fn error_too_many_points() {
        let names: Vec<String> = (0..26).map(|i| format!("P{i}")).collect();
        let text = format!("points {} conclusion P0 : 1", names.join(" "));
        let e = err(&text);
        assert!(matches!(
            e.kind,
            ParseErrorKind::Invalid(StatementError::TooManyPoints { count: 26, max: 25 })
        ));
        let opts = ParseOptions {
            max_points: 26,
            ..ParseOptions::default()
        };
        assert!(parse_source(&text, &opts).is_ok());
    }

    #[test]
    fn error_dimension_too_small() {
        let e = err("dimension 1 points A conclusion A : 1");
        assert_eq!(
            e.kind,
            ParseErrorKind::Invalid(StatementError::DimensionTooSmall(1))
        );
    }

    #[test]
    fn spans_are_recorded() {
        let src = parse_source(TABLE4_LEFT, &ParseOptions::default()).unwrap();
        assert_eq!(src.hypothesis_spans[0], Span { line: 4, column: 3 });
        assert_eq!(src.conclusion_spans[0].line, 15);
        assert_eq!(src.declared_dimension, None);
    }
}
