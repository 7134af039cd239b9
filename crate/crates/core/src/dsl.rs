//! Line-oriented text format for business models.
//!
//! ```text
//! business "Smart meter analytics" {
//!   node Resident : individual        # data generator
//!   node "Power company" : institution
//!   edge Resident -> "Power company" : data(P), request @1
//!   edge "Power company" -> "Power company" : proc(anonymize) @2
//! }
//! ```
//!
//! Statements end at a newline or at the closing brace of their block. A
//! trailing `# comment` attaches to the node or edge on the same line; comment
//! lines on their own are dropped. Stakeholders must be declared before an
//! edge refers to them. An edge with several labels becomes one parallel edge
//! per label, each carrying the statement's timestep and comment.

use std::collections::BTreeMap;

use crate::error::{ParseError, ParseErrorCode, SerializeError};
use crate::model::{
    BusinessModel, DataKind, Edge, EdgeLabel, ModelBuilder, Stakeholder, StakeholderId,
    StakeholderKind,
};
use crate::timestep::Timestep;
use crate::validate::{is_token_char, validate, Element};

pub fn parse(text: &str) -> Result<Vec<BusinessModel>, ParseError> {
    Ok(parse_located(text)?.into_iter().map(|(m, _)| m).collect())
}

/// 1-based line and column of each element of a parsed model.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SourceMap {
    pub block: (usize, usize),
    pub stakeholders: BTreeMap<StakeholderId, (usize, usize)>,
    /// Parallel to [`BusinessModel::edges`]; edges desugared from one
    /// statement share its position.
    pub edges: Vec<(usize, usize)>,
}

impl SourceMap {
    pub fn locate(&self, element: &Element) -> (usize, usize) {
        match element {
            Element::Edge(i) => self.edges.get(*i).copied(),
            Element::Stakeholder(id) => self.stakeholders.get(id).copied(),
        }
        .unwrap_or(self.block)
    }
}

/// Like [`parse`], also returning where each element was written.
pub fn parse_located(text: &str) -> Result<Vec<(BusinessModel, SourceMap)>, ParseError> {
    Parser::new(text).file()
}

#[derive(Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

struct Parser {
    chars: Vec<char>,
    idx: usize,
    line: usize,
    column: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            idx: 0,
            line: 1,
            column: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).copied()
    }

    fn peek_at(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.idx + ahead).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.idx += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error<T>(&self, at: Pos, code: ParseErrorCode, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            line: at.line,
            column: at.column,
            code,
            message: message.into(),
        })
    }

    /// Error at the current position, or at the last character when the input
    /// is exhausted so the position stays inside the text.
    fn error_here<T>(&self, code: ParseErrorCode, message: impl Into<String>) -> PResult<T> {
        if self.peek().is_some() || self.idx == 0 {
            return self.error(self.pos(), code, message);
        }
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..self.chars.len() - 1] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        self.error(Pos { line, column }, code, message)
    }

    fn skip_inline_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c != '\n' && c.is_whitespace()) {
            self.bump();
        }
    }

    /// Skips whitespace, newlines and standalone comment lines.
    fn skip_blank(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    self.rest_of_line();
                }
                _ => return,
            }
        }
    }

    fn rest_of_line(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c == '\n' {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    fn word(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if !is_ident_char(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    fn expect(&mut self, c: char, what: &str) -> PResult<()> {
        self.skip_inline_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            self.error_here(ParseErrorCode::SyntaxError, format!("expected {what}"))
        }
    }

    fn file(&mut self) -> PResult<Vec<(BusinessModel, SourceMap)>> {
        let mut models = Vec::new();
        loop {
            self.skip_blank();
            if self.peek().is_none() {
                return Ok(models);
            }
            let at = self.pos();
            let kw = self.word();
            if kw != "business" {
                return self.error(at, ParseErrorCode::SyntaxError, "expected `business`");
            }
            let mut map = SourceMap {
                block: (at.line, at.column),
                ..SourceMap::default()
            };
            let model = self.business(&mut map)?;
            models.push((model, map));
        }
    }

    fn business(&mut self, map: &mut SourceMap) -> PResult<BusinessModel> {
        self.skip_inline_ws();
        if self.peek() != Some('"') {
            return self.error_here(ParseErrorCode::SyntaxError, "expected quoted business name");
        }
        let name = self.string()?;
        self.skip_blank();
        let open = self.pos();
        if self.peek() != Some('{') {
            return self.error_here(ParseErrorCode::SyntaxError, "expected `{`");
        }
        self.bump();

        let mut builder = BusinessModel::builder(name);
        loop {
            self.skip_blank();
            let stmt = self.pos();
            match self.peek() {
                None => return self.error(open, ParseErrorCode::SyntaxError, "unclosed `{`"),
                Some('}') => {
                    self.bump();
                    self.end_of_statement()?;
                    return Ok(builder.build());
                }
                Some(_) => {}
            }
            match self.word().as_str() {
                "node" => self.node(&mut builder, map)?,
                "edge" => self.edge(&mut builder, map, stmt)?,
                _ => {
                    return self.error(
                        stmt,
                        ParseErrorCode::SyntaxError,
                        "expected `node`, `edge` or `}`",
                    )
                }
            }
        }
    }

    /// Consumes an optional trailing comment and requires a line end, the end
    /// of input, or a closing brace (left unconsumed).
    fn trailing_comment(&mut self) -> PResult<Option<String>> {
        self.skip_inline_ws();
        match self.peek() {
            None | Some('\n') | Some('}') => Ok(None),
            Some('#') => {
                self.bump();
                let text = self.rest_of_line();
                let text = text.trim();
                Ok((!text.is_empty()).then(|| text.to_string()))
            }
            Some(c) => self.error_here(ParseErrorCode::SyntaxError, format!("unexpected `{c}`")),
        }
    }

    fn end_of_statement(&mut self) -> PResult<()> {
        self.trailing_comment().map(|_| ())
    }

    fn name(&mut self) -> PResult<(String, Pos)> {
        self.skip_inline_ws();
        let at = self.pos();
        let raw = match self.peek() {
            Some('"') => self.string()?,
            Some(c) if is_ident_char(c) => self.word(),
            _ => return self.error_here(ParseErrorCode::SyntaxError, "expected stakeholder name"),
        };
        Ok((raw, at))
    }

    fn stakeholder_id(&self, raw: &str, at: Pos) -> PResult<StakeholderId> {
        StakeholderId::new(raw)
            .or_else(|_| self.error(at, ParseErrorCode::SyntaxError, "stakeholder name is empty"))
    }

    fn node(&mut self, builder: &mut ModelBuilder, map: &mut SourceMap) -> PResult<()> {
        let (raw, at) = self.name()?;
        let id = self.stakeholder_id(&raw, at)?;
        self.expect(':', "`:`")?;
        self.skip_inline_ws();
        let kind_at = self.pos();
        let kind = match self.word().as_str() {
            "individual" => StakeholderKind::Individual,
            "institution" => StakeholderKind::Institution,
            _ => {
                return self.error(
                    kind_at,
                    ParseErrorCode::SyntaxError,
                    "expected `individual` or `institution`",
                )
            }
        };
        let comment = self.trailing_comment()?;
        if builder.contains(&id) {
            return self.error(
                at,
                ParseErrorCode::DuplicateStakeholder,
                format!("stakeholder `{id}` is already declared in this block"),
            );
        }
        map.stakeholders.insert(id.clone(), (at.line, at.column));
        let stakeholder = Stakeholder {
            id: id.clone(),
            display_name: raw,
            kind,
            comment,
        };
        builder
            .add_stakeholder(stakeholder)
            .expect("duplicate checked above");
        Ok(())
    }

    fn declared(&self, builder: &ModelBuilder, raw: &str, at: Pos) -> PResult<StakeholderId> {
        let id = self.stakeholder_id(raw, at)?;
        if !builder.contains(&id) {
            return self.error(
                at,
                ParseErrorCode::UndeclaredStakeholder,
                format!("stakeholder `{id}` is not declared before this edge"),
            );
        }
        Ok(id)
    }

    fn edge(&mut self, builder: &mut ModelBuilder, map: &mut SourceMap, stmt: Pos) -> PResult<()> {
        let (src_raw, src_at) = self.name()?;
        let src = self.declared(builder, &src_raw, src_at)?;
        self.skip_inline_ws();
        if !(self.peek() == Some('-') && self.peek_at(1) == Some('>')) {
            return self.error_here(ParseErrorCode::SyntaxError, "expected `->`");
        }
        self.bump();
        self.bump();
        let (dst_raw, dst_at) = self.name()?;
        let dst = self.declared(builder, &dst_raw, dst_at)?;
        self.expect(':', "`:`")?;

        let mut labels = vec![self.label()?];
        loop {
            self.skip_inline_ws();
            if self.peek() != Some(',') {
                break;
            }
            self.bump();
            labels.push(self.label()?);
        }

        self.skip_inline_ws();
        let timestep = if self.peek() == Some('@') {
            let at_sign = self.pos();
            self.bump();
            Some(self.timestep(at_sign)?)
        } else {
            None
        };
        let comment = self.trailing_comment()?;

        for label in labels {
            map.edges.push((stmt.line, stmt.column));
            builder.add_edge(Edge {
                src: src.clone(),
                dst: dst.clone(),
                label,
                timestep: timestep.clone(),
                comment: comment.clone(),
            });
        }
        Ok(())
    }

    fn label(&mut self) -> PResult<EdgeLabel> {
        self.skip_inline_ws();
        let at = self.pos();
        let word = self.word();
        if word.is_empty() {
            return self.error_here(ParseErrorCode::SyntaxError, "expected label");
        }
        match word.as_str() {
            "request" => Ok(EdgeLabel::Request),
            "service" => Ok(EdgeLabel::Service),
            "payment" => Ok(EdgeLabel::Payment),
            "data" => {
                if self.peek() != Some('(') {
                    return Ok(EdgeLabel::Data(DataKind::NonPersonal));
                }
                self.bump();
                if !matches!(self.peek(), Some('P' | 'p')) {
                    return self.error(
                        at,
                        ParseErrorCode::UnknownLabel,
                        "expected `data(P)` or `data(P:subject)`",
                    );
                }
                self.bump();
                let kind = match self.peek() {
                    Some(')') => DataKind::PersonalCollection,
                    Some(':') => {
                        self.bump();
                        DataKind::PersonalIndividual(self.token("data subject")?)
                    }
                    _ => {
                        return self.error(
                            at,
                            ParseErrorCode::UnknownLabel,
                            "expected `data(P)` or `data(P:subject)`",
                        )
                    }
                };
                self.expect_close()?;
                Ok(EdgeLabel::Data(kind))
            }
            "proc" => {
                if self.peek() != Some('(') {
                    return self
                        .error_here(ParseErrorCode::SyntaxError, "expected `(` after `proc`");
                }
                self.bump();
                let name = self.token("algorithm name")?;
                self.expect_close()?;
                Ok(EdgeLabel::Process(name))
            }
            other => self.error(
                at,
                ParseErrorCode::UnknownLabel,
                format!("unknown label `{other}`"),
            ),
        }
    }

    fn expect_close(&mut self) -> PResult<()> {
        if self.peek() == Some(')') {
            self.bump();
            Ok(())
        } else {
            self.error_here(ParseErrorCode::SyntaxError, "expected `)`")
        }
    }

    fn token(&mut self, what: &str) -> PResult<String> {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if !is_token_char(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
        if out.is_empty() {
            return self.error_here(ParseErrorCode::SyntaxError, format!("expected {what}"));
        }
        Ok(out)
    }

    fn timestep(&mut self, at_sign: Pos) -> PResult<Timestep> {
        let start = self.pos();
        let mut raw = String::new();
        while let Some(c) = self.peek() {
            if !(c.is_ascii_alphanumeric() || c == '-' || c == '_') {
                break;
            }
            raw.push(c);
            self.bump();
        }
        if raw.is_empty() {
            let at = if self.peek().is_some_and(|c| c != '\n') {
                start
            } else {
                at_sign
            };
            return self.error(
                at,
                ParseErrorCode::BadTimestep,
                "expected timestep after `@`",
            );
        }
        raw.parse::<Timestep>().or_else(|e| {
            let at = Pos {
                line: start.line,
                column: start.column + e.offset.min(raw.len() - 1),
            };
            self.error(
                at,
                ParseErrorCode::BadTimestep,
                format!("bad timestep `{raw}`: {}", e.reason),
            )
        })
    }

    fn string(&mut self) -> PResult<String> {
        let open = self.pos();
        self.bump();
        let mut out = String::new();
        loop {
            let here = self.pos();
            match self.bump() {
                None | Some('\n') => {
                    return self.error(open, ParseErrorCode::SyntaxError, "unterminated string")
                }
                Some('"') => return Ok(out),
                Some('\\') => match self.bump() {
                    Some('"') => out.push('"'),
                    Some('\\') => out.push('\\'),
                    Some('n') => out.push('\n'),
                    _ => return self.error(here, ParseErrorCode::SyntaxError, "unknown escape"),
                },
                Some(c) => out.push(c),
            }
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Canonical text for a list of models. Output ends with a newline unless empty.
pub fn serialize(models: &[BusinessModel]) -> Result<String, SerializeError> {
    let mut out = String::new();
    for (i, model) in models.iter().enumerate() {
        let diagnostics = validate(model);
        if !diagnostics.is_empty() {
            return Err(SerializeError::InvalidModel {
                model: model.name().to_string(),
                diagnostics,
            });
        }
        if i > 0 {
            out.push('\n');
        }
        write_model(&mut out, model);
    }
    Ok(out)
}

fn write_model(out: &mut String, model: &BusinessModel) {
    out.push_str("business ");
    push_quoted(out, model.name());
    out.push_str(" {\n");
    for s in model.stakeholders() {
        out.push_str("  node ");
        push_name(out, &s.display_name);
        out.push_str(" : ");
        out.push_str(s.kind.keyword());
        push_comment(out, s.comment.as_deref());
        out.push('\n');
    }
    for e in model.canonical_edges() {
        out.push_str("  edge ");
        push_name(out, display(model, &e.src));
        out.push_str(" -> ");
        push_name(out, display(model, &e.dst));
        out.push_str(" : ");
        out.push_str(&e.label.to_string());
        if let Some(ts) = &e.timestep {
            out.push_str(" @");
            out.push_str(&ts.to_string());
        }
        push_comment(out, e.comment.as_deref());
        out.push('\n');
    }
    out.push_str("}\n");
}

fn display<'a>(model: &'a BusinessModel, id: &'a StakeholderId) -> &'a str {
    model
        .stakeholder(id)
        .map(|s| s.display_name.as_str())
        .unwrap_or(id.as_str())
}

fn push_name(out: &mut String, name: &str) {
    if !name.is_empty() && name.chars().all(is_ident_char) {
        out.push_str(name);
    } else {
        push_quoted(out, name);
    }
}

fn push_quoted(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
}

fn push_comment(out: &mut String, comment: Option<&str>) {
    if let Some(c) = comment {
        let c = c.lines().map(str::trim).collect::<Vec<_>>().join(" ");
        let c = c.trim();
        if !c.is_empty() {
            out.push_str(" # ");
            out.push_str(c);
        }
    }
}
