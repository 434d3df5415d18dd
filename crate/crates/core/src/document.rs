//! Text and JSON forms of diagrams and framed-link documents.
//!
//! PD text: `X[a,b,c,d]` crossings, `O` for each crossingless loop and
//! `R[e]` to reverse the inferred orientation of the component through
//! edge `e`. Tokens may be separated by whitespace or commas, and the whole
//! list may be wrapped in `PD[...]`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, Edge};
use crate::surgery::{AbstractLink, Body, FramedLink, Slope, SurgeryError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid diagram: {}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<DiagramError>),
    #[error("json: {0}")]
    Json(String),
    #[error("document: {0}")]
    Document(String),
}

impl From<SurgeryError> for ParseError {
    fn from(e: SurgeryError) -> Self {
        ParseError::Document(e.to_string())
    }
}

/// Raw PD tokens before orientation inference.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdCode {
    pub crossings: Vec<[Edge; 4]>,
    #[serde(default)]
    pub free_loops: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reverse: Vec<Edge>,
}

impl PdCode {
    pub fn from_diagram(d: &Diagram) -> Self {
        Self {
            crossings: d.crossings().iter().map(|c| c.pd).collect(),
            free_loops: d.free_loops(),
            reverse: d.orientation_overrides(),
        }
    }

    pub fn to_diagram(&self) -> Result<Diagram, ParseError> {
        Diagram::from_pd(&self.crossings, self.free_loops, &self.reverse).map_err(ParseError::Invalid)
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_sep(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_whitespace() || self.s[self.pos] == b',') {
            self.pos += 1;
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Result<Edge, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an edge number");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("edge number out of range")
        })
    }

    fn list(&mut self, n: usize) -> Result<Vec<Edge>, ParseError> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        for k in 0..n {
            if k > 0 {
                self.expect(b',')?;
            }
            out.push(self.number()?);
        }
        self.expect(b']')?;
        Ok(out)
    }
}

/// Tokenizes PD text without validating the diagram.
pub fn parse_pd_code(text: &str) -> Result<PdCode, ParseError> {
    let mut lx = Lexer { s: text.as_bytes(), pos: 0 };
    let mut code = PdCode::default();
    lx.skip_sep();
    let wrapped = text[lx.pos..].starts_with("PD[");
    if wrapped {
        lx.pos += 3;
    }
    loop {
        lx.skip_sep();
        let Some(&c) = lx.s.get(lx.pos) else { break };
        match c {
            b'X' => {
                lx.pos += 1;
                let v = lx.list(4)?;
                code.crossings.push([v[0], v[1], v[2], v[3]]);
            }
            b'O' => {
                lx.pos += 1;
                code.free_loops += 1;
            }
            b'R' => {
                lx.pos += 1;
                code.reverse.push(lx.list(1)?[0]);
            }
            b']' if wrapped => {
                lx.pos += 1;
                lx.skip_sep();
                if lx.pos < lx.s.len() {
                    return lx.err("trailing input after PD[...]");
                }
                return Ok(code);
            }
            _ => return lx.err(format!("unexpected character '{}'", c as char)),
        }
    }
    if wrapped {
        return lx.err("missing closing ']'");
    }
    Ok(code)
}

pub fn parse_pd(text: &str) -> Result<Diagram, ParseError> {
    parse_pd_code(text)?.to_diagram()
}

pub fn to_pd_text(d: &Diagram) -> String {
    d.to_pd_string()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkBody {
    Diagram(Diagram),
    Abstract(AbstractLink),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedLink {
    pub name: String,
    pub body: LinkBody,
    pub slopes: Option<Vec<Slope>>,
}

impl NamedLink {
    pub fn diagram(name: impl Into<String>, d: Diagram) -> Self {
        Self { name: name.into(), body: LinkBody::Diagram(d), slopes: None }
    }

    pub fn component_count(&self) -> usize {
        match &self.body {
            LinkBody::Diagram(d) => d.component_count(),
            LinkBody::Abstract(a) => a.n(),
        }
    }

    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        match &self.body {
            LinkBody::Diagram(d) => d.linking_matrix(),
            LinkBody::Abstract(a) => a.lk().to_vec(),
        }
    }

    /// As a framed link; missing slopes default to `0/1`.
    pub fn framed(&self) -> Result<FramedLink, SurgeryError> {
        let body = match &self.body {
            LinkBody::Diagram(d) => Body::Diagram(d.clone()),
            LinkBody::Abstract(a) => Body::Abstract(a.clone()),
        };
        let slopes = self.slopes.clone().unwrap_or_else(|| vec![Slope::integer(0); self.component_count()]);
        FramedLink::new(body, slopes)
    }

    pub fn from_framed(name: impl Into<String>, fl: &FramedLink) -> Self {
        let body = match fl.body() {
            Body::Diagram(d) => LinkBody::Diagram(d.clone()),
            Body::Abstract(a) => LinkBody::Abstract(a.clone()),
        };
        Self { name: name.into(), body, slopes: Some(fl.slopes().to_vec()) }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub metadata: String,
    pub links: Vec<NamedLink>,
}

#[derive(Serialize, Deserialize)]
struct RawLink {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    diagram: Option<PdCode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lk: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    slopes: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct RawDocument {
    #[serde(default)]
    metadata: String,
    links: Vec<RawLink>,
}

impl Document {
    pub fn single(name: impl Into<String>, d: Diagram) -> Self {
        Self { metadata: String::new(), links: vec![NamedLink::diagram(name, d)] }
    }

    pub fn validate(&self) -> Result<(), ParseError> {
        let mut names = HashSet::new();
        for l in &self.links {
            if !names.insert(l.name.as_str()) {
                return Err(ParseError::Document(format!("duplicate link name {:?}", l.name)));
            }
            if let Some(s) = &l.slopes {
                if s.len() != l.component_count() {
                    return Err(ParseError::Document(format!(
                        "link {:?} has {} components but {} slopes",
                        l.name,
                        l.component_count(),
                        s.len()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let raw = RawDocument {
            metadata: self.metadata.clone(),
            links: self
                .links
                .iter()
                .map(|l| RawLink {
                    name: l.name.clone(),
                    diagram: match &l.body {
                        LinkBody::Diagram(d) => Some(PdCode::from_diagram(d)),
                        LinkBody::Abstract(_) => None,
                    },
                    lk: match &l.body {
                        LinkBody::Abstract(a) => Some(a.lk().to_vec()),
                        LinkBody::Diagram(_) => None,
                    },
                    slopes: l.slopes.as_ref().map(|s| s.iter().map(Slope::to_string).collect()),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
        let mut links = Vec::new();
        for r in raw.links {
            let body = match (r.diagram, r.lk) {
                (Some(code), None) => LinkBody::Diagram(code.to_diagram()?),
                (None, Some(lk)) => LinkBody::Abstract(AbstractLink::new(lk)?),
                _ => return Err(ParseError::Document(format!("link {:?} needs exactly one of diagram, lk", r.name))),
            };
            let slopes = match r.slopes {
                None => None,
                Some(v) => Some(v.iter().map(|s| s.parse::<Slope>()).collect::<Result<Vec<_>, _>>()?),
            };
            links.push(NamedLink { name: r.name, body, slopes });
        }
        let doc = Document { metadata: raw.metadata, links };
        doc.validate()?;
        Ok(doc)
    }

    /// JSON if the text starts with `{`, PD text otherwise.
    pub fn parse_any(text: &str) -> Result<Self, ParseError> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Ok(Self::single("input", parse_pd(text)?))
        }
    }
}
