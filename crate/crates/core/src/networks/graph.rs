use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Node<S: Scalar> {
    pub key: String,
    pub label: String,
    pub weight: S,
}

/// Undirected edge stored with `a < b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Edge<S: Scalar> {
    pub a: String,
    pub b: String,
    pub weight: S,
}

/// Undirected weighted graph with nodes sorted by key and edges sorted by
/// endpoint pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Graph<S: Scalar> {
    pub name: String,
    pub nodes: Vec<Node<S>>,
    pub edges: Vec<Edge<S>>,
}

impl<S: Scalar> Graph<S> {
    pub fn empty(name: &str) -> Self {
        Graph {
            name: name.to_string(),
            nodes: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Builds a graph, checking every structural invariant.
    pub fn from_parts(name: &str, nodes: Vec<Node<S>>, edges: Vec<Edge<S>>) -> Result<Self> {
        let mut b = GraphBuilder::new(name);
        for n in nodes {
            if b.nodes.contains_key(&n.key) {
                return Err(Error::Invalid {
                    message: format!("duplicate node {:?}", n.key),
                    ids: vec![n.key],
                });
            }
            if !(n.weight >= S::zero()) {
                return Err(Error::Invalid {
                    message: format!("negative node weight on {:?}", n.key),
                    ids: vec![n.key],
                });
            }
            b.set_node(&n.key, &n.label, n.weight);
        }
        for e in edges {
            let bad = |m: String| Error::Invalid {
                message: m,
                ids: vec![e.a.clone(), e.b.clone()],
            };
            if e.a == e.b {
                return Err(bad(format!("self-loop on {:?}", e.a)));
            }
            if !b.nodes.contains_key(&e.a) || !b.nodes.contains_key(&e.b) {
                return Err(bad(format!("edge {:?}-{:?} has a missing endpoint", e.a, e.b)));
            }
            if !(e.weight > S::zero()) {
                return Err(bad(format!("edge {:?}-{:?} has non-positive weight", e.a, e.b)));
            }
            let key = pair(&e.a, &e.b);
            if b.edges.contains_key(&key) {
                return Err(bad(format!("duplicate edge {:?}-{:?}", e.a, e.b)));
            }
            b.edges.insert(key, e.weight);
        }
        Ok(b.build())
    }

    pub fn node(&self, key: &str) -> Option<&Node<S>> {
        self.nodes
            .binary_search_by(|n| n.key.as_str().cmp(key))
            .ok()
            .map(|i| &self.nodes[i])
    }

    pub fn edge_weight(&self, x: &str, y: &str) -> Option<S> {
        let (a, b) = pair(x, y);
        self.edges
            .binary_search_by(|e| (e.a.as_str(), e.b.as_str()).cmp(&(a.as_str(), b.as_str())))
            .ok()
            .map(|i| self.edges[i].weight)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges over possible edges; 0 for fewer than two nodes.
    pub fn density(&self) -> S {
        let n = self.nodes.len();
        if n < 2 {
            return S::zero();
        }
        S::of_count(2 * self.edges.len()) / S::of_count(n * (n - 1))
    }
}

fn pair(x: &str, y: &str) -> (String, String) {
    if x <= y {
        (x.to_string(), y.to_string())
    } else {
        (y.to_string(), x.to_string())
    }
}

/// Accumulates node and edge weights; self-loops are ignored.
#[derive(Debug, Clone)]
pub struct GraphBuilder<S: Scalar> {
    name: String,
    nodes: BTreeMap<String, (String, S)>,
    edges: BTreeMap<(String, String), S>,
}

impl<S: Scalar> GraphBuilder<S> {
    pub fn new(name: &str) -> Self {
        GraphBuilder {
            name: name.to_string(),
            nodes: BTreeMap::new(),
            edges: BTreeMap::new(),
        }
    }

    /// Adds `w` to the node's weight. The first label seen is kept.
    pub fn add_node(&mut self, key: &str, label: &str, w: S) {
        self.nodes
            .entry(key.to_string())
            .or_insert_with(|| (label.to_string(), S::zero()))
            .1 += w;
    }

    pub fn set_node(&mut self, key: &str, label: &str, w: S) {
        self.nodes.insert(key.to_string(), (label.to_string(), w));
    }

    pub fn add_edge(&mut self, x: &str, y: &str, w: S) {
        if x == y {
            return;
        }
        *self.edges.entry(pair(x, y)).or_insert_with(S::zero) += w;
    }

    /// Adds `w` to every pair of distinct keys.
    pub fn add_clique(&mut self, keys: &[&str], w: S) {
        for (i, x) in keys.iter().enumerate() {
            for y in &keys[i + 1..] {
                self.add_edge(x, y, w);
            }
        }
    }

    pub fn build(self) -> Graph<S> {
        let nodes = &self.nodes;
        let edges = self
            .edges
            .into_iter()
            .filter(|((a, b), w)| *w > S::zero() && nodes.contains_key(a) && nodes.contains_key(b))
            .map(|((a, b), weight)| Edge { a, b, weight })
            .collect();
        Graph {
            name: self.name,
            nodes: self
                .nodes
                .into_iter()
                .map(|(key, (label, weight))| Node { key, label, weight })
                .collect(),
            edges,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    Dot,
    GraphMl,
}

impl GraphFormat {
    pub fn extension(self) -> &'static str {
        match self {
            GraphFormat::Dot => "dot",
            GraphFormat::GraphMl => "graphml",
        }
    }
}

impl fmt::Display for GraphFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dot" => Ok(GraphFormat::Dot),
            "graphml" => Ok(GraphFormat::GraphMl),
            _ => Err(Error::UnsupportedFormat(s.to_string())),
        }
    }
}

pub fn export_graph<S: Scalar>(graph: &Graph<S>, format: GraphFormat) -> Vec<u8> {
    match format {
        GraphFormat::Dot => to_dot(graph),
        GraphFormat::GraphMl => to_graphml(graph),
    }
    .into_bytes()
}

pub fn parse_graph<S: Scalar>(bytes: &[u8], format: GraphFormat) -> Result<Graph<S>> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::parse("graph", e))?;
    match format {
        GraphFormat::Dot => from_dot(text),
        GraphFormat::GraphMl => from_graphml(text),
    }
}

fn dot_quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

fn to_dot<S: Scalar>(g: &Graph<S>) -> String {
    let mut out = format!("graph {} {{\n", dot_quote(&g.name));
    for n in &g.nodes {
        out.push_str(&format!(
            "  {} [label={}, weight={}];\n",
            dot_quote(&n.key),
            dot_quote(&n.label),
            n.weight
        ));
    }
    for e in &g.edges {
        out.push_str(&format!(
            "  {} -- {} [weight={}];\n",
            dot_quote(&e.a),
            dot_quote(&e.b),
            e.weight
        ));
    }
    out.push_str("}\n");
    out
}

/// Tokenizer for the DOT subset written by `to_dot`.
struct DotLexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

#[derive(Debug, PartialEq)]
enum Tok {
    Quoted(String),
    Word(String),
    Punct(&'static str),
}

impl<'a> DotLexer<'a> {
    fn next_tok(&mut self) -> Result<Option<Tok>> {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.chars.next();
        }
        let Some(c) = self.chars.next() else {
            return Ok(None);
        };
        let tok = match c {
            '"' => {
                let mut s = String::new();
                loop {
                    match self.chars.next() {
                        Some('"') => break,
                        Some('\\') => match self.chars.next() {
                            Some('n') => s.push('\n'),
                            Some(x) => s.push(x),
                            None => return Err(Error::parse("dot", "unterminated escape")),
                        },
                        Some(x) => s.push(x),
                        None => return Err(Error::parse("dot", "unterminated string")),
                    }
                }
                Tok::Quoted(s)
            }
            '{' => Tok::Punct("{"),
            '}' => Tok::Punct("}"),
            '[' => Tok::Punct("["),
            ']' => Tok::Punct("]"),
            ',' => Tok::Punct(","),
            ';' => Tok::Punct(";"),
            '=' => Tok::Punct("="),
            '-' if self.chars.peek() == Some(&'-') => {
                self.chars.next();
                Tok::Punct("--")
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' || c == '+' => {
                let mut s = c.to_string();
                while let Some(&x) = self.chars.peek() {
                    if x.is_alphanumeric() || x == '_' || x == '.' || x == '-' || x == '+' {
                        s.push(x);
                        self.chars.next();
                    } else {
                        break;
                    }
                }
                Tok::Word(s)
            }
            other => return Err(Error::parse("dot", format!("unexpected character {other:?}"))),
        };
        Ok(Some(tok))
    }
}

fn from_dot<S: Scalar>(text: &str) -> Result<Graph<S>> {
    let mut lex = DotLexer {
        chars: text.chars().peekable(),
    };
    let mut toks = Vec::new();
    while let Some(t) = lex.next_tok()? {
        toks.push(t);
    }
    let err = |m: &str| Error::parse("dot", m);
    let mut it = toks.into_iter().peekable();
    if it.next() != Some(Tok::Word("graph".into())) {
        return Err(err("expected `graph`"));
    }
    let name = match it.next() {
        Some(Tok::Quoted(s)) | Some(Tok::Word(s)) => s,
        _ => return Err(err("expected graph name")),
    };
    if it.next() != Some(Tok::Punct("{")) {
        return Err(err("expected `{`"));
    }
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    loop {
        let first = match it.next() {
            Some(Tok::Punct("}")) => break,
            Some(Tok::Quoted(s)) | Some(Tok::Word(s)) => s,
            _ => return Err(err("expected statement")),
        };
        let second = if it.peek() == Some(&Tok::Punct("--")) {
            it.next();
            match it.next() {
                Some(Tok::Quoted(s)) | Some(Tok::Word(s)) => Some(s),
                _ => return Err(err("expected edge target")),
            }
        } else {
            None
        };
        let mut attrs = BTreeMap::new();
        if it.peek() == Some(&Tok::Punct("[")) {
            it.next();
            loop {
                let k = match it.next() {
                    Some(Tok::Punct("]")) => break,
                    Some(Tok::Punct(",")) => continue,
                    Some(Tok::Word(k)) | Some(Tok::Quoted(k)) => k,
                    _ => return Err(err("expected attribute")),
                };
                if it.next() != Some(Tok::Punct("=")) {
                    return Err(err("expected `=`"));
                }
                let v = match it.next() {
                    Some(Tok::Word(v)) | Some(Tok::Quoted(v)) => v,
                    _ => return Err(err("expected attribute value")),
                };
                attrs.insert(k, v);
            }
        }
        if it.peek() == Some(&Tok::Punct(";")) {
            it.next();
        }
        let weight = match attrs.get("weight") {
            Some(w) => w.parse::<S>().map_err(|_| err("bad weight"))?,
            None => S::one(),
        };
        match second {
            Some(b) => edges.push(Edge { a: first, b, weight }),
            None => {
                let label = attrs.get("label").cloned().unwrap_or_else(|| first.clone());
                nodes.push(Node {
                    key: first,
                    label,
                    weight,
                })
            }
        }
    }
    let edges = edges
        .into_iter()
        .map(|e| {
            let (a, b) = pair(&e.a, &e.b);
            Edge { a, b, weight: e.weight }
        })
        .collect();
    Graph::from_parts(&name, nodes, edges)
}

fn xml(s: &str) -> String {
    quick_xml::escape::escape(s).into_owned()
}

fn to_graphml<S: Scalar>(g: &Graph<S>) -> String {
    let mut out = String::from(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n\
         \x20 <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n\
         \x20 <key id=\"weight\" for=\"node\" attr.name=\"weight\" attr.type=\"double\"/>\n\
         \x20 <key id=\"eweight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n",
    );
    out.push_str(&format!(
        "  <graph id=\"{}\" edgedefault=\"undirected\">\n",
        xml(&g.name)
    ));
    for n in &g.nodes {
        out.push_str(&format!(
            "    <node id=\"{}\">\n      <data key=\"label\">{}</data>\n      <data key=\"weight\">{}</data>\n    </node>\n",
            xml(&n.key),
            xml(&n.label),
            n.weight
        ));
    }
    for e in &g.edges {
        out.push_str(&format!(
            "    <edge source=\"{}\" target=\"{}\">\n      <data key=\"eweight\">{}</data>\n    </edge>\n",
            xml(&e.a),
            xml(&e.b),
            e.weight
        ));
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

fn from_graphml<S: Scalar>(text: &str) -> Result<Graph<S>> {
    use quick_xml::events::Event;
    use quick_xml::Reader;

    let err = |m: String| Error::parse("graphml", m);
    // Text is kept untrimmed: labels may carry edge whitespace.
    let mut reader = Reader::from_str(text);

    let attr = |e: &quick_xml::events::BytesStart, name: &[u8]| -> Result<Option<String>> {
        for a in e.attributes() {
            let a = a.map_err(|e| err(e.to_string()))?;
            if a.key.as_ref() == name {
                return Ok(Some(a.unescape_value().map_err(|e| err(e.to_string()))?.into_owned()));
            }
        }
        Ok(None)
    };

    let mut name = String::new();
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    let mut current: Option<(String, Option<String>, String, Option<String>)> = None;
    let mut data_key: Option<String> = None;
    let mut data_text = String::new();
    loop {
        match reader.read_event().map_err(|e| err(e.to_string()))? {
            Event::Eof => break,
            Event::Start(e) | Event::Empty(e) if e.name().as_ref() == b"graph" => {
                name = attr(&e, b"id")?.unwrap_or_default();
            }
            Event::Start(e) if e.name().as_ref() == b"node" => {
                let id = attr(&e, b"id")?.ok_or_else(|| err("node without id".into()))?;
                current = Some((id, None, String::new(), None));
            }
            Event::Empty(e) if e.name().as_ref() == b"node" => {
                let id = attr(&e, b"id")?.ok_or_else(|| err("node without id".into()))?;
                nodes.push(Node {
                    label: id.clone(),
                    key: id,
                    weight: S::zero(),
                });
            }
            Event::Start(e) if e.name().as_ref() == b"edge" => {
                let s = attr(&e, b"source")?.ok_or_else(|| err("edge without source".into()))?;
                let t = attr(&e, b"target")?.ok_or_else(|| err("edge without target".into()))?;
                current = Some((s, Some(t), String::new(), None));
            }
            Event::Empty(e) if e.name().as_ref() == b"edge" => {
                let s = attr(&e, b"source")?.ok_or_else(|| err("edge without source".into()))?;
                let t = attr(&e, b"target")?.ok_or_else(|| err("edge without target".into()))?;
                let (a, b) = pair(&s, &t);
                edges.push(Edge { a, b, weight: S::one() });
            }
            Event::Start(e) if e.name().as_ref() == b"data" => {
                data_key = attr(&e, b"key")?;
                data_text.clear();
            }
            Event::Text(t) if data_key.is_some() => {
                data_text.push_str(&t.unescape().map_err(|e| err(e.to_string()))?);
            }
            Event::End(e) if e.name().as_ref() == b"data" => {
                let value = std::mem::take(&mut data_text);
                if let (Some(k), Some(cur)) = (data_key.take(), current.as_mut()) {
                    match k.as_str() {
                        "label" => cur.2 = value,
                        "weight" | "eweight" => cur.3 = Some(value.trim().to_string()),
                        _ => {}
                    }
                }
            }
            Event::End(e) if e.name().as_ref() == b"node" || e.name().as_ref() == b"edge" => {
                let (k, target, label, w) = current.take().ok_or_else(|| err("unbalanced element".into()))?;
                let weight = match w {
                    Some(w) => w.parse::<S>().map_err(|_| err(format!("bad weight {w:?}")))?,
                    None => S::one(),
                };
                match target {
                    Some(b) => {
                        let (a, b) = pair(&k, &b);
                        edges.push(Edge { a, b, weight })
                    }
                    None => nodes.push(Node {
                        label: if label.is_empty() { k.clone() } else { label },
                        key: k,
                        weight,
                    }),
                }
            }
            _ => {}
        }
    }
    Graph::from_parts(&name, nodes, edges)
}
