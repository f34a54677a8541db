//! The on-disk document format.
//!
//! A document is a JSON object with a `kind` (`fdfa`, `dfa`, `dba`, `dca`,
//! `dpa` or `nba`) and an `alphabet` (list of symbol names). Automata carry
//! `states` (count), `initial` and `transitions`, a list of
//! `[from, symbol, to, ...]` entries; the acceptance field depends on the
//! kind (`accepting`, `buchi`, `co_buchi`, `colors`). An FDFA nests a
//! `leading` automaton and a `progress` list, one DFA per leading state.
//!
//! Serialization is canonical: fixed field order, transitions sorted by
//! source state and symbol, one transition per line.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use serde_json::{Map, Value};
use thiserror::Error;

use fdfa::fdfa::{validate, Diagnostic, FdfaParts, ProgressParts};
use fdfa::translate::{Dba, Dca, Dpa, Nba};
use fdfa::{Alphabet, Automaton, DetAutomaton, Dfa, Fdfa, State};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("{}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))]
    Invariant(Vec<Diagnostic>),
}

type Result<T> = std::result::Result<T, DocError>;

fn field_err(path: &str, message: impl Into<String>) -> DocError {
    DocError::Field {
        path: path.to_string(),
        message: message.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Fdfa,
    Dfa,
    Dba,
    Dca,
    Dpa,
    Nba,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Fdfa => "fdfa",
            Kind::Dfa => "dfa",
            Kind::Dba => "dba",
            Kind::Dca => "dca",
            Kind::Dpa => "dpa",
            Kind::Nba => "nba",
        }
    }

    fn parse(name: &str) -> Option<Kind> {
        [Kind::Fdfa, Kind::Dfa, Kind::Dba, Kind::Dca, Kind::Dpa, Kind::Nba]
            .into_iter()
            .find(|k| k.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Fdfa(Fdfa),
    Dfa(Dfa),
    Dba(Dba),
    Dca(Dca),
    Dpa(Dpa),
    Nba(Nba),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Fdfa(_) => Kind::Fdfa,
            Document::Dfa(_) => Kind::Dfa,
            Document::Dba(_) => Kind::Dba,
            Document::Dca(_) => Kind::Dca,
            Document::Dpa(_) => Kind::Dpa,
            Document::Nba(_) => Kind::Nba,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Document::Fdfa(f) => f.alphabet(),
            Document::Dfa(d) => d.alphabet(),
            Document::Dba(d) => d.automaton.alphabet(),
            Document::Dca(d) => d.automaton.alphabet(),
            Document::Dpa(d) => d.automaton.alphabet(),
            Document::Nba(b) => b.automaton.alphabet(),
        }
    }
}

/// Reads a document from `path`, or from stdin when `path` is `None` or `-`.
pub fn read(path: Option<&Path>) -> Result<Document> {
    parse(&read_text(path)?)
}

/// Raw text of `path`, or of stdin when `path` is `None` or `-`.
pub fn read_text(path: Option<&Path>) -> Result<String> {
    match path.filter(|p| p.as_os_str() != "-") {
        Some(p) => std::fs::read_to_string(p).map_err(|e| DocError::Io {
            path: p.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| DocError::Io {
                    path: "<stdin>".into(),
                    message: e.to_string(),
                })?;
            Ok(text)
        }
    }
}

pub fn parse(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(|e| DocError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    let obj = as_object(&value, "")?;
    let kind_name = as_str(get(obj, "", "kind")?, "kind")?;
    let kind = Kind::parse(kind_name).ok_or_else(|| {
        field_err(
            "kind",
            format!("unknown kind `{kind_name}`; expected one of fdfa, dfa, dba, dca, dpa, nba"),
        )
    })?;
    let alphabet = parse_alphabet(get(obj, "", "alphabet")?)?;
    match kind {
        Kind::Fdfa => {
            allow_fields(obj, "", &["kind", "alphabet", "leading", "progress"])?;
            parse_fdfa(obj, &alphabet).map(Document::Fdfa)
        }
        Kind::Dfa => {
            let a = det_body(obj, "", &alphabet, "accepting")?;
            let acc = state_set(obj, "", "accepting", a.state_count())?;
            Ok(Document::Dfa(Dfa::new(a, acc).map_err(|e| field_err("accepting", e.to_string()))?))
        }
        Kind::Dba => {
            let a = det_body(obj, "", &alphabet, "buchi")?;
            let acc = state_set(obj, "", "buchi", a.state_count())?;
            Ok(Document::Dba(Dba::new(a, acc).map_err(|e| field_err("buchi", e.to_string()))?))
        }
        Kind::Dca => {
            let a = det_body(obj, "", &alphabet, "co_buchi")?;
            let rej = state_set(obj, "", "co_buchi", a.state_count())?;
            Ok(Document::Dca(Dca::new(a, rej).map_err(|e| field_err("co_buchi", e.to_string()))?))
        }
        Kind::Dpa => {
            let a = det_body(obj, "", &alphabet, "colors")?;
            let colors = parse_colors(get(obj, "", "colors")?, a.state_count())?;
            Ok(Document::Dpa(Dpa::new(a, colors).map_err(|e| field_err("colors", e.to_string()))?))
        }
        Kind::Nba => {
            allow_fields(obj, "", &["kind", "alphabet", "states", "initial", "transitions", "buchi"])?;
            let a = automaton_body(obj, "", &alphabet)?;
            let acc = state_set(obj, "", "buchi", a.state_count())?;
            Nba::new(a, acc)
                .map(Document::Nba)
                .map_err(|e| field_err("transitions", e.to_string()))
        }
    }
}

/// serde_json appends " at line L column C"; the location is reported separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn join(prefix: &str, name: &str) -> String {
    if prefix.is_empty() {
        name.to_string()
    } else {
        format!("{prefix}.{name}")
    }
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| {
        field_err(if path.is_empty() { "<root>" } else { path }, "expected an object")
    })
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| field_err(path, "expected a string"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| field_err(path, "expected a non-negative integer"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| field_err(path, "expected a list"))
}

fn get<'a>(obj: &'a Map<String, Value>, prefix: &str, name: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| field_err(&join(prefix, name), "missing field"))
}

fn allow_fields(obj: &Map<String, Value>, prefix: &str, allowed: &[&str]) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(field_err(&join(prefix, k), "unknown field")),
        None => Ok(()),
    }
}

fn parse_alphabet(v: &Value) -> Result<Alphabet> {
    let names = as_array(v, "alphabet")?
        .iter()
        .enumerate()
        .map(|(i, s)| as_str(s, &format!("alphabet[{i}]")).map(str::to_string))
        .collect::<Result<Vec<_>>>()?;
    Alphabet::new(names).map_err(|e| field_err("alphabet", e.to_string()))
}

fn state_index(v: &Value, path: &str, states: usize) -> Result<State> {
    let q = as_usize(v, path)?;
    if q >= states {
        return Err(field_err(path, format!("state {q} out of range ({states} states)")));
    }
    Ok(q)
}

/// `states`, `initial` and `transitions` of a possibly nondeterministic
/// automaton.
fn automaton_body(obj: &Map<String, Value>, prefix: &str, alphabet: &Alphabet) -> Result<Automaton> {
    let states = as_usize(get(obj, prefix, "states")?, &join(prefix, "states"))?;
    if states == 0 {
        return Err(field_err(&join(prefix, "states"), "an automaton needs at least one state"));
    }
    let initial = state_index(get(obj, prefix, "initial")?, &join(prefix, "initial"), states)?;
    let mut a = Automaton::new(alphabet.clone(), states, initial)
        .map_err(|e| field_err(prefix, e.to_string()))?;
    let tpath = join(prefix, "transitions");
    for (i, t) in as_array(get(obj, prefix, "transitions")?, &tpath)?.iter().enumerate() {
        let path = format!("{tpath}[{i}]");
        let parts = as_array(t, &path)?;
        if parts.len() < 3 {
            return Err(field_err(&path, "expected [from, symbol, to, ...]"));
        }
        let from = state_index(&parts[0], &format!("{path}[0]"), states)?;
        let sym_path = format!("{path}[1]");
        let name = as_str(&parts[1], &sym_path)?;
        let sym = alphabet
            .index_of(name)
            .map_err(|e| field_err(&sym_path, e.to_string()))?;
        for (k, to) in parts[2..].iter().enumerate() {
            let to = state_index(to, &format!("{path}[{}]", k + 2), states)?;
            a.add_transition(from, sym, to)
                .map_err(|e| field_err(&path, e.to_string()))?;
        }
    }
    Ok(a)
}

fn det_body(obj: &Map<String, Value>, prefix: &str, alphabet: &Alphabet, acceptance: &str) -> Result<DetAutomaton> {
    allow_fields(obj, prefix, &["kind", "alphabet", "states", "initial", "transitions", acceptance])?;
    automaton_body(obj, prefix, alphabet)?
        .to_deterministic()
        .map_err(|e| field_err(&join(prefix, "transitions"), e.to_string()))
}

fn state_set(obj: &Map<String, Value>, prefix: &str, name: &str, states: usize) -> Result<BTreeSet<State>> {
    let path = join(prefix, name);
    as_array(get(obj, prefix, name)?, &path)?
        .iter()
        .enumerate()
        .map(|(i, q)| state_index(q, &format!("{path}[{i}]"), states))
        .collect()
}

fn parse_colors(v: &Value, states: usize) -> Result<Vec<u32>> {
    let colors = as_array(v, "colors")?;
    if colors.len() != states {
        return Err(field_err(
            "colors",
            format!("expected one color per state ({states}), found {}", colors.len()),
        ));
    }
    colors
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let path = format!("colors[{i}]");
            match as_usize(c, &path)? {
                0 => Err(field_err(&path, "colors start at 1")),
                c => u32::try_from(c).map_err(|_| field_err(&path, "color too large")),
            }
        })
        .collect()
}

fn parse_fdfa(obj: &Map<String, Value>, alphabet: &Alphabet) -> Result<Fdfa> {
    let lead_obj = as_object(get(obj, "", "leading")?, "leading")?;
    allow_fields(lead_obj, "leading", &["states", "initial", "transitions"])?;
    let leading = automaton_body(lead_obj, "leading", alphabet)?;
    let progress = as_array(get(obj, "", "progress")?, "progress")?
        .iter()
        .enumerate()
        .map(|(q, p)| {
            let path = format!("progress[{q}]");
            let p = as_object(p, &path)?;
            allow_fields(p, &path, &["states", "initial", "transitions", "accepting"])?;
            let automaton = automaton_body(p, &path, alphabet)?;
            let accepting = state_set(p, &path, "accepting", automaton.state_count())?;
            Ok(ProgressParts { automaton, accepting })
        })
        .collect::<Result<Vec<_>>>()?;
    let parts = FdfaParts { leading, progress };
    let diagnostics = validate(&parts);
    if !diagnostics.is_empty() {
        return Err(DocError::Invariant(diagnostics));
    }
    Fdfa::from_parts(&parts).map_err(|e| field_err("<root>", e.to_string()))
}

/// Parses and validates, returning every invariant diagnostic instead of
/// failing on the first one. Syntax and field errors are still returned as
/// errors.
pub fn diagnose(text: &str) -> Result<Vec<Diagnostic>> {
    match parse(text) {
        Ok(_) => Ok(Vec::new()),
        Err(DocError::Invariant(d)) => Ok(d),
        Err(DocError::Field { path, message }) if message_is_invariant(&message) => {
            Ok(vec![Diagnostic { location: path, message }])
        }
        Err(e) => Err(e),
    }
}

fn message_is_invariant(message: &str) -> bool {
    message.contains("not deterministic") || message.contains("not complete")
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn write_alphabet(out: &mut String, alphabet: &Alphabet) {
    let names: Vec<String> = alphabet.symbols().iter().map(|s| quote(s)).collect();
    let _ = writeln!(out, "  \"alphabet\": [{}],", names.join(", "));
}

fn list<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let items: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(", "))
}

/// Writes `states`, `initial` and `transitions` at `indent`, followed by a
/// comma when `more` is set.
fn write_body(out: &mut String, indent: &str, a: &Automaton, more: bool) {
    let _ = writeln!(out, "{indent}\"states\": {},", a.state_count());
    let _ = writeln!(out, "{indent}\"initial\": {},", a.initial());
    let mut rows = Vec::new();
    for q in 0..a.state_count() {
        for sym in 0..a.alphabet().len() {
            let succ = a.successors(q, sym);
            if !succ.is_empty() {
                rows.push(format!(
                    "{indent}  [{q}, {}, {}]",
                    quote(a.alphabet().name(sym)),
                    succ.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                ));
            }
        }
    }
    if rows.is_empty() {
        let _ = write!(out, "{indent}\"transitions\": []");
    } else {
        let _ = write!(out, "{indent}\"transitions\": [\n{}\n{indent}]", rows.join(",\n"));
    }
    out.push_str(if more { ",\n" } else { "\n" });
}

/// Canonical text of a document.
pub fn serialize(doc: &Document) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"kind\": {},", quote(doc.kind().name()));
    write_alphabet(&mut out, doc.alphabet());
    match doc {
        Document::Fdfa(f) => {
            out.push_str("  \"leading\": {\n");
            write_body(&mut out, "    ", &f.leading().to_automaton(), false);
            out.push_str("  },\n  \"progress\": [\n");
            let n = f.progress_dfas().len();
            for (q, p) in f.progress_dfas().iter().enumerate() {
                out.push_str("    {\n");
                write_body(&mut out, "      ", &p.automaton().to_automaton(), true);
                let _ = writeln!(out, "      \"accepting\": {}", list(p.accepting_states()));
                out.push_str(if q + 1 < n { "    },\n" } else { "    }\n" });
            }
            out.push_str("  ]\n");
        }
        Document::Dfa(d) => {
            write_body(&mut out, "  ", &d.automaton().to_automaton(), true);
            let _ = writeln!(out, "  \"accepting\": {}", list(d.accepting_states()));
        }
        Document::Dba(d) => {
            write_body(&mut out, "  ", &d.automaton.to_automaton(), true);
            let _ = writeln!(out, "  \"buchi\": {}", list(&d.accepting));
        }
        Document::Dca(d) => {
            write_body(&mut out, "  ", &d.automaton.to_automaton(), true);
            let _ = writeln!(out, "  \"co_buchi\": {}", list(&d.rejecting));
        }
        Document::Dpa(d) => {
            write_body(&mut out, "  ", &d.automaton.to_automaton(), true);
            let _ = writeln!(out, "  \"colors\": {}", list(&d.colors));
        }
        Document::Nba(b) => {
            write_body(&mut out, "  ", &b.automaton, true);
            let _ = writeln!(out, "  \"buchi\": {}", list(&b.accepting));
        }
    }
    out.push_str("}\n");
    out
}
