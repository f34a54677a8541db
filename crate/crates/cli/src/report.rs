//! Query reports, rendered as text lines or a JSON object.

use serde_json::{Map, Value};

use fdfa::algebra::{Decision, PairWitness};
use fdfa::saturation::{SaturationReport, SaturationVerdict};
use fdfa::{Alphabet, UpWord};

/// A report: ordered `key: value` entries.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.entries.push((key.to_string(), value.into()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.entries.push((key.to_string(), value.into()));
    }

    pub fn into_entries(self) -> Vec<(String, serde_json::Value)> {
        self.entries
    }

    pub fn to_json(&self) -> String {
        let map: Map<String, Value> = self.entries.iter().cloned().collect();
        let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {v}\n"));
        }
        out
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.to_json()
        } else {
            self.to_text()
        }
    }
}

pub fn pair(alphabet: &Alphabet, u: &[usize], v: &[usize]) -> String {
    format!("({}, {})", alphabet.format_word(u), alphabet.format_word(v))
}

pub fn up_word(alphabet: &Alphabet, w: &UpWord) -> String {
    pair(alphabet, w.prefix(), w.period())
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn witness(alphabet: &Alphabet, w: &PairWitness) -> String {
    pair(alphabet, &w.x, &w.y)
}

/// `answer`, then the witness under `witness_key` when present.
pub fn decision(alphabet: &Alphabet, d: &Decision, witness_key: &str) -> Report {
    let mut r = Report::new().with("answer", yes_no(d.holds));
    if let Some(w) = &d.witness {
        r.push(witness_key, witness(alphabet, w));
    }
    if d.requires_saturated_inputs {
        r.push("note", "meaningful for saturated inputs only");
    }
    r
}

pub fn saturation(alphabet: &Alphabet, s: &SaturationReport) -> Report {
    let verdict = match s.verdict {
        SaturationVerdict::SaturatedUpToBound => "saturated up to bound",
        SaturationVerdict::SaturatedExact => "saturated",
        SaturationVerdict::Unsaturated => "unsaturated",
    };
    let mut r = Report::new()
        .with("answer", yes_no(s.verdict != SaturationVerdict::Unsaturated))
        .with("verdict", verdict)
        .with("bound", s.bound_used.clone());
    if let Some(c) = &s.counterexample {
        r.push("first", up_word(alphabet, &c.first));
        r.push("first_accepted", c.first_accepted);
        r.push("second", up_word(alphabet, &c.second));
        r.push("second_accepted", c.second_accepted);
    }
    if let Some(t) = &s.transform {
        r.push("q", t.q);
        r.push("q_prime", t.q_prime);
        r.push("u", alphabet.format_word(&t.u));
        r.push("v1", alphabet.format_word(&t.v1));
        r.push("v2", alphabet.format_word(&t.v2));
        r.push("l", t.l);
        r.push("r", t.r);
    }
    r
}
