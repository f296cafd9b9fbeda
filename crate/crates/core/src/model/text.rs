//! Line-oriented text format for models.
//!
//! ```text
//! model idtmc            # or: model pts
//! alphabet a b c d
//! state q0 label a init
//! state q1 label b
//! edge q0 q1 [1/8, 8/9]  # idtmc: '[' / ']' closed, '(' / ')' open
//! edge q0 q1 1/4         # pts: bare rational
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::model::{Idtmc, Interval, LabeledGraph, Model, Pts};
use crate::rational::{format_rational, parse_rational, Rational};

fn perr<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        message: message.into(),
    })
}

/// Splits into (1-based line number, tokens) with comments stripped.
pub(crate) fn directives(text: &str) -> Vec<(usize, String)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let line = raw.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then(|| (i + 1, line.to_owned()))
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Pts,
    Idtmc,
}

struct StateDecl {
    name: String,
    label: String,
    init: bool,
    line: usize,
}

pub fn parse_model(text: &str) -> Result<Model> {
    let lines = directives(text);
    let mut kind = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut states: Vec<StateDecl> = Vec::new();
    let mut edges: Vec<(usize, String, String, String)> = Vec::new();

    for (line, content) in &lines {
        let line = *line;
        let mut words = content.split_whitespace();
        match words.next() {
            Some("model") => {
                if kind.is_some() {
                    return perr(line, "duplicate `model` directive");
                }
                kind = Some(match words.next() {
                    Some("pts") => Kind::Pts,
                    Some("idtmc") => Kind::Idtmc,
                    other => return perr(line, format!("unknown model kind {other:?}")),
                });
            }
            Some("alphabet") => {
                if alphabet.is_some() {
                    return perr(line, "duplicate `alphabet` directive");
                }
                let letters: Vec<&str> = words.collect();
                if letters.is_empty() {
                    return perr(line, "empty alphabet");
                }
                alphabet = Some(Alphabet::new(letters));
            }
            Some("state") => {
                let name = match words.next() {
                    Some(n) => n.to_owned(),
                    None => return perr(line, "state without a name"),
                };
                let mut label = None;
                let mut init = false;
                while let Some(w) = words.next() {
                    match w {
                        "label" => match words.next() {
                            Some(l) => label = Some(l.to_owned()),
                            None => return perr(line, "`label` without a letter"),
                        },
                        "init" => init = true,
                        other => return perr(line, format!("unexpected token `{other}`")),
                    }
                }
                let Some(label) = label else {
                    return perr(line, format!("state {name} has no label"));
                };
                states.push(StateDecl {
                    name,
                    label,
                    init,
                    line,
                });
            }
            Some("edge") => {
                let from = words.next();
                let to = words.next();
                let rest: Vec<&str> = words.collect();
                match (from, to) {
                    (Some(f), Some(t)) if !rest.is_empty() => {
                        edges.push((line, f.to_owned(), t.to_owned(), rest.join(" ")))
                    }
                    _ => return perr(line, "expected `edge <from> <to> <weight>`"),
                }
            }
            Some(other) => return perr(line, format!("unknown directive `{other}`")),
            None => {}
        }
    }

    let Some(kind) = kind else {
        return perr(1, "missing `model pts|idtmc` directive");
    };
    let Some(alphabet) = alphabet else {
        return perr(1, "missing `alphabet` directive");
    };

    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut init = None;
    for (i, st) in states.iter().enumerate() {
        if ids.insert(st.name.clone(), i).is_some() {
            return perr(st.line, format!("duplicate state `{}`", st.name));
        }
        if alphabet.index(&st.label).is_none() {
            return perr(
                st.line,
                format!("label `{}` is not in the alphabet {alphabet}", st.label),
            );
        }
        if st.init {
            if init.is_some() {
                return perr(st.line, "more than one initial state");
            }
            init = Some(i);
        }
    }
    let Some(init) = init else {
        return perr(1, "no state is marked `init`");
    };

    let mut seen = HashSet::new();
    let mut resolved = Vec::new();
    for (line, from, to, weight) in edges {
        let (Some(&f), Some(&t)) = (ids.get(&from), ids.get(&to)) else {
            return perr(line, format!("edge {from} -> {to} names an unknown state"));
        };
        if !seen.insert((f, t)) {
            return perr(line, format!("duplicate edge {from} -> {to}"));
        }
        resolved.push((line, f, t, weight));
    }

    match kind {
        Kind::Pts => {
            let mut b = Pts::builder(alphabet);
            for st in &states {
                b.state(st.name.clone(), &st.label);
            }
            for (line, f, t, w) in resolved {
                let Some(p) = parse_rational(&w) else {
                    return perr(line, format!("`{w}` is not a rational"));
                };
                b.edge(f, t, p);
            }
            b.init(init);
            Ok(Model::Pts(b.build()?))
        }
        Kind::Idtmc => {
            let mut b = Idtmc::builder(alphabet);
            for st in &states {
                b.state(st.name.clone(), &st.label);
            }
            for (line, f, t, w) in resolved {
                let iv = parse_interval(&w).map_err(|m| Error::Parse { line, message: m })?;
                b.edge(f, t, iv);
            }
            b.init(init);
            Ok(Model::Idtmc(b.build()?))
        }
    }
}

/// Parses `[lo, hi]` with `(`/`)` marking open ends. The French forms `]lo, hi]`
/// and `[lo, hi[` and `;` as separator are accepted too. A bare rational `p` is
/// read as the point `[p, p]`.
pub fn parse_interval(text: &str) -> std::result::Result<Interval, String> {
    let t = text.trim();
    if let Some(p) = parse_rational(t) {
        return Interval::point(p).map_err(|e| e.to_string());
    }
    let mut chars = t.chars();
    let (Some(open), Some(close)) = (chars.next(), chars.next_back()) else {
        return Err(format!("`{t}` is not an interval"));
    };
    let lo_open = match open {
        '[' => false,
        '(' | ']' => true,
        _ => return Err(format!("`{t}` does not start with `[` or `(`")),
    };
    let hi_open = match close {
        ']' => false,
        ')' | '[' => true,
        _ => return Err(format!("`{t}` does not end with `]` or `)`")),
    };
    let inner: &str = chars.as_str();
    let Some((lo, hi)) = inner.split_once([',', ';']) else {
        return Err(format!("`{t}` lacks a `,` separator"));
    };
    let lo: Rational = parse_rational(lo).ok_or_else(|| format!("bad lower bound `{lo}`"))?;
    let hi: Rational = parse_rational(hi).ok_or_else(|| format!("bad upper bound `{hi}`"))?;
    Interval::new(lo, hi, lo_open, hi_open).map_err(|e| e.to_string())
}

fn header(out: &mut String, kind: &str, g: &dyn LabeledGraph) {
    writeln!(out, "model {kind}").unwrap();
    writeln!(out, "alphabet {}", g.alphabet().names().join(" ")).unwrap();
    for s in 0..g.num_states() {
        write!(
            out,
            "state {} label {}",
            g.state_name(s),
            g.alphabet().name(g.label(s))
        )
        .unwrap();
        if s == g.initial() {
            out.push_str(" init");
        }
        out.push('\n');
    }
}

pub fn write_model(model: &Model) -> String {
    let mut out = String::new();
    match model {
        Model::Pts(p) => {
            header(&mut out, "pts", p);
            for s in 0..p.num_states() {
                for (&t, w) in p.row(s) {
                    writeln!(
                        out,
                        "edge {} {} {}",
                        p.state_name(s),
                        p.state_name(t),
                        format_rational(w)
                    )
                    .unwrap();
                }
            }
        }
        Model::Idtmc(m) => {
            header(&mut out, "idtmc", m);
            for s in 0..m.num_states() {
                for (&t, iv) in m.row(s) {
                    writeln!(out, "edge {} {} {}", m.state_name(s), m.state_name(t), iv).unwrap();
                }
            }
        }
    }
    out
}
