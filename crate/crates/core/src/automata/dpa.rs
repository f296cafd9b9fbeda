use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Letter};
use crate::automata::Lasso;
use crate::error::{Error, Result};
use crate::graph::{is_nontrivial, reachable, tarjan_scc};
use crate::model::text::directives;

pub type Color = u32;

/// A complete deterministic parity automaton with colors on states. A run is
/// accepting iff the least color seen infinitely often is even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dpa {
    alphabet: Alphabet,
    names: Vec<String>,
    init: usize,
    // delta[state][letter]
    delta: Vec<Vec<usize>>,
    colors: Vec<Color>,
}

impl Dpa {
    /// Builds a DPA from a full transition table. State names default to
    /// `d0, d1, ...`.
    pub fn new(
        alphabet: Alphabet,
        init: usize,
        delta: Vec<Vec<usize>>,
        colors: Vec<Color>,
    ) -> Result<Self> {
        let n = delta.len();
        if colors.len() != n {
            return Err(Error::InvalidAutomaton(format!(
                "{} colors for {n} states",
                colors.len()
            )));
        }
        if init >= n {
            return Err(Error::InvalidAutomaton("initial state out of range".into()));
        }
        for (s, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() || row.iter().any(|&t| t >= n) {
                return Err(Error::InvalidAutomaton(format!(
                    "transition row of state {s} is not total"
                )));
            }
        }
        Ok(Dpa {
            alphabet,
            names: (0..n).map(|i| format!("d{i}")).collect(),
            init,
            delta,
            colors,
        })
    }

    /// The one-state automaton with the given color: accepts everything when
    /// the color is even, nothing when odd.
    pub fn constant(alphabet: Alphabet, color: Color) -> Self {
        let k = alphabet.len();
        Dpa::new(alphabet, 0, vec![vec![0; k]], vec![color]).expect("well-formed")
    }

    pub fn universal(alphabet: Alphabet) -> Self {
        Dpa::constant(alphabet, 2)
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Dpa::constant(alphabet, 1)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.init
    }

    pub fn next(&self, state: usize, letter: Letter) -> usize {
        self.delta[state][letter]
    }

    pub fn color(&self, state: usize) -> Color {
        self.colors[state]
    }

    pub fn state_name(&self, state: usize) -> &str {
        &self.names[state]
    }

    pub fn max_color(&self) -> Color {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn graph(&self) -> Vec<Vec<usize>> {
        self.delta
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.sort_unstable();
                r.dedup();
                r
            })
            .collect()
    }

    pub fn run(&self, word: &[Letter]) -> usize {
        word.iter().fold(self.init, |q, &l| self.delta[q][l])
    }

    /// Membership of `u v^ω` by simulation until the state at the start of
    /// the cycle repeats.
    pub fn accepts(&self, word: &Lasso) -> bool {
        let mut q = self.run(word.prefix());
        let mut starts: HashMap<usize, usize> = HashMap::new();
        let mut seen_colors: Vec<Color> = Vec::new();
        loop {
            if let Some(&k) = starts.get(&q) {
                let min = seen_colors[k..]
                    .iter()
                    .copied()
                    .min()
                    .expect("non-empty cycle");
                return min % 2 == 0;
            }
            starts.insert(q, seen_colors.len());
            let mut min = Color::MAX;
            for &l in word.cycle() {
                q = self.delta[q][l];
                min = min.min(self.colors[q]);
            }
            seen_colors.push(min);
        }
    }

    /// Same structure, every color shifted by one.
    pub fn complement(&self) -> Dpa {
        let mut out = self.clone();
        for c in &mut out.colors {
            *c += 1;
        }
        out
    }

    /// States from which some word is accepted: those reaching a cycle whose
    /// least color is even.
    pub fn nonempty_states(&self) -> Vec<bool> {
        let g = self.graph();
        let n = g.len();
        let mut good = vec![false; n];
        let mut colors: Vec<Color> = self.colors.clone();
        colors.sort_unstable();
        colors.dedup();
        for &c in colors.iter().filter(|&&c| c % 2 == 0) {
            // Subgraph on states with color >= c.
            let sub: Vec<Vec<usize>> = (0..n)
                .map(|s| {
                    if self.colors[s] < c {
                        Vec::new()
                    } else {
                        g[s].iter()
                            .copied()
                            .filter(|&t| self.colors[t] >= c)
                            .collect()
                    }
                })
                .collect();
            for comp in tarjan_scc(&sub) {
                if self.colors[comp[0]] >= c
                    && is_nontrivial(&sub, &comp)
                    && comp.iter().any(|&s| self.colors[s] == c)
                {
                    for &s in &comp {
                        good[s] = true;
                    }
                }
            }
        }
        crate::graph::can_reach(&g, &good)
    }

    pub fn is_empty(&self) -> bool {
        !self.nonempty_states()[self.init]
    }

    /// Restricts to reachable states, sends every empty-language state to a
    /// single rejecting sink, and merges states by Moore refinement on
    /// (color, successor classes). Language-preserving.
    pub fn minimize(&self) -> Dpa {
        let n = self.num_states();
        let k = self.alphabet.len();
        let live = self.nonempty_states();
        let reach = reachable(&self.graph(), [self.init]);
        let dead_color = 1;
        let colors: Vec<Color> = (0..n)
            .map(|s| if live[s] { self.colors[s] } else { dead_color })
            .collect();
        let delta: Vec<Vec<usize>> = (0..n)
            .map(|s| {
                if live[s] {
                    self.delta[s].clone()
                } else {
                    vec![s; k]
                }
            })
            .collect();
        // Moore refinement.
        let mut class: Vec<usize> = {
            let mut ids: BTreeMap<(bool, Color), usize> = BTreeMap::new();
            (0..n)
                .map(|s| {
                    let key = (live[s], colors[s]);
                    let next = ids.len();
                    *ids.entry(key).or_insert(next)
                })
                .collect()
        };
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let refined: Vec<usize> = (0..n)
                .map(|s| {
                    let key = (class[s], delta[s].iter().map(|&t| class[t]).collect());
                    let next = ids.len();
                    *ids.entry(key).or_insert(next)
                })
                .collect();
            let stable = ids.len() == class.iter().collect::<std::collections::HashSet<_>>().len();
            class = refined;
            if stable {
                break;
            }
        }
        // Number the classes of reachable states in BFS order from init.
        let mut num: HashMap<usize, usize> = HashMap::new();
        let mut order = Vec::new();
        let mut queue = std::collections::VecDeque::from([self.init]);
        num.insert(class[self.init], 0);
        order.push(self.init);
        while let Some(s) = queue.pop_front() {
            for &t in &delta[s] {
                if let std::collections::hash_map::Entry::Vacant(e) = num.entry(class[t]) {
                    e.insert(order.len());
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        debug_assert!(order.iter().all(|&s| reach[s]));
        let new_delta = order
            .iter()
            .map(|&s| delta[s].iter().map(|&t| num[&class[t]]).collect())
            .collect();
        let new_colors = order.iter().map(|&s| colors[s]).collect();
        Dpa::new(self.alphabet.clone(), 0, new_delta, new_colors).expect("quotient is total")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Dpa> {
        if names.len() != self.num_states() {
            return Err(Error::InvalidAutomaton(
                "wrong number of state names".into(),
            ));
        }
        self.names = names;
        Ok(self)
    }
}

/// Parses the DPA text format:
///
/// ```text
/// dpa
/// alphabet a b c d
/// state d0 color 1 init
/// trans d0 a d1
/// ```
pub fn parse_dpa(text: &str) -> Result<Dpa> {
    let perr = |line: usize, message: String| Error::Parse { line, message };
    let mut header = false;
    let mut alphabet: Option<Alphabet> = None;
    let mut states: Vec<(usize, String, Color, bool)> = Vec::new();
    let mut trans: Vec<(usize, String, String, String)> = Vec::new();
    for (line, content) in directives(text) {
        let words: Vec<&str> = content.split_whitespace().collect();
        match words.as_slice() {
            ["dpa"] => {
                if header {
                    return Err(perr(line, "duplicate `dpa` directive".into()));
                }
                header = true;
            }
            ["alphabet", letters @ ..] => {
                if alphabet.is_some() {
                    return Err(perr(line, "duplicate `alphabet` directive".into()));
                }
                if letters.is_empty() {
                    return Err(perr(line, "empty alphabet".into()));
                }
                alphabet = Some(Alphabet::new(letters.iter().copied()));
            }
            ["state", name, "color", c, rest @ ..] => {
                let color: Color = c
                    .parse()
                    .map_err(|_| perr(line, format!("`{c}` is not a color")))?;
                let init = match rest {
                    [] => false,
                    ["init"] => true,
                    _ => return Err(perr(line, format!("unexpected tokens {rest:?}"))),
                };
                states.push((line, name.to_string(), color, init));
            }
            ["trans", from, letter, to] => {
                trans.push((line, from.to_string(), letter.to_string(), to.to_string()))
            }
            _ => return Err(perr(line, format!("cannot parse `{content}`"))),
        }
    }
    if !header {
        return Err(perr(1, "missing `dpa` directive".into()));
    }
    let alphabet = alphabet.ok_or_else(|| perr(1, "missing `alphabet` directive".into()))?;
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut init = None;
    for (i, (line, name, _, is_init)) in states.iter().enumerate() {
        if ids.insert(name.clone(), i).is_some() {
            return Err(perr(*line, format!("duplicate state `{name}`")));
        }
        if *is_init {
            if init.is_some() {
                return Err(perr(*line, "more than one initial state".into()));
            }
            init = Some(i);
        }
    }
    let init = init.ok_or_else(|| perr(1, "no state is marked `init`".into()))?;
    let n = states.len();
    let mut delta = vec![vec![usize::MAX; alphabet.len()]; n];
    for (line, from, letter, to) in &trans {
        let f = *ids
            .get(from)
            .ok_or_else(|| perr(*line, format!("unknown state `{from}`")))?;
        let t = *ids
            .get(to)
            .ok_or_else(|| perr(*line, format!("unknown state `{to}`")))?;
        let l = alphabet
            .index(letter)
            .ok_or_else(|| perr(*line, format!("letter `{letter}` is not in the alphabet")))?;
        if delta[f][l] != usize::MAX {
            return Err(perr(
                *line,
                format!("second transition for ({from}, {letter})"),
            ));
        }
        delta[f][l] = t;
    }
    for (s, row) in delta.iter().enumerate() {
        if let Some(l) = row.iter().position(|&t| t == usize::MAX) {
            return Err(perr(
                states[s].0,
                format!(
                    "state `{}` has no transition on `{}`",
                    states[s].1,
                    alphabet.name(l)
                ),
            ));
        }
    }
    let colors = states.iter().map(|s| s.2).collect();
    let names = states.into_iter().map(|s| s.1).collect();
    Dpa::new(alphabet, init, delta, colors)?.with_names(names)
}

pub fn write_dpa(dpa: &Dpa) -> String {
    let mut out = String::from("dpa\n");
    writeln!(out, "alphabet {}", dpa.alphabet.names().join(" ")).unwrap();
    for s in 0..dpa.num_states() {
        write!(out, "state {} color {}", dpa.names[s], dpa.colors[s]).unwrap();
        if s == dpa.init {
            out.push_str(" init");
        }
        out.push('\n');
    }
    for s in 0..dpa.num_states() {
        for l in dpa.alphabet.letters() {
            writeln!(
                out,
                "trans {} {} {}",
                dpa.names[s],
                dpa.alphabet.name(l),
                dpa.names[dpa.delta[s][l]]
            )
            .unwrap();
        }
    }
    out
}
