//! Witness types for satisfaction and simulation, their clause-by-clause
//! validators, and a re-loadable text format.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{lp_feasible, LinearProblem, Relation};
use crate::model::text::directives;
use crate::model::{polytope_vertices, Distribution, Idtmc, Interval, LabeledGraph, Pts};
use crate::rational::{format_rational, one, parse_rational, Rational};

pub type Pair = (usize, usize);

/// Certificate that a PTS satisfies an IDTMC: a relation and, for each related
/// pair `(q, s)`, a joint distribution over (PTS state, IDTMC state) pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SatWitness {
    pub relation: BTreeSet<Pair>,
    pub joint: BTreeMap<Pair, BTreeMap<Pair, Rational>>,
}

/// Certificate that `s2` simulates `s1`. For each related pair, `delta` maps
/// every successor `s1'` that some distribution of `T1(s1)` can reach to a
/// distribution over the states of `s2`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimWitness {
    pub relation: BTreeSet<Pair>,
    pub delta: BTreeMap<Pair, BTreeMap<usize, Distribution>>,
}

/// Successors of `s` that carry positive mass at some vertex of the closed
/// polytope, i.e. those some valid distribution can reach.
pub(crate) fn carrying_successors(spec: &Idtmc, s: usize) -> Result<Vec<usize>> {
    let vertices = polytope_vertices(spec, s)?;
    let mut out = BTreeSet::new();
    for v in &vertices {
        out.extend(v.support());
    }
    Ok(out.into_iter().collect())
}

fn name_pair(g1: &dyn LabeledGraph, g2: &dyn LabeledGraph, (a, b): Pair) -> String {
    format!("({}, {})", g1.state_name(a), g2.state_name(b))
}

/// Checks the satisfaction clauses: matching labels, initial pair, row
/// marginals equal to `Δ(q)`, column marginals inside `T(s)` (open ends
/// respected) and support inside the relation.
pub fn validate_sat_witness(pts: &Pts, spec: &Idtmc, w: &SatWitness) -> Result<(), String> {
    if !w.relation.contains(&(pts.initial(), spec.initial())) {
        return Err("initial pair is not related".into());
    }
    for &(q, s) in &w.relation {
        let here = name_pair(pts, spec, (q, s));
        if q >= pts.num_states() || s >= spec.num_states() {
            return Err(format!("pair {q},{s} is out of range"));
        }
        if pts.label(q) != spec.label(s) {
            return Err(format!("{here}: labels differ"));
        }
        let joint = w
            .joint
            .get(&(q, s))
            .ok_or_else(|| format!("{here}: no joint distribution"))?;
        let mut rows: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut cols: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&(q2, s2), p) in joint {
            if p.is_negative() {
                return Err(format!("{here}: negative mass"));
            }
            if p.is_zero() {
                continue;
            }
            if !w.relation.contains(&(q2, s2)) {
                return Err(format!(
                    "{here}: mass on unrelated pair {}",
                    name_pair(pts, spec, (q2, s2))
                ));
            }
            *rows.entry(q2).or_insert_with(Rational::zero) += p;
            *cols.entry(s2).or_insert_with(Rational::zero) += p;
        }
        let succ: BTreeSet<usize> = pts.row(q).keys().chain(rows.keys()).copied().collect();
        for t in succ {
            let got = rows.get(&t).cloned().unwrap_or_else(Rational::zero);
            if got != pts.prob(q, t) {
                return Err(format!(
                    "{here}: row marginal at {} is {} instead of {}",
                    pts.state_name(t),
                    format_rational(&got),
                    format_rational(&pts.prob(q, t))
                ));
            }
        }
        let targets: BTreeSet<usize> = spec.row(s).keys().chain(cols.keys()).copied().collect();
        for t in targets {
            let got = cols.get(&t).cloned().unwrap_or_else(Rational::zero);
            let iv = spec.interval(s, t);
            if !iv.contains(&got) {
                return Err(format!(
                    "{here}: column marginal at {} is {}, outside {iv}",
                    spec.state_name(t),
                    format_rational(&got)
                ));
            }
        }
    }
    Ok(())
}

/// Whether some `f` in the (open-flag respecting) polytope of `s` makes
/// `Σ coeff·f` reach `bound` from the wrong side (`>=` when `upper`).
fn bound_touched(
    spec: &Idtmc,
    s: usize,
    coeffs: &BTreeMap<usize, Rational>,
    bound: &Rational,
    upper: bool,
) -> bool {
    let succ: Vec<usize> = spec.row(s).keys().copied().collect();
    let mut lp = LinearProblem::new(succ.len());
    for (i, &t) in succ.iter().enumerate() {
        add_interval(&mut lp, vec![(i, one())], &spec.interval(s, t), true);
    }
    lp.add(
        (0..succ.len()).map(|i| (i, one())).collect(),
        Relation::Eq,
        one(),
    );
    let image: Vec<(usize, Rational)> = succ
        .iter()
        .enumerate()
        .filter_map(|(i, t)| coeffs.get(t).map(|c| (i, c.clone())))
        .collect();
    let rel = if upper { Relation::Ge } else { Relation::Le };
    lp.add(image, rel, bound.clone());
    lp_feasible(&lp).is_some()
}

/// Adds `lo ≤ expr ≤ hi` with strict sides where the interval is open and
/// `strict` is set.
pub(crate) fn add_interval(
    lp: &mut LinearProblem,
    expr: Vec<(usize, Rational)>,
    iv: &Interval,
    strict: bool,
) {
    let lo_rel = if strict && iv.lo_open() {
        Relation::Gt
    } else {
        Relation::Ge
    };
    let hi_rel = if strict && iv.hi_open() {
        Relation::Lt
    } else {
        Relation::Le
    };
    if iv.is_point() {
        lp.add(expr, Relation::Eq, iv.lo().clone());
        return;
    }
    if !iv.lo().is_zero() || lo_rel == Relation::Gt {
        lp.add(expr.clone(), lo_rel, iv.lo().clone());
    }
    lp.add(expr, hi_rel, iv.hi().clone());
}

/// Checks the image condition for one pair: for every `f ∈ T1(s1)` and every
/// `s2'`, `Σ f(s1')·δ(s1')(s2') ∈ T2(s2)(s2')`. The closed part is decided on
/// the vertices of the closure; an image reaching an open end at some vertex
/// is accepted only if no valid `f` actually attains it.
pub(crate) fn check_image(
    s1: &Idtmc,
    s2: &Idtmc,
    (a, b): Pair,
    rows: &BTreeMap<usize, Distribution>,
) -> Result<(), String> {
    let here = name_pair(s1, s2, (a, b));
    let vertices = polytope_vertices(s1, a).map_err(|e| e.to_string())?;
    let mut columns: BTreeSet<usize> = s2.row(b).keys().copied().collect();
    for d in rows.values() {
        columns.extend(d.support());
    }
    for t in columns {
        let coeffs: BTreeMap<usize, Rational> = rows
            .iter()
            .map(|(&u, d)| (u, d.get(t)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        let iv = s2.interval(b, t);
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for v in &vertices {
            let mut g = Rational::zero();
            for (u, p) in v.iter() {
                match rows.get(&u) {
                    Some(d) => g += p * d.get(t),
                    None => return Err(format!("{here}: no row for {}", s1.state_name(u))),
                }
            }
            if lo.as_ref().is_none_or(|x| &g < x) {
                lo = Some(g.clone());
            }
            if hi.as_ref().is_none_or(|x| &g > x) {
                hi = Some(g);
            }
        }
        let (lo, hi) = (lo.expect("vertices"), hi.expect("vertices"));
        let closed = iv.closure();
        let outside = !closed.contains(&lo)
            || !closed.contains(&hi)
            || (iv.lo_open() && &lo == iv.lo() && bound_touched(s1, a, &coeffs, iv.lo(), false))
            || (iv.hi_open() && &hi == iv.hi() && bound_touched(s1, a, &coeffs, iv.hi(), true));
        if outside {
            return Err(format!(
                "{here}: image at {} ranges over [{}, {}], not inside {iv}",
                s2.state_name(t),
                format_rational(&lo),
                format_rational(&hi)
            ));
        }
    }
    Ok(())
}

/// Checks the simulation clauses: matching labels, initial pair, a
/// distribution for every reachable successor with support inside the
/// relation, and the image condition for every distribution of `T1(s1)`.
pub fn validate_sim_witness(s1: &Idtmc, s2: &Idtmc, w: &SimWitness) -> Result<(), String> {
    if !w.relation.contains(&(s1.initial(), s2.initial())) {
        return Err("initial pair is not related".into());
    }
    for &(a, b) in &w.relation {
        if a >= s1.num_states() || b >= s2.num_states() {
            return Err(format!("pair {a},{b} is out of range"));
        }
        let here = name_pair(s1, s2, (a, b));
        if s1.label(a) != s2.label(b) {
            return Err(format!("{here}: labels differ"));
        }
        let rows = w
            .delta
            .get(&(a, b))
            .ok_or_else(|| format!("{here}: no delta"))?;
        for u in carrying_successors(s1, a).map_err(|e| e.to_string())? {
            let d = rows
                .get(&u)
                .ok_or_else(|| format!("{here}: no row for {}", s1.state_name(u)))?;
            if let Some(t) = d.support().find(|&t| !w.relation.contains(&(u, t))) {
                return Err(format!(
                    "{here}: row {} puts mass on unrelated {}",
                    s1.state_name(u),
                    s2.state_name(t)
                ));
            }
        }
        let used: BTreeMap<usize, Distribution> = rows
            .iter()
            .filter(|(u, _)| s1.row(a).contains_key(u))
            .map(|(&u, d)| (u, d.clone()))
            .collect();
        check_image(s1, s2, (a, b), &used)?;
    }
    Ok(())
}

pub fn write_sat_witness(pts: &Pts, spec: &Idtmc, w: &SatWitness) -> String {
    let mut out = String::from("sat-witness\n");
    for &(q, s) in &w.relation {
        writeln!(out, "pair {} {}", pts.state_name(q), spec.state_name(s)).unwrap();
    }
    for (&(q, s), joint) in &w.joint {
        for (&(q2, s2), p) in joint {
            writeln!(
                out,
                "joint {} {} {} {} {}",
                pts.state_name(q),
                spec.state_name(s),
                pts.state_name(q2),
                spec.state_name(s2),
                format_rational(p)
            )
            .unwrap();
        }
    }
    out
}

pub fn write_sim_witness(s1: &dyn LabeledGraph, s2: &dyn LabeledGraph, w: &SimWitness) -> String {
    let mut out = String::from("sim-witness\n");
    for &(a, b) in &w.relation {
        writeln!(out, "pair {} {}", s1.state_name(a), s2.state_name(b)).unwrap();
    }
    for (&(a, b), rows) in &w.delta {
        for (&u, d) in rows {
            for (t, p) in d.iter() {
                writeln!(
                    out,
                    "delta {} {} {} {} {}",
                    s1.state_name(a),
                    s2.state_name(b),
                    s1.state_name(u),
                    s2.state_name(t),
                    format_rational(p)
                )
                .unwrap();
            }
        }
    }
    out
}

struct Names(HashMap<String, usize>);

impl Names {
    fn of(g: &dyn LabeledGraph) -> Self {
        Names(
            (0..g.num_states())
                .map(|s| (g.state_name(s).to_owned(), s))
                .collect(),
        )
    }

    fn get(&self, line: usize, name: &str) -> Result<usize> {
        self.0.get(name).copied().ok_or_else(|| Error::Parse {
            line,
            message: format!("unknown state `{name}`"),
        })
    }
}

/// Relation pairs and `(line, outer pair, inner pair, weight)` entries.
type Entries = (Vec<Pair>, Vec<(usize, Pair, Pair, Rational)>);

fn parse_entries(
    text: &str,
    header: &str,
    entry: &str,
    g1: &dyn LabeledGraph,
    g2: &dyn LabeledGraph,
) -> Result<Entries> {
    let lines = directives(text);
    let perr = |line: usize, message: String| Error::Parse { line, message };
    match lines.first() {
        Some((_, h)) if h == header => {}
        Some((line, _)) => return Err(perr(*line, format!("expected `{header}`"))),
        None => return Err(perr(1, format!("expected `{header}`"))),
    }
    let (n1, n2) = (Names::of(g1), Names::of(g2));
    let mut pairs = Vec::new();
    let mut entries = Vec::new();
    for (line, content) in &lines[1..] {
        let line = *line;
        let words: Vec<&str> = content.split_whitespace().collect();
        match words.as_slice() {
            ["pair", a, b] => pairs.push((n1.get(line, a)?, n2.get(line, b)?)),
            [kw, a, b, c, d, p] if *kw == entry => {
                let outer = (n1.get(line, a)?, n2.get(line, b)?);
                let inner = (n1.get(line, c)?, n2.get(line, d)?);
                let p = parse_rational(p)
                    .ok_or_else(|| perr(line, format!("`{p}` is not a rational")))?;
                entries.push((line, outer, inner, p));
            }
            _ => return Err(perr(line, format!("unexpected line `{content}`"))),
        }
    }
    Ok((pairs, entries))
}

pub fn parse_sat_witness(text: &str, pts: &Pts, spec: &Idtmc) -> Result<SatWitness> {
    let (pairs, entries) = parse_entries(text, "sat-witness", "joint", pts, spec)?;
    let mut w = SatWitness {
        relation: pairs.into_iter().collect(),
        joint: BTreeMap::new(),
    };
    for (line, outer, inner, p) in entries {
        if w.joint.entry(outer).or_default().insert(inner, p).is_some() {
            return Err(Error::Parse {
                line,
                message: "duplicate joint entry".into(),
            });
        }
    }
    Ok(w)
}

pub fn parse_sim_witness(
    text: &str,
    s1: &dyn LabeledGraph,
    s2: &dyn LabeledGraph,
) -> Result<SimWitness> {
    let (pairs, entries) = parse_entries(text, "sim-witness", "delta", s1, s2)?;
    let mut raw: BTreeMap<Pair, BTreeMap<usize, Vec<(usize, Rational)>>> = BTreeMap::new();
    let mut last_line: BTreeMap<(Pair, usize), usize> = BTreeMap::new();
    for (line, outer, (u, t), p) in entries {
        raw.entry(outer)
            .or_default()
            .entry(u)
            .or_default()
            .push((t, p));
        last_line.insert((outer, u), line);
    }
    let mut delta = BTreeMap::new();
    for (outer, rows) in raw {
        let mut parsed = BTreeMap::new();
        for (u, weights) in rows {
            let d = Distribution::new(weights).map_err(|e| Error::Parse {
                line: last_line[&(outer, u)],
                message: e.to_string(),
            })?;
            parsed.insert(u, d);
        }
        delta.insert(outer, parsed);
    }
    Ok(SimWitness {
        relation: pairs.into_iter().collect(),
        delta,
    })
}
