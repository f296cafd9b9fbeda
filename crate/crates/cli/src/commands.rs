use std::fs;
use std::path::{Path, PathBuf};

use opacity_core::disclosure::max_disclosure_with_budget;
use opacity_core::measure::{
    disclosure_pts_with_budget, monte_carlo_probability, omega_probability,
    symmetric_disclosure_pts,
};
use opacity_core::modal::modal_edges;
use opacity_core::model::{interior_choice, unfold, DepthBoundedScheduler};
use opacity_core::relations::{
    check_prob_bisimulation, check_satisfaction, check_simulation_idtmc, check_simulation_pts,
    parse_sat_witness, parse_sim_witness, transfer_scheduler, validate_sat_witness,
    validate_sim_witness, verify_cone_equality, write_sat_witness, write_sim_witness, Refutation,
    Side, SimWitness, Verdict,
};
use opacity_core::{write_model, Idtmc, LabeledGraph, Model};

use crate::input;
use crate::report::{Failure, NumberFormat, Outcome, Report};

fn lib(context: &str) -> impl Fn(opacity_core::Error) -> Failure + '_ {
    move |e| Failure::from_error(context, e)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn refuted(r: &mut Report, g1: &dyn LabeledGraph, g2: &dyn LabeledGraph, why: &Refutation) {
    let (a, b) = why.pair;
    r.negative(format!(
        "pair ({}, {}): {}",
        g1.state_name(a),
        g2.state_name(b),
        why.reason
    ));
    r.field(
        "failing_pair",
        format!("{},{}", g1.state_name(a), g2.state_name(b)),
    );
    r.field("deletions", why.removed.len());
}

pub fn validate(path: &Path, f: NumberFormat) -> Outcome {
    let m = input::model_unchecked(path)?;
    let mut r = Report::new(f);
    let g = m.graph();
    r.line(format!(
        "{}: {} with {} states",
        path.display(),
        m.kind(),
        g.num_states()
    ));
    r.field("kind", m.kind()).field("states", g.num_states());
    let violations = m.validate();
    r.field("violations", violations.len());
    if violations.is_empty() {
        r.line("valid");
    } else {
        for v in &violations {
            r.line(format!("  {v}"));
        }
        r.negative(format!("{} violation(s)", violations.len()));
    }
    Ok(r)
}

pub fn modal(path: &Path, f: NumberFormat) -> Outcome {
    let spec = input::idtmc(path)?;
    let report = modal_edges(&spec).map_err(lib(&path.display().to_string()))?;
    let mut r = Report::new(f);
    r.line(format!(
        "{:<12} {:<12} {:<6} {:<16} attained",
        "from", "to", "modal", "min"
    ));
    for e in &report.edges {
        r.line(format!(
            "{:<12} {:<12} {:<6} {:<16} {}",
            spec.state_name(e.from),
            spec.state_name(e.to),
            if e.modal { "yes" } else { "no" },
            r.show(&e.minimum.value),
            if e.minimum.attainable { "yes" } else { "no" },
        ));
    }
    let names = report.modal_names(&spec);
    let list = names
        .iter()
        .map(|(a, b)| format!("{a}->{b}"))
        .collect::<Vec<_>>()
        .join(", ");
    r.field("edges", report.edges.len());
    r.field("modal_edges", list.replace(", ", ","));
    if !names.is_empty() {
        r.negative(format!("modal edges: {list}"));
    }
    Ok(r)
}

pub struct DisclosureArgs<'a> {
    pub model: &'a Path,
    pub phi: &'a Path,
    pub observe: &'a [String],
    pub budget: usize,
    pub witness: Option<&'a Path>,
}

pub fn disclosure(a: DisclosureArgs<'_>, f: NumberFormat) -> Outcome {
    let spec = input::idtmc(a.model)?;
    let phi = input::dpa(a.phi)?;
    let obs = input::observation(spec.alphabet(), a.observe)?;
    let d = max_disclosure_with_budget(&spec, &obs, &phi, a.budget).map_err(lib(""))?;
    let mut r = Report::new(f);
    r.line(format!("max disclosure = {}", r.show(&d.value)));
    if d.closure_applied {
        r.line("open bounds were closed");
    }
    if !d.supremum_attained {
        r.line("the value is a supremum: the optimal policy sits on an open bound");
    }
    r.number("value", &d.value);
    r.field("closure_applied", d.closure_applied);
    r.field("supremum_attained", d.supremum_attained);
    r.field("disclosure_dpa_states", d.sizes.disclosing_dpa);
    r.field("trace_nba_states", d.sizes.traces);
    r.field("product_states", d.mdp.num_states());
    if let Some(path) = a.witness {
        let pts = d.scheduled_pts(&spec).map_err(lib(""))?;
        write_file(path, &write_model(&Model::Pts(pts)))?;
        r.line(format!(
            "witness implementation written to {}",
            path.display()
        ));
    }
    Ok(r)
}

pub fn disclose_pts(
    model: &Path,
    phi: &Path,
    observe: &[String],
    budget: usize,
    symmetric: bool,
    f: NumberFormat,
) -> Outcome {
    let pts = input::pts(model)?;
    let phi = input::dpa(phi)?;
    let obs = input::observation(pts.alphabet(), observe)?;
    let value = disclosure_pts_with_budget(&pts, &obs, &phi, budget).map_err(lib(""))?;
    let mut r = Report::new(f);
    r.line(format!("disclosure = {}", r.show(&value)));
    r.number("value", &value);
    if symmetric {
        let sym = symmetric_disclosure_pts(&pts, &obs, &phi).map_err(lib(""))?;
        r.line(format!("symmetric disclosure = {}", r.show(&sym)));
        r.number("symmetric", &sym);
    }
    Ok(r)
}

pub struct ProbArgs<'a> {
    pub model: &'a Path,
    pub phi: &'a Path,
    pub samples: Option<usize>,
    pub seed: u64,
    pub horizon: usize,
}

pub fn prob(a: ProbArgs<'_>, f: NumberFormat) -> Outcome {
    let pts = input::pts(a.model)?;
    let phi = input::dpa(a.phi)?;
    let p = omega_probability(&pts, &phi).map_err(lib(""))?;
    let mut r = Report::new(f);
    r.line(format!("probability = {}", r.show(&p)));
    r.number("value", &p);
    if let Some(n) = a.samples.filter(|&n| n > 0) {
        let est = monte_carlo_probability(&pts, &phi, n, a.horizon, a.seed).map_err(lib(""))?;
        r.line(format!(
            "monte carlo: {}/{} hits, estimate {:.6}, 95% interval [{:.6}, {:.6}]",
            est.hits, est.samples, est.estimate, est.low, est.high
        ));
        r.field("mc_samples", est.samples)
            .field("mc_hits", est.hits)
            .field("mc_estimate", est.estimate)
            .field("mc_low", est.low)
            .field("mc_high", est.high);
    }
    Ok(r)
}

pub fn sat(pts_path: &Path, spec_path: &Path, out: Option<&Path>, f: NumberFormat) -> Outcome {
    let pts = input::pts(pts_path)?;
    let spec = input::idtmc(spec_path)?;
    let verdict = check_satisfaction(&pts, &spec).map_err(lib(""))?;
    let mut r = Report::new(f);
    match &verdict {
        Verdict::Holds(w) => {
            validate_sat_witness(&pts, &spec, w)
                .map_err(|e| Failure::input(format!("internal witness rejected: {e}")))?;
            r.line(format!(
                "{} satisfies {} ({} related pairs)",
                pts_path.display(),
                spec_path.display(),
                w.relation.len()
            ));
            r.field("holds", true).field("pairs", w.relation.len());
            let text = write_sat_witness(&pts, &spec, w);
            match out {
                Some(path) => {
                    write_file(path, &text)?;
                    r.line(format!("witness written to {}", path.display()));
                }
                None => {
                    r.line("");
                    r.line(text.trim_end());
                }
            }
        }
        Verdict::Refuted(why) => {
            r.field("holds", false);
            refuted(&mut r, &pts, &spec, why);
        }
    }
    Ok(r)
}

/// Simulation between two models; PTSs are compared directly, mixed inputs
/// as interval chains.
fn simulation(p1: &Path, p2: &Path) -> Result<(Idtmc, Idtmc, Verdict<SimWitness>), Failure> {
    let (m1, m2) = (input::model(p1)?, input::model(p2)?);
    let verdict = match (&m1, &m2) {
        (Model::Pts(a1), Model::Pts(a2)) => check_simulation_pts(a1, a2),
        _ => {
            let (s1, s2) = (input::as_idtmc(p1)?, input::as_idtmc(p2)?);
            check_simulation_idtmc(&s1, &s2)
        }
    }
    .map_err(lib(""))?;
    Ok((input::as_idtmc(p1)?, input::as_idtmc(p2)?, verdict))
}

pub fn sim(p1: &Path, p2: &Path, out: Option<&Path>, f: NumberFormat) -> Outcome {
    let (s1, s2, verdict) = simulation(p1, p2)?;
    let mut r = Report::new(f);
    match &verdict {
        Verdict::Holds(w) => {
            validate_sim_witness(&s1, &s2, w)
                .map_err(|e| Failure::input(format!("internal witness rejected: {e}")))?;
            r.line(format!(
                "{} is simulated by {} ({} related pairs)",
                p1.display(),
                p2.display(),
                w.relation.len()
            ));
            r.field("holds", true).field("pairs", w.relation.len());
            let text = write_sim_witness(&s1, &s2, w);
            match out {
                Some(path) => {
                    write_file(path, &text)?;
                    r.line(format!("witness written to {}", path.display()));
                }
                None => {
                    r.line("");
                    r.line(text.trim_end());
                }
            }
        }
        Verdict::Refuted(why) => {
            r.field("holds", false);
            refuted(&mut r, &s1, &s2, why);
        }
    }
    Ok(r)
}

pub fn bisim(p1: &Path, p2: &Path, f: NumberFormat) -> Outcome {
    let (a1, a2) = (input::pts(p1)?, input::pts(p2)?);
    let b = check_prob_bisimulation(&a1, &a2).map_err(lib(""))?;
    let mut r = Report::new(f);
    for (i, block) in b.blocks.iter().enumerate() {
        let names: Vec<String> = block
            .iter()
            .map(|&(side, s)| match side {
                Side::Left => format!("1:{}", a1.state_name(s)),
                Side::Right => format!("2:{}", a2.state_name(s)),
            })
            .collect();
        r.line(format!("block {i}: {}", names.join(" ")));
    }
    r.field("blocks", b.blocks.len())
        .field("bisimilar", b.bisimilar);
    if b.bisimilar {
        r.line("initial states are bisimilar");
    } else {
        let report =
            verify_cone_equality(&a1, &a2, a1.num_states() + a2.num_states()).map_err(lib(""))?;
        let reason = match &report.worst_word {
            Some(w) => {
                let word = a1.alphabet().render(w);
                r.field("counterexample", &word);
                format!(
                    "initial states are in different blocks; cone of {word} differs by {}",
                    r.show(&report.max_discrepancy)
                )
            }
            None => "initial states are in different blocks".to_owned(),
        };
        r.negative(reason);
    }
    Ok(r)
}

pub struct TransferArgs<'a> {
    pub s1: &'a Path,
    pub s2: &'a Path,
    pub depth: usize,
    pub witness: Option<&'a Path>,
    pub out: Option<&'a Path>,
}

pub fn transfer(a: TransferArgs<'_>, f: NumberFormat) -> Outcome {
    let s1 = input::as_idtmc(a.s1)?;
    let s2 = input::as_idtmc(a.s2)?;
    let mut r = Report::new(f);
    let w = match a.witness {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            let w = parse_sim_witness(&text, &s1, &s2).map_err(lib(&path.display().to_string()))?;
            validate_sim_witness(&s1, &s2, &w)
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            w
        }
        None => match check_simulation_idtmc(&s1, &s2).map_err(lib(""))? {
            Verdict::Holds(w) => w,
            Verdict::Refuted(why) => {
                refuted(&mut r, &s1, &s2, &why);
                return Ok(r);
            }
        },
    };
    let choice = interior_choice(&s1).map_err(lib(""))?;
    let a1 = DepthBoundedScheduler::from_memoryless(&s1, &choice, a.depth);
    let a2 = transfer_scheduler(&s1, &s2, &w, &a1, a.depth).map_err(lib(""))?;
    let p1 = unfold(&s1, &a1).map_err(lib(""))?;
    let p2 = unfold(&s2, &a2).map_err(lib(""))?;
    let cones = verify_cone_equality(&p1, &p2, a.depth).map_err(lib(""))?;
    r.line(format!(
        "transferred scheduler defined on {} runs of at most {} states",
        a2.choices().len(),
        a.depth
    ));
    r.line(format!(
        "{} cones compared, max discrepancy {}",
        cones.words_compared,
        r.show(&cones.max_discrepancy)
    ));
    r.field("depth", a.depth)
        .field("runs", a2.choices().len())
        .field("words_compared", cones.words_compared);
    r.number("max_discrepancy", &cones.max_discrepancy);
    if let Some(path) = a.out {
        write_file(path, &write_model(&Model::Pts(p2)))?;
        r.line(format!(
            "unfolded implementation written to {}",
            path.display()
        ));
    }
    if !cones.equal() {
        let word = cones
            .worst_word
            .as_ref()
            .or(cones.only_first.first())
            .or(cones.only_second.first())
            .map(|w| s1.alphabet().render(w))
            .unwrap_or_default();
        r.field("counterexample", &word);
        r.negative(format!("cone probabilities differ on {word}"));
    }
    Ok(r)
}

pub struct MonotonicArgs<'a> {
    pub s1: &'a Path,
    pub s2: &'a Path,
    pub phi: &'a Path,
    pub observe: &'a [String],
    pub budget: usize,
}

pub fn monotonic(a: MonotonicArgs<'_>, f: NumberFormat) -> Outcome {
    let (s1, s2, verdict) = simulation(a.s1, a.s2)?;
    let phi = input::dpa(a.phi)?;
    let obs = input::observation(s1.alphabet(), a.observe)?;
    let mut r = Report::new(f);
    if let Verdict::Refuted(why) = &verdict {
        r.field("simulation", false);
        refuted(&mut r, &s1, &s2, why);
        return Ok(r);
    }
    r.line("simulation witness found");
    r.field("simulation", true);
    let d1 = max_disclosure_with_budget(&s1, &obs, &phi, a.budget)
        .map_err(lib(&a.s1.display().to_string()))?;
    let d2 = max_disclosure_with_budget(&s2, &obs, &phi, a.budget)
        .map_err(lib(&a.s2.display().to_string()))?;
    let holds = d1.value <= d2.value;
    r.line(format!(
        "Disc(S1) = {} {} Disc(S2) = {}",
        r.show(&d1.value),
        if holds { "<=" } else { ">" },
        r.show(&d2.value)
    ));
    r.number("disc_s1", &d1.value)
        .number("disc_s2", &d2.value)
        .field("monotone", holds);
    if !holds {
        r.negative("disclosure increased under simulation");
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum WitnessKind {
    Sat,
    Sim,
}

pub fn check_witness(
    kind: WitnessKind,
    left: &Path,
    right: &Path,
    witness: &PathBuf,
    f: NumberFormat,
) -> Outcome {
    let text = fs::read_to_string(witness)
        .map_err(|e| Failure::input(format!("{}: {e}", witness.display())))?;
    let ctx = witness.display().to_string();
    let result = match kind {
        WitnessKind::Sat => {
            let (pts, spec) = (input::pts(left)?, input::idtmc(right)?);
            let w = parse_sat_witness(&text, &pts, &spec).map_err(lib(&ctx))?;
            validate_sat_witness(&pts, &spec, &w)
        }
        WitnessKind::Sim => {
            let (s1, s2) = (input::as_idtmc(left)?, input::as_idtmc(right)?);
            let w = parse_sim_witness(&text, &s1, &s2).map_err(lib(&ctx))?;
            validate_sim_witness(&s1, &s2, &w)
        }
    };
    let mut r = Report::new(f);
    match result {
        Ok(()) => {
            r.line(format!("{} is a valid witness", witness.display()));
            r.field("valid", true);
        }
        Err(e) => {
            r.field("valid", false);
            r.negative(e);
        }
    }
    Ok(r)
}
