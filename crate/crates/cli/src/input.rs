use std::fs;
use std::path::Path;

use opacity_core::automata::{parse_dpa, Dpa};
use opacity_core::{parse_model, Idtmc, Model, Observation, Pts};

use crate::report::Failure;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn context(path: &Path) -> String {
    path.display().to_string()
}

/// Parses a model file without validating it.
pub fn model_unchecked(path: &Path) -> Result<Model, Failure> {
    parse_model(&read(path)?).map_err(|e| Failure::from_error(&context(path), e))
}

pub fn model(path: &Path) -> Result<Model, Failure> {
    let m = model_unchecked(path)?;
    let violations = m.validate();
    if violations.is_empty() {
        Ok(m)
    } else {
        Err(Failure::from_error(
            &context(path),
            opacity_core::Error::InvalidModel(violations),
        ))
    }
}

pub fn pts(path: &Path) -> Result<Pts, Failure> {
    match model(path)? {
        Model::Pts(p) => Ok(p),
        Model::Idtmc(_) => Err(Failure::input(format!(
            "{}: expected a pts model, found an idtmc",
            path.display()
        ))),
    }
}

pub fn idtmc(path: &Path) -> Result<Idtmc, Failure> {
    match model(path)? {
        Model::Idtmc(m) => Ok(m),
        Model::Pts(_) => Err(Failure::input(format!(
            "{}: expected an idtmc model, found a pts",
            path.display()
        ))),
    }
}

/// Either kind, as an interval chain (a PTS becomes its point intervals).
pub fn as_idtmc(path: &Path) -> Result<Idtmc, Failure> {
    Ok(match model(path)? {
        Model::Idtmc(m) => m,
        Model::Pts(p) => Idtmc::from_pts(&p),
    })
}

pub fn dpa(path: &Path) -> Result<Dpa, Failure> {
    parse_dpa(&read(path)?).map_err(|e| Failure::from_error(&context(path), e))
}

pub fn observation(
    alphabet: &opacity_core::Alphabet,
    letters: &[String],
) -> Result<Observation, Failure> {
    Observation::new(alphabet, letters).map_err(|e| Failure::from_error("--observe", e))
}
