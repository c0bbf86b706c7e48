//! Reading and writing the JSON files shared by all commands.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use torus_rigidity::graph::GraphFile;
use torus_rigidity::henneberg::HennebergSequence;
use torus_rigidity::rigidity::{ConfigFile, Configuration};
use torus_rigidity::PeriodicOrbitGraph;

/// A failure that maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl From<torus_rigidity::Error> for InputError {
    fn from(e: torus_rigidity::Error) -> Self {
        InputError(e.to_string())
    }
}

/// Parses `text`, reporting the field path and position of the first error.
pub fn parse_json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, InputError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let at = if path.is_empty() || path == "." {
            String::new()
        } else {
            format!(" at `{path}`")
        };
        let message = inner.to_string();
        let message = message
            .split(" at line ")
            .next()
            .unwrap_or_default()
            .to_string();
        InputError(format!(
            "{origin}: line {} column {}{at}: {message}",
            inner.line(),
            inner.column()
        ))
    })?;
    de.end()
        .map_err(|e| InputError(format!("{origin}: trailing characters: {e}")))?;
    Ok(value)
}

pub fn read_text(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

pub fn parse_graph(text: &str, origin: &str) -> Result<PeriodicOrbitGraph, InputError> {
    let file: GraphFile = parse_json(text, origin)?;
    PeriodicOrbitGraph::try_from(file).map_err(|e| InputError(format!("{origin}: {e}")))
}

pub fn read_graph(path: &Path) -> Result<PeriodicOrbitGraph, InputError> {
    parse_graph(&read_text(path)?, &path.display().to_string())
}

pub fn read_sequence(path: &Path) -> Result<HennebergSequence, InputError> {
    parse_json(&read_text(path)?, &path.display().to_string())
}

pub fn read_config(path: &Path) -> Result<Configuration, InputError> {
    let origin = path.display().to_string();
    let file: ConfigFile = parse_json(&read_text(path)?, &origin)?;
    Configuration::try_from(file).map_err(|e| InputError(format!("{origin}: {e}")))
}

pub fn write_file(path: &Path, text: &str) -> Result<(), InputError> {
    fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
