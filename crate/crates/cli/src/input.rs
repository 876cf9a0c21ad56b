//! Input descriptors: circulant shorthand, `K<m>`, `E<n>`, inline JSON, or a
//! path to a JSON file holding a graph or a complex.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use indcomplex_core::{independence_complex, CirculantSpec, Complex, Graph};

#[derive(Clone, Debug)]
pub enum Input {
    Graph(Graph),
    Complex(Complex),
}

impl Input {
    /// The complex under test: `Ind(G)` for graphs.
    pub fn complex(&self) -> Result<Complex> {
        match self {
            Input::Graph(g) => Ok(independence_complex(g)?),
            Input::Complex(c) => Ok(c.clone()),
        }
    }

    pub fn graph(&self) -> Result<&Graph> {
        match self {
            Input::Graph(g) => Ok(g),
            Input::Complex(_) => bail!("expected a graph, got a complex"),
        }
    }
}

pub fn parse_input(desc: &str) -> Result<Input> {
    let desc = desc.trim();
    if desc.starts_with('{') {
        return parse_json(desc);
    }
    if desc.starts_with('C') && desc.contains('(') {
        let spec: CirculantSpec = desc.parse()?;
        return Ok(Input::Graph(spec.graph()));
    }
    if let Some(m) = desc.strip_prefix('K').and_then(|m| m.parse::<usize>().ok()) {
        return Ok(Input::Graph(Graph::complete(m)?));
    }
    if let Some(n) = desc.strip_prefix('E').and_then(|n| n.parse::<usize>().ok()) {
        return Ok(Input::Graph(Graph::edgeless(n)));
    }
    let path = Path::new(desc);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        return parse_json(&text).with_context(|| format!("parsing {}", path.display()));
    }
    Err(anyhow!(
        "cannot parse input {desc:?}: expected C<n>(d,...), K<m>, E<n>, JSON or a JSON file"
    ))
}

fn parse_json(text: &str) -> Result<Input> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("edges").is_some() {
        Ok(Input::Graph(serde_json::from_value(value)?))
    } else if value.get("facets").is_some() {
        Ok(Input::Complex(serde_json::from_value(value)?))
    } else {
        bail!("JSON input needs an \"edges\" (graph) or \"facets\" (complex) field")
    }
}
