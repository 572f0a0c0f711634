//! Input files: a graph, a polarization, a basepoint and an optional stratum.

use std::collections::BTreeMap;
use std::path::Path;

use jacgraph::{EdgeSet, Multigraph, Polarization};
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub name: String,
    #[serde(default)]
    pub genus: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: Option<String>,
    pub endpoints: [String; 2],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub vertices: Vec<VertexSpec>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
    /// Vertex name → rational; missing vertices get 0.
    #[serde(default)]
    pub polarization: BTreeMap<String, Value>,
    pub basepoint: Option<String>,
    pub stratum: Option<Vec<String>>,
}

/// A validated problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub graph: Multigraph,
    pub q: Polarization,
    pub basepoint: usize,
    pub stratum: EdgeSet,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

pub fn parse_rational(v: &Value) -> Result<BigRational, CliError> {
    let text = match v {
        Value::String(s) => s.trim().to_string(),
        Value::Number(n) => n.to_string(),
        other => return Err(invalid(format!("expected a rational, found {other}"))),
    };
    text.parse::<BigRational>()
        .map_err(|_| invalid(format!("`{text}` is not an integer or a fraction p/q")))
}

impl ProblemFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| invalid(format!("malformed problem file: {e}")))
    }

    /// Builds the graph and polarization. `basepoint` and `stratum` override
    /// the file's values when given.
    pub fn build(&self, basepoint: Option<&str>, stratum: Option<&[String]>) -> Result<Problem, CliError> {
        let mut graph = Multigraph::new();
        for v in &self.vertices {
            graph.add_vertex(v.name.clone(), v.genus).map_err(CliError::validation)?;
        }
        for (i, e) in self.edges.iter().enumerate() {
            let a = graph.vertex_index(&e.endpoints[0]).map_err(CliError::validation)?;
            let b = graph.vertex_index(&e.endpoints[1]).map_err(CliError::validation)?;
            let id = e.id.clone().unwrap_or_else(|| format!("e{i}"));
            graph.add_edge(Some(&id), a, b).map_err(CliError::validation)?;
        }

        let mut values = vec![BigRational::from_integer(0.into()); graph.vertex_count()];
        for (name, raw) in &self.polarization {
            let v = graph.vertex_index(name).map_err(CliError::validation)?;
            values[v] = parse_rational(raw)?;
        }
        let q = Polarization::new(values).map_err(CliError::validation)?;

        let basepoint = match basepoint.or(self.basepoint.as_deref()) {
            Some(name) => graph.vertex_index(name).map_err(CliError::validation)?,
            None => 0,
        };

        let ids: &[String] = stratum.or(self.stratum.as_deref()).unwrap_or(&[]);
        let mut s = EdgeSet::new();
        for id in ids {
            graph.edge_index(id).map_err(CliError::validation)?;
            if !s.insert(id.clone()) {
                return Err(invalid(format!("edge `{id}` listed twice in the stratum")));
            }
        }
        Ok(Problem { graph, q, basepoint, stratum: s })
    }
}
