//! One function per subcommand, each producing the JSON document printed on
//! stdout.

use jacgraph::lattice::LatticeQuotient;
use jacgraph::strata::{blowup_decomposition, strata_report};
use jacgraph::{complexity, Cochain, EdgeSet, Kind, Multigraph, Polarization, StratumContext, VertexSet};
use num_rational::BigRational;
use serde_json::{json, Number, Value};

use crate::problem::Problem;
use crate::CliError;

/// Integers become JSON numbers of any size.
fn big_number(n: impl std::fmt::Display) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("decimal integer"))
}

/// Integral rationals as numbers, the rest as `"p/q"`.
pub fn rational_json(x: &BigRational) -> Value {
    if x.is_integer() {
        big_number(x.to_integer())
    } else {
        Value::String(x.to_string())
    }
}

fn cochains(list: &[Cochain]) -> Value {
    Value::Array(list.iter().map(|d| json!(d.values())).collect())
}

fn edge_ids(s: &EdgeSet) -> Value {
    json!(s.iter().collect::<Vec<_>>())
}

fn names(g: &Multigraph, w: VertexSet) -> Value {
    json!(g.vertex_names(w))
}

fn context(p: &Problem) -> Result<StratumContext, CliError> {
    StratumContext::new(p.graph.clone(), p.stratum.clone(), p.basepoint, p.q.clone()).map_err(CliError::Domain)
}

pub fn complexity_cmd(p: &Problem) -> Result<Value, CliError> {
    let c = complexity(&p.graph).map_err(CliError::Domain)?;
    let mut out = json!({ "complexity": big_number(&c) });
    match LatticeQuotient::new(&p.graph) {
        Ok(l) => {
            let factors: Vec<Value> = l.picard_group().invariant_factors.iter().map(big_number).collect();
            out["picard"] = Value::Array(factors);
        }
        Err(e) => {
            out["picard"] = Value::Null;
            out["picard_error"] = Value::String(e.to_string());
        }
    }
    Ok(out)
}

pub fn enum_cmd(p: &Problem, kind: Kind) -> Result<Value, CliError> {
    Ok(cochains(&context(p)?.enumerate(kind)))
}

pub fn reduce_cmd(p: &Problem, d: Vec<i64>) -> Result<Value, CliError> {
    let ctx = context(p)?;
    if d.len() != p.graph.vertex_count() {
        return Err(CliError::Invalid(format!(
            "multidegree has {} entries but the graph has {} vertices",
            d.len(),
            p.graph.vertex_count()
        )));
    }
    let input = Cochain::new(d);
    let r = ctx.reduce_traced(&input).map_err(CliError::Domain)?;
    let lattice = ctx.lattice().map_err(CliError::Domain)?;
    let same = lattice.same_class(&input, &r.result).map_err(CliError::Domain)?;
    let class_checked = same && ctx.is_quasistable(&r.result);
    Ok(json!({
        "input": input.values(),
        "output": r.result.values(),
        "steps": r.steps(),
        "class_checked": class_checked,
    }))
}

pub fn checkpol_cmd(p: &Problem) -> Result<Value, CliError> {
    let g = &p.graph;
    let general = p.q.is_general(g).map_err(CliError::Domain)?;
    let nondegenerate = p.q.is_nondegenerate(g).map_err(CliError::Domain)?;
    let witness = match p.q.degeneracy_witness(g).map_err(CliError::Domain)? {
        Some((w, spine)) => json!({ "vertices": names(g, w), "spine": spine }),
        None => Value::Null,
    };
    Ok(json!({
        "general": general,
        "nondegenerate": nondegenerate,
        "witness": witness,
    }))
}

pub fn strata_cmd(p: &Problem, max_codim: Option<usize>, guard: usize) -> Result<Value, CliError> {
    let report = strata_report(&p.graph, p.basepoint, &p.q, max_codim, guard).map_err(CliError::Domain)?;
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|row| {
            let children: Vec<Value> = row
                .closure_children
                .iter()
                .map(|&j| edge_ids(&report.rows[j].stratum))
                .collect();
            json!({
                "stratum": edge_ids(&row.stratum),
                "codimension": row.codimension,
                "connected": row.connected,
                "expected_count": big_number(&row.expected_count),
                "count": row.multidegrees.len(),
                "multidegrees": cochains(&row.multidegrees),
                "normalized": cochains(&row.normalized),
                "closure_children": children,
            })
        })
        .collect();
    Ok(json!({ "rows": rows, "total": report.total() }))
}

/// The report and whether every count matched.
pub fn blowup_cmd(p: &Problem, guard: usize) -> Result<(Value, bool), CliError> {
    let b = blowup_decomposition(&p.graph, p.basepoint, &p.q, guard).map_err(CliError::Domain)?;
    let buckets: Vec<Value> = b
        .buckets
        .iter()
        .map(|bucket| {
            json!({
                "stratum": edge_ids(&bucket.stratum),
                "count": bucket.cochains.len(),
                "expected_count": big_number(&bucket.expected_count),
                "cochains": cochains(&bucket.cochains),
            })
        })
        .collect();
    let exceptional: serde_json::Map<String, Value> = b
        .exceptional
        .iter()
        .map(|(id, &x)| (id.clone(), Value::String(b.blowup.vertex_name(x).to_string())))
        .collect();
    let consistent = b.is_consistent();
    let vertices: Vec<&str> = (0..b.blowup.vertex_count()).map(|v| b.blowup.vertex_name(v)).collect();
    Ok((
        json!({
            "vertices": vertices,
            "exceptional": exceptional,
            "buckets": buckets,
            "total": b.total,
            "expected_total": big_number(&b.expected_total),
            "consistent": consistent,
        }),
        consistent,
    ))
}

/// Polarization as a name → rational map, for verbose summaries.
pub fn polarization_json(g: &Multigraph, q: &Polarization) -> Value {
    let map: serde_json::Map<String, Value> = q
        .values()
        .iter()
        .enumerate()
        .map(|(v, x)| (g.vertex_name(v).to_string(), rational_json(x)))
        .collect();
    Value::Object(map)
}
