use std::fmt::Write as _;

use serde::Serialize;

use super::Configuration;

/// JSON view of a configuration. `degree` is the common degree when the
/// graph is regular, otherwise `null`. Loops appear as `[v, v]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphJson {
    pub n: usize,
    pub degree: Option<usize>,
    pub edges: Vec<[usize; 2]>,
    pub opinions: Vec<i8>,
}

pub fn to_json(c: &Configuration) -> GraphJson {
    GraphJson {
        n: c.order(),
        degree: c.graph().regular_degree(),
        edges: c.graph().edges().map(|(u, v)| [u, v]).collect(),
        opinions: c.opinions().iter().map(|o| o.sign() as i8).collect(),
    }
}

/// Graphviz rendering with loops drawn and `happy=true` on happy vertices.
pub fn to_dot(c: &Configuration) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..c.order() {
        if c.is_happy(v) {
            let _ = writeln!(out, "  {v} [happy=true, label=\"h{v}\"];");
        } else {
            let _ = writeln!(out, "  {v} [label=\"s{v}\"];");
        }
    }
    for (u, v) in c.graph().edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LoopGraph;

    #[test]
    fn dot_has_loops_and_happy_flags() {
        let c = Configuration::with_happy_prefix(LoopGraph::complete(2), 1).unwrap();
        let dot = to_dot(&c);
        assert!(dot.contains("0 [happy=true"));
        assert!(!dot.contains("1 [happy=true"));
        assert!(dot.contains("0 -- 0;"));
        assert!(dot.contains("1 -- 1;"));
        assert!(dot.contains("0 -- 1;"));
    }

    #[test]
    fn json_shape() {
        let c = Configuration::with_happy_prefix(LoopGraph::circulant(3, 3).unwrap(), 2).unwrap();
        let v = serde_json::to_value(to_json(&c)).unwrap();
        assert_eq!(v["n"], 3);
        assert_eq!(v["degree"], 3);
        assert_eq!(v["opinions"], serde_json::json!([1, 1, -1]));
        assert_eq!(v["edges"].as_array().unwrap().len(), 6);
    }
}
