use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::Quiver;

/// Vertex classes of a quiver, each listed in canonical vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClassification {
    /// Vertices emitting no arrows.
    pub sinks: Vec<String>,
    /// Vertices receiving no arrows.
    pub sources: Vec<String>,
    /// Vertices reachable (by a path of length >= 0) from a vertex on a
    /// directed cycle.
    pub on_or_after_cycle: Vec<String>,
}

pub fn classify(q: &Quiver) -> VertexClassification {
    let cyclic = cycle_closure_mask(q);
    let pick = |pred: &dyn Fn(usize) -> bool| -> Vec<String> {
        q.vertex_order().iter().filter(|&&v| pred(v)).map(|&v| q.name(v).to_string()).collect()
    };
    VertexClassification {
        sinks: pick(&|v| q.out_degree(v) == 0),
        sources: pick(&|v| q.in_degree(v) == 0),
        on_or_after_cycle: pick(&|v| cyclic[v]),
    }
}

/// Marks, by declaration index, every vertex reachable from a directed cycle.
///
/// A vertex lies on a cycle iff its strongly connected component has at
/// least two vertices or carries a loop; the mark is then closed forward.
///
/// This agrees with the path-repetition description: `v` is marked iff some
/// path ending at `v` repeats a vertex. If a path `... u ... u ... v` repeats
/// `u`, its segment from `u` back to `u` is a cycle through `u`, and the rest
/// reaches `v`. Conversely a cycle through `u` followed twice and then a path
/// to `v` repeats `u`. Since a path with more arrows than the quiver has
/// vertices must repeat one, `v` is marked iff a path of length
/// `vertex_count` ends at `v`; the property tests check exactly this.
pub(crate) fn cycle_closure_mask(q: &Quiver) -> Vec<bool> {
    let n = q.vertex_count();
    let mut graph = DiGraph::<(), ()>::with_capacity(n, q.edge_count());
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for e in q.edges() {
        graph.add_edge(nodes[e.source], nodes[e.target], ());
    }

    let mut mark = vec![false; n];
    let mut stack = Vec::new();
    for component in tarjan_scc(&graph) {
        let cyclic = component.len() > 1 || {
            let v = component[0].index();
            q.multiplicity(v, v) > 0
        };
        if cyclic {
            for node in component {
                let v = node.index();
                if !mark[v] {
                    mark[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    while let Some(v) = stack.pop() {
        for e in q.edges().iter().filter(|e| e.source == v) {
            if !mark[e.target] {
                mark[e.target] = true;
                stack.push(e.target);
            }
        }
    }
    mark
}
