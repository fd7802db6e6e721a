use std::collections::HashMap;

use super::classify::cycle_closure_mask;
use super::{Quiver, QuiverError};

/// True iff every vertex of `f` emits, inside `f`, either no arrows or all of
/// the arrows it emits in `e`. Vertices and arrows are matched by name.
///
/// Errors when `f` is not a subquiver of `e`.
pub fn is_complete_subquiver(f: &Quiver, e: &Quiver) -> Result<bool, QuiverError> {
    let mut to_e = Vec::with_capacity(f.vertex_count());
    for name in f.names() {
        let v = e
            .index_of(name)
            .ok_or_else(|| QuiverError::NotSubquiver(format!("vertex `{name}` is not in the ambient quiver")))?;
        to_e.push(v);
    }

    let mut available: HashMap<(usize, usize), usize> = HashMap::new();
    for edge in e.edges() {
        *available.entry((edge.source, edge.target)).or_default() += 1;
    }
    for edge in f.edges() {
        let key = (to_e[edge.source], to_e[edge.target]);
        match available.get_mut(&key) {
            Some(c) if *c > 0 => *c -= 1,
            _ => {
                return Err(QuiverError::NotSubquiver(format!(
                    "too many arrows {} -> {}",
                    f.name(edge.source),
                    f.name(edge.target)
                )))
            }
        }
    }

    Ok((0..f.vertex_count()).all(|v| {
        let inside = f.out_degree(v);
        inside == 0 || inside == e.out_degree(to_e[v])
    }))
}

/// The cycle closure: vertices reachable from a directed cycle, with every
/// arrow they emit. Empty when the quiver is acyclic.
pub fn tilde_quiver(q: &Quiver) -> Quiver {
    q.restrict_complete(&cycle_closure_mask(q))
}

/// A chain of complete subquivers `F^0 ⊂ F^1 ⊂ ... ⊂ F^k = E`.
///
/// `F^0` is the cycle closure together with all sinks; each later stage
/// adjoins one vertex whose arrows all land in the previous stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionChain {
    pub stages: Vec<Quiver>,
    /// `added_vertex[i]` is the vertex adjoined to go from stage `i` to `i + 1`.
    pub added_vertex: Vec<String>,
    /// Number of sinks not reachable from any cycle.
    pub ell: usize,
    /// The cycle closure of the input.
    pub tilde: Quiver,
}

impl ReductionChain {
    /// Number of vertex additions, `k`.
    pub fn len(&self) -> usize {
        self.added_vertex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.added_vertex.is_empty()
    }

    pub fn base(&self) -> &Quiver {
        &self.stages[0]
    }
}

pub fn reduction_chain(q: &Quiver) -> ReductionChain {
    let cyclic = cycle_closure_mask(q);
    let n = q.vertex_count();
    let sinks: Vec<bool> = (0..n).map(|v| q.out_degree(v) == 0).collect();
    let ell = (0..n).filter(|&v| sinks[v] && !cyclic[v]).count();

    let mut mask: Vec<bool> = (0..n).map(|v| cyclic[v] || sinks[v]).collect();
    let mut stages = vec![q.restrict_complete(&mask)];
    let mut added_vertex = Vec::new();

    while mask.iter().any(|m| !m) {
        let v = (0..n)
            .find(|&v| !mask[v] && q.edges().iter().filter(|e| e.source == v).all(|e| mask[e.target]))
            .expect("a vertex outside the cycle closure must have all its arrows land in the current stage");
        debug_assert!(q.out_degree(v) > 0);
        mask[v] = true;
        added_vertex.push(q.name(v).to_string());
        stages.push(q.restrict_complete(&mask));
    }

    ReductionChain { stages, added_vertex, ell, tilde: q.restrict_complete(&cyclic) }
}
