//! Integer matrices attached to a quiver, all in canonical vertex order and
//! canonical arrow order (see [`Quiver::ordered_edges`]).

use crate::linalg::Matrix;
use crate::quiver::Quiver;
use crate::scalar::IntegerRing;

fn count<T: IntegerRing>(k: usize) -> T {
    T::from_usize(k).expect("count fits the scalar type")
}

fn indicator<T: IntegerRing>(b: bool) -> T {
    if b {
        T::one()
    } else {
        T::zero()
    }
}

/// `N'`: entry `(i, j)` counts arrows from vertex `i` to vertex `j`.
pub fn adjacency<T: IntegerRing>(q: &Quiver) -> Matrix<T> {
    let n = q.vertex_count();
    let mut m = vec![vec![0usize; n]; n];
    for e in q.edges() {
        m[q.position(e.source)][q.position(e.target)] += 1;
    }
    Matrix::from_fn(n, n, |i, j| count(m[i][j]))
}

/// `M`: the arrow-by-arrow matrix with entry 1 iff the range of the row arrow
/// is the source of the column arrow.
pub fn edge_matrix<T: IntegerRing>(q: &Quiver) -> Matrix<T> {
    let edges = q.ordered_edges();
    Matrix::from_fn(edges.len(), edges.len(), |a, b| indicator(edges[a].target == edges[b].source))
}

/// Pullback along the range map, `Z^{E0} -> Z^{E1}`, as an `e1 x e0` matrix.
pub fn range_pullback<T: IntegerRing>(q: &Quiver) -> Matrix<T> {
    let edges = q.ordered_edges();
    let order = q.vertex_order();
    Matrix::from_fn(edges.len(), order.len(), |a, v| indicator(edges[a].target == order[v]))
}

/// Pushforward along the source map, `Z^{E1} -> Z^{E0}`, as an `e0 x e1` matrix.
pub fn source_pushforward<T: IntegerRing>(q: &Quiver) -> Matrix<T> {
    let edges = q.ordered_edges();
    let order = q.vertex_order();
    Matrix::from_fn(order.len(), edges.len(), |v, a| indicator(edges[a].source == order[v]))
}

/// The rectangular `e0 x (e0 - sinks)` matrix `[0; 1] - N^t`, where `N` is the
/// adjacency matrix with its sink rows removed. Rows follow the canonical
/// vertex order; columns are the non-sinks in canonical order.
pub fn one_minus_nt<T: IntegerRing>(q: &Quiver) -> Matrix<T> {
    let n = q.vertex_count();
    let sinks = q.sink_count();
    let adj = adjacency::<T>(q);
    Matrix::from_fn(n, n - sinks, |i, c| {
        let col_vertex = sinks + c;
        indicator::<T>(i == col_vertex) - adj[(col_vertex, i)].clone()
    })
}
