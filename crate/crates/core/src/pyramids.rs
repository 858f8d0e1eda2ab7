//! Generators for the layered triangular-pyramid family and the small named
//! graphs (cycles, wheels, claw, spider) that the detectors and the proof
//! pipeline work against.
//!
//! A pyramid with `k` layers of triangles has `k+1` rows of vertices; row `i`
//! (1-based) holds vertices `x_1^i .. x_i^i`. Row vertices form a path, and
//! each `x_r^i` is joined downward to `x_r^{i+1}` and `x_{r+1}^{i+1}`. Vertex
//! ids are assigned row-major: `x_1^1 = 0`, `x_1^2 = 1`, `x_2^2 = 2`, and so
//! on, which keeps embeddings and fixtures reproducible.

use alloc::vec::Vec;

use crate::detect::{TP3Witness, WheelWitness};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

/// Number of vertices of the k-layer pyramid: (k+1)(k+2)/2.
pub fn pyramid_vertex_count(k: u32) -> u64 {
    let k = k as u64;
    (k + 1) * (k + 2) / 2
}

/// Number of edges of the k-layer pyramid: 3k(k+1)/2.
pub fn pyramid_edge_count(k: u32) -> u64 {
    let k = k as u64;
    3 * k * (k + 1) / 2
}

/// Row-major vertex id of `x_index^layer` (both 1-based): rows above hold
/// layer(layer-1)/2 vertices.
pub fn pyramid_vertex_id(layer: u16, index: u16) -> Result<u16> {
    if layer == 0 || index == 0 || index > layer {
        return Err(Error::BadArgument { what: "pyramid label needs 1 <= index <= layer" });
    }
    let l = layer as u32;
    Ok((l * (l - 1) / 2 + (index as u32 - 1)) as u16)
}

/// A pyramid graph together with the (row, index) label of every vertex.
#[derive(Debug, Clone)]
pub struct LayeredPyramid {
    pub graph: Graph,
    /// Layer count k (the graph has k+1 vertex rows).
    pub k: u32,
    /// labels[v] = (row, index), both 1-based.
    pub labels: Vec<(u16, u16)>,
}

impl LayeredPyramid {
    /// The (row, index) label of vertex `v`.
    pub fn label(&self, v: u16) -> Option<(u16, u16)> {
        self.labels.get(v as usize).copied()
    }
}

/// Builds the k-layer triangular pyramid. `k = 0` is rejected; the capacity
/// limit caps k at 30 (496 vertices).
pub fn triangular_pyramid(k: u32) -> Result<LayeredPyramid> {
    if k == 0 {
        return Err(Error::BadArgument { what: "pyramid needs k >= 1" });
    }
    let n = pyramid_vertex_count(k);
    let mut b = GraphBuilder::new(n as usize)?;
    let mut labels = Vec::with_capacity(n as usize);
    for row in 1..=(k as u16 + 1) {
        for index in 1..=row {
            labels.push((row, index));
        }
    }
    for row in 1..=(k as u16 + 1) {
        for index in 1..=row {
            let v = pyramid_vertex_id(row, index)?;
            if index < row {
                b.add_edge(v, pyramid_vertex_id(row, index + 1)?)?;
            }
            if row <= k as u16 {
                b.add_edge(v, pyramid_vertex_id(row + 1, index)?)?;
                b.add_edge(v, pyramid_vertex_id(row + 1, index + 1)?)?;
            }
        }
    }
    let graph = b.freeze();
    debug_assert_eq!(graph.edge_count() as u64, pyramid_edge_count(k));
    Ok(LayeredPyramid { graph, k, labels })
}

/// Cycle on m >= 3 vertices, edges i — (i+1 mod m).
pub fn cycle(m: usize) -> Result<Graph> {
    if m < 3 {
        return Err(Error::BadArgument { what: "cycle needs m >= 3" });
    }
    let mut b = GraphBuilder::new(m)?;
    for i in 0..m as u16 {
        b.add_edge(i, ((i as usize + 1) % m) as u16)?;
    }
    Ok(b.freeze())
}

/// Wheel on m >= 4 vertices total: hub 0 joined to the cycle 1..m-1.
pub fn wheel(m: usize) -> Result<Graph> {
    if m < 4 {
        return Err(Error::BadArgument { what: "wheel needs m >= 4" });
    }
    let mut b = GraphBuilder::new(m)?;
    let rim = m - 1;
    for i in 0..rim as u16 {
        b.add_edge(0, i + 1)?;
        b.add_edge(i + 1, ((i as usize + 1) % rim) as u16 + 1)?;
    }
    Ok(b.freeze())
}

/// The claw K_{1,3}: center 0, leaves 1..3.
pub fn claw() -> Graph {
    let mut b = GraphBuilder::new(4).unwrap();
    for leaf in 1..4 {
        b.add_edge(0, leaf).unwrap();
    }
    b.freeze()
}

/// The three-legged spider: joint 0 with legs 0-1-2, 0-3-4, 0-5-6.
pub fn spider() -> Graph {
    let mut b = GraphBuilder::new(7).unwrap();
    for leg in 0..3u16 {
        let knee = 1 + 2 * leg;
        b.add_edge(0, knee).unwrap();
        b.add_edge(knee, knee + 1).unwrap();
    }
    b.freeze()
}

/// The canonical embedded 7-wheel of the 3-layer pyramid: hub `x_2^3` (the
/// unique degree-6 vertex), rim `(x_1^2, x_2^2, x_3^3, x_3^4, x_2^4, x_1^3)`,
/// and the apex of each alternating rim edge: `x_1^1` over `(x_1^2, x_2^2)`,
/// `x_4^4` over `(x_3^3, x_3^4)`, `x_1^4` over `(x_2^4, x_1^3)`.
pub fn pyramid_center_wheel() -> TP3Witness {
    let id = |layer, index| pyramid_vertex_id(layer, index).unwrap();
    TP3Witness {
        wheel: WheelWitness {
            hub: id(3, 2),
            rim: [id(2, 1), id(2, 2), id(3, 3), id(4, 3), id(4, 2), id(3, 1)],
        },
        apexes: [id(1, 1), id(4, 4), id(4, 1)],
    }
}
