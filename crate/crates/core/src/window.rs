//! Finite windows of the derived periodic framework.
//!
//! The derived graph has a copy `(v, z)` of every vertex for each cell
//! `z ∈ Z²`, placed at `p(v) + z L0`. A directed edge `v_i -> v_j` with gain
//! `b` joins `(v_i, a)` to `(v_j, a + b)` for every `a`.

use std::collections::HashMap;
use std::ops::Range;

use serde::Serialize;

use crate::error::Result;
use crate::graph::{EdgeId, PeriodicOrbitGraph, VertexId};
use crate::rigidity::{Configuration, Point};

/// Cells `z = (z1, z2)` with `z1 ∈ x`, `z2 ∈ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub x: Range<i64>,
    pub y: Range<i64>,
}

impl Window {
    /// The `a x b` block of cells starting at the origin.
    pub fn block(a: i64, b: i64) -> Self {
        Window { x: 0..a, y: 0..b }
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty() || self.y.is_empty()
    }

    pub fn contains(&self, cell: [i64; 2]) -> bool {
        self.x.contains(&cell[0]) && self.y.contains(&cell[1])
    }

    pub fn cells(&self) -> impl Iterator<Item = [i64; 2]> + '_ {
        self.x
            .clone()
            .flat_map(move |a| self.y.clone().map(move |b| [a, b]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedVertex {
    pub vertex: VertexId,
    pub cell: [i64; 2],
    #[serde(serialize_with = "serialize_point")]
    pub position: Point,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedEdge {
    pub edge: EdgeId,
    /// Cell of the tail copy.
    pub cell: [i64; 2],
    /// Indices into [`DerivedWindow::vertices`].
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DerivedWindow {
    pub vertices: Vec<DerivedVertex>,
    pub edges: Vec<DerivedEdge>,
}

fn serialize_point<S: serde::Serializer>(p: &Point, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(2))?;
    seq.serialize_element(&p[0].to_string())?;
    seq.serialize_element(&p[1].to_string())?;
    seq.end()
}

/// Copies of all vertices and edges of the derived framework whose endpoints
/// both fall inside `window`.
pub fn derive_window(
    graph: &PeriodicOrbitGraph,
    config: &Configuration,
    window: &Window,
) -> Result<DerivedWindow> {
    config.ensure_covers(graph.vertex_count())?;
    let mut out = DerivedWindow::default();
    let mut index = HashMap::new();
    for cell in window.cells() {
        let shift = config
            .lattice()
            .translate(crate::gain::GainVector::new(cell[0], cell[1]));
        for v in graph.vertices() {
            let p = config.position(v);
            index.insert((v, cell), out.vertices.len());
            out.vertices.push(DerivedVertex {
                vertex: v,
                cell,
                position: [&p[0] + &shift[0], &p[1] + &shift[1]],
            });
        }
    }
    for e in graph.edges() {
        for cell in window.cells() {
            let target = [cell[0] + e.gain.a, cell[1] + e.gain.b];
            if let (Some(&from), Some(&to)) =
                (index.get(&(e.tail, cell)), index.get(&(e.head, target)))
            {
                out.edges.push(DerivedEdge {
                    edge: e.id,
                    cell,
                    from,
                    to,
                });
            }
        }
    }
    Ok(out)
}

impl DerivedWindow {
    /// Line-segment drawing of the window.
    pub fn to_svg(&self, scale: f64) -> String {
        use num_traits::ToPrimitive;
        let pts: Vec<(f64, f64)> = self
            .vertices
            .iter()
            .map(|v| {
                (
                    v.position[0].to_f64().unwrap_or(0.0) * scale,
                    v.position[1].to_f64().unwrap_or(0.0) * scale,
                )
            })
            .collect();
        let (mut min_x, mut min_y, mut max_x, mut max_y) = (0.0f64, 0.0f64, scale, scale);
        for &(x, y) in &pts {
            min_x = min_x.min(x);
            min_y = min_y.min(y);
            max_x = max_x.max(x);
            max_y = max_y.max(y);
        }
        let pad = 0.05 * scale;
        let mut svg = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.3} {:.3} {:.3} {:.3}\">\n",
            min_x - pad,
            -(max_y + pad),
            max_x - min_x + 2.0 * pad,
            max_y - min_y + 2.0 * pad
        );
        for e in &self.edges {
            let (a, b) = (pts[e.from], pts[e.to]);
            svg.push_str(&format!(
                "  <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"black\" stroke-width=\"{:.3}\"/>\n",
                a.0,
                -a.1,
                b.0,
                -b.1,
                0.01 * scale
            ));
        }
        for &(x, y) in &pts {
            svg.push_str(&format!(
                "  <circle cx=\"{x:.3}\" cy=\"{:.3}\" r=\"{:.3}\"/>\n",
                -y,
                0.02 * scale
            ));
        }
        svg.push_str("</svg>\n");
        svg
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rigidity::LatticeMatrix;
    use num_rational::BigRational;
    use rand::SeedableRng;

    fn fig1() -> PeriodicOrbitGraph {
        PeriodicOrbitGraph::from_triples(
            4,
            &[
                (1, 2, (0, 0)),
                (2, 3, (0, 0)),
                (3, 4, (0, 0)),
                (1, 4, (0, 0)),
                (1, 3, (-1, 0)),
                (1, 4, (0, 1)),
            ],
        )
        .unwrap()
    }

    fn random_config(n: usize) -> Configuration {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        Configuration::random(n, LatticeMatrix::identity(), &mut rng)
    }

    /// Brute force over all ordered pairs of derived vertices.
    fn expected_edge_count(graph: &PeriodicOrbitGraph, window: &Window) -> usize {
        let cells: Vec<[i64; 2]> = window.cells().collect();
        let mut count = 0;
        for e in graph.edges() {
            for a in &cells {
                for b in &cells {
                    if b[0] - a[0] == e.gain.a && b[1] - a[1] == e.gain.b {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn one_cell_one_edge() {
        let g = PeriodicOrbitGraph::from_triples(2, &[(1, 2, (0, 0))]).unwrap();
        let w = derive_window(&g, &random_config(2), &Window::block(1, 1)).unwrap();
        assert_eq!(w.vertices.len(), 2);
        assert_eq!(w.edges.len(), 1);
    }

    #[test]
    fn fig1_three_by_three() {
        let g = fig1();
        let window = Window::block(3, 3);
        let w = derive_window(&g, &random_config(4), &window).unwrap();
        assert_eq!(w.vertices.len(), 36);
        assert_eq!(w.edges.len(), expected_edge_count(&g, &window));
        assert_eq!(w.edges.len(), 48);
        for e in w.edges.iter().filter(|e| e.edge == 5) {
            let (a, b) = (&w.vertices[e.from], &w.vertices[e.to]);
            assert_eq!((a.vertex, b.vertex), (1, 3));
            assert_eq!([b.cell[0] - a.cell[0], b.cell[1] - a.cell[1]], [-1, 0]);
        }
    }

    #[test]
    fn positions_are_translated() {
        let g = PeriodicOrbitGraph::single_vertex();
        let lattice = LatticeMatrix::new(
            BigRational::from_integer(2.into()),
            BigRational::from_integer(1.into()),
            BigRational::from_integer(3.into()),
        )
        .unwrap();
        let c = Configuration::new(
            vec![[
                BigRational::new(1.into(), 2.into()),
                BigRational::new(1.into(), 4.into()),
            ]],
            lattice,
        )
        .unwrap();
        let w = derive_window(&g, &c, &Window { x: 1..2, y: 1..2 }).unwrap();
        assert_eq!(
            w.vertices[0].position,
            [
                BigRational::new(7.into(), 2.into()),
                BigRational::new(13.into(), 4.into())
            ]
        );
    }

    #[test]
    fn loop_leaves_single_cell() {
        let g = PeriodicOrbitGraph::from_triples(1, &[(1, 1, (1, 0))]).unwrap();
        let w = derive_window(&g, &random_config(1), &Window::block(1, 1)).unwrap();
        assert!(w.edges.is_empty());
        let empty = derive_window(&g, &random_config(1), &Window::block(0, 3)).unwrap();
        assert!(empty.vertices.is_empty() && empty.edges.is_empty());
        assert!(empty.to_svg(100.0).starts_with("<svg"));
    }
}
