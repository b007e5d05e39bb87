use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::lp::{contact_point, Contact};
use super::ConvexPolyhedron;
use crate::bridges::{certify_arc, synthesize_bridge, BridgeKind, BridgeSpec, MonomialArc};

/// Caller-supplied guidance for the bridge between two regions.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BridgeHint {
    pub regions: (usize, usize),
    pub base_point: Option<Vec<f64>>,
    pub frame: Option<Vec<Vec<f64>>>,
    pub exponents: Option<Vec<u32>>,
}

/// Edge `i → j`; the bridge runs from `K_i` (`t < 0`) to `K_j` (`t > 0`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub i: usize,
    pub j: usize,
    pub bridge: BridgeSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionGraph {
    pub regions: Vec<ConvexPolyhedron>,
    pub edges: Vec<GraphEdge>,
    /// Pairs whose closures meet but for which no bridge was certified.
    pub unknown: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RouteError {
    #[error("region {0} does not exist")]
    MissingRegion(usize),
    #[error("regions {from} and {to} are not connected")]
    Disconnected { from: usize, to: usize },
}

impl RegionGraph {
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |e| {
            if e.i == v {
                Some(e.j)
            } else if e.j == v {
                Some(e.i)
            } else {
                None
            }
        })
    }

    /// The bridge oriented from `from` to `to`, if the edge exists.
    pub fn bridge(&self, from: usize, to: usize) -> Option<BridgeSpec> {
        self.edges.iter().find_map(|e| {
            if (e.i, e.j) == (from, to) {
                Some(e.bridge.clone())
            } else if (e.j, e.i) == (from, to) {
                Some(e.bridge.reversed())
            } else {
                None
            }
        })
    }
}

fn hinted_bridge(
    k1: &ConvexPolyhedron,
    k2: &ConvexPolyhedron,
    hint: &BridgeHint,
    q: &[f64],
) -> Option<BridgeSpec> {
    let frame = hint.frame.clone()?;
    let exponents = hint.exponents.clone()?;
    let d = frame.len();
    let arc = MonomialArc::new(q.to_vec(), frame, exponents, vec![1.0; d]).ok()?;
    let arc = certify_arc(k1, k2, &arc).ok()?;
    let kind = if arc.exponents == [2, 3] {
        BridgeKind::Cuspidal
    } else {
        BridgeKind::Moment
    };
    Some(BridgeSpec {
        kind,
        base_point: q.to_vec(),
        left_region: 0,
        right_region: 0,
        degree: arc.degree(),
        certified: true,
        arc,
    })
}

/// Probes every pair of regions for a certified bridge.
///
/// Pairs with disjoint closures get no edge. Pairs that touch but defeat the
/// bridge search are listed in [`RegionGraph::unknown`].
pub fn build_region_graph(
    regions: &[ConvexPolyhedron],
    hints: &[BridgeHint],
) -> Result<RegionGraph, RouteError> {
    for h in hints {
        for r in [h.regions.0, h.regions.1] {
            if r >= regions.len() {
                return Err(RouteError::MissingRegion(r));
            }
        }
    }
    let mut edges = Vec::new();
    let mut unknown = Vec::new();
    for i in 0..regions.len() {
        for j in i + 1..regions.len() {
            let hint = hints
                .iter()
                .find(|h| h.regions == (i, j) || h.regions == (j, i));
            let flipped = hint.is_some_and(|h| h.regions == (j, i));
            let (a, b) = if flipped { (j, i) } else { (i, j) };
            let (ka, kb) = (&regions[a], &regions[b]);
            let base_hint = hint.and_then(|h| h.base_point.as_deref());
            let q = match contact_point(ka, kb, base_hint) {
                Ok(Contact::Overlap { point, .. } | Contact::Touching { point }) => point,
                Ok(Contact::Disjoint { .. }) => continue,
                Err(_) => {
                    unknown.push((i, j));
                    continue;
                }
            };
            let spec = hint
                .and_then(|h| hinted_bridge(ka, kb, h, &q))
                .or_else(|| synthesize_bridge(ka, kb, &q).ok());
            match spec {
                Some(s) => edges.push(GraphEdge {
                    i: a,
                    j: b,
                    bridge: s.with_regions(a, b),
                }),
                None => unknown.push((i, j)),
            }
        }
    }
    Ok(RegionGraph {
        regions: regions.to_vec(),
        edges,
        unknown,
    })
}

fn shortest_walk(graph: &RegionGraph, from: usize, to: usize) -> Option<Vec<usize>> {
    let n = graph.regions.len();
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut walk = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                walk.push(cur);
            }
            walk.reverse();
            return Some(walk);
        }
        let mut next: Vec<usize> = graph.neighbors(v).filter(|&u| !seen[u]).collect();
        next.sort_unstable();
        next.dedup();
        for u in next {
            seen[u] = true;
            prev[u] = v;
            queue.push_back(u);
        }
    }
    None
}

/// A walk visiting `required` in order, shortest between consecutive entries.
pub fn route_through_regions(
    graph: &RegionGraph,
    required: &[usize],
) -> Result<Vec<usize>, RouteError> {
    if let Some(&bad) = required.iter().find(|&&r| r >= graph.regions.len()) {
        return Err(RouteError::MissingRegion(bad));
    }
    let Some(&first) = required.first() else {
        return Ok(Vec::new());
    };
    let mut walk = vec![first];
    for pair in required.windows(2) {
        let leg = shortest_walk(graph, pair[0], pair[1]).ok_or(RouteError::Disconnected {
            from: pair[0],
            to: pair[1],
        })?;
        walk.extend_from_slice(&leg[1..]);
    }
    Ok(walk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::AffineFunctional;

    fn boxes(spec: &[([f64; 2], [f64; 2])]) -> Vec<ConvexPolyhedron> {
        spec.iter()
            .map(|(lo, hi)| ConvexPolyhedron::from_box(lo, hi).unwrap())
            .collect()
    }

    fn tri(cs: &[([f64; 2], f64)]) -> ConvexPolyhedron {
        ConvexPolyhedron::new(
            cs.iter()
                .map(|(a, b)| AffineFunctional::new(a.to_vec(), *b).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn overlapping_rectangles_get_cuspidal_edge() {
        let g = build_region_graph(
            &boxes(&[([0.0, 0.0], [2.0, 1.0]), ([0.0, 0.0], [1.0, 2.0])]),
            &[],
        )
        .unwrap();
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].bridge.kind, BridgeKind::Cuspidal);
    }

    #[test]
    fn touching_triangles_get_moment_edge() {
        let right = tri(&[([1.0, -1.0], 0.0), ([0.0, 1.0], 0.0), ([-1.0, 0.0], 1.0)]);
        let left = tri(&[([-1.0, -1.0], 0.0), ([0.0, 1.0], 0.0), ([1.0, 0.0], 1.0)]);
        let g = build_region_graph(&[left, right], &[]).unwrap();
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].bridge.kind, BridgeKind::Moment);
        assert!(g.bridge(1, 0).is_some());
    }

    #[test]
    fn disjoint_squares_have_no_edge() {
        let g = build_region_graph(
            &boxes(&[([0.0, 0.0], [1.0, 1.0]), ([2.0, 2.0], [3.0, 3.0])]),
            &[],
        )
        .unwrap();
        assert!(g.edges.is_empty() && g.unknown.is_empty());
        assert_eq!(
            route_through_regions(&g, &[0, 1]),
            Err(RouteError::Disconnected { from: 0, to: 1 })
        );
    }

    #[test]
    fn missing_region_in_hint() {
        let hint = BridgeHint {
            regions: (0, 5),
            ..Default::default()
        };
        let err = build_region_graph(&boxes(&[([0.0, 0.0], [1.0, 1.0])]), &[hint]).unwrap_err();
        assert_eq!(err, RouteError::MissingRegion(5));
    }

    #[test]
    fn routing_examples() {
        let g = build_region_graph(
            &boxes(&[
                ([0.0, 0.0], [2.0, 1.0]),
                ([1.0, 0.0], [3.0, 1.0]),
                ([2.5, 0.0], [4.0, 1.0]),
            ]),
            &[],
        )
        .unwrap();
        assert_eq!(route_through_regions(&g, &[0, 0]).unwrap(), vec![0]);
        assert_eq!(route_through_regions(&g, &[0, 2]).unwrap(), vec![0, 1, 2]);
    }
}
