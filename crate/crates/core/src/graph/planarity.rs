//! Planarity testing and embedding by path addition over fragments
//! (Demoucron, Malgrange and Pertuiset). Quadratic per block, which is ample
//! for the graph sizes this toolkit handles.

use std::collections::HashSet;

use crate::error::{Error, Result};

use super::connectivity::{biconnected_components, is_biconnected};
use super::PlanarGraph;

pub fn is_planar(g: &PlanarGraph) -> bool {
    let n = g.vertex_count();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return false;
    }
    biconnected_components(g).iter().all(|block| {
        if block.len() < 9 {
            // K5 and K3,3 both need at least nine edges
            return true;
        }
        let local = Local::from_edges(block);
        embed_block(&local.adj).is_some()
    })
}

/// Planar with exactly `3n - 6` edges.
pub fn is_maximal_planar(g: &PlanarGraph) -> Result<bool> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::UndefinedInput(format!(
            "maximal planarity needs at least 3 vertices, got {n}"
        )));
    }
    Ok(g.edge_count() == 3 * n - 6 && is_planar(g))
}

/// Computes a combinatorial embedding of a biconnected planar graph and
/// returns the graph with that rotation system attached.
pub fn planar_embedding(g: &PlanarGraph) -> Result<PlanarGraph> {
    if !is_biconnected(g) {
        return Err(Error::UndefinedInput("embedding requires a biconnected graph".into()));
    }
    let adj: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| g.neighbors(v).to_vec()).collect();
    let faces = embed_block(&adj).ok_or_else(|| Error::Validation("graph is not planar".into()))?;
    let rotation = rotation_from_faces(&adj, &faces)?;
    g.clone().with_rotation(rotation)
}

struct Local {
    adj: Vec<Vec<usize>>,
}

impl Local {
    fn from_edges(edges: &[(usize, usize)]) -> Local {
        let mut ids: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        ids.sort_unstable();
        ids.dedup();
        let index = |v: usize| ids.binary_search(&v).unwrap();
        let mut adj = vec![Vec::new(); ids.len()];
        for &(u, v) in edges {
            adj[index(u)].push(index(v));
            adj[index(v)].push(index(u));
        }
        Local { adj }
    }
}

/// Derives the rotation system from directed face cycles: after dart
/// `u -> v` a face continues with `v -> w`, so `w` succeeds `u` around `v`.
fn rotation_from_faces(adj: &[Vec<usize>], faces: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let n = adj.len();
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for f in faces {
        let len = f.len();
        for i in 0..len {
            let (u, v, w) = (f[i], f[(i + 1) % len], f[(i + 2) % len]);
            succ[v].push((u, w));
        }
    }
    let mut rotation = Vec::with_capacity(n);
    for v in 0..n {
        let deg = adj[v].len();
        let mut map = succ[v].clone();
        map.sort_unstable();
        if map.len() != deg {
            return Err(Error::Internal(format!("vertex {v}: {} face corners for degree {deg}", map.len())));
        }
        let next = |u: usize| map.binary_search_by_key(&u, |&(a, _)| a).map(|i| map[i].1);
        let mut rot = Vec::with_capacity(deg);
        let mut u = adj[v][0];
        for _ in 0..deg {
            rot.push(u);
            u = next(u).map_err(|_| Error::Internal(format!("broken rotation at {v}")))?;
        }
        if u != adj[v][0] {
            return Err(Error::Internal(format!("rotation at {v} is not a single cycle")));
        }
        rotation.push(rot);
    }
    Ok(rotation)
}

enum Fragment {
    Edge(usize, usize),
    Component { vertices: Vec<usize>, attachments: Vec<usize> },
}

impl Fragment {
    fn attachments(&self) -> Vec<usize> {
        match self {
            Fragment::Edge(u, v) => vec![*u, *v],
            Fragment::Component { attachments, .. } => attachments.clone(),
        }
    }
}

/// Faces (as directed cycles) of a planar embedding of a biconnected graph,
/// or `None` if the graph is not planar.
fn embed_block(adj: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let n = adj.len();
    let cycle = find_cycle(adj)?;
    let mut placed = vec![false; n];
    let mut placed_edges: HashSet<(usize, usize)> = HashSet::new();
    let key = |u: usize, v: usize| (u.min(v), u.max(v));
    for i in 0..cycle.len() {
        placed[cycle[i]] = true;
        placed_edges.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let total_edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    let mut faces = vec![cycle.clone(), cycle.iter().rev().copied().collect::<Vec<_>>()];

    while placed_edges.len() < total_edges {
        let fragments = fragments(adj, &placed, &placed_edges);
        let membership: Vec<Vec<bool>> = faces
            .iter()
            .map(|f| {
                let mut m = vec![false; n];
                for &v in f {
                    m[v] = true;
                }
                m
            })
            .collect();
        let mut choice: Option<(usize, usize, usize)> = None; // (fragment, face, admissible count)
        for (i, frag) in fragments.iter().enumerate() {
            let att = frag.attachments();
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| att.iter().all(|&a| membership[f][a]))
                .collect();
            match admissible.len() {
                0 => return None,
                c => {
                    if choice.is_none_or(|(_, _, best)| c < best) {
                        choice = Some((i, admissible[0], c));
                    }
                }
            }
            if choice.is_some_and(|(_, _, c)| c == 1) {
                break;
            }
        }
        let (fi, face_idx, _) = choice?;
        let path = fragment_path(adj, &fragments[fi], &placed);
        for w in path.windows(2) {
            placed_edges.insert(key(w[0], w[1]));
        }
        for &v in &path {
            placed[v] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (a, b) = (path[0], *path.last().unwrap());
        let ia = face.iter().position(|&v| v == a).unwrap();
        let ib = face.iter().position(|&v| v == b).unwrap();
        let len = face.len();
        let walk = |from: usize, to: usize| -> Vec<usize> {
            let mut out = vec![face[from]];
            let mut i = from;
            while i != to {
                i = (i + 1) % len;
                out.push(face[i]);
            }
            out
        };
        let inner = &path[1..path.len() - 1];
        let mut first = walk(ia, ib);
        first.extend(inner.iter().rev());
        let mut second = walk(ib, ia);
        second.extend(inner.iter());
        faces.push(first);
        faces.push(second);
    }
    Some(faces)
}

fn find_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some(top) = stack.last_mut() {
        let v = top.0;
        if top.1 == adj[v].len() {
            stack.pop();
            continue;
        }
        let w = adj[v][top.1];
        top.1 += 1;
        if depth[w] == usize::MAX {
            depth[w] = depth[v] + 1;
            parent[w] = v;
            stack.push((w, 0));
        } else if w != parent[v] && depth[w] < depth[v] {
            let mut cycle = vec![v];
            let mut x = v;
            while x != w {
                x = parent[x];
                cycle.push(x);
            }
            return Some(cycle);
        }
    }
    None
}

fn fragments(adj: &[Vec<usize>], placed: &[bool], placed_edges: &HashSet<(usize, usize)>) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for u in 0..n {
        if !placed[u] {
            continue;
        }
        for &v in &adj[u] {
            if u < v && placed[v] && !placed_edges.contains(&(u, v)) {
                out.push(Fragment::Edge(u, v));
            }
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if placed[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut vertices = vec![s];
        let mut attach = Vec::new();
        let mut i = 0;
        while i < vertices.len() {
            let v = vertices[i];
            i += 1;
            for &w in &adj[v] {
                if placed[w] {
                    attach.push(w);
                } else if !seen[w] {
                    seen[w] = true;
                    vertices.push(w);
                }
            }
        }
        attach.sort_unstable();
        attach.dedup();
        out.push(Fragment::Component {
            vertices,
            attachments: attach,
        });
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(adj: &[Vec<usize>], frag: &Fragment, placed: &[bool]) -> Vec<usize> {
    match frag {
        Fragment::Edge(u, v) => vec![*u, *v],
        Fragment::Component { vertices, attachments } => {
            let a = attachments[0];
            let inside: HashSet<usize> = vertices.iter().copied().collect();
            let start = *adj[a].iter().find(|w| inside.contains(w)).expect("attachment touches fragment");
            let mut prev = std::collections::HashMap::new();
            prev.insert(start, usize::MAX);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                if let Some(&b) = adj[v].iter().find(|&&w| placed[w] && w != a) {
                    let mut path = vec![b];
                    let mut x = v;
                    while x != usize::MAX {
                        path.push(x);
                        x = prev[&x];
                    }
                    path.push(a);
                    path.reverse();
                    return path;
                }
                for &w in &adj[v] {
                    if inside.contains(&w) && !prev.contains_key(&w) {
                        prev.insert(w, v);
                        queue.push_back(w);
                    }
                }
            }
            unreachable!("biconnected fragment has two attachments")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k33() -> PlanarGraph {
        PlanarGraph::new(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn classic_cases() {
        assert!(is_planar(&PlanarGraph::complete(4)));
        assert!(!is_planar(&PlanarGraph::complete(5)));
        assert!(!is_planar(&k33()));
        assert!(is_planar(&PlanarGraph::wheel(9)));
    }

    #[test]
    fn petersen_is_not_planar() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let g = PlanarGraph::new(10, outer.chain(spokes).chain(inner)).unwrap();
        assert!(!is_planar(&g));
    }

    #[test]
    fn k5_minus_edge_is_planar_and_maximal() {
        let g = PlanarGraph::new(5, PlanarGraph::complete(5).edges().iter().copied().filter(|&e| e != (0, 1))).unwrap();
        assert!(is_planar(&g));
        assert!(is_maximal_planar(&g).unwrap());
    }

    #[test]
    fn maximal_planar_small_cases() {
        assert!(is_maximal_planar(&PlanarGraph::complete(3)).unwrap());
        assert!(is_maximal_planar(&PlanarGraph::complete(4)).unwrap());
        assert!(!is_maximal_planar(&PlanarGraph::cycle(5)).unwrap());
        assert!(is_maximal_planar(&PlanarGraph::new(2, [(0, 1)]).unwrap()).is_err());
    }

    #[test]
    fn embedding_satisfies_euler() {
        for g in [PlanarGraph::complete(4), PlanarGraph::wheel(8), PlanarGraph::cycle(6)] {
            let e = planar_embedding(&g).unwrap();
            assert!(e.euler_check().unwrap());
        }
    }

    #[test]
    fn embedding_rejects_nonplanar() {
        assert!(planar_embedding(&k33()).is_err());
    }

    #[test]
    fn planar_with_cut_vertex() {
        // two K4s sharing a vertex
        let mut edges: Vec<(usize, usize)> = PlanarGraph::complete(4).edges().to_vec();
        edges.extend([(3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)]);
        let g = PlanarGraph::new(7, edges).unwrap();
        assert!(is_planar(&g));
    }
}
