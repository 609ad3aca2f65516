use crate::error::{Error, Result};

use super::PlanarGraph;

const NONE: usize = usize::MAX;

struct Blocks {
    articulation: Vec<bool>,
    blocks: Vec<Vec<(usize, usize)>>,
    components: usize,
}

/// Iterative Hopcroft–Tarjan lowpoint search, optionally ignoring one vertex.
fn decompose(g: &PlanarGraph, skip: usize) -> Blocks {
    let n = g.vertex_count();
    let mut disc = vec![NONE; n];
    let mut low = vec![0usize; n];
    let mut articulation = vec![false; n];
    let mut blocks = Vec::new();
    let mut components = 0;
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if root == skip || disc[root] != NONE {
            continue;
        }
        components += 1;
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        stack.push((root, NONE, 0));
        while let Some(frame) = stack.last_mut() {
            let (v, parent) = (frame.0, frame.1);
            let nbrs = g.neighbors(v);
            if frame.2 < nbrs.len() {
                let w = nbrs[frame.2];
                frame.2 += 1;
                if w == skip {
                    continue;
                }
                if disc[w] == NONE {
                    if v == root {
                        root_children += 1;
                    }
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        if u != root {
                            articulation[u] = true;
                        }
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (u, v) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
        if root_children >= 2 {
            articulation[root] = true;
        }
    }
    Blocks {
        articulation,
        blocks,
        components,
    }
}

pub fn is_connected(g: &PlanarGraph) -> bool {
    is_connected_without(g, &[])
}

/// Connectivity of `g` after deleting `removed`.
pub fn is_connected_without(g: &PlanarGraph, removed: &[usize]) -> bool {
    let n = g.vertex_count();
    let mut gone = vec![false; n];
    for &r in removed {
        gone[r] = true;
    }
    let Some(start) = (0..n).find(|&v| !gone[v]) else {
        return true;
    };
    let mut seen = gone.clone();
    seen[start] = true;
    let mut queue = vec![start];
    let mut reached = 1;
    while let Some(v) = queue.pop() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                queue.push(w);
            }
        }
    }
    reached == n - removed.len()
}

pub fn articulation_points(g: &PlanarGraph) -> Vec<usize> {
    let b = decompose(g, NONE);
    (0..g.vertex_count()).filter(|&v| b.articulation[v]).collect()
}

/// Edge sets of the biconnected components (blocks).
pub fn biconnected_components(g: &PlanarGraph) -> Vec<Vec<(usize, usize)>> {
    decompose(g, NONE).blocks
}

pub fn is_biconnected(g: &PlanarGraph) -> bool {
    if g.vertex_count() < 3 {
        return false;
    }
    let b = decompose(g, NONE);
    b.components == 1 && !b.articulation.iter().any(|&a| a)
}

/// No pair of vertices disconnects the graph.
///
/// Deletes each vertex in turn and asks whether the remainder is still
/// biconnected, `O(n (n + m))` overall.
pub fn is_three_connected(g: &PlanarGraph) -> Result<bool> {
    let n = g.vertex_count();
    if n < 4 {
        return Err(Error::UndefinedInput(format!(
            "3-connectivity needs at least 4 vertices, got {n}"
        )));
    }
    if (0..n).any(|v| g.degree(v) < 3) || !is_connected(g) {
        return Ok(false);
    }
    for v in 0..n {
        let b = decompose(g, v);
        if b.components != 1 || b.articulation.iter().any(|&a| a) {
            return Ok(false);
        }
    }
    Ok(true)
}
