use serde::Serialize;

use super::Digraph;
use crate::arcs::{ArcKind, ArcTally};

/// Outcome of one depth-first search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DfsResult {
    pub tally: ArcTally,
    /// Sizes of the trees in the order their roots were visited.
    pub tree_sizes: Vec<usize>,
    /// Vertices in discovery order.
    pub discovery_order: Vec<usize>,
    /// Tree parent of each vertex; `None` for roots.
    pub parent: Vec<Option<usize>>,
    /// Kind of every arc, aligned with [`Digraph::targets`].
    pub kinds: Vec<Vec<ArcKind>>,
}

impl DfsResult {
    pub fn tree_count(&self) -> usize {
        self.tree_sizes.len()
    }
}

/// Iterative DFS with the smallest undiscovered vertex as each new root and
/// arcs scanned in emission order; arcs are classified when scanned.
pub fn dfs_classify(g: &Digraph) -> DfsResult {
    let n = g.n();
    let mut disc: Vec<Option<usize>> = vec![None; n];
    let mut active = vec![false; n];
    let mut parent = vec![None; n];
    let mut kinds: Vec<Vec<ArcKind>> = (0..n).map(|v| Vec::with_capacity(g.outdegree(v))).collect();
    let mut tally = ArcTally::default();
    let mut order = Vec::with_capacity(n);
    let mut tree_sizes = Vec::new();
    // (vertex, next arc index)
    let mut stack: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root].is_some() {
            continue;
        }
        let before = order.len();
        disc[root] = Some(order.len());
        order.push(root);
        active[root] = true;
        stack.push((root, 0));
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            let Some(&u) = g.targets(v).get(*next) else {
                active[v] = false;
                stack.pop();
                continue;
            };
            *next += 1;
            let kind = match disc[u] {
                None => ArcKind::Tree,
                Some(_) if u == v => ArcKind::Loop,
                Some(_) if active[u] => ArcKind::Back,
                Some(du) if du > disc[v].unwrap() => ArcKind::Forward,
                Some(_) => ArcKind::Cross,
            };
            kinds[v].push(kind);
            tally.record(kind);
            if kind == ArcKind::Tree {
                disc[u] = Some(order.len());
                order.push(u);
                active[u] = true;
                parent[u] = Some(v);
                stack.push((u, 0));
            }
        }
        tree_sizes.push(order.len() - before);
    }
    DfsResult { tally, tree_sizes, discovery_order: order, parent, kinds }
}

/// Whether `a` is a proper ancestor of `b` in the forest.
pub fn is_ancestor(parent: &[Option<usize>], a: usize, b: usize) -> bool {
    let mut cur = parent[b];
    while let Some(c) = cur {
        if c == a {
            return true;
        }
        cur = parent[c];
    }
    false
}

/// Reclassifies every arc from the final forest alone: the first arc
/// `v → u` with `parent[u] = v` is the tree arc, then loops, arcs to proper
/// ancestors (back), to proper descendants (forward), and the rest (cross).
pub fn classify_post_hoc(g: &Digraph, parent: &[Option<usize>]) -> Vec<Vec<ArcKind>> {
    let n = g.n();
    let mut tree_seen = vec![false; n];
    (0..n)
        .map(|v| {
            g.targets(v)
                .iter()
                .map(|&u| {
                    if u == v {
                        ArcKind::Loop
                    } else if parent[u] == Some(v) && !tree_seen[u] {
                        tree_seen[u] = true;
                        ArcKind::Tree
                    } else if is_ancestor(parent, u, v) {
                        ArcKind::Back
                    } else if is_ancestor(parent, v, u) {
                        ArcKind::Forward
                    } else {
                        ArcKind::Cross
                    }
                })
                .collect()
        })
        .collect()
}
