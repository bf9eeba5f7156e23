//! Exhaustive small Brauer trees for sweeps.
//!
//! Shapes are unlabelled trees found by decoding every Prüfer sequence and
//! keeping one representative per canonical form. When the block has an
//! exceptional vertex the shapes are rooted there.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cyclic::CyclicGroupParams;
use crate::tree::{RawEdge, RawTree, RawVertex, Sign};

/// Edge list of the labelled tree on `0..k` with the given Prüfer sequence.
pub fn prufer_decode(k: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    assert_eq!(seq.len() + 2, k.max(2));
    if k < 2 {
        return Vec::new();
    }
    let mut degree = vec![1usize; k];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(k - 1);
    for &s in seq {
        let leaf = (0..k).find(|&v| degree[v] == 1).expect("a leaf remains");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..k).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn adjacency(k: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v].iter().filter(|&&w| w != parent).map(|&w| rooted_code(adj, w, v)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn for_each_labelled_tree(k: usize, mut f: impl FnMut(Vec<(usize, usize)>)) {
    if k == 1 {
        f(Vec::new());
        return;
    }
    let len = k - 2;
    let mut seq = vec![0usize; len];
    loop {
        f(prufer_decode(k, &seq));
        let mut pos = 0;
        loop {
            if pos == len {
                return;
            }
            seq[pos] += 1;
            if seq[pos] < k {
                break;
            }
            seq[pos] = 0;
            pos += 1;
        }
    }
}

/// Unlabelled trees on `k` vertices, as edge lists.
pub fn free_trees(k: usize) -> Vec<Vec<(usize, usize)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for_each_labelled_tree(k, |edges| {
        let adj = adjacency(k, &edges);
        let code = (0..k).map(|r| rooted_code(&adj, r, usize::MAX)).min().expect("k >= 1");
        if seen.insert(code) {
            out.push(edges);
        }
    });
    out
}

/// Unlabelled rooted trees on `k` vertices, as `(edges, root)`.
pub fn rooted_trees(k: usize) -> Vec<(Vec<(usize, usize)>, usize)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for_each_labelled_tree(k, |edges| {
        let adj = adjacency(k, &edges);
        for r in 0..k {
            if seen.insert(rooted_code(&adj, r, usize::MAX)) {
                out.push((edges.clone(), r));
            }
        }
    });
    out
}

fn cyclic_orders(items: &[usize]) -> Vec<Vec<usize>> {
    // fix the first item, permute the rest
    fn permute(rest: &mut Vec<usize>, k: usize, acc: &mut Vec<Vec<usize>>, head: usize) {
        if k == rest.len() {
            let mut v = vec![head];
            v.extend_from_slice(rest);
            acc.push(v);
            return;
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            permute(rest, k + 1, acc, head);
            rest.swap(k, i);
        }
    }
    match items.split_first() {
        None => vec![Vec::new()],
        Some((&head, tail)) => {
            let mut acc = Vec::new();
            permute(&mut tail.to_vec(), 0, &mut acc, head);
            acc
        }
    }
}

/// Incident edge indices around each vertex in edge order.
pub fn default_rotation(k: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut rot = vec![Vec::new(); k];
    for (j, &(a, b)) in edges.iter().enumerate() {
        rot[a].push(j);
        rot[b].push(j);
    }
    rot
}

/// Every rotation system of the tree: `Π (valency - 1)!` of them.
pub fn rotation_systems(k: usize, edges: &[(usize, usize)]) -> Vec<Vec<Vec<usize>>> {
    let mut systems = vec![Vec::new()];
    for around in default_rotation(k, edges) {
        let orders = cyclic_orders(&around);
        let mut next = Vec::with_capacity(systems.len() * orders.len());
        for s in &systems {
            for o in &orders {
                let mut t: Vec<Vec<usize>> = s.clone();
                t.push(o.clone());
                next.push(t);
            }
        }
        systems = next;
    }
    systems
}

pub fn vertex_label(v: usize) -> String {
    format!("v{v}")
}

pub fn edge_label(j: usize) -> String {
    format!("E{j}")
}

/// Assembles a [`RawTree`] on vertices `v0..` and edges `E0..`. The first
/// non-exceptional vertex gets `anchor_sign`.
pub fn raw_from_parts(
    p: u64,
    n: u32,
    edges: &[(usize, usize)],
    exceptional: Option<usize>,
    rotation: &[Vec<usize>],
    anchor_sign: Sign,
) -> RawTree {
    let k = edges.len() + 1;
    let mut raw = RawTree { p, n, e: Some(edges.len() as u64), ..RawTree::default() };
    for v in 0..k {
        raw.vertices.push(RawVertex { label: vertex_label(v), exceptional: exceptional == Some(v) });
    }
    for (j, &(a, b)) in edges.iter().enumerate() {
        raw.edges.push(RawEdge { label: edge_label(j), endpoints: (vertex_label(a), vertex_label(b)) });
    }
    for (v, around) in rotation.iter().enumerate() {
        if around.len() >= 2 {
            raw.rotation.insert(vertex_label(v), around.iter().map(|&j| edge_label(j)).collect());
        }
    }
    let anchor = (0..k).find(|&v| exceptional != Some(v)).expect("two vertices");
    raw.sign_anchors.push((vertex_label(anchor), anchor_sign));
    raw
}

/// `(p, n, e)` with `p^n <= max_pn`, `e | p - 1` and `e <= max_e`.
pub fn block_parameters(max_pn: u64, max_e: u64) -> Vec<(u64, u32, u64)> {
    let mut out = Vec::new();
    for p in 2..=max_pn {
        if CyclicGroupParams::new(p, 1).is_err() {
            continue;
        }
        let mut n = 1;
        while p.checked_pow(n).is_some_and(|q| q <= max_pn) {
            for e in (1..=max_e.min(p - 1)).filter(|e| (p - 1) % e == 0) {
                out.push((p, n, e));
            }
            n += 1;
        }
    }
    out
}

/// Edge list with the exceptional vertex, if any.
pub type Shape = (Vec<(usize, usize)>, Option<usize>);

/// Tree shapes with `e` edges: rooted at the exceptional vertex when
/// `rooted`, unrooted otherwise.
pub fn shapes(e: usize, rooted: bool) -> Vec<Shape> {
    if rooted {
        rooted_trees(e + 1).into_iter().map(|(edges, r)| (edges, Some(r))).collect()
    } else {
        free_trees(e + 1).into_iter().map(|edges| (edges, None)).collect()
    }
}

/// Whether the block `(p, n, e)` has an exceptional vertex.
pub fn has_exceptional(p: u64, n: u32, e: u64) -> bool {
    (p.pow(n) - 1) / e > 1
}

/// Trees over the given shapes with both sign conventions, and every rotation
/// system when `all_rotations` (otherwise the edge-order rotation only).
pub fn expand(p: u64, n: u32, shapes: &[Shape], all_rotations: bool) -> Vec<RawTree> {
    let mut out = Vec::new();
    for (edges, x) in shapes {
        let k = edges.len() + 1;
        let systems = if all_rotations { rotation_systems(k, edges) } else { vec![default_rotation(k, edges)] };
        for rot in systems {
            for sign in [Sign::Plus, Sign::Minus] {
                out.push(raw_from_parts(p, n, edges, *x, &rot, sign));
            }
        }
    }
    out
}

/// Every tree shape with `e` edges for the block `(p, n, e)`, every
/// exceptional placement and both sign conventions.
pub fn exhaustive(p: u64, n: u32, e: usize, all_rotations: bool) -> Vec<RawTree> {
    expand(p, n, &shapes(e, has_exceptional(p, n, e as u64)), all_rotations)
}
