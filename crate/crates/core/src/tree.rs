//! Planar embedded Brauer trees.
//!
//! Labels are opaque strings. Internally vertices and edges are numbered in
//! lexicographic label order, so every query is deterministic.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Neg;

use thiserror::Error;

use crate::cyclic::{CyclicGroupParams, ParamError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("inertial index e = {e} does not divide p - 1 = {}", .p - 1)]
    DivisibilityViolation { p: u64, e: u64 },
    #[error("expected {expected} edges, found {found}")]
    EdgeCountMismatch { expected: u64, found: usize },
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("expected {expected} exceptional vertices, found {found}")]
    ExceptionalCount { expected: usize, found: usize },
    #[error("bad rotation at vertex {vertex:?}: {reason}")]
    BadRotation { vertex: String, reason: String },
    #[error("sign anchors disagree at vertex {0:?}")]
    SignConflict(String),
    #[error("edge {edge:?} is not incident to vertex {vertex:?}")]
    NotIncident { edge: String, vertex: String },
    #[error("the tree has no exceptional vertex (m = 1)")]
    NoExceptionalVertex,
    #[error("the tree has no non-exceptional leaf")]
    NoNonExceptionalLeaf,
    #[error("edge {0:?} has no non-exceptional leaf as an endpoint")]
    NotALeafEdge(String),
    #[error("vertex {0:?} is not a leaf")]
    NotALeaf(String),
    #[error("vertex {0:?} is the exceptional vertex")]
    IsExceptional(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// `(p, n, e, m)` with `e | p - 1` and `m = (p^n - 1) / e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockParams {
    group: CyclicGroupParams,
    e: u64,
    m: u64,
}

impl BlockParams {
    pub fn new(p: u64, n: u32, e: u64) -> Result<Self, TreeError> {
        let group = CyclicGroupParams::new(p, n)?;
        if e == 0 || !(p - 1).is_multiple_of(e) {
            return Err(TreeError::DivisibilityViolation { p, e });
        }
        Ok(Self { group, e, m: (group.order() - 1) / e })
    }

    pub fn group(&self) -> CyclicGroupParams {
        self.group
    }

    pub fn p(&self) -> u64 {
        self.group.p()
    }

    pub fn n(&self) -> u32 {
        self.group.n()
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// Number of rows of the stable AR tube, `em = p^n - 1`.
    pub fn tube_rows(&self) -> u64 {
        self.e * self.m
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawVertex {
    pub label: String,
    pub exceptional: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawEdge {
    pub label: String,
    pub endpoints: (String, String),
}

/// Unvalidated tree description.
///
/// `rotation` lists the incident edges counter-clockwise; vertices of valency
/// at most 2 may be omitted. `sign_anchors` fixes absolute signs; when empty
/// the lexicographically least non-exceptional leaf is positive.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawTree {
    pub p: u64,
    pub n: u32,
    pub e: Option<u64>,
    pub vertices: Vec<RawVertex>,
    pub edges: Vec<RawEdge>,
    pub rotation: BTreeMap<String, Vec<String>>,
    pub sign_anchors: Vec<(String, Sign)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
struct Vertex {
    label: String,
    exceptional: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Edge {
    label: String,
    ends: [VertexId; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerTree {
    params: BlockParams,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    rotation: Vec<Vec<EdgeId>>,
    signs: Vec<Sign>,
    anchor: (VertexId, Sign),
    exceptional: Option<VertexId>,
    toward: Vec<Option<EdgeId>>,
    depth: Vec<usize>,
}

/// A hook: the uniserial module with head `top_edge` followed by the heart
/// series around `body`. Its lifts afford the character of `body`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hook {
    pub top_edge: EdgeId,
    pub body: VertexId,
    pub composition: Vec<EdgeId>,
    pub sign: Sign,
}

impl Hook {
    pub fn character(&self) -> VertexId {
        self.body
    }

    pub fn socle(&self) -> EdgeId {
        *self.composition.last().expect("hooks are non-zero")
    }

    pub fn len(&self) -> usize {
        self.composition.len()
    }

    pub fn is_empty(&self) -> bool {
        self.composition.is_empty()
    }

    pub fn is_simple(&self) -> bool {
        self.composition.len() == 1
    }

    pub fn key(&self) -> (EdgeId, VertexId) {
        (self.top_edge, self.body)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PimStructure {
    pub edge: EdgeId,
    pub a: VertexId,
    pub b: VertexId,
    pub q_a: Vec<EdgeId>,
    pub q_b: Vec<EdgeId>,
}

impl PimStructure {
    /// `Φ = χ_a + χ_b`.
    pub fn projective_character(&self) -> (VertexId, VertexId) {
        (self.a, self.b)
    }

    pub fn composition_length(&self) -> usize {
        self.q_a.len() + self.q_b.len() + 2
    }
}

/// The unique simple path `χ_0, E_1, χ_1, ..., E_{l+1}, χ_Λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalPath {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl ExceptionalPath {
    /// Number of interior vertices.
    pub fn l(&self) -> usize {
        self.vertices.len().saturating_sub(2)
    }
}

fn sorted_unique<'a>(labels: impl Iterator<Item = &'a String>) -> Result<Vec<String>, TreeError> {
    let mut seen = BTreeSet::new();
    for l in labels {
        if !seen.insert(l.clone()) {
            return Err(TreeError::DuplicateLabel(l.clone()));
        }
    }
    Ok(seen.into_iter().collect())
}

impl BrauerTree {
    pub fn validate(raw: &RawTree) -> Result<Self, TreeError> {
        let e = raw.e.unwrap_or(raw.edges.len() as u64);
        let params = BlockParams::new(raw.p, raw.n, e)?;
        if raw.edges.len() as u64 != e {
            return Err(TreeError::EdgeCountMismatch { expected: e, found: raw.edges.len() });
        }
        if raw.vertices.len() as u64 != e + 1 {
            return Err(TreeError::NotATree(alloc::format!(
                "{} edges need {} vertices, found {}",
                e,
                e + 1,
                raw.vertices.len()
            )));
        }

        let vlabels = sorted_unique(raw.vertices.iter().map(|v| &v.label))?;
        let elabels = sorted_unique(raw.edges.iter().map(|e| &e.label))?;
        let vindex: BTreeMap<&str, VertexId> =
            vlabels.iter().enumerate().map(|(i, l)| (l.as_str(), VertexId(i))).collect();
        let eindex: BTreeMap<&str, EdgeId> =
            elabels.iter().enumerate().map(|(i, l)| (l.as_str(), EdgeId(i))).collect();
        let lookup_v = |l: &str| vindex.get(l).copied().ok_or_else(|| TreeError::UnknownVertex(l.to_string()));

        let mut vertices: Vec<Vertex> = vlabels.iter().map(|l| Vertex { label: l.clone(), exceptional: false }).collect();
        for v in &raw.vertices {
            vertices[vindex[v.label.as_str()].0].exceptional = v.exceptional;
        }
        let mut edges: Vec<Edge> =
            elabels.iter().map(|l| Edge { label: l.clone(), ends: [VertexId(0), VertexId(0)] }).collect();
        for ed in &raw.edges {
            let a = lookup_v(&ed.endpoints.0)?;
            let b = lookup_v(&ed.endpoints.1)?;
            if a == b {
                return Err(TreeError::NotATree(alloc::format!("edge {:?} is a loop", ed.label)));
            }
            edges[eindex[ed.label.as_str()].0].ends = if a < b { [a, b] } else { [b, a] };
        }

        let nv = vertices.len();
        let mut incident: Vec<Vec<EdgeId>> = vec![Vec::new(); nv];
        for (i, ed) in edges.iter().enumerate() {
            incident[ed.ends[0].0].push(EdgeId(i));
            incident[ed.ends[1].0].push(EdgeId(i));
        }
        // e + 1 vertices and e edges: connected iff acyclic
        let mut seen = vec![false; nv];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &ed in &incident[v] {
                let w = edges[ed.0].ends.iter().find(|&&w| w.0 != v).unwrap().0;
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(TreeError::NotATree(alloc::format!("vertex {:?} is not connected", vertices[v].label)));
        }

        let exc: Vec<VertexId> = (0..nv).filter(|&v| vertices[v].exceptional).map(VertexId).collect();
        let expected = usize::from(params.m() > 1);
        if exc.len() != expected {
            return Err(TreeError::ExceptionalCount { expected, found: exc.len() });
        }
        let exceptional = exc.first().copied();

        for key in raw.rotation.keys() {
            lookup_v(key)?;
        }
        let mut rotation = Vec::with_capacity(nv);
        for (v, inc) in incident.iter().enumerate() {
            let label = &vertices[v].label;
            let bad = |reason: String| TreeError::BadRotation { vertex: label.clone(), reason };
            let order: Vec<EdgeId> = match raw.rotation.get(label) {
                Some(list) => {
                    let mut ids = Vec::with_capacity(list.len());
                    for l in list {
                        let id = eindex.get(l.as_str()).copied().ok_or_else(|| bad(alloc::format!("unknown edge {l:?}")))?;
                        if !inc.contains(&id) {
                            return Err(bad(alloc::format!("edge {l:?} is not incident")));
                        }
                        if ids.contains(&id) {
                            return Err(bad(alloc::format!("edge {l:?} is listed twice")));
                        }
                        ids.push(id);
                    }
                    if ids.len() != inc.len() {
                        return Err(bad(alloc::format!("lists {} of {} incident edges", ids.len(), inc.len())));
                    }
                    ids
                }
                None if inc.len() <= 2 => inc.clone(),
                None => return Err(bad(alloc::format!("missing cyclic order for {} incident edges", inc.len()))),
            };
            rotation.push(normalize_cycle(order));
        }

        let mut tree = BrauerTree {
            params,
            vertices,
            edges,
            rotation,
            signs: vec![Sign::Plus; nv],
            anchor: (VertexId(0), Sign::Plus),
            exceptional,
            toward: vec![None; nv],
            depth: vec![0; nv],
        };

        let anchors: Vec<(VertexId, Sign)> = if raw.sign_anchors.is_empty() {
            let leaf = tree.default_anchor().ok_or(TreeError::NoNonExceptionalLeaf)?;
            vec![(leaf, Sign::Plus)]
        } else {
            raw.sign_anchors.iter().map(|(l, s)| Ok((lookup_v(l)?, *s))).collect::<Result<_, TreeError>>()?
        };
        tree.anchor = anchors[0];
        tree.signs = tree.propagate_signs(anchors[0]);
        for &(v, s) in &anchors[1..] {
            if tree.signs[v.0] != s {
                return Err(TreeError::SignConflict(tree.vertices[v.0].label.clone()));
            }
        }

        if let Some(x) = exceptional {
            let mut queue = VecDeque::from([x]);
            let mut visited = vec![false; nv];
            visited[x.0] = true;
            while let Some(v) = queue.pop_front() {
                for &ed in &tree.rotation[v.0] {
                    let w = tree.other_end_unchecked(ed, v);
                    if !visited[w.0] {
                        visited[w.0] = true;
                        tree.toward[w.0] = Some(ed);
                        tree.depth[w.0] = tree.depth[v.0] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        Ok(tree)
    }

    fn default_anchor(&self) -> Option<VertexId> {
        self.vertex_ids().find(|&v| self.is_leaf(v) && !self.is_exceptional(v))
    }

    fn propagate_signs(&self, (start, sign): (VertexId, Sign)) -> Vec<Sign> {
        let mut signs: Vec<Option<Sign>> = vec![None; self.vertices.len()];
        signs[start.0] = Some(sign);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let s = signs[v.0].unwrap();
            for &ed in &self.rotation[v.0] {
                let w = self.other_end_unchecked(ed, v);
                if signs[w.0].is_none() {
                    signs[w.0] = Some(-s);
                    queue.push_back(w);
                }
            }
        }
        signs.into_iter().map(|s| s.unwrap()).collect()
    }

    /// The same tree with every sign flipped.
    pub fn with_negated_signs(&self) -> Self {
        let mut t = self.clone();
        t.anchor.1 = -t.anchor.1;
        for s in &mut t.signs {
            *s = -*s;
        }
        t
    }

    pub fn params(&self) -> BlockParams {
        self.params
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_label(&self, v: VertexId) -> &str {
        &self.vertices[v.0].label
    }

    pub fn edge_label(&self, e: EdgeId) -> &str {
        &self.edges[e.0].label
    }

    pub fn vertex_by_label(&self, label: &str) -> Result<VertexId, TreeError> {
        self.vertices
            .binary_search_by(|v| v.label.as_str().cmp(label))
            .map(VertexId)
            .map_err(|_| TreeError::UnknownVertex(label.to_string()))
    }

    pub fn edge_by_label(&self, label: &str) -> Result<EdgeId, TreeError> {
        self.edges
            .binary_search_by(|e| e.label.as_str().cmp(label))
            .map(EdgeId)
            .map_err(|_| TreeError::UnknownEdge(label.to_string()))
    }

    pub fn is_exceptional(&self, v: VertexId) -> bool {
        self.vertices[v.0].exceptional
    }

    pub fn exceptional(&self) -> Option<VertexId> {
        self.exceptional
    }

    pub fn require_exceptional(&self) -> Result<VertexId, TreeError> {
        self.exceptional.ok_or(TreeError::NoExceptionalVertex)
    }

    /// Endpoints in increasing vertex order.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let [a, b] = self.edges[e.0].ends;
        (a, b)
    }

    fn other_end_unchecked(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.edges[e.0].ends;
        if a == v {
            b
        } else {
            a
        }
    }

    fn not_incident(&self, e: EdgeId, v: VertexId) -> TreeError {
        TreeError::NotIncident { edge: self.edge_label(e).to_string(), vertex: self.vertex_label(v).to_string() }
    }

    pub fn is_incident(&self, e: EdgeId, v: VertexId) -> bool {
        self.edges[e.0].ends.contains(&v)
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> Result<VertexId, TreeError> {
        if !self.is_incident(e, v) {
            return Err(self.not_incident(e, v));
        }
        Ok(self.other_end_unchecked(e, v))
    }

    pub fn valency(&self, v: VertexId) -> usize {
        self.rotation[v.0].len()
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.valency(v) == 1
    }

    pub fn leaves(&self) -> Vec<VertexId> {
        self.vertex_ids().filter(|&v| self.is_leaf(v)).collect()
    }

    /// Counter-clockwise order of the edges at `v`, starting from the
    /// smallest edge label.
    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.rotation[v.0]
    }

    pub fn sign(&self, v: VertexId) -> Sign {
        self.signs[v.0]
    }

    pub fn sign_anchor(&self) -> (VertexId, Sign) {
        self.anchor
    }

    /// Counter-clockwise neighbour of `e` around `v`.
    pub fn successor(&self, e: EdgeId, v: VertexId) -> Result<EdgeId, TreeError> {
        self.step(e, v, 1)
    }

    pub fn predecessor(&self, e: EdgeId, v: VertexId) -> Result<EdgeId, TreeError> {
        let r = self.rotation[v.0].len();
        self.step(e, v, r - 1)
    }

    fn step(&self, e: EdgeId, v: VertexId, by: usize) -> Result<EdgeId, TreeError> {
        let rot = &self.rotation[v.0];
        let pos = rot.iter().position(|&x| x == e).ok_or_else(|| self.not_incident(e, v))?;
        Ok(rot[(pos + by) % rot.len()])
    }

    /// The edge leaving `v` towards the exceptional vertex.
    pub fn toward_exceptional(&self, v: VertexId) -> Option<EdgeId> {
        self.toward[v.0]
    }

    /// Number of edges between `v` and the exceptional vertex.
    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[v.0]
    }

    /// Heart series `Q_v` of the projective cover of `e`, read around `v`.
    pub fn heart_series(&self, e: EdgeId, v: VertexId) -> Result<Vec<EdgeId>, TreeError> {
        let rot = &self.rotation[v.0];
        let pos = rot.iter().position(|&x| x == e).ok_or_else(|| self.not_incident(e, v))?;
        let r = rot.len();
        let walk: Vec<EdgeId> = (1..r).map(|k| rot[(pos + k) % r]).collect();
        if !self.is_exceptional(v) {
            return Ok(walk);
        }
        let m = self.params.m() as usize;
        let mut q = Vec::with_capacity(r * m - 1);
        for k in 0..m {
            q.extend_from_slice(&walk);
            if k + 1 < m {
                q.push(e);
            }
        }
        Ok(q)
    }

    pub fn pim(&self, e: EdgeId) -> PimStructure {
        let (a, b) = self.endpoints(e);
        PimStructure {
            edge: e,
            a,
            b,
            q_a: self.heart_series(e, a).expect("endpoint"),
            q_b: self.heart_series(e, b).expect("endpoint"),
        }
    }

    pub fn pims(&self) -> Vec<PimStructure> {
        self.edge_ids().map(|e| self.pim(e)).collect()
    }

    pub fn hook(&self, top: EdgeId, body: VertexId) -> Result<Hook, TreeError> {
        let mut composition = vec![top];
        composition.extend(self.heart_series(top, body)?);
        Ok(Hook { top_edge: top, body, composition, sign: self.sign(body) })
    }

    /// All `2e` hooks, ordered by (edge, vertex).
    pub fn hooks(&self) -> Vec<Hook> {
        self.edge_ids()
            .flat_map(|e| {
                let (a, b) = self.endpoints(e);
                [self.hook(e, a).unwrap(), self.hook(e, b).unwrap()]
            })
            .collect()
    }

    /// `Ω(H)`: the hook at the far end of the top edge, headed by the
    /// successor of that edge there.
    pub fn omega_on_boundary(&self, h: &Hook) -> Hook {
        let far = self.other_end_unchecked(h.top_edge, h.body);
        let top = self.successor(h.top_edge, far).expect("incident");
        self.hook(top, far).expect("incident")
    }

    /// The Ω-orbit of the simple module at a non-exceptional leaf of `start`.
    pub fn greens_walk(&self, start: EdgeId) -> Result<Vec<Hook>, TreeError> {
        let (a, b) = self.endpoints(start);
        let leaf = [a, b]
            .into_iter()
            .find(|&v| self.is_leaf(v) && !self.is_exceptional(v))
            .ok_or_else(|| TreeError::NotALeafEdge(self.edge_label(start).to_string()))?;
        let mut h = self.hook(start, leaf)?;
        let len = 2 * self.edges.len();
        let mut walk = Vec::with_capacity(len);
        for _ in 0..len {
            let next = self.omega_on_boundary(&h);
            walk.push(h);
            h = next;
        }
        Ok(walk)
    }

    /// Green's walk from the least non-exceptional leaf.
    pub fn default_greens_walk(&self) -> Result<Vec<Hook>, TreeError> {
        let leaf = self.default_anchor().ok_or(TreeError::NoNonExceptionalLeaf)?;
        self.greens_walk(self.rotation[leaf.0][0])
    }

    /// Path from an arbitrary non-exceptional vertex to `χ_Λ`.
    pub fn path_to_exceptional_from(&self, v: VertexId) -> Result<ExceptionalPath, TreeError> {
        self.require_exceptional()?;
        if self.is_exceptional(v) {
            return Err(TreeError::IsExceptional(self.vertex_label(v).to_string()));
        }
        let mut vertices = vec![v];
        let mut edges = Vec::new();
        let mut cur = v;
        while let Some(e) = self.toward[cur.0] {
            edges.push(e);
            cur = self.other_end_unchecked(e, cur);
            vertices.push(cur);
        }
        Ok(ExceptionalPath { vertices, edges })
    }

    /// Path from the leaf `χ_0` to `χ_Λ`.
    pub fn path_to_exceptional(&self, leaf: VertexId) -> Result<ExceptionalPath, TreeError> {
        self.require_exceptional()?;
        if !self.is_leaf(leaf) {
            return Err(TreeError::NotALeaf(self.vertex_label(leaf).to_string()));
        }
        self.path_to_exceptional_from(leaf)
    }
}

/// Rotates a cyclic sequence so that its minimum comes first.
fn normalize_cycle(mut order: Vec<EdgeId>) -> Vec<EdgeId> {
    if let Some(pos) = order.iter().enumerate().min_by_key(|(_, &e)| e).map(|(i, _)| i) {
        order.rotate_left(pos);
    }
    order
}

/// Shorthand for building a [`RawTree`] in tests and examples: vertices are
/// `(label, exceptional)`, edges are `(label, a, b)`.
pub fn raw_tree(
    p: u64,
    n: u32,
    vertices: &[(&str, bool)],
    edges: &[(&str, &str, &str)],
    rotation: &[(&str, &[&str])],
) -> RawTree {
    RawTree {
        p,
        n,
        e: None,
        vertices: vertices.iter().map(|&(l, x)| RawVertex { label: l.to_string(), exceptional: x }).collect(),
        edges: edges
            .iter()
            .map(|&(l, a, b)| RawEdge { label: l.to_string(), endpoints: (a.to_string(), b.to_string()) })
            .collect(),
        rotation: rotation
            .iter()
            .map(|&(v, es)| (v.to_string(), es.iter().map(|s| s.to_string()).collect()))
            .collect(),
        sign_anchors: Vec::new(),
    }
}

/// Star with `e` edges `S1..Se` around a centre `c`, counter-clockwise in
/// label order; leaves are `x1..xe`.
pub fn star(p: u64, n: u32, e: usize, exceptional_centre: bool) -> RawTree {
    let leaves: Vec<String> = (1..=e).map(|i| alloc::format!("x{i}")).collect();
    let edges: Vec<String> = (1..=e).map(|i| alloc::format!("S{i}")).collect();
    let mut raw = RawTree { p, n, ..RawTree::default() };
    raw.vertices.push(RawVertex { label: "c".to_string(), exceptional: exceptional_centre });
    for (l, ed) in leaves.iter().zip(&edges) {
        raw.vertices.push(RawVertex { label: l.clone(), exceptional: false });
        raw.edges.push(RawEdge { label: ed.clone(), endpoints: ("c".to_string(), l.clone()) });
    }
    raw.rotation.insert("c".to_string(), edges);
    raw
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(t: &BrauerTree, labels: &[&str]) -> Vec<EdgeId> {
        labels.iter().map(|l| t.edge_by_label(l).unwrap()).collect()
    }

    #[test]
    fn edge_count_mismatch() {
        let mut raw = raw_tree(3, 1, &[("a", false), ("b", false)], &[("S", "a", "b")], &[]);
        raw.e = Some(2);
        assert_eq!(BrauerTree::validate(&raw), Err(TreeError::EdgeCountMismatch { expected: 2, found: 1 }));
    }

    #[test]
    fn star_with_exceptional_centre() {
        let t = BrauerTree::validate(&star(5, 2, 4, true)).unwrap();
        assert_eq!((t.params().e(), t.params().m()), (4, 6));
        assert_eq!(t.exceptional(), Some(t.vertex_by_label("c").unwrap()));
        for v in t.vertex_ids() {
            for &e in t.rotation(v) {
                assert_ne!(t.sign(v), t.sign(t.other_end(e, v).unwrap()));
            }
        }
    }

    #[test]
    fn exceptional_count() {
        let raw = raw_tree(5, 1, &[("a", true), ("b", true), ("c", false)], &[("S", "a", "b"), ("T", "b", "c")], &[]);
        assert_eq!(BrauerTree::validate(&raw), Err(TreeError::ExceptionalCount { expected: 1, found: 2 }));
    }

    #[test]
    fn divisibility() {
        let raw = raw_tree(5, 1, &[("a", false), ("b", false), ("c", true), ("d", false)], &[("S", "a", "b"), ("T", "b", "c"), ("U", "c", "d")], &[]);
        assert_eq!(BrauerTree::validate(&raw), Err(TreeError::DivisibilityViolation { p: 5, e: 3 }));
    }

    #[test]
    fn rotation_errors() {
        let mut raw = star(7, 1, 3, true);
        raw.rotation.insert("c".into(), vec!["S1".into(), "S2".into()]);
        assert!(matches!(BrauerTree::validate(&raw), Err(TreeError::BadRotation { vertex, .. }) if vertex == "c"));
        raw.rotation.clear();
        assert!(matches!(BrauerTree::validate(&raw), Err(TreeError::BadRotation { .. })));
    }

    #[test]
    fn not_a_tree() {
        let raw = raw_tree(5, 1, &[("a", false), ("b", false), ("c", false), ("d", true), ("z", false)], &[("S", "a", "b"), ("T", "b", "a"), ("U", "c", "d"), ("V", "d", "z")], &[]);
        assert!(matches!(BrauerTree::validate(&raw), Err(TreeError::NotATree(_))));
    }

    #[test]
    fn sign_anchors() {
        let mut raw = star(5, 1, 2, true);
        raw.sign_anchors = vec![("c".into(), Sign::Plus), ("x1".into(), Sign::Plus)];
        assert_eq!(BrauerTree::validate(&raw), Err(TreeError::SignConflict("x1".into())));
        raw.sign_anchors.pop();
        let t = BrauerTree::validate(&raw).unwrap();
        assert_eq!(t.sign(t.vertex_by_label("x2").unwrap()), Sign::Minus);
        let flipped = t.with_negated_signs();
        assert_eq!(flipped.sign(t.vertex_by_label("c").unwrap()), Sign::Minus);
    }

    #[test]
    fn successor_examples() {
        let t = BrauerTree::validate(&star(7, 1, 3, true)).unwrap();
        let c = t.vertex_by_label("c").unwrap();
        let s = ids(&t, &["S1", "S2", "S3"]);
        assert_eq!(t.successor(s[0], c).unwrap(), s[1]);
        assert_eq!(t.successor(s[2], c).unwrap(), s[0]);
        let x1 = t.vertex_by_label("x1").unwrap();
        assert_eq!(t.successor(s[0], x1).unwrap(), s[0]);
        assert!(matches!(t.successor(s[1], x1), Err(TreeError::NotIncident { .. })));
    }

    #[test]
    fn pim_examples() {
        let t = BrauerTree::validate(&star(5, 1, 2, true)).unwrap();
        let s = ids(&t, &["S1", "S2"]);
        let pim = t.pim(s[0]);
        let c = t.vertex_by_label("c").unwrap();
        let (qc, qleaf) = if pim.a == c { (&pim.q_a, &pim.q_b) } else { (&pim.q_b, &pim.q_a) };
        assert!(qleaf.is_empty());
        assert_eq!(qc, &vec![s[1], s[0], s[1]]);

        let e1 = raw_tree(7, 1, &[("a", false), ("L", true)], &[("S", "a", "L")], &[]);
        let t = BrauerTree::validate(&e1).unwrap();
        let pim = t.pim(EdgeId(0));
        let l = t.vertex_by_label("L").unwrap();
        let q = if pim.a == l { &pim.q_a } else { &pim.q_b };
        assert_eq!(q.len(), 5);
        assert_eq!(pim.composition_length(), 7);
    }

    #[test]
    fn hook_examples() {
        let t = BrauerTree::validate(&star(5, 1, 2, true)).unwrap();
        let hooks = t.hooks();
        assert_eq!(hooks.len(), 4);
        let c = t.vertex_by_label("c").unwrap();
        for h in &hooks {
            assert_eq!(h.len(), if h.body == c { 4 } else { 1 });
        }
        let e1 = raw_tree(7, 1, &[("a", false), ("L", true)], &[("S", "a", "L")], &[]);
        let t = BrauerTree::validate(&e1).unwrap();
        let lens: Vec<usize> = t.hooks().iter().map(Hook::len).collect();
        assert_eq!(lens.iter().copied().collect::<BTreeSet<_>>(), BTreeSet::from([1, 6]));
        let h = t.hook(EdgeId(0), t.vertex_by_label("a").unwrap()).unwrap();
        assert_eq!(t.omega_on_boundary(&h).len(), 6);
    }

    #[test]
    fn walk_examples() {
        let one = raw_tree(2, 1, &[("a", false), ("b", false)], &[("S", "a", "b")], &[]);
        assert_eq!(BrauerTree::validate(&one).unwrap().default_greens_walk().unwrap().len(), 2);
        let t = BrauerTree::validate(&star(7, 1, 3, true)).unwrap();
        let walk = t.default_greens_walk().unwrap();
        assert_eq!(walk.len(), 6);
        for (k, h) in walk.iter().enumerate() {
            assert_eq!(h.sign, if k % 2 == 0 { Sign::Plus } else { Sign::Minus });
            assert_eq!(h.is_simple(), k % 2 == 0);
        }
        assert_eq!(t.omega_on_boundary(&walk[5]), walk[0]);
    }

    #[test]
    fn paths() {
        let raw = raw_tree(7, 1, &[("a", false), ("b", false), ("L", true)], &[("E", "a", "L"), ("F", "b", "L")], &[]);
        let t = BrauerTree::validate(&raw).unwrap();
        let path = t.path_to_exceptional(t.vertex_by_label("a").unwrap()).unwrap();
        assert_eq!((path.edges.len(), path.l()), (1, 0));
        let raw = raw_tree(7, 1, &[("x0", false), ("x1", false), ("L", true)], &[("E", "x0", "x1"), ("F", "x1", "L")], &[]);
        let t = BrauerTree::validate(&raw).unwrap();
        let path = t.path_to_exceptional(t.vertex_by_label("x0").unwrap()).unwrap();
        assert_eq!((path.edges.len(), path.l()), (2, 1));
        let l = t.vertex_by_label("L").unwrap();
        assert_eq!(t.path_to_exceptional(l), Err(TreeError::IsExceptional("L".into())));
        let m1 = BrauerTree::validate(&star(3, 1, 2, false)).unwrap();
        assert_eq!(m1.path_to_exceptional(VertexId(1)), Err(TreeError::NoExceptionalVertex));
    }
}
