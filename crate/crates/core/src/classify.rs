//! Trivial source modules and liftable modules of a block with cyclic defect
//! group, located in the stable Auslander-Reiten tube.
//!
//! Non-projective indecomposables other than hooks are named by Janusz
//! descriptors: an edge path, a direction `(ε_1, ε_s)` recording whether the
//! first and last edge lie in the head (`+`) or the socle (`-`), and the
//! multiplicity `μ` of a simple module at the exceptional vertex.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::cyclic::{check_dade_params, ModuleError};
use crate::dade::DadeElement;
use crate::tree::{BlockParams, BrauerTree, EdgeId, Hook, Sign, TreeError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("d+ = {dplus} lies outside the tube rows 0..={max}")]
    OutOfTube { dplus: u64, max: u64 },
    #[error("neither or both of e | ℓ_i p^(n-i) - 1 and e | ℓ_i p^(n-i) hold for {value} with e = {e}")]
    DichotomyViolation { value: u64, e: u64 },
    #[error("the divisibility dichotomy needs e > 1")]
    InertialIndexOne,
    #[error("expected {expected} trivial source modules, found {found}")]
    CountMismatch { expected: u64, found: usize },
    #[error("descriptor {0} has no distance formula")]
    UnknownShape(JanuszType),
    #[error("descriptor does not belong to this tree")]
    NotLiftable,
    #[error("multiplicity {mu} is outside {min}..={max} for {kind}")]
    MultiplicityOutOfRange { kind: JanuszType, mu: u64, min: u64, max: u64 },
    #[error("descriptor {kind} sits at d+ = {found}, expected {expected}")]
    DistanceMismatch { kind: JanuszType, expected: u64, found: u64 },
    #[error("the C_2 block needs p = 2 and n = 1")]
    NotC2,
}

impl ClassifyError {
    /// True when the error means a closed form disagrees with another,
    /// rather than bad input.
    pub fn is_consistency_failure(&self) -> bool {
        matches!(
            self,
            ClassifyError::OutOfTube { .. }
                | ClassifyError::DichotomyViolation { .. }
                | ClassifyError::CountMismatch { .. }
                | ClassifyError::DistanceMismatch { .. }
                | ClassifyError::Module(ModuleError::Inconsistent { .. })
        )
    }
}

/// Shapes of liftable modules, in the numbering of the liftable classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JanuszType {
    /// (1)
    Projective,
    /// (2)
    Hook,
    /// (2′): the simple module at an exceptional leaf.
    SimpleExceptionalLeaf,
    /// (3)(i): out from a leaf `χ_0` to `χ_Λ` and back.
    PathLeafToExceptional,
    /// (3)(ii): `χ_Λ` is a leaf, path `E, E`.
    PathExceptionalLeaf,
    /// (4)
    ExtendedPathA,
    /// (5)
    ExtendedPathB,
    /// (6)
    DoubledPath,
    /// (7)
    DoubledExceptionalLeaf,
}

impl JanuszType {
    pub const ALL: [JanuszType; 9] = [
        JanuszType::Projective,
        JanuszType::Hook,
        JanuszType::SimpleExceptionalLeaf,
        JanuszType::PathLeafToExceptional,
        JanuszType::PathExceptionalLeaf,
        JanuszType::ExtendedPathA,
        JanuszType::ExtendedPathB,
        JanuszType::DoubledPath,
        JanuszType::DoubledExceptionalLeaf,
    ];

    pub fn clause(self) -> &'static str {
        match self {
            JanuszType::Projective => "(1)",
            JanuszType::Hook => "(2)",
            JanuszType::SimpleExceptionalLeaf => "(2')",
            JanuszType::PathLeafToExceptional => "(3)(i)",
            JanuszType::PathExceptionalLeaf => "(3)(ii)",
            JanuszType::ExtendedPathA => "(4)",
            JanuszType::ExtendedPathB => "(5)",
            JanuszType::DoubledPath => "(6)",
            JanuszType::DoubledExceptionalLeaf => "(7)",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            JanuszType::Projective => "Projective",
            JanuszType::Hook => "Hook",
            JanuszType::SimpleExceptionalLeaf => "SimpleExceptionalLeaf",
            JanuszType::PathLeafToExceptional => "PathLeafToExceptional",
            JanuszType::PathExceptionalLeaf => "PathExceptionalLeaf",
            JanuszType::ExtendedPathA => "ExtendedPathA",
            JanuszType::ExtendedPathB => "ExtendedPathB",
            JanuszType::DoubledPath => "DoubledPath",
            JanuszType::DoubledExceptionalLeaf => "DoubledExceptionalLeaf",
        }
    }

    /// Admissible multiplicities when `m > 1`.
    fn mu_range(self, m: u64) -> (u64, u64) {
        match self {
            JanuszType::Projective => (2, m + 1),
            JanuszType::Hook => (1, m),
            JanuszType::SimpleExceptionalLeaf => (1, 1),
            JanuszType::PathLeafToExceptional
            | JanuszType::ExtendedPathA
            | JanuszType::ExtendedPathB
            | JanuszType::DoubledPath => (2, m),
            JanuszType::PathExceptionalLeaf => (2, m - 1),
            JanuszType::DoubledExceptionalLeaf => (1, m - 1),
        }
    }
}

impl fmt::Display for JanuszType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.clause(), self.name())
    }
}

/// `(ε_1, ε_s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    pub first: Sign,
    pub last: Sign,
}

impl Direction {
    pub const fn new(first: Sign, last: Sign) -> Self {
        Self { first, last }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}1,{}1)", self.first, self.last)
    }
}

const HEAD_SOCLE: Direction = Direction::new(Sign::Plus, Sign::Minus);

/// A named indecomposable module of the block.
///
/// `anchor` is the vertex the module is built around (`χ_0`, `χ_Λ`, the body
/// of a hook, or the smaller endpoint of a projective's edge) and
/// `first_edge` is `E_1`. Hooks carry the path `(top, socle)`, collapsed to
/// one edge when the hook is simple, and projectives carry their edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JanuszDescriptor {
    kind: JanuszType,
    anchor: VertexId,
    first_edge: EdgeId,
    multiplicity: u64,
    path: Vec<EdgeId>,
    direction: Direction,
    l: usize,
}

impl JanuszDescriptor {
    #[allow(clippy::too_many_arguments)]
    fn build(
        params: &BlockParams,
        kind: JanuszType,
        anchor: VertexId,
        first_edge: EdgeId,
        multiplicity: u64,
        path: Vec<EdgeId>,
        direction: Direction,
        l: usize,
    ) -> Result<Self, ClassifyError> {
        let m = params.m();
        let (min, max) = if m == 1 { (0, 0) } else { kind.mu_range(m) };
        if multiplicity < min || multiplicity > max {
            return Err(ClassifyError::MultiplicityOutOfRange { kind, mu: multiplicity, min, max });
        }
        Ok(Self { kind, anchor, first_edge, multiplicity, path, direction, l })
    }

    pub fn projective(tree: &BrauerTree, edge: EdgeId) -> Result<Self, ClassifyError> {
        let (a, b) = tree.endpoints(edge);
        let m = tree.params().m();
        let at_exceptional = tree.is_exceptional(a) || tree.is_exceptional(b);
        let mu = if m == 1 {
            0
        } else if at_exceptional {
            m + 1
        } else {
            2
        };
        Self::build(&tree.params(), JanuszType::Projective, a, edge, mu, vec![edge], HEAD_SOCLE, 0)
    }

    pub fn hook(tree: &BrauerTree, h: &Hook) -> Result<Self, ClassifyError> {
        let m = tree.params().m();
        let mu = if m == 1 {
            0
        } else if tree.is_exceptional(h.body) {
            m
        } else {
            1
        };
        let path = if h.is_simple() { vec![h.top_edge] } else { vec![h.top_edge, h.socle()] };
        Self::build(&tree.params(), JanuszType::Hook, h.body, h.top_edge, mu, path, HEAD_SOCLE, 0)
    }

    /// The simple module at the exceptional vertex, when that vertex is a leaf.
    pub fn simple_exceptional_leaf(tree: &BrauerTree) -> Result<Self, ClassifyError> {
        let x = tree.require_exceptional()?;
        if !tree.is_leaf(x) {
            return Err(TreeError::NotALeaf(tree.vertex_label(x).into()).into());
        }
        let edge = tree.rotation(x)[0];
        Self::build(&tree.params(), JanuszType::SimpleExceptionalLeaf, x, edge, 1, vec![edge], HEAD_SOCLE, 0)
    }

    pub fn kind(&self) -> JanuszType {
        self.kind
    }

    pub fn path(&self) -> &[EdgeId] {
        &self.path
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn anchor(&self) -> VertexId {
        self.anchor
    }

    pub fn first_edge(&self) -> EdgeId {
        self.first_edge
    }

    /// Interior vertex count of the path to `χ_Λ` (0 where it does not apply).
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn is_projective(&self) -> bool {
        self.kind == JanuszType::Projective
    }
}

/// All modules sharing a path and direction, one per multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub kind: JanuszType,
    pub anchor: VertexId,
    pub first_edge: EdgeId,
    pub path: Vec<EdgeId>,
    pub direction: Direction,
    pub l: usize,
    /// `(top edge, body)` of the hook the distance formula refers to.
    pub reference_hook: (EdgeId, VertexId),
    pub mu_min: u64,
    pub mu_max: u64,
}

impl Family {
    pub fn member(&self, params: &BlockParams, mu: u64) -> Result<JanuszDescriptor, ClassifyError> {
        JanuszDescriptor::build(
            params,
            self.kind,
            self.anchor,
            self.first_edge,
            mu,
            self.path.clone(),
            self.direction,
            self.l,
        )
    }

    pub fn members(&self, params: &BlockParams) -> Vec<JanuszDescriptor> {
        (self.mu_min..=self.mu_max).map(|mu| self.member(params, mu).expect("in range")).collect()
    }
}

/// Path families: one for every pair of a vertex and an incident edge
/// (`2e` in total), empty when `m = 1`.
pub fn families(tree: &BrauerTree) -> Vec<Family> {
    let params = tree.params();
    let m = params.m();
    let Some(x) = tree.exceptional() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for v in tree.vertex_ids() {
        for &e1 in tree.rotation(v) {
            let es = tree.successor(e1, v).expect("incident");
            if v == x {
                let (kind, path, direction, range) = if tree.is_leaf(x) {
                    (JanuszType::PathExceptionalLeaf, vec![e1, e1], HEAD_SOCLE, (2, m - 1))
                } else {
                    (
                        JanuszType::DoubledExceptionalLeaf,
                        vec![e1, es],
                        Direction::new(Sign::Minus, Sign::Plus),
                        (1, m - 1),
                    )
                };
                out.push(Family {
                    kind,
                    anchor: x,
                    first_edge: e1,
                    path,
                    direction,
                    l: 0,
                    reference_hook: (es, x),
                    mu_min: range.0,
                    mu_max: range.1,
                });
                continue;
            }
            let to_x = tree.path_to_exceptional_from(v).expect("non-exceptional vertex");
            let fwd = to_x.edges.clone();
            let back: Vec<EdgeId> = fwd.iter().rev().copied().collect();
            let toward = fwd[0];
            let (kind, path, direction) = if tree.is_leaf(v) {
                (JanuszType::PathLeafToExceptional, [fwd, back].concat(), HEAD_SOCLE)
            } else if e1 == toward {
                (JanuszType::ExtendedPathA, [fwd, back, vec![es]].concat(), Direction::new(Sign::Plus, Sign::Plus))
            } else if es == toward {
                (JanuszType::ExtendedPathB, [vec![e1], fwd, back].concat(), Direction::new(Sign::Minus, Sign::Minus))
            } else {
                (
                    JanuszType::DoubledPath,
                    [vec![e1], fwd, back, vec![es]].concat(),
                    Direction::new(Sign::Minus, Sign::Plus),
                )
            };
            out.push(Family {
                kind,
                anchor: v,
                first_edge: e1,
                path,
                direction,
                l: to_x.l(),
                reference_hook: (es, v),
                mu_min: 2,
                mu_max: m,
            });
        }
    }
    out
}

/// Position in the tube: `d+ + d- = em - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TubePosition {
    pub dplus: u64,
    pub dminus: u64,
}

impl TubePosition {
    pub fn new(params: &BlockParams, dplus: u64) -> Result<Self, ClassifyError> {
        let max = params.tube_rows() - 1;
        if dplus > max {
            return Err(ClassifyError::OutOfTube { dplus, max });
        }
        Ok(Self { dplus, dminus: max - dplus })
    }

    pub fn min_distance(&self) -> u64 {
        self.dplus.min(self.dminus)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DivisibilityCase {
    /// `e | ℓ_i p^{n-i} - 1`
    Positive,
    /// `e | ℓ_i`
    Negative,
}

impl DivisibilityCase {
    fn sign(self) -> Sign {
        match self {
            DivisibilityCase::Positive => Sign::Plus,
            DivisibilityCase::Negative => Sign::Minus,
        }
    }
}

/// Classification of the trivial source modules with vertex `D_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialSourceReport {
    pub vertex_index: u32,
    pub ell: u64,
    pub position: TubePosition,
    /// `None` when `e = 1`.
    pub case: Option<DivisibilityCase>,
    pub descriptors: Vec<JanuszDescriptor>,
}

/// Ordinary character of a lift: non-exceptional vertices (with repetition)
/// plus a number of distinct exceptional characters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LiftCharacter {
    pub nonexceptional: Vec<VertexId>,
    pub exceptional_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub descriptor: JanuszDescriptor,
    /// Distance to the boundary holding `reference_hook`; `None` for projectives.
    pub distance: Option<u64>,
    pub reference_hook: Option<(EdgeId, VertexId)>,
    pub position: Option<TubePosition>,
    pub lift: LiftCharacter,
}

fn check_source(params: &BlockParams, dade: &DadeElement, i: u32) -> Result<(), ClassifyError> {
    let group = params.group();
    check_dade_params(&group, dade)?;
    group.check_index(i, 1)?;
    if !dade.is_source() {
        return Err(ModuleError::NotSource.into());
    }
    Ok(())
}

/// `ℓ_i p^{n-i}`, the composition length of the corresponding module of the
/// Brauer correspondent.
pub fn trivial_source_length(params: &BlockParams, dade: &DadeElement, i: u32) -> Result<u64, ClassifyError> {
    check_source(params, dade, i)?;
    Ok(dade.ell(i) * params.group().pow(params.n() - i))
}

/// `d+ = ℓ_i p^{n-i} - 1`.
pub fn dplus_trivial_source(params: &BlockParams, dade: &DadeElement, i: u32) -> Result<TubePosition, ClassifyError> {
    let len = trivial_source_length(params, dade, i)?;
    TubePosition::new(params, len - 1)
}

/// `d+ = p^n - 1 - ℓ_i p^{n-i}` for the module with source `Ω(k)`.
pub fn cotrivial_source_dplus(params: &BlockParams, dade: &DadeElement, i: u32) -> Result<TubePosition, ClassifyError> {
    let len = trivial_source_length(params, dade, i)?;
    TubePosition::new(params, params.order() - 1 - len)
}

pub fn divisibility_case(params: &BlockParams, dade: &DadeElement, i: u32) -> Result<DivisibilityCase, ClassifyError> {
    let e = params.e();
    if e == 1 {
        return Err(ClassifyError::InertialIndexOne);
    }
    let len = trivial_source_length(params, dade, i)?;
    match ((len - 1) % e == 0, len % e == 0) {
        (true, false) => Ok(DivisibilityCase::Positive),
        (false, true) => Ok(DivisibilityCase::Negative),
        _ => Err(ClassifyError::DichotomyViolation { value: len, e }),
    }
}

/// Minimal distances to the boundary at which liftable modules occur:
/// `e i` for `0 <= i <= (m-1)/2` and `e i - 1` for `0 <= i <= m/2`.
pub fn liftable_by_distance(e: u64, m: u64, d_min: u64) -> bool {
    let first = d_min.is_multiple_of(e) && d_min / e <= (m.saturating_sub(1)) / 2;
    let second = (d_min + 1).is_multiple_of(e) && (d_min + 1) / e <= m / 2;
    first || second
}

fn family_distance(kind: JanuszType, l: usize, mu: u64, e: u64, m: u64) -> Option<u64> {
    match kind {
        JanuszType::Hook => Some(0),
        JanuszType::SimpleExceptionalLeaf => Some(e * (m - 1)),
        JanuszType::PathExceptionalLeaf | JanuszType::DoubledExceptionalLeaf => Some(e * (m - mu)),
        JanuszType::PathLeafToExceptional
        | JanuszType::ExtendedPathA
        | JanuszType::ExtendedPathB
        | JanuszType::DoubledPath => Some(if l % 2 == 1 { e * (m - mu + 1) } else { e * (mu - 1) }),
        JanuszType::Projective => None,
    }
}

fn reference_hook_key(tree: &BrauerTree, desc: &JanuszDescriptor) -> Result<(EdgeId, VertexId), ClassifyError> {
    let v = desc.anchor;
    match desc.kind {
        JanuszType::Hook => Ok((desc.first_edge, v)),
        JanuszType::SimpleExceptionalLeaf | JanuszType::PathExceptionalLeaf => Ok((desc.first_edge, v)),
        JanuszType::Projective => Err(ClassifyError::UnknownShape(desc.kind)),
        _ => Ok((tree.successor(desc.first_edge, v)?, v)),
    }
}

fn check_membership(tree: &BrauerTree, desc: &JanuszDescriptor) -> Result<(), ClassifyError> {
    if desc.anchor.0 >= tree.vertex_count()
        || desc.first_edge.0 >= tree.edge_count()
        || !tree.is_incident(desc.first_edge, desc.anchor)
    {
        return Err(ClassifyError::NotLiftable);
    }
    Ok(())
}

/// Distance from a non-projective liftable module to the boundary containing
/// its reference hook, together with that hook.
pub fn distance_to_hook(tree: &BrauerTree, desc: &JanuszDescriptor) -> Result<(u64, Hook), ClassifyError> {
    check_membership(tree, desc)?;
    let params = tree.params();
    let d = family_distance(desc.kind, desc.l, desc.multiplicity, params.e(), params.m())
        .ok_or(ClassifyError::UnknownShape(desc.kind))?;
    let (top, body) = reference_hook_key(tree, desc)?;
    Ok((d, tree.hook(top, body)?))
}

/// `d+` of a non-projective liftable module, via its reference hook's sign.
pub fn dplus_of(tree: &BrauerTree, desc: &JanuszDescriptor) -> Result<TubePosition, ClassifyError> {
    let params = tree.params();
    let (d, h) = distance_to_hook(tree, desc)?;
    let dplus = match h.sign {
        Sign::Plus => d,
        Sign::Minus => (params.tube_rows() - 1).checked_sub(d).ok_or(ClassifyError::OutOfTube {
            dplus: d,
            max: params.tube_rows() - 1,
        })?,
    };
    TubePosition::new(&params, dplus)
}

pub fn lift_character(tree: &BrauerTree, desc: &JanuszDescriptor) -> Result<LiftCharacter, ClassifyError> {
    check_membership(tree, desc)?;
    let m = tree.params().m();
    let weight = |v: VertexId| if tree.is_exceptional(v) { (vec![], m) } else { (vec![v], 0) };
    let (nonexceptional, exceptional_count) = match desc.kind {
        JanuszType::Projective => {
            let (a, b) = tree.endpoints(desc.first_edge);
            let (mut va, ca) = weight(a);
            let (vb, cb) = weight(b);
            va.extend(vb);
            (va, ca + cb)
        }
        JanuszType::Hook => weight(desc.anchor),
        JanuszType::SimpleExceptionalLeaf => (vec![], 1),
        JanuszType::PathExceptionalLeaf | JanuszType::DoubledExceptionalLeaf => (vec![], desc.multiplicity),
        JanuszType::PathLeafToExceptional
        | JanuszType::ExtendedPathA
        | JanuszType::ExtendedPathB
        | JanuszType::DoubledPath => {
            let path = tree.path_to_exceptional_from(desc.anchor)?;
            let chis = path.vertices[..path.vertices.len() - 1].to_vec();
            (chis, desc.multiplicity - 1)
        }
    };
    Ok(LiftCharacter { nonexceptional, exceptional_count })
}

/// A hook is a trivial source module iff `W = k` and its character is positive.
pub fn hook_is_trivial_source(dade: &DadeElement, hook: &Hook) -> bool {
    dade.is_zero() && hook.sign == Sign::Plus
}

fn positive_vertex(tree: &BrauerTree) -> VertexId {
    tree.vertex_ids().find(|&v| tree.sign(v) == Sign::Plus).expect("signs alternate")
}

/// The block with defect group `C_2`: one simple module, its own Ω-translate.
pub fn c2_block(tree: &BrauerTree) -> Result<TrivialSourceReport, ClassifyError> {
    let params = tree.params();
    if params.order() != 2 {
        return Err(ClassifyError::NotC2);
    }
    let v = positive_vertex(tree);
    let hook = tree.hook(tree.rotation(v)[0], v)?;
    Ok(TrivialSourceReport {
        vertex_index: 1,
        ell: 1,
        position: TubePosition::new(&params, 0)?,
        case: None,
        descriptors: vec![JanuszDescriptor::hook(tree, &hook)?],
    })
}

/// `e = 1`: the uniserial module of length `λ`, with the single edge `S`
/// between `χ_1` and `χ_Λ`.
fn uniserial(tree: &BrauerTree, lambda: u64) -> Result<JanuszDescriptor, ClassifyError> {
    let params = tree.params();
    let x = tree.require_exceptional()?;
    let s = tree.rotation(x)[0];
    let chi1 = tree.other_end(s, x)?;
    if lambda == 1 {
        JanuszDescriptor::hook(tree, &tree.hook(s, chi1)?)
    } else if lambda == params.m() {
        JanuszDescriptor::hook(tree, &tree.hook(s, x)?)
    } else {
        JanuszDescriptor::build(
            &params,
            JanuszType::PathLeafToExceptional,
            chi1,
            s,
            lambda,
            vec![s, s],
            HEAD_SOCLE,
            0,
        )
    }
}

/// `μ` of the member of `family` at `d+ = len - 1`, or `None` if the anchor's
/// sign does not match the divisibility case.
fn family_multiplicity(family: &Family, anchor_sign: Sign, case: DivisibilityCase, len: u64, e: u64, m: u64) -> Option<u64> {
    if anchor_sign != case.sign() {
        return None;
    }
    let odd = family.l % 2 == 1;
    let mu = match (family.kind, case) {
        (JanuszType::PathExceptionalLeaf | JanuszType::DoubledExceptionalLeaf, DivisibilityCase::Positive) => {
            m.checked_sub((len - 1) / e)?
        }
        (JanuszType::PathExceptionalLeaf | JanuszType::DoubledExceptionalLeaf, DivisibilityCase::Negative) => len / e,
        (_, DivisibilityCase::Positive) => {
            let q = (len - 1) / e;
            if odd {
                (m + 1).checked_sub(q)?
            } else {
                q + 1
            }
        }
        (_, DivisibilityCase::Negative) => {
            let q = len / e;
            if odd {
                q + 1
            } else {
                (m + 1).checked_sub(q)?
            }
        }
    };
    Some(mu)
}

/// All trivial source modules with vertex `D_i`.
pub fn classify_trivial_source(
    tree: &BrauerTree,
    dade: &DadeElement,
    i: u32,
) -> Result<TrivialSourceReport, ClassifyError> {
    let params = tree.params();
    let position = dplus_trivial_source(&params, dade, i)?;
    if params.order() == 2 {
        return c2_block(tree);
    }
    let len = position.dplus + 1;
    let (e, m) = (params.e(), params.m());

    if e == 1 {
        let chi1 = tree.vertex_ids().find(|&v| !tree.is_exceptional(v)).expect("two vertices");
        let lambda = match tree.sign(chi1) {
            Sign::Plus => len,
            Sign::Minus => params.order() - len,
        };
        let desc = uniserial(tree, lambda)?;
        let found = dplus_of(tree, &desc)?;
        if found.dplus != position.dplus {
            return Err(ClassifyError::DistanceMismatch { kind: desc.kind, expected: position.dplus, found: found.dplus });
        }
        return Ok(TrivialSourceReport { vertex_index: i, ell: dade.ell(i), position, case: None, descriptors: vec![desc] });
    }

    let case = divisibility_case(&params, dade, i)?;
    let mut descriptors = Vec::new();
    if len == 1 {
        for h in tree.hooks().iter().filter(|h| h.sign == Sign::Plus) {
            descriptors.push(JanuszDescriptor::hook(tree, h)?);
        }
    } else {
        for family in families(tree) {
            let Some(mu) = family_multiplicity(&family, tree.sign(family.anchor), case, len, e, m) else {
                continue;
            };
            if family.kind == JanuszType::PathExceptionalLeaf && mu == 1 {
                // the μ = 1 end of this family is the simple module at the leaf
                descriptors.push(JanuszDescriptor::simple_exceptional_leaf(tree)?);
            } else if (family.mu_min..=family.mu_max).contains(&mu) {
                descriptors.push(family.member(&params, mu)?);
            }
        }
    }
    descriptors.sort();
    for desc in &descriptors {
        let found = dplus_of(tree, desc)?;
        if found.dplus != position.dplus {
            return Err(ClassifyError::DistanceMismatch { kind: desc.kind, expected: position.dplus, found: found.dplus });
        }
    }
    if descriptors.len() as u64 != e {
        return Err(ClassifyError::CountMismatch { expected: e, found: descriptors.len() });
    }
    Ok(TrivialSourceReport { vertex_index: i, ell: dade.ell(i), position, case: Some(case), descriptors })
}

fn entry(tree: &BrauerTree, descriptor: JanuszDescriptor) -> Result<CatalogEntry, ClassifyError> {
    let lift = lift_character(tree, &descriptor)?;
    if descriptor.is_projective() {
        return Ok(CatalogEntry { descriptor, distance: None, reference_hook: None, position: None, lift });
    }
    let (d, h) = distance_to_hook(tree, &descriptor)?;
    let position = dplus_of(tree, &descriptor)?;
    Ok(CatalogEntry { descriptor, distance: Some(d), reference_hook: Some(h.key()), position: Some(position), lift })
}

/// Every indecomposable liftable module, projectives included, sorted by
/// descriptor.
pub fn liftable_catalog(tree: &BrauerTree) -> Result<Vec<CatalogEntry>, ClassifyError> {
    let params = tree.params();
    let mut descs: Vec<JanuszDescriptor> =
        tree.edge_ids().map(|e| JanuszDescriptor::projective(tree, e)).collect::<Result<_, _>>()?;
    if params.order() == 2 {
        descs.extend(c2_block(tree)?.descriptors);
    } else if params.e() == 1 {
        for lambda in 1..=params.m() {
            descs.push(uniserial(tree, lambda)?);
        }
    } else {
        for h in tree.hooks() {
            descs.push(JanuszDescriptor::hook(tree, &h)?);
        }
        if let Some(x) = tree.exceptional() {
            if tree.is_leaf(x) {
                descs.push(JanuszDescriptor::simple_exceptional_leaf(tree)?);
            }
        }
        for family in families(tree) {
            descs.extend(family.members(&params));
        }
    }
    descs.sort();
    descs.into_iter().map(|d| entry(tree, d)).collect()
}

/// Size of the catalogue predicted by the liftable classification, counting
/// projectives: `m + 1` for `e = 1`, `e(2m + 1)` otherwise.
pub fn expected_liftable_count(params: &BlockParams) -> u64 {
    if params.e() == 1 {
        params.m() + 1
    } else {
        params.e() * (2 * params.m() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::CyclicGroupParams;
    use crate::tree::{raw_tree, star};

    fn tree_of(raw: &crate::tree::RawTree) -> BrauerTree {
        BrauerTree::validate(raw).unwrap()
    }

    fn dade(p: u64, bits: &[u8]) -> DadeElement {
        let b: Vec<bool> = bits.iter().map(|&x| x == 1).collect();
        DadeElement::new(CyclicGroupParams::new(p, bits.len() as u32).unwrap(), &b).unwrap()
    }

    fn bp(p: u64, n: u32, e: u64) -> BlockParams {
        BlockParams::new(p, n, e).unwrap()
    }

    #[test]
    fn dplus_examples() {
        let params = bp(5, 2, 4);
        assert_eq!(dplus_trivial_source(&params, &dade(5, &[0, 0]), 1).unwrap().dplus, 4);
        assert_eq!(dplus_trivial_source(&params, &dade(5, &[0, 0]), 2).unwrap().dplus, 0);
        let pos = dplus_trivial_source(&params, &dade(5, &[0, 1]), 2).unwrap();
        assert_eq!((pos.dplus, pos.dminus), (3, 20));
    }

    #[test]
    fn divisibility_examples() {
        let params = bp(5, 2, 4);
        for i in 1..=2 {
            assert_eq!(divisibility_case(&params, &dade(5, &[0, 0]), i).unwrap(), DivisibilityCase::Positive);
        }
        assert_eq!(divisibility_case(&params, &dade(5, &[0, 1]), 2).unwrap(), DivisibilityCase::Negative);
        assert_eq!(divisibility_case(&params, &dade(5, &[0, 1]), 1).unwrap(), DivisibilityCase::Positive);
        assert_eq!(divisibility_case(&bp(5, 2, 1), &dade(5, &[0, 1]), 1), Err(ClassifyError::InertialIndexOne));
    }

    #[test]
    fn c5_principal_gives_positive_hooks() {
        let t = tree_of(&star(5, 1, 2, true));
        let report = classify_trivial_source(&t, &dade(5, &[0]), 1).unwrap();
        assert_eq!(report.position.dplus, 0);
        assert_eq!(report.descriptors.len(), 2);
        for d in &report.descriptors {
            assert_eq!(d.kind(), JanuszType::Hook);
            assert_eq!(t.sign(d.anchor()), Sign::Plus);
        }
    }

    /// Path x0 - x1 - L with e = 2 on C_9: one odd-l family and one even-l.
    fn path_tree() -> BrauerTree {
        tree_of(&raw_tree(
            3,
            2,
            &[("x0", false), ("x1", false), ("L", true)],
            &[("E", "x0", "x1"), ("F", "x1", "L")],
            &[],
        ))
    }

    #[test]
    fn multiplicity_examples() {
        // star on C_25 with e = 4: exceptional centre, four positive leaves with l = 0
        let t = tree_of(&star(5, 2, 4, true));
        let r = classify_trivial_source(&t, &dade(5, &[0, 0]), 1).unwrap();
        assert_eq!(r.case, Some(DivisibilityCase::Positive));
        let paths: Vec<_> = r.descriptors.iter().filter(|d| d.kind() == JanuszType::PathLeafToExceptional).collect();
        assert_eq!(paths.len(), 4);
        assert!(paths.iter().all(|d| d.multiplicity() == 2 && t.sign(d.anchor()) == Sign::Plus));

        // negative leaf with l even: μ = m + 1 - ℓ_2 / e = 6
        let mut raw = star(5, 2, 4, true);
        raw.sign_anchors = vec![("x1".into(), Sign::Minus)];
        let t = tree_of(&raw);
        let r = classify_trivial_source(&t, &dade(5, &[0, 1]), 2).unwrap();
        assert_eq!(r.case, Some(DivisibilityCase::Negative));
        let leafy: Vec<_> = r.descriptors.iter().filter(|d| d.kind() == JanuszType::PathLeafToExceptional).collect();
        assert_eq!(leafy.len(), 4);
        assert!(leafy.iter().all(|d| d.multiplicity() == 6));
    }

    #[test]
    fn path_tree_rows() {
        let t = path_tree();
        assert_eq!((t.params().e(), t.params().m()), (2, 4));
        for bits in [[0u8, 0], [0, 1]] {
            let x = dade(3, &bits);
            for i in 1..=2 {
                let r = classify_trivial_source(&t, &x, i).unwrap();
                assert_eq!(r.descriptors.len(), 2);
            }
        }
    }

    #[test]
    fn exceptional_leaf_gap() {
        // C_9, e = 2, W = Ω_{D/D_1}(k), i = 2: ℓ_2 = 2 = e, so d+ = e - 1
        let mut raw = path_tree_raw();
        raw.sign_anchors = vec![("L".into(), Sign::Minus)];
        let t = tree_of(&raw);
        let r = classify_trivial_source(&t, &dade(3, &[0, 1]), 2).unwrap();
        assert_eq!(r.position.dplus, 1);
        assert!(r.descriptors.iter().any(|d| d.kind() == JanuszType::SimpleExceptionalLeaf));
        assert_eq!(r.descriptors.len(), 2);
    }

    fn path_tree_raw() -> crate::tree::RawTree {
        raw_tree(3, 2, &[("x0", false), ("x1", false), ("L", true)], &[("E", "x0", "x1"), ("F", "x1", "L")], &[])
    }

    #[test]
    fn catalog_counts() {
        let t = tree_of(&star(5, 1, 2, true));
        let cat = liftable_catalog(&t).unwrap();
        assert_eq!(cat.len(), 10);
        assert_eq!(cat.iter().filter(|c| c.descriptor.is_projective()).count(), 2);
        assert_eq!(expected_liftable_count(&t.params()), 10);

        let e1 = tree_of(&raw_tree(7, 1, &[("a", false), ("L", true)], &[("S", "a", "L")], &[]));
        let cat = liftable_catalog(&e1).unwrap();
        assert_eq!(cat.len() as u64, e1.params().m() + 1);

        let leaf = tree_of(&path_tree_raw());
        let cat = liftable_catalog(&leaf).unwrap();
        assert_eq!(cat.iter().filter(|c| c.descriptor.kind() == JanuszType::SimpleExceptionalLeaf).count(), 1);
        let m = leaf.params().m();
        assert_eq!(cat.iter().filter(|c| c.descriptor.kind() == JanuszType::PathExceptionalLeaf).count() as u64, m - 2);
        assert_eq!(cat.len() as u64, expected_liftable_count(&leaf.params()));
    }

    #[test]
    fn liftable_by_distance_examples() {
        assert!(liftable_by_distance(4, 6, 0));
        assert!(liftable_by_distance(4, 6, 3));
        assert!(!liftable_by_distance(4, 6, 2));
        let ok: Vec<u64> = (0..=1).filter(|&d| liftable_by_distance(2, 2, d)).collect();
        assert_eq!(ok, vec![0, 1]);
    }

    #[test]
    fn distance_examples() {
        let t = tree_of(&path_tree_raw());
        let (e, m) = (t.params().e(), t.params().m());
        let simple = JanuszDescriptor::simple_exceptional_leaf(&t).unwrap();
        assert_eq!(distance_to_hook(&t, &simple).unwrap().0, e * (m - 1));
        let fams = families(&t);
        let even = fams.iter().find(|f| f.kind == JanuszType::PathLeafToExceptional && f.l == 1).unwrap();
        assert_eq!(distance_to_hook(&t, &even.member(&t.params(), 2).unwrap()).unwrap().0, e * (m - 1));
        let star7 = tree_of(&star(7, 1, 3, true));
        let f7 = families(&star7).into_iter().find(|f| f.kind == JanuszType::DoubledExceptionalLeaf).unwrap();
        let m7 = star7.params().m();
        assert_eq!(distance_to_hook(&star7, &f7.member(&star7.params(), m7 - 1).unwrap()).unwrap().0, 3);
        let star5 = tree_of(&star(5, 2, 4, true));
        let leaf = families(&star5).into_iter().find(|f| f.kind == JanuszType::PathLeafToExceptional).unwrap();
        assert_eq!(distance_to_hook(&star5, &leaf.member(&star5.params(), 2).unwrap()).unwrap().0, 4);
    }

    #[test]
    fn lift_examples() {
        let t = tree_of(&star(7, 1, 3, true));
        let x1 = t.vertex_by_label("x1").unwrap();
        let h = t.hook(t.rotation(x1)[0], x1).unwrap();
        let lc = lift_character(&t, &JanuszDescriptor::hook(&t, &h).unwrap()).unwrap();
        assert_eq!(lc, LiftCharacter { nonexceptional: vec![x1], exceptional_count: 0 });

        let t = tree_of(&star(13, 1, 3, true));
        let f7 = families(&t).into_iter().find(|f| f.kind == JanuszType::DoubledExceptionalLeaf).unwrap();
        let lc = lift_character(&t, &f7.member(&t.params(), 3).unwrap()).unwrap();
        assert_eq!(lc, LiftCharacter { nonexceptional: vec![], exceptional_count: 3 });

        // path x0 - x1 - x2 - L: family (x1, edge towards L) is type (4)
        let raw = raw_tree(
            7,
            1,
            &[("x0", false), ("x1", false), ("x2", false), ("L", true)],
            &[("A", "x0", "x1"), ("B", "x1", "L"), ("C", "x2", "L")],
            &[],
        );
        let t = tree_of(&raw);
        let b = t.edge_by_label("B").unwrap();
        let x1 = t.vertex_by_label("x1").unwrap();
        let f4 = families(&t).into_iter().find(|f| f.anchor == x1 && f.first_edge == b).unwrap();
        assert_eq!(f4.kind, JanuszType::ExtendedPathA);
        let lc = lift_character(&t, &f4.member(&t.params(), 2).unwrap()).unwrap();
        assert_eq!(lc.exceptional_count, 1);
        assert_eq!(lc.nonexceptional, vec![x1]);
    }

    #[test]
    fn cotrivial_examples() {
        let params = bp(3, 2, 2);
        let zero = dade(3, &[0, 0]);
        let top = cotrivial_source_dplus(&params, &zero, 2).unwrap();
        assert_eq!((top.dplus, top.dminus), (7, 0));
        let pos = cotrivial_source_dplus(&params, &zero, 1).unwrap();
        assert_eq!((pos.dplus, pos.dminus), (5, 2));
        for i in 1..=2 {
            let t = dplus_trivial_source(&params, &zero, i).unwrap().dplus;
            let c = cotrivial_source_dplus(&params, &zero, i).unwrap().dplus;
            assert_eq!(c + t, params.tube_rows() - 1);
        }
    }

    #[test]
    fn hook_trivial_source() {
        let t = tree_of(&star(5, 1, 2, true));
        let zero = dade(5, &[0]);
        for h in t.hooks() {
            assert_eq!(hook_is_trivial_source(&zero, &h), h.sign == Sign::Plus);
        }
        let w = dade(5, &[0, 1]);
        assert!(!hook_is_trivial_source(&w, &t.hooks()[0]));
    }

    #[test]
    fn c2() {
        let t = tree_of(&raw_tree(2, 1, &[("a", false), ("b", false)], &[("S", "a", "b")], &[]));
        let r = c2_block(&t).unwrap();
        assert_eq!(r.descriptors.len(), 1);
        assert_eq!((r.vertex_index, r.position.dplus, r.position.dminus), (1, 0, 0));
        assert_eq!(liftable_catalog(&t).unwrap().len(), 2);
        let sources = crate::dade::enumerate_sources(CyclicGroupParams::new(2, 1).unwrap());
        assert_eq!(sources.len(), 1);
        assert!(sources[0].is_zero());
        assert_eq!(classify_trivial_source(&t, &sources[0], 1).unwrap(), r);
    }

    #[test]
    fn descriptor_ranges_are_checked() {
        let t = tree_of(&star(5, 2, 4, true));
        let f = families(&t).into_iter().find(|f| f.kind == JanuszType::PathLeafToExceptional).unwrap();
        assert!(matches!(f.member(&t.params(), 1), Err(ClassifyError::MultiplicityOutOfRange { .. })));
        assert!(matches!(f.member(&t.params(), 7), Err(ClassifyError::MultiplicityOutOfRange { .. })));
    }
}
