//! Serializable reports and their plain-text tables.

use serde::Serialize;

use atlas_core::classify::{
    expected_liftable_count, CatalogEntry, DivisibilityCase, JanuszDescriptor, LiftCharacter, TrivialSourceReport,
};
use atlas_core::dade::DadeElement;
use atlas_core::tree::{BrauerTree, EdgeId, Hook, PimStructure, VertexId};

#[derive(Debug, Clone, Serialize)]
pub struct BlockDto {
    pub p: u64,
    pub n: u32,
    pub e: u64,
    pub m: u64,
    /// `a_0, ..., a_{n-1}`
    pub dade: Vec<u8>,
}

impl BlockDto {
    pub fn new(tree: &BrauerTree, dade: &DadeElement) -> Self {
        let params = tree.params();
        Self {
            p: params.p(),
            n: params.n(),
            e: params.e(),
            m: params.m(),
            dade: dade.bits().iter().map(|&b| u8::from(b)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DescriptorDto {
    pub kind: &'static str,
    pub clause: &'static str,
    pub path: Vec<String>,
    pub direction: [i8; 2],
    pub multiplicity: u64,
    pub anchor: String,
    pub first_edge: String,
    pub l: usize,
}

impl DescriptorDto {
    pub fn new(tree: &BrauerTree, d: &JanuszDescriptor) -> Self {
        Self {
            kind: d.kind().name(),
            clause: d.kind().clause(),
            path: edge_labels(tree, d.path()),
            direction: [d.direction().first.as_i8(), d.direction().last.as_i8()],
            multiplicity: d.multiplicity(),
            anchor: tree.vertex_label(d.anchor()).to_string(),
            first_edge: tree.edge_label(d.first_edge()).to_string(),
            l: d.l(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrivialSourceDto {
    pub vertex_index: u32,
    pub ell: u64,
    pub length: u64,
    pub dplus: u64,
    pub dminus: u64,
    pub case: Option<&'static str>,
    pub descriptors: Vec<DescriptorDto>,
}

impl TrivialSourceDto {
    pub fn new(tree: &BrauerTree, r: &TrivialSourceReport) -> Self {
        Self {
            vertex_index: r.vertex_index,
            ell: r.ell,
            length: r.position.dplus + 1,
            dplus: r.position.dplus,
            dminus: r.position.dminus,
            case: r.case.map(|c| match c {
                DivisibilityCase::Positive => "positive",
                DivisibilityCase::Negative => "negative",
            }),
            descriptors: r.descriptors.iter().map(|d| DescriptorDto::new(tree, d)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyDto {
    pub block: BlockDto,
    pub reports: Vec<TrivialSourceDto>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HookRefDto {
    pub top_edge: String,
    pub body: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftDto {
    pub characters: Vec<String>,
    pub exceptional_count: u64,
}

impl LiftDto {
    pub fn new(tree: &BrauerTree, lc: &LiftCharacter) -> Self {
        Self { characters: vertex_labels(tree, &lc.nonexceptional), exceptional_count: lc.exceptional_count }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntryDto {
    pub descriptor: DescriptorDto,
    pub distance: Option<u64>,
    pub reference_hook: Option<HookRefDto>,
    pub dplus: Option<u64>,
    pub dminus: Option<u64>,
    pub lift: LiftDto,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountDto {
    pub total: u64,
    pub non_projective: u64,
    pub expected_total: u64,
    pub expected_non_projective: u64,
}

impl CountDto {
    pub fn holds(&self) -> bool {
        self.total == self.expected_total && self.non_projective == self.expected_non_projective
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftableDto {
    pub block: BlockDto,
    pub entries: Vec<CatalogEntryDto>,
    pub count: CountDto,
}

impl LiftableDto {
    pub fn new(tree: &BrauerTree, dade: &DadeElement, catalog: &[CatalogEntry]) -> Self {
        let params = tree.params();
        let entries: Vec<CatalogEntryDto> = catalog
            .iter()
            .map(|c| CatalogEntryDto {
                descriptor: DescriptorDto::new(tree, &c.descriptor),
                distance: c.distance,
                reference_hook: c.reference_hook.map(|(e, v)| HookRefDto {
                    top_edge: tree.edge_label(e).to_string(),
                    body: tree.vertex_label(v).to_string(),
                }),
                dplus: c.position.map(|p| p.dplus),
                dminus: c.position.map(|p| p.dminus),
                lift: LiftDto::new(tree, &c.lift),
            })
            .collect();
        let projective = catalog.iter().filter(|c| c.descriptor.is_projective()).count() as u64;
        let expected_total = expected_liftable_count(&params);
        let count = CountDto {
            total: catalog.len() as u64,
            non_projective: catalog.len() as u64 - projective,
            expected_total,
            expected_non_projective: expected_total - params.e(),
        };
        Self { block: BlockDto::new(tree, dade), entries, count }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HookDto {
    pub top_edge: String,
    pub body: String,
    pub sign: i8,
    pub exceptional: bool,
    pub composition: Vec<String>,
}

impl HookDto {
    pub fn new(tree: &BrauerTree, h: &Hook) -> Self {
        Self {
            top_edge: tree.edge_label(h.top_edge).to_string(),
            body: tree.vertex_label(h.body).to_string(),
            sign: h.sign.as_i8(),
            exceptional: tree.is_exceptional(h.body),
            composition: edge_labels(tree, &h.composition),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HooksDto {
    pub block: BlockDto,
    pub hooks: Vec<HookDto>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WalkDto {
    pub block: BlockDto,
    pub steps: Vec<HookDto>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PimDto {
    pub edge: String,
    pub a: String,
    pub b: String,
    pub q_a: Vec<String>,
    pub q_b: Vec<String>,
    pub composition_length: usize,
    pub character: [String; 2],
}

impl PimDto {
    pub fn new(tree: &BrauerTree, pim: &PimStructure) -> Self {
        let (a, b) = pim.projective_character();
        let label = |v: VertexId| tree.vertex_label(v).to_string();
        Self {
            edge: tree.edge_label(pim.edge).to_string(),
            a: label(pim.a),
            b: label(pim.b),
            q_a: edge_labels(tree, &pim.q_a),
            q_b: edge_labels(tree, &pim.q_b),
            composition_length: pim.composition_length(),
            character: [label(a), label(b)],
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PimsDto {
    pub block: BlockDto,
    pub pims: Vec<PimDto>,
}

pub fn edge_labels(tree: &BrauerTree, edges: &[EdgeId]) -> Vec<String> {
    edges.iter().map(|&e| tree.edge_label(e).to_string()).collect()
}

pub fn vertex_labels(tree: &BrauerTree, vs: &[VertexId]) -> Vec<String> {
    vs.iter().map(|&v| tree.vertex_label(v).to_string()).collect()
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (k, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            s.push_str(cell);
            if k + 1 < cells.len() {
                s.extend(std::iter::repeat_n(' ', w - cell.chars().count() + 2));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn sign_str(s: i8) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}

fn block_line(b: &BlockDto) -> String {
    let bits: Vec<String> = b.dade.iter().map(|x| x.to_string()).collect();
    format!("block p={} n={} e={} m={} W=({})\n", b.p, b.n, b.e, b.m, bits.join(","))
}

fn descriptor_cells(d: &DescriptorDto) -> Vec<String> {
    vec![
        d.clause.to_string(),
        d.kind.to_string(),
        d.path.join(" "),
        format!("({},{})", sign_str(d.direction[0]), sign_str(d.direction[1])),
        d.multiplicity.to_string(),
        d.anchor.clone(),
    ]
}

const DESCRIPTOR_HEADER: [&str; 6] = ["clause", "type", "path", "dir", "mu", "anchor"];

pub fn render_classify(dto: &ClassifyDto) -> String {
    let mut out = block_line(&dto.block);
    for r in &dto.reports {
        out.push_str(&format!(
            "\nvertex D_{}: ell={} length={} d+={} d-={} case={}\n",
            r.vertex_index,
            r.ell,
            r.length,
            r.dplus,
            r.dminus,
            r.case.unwrap_or("none")
        ));
        let rows: Vec<Vec<String>> = r.descriptors.iter().map(descriptor_cells).collect();
        out.push_str(&table(&DESCRIPTOR_HEADER, &rows));
    }
    out
}

pub fn render_liftable(dto: &LiftableDto) -> String {
    let mut out = block_line(&dto.block);
    let mut header = DESCRIPTOR_HEADER.to_vec();
    header.extend(["dist", "ref hook", "d+", "d-", "lift"]);
    let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
    let rows: Vec<Vec<String>> = dto
        .entries
        .iter()
        .map(|c| {
            let mut row = descriptor_cells(&c.descriptor);
            row.push(opt(c.distance));
            row.push(c.reference_hook.as_ref().map_or("-".to_string(), |h| format!("{}@{}", h.top_edge, h.body)));
            row.push(opt(c.dplus));
            row.push(opt(c.dminus));
            let mut lift = c.lift.characters.join("+");
            if c.lift.exceptional_count > 0 {
                if !lift.is_empty() {
                    lift.push('+');
                }
                lift.push_str(&format!("{}*exc", c.lift.exceptional_count));
            }
            row.push(lift);
            row
        })
        .collect();
    out.push_str(&table(&header, &rows));
    let c = &dto.count;
    let formula = if dto.block.e == 1 { "m+1" } else { "e(2m+1)" };
    out.push_str(&format!(
        "count: {} liftable, {} = {}; {} non-projective, expected {}\n",
        c.total, formula, c.expected_total, c.non_projective, c.expected_non_projective
    ));
    out
}

fn hook_rows(hooks: &[HookDto]) -> Vec<Vec<String>> {
    hooks
        .iter()
        .map(|h| {
            let body = if h.exceptional { format!("{} (exc)", h.body) } else { h.body.clone() };
            vec![h.top_edge.clone(), body, sign_str(h.sign).to_string(), h.composition.join(" ")]
        })
        .collect()
}

pub fn render_hooks(dto: &HooksDto) -> String {
    let mut out = block_line(&dto.block);
    out.push_str(&table(&["top", "character", "sign", "composition"], &hook_rows(&dto.hooks)));
    out
}

pub fn render_walk(dto: &WalkDto) -> String {
    let mut out = block_line(&dto.block);
    let rows: Vec<Vec<String>> = hook_rows(&dto.steps)
        .into_iter()
        .enumerate()
        .map(|(k, mut row)| {
            row.insert(0, format!("Ω^{k}"));
            row
        })
        .collect();
    out.push_str(&table(&["step", "top", "character", "sign", "composition"], &rows));
    out
}

pub fn render_pims(dto: &PimsDto) -> String {
    let mut out = block_line(&dto.block);
    let rows: Vec<Vec<String>> = dto
        .pims
        .iter()
        .map(|p| {
            vec![
                p.edge.clone(),
                p.q_a.join(" "),
                p.q_b.join(" "),
                p.composition_length.to_string(),
                format!("{} + {}", p.character[0], p.character[1]),
            ]
        })
        .collect();
    out.push_str(&table(&["edge", "Q_a", "Q_b", "length", "character"], &rows));
    out
}
