//! The oracle sweep behind `atlas verify`.
//!
//! Each check walks its cases in increasing order and stops at the first
//! mismatch, reporting it as a reproducer.

use std::fmt;

use atlas_core::classify::{
    c2_block, classify_trivial_source, distance_to_hook, dplus_trivial_source, expected_liftable_count,
    hook_is_trivial_source, liftable_by_distance, liftable_catalog, JanuszType,
};
use atlas_core::cyclic::{oracle, CyclicGroupParams};
use atlas_core::dade::{enumerate_sources, DadeElement};
use atlas_core::tree::{BrauerTree, RawTree, Sign};

use crate::corpus::Corpus;
use crate::input::{BlockInputFile, CliError};

pub type EllFn = fn(&DadeElement, u32) -> u64;

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub max_pn: u64,
    /// Primes for the matrix oracle sweeps; trees use every prime up to `max_pn`.
    pub primes: Vec<u64>,
    pub seed: u64,
    pub trees_per_point: usize,
    /// The `ℓ_i` formula under test.
    pub ell: EllFn,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { max_pn: 128, primes: vec![2, 3, 5, 7, 11], seed: 0, trees_per_point: 2, ell: DadeElement::ell }
    }
}

impl SweepConfig {
    pub fn check(&self) -> Result<(), CliError> {
        if self.max_pn < 4 {
            return Err(CliError::Usage(format!("--max-pn must be at least 4, got {}", self.max_pn)));
        }
        if let Some(&p) = self.primes.iter().find(|&&p| CyclicGroupParams::new(p, 1).is_err()) {
            return Err(CliError::Usage(format!("{p} is not a prime")));
        }
        Ok(())
    }

    pub fn groups(&self) -> Vec<CyclicGroupParams> {
        let mut out = Vec::new();
        for &p in &self.primes {
            for n in 1.. {
                match CyclicGroupParams::new(p, n) {
                    Ok(g) if g.order() <= self.max_pn => out.push(g),
                    _ => break,
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub cases: u64,
    pub failure: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, failure: None }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Records one case; returns false once a failure has been seen.
    fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        if self.failure.is_some() {
            return false;
        }
        self.cases += 1;
        if !ok {
            self.failure = Some(witness());
        }
        ok
    }

    fn fail(&mut self, witness: String) {
        if self.failure.is_none() {
            self.cases += 1;
            self.failure = Some(witness);
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {}: {} cases", self.name, self.cases),
            Some(w) => write!(f, "FAIL {}: after {} cases, reproducer: {}", self.name, self.cases, w),
        }
    }
}

fn bits(x: &DadeElement) -> String {
    let b: Vec<&str> = x.bits().iter().map(|&b| if b { "1" } else { "0" }).collect();
    format!("[{}]", b.join(","))
}

fn point(g: &CyclicGroupParams, x: &DadeElement) -> String {
    format!("p={} n={} dade={}", g.p(), g.n(), bits(x))
}

fn tree_witness(raw: &RawTree, x: Option<&DadeElement>) -> String {
    serde_json::to_string(&BlockInputFile::from_raw(raw, x)).expect("serializable")
}

/// Dimension formula, restriction formula and the induced-cap chain against
/// explicit relative Heller kernels.
pub fn dade_checks(cfg: &SweepConfig) -> [Check; 3] {
    let mut dim = Check::new("Dade dimension formula vs relative Heller kernels");
    let mut res = Check::new("ℓ_i vs cap of restriction");
    let mut uq = Check::new("ℓ_i p^(n-i) vs Ind(Cap(Res W))");
    for g in cfg.groups() {
        for x in enumerate_sources(g) {
            let w = match oracle::build_wd_action(&g, &x) {
                Ok(w) => w,
                Err(err) => {
                    dim.fail(format!("{}: {err}", point(&g, &x)));
                    continue;
                }
            };
            dim.case(w.rows() as u64 == x.dimension(), || {
                format!("{}: formula {} oracle {}", point(&g, &x), x.dimension(), w.rows())
            });
            for i in 1..=g.n() {
                let ell = (cfg.ell)(&x, i);
                match oracle::cap_of_restriction(&g, &w, i) {
                    Ok(cap) => {
                        res.case(cap == ell, || format!("{} i={i}: formula {ell} oracle {cap}", point(&g, &x)));
                    }
                    Err(err) => res.fail(format!("{} i={i}: {err}", point(&g, &x))),
                }
                let expected = ell * g.pow(g.n() - i);
                match oracle::u_q(&g, &x, i) {
                    Ok(d) => {
                        uq.case(d == expected, || format!("{} i={i}: formula {expected} oracle {d}", point(&g, &x)));
                    }
                    Err(err) => uq.fail(format!("{} i={i}: {err}", point(&g, &x))),
                }
            }
        }
    }
    [dim, res, uq]
}

/// Checks over the tree corpus, in this order: tube sum, liftable count,
/// distance criterion, trivial source completeness, divisibility dichotomy,
/// `W = k`, the `C_2` block and Green's walk.
pub fn tree_checks(cfg: &SweepConfig, corpus: &Corpus) -> [Check; 8] {
    let mut tube = Check::new("d+ + d- = em - 1");
    let mut count = Check::new("liftable count e(2m+1) (m+1 for e = 1), 2em (m) non-projective");
    let mut distance = Check::new("catalogue distances vs the distance criterion");
    let mut complete = Check::new("e trivial source modules per vertex, recomputed through hooks");
    let mut dichotomy = Check::new("exactly one of e | ℓ_i and e | ℓ_i p^(n-i) - 1");
    let mut trivial = Check::new("W = k: d+ = p^(n-i) - 1 and the positive hooks");
    let mut c2 = Check::new("C_2: one simple at d+ = d- = 0 and one PIM");
    let mut walk = Check::new("Green's walk: 2e hooks, Ω^2e = 1, alternating signs, edges twice");

    for raw in corpus.iter() {
        let t = match BrauerTree::validate(raw) {
            Ok(t) => t,
            Err(err) => {
                tube.fail(format!("{}: {err}", tree_witness(raw, None)));
                continue;
            }
        };
        let params = t.params();
        let group = params.group();
        let (e, m, rows) = (params.e(), params.m(), params.tube_rows());
        let w = |x: Option<&DadeElement>| tree_witness(raw, x);

        let catalog = match liftable_catalog(&t) {
            Ok(c) => c,
            Err(err) => {
                count.fail(format!("{}: {err}", w(None)));
                continue;
            }
        };
        let non_projective: Vec<_> = catalog.iter().filter(|c| !c.descriptor.is_projective()).collect();

        for c in &non_projective {
            let pos = c.position.expect("non-projective entries have positions");
            tube.case(pos.dplus + pos.dminus == rows - 1, || format!("{}: catalogue entry {:?}", w(None), c.descriptor));
        }

        let total = catalog.len() as u64;
        let expected = expected_liftable_count(&params);
        count.case(total == expected && non_projective.len() as u64 == expected - e, || {
            format!("{}: {} liftable ({} non-projective), expected {}", w(None), total, non_projective.len(), expected)
        });

        let mut occupied = vec![false; rows as usize];
        for c in &non_projective {
            let pos = c.position.expect("positioned");
            occupied[pos.dplus as usize] = true;
            distance.case(liftable_by_distance(e, m, pos.min_distance()), || {
                format!("{}: {:?} at d+={} is not admissible", w(None), c.descriptor, pos.dplus)
            });
        }
        for d in 0..rows {
            let admissible = liftable_by_distance(e, m, d.min(rows - 1 - d));
            distance.case(!admissible || occupied[d as usize], || format!("{}: admissible row {d} is empty", w(None)));
        }

        for x in enumerate_sources(group) {
            for i in 1..=params.n() {
                let ell = (cfg.ell)(&x, i);
                let len = ell * group.pow(params.n() - i);
                if e > 1 {
                    dichotomy.case((len - 1).is_multiple_of(e) ^ ell.is_multiple_of(e), || {
                        format!("{} i={i}: ℓ_i={ell} e={e}", w(Some(&x)))
                    });
                }
                let report = match classify_trivial_source(&t, &x, i) {
                    Ok(r) => r,
                    Err(err) => {
                        complete.fail(format!("{} i={i}: {err}", w(Some(&x))));
                        continue;
                    }
                };
                tube.case(report.position.dplus + report.position.dminus == rows - 1, || {
                    format!("{} i={i}: report {:?}", w(Some(&x)), report.position)
                });
                let want = if group.order() == 2 { 1 } else { e as usize };
                if !complete.case(report.descriptors.len() == want, || {
                    format!("{} i={i}: {} descriptors, expected {want}", w(Some(&x)), report.descriptors.len())
                }) {
                    continue;
                }
                for d in &report.descriptors {
                    let recomputed = distance_to_hook(&t, d).map(|(dist, hook)| match hook.sign {
                        Sign::Plus => dist,
                        Sign::Minus => rows - 1 - dist,
                    });
                    complete.case(recomputed.as_ref().is_ok_and(|&r| r + 1 == len), || {
                        format!("{} i={i}: {:?} recomputes to {:?}, expected d+={}", w(Some(&x)), d, recomputed, len - 1)
                    });
                }
                let mut row: Vec<_> = non_projective
                    .iter()
                    .filter(|c| c.position.is_some_and(|p| p.dplus + 1 == len))
                    .map(|c| c.descriptor.clone())
                    .collect();
                row.sort();
                complete.case(row == report.descriptors, || {
                    format!("{} i={i}: catalogue row {:?} differs from {:?}", w(Some(&x)), row, report.descriptors)
                });
            }
        }

        let k = DadeElement::zero(group);
        for i in 1..=params.n() {
            let want = group.pow(params.n() - i) - 1;
            let got = dplus_trivial_source(&params, &k, i).map(|p| p.dplus);
            trivial.case(got == Ok(want), || format!("{} i={i}: d+ {:?}, expected {want}", w(Some(&k)), got));
        }
        if group.order() > 2 {
            let mut positive: Vec<_> = t.hooks().into_iter().filter(|h| h.sign == Sign::Plus).map(|h| h.key()).collect();
            positive.sort();
            let by_flag: Vec<_> = t.hooks().into_iter().filter(|h| hook_is_trivial_source(&k, h)).map(|h| h.key()).collect();
            let found = classify_trivial_source(&t, &k, params.n()).map(|r| {
                let mut keys: Vec<_> = r
                    .descriptors
                    .iter()
                    .filter(|d| d.kind() == JanuszType::Hook)
                    .map(|d| (d.first_edge(), d.anchor()))
                    .collect();
                keys.sort();
                (keys, r.descriptors.len())
            });
            trivial.case(found == Ok((positive.clone(), positive.len())) && by_flag.len() == positive.len(), || {
                format!("{}: trivial source hooks {:?}, positive hooks {:?}", w(Some(&k)), found, positive)
            });
        }

        if group.order() == 2 {
            let ok = c2_block(&t).is_ok_and(|r| {
                r.descriptors.len() == 1
                    && r.position.dplus == 0
                    && r.position.dminus == 0
                    && r.descriptors[0].kind() == JanuszType::Hook
                    && t.hook(r.descriptors[0].first_edge(), r.descriptors[0].anchor()).is_ok_and(|h| h.is_simple())
            }) && catalog.len() == 2
                && catalog.iter().filter(|c| c.descriptor.is_projective()).count() == 1;
            c2.case(ok, || format!("{}: {:?}", w(None), c2_block(&t)));
        }

        match t.default_greens_walk() {
            Ok(steps) => {
                let mut seen = vec![0usize; t.edge_count()];
                for h in &steps {
                    seen[h.top_edge.0] += 1;
                }
                let closes = steps.last().is_some_and(|h| t.omega_on_boundary(h) == steps[0]);
                let chained = steps.windows(2).all(|p| t.omega_on_boundary(&p[0]) == p[1] && p[0].sign != p[1].sign);
                let ok = steps.len() as u64 == 2 * e && closes && chained && seen.iter().all(|&c| c == 2);
                walk.case(ok, || format!("{}: walk {:?}", w(None), steps));
            }
            Err(err) => walk.fail(format!("{}: {err}", w(None))),
        }
    }
    [tube, count, distance, complete, dichotomy, trivial, c2, walk]
}

pub struct SweepReport {
    pub groups: usize,
    pub trees: usize,
    pub random_trees: usize,
    pub checks: Vec<Check>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

pub fn run(cfg: &SweepConfig) -> Result<SweepReport, CliError> {
    cfg.check()?;
    let corpus = Corpus::build(cfg.max_pn, cfg.seed, cfg.trees_per_point);
    let mut checks: Vec<Check> = dade_checks(cfg).into();
    checks.extend(tree_checks(cfg, &corpus));
    Ok(SweepReport { groups: cfg.groups().len(), trees: corpus.len(), random_trees: corpus.random.len(), checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let cfg = SweepConfig { max_pn: 16, ..SweepConfig::default() };
        let report = run(&cfg).unwrap();
        for c in &report.checks {
            assert!(c.passed(), "{c}");
            assert!(c.cases > 0, "{c}");
        }
    }

    #[test]
    fn off_by_one_ell_is_caught() {
        fn shifted(x: &DadeElement, i: u32) -> u64 {
            x.ell(i) + u64::from(i == x.params().n() && x.params().n() > 1)
        }
        let cfg = SweepConfig { max_pn: 9, ell: shifted, ..SweepConfig::default() };
        let report = run(&cfg).unwrap();
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed()).collect();
        assert!(!failed.is_empty());
        let witness = failed[0].failure.as_ref().unwrap();
        assert!(witness.contains("p=2 n=2 dade=[0,0] i=2"), "{witness}");
    }

    #[test]
    fn rejects_tiny_bound() {
        let cfg = SweepConfig { max_pn: 3, ..SweepConfig::default() };
        assert!(run(&cfg).is_err());
    }
}
