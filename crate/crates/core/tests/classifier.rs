//! Classifier sweeps over every small tree.

use std::collections::BTreeMap;

use atlas_core::classify::{
    classify_trivial_source, distance_to_hook, divisibility_case, dplus_trivial_source, expected_liftable_count,
    lift_character, liftable_by_distance, liftable_catalog, CatalogEntry, DivisibilityCase, JanuszType,
};
use atlas_core::corpus;
use atlas_core::dade::{enumerate_sources, DadeElement};
use atlas_core::tree::{BrauerTree, Sign};

fn corpus_trees(max_pn: u64) -> Vec<BrauerTree> {
    let mut rooted = BTreeMap::new();
    let mut free = BTreeMap::new();
    let mut out = Vec::new();
    for (p, n, e) in corpus::block_parameters(max_pn, 6) {
        let with_x = corpus::has_exceptional(p, n, e);
        let cache = if with_x { &mut rooted } else { &mut free };
        let shapes = cache.entry(e).or_insert_with(|| corpus::shapes(e as usize, with_x));
        for raw in corpus::expand(p, n, shapes, e <= 4) {
            out.push(BrauerTree::validate(&raw).unwrap());
        }
    }
    out
}

fn non_projective(cat: &[CatalogEntry]) -> impl Iterator<Item = &CatalogEntry> {
    cat.iter().filter(|c| !c.descriptor.is_projective())
}

#[test]
fn classification_agrees_with_catalogue_rows() {
    for t in corpus_trees(49) {
        let params = t.params();
        let cat = liftable_catalog(&t).unwrap();
        for x in enumerate_sources(params.group()) {
            for i in 1..=params.n() {
                let report = classify_trivial_source(&t, &x, i).unwrap();
                let row = report.position.dplus;
                assert_eq!(report.position.dplus + report.position.dminus, params.tube_rows() - 1);
                let mut from_catalogue: Vec<_> = non_projective(&cat)
                    .filter(|c| c.position.unwrap().dplus == row)
                    .map(|c| c.descriptor.clone())
                    .collect();
                from_catalogue.sort();
                assert_eq!(report.descriptors, from_catalogue, "{t:?} {x:?} i={i}");
                let expected = if params.order() == 2 { 1 } else { params.e() as usize };
                assert_eq!(report.descriptors.len(), expected);
            }
        }
    }
}

#[test]
fn every_liftable_row_holds_e_modules() {
    for t in corpus_trees(64) {
        let params = t.params();
        let (e, m) = (params.e(), params.m());
        let cat = liftable_catalog(&t).unwrap();
        assert_eq!(cat.len() as u64, expected_liftable_count(&params));
        let mut rows: BTreeMap<u64, usize> = BTreeMap::new();
        for c in non_projective(&cat) {
            let pos = c.position.unwrap();
            assert_eq!(pos.dplus + pos.dminus, params.tube_rows() - 1);
            *rows.entry(pos.dplus).or_default() += 1;
        }
        if params.order() == 2 {
            assert_eq!(rows, BTreeMap::from([(0, 1)]));
            continue;
        }
        assert!(rows.values().all(|&k| k as u64 == e), "{t:?}: {rows:?}");
        let admissible: Vec<u64> = (0..params.tube_rows())
            .filter(|&d| {
                let min = d.min(params.tube_rows() - 1 - d);
                liftable_by_distance(e, m, min)
            })
            .collect();
        assert_eq!(rows.keys().copied().collect::<Vec<_>>(), admissible, "{t:?}");
    }
}

#[test]
fn dichotomy_and_w_trivial() {
    for t in corpus_trees(64) {
        let params = t.params();
        if params.e() == 1 {
            continue;
        }
        for x in enumerate_sources(params.group()) {
            for i in 1..=params.n() {
                let len = x.ell(i) * params.group().pow(params.n() - i);
                let a = (len - 1) % params.e() == 0;
                let b = x.ell(i) % params.e() == 0;
                assert!(a ^ b);
                let case = divisibility_case(&params, &x, i).unwrap();
                assert_eq!(case == DivisibilityCase::Positive, a);
            }
        }
        let k = DadeElement::zero(params.group());
        for i in 1..=params.n() {
            assert_eq!(dplus_trivial_source(&params, &k, i).unwrap().dplus, params.group().pow(params.n() - i) - 1);
        }
        let report = classify_trivial_source(&t, &k, params.n()).unwrap();
        let mut positive: Vec<_> = t.hooks().into_iter().filter(|h| h.sign == Sign::Plus).map(|h| h.key()).collect();
        positive.sort();
        let mut found: Vec<_> = report
            .descriptors
            .iter()
            .map(|d| {
                assert_eq!(d.kind(), JanuszType::Hook);
                (d.first_edge(), d.anchor())
            })
            .collect();
        found.sort();
        assert_eq!(found, positive);
    }
}

/// A lift's composition length is the sum over its characters of their
/// valencies; checks hooks and projectives against their explicit series.
#[test]
fn lift_characters_match_composition_lengths() {
    for t in corpus_trees(32) {
        let m = t.params().m();
        let length = |lc: &atlas_core::classify::LiftCharacter| -> u64 {
            let mut total: u64 = lc.nonexceptional.iter().map(|&v| t.valency(v) as u64).sum();
            if let Some(x) = t.exceptional() {
                total += lc.exceptional_count * t.valency(x) as u64;
            } else {
                assert_eq!(lc.exceptional_count, 0);
            }
            total
        };
        for c in liftable_catalog(&t).unwrap() {
            let d = &c.descriptor;
            match d.kind() {
                JanuszType::Hook => {
                    let h = t.hook(d.first_edge(), d.anchor()).unwrap();
                    assert_eq!(length(&c.lift), h.len() as u64);
                    assert_eq!(distance_to_hook(&t, d).unwrap().0, 0);
                }
                JanuszType::Projective => {
                    let pim = t.pim(d.first_edge());
                    assert_eq!(length(&c.lift), pim.composition_length() as u64);
                    let mult: u64 = [pim.a, pim.b].iter().map(|&v| if t.is_exceptional(v) { m } else { 1 }).sum();
                    assert_eq!(c.lift.exceptional_count + c.lift.nonexceptional.len() as u64, mult);
                }
                _ => {
                    assert_eq!(lift_character(&t, d).unwrap(), c.lift);
                }
            }
        }
    }
}

#[test]
fn greens_walk_over_corpus() {
    for t in corpus_trees(32) {
        let e = t.params().e() as usize;
        let walk = t.default_greens_walk().unwrap();
        assert_eq!(walk.len(), 2 * e);
        assert_eq!(t.omega_on_boundary(walk.last().unwrap()), walk[0]);
        for w in walk.windows(2) {
            assert_eq!(t.omega_on_boundary(&w[0]), w[1]);
            assert_ne!(w[0].sign, w[1].sign);
        }
        let mut seen: BTreeMap<_, usize> = BTreeMap::new();
        for h in &walk {
            *seen.entry(h.top_edge).or_default() += 1;
        }
        assert!(seen.len() == e && seen.values().all(|&k| k == 2));
    }
}

#[test]
fn sign_flip_keeps_rows() {
    for t in corpus_trees(32) {
        let flipped = t.with_negated_signs();
        let params = t.params();
        for x in enumerate_sources(params.group()) {
            for i in 1..=params.n() {
                let a = classify_trivial_source(&t, &x, i).unwrap();
                let b = classify_trivial_source(&flipped, &x, i).unwrap();
                assert_eq!(a.position, b.position);
                assert_eq!(a.case, b.case);
                assert_eq!(a.descriptors.len(), b.descriptors.len());
            }
        }
    }
}

#[test]
fn m_equal_one_gives_positive_hooks() {
    for t in corpus_trees(128).into_iter().filter(|t| t.params().m() == 1) {
        let params = t.params();
        assert_eq!(params.n(), 1);
        let sources = enumerate_sources(params.group());
        assert_eq!(sources, vec![DadeElement::zero(params.group())]);
        let report = classify_trivial_source(&t, &sources[0], 1).unwrap();
        assert!(report.descriptors.iter().all(|d| d.kind() == JanuszType::Hook && t.sign(d.anchor()) == Sign::Plus));
    }
}
