//! Closed forms against explicit matrices over F_p.

use atlas_core::cyclic::{self, oracle, CyclicGroupParams, ModuleDecomp, ModuleError};
use atlas_core::dade::{enumerate_sources, DadeElement};
use atlas_core::field::decompose_unipotent;

fn groups(max_pn: u64) -> Vec<CyclicGroupParams> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7, 11] {
        for n in 1.. {
            match CyclicGroupParams::new(p, n) {
                Ok(g) if g.order() <= max_pn => out.push(g),
                _ => break,
            }
        }
    }
    out
}

#[test]
fn restriction_matches_jordan_type() {
    for g in groups(32) {
        for b in 1..=g.order() {
            let act = oracle::generator_action(&g, b).unwrap();
            for i in 0..=g.n() {
                let h = oracle::restrict_action(&g, &act, i).unwrap();
                assert_eq!(decompose_unipotent(&h).unwrap(), cyclic::restrict(&g, b, i).unwrap(), "{g:?} b={b} i={i}");
            }
        }
    }
}

#[test]
fn induction_matches_jordan_type() {
    for g in groups(32) {
        for i in 0..=g.n() {
            let sub = CyclicGroupParams::new(g.p(), i.max(1)).unwrap();
            let max_c = if i == 0 { 1 } else { sub.order() };
            for c in 1..=max_c {
                let h = if i == 0 {
                    atlas_core::field::PrimeFieldMatrix::identity(g.p(), 1).unwrap()
                } else {
                    oracle::generator_action(&sub, c).unwrap()
                };
                let induced = oracle::induce_action(&g, &h, i).unwrap();
                let decomp = decompose_unipotent(&induced).unwrap();
                assert_eq!(decomp, ModuleDecomp::single(cyclic::induce(&g, c, i).unwrap()), "{g:?} c={c} i={i}");
            }
        }
    }
}

#[test]
fn inflation_and_heller() {
    for g in groups(27) {
        for b in 1..=g.order() {
            let act = oracle::generator_action(&g, b).unwrap();
            for i in 0..=g.n() {
                let inflatable = oracle::is_inflated_from(&g, &act, i).unwrap();
                let quotient = g.pow(g.n() - i);
                assert_eq!(inflatable, b <= quotient, "{g:?} b={b} i={i}");
                assert_eq!(inflatable, cyclic::inflate(&g, b, i).is_ok());
                if !inflatable {
                    continue;
                }
                match cyclic::relative_heller(&g, i, b) {
                    Ok(closed) => {
                        let kernel = oracle::relative_heller_action(&g, i, &act).unwrap();
                        assert_eq!(decompose_unipotent(&kernel).unwrap(), ModuleDecomp::single(closed));
                    }
                    Err(ModuleError::ProjectiveInput(_)) => assert_eq!(b, quotient),
                    Err(other) => panic!("{other}"),
                }
            }
            if b < g.order() {
                assert_eq!(cyclic::heller(&g, cyclic::heller(&g, b).unwrap()).unwrap(), b);
            }
        }
    }
}

#[test]
fn dade_formulas_match_kernels() {
    for g in groups(81) {
        for x in enumerate_sources(g) {
            let w = oracle::build_wd_action(&g, &x).unwrap();
            assert_eq!(w.rows() as u64, x.dimension(), "{x:?}");
            assert_eq!(cyclic::build_wd(&g, &x).unwrap(), x.dimension());
            for i in 1..=g.n() {
                assert_eq!(oracle::cap_of_restriction(&g, &w, i).unwrap(), x.ell(i), "{x:?} i={i}");
            }
        }
    }
}

#[test]
fn u_q_chain() {
    for g in groups(49) {
        for x in enumerate_sources(g) {
            for i in 1..=g.n() {
                let expected = x.ell(i) * g.pow(g.n() - i);
                assert_eq!(oracle::u_q(&g, &x, i).unwrap(), expected);
                assert_eq!(cyclic::u_q(&g, &x, i).unwrap(), expected);
            }
        }
    }
}

/// The cap of `W_x ⊗ W_y` is `W_{x+y}`: the group law is XOR.
#[test]
fn tensor_product_is_xor() {
    for g in groups(16) {
        let n = g.n() as usize;
        let all: Vec<DadeElement> = (0..1u32 << n)
            .map(|mask| {
                let bits: Vec<bool> = (0..n).map(|k| mask >> k & 1 == 1).collect();
                DadeElement::new(g, &bits).unwrap()
            })
            .collect();
        for x in &all {
            let wx = oracle::build_wd_action(&g, x).unwrap();
            for y in &all {
                let wy = oracle::build_wd_action(&g, y).unwrap();
                let caps = oracle::tensor_full_vertex_summands(&g, &wx, &wy).unwrap();
                let sum = x.add(y).unwrap();
                assert_eq!(caps, ModuleDecomp::single(sum.dimension()), "{x:?} + {y:?}");
            }
        }
    }
}
