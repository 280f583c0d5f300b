//! Cross-module identities checked against closed forms for group homology.

use std::sync::Arc;

use equihom_core::groups::{FiniteGroup, GroupRef};
use equihom_core::homology::{cyclic_homology, group_hyperhomology, hochschild_homology, Coefficients, EquivariantComplex};
use equihom_core::induction::{self, with_trivial_action, InducedRing, LocalCosets};
use equihom_core::rings::{group_ring, integers, matrix_ring};
use equihom_linalg::{ChainComplexZ, FGAbelianGroup};

fn groups(text: &[&str]) -> Vec<FGAbelianGroup> {
    text.iter().map(|s| s.parse().unwrap()).collect()
}

/// H_n(C_m; Z) for n = 0..=top.
fn cyclic_group_homology(m: usize, top: usize) -> Vec<FGAbelianGroup> {
    (0..=top)
        .map(|n| match n {
            0 => FGAbelianGroup::free(1),
            n if n % 2 == 1 => FGAbelianGroup::from_small(0, &[m as u64]),
            _ => FGAbelianGroup::zero(),
        })
        .collect()
}

fn power(g: &FGAbelianGroup, k: usize) -> FGAbelianGroup {
    (0..k).fold(FGAbelianGroup::zero(), |acc, _| acc.direct_sum(g))
}

fn s3() -> GroupRef {
    Arc::new(FiniteGroup::symmetric(3).unwrap())
}

#[test]
fn hochschild_of_cyclic_group_rings_is_group_homology_per_element() {
    for m in 2..=4 {
        let g: GroupRef = Arc::new(FiniteGroup::cyclic(m).unwrap());
        let hh = hochschild_homology(&group_ring(&g), Coefficients::Ring, 2).unwrap();
        let expected: Vec<_> = cyclic_group_homology(m, 2).iter().map(|h| power(h, m)).collect();
        assert_eq!(hh, expected, "C_{m}");
    }
}

#[test]
fn hochschild_of_s3_sums_centralizer_homology() {
    // Centralizers of 1, (12), (123) are S3, C2, C3; H_*(S3) = Z, Z/2, 0, Z/6.
    let hh = hochschild_homology(&group_ring(&s3()), Coefficients::Ring, 3).unwrap();
    assert_eq!(hh, groups(&["Z^3", "Z/2 + Z/2 + Z/3", "0", "Z/6 + Z/2 + Z/3"]));
}

#[test]
fn hyperhomology_of_a_point_is_group_homology() {
    let g = s3();
    let point = EquivariantComplex::trivial(g.clone(), g.whole(), ChainComplexZ::new(0, vec![1], vec![]).unwrap());
    assert_eq!(group_hyperhomology(&point, 3).unwrap(), groups(&["Z", "Z/2", "0", "Z/6"]));
}

#[test]
fn matrix_rings_are_morita_invisible() {
    let z = hochschild_homology(&integers(), Coefficients::Ring, 2).unwrap();
    assert_eq!(hochschild_homology(&matrix_ring(2), Coefficients::Ring, 2).unwrap(), z);
}

#[test]
fn cyclic_homology_of_integers_alternates() {
    assert_eq!(cyclic_homology(&integers(), 4).unwrap(), groups(&["Z", "0", "Z", "0", "Z"]));
}

#[test]
fn induction_isomorphisms_hold_for_every_subgroup_of_s3() {
    let g = s3();
    for h in g.all_subgroups() {
        let cosets = LocalCosets::new(&g, &g.whole(), &h).unwrap();
        let base = Arc::new(with_trivial_action(&integers(), &g, &h).unwrap());
        let green = induction::green(&cosets, &base).unwrap();
        assert!(green.passed(), "green over {h:?}: {}", green.summary());
        let comp = induction::indcomp_i(&cosets, &base).unwrap();
        assert!(comp.passed(), "indcomp over {h:?}: {}", comp.summary());
        let proper = InducedRing::new(cosets.clone(), base).unwrap().proper_structure().unwrap();
        let comp_g = induction::indcomp_ii(&cosets, &proper).unwrap();
        assert!(comp_g.passed(), "G-equivariant indcomp over {h:?}: {}", comp_g.summary());

        let ambient = Arc::new(with_trivial_action(&integers(), &g, &g.whole()).unwrap());
        let across = induction::across(&cosets, &ambient).unwrap();
        assert!(across.passed(), "across over {h:?}: {}", across.summary());
    }
}
