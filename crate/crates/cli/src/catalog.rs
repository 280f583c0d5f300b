//! The registry of check ids, in the order `list-checks` prints them.

use equihom_core::induction::IsoName;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Iso(IsoName),
    ResInd,
    Extend,
    ExtendRoundtrip,
    Cone,
    Snf,
    SnfOracle,
    Bar,
    BarSum,
    Hochschild,
    CyclicNerve,
    Cyclic,
    Split,
    Ladder,
    Hyper,
    Coend,
    Yoneda,
    Reilu,
}

#[derive(Clone, Copy, Debug)]
pub struct CheckInfo {
    pub id: &'static str,
    pub kind: Kind,
    pub operation: &'static str,
    pub anchor: &'static str,
    pub args: &'static str,
}

const ISO_ARGS: &str = "group, subgroup, ring, section?";

pub const CATALOG: &[CheckInfo] = &[
    CheckInfo {
        id: "iso:across",
        kind: Kind::Iso(IsoName::Across),
        operation: "induction::across",
        anchor: "Lemma across=cross",
        args: "group, subgroup, ring (G-ring), section?",
    },
    CheckInfo { id: "iso:green", kind: Kind::Iso(IsoName::Green), operation: "induction::green", anchor: "Theorem git", args: ISO_ARGS },
    CheckInfo {
        id: "iso:mxg",
        kind: Kind::Iso(IsoName::Mxg),
        operation: "induction::mxg",
        anchor: "Lemma mxg",
        args: "group, gset, ring (G-ring)",
    },
    CheckInfo {
        id: "iso:indtriv",
        kind: Kind::Iso(IsoName::Indtriv),
        operation: "induction::indtriv",
        anchor: "Lemma indtriv",
        args: "group, subgroup, ring (G-ring), section?",
    },
    CheckInfo {
        id: "iso:indcomp_i",
        kind: Kind::Iso(IsoName::IndcompI),
        operation: "induction::indcomp_i",
        anchor: "Prop indcomp (H-equivariant)",
        args: ISO_ARGS,
    },
    CheckInfo {
        id: "iso:indcomp_ii",
        kind: Kind::Iso(IsoName::IndcompII),
        operation: "induction::indcomp_ii",
        anchor: "Prop indcomp (G-equivariant)",
        args: ISO_ARGS,
    },
    CheckInfo {
        id: "iso:indx",
        kind: Kind::Iso(IsoName::Indx),
        operation: "induction::indx",
        anchor: "Lemma indx",
        args: "group, subgroup, complex (H-complex), degree?",
    },
    CheckInfo {
        id: "iso:indxtheta",
        kind: Kind::Iso(IsoName::Indxtheta),
        operation: "induction::indxtheta",
        anchor: "Lemma indxtheta",
        args: "group, subgroup (H), inner (K), ring (K-ring), theta",
    },
    CheckInfo {
        id: "decompose-res-ind",
        kind: Kind::ResInd,
        operation: "induction::decompose_res_ind",
        anchor: "eq. decompx",
        args: "group, subgroup (H), inner (K), ring (K-ring)",
    },
    CheckInfo {
        id: "extend",
        kind: Kind::Extend,
        operation: "polyfun::extend",
        anchor: "Theorem supp",
        args: "complex, domain [simplices], values [{simplex, poly [{exps, coef}]}], bound?",
    },
    CheckInfo {
        id: "extend-roundtrip",
        kind: Kind::ExtendRoundtrip,
        operation: "polyfun::extend",
        anchor: "Theorem supp",
        args: "instances? (200), max_vertices? (8), max_dim? (3), degree? (3)",
    },
    CheckInfo {
        id: "cone-homotopy",
        kind: Kind::Cone,
        operation: "lincat::verify_cone_homotopy",
        anchor: "Lemma eac=ebc",
        args: "category",
    },
    CheckInfo {
        id: "snf-homology",
        kind: Kind::Snf,
        operation: "homology::snf_homology",
        anchor: "none (Smith normal form plumbing)",
        args: "chain_complex {lo?, ranks, boundaries} | complex",
    },
    CheckInfo {
        id: "snf-oracle",
        kind: Kind::SnfOracle,
        operation: "homology::snf_homology",
        anchor: "none (Smith normal form plumbing)",
        args: "instances? (500)",
    },
    CheckInfo {
        id: "bar-probe",
        kind: Kind::Bar,
        operation: "homology::bar_tor_probe",
        anchor: "excisive for K-theory with coefficients (tor vanishing)",
        args: "ring | polyfun {complex, degree}, coefficients? (\"Z\"), degree?",
    },
    CheckInfo {
        id: "bar-sum-iff",
        kind: Kind::BarSum,
        operation: "homology::bar_tor_probe",
        anchor: "Prop barsum / barsumh",
        args: "rings [ring], coefficients?, degree? (3)",
    },
    CheckInfo {
        id: "hochschild",
        kind: Kind::Hochschild,
        operation: "homology::hochschild_homology",
        anchor: "Hochschild complex with coefficients, R_g twist",
        args: "ring, coefficients? (\"ring\" | {twisted: element}), degree?",
    },
    CheckInfo {
        id: "cyclic-nerve",
        kind: Kind::CyclicNerve,
        operation: "homology::cyclic_nerve_complex",
        anchor: "Example cc",
        args: "category, degree?",
    },
    CheckInfo {
        id: "cyclic-homology",
        kind: Kind::Cyclic,
        operation: "homology::cyclic_homology",
        anchor: "cyclic theory of B/A",
        args: "ring (unital), degree? (at most 4)",
    },
    CheckInfo {
        id: "conjugacy-split",
        kind: Kind::Split,
        operation: "homology::HochschildComplex::conjugacy_split",
        anchor: "eq. decomp",
        args: "ring (group ring or crossed product), degree?",
    },
    CheckInfo { id: "ladder", kind: Kind::Ladder, operation: "homology::l_ladder", anchor: "L-ladder, L_{n+1}A = ker μ", args: "ring, n" },
    CheckInfo {
        id: "hyperhomology",
        kind: Kind::Hyper,
        operation: "homology::group_hyperhomology",
        anchor: "bar resolution E(G,M)",
        args: "group, subgroup?, complex, degree?",
    },
    CheckInfo {
        id: "coend",
        kind: Kind::Coend,
        operation: "homology::equivariant_coend",
        anchor: "coend over the orbit category (Davis-Lück)",
        args: "group, complex, ring, degree?",
    },
    CheckInfo {
        id: "yoneda",
        kind: Kind::Yoneda,
        operation: "homology::equivariant_coend",
        anchor: "eq. intro:cross",
        args: "group, subgroup, ring?, degree?",
    },
    CheckInfo {
        id: "reilu",
        kind: Kind::Reilu,
        operation: "homology::verify_reilu",
        anchor: "Prop reilu",
        args: "group, complex, ring?, representatives?, degree?",
    },
];

pub fn lookup(id: &str) -> Option<&'static CheckInfo> {
    CATALOG.iter().find(|c| c.id == id)
}

/// One block per check: id and anchor, then the operation and argument schema.
pub fn render() -> String {
    let mut out = String::new();
    for c in CATALOG {
        out.push_str(&format!("{}\t{}\n    op:   {}\n    args: {}\n", c.id, c.anchor, c.operation, c.args));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_cover_every_isomorphism() {
        let mut ids: Vec<_> = CATALOG.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), CATALOG.len());
        for name in IsoName::ALL {
            assert_eq!(lookup(&format!("iso:{name}")).unwrap().kind, Kind::Iso(name));
        }
    }

    #[test]
    fn listing_contains_required_anchors() {
        let text = render();
        assert!(text.contains("reilu\tProp reilu"));
        assert!(text.contains("extend-roundtrip\tTheorem supp"));
        assert_eq!(text, render());
    }
}
