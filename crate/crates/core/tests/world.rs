// SPDX-License-Identifier: MIT
mod common;

use causal_persuasion::world::{confounders, is_rich_enumerated, nonobvious_causes, obvious_causes};
use causal_persuasion::{
    cause_catalog, d_separates, defective_links, find_confounders, find_nonobvious_causes, find_obvious_causes,
    is_rich, is_simple, profile, random_dag, EnumBudget, FixtureId,
};
use common::{brute_simple, dag, fixture};

fn triple(w: Option<(causal_persuasion::VariableId, causal_persuasion::VariableId, causal_persuasion::VariableId)>) -> Option<[String; 3]> {
    w.map(|(a, b, c)| [a.to_string(), b.to_string(), c.to_string()])
}

#[test]
fn simplicity() {
    assert!(is_simple(&fixture("fig8a")).0);
    assert!(is_simple(&fixture("fig2a")).0);
    let (simple, w) = is_simple(&fixture("fig8b"));
    assert!(!simple);
    assert_eq!(triple(w), Some(["b".into(), "d".into(), "c".into()]));
}

#[test]
fn richness() {
    assert!(is_rich(&fixture("fig2a")).unwrap().0);
    let (rich, w) = is_rich(&dag(&["a", "b", "c"], &[("a", "b"), ("b", "c")])).unwrap();
    assert!(!rich);
    assert!(w.is_some());
    assert!(!is_rich(&fixture("fig8c")).unwrap().0);
}

#[test]
fn defective() {
    let truth = dag(&["a", "b"], &[("a", "b")]);
    let back = dag(&["a", "b"], &[("b", "a")]);
    assert_eq!(defective_links(&back, &truth).unwrap(), [("b", "a")]);
    let chain = dag(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
    let skip = dag(&["a", "c"], &[("a", "c")]);
    assert!(defective_links(&skip, &chain).unwrap().is_empty());
    assert!(defective_links(&chain, &chain).unwrap().is_empty());
    let stranger = dag(&["a", "q"], &[("a", "q")]);
    assert!(defective_links(&stranger, &chain).is_err());
}

#[test]
fn obvious_causes_examples() {
    assert_eq!(find_obvious_causes(&fixture("fig9"), "x", "y").unwrap(), ["z"]);
    assert!(find_obvious_causes(&dag(&["x", "y"], &[("x", "y")]), "x", "y").unwrap().is_empty());
    assert!(find_obvious_causes(&fixture("fig12(2)"), "x", "y").unwrap().is_empty());
    assert!(find_obvious_causes(&fixture("fig9"), "x", "x").is_err());
}

#[test]
fn nonobvious_causes_examples() {
    let nine = fixture("fig9");
    assert_eq!(find_nonobvious_causes(&nine, "x", "y").unwrap(), ["v", "w"]);
    assert!(d_separates(&nine, "v", "w", Vec::<&str>::new()).unwrap());
    let chain = dag(&["w", "x", "y"], &[("w", "x"), ("x", "y")]);
    assert_eq!(find_nonobvious_causes(&chain, "x", "y").unwrap(), ["w"]);
    assert!(common::path_dsep(&chain, 0, 2, &[1]));
    assert!(find_nonobvious_causes(&fixture("fig12(2)"), "x", "y").unwrap().is_empty());

    let back = cause_catalog(&chain, "y", "x").unwrap();
    assert!(back.nonobvious.is_empty());
    assert!(back.nonobvious_unavailable.is_some());
}

#[test]
fn confounder_examples() {
    let fork = dag(&["c", "x", "y"], &[("c", "x"), ("c", "y")]);
    assert_eq!(find_confounders(&fork, "x", "y").unwrap(), ["c"]);
    assert_eq!(
        find_confounders(&fixture("fig12(2)"), "x", "y").unwrap(),
        ["a", "b1", "b2", "c1", "c2"]
    );
    assert!(find_confounders(&dag(&["x", "y"], &[("x", "y")]), "x", "y").unwrap().is_empty());
}

#[test]
fn profile_json_fields() {
    let p = profile(&fixture("fig8b")).unwrap();
    assert!(!p.simple && p.witness_nonsimple.is_some());
    let text = serde_json::to_string(&p).unwrap();
    assert!(text.contains("\"witness_nonrich\""));
}

/// Confounders reached by brute force: every directed path is listed and
/// checked for the excluded node.
fn brute_confounders(g: &causal_persuasion::Dag, x: usize, y: usize) -> Vec<usize> {
    fn paths(g: &causal_persuasion::Dag, from: usize, to: usize, avoid: usize) -> bool {
        if from == to {
            return true;
        }
        g.children_of(from).iter().any(|c| c != avoid && paths(g, c, to, avoid))
    }
    (0..g.len())
        .filter(|&c| c != x && c != y && paths(g, c, x, y) && paths(g, c, y, x))
        .collect()
}

#[test]
fn cause_sets_on_random_worlds() {
    for seed in 0..300 {
        let g = random_dag(seed, 7, 0.35).unwrap();
        assert!(defective_links(&g, &g).unwrap().is_empty());
        assert_eq!(is_simple(&g).0, brute_simple(&g), "{g}");
        for x in 0..7 {
            for y in 0..7 {
                if x == y {
                    continue;
                }
                let (ob, non, conf) = (obvious_causes(&g, x, y), nonobvious_causes(&g, x, y), confounders(&g, x, y));
                assert!(ob.intersection(conf).is_empty());
                for w in non.iter() {
                    assert!(g.correlated_at(w, x));
                }
                for s in [ob, non, conf] {
                    assert!(!s.contains(x) && !s.contains(y));
                }
                assert_eq!(conf.iter().collect::<Vec<_>>(), brute_confounders(&g, x, y));
            }
        }
    }
}

#[test]
fn fast_richness_matches_enumeration() {
    let budget = EnumBudget::default();
    for name in FixtureId::names() {
        let g = fixture(&name.replace("(n)", "(2)"));
        assert_eq!(is_rich(&g).unwrap().0, is_rich_enumerated(&g, budget).unwrap(), "{name}");
    }
    for seed in 0..400 {
        let n = 2 + seed as usize % 5;
        let g = random_dag(seed, n, 0.45).unwrap();
        let (rich, w) = is_rich(&g).unwrap();
        assert_eq!(rich, is_rich_enumerated(&g, budget).unwrap(), "{g}");
        assert_eq!(rich, w.is_none());
    }
}
