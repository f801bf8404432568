mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use wdpo::algebra::{evaluate_term, Algebra, AlgebraMorphism, Term, Value};
use wdpo::attr::{compose_attr, validate_attr_morphism, AttrGraph, AttrMorphism};
use wdpo::constructions::{
    colimit_of_neutrals, limit_of_neutrals, pullback_of_neutrals, pushout_along_neutral,
};
use wdpo::dot::export_dot;
use wdpo::graph::{compose, Element, GraphMorphism};
use wdpo::hex::{ca_oracle, cell_id, neighbour, parse_cell_id, HexGridSpec};
use wdpo::io::{graph_to_json, parse_graph};
use wdpo::rewriting::{apply_direct, check_parallel_coherent, find_matches};
use wdpo::search::{enumerate_morphisms, is_isomorphic};

use common::*;

fn term_strategy() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["u", "v", "w"]).prop_map(Term::var),
        (0u64..20).prop_map(Term::Lit),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| Term::plus(a, b))
    })
}

fn eval_nat(t: &Term, env: &BTreeMap<&str, u64>) -> u64 {
    match t {
        Term::Var(v) => env[v.as_str()],
        Term::Lit(n) => *n,
        Term::App(_, args) => args.iter().map(|a| eval_nat(a, env)).sum(),
    }
}

/// A random enum-labelled graph of at most 5 elements.
fn small_graph(seed: u64) -> Arc<AttrGraph> {
    let mut gen = Gen::new(seed);
    gen.graph("n", 3, 5, &enum_pool(), 0.5)
        .build(&Algebra::enumeration(["a", "b", "c"]))
}

/// The same graph with every id prefixed.
fn renamed(g: &Arc<AttrGraph>, prefix: &str) -> Arc<AttrGraph> {
    let mut s = Sketch::default();
    let r = |id: &str| format!("{prefix}{id}");
    s.nodes = g.graph().nodes().map(|(n, _)| r(n)).collect();
    s.edges = g
        .graph()
        .edges()
        .map(|(id, e)| (r(id), r(&e.src), r(&e.tgt)))
        .collect();
    for (e, l) in g.labels() {
        let e = match e {
            Element::Node(n) => Element::Node(r(n)),
            Element::Edge(n) => Element::Edge(r(n)),
        };
        s.labels.insert(e, l.clone());
    }
    s.build(g.algebra())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn term_display_round_trips(t in term_strategy()) {
        prop_assert_eq!(Term::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn term_evaluation_is_arithmetic(t in term_strategy(), u in 0u64..50, v in 0u64..50, w in 0u64..50) {
        let src = Algebra::terms(["u", "v", "w"]);
        let map = BTreeMap::from([
            ("u".to_string(), Value::Nat(u)),
            ("v".to_string(), Value::Nat(v)),
            ("w".to_string(), Value::Nat(w)),
        ]);
        let h = AlgebraMorphism::assignment(src, Algebra::nat(), map).unwrap();
        let env = BTreeMap::from([("u", u), ("v", v), ("w", w)]);
        prop_assert_eq!(evaluate_term(&t, &h).unwrap(), Value::Nat(eval_nat(&t, &env)));
    }

    #[test]
    fn graph_morphisms_compose_associatively(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), pick in any::<u64>()) {
        let (g1, g2, g3) = (small_graph(a), small_graph(b), small_graph(c));
        let f = enumerate_morphisms(g1.graph(), g2.graph(), false).unwrap();
        let g = enumerate_morphisms(g2.graph(), g3.graph(), false).unwrap();
        let h = enumerate_morphisms(g3.graph(), g1.graph(), false).unwrap();
        prop_assume!(!f.is_empty() && !g.is_empty() && !h.is_empty());
        let nth = |v: &Vec<GraphMorphism>, k: u64| v[(k as usize) % v.len()].clone();
        let (f, g, h) = (nth(&f, pick), nth(&g, pick / 7), nth(&h, pick / 49));
        let left = compose(&h, &compose(&g, &f).unwrap()).unwrap();
        let right = compose(&compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(left.node_map(), right.node_map());
        prop_assert_eq!(left.edge_map(), right.edge_map());
        let id = GraphMorphism::identity(g1.graph().clone());
        let unit = compose(&f, &id).unwrap();
        prop_assert_eq!(unit.node_map(), f.node_map());
    }

    #[test]
    fn renaming_ids_gives_an_isomorphic_graph(seed in any::<u64>()) {
        let g = small_graph(seed);
        let h = renamed(&g, "z");
        prop_assert!(is_isomorphic(g.graph(), h.graph()).is_some());
        prop_assert!(iso(&g, &h));
    }

    #[test]
    fn lax_condition_is_label_inclusion(seed in any::<u64>()) {
        let mut gen = Gen::new(seed);
        let alg = Algebra::enumeration(["a", "b", "c"]);
        let s = gen.graph("n", 3, 5, &enum_pool(), 0.5);
        let big = s.build(&alg);
        let mut shrunk = BTreeMap::new();
        for e in s.elements() {
            let full: Vec<Value> = s.label(&e).into_iter().collect();
            shrunk.insert(e, gen.subset(&full, 0.8));
        }
        let same = shrunk.iter().all(|(e, l)| *l == s.label(e));
        let small = Arc::new(AttrGraph::new(big.graph().clone(), alg.clone(), shrunk).unwrap());
        let id = GraphMorphism::identity(big.graph().clone());
        let up = AttrMorphism::from_parts(small.clone(), big.clone(), id.clone(), AlgebraMorphism::identity(alg.clone()));
        let down = AttrMorphism::from_parts(big, small, id, AlgebraMorphism::identity(alg));
        prop_assert!(validate_attr_morphism(&up).is_valid());
        prop_assert_eq!(validate_attr_morphism(&down).is_valid(), same);
    }

    #[test]
    fn pushout_and_pullback_squares_commute(seed in any::<u64>()) {
        let mut gen = Gen::new(seed);
        let alg = Algebra::enumeration(["a", "b", "c"]);
        let f = gen.graph("f", 2, 3, &enum_pool(), 0.3);
        let g = gen.sup(&f, "g", 5, &enum_pool(), 0.3);
        let h = gen.sup(&f, "h", 5, &enum_pool(), 0.3);
        let (fg, gg, hg) = (f.build(&alg), g.build(&alg), h.build(&alg));
        let (a, b) = (inclusion(&fg, &gg), inclusion(&fg, &hg));
        let po = pushout_along_neutral(&a, &b).unwrap();
        prop_assert_eq!(
            compose_attr(&po.from_neutral_side, &a).unwrap(),
            compose_attr(&po.from_other_side, &b).unwrap()
        );
        prop_assert!(po.from_neutral_side.is_neutral() && po.from_other_side.is_neutral());
        // Pull the cocone back: the apex contains a copy of F.
        let pb = pullback_of_neutrals(&po.from_neutral_side, &po.from_other_side).unwrap();
        prop_assert_eq!(
            compose_attr(&po.from_neutral_side, &pb.to_first).unwrap(),
            compose_attr(&po.from_other_side, &pb.to_second).unwrap()
        );
        prop_assert!(pb.apex.element_count() >= fg.element_count());
    }

    #[test]
    fn one_leg_limits_and_colimits_are_trivial(seed in any::<u64>()) {
        let mut gen = Gen::new(seed);
        let alg = Algebra::enumeration(["a", "b", "c"]);
        let f = gen.graph("f", 2, 3, &enum_pool(), 0.3);
        let g = gen.sup(&f, "g", 5, &enum_pool(), 0.3);
        let (fg, gg) = (f.build(&alg), g.build(&alg));
        let leg = inclusion(&fg, &gg);
        let lim = limit_of_neutrals(std::slice::from_ref(&leg)).unwrap();
        prop_assert!(iso(&lim.apex, &fg));
        let colim = colimit_of_neutrals(std::slice::from_ref(&leg)).unwrap();
        prop_assert!(iso(&colim.apex, &gg));
    }

    #[test]
    fn matches_are_injective_lax_morphisms(seed in any::<u64>()) {
        let mut gen = Gen::new(seed);
        let fl = if seed % 2 == 0 { Flavour::Enum } else { Flavour::Terms };
        let rule = random_rule(&mut gen, "rho", &fl);
        let host = random_host(&mut gen, &rule, &fl);
        let ms = find_matches(&rule, &host).unwrap();
        prop_assert!(!ms.is_empty());
        for m in &ms {
            prop_assert!(m.sigma().is_mono());
            prop_assert!(validate_attr_morphism(m.morphism()).is_valid());
        }
        let count = find_matches(&rule, &renamed(&host, "z")).unwrap().len();
        prop_assert_eq!(count, ms.len());
    }

    #[test]
    fn direct_transformations_are_self_coherent(seed in any::<u64>()) {
        let mut gen = Gen::new(seed);
        let fl = if seed % 2 == 0 { Flavour::Enum } else { Flavour::Terms };
        let rule = random_rule(&mut gen, "rho", &fl);
        let host = random_host(&mut gen, &rule, &fl);
        for m in find_matches(&rule, &host).unwrap() {
            if let Ok(t) = apply_direct(&m) {
                prop_assert!(t.context_to_host.is_neutral() && t.context_to_result.is_neutral());
                prop_assert!(check_parallel_coherent(&t, &t).unwrap().is_some());
            }
        }
    }

    #[test]
    fn graph_json_round_trips(seed in any::<u64>()) {
        let g = small_graph(seed);
        let back = parse_graph(&graph_to_json(&g), "mem").unwrap();
        prop_assert_eq!(back.as_ref(), g.as_ref());
    }

    #[test]
    fn dot_export_lists_every_element(seed in any::<u64>()) {
        let g = small_graph(seed);
        let dot = export_dot(&g);
        prop_assert_eq!(&dot, &export_dot(&g));
        prop_assert_eq!(dot.matches(" -> ").count(), g.graph().edge_count());
        for (n, _) in g.graph().nodes() {
            let quoted = format!("\"{}\" [label=", n);
            prop_assert!(dot.contains(&quoted));
        }
    }

    #[test]
    fn cell_ids_round_trip(q in -50i32..50, r in -50i32..50) {
        prop_assert_eq!(parse_cell_id(&cell_id((q, r))), Some((q, r)));
    }

    #[test]
    fn oracle_commutes_with_rotation(q in -3i32..3, r in -3i32..3, gens in 0u32..4) {
        // Rotating by 60 degrees in axial coordinates: (q, r) -> (-r, q + r).
        let rot = |(q, r): (i32, i32)| (-r, q + r);
        let spec = HexGridSpec { radius: 10, seeds: vec![(q, r)] };
        let turned = HexGridSpec { radius: 10, seeds: vec![rot((q, r))] };
        let a = ca_oracle(&spec, gens);
        let b = ca_oracle(&turned, gens);
        for (x, y) in a.iter().zip(&b) {
            let x: std::collections::BTreeSet<_> = x.iter().map(|&c| rot(c)).collect();
            prop_assert_eq!(&x, y);
        }
        // Every birth has exactly one live neighbour the generation before.
        for w in a.windows(2) {
            for &c in w[1].difference(&w[0]) {
                prop_assert_eq!((0..6).filter(|&k| w[0].contains(&neighbour(c, k))).count(), 1);
            }
        }
    }
}
