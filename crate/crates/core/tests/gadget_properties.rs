//! Reduction gadgets: equivalence with satisfiability and structural guarantees.

use fpe_core::classify::{has_vertex_cover_one, is_planar, is_self_dual, PostClass};
use fpe_core::gadgets::{planar3sat_to_system, planar_selfdual_lift, sat_to_star_system, self_dualize, Cnf};
use fpe_core::random::{random_graph, random_table, rng, GraphModel};
use fpe_core::{LocalFunction, System, TruthTable};
use proptest::prelude::*;
use rand::Rng;

fn random_cnf(r: &mut impl Rng, max_vars: usize, max_clauses: usize) -> Cnf {
    let n = r.gen_range(1..=max_vars);
    let m = r.gen_range(1..=max_clauses);
    let clauses = (0..m)
        .map(|_| {
            let len = r.gen_range(1..=3);
            (0..len)
                .map(|_| {
                    let v = r.gen_range(1..=n) as i32;
                    if r.gen() {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    Cnf::new(n, clauses).unwrap()
}

fn has_fixed_point(s: &System) -> bool {
    !s.enumerate_fixed_points(25).unwrap().is_empty()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn self_dualizer_is_self_dual(seed in any::<u64>(), arity in 0usize..=4, n in 1usize..=3) {
        let t = random_table(PostClass::BF, arity, &mut rng(seed));
        let f = LocalFunction::lookup(t.clone());
        let sd = self_dualize(&f, n).unwrap();
        prop_assert!(is_self_dual(&sd));
        prop_assert_eq!(sd.arity(), arity + n + 1);
    }

    #[test]
    fn planar_gadget_matches_satisfiability(seed in any::<u64>()) {
        let h = random_cnf(&mut rng(seed), 6, 4);
        let gadget = match planar3sat_to_system(&h) {
            Ok(g) => g,
            Err(fpe_core::Error::NonPlanar) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let s = &gadget.system;
        prop_assert!(s.graph().max_degree() <= 3);
        prop_assert!(is_planar(s.graph()));
        let fps = s.enumerate_fixed_points(25).unwrap();
        prop_assert_eq!(!fps.is_empty(), h.is_satisfiable().unwrap());
        for c in &fps {
            prop_assert!(gadget.clause_vertex.iter().all(|&v| c.get(v)));
            for cycle in &gadget.copies {
                prop_assert!(cycle.iter().all(|&(_, v)| c.get(v) == c.get(cycle[0].1)));
            }
        }
    }

    #[test]
    fn lift_preserves_existence_and_fixes_edge_vertices_per_component(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5);
        let g = random_graph(GraphModel::Gnp(r.gen_range(0.2..0.8)), n, &mut r).unwrap();
        prop_assume!(is_planar(&g));
        let fs = (0..n).map(|v| LocalFunction::lookup(random_table(PostClass::BF, g.degree(v) + 1, &mut r))).collect();
        let s = System::new(g, fs).unwrap();
        let lift = planar_selfdual_lift(&s).unwrap();
        prop_assert!(lift.functions().iter().all(is_self_dual));
        prop_assert!(is_planar(lift.graph()));
        prop_assert_eq!(has_fixed_point(&lift), has_fixed_point(&s));
        let edges: Vec<(usize, usize)> = s.graph().edges().collect();
        let comps = s.graph().components();
        for c in lift.enumerate_fixed_points(25).unwrap() {
            for comp in &comps {
                let bits: Vec<bool> = edges
                    .iter()
                    .enumerate()
                    .filter(|(_, (u, _))| comp.contains(u))
                    .map(|(e, _)| c.get(n + e))
                    .collect();
                prop_assert!(bits.windows(2).all(|w| w[0] == w[1]));
            }
        }
    }

    #[test]
    fn star_system_matches_satisfiability(seed in any::<u64>()) {
        let mut r = rng(seed);
        let h = random_cnf(&mut r, 4, 6);
        let s = sat_to_star_system(&h).unwrap();
        prop_assert!(s.n() <= 16);
        prop_assert!(has_vertex_cover_one(s.graph()));
        prop_assert_eq!(has_fixed_point(&s), h.is_satisfiable().unwrap());
    }
}

#[test]
fn d_double_negation_is_identity() {
    let leaf = TruthTable::from_fn(2, |x| {
        let d = fpe_core::function::d;
        d(x[0], x[0], d(x[0], x[0], x[1]))
    });
    assert_eq!(leaf, TruthTable::projection(2, 1));
}
