//! Local/global fixed-point laws and representation agreement.

use fpe_core::classify::{Mode, PostClass};
use fpe_core::function::row_args;
use fpe_core::random::{random_function, random_graph, random_mixed_system, random_system, rng, GraphModel};
use fpe_core::{Config, Schedule, System, VertexSet};
use proptest::prelude::*;
use rand::Rng;

fn mixed_system(seed: u64, max_n: usize) -> System {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_n);
    let p = r.gen_range(0.1..0.6);
    let g = random_graph(GraphModel::Gnp(p), n, &mut r).unwrap();
    random_mixed_system(g, &mut r)
}

fn random_config(n: usize, r: &mut impl Rng) -> Config {
    Config((0..n).map(|_| r.gen()).collect())
}

fn random_set(n: usize, r: &mut impl Rng) -> VertexSet {
    VertexSet::from_vertices(n, (0..n).filter(|_| r.gen_bool(0.4))).unwrap()
}

fn random_schedule(n: usize, r: &mut impl Rng) -> Schedule {
    let len = r.gen_range(0..8);
    Schedule::from_sets((0..len).map(|_| random_set(n, r)).collect())
}

proptest! {
    #[test]
    fn local_fixed_points_are_closed_under_union(seed in any::<u64>()) {
        let s = mixed_system(seed, 10);
        let mut r = rng(seed ^ 1);
        for _ in 0..20 {
            let c = random_config(s.n(), &mut r);
            let (a, b) = (random_set(s.n(), &mut r), random_set(s.n(), &mut r));
            if s.is_local_fixed_point(&a, &c) && s.is_local_fixed_point(&b, &c) {
                prop_assert!(s.is_local_fixed_point(&a.union(&b), &c));
            }
        }
    }

    #[test]
    fn local_fixed_points_are_closed_under_subsets(seed in any::<u64>()) {
        let s = mixed_system(seed, 8);
        let mut r = rng(seed ^ 2);
        let n = s.n();
        let c = random_config(n, &mut r);
        let members: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.5)).take(4).collect();
        let set = VertexSet::from_vertices(n, members.iter().copied()).unwrap();
        let all_subsets = (0..1usize << members.len()).all(|mask| {
            let sub = VertexSet::from_vertices(n, members.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v)).unwrap();
            s.is_local_fixed_point(&sub, &c)
        });
        prop_assert_eq!(s.is_local_fixed_point(&set, &c), all_subsets);
    }

    #[test]
    fn fixed_points_survive_every_schedule(seed in any::<u64>()) {
        let s = mixed_system(seed, 8);
        let mut r = rng(seed ^ 3);
        let fixed = s.enumerate_fixed_points(25).unwrap();
        for c in &fixed {
            for _ in 0..100 {
                let sched = random_schedule(s.n(), &mut r);
                prop_assert_eq!(&s.run_schedule(&sched, c), c);
            }
        }
        // a configuration moved by the synchronous step is not fixed, and that step is a counterexample
        for idx in 0..(1u64 << s.n()) {
            let c = Config::from_index(s.n(), idx);
            let moved = s.run_schedule(&Schedule::synchronous(s.n(), 1), &c) != c;
            prop_assert_eq!(moved, !fixed.contains(&c));
        }
    }

    #[test]
    fn self_dual_systems_mirror_local_fixed_points(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=8);
        let g = random_graph(GraphModel::Gnp(0.4), n, &mut r).unwrap();
        let mode = [Mode::Lookup, Mode::Formula, Mode::Circuit][r.gen_range(0..3)];
        let s = random_system(g, PostClass::D, mode, &mut r);
        for _ in 0..20 {
            let c = random_config(n, &mut r);
            let u = random_set(n, &mut r);
            prop_assert_eq!(s.is_local_fixed_point(&u, &c), s.is_local_fixed_point(&u, &c.complement()));
        }
    }

    #[test]
    fn lookup_conversion_agrees_with_evaluation(seed in any::<u64>(), arity in 1usize..=8) {
        let mut r = rng(seed);
        let class = PostClass::ALL[r.gen_range(0..6)];
        let mode = if r.gen() { Mode::Formula } else { Mode::Circuit };
        let f = random_function(class, arity, mode, &mut r);
        let t = f.to_lookup();
        for row in 0..1usize << arity {
            let args = row_args(arity, row);
            prop_assert_eq!(f.eval(&args).unwrap(), t.eval(&args).unwrap());
        }
    }
}

#[test]
fn brute_force_output_is_lexicographic_and_complete() {
    for seed in 0..30 {
        let s = mixed_system(seed, 10);
        let fps = s.enumerate_fixed_points(25).unwrap();
        assert!(fps.windows(2).all(|w| w[0] < w[1]));
        let expected: Vec<Config> =
            (0..1u64 << s.n()).map(|i| Config::from_index(s.n(), i)).filter(|c| s.is_fixed_point(c)).collect();
        assert_eq!(fps, expected);
        assert_eq!(s.find_fixed_point(25).unwrap(), expected.first().cloned());
    }
}
