use std::collections::BTreeSet;

use leavitt_core::verify::{certify_smith_form, naive_invariant_factors, predict_gamma, GammaVerdict, Witness};
use leavitt_core::{
    classify, coker_ker, is_complete_subquiver, k_groups, parse_quiver, path_counts, reduction_chain,
    smith_normal_form, tilde_quiver, AbGroup, BigInt, Edge, FgAbGroup, IntMatrix, KReport, KTable, Quiver,
};
use num_integer::Integer;
use proptest::prelude::*;
use proptest::test_runner::FileFailurePersistence;

fn quiver_strategy(max_vertices: usize) -> impl Strategy<Value = Quiver> {
    quiver_strategy_with(max_vertices, 2)
}

/// Random quivers, mostly sparse, with up to `max_mult` parallel arrows.
fn quiver_strategy_with(max_vertices: usize, max_mult: usize) -> impl Strategy<Value = Quiver> {
    (0..=max_vertices)
        .prop_flat_map(move |n| {
            let cell = prop_oneof![6 => Just(0usize), 4 => 1..=max_mult];
            prop::collection::vec(prop::collection::vec(cell, n), n)
        })
        .prop_map(|rows| Quiver::from_adjacency(&rows))
}

/// Every simple directed cycle, as a vertex sequence starting at its
/// smallest vertex.
fn simple_cycles(q: &Quiver) -> Vec<Vec<usize>> {
    fn extend(q: &Quiver, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let (start, last) = (path[0], *path.last().unwrap());
        for t in 0..q.vertex_count() {
            if q.multiplicity(last, t) == 0 || t < start {
                continue;
            }
            if t == start {
                out.push(path.clone());
            } else if !path.contains(&t) {
                path.push(t);
                extend(q, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in 0..q.vertex_count() {
        extend(q, &mut vec![v], &mut out);
    }
    out
}

fn matrix_strategy(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

fn edge_set(q: &Quiver) -> Vec<(String, String)> {
    let mut v: Vec<_> = q.edge_multiset().into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    v.sort();
    v
}

fn vertex_set(q: &Quiver) -> BTreeSet<String> {
    q.names().iter().cloned().collect()
}

/// Vertices at the end of some path of length `vertex_count`; such a path
/// repeats a vertex, so these are exactly the vertices on or after a cycle.
fn long_path_ends(q: &Quiver) -> BTreeSet<String> {
    let n = q.vertex_count();
    let mut reach: Vec<bool> = vec![true; n];
    for _ in 0..n {
        let mut next = vec![false; n];
        for e in q.edges() {
            if reach[e.source] {
                next[e.target] = true;
            }
        }
        reach = next;
    }
    (0..n).filter(|&v| reach[v]).map(|v| q.name(v).to_string()).collect()
}

fn groups(r: &KReport) -> Vec<(AbGroup, AbGroup, Option<AbGroup>)> {
    r.degrees.iter().map(|d| (d.coker.clone(), d.ker.clone(), d.total.clone())).collect()
}

/// All vectors of `(Z/m)^len`.
fn vectors(m: i64, len: usize) -> Vec<Vec<i64>> {
    (0..len).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter().flat_map(|v| (0..m).map(move |x| [v.clone(), vec![x]].concat())).collect()
    })
}

fn apply(a: &IntMatrix, x: &[i64], m: i64) -> Vec<i64> {
    (0..a.rows())
        .map(|i| {
            let s: i64 = (0..a.cols()).map(|j| i64::try_from(&a[(i, j)]).unwrap() * x[j]).sum();
            s.rem_euclid(m)
        })
        .collect()
}

/// `|G[d]|` for each `d | m`, for the cokernel and kernel of `a` on `(Z/m)^c`.
/// These counts determine a finite abelian group of exponent dividing `m`.
fn brute_torsion_profile(a: &IntMatrix, m: i64) -> (Vec<usize>, Vec<usize>) {
    let image: BTreeSet<Vec<i64>> = vectors(m, a.cols()).iter().map(|x| apply(a, x, m)).collect();
    let kernel: Vec<Vec<i64>> =
        vectors(m, a.cols()).into_iter().filter(|x| apply(a, x, m).iter().all(|&y| y == 0)).collect();
    let divisors: Vec<i64> = (1..=m).filter(|d| m % d == 0).collect();
    let coker = divisors
        .iter()
        .map(|&d| {
            let lifts = vectors(m, a.rows())
                .iter()
                .filter(|x| image.contains(&x.iter().map(|v| (v * d) % m).collect::<Vec<_>>()))
                .count();
            lifts / image.len()
        })
        .collect();
    let ker = divisors.iter().map(|&d| kernel.iter().filter(|x| x.iter().all(|v| (v * d) % m == 0)).count()).collect();
    (coker, ker)
}

fn torsion_profile(g: &FgAbGroup, m: i64) -> Vec<usize> {
    assert_eq!(g.rank(), 0);
    (1..=m)
        .filter(|d| m % d == 0)
        .map(|d| g.torsion().iter().map(|t| i64::try_from(t).unwrap().gcd(&d) as usize).product())
        .collect()
}

/// `|G / mG|` from the invariant factors.
fn mod_m_order(g: &FgAbGroup, m: i64) -> usize {
    let t: usize = g.torsion().iter().map(|t| i64::try_from(t).unwrap().gcd(&m) as usize).product();
    (m as usize).pow(g.rank() as u32) * t
}

fn fg(g: &AbGroup) -> FgAbGroup {
    g.as_fg().expect("finitely generated").clone()
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 128,
        failure_persistence: Some(Box::new(FileFailurePersistence::WithSource("regressions"))),
        ..ProptestConfig::default()
    })]

    #[test]
    fn opposite_is_an_involution(q in quiver_strategy(5)) {
        let back = q.opposite().opposite();
        prop_assert_eq!(back.names(), q.names());
        prop_assert_eq!(edge_set(&back), edge_set(&q));
        prop_assert_eq!(q.opposite().sink_count(), classify(&q).sources.len());
    }

    #[test]
    fn cycle_closure_matches_long_paths(q in quiver_strategy(5)) {
        let t = tilde_quiver(&q);
        prop_assert_eq!(vertex_set(&t), long_path_ends(&q));
        prop_assert!(is_complete_subquiver(&t, &q).unwrap());
        // No sources: every vertex of the closure receives an arrow inside it.
        prop_assert!(classify(&t).sources.is_empty());
        let c: BTreeSet<String> = classify(&q).on_or_after_cycle.into_iter().collect();
        prop_assert_eq!(c, vertex_set(&t));
    }

    #[test]
    fn cycles_lie_in_the_closure(q in quiver_strategy(8)) {
        let t = tilde_quiver(&q);
        let kept = edge_set(&t);
        for cycle in simple_cycles(&q) {
            for (i, &v) in cycle.iter().enumerate() {
                let w = cycle[(i + 1) % cycle.len()];
                prop_assert!(t.index_of(q.name(v)).is_some());
                let arrow = (q.name(v).to_string(), q.name(w).to_string());
                prop_assert!(kept.binary_search(&arrow).is_ok());
            }
        }
    }

    #[test]
    fn reduction_chain_stages(q in quiver_strategy(6)) {
        let chain = reduction_chain(&q);
        let last = chain.stages.last().unwrap();
        prop_assert_eq!(vertex_set(last), vertex_set(&q));
        prop_assert_eq!(edge_set(last), edge_set(&q));
        prop_assert_eq!(chain.stages.len(), chain.added_vertex.len() + 1);
        for (w, added) in chain.stages.windows(2).zip(&chain.added_vertex) {
            prop_assert!(is_complete_subquiver(&w[0], &w[1]).unwrap());
            // The added vertex emits arrows, all landing in the previous stage.
            let v = q.index_of(added).unwrap();
            prop_assert!(q.out_degree(v) > 0);
            prop_assert!(q.edges().iter().filter(|e| e.source == v).all(|e| w[0].index_of(q.name(e.target)).is_some()));
            prop_assert_eq!(w[0].vertex_count() + 1, w[1].vertex_count());
            prop_assert_eq!(w[0].sink_count(), q.sink_count());
        }
        let base = chain.base();
        let sinks = (0..q.vertex_count()).filter(|&v| q.is_sink(v)).map(|v| q.name(v).to_string());
        let expected: BTreeSet<String> = long_path_ends(&q).into_iter().chain(sinks).collect();
        prop_assert_eq!(vertex_set(base), expected);
        let outside = (0..q.vertex_count()).filter(|&v| q.is_sink(v) && !long_path_ends(&q).contains(q.name(v))).count();
        prop_assert_eq!(chain.ell, outside);
    }

    #[test]
    fn path_counts_match_vertex_sequences(q in quiver_strategy_with(6, 3), n in 0usize..=6) {
        let table = path_counts(&q, n);
        // Sum over all vertex sequences of length n + 1 of the product of multiplicities.
        let k = q.vertex_count();
        let mut brute = vec![0u64; k];
        let mut seq = vec![0usize; n + 1];
        if k > 0 {
            loop {
                let weight: u64 = seq.windows(2).map(|w| q.multiplicity(w[0], w[1]) as u64).product();
                brute[seq[n]] += weight;
                let Some(i) = (0..=n).rev().find(|&i| seq[i] + 1 < k) else { break };
                seq[i] += 1;
                seq[i + 1..].iter_mut().for_each(|x| *x = 0);
            }
        }
        for (v, &b) in brute.iter().enumerate() {
            prop_assert_eq!(table.count(n, v).clone(), b.into());
        }
    }

    #[test]
    fn smith_factors_are_transpose_invariant(a in matrix_strategy(5, 9)) {
        prop_assert_eq!(smith_normal_form(&a).factors, smith_normal_form(&a.transpose()).factors);
    }

    #[test]
    fn smith_agrees_with_naive_oracle(a in matrix_strategy(5, 20)) {
        prop_assert_eq!(Some(smith_normal_form(&a).factors), naive_invariant_factors(&a));
    }

    #[test]
    fn coker_ker_matches_enumeration(a in matrix_strategy(3, 3)) {
        for m in [2i64, 4, 6] {
            let (coker, ker) = coker_ker(&a, &FgAbGroup::cyclic(m).into());
            let (bc, bk) = brute_torsion_profile(&a, m);
            prop_assert_eq!(torsion_profile(&fg(&coker), m), bc, "coker over Z/{}", m);
            prop_assert_eq!(torsion_profile(&fg(&ker), m), bk, "ker over Z/{}", m);
        }
        // Over Z: the cokernel reduced mod m is the cokernel mod m.
        let (coker_z, ker_z) = coker_ker(&a, &FgAbGroup::free(1).into());
        for m in [2i64, 3, 4, 5, 8, 9] {
            let image: BTreeSet<Vec<i64>> = vectors(m, a.cols()).iter().map(|x| apply(&a, x, m)).collect();
            prop_assert_eq!(mod_m_order(&fg(&coker_z), m), (m as usize).pow(a.rows() as u32) / image.len());
        }
        prop_assert!(fg(&ker_z).is_free());
        // Mixed coefficients split as a direct sum.
        let mixed: AbGroup = FgAbGroup::free(2).direct_sum(&FgAbGroup::cyclic(2)).into();
        let (c2, k2) = coker_ker(&a, &FgAbGroup::cyclic(2).into());
        let (cm, km) = coker_ker(&a, &mixed);
        prop_assert_eq!(cm, coker_z.power(2).direct_sum(&c2));
        prop_assert_eq!(km, ker_z.power(2).direct_sum(&k2));
    }

    #[test]
    fn euler_characteristic(a in matrix_strategy(5, 5)) {
        let (coker, ker) = coker_ker(&a, &FgAbGroup::free(1).into());
        prop_assert_eq!(fg(&coker).rank() as i64 - fg(&ker).rank() as i64, a.rows() as i64 - a.cols() as i64);
    }

    #[test]
    fn k_and_kh_agree_on_regular_coefficients(q in quiver_strategy(5)) {
        let k = KTable::parse("mode: K\nflags: regular-supercoherent\n0: Z\n1: Z/6 + Z\n2: Z/4\ndefault-: 0\n").unwrap();
        let kh = KTable::parse("mode: KH\nflags: regular-supercoherent\n0: Z\n1: Z/6 + Z\n2: Z/4\ndefault-: 0\n").unwrap();
        let a = k_groups(&q, &k, -1..=2).unwrap();
        let b = k_groups(&q, &kh, -1..=2).unwrap();
        prop_assert_eq!(groups(&a), groups(&b));
        prop_assert_eq!(&a.matrix, &b.matrix);
        let statuses = |r: &KReport| r.degrees.iter().map(|d| d.split_status).collect::<Vec<_>>();
        prop_assert_eq!(statuses(&a), statuses(&b));
    }

    #[test]
    fn relabeling_changes_nothing(q in quiver_strategy(5), seed in any::<u64>()) {
        let n = q.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        // Fisher-Yates driven by the seed keeps the case shrinkable.
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let names: Vec<String> = perm.iter().map(|&old| q.name(old).to_string()).collect();
        let mut new_index = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            new_index[old] = new;
        }
        let edges: Vec<Edge> = q.edges().iter().map(|e| Edge { source: new_index[e.source], target: new_index[e.target] }).collect();
        let p = Quiver::new(names, edges);
        let table = KTable::parse("mode: K\nflags: pid\n0: Z\n1: Z/6\n2: Z/4 + Z/2\ndefault-: 0\n").unwrap();
        prop_assert_eq!(groups(&k_groups(&q, &table, -1..=2).unwrap()), groups(&k_groups(&p, &table, -1..=2).unwrap()));
    }

    #[test]
    fn gamma_iso_always_cites(q in quiver_strategy(5)) {
        for name in ["complex", "complex_top", "stable_cstar", "f5", "integers"] {
            let p = predict_gamma(&q, &leavitt_core::samples::load(name).unwrap());
            if (-3..=3).any(|n| p.verdict(n) == GammaVerdict::Iso) {
                let last = p.hypothesis_trail.last().unwrap();
                prop_assert!(last.starts_with("Thm. "), "{}", last);
                let tag = format!("[{}]", last);
                prop_assert!(p.to_string().ends_with(&tag));
            }
        }
    }

    #[test]
    fn witnesses_round_trip_through_json(a in matrix_strategy(4, 9), bump in 1i64..5) {
        let mut form = smith_normal_form(&a);
        prop_assume!(!form.factors.is_empty());
        form.factors[0] += BigInt::from(bump);
        form.d[(0, 0)] += BigInt::from(bump);
        let outcome = certify_smith_form(&a, &form);
        prop_assert!(!outcome.passed);
        let w = outcome.witness.unwrap();
        let text = serde_json::to_string(&w).unwrap();
        let back: Witness = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &w);
        prop_assert_eq!(back.matrices["input"].to_matrix().unwrap(), a);
    }

    #[test]
    fn quiver_text_round_trip(q in quiver_strategy(5)) {
        let back = parse_quiver(&q.to_file_text()).unwrap();
        prop_assert_eq!(back.names(), q.names());
        prop_assert_eq!(edge_set(&back), edge_set(&q));
        prop_assert_eq!(back.vertex_order(), q.vertex_order());
    }

    #[test]
    fn group_text_round_trip(rank in 0usize..3, orders in prop::collection::vec(2u64..40, 0..4), sym in 0usize..3) {
        let fg = FgAbGroup::free(rank).direct_sum(&FgAbGroup::from_cyclic_orders(orders.into_iter().map(BigInt::from)));
        let g = AbGroup::from(fg).direct_sum(&AbGroup::symbol("k*").power(sym));
        let text = g.to_string();
        let back: AbGroup = text.parse().unwrap();
        prop_assert_eq!(&back, &g);
        let json = serde_json::to_value(&g).unwrap();
        prop_assert_eq!(json["text"].as_str().unwrap(), text);
    }

    #[test]
    fn report_text_round_trip(q in quiver_strategy(4)) {
        let table = leavitt_core::samples::load("integers").unwrap();
        let r = k_groups(&q, &table, 0..=3).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        for (d, j) in r.degrees.iter().zip(json["degrees"].as_array().unwrap()) {
            let coker: AbGroup = j["coker"]["text"].as_str().unwrap().parse().unwrap();
            prop_assert_eq!(&coker, &d.coker);
            let ker: AbGroup = j["ker"]["text"].as_str().unwrap().parse().unwrap();
            prop_assert_eq!(&ker, &d.ker);
        }
    }
}

#[test]
fn ktable_text_round_trip() {
    for (name, _) in leavitt_core::samples::ALL {
        let t = leavitt_core::samples::load(name).unwrap();
        assert_eq!(KTable::parse(&t.to_text()).unwrap(), t, "{name}");
    }
}
