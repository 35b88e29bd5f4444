use complexon::cut::{counting_lemma_lower_bound, d_cut, delta_cut, CutMode, DeltaOptions, Certificate, MultiArray};
use complexon::homomorphism::{hom_count, t_hom_complexon, DensityMethod, DEFAULT_BUDGET};
use complexon::rational::{format_rational, parse_rational, rat};
use complexon::sampling::{flag, sample_complex, SampleRecord};
use complexon::simplicial::{boundary, subsets};
use complexon::{Complexon, Hypergraph, Kernel, SimplicialComplex, StepComplexon, WeightSequence};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random complex on `1..=max_n` vertices built from facet bitmasks.
fn complex(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1u32..(1 << n), 0..5).prop_map(move |masks| {
            let facets: Vec<Vec<u32>> = masks
                .into_iter()
                .map(|m| (0..n as u32).filter(|i| m & (1 << i) != 0).map(|i| i + 1).collect())
                .collect();
            SimplicialComplex::from_facets(n, facets).unwrap()
        })
    })
}

fn step(max_m: usize, d: usize) -> impl Strategy<Value = StepComplexon> {
    (1..=max_m, any::<u64>()).prop_map(move |(m, seed)| {
        StepComplexon::random_exact(m, d, 8, &mut ChaCha8Rng::seed_from_u64(seed))
    })
}

fn all_subsets(n: usize) -> Vec<Vec<u32>> {
    let vs: Vec<u32> = (1..=n as u32).collect();
    subsets(&vs, 1).into_iter().map(|s| s.to_vec()).collect()
}

fn coords(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, 2..=max_len)
}

fn alphas() -> WeightSequence {
    WeightSequence::new(vec![rat(1, 2), rat(1, 4), rat(1, 8)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn facets_determine_complex(k in complex(5)) {
        let back = SimplicialComplex::from_facets(k.n(), k.facets()).unwrap();
        prop_assert_eq!(back, k);
    }

    #[test]
    fn closures_round_trip(k in complex(5)) {
        prop_assert_eq!(&k.to_hypergraph().lower_closure(), &k);
        let tops = Hypergraph::from_edges(k.n(), k.facets().into_iter().filter(|f| f.len() >= 2)).unwrap();
        prop_assert_eq!(&tops.upper_closure(), &k);
    }

    #[test]
    fn antifacets_characterize_membership(k in complex(5)) {
        let anti = k.antifacets();
        for s in all_subsets(k.n()) {
            let blocked = anti.iter().any(|a| a.iter().all(|v| s.contains(v)));
            prop_assert_eq!(k.contains(&s), !blocked, "simplex {:?}", s);
        }
        for a in &anti {
            prop_assert!(!k.contains(a));
            prop_assert!(boundary(a).all(|f| k.contains(&f)));
        }
    }

    #[test]
    fn skeleton_is_idempotent_subcomplex(k in complex(5), d in 0usize..4) {
        let s = k.skeleton(d);
        prop_assert!(s.iter().all(|x| k.contains(x) && x.len() <= d + 1));
        prop_assert_eq!(s.skeleton(d), s.clone());
        prop_assert_eq!(s.len(), k.iter().filter(|x| x.len() <= d + 1).count());
    }

    #[test]
    fn complexes_are_downward_closed(k in complex(5)) {
        for s in k.iter().filter(|s| s.len() >= 2) {
            prop_assert!(boundary(s).all(|f| k.contains(&f)));
        }
    }

    #[test]
    fn text_round_trip(k in complex(5)) {
        prop_assert_eq!(SimplicialComplex::from_text(&k.to_text()).unwrap(), k);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn blowups_compose(k in complex(3), a in 1usize..=3, b in 1usize..=3) {
        let twice = k.blowup(a).unwrap().blowup(b).unwrap();
        prop_assert_eq!(twice, k.blowup(a * b).unwrap());
    }

    #[test]
    fn relabel_is_isomorphism(k in complex(4), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<u32> = (1..=k.n() as u32).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let r = k.relabel(&perm).unwrap();
        prop_assert!(r.is_isomorphic(&k).unwrap());
        prop_assert_eq!(r.canonical_form().unwrap(), k.canonical_form().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernels_are_symmetric(w in step(4, 3), x in coords(4), rot in 0usize..4) {
        let mut y = x.clone();
        y.reverse();
        let r = rot % y.len();
        y.rotate_left(r);
        prop_assert_eq!(w.value(&x), w.value(&y));
        let cech = Complexon::Cech(complexon::CechCurveComplexon::bouquet(0.5, 3).unwrap());
        prop_assert_eq!(cech.value(&x), cech.value(&y));
    }

    #[test]
    fn facet_lowers_values_and_keeps_edges(w in step(4, 3), x in coords(4)) {
        let f = w.facet();
        prop_assert!(f.value(&x) <= w.value(&x) + 1e-12);
        let edges = w.with_max_dim(1);
        prop_assert_eq!(edges.facet(), edges);
    }

    #[test]
    fn facet_of_pixel_is_pixel(k in complex(4)) {
        let p = StepComplexon::pixel(&k);
        let f = p.facet();
        prop_assert_eq!(f, p);
    }

    #[test]
    fn projection_stays_between_extremes(w in step(4, 2), labels in prop::collection::vec(0usize..2, 4)) {
        let m = w.m();
        let mut labels = labels[..m].to_vec();
        labels[0] = 0;
        if labels.iter().all(|&l| l == 0) {
            labels.iter_mut().for_each(|l| *l = 0);
        } else if !labels.contains(&1) {
            return Ok(());
        }
        let p = w.project_blocks(&labels).unwrap();
        for d in 1..=2 {
            for cell in cells(m, d) {
                let class: Vec<usize> = cell.iter().map(|&b| labels[b]).collect();
                let same: Vec<f64> = cells(m, d)
                    .filter(|c| {
                        let mut cl: Vec<usize> = c.iter().map(|&b| labels[b]).collect();
                        let mut ref_cl = class.clone();
                        cl.sort();
                        ref_cl.sort();
                        cl == ref_cl
                    })
                    .map(|c| w.value_at(&c))
                    .collect();
                let lo = same.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = same.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let v = p.value_at(&cell);
                prop_assert!(lo - 1e-12 <= v && v <= hi + 1e-12, "{} not in [{}, {}]", v, lo, hi);
            }
        }
    }

    #[test]
    fn block_permutation_preserves_densities(w in step(4, 2), seed in any::<u64>(), f in complex(3)) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..w.m()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let pw = w.apply_block_permutation(&perm).unwrap();
        let method = DensityMethod::ExactStep { budget: DEFAULT_BUDGET };
        let a = t_hom_complexon(&f, &Complexon::Step(w.clone()), method).unwrap();
        let b = t_hom_complexon(&f, &Complexon::Step(pw), method).unwrap();
        prop_assert_eq!(a.exact, b.exact);
    }

    #[test]
    fn refinement_preserves_densities(w in step(3, 2), k in 2usize..=3, f in complex(3)) {
        let method = DensityMethod::ExactStep { budget: DEFAULT_BUDGET };
        let a = t_hom_complexon(&f, &Complexon::Step(w.clone()), method).unwrap();
        let b = t_hom_complexon(&f, &Complexon::Step(w.refine(k).unwrap()), method).unwrap();
        prop_assert_eq!(a.exact, b.exact);
    }
}

/// Sorted cells with repetition, as block indices.
fn cells(m: usize, d: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..=d {
        out = out
            .into_iter()
            .flat_map(|c: Vec<usize>| {
                let lo = c.last().copied().unwrap_or(0);
                (lo..m).map(move |b| {
                    let mut c = c.clone();
                    c.push(b);
                    c
                })
            })
            .collect();
    }
    out.into_iter()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn certificates_reproduce_values(data in prop::collection::vec(-4i64..=4, 12), d in 1usize..=2) {
        let shape = if d == 1 { vec![3, 4] } else { vec![2, 2, 3] };
        let entries = data.iter().map(|&x| rat(x, 4)).collect();
        let a = MultiArray::from_rational(shape, entries).unwrap();
        let exact = a.cut_norm_exact().unwrap();
        let heur = a.cut_norm_heuristic(4, 7);
        prop_assert!(heur.value <= exact.value + 1e-12);
        prop_assert!(exact.value <= a.cut_norm_upper_bound().value + 1e-9);
        for v in [&exact, &heur] {
            if let Certificate::Sets(sets) = &v.certificate {
                let (f, q) = a.evaluate_sets(sets);
                prop_assert!((f.abs() - v.value).abs() < 1e-12);
                if let (Some(q), Some(e)) = (q, &v.exact) {
                    prop_assert_eq!(&num_traits::Signed::abs(&q), e);
                }
            }
        }
    }

    #[test]
    fn cut_distance_triangle(a in step(3, 2), b in step(3, 2), c in step(3, 2)) {
        let al = alphas();
        let ab = d_cut(&a, &b, &al, CutMode::Exact).unwrap().exact.unwrap();
        let bc = d_cut(&b, &c, &al, CutMode::Exact).unwrap().exact.unwrap();
        let ac = d_cut(&a, &c, &al, CutMode::Exact).unwrap().exact.unwrap();
        prop_assert!(ac <= ab + bc);
        prop_assert!(d_cut(&a, &a, &al, CutMode::Exact).unwrap().value == 0.0);
    }

    #[test]
    fn unlabeled_upper_dominates_counting_bound(a in step(3, 2), b in step(3, 2)) {
        let al = alphas();
        let patterns = vec![
            SimplicialComplex::from_facets(3, [vec![1u32, 2], vec![2, 3]]).unwrap(),
            SimplicialComplex::from_facets(3, [vec![1u32, 2, 3]]).unwrap(),
        ];
        let opts = DeltaOptions { mode: CutMode::Exact, patterns: patterns.clone(), ..Default::default() };
        let r = delta_cut(&a, &b, &al, &opts).unwrap();
        let lower = counting_lemma_lower_bound(&a, &b, &patterns, &al).unwrap();
        prop_assert!(r.upper.value + 1e-12 >= lower);
        prop_assert!(r.upper.value + 1e-12 >= r.lower);
    }

    #[test]
    fn hom_count_monotone_in_target(k in complex(4), extra in prop::collection::vec(1u32..=4, 1..=3), f in 1usize..=3) {
        let pat = SimplicialComplex::from_facets(f, [(1..=f as u32).collect::<Vec<_>>()]).unwrap();
        let mut facets = k.facets();
        let mut e: Vec<u32> = extra.into_iter().filter(|&v| v as usize <= k.n()).collect();
        e.sort();
        e.dedup();
        if !e.is_empty() {
            facets.push(e.into());
        }
        let bigger = SimplicialComplex::from_facets(k.n(), facets).unwrap();
        let before = hom_count(&pat, &k, DEFAULT_BUDGET).unwrap();
        let after = hom_count(&pat, &bigger, DEFAULT_BUDGET).unwrap();
        prop_assert!(before <= after);
    }

    #[test]
    fn rationals_round_trip(num in -1000i64..1000, den in 1i64..1000) {
        let q = rat(num, den);
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn samples_are_complexes_and_deterministic(n in 1usize..12, seed in any::<u64>(), w in step(3, 3)) {
        let r = sample_complex(n, &w, seed).unwrap();
        let k = r.complex().unwrap();
        prop_assert_eq!(k.n(), n);
        for s in k.iter().filter(|s| s.len() >= 2) {
            prop_assert!(boundary(s).all(|f| k.contains(&f)));
        }
        prop_assert_eq!(&sample_complex(n, &w, seed).unwrap(), &r);
        prop_assert_eq!(&SampleRecord::from_text(&r.to_text()).unwrap(), &r);
    }
}

#[test]
fn flag_edge_density_matches_parameter() {
    let w = flag(rat(1, 2), 2).unwrap();
    let n = 50;
    let pairs = (n * (n - 1) / 2) as f64;
    let trials = 100;
    let mut total = 0.0;
    for t in 0..trials {
        let r = sample_complex(n, &w, 1000 + t).unwrap();
        total += r.complex().unwrap().count_of_dim(1) as f64 / pairs;
    }
    let mean = total / trials as f64;
    let se = (0.25 / (pairs * trials as f64)).sqrt();
    assert!((mean - 0.5).abs() <= 4.0 * se, "mean {mean}, se {se}");
}
