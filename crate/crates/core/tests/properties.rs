//! Property suite: structural invariants checked on randomized instances.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use lortho::certificates::{
    hermite_feasible, hermite_rank, lo_certificate, slo_certificate, verify_certificate,
};
use lortho::criteria::{
    is_left_orthogonal, is_strongly_left_orthogonal, tree_of_lines_verdict, LoFailure,
};
use lortho::hodge::{inertia, Inertia};
use lortho::models::random_tree;
use lortho::{Component, ComponentId, CurveConfiguration, Divisor};

/// Raw instance data: components as `(r, genus)`, incidence counts per index
/// pair, multiplicities.
#[derive(Debug, Clone)]
struct RawInstance {
    components: Vec<(i64, u64)>,
    edges: Vec<(usize, usize, u32)>,
    mults: Vec<u64>,
}

fn arb_instance() -> impl Strategy<Value = RawInstance> {
    (1usize..=5)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .collect();
            let n_pairs = pairs.len();
            (
                prop::collection::vec(
                    (-5i64..=5, prop_oneof![4 => Just(0u64), 1 => Just(1u64)]),
                    n,
                ),
                prop::collection::vec(0u32..=2, n_pairs),
                prop::collection::vec(0u64..=3, n),
                Just(pairs),
            )
        })
        .prop_map(|(components, counts, mut mults, pairs)| {
            if mults.iter().all(|&k| k == 0) {
                mults[0] = 1;
            }
            let edges = pairs
                .into_iter()
                .zip(counts)
                .filter(|&(_, c)| c > 0)
                .map(|((i, j), c)| (i, j, c))
                .collect();
            RawInstance {
                components,
                edges,
                mults,
            }
        })
}

fn build(raw: &RawInstance, label: impl Fn(usize) -> String) -> (CurveConfiguration, Divisor) {
    let components: Vec<Component> = raw
        .components
        .iter()
        .enumerate()
        .map(|(i, &(r, g))| Component::new(label(i), r, g))
        .collect();
    let mut incidences = Vec::new();
    for &(i, j, c) in &raw.edges {
        for _ in 0..c {
            incidences.push((ComponentId::new(label(i)), ComponentId::new(label(j))));
        }
    }
    let cfg = CurveConfiguration::new(components, &incidences).unwrap();
    let mut map = BTreeMap::new();
    for (i, &k) in raw.mults.iter().enumerate() {
        map.insert(ComponentId::new(label(i)), k);
    }
    let d = Divisor::from_map(&cfg, &map).unwrap();
    (cfg, d)
}

/// Independent connectivity check used to validate witnesses.
fn support_is_connected(cfg: &CurveConfiguration, d: &Divisor) -> bool {
    let support = d.support();
    if support.is_empty() {
        return false;
    }
    let mut seen = vec![false; cfg.len()];
    let mut stack = vec![support[0]];
    seen[support[0]] = true;
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &(v, _) in cfg.neighbors(u) {
            if d.multiplicity(v) > 0 && !seen[v] {
                seen[v] = true;
                reached += 1;
                stack.push(v);
            }
        }
    }
    reached == support.len()
}

/// Independent tree-of-lines test, written against the public accessors
/// only, for cross-checking verdicts.
fn support_is_tree_of_lines(cfg: &CurveConfiguration, d: &Divisor) -> bool {
    let support = d.support();
    if support.iter().any(|&i| cfg.component(i).genus != 0) {
        return false;
    }
    let mut edge_count = 0usize;
    for ((i, j), c) in cfg.incidences() {
        if d.multiplicity(i) > 0 && d.multiplicity(j) > 0 {
            if c > 1 {
                return false;
            }
            edge_count += 1;
        }
    }
    support_is_connected(cfg, d) && edge_count + 1 == support.len()
}

proptest! {
    #[test]
    fn pairing_is_symmetric_and_bilinear(raw in arb_instance(), other in prop::collection::vec(0u64..=3, 5), third in prop::collection::vec(0u64..=3, 5)) {
        let (cfg, d1) = build(&raw, |i| format!("E{}", i + 1));
        let n = cfg.len();
        let d2 = Divisor::from_multiplicities(&cfg, other[..n].to_vec()).unwrap();
        let d3 = Divisor::from_multiplicities(&cfg, third[..n].to_vec()).unwrap();
        prop_assert_eq!(cfg.pairing(&d1, &d2).unwrap(), cfg.pairing(&d2, &d1).unwrap());
        let lhs = cfg.pairing(&d1.plus(&d2), &d3).unwrap();
        let rhs = cfg.pairing(&d1, &d3).unwrap() + cfg.pairing(&d2, &d3).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn genus_parity_holds(raw in arb_instance()) {
        let (cfg, d) = build(&raw, |i| format!("E{}", i + 1));
        let parity = cfg.pairing(&d, &d).unwrap() + cfg.canonical_pairing(&d).unwrap();
        prop_assert!((parity % 2u32).is_zero());
        // arithmetic_genus asserts the same internally; it must not panic.
        let _ = cfg.arithmetic_genus(&d).unwrap();
    }

    #[test]
    fn closed_form_matches_riemann_roch(raw in arb_instance()) {
        let (cfg, d) = build(&raw, |i| format!("E{}", i + 1));
        let simple_support = d.support().iter().all(|&i| cfg.component(i).genus == 0)
            && cfg.incidences().all(|((i, j), c)| {
                c <= 1 || d.multiplicity(i) == 0 || d.multiplicity(j) == 0
            });
        if simple_support {
            let rr = cfg.arithmetic_genus(&d).unwrap();
            prop_assert_eq!(cfg.genus_closed_form(&d).unwrap(), rr.clone());
            prop_assert_eq!(cfg.magic_formula_holds(&d).unwrap(), rr.is_zero());
        }
    }

    #[test]
    fn verdict_booleans_survive_relabeling(raw in arb_instance(), shuffle_key in prop::collection::vec(any::<u64>(), 5)) {
        let (cfg, d) = build(&raw, |i| format!("E{}", i + 1));
        // Permutation via argsort of the shuffle key; renamed ids reorder
        // arbitrarily relative to the originals.
        let n = cfg.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (shuffle_key[i], i));
        let mut rank = vec![0usize; n];
        for (pos, &i) in order.iter().enumerate() {
            rank[i] = pos;
        }
        let (renamed_cfg, renamed_d) = build(&raw, |i| format!("N{:02}", rank[i]));

        prop_assert_eq!(
            cfg.arithmetic_genus(&d).unwrap(),
            renamed_cfg.arithmetic_genus(&renamed_d).unwrap()
        );
        let v1 = tree_of_lines_verdict(&cfg, &d).unwrap();
        let v2 = tree_of_lines_verdict(&renamed_cfg, &renamed_d).unwrap();
        prop_assert_eq!(v1.is_tree_of_lines(), v2.is_tree_of_lines());
        let lo1 = is_left_orthogonal(&cfg, &d).unwrap();
        let lo2 = is_left_orthogonal(&renamed_cfg, &renamed_d).unwrap();
        prop_assert_eq!(lo1.is_lo(), lo2.is_lo());
        let slo1 = is_strongly_left_orthogonal(&cfg, &d).unwrap();
        let slo2 = is_strongly_left_orthogonal(&renamed_cfg, &renamed_d).unwrap();
        prop_assert_eq!(slo1.is_slo(), slo2.is_slo());
        prop_assert_eq!(
            lortho::hodge::hodge_admissible(&cfg),
            lortho::hodge::hodge_admissible(&renamed_cfg)
        );
    }

    #[test]
    fn witnesses_map_along_order_preserving_relabeling(raw in arb_instance()) {
        // Prefixing every id preserves lexicographic order, so the canonical
        // enumeration order and hence the exact witness must carry over.
        let (cfg, d) = build(&raw, |i| format!("E{}", i + 1));
        let (pcfg, pd) = build(&raw, |i| format!("X.E{}", i + 1));
        let lo1 = is_left_orthogonal(&cfg, &d).unwrap();
        let lo2 = is_left_orthogonal(&pcfg, &pd).unwrap();
        match (&lo1.witness, &lo2.witness) {
            (None, None) => {}
            (
                Some(LoFailure::SubdivisorGenusPositive { subdivisor: s1, p_a: p1 }),
                Some(LoFailure::SubdivisorGenusPositive { subdivisor: s2, p_a: p2 }),
            ) => {
                prop_assert_eq!(p1, p2);
                prop_assert_eq!(s1.mults(), s2.mults());
            }
            (Some(LoFailure::GenusNonzero { p_a: p1 }), Some(LoFailure::GenusNonzero { p_a: p2 })) => {
                prop_assert_eq!(p1, p2);
            }
            (Some(LoFailure::NotTree(_)), Some(LoFailure::NotTree(_))) => {}
            (a, b) => prop_assert!(false, "witness kinds diverged: {:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn witnesses_check_out_independently(raw in arb_instance()) {
        let (cfg, d) = build(&raw, |i| format!("E{}", i + 1));
        let slo = is_strongly_left_orthogonal(&cfg, &d).unwrap();
        match &slo.lo.witness {
            None => prop_assert!(support_is_tree_of_lines(&cfg, &d)),
            Some(LoFailure::NotTree(_)) => {
                prop_assert!(!support_is_tree_of_lines(&cfg, &d));
            }
            Some(LoFailure::GenusNonzero { p_a }) => {
                prop_assert_eq!(p_a, &cfg.arithmetic_genus(&d).unwrap());
                prop_assert!(!p_a.is_zero());
            }
            Some(LoFailure::SubdivisorGenusPositive { subdivisor, p_a }) => {
                prop_assert!(subdivisor.le(&d));
                prop_assert!(!subdivisor.is_zero());
                prop_assert!(support_is_connected(&cfg, subdivisor));
                prop_assert_eq!(p_a, &cfg.arithmetic_genus(subdivisor).unwrap());
                prop_assert!(p_a.is_positive());
            }
        }
        if let Some(w) = &slo.witness {
            prop_assert!(slo.lo.is_lo());
            prop_assert!(w.subdivisor.le(&d));
            prop_assert!(!w.subdivisor.is_zero());
            prop_assert!(support_is_connected(&cfg, &w.subdivisor));
            let p_a = cfg.arithmetic_genus(&w.subdivisor).unwrap();
            let dd = cfg.pairing(&d, &w.subdivisor).unwrap();
            prop_assert_eq!(&w.p_a, &p_a);
            prop_assert_eq!(&w.pairing_with_ambient, &dd);
            prop_assert!(p_a > dd + 1);
        }
    }

    #[test]
    fn verdicts_agree_with_direct_definition(raw in arb_instance()) {
        // Independent route: brute-force the connected subdivisors in the
        // canonical order and apply the defining conditions literally.
        let (cfg, d) = build(&raw, |i| format!("E{}", i + 1));
        let bounds = d.mults().to_vec();
        let mut candidates: Vec<Vec<u64>> = Vec::new();
        let mut m = vec![0u64; bounds.len()];
        'count: loop {
            let mut pos = bounds.len();
            loop {
                if pos == 0 {
                    break 'count;
                }
                pos -= 1;
                m[pos] += 1;
                if m[pos] <= bounds[pos] {
                    break;
                }
                m[pos] = 0;
            }
            let candidate = Divisor::from_multiplicities(&cfg, m.clone()).unwrap();
            if support_is_connected(&cfg, &candidate) {
                candidates.push(m.clone());
            }
        }
        candidates.sort_by_key(|v| (v.iter().sum::<u64>(), v.clone()));

        let tree_ok = support_is_tree_of_lines(&cfg, &d);
        let p_a_zero = cfg.arithmetic_genus(&d).unwrap().is_zero();
        let mut genus_offender: Option<(Divisor, BigInt)> = None;
        let mut slo_offender: Option<(Divisor, BigInt, BigInt)> = None;
        if tree_ok && p_a_zero {
            for v in &candidates {
                let sub = Divisor::from_multiplicities(&cfg, v.clone()).unwrap();
                let p_a = cfg.arithmetic_genus(&sub).unwrap();
                if p_a.is_positive() {
                    genus_offender = Some((sub, p_a));
                    break;
                }
                if slo_offender.is_none() {
                    let dd = cfg.pairing(&d, &sub).unwrap();
                    if p_a > &dd + 1 {
                        slo_offender = Some((sub, p_a, dd));
                    }
                }
            }
        }
        let expect_lo = tree_ok && p_a_zero && genus_offender.is_none();
        let expect_slo = expect_lo && slo_offender.is_none();

        let lo = is_left_orthogonal(&cfg, &d).unwrap();
        let slo = is_strongly_left_orthogonal(&cfg, &d).unwrap();
        prop_assert_eq!(lo.is_lo(), expect_lo);
        prop_assert_eq!(slo.is_slo(), expect_slo);
        if let Some((sub, p_a)) = genus_offender {
            match &lo.witness {
                Some(LoFailure::SubdivisorGenusPositive { subdivisor, p_a: got }) => {
                    prop_assert_eq!(subdivisor, &sub);
                    prop_assert_eq!(got, &p_a);
                }
                other => prop_assert!(false, "expected subdivisor witness, got {:?}", other),
            }
        }
        if expect_lo {
            if let Some((sub, p_a, dd)) = slo_offender {
                let w = slo.witness.as_ref().expect("inequality witness");
                prop_assert_eq!(&w.subdivisor, &sub);
                prop_assert_eq!(&w.p_a, &p_a);
                prop_assert_eq!(&w.pairing_with_ambient, &dd);
            }
        }
    }

    #[test]
    fn inertia_is_congruence_invariant(
        n in 1usize..=4,
        upper in prop::collection::vec(-6i64..=6, 10),
        ops in prop::collection::vec((0usize..3, 0usize..4, 0usize..4, -2i64..=2), 0..8),
    ) {
        // Symmetric matrix from the upper triangle.
        let mut g = vec![vec![BigInt::zero(); n]; n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i..n {
                let v = BigInt::from(*it.next().unwrap());
                g[i][j] = v.clone();
                g[j][i] = v;
            }
        }
        // Unimodular S as a product of swaps, sign flips, and shears.
        let mut s = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in s.iter_mut().enumerate() {
            row[i] = BigInt::from(1);
        }
        for &(kind, a, b, c) in &ops {
            let (a, b) = (a % n, b % n);
            match kind {
                0 => s.swap(a, b),
                1 => {
                    for v in &mut s[a] {
                        *v = -v.clone();
                    }
                }
                _ => {
                    if a != b {
                        for col in 0..n {
                            let delta = &s[b][col] * c;
                            s[a][col] += delta;
                        }
                    }
                }
            }
        }
        let mul = |x: &Vec<Vec<BigInt>>, y: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
            let mut out = vec![vec![BigInt::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        out[i][j] += &x[i][k] * &y[k][j];
                    }
                }
            }
            out
        };
        let mut st = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                st[i][j] = s[j][i].clone();
            }
        }
        let transformed = mul(&mul(&s, &g), &st);
        let a: Inertia = inertia(&g).unwrap();
        let b: Inertia = inertia(&transformed).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn hermite_rank_matches_counting_at_any_points(
        d in 0i64..=6,
        m in prop::collection::vec(1u64..=3, 1..=3),
        start in -5i64..=5,
        step in 1i64..=3,
        den in 1i64..=3,
    ) {
        let points: Vec<BigRational> = (0..m.len())
            .map(|j| BigRational::new(BigInt::from(start + step * j as i64), BigInt::from(den)))
            .collect();
        let total: u64 = m.iter().sum();
        let rank = hermite_rank(d, &points, &m).unwrap();
        prop_assert_eq!(hermite_feasible(d, &m), rank as u64 == total);
    }

    #[test]
    fn subdivisor_stream_matches_brute_force_enumeration(raw in arb_instance()) {
        let (cfg, d) = build(&raw, |i| format!("E{}", i + 1));
        // Mixed-radix counting over all vectors 0 < m <= bounds, filtered by
        // the standalone connectivity test, sorted by (degree, lex).
        let bounds = d.mults().to_vec();
        let mut expected: Vec<Vec<u64>> = Vec::new();
        let mut m = vec![0u64; bounds.len()];
        'count: loop {
            let mut pos = bounds.len();
            loop {
                if pos == 0 {
                    break 'count;
                }
                pos -= 1;
                m[pos] += 1;
                if m[pos] <= bounds[pos] {
                    break;
                }
                m[pos] = 0;
            }
            let candidate = Divisor::from_multiplicities(&cfg, m.clone()).unwrap();
            if support_is_connected(&cfg, &candidate) {
                expected.push(m.clone());
            }
        }
        expected.sort_by_key(|v| (v.iter().sum::<u64>(), v.clone()));
        let got: Vec<Vec<u64>> = lortho::criteria::connected_subdivisors(&cfg, &d)
            .unwrap()
            .map(|s| s.mults().to_vec())
            .collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn adjunction_round_trips_from_lattice_classes(
        classes in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..=4)
    ) {
        let lattice = lortho::models::blowup_lattice(3);
        match lortho::models::configuration_from_classes(&lattice, &classes) {
            Ok(cfg) => {
                for (i, class) in classes.iter().enumerate() {
                    let id = lortho::ComponentId::new(format!("C{}", i + 1));
                    let idx = cfg.index_of(&id).unwrap();
                    prop_assert_eq!(cfg.canonical_degree(idx), lattice.canonical_pairing(class));
                    prop_assert_eq!(
                        BigInt::from(cfg.component(idx).self_intersection),
                        lattice.pairing(class, class)
                    );
                }
            }
            Err(e) => {
                let expected = matches!(
                    e,
                    lortho::Error::NegativePairwisePairing { .. }
                        | lortho::Error::NegativeGenus { .. }
                );
                prop_assert!(expected, "unexpected error {:?}", e);
            }
        }
    }

    #[test]
    fn certificates_cover_random_lo_trees(seed in any::<u64>(), n in 1usize..=5) {
        let (cfg, d) = random_tree(seed, n, -4..=4, 1..=3);
        let lo = is_left_orthogonal(&cfg, &d).unwrap();
        if lo.is_lo() {
            let cert = lo_certificate(&cfg, &d).unwrap();
            prop_assert!(cert.is_some(), "LO divisor must have an elimination order");
            let cert = cert.unwrap();
            prop_assert_eq!(cert.len() as u128, d.total_degree());
            prop_assert!(verify_certificate(&cfg, &d, &cert).unwrap().is_valid());
        }
        let slo = is_strongly_left_orthogonal(&cfg, &d).unwrap();
        if slo.is_slo() {
            let cert = slo_certificate(&cfg, &d).unwrap();
            prop_assert!(cert.is_some(), "SLO divisor must have an elimination order");
            let cert = cert.unwrap();
            prop_assert_eq!(cert.len() as u128, d.total_degree());
            prop_assert!(verify_certificate(&cfg, &d, &cert).unwrap().is_valid());
        }
        // Any certificate that exists must replay, LO or not.
        if let Some(cert) = lo_certificate(&cfg, &d).unwrap() {
            prop_assert!(verify_certificate(&cfg, &d, &cert).unwrap().is_valid());
        }
    }
}
