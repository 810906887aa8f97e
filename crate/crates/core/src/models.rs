//! Sources of test configurations: blow-up Picard lattices, standard chains,
//! seeded random trees, and the exhaustive catalog sweep that powers the
//! property suites.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::criteria::{
    is_strongly_left_orthogonal_with_cap, LoVerdict, SloVerdict, DEFAULT_ENUMERATION_CAP,
};
use crate::error::Error;
use crate::hodge::{hodge_admissible, positive_structure_check, StructureReport};
use crate::lattice::{Component, ComponentId, CurveConfiguration, Divisor};

/// Largest component count for which tree shapes are enumerated; the labeled
/// tree space grows as `n^(n-2)` and anything bigger blows every record cap
/// long before shape generation matters.
const MAX_SHAPE_COMPONENTS: usize = 9;

/// Picard lattice of the plane blown up in `n` points: basis `H, E_1..E_n`,
/// intersection form `diag(1, -1, ..., -1)`, canonical class
/// `-3H + E_1 + ... + E_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicardLattice {
    canonical: Vec<i64>,
}

impl PicardLattice {
    pub fn rank(&self) -> usize {
        self.canonical.len()
    }

    pub fn exceptional_count(&self) -> usize {
        self.rank() - 1
    }

    /// Canonical class in the `(H, E_1..E_n)` basis.
    pub fn canonical_class(&self) -> &[i64] {
        &self.canonical
    }

    /// Intersection pairing in the diagonal form.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> BigInt {
        assert_eq!(a.len(), self.rank(), "class has wrong rank");
        assert_eq!(b.len(), self.rank(), "class has wrong rank");
        let mut acc = BigInt::from(a[0]) * b[0];
        for i in 1..a.len() {
            acc -= BigInt::from(a[i]) * b[i];
        }
        acc
    }

    pub fn canonical_pairing(&self, v: &[i64]) -> BigInt {
        self.pairing(&self.canonical, v)
    }
}

/// The blow-up lattice with `n` exceptional classes.
pub fn blowup_lattice(n: usize) -> PicardLattice {
    let mut canonical = vec![1i64; n + 1];
    canonical[0] = -3;
    PicardLattice { canonical }
}

/// Builds a configuration from lattice classes: self-intersections from the
/// form, genera from adjunction, incidences from pairwise pairings. Classes
/// are named `C1, C2, ...` in input order. Whether a class is represented by
/// an irreducible curve is surface-dependent and not checked here.
pub fn configuration_from_classes(
    lattice: &PicardLattice,
    classes: &[Vec<i64>],
) -> Result<CurveConfiguration, Error> {
    let mut components = Vec::with_capacity(classes.len());
    for (index, class) in classes.iter().enumerate() {
        let square = lattice.pairing(class, class);
        let canonical = lattice.canonical_pairing(class);
        let doubled = &square + &canonical;
        if !(&doubled % 2u32).is_zero() {
            return Err(Error::NonIntegralGenus { index });
        }
        let genus: BigInt = doubled / 2 + 1;
        if genus.is_negative() {
            return Err(Error::NegativeGenus { index });
        }
        let genus = u64::try_from(genus.to_biguint().expect("non-negative"))
            .map_err(|_| Error::ValueOutOfRange("genus"))?;
        let self_intersection =
            i64::try_from(square).map_err(|_| Error::ValueOutOfRange("self-intersection"))?;
        components.push(Component::new(
            format!("C{}", index + 1),
            self_intersection,
            genus,
        ));
    }
    let mut incidences = Vec::new();
    for i in 0..classes.len() {
        for j in (i + 1)..classes.len() {
            let p = lattice.pairing(&classes[i], &classes[j]);
            if p.is_negative() {
                return Err(Error::NegativePairwisePairing { i, j });
            }
            let count = u32::try_from(p.to_biguint().expect("non-negative"))
                .map_err(|_| Error::ValueOutOfRange("incidence multiplicity"))?;
            for _ in 0..count {
                incidences.push((
                    ComponentId::new(format!("C{}", i + 1)),
                    ComponentId::new(format!("C{}", j + 1)),
                ));
            }
        }
    }
    CurveConfiguration::new(components, &incidences)
}

/// A path of rational curves `E1 - E2 - ... - En` with the given
/// self-intersections, together with the reduced divisor.
pub fn standard_chain(r_values: &[i64]) -> (CurveConfiguration, Divisor) {
    assert!(!r_values.is_empty(), "chain needs at least one component");
    let components: Vec<Component> = r_values
        .iter()
        .enumerate()
        .map(|(i, &r)| Component::rational(format!("E{}", i + 1), r))
        .collect();
    let incidences: Vec<(ComponentId, ComponentId)> = (1..r_values.len())
        .map(|i| {
            (
                ComponentId::new(format!("E{i}")),
                ComponentId::new(format!("E{}", i + 1)),
            )
        })
        .collect();
    let cfg = CurveConfiguration::new(components, &incidences).expect("chain data is valid");
    let d = Divisor::reduced(&cfg);
    (cfg, d)
}

/// SplitMix64; deterministic across platforms and releases.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform draw in `0..span` by rejection.
    fn below(&mut self, span: u64) -> u64 {
        debug_assert!(span > 0);
        let threshold = span.wrapping_neg() % span;
        loop {
            let r = self.next_u64();
            if r >= threshold {
                return r % span;
            }
        }
    }

    fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (i128::from(hi) - i128::from(lo) + 1) as u64;
        let offset = self.below(span);
        (i128::from(lo) + i128::from(offset)) as i64
    }

    fn range_u64(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        let span = hi - lo + 1;
        lo + self.below(span)
    }
}

/// Decodes a Pruefer sequence over `0..n` into the edge list of a labeled
/// tree on `n >= 2` vertices.
fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len(), n - 2);
    let mut degree = vec![1u32; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = *leaves.iter().next().expect("a leaf always remains");
        leaves.remove(&leaf);
        edges.push((leaf.min(s), leaf.max(s)));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.insert(s);
        }
    }
    let mut last = leaves.into_iter();
    let a = last.next().expect("two vertices remain");
    let b = last.next().expect("two vertices remain");
    edges.push((a.min(b), a.max(b)));
    edges
}

/// Uniformly random labeled tree with independent uniform self-intersections
/// and multiplicities; identical output for identical arguments.
pub fn random_tree(
    seed: u64,
    n: usize,
    r_range: std::ops::RangeInclusive<i64>,
    k_range: std::ops::RangeInclusive<u64>,
) -> (CurveConfiguration, Divisor) {
    assert!(n >= 1, "tree needs at least one vertex");
    assert!(r_range.start() <= r_range.end(), "empty r range");
    assert!(
        k_range.start() <= k_range.end() && *k_range.start() >= 1,
        "multiplicity range must be positive"
    );
    let mut rng = SplitMix64::new(seed);
    let edges = match n {
        1 => Vec::new(),
        2 => vec![(0usize, 1usize)],
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.below(n as u64) as usize).collect();
            prufer_decode(&seq, n)
        }
    };
    let components: Vec<Component> = (0..n)
        .map(|i| {
            Component::rational(
                format!("E{}", i + 1),
                rng.range_i64(*r_range.start(), *r_range.end()),
            )
        })
        .collect();
    let incidences: Vec<(ComponentId, ComponentId)> = edges
        .iter()
        .map(|&(a, b)| {
            (
                ComponentId::new(format!("E{}", a + 1)),
                ComponentId::new(format!("E{}", b + 1)),
            )
        })
        .collect();
    let cfg = CurveConfiguration::new(components, &incidences).expect("tree data is valid");
    let mut mults = BTreeMap::new();
    for i in 0..n {
        mults.insert(
            ComponentId::new(format!("E{}", i + 1)),
            rng.range_u64(*k_range.start(), *k_range.end()),
        );
    }
    let d = Divisor::from_map(&cfg, &mults).expect("ids match");
    (cfg, d)
}

/// Bounds of an exhaustive sweep over weighted trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepBounds {
    pub max_components: usize,
    pub multiplicity_max: u64,
    pub r_min: i64,
    pub r_max: i64,
    pub include_multiedges: bool,
}

impl SweepBounds {
    fn validate(&self) -> Result<(), Error> {
        if self.max_components < 1 {
            return Err(Error::InvalidSweepBounds(
                "max_components must be at least 1".into(),
            ));
        }
        if self.max_components > MAX_SHAPE_COMPONENTS {
            return Err(Error::InvalidSweepBounds(format!(
                "max_components above {MAX_SHAPE_COMPONENTS} is not supported"
            )));
        }
        if self.multiplicity_max < 1 {
            return Err(Error::InvalidSweepBounds(
                "multiplicity_max must be at least 1".into(),
            ));
        }
        if self.r_min > self.r_max {
            return Err(Error::InvalidSweepBounds("r_min exceeds r_max".into()));
        }
        Ok(())
    }
}

/// One fully classified sweep entry.
#[derive(Debug, Clone)]
pub struct CatalogRecord {
    pub config: CurveConfiguration,
    pub divisor: Divisor,
    pub lo: LoVerdict,
    pub slo: SloVerdict,
    pub hodge_admissible: bool,
    pub structure: StructureReport,
}

/// Rooted AHU encoding, canonical for the unrooted tree by rooting at its
/// center, or at both centers with the sorted pair when the tree is central
/// along an edge.
fn tree_code(n: usize, edges: &[(usize, usize)]) -> String {
    fn encode(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
        let mut children: Vec<String> = adj[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| encode(adj, w, v))
            .collect();
        children.sort();
        format!("({})", children.concat())
    }
    if n == 1 {
        return "()".into();
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    // Centers by repeated leaf removal.
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        let mut next = Vec::new();
        for &v in &layer {
            removed[v] = true;
            remaining -= 1;
            for &w in &adj[v] {
                if !removed[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    let centers: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    match centers.as_slice() {
        [c] => encode(&adj, *c, usize::MAX),
        [a, b] => {
            let mut pair = [encode(&adj, *a, *b), encode(&adj, *b, *a)];
            pair.sort();
            format!("[{}{}]", pair[0], pair[1])
        }
        _ => unreachable!("a tree has one or two centers"),
    }
}

/// All non-isomorphic trees on `n` vertices as edge lists of labeled
/// representatives, ordered by canonical code.
fn tree_shapes(n: usize) -> Vec<Vec<(usize, usize)>> {
    match n {
        1 => return vec![Vec::new()],
        2 => return vec![vec![(0, 1)]],
        _ => {}
    }
    let mut by_code: BTreeMap<String, Vec<(usize, usize)>> = BTreeMap::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let edges = prufer_decode(&seq, n);
        let code = tree_code(n, &edges);
        by_code.entry(code).or_insert(edges);
        // Odometer over [0, n)^(n-2).
        let mut pos = seq.len();
        loop {
            if pos == 0 {
                return by_code.into_values().collect();
            }
            pos -= 1;
            seq[pos] += 1;
            if seq[pos] < n {
                break;
            }
            seq[pos] = 0;
        }
    }
}

/// Odometer over digit vectors with a fixed radix per slot.
struct Odometer {
    radices: Vec<u64>,
    digits: Vec<u64>,
}

impl Odometer {
    fn new(radices: Vec<u64>) -> Self {
        debug_assert!(radices.iter().all(|&r| r >= 1));
        let digits = vec![0; radices.len()];
        Odometer { radices, digits }
    }

    fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Advances to the next assignment; `false` on wrap-around.
    fn advance(&mut self) -> bool {
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.radices[i] {
                return true;
            }
            self.digits[i] = 0;
        }
        false
    }
}

/// Exhaustive classified sweep in canonical order: component count, tree
/// shape code, edge multiplicities, self-intersections, multiplicities.
pub struct Catalog {
    bounds: SweepBounds,
    cap: u64,
    shapes: Vec<(usize, Vec<(usize, usize)>)>,
    shape_index: usize,
    edge_odometer: Odometer,
    r_odometer: Odometer,
    k_odometer: Odometer,
    config: Option<CurveConfiguration>,
    done: bool,
}

pub fn enumerate_catalog(bounds: &SweepBounds) -> Result<Catalog, Error> {
    enumerate_catalog_with_cap(bounds, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_catalog_with_cap(bounds: &SweepBounds, cap: u64) -> Result<Catalog, Error> {
    bounds.validate()?;
    let mut shapes = Vec::new();
    for n in 1..=bounds.max_components {
        for edges in tree_shapes(n) {
            shapes.push((n, edges));
        }
    }
    let r_span = BigUint::from((bounds.r_max - bounds.r_min) as u64 + 1);
    let k_span = BigUint::from(bounds.multiplicity_max);
    let edge_span = BigUint::from(if bounds.include_multiedges { 2u32 } else { 1u32 });
    let mut records = BigUint::zero();
    for (n, edges) in &shapes {
        records += r_span.pow(*n as u32)
            * k_span.pow(*n as u32)
            * edge_span.pow(edges.len() as u32);
    }
    if records > BigUint::from(cap) {
        return Err(Error::EnumerationCapExceeded {
            candidates: records,
            cap,
        });
    }
    // Per-divisor subdivisor spaces must fit the cap as well.
    let per_divisor = (BigUint::from(bounds.multiplicity_max) + 1u32)
        .pow(bounds.max_components as u32);
    if per_divisor > BigUint::from(cap) {
        return Err(Error::EnumerationCapExceeded {
            candidates: per_divisor,
            cap,
        });
    }
    let mut catalog = Catalog {
        bounds: bounds.clone(),
        cap,
        shapes,
        shape_index: 0,
        edge_odometer: Odometer::new(vec![1]),
        r_odometer: Odometer::new(vec![1]),
        k_odometer: Odometer::new(vec![1]),
        config: None,
        done: false,
    };
    catalog.enter_shape();
    Ok(catalog)
}

impl Catalog {
    fn enter_shape(&mut self) {
        if self.shape_index >= self.shapes.len() {
            self.done = true;
            self.config = None;
            return;
        }
        let (n, edges) = &self.shapes[self.shape_index];
        let edge_radix = if self.bounds.include_multiedges { 2 } else { 1 };
        self.edge_odometer = Odometer::new(vec![edge_radix; edges.len()]);
        let r_span = (self.bounds.r_max - self.bounds.r_min) as u64 + 1;
        self.r_odometer = Odometer::new(vec![r_span; *n]);
        self.k_odometer = Odometer::new(vec![self.bounds.multiplicity_max; *n]);
        self.rebuild_config();
    }

    fn rebuild_config(&mut self) {
        let (n, edges) = &self.shapes[self.shape_index];
        let components: Vec<Component> = (0..*n)
            .map(|v| {
                Component::rational(
                    format!("E{}", v + 1),
                    self.bounds.r_min + self.r_odometer.digits()[v] as i64,
                )
            })
            .collect();
        let mut incidences = Vec::new();
        for (e, &(a, b)) in edges.iter().enumerate() {
            let count = 1 + self.edge_odometer.digits()[e];
            for _ in 0..count {
                incidences.push((
                    ComponentId::new(format!("E{}", a + 1)),
                    ComponentId::new(format!("E{}", b + 1)),
                ));
            }
        }
        self.config =
            Some(CurveConfiguration::new(components, &incidences).expect("sweep data is valid"));
    }

    fn advance(&mut self) {
        if self.k_odometer.advance() {
            return;
        }
        if self.r_odometer.advance() {
            self.rebuild_config();
            return;
        }
        if self.edge_odometer.advance() {
            self.rebuild_config();
            return;
        }
        self.shape_index += 1;
        self.enter_shape();
    }
}

impl Iterator for Catalog {
    type Item = CatalogRecord;

    fn next(&mut self) -> Option<CatalogRecord> {
        if self.done {
            return None;
        }
        let config = self.config.clone().expect("configuration is current");
        let n = self.shapes[self.shape_index].0;
        let mut mults = BTreeMap::new();
        for v in 0..n {
            mults.insert(
                ComponentId::new(format!("E{}", v + 1)),
                1 + self.k_odometer.digits()[v],
            );
        }
        let divisor = Divisor::from_map(&config, &mults).expect("ids match");
        let slo = is_strongly_left_orthogonal_with_cap(&config, &divisor, self.cap)
            .expect("candidate space fits the cap by the prechecks");
        let lo = slo.lo.clone();
        let hodge = hodge_admissible(&config);
        let structure =
            positive_structure_check(&config, &divisor).expect("divisor belongs to config");
        self.advance();
        Some(CatalogRecord {
            config,
            divisor,
            lo,
            slo,
            hodge_admissible: hodge,
            structure,
        })
    }
}
