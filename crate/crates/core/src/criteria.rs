//! Decision procedures for left-orthogonality and strong left-orthogonality.
//!
//! An effective divisor `D` on a surface with `h^1(O_X) = h^2(O_X) = 0` is
//! left-orthogonal exactly when its support is a tree of projective lines,
//! `p_a(D) = 0`, and every connected subdivisor `0 < D' <= D` has
//! `p_a(D') <= 0`. Strong left-orthogonality additionally requires
//! `p_a(D') <= 1 + D.D'` for every such `D'`.
//!
//! Verdicts carry the first failing witness in the canonical subdivisor
//! order: ascending total degree, ties broken lexicographically by the
//! id-sorted multiplicity vector.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::lattice::{ComponentId, CurveConfiguration, Divisor};

/// Default bound on the subdivisor candidate space `prod_i (k_i + 1)`.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Why a divisor support fails to be a tree of projective lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeFailure {
    NonRationalComponent { component: ComponentId, genus: u64 },
    MultiIncidence { pair: (ComponentId, ComponentId), count: u32 },
    Cycle { components: Vec<ComponentId> },
    Disconnected { partition: Vec<Vec<ComponentId>> },
}

impl fmt::Display for TreeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeFailure::NonRationalComponent { component, genus } => {
                write!(f, "component `{component}` has genus {genus}")
            }
            TreeFailure::MultiIncidence { pair, count } => {
                write!(f, "components `{}` and `{}` meet {} times", pair.0, pair.1, count)
            }
            TreeFailure::Cycle { components } => {
                write!(f, "components form a cycle: ")?;
                for (i, id) in components.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{id}")?;
                }
                Ok(())
            }
            TreeFailure::Disconnected { partition } => {
                write!(f, "support splits into {} connected pieces", partition.len())
            }
        }
    }
}

/// Outcome of the tree-of-lines test on the support of a divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeVerdict {
    pub failure: Option<TreeFailure>,
}

impl TreeVerdict {
    pub fn is_tree_of_lines(&self) -> bool {
        self.failure.is_none()
    }
}

/// Witness for a failed left-orthogonality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoFailure {
    NotTree(TreeFailure),
    GenusNonzero { p_a: BigInt },
    SubdivisorGenusPositive { subdivisor: Divisor, p_a: BigInt },
}

/// Left-orthogonality verdict; `witness` holds the first offender when the
/// check fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoVerdict {
    pub witness: Option<LoFailure>,
}

impl LoVerdict {
    pub fn is_lo(&self) -> bool {
        self.witness.is_none()
    }
}

/// A connected subdivisor violating `p_a(D') <= 1 + D.D'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SloInequalityFailure {
    pub subdivisor: Divisor,
    pub p_a: BigInt,
    /// The pairing `D.D'` with the ambient divisor.
    pub pairing_with_ambient: BigInt,
}

/// Strong left-orthogonality verdict. Implies the embedded LO verdict; the
/// inequality witness is only present when LO itself passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SloVerdict {
    pub lo: LoVerdict,
    pub witness: Option<SloInequalityFailure>,
}

impl SloVerdict {
    pub fn is_slo(&self) -> bool {
        self.lo.is_lo() && self.witness.is_none()
    }
}

/// Support-restricted view of a configuration plus a divisor, with local
/// indices and precomputed intersection data for fast subdivisor scans.
struct SupportScan<'a> {
    cfg: &'a CurveConfiguration,
    digest: u64,
    /// Config indices of the support, ascending (id order).
    nodes: Vec<usize>,
    /// Divisor multiplicities along `nodes`.
    bounds: Vec<u64>,
    /// Local adjacency with incidence counts.
    adj: Vec<Vec<(usize, u32)>>,
    /// Local edges `(i, j, count)` with `i < j`.
    edges: Vec<(usize, usize, u32)>,
    /// Self-intersections and canonical degrees along `nodes`.
    r: Vec<BigInt>,
    kappa: Vec<BigInt>,
}

impl<'a> SupportScan<'a> {
    fn new(cfg: &'a CurveConfiguration, d: &Divisor) -> Result<Self, Error> {
        cfg.ensure(d)?;
        let nodes = d.support();
        if nodes.is_empty() {
            return Err(Error::ZeroDivisor);
        }
        let mut local = vec![usize::MAX; cfg.len()];
        for (li, &ci) in nodes.iter().enumerate() {
            local[ci] = li;
        }
        let bounds: Vec<u64> = nodes.iter().map(|&ci| d.multiplicity(ci)).collect();
        let mut adj = vec![Vec::new(); nodes.len()];
        let mut edges = Vec::new();
        for (li, &ci) in nodes.iter().enumerate() {
            for &(cj, count) in cfg.neighbors(ci) {
                let lj = local[cj];
                if lj == usize::MAX {
                    continue;
                }
                adj[li].push((lj, count));
                if li < lj {
                    edges.push((li, lj, count));
                }
            }
        }
        let r = nodes
            .iter()
            .map(|&ci| BigInt::from(cfg.component(ci).self_intersection))
            .collect();
        let kappa = nodes.iter().map(|&ci| cfg.canonical_degree(ci)).collect();
        Ok(SupportScan {
            cfg,
            digest: d.config_digest(),
            nodes,
            bounds,
            adj,
            edges,
            r,
            kappa,
        })
    }

    fn candidate_space(&self) -> BigUint {
        let mut p = BigUint::one();
        for &b in &self.bounds {
            p *= BigUint::from(b) + 1u32;
        }
        p
    }

    fn check_cap(&self, cap: u64) -> Result<(), Error> {
        let candidates = self.candidate_space();
        if candidates > BigUint::from(cap) {
            return Err(Error::EnumerationCapExceeded { candidates, cap });
        }
        Ok(())
    }

    /// Arithmetic genus of a support-local multiplicity vector.
    fn p_a(&self, m: &[u64]) -> BigInt {
        let mut s = BigInt::zero();
        for i in 0..m.len() {
            if m[i] == 0 {
                continue;
            }
            let k = BigInt::from(m[i]);
            s += (&self.r[i] * &k + &self.kappa[i]) * &k;
        }
        for &(i, j, c) in &self.edges {
            if m[i] != 0 && m[j] != 0 {
                s += BigInt::from(m[i]) * m[j] * c * 2;
            }
        }
        assert!((&s % 2u32).is_zero(), "intersection parity violated");
        s / 2 + 1
    }

    /// Pairings of the full ambient divisor with each support component.
    fn ambient_degrees(&self) -> Vec<BigInt> {
        (0..self.nodes.len())
            .map(|i| {
                let mut b = &self.r[i] * self.bounds[i];
                for &(j, c) in &self.adj[i] {
                    b += BigInt::from(self.bounds[j]) * c;
                }
                b
            })
            .collect()
    }

    /// Pairing of the ambient divisor with a support-local vector, given the
    /// precomputed ambient degrees.
    fn ambient_pairing(&self, ambient: &[BigInt], m: &[u64]) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, &k) in m.iter().enumerate() {
            if k != 0 {
                acc += &ambient[i] * k;
            }
        }
        acc
    }

    /// Whether the positive entries of `m` induce a connected subgraph.
    fn is_connected_subset(&self, m: &[u64]) -> bool {
        let start = match m.iter().position(|&k| k > 0) {
            Some(i) => i,
            None => return false,
        };
        let mut seen = vec![false; m.len()];
        let mut queue = vec![start];
        seen[start] = true;
        let mut reached = 1usize;
        while let Some(u) = queue.pop() {
            for &(v, _) in &self.adj[u] {
                if m[v] > 0 && !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push(v);
                }
            }
        }
        reached == m.iter().filter(|&&k| k > 0).count()
    }

    /// Connected components of the support, each as ascending local indices.
    fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut part = vec![s];
            seen[s] = true;
            let mut queue = vec![s];
            while let Some(u) = queue.pop() {
                for &(v, _) in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        part.push(v);
                        queue.push(v);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    /// Finds a cycle by inserting edges into a forest until one closes;
    /// callers guarantee a cycle exists.
    fn find_cycle(&self) -> Vec<ComponentId> {
        fn leader(dsu: &mut [usize], mut x: usize) -> usize {
            while dsu[x] != x {
                dsu[x] = dsu[dsu[x]];
                x = dsu[x];
            }
            x
        }
        let n = self.nodes.len();
        let mut dsu: Vec<usize> = (0..n).collect();
        let mut forest: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b, _) in &self.edges {
            let (ra, rb) = (leader(&mut dsu, a), leader(&mut dsu, b));
            if ra == rb {
                // The a..b path in the forest plus this edge is a cycle.
                let mut parent = vec![usize::MAX; n];
                let mut queue = std::collections::VecDeque::from([a]);
                parent[a] = a;
                while let Some(u) = queue.pop_front() {
                    if u == b {
                        break;
                    }
                    for &v in &forest[u] {
                        if parent[v] == usize::MAX {
                            parent[v] = u;
                            queue.push_back(v);
                        }
                    }
                }
                let mut path = vec![b];
                let mut w = b;
                while w != a {
                    w = parent[w];
                    path.push(w);
                }
                return path
                    .into_iter()
                    .map(|li| self.cfg.id(self.nodes[li]).clone())
                    .collect();
            }
            dsu[ra] = rb;
            forest[a].push(b);
            forest[b].push(a);
        }
        unreachable!("find_cycle called on an acyclic support")
    }

    fn tree_failure(&self) -> Option<TreeFailure> {
        for &ci in &self.nodes {
            let comp = self.cfg.component(ci);
            if comp.genus != 0 {
                return Some(TreeFailure::NonRationalComponent {
                    component: comp.id.clone(),
                    genus: comp.genus,
                });
            }
        }
        for &(i, j, c) in &self.edges {
            if c > 1 {
                return Some(TreeFailure::MultiIncidence {
                    pair: (
                        self.cfg.id(self.nodes[i]).clone(),
                        self.cfg.id(self.nodes[j]).clone(),
                    ),
                    count: c,
                });
            }
        }
        let parts = self.connected_components();
        if parts.len() > 1 {
            return Some(TreeFailure::Disconnected {
                partition: parts
                    .into_iter()
                    .map(|p| {
                        p.into_iter()
                            .map(|li| self.cfg.id(self.nodes[li]).clone())
                            .collect()
                    })
                    .collect(),
            });
        }
        if self.edges.len() + 1 != self.nodes.len() {
            return Some(TreeFailure::Cycle {
                components: self.find_cycle(),
            });
        }
        None
    }

    fn divisor(&self, m: &[u64]) -> Divisor {
        let mut mults = vec![0u64; self.cfg.len()];
        for (li, &k) in m.iter().enumerate() {
            mults[self.nodes[li]] = k;
        }
        Divisor::from_raw(self.digest, mults)
    }
}

/// Cursor over multiplicity vectors `0 < m <= bounds` in canonical order:
/// ascending total degree, ties lexicographic.
struct CompositionCursor {
    bounds: Vec<u64>,
    /// `suffix[i] = sum(bounds[i..])`.
    suffix: Vec<u128>,
    cur: Vec<u64>,
    degree: u128,
    total: u128,
    fresh: bool,
}

impl CompositionCursor {
    fn new(bounds: Vec<u64>) -> Self {
        let n = bounds.len();
        let mut suffix = vec![0u128; n + 1];
        for i in (0..n).rev() {
            suffix[i] = suffix[i + 1] + u128::from(bounds[i]);
        }
        let total = suffix[0];
        CompositionCursor {
            cur: vec![0; n],
            bounds,
            suffix,
            degree: 0,
            total,
            fresh: false,
        }
    }

    /// Fills `cur` with the lexicographically smallest vector of the given
    /// degree; `degree <= total` must hold.
    fn fill_lex_min(&mut self, mut remaining: u128, from: usize) {
        for i in from..self.bounds.len() {
            let min_here = remaining.saturating_sub(self.suffix[i + 1]);
            debug_assert!(min_here <= u128::from(self.bounds[i]));
            self.cur[i] = min_here as u64;
            remaining -= min_here;
        }
        debug_assert_eq!(remaining, 0);
    }

    /// Advances to the next vector in canonical order. Returns `false` when
    /// exhausted. The first call positions the cursor on the first vector.
    fn step(&mut self) -> bool {
        if !self.fresh {
            if self.total == 0 {
                return false;
            }
            self.degree = 1;
            self.fill_lex_min(1, 0);
            self.fresh = true;
            return true;
        }
        // Successor within the same degree: find the rightmost position that
        // can absorb one unit from the suffix to its right.
        let n = self.bounds.len();
        let mut suffix_sum: u128 = 0;
        for i in (0..n).rev() {
            if i + 1 < n {
                suffix_sum += u128::from(self.cur[i + 1]);
            }
            if i + 1 < n && self.cur[i] < self.bounds[i] && suffix_sum >= 1 {
                self.cur[i] += 1;
                self.fill_lex_min(suffix_sum - 1, i + 1);
                return true;
            }
        }
        // Degree exhausted; move to the next one.
        if self.degree >= self.total {
            return false;
        }
        self.degree += 1;
        self.fill_lex_min(self.degree, 0);
        true
    }

    fn current(&self) -> &[u64] {
        &self.cur
    }
}

/// Streams the connected subdivisors `0 < D' <= D` in canonical order.
pub struct ConnectedSubdivisors<'a> {
    scan: SupportScan<'a>,
    cursor: CompositionCursor,
}

impl Iterator for ConnectedSubdivisors<'_> {
    type Item = Divisor;

    fn next(&mut self) -> Option<Divisor> {
        while self.cursor.step() {
            if self.scan.is_connected_subset(self.cursor.current()) {
                return Some(self.scan.divisor(self.cursor.current()));
            }
        }
        None
    }
}

/// Tests whether the support of `D` is a tree of projective lines: all
/// support components rational, no multiple incidences, connected, acyclic.
pub fn tree_of_lines_verdict(
    cfg: &CurveConfiguration,
    d: &Divisor,
) -> Result<TreeVerdict, Error> {
    let scan = SupportScan::new(cfg, d)?;
    Ok(TreeVerdict {
        failure: scan.tree_failure(),
    })
}

pub fn connected_subdivisors<'a>(
    cfg: &'a CurveConfiguration,
    d: &Divisor,
) -> Result<ConnectedSubdivisors<'a>, Error> {
    connected_subdivisors_with_cap(cfg, d, DEFAULT_ENUMERATION_CAP)
}

pub fn connected_subdivisors_with_cap<'a>(
    cfg: &'a CurveConfiguration,
    d: &Divisor,
    cap: u64,
) -> Result<ConnectedSubdivisors<'a>, Error> {
    let scan = SupportScan::new(cfg, d)?;
    scan.check_cap(cap)?;
    let cursor = CompositionCursor::new(scan.bounds.clone());
    Ok(ConnectedSubdivisors { scan, cursor })
}

pub fn is_left_orthogonal(cfg: &CurveConfiguration, d: &Divisor) -> Result<LoVerdict, Error> {
    is_left_orthogonal_with_cap(cfg, d, DEFAULT_ENUMERATION_CAP)
}

/// Decides left-orthogonality, returning the first offender in canonical
/// order as witness on failure.
pub fn is_left_orthogonal_with_cap(
    cfg: &CurveConfiguration,
    d: &Divisor,
    cap: u64,
) -> Result<LoVerdict, Error> {
    let scan = SupportScan::new(cfg, d)?;
    if let Some(failure) = scan.tree_failure() {
        return Ok(LoVerdict {
            witness: Some(LoFailure::NotTree(failure)),
        });
    }
    let p_a = scan.p_a(&scan.bounds);
    if !p_a.is_zero() {
        return Ok(LoVerdict {
            witness: Some(LoFailure::GenusNonzero { p_a }),
        });
    }
    scan.check_cap(cap)?;
    let mut cursor = CompositionCursor::new(scan.bounds.clone());
    while cursor.step() {
        let m = cursor.current();
        if !scan.is_connected_subset(m) {
            continue;
        }
        let p_a = scan.p_a(m);
        if p_a.is_positive() {
            return Ok(LoVerdict {
                witness: Some(LoFailure::SubdivisorGenusPositive {
                    subdivisor: scan.divisor(m),
                    p_a,
                }),
            });
        }
    }
    Ok(LoVerdict { witness: None })
}

pub fn is_strongly_left_orthogonal(
    cfg: &CurveConfiguration,
    d: &Divisor,
) -> Result<SloVerdict, Error> {
    is_strongly_left_orthogonal_with_cap(cfg, d, DEFAULT_ENUMERATION_CAP)
}

/// Decides strong left-orthogonality. Both the genus condition and the
/// inequality `p_a(D') <= 1 + D.D'` are evaluated in one pass over the
/// subdivisor stream; each witness is the first offender of its condition.
pub fn is_strongly_left_orthogonal_with_cap(
    cfg: &CurveConfiguration,
    d: &Divisor,
    cap: u64,
) -> Result<SloVerdict, Error> {
    let scan = SupportScan::new(cfg, d)?;
    if let Some(failure) = scan.tree_failure() {
        return Ok(SloVerdict {
            lo: LoVerdict {
                witness: Some(LoFailure::NotTree(failure)),
            },
            witness: None,
        });
    }
    let p_a = scan.p_a(&scan.bounds);
    if !p_a.is_zero() {
        return Ok(SloVerdict {
            lo: LoVerdict {
                witness: Some(LoFailure::GenusNonzero { p_a }),
            },
            witness: None,
        });
    }
    scan.check_cap(cap)?;
    let ambient = scan.ambient_degrees();
    let mut slo_witness: Option<SloInequalityFailure> = None;
    let mut cursor = CompositionCursor::new(scan.bounds.clone());
    while cursor.step() {
        let m = cursor.current();
        if !scan.is_connected_subset(m) {
            continue;
        }
        let p_a = scan.p_a(m);
        if p_a.is_positive() {
            // LO condition fails; that supersedes any inequality witness.
            return Ok(SloVerdict {
                lo: LoVerdict {
                    witness: Some(LoFailure::SubdivisorGenusPositive {
                        subdivisor: scan.divisor(m),
                        p_a,
                    }),
                },
                witness: None,
            });
        }
        if slo_witness.is_none() {
            let dd = scan.ambient_pairing(&ambient, m);
            if p_a > &dd + 1 {
                slo_witness = Some(SloInequalityFailure {
                    subdivisor: scan.divisor(m),
                    p_a,
                    pairing_with_ambient: dd,
                });
            }
        }
    }
    Ok(SloVerdict {
        lo: LoVerdict { witness: None },
        witness: slo_witness,
    })
}

/// LO and SLO classification of a single projective line with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultipleLineVerdict {
    pub lo: bool,
    pub slo: bool,
}

/// Closed-form verdict for `D = kE`, one rational component with `E^2 = r`:
/// LO iff `k = 1` or `(k, r) = (2, 1)`; SLO iff `(k = 1, r >= -1)` or
/// `(k, r) = (2, 1)`.
pub fn multiple_line_verdict(r: i64, k: u64) -> MultipleLineVerdict {
    assert!(k >= 1, "multiplicity must be positive");
    let lo = k == 1 || (k == 2 && r == 1);
    let slo = (k == 1 && r >= -1) || (k == 2 && r == 1);
    MultipleLineVerdict { lo, slo }
}

pub fn reduced_slo_threshold(
    cfg: &CurveConfiguration,
    d: &Divisor,
) -> Result<(BigInt, Divisor), Error> {
    reduced_slo_threshold_with_cap(cfg, d, DEFAULT_ENUMERATION_CAP)
}

/// Minimum of `D.D'` over connected `0 < D' <= D` for a reduced tree of
/// lines, with the first minimizer. The divisor is strongly left-orthogonal
/// exactly when the minimum is at least `-1`.
pub fn reduced_slo_threshold_with_cap(
    cfg: &CurveConfiguration,
    d: &Divisor,
    cap: u64,
) -> Result<(BigInt, Divisor), Error> {
    let scan = SupportScan::new(cfg, d)?;
    for (li, &b) in scan.bounds.iter().enumerate() {
        if b > 1 {
            return Err(Error::NotReduced {
                component: cfg.id(scan.nodes[li]).clone(),
                multiplicity: b,
            });
        }
    }
    if let Some(failure) = scan.tree_failure() {
        return Err(Error::NotTreeOfLines(failure.to_string()));
    }
    scan.check_cap(cap)?;
    let ambient = scan.ambient_degrees();
    let mut best: Option<(BigInt, Vec<u64>)> = None;
    let mut cursor = CompositionCursor::new(scan.bounds.clone());
    while cursor.step() {
        let m = cursor.current();
        if !scan.is_connected_subset(m) {
            continue;
        }
        let dd = scan.ambient_pairing(&ambient, m);
        match &best {
            Some((min, _)) if *min <= dd => {}
            _ => best = Some((dd, m.to_vec())),
        }
    }
    let (min, argmin) = best.expect("nonzero divisor has at least one subdivisor");
    Ok((min, scan.divisor(&argmin)))
}
