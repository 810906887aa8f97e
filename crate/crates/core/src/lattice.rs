//! Curve configurations, effective divisors, and exact intersection
//! arithmetic.
//!
//! A [`CurveConfiguration`] describes finitely many curve components on a
//! surface by self-intersection number and genus, together with a multiset of
//! transversal incidences between distinct components. Its Gram matrix has
//! the self-intersections on the diagonal and incidence counts off it.
//! A [`Divisor`] is a non-negative multiplicity vector over the components.
//!
//! All derived quantities (pairings, canonical degrees, arithmetic genus) are
//! computed in arbitrary-precision integers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;

/// Identifier of a curve component, unique within a configuration.
///
/// Ids compare lexicographically as strings; every deterministic order in
/// this crate (component order, enumeration order, witness tie-breaks)
/// derives from that order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentId(String);

impl ComponentId {
    pub fn new(label: impl Into<String>) -> Self {
        ComponentId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ComponentId {
    fn from(s: &str) -> Self {
        ComponentId(s.to_owned())
    }
}

impl From<String> for ComponentId {
    fn from(s: String) -> Self {
        ComponentId(s)
    }
}

/// One curve component: an irreducible curve with its self-intersection
/// number and geometric genus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: ComponentId,
    pub self_intersection: i64,
    pub genus: u64,
}

impl Component {
    pub fn new(id: impl Into<ComponentId>, self_intersection: i64, genus: u64) -> Self {
        Component {
            id: id.into(),
            self_intersection,
            genus,
        }
    }

    /// A rational component (genus zero).
    pub fn rational(id: impl Into<ComponentId>, self_intersection: i64) -> Self {
        Component::new(id, self_intersection, 0)
    }
}

/// Pairings of each component with the canonical class.
///
/// By adjunction, `E_i . K = 2 g_i - 2 - r_i` where `r_i` is the
/// self-intersection of `E_i`. This is all the canonical class contributes
/// at the combinatorial level, so only these degrees are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalClassView {
    degrees: Vec<BigInt>,
}

impl CanonicalClassView {
    pub fn degrees(&self) -> &[BigInt] {
        &self.degrees
    }

    pub fn degree(&self, index: usize) -> &BigInt {
        &self.degrees[index]
    }
}

/// A configuration of curve components with transversal incidences.
///
/// Components are stored sorted by id. Each occurrence of an unordered pair
/// in the incidence multiset is one transversal intersection point; pairs may
/// repeat, self-pairs are rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveConfiguration {
    components: Vec<Component>,
    incidence_counts: BTreeMap<(usize, usize), u32>,
    adjacency: Vec<Vec<(usize, u32)>>,
    digest: u64,
}

impl CurveConfiguration {
    /// Validates and builds a configuration from raw component and incidence
    /// lists.
    pub fn new(
        mut components: Vec<Component>,
        incidences: &[(ComponentId, ComponentId)],
    ) -> Result<Self, Error> {
        if components.is_empty() {
            return Err(Error::EmptyConfiguration);
        }
        components.sort_by(|a, b| a.id.cmp(&b.id));
        for w in components.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::DuplicateId(w[1].id.clone()));
            }
        }
        let index_of = |id: &ComponentId| {
            components
                .binary_search_by(|c| c.id.cmp(id))
                .map_err(|_| Error::UnknownIdInIncidence(id.clone()))
        };
        let mut incidence_counts: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for (a, b) in incidences {
            let i = index_of(a)?;
            let j = index_of(b)?;
            if i == j {
                return Err(Error::SelfLoop(a.clone()));
            }
            *incidence_counts.entry((i.min(j), i.max(j))).or_insert(0) += 1;
        }
        let mut adjacency = vec![Vec::new(); components.len()];
        for (&(i, j), &c) in &incidence_counts {
            adjacency[i].push((j, c));
            adjacency[j].push((i, c));
        }
        let digest = Self::compute_digest(&components, &incidence_counts);
        Ok(CurveConfiguration {
            components,
            incidence_counts,
            adjacency,
            digest,
        })
    }

    fn compute_digest(
        components: &[Component],
        incidence_counts: &BTreeMap<(usize, usize), u32>,
    ) -> u64 {
        // FNV-1a over the canonical form; stable across runs.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        for c in components {
            eat(c.id.as_str().as_bytes());
            eat(&[0xff]);
            eat(&c.self_intersection.to_le_bytes());
            eat(&c.genus.to_le_bytes());
        }
        for (&(i, j), &count) in incidence_counts {
            eat(&(i as u64).to_le_bytes());
            eat(&(j as u64).to_le_bytes());
            eat(&u64::from(count).to_le_bytes());
        }
        h
    }

    /// Components in id order. All index-based accessors refer to this order.
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Number of components; at least one by construction.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, index: usize) -> &Component {
        &self.components[index]
    }

    pub fn index_of(&self, id: &ComponentId) -> Option<usize> {
        self.components.binary_search_by(|c| c.id.cmp(id)).ok()
    }

    pub fn id(&self, index: usize) -> &ComponentId {
        &self.components[index].id
    }

    /// Number of transversal intersection points of components `i` and `j`.
    pub fn incidence_count(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 0;
        }
        let key = (i.min(j), i.max(j));
        self.incidence_counts.get(&key).copied().unwrap_or(0)
    }

    /// Incidence multiset as `((i, j), count)` with `i < j`, in index order.
    pub fn incidences(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.incidence_counts.iter().map(|(&p, &c)| (p, c))
    }

    /// Neighbors of component `i` with incidence counts, in index order.
    pub fn neighbors(&self, i: usize) -> &[(usize, u32)] {
        &self.adjacency[i]
    }

    /// Entry of the Gram matrix of the intersection form.
    pub fn gram_entry(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.components[i].self_intersection
        } else {
            i64::from(self.incidence_count(i, j))
        }
    }

    pub fn gram_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(self.gram_entry(i, j))).collect())
            .collect()
    }

    /// Pairing of component `i` with the canonical class, `2 g_i - 2 - r_i`.
    pub fn canonical_degree(&self, i: usize) -> BigInt {
        let c = &self.components[i];
        BigInt::from(c.genus) * 2 - 2 - c.self_intersection
    }

    pub fn canonical_class_view(&self) -> CanonicalClassView {
        CanonicalClassView {
            degrees: (0..self.len()).map(|i| self.canonical_degree(i)).collect(),
        }
    }

    pub(crate) fn digest(&self) -> u64 {
        self.digest
    }

    pub(crate) fn ensure(&self, d: &Divisor) -> Result<(), Error> {
        if d.config_digest == self.digest && d.mults.len() == self.len() {
            Ok(())
        } else {
            Err(Error::MismatchedConfiguration)
        }
    }

    pub(crate) fn pairing_raw(&self, a: &[u64], b: &[u64]) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, comp) in self.components.iter().enumerate() {
            if a[i] != 0 && b[i] != 0 {
                acc += BigInt::from(a[i]) * b[i] * comp.self_intersection;
            }
        }
        for (&(i, j), &c) in &self.incidence_counts {
            let cross = BigInt::from(a[i]) * b[j] + BigInt::from(a[j]) * b[i];
            if !cross.is_zero() {
                acc += cross * c;
            }
        }
        acc
    }

    pub(crate) fn canonical_pairing_raw(&self, m: &[u64]) -> BigInt {
        let mut acc = BigInt::zero();
        for i in 0..self.len() {
            if m[i] != 0 {
                acc += self.canonical_degree(i) * m[i];
            }
        }
        acc
    }

    /// Intersection pairing of two divisors, bilinear in the multiplicities.
    pub fn pairing(&self, a: &Divisor, b: &Divisor) -> Result<BigInt, Error> {
        self.ensure(a)?;
        self.ensure(b)?;
        Ok(self.pairing_raw(a.mults(), b.mults()))
    }

    /// Pairing of a divisor with the single component `id`.
    pub fn pairing_with_component(&self, d: &Divisor, id: &ComponentId) -> Result<BigInt, Error> {
        self.ensure(d)?;
        let i = self
            .index_of(id)
            .ok_or_else(|| Error::UnknownComponent(id.clone()))?;
        Ok(self.component_pairing_raw(d.mults(), i))
    }

    pub(crate) fn component_pairing_raw(&self, m: &[u64], i: usize) -> BigInt {
        let mut acc = BigInt::from(m[i]) * self.components[i].self_intersection;
        for &(j, c) in &self.adjacency[i] {
            if m[j] != 0 {
                acc += BigInt::from(m[j]) * c;
            }
        }
        acc
    }

    /// Pairing of a divisor with the canonical class.
    pub fn canonical_pairing(&self, d: &Divisor) -> Result<BigInt, Error> {
        self.ensure(d)?;
        Ok(self.canonical_pairing_raw(d.mults()))
    }

    /// Arithmetic genus `p_a(D) = 1 + D(D + K)/2` via Riemann-Roch.
    pub fn arithmetic_genus(&self, d: &Divisor) -> Result<BigInt, Error> {
        self.ensure(d)?;
        if d.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.arithmetic_genus_raw(d.mults()))
    }

    pub(crate) fn arithmetic_genus_raw(&self, m: &[u64]) -> BigInt {
        let s = self.pairing_raw(m, m) + self.canonical_pairing_raw(m);
        // D(D + K) is always even: mod 2 it reduces to sum (k_i^2 + k_i) r_i.
        assert!((&s % 2u32).is_zero(), "intersection parity violated");
        s / 2 + 1
    }

    fn check_simple_support(&self, m: &[u64]) -> Result<(), Error> {
        for (i, comp) in self.components.iter().enumerate() {
            if m[i] != 0 && comp.genus != 0 {
                return Err(Error::NotSimpleConfiguration(format!(
                    "component `{}` has genus {}",
                    comp.id, comp.genus
                )));
            }
        }
        for (&(i, j), &c) in &self.incidence_counts {
            if c > 1 && m[i] != 0 && m[j] != 0 {
                return Err(Error::NotSimpleConfiguration(format!(
                    "components `{}` and `{}` meet {} times",
                    self.components[i].id, self.components[j].id, c
                )));
            }
        }
        Ok(())
    }

    /// Arithmetic genus by the componentwise expansion
    /// `1 + sum_i (r_i k_i (k_i - 1)/2 - k_i) + sum_{incidences} k_i k_j`,
    /// valid when all support components are rational and meet simply.
    pub fn genus_closed_form(&self, d: &Divisor) -> Result<BigInt, Error> {
        self.ensure(d)?;
        if d.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let m = d.mults();
        self.check_simple_support(m)?;
        let mut acc = BigInt::zero();
        for (i, comp) in self.components.iter().enumerate() {
            if m[i] == 0 {
                continue;
            }
            let k = BigInt::from(m[i]);
            let pairs = &k * (&k - 1) / 2;
            acc += BigInt::from(comp.self_intersection) * pairs - k;
        }
        for &(i, j) in self.incidence_counts.keys() {
            if m[i] != 0 && m[j] != 0 {
                acc += BigInt::from(m[i]) * m[j];
            }
        }
        Ok(acc + 1)
    }

    /// Whether `2 + D^2 = sum_i k_i (2 + r_i)` holds; over rational support
    /// this integer identity is equivalent to `p_a(D) = 0`.
    pub fn magic_formula_holds(&self, d: &Divisor) -> Result<bool, Error> {
        self.ensure(d)?;
        if d.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let m = d.mults();
        for (i, comp) in self.components.iter().enumerate() {
            if m[i] != 0 && comp.genus != 0 {
                return Err(Error::NotSimpleConfiguration(format!(
                    "component `{}` has genus {}",
                    comp.id, comp.genus
                )));
            }
        }
        let lhs = self.pairing_raw(m, m) + 2;
        let mut rhs = BigInt::zero();
        for (i, comp) in self.components.iter().enumerate() {
            if m[i] != 0 {
                rhs += BigInt::from(m[i]) * (BigInt::from(comp.self_intersection) + 2);
            }
        }
        Ok(lhs == rhs)
    }
}

/// An effective divisor over a fixed configuration: a non-negative integer
/// multiplicity per component.
///
/// The partial order `D' <= D` is componentwise; the support of `D` is the
/// set of components with positive multiplicity. Divisors remember which
/// configuration they were built against and refuse to mix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    config_digest: u64,
    mults: Vec<u64>,
}

impl Divisor {
    pub fn zero(config: &CurveConfiguration) -> Self {
        Divisor {
            config_digest: config.digest(),
            mults: vec![0; config.len()],
        }
    }

    /// The reduced divisor with multiplicity one on every component.
    pub fn reduced(config: &CurveConfiguration) -> Self {
        Divisor {
            config_digest: config.digest(),
            mults: vec![1; config.len()],
        }
    }

    pub fn from_map(
        config: &CurveConfiguration,
        multiplicities: &BTreeMap<ComponentId, u64>,
    ) -> Result<Self, Error> {
        let mut mults = vec![0u64; config.len()];
        for (id, &k) in multiplicities {
            let i = config
                .index_of(id)
                .ok_or_else(|| Error::UnknownComponent(id.clone()))?;
            mults[i] = k;
        }
        Ok(Divisor {
            config_digest: config.digest(),
            mults,
        })
    }

    pub fn from_pairs(config: &CurveConfiguration, pairs: &[(&str, u64)]) -> Result<Self, Error> {
        let mut mults = vec![0u64; config.len()];
        for &(label, k) in pairs {
            let id = ComponentId::from(label);
            let i = config
                .index_of(&id)
                .ok_or(Error::UnknownComponent(id))?;
            mults[i] = k;
        }
        Ok(Divisor {
            config_digest: config.digest(),
            mults,
        })
    }

    /// Builds from a dense multiplicity vector in component (id) order.
    pub fn from_multiplicities(
        config: &CurveConfiguration,
        mults: Vec<u64>,
    ) -> Result<Self, Error> {
        if mults.len() != config.len() {
            return Err(Error::MismatchedConfiguration);
        }
        Ok(Divisor {
            config_digest: config.digest(),
            mults,
        })
    }

    pub fn single(config: &CurveConfiguration, id: &ComponentId, k: u64) -> Result<Self, Error> {
        let i = config
            .index_of(id)
            .ok_or_else(|| Error::UnknownComponent(id.clone()))?;
        let mut mults = vec![0u64; config.len()];
        mults[i] = k;
        Ok(Divisor {
            config_digest: config.digest(),
            mults,
        })
    }

    pub(crate) fn from_raw(config_digest: u64, mults: Vec<u64>) -> Self {
        Divisor {
            config_digest,
            mults,
        }
    }

    pub fn mults(&self) -> &[u64] {
        &self.mults
    }

    pub fn multiplicity(&self, index: usize) -> u64 {
        self.mults[index]
    }

    /// Indices of components with positive multiplicity, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.mults.len()).filter(|&i| self.mults[i] > 0).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.mults.iter().all(|&k| k == 0)
    }

    /// All multiplicities in `{0, 1}`.
    pub fn is_reduced(&self) -> bool {
        self.mults.iter().all(|&k| k <= 1)
    }

    /// Componentwise comparison; only meaningful over the same configuration.
    pub fn le(&self, other: &Divisor) -> bool {
        self.config_digest == other.config_digest
            && self.mults.iter().zip(&other.mults).all(|(a, b)| a <= b)
    }

    pub fn total_degree(&self) -> u128 {
        self.mults.iter().map(|&k| u128::from(k)).sum()
    }

    /// Componentwise sum with another divisor over the same configuration.
    pub fn plus(&self, other: &Divisor) -> Divisor {
        assert_eq!(
            self.config_digest, other.config_digest,
            "divisors over different configurations"
        );
        let mults = self
            .mults
            .iter()
            .zip(&other.mults)
            .map(|(a, b)| a.checked_add(*b).expect("multiplicity overflow"))
            .collect();
        Divisor {
            config_digest: self.config_digest,
            mults,
        }
    }

    pub fn to_map(&self, config: &CurveConfiguration) -> BTreeMap<ComponentId, u64> {
        self.mults
            .iter()
            .enumerate()
            .filter(|&(_, &k)| k > 0)
            .map(|(i, &k)| (config.id(i).clone(), k))
            .collect()
    }

    pub(crate) fn config_digest(&self) -> u64 {
        self.config_digest
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::standard_chain;

    fn single(r: i64, genus: u64) -> CurveConfiguration {
        CurveConfiguration::new(vec![Component::new("E", r, genus)], &[]).unwrap()
    }

    #[test]
    fn build_single_component() {
        let cfg = single(-1, 0);
        assert_eq!(cfg.len(), 1);
        assert_eq!(cfg.gram_entry(0, 0), -1);
    }

    #[test]
    fn build_a2_gram() {
        let cfg = CurveConfiguration::new(
            vec![Component::rational("E1", -2), Component::rational("E2", -2)],
            &[("E1".into(), "E2".into())],
        )
        .unwrap();
        assert_eq!(cfg.gram_entry(0, 0), -2);
        assert_eq!(cfg.gram_entry(0, 1), 1);
        assert_eq!(cfg.gram_entry(1, 0), 1);
        assert_eq!(cfg.gram_entry(1, 1), -2);
    }

    #[test]
    fn self_loop_rejected() {
        let err = CurveConfiguration::new(
            vec![Component::rational("E1", -2)],
            &[("E1".into(), "E1".into())],
        )
        .unwrap_err();
        assert_eq!(err, Error::SelfLoop("E1".into()));
    }

    #[test]
    fn duplicate_id_rejected() {
        let err = CurveConfiguration::new(
            vec![Component::rational("E", -2), Component::rational("E", -1)],
            &[],
        )
        .unwrap_err();
        assert_eq!(err, Error::DuplicateId("E".into()));
    }

    #[test]
    fn unknown_incidence_id_rejected() {
        let err = CurveConfiguration::new(
            vec![Component::rational("E1", -2)],
            &[("E1".into(), "E9".into())],
        )
        .unwrap_err();
        assert_eq!(err, Error::UnknownIdInIncidence("E9".into()));
    }

    #[test]
    fn empty_configuration_rejected() {
        assert_eq!(
            CurveConfiguration::new(vec![], &[]).unwrap_err(),
            Error::EmptyConfiguration
        );
    }

    #[test]
    fn pairing_a2_self() {
        let (cfg, d) = standard_chain(&[-2, -2]);
        assert_eq!(cfg.pairing(&d, &d).unwrap(), BigInt::from(-2));
    }

    #[test]
    fn pairing_with_zero_divisor() {
        let (cfg, d) = standard_chain(&[-2, -2]);
        let zero = Divisor::zero(&cfg);
        assert_eq!(cfg.pairing(&zero, &d).unwrap(), BigInt::from(0));
    }

    #[test]
    fn pairing_example_chain() {
        let (cfg, d) = standard_chain(&[0, -3, -2, -3, 0]);
        let sub = Divisor::from_pairs(&cfg, &[("E2", 1), ("E3", 1), ("E4", 1)]).unwrap();
        assert_eq!(cfg.pairing(&d, &sub).unwrap(), BigInt::from(-2));
    }

    #[test]
    fn pairing_rejects_foreign_divisor() {
        let (cfg_a, d) = standard_chain(&[-2, -2]);
        let (cfg_b, _) = standard_chain(&[-2, -2, -2]);
        assert_eq!(
            cfg_b.pairing(&d, &Divisor::reduced(&cfg_b)).unwrap_err(),
            Error::MismatchedConfiguration
        );
        assert!(cfg_a.pairing(&d, &d).is_ok());
    }

    #[test]
    fn canonical_pairing_examples() {
        let cfg = single(-1, 0);
        let d = Divisor::reduced(&cfg);
        assert_eq!(cfg.canonical_pairing(&d).unwrap(), BigInt::from(-1));

        let cfg = single(1, 0);
        let d = Divisor::from_pairs(&cfg, &[("E", 2)]).unwrap();
        assert_eq!(cfg.canonical_pairing(&d).unwrap(), BigInt::from(-6));

        let cfg = single(0, 1);
        let d = Divisor::reduced(&cfg);
        assert_eq!(cfg.canonical_pairing(&d).unwrap(), BigInt::from(0));
    }

    #[test]
    fn canonical_view_matches_adjunction() {
        let (cfg, _) = standard_chain(&[0, -3, -2, -3, 0]);
        let view = cfg.canonical_class_view();
        for i in 0..cfg.len() {
            assert_eq!(
                *view.degree(i),
                BigInt::from(-2 - cfg.component(i).self_intersection)
            );
        }
    }

    #[test]
    fn arithmetic_genus_examples() {
        let (cfg, d) = standard_chain(&[0, -3, -2, -3, 0]);
        assert_eq!(cfg.arithmetic_genus(&d).unwrap(), BigInt::from(0));

        let cfg = single(1, 0);
        let d = Divisor::from_pairs(&cfg, &[("E", 2)]).unwrap();
        assert_eq!(cfg.arithmetic_genus(&d).unwrap(), BigInt::from(0));

        let cfg = single(0, 0);
        let d = Divisor::from_pairs(&cfg, &[("E", 2)]).unwrap();
        assert_eq!(cfg.arithmetic_genus(&d).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn arithmetic_genus_rejects_zero() {
        let cfg = single(-1, 0);
        let zero = Divisor::zero(&cfg);
        assert_eq!(cfg.arithmetic_genus(&zero).unwrap_err(), Error::ZeroDivisor);
    }

    #[test]
    fn closed_form_examples() {
        let cfg = single(1, 0);
        let d = Divisor::from_pairs(&cfg, &[("E", 2)]).unwrap();
        assert_eq!(cfg.genus_closed_form(&d).unwrap(), BigInt::from(0));

        let (cfg, d) = standard_chain(&[-2, -2, -2]);
        assert_eq!(cfg.genus_closed_form(&d).unwrap(), BigInt::from(0));

        // Two positive lines meeting once: both routes must agree (p_a = 0).
        let (cfg, d) = standard_chain(&[1, 1]);
        let rr = cfg.arithmetic_genus(&d).unwrap();
        assert_eq!(rr, BigInt::from(0));
        assert_eq!(cfg.genus_closed_form(&d).unwrap(), rr);
    }

    #[test]
    fn closed_form_refuses_non_simple() {
        let cfg = CurveConfiguration::new(
            vec![Component::rational("E1", -2), Component::rational("E2", -2)],
            &[("E1".into(), "E2".into()), ("E1".into(), "E2".into())],
        )
        .unwrap();
        let d = Divisor::reduced(&cfg);
        assert!(matches!(
            cfg.genus_closed_form(&d),
            Err(Error::NotSimpleConfiguration(_))
        ));
        // Riemann-Roch handles the double incidence fine.
        assert_eq!(cfg.arithmetic_genus(&d).unwrap(), BigInt::from(1));

        let cfg = single(0, 1);
        let d = Divisor::reduced(&cfg);
        assert!(matches!(
            cfg.genus_closed_form(&d),
            Err(Error::NotSimpleConfiguration(_))
        ));
    }

    #[test]
    fn magic_formula_examples() {
        let (cfg, d) = standard_chain(&[1, 1]);
        assert!(cfg.magic_formula_holds(&d).unwrap());

        let cfg = single(0, 0);
        let d = Divisor::from_pairs(&cfg, &[("E", 2)]).unwrap();
        assert!(!cfg.magic_formula_holds(&d).unwrap());

        let cfg = single(-1, 0);
        let d = Divisor::reduced(&cfg);
        assert!(cfg.magic_formula_holds(&d).unwrap());
    }

    #[test]
    fn divisor_order_and_support() {
        let (cfg, d) = standard_chain(&[-2, -2, -2]);
        let sub = Divisor::from_pairs(&cfg, &[("E2", 1)]).unwrap();
        assert!(sub.le(&d));
        assert!(!d.le(&sub));
        assert_eq!(sub.support(), vec![1]);
        assert!(d.is_reduced());
        assert_eq!(d.total_degree(), 3);
    }

    #[test]
    fn divisor_unknown_component() {
        let (cfg, _) = standard_chain(&[-2]);
        assert_eq!(
            Divisor::from_pairs(&cfg, &[("X", 1)]).unwrap_err(),
            Error::UnknownComponent("X".into())
        );
    }
}
