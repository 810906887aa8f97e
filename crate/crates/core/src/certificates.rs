//! Constructive elimination certificates for `H^1`-vanishing.
//!
//! A certificate is an ordered sequence of peels: each step removes one copy
//! of a component `E_a` from the current divisor and records the Hermite
//! interpolation inequality that makes the corresponding restriction map
//! surjective. In LO mode the degree bound of a step is `-r_a (k_a - 1)`
//! where `k_a` is the multiplicity of `E_a` at the moment of peeling; in SLO
//! mode it is `b_a - r_a (k_a - 1)` with `b_a = D.E_a` computed once against
//! the full ambient divisor and held fixed. A step is feasible when
//! `d + 1 >= sum of the neighbor multiplicities` at that moment.
//!
//! [`hermite_rank`] is an independent oracle: it computes the exact rank of
//! the evaluation map from polynomials of degree at most `d` to jets of
//! prescribed orders at given points, so replaying a certificate never trusts
//! the counting shortcut it is meant to check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::criteria::tree_of_lines_verdict;
use crate::error::Error;
use crate::lattice::{ComponentId, CurveConfiguration, Divisor};

/// Bound on the total number of peel steps a certificate may need.
pub const CERTIFICATE_STEP_CAP: u64 = 1_000_000;

/// Which inequality family the certificate encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateMode {
    Lo,
    Slo,
}

/// One peel: component, polynomial degree bound, neighbor multiplicities at
/// the moment of peeling, and the feasibility inequality `lhs >= rhs` with
/// `lhs = d + 1` and `rhs = sum of point multiplicities`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelStep {
    pub component: ComponentId,
    pub degree_bound: BigInt,
    pub point_multiplicities: Vec<u64>,
    pub inequality_lhs: BigInt,
    pub inequality_rhs: BigInt,
}

/// A full elimination order for a divisor; replaying the steps removes every
/// multiplicity, one unit per step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationCertificate {
    pub mode: CertificateMode,
    pub steps: Vec<PeelStep>,
}

impl EliminationCertificate {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Sufficient conditions for `H^1(X, O_{kE}(b)) = 0` on a multiple line with
/// `E^2 = r`: either `b >= -1` and `r <= 0`, or `b >= -1` and `k = 1`, or
/// `b >= 0`, `r = 1`, `k = 2`. Returns false when none applies, which only
/// means the vanishing is not guaranteed by these conditions.
pub fn h1_multiple_line_vanishes(b: i64, r: i64, k: u64) -> bool {
    assert!(k >= 1, "multiplicity must be positive");
    (b >= -1 && r <= 0) || (b >= -1 && k == 1) || (b >= 0 && r == 1 && k == 2)
}

/// Counting form of Hermite interpolation feasibility: jets of orders `m_j`
/// at distinct points can be prescribed by polynomials of degree at most `d`
/// exactly when `d + 1 >= sum m_j`. Degrees below zero leave only the zero
/// polynomial, so nothing nonempty is feasible.
pub fn hermite_feasible(d: i64, multiplicities: &[u64]) -> bool {
    if d < 0 {
        return false;
    }
    let needed: u128 = multiplicities.iter().map(|&m| u128::from(m)).sum();
    (d as u128) + 1 >= needed
}

/// The points `0, 1, 2, ...` used by certificate replay.
pub fn integer_points(len: usize) -> Vec<BigRational> {
    (0..len).map(|i| BigRational::from_integer(BigInt::from(i))).collect()
}

/// Exact rank of the jet-evaluation matrix: rows are the derivatives of
/// order `t < m_j` at point `P_j`, columns the monomials `x^s` for
/// `s = 0..=d`; the entry is `s!/(s-t)! P_j^(s-t)` for `s >= t`, else zero.
pub fn hermite_rank(
    d: i64,
    points: &[BigRational],
    multiplicities: &[u64],
) -> Result<usize, Error> {
    if d < 0 {
        return Err(Error::NegativeDegree);
    }
    if points.len() != multiplicities.len() {
        return Err(Error::PointCountMismatch);
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i] == points[j] {
                return Err(Error::DuplicatePoints);
            }
        }
    }
    if multiplicities.is_empty() {
        return Ok(0);
    }
    let cols = usize::try_from(d).map_err(|_| Error::ValueOutOfRange("degree bound"))? + 1;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for (p, &m) in points.iter().zip(multiplicities) {
        // Powers p^0 .. p^d.
        let mut powers = Vec::with_capacity(cols);
        let mut acc = BigRational::one();
        for _ in 0..cols {
            powers.push(acc.clone());
            acc *= p;
        }
        for t in 0..usize::try_from(m).map_err(|_| Error::ValueOutOfRange("multiplicity"))? {
            let mut row = vec![BigRational::zero(); cols];
            for (s, cell) in row.iter_mut().enumerate().skip(t) {
                let mut coeff = BigInt::one();
                for u in 0..t {
                    coeff *= BigInt::from(s - u);
                }
                *cell = BigRational::from_integer(coeff) * &powers[s - t];
            }
            rows.push(row);
        }
    }
    Ok(rational_rank(rows))
}

fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let rows = m.len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        for r in (rank + 1)..rows {
            if m[r][c].is_zero() {
                continue;
            }
            let factor = &m[r][c] / &m[rank][c];
            for k in c..cols {
                let delta = &factor * &m[rank][k];
                m[r][k] -= delta;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Greedy elimination order for the LO inequality family; `None` when no
/// peelable component exists at some stage.
pub fn lo_certificate(
    cfg: &CurveConfiguration,
    d: &Divisor,
) -> Result<Option<EliminationCertificate>, Error> {
    greedy_certificate(cfg, d, CertificateMode::Lo)
}

/// Greedy elimination order for the SLO inequality family, using the fixed
/// ambient degrees `b_a = D.E_a`.
pub fn slo_certificate(
    cfg: &CurveConfiguration,
    d: &Divisor,
) -> Result<Option<EliminationCertificate>, Error> {
    greedy_certificate(cfg, d, CertificateMode::Slo)
}

fn step_degree_bound(
    mode: CertificateMode,
    ambient: &[BigInt],
    r: i64,
    index: usize,
    current_multiplicity: u64,
) -> BigInt {
    let shrink: BigInt = BigInt::from(r) * (BigInt::from(current_multiplicity) - 1);
    match mode {
        CertificateMode::Lo => -shrink,
        CertificateMode::Slo => &ambient[index] - shrink,
    }
}

fn ambient_degrees(cfg: &CurveConfiguration, d: &Divisor) -> Vec<BigInt> {
    (0..cfg.len())
        .map(|i| cfg.component_pairing_raw(d.mults(), i))
        .collect()
}

fn greedy_certificate(
    cfg: &CurveConfiguration,
    d: &Divisor,
    mode: CertificateMode,
) -> Result<Option<EliminationCertificate>, Error> {
    let verdict = tree_of_lines_verdict(cfg, d)?;
    if let Some(failure) = verdict.failure {
        return Err(Error::NotTreeOfLines(failure.to_string()));
    }
    let total = d.total_degree();
    if total > u128::from(CERTIFICATE_STEP_CAP) {
        return Err(Error::CertificateCapExceeded {
            steps: total,
            cap: CERTIFICATE_STEP_CAP,
        });
    }
    let ambient = match mode {
        CertificateMode::Lo => Vec::new(),
        CertificateMode::Slo => ambient_degrees(cfg, d),
    };
    let mut current = d.mults().to_vec();
    let mut steps = Vec::with_capacity(total as usize);
    'peel: for _ in 0..total {
        // Smallest id first among the peelable components; component order
        // is id order, so a plain index scan does it.
        for a in 0..cfg.len() {
            if current[a] == 0 {
                continue;
            }
            let mut point_multiplicities = Vec::new();
            let mut needed = BigInt::zero();
            for &(j, count) in cfg.neighbors(a) {
                if current[j] > 0 {
                    debug_assert_eq!(count, 1, "tree support has simple incidences");
                    point_multiplicities.push(current[j]);
                    needed += current[j];
                }
            }
            let degree_bound = step_degree_bound(
                mode,
                &ambient,
                cfg.component(a).self_intersection,
                a,
                current[a],
            );
            let lhs = &degree_bound + 1;
            if lhs >= needed {
                steps.push(PeelStep {
                    component: cfg.id(a).clone(),
                    degree_bound,
                    point_multiplicities,
                    inequality_lhs: lhs,
                    inequality_rhs: needed,
                });
                current[a] -= 1;
                continue 'peel;
            }
        }
        return Ok(None);
    }
    Ok(Some(EliminationCertificate { mode, steps }))
}

/// Outcome of replaying a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateCheck {
    Valid,
    /// `step` is the index of the first failing step, or `None` when the
    /// steps run out before the divisor is exhausted.
    Invalid { step: Option<usize>, reason: String },
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertificateCheck::Valid)
    }
}

fn invalid(step: usize, reason: impl Into<String>) -> CertificateCheck {
    CertificateCheck::Invalid {
        step: Some(step),
        reason: reason.into(),
    }
}

/// Replays a certificate against its divisor: bookkeeping, degree bounds and
/// inequalities are recomputed, and every step with interpolation conditions
/// is confirmed surjective by [`hermite_rank`] at the points `0, 1, 2, ...`.
///
/// The oracle runs at the minimal sufficient degree `sum m_j - 1`; adding
/// monomial columns can only grow the image, so surjectivity there implies
/// surjectivity at the recorded bound.
pub fn verify_certificate(
    cfg: &CurveConfiguration,
    d: &Divisor,
    cert: &EliminationCertificate,
) -> Result<CertificateCheck, Error> {
    cfg.ensure(d)?;
    let ambient = match cert.mode {
        CertificateMode::Lo => Vec::new(),
        CertificateMode::Slo => ambient_degrees(cfg, d),
    };
    let mut current = d.mults().to_vec();
    for (index, step) in cert.steps.iter().enumerate() {
        let Some(a) = cfg.index_of(&step.component) else {
            return Ok(invalid(index, format!("unknown component `{}`", step.component)));
        };
        if current[a] == 0 {
            return Ok(invalid(
                index,
                format!("component `{}` is already exhausted", step.component),
            ));
        }
        let mut multiplicities = Vec::new();
        for &(j, count) in cfg.neighbors(a) {
            if current[j] > 0 {
                for _ in 0..count {
                    multiplicities.push(current[j]);
                }
            }
        }
        let mut recorded = step.point_multiplicities.clone();
        recorded.sort_unstable();
        let mut replayed = multiplicities.clone();
        replayed.sort_unstable();
        if recorded != replayed {
            return Ok(invalid(index, "neighbor multiplicities do not match the replay"));
        }
        let degree_bound = step_degree_bound(
            cert.mode,
            &ambient,
            cfg.component(a).self_intersection,
            a,
            current[a],
        );
        if step.degree_bound != degree_bound {
            return Ok(invalid(index, "degree bound does not match the replay"));
        }
        let lhs = &degree_bound + 1;
        let needed: BigInt = multiplicities.iter().map(|&m| BigInt::from(m)).sum();
        if step.inequality_lhs != lhs || step.inequality_rhs != needed {
            return Ok(invalid(index, "recorded inequality does not match the replay"));
        }
        if lhs < needed {
            return Ok(invalid(index, "interpolation inequality fails"));
        }
        if !multiplicities.is_empty() {
            if needed > BigInt::from(CERTIFICATE_STEP_CAP) {
                return Err(Error::CertificateCapExceeded {
                    steps: d.total_degree(),
                    cap: CERTIFICATE_STEP_CAP,
                });
            }
            let jets = usize::try_from(needed.to_biguint().expect("non-negative"))
                .map_err(|_| Error::ValueOutOfRange("jet count"))?;
            let oracle_degree = i64::try_from(jets - 1)
                .map_err(|_| Error::ValueOutOfRange("oracle degree"))?;
            let rank = hermite_rank(
                oracle_degree,
                &integer_points(multiplicities.len()),
                &multiplicities,
            )?;
            if rank != jets {
                return Ok(invalid(
                    index,
                    format!("interpolation rank {rank} is below the required {jets}"),
                ));
            }
        }
        current[a] -= 1;
    }
    if current.iter().any(|&k| k > 0) {
        return Ok(CertificateCheck::Invalid {
            step: None,
            reason: "steps end before the divisor is exhausted".into(),
        });
    }
    Ok(CertificateCheck::Valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Component;
    use crate::models::standard_chain;

    fn single(r: i64) -> CurveConfiguration {
        CurveConfiguration::new(vec![Component::rational("E", r)], &[]).unwrap()
    }

    #[test]
    fn h1_vanishing_table() {
        assert!(h1_multiple_line_vanishes(-1, -2, 3));
        assert!(h1_multiple_line_vanishes(0, 1, 2));
        assert!(!h1_multiple_line_vanishes(-2, 0, 1));
    }

    #[test]
    fn feasibility_examples() {
        assert!(hermite_feasible(2, &[1, 2]));
        assert!(!hermite_feasible(0, &[2]));
        assert!(hermite_feasible(3, &[1, 1]));
        assert!(!hermite_feasible(-1, &[1]));
    }

    #[test]
    fn rank_examples() {
        let pts = integer_points(2);
        assert_eq!(hermite_rank(2, &pts, &[1, 2]).unwrap(), 3);
        assert_eq!(hermite_rank(0, &integer_points(1), &[2]).unwrap(), 1);
        assert_eq!(hermite_rank(3, &pts, &[1, 1]).unwrap(), 2);
    }

    #[test]
    fn rank_rejects_bad_input() {
        let pts = vec![
            BigRational::from_integer(BigInt::from(1)),
            BigRational::from_integer(BigInt::from(1)),
        ];
        assert_eq!(
            hermite_rank(2, &pts, &[1, 1]).unwrap_err(),
            Error::DuplicatePoints
        );
        assert_eq!(
            hermite_rank(-1, &integer_points(1), &[1]).unwrap_err(),
            Error::NegativeDegree
        );
        assert_eq!(
            hermite_rank(1, &integer_points(2), &[1]).unwrap_err(),
            Error::PointCountMismatch
        );
    }

    #[test]
    fn lo_certificate_double_line_r1() {
        let cfg = single(1);
        let d = Divisor::from_pairs(&cfg, &[("E", 2)]).unwrap();
        let cert = lo_certificate(&cfg, &d).unwrap().unwrap();
        assert_eq!(cert.len(), 2);
        assert_eq!(cert.steps[0].degree_bound, BigInt::from(-1));
        assert_eq!(cert.steps[1].degree_bound, BigInt::from(0));
        assert!(verify_certificate(&cfg, &d, &cert).unwrap().is_valid());
    }

    #[test]
    fn lo_certificate_a2() {
        let (cfg, d) = standard_chain(&[-2, -2]);
        let cert = lo_certificate(&cfg, &d).unwrap().unwrap();
        assert_eq!(cert.len(), 2);
        assert_eq!(cert.steps[0].component, "E1".into());
        assert_eq!(cert.steps[0].degree_bound, BigInt::from(0));
        assert_eq!(cert.steps[0].point_multiplicities, vec![1]);
        assert!(verify_certificate(&cfg, &d, &cert).unwrap().is_valid());
    }

    #[test]
    fn lo_certificate_exists_for_non_lo_input() {
        // The greedy conditions are one-directional; 2E with r = 0 is not
        // left-orthogonal yet still peels.
        let cfg = single(0);
        let d = Divisor::from_pairs(&cfg, &[("E", 2)]).unwrap();
        let cert = lo_certificate(&cfg, &d).unwrap().unwrap();
        assert_eq!(cert.len(), 2);
        assert!(verify_certificate(&cfg, &d, &cert).unwrap().is_valid());
    }

    #[test]
    fn slo_certificate_double_line_r1() {
        let cfg = single(1);
        let d = Divisor::from_pairs(&cfg, &[("E", 2)]).unwrap();
        let cert = slo_certificate(&cfg, &d).unwrap().unwrap();
        assert_eq!(cert.len(), 2);
        assert_eq!(cert.steps[0].degree_bound, BigInt::from(1));
        assert_eq!(cert.steps[1].degree_bound, BigInt::from(2));
        assert!(verify_certificate(&cfg, &d, &cert).unwrap().is_valid());
    }

    #[test]
    fn slo_certificate_single_line() {
        let cfg = single(-1);
        let d = Divisor::reduced(&cfg);
        let cert = slo_certificate(&cfg, &d).unwrap().unwrap();
        assert_eq!(cert.len(), 1);
        assert_eq!(cert.steps[0].degree_bound, BigInt::from(-1));
        assert!(verify_certificate(&cfg, &d, &cert).unwrap().is_valid());
    }

    #[test]
    fn slo_certificate_stuck_on_a2() {
        let (cfg, d) = standard_chain(&[-2, -2]);
        assert_eq!(slo_certificate(&cfg, &d).unwrap(), None);
    }

    #[test]
    fn certificate_requires_tree_support() {
        let cfg = CurveConfiguration::new(
            vec![Component::rational("E1", -2), Component::rational("E2", -2)],
            &[("E1".into(), "E2".into()), ("E1".into(), "E2".into())],
        )
        .unwrap();
        let d = Divisor::reduced(&cfg);
        assert!(matches!(
            lo_certificate(&cfg, &d),
            Err(Error::NotTreeOfLines(_))
        ));
    }

    #[test]
    fn verify_rejects_tampered_certificate() {
        let (cfg, d) = standard_chain(&[-2, -2]);
        let mut cert = lo_certificate(&cfg, &d).unwrap().unwrap();
        cert.steps[0].inequality_rhs += 5;
        let check = verify_certificate(&cfg, &d, &cert).unwrap();
        assert_eq!(
            check,
            CertificateCheck::Invalid {
                step: Some(0),
                reason: "recorded inequality does not match the replay".into()
            }
        );
    }

    #[test]
    fn verify_rejects_incomplete_certificate() {
        let (cfg, d) = standard_chain(&[-2, -2]);
        let mut cert = lo_certificate(&cfg, &d).unwrap().unwrap();
        cert.steps.pop();
        let check = verify_certificate(&cfg, &d, &cert).unwrap();
        assert_eq!(
            check,
            CertificateCheck::Invalid {
                step: None,
                reason: "steps end before the divisor is exhausted".into()
            }
        );
    }

    #[test]
    fn certificate_length_matches_total_multiplicity() {
        let (cfg, _) = standard_chain(&[-2, -1, -2]);
        let d = Divisor::from_pairs(&cfg, &[("E1", 1), ("E2", 3), ("E3", 2)]).unwrap();
        if let Some(cert) = lo_certificate(&cfg, &d).unwrap() {
            assert_eq!(cert.len() as u128, d.total_degree());
        }
    }

    #[test]
    fn vanishing_table_agrees_with_multiple_line_fast_path() {
        // For D = kE the twisting degree is b = D.E = k r. Among LO
        // divisors, strong left-orthogonality is exactly the vanishing the
        // table guarantees.
        use crate::criteria::multiple_line_verdict;
        for r in -5i64..=5 {
            for k in 1..=5u64 {
                let v = multiple_line_verdict(r, k);
                if v.lo {
                    let b = k as i64 * r;
                    assert_eq!(
                        v.slo,
                        h1_multiple_line_vanishes(b, r, k),
                        "r={r} k={k}"
                    );
                }
            }
        }
    }
}
