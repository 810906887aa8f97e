//! Hodge-index admissibility and positivity structure validation.
//!
//! On any surface the intersection form has exactly one positive eigenvalue,
//! so the Gram matrix of curve components can have at most one positive
//! direction. [`hodge_admissible`] checks that necessary condition exactly;
//! passing it never certifies that a configuration is realizable.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::lattice::{ComponentId, CurveConfiguration, Divisor};

/// Signature of a symmetric integer form: positive, negative, and zero
/// eigenvalue counts. Invariant under congruence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

/// Exact inertia by rational congruence diagonalization with symmetric
/// pivoting; when the trailing block has a zero diagonal, a row and column
/// addition exposes a nonzero pivot.
pub fn inertia(gram: &[Vec<BigInt>]) -> Result<Inertia, Error> {
    let n = gram.len();
    for row in gram {
        if row.len() != n {
            return Err(Error::NonSymmetric);
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if gram[i][j] != gram[j][i] {
                return Err(Error::NonSymmetric);
            }
        }
    }
    let mut m: Vec<Vec<BigRational>> = gram
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    let mut result = Inertia {
        n_pos: 0,
        n_neg: 0,
        n_zero: 0,
    };
    let mut t = 0;
    while t < n {
        let mut pivot_at = (t..n).find(|&i| !m[i][i].is_zero());
        if pivot_at.is_none() {
            let mut off = None;
            'search: for i in t..n {
                for j in (i + 1)..n {
                    if !m[i][j].is_zero() {
                        off = Some((i, j));
                        break 'search;
                    }
                }
            }
            match off {
                None => {
                    result.n_zero += n - t;
                    break;
                }
                Some((i, j)) => {
                    // Diagonal is zero here, so adding row and column j to i
                    // puts 2 m[i][j] on the diagonal.
                    for c in 0..n {
                        let v = m[j][c].clone();
                        m[i][c] += v;
                    }
                    for r in 0..n {
                        let v = m[r][j].clone();
                        m[r][i] += v;
                    }
                    pivot_at = Some(i);
                }
            }
        }
        let p = pivot_at.expect("pivot exists");
        if p != t {
            m.swap(t, p);
            for row in m.iter_mut() {
                row.swap(t, p);
            }
        }
        let pivot = m[t][t].clone();
        if pivot.is_positive() {
            result.n_pos += 1;
        } else {
            result.n_neg += 1;
        }
        for r in (t + 1)..n {
            if m[r][t].is_zero() {
                continue;
            }
            let factor = &m[r][t] / &pivot;
            for c in t..n {
                let delta = &factor * &m[t][c];
                m[r][c] -= delta;
            }
            for rr in t..n {
                let delta = &factor * &m[rr][t];
                m[rr][r] -= delta;
            }
        }
        t += 1;
    }
    Ok(result)
}

/// Necessary condition for a configuration to live on a surface: the Gram
/// matrix has at most one positive direction.
pub fn hodge_admissible(cfg: &CurveConfiguration) -> bool {
    inertia(&cfg.gram_matrix())
        .expect("gram matrix is symmetric by construction")
        .n_pos
        <= 1
}

/// A violated positivity-structure rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureViolation {
    /// Two or more support components have positive self-intersection but
    /// the divisor is not the reduced sum of exactly two lines of square one.
    PositivePair { positive_components: Vec<ComponentId> },
    /// A component with multiplicity above one has positive
    /// self-intersection but the divisor is not twice a line of square one.
    PositiveMultiple {
        component: ComponentId,
        multiplicity: u64,
        self_intersection: i64,
    },
}

/// Validation report of the positivity-structure rules for a divisor.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StructureReport {
    pub violations: Vec<StructureViolation>,
}

impl StructureReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the structural consequences of left-orthogonality for components
/// of positive self-intersection; meant as a validator over catalogs of LO
/// divisors, so it reports violations instead of failing.
pub fn positive_structure_check(
    cfg: &CurveConfiguration,
    d: &Divisor,
) -> Result<StructureReport, Error> {
    cfg.ensure(d)?;
    let support = d.support();
    let positives: Vec<usize> = support
        .iter()
        .copied()
        .filter(|&i| cfg.component(i).self_intersection > 0)
        .collect();
    let mut violations = Vec::new();
    if positives.len() >= 2 {
        let exactly_two_lines = support.len() == 2
            && positives.len() == 2
            && support
                .iter()
                .all(|&i| d.multiplicity(i) == 1 && cfg.component(i).self_intersection == 1);
        if !exactly_two_lines {
            violations.push(StructureViolation::PositivePair {
                positive_components: positives
                    .iter()
                    .map(|&i| cfg.id(i).clone())
                    .collect(),
            });
        }
    }
    for &i in &support {
        let comp = cfg.component(i);
        if d.multiplicity(i) > 1 && comp.self_intersection > 0 {
            let double_line = support.len() == 1
                && d.multiplicity(i) == 2
                && comp.self_intersection == 1;
            if !double_line {
                violations.push(StructureViolation::PositiveMultiple {
                    component: comp.id.clone(),
                    multiplicity: d.multiplicity(i),
                    self_intersection: comp.self_intersection,
                });
            }
        }
    }
    Ok(StructureReport { violations })
}
