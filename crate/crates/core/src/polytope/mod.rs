//! Exact polyhedral checks for extreme-point adjacency.
//!
//! The relaxation has one coordinate per acceptable pair and four row
//! families: `x(v) ≥ 0`, `Σ_w x(m,w) ≤ 1` per man, `Σ_m x(m,w) ≤ 1` per
//! woman, and a stability row per pair,
//! `x(m,w) + Σ_{m' ≥_w m} x(m',w) + Σ_{w' ≥_m w} x(m,w') ≥ 1`.
//!
//! Adjacency of two stable matchings is checked two independent ways here:
//! the rank of the rows tight at both incidence vectors (`|A| - 1` iff
//! adjacent), and whether their midpoint is a convex combination of the
//! other stable matchings (infeasible iff adjacent). Everything is computed
//! in exact rationals.

pub mod linalg;
pub mod simplex;

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Instance, Pair, PersonId};
use crate::matching::{check_matching, ensure_stable, enumerate_stable, Matching};
use simplex::{phase_one, PhaseOne};

pub type Rational = BigRational;

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    AtLeast,
    AtMost,
    Equal,
}

/// Which inequality family a row belongs to, and for whom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RowOrigin {
    NonNegative(Pair),
    ManCapacity(usize),
    WomanCapacity(usize),
    Stability(Pair),
}

impl fmt::Display for RowOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowOrigin::NonNegative(p) => write!(f, "nonneg{p}"),
            RowOrigin::ManCapacity(m) => write!(f, "man-cap(m{m})"),
            RowOrigin::WomanCapacity(w) => write!(f, "woman-cap(w{w})"),
            RowOrigin::Stability(p) => write!(f, "stability{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint {
    pub coefficients: Vec<Rational>,
    pub bound: Rational,
    pub sense: Sense,
    pub origin: RowOrigin,
}

impl LinearConstraint {
    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coefficients
            .iter()
            .zip(x)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, v)| a * v)
            .sum()
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.sense {
            Sense::AtLeast => lhs >= self.bound,
            Sense::AtMost => lhs <= self.bound,
            Sense::Equal => lhs == self.bound,
        }
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.lhs(x) == self.bound
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSystem {
    pairs: Vec<Pair>,
    constraints: Vec<LinearConstraint>,
}

impl ConstraintSystem {
    pub fn dimension(&self) -> usize {
        self.pairs.len()
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn row(&self, origin: RowOrigin) -> Option<usize> {
        self.constraints.iter().position(|c| c.origin == origin)
    }

    fn check_len(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.dimension() {
            return Err(Error::Dimension {
                expected: self.dimension(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Positions of the rows `x` violates.
    pub fn violated_rows(&self, x: &[Rational]) -> Result<Vec<usize>> {
        self.check_len(x)?;
        Ok((0..self.constraints.len())
            .filter(|&i| !self.constraints[i].is_satisfied(x))
            .collect())
    }

    /// Plain-text LP listing with the origin of every row as a comment.
    pub fn to_lp_text(&self) -> String {
        let var = |p: &Pair| format!("x_m{}_w{}", p.man, p.woman);
        let mut out = String::from("\\ stable marriage with ties: LP relaxation\n");
        out.push_str("\\ variables: ");
        let names: Vec<String> = self.pairs.iter().map(var).collect();
        out.push_str(&names.join(" "));
        out.push_str("\nSubject To\n");
        for (i, c) in self.constraints.iter().enumerate() {
            let terms: Vec<String> = c
                .coefficients
                .iter()
                .zip(&self.pairs)
                .filter(|(a, _)| !a.is_zero())
                .map(|(a, p)| {
                    if a.is_one() {
                        var(p)
                    } else {
                        format!("{a} {}", var(p))
                    }
                })
                .collect();
            let lhs = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            };
            let op = match c.sense {
                Sense::AtLeast => ">=",
                Sense::AtMost => "<=",
                Sense::Equal => "=",
            };
            writeln!(out, "\\ {}", c.origin).unwrap();
            writeln!(out, " r{i}: {lhs} {op} {}", c.bound).unwrap();
        }
        out.push_str("End\n");
        out
    }
}

/// The relaxation in row order: non-negativity per pair, man capacities,
/// woman capacities, stability per pair.
pub fn build_relaxation(instance: &Instance) -> ConstraintSystem {
    let pairs = instance.acceptable_pairs().to_vec();
    let dim = pairs.len();
    let unit = |positions: &mut dyn Iterator<Item = usize>| {
        let mut row = vec![Rational::zero(); dim];
        for i in positions {
            row[i] = Rational::one();
        }
        row
    };
    let mut constraints = Vec::with_capacity(2 * dim + instance.num_people());
    for (i, &p) in pairs.iter().enumerate() {
        constraints.push(LinearConstraint {
            coefficients: unit(&mut std::iter::once(i)),
            bound: Rational::zero(),
            sense: Sense::AtLeast,
            origin: RowOrigin::NonNegative(p),
        });
    }
    for m in 1..=instance.num_men() {
        constraints.push(LinearConstraint {
            coefficients: unit(&mut (0..dim).filter(|&i| pairs[i].man == m)),
            bound: Rational::one(),
            sense: Sense::AtMost,
            origin: RowOrigin::ManCapacity(m),
        });
    }
    for w in 1..=instance.num_women() {
        constraints.push(LinearConstraint {
            coefficients: unit(&mut (0..dim).filter(|&i| pairs[i].woman == w)),
            bound: Rational::one(),
            sense: Sense::AtMost,
            origin: RowOrigin::WomanCapacity(w),
        });
    }
    for &p in &pairs {
        constraints.push(LinearConstraint {
            coefficients: unit(&mut stability_support(instance, p).into_iter()),
            bound: Rational::one(),
            sense: Sense::AtLeast,
            origin: RowOrigin::Stability(p),
        });
    }
    ConstraintSystem { pairs, constraints }
}

/// Coordinates of the stability row of `(m, w)`: the pair itself, every
/// `(m', w)` with `m' ≥_w m` and every `(m, w')` with `w' ≥_m w`.
fn stability_support(instance: &Instance, p: Pair) -> Vec<usize> {
    let own_m = instance.man_score(p.man, Some(p.woman));
    let own_w = instance.woman_score(p.woman, Some(p.man));
    instance
        .acceptable_pairs()
        .iter()
        .enumerate()
        .filter(|(_, q)| {
            **q == p
                || (q.woman == p.woman && instance.woman_score(p.woman, Some(q.man)) <= own_w)
                || (q.man == p.man && instance.man_score(p.man, Some(q.woman)) <= own_m)
        })
        .map(|(i, _)| i)
        .collect()
}

/// Incidence vector of `matching` as rationals.
pub fn rational_incidence(instance: &Instance, matching: &Matching) -> Result<Vec<Rational>> {
    check_matching(instance, matching)?;
    Ok(instance
        .acceptable_pairs()
        .iter()
        .map(|&p| {
            if matching.contains(p) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect())
}

/// Positions of the rows satisfied with equality by `x`.
pub fn tight_rows(system: &ConstraintSystem, x: &[Rational]) -> Result<Vec<usize>> {
    system.check_len(x)?;
    Ok((0..system.constraints.len())
        .filter(|&i| system.constraints[i].is_tight(x))
        .collect())
}

fn rows_tight_at_both(system: &ConstraintSystem, x: &[Rational], y: &[Rational]) -> Vec<usize> {
    (0..system.constraints.len())
        .filter(|&i| system.constraints[i].is_tight(x) && system.constraints[i].is_tight(y))
        .collect()
}

/// Rank of the coefficient vectors of rows tight at both incidence vectors.
pub fn tight_rank(instance: &Instance, mu: &Matching, nu: &Matching) -> Result<usize> {
    ensure_stable(instance, mu)?;
    ensure_stable(instance, nu)?;
    let system = build_relaxation(instance);
    Ok(tight_rank_of_points(
        &system,
        &rational_incidence(instance, mu)?,
        &rational_incidence(instance, nu)?,
    ))
}

/// Rank of the rows of `system` tight at both `x` and `y`.
pub fn tight_rank_of_points(system: &ConstraintSystem, x: &[Rational], y: &[Rational]) -> usize {
    let rows: Vec<Vec<Rational>> = rows_tight_at_both(system, x, y)
        .into_iter()
        .map(|i| system.constraints[i].coefficients.clone())
        .collect();
    linalg::rank(&rows)
}

/// The four kinds of vectors shown to lie in the span of the rows tight at
/// two stable matchings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertificateCase {
    /// `e_v` for a pair used by neither matching.
    Unused,
    /// `e_(m,μ(m)) + e_(m,μ'(m))` for a man married differently in both.
    ManSwap,
    /// `e_(μ(w),w) + e_(μ'(w),w)` for a woman married differently in both.
    WomanSwap,
    /// The two-pair vector built from the stability row of a between-pair
    /// outside both matchings.
    Between,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub case: CertificateCase,
    /// The pair or person the vector was built for.
    pub subject: String,
    pub vector: Vec<Rational>,
    /// `(row position, multiplier)`; the weighted sum of the rows'
    /// coefficient vectors equals `vector`.
    pub combination: Vec<(usize, Rational)>,
}

impl Certificate {
    /// Re-multiplies the combination and checks every row used is tight at
    /// both points.
    pub fn verify(&self, system: &ConstraintSystem, x: &[Rational], y: &[Rational]) -> bool {
        let mut sum = vec![Rational::zero(); system.dimension()];
        for (row, coef) in &self.combination {
            let c = &system.constraints[*row];
            if !c.is_tight(x) || !c.is_tight(y) {
                return false;
            }
            for (s, a) in sum.iter_mut().zip(&c.coefficients) {
                *s += coef * a;
            }
        }
        sum == self.vector
    }
}

/// Builds and verifies the certificate vectors for a pair of stable
/// matchings. A failure of the between-pair case analysis, or a certificate
/// that does not re-multiply, is reported as an internal inconsistency.
pub fn tight_certificates(
    instance: &Instance,
    mu: &Matching,
    nu: &Matching,
) -> Result<Vec<Certificate>> {
    ensure_stable(instance, mu)?;
    ensure_stable(instance, nu)?;
    let system = build_relaxation(instance);
    let x = rational_incidence(instance, mu)?;
    let y = rational_incidence(instance, nu)?;
    let pairs = instance.acceptable_pairs();
    let dim = pairs.len();
    let pos = |p: Pair| {
        instance
            .pair_index(p)
            .expect("matched pairs are acceptable")
    };
    let used = |p: Pair| mu.contains(p) || nu.contains(p);
    let nonneg = |p: Pair| system.row(RowOrigin::NonNegative(p)).unwrap();
    let basis = |ps: &[Pair]| {
        let mut v = vec![Rational::zero(); dim];
        for &p in ps {
            v[pos(p)] += Rational::one();
        }
        v
    };
    // Row `row` minus the non-negativity rows of its support outside `keep`.
    let peel = |row: usize, keep: &[Pair]| -> Vec<(usize, Rational)> {
        let mut combo = vec![(row, Rational::one())];
        for (i, a) in system.constraints[row].coefficients.iter().enumerate() {
            if !a.is_zero() && !keep.contains(&pairs[i]) {
                combo.push((nonneg(pairs[i]), -a.clone()));
            }
        }
        combo
    };

    let mut out = Vec::new();
    for &p in pairs.iter().filter(|&&p| !used(p)) {
        out.push(Certificate {
            case: CertificateCase::Unused,
            subject: p.to_string(),
            vector: basis(&[p]),
            combination: vec![(nonneg(p), Rational::one())],
        });
    }
    for m in 1..=instance.num_men() {
        if let (Some(a), Some(b)) = (mu.wife(m), nu.wife(m)) {
            if a != b {
                let keep = [Pair::new(m, a), Pair::new(m, b)];
                out.push(Certificate {
                    case: CertificateCase::ManSwap,
                    subject: PersonId::man(m).to_string(),
                    vector: basis(&keep),
                    combination: peel(system.row(RowOrigin::ManCapacity(m)).unwrap(), &keep),
                });
            }
        }
    }
    for w in 1..=instance.num_women() {
        if let (Some(a), Some(b)) = (mu.husband(w), nu.husband(w)) {
            if a != b {
                let keep = [Pair::new(a, w), Pair::new(b, w)];
                out.push(Certificate {
                    case: CertificateCase::WomanSwap,
                    subject: PersonId::woman(w).to_string(),
                    vector: basis(&keep),
                    combination: peel(system.row(RowOrigin::WomanCapacity(w)).unwrap(), &keep),
                });
            }
        }
    }
    let star = crate::graph::build_star_unchecked(instance, mu, nu);
    for &p in star.vertices().iter().filter(|&&p| !used(p)) {
        let keep = match between_branch(instance, mu, nu, p) {
            Some(Branch::First) => [
                Pair::new(p.man, mu.wife(p.man).unwrap()),
                Pair::new(nu.husband(p.woman).unwrap(), p.woman),
            ],
            Some(Branch::Second) => [
                Pair::new(p.man, nu.wife(p.man).unwrap()),
                Pair::new(mu.husband(p.woman).unwrap(), p.woman),
            ],
            None => {
                return Err(Error::Internal(format!(
                    "between-pair {p} satisfies neither branch of the case analysis"
                )))
            }
        };
        out.push(Certificate {
            case: CertificateCase::Between,
            subject: p.to_string(),
            vector: basis(&keep),
            combination: peel(system.row(RowOrigin::Stability(p)).unwrap(), &keep),
        });
    }
    if let Some(bad) = out.iter().find(|c| !c.verify(&system, &x, &y)) {
        return Err(Error::Internal(format!(
            "certificate for {} ({:?}) does not verify",
            bad.subject, bad.case
        )));
    }
    Ok(out)
}

/// Which side of the case split holds for a between-pair `(m, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `μ(m) ≥_m w` and `μ'(w) ≥_w m`.
    First,
    /// `μ'(m) ≥_m w` and `μ(w) ≥_w m`.
    Second,
}

/// Evaluates the two branches left to right; `None` if neither holds.
pub fn between_branch(
    instance: &Instance,
    mu: &Matching,
    nu: &Matching,
    p: Pair,
) -> Option<Branch> {
    let man_ok = |m: &Matching| {
        instance.man_score(p.man, m.wife(p.man)) <= instance.man_score(p.man, Some(p.woman))
    };
    let woman_ok = |m: &Matching| {
        instance.woman_score(p.woman, m.husband(p.woman))
            <= instance.woman_score(p.woman, Some(p.man))
    };
    if man_ok(mu) && woman_ok(nu) {
        Some(Branch::First)
    } else if man_ok(nu) && woman_ok(mu) {
        Some(Branch::Second)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Membership {
    /// Weights on the other stable matchings reproducing the midpoint.
    Feasible(Vec<(Matching, Rational)>),
    /// Positive phase-1 optimum and a Farkas vector over the rows
    /// (one per coordinate, then the weight-sum row).
    Infeasible {
        phase_one_optimum: Rational,
        farkas: Vec<Rational>,
    },
}

impl Membership {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Membership::Feasible(_))
    }
}

/// Is `(x_μ + x_μ')/2` a convex combination of the other stable matchings?
/// Enumerates the stable matchings with the default cap.
pub fn midpoint_membership(
    instance: &Instance,
    mu: &Matching,
    nu: &Matching,
) -> Result<Membership> {
    let stable = enumerate_stable(instance)?;
    midpoint_membership_among(instance, &stable, mu, nu)
}

/// As [`midpoint_membership`], with the stable matchings supplied.
pub fn midpoint_membership_among(
    instance: &Instance,
    stable: &[Matching],
    mu: &Matching,
    nu: &Matching,
) -> Result<Membership> {
    ensure_stable(instance, mu)?;
    ensure_stable(instance, nu)?;
    if mu == nu {
        return Err(Error::EqualMatchings);
    }
    let candidates: Vec<&Matching> = stable.iter().filter(|m| *m != mu && *m != nu).collect();
    let dim = instance.acceptable_pairs().len();
    let n = candidates.len();
    // Doubled to keep the right-hand side integral: Σ 2λ_ν x_ν = x_μ + x_μ'.
    let mut rows = vec![vec![Rational::zero(); n]; dim + 1];
    for (j, cand) in candidates.iter().enumerate() {
        for p in cand.pairs() {
            rows[instance.pair_index(*p).unwrap()][j] = int(2);
        }
        rows[dim][j] = Rational::one();
    }
    let mut rhs = vec![Rational::zero(); dim + 1];
    for m in [mu, nu] {
        for p in m.pairs() {
            rhs[instance.pair_index(*p).unwrap()] += Rational::one();
        }
    }
    rhs[dim] = Rational::one();
    Ok(match phase_one(&rows, &rhs, n) {
        PhaseOne::Feasible(lambda) => Membership::Feasible(
            candidates
                .into_iter()
                .cloned()
                .zip(lambda)
                .filter(|(_, l)| !l.is_zero())
                .collect(),
        ),
        PhaseOne::Infeasible { optimum, farkas } => Membership::Infeasible {
            phase_one_optimum: optimum,
            farkas,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{sample_instance, sample_pair};
    use crate::instance::tight_family;
    use crate::matching::{blocking_pairs, enumerate_stable, Matching};

    fn matching(s: &str) -> Matching {
        s.parse().unwrap()
    }

    fn support(system: &ConstraintSystem, origin: RowOrigin) -> Vec<usize> {
        let row = &system.constraints()[system.row(origin).unwrap()];
        (0..row.coefficients.len())
            .filter(|&i| !row.coefficients[i].is_zero())
            .collect()
    }

    #[test]
    fn row_counts_and_stability_rows() {
        let inst = sample_instance();
        let sys = build_relaxation(&inst);
        assert_eq!(sys.constraints().len(), 7 + 3 + 4 + 7);

        let one = build_relaxation(&tight_family(1));
        assert_eq!(
            support(&one, RowOrigin::Stability(Pair::new(1, 1))),
            vec![0, 1]
        );
        let row = &one.constraints()[one.row(RowOrigin::Stability(Pair::new(1, 1))).unwrap()];
        assert_eq!((row.sense, row.bound.clone()), (Sense::AtLeast, int(1)));

        let empty = build_relaxation(&Instance::empty());
        assert!(empty.constraints().is_empty());
        let no_pairs = build_relaxation(&Instance::new(2, 1, []));
        assert_eq!(no_pairs.constraints().len(), 3);
        assert!(no_pairs.violated_rows(&[]).unwrap().is_empty());
    }

    #[test]
    fn stable_matchings_satisfy_the_relaxation() {
        let inst = sample_instance();
        let sys = build_relaxation(&inst);
        for m in enumerate_stable(&inst).unwrap() {
            let x = rational_incidence(&inst, &m).unwrap();
            assert!(
                sys.violated_rows(&x).unwrap().is_empty(),
                "{m} violates a row"
            );
        }
    }

    #[test]
    fn blocking_pairs_violate_their_rows() {
        let inst = sample_instance();
        let sys = build_relaxation(&inst);
        let unstable = matching("m3-w1");
        let x = rational_incidence(&inst, &unstable).unwrap();
        let violated = sys.violated_rows(&x).unwrap();
        let blocking = blocking_pairs(&inst, &unstable).unwrap();
        assert!(!blocking.is_empty());
        for p in blocking {
            assert!(violated.contains(&sys.row(RowOrigin::Stability(p)).unwrap()));
        }
    }

    #[test]
    fn tight_row_examples() {
        let sys = build_relaxation(&sample_instance());
        let zero = vec![Rational::zero(); 7];
        let tight = tight_rows(&sys, &zero).unwrap();
        assert!((0..7).all(|i| tight.contains(&i)));

        let (mu, _) = sample_pair();
        let x = rational_incidence(&sample_instance(), &mu).unwrap();
        let tight: Vec<RowOrigin> = tight_rows(&sys, &x)
            .unwrap()
            .into_iter()
            .map(|i| sys.constraints()[i].origin)
            .collect();
        for p in [(1, 4), (2, 3), (2, 4), (3, 1), (3, 2)] {
            assert!(tight.contains(&RowOrigin::NonNegative(Pair::new(p.0, p.1))));
        }
        assert!(!tight.contains(&RowOrigin::NonNegative(Pair::new(1, 2))));
        for o in [
            RowOrigin::ManCapacity(1),
            RowOrigin::ManCapacity(2),
            RowOrigin::WomanCapacity(1),
            RowOrigin::WomanCapacity(2),
        ] {
            assert!(tight.contains(&o));
        }
        assert!(!tight.contains(&RowOrigin::ManCapacity(3)));

        let one = tight_family(1);
        let sys = build_relaxation(&one);
        let x = rational_incidence(&one, &matching("m1-w1")).unwrap();
        let tight = tight_rows(&sys, &x).unwrap();
        assert!(tight.contains(&sys.row(RowOrigin::Stability(Pair::new(1, 1))).unwrap()));
        assert!(tight.contains(&sys.row(RowOrigin::Stability(Pair::new(1, 2))).unwrap()));

        assert_eq!(
            tight_rows(&sys, &[]),
            Err(Error::Dimension {
                expected: 2,
                found: 0
            })
        );
    }

    #[test]
    fn rank_examples() {
        let (mu, nu) = sample_pair();
        assert_eq!(tight_rank(&sample_instance(), &mu, &nu).unwrap(), 6);
        let two = tight_family(2);
        assert_eq!(
            tight_rank(&two, &matching("m1-w1,m2-w2"), &matching("m1-w3,m2-w4")).unwrap(),
            2
        );
        assert_eq!(
            tight_rank(&tight_family(1), &matching("m1-w1"), &matching("m1-w2")).unwrap(),
            1
        );
    }

    #[test]
    fn certificate_examples() {
        let inst = sample_instance();
        let (mu, nu) = sample_pair();
        let certs = tight_certificates(&inst, &mu, &nu).unwrap();
        let m1 = certs
            .iter()
            .find(|c| c.case == CertificateCase::ManSwap && c.subject == "m1")
            .unwrap();
        // (m1,w2) and (m1,w4) are coordinates 0 and 1.
        assert_eq!(m1.vector[..2], [int(1), int(1)]);
        assert!(m1.vector[2..].iter().all(Zero::is_zero));
        let sys = build_relaxation(&inst);
        assert_eq!(
            m1.combination[0].0,
            sys.row(RowOrigin::ManCapacity(1)).unwrap()
        );

        let unused = certs
            .iter()
            .find(|c| c.case == CertificateCase::Unused && c.subject == "(m2,w3)")
            .unwrap();
        assert_eq!(unused.vector[3], int(1));
        assert_eq!(
            unused.combination,
            vec![(
                sys.row(RowOrigin::NonNegative(Pair::new(2, 3))).unwrap(),
                int(1)
            )]
        );

        let same = tight_certificates(&inst, &mu, &mu).unwrap();
        assert_eq!(same.len(), 7 - mu.len());
        assert!(same.iter().all(|c| c.case == CertificateCase::Unused));
    }

    #[test]
    fn between_certificates_on_tight_family() {
        let inst = tight_family(2);
        let mu = matching("m1-w1,m2-w2");
        let nu = matching("m1-w3,m2-w4");
        let certs = tight_certificates(&inst, &mu, &nu).unwrap();
        assert!(certs.iter().all(|c| c.case != CertificateCase::Between));
        // Both men swap; no woman is married in both.
        assert_eq!(
            certs
                .iter()
                .filter(|c| c.case == CertificateCase::ManSwap)
                .count(),
            2
        );
    }

    #[test]
    fn membership_examples() {
        let two = tight_family(2);
        let mu = matching("m1-w1,m2-w2");
        let nu = matching("m1-w3,m2-w4");
        match midpoint_membership(&two, &mu, &nu).unwrap() {
            Membership::Feasible(weights) => {
                let half = Rational::new(1.into(), 2.into());
                assert_eq!(
                    weights,
                    vec![
                        (matching("m1-w3,m2-w2"), half.clone()),
                        (matching("m1-w1,m2-w4"), half)
                    ]
                );
            }
            other => panic!("expected feasible, got {other:?}"),
        }

        let (mu, nu) = sample_pair();
        assert!(!midpoint_membership(&sample_instance(), &mu, &nu)
            .unwrap()
            .is_feasible());

        let one = tight_family(1);
        match midpoint_membership(&one, &matching("m1-w1"), &matching("m1-w2")).unwrap() {
            Membership::Infeasible {
                phase_one_optimum, ..
            } => {
                assert!(phase_one_optimum > Rational::zero())
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
        assert_eq!(
            midpoint_membership(&one, &matching("m1-w1"), &matching("m1-w1")),
            Err(Error::EqualMatchings)
        );
    }

    #[test]
    fn lp_text_lists_every_row() {
        let text = build_relaxation(&tight_family(1)).to_lp_text();
        assert!(text.contains("\\ man-cap(m1)"));
        assert!(text.contains("x_m1_w1 + x_m1_w2 <= 1"));
        assert!(text.contains("\\ stability(m1,w2)"));
        assert_eq!(
            text.lines().filter(|l| l.starts_with(" r")).count(),
            2 + 1 + 2 + 2
        );
    }
}
