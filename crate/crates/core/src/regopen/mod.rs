//! The Boolean algebra of regular open subsets of `[0,1]`, and of finite
//! topological spaces.

mod finite;
mod pointset;

use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

pub use finite::{dyadic_grid_space, grid_encode, FiniteRegReport, FiniteSpace};
pub use pointset::{Piece, PointSet};

use crate::error::{Error, Result};
use crate::random::{self, SweepRng};
use crate::scalar::{format_rational, frac, is_dyadic, pow2_recip, Rational};

/// A regular open subset of `[0,1]`.
///
/// Canonical form: sorted intervals `(lo, hi)` with `lo < hi` and
/// `hi_i < lo_{i+1}`. Each interval is open in `[0,1]`, so `lo = 0` means
/// the point `0` is included and `hi = 1` means `1` is included.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RegOpen {
    intervals: Vec<(Rational, Rational)>,
}

impl RegOpen {
    pub fn zero() -> RegOpen {
        RegOpen { intervals: Vec::new() }
    }

    pub fn one() -> RegOpen {
        RegOpen {
            intervals: vec![(Rational::zero(), Rational::one())],
        }
    }

    /// `Int(Cl(∪ (a_i, b_i)))` for open intervals `(a_i, b_i)`.
    pub fn new(raw: &[(Rational, Rational)]) -> Result<RegOpen> {
        let zero = Rational::zero();
        let one = Rational::one();
        let mut set = PointSet::empty();
        for (a, b) in raw {
            if *a < zero || *b > one || a > b {
                return Err(Error::InvalidInterval(format!(
                    "({}, {}) is not an interval of [0,1]",
                    format_rational(a),
                    format_rational(b)
                )));
            }
            set = set.union(&PointSet::open(a, b));
        }
        Ok(RegOpen::regularize(&set))
    }

    /// `Int(Cl(set))`.
    pub fn regularize(set: &PointSet) -> RegOpen {
        RegOpen::from_open_set(&set.closure().interior())
    }

    /// Reads the components of an open set.
    fn from_open_set(set: &PointSet) -> RegOpen {
        debug_assert!(set.is_open());
        RegOpen {
            intervals: set.pieces().into_iter().map(|p| (p.lo, p.hi)).collect(),
        }
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    pub fn is_zero(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == RegOpen::one()
    }

    /// The represented set, which is its own interior.
    pub fn to_set(&self) -> PointSet {
        let one = Rational::one();
        self.intervals.iter().fold(PointSet::empty(), |acc, (lo, hi)| {
            acc.union(&PointSet::interval(lo, hi, lo.is_zero(), *hi == one))
        })
    }

    pub fn interior(&self) -> PointSet {
        self.to_set()
    }

    pub fn closure(&self) -> PointSet {
        self.intervals
            .iter()
            .fold(PointSet::empty(), |acc, (lo, hi)| acc.union(&PointSet::closed(lo, hi)))
    }

    /// `Cl ∖ Int`: the interval endpoints other than `0` and `1`.
    pub fn boundary(&self) -> Vec<Rational> {
        self.closure()
            .difference(&self.interior())
            .as_finite()
            .expect("boundary of a regular open set is finite")
    }

    pub fn contains(&self, p: &Rational) -> bool {
        self.intervals.iter().any(|(lo, hi)| {
            (lo < p || (lo.is_zero() && p.is_zero())) && (p < hi || (hi.is_one() && p.is_one()))
        })
    }

    pub fn meet(&self, other: &RegOpen) -> RegOpen {
        RegOpen::from_open_set(&self.to_set().intersection(&other.to_set()))
    }

    pub fn join(&self, other: &RegOpen) -> RegOpen {
        RegOpen::from_open_set(&self.closure().union(&other.closure()).interior())
    }

    /// `X ∖ Cl(self)`.
    pub fn complement(&self) -> RegOpen {
        RegOpen::from_open_set(&self.closure().complement())
    }

    /// `self ≤ other` as sets.
    pub fn le(&self, other: &RegOpen) -> bool {
        self.to_set().is_subset(&other.to_set())
    }

    /// All endpoints dyadic.
    pub fn is_dyadic(&self) -> bool {
        self.intervals.iter().all(|(a, b)| is_dyadic(a) && is_dyadic(b))
    }

    /// Largest denominator exponent among dyadic endpoints.
    pub fn dyadic_depth(&self) -> Option<u32> {
        self.intervals
            .iter()
            .flat_map(|(a, b)| [a, b])
            .map(crate::scalar::dyadic_depth)
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }

    /// The regularized union of the open depth-`depth` dyadic cells selected
    /// by `mask` (bit `j` is the cell `(j/2^D, (j+1)/2^D)`).
    pub fn from_grid_mask(depth: u32, mask: u64) -> RegOpen {
        let h = pow2_recip(depth);
        let raw: Vec<(Rational, Rational)> = (0..1u64 << depth)
            .filter(|j| mask >> j & 1 == 1)
            .map(|j| {
                let lo = &h * Rational::from_integer(j.into());
                (lo.clone(), lo + &h)
            })
            .collect();
        RegOpen::new(&raw).expect("grid cells lie in [0,1]")
    }

    /// Every regular open set with endpoints on the depth-`depth` dyadic
    /// grid, one per subset of cells.
    pub fn grid_elements(depth: u32) -> Vec<RegOpen> {
        assert!(depth <= 4, "grid enumeration is exponential in 2^depth");
        (0..1u64 << (1u64 << depth))
            .map(|mask| RegOpen::from_grid_mask(depth, mask))
            .collect()
    }
}

/// `(meet, join, complement of r)`.
pub fn reg_ops(r: &RegOpen, s: &RegOpen) -> (RegOpen, RegOpen, RegOpen) {
    (r.meet(s), r.join(s), r.complement())
}

/// `(Int, Cl, Bd)`.
pub fn interior_closure_boundary(r: &RegOpen) -> (PointSet, PointSet, Vec<Rational>) {
    (r.interior(), r.closure(), r.boundary())
}

impl fmt::Display for RegOpen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_set())
    }
}

impl fmt::Debug for RegOpen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RegOpen({self})")
    }
}

/// How random elements are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampler {
    /// Up to three raw intervals with endpoints on the depth-`depth` grid.
    Dyadic { depth: u32 },
    /// Endpoints with denominators up to `max_denominator`.
    Rational { max_denominator: i64 },
}

impl Sampler {
    fn endpoint(&self, rng: &mut SweepRng) -> Rational {
        match *self {
            Sampler::Dyadic { depth } => {
                let cells = 1i64 << depth;
                frac(rng.gen_range(0..=cells), cells)
            }
            Sampler::Rational { max_denominator } => {
                let d = rng.gen_range(1..=max_denominator.max(1));
                frac(rng.gen_range(0..=d), d)
            }
        }
    }

    pub fn sample(&self, rng: &mut SweepRng) -> RegOpen {
        let count = rng.gen_range(0..=3);
        let raw: Vec<(Rational, Rational)> = (0..count)
            .map(|_| {
                let (a, b) = (self.endpoint(rng), self.endpoint(rng));
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        RegOpen::new(&raw).expect("sampled endpoints lie in [0,1]")
    }
}

/// Outcome of the regular-open law sweep.
#[derive(Clone, Debug, Default)]
pub struct RegLawReport {
    pub pairs_checked: usize,
    pub triples_checked: usize,
    /// Pairs with `Cl(r∧s) ⊊ Cl(r) ∩ Cl(s)`.
    pub strict_closure_meets: usize,
    /// Pairs with `Int(r∨s) ⊋ Int(r) ∪ Int(s)`.
    pub strict_interior_joins: usize,
    /// First strictness witness of the join inclusion.
    pub join_witness: Option<(RegOpen, RegOpen)>,
    pub violations: Vec<String>,
}

impl RegLawReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn fail(&mut self, law: &str, items: &[&RegOpen]) {
        let shown: Vec<String> = items.iter().map(|r| r.to_string()).collect();
        self.violations.push(format!("{law} fails at {}", shown.join(" ; ")));
    }

    fn check_single(&mut self, r: &RegOpen) {
        if RegOpen::regularize(&r.to_set()) != *r {
            self.fail("idempotent regularization", &[r]);
        }
        if !r.to_set().is_regular_open() {
            self.fail("Int(Cl(r)) = r", &[r]);
        }
        if r.complement().complement() != *r {
            self.fail("double complement", &[r]);
        }
        if !r.meet(&r.complement()).is_zero() || !r.join(&r.complement()).is_one() {
            self.fail("complement laws", &[r]);
        }
        if r.meet(&RegOpen::one()) != *r || r.join(&RegOpen::zero()) != *r {
            self.fail("identity laws", &[r]);
        }
    }

    fn check_pair(&mut self, r: &RegOpen, s: &RegOpen) {
        self.pairs_checked += 1;
        let (meet, join) = (r.meet(s), r.join(s));
        if meet != s.meet(r) || join != s.join(r) {
            self.fail("commutativity", &[r, s]);
        }
        if r.meet(&join) != *r || r.join(&meet) != *r {
            self.fail("absorption", &[r, s]);
        }
        if meet.complement() != r.complement().join(&s.complement()) {
            self.fail("De Morgan", &[r, s]);
        }
        let cl_meet = meet.closure();
        let cl_both = r.closure().intersection(&s.closure());
        if !cl_meet.is_subset(&cl_both) {
            self.fail("Cl(r∧s) ⊆ Cl(r) ∩ Cl(s)", &[r, s]);
        } else if cl_meet != cl_both {
            self.strict_closure_meets += 1;
        }
        let int_join = join.interior();
        let int_both = r.interior().union(&s.interior());
        if !int_both.is_subset(&int_join) {
            self.fail("Int(r∨s) ⊇ Int(r) ∪ Int(s)", &[r, s]);
        } else if int_join != int_both {
            self.strict_interior_joins += 1;
            if self.join_witness.is_none() {
                self.join_witness = Some((r.clone(), s.clone()));
            }
        }
        let int_le = r.interior().is_subset(&s.interior());
        if int_le != r.closure().is_subset(&s.closure()) || int_le != (meet == *r) {
            self.fail("Int(r) ⊆ Int(s) ⟺ Cl(r) ⊆ Cl(s)", &[r, s]);
        }
    }

    fn check_triple(&mut self, r: &RegOpen, s: &RegOpen, t: &RegOpen) {
        self.triples_checked += 1;
        if r.meet(&s.meet(t)) != r.meet(s).meet(t) || r.join(&s.join(t)) != r.join(s).join(t) {
            self.fail("associativity", &[r, s, t]);
        }
        if r.meet(&s.join(t)) != r.meet(s).join(&r.meet(t)) {
            self.fail("distributivity of ∧ over ∨", &[r, s, t]);
        }
        if r.join(&s.meet(t)) != r.join(s).meet(&r.join(t)) {
            self.fail("distributivity of ∨ over ∧", &[r, s, t]);
        }
    }
}

/// Checks the Boolean algebra laws and the interior/closure inclusions.
///
/// Pairs are exhaustive on the depth-`exhaustive_depth` grid, triples on the
/// grid one level coarser; then `iterations` random triples are drawn.
pub fn verify_reg_laws(sampler: Sampler, iterations: usize, exhaustive_depth: u32, seed: u64) -> RegLawReport {
    let mut report = RegLawReport::default();
    let grid = RegOpen::grid_elements(exhaustive_depth);
    for r in &grid {
        report.check_single(r);
        for s in &grid {
            report.check_pair(r, s);
        }
    }
    let coarse = RegOpen::grid_elements(exhaustive_depth.saturating_sub(1));
    for r in &coarse {
        for s in &coarse {
            for t in &coarse {
                report.check_triple(r, s, t);
            }
        }
    }
    let mut rng = random::rng(seed);
    for _ in 0..iterations {
        let (r, s, t) = (sampler.sample(&mut rng), sampler.sample(&mut rng), sampler.sample(&mut rng));
        report.check_single(&r);
        report.check_pair(&r, &s);
        report.check_triple(&r, &s, &t);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn reg(raw: &[(i64, i64, i64, i64)]) -> RegOpen {
        let raw: Vec<(Rational, Rational)> = raw
            .iter()
            .map(|&(a, b, c, d)| (frac(a, b), frac(c, d)))
            .collect();
        RegOpen::new(&raw).unwrap()
    }

    #[test]
    fn regularization() {
        assert!(reg(&[(0, 1, 1, 2), (1, 2, 1, 1)]).is_one());
        assert!(reg(&[(1, 4, 1, 4)]).is_zero());
        let r = reg(&[(0, 1, 1, 2)]);
        assert_eq!(r.to_string(), "[0, 1/2)");
        assert!(r.contains(&int(0)));
        assert!(!r.contains(&frac(1, 2)));
        assert!(RegOpen::new(&[(frac(-1, 2), frac(1, 2))]).is_err());
        assert!(RegOpen::new(&[(frac(1, 2), frac(3, 2))]).is_err());
    }

    #[test]
    fn operations() {
        let r = reg(&[(0, 1, 1, 2)]);
        let rc = r.complement();
        assert_eq!(rc.to_string(), "(1/2, 1]");
        assert!(r.join(&rc).is_one());
        assert!(r.meet(&rc).is_zero());
        let s = reg(&[(1, 4, 1, 1)]);
        let (meet, join, _) = reg_ops(&r, &s);
        assert_eq!(meet.to_string(), "(1/4, 1/2)");
        assert!(join.is_one());
    }

    #[test]
    fn closure_and_boundary() {
        let (_, cl, bd) = interior_closure_boundary(&reg(&[(0, 1, 1, 2)]));
        assert_eq!(cl.to_string(), "[0, 1/2]");
        assert_eq!(bd, vec![frac(1, 2)]);
        let (_, cl, bd) = interior_closure_boundary(&RegOpen::zero());
        assert!(cl.is_empty() && bd.is_empty());
        assert_eq!(reg(&[(1, 4, 3, 4)]).boundary(), vec![frac(1, 4), frac(3, 4)]);
        assert!(RegOpen::one().boundary().is_empty());
    }

    #[test]
    fn grid_enumeration() {
        let g = RegOpen::grid_elements(2);
        assert_eq!(g.len(), 16);
        let distinct: std::collections::HashSet<_> = g.iter().collect();
        assert_eq!(distinct.len(), 16);
        assert_eq!(RegOpen::from_grid_mask(2, 0b0110).to_string(), "(1/4, 3/4)");
        assert_eq!(reg(&[(1, 8, 1, 2)]).dyadic_depth(), Some(3));
        assert_eq!(reg(&[(1, 3, 1, 2)]).dyadic_depth(), None);
    }

    #[test]
    fn law_sweep_small() {
        let report = verify_reg_laws(Sampler::Rational { max_denominator: 6 }, 50, 2, 3);
        assert!(report.passed(), "{:?}", report.violations);
        assert!(report.strict_interior_joins > 0);
        assert!(report.strict_closure_meets > 0);
        let (r, s) = report.join_witness.unwrap();
        assert!(r.join(&s).interior() != r.to_set().union(&s.to_set()));
    }
}
