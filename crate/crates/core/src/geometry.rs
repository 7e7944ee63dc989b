//! Sample-point homomorphisms from dyadic regular open sets of `[0,1]` to
//! the cell algebra, and the spectral-set map they induce.
//!
//! Cell `i` is attached to a point `t_i ∈ (0,1)` with a non-dyadic
//! denominator, and `h(a) = {i : t_i ∈ a}`. Since no `t_i` can sit on the
//! boundary of a dyadic interval, `h` respects joins as well as meets.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;

use crate::boolalg::BoolElem;
use crate::error::{Error, Result};
use crate::model::NoiseModel;
use crate::random;
use crate::regopen::{PointSet, RegOpen, Sampler};
use crate::scalar::{format_rational, is_dyadic, pow2_recip, Rational};

/// Deepest base enumerated literally by [`Embedding::f_depth`].
pub const MAX_BASE_DEPTH: u32 = 10;

/// Search cap for the inner approximation and shrink chains.
const MAX_SEARCH_DEPTH: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    points: Vec<Rational>,
}

impl Embedding {
    /// One sample point per cell of `model`.
    pub fn new(model: &NoiseModel, points: Vec<Rational>) -> Result<Embedding> {
        if points.len() != model.n_cells() {
            return Err(Error::InvalidEmbedding(format!(
                "{} sample points for {} cells",
                points.len(),
                model.n_cells()
            )));
        }
        Embedding::from_points(points)
    }

    pub fn from_points(points: Vec<Rational>) -> Result<Embedding> {
        for (i, t) in points.iter().enumerate() {
            if !t.is_positive() || *t >= Rational::one() {
                return Err(Error::InvalidEmbedding(format!(
                    "sample point {} = {} is outside (0,1)",
                    i + 1,
                    format_rational(t)
                )));
            }
            if is_dyadic(t) {
                return Err(Error::InvalidEmbedding(format!(
                    "sample point on a potential boundary: {} = {} is dyadic",
                    i + 1,
                    format_rational(t)
                )));
            }
        }
        if let Some(i) = (1..points.len()).find(|&i| points[i - 1] >= points[i]) {
            return Err(Error::InvalidEmbedding(format!(
                "sample points must increase: {} ≥ {}",
                format_rational(&points[i - 1]),
                format_rational(&points[i])
            )));
        }
        Ok(Embedding { points })
    }

    pub fn n_cells(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    fn elem(&self, pred: impl Fn(&Rational) -> bool) -> BoolElem {
        let cells = (0..self.points.len()).filter(|&i| pred(&self.points[i]));
        BoolElem::from_cells(self.n_cells(), cells).expect("cell count checked")
    }

    /// `h(a) = {i : t_i ∈ a}`.
    pub fn h(&self, a: &RegOpen) -> BoolElem {
        self.elem(|t| a.contains(t))
    }

    /// Checks `h` on meets, joins and complements: exhaustively on the grid
    /// of depth `exhaustive_depth`, then on `random_pairs` pairs drawn from
    /// the depth-`random_depth` grid.
    pub fn verify_homomorphism(
        &self,
        exhaustive_depth: u32,
        random_depth: u32,
        random_pairs: usize,
        seed: u64,
    ) -> HomomorphismReport {
        let mut report = HomomorphismReport::default();
        let mut check = |a: &RegOpen, b: &RegOpen| {
            report.pairs_checked += 1;
            let (ha, hb) = (self.h(a), self.h(b));
            let ok = self.h(&a.meet(b)) == ha.meet(hb)
                && self.h(&a.join(b)) == ha.join(hb)
                && self.h(&a.complement()) == ha.complement();
            if !ok && report.counterexample.is_none() {
                report.counterexample = Some((a.clone(), b.clone()));
            }
        };
        let grid = RegOpen::grid_elements(exhaustive_depth);
        for a in &grid {
            for b in &grid {
                check(a, b);
            }
        }
        let sampler = Sampler::Dyadic { depth: random_depth };
        let mut rng = random::rng(seed);
        for _ in 0..random_pairs {
            let (a, b) = (sampler.sample(&mut rng), sampler.sample(&mut rng));
            check(&a, &b);
        }
        report
    }

    /// `F(M) = {t_i : i ∈ M}`.
    pub fn f_exact(&self, atom: BoolElem) -> Vec<Rational> {
        atom.cells().map(|i| self.points[i].clone()).collect()
    }

    /// Index of the open depth-`depth` cell containing `t_i`.
    fn cell_index(&self, i: usize, depth: u32) -> BigInt {
        let t = &self.points[i];
        (t.numer() << depth as usize) / t.denom()
    }

    /// `F_D(M)`: the complement of the union of `Int(a)` over base elements
    /// `a = (i/2^D, j/2^D)` with `Cl(a) ∩ F(M) = ∅`, evaluated literally
    /// over the base in the given order.
    pub fn f_depth(&self, atom: BoolElem, depth: u32, order: BaseOrder) -> Result<PointSet> {
        if depth > MAX_BASE_DEPTH {
            return Err(Error::Precondition(format!(
                "base depth {depth} exceeds {MAX_BASE_DEPTH}"
            )));
        }
        let cells = 1u64 << depth;
        let hits: Vec<u64> = atom
            .cells()
            .map(|i| {
                u64::try_from(self.cell_index(i, depth)).expect("cell index below 2^depth")
            })
            .collect();
        let mut covered = vec![false; 2 * cells as usize + 1];
        for (lo, hi) in DyadicBase::new(depth).elements(order) {
            // non-dyadic points lie in Cl((lo, hi)·2^-D) iff lo ≤ cell < hi
            if hits.iter().any(|&c| lo <= c && c < hi) {
                continue;
            }
            let first = if lo == 0 { 0 } else { 2 * lo as usize + 1 };
            let last = if hi == cells { 2 * cells as usize } else { 2 * hi as usize - 1 };
            covered[first..=last].iter_mut().for_each(|s| *s = true);
        }
        let complement: Vec<bool> = covered.iter().map(|c| !c).collect();
        Ok(PointSet::from_grid(depth, &complement))
    }

    /// Both descriptions of the spectral set of an atom at depth `depth`.
    pub fn spectral_set_map(&self, atom: BoolElem, depth: u32) -> Result<SpectralSetImage> {
        let exact = self.f_exact(atom);
        let approx = self.f_depth(atom, depth, BaseOrder::Forward)?;
        let contains_exact = PointSet::points(&exact).is_subset(&approx);
        let hausdorff = hausdorff_to_points(&approx, &exact);
        // closed cells of consecutive points stop touching once their
        // indices differ by two
        let cells: Vec<usize> = atom.cells().collect();
        let separating_depth = (0..MAX_SEARCH_DEPTH)
            .find(|&d| {
                cells.windows(2).all(|w| {
                    self.cell_index(w[1], d) - self.cell_index(w[0], d) >= BigInt::from(2)
                })
            })
            .unwrap_or(MAX_SEARCH_DEPTH);
        Ok(SpectralSetImage {
            exact,
            approx,
            depth,
            contains_exact,
            bound: pow2_recip(depth) * Rational::from_integer(2.into()),
            hausdorff,
            separating_depth,
        })
    }

    /// `S_{h(a)} = {M : F(M) ⊆ Cl(a)}` for a dyadic `a`.
    ///
    /// The right side is evaluated with `F_D` from the base enumeration at
    /// depth `max(depth(a), 1)`, which is exact there, in forward order and
    /// in a shuffled order; the closed form `F(M)` is checked as well.
    pub fn verify_3b1(&self, a: &RegOpen, seed: u64) -> Result<Verify3b1Report> {
        self.verify_3b1_many(std::slice::from_ref(a), seed)
    }

    /// [`Embedding::verify_3b1`] over many elements, sharing the `F_D`
    /// computations between elements of equal depth.
    pub fn verify_3b1_many(&self, elements: &[RegOpen], seed: u64) -> Result<Verify3b1Report> {
        let alg = crate::boolalg::FinitePowerAlgebra::new(self.n_cells())?;
        let mut table: HashMap<u32, Vec<PointSet>> = HashMap::new();
        let mut report = Verify3b1Report {
            elements_checked: 0,
            atoms_checked: 0,
            mismatches: Vec::new(),
            order_independent: true,
        };
        for a in elements {
            let depth = a
                .dyadic_depth()
                .ok_or_else(|| Error::Precondition(format!("{a} has non-dyadic endpoints")))?
                .max(1);
            if !table.contains_key(&depth) {
                let mut row = Vec::new();
                for m in alg.elements() {
                    let forward = self.f_depth(m, depth, BaseOrder::Forward)?;
                    let shuffled = self.f_depth(m, depth, BaseOrder::Shuffled(seed ^ u64::from(depth)))?;
                    report.order_independent &= forward == shuffled;
                    row.push(forward);
                }
                table.insert(depth, row);
            }
            let row = &table[&depth];
            let ha = self.h(a);
            let cl = a.closure();
            report.elements_checked += 1;
            for (m, f_d) in alg.elements().zip(row) {
                report.atoms_checked += 1;
                let lhs = m.le(ha);
                let rhs = f_d.is_subset(&cl);
                let closed_form = PointSet::points(&self.f_exact(m)).is_subset(&cl);
                if lhs != rhs || rhs != closed_form {
                    report.mismatches.push((a.clone(), m));
                }
            }
        }
        Ok(report)
    }

    /// `sup_n h(a_n) = 1` iff every atom has `F(M) ⊆ Cl(a_n)` for some `n`.
    pub fn monotone_limit_check(&self, chain: &[RegOpen]) -> Result<MonotoneLimitReport> {
        if chain.is_empty() {
            return Err(Error::Precondition("empty chain".into()));
        }
        if let Some(a) = chain.iter().find(|a| !a.is_dyadic()) {
            return Err(Error::Precondition(format!("{a} has non-dyadic endpoints")));
        }
        if let Some(i) = (1..chain.len()).find(|&i| !chain[i - 1].le(&chain[i])) {
            return Err(Error::Precondition(format!("chain decreases at step {}", i + 1)));
        }
        let sup = chain
            .iter()
            .fold(BoolElem::zero(self.n_cells()), |acc, a| acc.join(self.h(a)));
        let closures: Vec<PointSet> = chain.iter().map(RegOpen::closure).collect();
        let alg = crate::boolalg::FinitePowerAlgebra::new(self.n_cells())?;
        let uncovered = alg.elements().find(|&m| {
            let f = PointSet::points(&self.f_exact(m));
            !closures.iter().any(|cl| f.is_subset(cl))
        });
        let sup_is_one = sup.is_one();
        Ok(MonotoneLimitReport {
            sup,
            sup_is_one,
            all_atoms_covered: uncovered.is_none(),
            uncovered,
            equivalent: sup_is_one == uncovered.is_none(),
        })
    }

    /// `h_-(r) = sup{h(a) : a ∈ A, Cl(a) ⊆ Int(r)}`, found by descending
    /// through the dyadic base until the supremum stops growing at
    /// `{i : t_i ∈ Int(r)}`.
    pub fn inner_approx(&self, r: &RegOpen) -> InnerApprox {
        let target = self.h(r);
        let interior = r.interior();
        let mut depth = 0;
        loop {
            let h = pow2_recip(depth);
            let elem = self.elem(|t| {
                let j = Rational::from_integer((t.numer() << depth as usize) / t.denom());
                PointSet::closed(&(&h * &j), &(&h * (j + Rational::one()))).is_subset(&interior)
            });
            if elem == target || depth >= MAX_SEARCH_DEPTH {
                return InnerApprox {
                    elem,
                    depth,
                    reached: elem == target,
                };
            }
            depth += 1;
        }
    }

    pub fn boundary_dichotomy(&self, r: &RegOpen) -> DichotomyReport {
        let minus = self.inner_approx(r).elem;
        let minus_c = self.inner_approx(&r.complement()).elem;
        let join_is_one = minus.join(minus_c).is_one();
        let boundary = PointSet::points(&r.boundary());
        let on_boundary: Vec<usize> = (0..self.n_cells())
            .filter(|&i| boundary.contains(&self.points[i]))
            .collect();
        // every atom has positive canonical mass
        let hitting = |m: BoolElem| {
            !PointSet::points(&self.f_exact(m))
                .intersection(&boundary)
                .is_empty()
        };
        let witness = if self.n_cells() <= ATOM_SCAN_CELLS {
            crate::boolalg::FinitePowerAlgebra::new(self.n_cells())
                .expect("cell count checked")
                .elements()
                .find(|&m| hitting(m))
        } else {
            (0..self.n_cells())
                .map(|i| BoolElem::from_cells(self.n_cells(), [i]).expect("cell in range"))
                .find(|&m| hitting(m))
        };
        let equivalent = join_is_one == on_boundary.is_empty() && on_boundary.is_empty() == witness.is_none();
        DichotomyReport {
            h_minus: minus,
            h_minus_complement: minus_c,
            join_is_one,
            points_on_boundary: on_boundary,
            witness_atom: witness,
            equivalent,
            complementary: join_is_one.then(|| minus.complement() == minus_c),
        }
    }

    /// For a dyadic `a`, the chain `a_n` obtained by pulling every interior
    /// endpoint of `a` inward by `2^{-(d+n)}`. Checks `Cl(a_n) ⊆ Int(a)` and
    /// that `h(a_n′)` decreases to `h(a′)`.
    pub fn shrink_chain_check(&self, a: &RegOpen) -> Result<ShrinkReport> {
        let d = a
            .dyadic_depth()
            .ok_or_else(|| Error::Precondition(format!("{a} has non-dyadic endpoints")))?;
        let target = self.h(&a.complement());
        let interior = a.interior();
        let mut previous: Option<BoolElem> = None;
        let mut report = ShrinkReport {
            contained: true,
            decreasing: true,
            stabilized_at: None,
        };
        for n in 1..=MAX_SEARCH_DEPTH {
            let an = shrink(a, d + n);
            report.contained &= an.closure().is_subset(&interior);
            let hc = self.h(&an.complement());
            if let Some(p) = previous {
                report.decreasing &= hc.le(p);
            }
            report.decreasing &= target.le(hc);
            if hc == target {
                report.stabilized_at = Some(n);
                break;
            }
            previous = Some(hc);
        }
        Ok(report)
    }
}

/// Largest cell count for which [`Embedding::boundary_dichotomy`] scans all
/// atoms; beyond it singletons are scanned, which finds the same witnesses.
pub const ATOM_SCAN_CELLS: usize = 12;

/// `a` with interior endpoints moved inward by `2^{-depth}`; components that
/// vanish are dropped.
pub fn shrink(a: &RegOpen, depth: u32) -> RegOpen {
    let eps = pow2_recip(depth);
    let raw: Vec<(Rational, Rational)> = a
        .intervals()
        .iter()
        .filter_map(|(lo, hi)| {
            let lo = if lo.is_zero() { lo.clone() } else { lo + &eps };
            let hi = if hi.is_one() { hi.clone() } else { hi - &eps };
            (lo < hi).then_some((lo, hi))
        })
        .collect();
    RegOpen::new(&raw).expect("shrunk intervals stay in [0,1]")
}

/// Largest distance from a point of `set` to the finite set `points`, for
/// `points ⊆ set`. Zero when both are empty; `None` when only `points` is.
pub fn hausdorff_to_points(set: &PointSet, points: &[Rational]) -> Option<Rational> {
    if points.is_empty() {
        return set.is_empty().then(Rational::zero);
    }
    let dist = |y: &Rational| points.iter().map(|t| (y - t).abs()).min().expect("nonempty");
    let two = Rational::from_integer(2.into());
    let mids: Vec<Rational> = points.windows(2).map(|w| (&w[0] + &w[1]) / &two).collect();
    set.pieces()
        .iter()
        .flat_map(|p| {
            let inside: Vec<Rational> = mids
                .iter()
                .filter(|m| p.lo <= **m && **m <= p.hi)
                .cloned()
                .collect();
            [p.lo.clone(), p.hi.clone()].into_iter().chain(inside)
        })
        .map(|y| dist(&y))
        .max()
}

/// Order in which the base is enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseOrder {
    Forward,
    Shuffled(u64),
}

/// The dyadic base `A_0` at a fixed depth: all `(i/2^D, j/2^D)`, `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DyadicBase {
    depth: u32,
}

impl DyadicBase {
    pub fn new(depth: u32) -> DyadicBase {
        DyadicBase { depth }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn mesh(&self) -> Rational {
        pow2_recip(self.depth)
    }

    /// Index pairs `(i, j)`.
    pub fn elements(&self, order: BaseOrder) -> Vec<(u64, u64)> {
        let cells = 1u64 << self.depth;
        let mut out: Vec<(u64, u64)> = (0..cells)
            .flat_map(|i| (i + 1..=cells).map(move |j| (i, j)))
            .collect();
        if let BaseOrder::Shuffled(seed) = order {
            out.shuffle(&mut random::rng(seed));
        }
        out
    }

    pub fn regopen(&self, i: u64, j: u64) -> RegOpen {
        let h = self.mesh();
        RegOpen::new(&[(&h * Rational::from_integer(i.into()), &h * Rational::from_integer(j.into()))])
            .expect("base element lies in [0,1]")
    }

    pub fn len(&self) -> usize {
        let c = 1usize << self.depth;
        c * (c + 1) / 2
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug, Default)]
pub struct HomomorphismReport {
    pub pairs_checked: usize,
    pub counterexample: Option<(RegOpen, RegOpen)>,
}

impl HomomorphismReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct SpectralSetImage {
    pub exact: Vec<Rational>,
    pub approx: PointSet,
    pub depth: u32,
    /// `F(M) ⊆ F_D(M)`.
    pub contains_exact: bool,
    /// Hausdorff distance between `F_D(M)` and `F(M)`; `None` when exactly
    /// one of them is empty.
    pub hausdorff: Option<Rational>,
    /// `2^{1−D}`.
    pub bound: Rational,
    /// First depth at which `F_D(M)` has one component per point.
    pub separating_depth: u32,
}

impl SpectralSetImage {
    pub fn within_bound(&self) -> bool {
        self.contains_exact && self.hausdorff.as_ref().is_some_and(|d| *d <= self.bound)
    }
}

#[derive(Clone, Debug)]
pub struct Verify3b1Report {
    pub elements_checked: usize,
    pub atoms_checked: usize,
    pub mismatches: Vec<(RegOpen, BoolElem)>,
    /// Forward and shuffled base enumerations give the same `F_D`.
    pub order_independent: bool,
}

impl Verify3b1Report {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.order_independent
    }
}

#[derive(Clone, Debug)]
pub struct MonotoneLimitReport {
    pub sup: BoolElem,
    pub sup_is_one: bool,
    pub all_atoms_covered: bool,
    /// An atom whose spectral set no `Cl(a_n)` contains.
    pub uncovered: Option<BoolElem>,
    pub equivalent: bool,
}

#[derive(Clone, Debug)]
pub struct InnerApprox {
    pub elem: BoolElem,
    /// Base depth at which the supremum was reached.
    pub depth: u32,
    pub reached: bool,
}

#[derive(Clone, Debug)]
pub struct DichotomyReport {
    pub h_minus: BoolElem,
    pub h_minus_complement: BoolElem,
    pub join_is_one: bool,
    /// Cells whose sample point lies on `Bd(r)`.
    pub points_on_boundary: Vec<usize>,
    /// An atom `M` with `F(M) ∩ Bd(r) ≠ ∅`.
    pub witness_atom: Option<BoolElem>,
    pub equivalent: bool,
    /// `(h_-(r))′ = h_-(r′)`, evaluated when the join is `1`.
    pub complementary: Option<bool>,
}

impl DichotomyReport {
    pub fn passed(&self) -> bool {
        self.equivalent && self.complementary != Some(false)
    }
}

#[derive(Clone, Debug)]
pub struct ShrinkReport {
    pub contained: bool,
    pub decreasing: bool,
    pub stabilized_at: Option<u32>,
}

impl ShrinkReport {
    pub fn passed(&self) -> bool {
        self.contained && self.decreasing && self.stabilized_at.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn emb() -> Embedding {
        Embedding::from_points(vec![frac(1, 5), frac(1, 3), frac(2, 3)]).unwrap()
    }

    fn el(cells: &[usize]) -> BoolElem {
        BoolElem::from_cells(3, cells.iter().copied()).unwrap()
    }

    fn reg(a: Rational, b: Rational) -> RegOpen {
        RegOpen::new(&[(a, b)]).unwrap()
    }

    #[test]
    fn validation() {
        let model = NoiseModel::coins(3);
        assert!(Embedding::new(&model, vec![frac(1, 5), frac(1, 3), frac(2, 3)]).is_ok());
        assert!(Embedding::new(&model, vec![frac(1, 5), frac(1, 3)]).is_err());
        let err = Embedding::from_points(vec![frac(1, 4)]).unwrap_err();
        assert!(err.to_string().contains("potential boundary"));
        assert!(Embedding::from_points(vec![frac(1, 3), frac(1, 5)]).is_err());
        assert!(Embedding::from_points(vec![int(0)]).is_err());
    }

    #[test]
    fn h_examples() {
        let e = emb();
        assert_eq!(e.h(&reg(int(0), frac(1, 2))), el(&[0, 1]));
        assert!(e.h(&RegOpen::one()).is_one());
        assert!(e.verify_homomorphism(2, 4, 50, 1).passed());
    }

    #[test]
    fn spectral_set_images() {
        let e = emb();
        assert!(e.f_exact(el(&[])).is_empty());
        assert_eq!(e.f_exact(el(&[0, 2])), vec![frac(1, 5), frac(2, 3)]);
        let img = e.spectral_set_map(el(&[1]), 3).unwrap();
        assert_eq!(img.approx.to_string(), "[1/4, 3/8]");
        assert!(img.within_bound());
        let empty = e.spectral_set_map(el(&[]), 3).unwrap();
        assert!(empty.approx.is_empty());
        assert!(empty.within_bound());
        for d in 0..6 {
            let img = e.spectral_set_map(el(&[0, 1, 2]), d).unwrap();
            assert!(img.within_bound(), "depth {d}");
        }
        assert_eq!(e.spectral_set_map(el(&[0, 1]), 0).unwrap().separating_depth, 4);
    }

    #[test]
    fn spectral_set_of_h_is_closure_test() {
        let e = emb();
        for a in [reg(int(0), frac(1, 2)), RegOpen::one(), RegOpen::zero()] {
            assert!(e.verify_3b1(&a, 7).unwrap().passed(), "{a}");
        }
        assert!(e.verify_3b1(&reg(int(0), frac(1, 3)), 7).is_err());
    }

    #[test]
    fn monotone_limits() {
        let e = emb();
        let chain: Vec<RegOpen> = (1..6)
            .map(|n| reg(int(0), int(1) - pow2_recip(n)))
            .collect();
        let r = e.monotone_limit_check(&chain).unwrap();
        assert!(r.sup_is_one && r.all_atoms_covered && r.equivalent);
        let constant = vec![reg(int(0), frac(1, 2)); 3];
        let r = e.monotone_limit_check(&constant).unwrap();
        assert_eq!(r.sup, el(&[0, 1]));
        assert!(!r.sup_is_one && r.equivalent);
        assert_eq!(r.uncovered, Some(el(&[2])));
        assert!(e.monotone_limit_check(&[]).is_err());
        let decreasing = vec![RegOpen::one(), RegOpen::zero()];
        assert!(e.monotone_limit_check(&decreasing).is_err());
    }

    #[test]
    fn inner_approximation_and_dichotomy() {
        let e = emb();
        let r = reg(int(0), frac(1, 3));
        let a = e.inner_approx(&r);
        assert_eq!(a.elem, el(&[0]));
        assert!(a.reached);
        let d = e.boundary_dichotomy(&r);
        assert_eq!(d.h_minus.join(d.h_minus_complement), el(&[0, 2]));
        assert_eq!(d.witness_atom, Some(el(&[1])));
        assert!(d.passed() && d.complementary.is_none());

        let half = reg(int(0), frac(1, 2));
        assert_eq!(e.inner_approx(&half).elem, el(&[0, 1]));
        let d = e.boundary_dichotomy(&half);
        assert!(d.join_is_one && d.complementary == Some(true) && d.passed());

        let d = e.boundary_dichotomy(&RegOpen::zero());
        assert!(d.join_is_one && d.points_on_boundary.is_empty());
        assert!(e.inner_approx(&RegOpen::one()).elem.is_one());
    }

    #[test]
    fn shrink_chains() {
        let e = emb();
        for a in RegOpen::grid_elements(2) {
            let r = e.shrink_chain_check(&a).unwrap();
            assert!(r.passed(), "{a}: {r:?}");
        }
    }

    #[test]
    fn hausdorff_helper() {
        let set = PointSet::closed(&int(0), &frac(1, 2));
        assert_eq!(hausdorff_to_points(&set, &[frac(1, 8)]), Some(frac(3, 8)));
        assert_eq!(hausdorff_to_points(&set, &[int(0), frac(1, 2)]), Some(frac(1, 4)));
        assert_eq!(hausdorff_to_points(&PointSet::empty(), &[]), Some(int(0)));
    }
}
