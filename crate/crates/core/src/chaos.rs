//! First chaos space, classical/black classification, and the atomless
//! defect of a vector that is additive on a subalgebra.
//!
//! Everything here is exact. The first chaos is obtained by Gaussian
//! elimination on the operator equations `ψ = Q_x ψ + Q_{x′} ψ`, never by
//! reading it off the Walsh table; the Walsh description is only used as an
//! independent cross-check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::boolalg::{BoolElem, Subalgebra};
use crate::error::{Error, Result};
use crate::linalg;
use crate::model::{NoiseModel, RandomVariable, WalshCoeffs};
use crate::partition::Partition;
use crate::scalar::{rational_to_f64, Rational, FLOAT_TOLERANCE};

/// A spanning set of the first chaos space `H^(1)`.
#[derive(Clone, Debug)]
pub struct ChaosSubspace {
    size: usize,
    basis: Vec<RandomVariable>,
}

impl ChaosSubspace {
    fn from_vectors(size: usize, vectors: Vec<Vec<Rational>>) -> ChaosSubspace {
        ChaosSubspace {
            size,
            basis: vectors.into_iter().map(RandomVariable::new).collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RandomVariable] {
        &self.basis
    }

    fn rows(&self) -> Vec<Vec<Rational>> {
        self.basis.iter().map(|v| v.values().to_vec()).collect()
    }

    pub fn contains(&self, psi: &RandomVariable) -> bool {
        linalg::in_span(&self.rows(), psi.values(), self.size)
    }

    /// Exact equality with the span of `vectors`.
    pub fn same_span(&self, vectors: &[RandomVariable]) -> bool {
        let other: Vec<Vec<Rational>> = vectors.iter().map(|v| v.values().to_vec()).collect();
        linalg::same_span(&self.rows(), &other, self.size)
    }

    /// Every basis vector satisfies the additivity condition for all
    /// disjoint pairs of `B`, and has zero mean.
    pub fn verify(&self, model: &NoiseModel) -> bool {
        let full = model.algebra().full_subalgebra();
        self.basis.iter().all(|psi| {
            model.expectation(psi).is_zero() && additive_on_disjoint(model, psi, &full)
        })
    }
}

/// Matrix of `identity·I + Σ sign·Q_z` in the point basis, as a list of rows.
fn operator_matrix(model: &NoiseModel, terms: &[(BoolElem, i64)], identity: i64) -> Vec<Vec<Rational>> {
    let n = model.size();
    let mut rows = vec![vec![Rational::zero(); n]; n];
    for col in 0..n {
        let unit = RandomVariable::unit(n, col);
        let mut image = unit.scale(&Rational::from_integer(identity.into()));
        for &(z, sign) in terms {
            let q = model.project(z, &unit).scale(&Rational::from_integer(sign.into()));
            image = &image + &q;
        }
        for (row, v) in rows.iter_mut().zip(image.into_values()) {
            row[col] = v;
        }
    }
    rows
}

/// Rows of `I − Q_x − Q_{x′}`.
fn split_rows(model: &NoiseModel, x: BoolElem) -> Vec<Vec<Rational>> {
    operator_matrix(model, &[(x, -1), (x.complement(), -1)], 1)
}

/// Solves the first-chaos equations by exact elimination.
///
/// The constraints are `ψ = Q_x ψ + Q_{x′} ψ` for `x = 0` (which is
/// `Q_0 ψ = 0`) and for every singleton `x = {i}`. By the split criterion
/// these already force every Walsh support to be a single cell; the result
/// is cross-checked against the pairwise and all-splits systems in tests.
pub fn first_chaos_basis(model: &NoiseModel) -> ChaosSubspace {
    let alg = model.algebra();
    let mut rows = split_rows(model, alg.zero());
    for atom in alg.atoms() {
        rows.extend(split_rows(model, atom));
    }
    ChaosSubspace::from_vectors(model.size(), linalg::nullspace(&rows, model.size()))
}

/// The first chaos from the defining condition itself:
/// `Q_{x∨y} ψ = Q_x ψ + Q_y ψ` for every disjoint pair. Exponential in the
/// cell count; an oracle for small models.
pub fn first_chaos_basis_pairwise(model: &NoiseModel) -> ChaosSubspace {
    let alg = model.algebra();
    let mut rows = Vec::new();
    for x in alg.elements() {
        for y in alg.elements().filter(|y| y.is_disjoint(x)) {
            rows.extend(operator_matrix(model, &[(x.join(y), 1), (x, -1), (y, -1)], 0));
        }
    }
    ChaosSubspace::from_vectors(model.size(), linalg::nullspace(&rows, model.size()))
}

/// `{ψ : ψ = Q_x ψ + Q_{x′} ψ for all x ∈ B}`.
pub fn first_chaos_basis_all_splits(model: &NoiseModel) -> ChaosSubspace {
    let rows: Vec<Vec<Rational>> = model
        .algebra()
        .elements()
        .flat_map(|x| split_rows(model, x))
        .collect();
    ChaosSubspace::from_vectors(model.size(), linalg::nullspace(&rows, model.size()))
}

/// Walsh vectors whose support is a single cell.
pub fn walsh_first_chaos(model: &NoiseModel) -> Vec<RandomVariable> {
    (0..model.size())
        .filter(|&m| model.support(m).count() == 1)
        .map(|m| model.walsh_vector(m))
        .collect()
}

/// `Q_z ψ` for every element of `b`, indexed by block mask.
fn projections_on(model: &NoiseModel, psi: &RandomVariable, b: &Subalgebra) -> Vec<RandomVariable> {
    (0..b.size()).map(|mask| model.project(b.element(mask), psi)).collect()
}

/// `Q_{x∨y} ψ = Q_x ψ + Q_y ψ` for every disjoint pair `x, y ∈ b`.
pub fn additive_on_disjoint(model: &NoiseModel, psi: &RandomVariable, b: &Subalgebra) -> bool {
    let q = projections_on(model, psi, b);
    let size = b.size();
    (0..size).all(|x| {
        (0..size)
            .filter(|&y| x & y == 0)
            .all(|y| q[(x | y) as usize] == &q[x as usize] + &q[y as usize])
    })
}

/// `Q_0 ψ = 0` and `Q_{x∨y} ψ + Q_{x∧y} ψ = Q_x ψ + Q_y ψ` for all `x, y ∈ b`.
pub fn additive_lattice_form(model: &NoiseModel, psi: &RandomVariable, b: &Subalgebra) -> bool {
    let q = projections_on(model, psi, b);
    if !q[0].is_zero() {
        return false;
    }
    let size = b.size();
    (0..size).all(|x| {
        (0..size).all(|y| {
            &q[(x | y) as usize] + &q[(x & y) as usize] == &q[x as usize] + &q[y as usize]
        })
    })
}

/// Additivity of `ψ` on the subalgebra `b`. A vector with `Q_0 ψ ≠ 0` is
/// never additive (take `x = y = 0`). The disjoint-pair and lattice forms
/// are both evaluated and must agree.
pub fn satisfies_additivity(model: &NoiseModel, psi: &RandomVariable, b: &Subalgebra) -> bool {
    if !model.expectation(psi).is_zero() {
        return false;
    }
    let disjoint = additive_on_disjoint(model, psi, b);
    debug_assert_eq!(disjoint, additive_lattice_form(model, psi, b));
    disjoint
}

/// `‖Q_atom ψ‖` for one atom of the subalgebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomNorm {
    pub atom: BoolElem,
    pub norm_sq: Rational,
    pub norm: f64,
}

/// One evaluation of the bound `|E(ψ ξ η)| ≤ δ ‖ξ‖ ‖η‖` at a split `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct DefectWitness {
    pub x: BoolElem,
    pub passed: bool,
    /// Supremum of `|E(ψ ξ η)|` over unit `ξ, η`, estimated in floats.
    pub attained: f64,
}

/// The atomless defect `δ = max_atom ‖Q_atom ψ‖` of a `b`-additive vector.
#[derive(Clone, Debug, PartialEq)]
pub struct DefectCertificate {
    pub delta_sq: Rational,
    pub delta: f64,
    pub atoms: Vec<AtomNorm>,
    /// Bound checks at every `x ∈ B` (up to [`WITNESS_CELLS`] cells) or at
    /// every element of `b` beyond that.
    pub witnesses: Vec<DefectWitness>,
    /// Minimum over all partitions of unity of `b` of the largest squared
    /// part norm, when `b` has at most five atoms.
    pub brute_force_min_sq: Option<Rational>,
}

impl DefectCertificate {
    /// The finest partition attains the brute-force minimum (or there was
    /// no brute force).
    pub fn finest_is_minimal(&self) -> bool {
        self.brute_force_min_sq
            .as_ref()
            .is_none_or(|m| *m == self.delta_sq)
    }
}

/// Largest brute-force atom count for the partition minimization.
pub const BRUTE_FORCE_ATOMS: usize = 5;

/// Largest cell count for which witnesses cover all of `B`.
pub const WITNESS_CELLS: usize = 6;

pub fn atomless_defect(model: &NoiseModel, psi: &RandomVariable, b: &Subalgebra) -> Result<DefectCertificate> {
    if !satisfies_additivity(model, psi, b) {
        return Err(Error::Precondition("additivity on b fails".into()));
    }
    let coeffs = model.coefficients(psi);
    let atoms: Vec<AtomNorm> = b
        .atoms()
        .iter()
        .map(|&atom| {
            let norm_sq = model.projected_norm_sq(atom, &coeffs);
            let norm = rational_to_f64(&norm_sq).sqrt();
            AtomNorm { atom, norm_sq, norm }
        })
        .collect();
    let delta_sq = atoms
        .iter()
        .map(|a| a.norm_sq.clone())
        .max()
        .unwrap_or_else(Rational::zero);
    let splits: Vec<BoolElem> = if model.n_cells() <= WITNESS_CELLS {
        model.algebra().elements().collect()
    } else {
        b.elements().collect()
    };
    let witnesses = splits
        .into_iter()
        .map(|x| {
            let r = bound_report(model, &coeffs, &delta_sq, x);
            DefectWitness { x, passed: r.passed(), attained: r.sigma_max }
        })
        .collect();
    Ok(DefectCertificate {
        delta: rational_to_f64(&delta_sq).sqrt(),
        delta_sq,
        atoms,
        witnesses,
        brute_force_min_sq: brute_force_min_defect(model, psi, b),
    })
}

/// `min over partitions of unity {x_i} of max_i ‖Q_{x_i} ψ‖²`, by
/// enumeration; `None` beyond [`BRUTE_FORCE_ATOMS`] atoms.
pub fn brute_force_min_defect(model: &NoiseModel, psi: &RandomVariable, b: &Subalgebra) -> Option<Rational> {
    if b.atom_count() > BRUTE_FORCE_ATOMS {
        return None;
    }
    let coeffs = model.coefficients(psi);
    b.partitions_of_unity()
        .iter()
        .map(|parts| {
            parts
                .iter()
                .map(|&p| model.projected_norm_sq(p, &coeffs))
                .max()
                .unwrap_or_else(Rational::zero)
        })
        .min()
}

/// Outcome of checking `|E(ψ ξ η)| ≤ δ ‖ξ‖ ‖η‖` for `ξ ∈ H_x ⊖ H_0`,
/// `η ∈ H_{x′} ⊖ H_0`.
#[derive(Clone, Debug)]
pub struct DefectBoundReport {
    pub x: BoolElem,
    pub delta_sq: Rational,
    pub delta: f64,
    /// Largest `E(ψ ξ η)²` over normalized Walsh pairs, exact.
    pub max_entry_sq: Rational,
    /// Every normalized Walsh pair satisfies the bound (exact).
    pub entrywise_ok: bool,
    /// Power-iteration estimate of the supremum over unit `ξ, η`.
    pub sigma_max: f64,
    /// `sigma_max ≤ δ + 1e-9`.
    pub spectral_ok: bool,
    /// Exact certificate that the supremum is at most `δ`.
    pub exact_ok: bool,
    /// The supremum reaches `δ` within tolerance.
    pub tight: bool,
    /// Walsh indices `(ξ, η)` of the worst pair, when the bound fails.
    pub counterexample: Option<(usize, usize)>,
}

impl DefectBoundReport {
    pub fn passed(&self) -> bool {
        self.entrywise_ok && self.spectral_ok && self.exact_ok
    }
}

pub fn defect_bound_check(
    model: &NoiseModel,
    psi: &RandomVariable,
    b: &Subalgebra,
    x: BoolElem,
) -> Result<DefectBoundReport> {
    if !satisfies_additivity(model, psi, b) {
        return Err(Error::Precondition("additivity on b fails".into()));
    }
    let coeffs = model.coefficients(psi);
    let delta_sq = b
        .atoms()
        .iter()
        .map(|&a| model.projected_norm_sq(a, &coeffs))
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(bound_report(model, &coeffs, &delta_sq, x))
}

fn bound_report(model: &NoiseModel, coeffs: &WalshCoeffs, delta_sq: &Rational, x: BoolElem) -> DefectBoundReport {
    let delta = rational_to_f64(delta_sq).sqrt();
    let xc = x.complement();
    let restrict = |m: usize, to: BoolElem| -> usize {
        let digits: Vec<usize> = model
            .coords(m)
            .iter()
            .enumerate()
            .map(|(i, &d)| if to.contains(i) { d } else { 0 })
            .collect();
        model.index(&digits)
    };
    let left: Vec<usize> = (0..model.size())
        .filter(|&m| !model.support(m).is_zero() && model.support(m).le(x))
        .collect();
    let right: Vec<usize> = (0..model.size())
        .filter(|&m| !model.support(m).is_zero() && model.support(m).le(xc))
        .collect();
    let position = |list: &[usize], m: usize| list.binary_search(&m).expect("restricted index");

    // Ĉ[j][k] = c_m with m = j ∨ k
    let mut chat = vec![vec![Rational::zero(); right.len()]; left.len()];
    let mut max_entry_sq = Rational::zero();
    let mut worst = None;
    for (m, c) in coeffs.nonzero() {
        let s = model.support(m);
        if s.is_disjoint(x) || s.is_disjoint(xc) {
            continue;
        }
        let (j, k) = (position(&left, restrict(m, x)), position(&right, restrict(m, xc)));
        chat[j][k] = c.clone();
        let entry_sq = c * c * model.walsh_norm_sq(m);
        if entry_sq > max_entry_sq {
            max_entry_sq = entry_sq;
            worst = Some((left[j], right[k]));
        }
    }
    let entrywise_ok = max_entry_sq <= *delta_sq;

    let left_norms: Vec<Rational> = left.iter().map(|&m| model.walsh_norm_sq(m)).collect();
    let right_norms: Vec<Rational> = right.iter().map(|&m| model.walsh_norm_sq(m)).collect();
    let dense: Vec<Vec<f64>> = chat
        .iter()
        .zip(&left_norms)
        .map(|(row, ln)| {
            row.iter()
                .zip(&right_norms)
                .map(|(c, rn)| rational_to_f64(c) * (rational_to_f64(ln) * rational_to_f64(rn)).sqrt())
                .collect()
        })
        .collect();
    let sigma_max = linalg::largest_singular_value(&dense);
    let spectral_ok = sigma_max <= delta + FLOAT_TOLERANCE;

    // δ² D_k⁻² − Ĉᵀ D_j² Ĉ ⪰ 0, congruent to δ² I − CᵀC
    let dim = right.len();
    let mut gram = vec![vec![Rational::zero(); dim]; dim];
    for (row, ln) in chat.iter().zip(&left_norms) {
        for (a, ca) in row.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b2, cb) in row.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                gram[a][b2] -= ca * cb * ln;
            }
        }
    }
    for (k, rn) in right_norms.iter().enumerate() {
        gram[k][k] += delta_sq / rn;
    }
    let exact_ok = linalg::is_positive_semidefinite(&gram);

    let passed = entrywise_ok && spectral_ok && exact_ok;
    DefectBoundReport {
        x,
        tight: sigma_max >= delta - FLOAT_TOLERANCE,
        delta_sq: delta_sq.clone(),
        delta,
        max_entry_sq,
        entrywise_ok,
        sigma_max,
        spectral_ok,
        exact_ok,
        counterexample: if passed { None } else { worst },
    }
}

/// `ψ = Q_x ψ + Q_{x′} ψ`, exactly.
pub fn split_check(model: &NoiseModel, psi: &RandomVariable, x: BoolElem) -> bool {
    *psi == &model.project(x, psi) + &model.project(x.complement(), psi)
}

/// Solution space of `ψ = Q_x ψ + Q_{x′} ψ`, by elimination.
pub fn split_subspace(model: &NoiseModel, x: BoolElem) -> Vec<RandomVariable> {
    linalg::nullspace(&split_rows(model, x), model.size())
        .into_iter()
        .map(RandomVariable::new)
        .collect()
}

/// The split subspace equals `(H_x ⊖ H_0) ⊕ (H_{x′} ⊖ H_0)`: the span of
/// Walsh vectors with nonempty support inside `x` or inside `x′`.
pub fn split_subspace_matches_walsh(model: &NoiseModel, x: BoolElem) -> bool {
    let solved: Vec<Vec<Rational>> = split_subspace(model, x)
        .into_iter()
        .map(RandomVariable::into_values)
        .collect();
    let walsh: Vec<Vec<Rational>> = (0..model.size())
        .filter(|&m| {
            let s = model.support(m);
            !s.is_zero() && (s.le(x) || s.le(x.complement()))
        })
        .map(|m| model.walsh_vector(m).into_values())
        .collect();
    linalg::same_span(&solved, &walsh, model.size())
}

/// `E ψ = 0` and `E(ψ ξ η) = 0` for all zero-mean Walsh vectors `ξ` of
/// `H_x` and `η` of `H_{x′}`.
pub fn product_test(model: &NoiseModel, psi: &RandomVariable, x: BoolElem) -> bool {
    ProductTest::new(model, x).holds(psi)
}

/// The functionals of [`product_test`] for a fixed `x`, as weight rows
/// `P(ω) ξ(ω) η(ω)` cleared of denominators, reusable across many `ψ`.
#[derive(Clone, Debug)]
pub struct ProductTest {
    rows: Vec<Vec<BigInt>>,
}

impl ProductTest {
    pub fn new(model: &NoiseModel, x: BoolElem) -> ProductTest {
        let side = |within: BoolElem| -> Vec<RandomVariable> {
            (0..model.size())
                .filter(|&m| !model.support(m).is_zero() && model.support(m).le(within))
                .map(|m| model.walsh_vector(m))
                .collect()
        };
        let left = side(x);
        let right = side(x.complement());
        let mass = RandomVariable::new(model.masses().to_vec());
        let mut rows = vec![integer_row(mass.values())];
        for xi in &left {
            let weighted = &mass * xi;
            rows.extend(right.iter().map(|eta| integer_row((&weighted * eta).values())));
        }
        ProductTest { rows }
    }

    pub fn holds(&self, psi: &RandomVariable) -> bool {
        let psi = integer_row(psi.values());
        self.rows.iter().all(|row| {
            row.iter()
                .zip(&psi)
                .filter(|(w, v)| !w.is_zero() && !v.is_zero())
                .map(|(w, v)| w * v)
                .sum::<BigInt>()
                .is_zero()
        })
    }
}

/// The row scaled by the least common multiple of its denominators.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
}

/// `x ↦ ‖Q_x ψ‖²` is additive on disjoint pairs of `B`.
pub fn norm_is_additive(model: &NoiseModel, psi: &RandomVariable) -> bool {
    let coeffs = model.coefficients(psi);
    let alg = model.algebra();
    let norms: Vec<Rational> = alg
        .elements()
        .map(|x| model.projected_norm_sq(x, &coeffs))
        .collect();
    alg.elements().all(|x| {
        alg.elements().filter(|y| y.is_disjoint(x)).all(|y| {
            norms[x.join(y).bits() as usize] == &norms[x.bits() as usize] + &norms[y.bits() as usize]
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// The first chaos generates the whole σ-field.
    Classical,
    /// The first chaos is `{0}`.
    Black,
    Intermediate,
}

#[derive(Clone, Debug)]
pub struct ClassifyReport {
    pub class: Classification,
    /// The model has a single point, so the whole noise is trivial and
    /// "black" holds only by the letter of the definition.
    pub degenerate: bool,
    pub chaos_dimension: usize,
    pub generated: Partition,
}

pub fn classify(model: &NoiseModel) -> ClassifyReport {
    let chaos = first_chaos_basis(model);
    let generated = sigma_field_generated(model.size(), chaos.basis());
    let class = if chaos.dimension() == 0 {
        Classification::Black
    } else if generated.is_discrete() {
        Classification::Classical
    } else {
        Classification::Intermediate
    };
    ClassifyReport {
        class,
        degenerate: model.size() <= 1,
        chaos_dimension: chaos.dimension(),
        generated,
    }
}

/// Common refinement of the level-set partitions of `vectors`.
pub fn sigma_field_generated(n_points: usize, vectors: &[RandomVariable]) -> Partition {
    Partition::by_key(n_points, |w| {
        vectors.iter().map(|v| v.values()[w].clone()).collect::<Vec<Rational>>()
    })
}

/// Sum of `Q_atom ψ` over the atoms of `b`; equals `ψ` for `b`-additive `ψ`.
pub fn atom_sum(model: &NoiseModel, psi: &RandomVariable, b: &Subalgebra) -> RandomVariable {
    b.atoms()
        .iter()
        .fold(RandomVariable::zeros(model.size()), |acc, &a| &acc + &model.project(a, psi))
}

/// Projects an arbitrary vector onto the `b`-additive vectors: keeps the
/// Walsh coefficients whose support lies inside a single atom of `b`.
pub fn make_additive(model: &NoiseModel, psi: &RandomVariable, b: &Subalgebra) -> RandomVariable {
    let mut coeffs = model.coefficients(psi);
    model.restrict_coeffs(&mut coeffs, |s| {
        !s.is_zero() && b.atoms().iter().any(|&a| s.le(a))
    });
    model.reconstruct(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::FinitePowerAlgebra;
    use crate::model::Cell;
    use crate::random;
    use crate::scalar::int;

    fn el(n: usize, cells: &[usize]) -> BoolElem {
        BoolElem::from_cells(n, cells.iter().copied()).unwrap()
    }

    fn four_coins() -> (NoiseModel, RandomVariable, Subalgebra) {
        let model = NoiseModel::coins(4);
        let r: Vec<RandomVariable> = (0..4).map(|i| model.sign(i)).collect();
        let psi = &(&r[0] * &r[1]) + &(&r[2] * &r[3]);
        let b = model
            .algebra()
            .subalgebra(vec![el(4, &[0, 1]), el(4, &[2, 3])])
            .unwrap();
        (model, psi, b)
    }

    #[test]
    fn first_chaos_dimensions() {
        let two = NoiseModel::coins(2);
        let chaos = first_chaos_basis(&two);
        assert_eq!(chaos.dimension(), 2);
        assert!(chaos.same_span(&[two.sign(0), two.sign(1)]));
        assert!(chaos.verify(&two));

        let three = NoiseModel::new(vec![Cell::uniform(3).unwrap()]).unwrap();
        assert_eq!(first_chaos_basis(&three).dimension(), 2);

        let empty = NoiseModel::coins(0);
        assert_eq!(first_chaos_basis(&empty).dimension(), 0);
    }

    #[test]
    fn chaos_systems_agree() {
        let model = NoiseModel::new(vec![
            Cell::uniform(3).unwrap(),
            Cell::new(vec![crate::scalar::frac(1, 3), crate::scalar::frac(2, 3)]).unwrap(),
        ])
        .unwrap();
        let a = first_chaos_basis(&model);
        assert!(a.same_span(first_chaos_basis_pairwise(&model).basis()));
        assert!(a.same_span(first_chaos_basis_all_splits(&model).basis()));
        assert!(a.same_span(&walsh_first_chaos(&model)));
    }

    #[test]
    fn additivity_examples() {
        let (model, psi, b) = four_coins();
        let full = model.algebra().full_subalgebra();
        assert!(satisfies_additivity(&model, &model.sign(0), &b));
        assert!(satisfies_additivity(&model, &model.sign(0), &full));
        assert!(satisfies_additivity(&model, &psi, &b));
        assert!(!satisfies_additivity(&model, &psi, &full));
        assert!(additive_lattice_form(&model, &psi, &b));
        assert!(!additive_lattice_form(&model, &psi, &full));
        let shifted = &psi + &model.constant(int(1));
        assert!(!satisfies_additivity(&model, &shifted, &b));
    }

    #[test]
    fn defect_examples() {
        let two = NoiseModel::coins(2);
        let psi = &two.sign(0) + &two.sign(1);
        let cert = atomless_defect(&two, &psi, &two.algebra().full_subalgebra()).unwrap();
        assert_eq!(cert.delta_sq, int(1));
        assert!(cert.finest_is_minimal());

        let zero = RandomVariable::zeros(4);
        let cert = atomless_defect(&two, &zero, &two.algebra().full_subalgebra()).unwrap();
        assert!(cert.delta_sq.is_zero());

        let (model, psi, b) = four_coins();
        let cert = atomless_defect(&model, &psi, &b).unwrap();
        assert_eq!(cert.delta_sq, int(1));
        assert_eq!(cert.delta, 1.0);
        assert!(cert.finest_is_minimal());
        assert_eq!(cert.witnesses.len(), 16);
        assert!(cert.witnesses.iter().all(|w| w.passed));

        let full = model.algebra().full_subalgebra();
        assert!(matches!(
            atomless_defect(&model, &psi, &full),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn defect_bound_is_tight_for_block_example() {
        let (model, psi, b) = four_coins();
        let report = defect_bound_check(&model, &psi, &b, el(4, &[0, 2])).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.tight);
        assert_eq!(report.max_entry_sq, int(1));
        assert!((report.sigma_max - 1.0).abs() < 1e-12);
        // ξ = r_1, η = r_2 attains the bound
        let e = model.expectation(&(&(&psi * &model.sign(0)) * &model.sign(1)));
        assert_eq!(e, int(1));
    }

    #[test]
    fn defect_bound_trivial_cases() {
        let model = NoiseModel::coins(3);
        let alg = model.algebra();
        let chaos_vec = &model.sign(0) + &model.sign(2);
        for x in alg.elements() {
            let r = defect_bound_check(&model, &chaos_vec, &alg.full_subalgebra(), x).unwrap();
            assert!(r.passed());
            assert!(r.max_entry_sq.is_zero());
            assert_eq!(r.sigma_max, 0.0);
        }
        // trivial subalgebra: δ = ‖ψ‖ and the bound is Cauchy–Schwarz
        let mut rng = random::rng(5);
        let psi = model.random_zero_mean(&mut rng);
        let trivial = alg.trivial_subalgebra();
        let cert = atomless_defect(&model, &psi, &trivial).unwrap();
        assert_eq!(cert.delta_sq, model.norm_sq(&psi));
        for x in alg.elements() {
            assert!(defect_bound_check(&model, &psi, &trivial, x).unwrap().passed());
        }
    }

    #[test]
    fn split_and_product_examples() {
        let two = NoiseModel::coins(2);
        let x = el(2, &[0]);
        let r1 = two.sign(0);
        let r1r2 = &two.sign(0) * &two.sign(1);
        let c = two.constant(int(3));
        assert!(split_check(&two, &r1, x));
        assert!(!split_check(&two, &r1r2, x));
        assert!(!split_check(&two, &c, x));
        assert!(product_test(&two, &r1, x));
        assert!(!product_test(&two, &r1r2, x));
        assert!(!product_test(&two, &two.constant(int(1)), x));
        for x in two.algebra().elements() {
            assert!(split_subspace_matches_walsh(&two, x));
        }
    }

    #[test]
    fn classification() {
        let two = classify(&NoiseModel::coins(2));
        assert_eq!(two.class, Classification::Classical);
        assert!(!two.degenerate);
        let empty = classify(&NoiseModel::coins(0));
        assert_eq!(empty.class, Classification::Black);
        assert!(empty.degenerate);
    }

    #[test]
    fn generated_sigma_fields() {
        let two = NoiseModel::coins(2);
        assert_eq!(sigma_field_generated(4, &[two.sign(0)]).block_count(), 2);
        assert_eq!(sigma_field_generated(4, &[]).block_count(), 1);
        assert!(sigma_field_generated(4, &[two.sign(0), two.sign(1)]).is_discrete());
    }

    #[test]
    fn chaos_norms_are_additive() {
        let model = NoiseModel::new(vec![Cell::uniform(3).unwrap(), Cell::fair_coin()]).unwrap();
        for v in first_chaos_basis(&model).basis() {
            assert!(norm_is_additive(&model, v));
        }
        let r = &model.sign(0) * &model.sign(1);
        let centered = &r - &model.constant(model.expectation(&r));
        assert!(!norm_is_additive(&model, &centered));
    }

    #[test]
    fn additive_projection_is_additive() {
        let model = NoiseModel::coins(4);
        let alg = FinitePowerAlgebra::new(4).unwrap();
        let mut rng = random::rng(9);
        for _ in 0..5 {
            let b = random::subalgebra(&mut rng, alg, 3);
            let psi = make_additive(&model, &model.random_variable(&mut rng), &b);
            assert!(satisfies_additivity(&model, &psi, &b));
            assert_eq!(atom_sum(&model, &psi, &b), psi);
        }
    }
}
