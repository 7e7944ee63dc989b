//! The finite spectral space of the commuting projections `Q_x`.
//!
//! The projections are jointly diagonal in the Walsh basis, so the spectral
//! space is the set of Walsh supports `M ⊆ {cells}`. Each support is one
//! atom, with multiplicity `Π_{i∈M}(k_i − 1)`, and `Q_x` acts as the
//! indicator of `S_x = {M : M ⊆ x}`. A σ-field on this finite space is a
//! partition of the atoms.

use num_traits::{One, Zero};

use crate::boolalg::{BoolElem, FinitePowerAlgebra, Filter};
use crate::error::{Error, Result};
use crate::linalg;
use crate::model::{NoiseModel, RandomVariable};
use crate::partition::Partition;
use crate::scalar::Rational;

/// Atoms are indexed by the bit pattern of their support.
#[derive(Clone, Debug)]
pub struct SpectralSpace {
    alg: FinitePowerAlgebra,
    dims: Vec<u64>,
    measure: Vec<Rational>,
}

impl SpectralSpace {
    /// Groups the Walsh table of `model` by support.
    pub fn build(model: &NoiseModel) -> SpectralSpace {
        let alg = model.algebra();
        let atoms = 1usize << model.n_cells();
        let mut dims = vec![0u64; atoms];
        for m in 0..model.size() {
            dims[model.support(m).bits() as usize] += 1;
        }
        let n = Rational::from_integer(model.size().into());
        let measure = dims
            .iter()
            .map(|&d| Rational::from_integer(d.into()) / &n)
            .collect();
        SpectralSpace { alg, dims, measure }
    }

    pub fn algebra(&self) -> FinitePowerAlgebra {
        self.alg
    }

    pub fn atom_count(&self) -> usize {
        self.dims.len()
    }

    pub fn atoms(&self) -> impl Iterator<Item = BoolElem> + '_ {
        self.alg.elements()
    }

    /// Multiplicity of an atom.
    pub fn dim(&self, atom: BoolElem) -> u64 {
        self.dims[atom.bits() as usize]
    }

    /// Canonical mass `dim(M)/N`.
    pub fn mass(&self, atom: BoolElem) -> &Rational {
        &self.measure[atom.bits() as usize]
    }

    pub fn canonical_measure(&self) -> SpectralMeasure {
        SpectralMeasure {
            n_cells: self.alg.n_cells(),
            masses: self.measure.clone(),
        }
    }

    pub fn spectral_set(&self, x: BoolElem) -> SpectralSet {
        SpectralSet::from_fn(self.alg.n_cells(), |m| m.le(x))
    }

    /// The event `Γ ∖ e`.
    pub fn complement(&self, e: &SpectralSet) -> SpectralSet {
        SpectralSet::from_fn(self.alg.n_cells(), |m| !e.contains(m))
    }

    /// `Σ_x`: the partition of atoms generated by `{S_y : x ∨ y = 1}`.
    pub fn sigma_x(&self, x: BoolElem) -> Partition {
        let generators: Vec<SpectralSet> = self
            .alg
            .elements()
            .filter(|y| x.join(*y).is_one())
            .map(|y| self.spectral_set(y))
            .collect();
        Partition::by_key(self.atom_count(), |a| {
            generators.iter().map(|g| g.members[a]).collect::<Vec<bool>>()
        })
    }

    /// `Σ_x` read off directly: atoms are separated by `M ∩ x`.
    pub fn sigma_x_by_trace(&self, x: BoolElem) -> Partition {
        Partition::by_key(self.atom_count(), |a| a as u64 & x.bits())
    }

    /// `Σ_x ∨ Σ_y = Σ_{x∨y}`.
    pub fn verify_sigma_join(&self, x: BoolElem, y: BoolElem) -> bool {
        self.sigma_x(x).refine(&self.sigma_x(y)) == self.sigma_x(x.join(y))
    }

    /// `x ≤ y` implies `Σ_x ⊆ Σ_y`, i.e. `Σ_y` is finer.
    pub fn verify_sigma_monotone(&self, x: BoolElem, y: BoolElem) -> bool {
        !x.le(y) || self.sigma_x(y).is_finer_than(&self.sigma_x(x))
    }

    /// `S_{x′}` is a block of `Σ_x`.
    pub fn check_atom_of_sigma_x(&self, x: BoolElem) -> bool {
        let block = self.spectral_set(x.complement()).indices();
        self.sigma_x(x).contains_block(&block)
    }

    /// Independence of `Σ_x` and `Σ_y` under the canonical measure.
    pub fn verify_independence(&self, x: BoolElem, y: BoolElem) -> Result<IndependenceReport> {
        if !x.is_disjoint(y) {
            return Err(Error::Precondition(format!(
                "x ∧ y = {} is not 0",
                x.meet(y).label()
            )));
        }
        let (sx, sy) = (self.sigma_x(x), self.sigma_x(y));
        let mu = self.canonical_measure();
        let mut blocks_checked = 0;
        let mut independent = true;
        for a in sx.blocks() {
            let ma = mu.mass_of_indices(a);
            for b in sy.blocks() {
                let both: Vec<usize> = a.iter().copied().filter(|i| b.contains(i)).collect();
                independent &= mu.mass_of_indices(&both) == &ma * mu.mass_of_indices(b);
                blocks_checked += 1;
            }
        }
        let generates_all = sx.refine(&sy).is_discrete();
        Ok(IndependenceReport {
            independent,
            blocks_checked,
            generates_all,
            product_measure: mu.is_product(),
        })
    }

    /// `S_x ∩ S_y = S_{x∧y}` and `S_x ∪ S_y ⊆ S_{x∨y}` for a pair.
    pub fn spectral_set_report(&self, x: BoolElem, y: BoolElem) -> SpectralSetReport {
        let (sx, sy) = (self.spectral_set(x), self.spectral_set(y));
        let union = sx.union(&sy);
        let join = self.spectral_set(x.join(y));
        SpectralSetReport {
            meet_ok: sx.intersection(&sy) == self.spectral_set(x.meet(y)),
            union_contained: union.is_subset(&join),
            union_strict: union != join,
        }
    }

    /// The filter `Φ_s = {x : s ∈ S_x}` of a spectral point.
    pub fn spectral_filter(&self, atom: BoolElem) -> Filter {
        Filter::principal(atom)
    }

    /// `x ∈ Φ ∧ y ∈ Φ ⟺ x ∧ y ∈ Φ` for all pairs, with membership computed
    /// from spectral sets rather than from the generator.
    pub fn verify_filter_law(&self, atom: BoolElem) -> bool {
        let member = |x: BoolElem| self.spectral_set(x).contains(atom);
        let filter = self.spectral_filter(atom);
        self.alg.elements().all(|x| {
            member(x) == filter.member(x)
                && self
                    .alg
                    .elements()
                    .all(|y| (member(x) && member(y)) == member(x.meet(y)))
        })
    }

    /// All atoms carry positive canonical mass, so any measure with the same
    /// null sets is equivalent to it.
    pub fn measure_class_unique(&self) -> bool {
        self.measure.iter().all(|m| *m > Rational::zero())
    }
}

/// An event of the spectral space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpectralSet {
    n_cells: usize,
    members: Vec<bool>,
}

impl SpectralSet {
    pub fn from_fn(n_cells: usize, f: impl Fn(BoolElem) -> bool) -> SpectralSet {
        let alg = FinitePowerAlgebra::new(n_cells).expect("cell count within range");
        SpectralSet {
            n_cells,
            members: alg.elements().map(f).collect(),
        }
    }

    pub fn from_atoms(n_cells: usize, atoms: &[BoolElem]) -> SpectralSet {
        SpectralSet::from_fn(n_cells, |m| atoms.contains(&m))
    }

    pub fn contains(&self, atom: BoolElem) -> bool {
        self.members[atom.bits() as usize]
    }

    pub fn atoms(&self) -> Vec<BoolElem> {
        self.indices()
            .into_iter()
            .map(|i| BoolElem::new(self.n_cells, i as u64).expect("index within range"))
            .collect()
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&i| self.members[i]).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn zip(&self, other: &SpectralSet, f: impl Fn(bool, bool) -> bool) -> SpectralSet {
        assert_eq!(self.n_cells, other.n_cells, "events of different spaces");
        SpectralSet {
            n_cells: self.n_cells,
            members: self.members.iter().zip(&other.members).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn union(&self, other: &SpectralSet) -> SpectralSet {
        self.zip(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &SpectralSet) -> SpectralSet {
        self.zip(other, |a, b| a && b)
    }

    pub fn is_subset(&self, other: &SpectralSet) -> bool {
        self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b)
    }

    pub fn is_disjoint(&self, other: &SpectralSet) -> bool {
        self.intersection(other).is_empty()
    }
}

/// A measure on the spectral space, one rational mass per atom.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralMeasure {
    n_cells: usize,
    masses: Vec<Rational>,
}

impl SpectralMeasure {
    /// `μ_ψ(M) = Σ_{support(m)=M} c_m² ‖e_m‖²`.
    pub fn of(model: &NoiseModel, psi: &RandomVariable) -> SpectralMeasure {
        let mut masses = vec![Rational::zero(); 1 << model.n_cells()];
        for (m, c) in model.coefficients(psi).nonzero() {
            masses[model.support(m).bits() as usize] += c * c * model.walsh_norm_sq(m);
        }
        SpectralMeasure {
            n_cells: model.n_cells(),
            masses,
        }
    }

    pub fn mass(&self, atom: BoolElem) -> &Rational {
        &self.masses[atom.bits() as usize]
    }

    pub fn masses(&self) -> &[Rational] {
        &self.masses
    }

    pub fn total(&self) -> Rational {
        self.masses.iter().sum()
    }

    pub fn mass_of(&self, e: &SpectralSet) -> Rational {
        self.mass_of_indices(&e.indices())
    }

    fn mass_of_indices(&self, indices: &[usize]) -> Rational {
        indices.iter().map(|&i| &self.masses[i]).sum()
    }

    /// Atoms with nonzero mass.
    pub fn support(&self) -> Vec<BoolElem> {
        (0..self.masses.len())
            .filter(|&i| !self.masses[i].is_zero())
            .map(|i| BoolElem::new(self.n_cells, i as u64).expect("index within range"))
            .collect()
    }

    /// Same null sets.
    pub fn equivalent(&self, other: &SpectralMeasure) -> bool {
        self.masses
            .iter()
            .zip(&other.masses)
            .all(|(a, b)| a.is_zero() == b.is_zero())
    }

    /// The normalized measure factors over cells:
    /// `μ(M) = Π_{i∈M} p_i Π_{i∉M} (1 − p_i)` with `p_i = μ(i ∈ M)`.
    pub fn is_product(&self) -> bool {
        let total = self.total();
        if total.is_zero() {
            return true;
        }
        let p: Vec<Rational> = (0..self.n_cells)
            .map(|i| {
                let hit: Rational = (0..self.masses.len())
                    .filter(|m| m >> i & 1 == 1)
                    .map(|m| &self.masses[m])
                    .sum();
                hit / &total
            })
            .collect();
        (0..self.masses.len()).all(|m| {
            let predicted = p.iter().enumerate().fold(Rational::one(), |acc, (i, pi)| {
                if m >> i & 1 == 1 {
                    acc * pi
                } else {
                    acc * (Rational::one() - pi)
                }
            });
            &self.masses[m] / &total == predicted
        })
    }
}

/// Report for one pair `x, y` on spectral sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectralSetReport {
    /// `S_x ∩ S_y = S_{x∧y}`.
    pub meet_ok: bool,
    /// `S_x ∪ S_y ⊆ S_{x∨y}`.
    pub union_contained: bool,
    pub union_strict: bool,
}

impl SpectralSetReport {
    pub fn passed(&self) -> bool {
        self.meet_ok && self.union_contained
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    /// `μ(A ∩ B) = μ(A) μ(B)` for all blocks `A ∈ Σ_x`, `B ∈ Σ_y`.
    pub independent: bool,
    pub blocks_checked: usize,
    /// `Σ_x ∨ Σ_y` separates all atoms.
    pub generates_all: bool,
    pub product_measure: bool,
}

/// `H(E)`: the span of Walsh vectors whose support lies in `E`.
pub fn subspace_of_event(model: &NoiseModel, e: &SpectralSet) -> Vec<Vec<Rational>> {
    (0..model.size())
        .filter(|&m| e.contains(model.support(m)))
        .map(|m| model.walsh_vector(m).into_values())
        .collect()
}

/// `H_x` as the range of the oracle conditional expectation.
pub fn range_of_projection(model: &NoiseModel, x: BoolElem) -> Vec<Vec<Rational>> {
    let n = model.size();
    let images: Vec<Vec<Rational>> = (0..n)
        .map(|w| model.project_oracle(x, &RandomVariable::unit(n, w)).into_values())
        .collect();
    linalg::span_basis(&images, n)
}

/// Lattice identities of `E ↦ H(E)` for one pair of events.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EventLatticeReport {
    pub intersection_ok: bool,
    pub sum_ok: bool,
    /// `H(E_1) ⟂ H(E_2)` whenever `E_1 ∩ E_2 = ∅`.
    pub orthogonal_ok: bool,
}

impl EventLatticeReport {
    pub fn passed(&self) -> bool {
        self.intersection_ok && self.sum_ok && self.orthogonal_ok
    }
}

pub fn verify_event_lattice(model: &NoiseModel, e1: &SpectralSet, e2: &SpectralSet) -> EventLatticeReport {
    let n = model.size();
    let h1 = subspace_of_event(model, e1);
    let h2 = subspace_of_event(model, e2);
    let intersection_ok = linalg::same_span(
        &linalg::intersection(&h1, &h2, n),
        &subspace_of_event(model, &e1.intersection(e2)),
        n,
    );
    let both: Vec<Vec<Rational>> = h1.iter().chain(&h2).cloned().collect();
    let sum_ok = linalg::same_span(&both, &subspace_of_event(model, &e1.union(e2)), n);
    let orthogonal_ok = !e1.is_disjoint(e2)
        || h1.iter().all(|u| {
            h2.iter().all(|v| {
                model
                    .inner_product(&RandomVariable::new(u.clone()), &RandomVariable::new(v.clone()))
                    .expect("same model")
                    .is_zero()
            })
        });
    EventLatticeReport {
        intersection_ok,
        sum_ok,
        orthogonal_ok,
    }
}

/// `H(S_x) = H_x`, exactly.
pub fn verify_event_of_spectral_set(model: &NoiseModel, space: &SpectralSpace, x: BoolElem) -> bool {
    linalg::same_span(
        &subspace_of_event(model, &space.spectral_set(x)),
        &range_of_projection(model, x),
        model.size(),
    )
}

/// `μ_ψ(S_x) = ‖Q_x ψ‖²` for every `x`.
pub fn verify_measure_of_projections(model: &NoiseModel, psi: &RandomVariable) -> bool {
    let space = SpectralSpace::build(model);
    let mu = SpectralMeasure::of(model, psi);
    mu.total() == model.norm_sq(psi)
        && model.algebra().elements().all(|x| {
            mu.mass_of(&space.spectral_set(x)) == model.norm_sq(&model.project_oracle(x, psi))
        })
}
