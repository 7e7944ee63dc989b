//! Finite product probability spaces and the projections `Q_x`.
//!
//! A model is a list of independent cells. Points of Ω are indexed in
//! mixed-radix row-major order with cell 0 varying slowest. For each cell the
//! constant vector and the indicators of outcomes `1..k` are orthogonalized
//! (without normalization) in the cell's weighted inner product; tensor
//! products of these vectors form the Walsh basis of `L2(Ω)`. Walsh vectors
//! share the point indexing: the multi-index `m` is stored at the index a
//! point with coordinates `m` would have.
//!
//! `Q_x` keeps exactly the Walsh coefficients whose support lies inside `x`.
//! [`Model::project_oracle`] computes the same operator as a naive
//! conditional expectation over the blocks of `F_x`.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed};
use rand::Rng;

use crate::boolalg::{BoolElem, FinitePowerAlgebra};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::random;
use crate::scalar::{format_rational, int, Rational, Scalar};

/// One independent factor of the product space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    probs: Vec<Rational>,
}

impl Cell {
    /// `probs` must have at least two entries, each strictly inside `(0,1)`,
    /// summing to exactly one. The error carries no cell index; callers that
    /// know it attach it.
    pub fn new(probs: Vec<Rational>) -> Result<Cell> {
        Cell::validated(0, probs)
    }

    fn validated(index: usize, probs: Vec<Rational>) -> Result<Cell> {
        if probs.len() < 2 {
            return Err(Error::InvalidCell {
                index,
                reason: format!("needs at least 2 outcomes, got {}", probs.len()),
            });
        }
        for (o, p) in probs.iter().enumerate() {
            if !p.is_positive() || *p >= Rational::one() {
                return Err(Error::InvalidCell {
                    index,
                    reason: format!("probability of outcome {o} is {}, not in (0,1)", format_rational(p)),
                });
            }
        }
        let sum: Rational = probs.iter().sum();
        if !sum.is_one() {
            return Err(Error::ProbabilitySum { sum });
        }
        Ok(Cell { probs })
    }

    /// Uniform cell with `k` outcomes.
    pub fn uniform(k: usize) -> Result<Cell> {
        let p = Rational::new(1.into(), (k.max(1) as i64).into());
        Cell::new(vec![p; k])
    }

    pub fn fair_coin() -> Cell {
        Cell::uniform(2).expect("fair coin")
    }

    pub fn k(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    /// The cell's Walsh vectors (row `m`, column = outcome) and their squared
    /// norms. Row 0 is the constant; row `j` is the indicator of outcome `j`
    /// minus its projection onto the earlier rows.
    pub fn walsh_vectors(&self) -> (Vec<Vec<Rational>>, Vec<Rational>) {
        let k = self.k();
        let dot = |u: &[Rational], v: &[Rational]| -> Rational {
            u.iter()
                .zip(v)
                .zip(&self.probs)
                .map(|((a, b), p)| a * b * p)
                .sum()
        };
        let mut vectors: Vec<Vec<Rational>> = vec![vec![int(1); k]];
        let mut norms: Vec<Rational> = vec![int(1)];
        for j in 1..k {
            let mut u: Vec<Rational> = (0..k).map(|o| int((o == j) as i64)).collect();
            for (v, n) in vectors.iter().zip(&norms) {
                let c = dot(&u, v) / n;
                for (ui, vi) in u.iter_mut().zip(v) {
                    *ui -= &c * vi;
                }
            }
            let n = dot(&u, &u);
            vectors.push(u);
            norms.push(n);
        }
        (vectors, norms)
    }
}

/// A real random variable on Ω, listed in point order.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomVariable<T = Rational> {
    values: Vec<T>,
}

impl<T: Scalar> RandomVariable<T> {
    pub fn new(values: Vec<T>) -> RandomVariable<T> {
        RandomVariable { values }
    }

    pub fn zeros(len: usize) -> RandomVariable<T> {
        RandomVariable {
            values: vec![T::zero(); len],
        }
    }

    pub fn constant(len: usize, c: T) -> RandomVariable<T> {
        RandomVariable { values: vec![c; len] }
    }

    pub fn unit(len: usize, at: usize) -> RandomVariable<T> {
        let mut v = RandomVariable::zeros(len);
        v.values[at] = T::one();
        v
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_negligible())
    }

    pub fn scale(&self, c: &T) -> RandomVariable<T> {
        RandomVariable {
            values: self.values.iter().map(|v| v.clone() * c.clone()).collect(),
        }
    }

    /// Equality up to the backend tolerance (exact for rationals).
    pub fn near(&self, other: &RandomVariable<T>) -> bool {
        self.len() == other.len() && self.values.iter().zip(&other.values).all(|(a, b)| a.near(b))
    }
}

impl<T: Scalar> Add for &RandomVariable<T> {
    type Output = RandomVariable<T>;

    fn add(self, rhs: &RandomVariable<T>) -> RandomVariable<T> {
        assert_eq!(self.len(), rhs.len());
        RandomVariable {
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &RandomVariable<T> {
    type Output = RandomVariable<T>;

    fn sub(self, rhs: &RandomVariable<T>) -> RandomVariable<T> {
        assert_eq!(self.len(), rhs.len());
        RandomVariable {
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

/// Pointwise product.
impl<T: Scalar> Mul for &RandomVariable<T> {
    type Output = RandomVariable<T>;

    fn mul(self, rhs: &RandomVariable<T>) -> RandomVariable<T> {
        assert_eq!(self.len(), rhs.len());
        RandomVariable {
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a.clone() * b.clone())
                .collect(),
        }
    }
}

/// Coefficients with respect to the unnormalized Walsh basis,
/// `c_m = ⟨ψ, e_m⟩ / ‖e_m‖²`, indexed like points.
#[derive(Clone, Debug, PartialEq)]
pub struct WalshCoeffs<T = Rational> {
    coeffs: Vec<T>,
}

impl<T: Scalar> WalshCoeffs<T> {
    pub fn new(coeffs: Vec<T>) -> WalshCoeffs<T> {
        WalshCoeffs { coeffs }
    }

    pub fn values(&self) -> &[T] {
        &self.coeffs
    }

    pub fn get(&self, m: usize) -> &T {
        &self.coeffs[m]
    }

    /// Nonzero coefficients as `(multi-index, value)` pairs.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &T)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_negligible())
    }
}

/// Finite product space with its Walsh table, generic over the numeric
/// backend.
#[derive(Clone, Debug)]
pub struct Model<T: Scalar = Rational> {
    cells: Vec<Cell>,
    radices: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
    masses: Vec<T>,
    cell_probs: Vec<Vec<T>>,
    cell_vectors: Vec<Vec<Vec<T>>>,
    cell_norms: Vec<Vec<T>>,
    /// Per-cell matrices taking values to coefficients and back.
    analysis: Vec<Vec<Vec<T>>>,
    synthesis: Vec<Vec<Vec<T>>>,
    supports: Vec<u64>,
}

/// Exact rational model (the default backend).
pub type NoiseModel = Model<Rational>;

/// Float model for sweeps beyond the exact backend's cap.
pub type FloatModel = Model<f64>;

/// Default cap on `|Ω|` for the exact backend.
pub const EXACT_POINT_CAP: usize = 4096;

impl<T: Scalar> Model<T> {
    pub fn new(cells: Vec<Cell>) -> Result<Model<T>> {
        if cells.len() > crate::boolalg::MAX_CELLS {
            return Err(Error::TooManyCells {
                max: crate::boolalg::MAX_CELLS,
                found: cells.len(),
            });
        }
        let radices: Vec<usize> = cells.iter().map(Cell::k).collect();
        let size = radices
            .iter()
            .try_fold(1usize, |acc, &k| acc.checked_mul(k))
            .ok_or_else(|| Error::Precondition("product space too large".into()))?;
        let mut strides = vec![1usize; radices.len()];
        for i in (0..radices.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * radices[i + 1];
        }
        let cell_probs: Vec<Vec<T>> = cells
            .iter()
            .map(|c| c.probs.iter().map(T::from_rational).collect())
            .collect();
        let mut cell_vectors = Vec::with_capacity(cells.len());
        let mut cell_norms = Vec::with_capacity(cells.len());
        for cell in &cells {
            let (vectors, norms) = cell.walsh_vectors();
            cell_vectors.push(
                vectors
                    .iter()
                    .map(|v| v.iter().map(T::from_rational).collect())
                    .collect(),
            );
            cell_norms.push(norms.iter().map(T::from_rational).collect());
        }
        let mut model = Model {
            cells,
            radices,
            strides,
            size,
            masses: Vec::new(),
            cell_probs,
            cell_vectors,
            cell_norms,
            analysis: Vec::new(),
            synthesis: Vec::new(),
            supports: Vec::new(),
        };
        for axis in 0..model.radices.len() {
            let k = model.radices[axis];
            let (p, v, n) = (&model.cell_probs[axis], &model.cell_vectors[axis], &model.cell_norms[axis]);
            model.analysis.push(
                (0..k)
                    .map(|m| (0..k).map(|o| p[o].clone() * v[m][o].clone() / n[m].clone()).collect())
                    .collect(),
            );
            model
                .synthesis
                .push((0..k).map(|o| (0..k).map(|m| v[m][o].clone()).collect()).collect());
        }
        model.masses = (0..size)
            .map(|w| {
                model
                    .coords(w)
                    .iter()
                    .enumerate()
                    .fold(T::one(), |acc, (i, &o)| acc * model.cell_probs[i][o].clone())
            })
            .collect();
        model.supports = (0..size)
            .map(|m| {
                model
                    .coords(m)
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d != 0)
                    .fold(0u64, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        Ok(model)
    }

    /// Validates raw probability lists, attaching the cell index to errors.
    pub fn from_probabilities(probs: Vec<Vec<Rational>>) -> Result<Model<T>> {
        let cells = probs
            .into_iter()
            .enumerate()
            .map(|(i, p)| Cell::validated(i, p))
            .collect::<Result<Vec<_>>>()?;
        Model::new(cells)
    }

    /// `n` fair coins.
    pub fn coins(n: usize) -> Model<T> {
        Model::new(vec![Cell::fair_coin(); n]).expect("fair coins")
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    /// `|Ω|`, which is also the dimension of `H`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn algebra(&self) -> FinitePowerAlgebra {
        FinitePowerAlgebra::new(self.n_cells()).expect("cell count checked at construction")
    }

    pub fn coords(&self, index: usize) -> Vec<usize> {
        self.radices
            .iter()
            .zip(&self.strides)
            .map(|(&k, &s)| index / s % k)
            .collect()
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    /// `P(ω)`.
    pub fn mass(&self, point: usize) -> &T {
        &self.masses[point]
    }

    pub fn masses(&self) -> &[T] {
        &self.masses
    }

    /// `support(m) = {i : m_i ≠ 0}`.
    pub fn support(&self, m: usize) -> BoolElem {
        BoolElem::from_bits_unchecked(self.n_cells(), self.supports[m])
    }

    pub fn walsh_norm_sq(&self, m: usize) -> T {
        self.coords(m)
            .iter()
            .enumerate()
            .fold(T::one(), |acc, (i, &d)| acc * self.cell_norms[i][d].clone())
    }

    /// The Walsh vector `e_m` as a random variable.
    pub fn walsh_vector(&self, m: usize) -> RandomVariable<T> {
        let digits = self.coords(m);
        let values = (0..self.size)
            .map(|w| {
                self.coords(w)
                    .iter()
                    .enumerate()
                    .fold(T::one(), |acc, (i, &o)| acc * self.cell_vectors[i][digits[i]][o].clone())
            })
            .collect();
        RandomVariable { values }
    }

    /// Walsh multi-indices whose support is exactly `support`.
    pub fn walsh_indices_with_support(&self, support: BoolElem) -> impl Iterator<Item = usize> + '_ {
        let bits = support.bits();
        (0..self.size).filter(move |&m| self.supports[m] == bits)
    }

    /// The ±1 sign of a coordinate: `+1` on outcome 0 and `−1` elsewhere.
    /// For a fair coin this is a zero-mean, unit-variance variable.
    pub fn sign(&self, cell: usize) -> RandomVariable<T> {
        let values = (0..self.size)
            .map(|w| {
                if self.coords(w)[cell] == 0 {
                    T::one()
                } else {
                    -T::one()
                }
            })
            .collect();
        RandomVariable { values }
    }

    pub fn constant(&self, c: T) -> RandomVariable<T> {
        RandomVariable::constant(self.size, c)
    }

    pub fn variable(&self, values: Vec<T>) -> Result<RandomVariable<T>> {
        self.check_len(values.len())?;
        Ok(RandomVariable { values })
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.size {
            return Err(Error::LengthMismatch {
                expected: self.size,
                found: len,
            });
        }
        Ok(())
    }

    /// `⟨f, g⟩ = Σ_ω f(ω) g(ω) P(ω)`.
    pub fn inner_product(&self, f: &RandomVariable<T>, g: &RandomVariable<T>) -> Result<T> {
        self.check_len(f.len())?;
        self.check_len(g.len())?;
        Ok(f.values
            .iter()
            .zip(&g.values)
            .zip(&self.masses)
            .fold(T::zero(), |acc, ((a, b), p)| acc + a.clone() * b.clone() * p.clone()))
    }

    pub fn norm_sq(&self, f: &RandomVariable<T>) -> T {
        self.inner_product(f, f).expect("length checked by caller")
    }

    /// `E ψ = ⟨ψ, 1⟩`.
    pub fn expectation(&self, f: &RandomVariable<T>) -> T {
        f.values
            .iter()
            .zip(&self.masses)
            .fold(T::zero(), |acc, (a, p)| acc + a.clone() * p.clone())
    }

    /// Applies `matrix[out][in]` along one cell axis.
    fn apply_axis(&self, data: &[T], axis: usize, matrix: &[Vec<T>]) -> Vec<T> {
        let k = self.radices[axis];
        let stride = self.strides[axis];
        let mut out = vec![T::zero(); data.len()];
        for outer in (0..self.size).step_by(k * stride) {
            for inner in 0..stride {
                let base = outer + inner;
                for (r, row) in matrix.iter().enumerate() {
                    let mut acc = T::zero();
                    for (c, coef) in row.iter().enumerate() {
                        let v = &data[base + c * stride];
                        if !v.is_negligible() || !T::EXACT {
                            acc = acc + coef.clone() * v.clone();
                        }
                    }
                    out[base + r * stride] = acc;
                }
            }
        }
        out
    }

    /// Walsh coefficients of `ψ`, computed cell by cell.
    pub fn coefficients(&self, psi: &RandomVariable<T>) -> WalshCoeffs<T> {
        assert_eq!(psi.len(), self.size, "random variable from another model");
        let mut data = psi.values.clone();
        for (axis, matrix) in self.analysis.iter().enumerate() {
            data = self.apply_axis(&data, axis, matrix);
        }
        WalshCoeffs { coeffs: data }
    }

    /// `Σ_m c_m e_m`.
    pub fn reconstruct(&self, coeffs: &WalshCoeffs<T>) -> RandomVariable<T> {
        let mut data = coeffs.coeffs.clone();
        for (axis, matrix) in self.synthesis.iter().enumerate() {
            data = self.apply_axis(&data, axis, matrix);
        }
        RandomVariable { values: data }
    }

    /// Partition of Ω into the atoms of `F_x`: points agreeing on the
    /// coordinates in `x`.
    pub fn sigma_field_of(&self, x: BoolElem) -> Partition {
        let cells: Vec<usize> = x.cells().collect();
        Partition::by_key(self.size, |w| {
            let c = self.coords(w);
            cells.iter().map(|&i| c[i]).collect::<Vec<_>>()
        })
    }

    /// `Q_x ψ`: zero every Walsh coefficient whose support is not inside `x`.
    pub fn project(&self, x: BoolElem, psi: &RandomVariable<T>) -> RandomVariable<T> {
        let mut coeffs = self.coefficients(psi);
        self.restrict_coeffs(&mut coeffs, |m| m.le(x));
        self.reconstruct(&coeffs)
    }

    /// Zeroes the coefficients whose support fails `keep`.
    pub fn restrict_coeffs(&self, coeffs: &mut WalshCoeffs<T>, keep: impl Fn(BoolElem) -> bool) {
        for (m, c) in coeffs.coeffs.iter_mut().enumerate() {
            if !keep(self.support(m)) {
                *c = T::zero();
            }
        }
    }

    /// `Q_x ψ` as a conditional expectation: average `ψ` over each atom of
    /// `F_x` with weights `P(ω)/P(block)`.
    pub fn project_oracle(&self, x: BoolElem, psi: &RandomVariable<T>) -> RandomVariable<T> {
        assert_eq!(psi.len(), self.size, "random variable from another model");
        let mut out = vec![T::zero(); self.size];
        for block in self.sigma_field_of(x).blocks() {
            let (num, den) = block.iter().fold((T::zero(), T::zero()), |(n, d), &w| {
                (
                    n + psi.values[w].clone() * self.masses[w].clone(),
                    d + self.masses[w].clone(),
                )
            });
            let avg = num / den;
            for &w in block {
                out[w] = avg.clone();
            }
        }
        RandomVariable { values: out }
    }

    /// Squared norm of `Q_x ψ` read off the Walsh coefficients.
    pub fn projected_norm_sq(&self, x: BoolElem, coeffs: &WalshCoeffs<T>) -> T {
        coeffs
            .coeffs
            .iter()
            .enumerate()
            .filter(|(m, c)| self.support(*m).le(x) && !c.is_negligible())
            .fold(T::zero(), |acc, (m, c)| {
                acc + c.clone() * c.clone() * self.walsh_norm_sq(m)
            })
    }

    /// Checks the projection lattice: `Q_x Q_y = Q_{x∧y}`, the operator
    /// inequality `Q_x + Q_y ≤ Q_{x∨y} + Q_{x∧y}`, and superadditivity of
    /// `x ↦ ‖Q_x ψ‖²` for zero-mean `ψ`.
    ///
    /// Operators are represented by their matrices in the Walsh basis, with
    /// columns computed through [`Model::project_oracle`] so that diagonality
    /// is a checked fact rather than a construction.
    pub fn verify_projection_laws(&self, opts: &LawOptions) -> LawReport {
        let mut rng = random::rng(opts.seed);
        let alg = self.algebra();
        let exhaustive = alg.size().saturating_mul(alg.size()) <= opts.exhaustive_pair_limit;
        let pairs: Vec<(BoolElem, BoolElem)> = if exhaustive {
            alg.elements()
                .flat_map(|x| alg.elements().map(move |y| (x, y)))
                .collect()
        } else {
            (0..opts.sample_pairs)
                .map(|_| (random::element(&mut rng, alg), random::element(&mut rng, alg)))
                .collect()
        };
        let columns: Vec<usize> = if self.size <= opts.column_limit {
            (0..self.size).collect()
        } else {
            (0..opts.sample_columns)
                .map(|_| rng.gen_range(0..self.size))
                .collect()
        };

        let mut report = LawReport {
            exhaustive,
            pairs_checked: pairs.len(),
            columns_checked: columns.len(),
            ..LawReport::default()
        };
        let mut cache = ColumnCache::new(self);

        for &(x, y) in &pairs {
            let meet = x.meet(y);
            let join = x.join(y);
            for &m in &columns {
                // (i) Q_x Q_y e_m = Q_{x∧y} e_m, in Walsh coordinates
                let qy = cache.column(y, m).clone();
                let mut product: BTreeMap<usize, T> = BTreeMap::new();
                for (mp, coef) in &qy {
                    for (r, v) in cache.column(x, *mp) {
                        let e = product.entry(*r).or_insert_with(T::zero);
                        *e = e.clone() + coef.clone() * v.clone();
                    }
                }
                let expected = cache.column(meet, m).clone();
                if !sparse_near(&product, &expected) {
                    report.violations.push(LawViolation {
                        law: Law::Multiplicative,
                        x,
                        y,
                        detail: format!("column {m}: Q_x Q_y e_m ≠ Q_(x∧y) e_m"),
                    });
                }

                // (ii) Q_{x∨y} + Q_{x∧y} − Q_x − Q_y is diagonal with 0/1 entries
                let mut diff: BTreeMap<usize, T> = BTreeMap::new();
                for (z, sign) in [(join, true), (meet, true), (x, false), (y, false)] {
                    for (r, v) in cache.column(z, m) {
                        let e = diff.entry(*r).or_insert_with(T::zero);
                        *e = if sign { e.clone() + v.clone() } else { e.clone() - v.clone() };
                    }
                }
                for (r, v) in &diff {
                    let ok = if *r == m {
                        v.is_negligible() || v.near(&T::one())
                    } else {
                        v.is_negligible()
                    };
                    if !ok {
                        report.violations.push(LawViolation {
                            law: Law::OperatorInequality,
                            x,
                            y,
                            detail: format!("entry ({r},{m}) = {v:?}"),
                        });
                    }
                }
            }
        }

        // (iii) superadditivity on zero-mean vectors
        for _ in 0..opts.random_vectors {
            let psi = self.random_zero_mean(&mut rng);
            let coeffs = self.coefficients(&psi);
            for &(x, y) in &pairs {
                if !x.is_disjoint(y) {
                    continue;
                }
                report.superadditivity_checks += 1;
                let lhs = self.projected_norm_sq(x, &coeffs) + self.projected_norm_sq(y, &coeffs);
                let rhs = self.projected_norm_sq(x.join(y), &coeffs);
                if !lhs.le_tol(&rhs) {
                    report.violations.push(LawViolation {
                        law: Law::Superadditivity,
                        x,
                        y,
                        detail: format!("‖Q_x ψ‖² + ‖Q_y ψ‖² = {lhs:?} > {rhs:?}"),
                    });
                } else if !lhs.near(&rhs) && report.strict_witness.is_none() {
                    report.strict_witness = Some((x, y));
                }
            }
        }
        report
    }

    /// Random zero-mean variable with small rational entries.
    pub fn random_zero_mean(&self, rng: &mut impl Rng) -> RandomVariable<T> {
        let psi = RandomVariable::new(
            (0..self.size)
                .map(|_| T::from_rational(&random::small_rational(rng)))
                .collect(),
        );
        let mean = self.expectation(&psi);
        &psi - &self.constant(mean)
    }

    pub fn random_variable(&self, rng: &mut impl Rng) -> RandomVariable<T> {
        RandomVariable::new(
            (0..self.size)
                .map(|_| T::from_rational(&random::small_rational(rng)))
                .collect(),
        )
    }

    /// Converts the cell description to another backend.
    pub fn with_backend<U: Scalar>(&self) -> Model<U> {
        Model::new(self.cells.clone()).expect("cells already validated")
    }
}

/// Sparse Walsh-coordinate columns of `Q_x e_m`, memoized.
struct ColumnCache<'a, T: Scalar> {
    model: &'a Model<T>,
    columns: HashMap<(u64, usize), Vec<(usize, T)>>,
}

impl<'a, T: Scalar> ColumnCache<'a, T> {
    fn new(model: &'a Model<T>) -> Self {
        ColumnCache {
            model,
            columns: HashMap::new(),
        }
    }

    fn column(&mut self, x: BoolElem, m: usize) -> &Vec<(usize, T)> {
        let model = self.model;
        self.columns.entry((x.bits(), m)).or_insert_with(|| {
            let image = model.project_oracle(x, &model.walsh_vector(m));
            model
                .coefficients(&image)
                .nonzero()
                .map(|(r, v)| (r, v.clone()))
                .collect()
        })
    }
}

fn sparse_near<T: Scalar>(a: &BTreeMap<usize, T>, b: &[(usize, T)]) -> bool {
    let b: BTreeMap<usize, &T> = b.iter().map(|(r, v)| (*r, v)).collect();
    a.iter()
        .all(|(r, v)| b.get(r).map_or(v.is_negligible(), |w| v.near(w)))
        && b.iter()
            .all(|(r, w)| a.get(r).map_or(w.is_negligible(), |v| v.near(w)))
}

/// Sampling and exhaustiveness knobs for [`Model::verify_projection_laws`].
#[derive(Clone, Debug)]
pub struct LawOptions {
    /// Check all `(x, y)` pairs when `4^n` is at most this.
    pub exhaustive_pair_limit: u64,
    pub sample_pairs: usize,
    /// Use every Walsh column when `|Ω|` is at most this.
    pub column_limit: usize,
    pub sample_columns: usize,
    pub random_vectors: usize,
    pub seed: u64,
}

impl Default for LawOptions {
    fn default() -> Self {
        LawOptions {
            exhaustive_pair_limit: 1 << 10,
            sample_pairs: 64,
            column_limit: 256,
            sample_columns: 16,
            random_vectors: 4,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    Multiplicative,
    OperatorInequality,
    Superadditivity,
}

#[derive(Clone, Debug)]
pub struct LawViolation {
    pub law: Law,
    pub x: BoolElem,
    pub y: BoolElem,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct LawReport {
    pub exhaustive: bool,
    pub pairs_checked: usize,
    pub columns_checked: usize,
    pub superadditivity_checks: usize,
    pub violations: Vec<LawViolation>,
    /// A disjoint pair where superadditivity was strict, if any was seen.
    pub strict_witness: Option<(BoolElem, BoolElem)>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;
    use crate::scalar::frac;

    fn el(n: usize, cells: &[usize]) -> BoolElem {
        BoolElem::from_cells(n, cells.iter().copied()).unwrap()
    }

    #[test]
    fn two_coins_basics() {
        let model = NoiseModel::coins(2);
        assert_eq!(model.size(), 4);
        assert!(model.masses().iter().all(|p| *p == frac(1, 4)));
        let supports: Vec<BoolElem> = (0..4).map(|m| model.support(m)).collect();
        assert_eq!(supports, vec![el(2, &[]), el(2, &[1]), el(2, &[0]), el(2, &[0, 1])]);
    }

    #[test]
    fn three_valued_cell_walsh() {
        let model = NoiseModel::new(vec![Cell::uniform(3).unwrap()]).unwrap();
        assert_eq!(model.size(), 3);
        assert_eq!(model.walsh_indices_with_support(el(1, &[])).count(), 1);
        assert_eq!(model.walsh_indices_with_support(el(1, &[0])).count(), 2);
        let e1 = model.walsh_vector(1);
        let e2 = model.walsh_vector(2);
        assert!(model.expectation(&e1).is_zero());
        assert!(model.expectation(&e2).is_zero());
        assert!(model.inner_product(&e1, &e2).unwrap().is_zero());
        assert!(model.walsh_norm_sq(1).is_positive());
    }

    #[test]
    fn rejects_bad_cells() {
        assert!(Cell::new(vec![frac(1, 2), frac(1, 2), frac(0, 1)]).is_err());
        assert!(Cell::new(vec![int(1)]).is_err());
        assert!(matches!(
            Cell::new(vec![frac(1, 2), frac(1, 3)]),
            Err(Error::ProbabilitySum { .. })
        ));
        assert!(matches!(
            NoiseModel::from_probabilities(vec![vec![frac(1, 2); 2], vec![int(1)]]),
            Err(Error::InvalidCell { index: 1, .. })
        ));
    }

    #[test]
    fn inner_products() {
        let model = NoiseModel::coins(2);
        let one = model.constant(int(1));
        let r1 = model.sign(0);
        let r2 = model.sign(1);
        assert_eq!(model.inner_product(&one, &one).unwrap(), int(1));
        assert_eq!(model.inner_product(&r1, &r1).unwrap(), int(1));
        assert!(model.inner_product(&r1, &r2).unwrap().is_zero());
        let short = RandomVariable::new(vec![int(1); 3]);
        assert!(matches!(
            model.inner_product(&one, &short),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn sigma_fields() {
        let model = NoiseModel::coins(2);
        assert_eq!(model.sigma_field_of(el(2, &[])).block_count(), 1);
        assert!(model.sigma_field_of(el(2, &[0, 1])).is_discrete());
        assert_eq!(model.sigma_field_of(el(2, &[0])).blocks(), &[vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn projection_examples() {
        let model = NoiseModel::coins(2);
        let mut rng = random::rng(3);
        let psi = model.random_variable(&mut rng);
        let mean = model.expectation(&psi);
        let zero = el(2, &[]);
        let one = el(2, &[0, 1]);
        assert_eq!(model.project(zero, &psi), model.constant(mean.clone()));
        assert_eq!(model.project_oracle(zero, &psi), model.constant(mean));
        assert_eq!(model.project(one, &psi), psi);
        assert_eq!(model.project_oracle(one, &psi), psi);
        let r1r2 = &model.sign(0) * &model.sign(1);
        assert!(model.project(el(2, &[0]), &r1r2).is_zero());
        assert!(model.project_oracle(el(2, &[0]), &r1r2).is_zero());
    }

    #[test]
    fn walsh_round_trip_and_tensor_products() {
        let model = NoiseModel::new(vec![
            Cell::new(vec![frac(1, 3), frac(2, 3)]).unwrap(),
            Cell::new(vec![frac(1, 6), frac(1, 2), frac(1, 3)]).unwrap(),
        ])
        .unwrap();
        let mut rng = random::rng(1);
        let psi = model.random_variable(&mut rng);
        assert_eq!(model.reconstruct(&model.coefficients(&psi)), psi);
        for m in 0..model.size() {
            for mp in 0..model.size() {
                let (a, b) = (model.support(m), model.support(mp));
                if !a.is_disjoint(b) {
                    continue;
                }
                let merged: Vec<usize> = model
                    .coords(m)
                    .iter()
                    .zip(model.coords(mp))
                    .map(|(d, e)| d + e)
                    .collect();
                let product = &model.walsh_vector(m) * &model.walsh_vector(mp);
                assert_eq!(product, model.walsh_vector(model.index(&merged)));
            }
        }
    }

    #[test]
    fn two_coin_laws_pass_with_strict_witness() {
        let model = NoiseModel::coins(2);
        let report = model.verify_projection_laws(&LawOptions::default());
        assert!(report.passed(), "{:?}", report.violations);
        assert!(report.exhaustive);
        assert_eq!(report.pairs_checked, 16);

        let r1r2 = &model.sign(0) * &model.sign(1);
        let c = model.coefficients(&r1r2);
        let (x, y) = (el(2, &[0]), el(2, &[1]));
        let lhs = model.projected_norm_sq(x, &c) + model.projected_norm_sq(y, &c);
        assert!(lhs.is_zero());
        assert_eq!(model.projected_norm_sq(x.join(y), &c), int(1));
    }

    #[test]
    fn float_backend_agrees() {
        let model = FloatModel::coins(3);
        let report = model.verify_projection_laws(&LawOptions::default());
        assert!(report.passed());
    }
}
