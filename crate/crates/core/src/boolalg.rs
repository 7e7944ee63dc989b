//! Finite Boolean algebras realized as power sets of cell indices.
//!
//! Every finite Boolean algebra is a power set, so `B` is the set of subsets
//! of `{0..n_cells-1}`. Subalgebras are given by their atoms (a block
//! partition of the cells), filters by their principal generator, and the
//! Stone space is the discrete space of atoms.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of cells.
pub const MAX_CELLS: usize = 63;

/// An element of the power-set algebra on `n_cells` atoms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolElem {
    n_cells: u8,
    bits: u64,
}

impl BoolElem {
    pub fn new(n_cells: usize, bits: u64) -> Result<BoolElem> {
        check_cells(n_cells)?;
        if bits >> n_cells != 0 {
            return Err(Error::CellOutOfRange {
                index: 63 - bits.leading_zeros() as usize,
                n_cells,
            });
        }
        Ok(BoolElem {
            n_cells: n_cells as u8,
            bits,
        })
    }

    pub fn from_cells(n_cells: usize, cells: impl IntoIterator<Item = usize>) -> Result<BoolElem> {
        check_cells(n_cells)?;
        let mut bits = 0u64;
        for index in cells {
            if index >= n_cells {
                return Err(Error::CellOutOfRange { index, n_cells });
            }
            bits |= 1 << index;
        }
        Ok(BoolElem {
            n_cells: n_cells as u8,
            bits,
        })
    }

    pub(crate) fn from_bits_unchecked(n_cells: usize, bits: u64) -> BoolElem {
        debug_assert!(n_cells <= MAX_CELLS && bits >> n_cells == 0);
        BoolElem {
            n_cells: n_cells as u8,
            bits,
        }
    }

    pub fn zero(n_cells: usize) -> BoolElem {
        BoolElem::from_bits_unchecked(n_cells, 0)
    }

    pub fn one(n_cells: usize) -> BoolElem {
        BoolElem::from_bits_unchecked(n_cells, full_mask(n_cells))
    }

    pub fn n_cells(self) -> usize {
        self.n_cells as usize
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn is_one(self) -> bool {
        self.bits == full_mask(self.n_cells())
    }

    pub fn contains(self, cell: usize) -> bool {
        cell < self.n_cells() && self.bits >> cell & 1 == 1
    }

    pub fn count(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn cells(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..self.n_cells()).filter(move |i| bits >> i & 1 == 1)
    }

    /// `self ≤ other`, i.e. set inclusion.
    pub fn le(self, other: BoolElem) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(self, other: BoolElem) -> bool {
        self.bits & other.bits == 0
    }

    pub fn meet(self, other: BoolElem) -> BoolElem {
        self.same_algebra(other);
        BoolElem { bits: self.bits & other.bits, ..self }
    }

    pub fn join(self, other: BoolElem) -> BoolElem {
        self.same_algebra(other);
        BoolElem { bits: self.bits | other.bits, ..self }
    }

    pub fn complement(self) -> BoolElem {
        BoolElem {
            bits: !self.bits & full_mask(self.n_cells()),
            ..self
        }
    }

    pub fn difference(self, other: BoolElem) -> BoolElem {
        self.meet(other.complement())
    }

    fn same_algebra(self, other: BoolElem) {
        assert_eq!(
            self.n_cells, other.n_cells,
            "Boolean elements from algebras of different sizes"
        );
    }

    /// Renders with 1-based cell labels, e.g. `{1,3}` or `∅`.
    pub fn label(self) -> String {
        if self.is_zero() {
            return "∅".to_string();
        }
        let cells: Vec<String> = self.cells().map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", cells.join(","))
    }
}

impl fmt::Debug for BoolElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.cells().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}/{}", cells.join(","), self.n_cells)
    }
}

fn full_mask(n_cells: usize) -> u64 {
    if n_cells == 0 {
        0
    } else {
        u64::MAX >> (64 - n_cells)
    }
}

fn check_cells(n_cells: usize) -> Result<()> {
    if n_cells > MAX_CELLS {
        return Err(Error::TooManyCells {
            max: MAX_CELLS,
            found: n_cells,
        });
    }
    Ok(())
}

/// The power-set algebra `B` on `n_cells` atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FinitePowerAlgebra {
    n_cells: usize,
}

impl FinitePowerAlgebra {
    pub fn new(n_cells: usize) -> Result<FinitePowerAlgebra> {
        check_cells(n_cells)?;
        Ok(FinitePowerAlgebra { n_cells })
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    /// Number of elements, `2^n_cells`.
    pub fn size(&self) -> u64 {
        1u64 << self.n_cells
    }

    pub fn zero(&self) -> BoolElem {
        BoolElem::zero(self.n_cells)
    }

    pub fn one(&self) -> BoolElem {
        BoolElem::one(self.n_cells)
    }

    pub fn element(&self, cells: &[usize]) -> Result<BoolElem> {
        BoolElem::from_cells(self.n_cells, cells.iter().copied())
    }

    pub fn singleton(&self, cell: usize) -> Result<BoolElem> {
        BoolElem::from_cells(self.n_cells, [cell])
    }

    /// All elements in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = BoolElem> {
        let n = self.n_cells;
        (0..1u64 << n).map(move |bits| BoolElem::from_bits_unchecked(n, bits))
    }

    /// Atoms of `B`, the singletons.
    pub fn atoms(&self) -> Vec<BoolElem> {
        (0..self.n_cells)
            .map(|i| BoolElem::from_bits_unchecked(self.n_cells, 1 << i))
            .collect()
    }

    fn check(&self, x: BoolElem) -> Result<()> {
        if x.n_cells() != self.n_cells {
            return Err(Error::AlgebraMismatch {
                expected: self.n_cells,
                found: x.n_cells(),
            });
        }
        Ok(())
    }

    /// `(x ∧ y, x ∨ y, x′)`, rejecting elements of another algebra.
    pub fn element_ops(&self, x: BoolElem, y: BoolElem) -> Result<(BoolElem, BoolElem, BoolElem)> {
        self.check(x)?;
        self.check(y)?;
        Ok((x.meet(y), x.join(y), x.complement()))
    }

    /// The whole algebra as a subalgebra (blocks = atoms).
    pub fn full_subalgebra(&self) -> Subalgebra {
        Subalgebra {
            n_cells: self.n_cells,
            blocks: self.atoms(),
        }
    }

    /// The two-element subalgebra `{0, 1}`.
    pub fn trivial_subalgebra(&self) -> Subalgebra {
        let blocks = if self.n_cells == 0 { Vec::new() } else { vec![self.one()] };
        Subalgebra {
            n_cells: self.n_cells,
            blocks,
        }
    }

    pub fn subalgebra(&self, blocks: Vec<BoolElem>) -> Result<Subalgebra> {
        Subalgebra::new(*self, blocks)
    }

    /// The Stone clopen set of `x`: atoms of `B` below `x`.
    pub fn clopen(&self, x: BoolElem) -> Vec<usize> {
        x.cells().collect()
    }
}

/// A Boolean subalgebra of `B`, given by its atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subalgebra {
    n_cells: usize,
    blocks: Vec<BoolElem>,
}

impl Subalgebra {
    /// Validates that `blocks` are nonzero, pairwise disjoint and cover `1`.
    pub fn new(alg: FinitePowerAlgebra, mut blocks: Vec<BoolElem>) -> Result<Subalgebra> {
        let mut covered = alg.zero();
        for &block in &blocks {
            alg.check(block)?;
            if block.is_zero() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if !block.is_disjoint(covered) {
                return Err(Error::InvalidPartition(format!(
                    "block {} overlaps an earlier block",
                    block.label()
                )));
            }
            covered = covered.join(block);
        }
        if !covered.is_one() {
            return Err(Error::InvalidPartition(format!(
                "blocks miss cells {}",
                covered.complement().label()
            )));
        }
        blocks.sort_by_key(|b| b.bits().trailing_zeros());
        Ok(Subalgebra {
            n_cells: alg.n_cells,
            blocks,
        })
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    /// The atoms of the subalgebra, i.e. its finest partition of unity.
    pub fn atoms(&self) -> &[BoolElem] {
        &self.blocks
    }

    pub fn atom_count(&self) -> usize {
        self.blocks.len()
    }

    /// Number of elements, `2^(atom count)`.
    pub fn size(&self) -> u64 {
        1u64 << self.blocks.len()
    }

    /// Membership: `x` is a union of blocks.
    pub fn contains(&self, x: BoolElem) -> bool {
        x.n_cells() == self.n_cells
            && self
                .blocks
                .iter()
                .all(|&b| b.le(x) || b.is_disjoint(x))
    }

    /// The element that is the union of the blocks selected by `mask`.
    pub fn element(&self, mask: u64) -> BoolElem {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(BoolElem::zero(self.n_cells), |acc, (_, &b)| acc.join(b))
    }

    pub fn elements(&self) -> impl Iterator<Item = BoolElem> + '_ {
        (0..self.size()).map(move |mask| self.element(mask))
    }

    /// All partitions of unity in the subalgebra: every way of grouping its
    /// atoms into nonempty parts. Exponential (Bell numbers); meant for
    /// brute-force cross-checks on a handful of atoms.
    pub fn partitions_of_unity(&self) -> Vec<Vec<BoolElem>> {
        let mut out = Vec::new();
        let mut parts: Vec<BoolElem> = Vec::new();
        set_partitions(&self.blocks, 0, &mut parts, &mut out);
        out
    }
}

fn set_partitions(
    atoms: &[BoolElem],
    next: usize,
    parts: &mut Vec<BoolElem>,
    out: &mut Vec<Vec<BoolElem>>,
) {
    if next == atoms.len() {
        out.push(parts.clone());
        return;
    }
    let atom = atoms[next];
    for i in 0..parts.len() {
        let saved = parts[i];
        parts[i] = saved.join(atom);
        set_partitions(atoms, next + 1, parts, out);
        parts[i] = saved;
    }
    parts.push(atom);
    set_partitions(atoms, next + 1, parts, out);
    parts.pop();
}

/// True when `parts` is a partition of unity: nonzero, pairwise disjoint,
/// joining to `1`.
pub fn is_partition_of_unity(n_cells: usize, parts: &[BoolElem]) -> bool {
    let mut acc = BoolElem::zero(n_cells);
    for &p in parts {
        if p.n_cells() != n_cells || p.is_zero() || !p.is_disjoint(acc) {
            return false;
        }
        acc = acc.join(p);
    }
    acc.is_one()
}

/// Atoms of a subalgebra, in block order.
pub fn enumerate_partition_atoms(b: &Subalgebra) -> Vec<BoolElem> {
    b.atoms().to_vec()
}

/// A filter on `B`. Every filter on a finite Boolean algebra is principal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Filter {
    generator: BoolElem,
}

impl Filter {
    pub fn principal(generator: BoolElem) -> Filter {
        Filter { generator }
    }

    pub fn generator(&self) -> BoolElem {
        self.generator
    }

    pub fn member(&self, x: BoolElem) -> bool {
        self.generator.le(x)
    }

    /// The improper filter (all of `B`) is generated by `0`.
    pub fn is_improper(&self) -> bool {
        self.generator.is_zero()
    }

    pub fn members(&self) -> Vec<BoolElem> {
        let alg = FinitePowerAlgebra {
            n_cells: self.generator.n_cells(),
        };
        alg.elements().filter(|&x| self.member(x)).collect()
    }

    /// The corresponding closed subset of the Stone space.
    pub fn closed_set(&self) -> Vec<usize> {
        filter_to_closed_set(self)
    }
}

/// Closed subset of the discrete Stone space attached to a filter: the atoms
/// below its generator. `closed_set ⊆ clopen(x)` holds exactly when `x` is in
/// the filter.
pub fn filter_to_closed_set(f: &Filter) -> Vec<usize> {
    f.generator.cells().collect()
}
