//! Regular open sets of a finite topological space, by brute force over
//! bitmasks.

use crate::error::{Error, Result};
use crate::scalar::{frac, Rational};

use super::RegOpen;

/// Largest supported number of points.
pub const MAX_POINTS: usize = 32;

/// A topology on `{0, …, n−1}`, given by its open sets as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    n_points: usize,
    opens: Vec<u32>,
}

impl FiniteSpace {
    pub fn new(n_points: usize, mut opens: Vec<u32>) -> Result<FiniteSpace> {
        if n_points > MAX_POINTS {
            return Err(Error::InvalidTopology(format!(
                "{n_points} points exceeds the limit of {MAX_POINTS}"
            )));
        }
        let full = full_mask(n_points);
        opens.sort_unstable();
        opens.dedup();
        if let Some(bad) = opens.iter().find(|&&u| u & !full != 0) {
            return Err(Error::InvalidTopology(format!("open set {bad:#b} has points outside the space")));
        }
        if opens.binary_search(&0).is_err() {
            return Err(Error::InvalidTopology("∅ is not open".into()));
        }
        if opens.binary_search(&full).is_err() {
            return Err(Error::InvalidTopology("the whole space is not open".into()));
        }
        for &u in &opens {
            for &v in &opens {
                if opens.binary_search(&(u | v)).is_err() {
                    return Err(Error::InvalidTopology(format!("{u:#b} ∪ {v:#b} is not open")));
                }
                if opens.binary_search(&(u & v)).is_err() {
                    return Err(Error::InvalidTopology(format!("{u:#b} ∩ {v:#b} is not open")));
                }
            }
        }
        Ok(FiniteSpace { n_points, opens })
    }

    /// The topology generated by a subbasis.
    pub fn generated(n_points: usize, subbasis: &[u32]) -> Result<FiniteSpace> {
        let full = full_mask(n_points);
        let mut basis = vec![full];
        for &s in subbasis {
            let extra: Vec<u32> = basis.iter().map(|&b| b & s).collect();
            basis.push(s);
            basis.extend(extra);
            basis.sort_unstable();
            basis.dedup();
        }
        let mut opens = vec![0u32];
        for &b in &basis {
            let extra: Vec<u32> = opens.iter().map(|&u| u | b).collect();
            opens.extend(extra);
            opens.sort_unstable();
            opens.dedup();
        }
        FiniteSpace::new(n_points, opens)
    }

    pub fn discrete(n_points: usize) -> FiniteSpace {
        let singletons: Vec<u32> = (0..n_points).map(|i| 1 << i).collect();
        FiniteSpace::generated(n_points, &singletons).expect("discrete topology")
    }

    pub fn indiscrete(n_points: usize) -> FiniteSpace {
        FiniteSpace::new(n_points, vec![0, full_mask(n_points)]).expect("indiscrete topology")
    }

    /// `{a, b}` with opens `∅, {a}, X`.
    pub fn sierpinski() -> FiniteSpace {
        FiniteSpace::new(2, vec![0, 0b01, 0b11]).expect("Sierpiński topology")
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn opens(&self) -> &[u32] {
        &self.opens
    }

    pub fn full(&self) -> u32 {
        full_mask(self.n_points)
    }

    pub fn interior(&self, set: u32) -> u32 {
        self.opens
            .iter()
            .filter(|&&u| u & !set == 0)
            .fold(0, |acc, &u| acc | u)
    }

    pub fn closure(&self, set: u32) -> u32 {
        self.full() & !self.interior(self.full() & !set)
    }

    pub fn is_regular_open(&self, set: u32) -> bool {
        self.interior(self.closure(set)) == set
    }

    pub fn regular_opens(&self) -> Vec<u32> {
        self.opens
            .iter()
            .copied()
            .filter(|&u| self.is_regular_open(u))
            .collect()
    }

    pub fn meet(&self, a: u32, b: u32) -> u32 {
        self.interior(a & b)
    }

    pub fn join(&self, a: u32, b: u32) -> u32 {
        self.interior(self.closure(a) | self.closure(b))
    }

    pub fn complement(&self, a: u32) -> u32 {
        self.full() & !self.closure(a)
    }

    /// Exhaustive Boolean algebra laws on the regular open sets; triples are
    /// skipped above 64 elements.
    pub fn verify_reg_laws(&self) -> FiniteRegReport {
        let reg = self.regular_opens();
        let mut violations = Vec::new();
        let full = self.full();
        let in_reg = |u: u32| reg.binary_search(&u).is_ok();
        for &a in &reg {
            let c = self.complement(a);
            if !in_reg(c) || self.complement(c) != a {
                violations.push(format!("complement of {a:#b}"));
            }
            if self.meet(a, c) != 0 || self.join(a, c) != full {
                violations.push(format!("complement laws at {a:#b}"));
            }
            for &b in &reg {
                let (m, j) = (self.meet(a, b), self.join(a, b));
                if !in_reg(m) || !in_reg(j) {
                    violations.push(format!("closure of Reg under ∧/∨ at {a:#b}, {b:#b}"));
                }
                if self.meet(a, j) != a || self.join(a, m) != a {
                    violations.push(format!("absorption at {a:#b}, {b:#b}"));
                }
                if m != a & b {
                    violations.push(format!("meet is not intersection at {a:#b}, {b:#b}"));
                }
            }
        }
        let triples = reg.len() <= 64;
        if triples {
            for &a in &reg {
                for &b in &reg {
                    for &c in &reg {
                        if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                            violations.push(format!("distributivity at {a:#b}, {b:#b}, {c:#b}"));
                        }
                        if self.join(a, self.join(b, c)) != self.join(self.join(a, b), c) {
                            violations.push(format!("associativity at {a:#b}, {b:#b}, {c:#b}"));
                        }
                    }
                }
            }
        }
        FiniteRegReport {
            elements: reg.len(),
            triples_checked: triples,
            violations,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRegReport {
    pub elements: usize,
    pub triples_checked: bool,
    pub violations: Vec<String>,
}

impl FiniteRegReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// The quotient of `[0,1]` that collapses each open depth-`depth` dyadic cell
/// to a point. Point `2j` is the vertex `j/2^D`, point `2j+1` the cell
/// `(j/2^D, (j+1)/2^D)`. A set is open when each vertex in it comes with its
/// neighbouring cells.
pub fn dyadic_grid_space(depth: u32) -> Result<FiniteSpace> {
    let cells = 1usize << depth;
    let n = 2 * cells + 1;
    if n > MAX_POINTS {
        return Err(Error::InvalidTopology(format!("depth {depth} needs {n} points")));
    }
    let subbasis: Vec<u32> = (0..n)
        .map(|p| {
            if p % 2 == 1 {
                1 << p
            } else {
                let mut u = 1u32 << p;
                if p > 0 {
                    u |= 1 << (p - 1);
                }
                if p + 1 < n {
                    u |= 1 << (p + 1);
                }
                u
            }
        })
        .collect();
    FiniteSpace::generated(n, &subbasis)
}

/// Image of a grid-endpoint regular open set in [`dyadic_grid_space`].
pub fn grid_encode(r: &RegOpen, depth: u32) -> u32 {
    let cells = 1i64 << depth;
    (0..=2 * cells).fold(0u32, |acc, p| {
        let point: Rational = frac(p, 2 * cells);
        if r.contains(&point) {
            acc | 1 << p
        } else {
            acc
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_spaces() {
        let d = FiniteSpace::discrete(3);
        assert_eq!(d.regular_opens().len(), 8);
        assert!(d.verify_reg_laws().passed());
        let s = FiniteSpace::sierpinski();
        assert_eq!(s.regular_opens(), vec![0, 0b11]);
        assert!(!s.is_regular_open(0b01));
        let i = FiniteSpace::indiscrete(2);
        assert_eq!(i.regular_opens(), vec![0, 0b11]);
    }

    #[test]
    fn rejects_non_topologies() {
        assert!(FiniteSpace::new(2, vec![0b01, 0b11]).is_err());
        assert!(FiniteSpace::new(2, vec![0, 0b01]).is_err());
        assert!(FiniteSpace::new(3, vec![0, 0b001, 0b010, 0b111]).is_err());
        assert!(FiniteSpace::new(2, vec![0, 0b100, 0b11]).is_err());
    }

    #[test]
    fn grid_space_matches_interval_algebra() {
        for depth in 0..=2 {
            let space = dyadic_grid_space(depth).unwrap();
            let grid = RegOpen::grid_elements(depth);
            let mut encoded: Vec<u32> = grid.iter().map(|r| grid_encode(r, depth)).collect();
            for (r, &e) in grid.iter().zip(&encoded) {
                assert_eq!(grid_encode(&r.complement(), depth), space.complement(e));
                for s in &grid {
                    let f = grid_encode(s, depth);
                    assert_eq!(grid_encode(&r.meet(s), depth), space.meet(e, f));
                    assert_eq!(grid_encode(&r.join(s), depth), space.join(e, f));
                }
            }
            encoded.sort_unstable();
            assert_eq!(encoded, space.regular_opens());
        }
    }
}
