//! Finite unions of intervals in `[0,1]`, with exact set operations and the
//! topological operators of the subspace topology.

use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::{format_rational, Rational};

/// A subset of `[0,1]` that is a finite union of intervals and points.
///
/// Stored as breakpoints `0 = c_0 < … < c_m = 1`, membership of each
/// breakpoint, and membership of each open gap `(c_j, c_{j+1})`. Interior
/// breakpoints whose membership matches both neighbouring gaps are dropped,
/// so equal sets have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    breaks: Vec<Rational>,
    at: Vec<bool>,
    gaps: Vec<bool>,
}

/// One connected component, described by its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl PointSet {
    fn from_parts(breaks: Vec<Rational>, at: Vec<bool>, gaps: Vec<bool>) -> PointSet {
        let mut s = PointSet { breaks, at, gaps };
        s.canonicalize();
        s
    }

    fn canonicalize(&mut self) {
        let m = self.gaps.len();
        let mut breaks = vec![self.breaks[0].clone()];
        let mut at = vec![self.at[0]];
        let mut gaps = Vec::with_capacity(m);
        let mut current = self.gaps[0];
        for j in 1..m {
            let redundant = self.at[j] == current && self.gaps[j] == current;
            if !redundant {
                gaps.push(current);
                breaks.push(self.breaks[j].clone());
                at.push(self.at[j]);
                current = self.gaps[j];
            }
        }
        gaps.push(current);
        breaks.push(self.breaks[m].clone());
        at.push(self.at[m]);
        *self = PointSet { breaks, at, gaps };
    }

    pub fn empty() -> PointSet {
        PointSet {
            breaks: vec![Rational::zero(), Rational::one()],
            at: vec![false, false],
            gaps: vec![false],
        }
    }

    pub fn full() -> PointSet {
        PointSet {
            breaks: vec![Rational::zero(), Rational::one()],
            at: vec![true, true],
            gaps: vec![true],
        }
    }

    /// An interval; endpoints are clamped to `[0,1]`. Empty when `lo > hi`
    /// or when `lo = hi` and an end is open.
    pub fn interval(lo: &Rational, hi: &Rational, lo_closed: bool, hi_closed: bool) -> PointSet {
        let zero = Rational::zero();
        let one = Rational::one();
        let lo_c = lo.clone().max(zero.clone());
        let hi_c = hi.clone().min(one.clone());
        let lo_closed = lo_closed || *lo < zero;
        let hi_closed = hi_closed || *hi > one;
        if lo_c > hi_c || (lo_c == hi_c && !(lo_closed && hi_closed)) {
            return PointSet::empty();
        }
        if lo_c == hi_c {
            return PointSet::point(&lo_c);
        }
        let mut breaks = vec![zero.clone()];
        let mut at = vec![false];
        let mut gaps = Vec::new();
        if lo_c == zero {
            at[0] = lo_closed;
        } else {
            gaps.push(false);
            breaks.push(lo_c.clone());
            at.push(lo_closed);
        }
        gaps.push(true);
        if hi_c == one {
            breaks.push(one);
            at.push(hi_closed);
        } else {
            breaks.push(hi_c);
            at.push(hi_closed);
            gaps.push(false);
            breaks.push(one);
            at.push(false);
        }
        PointSet::from_parts(breaks, at, gaps)
    }

    /// A union of depth-`depth` grid pieces: slot `2j` is the vertex
    /// `j/2^D`, slot `2j+1` the open cell after it.
    pub fn from_grid(depth: u32, slots: &[bool]) -> PointSet {
        let cells = 1usize << depth;
        assert_eq!(slots.len(), 2 * cells + 1, "grid slot count");
        let h = crate::scalar::pow2_recip(depth);
        let breaks = (0..=cells)
            .map(|j| &h * Rational::from_integer(j.into()))
            .collect();
        let at = slots.iter().step_by(2).copied().collect();
        let gaps = slots.iter().skip(1).step_by(2).copied().collect();
        PointSet::from_parts(breaks, at, gaps)
    }

    pub fn open(lo: &Rational, hi: &Rational) -> PointSet {
        PointSet::interval(lo, hi, false, false)
    }

    pub fn closed(lo: &Rational, hi: &Rational) -> PointSet {
        PointSet::interval(lo, hi, true, true)
    }

    /// `{p}`, or `∅` when `p ∉ [0,1]`.
    pub fn point(p: &Rational) -> PointSet {
        let zero = Rational::zero();
        let one = Rational::one();
        if *p < zero || *p > one {
            return PointSet::empty();
        }
        if *p == zero || *p == one {
            let mut s = PointSet::empty();
            s.at[usize::from(*p == one)] = true;
            return s;
        }
        PointSet::from_parts(vec![zero, p.clone(), one], vec![false, true, false], vec![false, false])
    }

    pub fn points<'a>(ps: impl IntoIterator<Item = &'a Rational>) -> PointSet {
        ps.into_iter()
            .fold(PointSet::empty(), |acc, p| acc.union(&PointSet::point(p)))
    }

    /// Membership test.
    pub fn contains(&self, p: &Rational) -> bool {
        match self.breaks.binary_search(p) {
            Ok(j) => self.at[j],
            Err(0) => false,
            Err(j) if j > self.gaps.len() => false,
            Err(j) => self.gaps[j - 1],
        }
    }

    fn combine(&self, other: &PointSet, f: impl Fn(bool, bool) -> bool) -> PointSet {
        let mut breaks: Vec<Rational> = self.breaks.iter().chain(&other.breaks).cloned().collect();
        breaks.sort();
        breaks.dedup();
        let at = breaks
            .iter()
            .map(|b| f(self.contains(b), other.contains(b)))
            .collect();
        let gaps = breaks
            .windows(2)
            .map(|w| {
                let mid = (&w[0] + &w[1]) / Rational::from_integer(2.into());
                f(self.contains(&mid), other.contains(&mid))
            })
            .collect();
        PointSet::from_parts(breaks, at, gaps)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        self.combine(other, |a, b| a && !b)
    }

    /// `[0,1] ∖ self`.
    pub fn complement(&self) -> PointSet {
        PointSet {
            breaks: self.breaks.clone(),
            at: self.at.iter().map(|b| !b).collect(),
            gaps: self.gaps.iter().map(|b| !b).collect(),
        }
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_empty(&self) -> bool {
        !self.at.iter().chain(&self.gaps).any(|&b| b)
    }

    pub fn is_full(&self) -> bool {
        self.at.iter().chain(&self.gaps).all(|&b| b)
    }

    /// Interior in the subspace topology of `[0,1]`: the endpoints `0` and
    /// `1` only need their single neighbouring gap.
    pub fn interior(&self) -> PointSet {
        let m = self.gaps.len();
        let at = (0..=m)
            .map(|j| {
                self.at[j] && (j == 0 || self.gaps[j - 1]) && (j == m || self.gaps[j])
            })
            .collect();
        PointSet::from_parts(self.breaks.clone(), at, self.gaps.clone())
    }

    pub fn closure(&self) -> PointSet {
        let m = self.gaps.len();
        let at = (0..=m)
            .map(|j| {
                self.at[j] || (j > 0 && self.gaps[j - 1]) || (j < m && self.gaps[j])
            })
            .collect();
        PointSet::from_parts(self.breaks.clone(), at, self.gaps.clone())
    }

    /// `Cl ∖ Int`.
    pub fn boundary(&self) -> PointSet {
        self.closure().difference(&self.interior())
    }

    pub fn is_open(&self) -> bool {
        self.interior() == *self
    }

    pub fn is_closed(&self) -> bool {
        self.closure() == *self
    }

    pub fn is_regular_open(&self) -> bool {
        self.closure().interior() == *self
    }

    /// Connected components in increasing order.
    pub fn pieces(&self) -> Vec<Piece> {
        let m = self.gaps.len();
        let mut out = Vec::new();
        let mut j = 0;
        while j <= m {
            let starts_at_point = self.at[j];
            let starts_gap = j < m && self.gaps[j];
            if !starts_at_point && !starts_gap {
                j += 1;
                continue;
            }
            let lo = self.breaks[j].clone();
            let lo_closed = starts_at_point;
            if !starts_gap {
                out.push(Piece { lo: lo.clone(), hi: lo, lo_closed: true, hi_closed: true });
                j += 1;
                continue;
            }
            // extend through gaps and included breakpoints
            let mut k = j + 1;
            while k < m && self.at[k] && self.gaps[k] {
                k += 1;
            }
            out.push(Piece {
                lo,
                hi: self.breaks[k].clone(),
                lo_closed,
                hi_closed: self.at[k],
            });
            j = if self.at[k] { k + 1 } else { k };
        }
        out
    }

    /// Isolated points and endpoints of intervals.
    pub fn breakpoints(&self) -> &[Rational] {
        &self.breaks
    }

    /// Finite sets are returned as their sorted points; `None` otherwise.
    pub fn as_finite(&self) -> Option<Vec<Rational>> {
        if self.gaps.iter().any(|&g| g) {
            return None;
        }
        Some(
            self.breaks
                .iter()
                .zip(&self.at)
                .filter(|(_, &a)| a)
                .map(|(b, _)| b.clone())
                .collect(),
        )
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            return write!(f, "{{{}}}", format_rational(&self.lo));
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            format_rational(&self.lo),
            format_rational(&self.hi),
            if self.hi_closed { ']' } else { ')' },
        )
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pieces = self.pieces();
        if pieces.is_empty() {
            return write!(f, "∅");
        }
        for (i, p) in pieces.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn interval_constructors() {
        let half = frac(1, 2);
        let s = PointSet::open(&int(0), &half);
        assert_eq!(s.to_string(), "(0, 1/2)");
        assert!(!s.contains(&int(0)));
        assert!(s.contains(&frac(1, 4)));
        assert!(!s.contains(&half));
        assert_eq!(PointSet::closed(&half, &half).to_string(), "{1/2}");
        assert!(PointSet::open(&half, &half).is_empty());
        assert!(PointSet::closed(&int(0), &int(1)).is_full());
    }

    #[test]
    fn topology_in_unit_interval() {
        let s = PointSet::open(&int(0), &frac(1, 2));
        assert_eq!(s.closure().to_string(), "[0, 1/2]");
        assert_eq!(s.closure().interior().to_string(), "[0, 1/2)");
        assert!(!s.is_regular_open());
        assert!(s.closure().interior().is_regular_open());
        let punctured = PointSet::full().difference(&PointSet::point(&frac(1, 2)));
        assert!(punctured.is_open());
        assert!(punctured.closure().is_full());
        assert_eq!(punctured.boundary().as_finite(), Some(vec![frac(1, 2)]));
        assert_eq!(PointSet::full().boundary(), PointSet::empty());
    }

    #[test]
    fn canonical_merging() {
        let a = PointSet::open(&int(0), &frac(1, 2));
        let b = PointSet::closed(&frac(1, 2), &int(1));
        let u = a.union(&b);
        assert_eq!(u, PointSet::interval(&int(0), &int(1), false, true));
        assert_eq!(u.pieces().len(), 1);
        let c = a.union(&PointSet::point(&int(1)));
        assert_eq!(c.to_string(), "(0, 1/2) ∪ {1}");
        assert_eq!(c.complement().to_string(), "{0} ∪ [1/2, 1)");
    }
}
