//! Partitions of a finite index set `{0..len-1}`.
//!
//! A finite σ-field is the same thing as a partition of the underlying set
//! into its atoms, so both σ-fields on Ω and σ-fields on the spectral space
//! use this type. Joins of σ-fields are common refinements.

use std::collections::BTreeMap;
use std::fmt;

/// A partition in canonical form: each block sorted, blocks ordered by their
/// smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    len: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Groups `0..len` by the value of `key`.
    pub fn by_key<K: Ord>(len: usize, mut key: impl FnMut(usize) -> K) -> Partition {
        let mut groups: BTreeMap<K, Vec<usize>> = BTreeMap::new();
        for i in 0..len {
            groups.entry(key(i)).or_default().push(i);
        }
        Partition::from_blocks_unchecked(len, groups.into_values().collect())
    }

    /// Builds a partition from blocks, validating disjointness and coverage.
    pub fn from_blocks(len: usize, blocks: Vec<Vec<usize>>) -> Option<Partition> {
        let mut seen = vec![false; len];
        for block in &blocks {
            if block.is_empty() {
                return None;
            }
            for &i in block {
                if i >= len || seen[i] {
                    return None;
                }
                seen[i] = true;
            }
        }
        seen.iter()
            .all(|&s| s)
            .then(|| Partition::from_blocks_unchecked(len, blocks))
    }

    fn from_blocks_unchecked(len: usize, mut blocks: Vec<Vec<usize>>) -> Partition {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition { len, blocks }
    }

    /// The one-block partition (the trivial σ-field).
    pub fn trivial(len: usize) -> Partition {
        if len == 0 {
            return Partition { len, blocks: Vec::new() };
        }
        Partition {
            len,
            blocks: vec![(0..len).collect()],
        }
    }

    /// The partition into singletons (the discrete σ-field).
    pub fn discrete(len: usize) -> Partition {
        Partition {
            len,
            blocks: (0..len).map(|i| vec![i]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.len
    }

    /// `labels()[i]` is the index of the block containing `i`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.len];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                labels[i] = b;
            }
        }
        labels
    }

    /// Common refinement (join of σ-fields).
    pub fn refine(&self, other: &Partition) -> Partition {
        assert_eq!(self.len, other.len, "refining partitions of different sets");
        let a = self.labels();
        let b = other.labels();
        Partition::by_key(self.len, |i| (a[i], b[i]))
    }

    /// True when every block of `self` lies inside a block of `other`.
    pub fn is_finer_than(&self, other: &Partition) -> bool {
        let labels = other.labels();
        self.blocks
            .iter()
            .all(|block| block.iter().all(|&i| labels[i] == labels[block[0]]))
    }

    pub fn contains_block(&self, block: &[usize]) -> bool {
        let mut sorted = block.to_vec();
        sorted.sort_unstable();
        self.blocks.iter().any(|b| *b == sorted)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, block) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, " | ")?;
            }
            let items: Vec<String> = block.iter().map(|i| i.to_string()).collect();
            write!(f, "{}", items.join(","))?;
        }
        write!(f, "]")
    }
}
