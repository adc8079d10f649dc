//! Fixed-width bit vectors used for powerset elements and packed relations.

use std::fmt;

const WORD: usize = 64;

fn words_for(width: usize) -> usize {
    width.div_ceil(WORD)
}

/// A subset of a finite base `{0, .., width-1}`, stored as packed bits.
///
/// Two subsets are only comparable when they share a width; the set
/// operations panic on mismatched widths.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    width: usize,
    words: Vec<u64>,
}

impl Subset {
    pub fn empty(width: usize) -> Self {
        Subset {
            width,
            words: vec![0; words_for(width)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        for i in 0..width {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(width: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(width);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Builds the subset whose members are the set bits of `mask`.
    pub fn from_mask(width: usize, mask: u64) -> Self {
        assert!(width <= WORD, "mask construction needs width <= 64");
        let mut s = Self::empty(width);
        if let Some(w) = s.words.first_mut() {
            *w = mask;
        }
        s.trim();
        s
    }

    /// The first 64 members as a mask. Only meaningful for `width <= 64`.
    pub fn to_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.width && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.width, "index {i} outside subset width {}", self.width);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.width {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union(&self, other: &Subset) -> Subset {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        self.zip(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &Subset) -> Subset {
        self.zip(other, |a, b| a ^ b)
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.check_width(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Subset) -> bool {
        self.check_width(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    /// Re-indexes the members that survive in `kept` (given in increasing
    /// order) onto the base `0..kept.len()`.
    pub fn project(&self, kept: &[usize]) -> Subset {
        Subset::from_indices(
            kept.len(),
            kept.iter()
                .enumerate()
                .filter(|(_, &old)| self.contains(old))
                .map(|(new, _)| new),
        )
    }

    /// Renders the subset as `{l1, l2}` using the given member labels.
    pub fn display_with<'a>(&'a self, labels: &'a [String]) -> impl fmt::Display + 'a {
        LabelledSubset {
            set: self,
            labels,
        }
    }

    fn zip(&self, other: &Subset, f: impl Fn(u64, u64) -> u64) -> Subset {
        self.check_width(other);
        Subset {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn check_width(&self, other: &Subset) {
        assert_eq!(self.width, other.width, "subset widths differ");
    }

    fn trim(&mut self) {
        let extra = self.words.len() * WORD - self.width;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

struct LabelledSubset<'a> {
    set: &'a Subset,
    labels: &'a [String],
}

impl fmt::Display for LabelledSubset<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.set.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            match self.labels.get(i) {
                Some(l) => f.write_str(l)?,
                None => write!(f, "#{i}")?,
            }
        }
        f.write_str("}")
    }
}

/// Square boolean matrix with packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    size: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(size: usize) -> Self {
        let stride = words_for(size).max(1);
        BitMatrix {
            size,
            stride,
            data: vec![0; stride * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.data[i * self.stride + j / WORD];
        if value {
            *w |= 1 << (j % WORD);
        } else {
            *w &= !(1 << (j % WORD));
        }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    /// Number of set entries.
    pub fn count(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    /// The lexicographically first `(i, j)` with `m[i][j] != m[j][i]`.
    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        (0..self.size)
            .flat_map(|i| (0..self.size).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            let row: String = (0..self.size)
                .map(|j| if self.get(i, j) { '1' } else { '.' })
                .collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// Iterates the set bits of a packed row.
pub fn row_ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(wi, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(wi * WORD + bit)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_ops_across_word_boundary() {
        let a = Subset::from_indices(130, [0, 63, 64, 129]);
        let b = Subset::from_indices(130, [63, 100]);
        assert_eq!(a.union(&b).iter().collect::<Vec<_>>(), vec![0, 63, 64, 100, 129]);
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![63]);
        assert_eq!(a.difference(&b).len(), 3);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!b.is_subset(&a));
        assert!(Subset::full(130).len() == 130);
    }

    #[test]
    fn project_reindexes_survivors() {
        let s = Subset::from_indices(6, [1, 3, 4]);
        let p = s.project(&[0, 3, 4, 5]);
        assert_eq!(p.width(), 4);
        assert_eq!(p.iter().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn display_uses_labels() {
        let labels: Vec<String> = ["p", "q", "r"].iter().map(|s| s.to_string()).collect();
        let s = Subset::from_indices(3, [0, 2]);
        assert_eq!(s.display_with(&labels).to_string(), "{p, r}");
        assert_eq!(Subset::empty(3).display_with(&labels).to_string(), "{}");
    }

    #[test]
    fn matrix_symmetry() {
        let mut m = BitMatrix::new(70);
        m.set(2, 68, true);
        assert_eq!(m.first_asymmetry(), Some((2, 68)));
        m.set(68, 2, true);
        assert!(m.is_symmetric());
        assert_eq!(row_ones(m.row(2)).collect::<Vec<_>>(), vec![68]);
        assert_eq!(m.count(), 2);
    }
}
