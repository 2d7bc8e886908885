use std::cmp::Ordering;
use std::fmt;

/// Number of positions a [`VertexSet`] can hold.
pub const MAX_VERTICES: usize = 256;

const WORDS: usize = MAX_VERTICES / 64;

/// Fixed-width bitset over vertex positions `0..256`.
///
/// `Ord` compares bit patterns as big integers (colex order); use
/// [`VertexSet::lex_cmp`] for lexicographic order on ascending position lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: [u64; WORDS],
}

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet { words: [0; WORDS] }
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::empty();
        s.insert(v);
        s
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        let mut s = Self::empty();
        for w in 0..WORDS {
            let lo = w * 64;
            if n >= lo + 64 {
                s.words[w] = u64::MAX;
            } else if n > lo {
                s.words[w] = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    pub fn from_bits(bits: u64) -> Self {
        let mut s = Self::empty();
        s.words[0] = bits;
        s
    }

    /// Low 64 bits; panics in debug builds if higher bits are set.
    pub fn low_bits(&self) -> u64 {
        debug_assert!(self.words[1..].iter().all(|&w| w == 0));
        self.words[0]
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.words[v >> 6] >> (v & 63) & 1 == 1
    }

    pub fn with(mut self, v: usize) -> Self {
        self.insert(v);
        self
    }

    pub fn without(mut self, v: usize) -> Self {
        self.remove(v);
        self
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn union(&self, o: &Self) -> Self {
        let mut r = *self;
        for i in 0..WORDS {
            r.words[i] |= o.words[i];
        }
        r
    }

    #[inline]
    pub fn intersection(&self, o: &Self) -> Self {
        let mut r = *self;
        for i in 0..WORDS {
            r.words[i] &= o.words[i];
        }
        r
    }

    #[inline]
    pub fn difference(&self, o: &Self) -> Self {
        let mut r = *self;
        for i in 0..WORDS {
            r.words[i] &= !o.words[i];
        }
        r
    }

    #[inline]
    pub fn is_subset(&self, o: &Self) -> bool {
        (0..WORDS).all(|i| self.words[i] & !o.words[i] == 0)
    }

    #[inline]
    pub fn is_disjoint(&self, o: &Self) -> bool {
        (0..WORDS).all(|i| self.words[i] & o.words[i] == 0)
    }

    #[inline]
    pub fn intersects(&self, o: &Self) -> bool {
        !self.is_disjoint(o)
    }

    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn last(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(i * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    /// Number of elements of `self` strictly below `v`.
    pub fn rank_of(&self, v: usize) -> usize {
        if v >= MAX_VERTICES {
            return self.len();
        }
        let mut r = 0;
        let (wi, bi) = (v >> 6, v & 63);
        for i in 0..wi {
            r += self.words[i].count_ones() as usize;
        }
        if bi > 0 {
            r += (self.words[wi] & ((1u64 << bi) - 1)).count_ones() as usize;
        }
        r
    }

    pub fn iter(&self) -> Iter {
        Iter { set: *self, word: 0, cur: self.words[0] }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic order on ascending position lists.
    pub fn lex_cmp(&self, o: &Self) -> Ordering {
        let mut a = self.iter();
        let mut b = o.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(&self) -> Vec<VertexSet> {
        let elems = self.to_vec();
        assert!(elems.len() < 32, "too many elements to enumerate subsets");
        let mut out = Vec::with_capacity(1 << elems.len());
        for mask in 0u32..(1u32 << elems.len()) {
            let mut s = VertexSet::empty();
            for (k, &e) in elems.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    s.insert(e);
                }
            }
            out.push(s);
        }
        out
    }

    /// Image under a position map.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> VertexSet {
        self.iter().map(f).collect()
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        for i in (0..WORDS).rev() {
            match self.words[i].cmp(&other.words[i]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = VertexSet::empty();
        for v in it {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter {
    set: VertexSet,
    word: usize,
    cur: u64,
}

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word * 64 + b);
            }
            self.word += 1;
            if self.word >= WORDS {
                return None;
            }
            self.cur = self.set.words[self.word];
        }
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a: VertexSet = [1, 5, 70, 200].into_iter().collect();
        assert_eq!(a.len(), 4);
        assert_eq!(a.to_vec(), vec![1, 5, 70, 200]);
        assert_eq!(a.first(), Some(1));
        assert_eq!(a.last(), Some(200));
        assert_eq!(a.rank_of(70), 2);
        assert_eq!(a.rank_of(201), 4);
        let b = VertexSet::full(66);
        assert_eq!(b.len(), 66);
        assert_eq!(a.intersection(&b).to_vec(), vec![1, 5]);
        assert!(VertexSet::singleton(65).is_subset(&b));
        assert!(!VertexSet::singleton(66).is_subset(&b));
        assert_eq!(VertexSet::full(3).subsets().len(), 8);
    }

    #[test]
    fn lex_order() {
        let a: VertexSet = [0, 3].into_iter().collect();
        let b: VertexSet = [1, 2].into_iter().collect();
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
        assert_eq!(a.cmp(&b), Ordering::Greater);
    }
}
