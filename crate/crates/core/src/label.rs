//! Label sets, relabeling bijections and the set compositions that index
//! the iterated products and coproducts.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest admissible label (exclusive).
pub const MAX_LABELS: u8 = 64;

/// A finite set of small labels, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelSet(u64);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);

    /// The label set `{0, 1, ..., n-1}`.
    pub fn range(n: usize) -> LabelSet {
        assert!(n <= MAX_LABELS as usize, "at most {MAX_LABELS} labels");
        if n == 64 {
            LabelSet(u64::MAX)
        } else {
            LabelSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> LabelSet {
        LabelSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(label: u8) -> LabelSet {
        assert!(label < MAX_LABELS);
        LabelSet(1u64 << label)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, label: u8) -> bool {
        label < MAX_LABELS && self.0 & (1u64 << label) != 0
    }

    pub fn insert(&mut self, label: u8) {
        assert!(label < MAX_LABELS);
        self.0 |= 1u64 << label;
    }

    pub fn union(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 | other.0)
    }

    pub fn intersection(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 & other.0)
    }

    pub fn difference(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: LabelSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: LabelSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min_label(self) -> Option<u8> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as u8)
    }

    pub fn iter(self) -> impl Iterator<Item = u8> + Clone {
        let bits = self.0;
        (0..MAX_LABELS).filter(move |&i| bits & (1u64 << i) != 0)
    }

    /// Every subset, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = LabelSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(LabelSet(cur))
        })
    }

    /// True when the set is `{0, ..., k-1}` for `k = len()`.
    pub fn is_initial(self) -> bool {
        self == LabelSet::range(self.len())
    }

    /// Canonical label-set fragment of structure encodings: `n=<k>` for an
    /// initial segment, `V=<i>,<j>,...` otherwise.
    pub fn encode(self) -> String {
        if self.is_initial() {
            format!("n={}", self.len())
        } else {
            let labels: Vec<String> = self.iter().map(|l| l.to_string()).collect();
            format!("V={}", labels.join(","))
        }
    }

    /// Inverse of [`LabelSet::encode`].
    pub fn parse(s: &str) -> Result<LabelSet> {
        if let Some(n) = s.strip_prefix("n=") {
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad label count `{n}`")))?;
            if n > MAX_LABELS as usize {
                return Err(Error::Parse(format!("at most {MAX_LABELS} labels")));
            }
            Ok(LabelSet::range(n))
        } else if let Some(v) = s.strip_prefix("V=") {
            let mut set = LabelSet::EMPTY;
            for tok in v.split(',').filter(|t| !t.trim().is_empty()) {
                set.insert(parse_label(tok)?);
            }
            Ok(set)
        } else {
            Err(Error::Parse(format!("expected `n=` or `V=`, found `{s}`")))
        }
    }
}

pub(crate) fn parse_label(tok: &str) -> Result<u8> {
    let l: u8 = tok
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad label `{tok}`")))?;
    if l >= MAX_LABELS {
        return Err(Error::Parse(format!("label {l} out of range")));
    }
    Ok(l)
}

impl FromIterator<u8> for LabelSet {
    fn from_iter<T: IntoIterator<Item = u8>>(iter: T) -> Self {
        let mut s = LabelSet::EMPTY;
        for l in iter {
            s.insert(l);
        }
        s
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

/// Members sorted, compared lexicographically; used for `(size, lex)` orders.
pub(crate) fn lex_key(s: LabelSet) -> (usize, Vec<u8>) {
    (s.len(), s.iter().collect())
}

/// A bijection between two label sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relabeling {
    map: BTreeMap<u8, u8>,
}

impl Relabeling {
    pub fn new(pairs: impl IntoIterator<Item = (u8, u8)>) -> Result<Relabeling> {
        let map: BTreeMap<u8, u8> = pairs.into_iter().collect();
        let image: LabelSet = map.values().copied().collect();
        if image.len() != map.len() {
            return Err(Error::Parse("relabeling is not injective".into()));
        }
        Ok(Relabeling { map })
    }

    pub fn identity(labels: LabelSet) -> Relabeling {
        Relabeling {
            map: labels.iter().map(|l| (l, l)).collect(),
        }
    }

    /// Order-preserving bijection from `labels` onto `{0, ..., k-1}`.
    pub fn standardize(labels: LabelSet) -> Relabeling {
        Relabeling {
            map: labels.iter().zip(0u8..).collect(),
        }
    }

    pub fn domain(&self) -> LabelSet {
        self.map.keys().copied().collect()
    }

    pub fn codomain(&self) -> LabelSet {
        self.map.values().copied().collect()
    }

    pub fn apply(&self, label: u8) -> u8 {
        *self
            .map
            .get(&label)
            .unwrap_or_else(|| panic!("label {label} outside relabeling domain"))
    }

    pub fn apply_set(&self, set: LabelSet) -> LabelSet {
        set.iter().map(|l| self.apply(l)).collect()
    }

    pub fn restrict(&self, set: LabelSet) -> Relabeling {
        Relabeling {
            map: set.iter().map(|l| (l, self.apply(l))).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Relabeling) -> Relabeling {
        Relabeling {
            map: self.map.iter().map(|(&a, &b)| (a, other.apply(b))).collect(),
        }
    }

    pub fn inverse(&self) -> Relabeling {
        Relabeling {
            map: self.map.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    /// All permutations of `labels`, in lexicographic order of image sequences.
    pub fn permutations(labels: LabelSet) -> Vec<Relabeling> {
        let dom: Vec<u8> = labels.iter().collect();
        let mut out = Vec::new();
        let mut img = dom.clone();
        loop {
            out.push(Relabeling {
                map: dom.iter().copied().zip(img.iter().copied()).collect(),
            });
            if !next_permutation(&mut img) {
                break;
            }
        }
        out
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A sequence of pairwise-disjoint nonempty blocks; order matters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedSetPartition {
    blocks: Vec<LabelSet>,
}

impl OrderedSetPartition {
    pub fn new(blocks: Vec<LabelSet>) -> Result<OrderedSetPartition> {
        let mut seen = LabelSet::EMPTY;
        for &b in &blocks {
            if b.is_empty() {
                return Err(Error::Parse("empty block in set composition".into()));
            }
            if !b.is_disjoint(seen) {
                return Err(Error::LabelOverlap {
                    left: seen.to_string(),
                    right: b.to_string(),
                });
            }
            seen = seen.union(b);
        }
        Ok(OrderedSetPartition { blocks })
    }

    pub fn blocks(&self) -> &[LabelSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn ground(&self) -> LabelSet {
        self.blocks.iter().fold(LabelSet::EMPTY, |acc, &b| acc.union(b))
    }
}

/// Blocks kept sorted by minimum element, so equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnorderedSetPartition {
    blocks: Vec<LabelSet>,
}

impl UnorderedSetPartition {
    pub fn new(mut blocks: Vec<LabelSet>) -> Result<UnorderedSetPartition> {
        OrderedSetPartition::new(blocks.clone())?;
        blocks.sort_by_key(|b| b.min_label());
        Ok(UnorderedSetPartition { blocks })
    }

    pub fn blocks(&self) -> &[LabelSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn ground(&self) -> LabelSet {
        self.blocks.iter().fold(LabelSet::EMPTY, |acc, &b| acc.union(b))
    }

    pub fn to_ordered(&self) -> OrderedSetPartition {
        OrderedSetPartition {
            blocks: self.blocks.clone(),
        }
    }
}

/// All set partitions of `labels`, blocks in order of their minima. The
/// empty set has exactly one (empty) partition.
pub fn set_partitions(labels: LabelSet) -> Vec<UnorderedSetPartition> {
    fn go(rest: &[u8], blocks: &mut Vec<LabelSet>, out: &mut Vec<UnorderedSetPartition>) {
        let Some((&l, tail)) = rest.split_first() else {
            out.push(UnorderedSetPartition { blocks: blocks.clone() });
            return;
        };
        for i in 0..blocks.len() {
            blocks[i].insert(l);
            go(tail, blocks, out);
            blocks[i] = blocks[i].difference(LabelSet::singleton(l));
        }
        blocks.push(LabelSet::singleton(l));
        go(tail, blocks, out);
        blocks.pop();
    }
    let labels: Vec<u8> = labels.iter().collect();
    let mut out = Vec::new();
    go(&labels, &mut Vec::new(), &mut out);
    out
}

/// All ordered set partitions: each unordered partition followed by every
/// ordering of its blocks.
pub fn ordered_set_partitions(labels: LabelSet) -> Vec<OrderedSetPartition> {
    let mut out = Vec::new();
    for p in set_partitions(labels) {
        let idx: LabelSet = (0..p.len() as u8).collect();
        for perm in Relabeling::permutations(idx) {
            let blocks = (0..p.len() as u8).map(|i| p.blocks[perm.apply(i) as usize]).collect();
            out.push(OrderedSetPartition { blocks });
        }
    }
    out
}

/// All ordered pairs `(S, T)` with `S ⊔ T = labels`, including the trivial ones.
pub fn splits(labels: LabelSet) -> impl Iterator<Item = (LabelSet, LabelSet)> {
    labels.subsets().map(move |s| (s, labels.difference(s)))
}

/// Splits with both sides nonempty.
pub fn proper_splits(labels: LabelSet) -> impl Iterator<Item = (LabelSet, LabelSet)> {
    splits(labels).filter(|(s, t)| !s.is_empty() && !t.is_empty())
}

pub fn bell(n: usize) -> u128 {
    // Bell triangle
    let mut row: Vec<u128> = vec![1];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let v = next.last().unwrap().saturating_add(x);
            next.push(v);
        }
        row = next;
    }
    row[0]
}

/// Ordered Bell (Fubini) numbers.
pub fn fubini(n: usize) -> u128 {
    let mut a: Vec<u128> = vec![1];
    for m in 1..=n {
        let mut s: u128 = 0;
        let mut binom: u128 = 1;
        for k in 1..=m {
            binom = binom * (m - k + 1) as u128 / k as u128;
            s = s.saturating_add(binom.saturating_mul(a[m - k]));
        }
        a.push(s);
    }
    a[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_cover_powerset() {
        let s: LabelSet = [1, 3, 4].into_iter().collect();
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|x| x.is_subset(s)));
        assert_eq!(LabelSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn partition_counts() {
        for n in 0..7 {
            assert_eq!(set_partitions(LabelSet::range(n)).len() as u128, bell(n));
            assert_eq!(ordered_set_partitions(LabelSet::range(n)).len() as u128, fubini(n));
        }
        assert_eq!((0..6).map(fubini).collect::<Vec<_>>(), vec![1, 1, 3, 13, 75, 541]);
        assert_eq!(bell(5), 52);
    }

    #[test]
    fn encode_label_sets() {
        assert_eq!(LabelSet::range(3).encode(), "n=3");
        let s: LabelSet = [0, 2].into_iter().collect();
        assert_eq!(s.encode(), "V=0,2");
        assert_eq!(LabelSet::parse("V=0,2").unwrap(), s);
        assert_eq!(LabelSet::parse("n=0").unwrap(), LabelSet::EMPTY);
        assert!(LabelSet::parse("x=1").is_err());
    }

    #[test]
    fn relabeling_composition() {
        let labels = LabelSet::range(3);
        let perms = Relabeling::permutations(labels);
        assert_eq!(perms.len(), 6);
        for p in &perms {
            assert_eq!(p.then(&p.inverse()), Relabeling::identity(labels));
        }
        assert!(Relabeling::new([(0, 1), (1, 1)]).is_err());
    }

    #[test]
    fn ordered_partition_rejects_overlap() {
        let a = LabelSet::range(2);
        assert!(OrderedSetPartition::new(vec![a, a]).is_err());
        assert!(OrderedSetPartition::new(vec![LabelSet::EMPTY]).is_err());
    }
}
