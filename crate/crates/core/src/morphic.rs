//! Substitutions on finite alphabets and the machinery built on them:
//! fixed points, letter codings, mirror symmetry, incidence matrices,
//! 2-block presentations and exact Perron frequencies.
//!
//! Incidence matrices use the column-per-source-letter convention:
//! `M[i][j]` counts occurrences of letter `i` in the image of letter `j`,
//! rows and columns in ascending letter order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exactnum::{mat_vec, quad_nullspace, QuadRat};

pub type Letter = u8;
pub type Word = Vec<Letter>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphicError {
    #[error("morphism has an empty alphabet")]
    EmptyAlphabet,
    #[error("image of letter {0} is empty")]
    EmptyImage(Letter),
    #[error("letter {letter} in the image of {image_of} is outside the alphabet")]
    UnknownLetter { letter: Letter, image_of: Letter },
    #[error("letter {0} is not in the alphabet")]
    NotInAlphabet(Letter),
    #[error("image of {0} does not start with {0} or is too short to prolong")]
    NotProlongable(Letter),
    #[error("morphisms act on different alphabets")]
    AlphabetMismatch,
    #[error("expected a one-dimensional eigenspace, found dimension {0}")]
    EigenspaceDimension(usize),
    #[error("eigenvector has entries of both signs or a zero entry")]
    NotPositive,
    #[error("M v = lambda v fails for the computed eigenvector")]
    EigenCheckFailed,
    #[error("frequencies must be positive and sum to 1")]
    NotNormalized,
    #[error("cannot parse morphism line {0:?}")]
    Parse(String),
}

/// A substitution: each letter of the alphabet maps to a nonempty word over
/// the same alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    images: BTreeMap<Letter, Word>,
}

impl Morphism {
    pub fn new<I>(images: I) -> Result<Self, MorphicError>
    where
        I: IntoIterator<Item = (Letter, Word)>,
    {
        let images: BTreeMap<Letter, Word> = images.into_iter().collect();
        if images.is_empty() {
            return Err(MorphicError::EmptyAlphabet);
        }
        for (&a, w) in &images {
            if w.is_empty() {
                return Err(MorphicError::EmptyImage(a));
            }
            if let Some(&b) = w.iter().find(|b| !images.contains_key(b)) {
                return Err(MorphicError::UnknownLetter {
                    letter: b,
                    image_of: a,
                });
            }
        }
        Ok(Morphism { images })
    }

    /// Convenience constructor from `(letter, "digits")` pairs.
    pub fn from_digits(pairs: &[(Letter, &str)]) -> Result<Self, MorphicError> {
        Morphism::new(pairs.iter().map(|&(a, w)| (a, digits(w))))
    }

    pub fn alphabet(&self) -> Vec<Letter> {
        self.images.keys().copied().collect()
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn contains(&self, a: Letter) -> bool {
        self.images.contains_key(&a)
    }

    /// Image of a letter. Panics if `a` is not in the alphabet.
    pub fn image(&self, a: Letter) -> &[Letter] {
        &self.images[&a]
    }

    pub fn images(&self) -> impl Iterator<Item = (Letter, &[Letter])> {
        self.images.iter().map(|(&a, w)| (a, w.as_slice()))
    }

    pub fn apply(&self, w: &[Letter]) -> Word {
        w.iter()
            .flat_map(|&a| self.image(a).iter().copied())
            .collect()
    }

    /// `m^n(w)`.
    pub fn iterate(&self, w: &[Letter], n: u32) -> Word {
        (0..n).fold(w.to_vec(), |acc, _| self.apply(&acc))
    }

    /// `self o other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism, MorphicError> {
        if self.alphabet() != other.alphabet() {
            return Err(MorphicError::AlphabetMismatch);
        }
        Morphism::new(other.images.iter().map(|(&a, w)| (a, self.apply(w))))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().all(|(&a, w)| w.as_slice() == [a])
    }

    /// Dense lookup table indexed by letter value.
    fn dense(&self) -> Vec<Word> {
        let max = *self.images.keys().next_back().expect("nonempty") as usize;
        let mut table = vec![Vec::new(); max + 1];
        for (&a, w) in &self.images {
            table[a as usize] = w.clone();
        }
        table
    }
}

/// Parses a digit string into letters, e.g. `"8312"`.
pub fn digits(s: &str) -> Word {
    s.bytes().map(|b| b - b'0').collect()
}

/// Renders letters as a digit string when every letter is a single digit,
/// otherwise as space-separated numbers.
pub fn render_word(w: &[Letter]) -> String {
    if w.iter().all(|&a| a < 10) {
        w.iter().map(|&a| (b'0' + a) as char).collect()
    } else {
        w.iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// One `i -> w` line per letter.
impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, w) in &self.images {
            writeln!(f, "{a} -> {}", render_word(w))?;
        }
        Ok(())
    }
}

impl FromStr for Morphism {
    type Err = MorphicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut images = Vec::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let bad = || MorphicError::Parse(line.to_string());
            let (lhs, rhs) = line.split_once("->").ok_or_else(bad)?;
            let a: Letter = lhs.trim().parse().map_err(|_| bad())?;
            let rhs = rhs.trim();
            let w: Word = if rhs.contains(char::is_whitespace) {
                rhs.split_whitespace()
                    .map(|t| t.parse().map_err(|_| bad()))
                    .collect::<Result<_, _>>()?
            } else {
                if !rhs.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                digits(rhs)
            };
            images.push((a, w));
        }
        Morphism::new(images)
    }
}

/// A letter-to-letter map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coding {
    map: BTreeMap<Letter, Letter>,
}

impl Coding {
    pub fn new<I: IntoIterator<Item = (Letter, Letter)>>(map: I) -> Self {
        Coding {
            map: map.into_iter().collect(),
        }
    }

    /// Checks that the coding is defined on every letter of `m`.
    pub fn is_total_on(&self, m: &Morphism) -> bool {
        m.alphabet().iter().all(|a| self.map.contains_key(a))
    }

    /// Panics if `a` is outside the domain.
    pub fn code(&self, a: Letter) -> Letter {
        self.map[&a]
    }

    pub fn apply(&self, w: &[Letter]) -> Word {
        w.iter().map(|&a| self.code(a)).collect()
    }

    fn dense(&self) -> [Letter; 256] {
        let mut table = [0; 256];
        for (&a, &b) in &self.map {
            table[a as usize] = b;
        }
        table
    }
}

/// The substitution `1->12, 2->312, 3->47, 4->8312, 5->56, 6->756, 7->83, 8->4756`.
pub fn tau() -> Morphism {
    Morphism::from_digits(&[
        (1, "12"),
        (2, "312"),
        (3, "47"),
        (4, "8312"),
        (5, "56"),
        (6, "756"),
        (7, "83"),
        (8, "4756"),
    ])
    .expect("constant morphism is well formed")
}

/// The mirror involution `1<->5, 2<->6, 3<->7, 4<->8`.
pub fn mu() -> Morphism {
    Morphism::new((1..=8).map(|a| (a, vec![(a + 3) % 8 + 1]))).expect("well formed")
}

/// Letters `1,3,6,8` code to 0 and `2,4,5,7` to 1.
pub fn lambda_coding() -> Coding {
    Coding::new([
        (1, 0),
        (3, 0),
        (6, 0),
        (8, 0),
        (2, 1),
        (4, 1),
        (5, 1),
        (7, 1),
    ])
}

/// Thue-Morse substitution `0->01, 1->10`.
pub fn thue_morse() -> Morphism {
    Morphism::from_digits(&[(0, "01"), (1, "10")]).expect("well formed")
}

/// Bit complement `0<->1` as a morphism.
pub fn bit_swap() -> Morphism {
    Morphism::from_digits(&[(0, "1"), (1, "0")]).expect("well formed")
}

fn check_prolongable(m: &Morphism, seed: Letter) -> Result<(), MorphicError> {
    if !m.contains(seed) {
        return Err(MorphicError::NotInAlphabet(seed));
    }
    let img = m.image(seed);
    if img.len() < 2 || img[0] != seed {
        return Err(MorphicError::NotProlongable(seed));
    }
    Ok(())
}

/// Lazily emits the one-sided fixed point `m^inf(seed)`.
///
/// With `m(seed) = seed u` the fixed point is `seed u m(u) m^2(u) ...`; the
/// stream walks the derivation tree of each `m^k(u)` depth first with an
/// explicit stack, so memory grows with the current level only.
#[derive(Clone, Debug)]
pub struct FixedPointStream {
    images: Vec<Word>,
    root: usize,
    seed: Letter,
    started: bool,
    level: usize,
    stack: Vec<(usize, usize)>,
    position: u64,
}

impl FixedPointStream {
    pub fn new(m: &Morphism, seed: Letter) -> Result<Self, MorphicError> {
        check_prolongable(m, seed)?;
        let mut images = m.dense();
        let root = images.len();
        images.push(m.image(seed)[1..].to_vec());
        Ok(FixedPointStream {
            images,
            root,
            seed,
            started: false,
            level: 0,
            stack: Vec::new(),
            position: 0,
        })
    }

    /// Number of symbols emitted so far.
    pub fn position(&self) -> u64 {
        self.position
    }

    /// Rewinds to the first symbol.
    pub fn restart(&mut self) {
        self.started = false;
        self.level = 0;
        self.stack.clear();
        self.position = 0;
    }
}

impl Iterator for FixedPointStream {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        if !self.started {
            self.started = true;
            self.position = 1;
            return Some(self.seed);
        }
        loop {
            if self.stack.is_empty() {
                if self.position > 1 {
                    self.level += 1;
                }
                self.stack.push((self.root, 0));
            }
            let depth = self.stack.len() - 1;
            let (w, i) = *self.stack.last().expect("nonempty");
            if i == self.images[w].len() {
                self.stack.pop();
                if let Some(parent) = self.stack.last_mut() {
                    parent.1 += 1;
                }
                continue;
            }
            let x = self.images[w][i];
            if depth == self.level {
                self.stack.last_mut().expect("nonempty").1 += 1;
                self.position += 1;
                return Some(x);
            }
            self.stack.push((x as usize, 0));
        }
    }
}

pub fn fixed_point(m: &Morphism, seed: Letter) -> Result<FixedPointStream, MorphicError> {
    FixedPointStream::new(m, seed)
}

/// First `len` letters of the fixed point, generated in place from
/// `t = m(t)`.
pub fn fixed_point_prefix(m: &Morphism, seed: Letter, len: usize) -> Result<Word, MorphicError> {
    check_prolongable(m, seed)?;
    let images = m.dense();
    let mut t = Vec::with_capacity(len + 8);
    t.extend_from_slice(&images[seed as usize]);
    let mut read = 1;
    while t.len() < len {
        let a = t[read];
        t.extend_from_slice(&images[a as usize]);
        read += 1;
    }
    t.truncate(len);
    Ok(t)
}

/// As [`fixed_point_prefix`] followed by a coding, without materializing
/// the uncoded prefix beyond what the generator needs.
pub fn coded_prefix(
    m: &Morphism,
    seed: Letter,
    coding: &Coding,
    len: usize,
) -> Result<Word, MorphicError> {
    let table = coding.dense();
    let t = fixed_point_prefix(m, seed, len)?;
    Ok(t.into_iter().map(|a| table[a as usize]).collect())
}

/// True iff `m(inv(a)) = inv(m(a))` for every letter `a`.
pub fn check_mirror_invariance(m: &Morphism, inv: &Morphism) -> bool {
    m.alphabet() == inv.alphabet()
        && m.alphabet()
            .into_iter()
            .all(|a| m.apply(inv.image(a)) == inv.apply(m.image(a)))
}

/// `M[i][j]` = occurrences of the `i`-th letter in the image of the `j`-th.
pub fn incidence_matrix(m: &Morphism) -> Vec<Vec<u64>> {
    let alphabet = m.alphabet();
    let index: BTreeMap<Letter, usize> =
        alphabet.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let k = alphabet.len();
    let mut mat = vec![vec![0u64; k]; k];
    for (j, &a) in alphabet.iter().enumerate() {
        for b in m.image(a) {
            mat[index[b]][j] += 1;
        }
    }
    mat
}

pub type Block = [Letter; 2];

/// The 2-block presentation of a substitution's fixed point.
///
/// `blocks` lists the 2-letter factors in ascending lexicographic order;
/// block `blocks[i]` is the letter `i + 1` of `morphism`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    pub blocks: Vec<Block>,
    pub morphism: Morphism,
}

impl BlockSystem {
    /// Letter coding the block, if the block occurs.
    pub fn letter_of(&self, block: Block) -> Option<Letter> {
        self.blocks
            .binary_search(&block)
            .ok()
            .map(|i| (i + 1) as Letter)
    }

    pub fn block_of(&self, letter: Letter) -> Block {
        self.blocks[letter as usize - 1]
    }

    /// Relabels letter frequencies of the derived morphism by their blocks.
    pub fn block_frequencies(&self, fv: &FreqVector<Letter>) -> FreqVector<Block> {
        fv.pushforward(|&l| self.block_of(l))
    }
}

fn derived_image(m: &Morphism, block: Block) -> Vec<Block> {
    let mut w = m.image(block[0]).to_vec();
    w.extend_from_slice(m.image(block[1]));
    (0..m.image(block[0]).len())
        .map(|i| [w[i], w[i + 1]])
        .collect()
}

/// Builds the 2-block substitution: starting from the first two letters of
/// the fixed point, the image of `ab` is the sequence of 2-blocks of
/// `m(a)m(b)` starting at positions `0 .. |m(a)|`; blocks are collected
/// until closure.
pub fn two_block_substitution(m: &Morphism, seed: Letter) -> Result<BlockSystem, MorphicError> {
    check_prolongable(m, seed)?;
    let first = [seed, m.image(seed)[1]];
    let mut seen = BTreeSet::from([first]);
    let mut queue = VecDeque::from([first]);
    while let Some(b) = queue.pop_front() {
        for c in derived_image(m, b) {
            if seen.insert(c) {
                queue.push_back(c);
            }
        }
    }
    let blocks: Vec<Block> = seen.into_iter().collect();
    let index = |b: &Block| (blocks.binary_search(b).expect("closed") + 1) as Letter;
    let morphism = Morphism::new(blocks.iter().map(|b| {
        let img = derived_image(m, *b).iter().map(index).collect();
        (index(b), img)
    }))?;
    Ok(BlockSystem { blocks, morphism })
}

/// An exact probability vector: positive entries summing to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreqVector<K: Ord> {
    entries: BTreeMap<K, QuadRat>,
}

impl<K: Ord + Clone> FreqVector<K> {
    pub fn new(entries: BTreeMap<K, QuadRat>) -> Result<Self, MorphicError> {
        let total: QuadRat = entries.values().sum();
        if total != QuadRat::one() || !entries.values().all(QuadRat::is_positive) {
            return Err(MorphicError::NotNormalized);
        }
        Ok(FreqVector { entries })
    }

    pub fn get(&self, k: &K) -> Option<&QuadRat> {
        self.entries.get(k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &QuadRat)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> QuadRat {
        self.entries.values().sum()
    }

    /// Sums mass over the preimages of each image item.
    pub fn pushforward<J: Ord + Clone, F: Fn(&K) -> J>(&self, f: F) -> FreqVector<J> {
        let mut out: BTreeMap<J, QuadRat> = BTreeMap::new();
        for (k, v) in &self.entries {
            let slot = out.entry(f(k)).or_insert_with(QuadRat::zero);
            *slot = &*slot + v;
        }
        FreqVector { entries: out }
    }
}

/// Normalized positive eigenvector of the incidence matrix at the supplied
/// dominant eigenvalue, checked exactly before it is returned.
pub fn perron_frequencies(
    m: &Morphism,
    eigenvalue: &QuadRat,
) -> Result<FreqVector<Letter>, MorphicError> {
    let counts = incidence_matrix(m);
    let mat: Vec<Vec<QuadRat>> = counts
        .iter()
        .map(|row| row.iter().map(|&c| QuadRat::from_int(c as i64)).collect())
        .collect();
    let shifted: Vec<Vec<QuadRat>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| if i == j { x - eigenvalue } else { x.clone() })
                .collect()
        })
        .collect();
    let basis = quad_nullspace(&shifted);
    if basis.len() != 1 {
        return Err(MorphicError::EigenspaceDimension(basis.len()));
    }
    let v = &basis[0];
    let sign = v[0].signum();
    if v.iter().any(|x| x.signum() != sign || x.is_zero()) {
        return Err(MorphicError::NotPositive);
    }
    let scale = v
        .iter()
        .sum::<QuadRat>()
        .inv()
        .ok_or(MorphicError::NotPositive)?;
    let v: Vec<QuadRat> = v.iter().map(|x| x * &scale).collect();

    let lhs = mat_vec(&mat, &v);
    if lhs.iter().zip(&v).any(|(l, x)| *l != eigenvalue * x) {
        return Err(MorphicError::EigenCheckFailed);
    }
    FreqVector::new(m.alphabet().into_iter().zip(v).collect())
}

/// Letter frequencies pushed through a coding.
pub fn coded_frequencies(fv: &FreqVector<Letter>, c: &Coding) -> FreqVector<Letter> {
    fv.pushforward(|&a| c.code(a))
}

/// Block frequencies pushed through a coding applied to both letters.
pub fn coded_block_frequencies(fv: &FreqVector<Block>, c: &Coding) -> FreqVector<Block> {
    fv.pushforward(|b| [c.code(b[0]), c.code(b[1])])
}

/// Outcome of [`factors`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport {
    pub length: usize,
    pub factors: BTreeSet<Word>,
    /// Smallest `n` whose factor set equals that of `n + 1`; `None` if the
    /// search hit its size cap first.
    pub stable_level: Option<u32>,
    /// Length of the prefix the factor set was read from.
    pub prefix_len: usize,
    /// Start positions of the probe word inside that prefix.
    pub probe_positions: Vec<u64>,
}

/// Hard cap on the prefix length examined by [`factors`].
pub const FACTOR_PREFIX_CAP: usize = 1 << 26;

/// Length-`length` factors of the (coded) words `m^n(seed)`, for increasing
/// `n` until two consecutive levels give the same nonempty set.
///
/// Stabilization is heuristic evidence, not a proof that no further factors
/// occur.
pub fn factors(
    m: &Morphism,
    seed: Letter,
    coding: Option<&Coding>,
    length: usize,
    probe: Option<&[Letter]>,
) -> Result<FactorReport, MorphicError> {
    check_prolongable(m, seed)?;
    let read = |n: u32| -> Word {
        let w = m.iterate(&[seed], n);
        match coding {
            Some(c) => c.apply(&w),
            None => w,
        }
    };
    let factor_set = |w: &[Letter]| -> BTreeSet<Word> {
        if length == 0 {
            return BTreeSet::from([Vec::new()]);
        }
        w.windows(length).map(<[Letter]>::to_vec).collect()
    };

    let mut level = 0u32;
    let mut word = read(0);
    let mut set = factor_set(&word);
    let stable_level = loop {
        let next_word = read(level + 1);
        let next_set = factor_set(&next_word);
        let done = !set.is_empty() && next_set == set;
        word = next_word;
        set = next_set;
        if done {
            break Some(level);
        }
        if word.len() > FACTOR_PREFIX_CAP {
            break None;
        }
        level += 1;
    };

    let probe_positions = match probe {
        Some(p) if !p.is_empty() => word
            .windows(p.len())
            .enumerate()
            .filter(|(_, w)| *w == p)
            .map(|(i, _)| i as u64)
            .collect(),
        _ => Vec::new(),
    };
    Ok(FactorReport {
        length,
        factors: set,
        stable_level,
        prefix_len: word.len(),
        probe_positions,
    })
}

/// `T(0), ..., T(len-1)` read off the coded fixed point.
pub fn tsd_morphic_prefix(len: usize) -> Word {
    coded_prefix(&tau(), 1, &lambda_coding(), len).expect("tau prolongs 1")
}

/// `T` on `Lambda_j` from the substitution: `lambda(tau^n(1))` for
/// `j = 2n`, `lambda(tau^n(3))` for `j = 2n+1`, `n >= 1`; the first two
/// intervals are read from the fixed point.
pub fn tsd_interval_morphic(j: u32) -> Word {
    match j {
        0 => vec![0, 1],
        1 => vec![0],
        _ => {
            let seed = if j.is_multiple_of(2) { 1 } else { 3 };
            lambda_coding().apply(&tau().iterate(&[seed], j / 2))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_constants() {
        let t = tau();
        assert_eq!(t.image(4), digits("8312").as_slice());
        assert!(mu().compose(&mu()).unwrap().is_identity());
        assert_eq!(lambda_coding().code(7), 1);
        assert!(lambda_coding().is_total_on(&t));
        assert_eq!(mu().image(3), &[7]);
        assert_eq!(mu().image(8), &[4]);
    }

    #[test]
    fn streams() {
        let s: Word = fixed_point(&tau(), 1).unwrap().take(10).collect();
        assert_eq!(s, digits("1231247123"));
        let tm: Word = fixed_point(&thue_morse(), 0).unwrap().take(6).collect();
        assert_eq!(tm, digits("011010"));
        let coded =
            lambda_coding().apply(&fixed_point(&tau(), 1).unwrap().take(29).collect::<Word>());
        assert_eq!(coded, digits("01001110100100010001001110100"));
        assert!(matches!(
            fixed_point(&tau(), 2),
            Err(MorphicError::NotProlongable(2))
        ));
        assert!(matches!(
            fixed_point(&tau(), 9),
            Err(MorphicError::NotInAlphabet(9))
        ));
    }

    #[test]
    fn stream_matches_in_place_prefix() {
        for (m, seed) in [(tau(), 1), (tau(), 5), (thue_morse(), 1)] {
            let mut s = fixed_point(&m, seed).unwrap();
            let a: Word = s.by_ref().take(5000).collect();
            assert_eq!(s.position(), 5000);
            assert_eq!(a, fixed_point_prefix(&m, seed, 5000).unwrap());
            s.restart();
            assert_eq!(s.next(), Some(seed));
        }
    }

    #[test]
    fn mirror_invariance() {
        assert!(check_mirror_invariance(&tau(), &mu()));
        assert!(check_mirror_invariance(&thue_morse(), &bit_swap()));
        // 1 <-> 2: tau(swap(1)) = tau(2) = 312 but swap(tau(1)) = swap(12) = 21
        let swap12 = Morphism::new((1..=8).map(|a| {
            let b = match a {
                1 => 2,
                2 => 1,
                x => x,
            };
            (a, vec![b])
        }))
        .unwrap();
        assert!(!check_mirror_invariance(&tau(), &swap12));
        assert!(!check_mirror_invariance(&tau(), &bit_swap()));
    }

    #[test]
    fn incidence() {
        let m = incidence_matrix(&tau());
        let column = |j: usize| (0..8).map(|i| m[i][j]).collect::<Vec<_>>();
        assert_eq!(column(0), vec![1, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(column(3), vec![1, 1, 1, 0, 0, 0, 0, 1]);
        let tm = incidence_matrix(&thue_morse());
        assert!(tm.iter().all(|row| row.iter().sum::<u64>() == 2));
    }

    #[test]
    fn block_system() {
        let bs = two_block_substitution(&tau(), 1).unwrap();
        let listed: Vec<String> = bs.blocks.iter().map(|b| render_word(b)).collect();
        assert_eq!(
            listed.join(","),
            "12,23,24,28,31,35,47,56,64,67,68,71,75,83"
        );
        assert_eq!(bs.morphism.image(1), &[1, 2]);
        assert_eq!(bs.morphism.image(5), &[7, 12]);
        assert_eq!(bs.morphism.image(2), &[5, 1, 3]);
        assert_eq!(bs.letter_of([8, 3]), Some(14));
        assert_eq!(bs.letter_of([1, 3]), None);
    }

    #[test]
    fn trivial_perron() {
        let m = Morphism::from_digits(&[(1, "11")]).unwrap();
        let fv = perron_frequencies(&m, &QuadRat::from_int(2)).unwrap();
        assert_eq!(fv.get(&1), Some(&QuadRat::one()));
        assert_eq!(
            perron_frequencies(&m, &QuadRat::from_int(3)),
            Err(MorphicError::EigenspaceDimension(0))
        );
        // identity on two letters: eigenspace at 1 is two-dimensional
        let id = Morphism::from_digits(&[(1, "1"), (2, "2")]).unwrap();
        assert_eq!(
            perron_frequencies(&id, &QuadRat::one()),
            Err(MorphicError::EigenspaceDimension(2))
        );
    }

    #[test]
    fn letter_frequencies() {
        let fv = perron_frequencies(&tau(), &QuadRat::phi_squared()).unwrap();
        for a in 1..=4 {
            assert_eq!(fv.get(&a), fv.get(&(a + 4)));
        }
        let coded = coded_frequencies(&fv, &lambda_coding());
        let half = QuadRat::from_fracs(1, 2, 0, 1);
        assert_eq!(coded.get(&0), Some(&half));
        assert_eq!(coded.get(&1), Some(&half));
    }

    #[test]
    fn morphism_text_format() {
        let text = tau().to_string();
        assert!(text.starts_with("1 -> 12\n2 -> 312\n"));
        assert_eq!(text.parse::<Morphism>().unwrap(), tau());
        assert_eq!(
            "1 -> 10 2\n2 -> 1\n10 -> 1"
                .parse::<Morphism>()
                .unwrap()
                .image(1),
            &[10, 2]
        );
        assert!(matches!(
            "1 => 2".parse::<Morphism>(),
            Err(MorphicError::Parse(_))
        ));
        assert!(matches!(
            "1 -> 12".parse::<Morphism>(),
            Err(MorphicError::UnknownLetter { .. })
        ));
        assert!(matches!(
            "".parse::<Morphism>(),
            Err(MorphicError::EmptyAlphabet)
        ));
    }

    #[test]
    fn factor_sets() {
        let lam = lambda_coding();
        let r = factors(&tau(), 1, Some(&lam), 1, None).unwrap();
        assert_eq!(r.factors, BTreeSet::from([vec![0], vec![1]]));
        let r = factors(&tau(), 1, Some(&lam), 3, Some(&[0, 0, 0])).unwrap();
        assert!(r.factors.contains(&vec![0, 0, 0]));
        assert_eq!(r.probe_positions.first(), Some(&12));
    }

    #[test]
    fn interval_words() {
        assert_eq!(tsd_interval_morphic(2), vec![0, 1]);
        assert_eq!(tsd_interval_morphic(3), vec![1, 1]);
        assert_eq!(tsd_interval_morphic(5), vec![0, 0, 0, 1, 0, 0]);
    }
}
