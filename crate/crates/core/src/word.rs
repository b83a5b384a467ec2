//! Reduced words, unoriented words and cyclic words over a free basis.
//!
//! Letters are encoded as `2 * generator + inverted`, so the derived ordering
//! is the fixed letter order x1 < X1 < x2 < X2 < ... and inversion flips the
//! low bit.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("the empty word is not a valid u-word or cyclic word")]
    Empty,
    #[error("word is conjugate to the identity")]
    TrivialCore,
    #[error("a {k}-affix needs a host longer than {len}")]
    AffixTooLong { k: usize, len: usize },
    #[error("generator {index} is out of range for rank {n}")]
    LetterOutOfRange { index: usize, n: usize },
    #[error("rank must be at least 1")]
    ZeroRank,
}

/// A generator or inverse generator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u16);

impl Letter {
    pub const fn new(generator: usize, inverted: bool) -> Letter {
        Letter((generator as u16) << 1 | inverted as u16)
    }

    /// The positive letter for a 0-based generator index.
    pub const fn gen(generator: usize) -> Letter {
        Letter::new(generator, false)
    }

    /// The inverse letter for a 0-based generator index.
    pub const fn gen_inv(generator: usize) -> Letter {
        Letter::new(generator, true)
    }

    pub const fn from_code(code: usize) -> Letter {
        Letter(code as u16)
    }

    pub const fn code(self) -> usize {
        self.0 as usize
    }

    pub const fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub const fn is_inverted(self) -> bool {
        self.0 & 1 == 1
    }

    pub const fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.is_inverted() { 'X' } else { 'x' };
        write!(f, "{}{}", c, self.generator() + 1)
    }
}

/// The letters of F_n together with their order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    n: usize,
}

impl Alphabet {
    pub fn new(n: usize) -> Result<Alphabet, WordError> {
        if n == 0 {
            return Err(WordError::ZeroRank);
        }
        Ok(Alphabet { n })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// All 2n letters in the fixed order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..2 * self.n).map(Letter::from_code)
    }

    pub fn contains(&self, a: Letter) -> bool {
        a.generator() < self.n
    }

    /// Checks that every letter of `w` lies in this alphabet.
    pub fn check(&self, w: &[Letter]) -> Result<(), WordError> {
        match w.iter().find(|a| !self.contains(**a)) {
            Some(a) => Err(WordError::LetterOutOfRange { index: a.generator(), n: self.n }),
            None => Ok(()),
        }
    }
}

// ---------------------------------------------------------------------------
// Reduced words

/// A freely reduced word, possibly empty.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedWord(Vec<Letter>);

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for a in &self.0 {
            write!(f, "{:?}", a)?;
        }
        Ok(())
    }
}

/// Free reduction with a stack; the output is the unique reduced form.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> ReducedWord {
    let mut out: Vec<Letter> = Vec::new();
    for a in letters {
        if out.last() == Some(&a.inverse()) {
            out.pop();
        } else {
            out.push(a);
        }
    }
    ReducedWord(out)
}

pub fn is_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|p| p[0] != p[1].inverse())
}

impl ReducedWord {
    pub fn empty() -> ReducedWord {
        ReducedWord(Vec::new())
    }

    pub fn letter(a: Letter) -> ReducedWord {
        ReducedWord(vec![a])
    }

    /// Wraps letters that are already known to be reduced. Panics otherwise.
    pub fn from_reduced(letters: Vec<Letter>) -> ReducedWord {
        assert!(is_reduced(&letters), "letters are not freely reduced");
        ReducedWord(letters)
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<Letter>) -> ReducedWord {
        debug_assert!(is_reduced(&letters));
        ReducedWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord(invert_letters(&self.0))
    }

    /// The reduced product `self * other`.
    pub fn concat(&self, other: &ReducedWord) -> ReducedWord {
        let mut cut = 0;
        while cut < self.len().min(other.len()) && self.0[self.len() - 1 - cut] == other.0[cut].inverse() {
            cut += 1;
        }
        let mut v = self.0[..self.len() - cut].to_vec();
        v.extend_from_slice(&other.0[cut..]);
        ReducedWord(v)
    }

    /// True when `self * other` needs no cancellation.
    pub fn joins(&self, other: &ReducedWord) -> bool {
        match (self.last(), other.first()) {
            (Some(a), Some(b)) => a != b.inverse(),
            _ => true,
        }
    }

    pub fn power(&self, l: usize) -> ReducedWord {
        let mut acc = ReducedWord::empty();
        for _ in 0..l {
            acc = acc.concat(self);
        }
        acc
    }

    /// A contiguous subword; subwords of reduced words are reduced.
    pub fn slice(&self, range: std::ops::Range<usize>) -> ReducedWord {
        ReducedWord(self.0[range].to_vec())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(a), Some(b)) => self.len() == 1 || a != b.inverse(),
            _ => true,
        }
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|a| a.generator()).max()
    }
}

pub fn invert_letters(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|a| a.inverse()).collect()
}

/// Splits `w = t⁻¹ · core · t` with `core` cyclically reduced and `t` maximal.
pub fn cyclic_reduce(w: &ReducedWord) -> Result<(ReducedWord, ReducedWord), WordError> {
    let n = w.len();
    let mut c = 0;
    while 2 * c + 1 < n && w.0[c] == w.0[n - 1 - c].inverse() {
        c += 1;
    }
    if n == 0 {
        return Err(WordError::TrivialCore);
    }
    let core = ReducedWord(w.0[c..n - c].to_vec());
    let t = ReducedWord(w.0[n - c..].to_vec());
    Ok((t, core))
}

/// Compares a spelling with its inverse without allocating.
pub fn cmp_with_inverse(w: &[Letter]) -> Ordering {
    let n = w.len();
    for i in 0..n {
        let b = w[n - 1 - i].inverse();
        match w[i].cmp(&b) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

// ---------------------------------------------------------------------------
// Unoriented words

/// A nonempty reduced word up to inversion, stored as its lex-min spelling.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UWord(ReducedWord);

impl fmt::Debug for UWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}>", self.0)
    }
}

impl UWord {
    pub fn new(w: &ReducedWord) -> Result<UWord, WordError> {
        if w.is_empty() {
            return Err(WordError::Empty);
        }
        Ok(Self::from_spelling(w.letters()))
    }

    /// Canonicalizes a nonempty reduced letter slice.
    pub(crate) fn from_spelling(w: &[Letter]) -> UWord {
        debug_assert!(!w.is_empty() && is_reduced(w));
        if cmp_with_inverse(w) == Ordering::Greater {
            UWord(ReducedWord(invert_letters(w)))
        } else {
            UWord(ReducedWord(w.to_vec()))
        }
    }

    pub fn letter(a: Letter) -> UWord {
        UWord::from_spelling(&[a])
    }

    /// The lex-min spelling.
    pub fn canon(&self) -> &ReducedWord {
        &self.0
    }

    pub fn letters(&self) -> &[Letter] {
        self.0.letters()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn canon_uword(w: &ReducedWord) -> Result<UWord, WordError> {
    UWord::new(w)
}

/// Choice of a preferred spelling for every u-word.
///
/// The default is the lex-min spelling; individual u-words may be overridden.
/// The choice only affects which affix map an affix is assigned to.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Orientation {
    overrides: HashMap<UWord, ReducedWord>,
}

impl Orientation {
    pub fn lex_min() -> Orientation {
        Orientation::default()
    }

    /// Makes `spelling` the preferred spelling of its u-word.
    pub fn with_override(mut self, spelling: &ReducedWord) -> Result<Orientation, WordError> {
        let u = UWord::new(spelling)?;
        if u.canon() == spelling {
            self.overrides.remove(&u);
        } else {
            self.overrides.insert(u, spelling.clone());
        }
        Ok(self)
    }

    pub fn is_default(&self) -> bool {
        self.overrides.is_empty()
    }

    /// The preferred spelling of `u`.
    pub fn orient(&self, u: &UWord) -> ReducedWord {
        self.overrides.get(u).cloned().unwrap_or_else(|| u.canon().clone())
    }

    /// True when `spelling` is the preferred spelling of its own u-word.
    pub fn is_preferred(&self, spelling: &[Letter]) -> bool {
        if !self.overrides.is_empty() {
            let u = UWord::from_spelling(spelling);
            if let Some(s) = self.overrides.get(&u) {
                return s.letters() == spelling;
            }
        }
        cmp_with_inverse(spelling) != Ordering::Greater
    }
}

// ---------------------------------------------------------------------------
// Cyclic words

/// A nonempty cyclically reduced word up to rotation and inversion.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord(ReducedWord);

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})", self.0)
    }
}

/// Start index of the least rotation (two-pointer minimum expression).
pub fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

fn rotated(s: &[Letter], r: usize) -> Vec<Letter> {
    s[r..].iter().chain(&s[..r]).copied().collect()
}

impl CyclicWord {
    pub fn new(w: &ReducedWord) -> Result<CyclicWord, WordError> {
        if w.is_empty() {
            return Err(WordError::Empty);
        }
        let (_, core) = cyclic_reduce(w)?;
        Ok(Self::from_core(core.letters()))
    }

    /// Canonicalizes a nonempty cyclically reduced letter slice.
    pub(crate) fn from_core(core: &[Letter]) -> CyclicWord {
        debug_assert!(!core.is_empty());
        let a = rotated(core, least_rotation(core));
        let inv = invert_letters(core);
        let b = rotated(&inv, least_rotation(&inv));
        CyclicWord(ReducedWord(a.min(b)))
    }

    pub fn letter(a: Letter) -> CyclicWord {
        CyclicWord(ReducedWord(vec![a.min(a.inverse())]))
    }

    pub fn canon(&self) -> &ReducedWord {
        &self.0
    }

    pub fn letters(&self) -> &[Letter] {
        self.0.letters()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letter at necklace position `i`, wrapping.
    pub fn at(&self, i: usize) -> Letter {
        self.0 .0[i % self.0.len()]
    }

    /// The l-th power as a cyclic word.
    pub fn power(&self, l: usize) -> CyclicWord {
        assert!(l >= 1);
        let v: Vec<Letter> = self.letters().iter().copied().cycle().take(l * self.len()).collect();
        CyclicWord::from_core(&v)
    }

    /// The `len`-letter window starting at necklace position `start`.
    pub fn window(&self, start: usize, len: usize) -> Vec<Letter> {
        (0..len).map(|i| self.at(start + i)).collect()
    }
}

pub fn canon_cyclic(w: &ReducedWord) -> Result<CyclicWord, WordError> {
    CyclicWord::new(w)
}

/// The shortest cyclic word whose power is `w`, and the exponent.
pub fn primitive_root(w: &CyclicWord) -> (CyclicWord, usize) {
    let s = w.letters();
    let n = s.len();
    // failure function of the canonical spelling
    let mut fail = vec![0usize; n + 1];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    let p = n - fail[n];
    let period = if n % p == 0 { p } else { n };
    (CyclicWord::from_core(&s[..period]), n / period)
}

// ---------------------------------------------------------------------------
// Occurrences and morphism counts

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    Forward,
    Backward,
}

impl Dir {
    pub fn sign(self) -> i32 {
        match self {
            Dir::Forward => 1,
            Dir::Backward => -1,
        }
    }

    pub fn flip(self) -> Dir {
        match self {
            Dir::Forward => Dir::Backward,
            Dir::Backward => Dir::Forward,
        }
    }
}

/// A placement of a pattern inside a host.
///
/// `start` is the first host position covered. `Forward` means the covered
/// letters spell the pattern; `Backward` means they spell its inverse, so the
/// pattern is read from the far end walking back. On cyclic hosts the window
/// may wrap, `wraps` times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub start: usize,
    pub dir: Dir,
    pub wraps: usize,
}

impl Occurrence {
    pub fn segment(start: usize, dir: Dir) -> Occurrence {
        Occurrence { start, dir, wraps: 0 }
    }
}

fn matches_at(pattern: &[Letter], host: &[Letter], start: usize, cyclic: bool) -> bool {
    let n = host.len();
    if cyclic {
        pattern.iter().enumerate().all(|(i, a)| host[(start + i) % n] == *a)
    } else {
        start + pattern.len() <= n && host[start..start + pattern.len()] == *pattern
    }
}

/// Window starts where `pattern` is spelled in `host`.
pub fn pattern_starts(pattern: &[Letter], host: &[Letter], cyclic: bool) -> Vec<usize> {
    if pattern.is_empty() || host.is_empty() {
        return Vec::new();
    }
    let last = if cyclic {
        host.len()
    } else if pattern.len() > host.len() {
        return Vec::new();
    } else {
        host.len() - pattern.len() + 1
    };
    (0..last).filter(|&s| matches_at(pattern, host, s, cyclic)).collect()
}

/// All placements of `u` (either direction) in a host spelling, sorted.
pub fn find_occurrences(u: &[Letter], host: &[Letter], cyclic: bool) -> Vec<Occurrence> {
    let n = host.len().max(1);
    let wraps = |s: usize| if cyclic { (s + u.len() - 1) / n } else { 0 };
    let inv = invert_letters(u);
    let mut out: Vec<Occurrence> = pattern_starts(u, host, cyclic)
        .into_iter()
        .map(|s| Occurrence { start: s, dir: Dir::Forward, wraps: wraps(s) })
        .chain(pattern_starts(&inv, host, cyclic).into_iter().map(|s| Occurrence {
            start: s,
            dir: Dir::Backward,
            wraps: wraps(s),
        }))
        .collect();
    out.sort();
    out
}

/// |Hom(u, w)| for segment hosts.
pub fn hom_count_segment(u: &UWord, w: &UWord) -> usize {
    count_both(u.letters(), w.letters(), false)
}

/// |Hom(u, w)| for cyclic hosts; patterns may wrap around several times.
pub fn hom_count_cyclic(u: &UWord, w: &CyclicWord) -> usize {
    count_both(u.letters(), w.letters(), true)
}

fn count_both(u: &[Letter], host: &[Letter], cyclic: bool) -> usize {
    let inv = invert_letters(u);
    let n = host.len();
    let last = if cyclic {
        n
    } else if u.len() > n {
        return 0;
    } else {
        n - u.len() + 1
    };
    (0..last).map(|s| matches_at(u, host, s, cyclic) as usize + matches_at(&inv, host, s, cyclic) as usize).sum()
}

// ---------------------------------------------------------------------------
// Affixes

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    Left,
    Right,
}

/// Pointing of an affix relative to the orientation choice.
///
/// An affix points `Outward` when its preferred spelling is a prefix of the
/// host, or the inverse of its preferred spelling is a suffix. This is the
/// convention under which the left affix map sends ⟨xxx⟩ to ⟨xx⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pointing {
    Inward,
    Outward,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffixInfo {
    pub word: UWord,
    pub end: End,
    pub pointing: Pointing,
}

/// Pointing of the affix at `end` of the spelling `host`; any spelling of the
/// host gives the same answer for the same geometric end.
pub fn affix_pointing(affix: &[Letter], end: End, sigma: &Orientation) -> Pointing {
    let preferred = sigma.is_preferred(affix);
    let outward = match end {
        End::Left => preferred,
        End::Right => !preferred,
    };
    if outward {
        Pointing::Outward
    } else {
        Pointing::Inward
    }
}

/// Both k-affixes of `w`, read on its lex-min spelling.
pub fn k_affixes(w: &UWord, k: usize, sigma: &Orientation) -> Result<(AffixInfo, AffixInfo), WordError> {
    let s = w.letters();
    if k == 0 || s.len() <= k {
        return Err(WordError::AffixTooLong { k, len: s.len() });
    }
    let p = &s[..k];
    let q = &s[s.len() - k..];
    let left =
        AffixInfo { word: UWord::from_spelling(p), end: End::Left, pointing: affix_pointing(p, End::Left, sigma) };
    let right =
        AffixInfo { word: UWord::from_spelling(q), end: End::Right, pointing: affix_pointing(q, End::Right, sigma) };
    Ok((left, right))
}

// ---------------------------------------------------------------------------
// Enumeration

/// All reduced words of length `k` over rank `n`, in lexicographic order.
pub fn reduced_words(n: usize, k: usize) -> Vec<ReducedWord> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, cur: &mut Vec<Letter>, out: &mut Vec<ReducedWord>) {
        if cur.len() == k {
            out.push(ReducedWord(cur.clone()));
            return;
        }
        for c in 0..2 * n {
            let a = Letter::from_code(c);
            if cur.last() == Some(&a.inverse()) {
                continue;
            }
            cur.push(a);
            go(n, k, cur, out);
            cur.pop();
        }
    }
    go(n, k, &mut cur, &mut out);
    out
}

/// The basis of length-k u-words, sorted by the letter order.
pub fn enumerate_basis(n: usize, k: usize) -> Vec<UWord> {
    if n == 0 || k == 0 {
        return Vec::new();
    }
    reduced_words(n, k).into_iter().filter(|w| cmp_with_inverse(w.letters()) == Ordering::Less).map(UWord).collect()
}

/// `n (2n-1)^(k-1)`.
pub fn basis_size(n: usize, k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    n * (2 * n - 1).pow(k as u32 - 1)
}

/// All cyclic words of length exactly `len`, sorted.
pub fn enumerate_cyclic(n: usize, len: usize) -> Vec<CyclicWord> {
    let mut out: Vec<CyclicWord> = reduced_words(n, len)
        .into_iter()
        .filter(|w| w.is_cyclically_reduced())
        .map(|w| CyclicWord::from_core(w.letters()))
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::syntax::{parse_cyclic, parse_uword, parse_word};

    fn w(s: &str) -> ReducedWord {
        parse_word(s, 3).unwrap()
    }

    #[test]
    fn free_reduction_examples() {
        let raw = |s: &str| -> Vec<Letter> { crate::cli::syntax::parse_letters(s, 3).unwrap() };
        assert_eq!(free_reduce(raw("xyYz")), w("xz"));
        assert!(free_reduce(raw("xX")).is_empty());
        assert_eq!(free_reduce(raw("Xxy")), w("y"));
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (t, core) = cyclic_reduce(&w("yxY")).unwrap();
        assert_eq!((t, core), (w("Y"), w("x")));
        let (t, core) = cyclic_reduce(&w("xyXY")).unwrap();
        assert!(t.is_empty());
        assert_eq!(core, w("xyXY"));
        assert_eq!(cyclic_reduce(&w("yXxy")).unwrap(), (w(""), w("yy")));
        assert_eq!(cyclic_reduce(&w("")), Err(WordError::TrivialCore));
    }

    #[test]
    fn uword_canon_examples() {
        assert_eq!(canon_uword(&w("YX")).unwrap().canon(), &w("xy"));
        assert_eq!(canon_uword(&w("xy")).unwrap().canon(), &w("xy"));
        assert_eq!(canon_uword(&w("Yx")).unwrap().canon(), &w("Xy"));
        assert_eq!(canon_uword(&w("")), Err(WordError::Empty));
    }

    #[test]
    fn cyclic_canon_examples() {
        let c = parse_cyclic("xyXY", 2).unwrap();
        assert_eq!(c.canon(), &w("xyXY"));
        assert_eq!(parse_cyclic("yXYx", 2).unwrap(), c);
        assert_eq!(parse_cyclic("YX", 2).unwrap().canon(), &w("xy"));
        assert_eq!(canon_cyclic(&w("xX")), Err(WordError::Empty));
    }

    #[test]
    fn segment_counts() {
        let u = |s| parse_uword(s, 2).unwrap();
        assert_eq!(hom_count_segment(&u("xy"), &u("xyx")), 1);
        assert_eq!(hom_count_segment(&u("x"), &u("xyx")), 2);
        assert_eq!(hom_count_segment(&u("xy"), &u("y")), 0);
    }

    #[test]
    fn cyclic_counts() {
        let u = |s| parse_uword(s, 2).unwrap();
        let c = parse_cyclic("xyXY", 2).unwrap();
        assert_eq!(hom_count_cyclic(&u("xy"), &c), 1);
        assert_eq!(hom_count_cyclic(&u("x"), &c), 2);
        assert_eq!(hom_count_cyclic(&u("xxx"), &parse_cyclic("x", 2).unwrap()), 1);
    }

    #[test]
    fn affix_examples() {
        let sigma = Orientation::lex_min();
        let (l, r) = k_affixes(&parse_uword("xyz", 3).unwrap(), 2, &sigma).unwrap();
        assert_eq!(l.word, parse_uword("xy", 3).unwrap());
        assert_eq!(r.word, parse_uword("yz", 3).unwrap());
        assert_eq!(l.pointing, Pointing::Outward);
        assert_eq!(r.pointing, Pointing::Inward);
        let (l, r) = k_affixes(&parse_uword("xxy", 3).unwrap(), 1, &sigma).unwrap();
        assert_eq!((l.word.canon(), r.word.canon()), (&w("x"), &w("y")));
        assert!(k_affixes(&parse_uword("xy", 3).unwrap(), 2, &sigma).is_err());
    }

    #[test]
    fn primitive_root_examples() {
        let c = |s| parse_cyclic(s, 2).unwrap();
        assert_eq!(primitive_root(&c("xyxy")), (c("xy"), 2));
        assert_eq!(primitive_root(&c("xyXY")), (c("xyXY"), 1));
        assert_eq!(primitive_root(&c("xxx")), (c("x"), 3));
    }

    #[test]
    fn basis_examples() {
        let b = enumerate_basis(2, 1);
        assert_eq!(b, vec![parse_uword("x", 2).unwrap(), parse_uword("y", 2).unwrap()]);
        assert_eq!(enumerate_basis(2, 2).len(), 6);
        assert_eq!(enumerate_basis(3, 2).len(), 15);
        for n in 1..4 {
            for k in 1..5 {
                let b = enumerate_basis(n, k);
                assert_eq!(b.len(), basis_size(n, k));
                assert!(b.windows(2).all(|p| p[0] < p[1]));
            }
        }
    }

    #[test]
    fn override_changes_preference() {
        let sigma = Orientation::lex_min().with_override(&w("yx")).unwrap();
        let u = parse_uword("XY", 2).unwrap();
        assert_eq!(sigma.orient(&u), w("yx"));
        assert!(sigma.is_preferred(w("yx").letters()));
        assert!(!sigma.is_preferred(w("XY").letters()));
        assert!(sigma.is_preferred(w("xy").letters()));
    }
}
