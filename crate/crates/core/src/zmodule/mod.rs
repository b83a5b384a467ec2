//! Subword-count modules: count vectors, affix maps, gluing and lifting.

pub mod smith;

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::word::{
    affix_pointing, enumerate_basis, find_occurrences, invert_letters, primitive_root, CyclicWord, Dir, End, Letter,
    Orientation, Pointing, UWord,
};
use smith::DenseMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("vector is not in the kernel of the affix difference")]
    NotInKernel,
    #[error("vector has a key of length {got}, expected {want}")]
    WrongLength { got: usize, want: usize },
    #[error("the shared affix has the same intrinsic orientation in both places")]
    SameOrientation,
    #[error("{0} is not an affix of the host")]
    NotAffix(String),
    #[error("the word does not occur in the cyclic word")]
    NotSubword,
    #[error("level {0} is not supported here")]
    BadLevel(usize),
}

// ---------------------------------------------------------------------------
// Sparse vectors

/// A sparse integer vector on the basis of length-k u-words.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VectorK {
    k: usize,
    entries: BTreeMap<UWord, i64>,
}

impl VectorK {
    pub fn zero(k: usize) -> VectorK {
        VectorK { k, entries: BTreeMap::new() }
    }

    pub fn from_pairs<I: IntoIterator<Item = (UWord, i64)>>(k: usize, pairs: I) -> Result<VectorK, ModuleError> {
        let mut v = VectorK::zero(k);
        for (u, c) in pairs {
            if u.len() != k {
                return Err(ModuleError::WrongLength { got: u.len(), want: k });
            }
            v.add_to(&u, c);
        }
        Ok(v)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, u: &UWord) -> i64 {
        self.entries.get(u).copied().unwrap_or(0)
    }

    pub fn add_to(&mut self, u: &UWord, c: i64) {
        debug_assert_eq!(u.len(), self.k);
        if c == 0 {
            return;
        }
        let e = self.entries.entry(u.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.entries.remove(u);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&UWord, i64)> {
        self.entries.iter().map(|(u, c)| (u, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Sum of coefficients.
    pub fn total(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn scale(&self, c: i64) -> VectorK {
        let mut out = VectorK::zero(self.k);
        for (u, x) in self.iter() {
            out.add_to(u, c * x);
        }
        out
    }

    /// Positive and negative parts, both nonnegative.
    pub fn split_signs(&self) -> (VectorK, VectorK) {
        let mut pos = VectorK::zero(self.k);
        let mut neg = VectorK::zero(self.k);
        for (u, c) in self.iter() {
            if c > 0 {
                pos.add_to(u, c);
            } else {
                neg.add_to(u, -c);
            }
        }
        (pos, neg)
    }

    /// Dense coordinates on a basis.
    pub fn to_dense(&self, basis: &[UWord]) -> Vec<i64> {
        basis.iter().map(|u| self.get(u)).collect()
    }
}

impl Add for &VectorK {
    type Output = VectorK;
    fn add(self, other: &VectorK) -> VectorK {
        assert_eq!(self.k, other.k, "level mismatch");
        let mut out = self.clone();
        for (u, c) in other.iter() {
            out.add_to(u, c);
        }
        out
    }
}

impl Sub for &VectorK {
    type Output = VectorK;
    fn sub(self, other: &VectorK) -> VectorK {
        self + &other.scale(-1)
    }
}

impl Neg for &VectorK {
    type Output = VectorK;
    fn neg(self) -> VectorK {
        self.scale(-1)
    }
}

/// A sparse integer combination of u-words of length at least k.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HatVector {
    k: usize,
    entries: BTreeMap<UWord, i64>,
}

impl HatVector {
    pub fn new(k: usize) -> HatVector {
        HatVector { k, entries: BTreeMap::new() }
    }

    pub fn add_to(&mut self, u: &UWord, c: i64) -> Result<(), ModuleError> {
        if u.len() < self.k {
            return Err(ModuleError::WrongLength { got: u.len(), want: self.k });
        }
        let e = self.entries.entry(u.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.entries.remove(u);
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&UWord, i64)> {
        self.entries.iter().map(|(u, c)| (u, *c))
    }

    /// Σ c · (counts of length-k subwords).
    pub fn pi_hat(&self) -> VectorK {
        let mut out = VectorK::zero(self.k);
        for (w, c) in self.iter() {
            out = &out + &pi_segment(w, self.k).scale(c);
        }
        out
    }

    /// The boundary: each (k-1)-affix counts +1 if it points outward and -1
    /// if inward. A long word may carry the same affix at both ends.
    pub fn boundary(&self, sigma: &Orientation) -> VectorK {
        let mut out = VectorK::zero(self.k - 1);
        for (w, c) in self.iter() {
            for (t, sign) in hat_affixes(w.letters(), self.k - 1, sigma) {
                out.add_to(&t, sign * c);
            }
        }
        out
    }
}

/// Both (k-1)-affixes of a spelling with their signs.
fn hat_affixes(s: &[Letter], j: usize, sigma: &Orientation) -> [(UWord, i64); 2] {
    let n = s.len();
    let sign = |p: Pointing| if p == Pointing::Outward { 1 } else { -1 };
    let p = &s[..j];
    let q = &s[n - j..];
    [
        (UWord::from_spelling(p), sign(affix_pointing(p, End::Left, sigma))),
        (UWord::from_spelling(q), sign(affix_pointing(q, End::Right, sigma))),
    ]
}

/// A formal integer combination of cyclic words.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZCElement {
    entries: BTreeMap<CyclicWord, i64>,
}

impl ZCElement {
    pub fn new() -> ZCElement {
        ZCElement::default()
    }

    pub fn single(w: CyclicWord, c: i64) -> ZCElement {
        let mut z = ZCElement::new();
        z.add_to(&w, c);
        z
    }

    pub fn add_to(&mut self, w: &CyclicWord, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.entries.entry(w.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.entries.remove(w);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CyclicWord, i64)> {
        self.entries.iter().map(|(w, c)| (w, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Add for &ZCElement {
    type Output = ZCElement;
    fn add(self, other: &ZCElement) -> ZCElement {
        let mut out = self.clone();
        for (w, c) in other.iter() {
            out.add_to(w, c);
        }
        out
    }
}

impl Sub for &ZCElement {
    type Output = ZCElement;
    fn sub(self, other: &ZCElement) -> ZCElement {
        let mut out = self.clone();
        for (w, c) in other.iter() {
            out.add_to(w, -c);
        }
        out
    }
}

/// Rewrites every wˡ as l·w, the normal form modulo the power relations.
pub fn zc_canonicalize(z: &ZCElement) -> ZCElement {
    let mut out = ZCElement::new();
    for (w, c) in z.iter() {
        let (root, l) = primitive_root(w);
        out.add_to(&root, c * l as i64);
    }
    out
}

// ---------------------------------------------------------------------------
// Count vectors

/// Counts of length-k subwords of a cyclic word.
pub fn pi_cyclic(w: &CyclicWord, k: usize) -> VectorK {
    let mut out = VectorK::zero(k);
    if k == 0 {
        return out;
    }
    let mut acc: HashMap<UWord, i64> = HashMap::new();
    for i in 0..w.len() {
        *acc.entry(UWord::from_spelling(&w.window(i, k))).or_insert(0) += 1;
    }
    for (u, c) in acc {
        out.add_to(&u, c);
    }
    out
}

/// Counts of length-k subwords of a segment word.
pub fn pi_segment(w: &UWord, k: usize) -> VectorK {
    let mut out = VectorK::zero(k);
    let s = w.letters();
    if k == 0 || s.len() < k {
        return out;
    }
    for i in 0..=s.len() - k {
        out.add_to(&UWord::from_spelling(&s[i..i + k]), 1);
    }
    out
}

pub fn pi_zc(z: &ZCElement, k: usize) -> VectorK {
    let mut out = VectorK::zero(k);
    for (w, c) in z.iter() {
        out = &out + &pi_cyclic(w, k).scale(c);
    }
    out
}

// ---------------------------------------------------------------------------
// Matrices and affix maps

/// A sparse integer matrix between two bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<UWord>,
    cols: Vec<UWord>,
    /// Column j as sorted (row, value) pairs.
    data: Vec<Vec<(usize, i64)>>,
    row_index: HashMap<UWord, usize>,
    col_index: HashMap<UWord, usize>,
}

impl IntMatrix {
    pub fn new(rows: Vec<UWord>, cols: Vec<UWord>) -> IntMatrix {
        let row_index = rows.iter().enumerate().map(|(i, u)| (u.clone(), i)).collect();
        let col_index = cols.iter().enumerate().map(|(i, u)| (u.clone(), i)).collect();
        let data = vec![Vec::new(); cols.len()];
        IntMatrix { rows, cols, data, row_index, col_index }
    }

    pub fn identity(basis: Vec<UWord>) -> IntMatrix {
        let mut m = IntMatrix::new(basis.clone(), basis);
        for j in 0..m.cols.len() {
            m.data[j].push((j, 1));
        }
        m
    }

    pub fn rows(&self) -> &[UWord] {
        &self.rows
    }

    pub fn cols(&self) -> &[UWord] {
        &self.cols
    }

    pub fn row_of(&self, u: &UWord) -> Option<usize> {
        self.row_index.get(u).copied()
    }

    pub fn col_of(&self, u: &UWord) -> Option<usize> {
        self.col_index.get(u).copied()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[j].iter().find(|(r, _)| *r == i).map_or(0, |(_, v)| *v)
    }

    pub fn add_entry(&mut self, i: usize, j: usize, v: i64) {
        if v == 0 {
            return;
        }
        let col = &mut self.data[j];
        match col.binary_search_by_key(&i, |(r, _)| *r) {
            Ok(p) => {
                col[p].1 += v;
                if col[p].1 == 0 {
                    col.remove(p);
                }
            }
            Err(p) => col.insert(p, (i, v)),
        }
    }

    /// Nonzero entries as (row, col, value), row major.
    pub fn entries(&self) -> Vec<(usize, usize, i64)> {
        let mut out: Vec<(usize, usize, i64)> =
            self.data.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, *v))).collect();
        out.sort();
        out
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.data[j]
    }

    pub fn apply(&self, v: &VectorK) -> VectorK {
        let k = self.rows.first().map_or(0, |u| u.len());
        let mut out = VectorK::zero(k);
        for (u, c) in v.iter() {
            let j = self.col_of(u).expect("vector key outside the column basis");
            for (i, a) in &self.data[j] {
                out.add_to(&self.rows[*i], a * c);
            }
        }
        out
    }

    /// `self · other`.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner bases differ");
        let mut out = IntMatrix::new(self.rows.clone(), other.cols.clone());
        for j in 0..other.cols.len() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for (l, b) in &other.data[j] {
                for (i, a) in &self.data[*l] {
                    *acc.entry(*i).or_insert(0) += a * b;
                }
            }
            out.data[j] = acc.into_iter().filter(|(_, v)| *v != 0).collect();
        }
        out
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        let mut out = self.clone();
        for (i, j, v) in other.entries() {
            out.add_entry(i, j, -v);
        }
        out
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.rows.len(), self.cols.len());
        for (i, j, v) in self.entries() {
            m.set(i, j, BigInt::from(v));
        }
        m
    }

    pub fn row(&self, i: usize) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        for (j, col) in self.data.iter().enumerate() {
            if let Some((_, v)) = col.iter().find(|(r, _)| *r == i) {
                out.push((j, *v));
            }
        }
        out
    }
}

/// Where the two (k-1)-affixes of a length-k word go: `true` for the left
/// (outward) map, `false` for the right map.
fn affix_targets(w: &UWord, sigma: &Orientation) -> [(UWord, bool); 2] {
    let s = w.letters();
    let j = s.len() - 1;
    let p = &s[..j];
    let q = &s[1..];
    [
        (UWord::from_spelling(p), affix_pointing(p, End::Left, sigma) == Pointing::Outward),
        (UWord::from_spelling(q), affix_pointing(q, End::Right, sigma) == Pointing::Outward),
    ]
}

fn apply_affix_map(v: &VectorK, sigma: &Orientation, left: bool) -> VectorK {
    assert!(v.k() >= 2, "affix maps start at level 2");
    let mut out = VectorK::zero(v.k() - 1);
    for (w, c) in v.iter() {
        let targets = affix_targets(w, sigma);
        let mut hits = 0;
        for (t, to_left) in &targets {
            if *to_left == left {
                out.add_to(t, c);
                hits += 1;
            }
        }
        if left {
            assert!(hits < 2 || targets[0].0 != targets[1].0, "a word marks the same affix outward twice");
        }
    }
    out
}

pub fn apply_p_left(v: &VectorK, sigma: &Orientation) -> VectorK {
    apply_affix_map(v, sigma, true)
}

pub fn apply_p_right(v: &VectorK, sigma: &Orientation) -> VectorK {
    apply_affix_map(v, sigma, false)
}

/// (p_left − p_right)·v.
pub fn apply_difference(v: &VectorK, sigma: &Orientation) -> VectorK {
    &apply_p_left(v, sigma) - &apply_p_right(v, sigma)
}

/// The left and right affix maps M_k → M_{k-1} as matrices.
pub fn p_matrices(n: usize, k: usize, sigma: &Orientation) -> (IntMatrix, IntMatrix) {
    assert!(k >= 2, "affix maps start at level 2");
    let rows = enumerate_basis(n, k - 1);
    let cols = enumerate_basis(n, k);
    let mut left = IntMatrix::new(rows.clone(), cols.clone());
    let mut right = IntMatrix::new(rows, cols.clone());
    for (j, w) in cols.iter().enumerate() {
        for (t, to_left) in affix_targets(w, sigma) {
            let i = left.row_of(&t).expect("affix is in the basis");
            if to_left {
                left.add_entry(i, j, 1);
            } else {
                right.add_entry(i, j, 1);
            }
        }
    }
    (left, right)
}

/// The composite of left affix maps from level k down to level l.
pub fn p_chain(n: usize, k: usize, l: usize, sigma: &Orientation) -> IntMatrix {
    assert!(1 <= l && l <= k, "need 1 <= l <= k");
    let mut acc = IntMatrix::identity(enumerate_basis(n, k));
    for level in (l + 1..=k).rev() {
        let (left, _) = p_matrices(n, level, sigma);
        acc = left.mul(&acc);
    }
    acc
}

/// Applies the left affix maps down to level `l`.
pub fn apply_p_chain(v: &VectorK, l: usize, sigma: &Orientation) -> VectorK {
    let mut cur = v.clone();
    while cur.k() > l {
        cur = apply_p_left(&cur, sigma);
    }
    cur
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub n: usize,
    pub k: usize,
    pub basis: Vec<VectorK>,
    pub invariants: Vec<BigInt>,
    /// Every column of the difference matrix has an even coefficient sum.
    pub parity_even: bool,
}

impl KernelReport {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Integer kernel basis and Smith invariants of p_left − p_right.
pub fn kernel_and_coker(n: usize, k: usize, sigma: &Orientation) -> Result<KernelReport, ModuleError> {
    if k < 2 {
        return Err(ModuleError::BadLevel(k));
    }
    let (left, right) = p_matrices(n, k, sigma);
    let d = left.sub(&right);
    let parity_even = (0..d.cols().len()).all(|j| d.column(j).iter().map(|(_, v)| v).sum::<i64>() % 2 == 0);
    let dense = d.to_dense();
    let basis = smith::integer_kernel(&dense)
        .into_iter()
        .map(|col| {
            let pairs = d.cols().iter().zip(col).map(|(u, c)| (u.clone(), c.to_i64().expect("small kernel entries")));
            VectorK::from_pairs(k, pairs).expect("basis words have length k")
        })
        .collect();
    let invariants = smith::smith_invariants(&dense);
    Ok(KernelReport { n, k, basis, invariants, parity_even })
}

/// n(2n−2)(2n−1)^(k−2).
pub fn expected_kernel_rank(n: usize, k: usize) -> usize {
    n * (2 * n - 2) * (2 * n - 1).pow(k as u32 - 2)
}

// ---------------------------------------------------------------------------
// Gluing

fn the_spellings(w: &UWord) -> [Vec<Letter>; 2] {
    [w.letters().to_vec(), invert_letters(w.letters())]
}

/// Glues `a` and `b` along a shared affix `t`: the result reads a'·t·b'' where
/// some spelling of `a` ends in a spelling of `t` that starts a spelling of `b`.
pub fn glue(a: &UWord, b: &UWord, t: &UWord) -> Result<UWord, ModuleError> {
    let m = t.len();
    let is_affix = |w: &UWord| {
        w.len() > m && the_spellings(t).iter().any(|s| w.letters().starts_with(s) || w.letters().ends_with(s))
    };
    if !is_affix(a) {
        return Err(ModuleError::NotAffix(t.to_string()));
    }
    if !is_affix(b) {
        return Err(ModuleError::NotAffix(t.to_string()));
    }
    let mut best: Option<UWord> = None;
    for sa in the_spellings(a) {
        for sb in the_spellings(b) {
            for st in the_spellings(t) {
                if sa.ends_with(&st) && sb.starts_with(&st) {
                    let mut v = sa[..sa.len() - m].to_vec();
                    v.extend_from_slice(&sb);
                    let g = UWord::from_spelling(&v);
                    if best.as_ref().map_or(true, |x| g < *x) {
                        best = Some(g);
                    }
                }
            }
        }
    }
    best.ok_or(ModuleError::SameOrientation)
}

/// Glues `w` to itself along `t`, which must be both its prefix and suffix in
/// one spelling. The cyclic word is the part before the final copy of `t`;
/// this also covers overlapping copies.
pub fn self_glue(w: &UWord, t: &UWord) -> Result<CyclicWord, ModuleError> {
    let m = t.len();
    if w.len() <= m {
        return Err(ModuleError::NotAffix(t.to_string()));
    }
    let s = w.letters();
    let mut affix = false;
    for st in the_spellings(t) {
        let pre = s.starts_with(&st);
        let suf = s.ends_with(&st);
        if pre && suf {
            return Ok(CyclicWord::from_core(&s[..s.len() - m]));
        }
        affix |= pre || suf;
    }
    if affix {
        Err(ModuleError::SameOrientation)
    } else {
        Err(ModuleError::NotAffix(t.to_string()))
    }
}

/// A segment word that self-glues along `u` back to `v`: read |v| + |u|
/// letters of the necklace starting at the first occurrence of `u`.
pub fn unroll(v: &CyclicWord, u: &UWord) -> Result<UWord, ModuleError> {
    let occ = find_occurrences(u.letters(), v.letters(), true);
    let first = occ.first().ok_or(ModuleError::NotSubword)?;
    let total = v.len() + u.len();
    let spelled: Vec<Letter> = match first.dir {
        Dir::Forward => v.window(first.start, total),
        Dir::Backward => {
            // read the inverse necklace, starting where u⁻¹'s window ends
            let inv = invert_letters(v.letters());
            let h = v.len();
            let s = h - 1 - (first.start + u.len() - 1) % h;
            (0..total).map(|i| inv[(s + i) % h]).collect()
        }
    };
    Ok(UWord::from_spelling(&spelled))
}

// ---------------------------------------------------------------------------
// Lifting kernel vectors to cyclic words

/// A segment of length 2k−1 whose boundary is ε1·t1 + ε2·t2.
fn boundary_segment(t1: &UWord, e1: i64, t2: &UWord, e2: i64, sigma: &Orientation, n: usize) -> UWord {
    let s1 = sigma.orient(t1);
    let s2 = sigma.orient(t2);
    let p = if e1 > 0 { s1 } else { s1.inverse() };
    let q = if e2 > 0 { s2.inverse() } else { s2 };
    let bad_left = p.last().map(|a| a.inverse());
    let bad_right = q.first().map(|a| a.inverse());
    let x = (0..2 * n)
        .map(Letter::from_code)
        .find(|a| Some(*a) != bad_left && Some(*a) != bad_right)
        .expect("rank at least 2 leaves a free middle letter");
    let mut v = p.into_letters();
    v.push(x);
    v.extend_from_slice(q.letters());
    UWord::from_spelling(&v)
}

/// A nonnegative vector u with (p_left − p_right)·u = s, assuming the
/// coefficients of s have even sum.
fn nonnegative_preimage(s: &VectorK, sigma: &Orientation, n: usize) -> VectorK {
    let j = s.k();
    let k = j + 1;
    let mut out = VectorK::zero(k);
    if s.is_zero() {
        return out;
    }
    assert!(s.total() % 2 == 0, "boundary vectors have even coefficient sum");
    // signed units grouped by word, largest groups first
    let mut groups: Vec<(UWord, i64)> = s.iter().map(|(u, c)| (u.clone(), c)).collect();
    let mut pairs: Vec<(UWord, i64, UWord, i64)> = Vec::new();
    loop {
        groups.retain(|(_, c)| *c != 0);
        groups.sort_by(|a, b| b.1.abs().cmp(&a.1.abs()).then_with(|| a.0.cmp(&b.0)));
        match groups.len() {
            0 => break,
            1 => {
                let (t, c) = groups[0].clone();
                let other = enumerate_basis(n, j).into_iter().find(|w| *w != t).expect("at least two words");
                let e = c.signum();
                for _ in 0..c.abs() / 2 {
                    pairs.push((t.clone(), e, other.clone(), 1));
                    pairs.push((t.clone(), e, other.clone(), -1));
                }
                break;
            }
            _ => {
                let e1 = groups[0].1.signum();
                let e2 = groups[1].1.signum();
                pairs.push((groups[0].0.clone(), e1, groups[1].0.clone(), e2));
                groups[0].1 -= e1;
                groups[1].1 -= e2;
            }
        }
    }
    for (t1, e1, t2, e2) in pairs {
        let w = boundary_segment(&t1, e1, &t2, e2, sigma, n);
        out = &out + &pi_segment(&w, k);
    }
    out
}

/// Glues the components of a nonnegative kernel vector into cyclic words.
fn lift_nonnegative(v: &VectorK) -> ZCElement {
    let k = v.k();
    let j = k - 1;
    let mut comps: Vec<UWord> = Vec::new();
    for (u, c) in v.iter() {
        assert!(c >= 0);
        for _ in 0..c {
            comps.push(u.clone());
        }
    }
    let mut out = ZCElement::new();
    let self_gluable = |c: &UWord| {
        let s = c.letters();
        s[..j] == s[s.len() - j..]
    };
    loop {
        comps.sort();
        if let Some(i) = comps.iter().position(|c| self_gluable(c)) {
            let c = comps.remove(i);
            let s = c.letters();
            out.add_to(&CyclicWord::from_core(&s[..s.len() - j]), 1);
            continue;
        }
        if comps.is_empty() {
            break;
        }
        // least component, glued to the least partner along the least affix
        let c = comps[0].clone();
        let mut best: Option<(UWord, UWord, usize, Vec<Letter>)> = None;
        for sc in the_spellings(&c) {
            let tau = &sc[sc.len() - j..];
            let tw = UWord::from_spelling(tau);
            for (d_idx, d) in comps.iter().enumerate().skip(1) {
                for sd in the_spellings(d) {
                    if sd.starts_with(tau) {
                        let mut g = sc[..sc.len() - j].to_vec();
                        g.extend_from_slice(&sd);
                        let key = (tw.clone(), d.clone());
                        if best.as_ref().map_or(true, |b| key < (b.0.clone(), b.1.clone())) {
                            best = Some((tw.clone(), d.clone(), d_idx, g));
                        }
                    }
                }
            }
        }
        let (_, _, d_idx, g) = best.expect("a component of a kernel vector always has a gluing partner");
        comps.remove(d_idx);
        comps.remove(0);
        comps.push(UWord::from_spelling(&g));
    }
    out
}

/// A combination of cyclic words whose length-k counts are `v`.
pub fn lift(v: &VectorK, sigma: &Orientation, n: usize) -> Result<ZCElement, ModuleError> {
    let k = v.k();
    if k == 0 {
        return Err(ModuleError::BadLevel(0));
    }
    if k == 1 {
        let mut out = ZCElement::new();
        for (u, c) in v.iter() {
            out.add_to(&CyclicWord::from_core(u.letters()), c);
        }
        return Ok(out);
    }
    if !apply_difference(v, sigma).is_zero() {
        return Err(ModuleError::NotInKernel);
    }
    let (pos, neg) = v.split_signs();
    let r = apply_difference(&pos, sigma);
    let fill = nonnegative_preimage(&r.scale(-1), sigma, n);
    debug_assert_eq!(apply_difference(&fill, sigma), r.scale(-1));
    let a = lift_nonnegative(&(&pos + &fill));
    let b = lift_nonnegative(&(&neg + &fill));
    Ok(&a - &b)
}
