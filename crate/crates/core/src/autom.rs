//! Automorphisms of F_n as sequences of elementary Nielsen moves.
//!
//! A move list `[m1, ..., ml]` denotes `ml ∘ ... ∘ m1`: the first move is
//! applied first.

use std::collections::HashMap;

use thiserror::Error;

use crate::word::{free_reduce, CyclicWord, Letter, ReducedWord, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error("move {0:?} is malformed for rank {1}")]
    BadMove(NielsenMove, usize),
    #[error("images do not form a basis of the free group")]
    NotAnAutomorphism,
    #[error("expected {expected} generator images, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NielsenMove {
    /// x_i ↦ x_i x_j
    RightMult(usize, usize),
    /// x_i ↦ x_j x_i
    LeftMult(usize, usize),
    /// x_i ↦ x_i⁻¹
    Invert(usize),
    /// x_i ↔ x_j
    Swap(usize, usize),
}

impl NielsenMove {
    pub fn validate(&self, n: usize) -> Result<(), AutError> {
        let ok = match *self {
            NielsenMove::RightMult(i, j) | NielsenMove::LeftMult(i, j) | NielsenMove::Swap(i, j) => {
                i != j && i < n && j < n
            }
            NielsenMove::Invert(i) => i < n,
        };
        if ok {
            Ok(())
        } else {
            Err(AutError::BadMove(*self, n))
        }
    }

    /// Image of a generator under this single move.
    pub fn generator_image(&self, g: usize) -> Vec<Letter> {
        let x = Letter::gen(g);
        match *self {
            NielsenMove::RightMult(i, j) if g == i => vec![x, Letter::gen(j)],
            NielsenMove::LeftMult(i, j) if g == i => vec![Letter::gen(j), x],
            NielsenMove::Invert(i) if g == i => vec![x.inverse()],
            NielsenMove::Swap(i, j) if g == i => vec![Letter::gen(j)],
            NielsenMove::Swap(i, j) if g == j => vec![Letter::gen(i)],
            _ => vec![x],
        }
    }

    /// Image of a letter (inverse letters map to inverted images).
    pub fn letter_image(&self, a: Letter) -> Vec<Letter> {
        let img = self.generator_image(a.generator());
        if a.is_inverted() {
            img.iter().rev().map(|b| b.inverse()).collect()
        } else {
            img
        }
    }

    /// The inverse move as a move list.
    pub fn inverse_moves(&self) -> Vec<NielsenMove> {
        match *self {
            NielsenMove::RightMult(_, j) | NielsenMove::LeftMult(_, j) => {
                vec![NielsenMove::Invert(j), *self, NielsenMove::Invert(j)]
            }
            m => vec![m],
        }
    }

    pub fn is_transvection(&self) -> bool {
        matches!(self, NielsenMove::RightMult(..) | NielsenMove::LeftMult(..))
    }
}

/// An automorphism given by moves, with cached generator images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    n: usize,
    moves: Vec<NielsenMove>,
    images: Vec<ReducedWord>,
}

pub fn make_automorphism(n: usize, moves: &[NielsenMove]) -> Result<Automorphism, AutError> {
    if n == 0 {
        return Err(WordError::ZeroRank.into());
    }
    let mut images: Vec<ReducedWord> = (0..n).map(|g| ReducedWord::letter(Letter::gen(g))).collect();
    for m in moves {
        m.validate(n)?;
        for img in images.iter_mut() {
            *img = free_reduce(img.letters().iter().flat_map(|a| m.letter_image(*a)));
        }
    }
    Ok(Automorphism { n, moves: moves.to_vec(), images })
}

impl Automorphism {
    pub fn identity(n: usize) -> Automorphism {
        make_automorphism(n, &[]).expect("rank must be positive")
    }

    pub fn single(n: usize, m: NielsenMove) -> Result<Automorphism, AutError> {
        make_automorphism(n, &[m])
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn moves(&self) -> &[NielsenMove] {
        &self.moves
    }

    pub fn images(&self) -> &[ReducedWord] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(g, w)| w.letters() == [Letter::gen(g)])
    }

    /// Image of a single letter, unreduced against neighbours.
    pub fn letter_image(&self, a: Letter) -> ReducedWord {
        let w = &self.images[a.generator()];
        if a.is_inverted() {
            w.inverse()
        } else {
            w.clone()
        }
    }

    /// The move list of φ⁻¹.
    pub fn invert(&self) -> Automorphism {
        let moves: Vec<NielsenMove> = self.moves.iter().rev().flat_map(|m| m.inverse_moves()).collect();
        make_automorphism(self.n, &moves).expect("inverse of valid moves is valid")
    }

    /// `next ∘ self`: apply `self` first, then `next`.
    pub fn then(&self, next: &Automorphism) -> Automorphism {
        assert_eq!(self.n, next.n, "rank mismatch");
        let mut moves = self.moves.clone();
        moves.extend_from_slice(&next.moves);
        make_automorphism(self.n, &moves).expect("concatenated valid moves")
    }

    /// The automorphism given by the first `j` moves.
    pub fn prefix(&self, j: usize) -> Automorphism {
        make_automorphism(self.n, &self.moves[..j]).expect("prefix of valid moves")
    }

    pub fn apply_letters(&self, w: &[Letter]) -> ReducedWord {
        free_reduce(w.iter().flat_map(|a| {
            let img = &self.images[a.generator()];
            let v: Vec<Letter> = if a.is_inverted() {
                img.letters().iter().rev().map(|b| b.inverse()).collect()
            } else {
                img.letters().to_vec()
            };
            v
        }))
    }

    pub fn apply_word(&self, w: &ReducedWord) -> ReducedWord {
        self.apply_letters(w.letters())
    }

    pub fn apply_cyclic(&self, w: &CyclicWord) -> CyclicWord {
        let img = self.apply_letters(w.letters());
        CyclicWord::new(&img).expect("automorphisms never kill a cyclic word")
    }

    /// Same images as `other` (move lists may differ).
    pub fn same_images(&self, other: &Automorphism) -> bool {
        self.images == other.images
    }
}

/// `outer ∘ inner`: apply `inner` first.
pub fn compose(outer: &Automorphism, inner: &Automorphism) -> Automorphism {
    inner.then(outer)
}

// ---------------------------------------------------------------------------
// Decomposition by Nielsen reduction

/// A tuple operation T_i ← T_i·T_j^ε (right) or T_j^ε·T_i (left), which is
/// precomposition with one of the moves below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct TupleOp {
    kind: u8,
    i: usize,
    j: usize,
}

impl TupleOp {
    // kinds: 0 = right by T_j, 1 = right by T_j⁻¹, 2 = left by T_j, 3 = left by T_j⁻¹
    fn apply(&self, t: &[ReducedWord]) -> ReducedWord {
        let tj = if self.kind % 2 == 0 { t[self.j].clone() } else { t[self.j].inverse() };
        if self.kind < 2 {
            t[self.i].concat(&tj)
        } else {
            tj.concat(&t[self.i])
        }
    }

    /// Moves of the inverse of the precomposed move, in application order.
    fn inverse_moves(&self) -> Vec<NielsenMove> {
        let (i, j) = (self.i, self.j);
        match self.kind {
            0 => vec![NielsenMove::Invert(j), NielsenMove::RightMult(i, j), NielsenMove::Invert(j)],
            1 => vec![NielsenMove::RightMult(i, j)],
            2 => vec![NielsenMove::Invert(j), NielsenMove::LeftMult(i, j), NielsenMove::Invert(j)],
            _ => vec![NielsenMove::LeftMult(i, j)],
        }
    }
}

/// Finds moves whose automorphism has exactly the given generator images.
///
/// Greedy Nielsen reduction: repeatedly take the tuple operation that shortens
/// the total image length the most (ties broken by kind, i, j), then read off
/// the remaining signed permutation.
pub fn decompose(n: usize, images: &[ReducedWord]) -> Result<Vec<NielsenMove>, AutError> {
    if images.len() != n {
        return Err(AutError::WrongArity { expected: n, got: images.len() });
    }
    for w in images {
        if w.is_empty() {
            return Err(AutError::NotAnAutomorphism);
        }
        if w.max_generator().map_or(false, |g| g >= n) {
            return Err(AutError::NotAnAutomorphism);
        }
    }
    let mut t: Vec<ReducedWord> = images.to_vec();
    let mut ops: Vec<TupleOp> = Vec::new();
    while let Some((path, next)) = shorten(&t) {
        ops.extend(path);
        t = next;
    }
    // t must now be a signed permutation of the generators
    let mut target = vec![usize::MAX; n];
    let mut inverted = vec![false; n];
    for (g, w) in t.iter().enumerate() {
        if w.len() != 1 {
            return Err(AutError::NotAnAutomorphism);
        }
        let a = w.letters()[0];
        if target[a.generator()] != usize::MAX {
            return Err(AutError::NotAnAutomorphism);
        }
        target[a.generator()] = g;
        inverted[g] = a.is_inverted();
    }
    // φ ∘ μ1 ∘ ... ∘ μr = π, so φ = π ∘ μr⁻¹ ∘ ... ∘ μ1⁻¹.
    let mut moves: Vec<NielsenMove> = Vec::new();
    for op in &ops {
        moves.extend(op.inverse_moves());
    }
    moves.extend(signed_permutation_moves(&t));
    let got = make_automorphism(n, &moves)?;
    if got.images() != images {
        return Err(AutError::NotAnAutomorphism);
    }
    Ok(moves)
}

/// Plateau states explored before giving up on a shortening.
const PLATEAU_LIMIT: usize = 100_000;

/// The operations leading from `t` to a strictly shorter tuple.
///
/// Prefers the single operation with the largest gain. When none shortens,
/// searches breadth-first through length-preserving operations: a basis that
/// is not yet a signed permutation always reaches a shortening this way.
fn shorten(t: &[ReducedWord]) -> Option<(Vec<TupleOp>, Vec<ReducedWord>)> {
    let n = t.len();
    let all_ops = || {
        (0..4u8).flat_map(move |kind| {
            (0..n).flat_map(move |i| (0..n).filter(move |j| *j != i).map(move |j| TupleOp { kind, i, j }))
        })
    };
    let mut best: Option<(isize, TupleOp, ReducedWord)> = None;
    for op in all_ops() {
        let new = op.apply(t);
        let gain = t[op.i].len() as isize - new.len() as isize;
        if gain > 0 && best.as_ref().map_or(true, |b| gain > b.0) {
            best = Some((gain, op, new));
        }
    }
    if let Some((_, op, new)) = best {
        let mut next = t.to_vec();
        next[op.i] = new;
        return Some((vec![op], next));
    }
    if t.iter().all(|w| w.len() == 1) {
        return None;
    }
    let mut seen: HashMap<Vec<ReducedWord>, usize> = HashMap::new();
    let mut states: Vec<(Vec<ReducedWord>, Option<(usize, TupleOp)>)> = vec![(t.to_vec(), None)];
    seen.insert(t.to_vec(), 0);
    let mut head = 0;
    while head < states.len() && states.len() < PLATEAU_LIMIT {
        let cur = states[head].0.clone();
        for op in all_ops() {
            let new = op.apply(&cur);
            let gain = cur[op.i].len() as isize - new.len() as isize;
            if gain < 0 {
                continue;
            }
            let mut next = cur.clone();
            next[op.i] = new;
            if gain > 0 {
                let mut path = vec![op];
                let mut at = head;
                while let Some((parent, o)) = states[at].1 {
                    path.push(o);
                    at = parent;
                }
                path.reverse();
                return Some((path, next));
            }
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), states.len());
                states.push((next, Some((head, op))));
            }
        }
        head += 1;
    }
    None
}

/// Moves realizing x_g ↦ t[g] where every t[g] is a single letter.
fn signed_permutation_moves(t: &[ReducedWord]) -> Vec<NielsenMove> {
    let n = t.len();
    let mut moves = Vec::new();
    // first the inversions, acting on source generators
    for (g, w) in t.iter().enumerate() {
        if w.letters()[0].is_inverted() {
            moves.push(NielsenMove::Invert(g));
        }
    }
    // then a permutation: current images are generator positions
    let mut cur: Vec<usize> = (0..n).collect();
    let want: Vec<usize> = t.iter().map(|w| w.letters()[0].generator()).collect();
    // a swap of generators a and b relabels every image
    for g in 0..n {
        if cur[g] != want[g] {
            let a = cur[g];
            let b = want[g];
            moves.push(NielsenMove::Swap(a, b));
            for c in cur.iter_mut() {
                if *c == a {
                    *c = b;
                } else if *c == b {
                    *c = a;
                }
            }
        }
    }
    moves
}
