//! Ideal preimages and full sets.
//!
//! An ideal preimage of `u` under φ is a base word `v` with an occurrence of
//! `u` in the reduced image φ(v) that survives every extension of `v`. A full
//! set accounts for every occurrence of `u` in every φ(w) exactly once, so
//! |Hom(u, φ(w))| is the sum of |Hom(v, w)| over its bases.
//!
//! Survival is tracked letter by letter through the moves of φ, reducing
//! after every move. A single Nielsen move cancels at most one letter at each
//! junction, so this tracking is unambiguous.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use rand::Rng;
use thiserror::Error;

use crate::autom::{Automorphism, NielsenMove};
use crate::word::{
    find_occurrences, invert_letters, is_reduced, Alphabet, CyclicWord, Dir, End, Letter, Occurrence, ReducedWord,
    UWord,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PreimageError {
    #[error("a letter of the tracked occurrence cancels")]
    NotPreserved,
    #[error("the given placement is not an occurrence of the base word")]
    NotAnOccurrence,
    #[error("affix classification needs a transvection, got {0:?}")]
    NotATransvection(NielsenMove),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Embedding {
    /// Reduced image of the base (or of a larger host).
    pub host: ReducedWord,
    pub occ: Occurrence,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IdealPreimage {
    pub u: UWord,
    pub base: UWord,
    pub emb: Embedding,
}

// ---------------------------------------------------------------------------
// Letter tracking

/// Assigns identities to letter instances as they are expanded by moves.
///
/// An instance whose image is a single letter keeps its identity; the two
/// letters of a transvection image get fresh identities, shared between all
/// tracking runs through the same tracker.
struct Tracker {
    fresh: HashMap<(u32, u8), u32>,
    next: u32,
}

impl Tracker {
    fn new(first_free: usize) -> Tracker {
        Tracker { fresh: HashMap::new(), next: first_free as u32 }
    }

    fn child(&mut self, id: u32, off: u8) -> u32 {
        let next = &mut self.next;
        *self.fresh.entry((id, off)).or_insert_with(|| {
            *next += 1;
            *next - 1
        })
    }

    /// Reduced image of `letters` with identities, move by move.
    fn run(
        &mut self,
        moves: &[NielsenMove],
        letters: &[Letter],
        ids: Vec<u32>,
        cyclic: bool,
    ) -> (Vec<Letter>, Vec<u32>) {
        let mut cur: Vec<Letter> = letters.to_vec();
        let mut cur_ids = ids;
        for m in moves {
            let mut out: Vec<Letter> = Vec::with_capacity(cur.len() + 4);
            let mut out_ids: Vec<u32> = Vec::with_capacity(cur.len() + 4);
            for (a, id) in cur.iter().zip(&cur_ids) {
                let img = m.letter_image(*a);
                let single = img.len() == 1;
                for (off, b) in img.into_iter().enumerate() {
                    let bid = if single { *id } else { self.child(*id, off as u8) };
                    if out.last() == Some(&b.inverse()) {
                        out.pop();
                        out_ids.pop();
                    } else {
                        out.push(b);
                        out_ids.push(bid);
                    }
                }
            }
            if cyclic {
                let mut lo = 0;
                let mut hi = out.len();
                while hi - lo >= 2 && out[lo] == out[hi - 1].inverse() {
                    lo += 1;
                    hi -= 1;
                }
                out = out[lo..hi].to_vec();
                out_ids = out_ids[lo..hi].to_vec();
                assert!(!out.is_empty(), "automorphisms never kill a cyclic word");
            }
            cur = out;
            cur_ids = out_ids;
        }
        (cur, cur_ids)
    }
}

fn spells(host: &[Letter], start: usize, pattern: &[Letter], cyclic: bool) -> bool {
    let n = host.len();
    if n == 0 {
        return false;
    }
    if !cyclic && start + pattern.len() > n {
        return false;
    }
    pattern.iter().enumerate().all(|(i, a)| host[(start + i) % n] == *a)
}

fn occurrence_at(start: usize, dir: Dir, len: usize, host_len: usize, cyclic: bool) -> Occurrence {
    let wraps = if cyclic { (start + len - 1) / host_len } else { 0 };
    Occurrence { start, dir, wraps }
}

/// Where the occurrence of `ip.u` lands in φ(host), given that the base of
/// `ip` sits in `host` at `at`.
pub fn induced_embedding(
    ip: &IdealPreimage,
    phi: &Automorphism,
    host: &[Letter],
    cyclic: bool,
    at: Occurrence,
) -> Result<Embedding, PreimageError> {
    let b = ip.base.letters();
    let m = b.len();
    let hn = host.len();
    let pattern = match at.dir {
        Dir::Forward => b.to_vec(),
        Dir::Backward => invert_letters(b),
    };
    if hn == 0 || (cyclic && at.start >= hn) || !spells(host, at.start, &pattern, cyclic) {
        return Err(PreimageError::NotAnOccurrence);
    }
    if at.dir == Dir::Backward {
        // work in the inverted host, where the base reads forward
        let inv = invert_letters(host);
        let start = if cyclic { hn - 1 - (at.start + m - 1) % hn } else { hn - at.start - m };
        let e = induced_forward(ip, phi, &inv, cyclic, start)?;
        let h = e.host.len();
        let k = ip.u.len();
        let s = if cyclic { h - 1 - (e.occ.start + k - 1) % h } else { h - e.occ.start - k };
        return Ok(Embedding { host: e.host.inverse(), occ: occurrence_at(s, e.occ.dir.flip(), k, h, cyclic) });
    }
    induced_forward(ip, phi, host, cyclic, at.start)
}

fn induced_forward(
    ip: &IdealPreimage,
    phi: &Automorphism,
    host: &[Letter],
    cyclic: bool,
    start: usize,
) -> Result<Embedding, PreimageError> {
    let b = ip.base.letters();
    let hn = host.len();
    let k = ip.u.len();
    let mut tr = Tracker::new(hn.max(b.len() + start) + 1);
    let base_ids: Vec<u32> =
        (0..b.len()).map(|j| ((start + j) % if cyclic { hn } else { usize::MAX }) as u32).collect();
    let (bimg, bids) = tr.run(phi.moves(), b, base_ids, false);
    debug_assert_eq!(bimg.as_slice(), ip.emb.host.letters());
    let s = ip.emb.occ.start;
    if s + k > bids.len() {
        return Err(PreimageError::NotAnOccurrence);
    }
    let want = &bids[s..s + k];
    let (himg, hids) = tr.run(phi.moves(), host, (0..hn as u32).collect(), cyclic);
    let h = himg.len();
    let index: HashMap<u32, usize> = hids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
    let mut idx = Vec::with_capacity(k);
    for id in want {
        match index.get(id) {
            Some(i) => idx.push(*i),
            None => return Err(PreimageError::NotPreserved),
        }
    }
    let step = |a: usize, d: isize| -> Option<usize> {
        let b = a as isize + d;
        if cyclic {
            Some(b.rem_euclid(h as isize) as usize)
        } else if b < 0 {
            None
        } else {
            Some(b as usize)
        }
    };
    let ascending = idx.windows(2).all(|p| step(p[0], 1) == Some(p[1]));
    let descending = !ascending && idx.windows(2).all(|p| step(p[0], -1) == Some(p[1]));
    let (first, flipped) = if ascending {
        (idx[0], false)
    } else if descending {
        (idx[k - 1], true)
    } else {
        return Err(PreimageError::NotPreserved);
    };
    let dir = if flipped { ip.emb.occ.dir.flip() } else { ip.emb.occ.dir };
    let occ = occurrence_at(first, dir, k, h, cyclic);
    Ok(Embedding { host: ReducedWord::from_vec_unchecked(himg), occ })
}

/// True when the embedding of `ip` survives every reduced extension of its
/// base by at most `depth` letters on each side.
pub fn check_ideal_preimage(ip: &IdealPreimage, phi: &Automorphism, depth: usize) -> bool {
    let alphabet = Alphabet::new(phi.rank()).expect("positive rank");
    let b = ip.base.canon();
    let lefts = extensions(&alphabet, depth, b.first().map(|a| a.inverse()), true);
    let rights = extensions(&alphabet, depth, b.last().map(|a| a.inverse()), false);
    for l in &lefts {
        for r in &rights {
            let mut host = l.clone();
            host.extend_from_slice(b.letters());
            host.extend_from_slice(r);
            let at = Occurrence::segment(l.len(), Dir::Forward);
            if induced_embedding(ip, phi, &host, false, at).is_err() {
                return false;
            }
        }
    }
    true
}

/// Reduced words of length <= depth that can sit next to a base. For left
/// extensions the word must not end in `forbidden`; for right extensions it
/// must not start with it.
fn extensions(alphabet: &Alphabet, depth: usize, forbidden: Option<Letter>, left: bool) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &frontier {
            for a in alphabet.letters() {
                let mut v: Vec<Letter> = if left { vec![a] } else { w.clone() };
                if left {
                    v.extend_from_slice(w);
                } else {
                    v.push(a);
                }
                if !is_reduced(&v) {
                    continue;
                }
                let touching = if left { v.last() } else { v.first() };
                if touching.copied() == forbidden {
                    continue;
                }
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Random extensions up to `max_ext` letters per side; a sanity check for
/// composite automorphisms.
pub fn spot_check_ideal<R: Rng>(
    ip: &IdealPreimage,
    phi: &Automorphism,
    trials: usize,
    max_ext: usize,
    rng: &mut R,
) -> bool {
    let b = ip.base.canon().letters();
    let letters: Vec<Letter> = Alphabet::new(phi.rank()).expect("positive rank").letters().collect();
    for _ in 0..trials {
        let mut left: Vec<Letter> = Vec::new();
        let ll = rng.gen_range(0..=max_ext);
        while left.len() < ll {
            let a = letters[rng.gen_range(0..letters.len())];
            let next = left.last().copied().unwrap_or(b[0]);
            // built right to left: a sits before `next`
            if a == next.inverse() {
                continue;
            }
            left.push(a);
        }
        left.reverse();
        let mut right: Vec<Letter> = Vec::new();
        let rl = rng.gen_range(0..=max_ext);
        while right.len() < rl {
            let a = letters[rng.gen_range(0..letters.len())];
            let prev = right.last().copied().unwrap_or(b[b.len() - 1]);
            if a == prev.inverse() {
                continue;
            }
            right.push(a);
        }
        let mut host = left.clone();
        host.extend_from_slice(b);
        host.extend_from_slice(&right);
        debug_assert!(is_reduced(&host));
        if induced_embedding(ip, phi, &host, false, Occurrence::segment(left.len(), Dir::Forward)).is_err() {
            return false;
        }
    }
    true
}

/// Builds the canonical element for a base spelled `spelled` whose image is
/// `image` with `u` sitting at `start`.
pub fn orient_element(u: &UWord, spelled: &ReducedWord, image: ReducedWord, start: usize) -> IdealPreimage {
    let k = u.len();
    let window = &image.letters()[start..start + k];
    let dir = if window == u.letters() {
        Dir::Forward
    } else {
        assert_eq!(window, invert_letters(u.letters()).as_slice(), "window does not spell u");
        Dir::Backward
    };
    let base = UWord::new(spelled).expect("bases are nonempty");
    if base.canon() == spelled {
        IdealPreimage { u: u.clone(), base, emb: Embedding { host: image, occ: Occurrence::segment(start, dir) } }
    } else {
        let h = image.len();
        IdealPreimage {
            u: u.clone(),
            base,
            emb: Embedding { host: image.inverse(), occ: Occurrence::segment(h - start - k, dir.flip()) },
        }
    }
}

/// Rewrites an embedding computed on the host spelling `spelled` onto the
/// canonical spelling of that base.
fn reorient(u: &UWord, spelled: &ReducedWord, emb: Embedding) -> IdealPreimage {
    let start = emb.occ.start;
    orient_element(u, spelled, emb.host, start)
}

// ---------------------------------------------------------------------------
// Affix classification and single-move full sets

/// Rows of the single-move table for x_i ↦ x_i x_j. The "run" is the maximal
/// block of x_j or x_j⁻¹ at the end, read from the outermost letter inward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AffixType {
    /// no run, next letter is not x_i
    Plain,
    /// no run, the end letter is x_i
    Pivot,
    /// positive run not preceded by x_i
    PositiveRun,
    /// x_i followed by a single x_j
    PivotFactor,
    /// x_i followed by at least two x_j
    PivotPositiveRun,
    /// negative run not preceded by x_i
    NegativeRun,
    /// x_i followed by a negative run
    PivotNegativeRun,
}

impl AffixType {
    /// Row number in the table, 1 to 7.
    pub fn code(self) -> u8 {
        match self {
            AffixType::Plain => 1,
            AffixType::Pivot => 2,
            AffixType::PositiveRun => 3,
            AffixType::PivotFactor => 4,
            AffixType::PivotPositiveRun => 5,
            AffixType::NegativeRun => 6,
            AffixType::PivotNegativeRun => 7,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffixClass {
    pub kind: AffixType,
    /// Length of the run of factor letters at the end.
    pub run: usize,
    /// The run is the whole word, so there is no letter behind it.
    pub whole_word: bool,
}

/// Classifies the right end of `w` (already in the normalized frame where the
/// move is x1 ↦ x1 x2).
fn classify_suffix(w: &[Letter]) -> AffixClass {
    let pivot = Letter::gen(0);
    let mut i = w.len();
    let mut run = 0;
    let mut negative = false;
    while i > 0 && w[i - 1].generator() == 1 {
        negative = w[i - 1].is_inverted();
        run += 1;
        i -= 1;
    }
    let behind = if i > 0 { Some(w[i - 1]) } else { None };
    let kind = match (run, negative, behind == Some(pivot)) {
        (0, _, true) => AffixType::Pivot,
        (0, _, false) => AffixType::Plain,
        (1, false, true) => AffixType::PivotFactor,
        (_, false, true) => AffixType::PivotPositiveRun,
        (_, false, false) => AffixType::PositiveRun,
        (_, true, true) => AffixType::PivotNegativeRun,
        (_, true, false) => AffixType::NegativeRun,
    };
    AffixClass { kind, run, whole_word: behind.is_none() }
}

/// A signed relabeling of letters that carries a transvection to x1 ↦ x1 x2.
#[derive(Clone, Debug)]
struct Frame {
    to: Vec<usize>,
    from: Vec<usize>,
    mirror: bool,
}

impl Frame {
    fn for_move(n: usize, m: NielsenMove) -> Result<Frame, PreimageError> {
        let (i, j, mirror) = match m {
            NielsenMove::RightMult(i, j) => (i, j, false),
            NielsenMove::LeftMult(i, j) => (i, j, true),
            other => return Err(PreimageError::NotATransvection(other)),
        };
        let mut order = vec![i, j];
        order.extend((0..n).filter(|g| *g != i && *g != j));
        let mut to = vec![0; n];
        for (k, g) in order.iter().enumerate() {
            to[*g] = k;
        }
        Ok(Frame { to, from: order, mirror })
    }

    fn into_frame(&self, a: Letter) -> Letter {
        Letter::new(self.to[a.generator()], a.is_inverted() ^ self.mirror)
    }

    fn out_of_frame(&self, a: Letter) -> Letter {
        Letter::new(self.from[a.generator()], a.is_inverted() ^ self.mirror)
    }
}

/// Table row of the end of the spelling `w` under a transvection.
pub fn classify_affix(w: &ReducedWord, end: End, m: NielsenMove, n: usize) -> Result<AffixClass, PreimageError> {
    let frame = Frame::for_move(n, m)?;
    let mut v: Vec<Letter> = w.letters().iter().map(|a| frame.into_frame(*a)).collect();
    if end == End::Left {
        v = invert_letters(&v);
    }
    Ok(classify_suffix(&v))
}

/// One way of rewriting an end of φ⁻¹(u): drop letters, then append one.
#[derive(Clone, Copy, Debug)]
struct EndEdit {
    drop: usize,
    append: Option<Letter>,
    /// Letters of φ(base) beyond the occurrence of u at this end.
    extra: usize,
}

fn end_edits(class: AffixClass, n: usize) -> Vec<EndEdit> {
    let pivot = Letter::gen(0);
    let keep = EndEdit { drop: 0, append: None, extra: 0 };
    match class.kind {
        AffixType::Plain => vec![keep],
        AffixType::Pivot => vec![EndEdit { drop: 1, append: None, extra: 1 }],
        AffixType::PositiveRun | AffixType::PivotFactor | AffixType::PivotPositiveRun => (0..2 * n)
            .map(Letter::from_code)
            .filter(|a| *a != pivot.inverse() && *a != Letter::gen_inv(1))
            .map(|a| EndEdit { drop: 0, append: Some(a), extra: if a == pivot { 2 } else { 1 } })
            .collect(),
        AffixType::NegativeRun | AffixType::PivotNegativeRun => {
            vec![keep, EndEdit { drop: 1, append: Some(pivot.inverse()), extra: 1 }]
        }
    }
}

/// The minimal full set of `u` under a single move.
pub fn nielsen_full_set(u: &UWord, m: NielsenMove, n: usize) -> FullSet {
    let phi = Arc::new(Automorphism::single(n, m).expect("valid move"));
    let elements = match m {
        NielsenMove::Invert(_) | NielsenMove::Swap(..) => {
            let spelled = phi.apply_word(u.canon());
            let image = phi.apply_word(&spelled);
            vec![orient_element(u, &spelled, image, 0)]
        }
        _ => transvection_elements(u, m, n, &phi),
    };
    FullSet::new(u.clone(), phi, elements)
}

fn transvection_elements(u: &UWord, m: NielsenMove, n: usize, phi: &Automorphism) -> Vec<IdealPreimage> {
    let frame = Frame::for_move(n, m).expect("transvection");
    let model = Automorphism::single(n, NielsenMove::RightMult(0, 1)).expect("rank at least 2");
    let inverse = model.invert();
    let un: Vec<Letter> = u.letters().iter().map(|a| frame.into_frame(*a)).collect();
    let p = inverse.apply_letters(&un);
    let right = end_edits(classify_suffix(&un), n);
    let left = end_edits(classify_suffix(&invert_letters(&un)), n);
    let mut out = Vec::with_capacity(left.len() * right.len());
    for l in &left {
        for r in &right {
            assert!(l.drop + r.drop <= p.len(), "table edits overlap");
            let mut b: Vec<Letter> = Vec::new();
            if let Some(a) = l.append {
                b.push(a.inverse());
            }
            b.extend_from_slice(&p.letters()[l.drop..p.len() - r.drop]);
            if let Some(a) = r.append {
                b.push(a);
            }
            assert!(!b.is_empty() && is_reduced(&b), "table produced an unreduced base");
            let image = model.apply_letters(&b);
            assert_eq!(image.len(), l.extra + un.len() + r.extra, "unexpected image length");
            assert_eq!(&image.letters()[l.extra..l.extra + un.len()], un.as_slice(), "u is not where expected");
            let spelled = ReducedWord::from_vec_unchecked(b.iter().map(|a| frame.out_of_frame(*a)).collect());
            let image =
                ReducedWord::from_vec_unchecked(image.letters().iter().map(|a| frame.out_of_frame(*a)).collect());
            debug_assert_eq!(phi.apply_word(&spelled), image);
            out.push(orient_element(u, &spelled, image, l.extra));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Full sets

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullSet {
    pub u: UWord,
    pub phi: Arc<Automorphism>,
    /// Sorted multiset of elements.
    pub elements: Vec<IdealPreimage>,
}

impl FullSet {
    pub fn new(u: UWord, phi: Arc<Automorphism>, mut elements: Vec<IdealPreimage>) -> FullSet {
        elements.sort();
        FullSet { u, phi, elements }
    }

    /// The trivial full set under the identity.
    pub fn identity(u: &UWord, n: usize) -> FullSet {
        let e = IdealPreimage {
            u: u.clone(),
            base: u.clone(),
            emb: Embedding { host: u.canon().clone(), occ: Occurrence::segment(0, Dir::Forward) },
        };
        FullSet::new(u.clone(), Arc::new(Automorphism::identity(n)), vec![e])
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Base words with multiplicities.
    pub fn bases(&self) -> BTreeMap<UWord, usize> {
        let mut out = BTreeMap::new();
        for e in &self.elements {
            *out.entry(e.base.clone()).or_insert(0) += 1;
        }
        out
    }

    /// Elements with multiplicities, in canonical order.
    pub fn grouped(&self) -> Vec<(&IdealPreimage, usize)> {
        let mut out: Vec<(&IdealPreimage, usize)> = Vec::new();
        for e in &self.elements {
            match out.last_mut() {
                Some((last, c)) if *last == e => *c += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }

    pub fn max_base_len(&self) -> usize {
        self.elements.iter().map(|e| e.base.len()).max().unwrap_or(0)
    }

    /// The S-weighted count Σ |Hom(v, w)|.
    pub fn weighted_count(&self, w: &CyclicWord) -> usize {
        self.bases().iter().map(|(v, c)| c * crate::word::hom_count_cyclic(v, w)).sum()
    }
}

/// Pushes every outer element through the full set of its base.
///
/// `outer` is a full set of `u` under ψ1, each inner set a full set of an
/// outer base under ψ2; the result is a full set of `u` under ψ1 ∘ ψ2.
pub fn compose_full_sets<F>(outer: &FullSet, mut inner: F) -> FullSet
where
    F: FnMut(&UWord) -> Arc<FullSet>,
{
    let mut inner_phi: Option<Arc<Automorphism>> = None;
    let mut elements = Vec::new();
    for e in &outer.elements {
        let s = inner(&e.base);
        debug_assert_eq!(s.u, e.base);
        for f in &s.elements {
            let emb = induced_embedding(e, &outer.phi, f.emb.host.letters(), false, f.emb.occ)
                .expect("composition of full sets must preserve embeddings");
            elements.push(IdealPreimage { u: outer.u.clone(), base: f.base.clone(), emb });
        }
        inner_phi.get_or_insert_with(|| s.phi.clone());
    }
    let n = outer.phi.rank();
    let inner_phi = inner_phi.unwrap_or_else(|| Arc::new(Automorphism::identity(n)));
    let phi = Arc::new(inner_phi.then(&outer.phi));
    FullSet::new(outer.u.clone(), phi, elements)
}

// ---------------------------------------------------------------------------
// Paradigms and minimization

/// A complete family of one-letter extensions with a common contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Paradigm {
    /// Indices into the full set's elements.
    pub members: Vec<usize>,
    pub contraction: IdealPreimage,
    /// Side of the contraction's canonical spelling that was extended.
    pub side: End,
}

/// The shorter preimage that `e` is a one-letter extension of at `end`, with
/// the side and letter of the extension relative to the contraction.
fn restriction(e: &IdealPreimage, end: End, phi: &Automorphism) -> Option<(IdealPreimage, End, Letter)> {
    let v = e.base.canon();
    let m = v.len();
    if m < 2 {
        return None;
    }
    let (c_sp, a, start) = match end {
        End::Right => (v.slice(0..m - 1), v.letters()[m - 1], 0),
        End::Left => (v.slice(1..m), v.letters()[0], 1),
    };
    let c = UWord::new(&c_sp).expect("nonempty");
    let (side, letter, dir) = if c.canon() == &c_sp {
        (end, a, Dir::Forward)
    } else {
        let flipped = if end == End::Right { End::Left } else { End::Right };
        (flipped, a.inverse(), Dir::Backward)
    };
    let at = Occurrence::segment(start, dir);
    let image = phi.apply_word(c.canon());
    for occ in find_occurrences(e.u.letters(), image.letters(), false) {
        let cand = IdealPreimage { u: e.u.clone(), base: c.clone(), emb: Embedding { host: image.clone(), occ } };
        if let Ok(emb) = induced_embedding(&cand, phi, v.letters(), false, at) {
            if emb == e.emb {
                return Some((cand, side, letter));
            }
        }
    }
    None
}

/// Letters that may extend `c` on `side`.
fn extension_letters(c: &UWord, side: End, n: usize) -> Vec<Letter> {
    let touching = match side {
        End::Right => c.canon().last(),
        End::Left => c.canon().first(),
    }
    .expect("nonempty");
    (0..2 * n).map(Letter::from_code).filter(|b| *b != touching.inverse()).collect()
}

/// Expands `ip` into its complete family of one-letter extensions on `side`
/// of the canonical base spelling.
pub fn expand_paradigm(ip: &IdealPreimage, side: End, phi: &Automorphism) -> Result<Vec<IdealPreimage>, PreimageError> {
    let c = ip.base.canon();
    let mut out = Vec::new();
    for b in extension_letters(&ip.base, side, phi.rank()) {
        let (spelled, start) = match side {
            End::Right => {
                let mut v = c.letters().to_vec();
                v.push(b);
                (v, 0)
            }
            End::Left => {
                let mut v = vec![b];
                v.extend_from_slice(c.letters());
                (v, 1)
            }
        };
        let emb = induced_embedding(ip, phi, &spelled, false, Occurrence::segment(start, Dir::Forward))?;
        out.push(reorient(&ip.u, &ReducedWord::from_vec_unchecked(spelled), emb));
    }
    Ok(out)
}

/// Caches restrictions of elements while a set is being minimized.
struct ParadigmScanner<'a> {
    phi: &'a Automorphism,
    cache: HashMap<(IdealPreimage, End), Option<(IdealPreimage, End, Letter)>>,
}

impl<'a> ParadigmScanner<'a> {
    fn new(phi: &'a Automorphism) -> Self {
        ParadigmScanner { phi, cache: HashMap::new() }
    }

    /// All complete paradigms, right-extension families first, then by
    /// contraction in canonical order.
    fn complete_groups(&mut self, elements: &[IdealPreimage]) -> Vec<Paradigm> {
        let n = self.phi.rank();
        let mut groups: BTreeMap<(u8, IdealPreimage), BTreeMap<Letter, Vec<usize>>> = BTreeMap::new();
        for end in [End::Right, End::Left] {
            for (i, e) in elements.iter().enumerate() {
                let key = (e.clone(), end);
                let phi = self.phi;
                let r = self.cache.entry(key).or_insert_with(|| restriction(e, end, phi)).clone();
                if let Some((c, side, letter)) = r {
                    let rank = if side == End::Right { 0 } else { 1 };
                    groups.entry((rank, c)).or_default().entry(letter).or_default().push(i);
                }
            }
        }
        let mut out = Vec::new();
        for ((rank, c), by_letter) in groups {
            let side = if rank == 0 { End::Right } else { End::Left };
            let need = extension_letters(&c.base, side, n);
            if need.iter().all(|b| by_letter.contains_key(b)) && by_letter.len() == need.len() {
                let members = need.iter().map(|b| by_letter[b][0]).collect();
                out.push(Paradigm { members, contraction: c, side });
            }
        }
        out
    }
}

/// The first complete paradigm in scan order.
pub fn detect_full_paradigm(s: &FullSet) -> Option<Paradigm> {
    ParadigmScanner::new(&s.phi).complete_groups(&s.elements).into_iter().next()
}

fn contract(elements: &[IdealPreimage], chosen: &[&Paradigm]) -> Vec<IdealPreimage> {
    let gone: HashSet<usize> = chosen.iter().flat_map(|p| p.members.iter().copied()).collect();
    let mut out: Vec<IdealPreimage> =
        elements.iter().enumerate().filter(|(i, _)| !gone.contains(i)).map(|(_, e)| e.clone()).collect();
    out.extend(chosen.iter().map(|p| p.contraction.clone()));
    out.sort();
    out
}

/// Contracts paradigms until none remain. Each pass contracts, in scan order,
/// every complete paradigm disjoint from those already taken.
pub fn minimize_full_set(s: &FullSet) -> FullSet {
    let mut scanner = ParadigmScanner::new(&s.phi);
    let mut elements = s.elements.clone();
    loop {
        let groups = scanner.complete_groups(&elements);
        if groups.is_empty() {
            break;
        }
        let mut used: HashSet<usize> = HashSet::new();
        let mut chosen = Vec::new();
        for g in &groups {
            if g.members.iter().all(|i| !used.contains(i)) {
                used.extend(g.members.iter().copied());
                chosen.push(g);
            }
        }
        elements = contract(&elements, &chosen);
    }
    FullSet::new(s.u.clone(), s.phi.clone(), elements)
}

/// Minimization contracting one paradigm at a time, chosen at random among
/// all complete ones. The result does not depend on the choices.
pub fn minimize_full_set_shuffled<R: Rng>(s: &FullSet, rng: &mut R) -> FullSet {
    let mut scanner = ParadigmScanner::new(&s.phi);
    let mut elements = s.elements.clone();
    loop {
        let groups = scanner.complete_groups(&elements);
        if groups.is_empty() {
            break;
        }
        let g = &groups[rng.gen_range(0..groups.len())];
        elements = contract(&elements, &[g]);
    }
    FullSet::new(s.u.clone(), s.phi.clone(), elements)
}

// ---------------------------------------------------------------------------
// Full sets for composite automorphisms

/// Computes minimal full sets under a fixed automorphism, sharing work
/// between words. Safe to use from several threads.
pub struct FullSetSolver {
    phi: Arc<Automorphism>,
    prefixes: Vec<Arc<Automorphism>>,
    cache: Mutex<HashMap<(UWord, usize), Arc<FullSet>>>,
}

impl FullSetSolver {
    pub fn new(phi: &Automorphism) -> FullSetSolver {
        let prefixes = (0..=phi.moves().len()).map(|j| Arc::new(phi.prefix(j))).collect();
        FullSetSolver { phi: Arc::new(phi.clone()), prefixes, cache: Mutex::new(HashMap::new()) }
    }

    pub fn automorphism(&self) -> &Automorphism {
        &self.phi
    }

    /// The minimal full set of `u` under φ.
    pub fn full_set(&self, u: &UWord) -> Arc<FullSet> {
        self.solve(u, self.prefixes.len() - 1)
    }

    /// Full set under the first `j` moves; the outermost of them is peeled
    /// first and the rest is solved recursively for every base it produces.
    fn solve(&self, u: &UWord, j: usize) -> Arc<FullSet> {
        if let Some(s) = self.cache.lock().expect("cache lock").get(&(u.clone(), j)) {
            return s.clone();
        }
        let n = self.phi.rank();
        let result = if j == 0 {
            let mut s = FullSet::identity(u, n);
            s.phi = self.prefixes[0].clone();
            s
        } else {
            let m = self.phi.moves()[j - 1];
            let outer = nielsen_full_set(u, m, n);
            let composed = compose_full_sets(&outer, |v| self.solve(v, j - 1));
            let composed = FullSet { phi: self.prefixes[j].clone(), ..composed };
            if j == 1 {
                composed
            } else {
                minimize_full_set(&composed)
            }
        };
        let result = Arc::new(result);
        self.cache.lock().expect("cache lock").entry((u.clone(), j)).or_insert(result).clone()
    }
}

/// The minimal full set of `u` under φ.
pub fn full_set(u: &UWord, phi: &Automorphism) -> FullSet {
    (*FullSetSolver::new(phi).full_set(u)).clone()
}

/// For every occurrence of `u` in φ(w), the number of pairs (element,
/// occurrence of its base in w) whose induced embedding lands on it. A full
/// set gives exactly one for each.
pub fn coverage(s: &FullSet, w: &CyclicWord) -> Vec<(Occurrence, usize)> {
    let phi = &s.phi;
    let image = track_cyclic_image(phi, w.letters());
    let mut counts: BTreeMap<Occurrence, usize> =
        find_occurrences(s.u.letters(), &image, true).into_iter().map(|o| (o, 0)).collect();
    for e in &s.elements {
        for at in find_occurrences(e.base.letters(), w.letters(), true) {
            if let Ok(emb) = induced_embedding(e, phi, w.letters(), true, at) {
                debug_assert_eq!(emb.host.letters(), image.as_slice());
                *counts.entry(emb.occ).or_insert(0) += 1;
            }
        }
    }
    counts.into_iter().collect()
}

/// The cyclically reduced image of a necklace spelling, as tracking sees it.
fn track_cyclic_image(phi: &Automorphism, w: &[Letter]) -> Vec<Letter> {
    let mut tr = Tracker::new(w.len() + 1);
    tr.run(phi.moves(), w, (0..w.len() as u32).collect(), true).0
}
