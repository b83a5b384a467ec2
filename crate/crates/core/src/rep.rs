//! The matrix tower of an automorphism.
//!
//! Level k of the tower sends count vectors of length m_k to count vectors of
//! length k: row u is the sum, over the minimal full set of u, of the
//! functionals "coefficient of v after chaining down to |v|". On count
//! vectors of cyclic words this reproduces the counts of the image word.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use thiserror::Error;

use crate::autom::{compose, Automorphism};
use crate::preimage::FullSetSolver;
use crate::random::{random_cyclic, rng_from_seed};
use crate::word::{basis_size, enumerate_basis, CyclicWord, Letter, Orientation, UWord};
use crate::zmodule::{apply_p_chain, apply_p_left, p_chain, pi_cyclic, IntMatrix, VectorK};
use rand::Rng;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("level {0} must be at least 1")]
    BadLevel(usize),
    #[error("the {mode} identity needs level {k} >= {min}")]
    LevelTooLow { mode: &'static str, k: usize, min: usize },
    #[error("a dense matrix with {0} columns is too large to build")]
    TooLarge(usize),
    #[error("automorphisms of different ranks")]
    RankMismatch,
}

/// An automorphism together with everything needed to build its levels:
/// a shared full-set solver and cached level data.
pub struct Representation {
    solver: FullSetSolver,
    sigma: Orientation,
    raw: Mutex<Vec<usize>>,
    levels: Mutex<HashMap<usize, Arc<RepMatrix>>>,
}

impl Representation {
    pub fn new(phi: &Automorphism) -> Representation {
        Representation::with_orientation(phi, Orientation::lex_min())
    }

    pub fn with_orientation(phi: &Automorphism, sigma: Orientation) -> Representation {
        Representation {
            solver: FullSetSolver::new(phi),
            sigma,
            raw: Mutex::new(Vec::new()),
            levels: Mutex::new(HashMap::new()),
        }
    }

    pub fn automorphism(&self) -> &Automorphism {
        self.solver.automorphism()
    }

    pub fn solver(&self) -> &FullSetSolver {
        &self.solver
    }

    pub fn orientation(&self) -> &Orientation {
        &self.sigma
    }

    pub fn rank(&self) -> usize {
        self.automorphism().rank()
    }

    /// Longest base word over the minimal full sets of all length-k words.
    pub fn raw_m(&self, k: usize) -> usize {
        assert!(k >= 1);
        if let Some(m) = self.raw.lock().expect("lock").get(k - 1) {
            return *m;
        }
        let known = self.raw.lock().expect("lock").len();
        for level in known + 1..=k {
            let basis = enumerate_basis(self.rank(), level);
            let m = basis.par_iter().map(|u| self.solver.full_set(u).max_base_len()).max().unwrap_or(level);
            let mut raw = self.raw.lock().expect("lock");
            if raw.len() == level - 1 {
                raw.push(m);
            }
        }
        self.raw.lock().expect("lock")[k - 1]
    }

    /// The monotone envelope max(raw m_1, ..., raw m_k).
    pub fn m_k(&self, k: usize) -> usize {
        (1..=k).map(|j| self.raw_m(j)).max().unwrap_or(0)
    }

    pub fn matrix(&self, k: usize) -> Arc<RepMatrix> {
        assert!(k >= 1);
        if let Some(r) = self.levels.lock().expect("lock").get(&k) {
            return r.clone();
        }
        let m = self.m_k(k);
        let basis = enumerate_basis(self.rank(), k);
        let rows: Vec<BTreeMap<UWord, usize>> = basis.par_iter().map(|u| self.solver.full_set(u).bases()).collect();
        let r = Arc::new(RepMatrix {
            k,
            m,
            raw_m: self.raw_m(k),
            basis,
            rows,
            sigma: self.sigma.clone(),
            phi: Arc::new(self.automorphism().clone()),
        });
        self.levels.lock().expect("lock").entry(k).or_insert(r).clone()
    }
}

/// m_k of an automorphism (the monotone envelope).
pub fn m_k_of(phi: &Automorphism, k: usize) -> usize {
    Representation::new(phi).m_k(k)
}

/// Level k of the tower, stored by its rows: the base multiset of the
/// minimal full set of every length-k word.
#[derive(Clone, Debug)]
pub struct RepMatrix {
    pub k: usize,
    /// Source level.
    pub m: usize,
    pub raw_m: usize,
    pub basis: Vec<UWord>,
    pub rows: Vec<BTreeMap<UWord, usize>>,
    pub sigma: Orientation,
    pub phi: Arc<Automorphism>,
}

impl RepMatrix {
    /// Applies the level to a vector of length m (or longer, in which case it
    /// is first chained down to length m).
    pub fn apply(&self, x: &VectorK) -> VectorK {
        assert!(x.k() >= self.m, "vector level {} below source level {}", x.k(), self.m);
        let x = apply_p_chain(x, self.m, &self.sigma);
        let mut by_level: BTreeMap<usize, VectorK> = BTreeMap::new();
        by_level.insert(self.m, x);
        for l in self.rows.iter().flat_map(|r| r.keys().map(|v| v.len())) {
            if by_level.contains_key(&l) {
                continue;
            }
            let top = by_level.get(&self.m).expect("source level present");
            let y = apply_p_chain(top, l, &self.sigma);
            by_level.insert(l, y);
        }
        let mut out = VectorK::zero(self.k);
        for (u, row) in self.basis.iter().zip(&self.rows) {
            let c: i64 = row.iter().map(|(v, mult)| *mult as i64 * by_level[&v.len()].get(v)).sum();
            out.add_to(u, c);
        }
        out
    }

    /// The dense matrix W_k × W_m; only for small source levels.
    pub fn to_int_matrix(&self, max_cols: usize) -> Result<IntMatrix, RepError> {
        let n = self.phi.rank();
        let cols = basis_size(n, self.m);
        if cols > max_cols {
            return Err(RepError::TooLarge(cols));
        }
        let mut chains: BTreeMap<usize, IntMatrix> = BTreeMap::new();
        for l in self.rows.iter().flat_map(|r| r.keys().map(|v| v.len())) {
            chains.entry(l).or_insert_with(|| p_chain(n, self.m, l, &self.sigma));
        }
        let mut out = IntMatrix::new(self.basis.clone(), enumerate_basis(n, self.m));
        for (i, row) in self.rows.iter().enumerate() {
            for (v, mult) in row {
                let ch = &chains[&v.len()];
                let r = ch.row_of(v).expect("base is in the basis");
                for (j, a) in ch.row(r) {
                    out.add_entry(i, j, a * *mult as i64);
                }
            }
        }
        Ok(out)
    }

    /// Number of base words (with multiplicity) contributing to row u.
    pub fn row_weight(&self, u: &UWord) -> Option<usize> {
        let i = self.basis.iter().position(|b| b == u)?;
        Some(self.rows[i].values().sum())
    }
}

/// A level map built from a chain of representation matrices, applied right
/// to left.
#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub k: usize,
    pub parts: Vec<Arc<RepMatrix>>,
}

impl TowerLevel {
    pub fn source(&self) -> usize {
        self.parts.last().map_or(self.k, |r| r.m)
    }

    pub fn apply(&self, x: &VectorK) -> VectorK {
        let mut cur = x.clone();
        for r in self.parts.iter().rev() {
            cur = r.apply(&cur);
        }
        cur
    }
}

/// Levels 1..=K of a tower.
#[derive(Clone, Debug)]
pub struct Tower {
    pub levels: Vec<TowerLevel>,
}

impl Tower {
    pub fn of(rep: &Representation, top: usize) -> Tower {
        let levels = (1..=top).map(|k| TowerLevel { k, parts: vec![rep.matrix(k)] }).collect();
        Tower { levels }
    }

    /// The product tower: level k is outer_k ∘ inner_{m_k(outer)}.
    pub fn product(outer: &Tower, inner: &Representation) -> Tower {
        let levels = outer
            .levels
            .iter()
            .map(|lv| {
                let mut parts = lv.parts.clone();
                parts.push(inner.matrix(lv.source()));
                TowerLevel { k: lv.k, parts }
            })
            .collect();
        Tower { levels }
    }

    pub fn top(&self) -> usize {
        self.levels.len()
    }

    pub fn max_source(&self) -> usize {
        self.levels.iter().map(|l| l.source()).max().unwrap_or(0)
    }
}

/// The smallest level at which the towers act differently on the count
/// vectors of `probes`, or `None` if they agree on every level.
pub fn tower_valuation(a: &Tower, b: &Tower, probes: &[CyclicWord]) -> Option<usize> {
    let top = a.top().min(b.top());
    let big = a.max_source().max(b.max_source());
    let vectors: Vec<VectorK> = probes.par_iter().map(|w| pi_cyclic(w, big)).collect();
    (0..top).find(|&i| vectors.par_iter().any(|x| a.levels[i].apply(x) != b.levels[i].apply(x))).map(|i| i + 1)
}

/// A deterministic probe set: every cyclic word of length at most `len`,
/// plus `extra` random ones of length up to 12.
pub fn default_probes(n: usize, len: usize, extra: usize, seed: u64) -> Vec<CyclicWord> {
    let mut out: Vec<CyclicWord> = (1..=len).flat_map(|l| crate::word::enumerate_cyclic(n, l)).collect();
    let mut rng = rng_from_seed(seed);
    for _ in 0..extra {
        let l = rng.gen_range(1..=12);
        out.push(random_cyclic(&mut rng, n, l));
    }
    out
}

/// First level and generator at which the image counts differ.
pub fn distinguish(phi: &Automorphism, psi: &Automorphism, k_max: usize) -> Option<(usize, usize)> {
    assert_eq!(phi.rank(), psi.rank(), "automorphisms of different ranks");
    let n = phi.rank();
    let images: Vec<(CyclicWord, CyclicWord)> = (0..n)
        .map(|g| {
            let x = CyclicWord::letter(Letter::gen(g));
            (phi.apply_cyclic(&x), psi.apply_cyclic(&x))
        })
        .collect();
    let found =
        (1..=k_max).find_map(|k| images.iter().position(|(a, b)| pi_cyclic(a, k) != pi_cyclic(b, k)).map(|g| (k, g)));
    // equal necklaces have equal counts; a count difference needs different necklaces
    match found {
        Some((_, g)) => assert_ne!(images[g].0, images[g].1, "count difference between equal necklaces"),
        None => {
            for (a, b) in &images {
                if a == b {
                    continue;
                }
                // inconclusive: differing necklaces whose counts agree up to k_max
                debug_assert!((1..=k_max).all(|k| pi_cyclic(a, k) == pi_cyclic(b, k)));
            }
        }
    }
    found
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Defining,
    Tower,
    Composition,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Defining => "defining",
            Mode::Tower => "tower",
            Mode::Composition => "composition",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub word: CyclicWord,
    pub lhs: VectorK,
    pub rhs: VectorK,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub mode: Mode,
    pub k: usize,
    pub trials: usize,
    pub counterexample: Option<Counterexample>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Random probe words: lengths uniform in 1..=max_len.
pub fn probe_words(n: usize, trials: usize, max_len: usize, seed: u64) -> Vec<CyclicWord> {
    let mut rng = rng_from_seed(seed);
    (0..trials)
        .map(|_| {
            let l = rng.gen_range(1..=max_len);
            random_cyclic(&mut rng, n, l)
        })
        .collect()
}

/// Checks one of the tower identities exactly on random cyclic words.
///
/// * defining: φ_k π_{m_k}(w) = π_k(φ(w))
/// * tower: p_k φ_k π_{m_k}(w) = φ_{k−1} p_{m_k,m_{k−1}} π_{m_k}(w)
/// * composition: (φ∘ψ)_k π(w) = φ_k ψ_{m_k(φ)} π(w), where φ∘ψ applies ψ first
pub fn verify_identities(
    phi: &Representation,
    psi: Option<&Representation>,
    k: usize,
    mode: Mode,
    words: &[CyclicWord],
) -> Result<Report, RepError> {
    if k == 0 {
        return Err(RepError::BadLevel(0));
    }
    let sigma = phi.orientation().clone();
    let check: Box<dyn Fn(&CyclicWord) -> (VectorK, VectorK) + Sync> = match mode {
        Mode::Defining => {
            let r = phi.matrix(k);
            let f = phi.automorphism().clone();
            Box::new(move |w| (r.apply(&pi_cyclic(w, r.m)), pi_cyclic(&f.apply_cyclic(w), k)))
        }
        Mode::Tower => {
            if k < 2 {
                return Err(RepError::LevelTooLow { mode: "tower", k, min: 2 });
            }
            let hi = phi.matrix(k);
            let lo = phi.matrix(k - 1);
            Box::new(move |w| {
                let x = pi_cyclic(w, hi.m);
                (apply_p_left(&hi.apply(&x), &sigma), lo.apply(&apply_p_chain(&x, lo.m, &sigma)))
            })
        }
        Mode::Composition => {
            let psi = psi.expect("composition needs a second automorphism");
            if psi.rank() != phi.rank() {
                return Err(RepError::RankMismatch);
            }
            let both =
                Representation::with_orientation(&compose(phi.automorphism(), psi.automorphism()), sigma.clone());
            let whole = both.matrix(k);
            let outer = phi.matrix(k);
            let inner = psi.matrix(outer.m);
            let top = whole.m.max(inner.m);
            Box::new(move |w| {
                let x = pi_cyclic(w, top);
                (whole.apply(&x), outer.apply(&inner.apply(&x)))
            })
        }
    };
    let results: Vec<(VectorK, VectorK)> = words.par_iter().map(|w| check(w)).collect();
    let counterexample = results
        .into_iter()
        .zip(words)
        .find(|((l, r), _)| l != r)
        .map(|((lhs, rhs), w)| Counterexample { word: w.clone(), lhs, rhs });
    Ok(Report { mode, k, trials: words.len(), counterexample })
}
