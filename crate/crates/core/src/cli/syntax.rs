//! ASCII surface syntax for letters, words, moves and orientation overrides.
//!
//! Generators are `x, y, z` followed by `a..w`; an uppercase letter is the
//! inverse of its lowercase letter.

use std::fmt;

use thiserror::Error;

use crate::autom::NielsenMove;
use crate::word::{free_reduce, CyclicWord, Letter, Orientation, ReducedWord, UWord, WordError};

pub const ALPHABET: &str = "xyzabcdefghijklmnopqrstuvw";

/// Largest rank that the ASCII syntax can spell.
pub const MAX_RANK: usize = 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("'{0}' is not a letter")]
    BadChar(char),
    #[error("letter '{c}' is outside rank {n}")]
    OutOfRange { c: char, n: usize },
    #[error("rank {0} is not between 1 and 26")]
    BadRank(usize),
    #[error("cannot parse move '{0}'")]
    BadMove(String),
    #[error("cannot parse orientation override '{0}'")]
    BadOverride(String),
    #[error("{0}")]
    Word(#[from] WordError),
}

pub fn letter_char(a: Letter) -> char {
    let c = ALPHABET.as_bytes()[a.generator()] as char;
    if a.is_inverted() {
        c.to_ascii_uppercase()
    } else {
        c
    }
}

pub fn parse_letter(c: char, n: usize) -> Result<Letter, SyntaxError> {
    if n == 0 || n > MAX_RANK {
        return Err(SyntaxError::BadRank(n));
    }
    let lower = c.to_ascii_lowercase();
    let g = ALPHABET.find(lower).filter(|_| c.is_ascii_alphabetic()).ok_or(SyntaxError::BadChar(c))?;
    if g >= n {
        return Err(SyntaxError::OutOfRange { c, n });
    }
    Ok(Letter::new(g, c.is_ascii_uppercase()))
}

/// Letters of `s` without reduction; whitespace is skipped.
pub fn parse_letters(s: &str, n: usize) -> Result<Vec<Letter>, SyntaxError> {
    s.chars().filter(|c| !c.is_whitespace()).map(|c| parse_letter(c, n)).collect()
}

pub fn parse_word(s: &str, n: usize) -> Result<ReducedWord, SyntaxError> {
    Ok(free_reduce(parse_letters(s, n)?))
}

pub fn parse_uword(s: &str, n: usize) -> Result<UWord, SyntaxError> {
    Ok(UWord::new(&parse_word(s, n)?)?)
}

pub fn parse_cyclic(s: &str, n: usize) -> Result<CyclicWord, SyntaxError> {
    Ok(CyclicWord::new(&parse_word(s, n)?)?)
}

pub fn format_letters(w: &[Letter]) -> String {
    w.iter().map(|a| letter_char(*a)).collect()
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(self.letters()))
    }
}

impl fmt::Display for UWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(self.letters()))
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(self.letters()))
    }
}

fn generator_index(tok: &str, n: usize, whole: &str) -> Result<usize, SyntaxError> {
    let mut cs = tok.trim().chars();
    let (Some(c), None) = (cs.next(), cs.next()) else {
        return Err(SyntaxError::BadMove(whole.to_string()));
    };
    if !c.is_ascii_lowercase() {
        return Err(SyntaxError::BadMove(whole.to_string()));
    }
    Ok(parse_letter(c, n)?.generator())
}

/// Parses `R(a,b)`, `L(a,b)`, `I(a)`, `S(a,b)` separated by semicolons.
pub fn parse_moves(s: &str, n: usize) -> Result<Vec<NielsenMove>, SyntaxError> {
    let mut out = Vec::new();
    for item in s.split(';') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let bad = || SyntaxError::BadMove(item.to_string());
        let open = item.find('(').ok_or_else(bad)?;
        if !item.ends_with(')') {
            return Err(bad());
        }
        let head = item[..open].trim();
        let args: Vec<&str> = item[open + 1..item.len() - 1].split(',').collect();
        let idx = |k: usize| generator_index(args[k], n, item);
        let m = match (head, args.len()) {
            ("R", 2) => NielsenMove::RightMult(idx(0)?, idx(1)?),
            ("L", 2) => NielsenMove::LeftMult(idx(0)?, idx(1)?),
            ("S", 2) => NielsenMove::Swap(idx(0)?, idx(1)?),
            ("I", 1) => NielsenMove::Invert(idx(0)?),
            _ => return Err(bad()),
        };
        m.validate(n).map_err(|_| bad())?;
        out.push(m);
    }
    Ok(out)
}

pub fn format_move(m: &NielsenMove) -> String {
    let g = |i: usize| ALPHABET.as_bytes()[i] as char;
    match *m {
        NielsenMove::RightMult(i, j) => format!("R({},{})", g(i), g(j)),
        NielsenMove::LeftMult(i, j) => format!("L({},{})", g(i), g(j)),
        NielsenMove::Swap(i, j) => format!("S({},{})", g(i), g(j)),
        NielsenMove::Invert(i) => format!("I({})", g(i)),
    }
}

pub fn format_moves(ms: &[NielsenMove]) -> String {
    ms.iter().map(format_move).collect::<Vec<_>>().join(";")
}

/// Parses a comma-separated list of preferred spellings such as `yx,Yx`.
pub fn parse_orientation(s: &str, n: usize) -> Result<Orientation, SyntaxError> {
    let mut sigma = Orientation::lex_min();
    for tok in s.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let letters = parse_letters(tok, n)?;
        let w = free_reduce(letters.clone());
        if w.letters() != letters.as_slice() || w.is_empty() {
            return Err(SyntaxError::BadOverride(tok.to_string()));
        }
        sigma = sigma.with_override(&w)?;
    }
    Ok(sigma)
}
