//! Word engine for the right-angled Coxeter group `W(Δ)`.
//!
//! Generators `s_0, ..., s_{d-1}` are involutions, one per ray; `s_i` and
//! `s_j` commute exactly when the corresponding rays span a 2-cone. Elements
//! are represented by words; [`CommutationGraph::reduce`] produces the
//! canonical [`NormalForm`]: a reduced word (Tits deletion) which is the
//! lexicographically least among all its commutation-equivalent rearrangements.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fan::Fan;
use crate::gf2::Gf2Vector;

/// Largest ball radius [`CommutationGraph::enumerate_ball`] accepts unless
/// told otherwise.
pub const DEFAULT_BALL_CAP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RacgError {
    #[error("letter {letter} out of range for {generators} generators")]
    LetterOutOfRange { letter: usize, generators: usize },
    #[error("edge {{{0}, {0}}} is a self-loop")]
    SelfLoop(usize),
    #[error("ball radius {radius} exceeds the cap {cap}")]
    RadiusCapExceeded { radius: usize, cap: usize },
    #[error("malformed word `{0}`: expected whitespace-separated generator indices")]
    MalformedWord(String),
}

/// Sequence of generator indices. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every generator is an involution, so inversion is reversal.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl FromStr for Word {
    type Err = RacgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| RacgError::MalformedWord(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Canonical reduced representative of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NormalForm(Word);

impl NormalForm {
    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    pub fn letters(&self) -> &[usize] {
        &self.0 .0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    One,
    Two,
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Order::One => "1",
            Order::Two => "2",
            Order::Infinite => "infinite",
        })
    }
}

/// Presentation graph of a right-angled Coxeter group: an edge means the two
/// generators commute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationGraph {
    generators: usize,
    adjacent: Vec<Vec<bool>>,
}

impl CommutationGraph {
    pub fn new(generators: usize, edges: &[(usize, usize)]) -> Result<Self, RacgError> {
        let mut adjacent = vec![vec![false; generators]; generators];
        for &(i, j) in edges {
            for x in [i, j] {
                if x >= generators {
                    return Err(RacgError::LetterOutOfRange {
                        letter: x,
                        generators,
                    });
                }
            }
            if i == j {
                return Err(RacgError::SelfLoop(i));
            }
            adjacent[i][j] = true;
            adjacent[j][i] = true;
        }
        Ok(CommutationGraph {
            generators,
            adjacent,
        })
    }

    /// One generator per ray; `{i, j}` is an edge iff the rays span a 2-cone.
    pub fn from_fan(fan: &Fan) -> Self {
        let edges: Vec<(usize, usize)> = fan.two_cones().collect();
        Self::new(fan.ray_count(), &edges).expect("2-cones index valid distinct rays")
    }

    pub fn complete(generators: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..generators {
            for j in i + 1..generators {
                edges.push((i, j));
            }
        }
        Self::new(generators, &edges).expect("complete graph")
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Sorted edge list `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.generators {
            for j in i + 1..self.generators {
                if self.adjacent[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Sorted list of distinct non-adjacent pairs `(i, j)` with `i < j`.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.generators {
            for j in i + 1..self.generators {
                if !self.adjacent[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Distinct generators joined by an edge.
    pub fn commutes(&self, i: usize, j: usize) -> bool {
        self.adjacent[i][j]
    }

    /// Checks that every letter names a generator.
    pub fn word(&self, letters: Vec<usize>) -> Result<Word, RacgError> {
        self.check(&Word(letters))
    }

    pub fn check(&self, w: &Word) -> Result<Word, RacgError> {
        match w.0.iter().find(|&&l| l >= self.generators) {
            Some(&letter) => Err(RacgError::LetterOutOfRange {
                letter,
                generators: self.generators,
            }),
            None => Ok(w.clone()),
        }
    }

    /// Appends `s` to a reduced word, keeping it reduced: the last occurrence
    /// of `s` that commutes with everything after it cancels, otherwise `s`
    /// is pushed.
    fn push_reduced(&self, word: &mut Vec<usize>, s: usize) {
        for p in (0..word.len()).rev() {
            let x = word[p];
            if x == s {
                word.remove(p);
                return;
            }
            if !self.adjacent[x][s] {
                break;
            }
        }
        word.push(s);
    }

    fn tits_reduce(&self, letters: &[usize]) -> Vec<usize> {
        let mut out = Vec::with_capacity(letters.len());
        for &s in letters {
            self.push_reduced(&mut out, s);
        }
        out
    }

    /// Lexicographically least rearrangement of a reduced word under
    /// commutation of adjacent commuting letters.
    fn lex_least(&self, reduced: &[usize]) -> Vec<usize> {
        let mut rest = reduced.to_vec();
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut best: Option<usize> = None;
            for p in 0..rest.len() {
                let x = rest[p];
                if best.is_some_and(|b| rest[b] <= x) {
                    continue;
                }
                if rest[..p].iter().all(|&y| y != x && self.adjacent[y][x]) {
                    best = Some(p);
                }
            }
            let p = best.expect("the first letter is always movable");
            out.push(rest.remove(p));
        }
        out
    }

    pub fn reduce(&self, w: &Word) -> NormalForm {
        NormalForm(Word(self.lex_least(&self.tits_reduce(&w.0))))
    }

    pub fn equal(&self, a: &Word, b: &Word) -> bool {
        self.reduce(&a.concat(&b.inverse())).is_identity()
    }

    pub fn multiply(&self, a: &Word, b: &Word) -> NormalForm {
        self.reduce(&a.concat(b))
    }

    /// Generators `s` with `|s w| < |w|`, i.e. letters a reduced expression
    /// of `w` can start with.
    pub fn first_letters(&self, w: &NormalForm) -> BTreeSet<usize> {
        let letters = w.letters();
        (0..letters.len())
            .filter(|&p| {
                letters[..p]
                    .iter()
                    .all(|&y| y != letters[p] && self.adjacent[y][letters[p]])
            })
            .map(|p| letters[p])
            .collect()
    }

    /// Generators a reduced expression of `w` can end with.
    pub fn last_letters(&self, w: &NormalForm) -> BTreeSet<usize> {
        let letters = w.letters();
        (0..letters.len())
            .filter(|&p| {
                letters[p + 1..]
                    .iter()
                    .all(|&y| y != letters[p] && self.adjacent[y][letters[p]])
            })
            .map(|p| letters[p])
            .collect()
    }

    /// Writes `w = conjugator · core · conjugator⁻¹` where no generator `s`
    /// gives a reduced expression `core = s · u · s`.
    pub fn cyclic_reduce(&self, w: &Word) -> (NormalForm, Word) {
        let mut core = self.reduce(w);
        let mut conjugator = Vec::new();
        'outer: loop {
            if core.len() < 2 {
                break;
            }
            for s in self.first_letters(&core) {
                let shorter = self.reduce(&Word(vec![s]).concat(core.word()));
                if self.last_letters(&shorter).contains(&s) {
                    core = self.reduce(&shorter.word().concat(&Word(vec![s])));
                    conjugator.push(s);
                    continue 'outer;
                }
            }
            break;
        }
        (core, Word(conjugator))
    }

    /// Finite orders are 1 or 2; an element has order 2 iff it is conjugate
    /// to a product of distinct pairwise commuting generators.
    pub fn order(&self, w: &Word) -> Order {
        let (core, _) = self.cyclic_reduce(w);
        let letters = core.letters();
        if letters.is_empty() {
            return Order::One;
        }
        let clique = letters.iter().enumerate().all(|(p, &x)| {
            letters[p + 1..]
                .iter()
                .all(|&y| x != y && self.adjacent[x][y])
        });
        if clique {
            Order::Two
        } else {
            Order::Infinite
        }
    }

    /// Image in `W_ab = (Z/2)^d`: the parity of each generator's occurrences.
    pub fn abelianization_image(&self, w: &Word) -> Gf2Vector {
        let mut v = Gf2Vector::zero(self.generators);
        for &l in &w.0 {
            v.flip(l);
        }
        v
    }

    pub fn in_commutator_subgroup(&self, w: &Word) -> bool {
        self.abelianization_image(w).is_zero()
    }

    /// `[W, W]` is abelian iff every generator fails to commute with at most
    /// one other generator.
    pub fn commutator_abelian(&self) -> bool {
        (0..self.generators).all(|j| {
            (0..self.generators)
                .filter(|&i| i != j && !self.adjacent[i][j])
                .count()
                <= 1
        })
    }

    /// All elements of length at most `radius`, ordered by length and then
    /// lexicographically by normal form.
    pub fn enumerate_ball(&self, radius: usize) -> Result<Vec<NormalForm>, RacgError> {
        self.enumerate_ball_with_cap(radius, DEFAULT_BALL_CAP)
    }

    pub fn enumerate_ball_with_cap(
        &self,
        radius: usize,
        cap: usize,
    ) -> Result<Vec<NormalForm>, RacgError> {
        if radius > cap {
            return Err(RacgError::RadiusCapExceeded { radius, cap });
        }
        let mut out = vec![NormalForm::default()];
        let mut frontier = vec![NormalForm::default()];
        for k in 0..radius {
            let mut next = BTreeSet::new();
            for w in &frontier {
                for s in 0..self.generators {
                    let mut v = w.letters().to_vec();
                    v.push(s);
                    let nf = self.reduce(&Word(v));
                    if nf.len() == k + 1 {
                        next.insert(nf);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next.into_iter().collect();
            out.extend(frontier.iter().cloned());
        }
        Ok(out)
    }
}
