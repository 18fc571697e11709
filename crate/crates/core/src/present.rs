//! Finitely presented groups, integer Smith normal form and abelianization.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error(
        "relator {relator} refers to generator {generator}, but only {count} generators exist"
    )]
    GeneratorOutOfRange {
        relator: usize,
        generator: usize,
        count: usize,
    },
    #[error("relator {relator} has exponent {exponent}; only +1 and -1 are allowed")]
    BadExponent { relator: usize, exponent: i32 },
    #[error("malformed presentation text at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Dense integer matrix with arbitrary precision entries, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = BigInt::from(1);
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have the
    /// same length; `cols` is needed to describe matrices with no rows.
    pub fn from_rows<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged matrix row {i}");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    /// Entries as `i64`, or `None` if any entry overflows.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| i64::try_from(&self[(i, j)]).ok())
                    .collect()
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let delta = factor * &self[(source, j)];
            self[(target, j)] += delta;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let delta = factor * &self[(i, source)];
            self[(i, target)] += delta;
        }
    }

    fn negate_row(&mut self, row: usize) {
        for j in 0..self.cols {
            let v = -&self[(row, j)];
            self[(row, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

/// `left * input * right = diagonal` with `left`, `right` unimodular.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    /// Elementary divisors, `min(rows, cols)` of them, zeros last.
    pub fn divisors(&self) -> Vec<BigInt> {
        let k = self.diagonal.rows.min(self.diagonal.cols);
        (0..k).map(|i| self.diagonal[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Elementary divisors `d1 | d2 | ...` of an integer matrix.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    smith_decomposition(m).divisors()
}

/// Smith normal form with the unimodular transforms.
///
/// Pivots are chosen as the smallest nonzero absolute value in the remaining
/// block, ties broken by lowest row then lowest column.
pub fn smith_decomposition(m: &IntMatrix) -> SmithDecomposition {
    let mut a = m.clone();
    let mut left = IntMatrix::identity(m.rows);
    let mut right = IntMatrix::identity(m.cols);
    let size = m.rows.min(m.cols);

    for t in 0..size {
        loop {
            let Some((pi, pj)) = smallest_entry(&a, t) else {
                // remaining block is zero
                return finish(left, a, right);
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let pivot = a[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..a.rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &pivot);
                a.add_row(i, t, &q);
                left.add_row(i, t, &q);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..a.cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &pivot);
                a.add_col(j, t, &q);
                right.add_col(j, t, &q);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let offender = (t + 1..a.rows)
                .find(|&i| (t + 1..a.cols).any(|j| !(&a[(i, j)] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }
    finish(left, a, right)
}

fn finish(left: IntMatrix, diagonal: IntMatrix, right: IntMatrix) -> SmithDecomposition {
    SmithDecomposition {
        left,
        diagonal,
        right,
    }
}

fn smallest_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// A generator raised to `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub exponent: i8,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter {
            generator,
            exponent: 1,
        }
    }

    pub fn neg(generator: usize) -> Self {
        Letter {
            generator,
            exponent: -1,
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            exponent: -self.exponent,
        }
    }
}

pub type Relator = Vec<Letter>;

/// A finitely presented group `< generators | relators >`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Relator>,
}

impl Presentation {
    /// Empty relators are discarded on construction.
    pub fn new(generators: Vec<String>, relators: Vec<Relator>) -> Result<Self, PresentationError> {
        let count = generators.len();
        for (r, rel) in relators.iter().enumerate() {
            for l in rel {
                if l.generator >= count {
                    return Err(PresentationError::GeneratorOutOfRange {
                        relator: r,
                        generator: l.generator,
                        count,
                    });
                }
                if l.exponent != 1 && l.exponent != -1 {
                    return Err(PresentationError::BadExponent {
                        relator: r,
                        exponent: l.exponent as i32,
                    });
                }
            }
        }
        let relators = relators.into_iter().filter(|r| !r.is_empty()).collect();
        Ok(Presentation {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    /// Free reduction of every relator (including cyclic cancellation);
    /// relators that vanish are removed.
    pub fn free_reduce(&self) -> Presentation {
        let relators = self
            .relators
            .iter()
            .map(|r| cyclically_reduce(&free_reduce_word(r)))
            .filter(|r| !r.is_empty())
            .collect();
        Presentation {
            generators: self.generators.clone(),
            relators,
        }
    }

    /// Free reduction followed by removal of relators that repeat an earlier
    /// one up to cyclic rotation and inversion. First occurrences keep their
    /// order.
    pub fn drop_trivial_relators(&self) -> Presentation {
        let reduced = self.free_reduce();
        let mut seen = HashSet::new();
        let relators = reduced
            .relators
            .into_iter()
            .filter(|r| seen.insert(cyclic_class_key(r)))
            .collect();
        Presentation {
            generators: self.generators.clone(),
            relators,
        }
    }

    /// Relator exponent-sum matrix (relators as rows).
    pub fn relation_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.relators.len(), self.generators.len());
        for (i, rel) in self.relators.iter().enumerate() {
            for l in rel {
                m[(i, l.generator)] += BigInt::from(l.exponent);
            }
        }
        m
    }

    pub fn abelianize(&self) -> AbelianInvariants {
        abelianize(self)
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Plain => self.to_plain(),
            ExportFormat::Machine => self.to_machine(),
        }
    }

    fn to_plain(&self) -> String {
        let gens = self.generators.join(", ");
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|l| {
                        let name = &self.generators[l.generator];
                        if l.exponent == 1 {
                            name.clone()
                        } else {
                            format!("{name}^-1")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect();
        if rels.is_empty() {
            format!("< {gens} | >")
        } else {
            format!("< {gens} | {} >", rels.join(", "))
        }
    }

    fn to_machine(&self) -> String {
        let mut out = String::new();
        for g in &self.generators {
            out.push_str(g);
            out.push('\n');
        }
        out.push('\n');
        for r in &self.relators {
            let line: Vec<String> = r
                .iter()
                .map(|l| (l.exponent as i64 * (l.generator as i64 + 1)).to_string())
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the line-oriented machine format: generator names one per
    /// line, a blank line, then one relator per line as signed 1-based
    /// generator indices.
    pub fn parse_machine(text: &str) -> Result<Presentation, PresentationError> {
        let mut generators = Vec::new();
        let mut relators = Vec::new();
        let mut in_relators = false;
        for (no, line) in text.lines().enumerate() {
            let line_no = no + 1;
            if !in_relators {
                if line.trim().is_empty() {
                    in_relators = true;
                } else {
                    generators.push(line.trim().to_string());
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let mut rel = Vec::new();
            for tok in line.split_whitespace() {
                let v: i64 = tok.parse().map_err(|_| PresentationError::Parse {
                    line: line_no,
                    reason: format!("`{tok}` is not an integer"),
                })?;
                if v == 0 || v.unsigned_abs() as usize > generators.len() {
                    return Err(PresentationError::Parse {
                        line: line_no,
                        reason: format!("index {v} out of range"),
                    });
                }
                let g = v.unsigned_abs() as usize - 1;
                rel.push(if v > 0 {
                    Letter::pos(g)
                } else {
                    Letter::neg(g)
                });
            }
            relators.push(rel);
        }
        if !in_relators {
            return Err(PresentationError::Parse {
                line: text.lines().count(),
                reason: "missing blank line separating generators from relators".into(),
            });
        }
        Presentation::new(generators, relators)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Plain,
    Machine,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain())
    }
}

fn free_reduce_word(word: &[Letter]) -> Relator {
    let mut out: Relator = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclically_reduce(word: &[Letter]) -> Relator {
    let mut lo = 0;
    let mut hi = word.len();
    while hi - lo >= 2 && word[lo] == word[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    word[lo..hi].to_vec()
}

fn inverse_word(word: &[Letter]) -> Relator {
    word.iter().rev().map(|l| l.inverse()).collect()
}

/// Lexicographically least rotation of the word or of its inverse.
fn cyclic_class_key(word: &[Letter]) -> Relator {
    let inv = inverse_word(word);
    let mut best: Option<Relator> = None;
    for w in [word, &inv[..]] {
        for k in 0..w.len() {
            let rot: Relator = w[k..].iter().chain(&w[..k]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// Isomorphism type of a finitely generated abelian group:
/// `Z^free_rank ⊕ Z/d1 ⊕ Z/d2 ⊕ ...` with `d1 | d2 | ...`, all `d_i ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion_divisors: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn new(free_rank: usize, torsion: &[i64]) -> Self {
        AbelianInvariants {
            free_rank,
            torsion_divisors: torsion.iter().map(|&d| BigInt::from(d)).collect(),
        }
    }

    /// `Z^free ⊕ (Z/2)^twos`.
    pub fn free_plus_two_torsion(free_rank: usize, twos: usize) -> Self {
        Self::new(free_rank, &vec![2; twos])
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion_divisors.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion_divisors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

pub fn abelianize(p: &Presentation) -> AbelianInvariants {
    let divisors = smith_normal_form(&p.relation_matrix());
    let rank = divisors.iter().filter(|d| !d.is_zero()).count();
    let one = BigInt::from(1);
    AbelianInvariants {
        free_rank: p.generators.len() - rank,
        torsion_divisors: divisors
            .into_iter()
            .filter(|d| !d.is_zero() && *d != one)
            .collect(),
    }
}
