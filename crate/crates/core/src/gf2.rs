use std::fmt;
use std::ops::{Add, AddAssign};

/// Vector over GF(2).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector(Vec<bool>);

impl Gf2Vector {
    pub fn zero(len: usize) -> Self {
        Gf2Vector(vec![false; len])
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zero(len);
        v.0[index] = true;
        v
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Gf2Vector(bits)
    }

    /// Reduction mod 2 of an integer vector.
    pub fn from_ints(coords: &[i64]) -> Self {
        Gf2Vector(coords.iter().map(|c| c.rem_euclid(2) == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.0[i] = value;
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] ^= true;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|b| !b)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(i, _)| i)
    }

    /// Entry `i` of `t` taken as bit `i` of the integer.
    pub fn from_index(len: usize, mut index: u64) -> Self {
        let mut v = Self::zero(len);
        for i in 0..len {
            v.0[i] = index & 1 == 1;
            index >>= 1;
        }
        v
    }

    pub fn to_index(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | ((b as u64) << i))
    }

    /// `"0110"`-style string, entry 0 first.
    pub fn bitstring(&self) -> String {
        self.0.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

impl AddAssign<&Gf2Vector> for Gf2Vector {
    fn add_assign(&mut self, rhs: &Gf2Vector) {
        assert_eq!(self.len(), rhs.len(), "GF(2) length mismatch");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a ^= *b;
        }
    }
}

impl Add<&Gf2Vector> for &Gf2Vector {
    type Output = Gf2Vector;
    fn add(self, rhs: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bitstring())
    }
}

/// Incremental row-echelon basis; remembers how each pivot row was built
/// from the inserted vectors so that coordinates can be recovered.
#[derive(Debug, Clone)]
pub(crate) struct Gf2Echelon {
    len: usize,
    // (pivot column, reduced row, combination of inserted vectors)
    rows: Vec<(usize, Gf2Vector, Gf2Vector)>,
    inserted: usize,
    capacity: usize,
}

impl Gf2Echelon {
    /// `capacity` bounds the number of vectors that may be inserted.
    pub fn new(len: usize, capacity: usize) -> Self {
        Gf2Echelon {
            len,
            rows: Vec::new(),
            inserted: 0,
            capacity,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &Gf2Vector) -> (Gf2Vector, Gf2Vector) {
        let mut v = v.clone();
        let mut combo = Gf2Vector::zero(self.capacity);
        for (col, row, c) in &self.rows {
            if v.get(*col) {
                v += row;
                combo += c;
            }
        }
        (v, combo)
    }

    /// Inserts `v`; returns `false` if it was dependent on earlier vectors.
    pub fn insert(&mut self, v: &Gf2Vector) -> bool {
        assert_eq!(v.len(), self.len);
        let (r, mut combo) = self.reduce(v);
        let index = self.inserted;
        self.inserted += 1;
        let pivot = r.ones().next();
        match pivot {
            None => false,
            Some(col) => {
                combo.flip(index);
                // keep rows fully reduced so reduce() is order independent
                for (_, row, cb) in self.rows.iter_mut() {
                    if row.get(col) {
                        *row += &r;
                        *cb += &combo;
                    }
                }
                self.rows.push((col, r, combo));
                true
            }
        }
    }

    /// Coordinates of `v` in terms of the inserted vectors, if it lies in
    /// their span.
    pub fn solve(&self, v: &Gf2Vector) -> Option<Gf2Vector> {
        let (r, combo) = self.reduce(v);
        r.is_zero().then_some(combo)
    }
}

/// Rank of a list of GF(2) vectors of common length `len`.
pub(crate) fn gf2_rank(len: usize, vectors: &[Gf2Vector]) -> usize {
    let mut e = Gf2Echelon::new(len, vectors.len());
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}
