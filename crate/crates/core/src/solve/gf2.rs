//! Gaussian elimination over GF(2) with packed rows.

/// A row of bits packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        if b {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

/// The linear system `A·x = b` over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2System {
    rows: Vec<BitRow>,
    rhs: Vec<bool>,
    cols: usize,
}

/// Result of elimination: the rank of `A` and one solution, if consistent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub rank: usize,
    pub solution: Option<Vec<bool>>,
}

impl Gf2System {
    pub fn new(cols: usize) -> Self {
        Gf2System { rows: Vec::new(), rhs: Vec::new(), cols }
    }

    pub fn push(&mut self, row: BitRow, rhs: bool) {
        assert_eq!(row.len(), self.cols, "row width must match the system");
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces to row echelon form; free variables are set to zero.
    pub fn eliminate(&self) -> Elimination {
        let mut rows = self.rows.clone();
        let mut rhs = self.rhs.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(r, p);
            rhs.swap(r, p);
            for i in 0..rows.len() {
                if i != r && rows[i].get(col) {
                    let pivot = rows[r].clone();
                    rows[i].xor_assign(&pivot);
                    rhs[i] ^= rhs[r];
                }
            }
            pivots.push((r, col));
            r += 1;
        }
        let rank = pivots.len();
        // a zero row with right-hand side 1 is the contradiction 0 = 1
        if (rank..rows.len()).any(|i| rhs[i]) {
            return Elimination { rank, solution: None };
        }
        let mut x = vec![false; self.cols];
        for &(row, col) in &pivots {
            x[col] = rhs[row];
        }
        Elimination { rank, solution: Some(x) }
    }
}
