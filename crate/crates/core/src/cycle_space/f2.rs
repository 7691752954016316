//! Dense bitset rows and incremental Gaussian elimination over F2.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut row = Self::zeros(len);
        for i in idx {
            row.flip(i);
        }
        row
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
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

    pub fn lowest_set(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

/// Row-echelon basis of a subspace of F2^len. Every stored row's lowest set
/// bit is its pivot and no two rows share a pivot.
#[derive(Clone, Debug)]
pub struct F2Basis {
    len: usize,
    rows: Vec<BitRow>,
    pivot_row: Vec<Option<usize>>,
}

impl F2Basis {
    pub fn new(len: usize) -> Self {
        F2Basis {
            len,
            rows: Vec::new(),
            pivot_row: vec![None; len],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dimension(&self) -> usize {
        self.len
    }

    fn reduce(&self, row: &mut BitRow) -> Option<usize> {
        while let Some(b) = row.lowest_set() {
            match self.pivot_row[b] {
                Some(r) => row.xor_assign(&self.rows[r]),
                None => return Some(b),
            }
        }
        None
    }

    /// Adds `row` to the span; returns false when it was already there.
    pub fn insert(&mut self, mut row: BitRow) -> bool {
        match self.reduce(&mut row) {
            Some(b) => {
                self.pivot_row[b] = Some(self.rows.len());
                self.rows.push(row);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, row: &BitRow) -> bool {
        let mut r = row.clone();
        self.reduce(&mut r).is_none()
    }
}
