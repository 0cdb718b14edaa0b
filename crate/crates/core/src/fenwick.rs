//! Binary indexed tree used for inversion counting.

#[derive(Debug, Clone)]
pub struct Fenwick {
    data: Vec<u64>,
}

impl Fenwick {
    pub fn new(n: usize) -> Self {
        Self { data: vec![0; n] }
    }

    pub fn add(&mut self, mut idx: usize, value: u64) {
        while idx < self.data.len() {
            self.data[idx] += value;
            idx |= idx + 1;
        }
    }

    /// Sum over `[0, end)`.
    pub fn prefix(&self, end: usize) -> u64 {
        let mut res = 0;
        let mut r = end;
        while r > 0 {
            res += self.data[r - 1];
            r &= r - 1;
        }
        res
    }
}

/// Number of pairs `i < j` with `perm[i] > perm[j]`. Values must lie in `0..perm.len()`.
pub fn inversions(perm: &[usize]) -> u64 {
    let n = perm.len();
    let mut fw = Fenwick::new(n);
    let mut total = 0;
    for (seen, &p) in perm.iter().enumerate() {
        // elements already inserted that are greater than p
        total += seen as u64 - fw.prefix(p + 1);
        fw.add(p, 1);
    }
    total
}
