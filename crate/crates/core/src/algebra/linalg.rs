use super::cyclotomic::CyclotomicNumber;

/// Row space in reduced row echelon form over a cyclotomic field, built
/// incrementally. Pivots are the leftmost nonzero column of each row and
/// are normalized to 1.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    cols: usize,
    rows: Vec<Vec<CyclotomicNumber>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(cols: usize) -> Self {
        EchelonBasis {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<CyclotomicNumber>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, v: &mut [CyclotomicNumber]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = &*x - &(&f * r);
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[CyclotomicNumber]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(CyclotomicNumber::is_zero)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[CyclotomicNumber]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero pivot");
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        // clear the new pivot column from existing rows
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, r) in row.iter_mut().zip(&w) {
                    if !r.is_zero() {
                        *x = &*x - &(&f * r);
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, w);
        self.pivots.insert(at, p);
        true
    }
}

/// Rank of a list of rows.
pub fn rank(rows: &[Vec<CyclotomicNumber>], cols: usize) -> usize {
    let mut b = EchelonBasis::new(cols);
    for r in rows {
        b.insert(r);
        if b.rank() == cols {
            break;
        }
    }
    b.rank()
}
