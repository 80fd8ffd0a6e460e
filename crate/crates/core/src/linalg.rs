//! Exact dense linear algebra over a coefficient field: incremental reduced
//! row echelon forms, ranks, span tests, determinants, inverses. The reduced
//! echelon form of a span is unique, so two spans are equal iff their
//! `Echelon` rows are equal; every basis comparison rests on that.

use crate::scalar::Scalar;

/// Row space kept in reduced row echelon form. Rows are ordered by pivot
/// column; every pivot is 1 and is the only nonzero entry in its column.
#[derive(Clone, Debug)]
pub struct Echelon<K: Scalar> {
    ncols: usize,
    rows: Vec<Vec<K>>,
    pivots: Vec<usize>,
}

impl<K: Scalar> Echelon<K> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ncols
    }

    pub fn rows(&self) -> &[Vec<K>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Fully reduces a vector against the current rows.
    pub fn reduce(&self, mut row: Vec<K>) -> Vec<K> {
        assert_eq!(row.len(), self.ncols);
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            if !row[pc].is_zero() {
                let c = row[pc].clone();
                for (dst, src) in row.iter_mut().zip(r) {
                    if !src.is_zero() {
                        *dst = dst.sub(&c.mul(src));
                    }
                }
            }
        }
        row
    }

    pub fn contains(&self, row: &[K]) -> bool {
        self.reduce(row.to_vec()).iter().all(|c| c.is_zero())
    }

    /// Inserts a vector; returns true iff the rank grew.
    pub fn insert(&mut self, row: Vec<K>) -> bool {
        let mut row = self.reduce(row);
        let Some(pc) = row.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = row[pc].inv().expect("nonzero entry has an inverse");
        for c in row.iter_mut() {
            if !c.is_zero() {
                *c = c.mul(&inv);
            }
        }
        // Clear the new pivot column from existing rows to stay reduced.
        for r in self.rows.iter_mut() {
            if !r[pc].is_zero() {
                let f = r[pc].clone();
                for (dst, src) in r.iter_mut().zip(&row) {
                    if !src.is_zero() {
                        *dst = dst.sub(&f.mul(src));
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, row);
        true
    }

    pub fn insert_all(&mut self, rows: impl IntoIterator<Item = Vec<K>>) {
        for row in rows {
            if self.is_full() {
                break;
            }
            self.insert(row);
        }
    }

    pub fn into_rows(self) -> Vec<Vec<K>> {
        self.rows
    }
}

pub fn echelon_of<K: Scalar>(
    ncols: usize,
    rows: impl IntoIterator<Item = Vec<K>>,
) -> Echelon<K> {
    let mut e = Echelon::new(ncols);
    for row in rows {
        e.insert(row);
    }
    e
}

pub fn rank_of<K: Scalar>(ncols: usize, rows: impl IntoIterator<Item = Vec<K>>) -> usize {
    let mut e = Echelon::new(ncols);
    e.insert_all(rows);
    e.rank()
}

/// Left-kernel of a list of row vectors: all coefficient combinations
/// summing to zero, row-reduced.
pub fn left_kernel<K: Scalar>(ncols: usize, rows: &[Vec<K>]) -> Vec<Vec<K>> {
    // Row-reduce [rows | I]; rows whose left block vanished record relations.
    let m = rows.len();
    let mut aug = Echelon::new(ncols + m);
    let mut kernel = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), ncols);
        let mut v = row.clone();
        v.resize(ncols + m, K::zero());
        v[ncols + i] = K::one();
        let reduced = aug.reduce(v);
        if reduced[..ncols].iter().all(|c| c.is_zero()) {
            kernel.push(reduced[ncols..].to_vec());
        } else {
            aug.insert(reduced);
        }
    }
    echelon_of(m, kernel).into_rows()
}

pub type SqMat<K> = Vec<Vec<K>>;

pub fn identity<K: Scalar>(n: usize) -> SqMat<K> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { K::one() } else { K::zero() }).collect())
        .collect()
}

pub fn zero_mat<K: Scalar>(rows: usize, cols: usize) -> Vec<Vec<K>> {
    vec![vec![K::zero(); cols]; rows]
}

pub fn mat_mul<K: Scalar>(a: &[Vec<K>], b: &[Vec<K>]) -> Vec<Vec<K>> {
    let n = a.len();
    let inner = b.len();
    let m = if inner == 0 { 0 } else { b[0].len() };
    let mut out = zero_mat::<K>(n, m);
    for i in 0..n {
        assert_eq!(a[i].len(), inner);
        for (kk, bk) in b.iter().enumerate() {
            if a[i][kk].is_zero() {
                continue;
            }
            for j in 0..m {
                if !bk[j].is_zero() {
                    out[i][j] = out[i][j].add(&a[i][kk].mul(&bk[j]));
                }
            }
        }
    }
    out
}

pub fn mat_vec<K: Scalar>(a: &[Vec<K>], v: &[K]) -> Vec<K> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(K::zero(), |acc, (m, x)| acc.add(&m.mul(x)))
        })
        .collect()
}

pub fn vec_mat<K: Scalar>(v: &[K], a: &[Vec<K>]) -> Vec<K> {
    let m = if a.is_empty() { 0 } else { a[0].len() };
    let mut out = vec![K::zero(); m];
    for (vi, row) in v.iter().zip(a) {
        if vi.is_zero() {
            continue;
        }
        for (o, e) in out.iter_mut().zip(row) {
            *o = o.add(&vi.mul(e));
        }
    }
    out
}

pub fn mat_add<K: Scalar>(a: &[Vec<K>], b: &[Vec<K>]) -> Vec<Vec<K>> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.add(y)).collect())
        .collect()
}

pub fn mat_is_zero<K: Scalar>(a: &[Vec<K>]) -> bool {
    a.iter().all(|r| r.iter().all(|c| c.is_zero()))
}

pub fn det<K: Scalar>(a: &[Vec<K>]) -> K {
    let n = a.len();
    let mut m: Vec<Vec<K>> = a.to_vec();
    for r in &m {
        assert_eq!(r.len(), n, "determinant of non-square matrix");
    }
    let mut acc = K::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return K::zero();
        };
        if p != col {
            m.swap(p, col);
            acc = acc.neg();
        }
        let pivot = m[col][col].clone();
        acc = acc.mul(&pivot);
        let inv = pivot.inv().expect("pivot nonzero");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].mul(&inv);
            for c in col..n {
                let delta = f.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&delta);
            }
        }
    }
    acc
}

/// `None` for singular input.
pub fn inverse<K: Scalar>(a: &[Vec<K>]) -> Option<SqMat<K>> {
    let n = a.len();
    let mut m: Vec<Vec<K>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { K::one() } else { K::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(p, col);
        let inv = m[col][col].inv().expect("pivot nonzero");
        for c in 0..2 * n {
            if !m[col][c].is_zero() {
                m[col][c] = m[col][c].mul(&inv);
            }
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let delta = f.mul(&m[col][c]);
                    m[r][c] = m[r][c].sub(&delta);
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int, Rat};

    fn r(v: i64) -> Rat {
        rat_int(v)
    }

    #[test]
    fn rref_is_canonical() {
        // Same span in two different insertion orders gives identical rows.
        let a = vec![vec![r(1), r(2), r(3)], vec![r(0), r(1), r(1)]];
        let b = vec![
            vec![r(1), r(3), r(4)],
            vec![r(2), r(5), r(7)],
            vec![r(3), r(8), r(11)],
        ];
        let ea = echelon_of(3, a);
        let eb = echelon_of(3, b);
        assert_eq!(ea.rank(), 2);
        assert_eq!(ea.rows(), eb.rows());
    }

    #[test]
    fn rank_and_contains() {
        let rows = vec![vec![r(1), r(0)], vec![r(0), r(1)], vec![r(1), r(1)]];
        assert_eq!(rank_of(2, rows.clone()), 2);
        let e = echelon_of(2, rows);
        assert!(e.contains(&[rat(7, 3), r(-2)]));
    }

    #[test]
    fn left_kernel_finds_relations() {
        let rows = vec![
            vec![r(1), r(2)],
            vec![r(2), r(4)],
            vec![r(0), r(1)],
        ];
        let k = left_kernel(2, &rows);
        assert_eq!(k.len(), 1);
        // relation: 2*row0 - row1 = 0, normalized with pivot 1.
        assert_eq!(k[0], vec![r(1), rat(-1, 2), r(0)]);
    }

    #[test]
    fn det_and_inverse() {
        let m = vec![vec![r(2), r(1)], vec![r(5), r(3)]];
        assert_eq!(det(&m), r(1));
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity::<Rat>(2));
        let singular = vec![vec![r(1), r(2)], vec![r(2), r(4)]];
        assert_eq!(det(&singular), r(0));
        assert!(inverse(&singular).is_none());
    }

    #[test]
    fn vec_mat_mat_vec() {
        let m = vec![vec![r(1), r(2)], vec![r(3), r(4)]];
        assert_eq!(mat_vec(&m, &[r(1), r(1)]), vec![r(3), r(7)]);
        assert_eq!(vec_mat(&[r(1), r(1)], &m), vec![r(4), r(6)]);
    }
}
