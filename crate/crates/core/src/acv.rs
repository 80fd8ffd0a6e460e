//! Exact rational points of the scheme cut out by [X,Y] + ij = 0, verified
//! stratum samplers, Krylov-space dimensions, Jacobian ranks, and the
//! determinant-twisted functions evaluated from noncommutative words.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{LabError, Result};
use crate::linalg::{self, det, mat_mul, mat_vec, vec_mat, Echelon, SqMat};
use crate::rng::DetRng;
use crate::scalar::{rat_int, Rat, Scalar};

/// A point (X, Y, i, j): two n x n matrices, a column vector and a row
/// vector, all exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoint {
    pub x: SqMat<Rat>,
    pub y: SqMat<Rat>,
    pub i: Vec<Rat>,
    pub j: Vec<Rat>,
}

impl MPoint {
    pub fn new(x: SqMat<Rat>, y: SqMat<Rat>, i: Vec<Rat>, j: Vec<Rat>) -> Result<Self> {
        let n = x.len();
        let square = |m: &SqMat<Rat>| m.len() == n && m.iter().all(|r| r.len() == n);
        if !square(&x) || !square(&y) || i.len() != n || j.len() != n {
            return Err(LabError::Usage("point components have mismatched sizes".into()));
        }
        Ok(MPoint { x, y, i, j })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// XY - YX + i*j, the defining equations evaluated at the point.
    pub fn defect(&self) -> SqMat<Rat> {
        let n = self.n();
        let xy = mat_mul(&self.x, &self.y);
        let yx = mat_mul(&self.y, &self.x);
        let mut out = xy;
        for a in 0..n {
            for b in 0..n {
                out[a][b] = out[a][b].sub(&yx[a][b]).add(&self.i[a].mul(&self.j[b]));
            }
        }
        out
    }

    pub fn on_variety(&self) -> bool {
        linalg::mat_is_zero(&self.defect())
    }

    /// The diagonal-pair point (diag x, diag y, all-ones, 0).
    pub fn diag_embed(xs: &[Rat], ys: &[Rat]) -> MPoint {
        let n = xs.len();
        assert_eq!(ys.len(), n);
        let diag = |v: &[Rat]| -> SqMat<Rat> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { v[i].clone() } else { <Rat as Scalar>::zero() })
                        .collect()
                })
                .collect()
        };
        MPoint {
            x: diag(xs),
            y: diag(ys),
            i: vec![<Rat as Scalar>::one(); n],
            j: vec![<Rat as Scalar>::zero(); n],
        }
    }
}

fn rats_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

impl Serialize for MPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MPoint", 5)?;
        st.serialize_field("n", &self.n())?;
        let rows = |m: &SqMat<Rat>| -> Vec<Vec<String>> { m.iter().map(|r| rats_to_strings(r)).collect() };
        st.serialize_field("x", &rows(&self.x))?;
        st.serialize_field("y", &rows(&self.y))?;
        st.serialize_field("i", &rats_to_strings(&self.i))?;
        st.serialize_field("j", &rats_to_strings(&self.j))?;
        st.end()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Letter {
    X,
    Y,
}

/// Word over the alphabet {x, y}; the empty word acts as the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn parse(s: &str) -> Result<Word> {
        s.chars()
            .map(|c| match c {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                other => Err(LabError::Parse(format!("bad word letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// x^p y^q as a word (all x letters first).
    pub fn from_biexponent(p: u32, q: u32) -> Word {
        let mut letters = vec![Letter::X; p as usize];
        letters.extend(std::iter::repeat(Letter::Y).take(q as usize));
        Word(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// (number of x letters, number of y letters).
    pub fn abelian_degree(&self) -> (u32, u32) {
        let p = self.0.iter().filter(|l| **l == Letter::X).count() as u32;
        (p, self.0.len() as u32 - p)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", if *l == Letter::X { 'x' } else { 'y' })?;
        }
        Ok(())
    }
}

/// n words, the monomial case of a function tuple.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WordTuple(pub Vec<Word>);

impl WordTuple {
    pub fn parse(words: &[&str]) -> Result<WordTuple> {
        Ok(WordTuple(words.iter().map(|w| Word::parse(w)).collect::<Result<Vec<_>>>()?))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }
}

/// The matrix obtained by plugging X and Y into the word; the empty word
/// gives the identity.
pub fn eval_word(x: &SqMat<Rat>, y: &SqMat<Rat>, w: &Word) -> SqMat<Rat> {
    let n = x.len();
    let mut acc = linalg::identity::<Rat>(n);
    for l in &w.0 {
        acc = mat_mul(&acc, if *l == Letter::X { x } else { y });
    }
    acc
}

/// w(X,Y) applied to a column vector, without forming the matrix product.
pub fn word_apply_col(x: &SqMat<Rat>, y: &SqMat<Rat>, w: &Word, v: &[Rat]) -> Vec<Rat> {
    let mut acc = v.to_vec();
    for l in w.0.iter().rev() {
        acc = mat_vec(if *l == Letter::X { x } else { y }, &acc);
    }
    acc
}

/// Row vector times w(X,Y), left to right.
pub fn word_apply_row(v: &[Rat], x: &SqMat<Rat>, y: &SqMat<Rat>, w: &Word) -> Vec<Rat> {
    let mut acc = v.to_vec();
    for l in &w.0 {
        acc = vec_mat(&acc, if *l == Letter::X { x } else { y });
    }
    acc
}

fn krylov_saturate(n: usize, seed: Vec<Rat>, step: impl Fn(&[Rat]) -> [Vec<Rat>; 2]) -> (usize, usize) {
    let mut ech = Echelon::new(n);
    ech.insert(seed);
    let mut rounds = 0usize;
    loop {
        let before = ech.rank();
        let current: Vec<Vec<Rat>> = ech.rows().to_vec();
        for v in &current {
            let [a, b] = step(v);
            ech.insert(a);
            ech.insert(b);
        }
        if ech.rank() == before {
            break;
        }
        rounds += 1;
    }
    (ech.rank(), rounds)
}

/// Dimension of the smallest subspace containing i and stable under X and Y,
/// with the number of saturation rounds taken (at most n).
pub fn krylov_col(p: &MPoint) -> (usize, usize) {
    krylov_saturate(p.n(), p.i.clone(), |v| {
        [mat_vec(&p.x, v), mat_vec(&p.y, v)]
    })
}

pub fn krylov_col_dim(p: &MPoint) -> usize {
    krylov_col(p).0
}

/// Row-space mirror: smallest subspace containing j stable under right
/// multiplication by X and Y.
pub fn krylov_row(p: &MPoint) -> (usize, usize) {
    krylov_saturate(p.n(), p.j.clone(), |v| {
        [vec_mat(v, &p.x), vec_mat(v, &p.y)]
    })
}

pub fn krylov_row_dim(p: &MPoint) -> usize {
    krylov_row(p).0
}

/// det of the matrix whose column m is f_m(X,Y) * i.
pub fn psi_eval(p: &MPoint, f: &WordTuple) -> Rat {
    let n = p.n();
    assert_eq!(f.n(), n, "tuple length must equal n");
    let cols: Vec<Vec<Rat>> = f.0.iter().map(|w| word_apply_col(&p.x, &p.y, w, &p.i)).collect();
    let m: SqMat<Rat> = (0..n)
        .map(|r| (0..n).map(|c| cols[c][r].clone()).collect())
        .collect();
    det(&m)
}

/// det of the matrix whose row m is j * f_m(X,Y).
pub fn phi_eval(p: &MPoint, f: &WordTuple) -> Rat {
    let n = p.n();
    assert_eq!(f.n(), n, "tuple length must equal n");
    let rows: Vec<Vec<Rat>> = f.0.iter().map(|w| word_apply_row(&p.j, &p.x, &p.y, w)).collect();
    det(&rows)
}

/// Coefficients of det(t*Id - Y) below the leading term, highest power
/// first, by the Faddeev-LeVerrier recurrence.
pub fn char_poly_coeffs(p: &MPoint) -> Vec<Rat> {
    let n = p.n();
    let a = &p.y;
    let mut m = linalg::identity::<Rat>(n);
    let mut coeffs: Vec<Rat> = Vec::with_capacity(n);
    for k in 1..=n {
        let am = mat_mul(a, &m);
        let tr = (0..n).fold(<Rat as Scalar>::zero(), |acc, i| acc.add(&am[i][i]));
        let c = tr.neg().div(&rat_int(k as i64));
        coeffs.push(c.clone());
        if k < n {
            m = am;
            for (idx, row) in m.iter_mut().enumerate() {
                row[idx] = row[idx].add(&c);
            }
        }
    }
    coeffs
}

/// (g X g^-1, g Y g^-1, g i, j g^-1); preserves the defining equations.
pub fn g_translate(p: &MPoint, g: &SqMat<Rat>) -> Result<MPoint> {
    let Some(ginv) = linalg::inverse(g) else {
        return Err(LabError::Usage("translation matrix is singular".into()));
    };
    Ok(MPoint {
        x: mat_mul(&mat_mul(g, &p.x), &ginv),
        y: mat_mul(&mat_mul(g, &p.y), &ginv),
        i: mat_vec(g, &p.i),
        j: vec_mat(&p.j, &ginv),
    })
}

/// Matrix of partial derivatives of the n^2 defining equations with respect
/// to all 2n^2 + 2n coordinates, evaluated at the point. Column order:
/// X entries row-major, then Y, then i, then j.
pub fn jacobian_matrix(p: &MPoint) -> Vec<Vec<Rat>> {
    let n = p.n();
    let ncols = 2 * n * n + 2 * n;
    let mut rows = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut row = vec![<Rat as Scalar>::zero(); ncols];
            // d/dX_{cd}: [a=c] Y_{db} - [b=d] Y_{ac}
            for c in 0..n {
                for d in 0..n {
                    let mut v = <Rat as Scalar>::zero();
                    if a == c {
                        v = v.add(&p.y[d][b]);
                    }
                    if b == d {
                        v = v.sub(&p.y[a][c]);
                    }
                    row[c * n + d] = v;
                }
            }
            // d/dY_{cd}: [b=d] X_{ac} - [a=c] X_{db}
            for c in 0..n {
                for d in 0..n {
                    let mut v = <Rat as Scalar>::zero();
                    if b == d {
                        v = v.add(&p.x[a][c]);
                    }
                    if a == c {
                        v = v.sub(&p.x[d][b]);
                    }
                    row[n * n + c * n + d] = v;
                }
            }
            // d/di_c: [a=c] j_b
            row[2 * n * n + a] = p.j[b].clone();
            // d/dj_c: [b=c] i_a
            row[2 * n * n + n + b] = p.i[a].clone();
            rows.push(row);
        }
    }
    rows
}

/// Rank of the Jacobian at an on-variety point; full rank n^2 witnesses
/// smoothness of the equations at the point.
pub fn jacobian_rank(p: &MPoint) -> Result<usize> {
    if !p.on_variety() {
        return Err(LabError::Usage("jacobian rank requested off the variety".into()));
    }
    let n = p.n();
    Ok(linalg::rank_of(2 * n * n + 2 * n, jacobian_matrix(p)))
}

const SAMPLER_BUDGET: usize = 100;

/// Exact verified point of stratum r: Y diagonal with pairwise distinct
/// eigenvalues, column Krylov dimension n-r, row Krylov dimension r.
///
/// Construction: split the index set so that i and j have disjoint supports
/// (|supp j| = r), then force the equations entrywise with
/// X_{ab} = i_a j_b / (y_a - y_b). Nothing is assumed generic: every
/// candidate is verified and rejected candidates trigger a resample.
pub fn sample_stratum(n: usize, r: usize, seed: u64) -> Result<MPoint> {
    if r > n {
        return Err(LabError::Usage(format!("stratum {r} out of range 0..={n}")));
    }
    let root = DetRng::new(seed).derive("stratum", r as u64);
    for attempt in 0..SAMPLER_BUDGET {
        let mut rng = root.derive("attempt", attempt as u64);
        let eigen: Vec<Rat> = rng.distinct_ints(n, -9, 9).into_iter().map(rat_int).collect();
        let support_j = rng.subset(n, r);
        let mut i_vec = vec![<Rat as Scalar>::zero(); n];
        let mut j_vec = vec![<Rat as Scalar>::zero(); n];
        for a in 0..n {
            if support_j.binary_search(&a).is_ok() {
                j_vec[a] = rat_int(rng.nonzero_int_in(-5, 5));
            } else {
                i_vec[a] = rat_int(rng.nonzero_int_in(-5, 5));
            }
        }
        let mut x = linalg::zero_mat::<Rat>(n, n);
        let mut y = linalg::zero_mat::<Rat>(n, n);
        for a in 0..n {
            y[a][a] = eigen[a].clone();
            x[a][a] = rat_int(rng.int_in(-5, 5));
            for b in 0..n {
                if a != b {
                    let num = i_vec[a].mul(&j_vec[b]);
                    if !num.is_zero() {
                        x[a][b] = num.div(&eigen[a].sub(&eigen[b]));
                    }
                }
            }
        }
        let p = MPoint { x, y, i: i_vec, j: j_vec };
        if p.on_variety() && krylov_col_dim(&p) == n - r && krylov_row_dim(&p) == r {
            return Ok(p);
        }
    }
    Err(LabError::SamplerExhausted { n, stratum: r, seed, attempts: SAMPLER_BUDGET })
}

pub fn random_word(rng: &mut DetRng, max_len: usize) -> Word {
    let len = rng.below(max_len as u64 + 1) as usize;
    Word(
        (0..len)
            .map(|_| if rng.below(2) == 0 { Letter::X } else { Letter::Y })
            .collect(),
    )
}

pub fn random_word_tuple(rng: &mut DetRng, n: usize, max_len: usize) -> WordTuple {
    WordTuple((0..n).map(|_| random_word(rng, max_len)).collect())
}

/// Random integer matrix with nonzero determinant, entries in
/// `-window..=window`.
pub fn random_invertible(rng: &mut DetRng, n: usize, window: i64) -> SqMat<Rat> {
    loop {
        let g: SqMat<Rat> = (0..n)
            .map(|_| (0..n).map(|_| rat_int(rng.int_in(-window, window))).collect())
            .collect();
        if !det(&g).is_zero() {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q(v: i64) -> Rat {
        rat_int(v)
    }

    fn m1_example() -> MPoint {
        // n=2 point with Krylov dimensions (1, 1).
        MPoint {
            x: vec![vec![q(0), q(-1)], vec![q(0), q(0)]],
            y: vec![vec![q(0), q(0)], vec![q(0), q(1)]],
            i: vec![q(1), q(0)],
            j: vec![q(0), q(1)],
        }
    }

    #[test]
    fn on_variety_examples() {
        let p = MPoint {
            x: vec![vec![q(3)]],
            y: vec![vec![q(5)]],
            i: vec![q(1)],
            j: vec![q(0)],
        };
        assert!(p.on_variety());

        assert!(m1_example().on_variety());

        let bad = MPoint {
            x: linalg::zero_mat(2, 2),
            y: linalg::zero_mat(2, 2),
            i: vec![q(1), q(0)],
            j: vec![q(1), q(0)],
        };
        assert!(!bad.on_variety());
    }

    #[test]
    fn eval_word_examples() {
        let x = vec![vec![q(0), q(1)], vec![q(0), q(0)]];
        let y = vec![vec![q(3), q(0)], vec![q(0), q(5)]];
        assert_eq!(eval_word(&x, &y, &Word::parse("").unwrap()), linalg::identity::<Rat>(2));
        let d = vec![vec![q(1), q(0)], vec![q(0), q(2)]];
        assert_eq!(eval_word(&d, &y, &Word::parse("x").unwrap()), d);
        assert_eq!(
            eval_word(&x, &y, &Word::parse("xy").unwrap()),
            vec![vec![q(0), q(5)], vec![q(0), q(0)]]
        );
    }

    #[test]
    fn krylov_examples() {
        let p = MPoint {
            x: linalg::zero_mat(2, 2),
            y: vec![vec![q(0), q(0)], vec![q(0), q(1)]],
            i: vec![q(1), q(1)],
            j: vec![q(0), q(0)],
        };
        assert_eq!(krylov_col_dim(&p), 2);
        assert_eq!(krylov_row_dim(&p), 0);

        let p = m1_example();
        assert_eq!(krylov_col_dim(&p), 1);
        assert_eq!(krylov_row_dim(&p), 1);

        let p = MPoint {
            x: linalg::zero_mat(2, 2),
            y: vec![vec![q(0), q(0)], vec![q(0), q(1)]],
            i: vec![q(0), q(0)],
            j: vec![q(1), q(1)],
        };
        assert_eq!(krylov_col_dim(&p), 0);
        assert_eq!(krylov_row_dim(&p), 2);
    }

    #[test]
    fn sampler_hits_all_strata() {
        for n in 1..=3 {
            for r in 0..=n {
                let p = sample_stratum(n, r, 7).unwrap();
                assert!(p.on_variety());
                assert_eq!(krylov_col_dim(&p), n - r);
                assert_eq!(krylov_row_dim(&p), r);
                // Saturation bound.
                assert!(krylov_col(&p).1 <= n);
                assert!(krylov_row(&p).1 <= n);
            }
        }
        assert!(sample_stratum(2, 3, 0).is_err());
    }

    #[test]
    fn jacobian_rank_examples() {
        let p = MPoint {
            x: vec![vec![q(4)]],
            y: vec![vec![q(9)]],
            i: vec![q(1)],
            j: vec![q(0)],
        };
        assert_eq!(jacobian_rank(&p).unwrap(), 1);

        assert_eq!(jacobian_rank(&m1_example()).unwrap(), 4);

        let p0 = sample_stratum(2, 0, 3).unwrap();
        assert_eq!(jacobian_rank(&p0).unwrap(), 4);

        let off = MPoint {
            x: linalg::zero_mat(2, 2),
            y: linalg::zero_mat(2, 2),
            i: vec![q(1), q(0)],
            j: vec![q(1), q(0)],
        };
        assert!(jacobian_rank(&off).is_err());
    }

    #[test]
    fn psi_phi_examples() {
        let p = MPoint::diag_embed(&[q(0), q(1)], &[q(0), q(0)]);
        let f = WordTuple::parse(&["", "x"]).unwrap();
        assert_eq!(psi_eval(&p, &f), q(1));
        assert_eq!(phi_eval(&p, &f), q(0));

        // Column space is 1-dimensional on the (1,1)-Krylov point, so every
        // tuple gives a singular column matrix.
        let p = m1_example();
        let rng = DetRng::new(11);
        for t in 0..20 {
            let f = random_word_tuple(&mut rng.derive("f", t), 2, 4);
            assert!(psi_eval(&p, &f).is_zero());
        }
    }

    #[test]
    fn char_poly_examples() {
        let mk = |d: Vec<i64>| MPoint {
            x: linalg::zero_mat(d.len(), d.len()),
            y: {
                let n = d.len();
                let mut m = linalg::zero_mat(n, n);
                for (i, v) in d.iter().enumerate() {
                    m[i][i] = q(*v);
                }
                m
            },
            i: vec![q(0); d.len()],
            j: vec![q(0); d.len()],
        };
        assert_eq!(char_poly_coeffs(&mk(vec![0, 1])), vec![q(-1), q(0)]);
        assert_eq!(char_poly_coeffs(&mk(vec![0, 0])), vec![q(0), q(0)]);
        assert_eq!(char_poly_coeffs(&mk(vec![2, 3])), vec![q(-5), q(6)]);
    }

    #[test]
    fn g_translate_examples() {
        let p = m1_example();
        let id = linalg::identity::<Rat>(2);
        assert_eq!(g_translate(&p, &id).unwrap(), p);

        // Permutation matrices fix the all-ones vector.
        let xs = [q(2), q(5)];
        let ys = [q(1), q(3)];
        let p = MPoint::diag_embed(&xs, &ys);
        let perm = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        let moved = g_translate(&p, &perm).unwrap();
        assert_eq!(moved, MPoint::diag_embed(&[q(5), q(2)], &[q(3), q(1)]));

        let rng = DetRng::new(5);
        for t in 0..10 {
            let g = random_invertible(&mut rng.derive("g", t), 2, 3);
            let p = sample_stratum(2, 1, t).unwrap();
            assert!(g_translate(&p, &g).unwrap().on_variety());
        }

        let singular = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert!(g_translate(&m1_example(), &singular).is_err());
    }

    #[test]
    fn char_poly_is_translation_invariant() {
        let rng = DetRng::new(13);
        let p = sample_stratum(3, 1, 2).unwrap();
        let base = char_poly_coeffs(&p);
        for t in 0..10 {
            let g = random_invertible(&mut rng.derive("g", t), 3, 3);
            assert_eq!(char_poly_coeffs(&g_translate(&p, &g).unwrap()), base);
        }
    }

    #[test]
    fn mpoint_json_shape() {
        let p = MPoint {
            x: vec![vec![q(0), rat(-1, 2)], vec![q(0), q(0)]],
            y: vec![vec![q(0), q(0)], vec![q(0), q(1)]],
            i: vec![q(1), q(0)],
            j: vec![q(0), q(1)],
        };
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"x":[["0","-1/2"],["0","0"]],"y":[["0","0"],["0","1"]],"i":["1","0"],"j":["0","1"]}"#
        );
    }
}
