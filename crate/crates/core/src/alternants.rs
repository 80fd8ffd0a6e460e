//! Alternating polynomials and the bigraded pieces of the product spaces A^k:
//! antisymmetrization, alternant determinants indexed by biexponent sets,
//! elementary symmetric polynomials in y, row-reduced graded bases and
//! Hilbert tables.
//!
//! A^k is spanned, bidegree by bidegree, by products of k alternant
//! determinants; by bilinearity this equals the span of products of k
//! antisymmetrized monomials (the brute-force route used as a test oracle).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::error::{LabError, Result};
use crate::linalg::Echelon;
use crate::perm::all_perms;
use crate::poly::{BiDegree, Monomial, MonomialFrame, Polynomial};
use crate::scalar::Scalar;

/// n distinct biexponent pairs (p, q), stored sorted lexicographically
/// ascending. Indexes an alternant determinant.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BiExponentSet {
    entries: Vec<(u32, u32)>,
}

impl BiExponentSet {
    pub fn new(mut entries: Vec<(u32, u32)>) -> Result<Self> {
        entries.sort_unstable();
        if entries.windows(2).any(|w| w[0] == w[1]) {
            return Err(LabError::Usage(format!(
                "biexponent set has duplicate entries: {entries:?}"
            )));
        }
        Ok(BiExponentSet { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn bidegree(&self) -> BiDegree {
        BiDegree::new(
            self.entries.iter().map(|e| e.0).sum(),
            self.entries.iter().map(|e| e.1).sum(),
        )
    }
}

/// All n-element biexponent sets with column sums exactly `bd`.
pub fn biexponent_sets(n: usize, bd: BiDegree) -> Vec<BiExponentSet> {
    let mut out = Vec::new();
    let mut acc: Vec<(u32, u32)> = Vec::with_capacity(n);
    // Entries chosen strictly increasing in lex order, so each set appears once.
    fn rec(
        n: usize,
        bd: BiDegree,
        start: (u32, u32),
        rem: BiDegree,
        acc: &mut Vec<(u32, u32)>,
        out: &mut Vec<BiExponentSet>,
    ) {
        if acc.len() == n {
            if rem == BiDegree::new(0, 0) {
                out.push(BiExponentSet { entries: acc.clone() });
            }
            return;
        }
        let mut cand = start;
        loop {
            if cand.0 > bd.dx {
                break;
            }
            if cand.1 > bd.dy {
                cand = (cand.0 + 1, 0);
                continue;
            }
            if cand.0 <= rem.dx && cand.1 <= rem.dy {
                acc.push(cand);
                let next = if cand.1 + 1 > bd.dy { (cand.0 + 1, 0) } else { (cand.0, cand.1 + 1) };
                rec(n, bd, next, BiDegree::new(rem.dx - cand.0, rem.dy - cand.1), acc, out);
                acc.pop();
            }
            cand = if cand.1 + 1 > bd.dy { (cand.0 + 1, 0) } else { (cand.0, cand.1 + 1) };
        }
    }
    rec(n, bd, (0, 0), bd, &mut acc, &mut out);
    out
}

/// Signed orbit sum over the diagonal action; alternating or zero.
pub fn antisymmetrize<K: Scalar>(m: &Monomial) -> Polynomial<K> {
    let n = m.nvars();
    Polynomial::from_terms(
        n,
        all_perms(n)
            .iter()
            .map(|s| (m.permuted(s), K::from_i64(s.sign()))),
    )
}

/// Unsigned orbit sum (Reynolds numerator).
pub fn symmetrize<K: Scalar>(m: &Monomial) -> Polynomial<K> {
    let n = m.nvars();
    Polynomial::from_terms(n, all_perms(n).iter().map(|s| (m.permuted(s), K::one())))
}

/// Alternant determinant: det of the n x n matrix with entry
/// (i, j) = x_i^{p_j} y_i^{q_j}, columns in the set's sorted order.
/// Nonzero for every valid set since the columns are pairwise distinct.
pub fn delta<K: Scalar>(d: &BiExponentSet) -> Polynomial<K> {
    let n = d.n();
    Polynomial::from_terms(
        n,
        all_perms(n).iter().map(|s| {
            let mut xe = vec![0u32; n];
            let mut ye = vec![0u32; n];
            for i in 0..n {
                let (p, q) = d.entries[s.apply(i)];
                xe[i] = p;
                ye[i] = q;
            }
            (Monomial::new(xe, ye), K::from_i64(s.sign()))
        }),
    )
}

/// e_d(y_1..y_n), homogeneous of bidegree (0, d).
pub fn elementary_symmetric_y<K: Scalar>(n: usize, d: usize) -> Result<Polynomial<K>> {
    if d < 1 || d > n {
        return Err(LabError::Usage(format!(
            "elementary symmetric degree {d} out of range 1..={n}"
        )));
    }
    let mut out = Polynomial::zero(n);
    let mut subset: Vec<usize> = Vec::with_capacity(d);
    fn rec<K: Scalar>(
        n: usize,
        d: usize,
        start: usize,
        subset: &mut Vec<usize>,
        out: &mut Polynomial<K>,
    ) {
        if subset.len() == d {
            let mut ye = vec![0u32; n];
            for &i in subset.iter() {
                ye[i] = 1;
            }
            out.add_term(Monomial::new(vec![0; n], ye), K::one());
            return;
        }
        for i in start..n {
            subset.push(i);
            rec(n, d, i + 1, subset, out);
            subset.pop();
        }
    }
    rec(n, d, 0, &mut subset, &mut out);
    Ok(out)
}

/// Row-reduced basis of one bidegree piece of a subspace of the polynomial
/// ring, with the construction that produced each row.
#[derive(Clone, Debug)]
pub struct GradedBasis<K: Scalar> {
    pub bidegree: BiDegree,
    pub vectors: Vec<Polynomial<K>>,
    pub provenance: Vec<String>,
}

impl<K: Scalar> GradedBasis<K> {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Multisets of k factor sets with total bidegree `bd`, every factor boxed by
/// `bd`, listed with factors in nondecreasing canonical order so no multiset
/// repeats.
pub fn delta_factor_multisets(n: usize, k: u32, bd: BiDegree) -> Vec<Vec<BiExponentSet>> {
    assert!(k >= 1);
    let mut candidates: Vec<(BiDegree, BiExponentSet)> = Vec::new();
    for sub in bd.box_iter() {
        for s in biexponent_sets(n, sub) {
            candidates.push((sub, s));
        }
    }
    candidates.sort();
    let min_total = candidates.iter().map(|(b, _)| b.total()).min().unwrap_or(0);

    let mut out = Vec::new();
    let mut acc: Vec<BiExponentSet> = Vec::with_capacity(k as usize);
    fn rec(
        cands: &[(BiDegree, BiExponentSet)],
        min_total: u32,
        start: usize,
        left: u32,
        rem: BiDegree,
        acc: &mut Vec<BiExponentSet>,
        out: &mut Vec<Vec<BiExponentSet>>,
    ) {
        if left == 0 {
            if rem == BiDegree::new(0, 0) {
                out.push(acc.clone());
            }
            return;
        }
        if rem.total() < left * min_total {
            return;
        }
        for idx in start..cands.len() {
            let (cbd, s) = &cands[idx];
            if !cbd.fits_in(rem) {
                continue;
            }
            acc.push(s.clone());
            rec(
                cands,
                min_total,
                idx,
                left - 1,
                rem.checked_sub(*cbd).unwrap(),
                acc,
                out,
            );
            acc.pop();
        }
    }
    rec(&candidates, min_total, 0, k, bd, &mut acc, &mut out);
    out
}

type AkKey = (usize, u32, BiDegree);

/// Idempotent write-once memo for graded bases, shared across workers.
pub struct AkCache<K: Scalar> {
    map: Mutex<HashMap<AkKey, Arc<GradedBasis<K>>>>,
}

impl<K: Scalar> AkCache<K> {
    pub fn new() -> Self {
        AkCache { map: Mutex::new(HashMap::new()) }
    }
}

impl<K: Scalar> Default for AkCache<K> {
    fn default() -> Self {
        Self::new()
    }
}

/// Row-reduced basis of the bidegree-`bd` piece of A^k: products of k
/// alternant determinants with total bidegree `bd`, assembled as coefficient
/// rows over the full monomial list and reduced. Dimension 0 is a valid
/// result, not an error.
pub fn ak_basis<K: Scalar>(
    cache: &AkCache<K>,
    n: usize,
    k: u32,
    bd: BiDegree,
) -> Arc<GradedBasis<K>> {
    assert!(n >= 1, "n must be at least 1");
    assert!(k >= 1, "k must be at least 1");
    let key = (n, k, bd);
    if let Some(hit) = cache.map.lock().unwrap().get(&key) {
        return Arc::clone(hit);
    }

    let frame = MonomialFrame::new(n, bd);
    let mut delta_memo: HashMap<BiExponentSet, Polynomial<K>> = HashMap::new();
    let mut seen: std::collections::HashSet<Vec<(Monomial, K)>> = std::collections::HashSet::new();
    let mut ech = Echelon::new(frame.dim());
    for factors in delta_factor_multisets(n, k, bd) {
        if ech.is_full() {
            break;
        }
        let mut prod = Polynomial::<K>::one(n);
        for f in &factors {
            let dp = delta_memo
                .entry(f.clone())
                .or_insert_with(|| delta::<K>(f))
                .clone();
            prod = prod.mul(&dp);
        }
        if prod.is_zero() {
            continue;
        }
        let sig: Vec<(Monomial, K)> = prod.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        if !seen.insert(sig) {
            continue;
        }
        ech.insert(frame.row(&prod));
    }

    let vectors: Vec<Polynomial<K>> = ech.rows().iter().map(|r| frame.poly(r)).collect();
    let provenance = vec![format!("row-reduced products of {k} alternant determinants"); vectors.len()];
    let basis = Arc::new(GradedBasis { bidegree: bd, vectors, provenance });
    let mut map = cache.map.lock().unwrap();
    Arc::clone(map.entry(key).or_insert(basis))
}

pub fn ak_dim<K: Scalar>(cache: &AkCache<K>, n: usize, k: u32, bd: BiDegree) -> usize {
    ak_basis(cache, n, k, bd).dim()
}

/// dim (A^k)_{(a,b)} for every (a,b) in the cutoff box.
pub fn hilbert_table<K: Scalar>(
    cache: &AkCache<K>,
    n: usize,
    k: u32,
    cutoff: BiDegree,
) -> std::collections::BTreeMap<BiDegree, usize> {
    let bds: Vec<BiDegree> = cutoff.box_iter().collect();
    let entries: Vec<(BiDegree, usize)> = bds
        .par_iter()
        .map(|&bd| (bd, ak_dim(cache, n, k, bd)))
        .collect();
    entries.into_iter().collect()
}

/// CSV rendering: rows indexed by x-degree, columns by y-degree.
pub fn hilbert_csv(table: &std::collections::BTreeMap<BiDegree, usize>, cutoff: BiDegree) -> String {
    let mut s = String::from("a\\b");
    for b in 0..=cutoff.dy {
        s.push_str(&format!(",{b}"));
    }
    s.push('\n');
    for a in 0..=cutoff.dx {
        s.push_str(&a.to_string());
        for b in 0..=cutoff.dy {
            let v = table.get(&BiDegree::new(a, b)).copied().unwrap_or(0);
            s.push_str(&format!(",{v}"));
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_int, Rat};

    fn xp(i: usize) -> Polynomial<Rat> {
        Polynomial::var_x(2, i)
    }
    fn yp(i: usize) -> Polynomial<Rat> {
        Polynomial::var_y(2, i)
    }

    #[test]
    fn antisymmetrize_small() {
        let m = Monomial::var_x(2, 0);
        assert_eq!(antisymmetrize::<Rat>(&m), xp(0).sub(&xp(1)));

        let sym = Monomial::new(vec![1, 1], vec![0, 0]);
        assert!(antisymmetrize::<Rat>(&sym).is_zero());

        let m = Monomial::new(vec![1, 0], vec![0, 1]);
        let expect = xp(0).mul(&yp(1)).sub(&xp(1).mul(&yp(0)));
        assert_eq!(antisymmetrize::<Rat>(&m), expect);
    }

    #[test]
    fn delta_small() {
        let d = BiExponentSet::new(vec![(0, 0)]).unwrap();
        assert_eq!(delta::<Rat>(&d), Polynomial::one(1));

        let d = BiExponentSet::new(vec![(0, 0), (1, 0)]).unwrap();
        assert_eq!(delta::<Rat>(&d), xp(1).sub(&xp(0)));

        // Sorted column order puts (0,1) before (1,0).
        let d = BiExponentSet::new(vec![(1, 0), (0, 1)]).unwrap();
        let expect = xp(1).mul(&yp(0)).sub(&xp(0).mul(&yp(1)));
        assert_eq!(delta::<Rat>(&d), expect);

        assert!(BiExponentSet::new(vec![(1, 0), (1, 0)]).is_err());
    }

    #[test]
    fn delta_is_alternating() {
        for d in biexponent_sets(3, BiDegree::new(2, 2)) {
            let p = delta::<Rat>(&d);
            assert!(!p.is_zero());
            for s in all_perms(3) {
                let lhs = p.apply_perm(&s);
                let rhs = p.scale(&rat_int(s.sign()));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn elementary_symmetric_examples() {
        assert_eq!(
            elementary_symmetric_y::<Rat>(2, 1).unwrap(),
            yp(0).add(&yp(1))
        );
        assert_eq!(
            elementary_symmetric_y::<Rat>(2, 2).unwrap(),
            yp(0).mul(&yp(1))
        );
        let e2 = elementary_symmetric_y::<Rat>(3, 2).unwrap();
        assert_eq!(e2.num_terms(), 3);
        assert_eq!(e2.bidegree(), Some(BiDegree::new(0, 2)));
        assert!(elementary_symmetric_y::<Rat>(2, 3).is_err());
        assert!(elementary_symmetric_y::<Rat>(2, 0).is_err());
    }

    #[test]
    fn ak_basis_dimensions() {
        let cache = AkCache::<Rat>::new();
        assert_eq!(ak_dim(&cache, 2, 1, BiDegree::new(1, 1)), 2);
        assert_eq!(ak_dim(&cache, 2, 2, BiDegree::new(2, 0)), 1);
        assert_eq!(ak_dim(&cache, 2, 1, BiDegree::new(0, 0)), 0);
        for k in 1..=3 {
            assert_eq!(ak_dim(&cache, 1, k, BiDegree::new(2, 3)), 1);
        }
    }

    #[test]
    fn ak_basis_1_1_span_content() {
        // The (1,1) piece is spanned by x1*y1 - x2*y2 and x1*y2 - x2*y1.
        let cache = AkCache::<Rat>::new();
        let bd = BiDegree::new(1, 1);
        let basis = ak_basis(&cache, 2, 1, bd);
        let frame = MonomialFrame::new(2, bd);
        let mut ech = Echelon::new(frame.dim());
        for v in &basis.vectors {
            ech.insert(frame.row(v));
        }
        let a = xp(0).mul(&yp(0)).sub(&xp(1).mul(&yp(1)));
        let b = xp(0).mul(&yp(1)).sub(&xp(1).mul(&yp(0)));
        assert!(ech.contains(&frame.row(&a)));
        assert!(ech.contains(&frame.row(&b)));
    }

    #[test]
    fn ak_basis_k2_x_square() {
        let cache = AkCache::<Rat>::new();
        let basis = ak_basis(&cache, 2, 2, BiDegree::new(2, 0));
        let d = xp(0).sub(&xp(1));
        let sq = d.mul(&d);
        // One-dimensional, spanned by (x1 - x2)^2; the reduced row is a
        // scalar multiple.
        assert_eq!(basis.dim(), 1);
        let frame = MonomialFrame::new(2, BiDegree::new(2, 0));
        let mut ech = Echelon::new(frame.dim());
        ech.insert(frame.row(&basis.vectors[0]));
        assert!(ech.contains(&frame.row(&sq)));
    }

    #[test]
    fn hilbert_entries() {
        let cache = AkCache::<Rat>::new();
        let t = hilbert_table(&cache, 2, 1, BiDegree::new(2, 2));
        assert_eq!(t[&BiDegree::new(2, 0)], 1);
        assert_eq!(t[&BiDegree::new(1, 1)], 2);
        assert_eq!(t[&BiDegree::new(0, 0)], 0);

        let t1 = hilbert_table(&cache, 1, 3, BiDegree::new(2, 2));
        assert!(t1.values().all(|&v| v == 1));
    }

    #[test]
    fn hilbert_csv_layout() {
        let cache = AkCache::<Rat>::new();
        let cutoff = BiDegree::new(1, 1);
        let t = hilbert_table(&cache, 2, 1, cutoff);
        let csv = hilbert_csv(&t, cutoff);
        assert_eq!(csv, "a\\b,0,1\n0,0,1\n1,1,2\n");
    }

    #[test]
    fn biexponent_enumeration_counts() {
        // Singletons: exactly one set per bidegree.
        assert_eq!(biexponent_sets(1, BiDegree::new(3, 2)).len(), 1);
        // Pairs with column sums (1,1): {(0,0),(1,1)} and {(0,1),(1,0)}.
        assert_eq!(biexponent_sets(2, BiDegree::new(1, 1)).len(), 2);
        // (2,0): only {(0,0),(2,0)}.
        assert_eq!(biexponent_sets(2, BiDegree::new(2, 0)).len(), 1);
        // No 2-element set sums to (0,0).
        assert!(biexponent_sets(2, BiDegree::new(0, 0)).is_empty());
    }
}
