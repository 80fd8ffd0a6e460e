//! The symbolic side of the restriction map: pullbacks of the
//! determinant-twisted functions to diagonal pairs, the wedge identity,
//! span comparisons against the graded A^k bases, injectivity evidence from
//! evaluation at translated points, and the twist-zero comparison against
//! the full diagonal invariant ring.

use serde::Serialize;

use crate::acv::{g_translate, phi_eval, psi_eval, random_invertible, MPoint, Word, WordTuple};
use crate::alternants::{ak_basis, delta_factor_multisets, symmetrize, AkCache, BiExponentSet};
use crate::linalg::{det, rank_of, Echelon};
use crate::perm::all_perms;
use crate::poly::{BiDegree, Monomial, MonomialFrame, Polynomial};
use crate::rng::DetRng;
use crate::scalar::{Rat, Scalar};

/// n commutative polynomials in two variables (x, y); stored as univariate
/// frames (nvars = 1, so the variables are x1 and y1).
#[derive(Clone, Debug)]
pub struct CommTuple {
    pub polys: Vec<Polynomial<Rat>>,
}

impl CommTuple {
    pub fn new(polys: Vec<Polynomial<Rat>>) -> Self {
        assert!(polys.iter().all(|p| p.nvars() == 1), "entries live in two variables");
        CommTuple { polys }
    }

    pub fn n(&self) -> usize {
        self.polys.len()
    }

    /// Monomial tuple (x^p y^q for each pair), entries in sorted order.
    pub fn from_biexponents(set: &BiExponentSet) -> Self {
        CommTuple {
            polys: set
                .entries()
                .iter()
                .map(|&(p, q)| {
                    Polynomial::monomial(1, Monomial::new(vec![p], vec![q]), <Rat as Scalar>::one())
                })
                .collect(),
        }
    }

    /// Image of a word tuple under the projection onto commuting variables.
    pub fn abelianized(f: &WordTuple) -> Self {
        CommTuple {
            polys: f
                .0
                .iter()
                .map(|w| {
                    let (p, q) = w.abelian_degree();
                    Polynomial::monomial(1, Monomial::new(vec![p], vec![q]), <Rat as Scalar>::one())
                })
                .collect(),
        }
    }
}

/// g(x, y) evaluated on the diagonal slot i: a polynomial in x_i, y_i.
fn substitute_slot(g: &Polynomial<Rat>, slot: usize, n: usize) -> Polynomial<Rat> {
    Polynomial::from_terms(
        n,
        g.terms().map(|(m, c)| {
            let mut xe = vec![0u32; n];
            let mut ye = vec![0u32; n];
            xe[slot] = m.xe[0];
            ye[slot] = m.ye[0];
            (Monomial::new(xe, ye), c.clone())
        }),
    )
}

/// Closed form of the restricted twisted function: det of the n x n matrix
/// with entry (i, j) = f_j(x_i, y_i). Alternating (or zero); for a sorted
/// monomial tuple this is exactly the alternant determinant of its
/// biexponent set.
pub fn pullback_psi(f: &CommTuple) -> Polynomial<Rat> {
    let n = f.n();
    let mut out = Polynomial::zero(n);
    for s in all_perms(n) {
        let mut term = Polynomial::constant(n, Rat::from_i64(s.sign()));
        for i in 0..n {
            term = term.mul(&substitute_slot(&f.polys[s.apply(i)], i, n));
        }
        out = out.add(&term);
    }
    out
}

/// Product of k monomial tuples, the generating functions of one twist-k
/// graded piece.
#[derive(Clone, Debug)]
pub struct PsiProduct {
    pub factors: Vec<BiExponentSet>,
}

impl PsiProduct {
    pub fn k(&self) -> usize {
        self.factors.len()
    }

    pub fn bidegree(&self) -> BiDegree {
        self.factors
            .iter()
            .fold(BiDegree::new(0, 0), |acc, f| acc.add(f.bidegree()))
    }

    /// Pullback along the diagonal embedding: product of factor pullbacks.
    pub fn pullback(&self, n: usize) -> Polynomial<Rat> {
        let mut out = Polynomial::one(n);
        for f in &self.factors {
            out = out.mul(&pullback_psi(&CommTuple::from_biexponents(f)));
        }
        out
    }

    /// Word lifts of the factors (x letters then y letters per entry). Any
    /// lift gives the same values at points with commuting matrices.
    pub fn word_tuples(&self) -> Vec<WordTuple> {
        self.factors
            .iter()
            .map(|f| {
                WordTuple(
                    f.entries()
                        .iter()
                        .map(|&(p, q)| Word::from_biexponent(p, q))
                        .collect(),
                )
            })
            .collect()
    }

    /// Product of the twisted-function values at the point.
    pub fn value_at(&self, p: &MPoint) -> Rat {
        self.word_tuples()
            .iter()
            .fold(<Rat as Scalar>::one(), |acc, f| acc.mul(&psi_eval(p, f)))
    }
}

pub fn enumerate_psi_products(n: usize, k: u32, bd: BiDegree) -> Vec<PsiProduct> {
    delta_factor_multisets(n, k, bd)
        .into_iter()
        .map(|factors| PsiProduct { factors })
        .collect()
}

/// Exact check of the wedge identity at random diagonal points: the twisted
/// function at the embedded point equals the pullback evaluated at (x, y),
/// and the opposite-twist function vanishes there.
pub fn wedge_identity_check(f: &WordTuple, trials: usize, seed: u64) -> bool {
    let n = f.n();
    let pullback = pullback_psi(&CommTuple::abelianized(f));
    let root = DetRng::new(seed);
    for t in 0..trials {
        let mut rng = root.derive("wedge-trial", t as u64);
        let xs: Vec<Rat> = (0..n).map(|_| rng.rational(9, 3)).collect();
        let ys: Vec<Rat> = (0..n).map(|_| rng.rational(9, 3)).collect();
        let p = MPoint::diag_embed(&xs, &ys);
        if psi_eval(&p, f) != pullback.evaluate(&xs, &ys) {
            return false;
        }
        if !phi_eval(&p, f).is_zero() {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, Serialize)]
pub struct SurjectivityReport {
    pub bidegree: BiDegree,
    pub span_dim: usize,
    pub target_dim: usize,
    pub pass: bool,
}

/// Span of the k-fold pullback products in one bidegree against the graded
/// basis. Containment is automatic by construction; equality of dimensions
/// is the claim.
pub fn surjectivity_check(
    cache: &AkCache<Rat>,
    n: usize,
    k: u32,
    bd: BiDegree,
) -> SurjectivityReport {
    let frame = MonomialFrame::new(n, bd);
    let target = ak_basis(cache, n, k, bd);
    let mut target_ech = Echelon::new(frame.dim());
    for v in &target.vectors {
        target_ech.insert(frame.row(v));
    }
    let mut span = Echelon::new(frame.dim());
    let mut contained = true;
    for prod in enumerate_psi_products(n, k, bd) {
        let p = prod.pullback(n);
        if p.is_zero() {
            continue;
        }
        let row = frame.row(&p);
        contained &= target_ech.contains(&row);
        span.insert(row);
    }
    SurjectivityReport {
        bidegree: bd,
        span_dim: span.rank(),
        target_dim: target.dim(),
        pass: contained && span.rank() == target.dim(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvidenceStatus {
    Pass,
    /// Evaluation rank below image rank: not enough points, reported
    /// distinctly from failure.
    Inconclusive,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct InjectivityReport {
    pub bidegree: BiDegree,
    pub eval_rank: usize,
    pub image_rank: usize,
    pub status: EvidenceStatus,
}

/// Core of the evidence: products evaluated at supplied points (each with
/// its twist-removing rescale factor) must have the same rank as their
/// pullback images.
pub fn injectivity_from_points(
    cache: &AkCache<Rat>,
    n: usize,
    k: u32,
    bd: BiDegree,
    points: &[(MPoint, Rat)],
) -> InjectivityReport {
    let products = enumerate_psi_products(n, k, bd);
    let frame = MonomialFrame::new(n, bd);
    let _ = ak_basis(cache, n, k, bd);
    let image_rank = rank_of(
        frame.dim(),
        products.iter().map(|p| frame.row(&p.pullback(n))),
    );
    let eval_rank = rank_of(
        points.len(),
        products.iter().map(|prod| {
            points
                .iter()
                .map(|(pt, scale)| prod.value_at(pt).mul(scale))
                .collect::<Vec<Rat>>()
        }),
    );
    let status = match eval_rank.cmp(&image_rank) {
        std::cmp::Ordering::Equal => EvidenceStatus::Pass,
        std::cmp::Ordering::Less => EvidenceStatus::Inconclusive,
        std::cmp::Ordering::Greater => EvidenceStatus::Fail,
    };
    InjectivityReport { bidegree: bd, eval_rank, image_rank, status }
}

/// Samples `points` translated diagonal points g * (x, y, ones, 0) and runs
/// the rank comparison, rescaling each value by det(g)^{-k} to remove the
/// twist.
pub fn injectivity_evidence(
    cache: &AkCache<Rat>,
    n: usize,
    k: u32,
    bd: BiDegree,
    points: usize,
    seed: u64,
) -> InjectivityReport {
    let root = DetRng::new(seed);
    let pts: Vec<(MPoint, Rat)> = (0..points)
        .map(|idx| {
            let mut rng = root.derive("inj-point", idx as u64);
            let xs: Vec<Rat> = (0..n).map(|_| rng.rational(9, 2)).collect();
            let ys: Vec<Rat> = (0..n).map(|_| rng.rational(9, 2)).collect();
            let g = random_invertible(&mut rng, n, 3);
            let p = g_translate(&MPoint::diag_embed(&xs, &ys), &g)
                .expect("sampled g is invertible");
            let scale = Scalar::pow(&det(&g).inv().expect("invertible"), k);
            (p, scale)
        })
        .collect();
    injectivity_from_points(cache, n, k, bd, &pts)
}

/// Sum over i of x_i^a y_i^b.
pub fn power_sum(n: usize, a: u32, b: u32) -> Polynomial<Rat> {
    let mut out = Polynomial::zero(n);
    for i in 0..n {
        let mut xe = vec![0u32; n];
        let mut ye = vec![0u32; n];
        xe[i] = a;
        ye[i] = b;
        out.add_term(Monomial::new(xe, ye), <Rat as Scalar>::one());
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct K0Report {
    pub bidegree: BiDegree,
    pub span_dim: usize,
    pub target_dim: usize,
    pub pass: bool,
}

/// Multisets of bidegree parts with total `bd`, each part of total degree
/// between 1 and `max_part_total`.
fn part_multisets(bd: BiDegree, max_part_total: u32) -> Vec<Vec<BiDegree>> {
    let parts: Vec<BiDegree> = bd
        .box_iter()
        .filter(|p| p.total() >= 1 && p.total() <= max_part_total)
        .collect();
    let mut out = Vec::new();
    let mut acc = Vec::new();
    fn rec(
        parts: &[BiDegree],
        start: usize,
        rem: BiDegree,
        acc: &mut Vec<BiDegree>,
        out: &mut Vec<Vec<BiDegree>>,
    ) {
        if rem == BiDegree::new(0, 0) {
            out.push(acc.clone());
            return;
        }
        for idx in start..parts.len() {
            if parts[idx].fits_in(rem) {
                acc.push(parts[idx]);
                rec(parts, idx, rem.checked_sub(parts[idx]).unwrap(), acc, out);
                acc.pop();
            }
        }
    }
    rec(&parts, 0, bd, &mut acc, &mut out);
    out
}

/// Twist-zero comparison: trace functions restrict to polarized power sums
/// (diagonal matrices commute, so a word of x-degree a and y-degree b
/// restricts to sum_i x_i^a y_i^b); their products must span the full
/// invariant space of the bidegree, computed independently by
/// symmetrization.
pub fn k0_remark_check(n: usize, bd: BiDegree, cutoff_word_len: u32) -> K0Report {
    let frame = MonomialFrame::new(n, bd);
    let mut target = Echelon::new(frame.dim());
    for m in &frame.monomials {
        let s = symmetrize::<Rat>(m);
        if !s.is_zero() {
            target.insert(frame.row(&s));
        }
    }
    let mut span = Echelon::new(frame.dim());
    let mut contained = true;
    if bd == BiDegree::new(0, 0) {
        span.insert(frame.row(&Polynomial::one(n)));
        contained = target.contains(&frame.row(&Polynomial::one(n)));
    } else {
        for parts in part_multisets(bd, cutoff_word_len) {
            let mut prod = Polynomial::one(n);
            for part in &parts {
                prod = prod.mul(&power_sum(n, part.dx, part.dy));
            }
            if prod.is_zero() {
                continue;
            }
            let row = frame.row(&prod);
            contained &= target.contains(&row);
            span.insert(row);
        }
    }
    K0Report {
        bidegree: bd,
        span_dim: span.rank(),
        target_dim: target.rank(),
        pass: contained && span.rank() == target.rank(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alternants::delta;
    use crate::scalar::{rat, rat_int};

    fn q(v: i64) -> Rat {
        rat_int(v)
    }

    fn two_var(p: u32, qq: u32) -> Polynomial<Rat> {
        Polynomial::monomial(1, Monomial::new(vec![p], vec![qq]), <Rat as Scalar>::one())
    }

    #[test]
    fn pullback_examples() {
        // (1, x) -> x2 - x1
        let f = CommTuple::new(vec![two_var(0, 0), two_var(1, 0)]);
        let expect = Polynomial::var_x(2, 1).sub(&Polynomial::var_x(2, 0));
        assert_eq!(pullback_psi(&f), expect);

        // repeated column
        let f = CommTuple::new(vec![two_var(0, 0), two_var(0, 0)]);
        assert!(pullback_psi(&f).is_zero());

        // n = 1: identity on the single entry
        let g = two_var(2, 1).scale(&q(3)).add(&two_var(0, 0));
        let f = CommTuple::new(vec![g.clone()]);
        assert_eq!(pullback_psi(&f), g);

        // (1, y) -> y2 - y1
        let f = CommTuple::new(vec![two_var(0, 0), two_var(0, 1)]);
        let expect = Polynomial::var_y(2, 1).sub(&Polynomial::var_y(2, 0));
        assert_eq!(pullback_psi(&f), expect);
    }

    #[test]
    fn pullback_matches_alternant_and_alternates() {
        for bd in [BiDegree::new(2, 1), BiDegree::new(1, 1), BiDegree::new(3, 0)] {
            for set in crate::alternants::biexponent_sets(2, bd) {
                let f = CommTuple::from_biexponents(&set);
                assert_eq!(pullback_psi(&f), delta::<Rat>(&set));
            }
        }
        // Swapping two entries negates the output.
        let f = CommTuple::new(vec![two_var(0, 0), two_var(1, 0)]);
        let swapped = CommTuple::new(vec![two_var(1, 0), two_var(0, 0)]);
        assert_eq!(pullback_psi(&swapped), pullback_psi(&f).neg());
    }

    #[test]
    fn pullback_of_general_tuples_is_alternating() {
        use crate::perm::all_perms;
        use crate::scalar::rat_int;
        // Non-monomial entries: the output still changes by the sign of the
        // diagonal permutation action.
        let f = CommTuple::new(vec![
            two_var(0, 0).add(&two_var(1, 1).scale(&rat(2, 3))),
            two_var(1, 0).sub(&two_var(0, 2)),
            two_var(2, 0).add(&two_var(0, 1)),
        ]);
        let p = pullback_psi(&f);
        assert!(!p.is_zero());
        for s in all_perms(3) {
            assert_eq!(p.apply_perm(&s), p.scale(&rat_int(s.sign())));
        }
    }

    #[test]
    fn pullback_of_monomial_tuples_is_bihomogeneous() {
        for bd in BiDegree::new(2, 2).box_iter() {
            for set in crate::alternants::biexponent_sets(2, bd) {
                let p = pullback_psi(&CommTuple::from_biexponents(&set));
                assert_eq!(p.bidegree(), Some(bd));
            }
        }
    }

    #[test]
    fn pullback_is_multiplicative_on_products() {
        let prod = PsiProduct {
            factors: vec![
                BiExponentSet::new(vec![(0, 0), (1, 0)]).unwrap(),
                BiExponentSet::new(vec![(0, 0), (0, 1)]).unwrap(),
            ],
        };
        let by_hand = pullback_psi(&CommTuple::from_biexponents(&prod.factors[0]))
            .mul(&pullback_psi(&CommTuple::from_biexponents(&prod.factors[1])));
        assert_eq!(prod.pullback(2), by_hand);
        assert_eq!(prod.bidegree(), BiDegree::new(1, 1));
    }

    #[test]
    fn wedge_examples() {
        let f = WordTuple::parse(&["", "x"]).unwrap();
        assert!(wedge_identity_check(&f, 8, 1));

        let f = WordTuple::parse(&["xyx"]).unwrap();
        assert!(wedge_identity_check(&f, 8, 2));

        let f = WordTuple::parse(&["", "x", "xy"]).unwrap();
        assert!(wedge_identity_check(&f, 8, 3));
    }

    #[test]
    fn surjectivity_examples() {
        let cache = AkCache::new();
        let r = surjectivity_check(&cache, 2, 1, BiDegree::new(1, 1));
        assert_eq!((r.span_dim, r.target_dim, r.pass), (2, 2, true));

        let r = surjectivity_check(&cache, 2, 1, BiDegree::new(0, 0));
        assert_eq!((r.span_dim, r.target_dim, r.pass), (0, 0, true));

        let r = surjectivity_check(&cache, 2, 2, BiDegree::new(2, 0));
        assert_eq!((r.span_dim, r.target_dim, r.pass), (1, 1, true));
    }

    #[test]
    fn injectivity_examples() {
        let cache = AkCache::new();
        for bd in [BiDegree::new(1, 1), BiDegree::new(2, 0)] {
            let r = injectivity_evidence(&cache, 1, 2, bd, 4, 5);
            assert_eq!(r.status, EvidenceStatus::Pass);
            assert_eq!(r.image_rank, 1);
        }

        let r = injectivity_evidence(&cache, 2, 1, BiDegree::new(1, 1), 20, 3);
        assert_eq!((r.eval_rank, r.image_rank), (2, 2));
        assert_eq!(r.status, EvidenceStatus::Pass);

        // Untranslated diagonal points already separate the pullbacks.
        let root = DetRng::new(17);
        let pts: Vec<(MPoint, Rat)> = (0..20)
            .map(|t| {
                let mut rng = root.derive("pt", t);
                let xs: Vec<Rat> = (0..2).map(|_| rng.rational(9, 2)).collect();
                let ys: Vec<Rat> = (0..2).map(|_| rng.rational(9, 2)).collect();
                (MPoint::diag_embed(&xs, &ys), <Rat as Scalar>::one())
            })
            .collect();
        let r = injectivity_from_points(&cache, 2, 1, BiDegree::new(1, 1), &pts);
        assert_eq!(r.status, EvidenceStatus::Pass);

        // Starving the check of points is inconclusive, not a failure.
        let r = injectivity_from_points(&cache, 2, 1, BiDegree::new(1, 1), &pts[..1]);
        assert_eq!(r.status, EvidenceStatus::Inconclusive);
    }

    #[test]
    fn k0_examples() {
        let r = k0_remark_check(2, BiDegree::new(1, 0), 2);
        assert_eq!((r.span_dim, r.target_dim, r.pass), (1, 1, true));

        let r = k0_remark_check(2, BiDegree::new(1, 1), 2);
        assert_eq!((r.span_dim, r.target_dim, r.pass), (2, 2, true));

        for bd in BiDegree::new(2, 2).box_iter() {
            let r = k0_remark_check(1, bd, bd.total().max(1));
            assert!(r.pass);
            assert_eq!(r.target_dim, 1);
        }
    }

    #[test]
    fn traces_restrict_to_power_sums() {
        // tr(w(X,Y)) at a diagonal-pair point equals the polarized power sum
        // of the word's abelian degree.
        let xs = [q(2), q(-1), q(3)];
        let ys = [q(1), q(4), q(0)];
        let p = MPoint::diag_embed(&xs, &ys);
        for w in ["xy", "yx", "xxy", "", "yy"] {
            let word = Word::parse(w).unwrap();
            let m = crate::acv::eval_word(&p.x, &p.y, &word);
            let tr = (0..3).fold(<Rat as Scalar>::zero(), |acc, i| acc.add(&m[i][i]));
            let (a, b) = word.abelian_degree();
            let ps = if a == 0 && b == 0 {
                Polynomial::constant(3, q(3))
            } else {
                power_sum(3, a, b)
            };
            assert_eq!(tr, ps.evaluate(&xs, &ys));
        }
    }
}
