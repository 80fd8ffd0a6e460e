//! Sparse multivariate polynomials in x_1..x_n, y_1..y_n with exact
//! coefficients and bigraded bookkeeping.
//!
//! The canonical term order is lexicographic on the concatenated exponent
//! vector (x-exponents, then y-exponents); it drives deterministic row
//! reduction and the text form. Values are immutable after construction and
//! every operation is pure.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::perm::Perm;
use crate::scalar::{Rat, Scalar};

/// (total x-degree, total y-degree).
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize,
)]
pub struct BiDegree {
    pub dx: u32,
    pub dy: u32,
}

impl BiDegree {
    pub fn new(dx: u32, dy: u32) -> Self {
        BiDegree { dx, dy }
    }

    pub fn add(self, other: BiDegree) -> BiDegree {
        BiDegree::new(self.dx + other.dx, self.dy + other.dy)
    }

    /// Componentwise comparison.
    pub fn fits_in(self, other: BiDegree) -> bool {
        self.dx <= other.dx && self.dy <= other.dy
    }

    pub fn checked_sub(self, other: BiDegree) -> Option<BiDegree> {
        if other.fits_in(self) {
            Some(BiDegree::new(self.dx - other.dx, self.dy - other.dy))
        } else {
            None
        }
    }

    pub fn total(self) -> u32 {
        self.dx + self.dy
    }

    /// All bidegrees inside the box `[0..=dx] x [0..=dy]`, ascending.
    pub fn box_iter(self) -> impl Iterator<Item = BiDegree> {
        let (dx, dy) = (self.dx, self.dy);
        (0..=dx).flat_map(move |a| (0..=dy).map(move |b| BiDegree::new(a, b)))
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dx, self.dy)
    }
}

/// Monomial exponents; `xe` and `ye` always have the same length n.
/// The derived `Ord` is exactly the canonical term order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub xe: Vec<u32>,
    pub ye: Vec<u32>,
}

impl Monomial {
    pub fn new(xe: Vec<u32>, ye: Vec<u32>) -> Self {
        assert_eq!(xe.len(), ye.len(), "exponent vectors must have equal length");
        Monomial { xe, ye }
    }

    pub fn one(n: usize) -> Self {
        Monomial { xe: vec![0; n], ye: vec![0; n] }
    }

    /// x_i (0-based index).
    pub fn var_x(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.xe[i] = 1;
        m
    }

    /// y_i (0-based index).
    pub fn var_y(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.ye[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.xe.len()
    }

    pub fn bidegree(&self) -> BiDegree {
        BiDegree::new(self.xe.iter().sum(), self.ye.iter().sum())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars());
        Monomial {
            xe: self.xe.iter().zip(&other.xe).map(|(a, b)| a + b).collect(),
            ye: self.ye.iter().zip(&other.ye).map(|(a, b)| a + b).collect(),
        }
    }

    /// Diagonal action x_i -> x_{s(i)}, y_i -> y_{s(i)}.
    pub fn permuted(&self, s: &Perm) -> Monomial {
        let n = self.nvars();
        assert_eq!(s.n(), n);
        let mut xe = vec![0; n];
        let mut ye = vec![0; n];
        for i in 0..n {
            xe[s.apply(i)] = self.xe[i];
            ye[s.apply(i)] = self.ye[i];
        }
        Monomial { xe, ye }
    }
}

/// Sparse polynomial; no stored coefficient is zero, so structural equality
/// is polynomial equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<K: Scalar> {
    nvars: usize,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Scalar> Polynomial<K> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, K::one())
    }

    pub fn constant(nvars: usize, c: K) -> Self {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn monomial(nvars: usize, m: Monomial, c: K) -> Self {
        assert_eq!(m.nvars(), nvars);
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var_x(nvars: usize, i: usize) -> Self {
        Polynomial::monomial(nvars, Monomial::var_x(nvars, i), K::one())
    }

    pub fn var_y(nvars: usize, i: usize) -> Self {
        Polynomial::monomial(nvars, Monomial::var_y(nvars, i), K::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: K) {
        assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "mismatched variable count");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "mismatched variable count");
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k.mul(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Splits into bihomogeneous components; summing them back gives the input.
    pub fn bigrade_split(&self) -> BTreeMap<BiDegree, Polynomial<K>> {
        let mut out: BTreeMap<BiDegree, Polynomial<K>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bidegree())
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// `Some(bd)` iff nonzero and every term has bidegree `bd`.
    pub fn bidegree(&self) -> Option<BiDegree> {
        let mut it = self.terms.keys();
        let bd = it.next()?.bidegree();
        if it.all(|m| m.bidegree() == bd) {
            Some(bd)
        } else {
            None
        }
    }

    /// Exact substitution.
    pub fn evaluate(&self, xs: &[K], ys: &[K]) -> K {
        assert_eq!(xs.len(), self.nvars);
        assert_eq!(ys.len(), self.nvars);
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.xe.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&xs[i].pow(e));
                }
            }
            for (i, &e) in m.ye.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&ys[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn apply_perm(&self, s: &Perm) -> Self {
        Polynomial::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.permuted(s), c.clone())),
        )
    }

    /// Leading term under the canonical order, if any.
    pub fn leading(&self) -> Option<(&Monomial, &K)> {
        self.terms.iter().next_back()
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    let mut var = |f: &mut fmt::Formatter<'_>, name: char, i: usize, e: u32| -> fmt::Result {
        if e == 0 {
            return Ok(());
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}{}", name, i + 1)?;
        if e > 1 {
            write!(f, "^{}", e)?;
        }
        Ok(())
    };
    for i in 0..m.nvars() {
        var(f, 'x', i, m.xe[i])?;
    }
    for i in 0..m.nvars() {
        var(f, 'y', i, m.ye[i])?;
    }
    Ok(())
}

/// Canonical text form, e.g. `3/2*x1^2*y3 - y1`. Terms appear in descending
/// canonical order; the zero polynomial prints as `0`.
impl fmt::Display for Polynomial<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = *m == Monomial::one(self.nvars);
            if is_const {
                write!(f, "{}", mag)?;
            } else if mag == Rat::from_integer(1.into()) {
                write_monomial(f, m)?;
            } else {
                write!(f, "{}*", mag)?;
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl Polynomial<Rat> {
    /// Parses the canonical text form. Inverse of `Display` and tolerant of
    /// whitespace.
    pub fn parse(nvars: usize, input: &str) -> Result<Self> {
        let mut p = Parser { nvars, bytes: input.as_bytes(), pos: 0 };
        let poly = p.poly()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(LabError::Parse(format!(
                "trailing input at byte {} in {input:?}",
                p.pos
            )));
        }
        Ok(poly)
    }
}

struct Parser<'a> {
    nvars: usize,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn poly(&mut self) -> Result<Polynomial<Rat>> {
        let mut out = Polynomial::zero(self.nvars);
        self.skip_ws();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1i64
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let term = self.term()?;
            out = out.add(&term.scale(&Rat::from_i64(sign)));
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => break,
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Polynomial<Rat>> {
        let mut acc = Polynomial::one(self.nvars);
        loop {
            self.skip_ws();
            let factor = self.factor()?;
            acc = acc.mul(&factor);
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<Rat>> {
        match self.peek() {
            Some(b'x') | Some(b'y') => {
                let family = self.bytes[self.pos];
                self.pos += 1;
                let idx = self.number()? as usize;
                if idx == 0 || idx > self.nvars {
                    return Err(LabError::Parse(format!(
                        "variable index {idx} out of range 1..={}",
                        self.nvars
                    )));
                }
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.number()? as u32
                } else {
                    1
                };
                let mut m = Monomial::one(self.nvars);
                if family == b'x' {
                    m.xe[idx - 1] = exp;
                } else {
                    m.ye[idx - 1] = exp;
                }
                Ok(Polynomial::monomial(self.nvars, m, <Rat as Scalar>::one()))
            }
            Some(c) if c.is_ascii_digit() => {
                let numer = self.number()? as i64;
                let denom = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.number()? as i64
                } else {
                    1
                };
                if denom == 0 {
                    return Err(LabError::Parse("zero denominator".into()));
                }
                Ok(Polynomial::constant(self.nvars, crate::scalar::rat(numer, denom)))
            }
            other => Err(LabError::Parse(format!(
                "unexpected byte {:?} at position {}",
                other.map(|b| b as char),
                self.pos
            ))),
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(LabError::Parse(format!("expected digits at byte {}", start)));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|e| LabError::Parse(e.to_string()))
    }
}

/// All exponent vectors of given length summing to `total`.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    fn rec(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(cur, pos + 1, left - v, out);
        }
    }
    rec(&mut cur, 0, total, &mut out);
    out
}

/// All monomials of one bidegree in descending canonical order; the column
/// frame for dense-in-bidegree matrix assembly.
pub fn monomials_of_bidegree(n: usize, bd: BiDegree) -> Vec<Monomial> {
    let xs = compositions(bd.dx, n);
    let ys = compositions(bd.dy, n);
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for xe in &xs {
        for ye in &ys {
            out.push(Monomial::new(xe.clone(), ye.clone()));
        }
    }
    out.sort();
    out.reverse();
    out
}

/// Column frame of one bidegree: the full monomial list (descending) with a
/// position index for row assembly.
pub struct MonomialFrame {
    pub n: usize,
    pub bidegree: BiDegree,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialFrame {
    pub fn new(n: usize, bd: BiDegree) -> Self {
        let monomials = monomials_of_bidegree(n, bd);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialFrame { n, bidegree: bd, monomials, index }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    /// Coefficient row of a polynomial homogeneous of this bidegree.
    pub fn row<K: Scalar>(&self, p: &Polynomial<K>) -> Vec<K> {
        let mut row = vec![K::zero(); self.dim()];
        for (m, c) in p.terms() {
            let idx = *self
                .index
                .get(m)
                .expect("polynomial not homogeneous of the frame bidegree");
            row[idx] = c.clone();
        }
        row
    }

    pub fn poly<K: Scalar>(&self, row: &[K]) -> Polynomial<K> {
        assert_eq!(row.len(), self.dim());
        Polynomial::from_terms(
            self.n,
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.monomials[i].clone(), c.clone())),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn x(i: usize) -> Polynomial<Rat> {
        Polynomial::var_x(2, i)
    }
    fn y(i: usize) -> Polynomial<Rat> {
        Polynomial::var_y(2, i)
    }

    #[test]
    fn add_cancels_and_merges() {
        let p = x(0).add(&x(0).neg());
        assert!(p.is_zero());
        let q = x(0).sub(&x(1)).add(&x(1));
        assert_eq!(q, x(0));
        let r = x(0).mul(&y(1));
        assert_eq!(r.add(&r), r.scale(&rat_int(2)));
    }

    #[test]
    fn mul_expands() {
        let d = x(0).sub(&x(1));
        let sq = d.mul(&d);
        let expect = Polynomial::from_terms(
            2,
            vec![
                (Monomial::new(vec![2, 0], vec![0, 0]), rat_int(1)),
                (Monomial::new(vec![1, 1], vec![0, 0]), rat_int(-2)),
                (Monomial::new(vec![0, 2], vec![0, 0]), rat_int(1)),
            ],
        );
        assert_eq!(sq, expect);
        assert_eq!(Polynomial::one(2).mul(&sq), sq);

        let mixed = d.mul(&y(0).sub(&y(1)));
        let expect = Polynomial::from_terms(
            2,
            vec![
                (Monomial::new(vec![1, 0], vec![1, 0]), rat_int(1)),
                (Monomial::new(vec![1, 0], vec![0, 1]), rat_int(-1)),
                (Monomial::new(vec![0, 1], vec![1, 0]), rat_int(-1)),
                (Monomial::new(vec![0, 1], vec![0, 1]), rat_int(1)),
            ],
        );
        assert_eq!(mixed, expect);
    }

    #[test]
    fn bigrade_split_examples() {
        let p = x(0).add(&y(1));
        let parts = p.bigrade_split();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&BiDegree::new(1, 0)], x(0));
        assert_eq!(parts[&BiDegree::new(0, 1)], y(1));

        assert!(Polynomial::<Rat>::zero(2).bigrade_split().is_empty());

        let q = x(0).mul(&y(0)).add(&x(0).mul(&y(1)));
        let parts = q.bigrade_split();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&BiDegree::new(1, 1)], q);
    }

    #[test]
    fn evaluate_examples() {
        let p = x(0).sub(&x(1));
        assert_eq!(
            p.evaluate(&[rat_int(3), rat_int(1)], &[rat_int(0), rat_int(0)]),
            rat_int(2)
        );
        let q = y(0).mul(&y(1));
        assert_eq!(
            q.evaluate(&[rat_int(0), rat_int(0)], &[rat_int(2), rat_int(5)]),
            rat_int(10)
        );
        // x1*y2 - x2*y1 vanishes when both coordinates agree.
        let alt = x(0).mul(&y(1)).sub(&x(1).mul(&y(0)));
        assert_eq!(
            alt.evaluate(&[rat_int(1), rat_int(1)], &[rat(7, 3), rat(7, 3)]),
            rat_int(0)
        );
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let p = x(0)
            .mul(&x(0))
            .mul(&y(1))
            .scale(&rat(3, 2))
            .sub(&y(0));
        let s = p.to_string();
        assert_eq!(s, "3/2*x1^2*y2 - y1");
        assert_eq!(Polynomial::parse(2, &s).unwrap(), p);
        assert_eq!(Polynomial::parse(2, "0").unwrap(), Polynomial::zero(2));
        assert_eq!(Polynomial::<Rat>::zero(2).to_string(), "0");
        assert!(Polynomial::parse(2, "x3").is_err());
        assert!(Polynomial::parse(2, "x1 +").is_err());
    }

    #[test]
    fn frame_row_poly_roundtrip() {
        let frame = MonomialFrame::new(2, BiDegree::new(1, 1));
        assert_eq!(frame.dim(), 4);
        let p = x(0).mul(&y(1)).sub(&x(1).mul(&y(0)));
        let row = frame.row(&p);
        assert_eq!(frame.poly(&row), p);
    }

    #[test]
    fn monomial_order_is_lex_on_concatenation() {
        let a = Monomial::new(vec![1, 0], vec![0, 0]);
        let b = Monomial::new(vec![0, 1], vec![1, 0]);
        assert!(a > b);
        let c = Monomial::new(vec![1, 0], vec![0, 1]);
        assert!(c > a);
    }
}
