//! Desk-scale freeness certification for bigraded modules over the symmetric
//! polynomials in y, through three routes that must agree: the iterated
//! regular-sequence kernel test, the Hilbert-series identity against the
//! fiber series, and an explicit lifted-generator certificate.
//!
//! Every verdict means "free up to the cutoff window"; bidegrees whose
//! computation would need data outside the window are reported as
//! indeterminate, never as passes.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::alternants::{ak_basis, elementary_symmetric_y, AkCache};
use crate::error::{LabError, Result};
use crate::linalg::Echelon;
use crate::poly::{BiDegree, MonomialFrame, Polynomial};
use crate::scalar::{Rat, Scalar};

/// A nonnegatively bigraded module over the symmetric polynomials in y,
/// presented in per-bidegree coordinates: a row-reduced basis of each piece
/// and the action of each elementary symmetric generator.
pub trait YGradedModule: Sync {
    /// Number of y variables (and of elementary symmetric generators).
    fn n(&self) -> usize;
    /// Product power of the underlying space, where one applies.
    fn power(&self) -> u32;
    fn label(&self) -> String;
    /// Coordinate-space dimension at a bidegree.
    fn ambient_dim(&self, bd: BiDegree) -> usize;
    /// Row-reduced basis of the bidegree piece, in ambient coordinates.
    fn basis(&self, bd: BiDegree) -> Vec<Vec<Rat>>;
    /// Multiplication by e_d, mapping coordinates at (a, b) to (a, b + d).
    fn apply_e(&self, d: usize, bd: BiDegree, row: &[Rat]) -> Vec<Rat>;
    /// Polynomial rendering of a coordinate row, when one exists.
    fn row_poly(&self, bd: BiDegree, row: &[Rat]) -> Option<Polynomial<Rat>>;
}

/// The graded pieces of A^k presented over monomial coordinates.
pub struct AkModule {
    pub n: usize,
    pub k: u32,
    cache: AkCache<Rat>,
    e: Vec<Polynomial<Rat>>,
    frames: Mutex<HashMap<BiDegree, Arc<MonomialFrame>>>,
}

impl AkModule {
    pub fn new(n: usize, k: u32) -> Self {
        let e = (1..=n)
            .map(|d| elementary_symmetric_y::<Rat>(n, d).expect("d in range"))
            .collect();
        AkModule { n, k, cache: AkCache::new(), e, frames: Mutex::new(HashMap::new()) }
    }

    fn frame(&self, bd: BiDegree) -> Arc<MonomialFrame> {
        let mut frames = self.frames.lock().unwrap();
        Arc::clone(
            frames
                .entry(bd)
                .or_insert_with(|| Arc::new(MonomialFrame::new(self.n, bd))),
        )
    }
}

impl YGradedModule for AkModule {
    fn n(&self) -> usize {
        self.n
    }

    fn power(&self) -> u32 {
        self.k
    }

    fn label(&self) -> String {
        format!("A^{} (n={})", self.k, self.n)
    }

    fn ambient_dim(&self, bd: BiDegree) -> usize {
        self.frame(bd).dim()
    }

    fn basis(&self, bd: BiDegree) -> Vec<Vec<Rat>> {
        let frame = self.frame(bd);
        ak_basis(&self.cache, self.n, self.k, bd)
            .vectors
            .iter()
            .map(|v| frame.row(v))
            .collect()
    }

    fn apply_e(&self, d: usize, bd: BiDegree, row: &[Rat]) -> Vec<Rat> {
        let p = self.frame(bd).poly(row);
        let q = p.mul(&self.e[d - 1]);
        self.frame(BiDegree::new(bd.dx, bd.dy + d as u32)).row(&q)
    }

    fn row_poly(&self, bd: BiDegree, row: &[Rat]) -> Option<Polynomial<Rat>> {
        Some(self.frame(bd).poly(row))
    }
}

/// Negative-control fixture: the base module with one extra torsion vector
/// glued in at a chosen bidegree (every e_d kills it). Any sound freeness
/// check must reject this module with a kernel at the planted bidegree.
pub struct PlantedTorsion {
    pub base: AkModule,
    pub at: BiDegree,
}

impl PlantedTorsion {
    pub fn new(n: usize, k: u32, at: BiDegree) -> Self {
        PlantedTorsion { base: AkModule::new(n, k), at }
    }

    fn extra(&self, bd: BiDegree) -> usize {
        usize::from(bd == self.at)
    }
}

impl YGradedModule for PlantedTorsion {
    fn n(&self) -> usize {
        self.base.n
    }

    fn power(&self) -> u32 {
        self.base.k
    }

    fn label(&self) -> String {
        format!("{} + torsion vector at {}", self.base.label(), self.at)
    }

    fn ambient_dim(&self, bd: BiDegree) -> usize {
        self.base.ambient_dim(bd) + self.extra(bd)
    }

    fn basis(&self, bd: BiDegree) -> Vec<Vec<Rat>> {
        let mut rows = self.base.basis(bd);
        if self.extra(bd) == 1 {
            for r in rows.iter_mut() {
                r.push(<Rat as Scalar>::zero());
            }
            let mut torsion = vec![<Rat as Scalar>::zero(); self.base.ambient_dim(bd)];
            torsion.push(<Rat as Scalar>::one());
            rows.push(torsion);
        }
        rows
    }

    fn apply_e(&self, d: usize, bd: BiDegree, row: &[Rat]) -> Vec<Rat> {
        let base_dim = self.base.ambient_dim(bd);
        let mut out = self.base.apply_e(d, bd, &row[..base_dim]);
        let target = BiDegree::new(bd.dx, bd.dy + d as u32);
        if self.extra(target) == 1 {
            out.push(<Rat as Scalar>::zero());
        }
        out
    }

    fn row_poly(&self, bd: BiDegree, row: &[Rat]) -> Option<Polynomial<Rat>> {
        if self.extra(bd) == 1 && !row[row.len() - 1].is_zero() {
            return None;
        }
        self.base.row_poly(bd, &row[..self.base.ambient_dim(bd)])
    }
}

/// Per-bidegree bases and ideal pieces for every quotient stage, the shared
/// substrate of all checks. Stage d holds the span of
/// (e_1, ..., e_d) * module inside each bidegree piece.
pub struct StageData {
    pub n: usize,
    pub cutoff: BiDegree,
    pub dims: BTreeMap<BiDegree, usize>,
    bases: BTreeMap<BiDegree, Vec<Vec<Rat>>>,
    ideals: Vec<BTreeMap<BiDegree, Echelon<Rat>>>,
}

impl StageData {
    pub fn compute(m: &dyn YGradedModule, cutoff: BiDegree) -> Result<StageData> {
        let n = m.n();
        if (cutoff.dy as usize) < n {
            return Err(LabError::Usage(format!(
                "cutoff y-degree {} is smaller than n={n}; every generator must act inside the window",
                cutoff.dy
            )));
        }
        let bds: Vec<BiDegree> = cutoff.box_iter().collect();
        let bases: BTreeMap<BiDegree, Vec<Vec<Rat>>> = bds
            .par_iter()
            .map(|&bd| (bd, m.basis(bd)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        let dims = bases.iter().map(|(bd, b)| (*bd, b.len())).collect();

        let mut ideals: Vec<BTreeMap<BiDegree, Echelon<Rat>>> = Vec::with_capacity(n + 1);
        ideals.push(
            bds.iter()
                .map(|&bd| (bd, Echelon::new(m.ambient_dim(bd))))
                .collect(),
        );
        for d in 1..=n {
            let prev = &ideals[d - 1];
            let stage: BTreeMap<BiDegree, Echelon<Rat>> = bds
                .par_iter()
                .map(|&bd| {
                    let mut ech = prev[&bd].clone();
                    if bd.dy >= d as u32 {
                        let src = BiDegree::new(bd.dx, bd.dy - d as u32);
                        for row in &bases[&src] {
                            ech.insert(m.apply_e(d, src, row));
                        }
                    }
                    (bd, ech)
                })
                .collect::<Vec<_>>()
                .into_iter()
                .collect();
            ideals.push(stage);
        }
        Ok(StageData { n, cutoff, dims, bases, ideals })
    }

    pub fn basis(&self, bd: BiDegree) -> &[Vec<Rat>] {
        &self.bases[&bd]
    }

    /// dim of the stage-d quotient piece.
    pub fn stage_dim(&self, d: usize, bd: BiDegree) -> usize {
        self.dims[&bd] - self.ideals[d][&bd].rank()
    }

    pub fn ideal_rank(&self, d: usize, bd: BiDegree) -> usize {
        self.ideals[d][&bd].rank()
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct KernelCell {
    pub stage: usize,
    pub bidegree: BiDegree,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegSeqReport {
    pub cells: Vec<KernelCell>,
    /// (stage, bidegree) pairs whose kernel needs data beyond the window.
    pub indeterminate: Vec<(usize, BiDegree)>,
    pub all_zero: bool,
}

fn regseq_from(data: &StageData, m: &dyn YGradedModule) -> RegSeqReport {
    let mut cells = Vec::new();
    let mut indeterminate = Vec::new();
    for d in 1..=data.n {
        let computable: Vec<BiDegree> = data
            .cutoff
            .box_iter()
            .filter(|bd| bd.dy + d as u32 <= data.cutoff.dy)
            .collect();
        for bd in data.cutoff.box_iter() {
            if bd.dy + (d as u32) > data.cutoff.dy {
                indeterminate.push((d, bd));
            }
        }
        let stage_cells: Vec<KernelCell> = computable
            .par_iter()
            .map(|&bd| {
                let target = BiDegree::new(bd.dx, bd.dy + d as u32);
                let quotient_dim = data.stage_dim(d - 1, bd);
                let mut ech = data.ideals[d - 1][&target].clone();
                let before = ech.rank();
                for row in data.basis(bd) {
                    ech.insert(m.apply_e(d, bd, row));
                }
                let image_rank = ech.rank() - before;
                KernelCell { stage: d, bidegree: bd, dim: quotient_dim - image_rank }
            })
            .collect();
        cells.extend(stage_cells);
    }
    cells.sort_by_key(|c| (c.stage, c.bidegree));
    let all_zero = cells.iter().all(|c| c.dim == 0);
    RegSeqReport { cells, indeterminate, all_zero }
}

/// Stage-by-stage kernel dimensions of multiplication by each e_d on the
/// previous quotient. All zero on the window means the generators act as a
/// regular sequence there.
pub fn regular_sequence_check(m: &dyn YGradedModule, cutoff: BiDegree) -> Result<RegSeqReport> {
    let data = StageData::compute(m, cutoff)?;
    Ok(regseq_from(&data, m))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FiberCell {
    pub bidegree: BiDegree,
    pub dim: usize,
}

fn fiber_from(data: &StageData) -> Vec<FiberCell> {
    data.cutoff
        .box_iter()
        .map(|bd| FiberCell { bidegree: bd, dim: data.stage_dim(data.n, bd) })
        .collect()
}

/// Bigraded dimensions of the module modulo the augmentation ideal; counts
/// free generators by bidegree when the module is free.
pub fn fiber_series(m: &dyn YGradedModule, cutoff: BiDegree) -> Result<Vec<FiberCell>> {
    let data = StageData::compute(m, cutoff)?;
    Ok(fiber_from(&data))
}

pub fn fiber_csv(cells: &[FiberCell], cutoff: BiDegree) -> String {
    let table: BTreeMap<BiDegree, usize> = cells.iter().map(|c| (c.bidegree, c.dim)).collect();
    crate::alternants::hilbert_csv(&table, cutoff)
}

#[derive(Clone, Debug, Serialize)]
pub struct EulerReport {
    pub ok: bool,
    /// First (bidegree, series coefficient, fiber dim) disagreement, if any.
    pub first_mismatch: Option<(BiDegree, i64, usize)>,
}

fn euler_from(data: &StageData) -> EulerReport {
    let n = data.n;
    let fiber = fiber_from(data);
    let fiber_map: BTreeMap<BiDegree, usize> =
        fiber.iter().map(|c| (c.bidegree, c.dim)).collect();
    for bd in data.cutoff.box_iter() {
        // Coefficient of the Hilbert series times prod_d (1 - t^d), expanded
        // by inclusion-exclusion over subsets of {1..n}.
        let mut lhs: i64 = 0;
        for mask in 0u32..(1 << n) {
            let mut shift = 0u32;
            let mut sign = 1i64;
            for d in 1..=n {
                if mask & (1 << (d - 1)) != 0 {
                    shift += d as u32;
                    sign = -sign;
                }
            }
            if shift <= bd.dy {
                lhs += sign * data.dims[&BiDegree::new(bd.dx, bd.dy - shift)] as i64;
            }
        }
        let rhs = fiber_map[&bd];
        if lhs < 0 || lhs as usize != rhs {
            return EulerReport { ok: false, first_mismatch: Some((bd, lhs, rhs)) };
        }
    }
    EulerReport { ok: true, first_mismatch: None }
}

/// Coefficientwise identity between the windowed Hilbert series multiplied
/// by prod_{d=1..n} (1 - t^d) and the fiber series, with all coefficients
/// nonnegative. Freeness makes this exact; torsion breaks it.
pub fn euler_identity_check(m: &dyn YGradedModule, cutoff: BiDegree) -> Result<EulerReport> {
    let data = StageData::compute(m, cutoff)?;
    Ok(euler_from(&data))
}

/// Which deterministic lift rule picks generator representatives.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LiftRule {
    /// Scan the row-reduced basis in canonical order.
    Forward,
    /// Scan it in reverse, as an independence check on the choice of lifts.
    Reverse,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorEntry {
    pub bidegree: BiDegree,
    /// Canonical text of the lifted representative, when the module is a
    /// polynomial subspace.
    pub poly: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertCell {
    pub bidegree: BiDegree,
    pub products: usize,
    pub rank: usize,
    pub dim: usize,
    pub independent: bool,
    pub spanning: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub generators: Vec<GeneratorEntry>,
    pub cells: Vec<CertCell>,
    pub ok: bool,
}

/// Exponent vectors (m_1..m_n) with sum d*m_d equal to `total`.
fn e_exponent_vecs(n: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut acc = vec![0u32; n];
    fn rec(n: usize, d: usize, left: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if d > n {
            if left == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let mut used = 0u32;
        let mut mult = 0u32;
        while used <= left {
            acc[d - 1] = mult;
            rec(n, d + 1, left - used, acc, out);
            mult += 1;
            used += d as u32;
        }
        acc[d - 1] = 0;
    }
    rec(n, 1, total, &mut acc, &mut out);
    out
}

fn certificate_from(
    data: &StageData,
    m: &dyn YGradedModule,
    rule: LiftRule,
) -> CertificateReport {
    let n = data.n;
    // Lift a basis of each fiber piece: basis rows that grow the rank of the
    // stage-n ideal, scanned in the rule's order.
    let mut generators: BTreeMap<BiDegree, Vec<Vec<Rat>>> = BTreeMap::new();
    let mut entries: Vec<GeneratorEntry> = Vec::new();
    for bd in data.cutoff.box_iter() {
        let mut ech = data.ideals[n][&bd].clone();
        let rows = data.basis(bd);
        let ordered: Vec<&Vec<Rat>> = match rule {
            LiftRule::Forward => rows.iter().collect(),
            LiftRule::Reverse => rows.iter().rev().collect(),
        };
        let mut gens = Vec::new();
        for row in ordered {
            if ech.insert(row.clone()) {
                gens.push(row.clone());
            }
        }
        for g in &gens {
            entries.push(GeneratorEntry {
                bidegree: bd,
                poly: m.row_poly(bd, g).map(|p| p.to_string()),
            });
        }
        generators.insert(bd, gens);
    }

    // Re-check: products of e-monomials with generators must be independent
    // and spanning in every window bidegree (all contributing generators
    // stay inside the window, since e-multiplication preserves x-degree).
    let bds: Vec<BiDegree> = data.cutoff.box_iter().collect();
    let cells: Vec<CertCell> = bds
        .par_iter()
        .map(|&bd| {
            let mut ech = Echelon::new(m.ambient_dim(bd));
            let mut products = 0usize;
            let mut independent = true;
            for drop in 0..=bd.dy {
                let src = BiDegree::new(bd.dx, bd.dy - drop);
                let gens = &generators[&src];
                if gens.is_empty() {
                    continue;
                }
                for evec in e_exponent_vecs(n, drop) {
                    for g in gens {
                        let mut row = g.clone();
                        let mut at = src;
                        for (d, &mult) in evec.iter().enumerate() {
                            for _ in 0..mult {
                                row = m.apply_e(d + 1, at, &row);
                                at = BiDegree::new(at.dx, at.dy + (d + 1) as u32);
                            }
                        }
                        products += 1;
                        independent &= ech.insert(row);
                    }
                }
            }
            CertCell {
                bidegree: bd,
                products,
                rank: ech.rank(),
                dim: data.dims[&bd],
                independent,
                spanning: ech.rank() == data.dims[&bd],
            }
        })
        .collect();
    let ok = cells.iter().all(|c| c.independent && c.spanning);
    CertificateReport { generators: entries, cells, ok }
}

pub fn free_basis_certificate_with_rule(
    m: &dyn YGradedModule,
    cutoff: BiDegree,
    rule: LiftRule,
) -> Result<CertificateReport> {
    let data = StageData::compute(m, cutoff)?;
    Ok(certificate_from(&data, m, rule))
}

/// Lifts a fiber basis to module elements and verifies that e-monomial
/// multiples of the lifts form a basis of every window bidegree. A spanning
/// failure at a fully determined bidegree is a loud verdict failure.
pub fn free_basis_certificate(
    m: &dyn YGradedModule,
    cutoff: BiDegree,
) -> Result<CertificateReport> {
    free_basis_certificate_with_rule(m, cutoff, LiftRule::Forward)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    InconclusiveAtCutoff,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreenessReport {
    pub module: String,
    pub n: usize,
    pub k: u32,
    pub cutoff: BiDegree,
    pub kernel_dims: Vec<KernelCell>,
    pub indeterminate: Vec<(usize, BiDegree)>,
    pub fiber: Vec<FiberCell>,
    pub euler_identity_ok: bool,
    pub euler_first_mismatch: Option<(BiDegree, i64, usize)>,
    pub generators: Vec<GeneratorEntry>,
    pub certificate: Vec<CertCell>,
    pub certificate_ok: bool,
    pub verdict: Verdict,
}

/// Runs all three routes off one stage computation and combines the verdict.
pub fn freeness_report(m: &dyn YGradedModule, cutoff: BiDegree) -> Result<FreenessReport> {
    let data = StageData::compute(m, cutoff)?;
    let reg = regseq_from(&data, m);
    let fiber = fiber_from(&data);
    let euler = euler_from(&data);
    let cert = certificate_from(&data, m, LiftRule::Forward);
    let all_empty = data.dims.values().all(|&d| d == 0);
    let verdict = if !reg.all_zero || !euler.ok || !cert.ok {
        Verdict::Fail
    } else if all_empty {
        Verdict::InconclusiveAtCutoff
    } else {
        Verdict::Pass
    };
    Ok(FreenessReport {
        module: m.label(),
        n: data.n,
        k: m.power(),
        cutoff,
        kernel_dims: reg.cells,
        indeterminate: reg.indeterminate,
        fiber,
        euler_identity_ok: euler.ok,
        euler_first_mismatch: euler.first_mismatch,
        generators: cert.generators,
        certificate: cert.cells,
        certificate_ok: cert.ok,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_regular_sequence_trivial() {
        for k in 1..=3 {
            let m = AkModule::new(1, k);
            let rep = regular_sequence_check(&m, BiDegree::new(3, 3)).unwrap();
            assert!(rep.all_zero);
        }
    }

    #[test]
    fn n1_fiber_pattern() {
        let m = AkModule::new(1, 1);
        let fiber = fiber_series(&m, BiDegree::new(3, 3)).unwrap();
        for cell in fiber {
            let expect = usize::from(cell.bidegree.dy == 0);
            assert_eq!(cell.dim, expect, "at {}", cell.bidegree);
        }
    }

    #[test]
    fn n2_k1_desk_scale() {
        let m = AkModule::new(2, 1);
        let rep = freeness_report(&m, BiDegree::new(4, 4)).unwrap();
        assert!(rep.kernel_dims.iter().all(|c| c.dim == 0));
        assert!(rep.euler_identity_ok);
        assert!(rep.certificate_ok);
        assert_eq!(rep.verdict, Verdict::Pass);

        let by_bd: BTreeMap<BiDegree, usize> =
            rep.fiber.iter().map(|c| (c.bidegree, c.dim)).collect();
        assert_eq!(by_bd[&BiDegree::new(1, 0)], 1);
        assert_eq!(by_bd[&BiDegree::new(0, 2)], 0);
        assert_eq!(by_bd[&BiDegree::new(0, 1)], 1);
    }

    #[test]
    fn euler_identity_n1() {
        let m = AkModule::new(1, 1);
        assert!(euler_identity_check(&m, BiDegree::new(3, 3)).unwrap().ok);
    }

    #[test]
    fn planted_torsion_is_caught() {
        let at = BiDegree::new(1, 1);
        let m = PlantedTorsion::new(2, 1, at);
        let rep = freeness_report(&m, BiDegree::new(3, 3)).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
        assert!(!rep.euler_identity_ok);
        let cell = rep
            .kernel_dims
            .iter()
            .find(|c| c.stage == 1 && c.bidegree == at)
            .unwrap();
        assert!(cell.dim > 0, "kernel must appear at the planted bidegree");
    }

    #[test]
    fn stage_consistency_when_kernels_vanish() {
        let m = AkModule::new(2, 1);
        let cutoff = BiDegree::new(3, 3);
        let data = StageData::compute(&m, cutoff).unwrap();
        let reg = regseq_from(&data, &m);
        assert!(reg.all_zero);
        for d in 1..=2usize {
            for bd in cutoff.box_iter() {
                if bd.dy < d as u32 {
                    assert_eq!(data.stage_dim(d, bd), data.stage_dim(d - 1, bd));
                    continue;
                }
                let src = BiDegree::new(bd.dx, bd.dy - d as u32);
                let image: usize = {
                    let mut ech = data.ideals[d - 1][&bd].clone();
                    let before = ech.rank();
                    for row in data.basis(src) {
                        ech.insert(m.apply_e(d, src, row));
                    }
                    ech.rank() - before
                };
                assert_eq!(data.stage_dim(d, bd), data.stage_dim(d - 1, bd) - image);
            }
        }
    }

    #[test]
    fn certificate_counts_match_fiber_and_lift_rule() {
        let m = AkModule::new(2, 1);
        let cutoff = BiDegree::new(3, 3);
        let fiber = fiber_series(&m, cutoff).unwrap();
        let fwd = free_basis_certificate_with_rule(&m, cutoff, LiftRule::Forward).unwrap();
        let rev = free_basis_certificate_with_rule(&m, cutoff, LiftRule::Reverse).unwrap();
        assert!(fwd.ok && rev.ok);
        let count = |r: &CertificateReport, bd: BiDegree| {
            r.generators.iter().filter(|g| g.bidegree == bd).count()
        };
        for cell in &fiber {
            assert_eq!(count(&fwd, cell.bidegree), cell.dim);
            assert_eq!(count(&rev, cell.bidegree), cell.dim);
        }
    }

    #[test]
    fn certificate_generators_include_lowest_alternants() {
        let m = AkModule::new(2, 1);
        let cert = free_basis_certificate(&m, BiDegree::new(2, 2)).unwrap();
        let texts: Vec<String> = cert
            .generators
            .iter()
            .filter_map(|g| g.poly.clone())
            .collect();
        assert!(texts.iter().any(|t| t == "x1 - x2"));
        assert!(texts.iter().any(|t| t == "y1 - y2"));
    }

    #[test]
    fn cutoff_too_small_is_usage_error() {
        let m = AkModule::new(3, 1);
        assert!(matches!(
            regular_sequence_check(&m, BiDegree::new(4, 2)),
            Err(LabError::Usage(_))
        ));
    }
}
