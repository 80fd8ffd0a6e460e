use std::time::Instant;

use altlab_core::acv::{
    char_poly_coeffs, g_translate, jacobian_rank, krylov_col_dim, krylov_row_dim, phi_eval,
    psi_eval, random_invertible, random_word_tuple, sample_stratum, MPoint,
};
use altlab_core::linalg::det;
use altlab_core::rng::DetRng;
use altlab_core::scalar::Scalar;
use rayon::prelude::*;
use serde::Serialize;

use super::ConfigEcho;
use crate::{report, UsageError, VarietyArgs, EXIT_PASS, EXIT_VIOLATION};

#[derive(Serialize)]
struct StratumSummary {
    r: usize,
    samples: usize,
    points: Vec<MPoint>,
    krylov_ok: bool,
    jacobian_rank_expected: usize,
    jacobian_all_full: bool,
    /// Exact vanishing of the twist-(+1) function on every sampled tuple;
    /// asserted for r >= 1.
    psi_vanishing_ok: Option<bool>,
    /// Exact vanishing of the twist-(-1) function; asserted for r <= n-1.
    phi_vanishing_ok: Option<bool>,
    equivariance_ok: bool,
    spectrum_invariant_ok: bool,
}

#[derive(Serialize)]
struct VarietyBody {
    config: ConfigEcho,
    tuples: usize,
    translates: usize,
    stratum_filter: Option<usize>,
    strata: Vec<StratumSummary>,
    verdict: String,
}

fn check_stratum(
    n: usize,
    r: usize,
    args: &VarietyArgs,
) -> Result<StratumSummary, altlab_core::LabError> {
    let common = &args.common;
    let points: Vec<MPoint> = (0..common.samples)
        .into_par_iter()
        .map(|idx| sample_stratum(n, r, common.seed.wrapping_add(idx as u64)))
        .collect::<Result<Vec<_>, _>>()?;

    let mut krylov_ok = true;
    let mut jacobian_all_full = true;
    let mut psi_ok = true;
    let mut phi_ok = true;
    let mut equivariance_ok = true;
    let mut spectrum_ok = true;

    let results: Vec<(bool, bool, bool, bool, bool, bool)> = points
        .par_iter()
        .enumerate()
        .map(|(idx, p)| {
            let k_ok = krylov_col_dim(p) == n - r && krylov_row_dim(p) == r;
            let j_ok = jacobian_rank(p).map(|rk| rk == n * n).unwrap_or(false);

            let rng = DetRng::new(common.seed)
                .derive("variety", r as u64)
                .derive("point", idx as u64);
            let tuples: Vec<_> = (0..args.tuples as u64)
                .map(|t| random_word_tuple(&mut rng.derive("tuple", t), n, 4))
                .collect();
            let base_psi: Vec<_> = tuples.iter().map(|f| psi_eval(p, f)).collect();
            let base_phi: Vec<_> = tuples.iter().map(|f| phi_eval(p, f)).collect();
            let p_ok = r == 0 || base_psi.iter().all(|v| v.is_zero());
            let f_ok = r == n || base_phi.iter().all(|v| v.is_zero());

            let base_spectrum = char_poly_coeffs(p);
            let mut e_ok = true;
            let mut s_ok = true;
            for g_idx in 0..args.translates as u64 {
                let g = random_invertible(&mut rng.derive("g", g_idx), n, 3);
                let dg = det(&g);
                let dg_inv = dg.inv().expect("invertible");
                let moved = g_translate(p, &g).expect("invertible");
                s_ok &= char_poly_coeffs(&moved) == base_spectrum;
                for (f, (bp, bf)) in tuples.iter().zip(base_psi.iter().zip(&base_phi)) {
                    e_ok &= psi_eval(&moved, f) == dg.mul(bp);
                    e_ok &= phi_eval(&moved, f) == dg_inv.mul(bf);
                }
            }
            (k_ok, j_ok, p_ok, f_ok, e_ok, s_ok)
        })
        .collect();

    for (k_ok, j_ok, p_ok, f_ok, e_ok, s_ok) in results {
        krylov_ok &= k_ok;
        jacobian_all_full &= j_ok;
        psi_ok &= p_ok;
        phi_ok &= f_ok;
        equivariance_ok &= e_ok;
        spectrum_ok &= s_ok;
    }

    Ok(StratumSummary {
        r,
        samples: common.samples,
        points,
        krylov_ok,
        jacobian_rank_expected: n * n,
        jacobian_all_full,
        psi_vanishing_ok: (r >= 1).then_some(psi_ok),
        phi_vanishing_ok: (r <= n - 1).then_some(phi_ok),
        equivariance_ok,
        spectrum_invariant_ok: spectrum_ok,
    })
}

pub fn run(args: &VarietyArgs, workers: usize) -> Result<i32, UsageError> {
    let common = &args.common;
    crate::validate(common, true, false)?;
    let started = Instant::now();
    let n = common.n;

    let strata: Vec<usize> = match args.stratum {
        Some(r) if r > n => {
            return Err(UsageError(format!("stratum {r} out of range 0..={n}")));
        }
        Some(r) => vec![r],
        None => (0..=n).collect(),
    };

    let mut summaries = Vec::with_capacity(strata.len());
    for r in strata {
        eprintln!("variety: sampling stratum {r} ({} points)", common.samples);
        match check_stratum(n, r, args) {
            Ok(s) => summaries.push(s),
            // A sampler that cannot produce a verified point is a failed
            // property run, not a usage mistake.
            Err(e @ altlab_core::LabError::SamplerExhausted { .. }) => {
                eprintln!("variety: {e}");
                return Ok(EXIT_VIOLATION);
            }
            Err(e) => return Err(e.into()),
        }
    }

    let all_ok = summaries.iter().all(|s| {
        s.krylov_ok
            && s.jacobian_all_full
            && s.psi_vanishing_ok.unwrap_or(true)
            && s.phi_vanishing_ok.unwrap_or(true)
            && s.equivariance_ok
            && s.spectrum_invariant_ok
    });
    let (verdict, code) = if all_ok { ("pass", EXIT_PASS) } else { ("fail", EXIT_VIOLATION) };
    eprintln!("variety: verdict={verdict}");

    let body = VarietyBody {
        config: ConfigEcho::from(common),
        tuples: args.tuples,
        translates: args.translates,
        stratum_filter: args.stratum,
        strata: summaries,
        verdict: verdict.to_string(),
    };
    report::emit(&body, workers, started.elapsed().as_millis());
    Ok(code)
}
