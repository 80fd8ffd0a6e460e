use std::time::Instant;

use altlab_core::acv::random_word_tuple;
use altlab_core::alternants::AkCache;
use altlab_core::isotypic::{
    injectivity_evidence, k0_remark_check, surjectivity_check, wedge_identity_check,
    EvidenceStatus, InjectivityReport, K0Report, SurjectivityReport,
};
use altlab_core::poly::BiDegree;
use altlab_core::rng::DetRng;
use rayon::prelude::*;
use serde::Serialize;

use super::ConfigEcho;
use crate::{report, PropAkArgs, UsageError, EXIT_INCONCLUSIVE, EXIT_PASS, EXIT_VIOLATION};

#[derive(Serialize)]
struct WedgeSummary {
    tuples: usize,
    trials_per_tuple: usize,
    all_ok: bool,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct BidegreeCell {
    a: u32,
    b: u32,
    surjectivity: SurjectivityReport,
    injectivity: InjectivityReport,
    k0: K0Report,
}

#[derive(Serialize)]
struct PropAkBody {
    config: ConfigEcho,
    tuples: usize,
    trials: usize,
    wedge: WedgeSummary,
    bidegrees: Vec<BidegreeCell>,
    verdict: String,
}

pub fn run(args: &PropAkArgs, workers: usize) -> Result<i32, UsageError> {
    let common = &args.common;
    crate::validate(common, true, false)?;
    if common.k < 1 {
        return Err(UsageError("prop-ak needs k >= 1".into()));
    }
    let started = Instant::now();
    let n = common.n;
    let k = common.k;
    let cutoff = BiDegree::new(common.cutoff_x, common.cutoff_y);

    eprintln!("prop-ak: n={n} k={k} cutoff={}x{}", cutoff.dx, cutoff.dy);

    // Wedge identity on random word tuples, each at `trials` random points.
    let root = DetRng::new(common.seed);
    let wedge_results: Vec<(u64, bool, String)> = (0..args.tuples as u64)
        .into_par_iter()
        .map(|t| {
            let f = random_word_tuple(&mut root.derive("wedge-tuple", t), n, 4);
            let ok = wedge_identity_check(&f, args.trials, common.seed.wrapping_add(t));
            let label = f.0.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",");
            (t, ok, label)
        })
        .collect();
    let failures: Vec<String> = wedge_results
        .iter()
        .filter(|(_, ok, _)| !ok)
        .map(|(t, _, label)| format!("tuple {t}: ({label})"))
        .collect();
    let wedge = WedgeSummary {
        tuples: args.tuples,
        trials_per_tuple: args.trials,
        all_ok: failures.is_empty(),
        failures,
    };
    eprintln!("prop-ak: wedge identity {}", if wedge.all_ok { "ok" } else { "FAILED" });

    let cache = AkCache::new();
    let bds: Vec<BiDegree> = cutoff.box_iter().collect();
    let cells: Vec<BidegreeCell> = bds
        .par_iter()
        .map(|&bd| {
            let surjectivity = surjectivity_check(&cache, n, k, bd);
            let injectivity =
                injectivity_evidence(&cache, n, k, bd, common.samples, common.seed);
            let k0 = k0_remark_check(n, bd, bd.total().max(1));
            BidegreeCell { a: bd.dx, b: bd.dy, surjectivity, injectivity, k0 }
        })
        .collect();

    let any_fail = !wedge.all_ok
        || cells.iter().any(|c| {
            !c.surjectivity.pass
                || !c.k0.pass
                || c.injectivity.status == EvidenceStatus::Fail
        });
    let any_inconclusive = cells
        .iter()
        .any(|c| c.injectivity.status == EvidenceStatus::Inconclusive);
    let (verdict, code) = if any_fail {
        ("fail", EXIT_VIOLATION)
    } else if any_inconclusive {
        ("inconclusive", EXIT_INCONCLUSIVE)
    } else {
        ("pass", EXIT_PASS)
    };
    eprintln!("prop-ak: verdict={verdict}");

    let body = PropAkBody {
        config: ConfigEcho::from(common),
        tuples: args.tuples,
        trials: args.trials,
        wedge,
        bidegrees: cells,
        verdict: verdict.to_string(),
    };
    report::emit(&body, workers, started.elapsed().as_millis());
    Ok(code)
}
