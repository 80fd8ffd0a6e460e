use std::time::Instant;

use altlab_core::freeness::{
    fiber_csv, freeness_report, AkModule, FreenessReport, PlantedTorsion, Verdict, YGradedModule,
};
use altlab_core::poly::BiDegree;
use serde::Serialize;

use super::ConfigEcho;
use crate::{report, FreenessArgs, UsageError, EXIT_INCONCLUSIVE, EXIT_PASS, EXIT_VIOLATION};

#[derive(Serialize)]
struct FreenessBody {
    config: ConfigEcho,
    planted_torsion: Option<String>,
    report: FreenessReport,
    artifacts: std::collections::BTreeMap<String, String>,
}

fn parse_bidegree(s: &str) -> Result<BiDegree, UsageError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(UsageError(format!("expected \"a,b\", got {s:?}")));
    }
    let a = parts[0].trim().parse::<u32>().map_err(|e| UsageError(e.to_string()))?;
    let b = parts[1].trim().parse::<u32>().map_err(|e| UsageError(e.to_string()))?;
    Ok(BiDegree::new(a, b))
}

pub fn run(args: &FreenessArgs, workers: usize) -> Result<i32, UsageError> {
    let common = &args.common;
    crate::validate(common, true, true)?;
    if common.k < 1 {
        return Err(UsageError("freeness needs k >= 1".into()));
    }
    let started = Instant::now();
    let cutoff = BiDegree::new(common.cutoff_x, common.cutoff_y);

    let planted = args.plant_torsion.as_deref().map(parse_bidegree).transpose()?;
    let module: Box<dyn YGradedModule> = match planted {
        None => Box::new(AkModule::new(common.n, common.k)),
        Some(at) => {
            if !at.fits_in(cutoff) {
                return Err(UsageError(format!(
                    "planted bidegree {at} lies outside the cutoff window"
                )));
            }
            Box::new(PlantedTorsion::new(common.n, common.k, at))
        }
    };

    eprintln!(
        "freeness: {} cutoff={}x{}",
        module.label(),
        common.cutoff_x,
        common.cutoff_y
    );
    let rep = freeness_report(module.as_ref(), cutoff)?;
    eprintln!(
        "freeness: verdict={:?} kernels={} euler_ok={} certificate_ok={}",
        rep.verdict,
        rep.kernel_dims.iter().filter(|c| c.dim > 0).count(),
        rep.euler_identity_ok,
        rep.certificate_ok
    );

    let csv = fiber_csv(&rep.fiber, cutoff);
    if common.output == "csv" {
        print!("{csv}");
        return Ok(match rep.verdict {
            Verdict::Pass => EXIT_PASS,
            Verdict::Fail => EXIT_VIOLATION,
            Verdict::InconclusiveAtCutoff => EXIT_INCONCLUSIVE,
        });
    }

    let mut artifacts = std::collections::BTreeMap::new();
    artifacts.insert("fiber_csv_sha256".to_string(), report::sha256_hex(csv.as_bytes()));
    let code = match rep.verdict {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_VIOLATION,
        Verdict::InconclusiveAtCutoff => EXIT_INCONCLUSIVE,
    };
    let body = FreenessBody {
        config: ConfigEcho::from(common),
        planted_torsion: planted.map(|bd| bd.to_string()),
        report: rep,
        artifacts,
    };
    report::emit(&body, workers, started.elapsed().as_millis());
    Ok(code)
}
