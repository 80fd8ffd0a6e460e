use std::time::Instant;

use altlab_core::alternants::{hilbert_csv, hilbert_table, AkCache};
use altlab_core::poly::BiDegree;
use altlab_core::scalar::{set_fp_prime, Fp64, Rat};
use serde::Serialize;

use super::ConfigEcho;
use crate::{report, HilbertArgs, Mode, UsageError, EXIT_PASS};

#[derive(Serialize)]
struct HilbertCell {
    a: u32,
    b: u32,
    dim: usize,
}

#[derive(Serialize)]
struct HilbertBody {
    config: ConfigEcho,
    table: Vec<HilbertCell>,
    artifacts: std::collections::BTreeMap<String, String>,
}

pub fn run(args: &HilbertArgs, workers: usize) -> Result<i32, UsageError> {
    let common = &args.common;
    let mode = crate::validate(common, false, true)?;
    if common.k < 1 {
        return Err(UsageError("hilbert needs k >= 1".into()));
    }
    let started = Instant::now();
    let cutoff = BiDegree::new(common.cutoff_x, common.cutoff_y);

    eprintln!(
        "hilbert: n={} k={} cutoff={}x{} mode={}",
        common.n, common.k, common.cutoff_x, common.cutoff_y, common.mode
    );
    let table = match mode {
        Mode::Exact => {
            let cache = AkCache::<Rat>::new();
            hilbert_table(&cache, common.n, common.k, cutoff)
        }
        Mode::Prime(p) => {
            set_fp_prime(p)?;
            let cache = AkCache::<Fp64>::new();
            hilbert_table(&cache, common.n, common.k, cutoff)
        }
    };
    let csv = hilbert_csv(&table, cutoff);

    if common.output == "csv" {
        print!("{csv}");
        return Ok(EXIT_PASS);
    }

    let mut artifacts = std::collections::BTreeMap::new();
    artifacts.insert("hilbert_csv_sha256".to_string(), report::sha256_hex(csv.as_bytes()));
    let body = HilbertBody {
        config: ConfigEcho::from(common),
        table: table
            .iter()
            .map(|(bd, &dim)| HilbertCell { a: bd.dx, b: bd.dy, dim })
            .collect(),
        artifacts,
    };
    report::emit(&body, workers, started.elapsed().as_millis());
    Ok(EXIT_PASS)
}
