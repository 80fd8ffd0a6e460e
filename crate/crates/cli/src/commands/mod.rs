pub mod freeness;
pub mod hilbert;
pub mod prop_ak;
pub mod variety;

use serde::Serialize;

/// Configuration echoed into every report body.
#[derive(Serialize)]
pub struct ConfigEcho {
    pub n: usize,
    pub k: u32,
    pub cutoff_x: u32,
    pub cutoff_y: u32,
    pub seed: u64,
    pub samples: usize,
    pub mode: String,
}

impl ConfigEcho {
    pub fn from(common: &crate::CommonArgs) -> Self {
        ConfigEcho {
            n: common.n,
            k: common.k,
            cutoff_x: common.cutoff_x,
            cutoff_y: common.cutoff_y,
            seed: common.seed,
            samples: common.samples,
            mode: common.mode.clone(),
        }
    }
}
