//! Deterministic rejection sampling of admissible instances.
//!
//! Stream-split rule: the generator for `(identity_id, draw_index)` is
//! ChaCha8 seeded with `splitmix64(seed ^ fnv1a64(identity_id))` and switched
//! to stream `draw_index`. Draws are therefore independent of evaluation order
//! and of every other identity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{FreeKind, FreeValues, IdentityRecord, Instance};
use crate::error::{HornError, Result};
use crate::series::{EvalPoint, SeriesConfig};

/// Rejections tolerated per draw before giving up.
pub const MAX_REJECTIONS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePlan {
    pub seed: u64,
    pub n_samples: usize,
    pub param_range: (f64, f64),
    pub exclusion_margin: f64,
    pub point_shrink: f64,
    pub k_values: Vec<u32>,
    pub s_values: Vec<u32>,
    pub t_range: (f64, f64),
    pub r_trunc: u32,
    /// Divided-by coordinates keep this fraction of the box away from zero.
    pub coord_margin: f64,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            seed: 0x5eed,
            n_samples: 200,
            param_range: (-3.5, 3.5),
            exclusion_margin: 0.1,
            point_shrink: 0.8,
            k_values: vec![1, 2, 3],
            s_values: vec![1, 2, 3],
            t_range: (-0.3, 0.3),
            r_trunc: 40,
            coord_margin: 0.1,
        }
    }
}

impl SamplePlan {
    pub fn with_seed(seed: u64) -> Self {
        SamplePlan {
            seed,
            ..SamplePlan::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(HornError::Config(m.to_string()));
        if self.n_samples < 1 {
            return bad("n_samples must be at least 1");
        }
        if !(self.point_shrink > 0.0 && self.point_shrink <= 1.0) {
            return bad("point_shrink must lie in (0, 1]");
        }
        if !(self.param_range.0 < self.param_range.1) {
            return bad("param_range must be a nonempty interval");
        }
        if !(self.t_range.0 <= self.t_range.1 && self.t_range.0 > -1.0 && self.t_range.1 < 1.0) {
            return bad("t_range must lie inside (-1, 1)");
        }
        if !(self.exclusion_margin > 0.0) || !(self.coord_margin >= 0.0) {
            return bad("margins must be positive");
        }
        if self.k_values.is_empty() || self.s_values.is_empty() {
            return bad("k_values and s_values must be nonempty");
        }
        if self.s_values.contains(&0) {
            return bad("operator orders must be at least 1");
        }
        Ok(())
    }

    /// Free-integer combinations exercised for `record`.
    pub fn combos(&self, record: &IdentityRecord) -> Vec<FreeValues> {
        let base = FreeValues::default();
        match record.free {
            FreeKind::None => vec![base],
            FreeKind::K => self.k_values.iter().map(|&k| FreeValues { k, ..base }).collect(),
            FreeKind::S => self.s_values.iter().map(|&s| FreeValues { s, ..base }).collect(),
            FreeKind::SumR => vec![FreeValues {
                r_trunc: self.r_trunc,
                ..base
            }],
        }
    }

    pub fn draws(&self, record: &IdentityRecord) -> usize {
        self.combos(record).len() * self.n_samples
    }
}

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn rng_for(seed: u64, identity_id: &str, draw_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(seed ^ fnv1a64(identity_id.as_bytes())));
    rng.set_stream(draw_index);
    rng
}

/// Draw the admissible instance number `draw_index` for `record`.
///
/// The free integers come from combination `draw_index / n_samples`.
pub fn sample_instance(
    record: &IdentityRecord,
    plan: &SamplePlan,
    cfg: &SeriesConfig,
    draw_index: usize,
) -> Result<Instance> {
    Ok(sample_instance_counted(record, plan, cfg, draw_index)?.0)
}

/// [`sample_instance`] plus the number of candidates drawn, 1 when the
/// first one was admissible.
pub fn sample_instance_counted(
    record: &IdentityRecord,
    plan: &SamplePlan,
    cfg: &SeriesConfig,
    draw_index: usize,
) -> Result<(Instance, usize)> {
    let combos = plan.combos(record);
    let combo = combos
        .get(draw_index / plan.n_samples)
        .copied()
        .ok_or_else(|| HornError::Config(format!("draw index {draw_index} out of range")))?;
    let mut rng = rng_for(plan.seed, &record.identity_id, draw_index as u64);
    let (bx, by) = record.function.safe_box();
    let (lo, hi) = plan.param_range;
    let arity = record.function.param_arity();
    let mut last_reason = String::new();
    for attempt in 1..=MAX_REJECTIONS {
        let params: Vec<f64> = (0..arity).map(|_| rng.gen_range(lo..hi)).collect();
        let x = rng.gen_range(-1.0..1.0) * bx * plan.point_shrink;
        let y = rng.gen_range(-1.0..1.0) * by * plan.point_shrink;
        let mut free = combo;
        if record.free == FreeKind::SumR {
            let (t0, t1) = plan.t_range;
            free.t = if t0 < t1 { rng.gen_range(t0..t1) } else { t0 };
        }
        let inst = Instance {
            params,
            point: EvalPoint::new(x, y),
            free,
        };
        let bad = record.admissibility(&inst, cfg, plan.exclusion_margin, plan.coord_margin);
        if bad.is_empty() {
            return Ok((inst, attempt));
        }
        last_reason = bad.join("; ");
    }
    Err(HornError::SamplingExhausted {
        attempts: MAX_REJECTIONS,
        last_reason,
    })
}
