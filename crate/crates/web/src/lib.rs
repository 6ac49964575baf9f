//! Browser bindings: convergence traces, the Gumbel-max histogram and a small
//! DO/SDO sweep.

use wasm_bindgen::prelude::*;

use bro_core::games::{make_l, make_s, make_u, make_u_t, GameSpec};
use bro_core::perturbation::{perturbed_argmax, softmax};
use bro_core::solvers::{run_anticipatory_fp, run_double_oracle, run_fictitious_play, SolveResult, SolverConfig};
use bro_core::{MatrixGame, PerturbationSpec, RandomSource};

/// Largest strategy count accepted from the page.
const MAX_SIDE: usize = 2048;

fn worst_start(spec: &GameSpec) -> (usize, usize) {
    match spec {
        GameSpec::S(n) | GameSpec::U(n) => (n - 1, n - 1),
        _ => (0, 0),
    }
}

/// Exploitability bound after every iteration, per play, for one run.
pub fn gap_trace(game: &str, algorithm: &str, perturbation: &str, eps: f64, seed: u32) -> Result<Vec<f64>, String> {
    let spec: GameSpec = game.parse().map_err(|e: bro_core::Error| e.to_string())?;
    let noise: PerturbationSpec = perturbation.parse().map_err(|e: bro_core::Error| e.to_string())?;
    let built = spec.build(&mut RandomSource::new(seed as u64)).map_err(|e| e.to_string())?;
    if built.rows().max(built.cols()) > MAX_SIDE {
        return Err(format!("games are limited to {MAX_SIDE} strategies per player here"));
    }
    let (k, l) = worst_start(&spec);
    let cfg = SolverConfig::new(eps)
        .with_perturbation(noise)
        .with_init(k, l)
        .with_seed(seed as u64)
        .with_trace();
    let fp_scale = |r: SolveResult| -> Vec<f64> {
        let trace = r.trace.unwrap_or_default();
        trace.iter().enumerate().map(|(t, (lb, ub))| (ub - lb) / (t + 1) as f64).collect()
    };
    let run = |f: fn(&MatrixGame, &SolverConfig) -> bro_core::Result<SolveResult>| -> Result<Vec<f64>, String> {
        let m = built.matrix().map_err(|e| e.to_string())?;
        f(&m, &cfg).map(fp_scale).map_err(|e| e.to_string())
    };
    match algorithm {
        "fp" => run(run_fictitious_play),
        "afp" => run(run_anticipatory_fp),
        "do" => {
            let r = run_double_oracle(&built, &cfg).map_err(|e| e.to_string())?;
            Ok(r.trace.unwrap_or_default().iter().map(|(lb, ub)| ub - lb).collect())
        }
        other => Err(format!("unknown algorithm '{other}' (fp, afp or do; noise selects the perturbed variant)")),
    }
}

/// Empirical frequencies of `argmax(x + Gumbel(0, β))` followed by
/// `softmax(x / β)`.
pub fn gumbel_frequencies(values: &[f64], beta: f64, samples: u32, seed: u32) -> Result<Vec<f64>, String> {
    if values.is_empty() || values.len() > 64 {
        return Err("need between 1 and 64 values".into());
    }
    let spec = PerturbationSpec::gumbel(0.0, beta).map_err(|e| e.to_string())?;
    let mut rng = RandomSource::new(seed as u64);
    let mut out = vec![0.0; 2 * values.len()];
    for _ in 0..samples {
        out[perturbed_argmax(values, &spec, &mut rng)] += 1.0;
    }
    for c in &mut out[..values.len()] {
        *c /= samples.max(1) as f64;
    }
    let scaled: Vec<f64> = values.iter().map(|v| v / beta).collect();
    out[values.len()..].copy_from_slice(softmax(&scaled).weights());
    Ok(out)
}

/// Mean DO and SDO iterations on an adversarial family at each size, as
/// `[size, do, sdo, ...]`.
pub fn adversarial_sweep(family: &str, sizes: &[u32], half_width: f64, seeds: u32) -> Result<Vec<f64>, String> {
    let (make, worst): (fn(usize) -> MatrixGame, bool) = match family {
        "L" => (make_l, false),
        "S" => (make_s, true),
        "U" => (make_u, true),
        "UT" => (make_u_t, false),
        other => return Err(format!("unknown family '{other}'")),
    };
    let noise = PerturbationSpec::uniform(-half_width, half_width).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(3 * sizes.len());
    for &n in sizes {
        let n = n as usize;
        if n == 0 || n > MAX_SIDE {
            return Err(format!("sizes must be between 1 and {MAX_SIDE}"));
        }
        let game = make(n);
        let init = if worst { n - 1 } else { 0 };
        let base = SolverConfig::new(0.1).with_init(init, init);
        let exact = run_double_oracle(&game, &base).map_err(|e| e.to_string())?.iterations;
        let mut total = 0.0;
        for s in 1..=seeds.max(1) {
            let cfg = base.clone().with_perturbation(noise).with_seed(s as u64);
            total += run_double_oracle(&game, &cfg).map_err(|e| e.to_string())?.iterations as f64;
        }
        out.extend([n as f64, exact as f64, total / seeds.max(1) as f64]);
    }
    Ok(out)
}

#[wasm_bindgen(js_name = gapTrace)]
pub fn gap_trace_js(game: &str, algorithm: &str, perturbation: &str, eps: f64, seed: u32) -> Result<Vec<f64>, JsValue> {
    gap_trace(game, algorithm, perturbation, eps, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = gumbelFrequencies)]
pub fn gumbel_frequencies_js(values: Vec<f64>, beta: f64, samples: u32, seed: u32) -> Result<Vec<f64>, JsValue> {
    gumbel_frequencies(&values, beta, samples, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = adversarialSweep)]
pub fn adversarial_sweep_js(family: &str, sizes: Vec<u32>, half_width: f64, seeds: u32) -> Result<Vec<f64>, JsValue> {
    adversarial_sweep(family, &sizes, half_width, seeds).map_err(|e| JsValue::from_str(&e))
}
