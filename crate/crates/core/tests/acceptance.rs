//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use interrogate::harness::{
    fit_line, run_trials, scaling_sweep, trial_stream, ArraySource, Experiment, SweepTemplate, DEFAULT_CONFIDENCE,
};
use interrogate::oracle::{exact_misidentification_probability, exact_overlap_tail, exact_round_distribution};
use interrogate::protocols::{
    build_reference_state, required_successes, sample_random_array, DefectTestConfig, RareSearchConfig,
    RoundKernel, RoundOutcome,
};
use interrogate::quantum::prepare_uniform_superposition;
use interrogate::{Complex64, DefectScenario64, PixelArray64};

type Check = fn() -> Result<String, String>;

struct Suite {
    failed: usize,
}

impl Suite {
    fn record(&mut self, id: &str, title: &str, started: Instant, result: Result<String, String>) {
        let secs = started.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {id} {title}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                self.failed += 1;
                println!("FAIL {id} {title}: {detail} [{secs:.1}s]");
            }
        }
    }
}

fn ensure(ok: bool, detail: String) -> Result<String, String> {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn worked_scenario(n: usize) -> DefectScenario64 {
    let t = PixelArray64::from_real(&vec![1.0; n]).unwrap();
    DefectScenario64::planted(t, &[(1, Complex64::new(0.5, 0.0))]).unwrap()
}

fn ac1() -> Result<String, String> {
    const ROUNDS: u64 = 100_000;
    let mut worst = 0.0f64;
    for n in [2usize, 4, 8] {
        let s = worked_scenario(n);
        let exact = exact_round_distribution(&s.theoretical, &s.actual).map_err(|e| e.to_string())?.outcomes();
        let probe = prepare_uniform_superposition(n).unwrap();
        let reference = build_reference_state(&s.theoretical, &vec![true; n]).unwrap();
        let kernel = RoundKernel::new(&probe, &s.actual, &reference).unwrap();
        let mut rng = trial_stream(0xAC1, n as u64);
        let mut counts = vec![0u64; 2 * n + 1];
        for _ in 0..ROUNDS {
            counts[match kernel.sample(&mut rng) {
                RoundOutcome::Absorbed { pixel } => pixel,
                RoundOutcome::Consistent => n,
                RoundOutcome::Inconsistent { beam } => n + 1 + beam,
            }] += 1;
        }
        for (slot, (&p, &c)) in exact.iter().zip(&counts).enumerate() {
            let f = c as f64 / ROUNDS as f64;
            let sigma = (p * (1.0 - p) / ROUNDS as f64).sqrt();
            if sigma == 0.0 {
                if c != 0 {
                    return Err(format!("N={n} outcome {slot}: probability 0 but observed {c} times"));
                }
                continue;
            }
            let z = (f - p).abs() / sigma;
            worst = worst.max(z);
            if z > 4.0 {
                return Err(format!("N={n} outcome {slot}: exact {p}, sampled {f} ({z:.2} sigma)"));
            }
        }
        if n == 2 {
            let hand = [0.0, 3.0 / 8.0, 9.0 / 16.0, 1.0 / 32.0, 1.0 / 32.0];
            if exact.iter().zip(&hand).any(|(a, b)| (a - b).abs() > 1e-12) {
                return Err(format!("N=2 oracle {exact:?} differs from {hand:?}"));
            }
        }
    }
    Ok(format!("31 outcomes over N in {{2,4,8}}, worst deviation {worst:.2} sigma; N=2 hand values exact"))
}

fn ac2() -> Result<String, String> {
    const TRIALS: u64 = 10_000;
    let mut rng = trial_stream(0xAC2, 0);
    let theoretical = sample_random_array::<f64, _>(64, &mut rng).unwrap();
    let config = DefectTestConfig::new(0.2, 0.05, 1);
    let stats = run_trials(
        &Experiment::QuantumDefect { scenario: DefectScenario64::clean(theoretical), config },
        TRIALS,
        0xAC2,
    )
    .map_err(|e| e.to_string())?;
    ensure(
        stats.successes == 0,
        format!("{}/{} clean trials reported a defect (N=64 random array)", stats.successes, stats.trials),
    )
}

fn defect_scenario_64(defect: Complex64) -> DefectScenario64 {
    let t = PixelArray64::from_real(&[0.7; 64]).unwrap();
    DefectScenario64::planted(t, &[(31, defect)]).unwrap()
}

fn ac3() -> Result<String, String> {
    const TRIALS: u64 = 1_000;
    let config = DefectTestConfig::new(0.2, 0.05, 1);
    let stats = run_trials(
        &Experiment::QuantumDefect { scenario: defect_scenario_64(Complex64::new(0.5, 0.0)), config },
        TRIALS,
        0xAC3,
    )
    .map_err(|e| e.to_string())?;
    let missed = stats.trials - stats.successes;
    let fn_upper = 1.0 - stats.ci_low;
    ensure(
        fn_upper <= 0.05,
        format!("{missed}/{} missed, false-negative 95% Wilson upper bound {fn_upper:.4} (need <= 0.05)", stats.trials),
    )
}

fn ac4() -> Result<String, String> {
    let mut probs = Vec::new();
    for k in 3..=9 {
        let n = 1usize << k;
        let t = PixelArray64::from_real(&vec![0.7; n]).unwrap();
        let a = t.with_pixel(0, Complex64::new(0.5, 0.0)).unwrap();
        let set: BTreeSet<usize> = [0].into();
        probs.push(exact_misidentification_probability(&t, &a, &set).map_err(|e| e.to_string())?.p_misid);
    }
    let ratios: Vec<f64> = probs.windows(2).map(|w| w[1] / w[0]).collect();
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.4}")).collect();
    ensure(
        ratios.iter().all(|r| (0.35..=0.75).contains(r)),
        format!("p(2N)/p(N) for N=8..512: [{}]", shown.join(", ")),
    )
}

fn ac5() -> Result<String, String> {
    let template = SweepTemplate { base: Complex64::new(0.7, 0.0), defect: Complex64::new(0.5, 0.0) };
    let config = DefectTestConfig::new(0.2, 0.05, 1);
    let rows = scaling_sweep(&[16, 64, 256, 1024], &template, &config, 2_000, 0xAC5).map_err(|e| e.to_string())?;
    let xs: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.ratio).collect();
    let fit = fit_line(&xs, &ys, DEFAULT_CONFIDENCE).map_err(|e| e.to_string())?;
    let increasing = ys.windows(2).all(|w| w[1] > w[0]);
    let shown: Vec<String> = rows.iter().map(|r| format!("{}:{:.2}", r.n, r.ratio)).collect();
    ensure(
        increasing && fit.slope_ci.0 > 0.0,
        format!(
            "ratios [{}], slope {:.3} per ln N, 95% CI ({:.3}, {:.3})",
            shown.join(", "),
            fit.slope,
            fit.slope_ci.0,
            fit.slope_ci.1
        ),
    )
}

fn ac6() -> Result<String, String> {
    let mut tails = Vec::new();
    for n in [4usize, 16, 64] {
        let pattern = PixelArray64::from_real(&vec![1.0; n]).unwrap();
        let mut rng = trial_stream(0xAC6, n as u64);
        tails.push(exact_overlap_tail(n, &pattern, 10_000, &mut rng).map_err(|e| e.to_string())?);
    }
    ensure(
        tails.windows(2).all(|w| w[1] <= w[0]) && tails[2] < 0.01,
        format!("tail fractions N=4: {}, N=16: {}, N=64: {}", tails[0], tails[1], tails[2]),
    )
}

fn ac7() -> Result<String, String> {
    const TRIALS: u64 = 10_000;
    let n = 64;
    let mut rng = trial_stream(0xAC7, 0);
    let pattern = sample_random_array::<f64, _>(n, &mut rng).unwrap();
    let config = RareSearchConfig::new(0.1, 0.05, pattern.clone()).map_err(|e| e.to_string())?;
    let x = required_successes(n, 0.05, 0.1).map_err(|e| e.to_string())?;

    let present = run_trials(
        &Experiment::QuantumRare { actual: ArraySource::Fixed(pattern), config: config.clone() },
        1_000,
        0xAC7,
    )
    .map_err(|e| e.to_string())?;
    if present.successes != present.trials {
        return Err(format!("pattern present accepted only {}/{}", present.successes, present.trials));
    }

    let random = run_trials(&Experiment::QuantumRare { actual: ArraySource::UniformDisc, config }, TRIALS, 0xAC7 + 1)
        .map_err(|e| e.to_string())?;
    let bound = (n as f64).powf(-(x as f64) / 2.0);
    let limit = bound + 4.0 * (bound * (1.0 - bound) / TRIALS as f64).sqrt();
    ensure(
        random.point_estimate <= limit,
        format!(
            "present {}/{} accepted; random false-accept {}/{} = {:.5} vs bound {:.5} + 4 sigma = {:.5} (x = {x})",
            present.successes, present.trials, random.successes, random.trials, random.point_estimate, bound, limit
        ),
    )
}

fn ac8() -> Result<String, String> {
    const TRIALS: u64 = 1_000;
    let theta = 2.0 * (1.0f64 / 7.0).asin();
    let scenario = defect_scenario_64(Complex64::from_polar(0.7, theta));
    let config = DefectTestConfig::new(0.2, 0.05, 1);
    let quantum = run_trials(
        &Experiment::QuantumDefect { scenario: scenario.clone(), config: config.clone() },
        TRIALS,
        0xAC8,
    )
    .map_err(|e| e.to_string())?;
    let classical = run_trials(&Experiment::ClassicalDefect { scenario, config: config.clone() }, TRIALS, 0xAC8 + 1)
        .map_err(|e| e.to_string())?;
    ensure(
        quantum.point_estimate >= 0.95 && classical.point_estimate <= config.delta,
        format!(
            "quantum detects {}/{} ({:.3}), classical flags {}/{} ({:.3}, need <= {})",
            quantum.successes,
            quantum.trials,
            quantum.point_estimate,
            classical.successes,
            classical.trials,
            classical.point_estimate,
            config.delta
        ),
    )
}

const CLI_SCENARIO: &str = r#"
[array]
fill = [0.7, 0.0]
n = 64

[[defects]]
index = 32
new_value = { mag = 0.7, phase = 0.2866951378107307 }

[config]
epsilon = 0.2
delta = 0.05
max_defects = 1

[rare_search]
prior_p = 0.1
actual = "random"

[sweep]
base = [0.7, 0.0]
defect = [0.5, 0.0]
"#;

fn ac9() -> Result<String, String> {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let scenario = dir.path().join("scenario.toml");
    std::fs::write(&scenario, CLI_SCENARIO).map_err(|e| e.to_string())?;
    let sc = scenario.to_str().unwrap();
    let invocations: [&[&str]; 7] = [
        &["defect-test", "--scenario", sc, "--trials", "200", "--seed", "3"],
        &["defect-test", "--scenario", sc, "--trials", "200", "--seed", "3", "--classical"],
        &["rare-search", "--scenario", sc, "--trials", "500", "--seed", "3"],
        &["rare-search", "--scenario", sc, "--trials", "500", "--seed", "3", "--classical"],
        &["sweep", "--scenario", sc, "--ns", "16,32,64", "--trials", "100", "--seed", "3"],
        &["overlap-tail", "--n", "4,16,64", "--samples", "2000", "--seed", "3"],
        &["validate-oracle", "--n", "4", "--samples", "20000", "--seed", "3"],
    ];
    for args in invocations {
        let mut outputs = Vec::new();
        for attempt in 0..2 {
            let out = dir.path().join(format!("{}-{attempt}.csv", args[0]));
            let status = Command::new(env!("CARGO_BIN_EXE_interrogate"))
                .args(args)
                .arg("--out")
                .arg(&out)
                .output()
                .map_err(|e| e.to_string())?;
            if status.status.code() != Some(0) {
                return Err(format!("`{}` exited with {:?}: {}", args.join(" "), status.status.code(),
                    String::from_utf8_lossy(&status.stderr)));
            }
            outputs.push((std::fs::read(&out).map_err(|e| e.to_string())?, status.stdout));
        }
        if outputs[0] != outputs[1] {
            return Err(format!("`{}` produced different output on the same seed", args.join(" ")));
        }
    }
    Ok(format!("{} subcommand invocations byte-identical on repeat", invocations.len()))
}

fn main() {
    let mut suite = Suite { failed: 0 };
    let criteria: [(&str, &str, Check); 9] = [
        ("AC1", "oracle equivalence", ac1),
        ("AC2", "exact soundness", ac2),
        ("AC3", "detection power", ac3),
        ("AC4", "mis-identification scaling", ac4),
        ("AC5", "logarithmic advantage", ac5),
        ("AC6", "overlap tail", ac6),
        ("AC7", "rare-search completeness and bound", ac7),
        ("AC8", "phase-blindness separation", ac8),
        ("AC9", "CLI determinism", ac9),
    ];
    for (id, title, check) in criteria {
        let started = Instant::now();
        suite.record(id, title, started, check());
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - suite.failed, criteria.len());
    if suite.failed > 0 {
        std::process::exit(1);
    }
}
