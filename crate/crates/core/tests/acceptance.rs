//! Acceptance gate: every criterion at its pinned tolerance, one line each.
//!
//! Run with `cargo test -p scint-core --test acceptance`. Exits non-zero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use scint_core::analysis::{geostationary_elevation, monthly_profile};
use scint_core::climate::{annual_means, builtin_dataset, builtin_site, load_csv, write_csv, MonthlyRecord, SiteClimate};
use scint_core::model::{self, averaging_function, ClimateSample, LinkConfig, ModelVariant};
use scint_core::TemperatureSeries;

const KU_GHZ: f64 = 10.95;
const KA_GHZ: f64 = 20.0;
const C_GHZ: f64 = 6.0;
const PROPERTY_CASES: u32 = 1000;

struct Gate {
    passed: usize,
    failed: Vec<String>,
}

impl Gate {
    fn new() -> Self {
        Gate {
            passed: 0,
            failed: Vec::new(),
        }
    }

    fn criterion(&mut self, id: u32, name: &str, f: impl FnOnce() -> Result<String, String>) {
        let start = Instant::now();
        let outcome = f();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(detail) => {
                self.passed += 1;
                println!("[PASS] {id:>2}. {name}: {detail} ({ms:.1} ms)");
            }
            Err(detail) => {
                self.failed.push(format!("{id}. {name}"));
                println!("[FAIL] {id:>2}. {name}: {detail} ({ms:.1} ms)");
            }
        }
    }
}

fn check(ok: bool, msg: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg)
    }
}

fn within(label: &str, v: f64, lo: f64, hi: f64) -> Result<(), String> {
    check((lo..=hi).contains(&v), format!("{label} = {v:.6} not in [{lo}, {hi}]"))
}

fn site(name: &str) -> SiteClimate {
    builtin_site(name).expect("builtin site")
}

fn annual_fade(name: &str, series: TemperatureSeries, cfg: &LinkConfig) -> f64 {
    let sample = annual_means(&site(name)).sample(series);
    model::predict(&sample, cfg).unwrap().fade_depth_db
}

fn clamp_diameter(frequency_ghz: f64, variant: ModelVariant) -> Option<f64> {
    let climate = annual_means(&site("Dhaka")).sample(TemperatureSeries::Max);
    (0..=2800).map(|i| 2.0 + f64::from(i) * 0.01).find(|&d| {
        let mut cfg = LinkConfig::baseline(frequency_ghz, 5.0).with_variant(variant);
        cfg.antenna_diameter_m = d;
        model::predict(&climate, &cfg).unwrap().radicand_clamped
    })
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn climate() -> impl Strategy<Value = ClimateSample> {
    (-40.0f64..=60.0, 0.0f64..=100.0).prop_map(|(t, h)| ClimateSample {
        temperature_c: t,
        relative_humidity_pct: h,
    })
}

fn any_link() -> impl Strategy<Value = LinkConfig> {
    (1.0f64..40.0, 4.01f64..=90.0, 0.3f64..40.0, 0.05f64..=1.0, 0.01f64..=50.0, any::<bool>()).prop_map(
        |(f, el, d, eta, p, paper)| {
            let mut cfg = LinkConfig::baseline(f, el);
            cfg.antenna_diameter_m = d;
            cfg.antenna_efficiency = eta;
            cfg.time_percent = p;
            cfg.variant = if paper {
                ModelVariant::PaperCompat
            } else {
                ModelVariant::ItuStandard
            };
            cfg
        },
    )
}

fn random_site() -> impl Strategy<Value = SiteClimate> {
    proptest::collection::vec((0.0f64..=100.0, -40.0f64..=60.0, -40.0f64..=60.0), 12).prop_map(|cells| {
        let recs = cells.into_iter().enumerate().map(|(i, (rh, a, b))| MonthlyRecord {
            month: i as u8 + 1,
            rh_pct: rh,
            t_max_c: a.max(b),
            t_min_c: a.min(b),
        });
        SiteClimate::new("R", 12.5, -45.25, recs).unwrap()
    })
}

fn main() -> ExitCode {
    let mut gate = Gate::new();
    let ku = LinkConfig::baseline(KU_GHZ, 5.0);

    gate.criterion(1, "time-percentage anchors", || {
        let a1 = model::time_percentage_factor(1.0).unwrap();
        let a001 = model::time_percentage_factor(0.01).unwrap();
        let a50 = model::time_percentage_factor(50.0).unwrap();
        check(a1 == 3.0, format!("a(1) = {a1} != 3.0"))?;
        check((a001 - 7.196).abs() < 5e-4, format!("a(0.01) = {a001}"))?;
        within("a(50)", a50, 0.0, 0.01)?;
        Ok(format!("a(1) = {a1}, a(0.01) = {a001:.6}, a(50) = {a50:.6}"))
    });

    gate.criterion(2, "step oracles", || {
        let es = model::saturation_vapour_pressure(25.0).unwrap();
        let nw = model::wet_refractivity(32.0, 83.0).unwrap();
        let l = model::effective_path_length(5.0, 1000.0).unwrap();
        let (g, _) = averaging_function(0.0375, ModelVariant::ItuStandard);
        check((es - 31.9).abs() <= 0.05, format!("e_s(25) = {es}"))?;
        check((nw - 160.6).abs() <= 0.3, format!("N_wet(32, 83) = {nw}"))?;
        check((l - 11_386.0).abs() <= 5.0, format!("L(5°) = {l}"))?;
        check((g - 0.890).abs() <= 0.003, format!("g(0.0375) = {g}"))?;
        Ok(format!("e_s = {es:.4} hPa, N_wet = {nw:.3} ppm, L = {l:.2} m, g = {g:.5}"))
    });

    gate.criterion(3, "annual max-series fade and city ordering at Ku, 5°", || {
        let raj = annual_fade("Rajshahi", TemperatureSeries::Max, &ku);
        let chi = annual_fade("Chittagong", TemperatureSeries::Max, &ku);
        let dha = annual_fade("Dhaka", TemperatureSeries::Max, &ku);
        check((raj - 8.5).abs() <= 0.5, format!("Rajshahi = {raj} dB, want 8.5 ± 0.5"))?;
        check(raj > chi && chi > dha, format!("ordering broken: {raj} > {chi} > {dha}"))?;
        Ok(format!("Rajshahi {raj:.3} > Chittagong {chi:.3} > Dhaka {dha:.3} dB"))
    });

    gate.criterion(4, "min-series elevation reduction ratios", || {
        let mut out = Vec::new();
        for s in builtin_dataset() {
            let sample = annual_means(&s).sample(TemperatureSeries::Min);
            let at = |el: f64| model::predict(&sample, &LinkConfig::baseline(KU_GHZ, el)).unwrap().fade_depth_db;
            let r10 = at(10.0) / at(5.0);
            let r20 = at(20.0) / at(5.0);
            within(&format!("{} 10°/5°", s.name()), r10, 0.33, 0.45)?;
            within(&format!("{} 20°/5°", s.name()), r20, 0.13, 0.22)?;
            out.push((r10, r20));
        }
        Ok(format!("10°/5° = {:.4}, 20°/5° = {:.4}", out[0].0, out[0].1))
    });

    gate.criterion(5, "0.1 % vs 0.01 % time ratio", || {
        let raj = annual_means(&site("Rajshahi")).sample(TemperatureSeries::Max);
        let mut p01 = ku;
        p01.time_percent = 0.1;
        let f001 = model::predict(&raj, &ku).unwrap().fade_depth_db;
        let f01 = model::predict(&raj, &p01).unwrap().fade_depth_db;
        let ratio = f01 / f001;
        let a_ratio = model::time_percentage_factor(0.1).unwrap() / model::time_percentage_factor(0.01).unwrap();
        check((ratio - a_ratio).abs() < 1e-12, format!("fade ratio {ratio} != a ratio {a_ratio}"))?;
        within("A(0.1)/A(0.01)", ratio, 0.65, 0.75)?;
        Ok(format!("ratio = {ratio:.4}"))
    });

    gate.criterion(6, "monsoon vs winter doubling (max series, Ku and Ka)", || {
        let mut detail = Vec::new();
        let mut bad = Vec::new();
        for f in [KU_GHZ, KA_GHZ] {
            for s in builtin_dataset() {
                let prof = monthly_profile(&s, &LinkConfig::baseline(f, 5.0)).unwrap();
                let ratio = prof.mean_over(TemperatureSeries::Max, 6, 9) / prof.mean_over(TemperatureSeries::Max, 1, 3);
                let entry = format!("{}@{f} = {ratio:.3}", s.name());
                if !(1.6..=2.4).contains(&ratio) {
                    bad.push(entry.clone());
                }
                detail.push(entry);
            }
        }
        check(bad.is_empty(), format!("outside [1.6, 2.4]: {}", bad.join(", ")))?;
        Ok(detail.join(", "))
    });

    gate.criterion(7, "large-dish nullification", || {
        let ka = clamp_diameter(KA_GHZ, ModelVariant::PaperCompat).ok_or("no clamp at 20 GHz")?;
        let kuu = clamp_diameter(KU_GHZ, ModelVariant::PaperCompat).ok_or("no clamp at 10.95 GHz")?;
        within("clamp D at 20 GHz", ka, 18.0, 21.0)?;
        within("clamp D at 10.95 GHz", kuu, 24.0, 27.0)?;
        for f in [KA_GHZ, KU_GHZ] {
            if let Some(d) = clamp_diameter(f, ModelVariant::ItuStandard) {
                if d <= 30.0 {
                    return Err(format!("ITU variant clamps at {d} m for {f} GHz"));
                }
            }
        }
        Ok(format!("paper variant clamps at {ka:.2} m (Ka), {kuu:.2} m (Ku); ITU variant none ≤ 30 m"))
    });

    gate.criterion(8, "geostationary geometry and fade at 152 E", || {
        let el = geostationary_elevation(26.5, 88.34, 152.0).unwrap();
        check((el - 15.0).abs() <= 0.3, format!("elevation = {el}"))?;
        let cfg = LinkConfig::baseline(KU_GHZ, el);
        let mut worst: f64 = 0.0;
        for s in builtin_dataset() {
            let f = model::predict(&annual_means(&s).sample(TemperatureSeries::Max), &cfg)
                .unwrap()
                .fade_depth_db;
            check(f <= 2.1, format!("{} fade = {f} dB", s.name()))?;
            worst = worst.max(f);
        }
        Ok(format!("elevation = {el:.3}°, worst fade = {worst:.3} dB"))
    });

    gate.criterion(9, "randomized property suites", || {
        run_property("eq9 identity", (climate(), any_link()), |(c, cfg)| {
            let t = model::predict(&c, &cfg).unwrap();
            prop_assert!((t.fade_depth_db - t.a_p * t.sigma_db).abs() <= 1e-12 * t.fade_depth_db.max(1e-300));
            Ok(())
        })?;
        run_property("elevation monotone", (climate(), 4.0f64..=20.0), |(c, f)| {
            let fades: Vec<f64> = (5..=90)
                .map(|el| model::predict(&c, &LinkConfig::baseline(f, f64::from(el))).unwrap().fade_depth_db)
                .collect();
            prop_assert!(fades.windows(2).all(|w| w[1] < w[0]));
            Ok(())
        })?;
        run_property("frequency monotone", climate(), |c| {
            let fades: Vec<f64> = (0..=32)
                .map(|i| model::predict(&c, &LinkConfig::baseline(4.0 + 0.5 * f64::from(i), 5.0)).unwrap().fade_depth_db)
                .collect();
            prop_assert!(fades.windows(2).all(|w| w[1] > w[0]));
            Ok(())
        })?;
        run_property("humidity monotone", (-40.0f64..=60.0, 0.0f64..99.0, 0.001f64..1.0), |(t, h, dh)| {
            let at = |h: f64| {
                model::predict(&ClimateSample { temperature_c: t, relative_humidity_pct: h }, &ku)
                    .unwrap()
                    .fade_depth_db
            };
            prop_assert!(at(h + dh) > at(h));
            Ok(())
        })?;
        run_property("percent monotone", (0.01f64..50.0, 1e-6f64..1.0), |(p, dp)| {
            let hi = (p + dp).min(50.0);
            prop_assume!(hi > p);
            prop_assert!(model::time_percentage_factor(hi).unwrap() < model::time_percentage_factor(p).unwrap());
            Ok(())
        })?;
        run_property("clamp safety", (climate(), any_link()), |(c, cfg)| {
            let t = model::predict(&c, &cfg).unwrap();
            prop_assert!(t.g >= 0.0);
            if t.radicand_clamped {
                prop_assert_eq!(t.fade_depth_db, 0.0);
            }
            Ok(())
        })?;
        run_property("csv round trip", random_site(), |s| {
            let mut buf = Vec::new();
            write_csv(std::slice::from_ref(&s), &mut buf).unwrap();
            prop_assert_eq!(load_csv(buf.as_slice()).unwrap(), vec![s]);
            Ok(())
        })?;
        run_property(
            "annual means permutation",
            (random_site(), Just((1..=12u8).collect::<Vec<_>>()).prop_shuffle()),
            |(s, perm)| {
                let moved = s.months().iter().zip(&perm).map(|(m, &p)| MonthlyRecord { month: p, ..*m });
                let other = SiteClimate::new("R", 0.0, 0.0, moved).unwrap();
                let (a, b) = (annual_means(&s), annual_means(&other));
                prop_assert!((a.rh_pct - b.rh_pct).abs() < 1e-12);
                prop_assert!((a.t_max_c - b.t_max_c).abs() < 1e-12);
                prop_assert!((a.t_min_c - b.t_min_c).abs() < 1e-12);
                Ok(())
            },
        )?;
        Ok(format!("8 suites × {PROPERTY_CASES} cases"))
    });

    gate.criterion(10, "frequency range endpoints at 5° (Rajshahi)", || {
        let c_min = annual_fade("Rajshahi", TemperatureSeries::Min, &LinkConfig::baseline(C_GHZ, 5.0));
        let ka_max = annual_fade("Rajshahi", TemperatureSeries::Max, &LinkConfig::baseline(KA_GHZ, 5.0));
        within("C-band min-series fade", c_min, 2.5, 4.5)?;
        check(ka_max >= 11.0, format!("Ka max-series fade = {ka_max} < 11"))?;
        Ok(format!("C min = {c_min:.3} dB, Ka max = {ka_max:.3} dB"))
    });

    println!();
    println!("acceptance: {} passed, {} failed", gate.passed, gate.failed.len());
    if gate.failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        for f in &gate.failed {
            println!("  failed: {f}");
        }
        ExitCode::FAILURE
    }
}
