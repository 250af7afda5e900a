//! Acceptance suite: every criterion runs at its stated tolerance and
//! prints one PASS/FAIL line (visible with `--nocapture`).
//!
//! Criteria 3 and 4 compare recomputed results against the published
//! tables at print tolerance. Three published cells are arithmetically
//! inconsistent with the study's own formulas (the six fuzzy-row profits
//! share one aggregation slip; one lot size is truncated in print), so the
//! corresponding assertions fail by design rather than being loosened;
//! `deviations.txt` from `reproduce-paper` carries the same facts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

use eoq_cli::reference;
use eoq_core::{
    concavity_check, grid_search_oracle, optimal_q, optimal_q_classic, simulate, DistributionSpec,
    ModelParams, SimulationConfig, Tfn, FD_RELATIVE_STEP,
};

/// Collects every violated assertion of a criterion before reporting.
struct Criterion {
    id: u32,
    failures: Vec<String>,
}

impl Criterion {
    fn new(id: u32) -> Self {
        Self {
            id,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(detail());
        }
    }

    fn finish(self, summary: &str) {
        if self.failures.is_empty() {
            println!("[acceptance] criterion {}: PASS — {summary}", self.id);
        } else {
            println!(
                "[acceptance] criterion {}: FAIL — {summary} ({} check(s) failed)",
                self.id,
                self.failures.len()
            );
            panic!(
                "criterion {} failed:\n  {}",
                self.id,
                self.failures.join("\n  ")
            );
        }
    }
}

fn base_params() -> ModelParams {
    reference::base_params()
}

fn fuzzy_row(i: usize) -> ModelParams {
    let mut p = base_params();
    p.demand = reference::demand_triples()[i];
    p
}

#[test]
fn criterion_01_base_crisp_case() {
    let mut c = Criterion::new(1);
    let policy = optimal_q(&base_params()).unwrap();
    c.check((policy.q_star - 1394.9).abs() <= 0.1, || {
        format!("Q* = {} not within 0.1 of 1394.9", policy.q_star)
    });
    c.check((policy.profit - 1_212_072.0).abs() <= 1.0, || {
        format!("profit = {} not within 1 of 1212072", policy.profit)
    });
    c.finish("base crisp policy Q* = 1394.9 ± 0.1, profit = 1212072 ± 1");
}

#[test]
fn criterion_02_table1_defuzzified_demand() {
    let mut c = Criterion::new(2);
    let triples = reference::demand_triples();
    let exact = [
        (0, 35_000.0),
        (1, 40_000.0),
        (2, 45_000.0),
        (3, 55_000.0),
        (5, 65_000.0),
    ];
    for (row, want) in exact {
        let got = triples[row].gmir();
        c.check(got == want, || {
            format!("row {} defuzzified {} != {}", row + 1, got, want)
        });
    }
    let row5 = triples[4].gmir();
    c.check((row5 - 63_333.33).abs() <= 0.01, || {
        format!("row 5 defuzzified {row5} not within 0.01 of 63333.33")
    });

    let dir = TempDir::new().unwrap();
    let summary = reference::reproduce(dir.path()).unwrap();
    c.check(
        summary
            .deviations
            .iter()
            .any(|d| d.contains("table1.csv row 5 defuzzified")),
        || "row 5 print discrepancy not flagged in deviations.txt".to_string(),
    );
    c.finish("table 1 defuzzified demand exact on rows 1-4 and 6; row 5 = 63333.33 flagged");
}

#[test]
fn criterion_03_table2_reproduction() {
    let mut c = Criterion::new(3);
    for (i, (printed_q, printed_profit)) in reference::TABLE2_PRINTED.iter().enumerate() {
        let policy = optimal_q(&fuzzy_row(i)).unwrap();
        c.check((policy.q_star - printed_q).abs() <= 0.05, || {
            format!(
                "row {} Q* = {} not within 0.05 of published {printed_q}",
                i + 1,
                policy.q_star
            )
        });
        c.check((policy.profit - printed_profit).abs() <= 0.5, || {
            format!(
                "row {} profit = {} not within 0.5 of published {printed_profit} \
                 (the published fuzzy profits weight the lot-size terms at 3/6 \
                 instead of 6/6 in the graded-mean aggregation; the model's own \
                 closed form cannot reproduce them — see deviations.txt)",
                i + 1,
                policy.profit
            )
        });
    }
    c.finish("table 2: six (Q*, profit) pairs within 0.05 / 0.5 of print");
}

#[test]
fn criterion_04_table4_reproduction() {
    let mut c = Criterion::new(4);
    let base = base_params();
    let dir = TempDir::new().unwrap();
    let summary = reference::reproduce(dir.path()).unwrap();

    for experiment in reference::sweep_experiments() {
        let rows =
            eoq_core::one_way_sweep(&base, experiment.parameter, &experiment.values).unwrap();
        for (i, row) in rows.iter().enumerate() {
            let q = row.q_star.unwrap();
            let profit = row.profit.unwrap();
            let (printed_q, printed_profit) = experiment.printed[i];
            let cell = format!("{} = {}", experiment.parameter, row.value);
            c.check((q - printed_q).abs() <= 0.1, || {
                format!(
                    "{cell}: Q* = {q} not within 0.1 of published {printed_q} \
                     (the published cell is the continuous value truncated in print; \
                     see deviations.txt)"
                )
            });
            let is_typo_cell = (experiment.parameter == "h_s" && row.value == 1.0)
                || (experiment.parameter == "E(r_w)" && row.value == 0.025);
            if is_typo_cell {
                let recomputed = if experiment.parameter == "h_s" {
                    1_212_076.6
                } else {
                    1_211_231.0
                };
                c.check((profit - recomputed).abs() <= 2.0, || {
                    format!("{cell}: profit = {profit} not within 2 of recomputed {recomputed}")
                });
                c.check(
                    summary
                        .deviations
                        .iter()
                        .any(|d| d.contains(&format!("table4.csv {cell} profit"))),
                    || format!("{cell}: print discrepancy missing from deviations.txt"),
                );
            } else {
                c.check((profit - printed_profit).abs() <= 1.0, || {
                    format!("{cell}: profit = {profit} not within 1 of published {printed_profit}")
                });
            }
        }
    }
    c.finish("table 4: 30 cells within 0.1 / 1 of print, typo cells recomputed and flagged");
}

#[test]
fn criterion_05_tornado_claims() {
    let mut c = Criterion::new(5);
    let base = base_params();
    let ranges = reference::figure_ranges();

    let q_report = eoq_core::tornado(&base, &ranges, eoq_core::TornadoMetric::QStar).unwrap();
    let widest_q = &q_report.bars[0];
    c.check(widest_q.parameter == "h_w", || {
        format!("widest Q* bar is {}, expected h_w", widest_q.parameter)
    });
    c.check(
        (widest_q.metric_at_low - 2746.9).abs() <= 0.1
            && (widest_q.metric_at_high - 885.0).abs() <= 0.1,
        || {
            format!(
                "h_w bar endpoints ({}, {}) != (2746.9, 885)",
                widest_q.metric_at_low, widest_q.metric_at_high
            )
        },
    );

    let p_report = eoq_core::tornado(&base, &ranges, eoq_core::TornadoMetric::Profit).unwrap();
    let widest_p = &p_report.bars[0];
    c.check(widest_p.parameter == "d", || {
        format!("widest profit bar is {}, expected d", widest_p.parameter)
    });
    c.check(
        (widest_p.metric_at_low - 1_224_827.6).abs() <= 1.0
            && (widest_p.metric_at_high - 1_186_562.3).abs() <= 1.0,
        || {
            format!(
                "d bar endpoints ({}, {}) != (1224827.6, 1186562.3)",
                widest_p.metric_at_low, widest_p.metric_at_high
            )
        },
    );
    c.finish("tornado: widest Q* bar h_w (2746.9/885), widest profit bar d (1224827.6/1186562.3)");
}

fn random_valid_params(rng: &mut ChaCha8Rng) -> ModelParams {
    loop {
        let low: f64 = rng.random_range(2_000.0..40_000.0);
        let peak = low + rng.random_range(0.0..20_000.0);
        let high = peak + rng.random_range(0.0..30_000.0);
        let h_w = rng.random_range(2.0..15.0);
        let c = rng.random_range(8.0..40.0);
        let e_scrap = rng.random_range(0.0..0.15);
        let jensen_floor = (1.0 - e_scrap) * (1.0 - e_scrap);
        let p = ModelParams {
            demand: Tfn::new(low, peak, high).unwrap(),
            screening_rate: rng.random_range(200_000.0..2_000_000.0),
            ordering_cost: rng.random_range(20.0..300.0),
            selling_price: c * rng.random_range(1.5..3.0),
            salvage_value: c * rng.random_range(0.0..0.9),
            inspection_cost: rng.random_range(0.0..2.0),
            purchase_cost: c,
            holding_rework: h_w,
            holding_scrap: h_w * rng.random_range(0.05..0.95),
            e_scrap,
            e_rework: rng.random_range(0.0..0.2),
            e_one_minus_scrap_sq: jensen_floor + rng.random_range(0.0..1.0) * (1.0 - jensen_floor),
        };
        p.validate().unwrap();
        if let Ok(policy) = optimal_q(&p) {
            if policy.denominator > 0.0 && policy.q_star < 20_000.0 {
                return p;
            }
        }
    }
}

/// Fine grid around a coarse bracket; valid because the objective is
/// strictly concave in q whenever the ordering cost is positive.
fn refined_oracle(c: &mut Criterion, p: &ModelParams, q_min: f64, q_max: f64) -> f64 {
    let coarse = grid_search_oracle(p, q_min, q_max, 1.0).unwrap();
    c.check(coarse.q > q_min && coarse.q < q_max, || {
        format!("coarse oracle hit the grid edge at q = {}", coarse.q)
    });
    grid_search_oracle(p, coarse.q - 2.0, coarse.q + 2.0, 0.01)
        .unwrap()
        .q
}

#[test]
fn criterion_06_oracle_equivalence() {
    let mut c = Criterion::new(6);

    // Base case plus the six fuzzy rows, exhaustively at step 0.01.
    let mut pinned = vec![base_params()];
    pinned.extend((0..6).map(fuzzy_row));
    for p in &pinned {
        let closed = optimal_q(p).unwrap().q_star;
        let best = grid_search_oracle(p, 100.0, 5_000.0, 0.01).unwrap();
        c.check((best.q - closed).abs() <= 0.01, || {
            format!(
                "demand {:?}: oracle {} vs closed form {closed}",
                p.demand, best.q
            )
        });
    }

    // Fifty randomized parameter sets with a positive denominator.
    let mut rng = ChaCha8Rng::seed_from_u64(6_283_185);
    for case in 0..50 {
        let p = random_valid_params(&mut rng);
        let closed = optimal_q(&p).unwrap().q_star;
        let bracket = 10.0 * optimal_q_classic(&p).max(closed);
        let oracle_q = refined_oracle(&mut c, &p, 1.0, bracket);
        c.check((oracle_q - closed).abs() <= 0.01, || {
            format!("case {case}: oracle {oracle_q} vs closed form {closed} for {p:?}")
        });
    }
    c.finish("closed form matches the 0.01-step grid oracle on 7 pinned + 50 random cases");
}

#[test]
fn criterion_07_reduction_checks() {
    let mut c = Criterion::new(7);

    let mut reduced = base_params();
    reduced.e_rework = 0.0;
    reduced.screening_rate = 1e12;
    let full = optimal_q(&reduced).unwrap().q_star;
    let classic = optimal_q_classic(&reduced);
    c.check(((full - classic) / classic).abs() <= 1e-6, || {
        format!("optimal_q {full} vs classic {classic} beyond 1e-6 relative")
    });

    let mut perfect = reduced.clone();
    perfect.e_one_minus_scrap_sq = 1.0;
    let plain_eoq = (2.0 * perfect.ordering_cost * 50_000.0 / perfect.holding_rework).sqrt();
    let classic_perfect = optimal_q_classic(&perfect);
    c.check(classic_perfect == plain_eoq, || {
        format!("classic with unit second moment {classic_perfect} != sqrt(2AD/h_w) = {plain_eoq}")
    });
    let full_perfect = optimal_q(&perfect).unwrap().q_star;
    c.check(
        ((full_perfect - plain_eoq) / plain_eoq).abs() <= 1e-6,
        || format!("optimal_q {full_perfect} vs plain EOQ {plain_eoq} beyond 1e-6 relative"),
    );
    c.finish("no-rework/instant-screening limits recover the classic lot sizes");
}

fn ordered_bits(x: f64) -> u64 {
    let b = x.to_bits();
    if b >> 63 == 1 {
        !b
    } else {
        b | (1u64 << 63)
    }
}

fn ulp_diff(a: f64, b: f64) -> u64 {
    ordered_bits(a).abs_diff(ordered_bits(b))
}

#[test]
fn criterion_08_fuzzy_property_suite() {
    let mut c = Criterion::new(8);
    let mut rng = ChaCha8Rng::seed_from_u64(88);

    // Graded-mean linearity under scaling and addition, within 4 ulp.
    for _ in 0..2_000 {
        let low = rng.random_range(0.0..1e6);
        let peak = low + rng.random_range(0.0..1e5);
        let high = peak + rng.random_range(0.0..1e5);
        let v = Tfn::new(low, peak, high).unwrap();
        let k = rng.random_range(-1e6..1e6);
        c.check(ulp_diff(v.scale(k).gmir(), k * v.gmir()) <= 4, || {
            format!("gmir(scale({v}, {k})) drifted beyond 4 ulp")
        });
        let w = Tfn::new(low / 2.0, peak / 2.0 + 1.0, high + 3.0).unwrap();
        c.check(ulp_diff((v + w).gmir(), v.gmir() + w.gmir()) <= 4, || {
            format!("gmir({v} + {w}) drifted beyond 4 ulp")
        });
    }

    // Degenerate demand: the fuzzy pipeline collapses to the crisp model.
    for _ in 0..50 {
        let d = rng.random_range(5_000.0..100_000.0);
        let q = rng.random_range(50.0..5_000.0);
        let mut p = base_params();
        p.demand = Tfn::crisp(d);
        let rate = p.profit_rate(q, d).unwrap();
        let defuzz = p.defuzzified_profit(q).unwrap();
        c.check((defuzz - rate).abs() <= 1e-12 * rate.abs().max(1.0), || {
            format!("defuzzified {defuzz} vs crisp rate {rate} at D = {d}, q = {q}")
        });
        let triple = p.profit_triple(q).unwrap();
        c.check(triple.low == triple.high, || {
            format!("degenerate triple has spread at D = {d}, q = {q}")
        });
        let policy = optimal_q(&p).unwrap();
        let weight = 6.0 * d;
        let denominator = weight
            * (2.0 * p.holding_rework - p.holding_rework * p.e_scrap + p.holding_scrap * p.e_scrap)
            / p.screening_rate
            - 12.0 * p.purchase_cost * p.e_rework
            + 6.0 * p.holding_rework * p.e_one_minus_scrap_sq;
        let manual = (2.0 * p.ordering_cost * weight / denominator).sqrt();
        c.check((policy.q_star - manual).abs() <= 1e-9 * manual, || {
            format!(
                "degenerate-demand optimum {} vs crisp formula {manual}",
                policy.q_star
            )
        });
    }

    // Triple spacing is demand spacing scaled by (margin - holding slope).
    for i in 0..6 {
        let p = fuzzy_row(i);
        let q = rng.random_range(200.0..4_000.0);
        let t = p.profit_terms(q).unwrap();
        let gain = t.margin - t.demand_holding;
        let triple = p.profit_triple(q).unwrap();
        let d = p.demand;
        let scale = triple.peak.abs().max(1.0);
        c.check(
            ((triple.peak - triple.low) - (d.peak() - d.low()) * gain).abs() <= 1e-9 * scale,
            || format!("row {}: lower spacing off at q = {q}", i + 1),
        );
        c.check(
            ((triple.high - triple.peak) - (d.high() - d.peak()) * gain).abs() <= 1e-9 * scale,
            || format!("row {}: upper spacing off at q = {q}", i + 1),
        );
    }
    c.finish("graded-mean linearity (4 ulp), degenerate-demand collapse, triple spacing");
}

#[test]
fn criterion_09_first_order_and_concavity() {
    let mut c = Criterion::new(9);
    let mut cases = vec![base_params()];
    cases.extend((0..6).map(fuzzy_row));
    for p in &cases {
        let policy = optimal_q(p).unwrap();
        let q = policy.q_star;
        let h = FD_RELATIVE_STEP * q;
        let derivative = (p.defuzzified_profit(q + h).unwrap()
            - p.defuzzified_profit(q - h).unwrap())
            / (2.0 * h);
        let bound = 1e-6 * policy.profit.abs() / q;
        c.check(derivative.abs() <= bound, || {
            format!("dP/dq = {derivative} at q* = {q} exceeds {bound}")
        });

        let curvature = concavity_check(p, q).unwrap();
        c.check(curvature.concave, || format!("not concave at q* = {q}"));
        c.check(
            ((curvature.second_difference - curvature.analytic) / curvature.analytic).abs() <= 1e-3,
            || {
                format!(
                    "second difference {} vs analytic {} beyond 1e-3 relative",
                    curvature.second_difference, curvature.analytic
                )
            },
        );
    }
    c.finish("first-order condition at Q* within 1e-6; curvature matches analytic to 1e-3");
}

#[test]
fn criterion_10_simulation() {
    let mut c = Criterion::new(10);

    // Point masses: deterministic cycles reproduce the closed form at the
    // matching moments exactly.
    let mut matched = base_params();
    matched.e_one_minus_scrap_sq = 0.98 * 0.98;
    let point_config = SimulationConfig {
        params: matched.clone(),
        q: 1394.9,
        scrap_dist: DistributionSpec::Point { value: 0.02 },
        rework_dist: DistributionSpec::Point { value: 0.05 },
        n_cycles: 1_000,
        seed: 17,
    };
    let point_result = simulate(&point_config).unwrap();
    let analytic = matched.profit_rate(1394.9, 50_000.0).unwrap();
    c.check(
        ((point_result.mean_profit_rate - analytic) / analytic).abs() <= 1e-9,
        || {
            format!(
                "point-mass estimator {} vs analytic {analytic} beyond 1e-9 relative",
                point_result.mean_profit_rate
            )
        },
    );

    // Default uniform distributions at one million cycles.
    let config = SimulationConfig::with_default_distributions(base_params(), 1394.9, 1_000_000, 42);
    let result = simulate(&config).unwrap();
    c.check(
        (result.mean_profit_rate - 1_212_072.0).abs() / 1_212_072.0 <= 0.01,
        || {
            format!(
                "mean profit rate {} not within 1% of 1212072",
                result.mean_profit_rate
            )
        },
    );
    c.check(result.shortages_detected == 0, || {
        format!(
            "{} shortages under the default supports",
            result.shortages_detected
        )
    });
    c.check(result.cycles_run == 1_000_000, || {
        format!("cycles_run = {}", result.cycles_run)
    });

    // Bit-identical reruns under a fixed seed.
    let rerun = simulate(&config).unwrap();
    c.check(
        rerun.mean_profit_rate.to_bits() == result.mean_profit_rate.to_bits()
            && rerun.ci_halfwidth.to_bits() == result.ci_halfwidth.to_bits()
            && rerun == result,
        || "rerun with the same seed is not bit-identical".to_string(),
    );
    c.finish("simulation: point-mass exactness, 1e6-cycle accuracy, seed determinism");
}
