//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

use std::process::Command;

use opsymbol::harness::config::{Suite, SuiteConfig};
use opsymbol::harness::random::InstanceGen;
use opsymbol::harness::report::Report;
use opsymbol::harness::suites::{run_suite, verify_poisson_homomorphism, verify_structure_preservation};
use opsymbol::morphism::controls::DegreeShift;
use opsymbol::{InducedPair, MorphismSpec};

const SHAPES: [(usize, usize); 4] = [(1, 2), (1, 3), (2, 2), (2, 3)];
const SEED: u64 = 42;
const TRIALS: usize = 200;

struct Criterion {
    id: u32,
    title: &'static str,
    properties: &'static [&'static str],
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "operator laws",
        properties: &[
            "compose_associative",
            "commutator_jacobi",
            "apply_composition",
            "poly_ring_axioms",
            "traceless_projector",
        ],
    },
    Criterion {
        id: 2,
        title: "quantum-Poisson filtration",
        properties: &[
            "pson_order_of_composition",
            "pson_order_of_commutator",
            "local_form_matches_commutators",
            "filtration_consistency",
            "differential_filtration_inside_quantum",
        ],
    },
    Criterion {
        id: 3,
        title: "symbol well-definedness",
        properties: &["product_well_defined", "bracket_well_defined"],
    },
    Criterion {
        id: 4,
        title: "closed forms match operator oracle",
        properties: &[
            "product_closed_form_matches_operators",
            "bracket_closed_form_matches_operators",
            "sigma_of_lift",
        ],
    },
    Criterion {
        id: 5,
        title: "Poisson axioms on symbols",
        properties: &[
            "generated_symbols_valid",
            "product_commutative_associative",
            "bracket_antisymmetric",
            "bracket_jacobi",
            "bracket_leibniz",
            "gradation",
            "canonical_bracket_axioms",
        ],
    },
    Criterion {
        id: 6,
        title: "ideal J(E) and splitting",
        properties: &[
            "j_equals_kernel_of_delta",
            "j_is_an_ideal",
            "j_has_trivial_multiplication",
            "decomposition_is_direct_sum",
            "pol_is_subalgebra",
        ],
    },
    Criterion {
        id: 7,
        title: "inverses",
        properties: &[
            "inverse_times_element_is_one",
            "inverse_closed_form",
            "inverse_matches_series",
            "inverse_rejects_non_units",
        ],
    },
    Criterion {
        id: 8,
        title: "exact sequence",
        properties: &[
            "delta_is_product_homomorphism",
            "delta_after_theta_vanishes",
            "kernel_of_delta_equals_image_of_theta",
        ],
    },
    Criterion {
        id: 9,
        title: "filtration lemma",
        properties: &[
            "lowering_set_matches_syntactic_i1",
            "lowering_set_matches_syntactic_i2",
            "lowering_set_matches_syntactic_i3",
            "lowering_set_holds_for_all_functions",
            "lowering_set_edge_cases",
        ],
    },
    Criterion {
        id: 10,
        title: "gl case",
        properties: &[
            "gl_product_literal",
            "gl_bracket_literal",
            "gl_poisson_compatibility",
            "gl_embedding_coherence",
            "gl_j_locus_and_ideal",
            "gl_invert_worked_example",
            "gl_invert_matches_symbol_invert",
        ],
    },
    Criterion {
        id: 11,
        title: "induced morphisms",
        properties: &[
            "induced_poisson_isomorphism",
            "induced_preserves_j_ideal",
            "induced_preserves_degree_zero",
            "induced_preserves_gradation",
            "induced_preserves_degree_one_sl",
            "induced_functoriality",
            "induced_operator_automorphism",
            "induced_operator_matches_sections",
            "induced_symbol_matches_operators",
            "induced_commutes_with_sigma",
            "negative_control_pointwise_gauge_detected",
            "negative_control_degree_shift_detected",
        ],
    },
];

/// Properties whose trial count is set by a fixed case list rather than `trials`.
const FIXED_CASES: &[&str] = &[
    "kernel_of_delta_equals_image_of_theta",
    "lowering_set_edge_cases",
    "gl_invert_worked_example",
];

fn config(m: usize, n: usize) -> SuiteConfig {
    SuiteConfig {
        suite: Suite::All,
        base_dim: m,
        rank: n,
        trials: TRIALS,
        seed: SEED,
        ..SuiteConfig::default()
    }
}

fn check_criterion(c: &Criterion, reports: &[Report]) -> Result<String, String> {
    let mut checked = 0;
    for report in reports {
        let (m, n) = (report.config.base_dim, report.config.rank);
        for &name in c.properties {
            let p = report
                .property(name)
                .ok_or_else(|| format!("property {name} missing at m={m} n={n}"))?;
            if !p.ok() {
                return Err(format!("{name} failed {}/{} at m={m} n={n}", p.failed, p.trials));
            }
            let expected = if name.starts_with("induced_") || name.starts_with("negative_control") {
                report.config.specs
            } else {
                TRIALS
            };
            if !FIXED_CASES.contains(&name) && p.trials < expected {
                return Err(format!("{name} ran only {} trials", p.trials));
            }
            checked += p.trials;
        }
    }
    Ok(format!("{} properties x {} shapes, {checked} trials", c.properties.len(), reports.len()))
}

fn morphism_self_tests() -> Result<String, String> {
    for (m, n) in SHAPES {
        let g = InstanceGen::new(m, n, 2, 3);
        let id = InducedPair::new(&MorphismSpec::identity(m, n)).map_err(|e| e.to_string())?;
        if !verify_poisson_homomorphism(&id, &g, 10, 10, SEED).ok() {
            return Err(format!("identity spec is not a Poisson map at m={m} n={n}"));
        }
        if !verify_structure_preservation(&id, &g, 10, 10, SEED).iter().all(|o| o.ok()) {
            return Err(format!("identity spec fails structure checks at m={m} n={n}"));
        }
        let control = verify_structure_preservation(&DegreeShift, &g, 10, 10, SEED);
        let failing: Vec<&str> = control.iter().filter(|o| !o.ok()).map(|o| o.name.as_str()).collect();
        if !failing.contains(&"preserves_degree_zero") {
            return Err(format!("degree-shift control not caught by check (b) at m={m} n={n}"));
        }
    }
    Ok("identity passes, degree-shift control fails check (b)".into())
}

fn determinism() -> Result<String, String> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_opsymbol"))
            .args(["verify", "--suite", "all", "--seed", "42", "--format", "json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if !a.status.success() || !b.status.success() {
        return Err(format!("verify exited with {} and {}", a.status, b.status));
    }
    if a.stdout != b.stdout {
        return Err("reports differ between runs".into());
    }
    serde_json::from_slice::<serde_json::Value>(&a.stdout).map_err(|e| format!("report is not JSON: {e}"))?;
    Ok(format!("two runs, {} identical bytes", a.stdout.len()))
}

fn main() {
    let reports: Vec<Report> = SHAPES
        .iter()
        .map(|&(m, n)| run_suite(&config(m, n)).expect("valid config"))
        .collect();

    let mut all_ok = true;
    let mut line = |id: u32, title: &str, result: Result<String, String>| {
        let (tag, detail) = match result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                all_ok = false;
                ("FAIL", d)
            }
        };
        println!("criterion {id:>2} {tag}  {title}: {detail}");
    };
    for c in CRITERIA {
        let mut result = check_criterion(c, &reports);
        if c.id == 11 {
            result = result.and_then(|d| morphism_self_tests().map(|s| format!("{d}; {s}")));
        }
        line(c.id, c.title, result);
    }
    line(12, "deterministic reports", determinism());

    if !all_ok {
        std::process::exit(1);
    }
}
