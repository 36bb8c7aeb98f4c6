//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use qubitloss::base::{all_witnesses, detect_base};
use qubitloss::catalog::{named_state, CatalogKey};
use qubitloss::oracle::{numerical_rank, oracle_genuine, unfold};
use qubitloss::sample::{random_product_state, random_state, seeded_rng};
use qubitloss::tables::{projection_table, reduction_table};
use qubitloss::{
    all_projections, detect, detect_2q, detect_3q, detect_with_trace, entanglement_measure,
    lose_qubit, lose_qubit_set, sufficient_3q, ProjectionClass, StateVector, Tolerance,
    VerdictKind,
};
use rand::Rng;

const TOL: f64 = 1e-9;
const FORMULA_TOL: f64 = 1e-12;
const TABLE_BUDGET: Duration = Duration::from_millis(100);
const SWEEP_BUDGET: Duration = Duration::from_secs(60);
const DETECT_BUDGET: Duration = Duration::from_secs(1);
const PROJECTION_BUDGET: Duration = Duration::from_millis(500);

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn tol() -> Tolerance {
    Tolerance::new(TOL).unwrap()
}

fn table1() -> Outcome {
    let start = Instant::now();
    let rows = projection_table(tol()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let mut cells = 0;
    for row in &rows {
        ensure!(
            row.computed.len() == 3,
            "{}: {} cells",
            row.label,
            row.computed.len()
        );
        for (e, c) in row.expected.iter().zip(&row.computed) {
            ensure!(
                e == c,
                "{}: expected {:?}, got {:?}",
                row.label,
                row.expected,
                row.computed
            );
            cells += 1;
        }
    }
    ensure!(rows.len() == 4 && cells == 12, "{cells} cells checked");
    ensure!(elapsed < TABLE_BUDGET, "took {elapsed:?}");
    Ok(format!("{cells} cells in {elapsed:?}"))
}

fn table2() -> Outcome {
    let rows = reduction_table(tol()).map_err(|e| e.to_string())?;
    ensure!(rows.len() == 2, "{} rows", rows.len());
    let (ghz, w) = (&rows[0], &rows[1]);
    ensure!(ghz.label == "GHZ" && w.label == "W", "row order");
    ensure!(
        ghz.reductions_separable == [true; 3],
        "GHZ reductions {:?}",
        ghz.reductions_separable
    );
    ensure!(
        ghz.projections_entangled == [true; 3],
        "GHZ projections {:?}",
        ghz.projections_entangled
    );
    ensure!(
        ghz.projections_same_family == [true; 3],
        "GHZ family {:?}",
        ghz.projections_same_family
    );
    ensure!(
        w.reductions_separable == [false; 3],
        "W reductions {:?}",
        w.reductions_separable
    );
    ensure!(
        w.projections_entangled == [true; 3],
        "W projections {:?}",
        w.projections_entangled
    );
    ensure!(
        w.projections_same_family == [false; 3],
        "W family {:?}",
        w.projections_same_family
    );
    Ok("GHZ and W rows".to_string())
}

fn w_formula() -> Outcome {
    let t = tol();
    let formula_tol = Tolerance::new(FORMULA_TOL).unwrap();
    for n in 3..=10 {
        let w = named_state(CatalogKey::W, Some(n)).unwrap();
        let smaller = named_state(CatalogKey::W, Some(n - 1)).unwrap();
        let vacuum = StateVector::basis(n - 1, 0).unwrap();
        let nf = n as f64;
        let expected = smaller
            .combine(
                Complex64::new(((nf - 1.0) / nf).sqrt(), 0.0),
                &vacuum,
                Complex64::new(1.0 / nf.sqrt(), 0.0),
            )
            .unwrap();
        for k in 1..=n {
            let p = lose_qubit(&w, k).unwrap();
            ensure!(
                p.state.equal_up_to_scale(&expected, formula_tol).unwrap(),
                "n={n} k={k} differs"
            );
        }
        let last = lose_qubit_set(&w, &(1..=n - 2).collect::<Vec<_>>()).unwrap();
        ensure!(
            detect_2q(&last, t).unwrap().genuinely_entangled,
            "n={n} two-qubit end is product"
        );
    }
    Ok("n = 3..10".to_string())
}

/// Sets of `size` labels out of `1..=n`, in lexicographic order.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (1..=n).filter(|q| m >> (q - 1) & 1 == 1).collect())
        .collect()
}

fn nonzero<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(
        rng.random_range(0.1..2.0),
        rng.random_range(0.0..std::f64::consts::TAU),
    )
}

fn ghz_chains() -> Outcome {
    let t = tol();
    let mut rng = seeded_rng(0x6a7);
    let mut chains = 0usize;
    for n in 3..=10 {
        let lost_sets = subsets(n, n - 2);
        for trial in 0..100 {
            let (alpha, beta) = (nonzero(&mut rng), nonzero(&mut rng));
            let i = rng.random_range(0..1usize << n);
            let complement = !i & ((1 << n) - 1);
            let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
            amps[i] = alpha;
            amps[complement] = beta;
            let s = StateVector::new(n, amps).unwrap();
            for lost in &lost_sets {
                let kept: Vec<usize> = (1..=n).filter(|q| !lost.contains(q)).collect();
                let z = kept
                    .iter()
                    .fold(0, |acc, &q| (acc << 1) | (i >> (n - q) & 1));
                let mut expected = vec![Complex64::new(0.0, 0.0); 4];
                expected[z] = alpha;
                expected[3 - z] = beta;
                let end = lose_qubit_set(&s, lost).unwrap();
                ensure!(
                    end.amplitudes()
                        .iter()
                        .zip(&expected)
                        .all(|(a, b)| (a - b).norm() <= FORMULA_TOL),
                    "n={n} trial={trial} lost={lost:?}: {:?}",
                    end.amplitudes()
                );
                ensure!(
                    detect_2q(&end, t).unwrap().genuinely_entangled,
                    "n={n} trial={trial} lost={lost:?} end is product"
                );
                chains += 1;
            }
            let v = detect(&s, t).unwrap();
            ensure!(
                v.kind == VerdictKind::CertifiedGenuine,
                "n={n} trial={trial}: {:?}",
                v.kind
            );
        }
    }
    Ok(format!("{chains} end states"))
}

fn example3_trace() -> Outcome {
    use ProjectionClass::{Entangled, Product};
    let t = tol();
    let s = named_state(CatalogKey::Example3, None).unwrap();
    let one = Complex64::new(1.0, 0.0);
    let three = StateVector::from_terms([("000", one), ("011", one), ("111", -one)]).unwrap();
    let product = StateVector::basis(3, 0).unwrap();
    let projections = all_projections(&s).unwrap();
    ensure!(
        projections[0].state == product,
        "lose-1 gives {:?}",
        projections[0].state
    );
    for p in &projections[1..] {
        ensure!(
            p.state == three,
            "lose-{} gives {:?}",
            p.lost_qubit,
            p.state
        );
    }
    let trace = detect_with_trace(&s, t).unwrap();
    ensure!(
        trace.row == [Product, Entangled, Entangled, Entangled],
        "row {:?}",
        trace.row
    );
    ensure!(
        trace.verdict.kind == VerdictKind::CertifiedGenuine,
        "verdict {:?}",
        trace.verdict.kind
    );

    let inner = all_projections(&three).unwrap();
    let two = StateVector::from_terms([("00", one), ("01", one), ("11", -one)]).unwrap();
    ensure!(
        inner[0].state == StateVector::basis(2, 0).unwrap(),
        "inner lose-1 {:?}",
        inner[0].state
    );
    ensure!(
        inner[1].state == two && inner[2].state == two,
        "inner lose-2/3"
    );
    ensure!(
        detect_2q(&two, t).unwrap().genuinely_entangled,
        "|00>+|01>-|11> judged product"
    );
    let inner_trace = detect_with_trace(&three, t).unwrap();
    ensure!(
        inner_trace.row == [Product, Entangled, Entangled],
        "inner row {:?}",
        inner_trace.row
    );
    ensure!(
        detect_3q(&three, t).unwrap().genuinely_entangled,
        "three-qubit projection judged product"
    );
    Ok("trace matches".to_string())
}

fn measures() -> Outcome {
    let t = tol();
    for n in 3..=6 {
        for key in [CatalogKey::Ghz, CatalogKey::W] {
            let m = entanglement_measure(&named_state(key, Some(n)).unwrap(), t).unwrap();
            ensure!(
                m.k == n && m.is_mes,
                "{key} n={n}: k={} mes={}",
                m.k,
                m.is_mes
            );
        }
    }
    let m = entanglement_measure(&named_state(CatalogKey::Phi4, None).unwrap(), t).unwrap();
    let certified: Vec<usize> = m
        .per_qubit
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_genuine())
        .map(|(i, _)| i + 1)
        .collect();
    ensure!(
        m.k == 2 && certified == [1, 2],
        "PHI4 k={} certified {certified:?}",
        m.k
    );
    Ok("GHZ/W n=3..6 and PHI4".to_string())
}

fn soundness_sweep() -> Outcome {
    let t = tol();
    let start = Instant::now();
    let mut rng = seeded_rng(0x5eed);
    for n in 3..=7 {
        for trial in 0..1000 {
            let (s, cut) = random_product_state(&mut rng, n).unwrap();
            let v = detect(&s, t).unwrap();
            ensure!(
                v.kind != VerdictKind::CertifiedGenuine,
                "n={n} trial={trial} cut={cut} certified"
            );
            let genuine = all_projections(&s)
                .unwrap()
                .iter()
                .filter(|p| !p.is_zero && oracle_genuine(&p.state, t).unwrap())
                .count();
            ensure!(
                genuine <= 1,
                "n={n} trial={trial} cut={cut}: {genuine} genuine projections"
            );
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < SWEEP_BUDGET, "took {elapsed:?}");
    Ok(format!("5000 products in {elapsed:?}"))
}

fn base_exactness() -> Outcome {
    let t = tol();
    let mut rng = seeded_rng(0xba5e);
    let mut witnessed = 0;
    for n in 2..=4 {
        for trial in 0..1000 {
            let s = if trial % 2 == 0 {
                random_state(&mut rng, n).unwrap()
            } else {
                random_product_state(&mut rng, n).unwrap().0
            };
            let v = detect_base(&s, t).unwrap();
            let oracle = oracle_genuine(&s, t).unwrap();
            ensure!(
                v.genuinely_entangled == oracle,
                "n={n} trial={trial}: detector {} oracle {oracle}",
                v.genuinely_entangled
            );
            for w in v.witness.iter().chain(all_witnesses(&s, t).unwrap().iter()) {
                let rank = numerical_rank(&unfold(&s, &w.partition).unwrap(), t);
                ensure!(
                    rank == 1,
                    "n={n} trial={trial}: witness {} has rank {rank}",
                    w.partition
                );
                witnessed += 1;
            }
        }
    }
    Ok(format!("3000 states, {witnessed} witnesses"))
}

fn random_three_qubit<R: Rng>(rng: &mut R, trial: usize) -> StateVector {
    loop {
        let s = match trial % 3 {
            0 => random_state(rng, 3).unwrap(),
            1 => random_product_state(rng, 3).unwrap().0,
            _ => {
                let amps: Vec<f64> = (0..8).map(|_| rng.random_range(-1..=1) as f64).collect();
                StateVector::from_real(3, &amps).unwrap()
            }
        };
        if !s.is_zero() {
            return s;
        }
    }
}

fn shortcut_consistency() -> Outcome {
    let t = tol();
    let mut rng = seeded_rng(0xb);
    let mut certified = 0;
    for trial in 0..1000 {
        let s = random_three_qubit(&mut rng, trial);
        let short = sufficient_3q(&s, t).unwrap();
        for (i, p) in all_projections(&s).unwrap().iter().enumerate() {
            let full = detect_2q(&p.state, t).unwrap().genuinely_entangled;
            ensure!(
                short.per_projection_entangled[i] == full,
                "trial={trial} lose-{}: shortcut {} full {full}",
                i + 1,
                short.per_projection_entangled[i]
            );
        }
        if short.certified {
            certified += 1;
            ensure!(
                detect_3q(&s, t).unwrap().genuinely_entangled,
                "trial={trial} certified but product"
            );
        }
    }
    Ok(format!("1000 states, {certified} certified"))
}

fn incompleteness() -> Outcome {
    let t = tol();
    let s = named_state(CatalogKey::WClass3, None).unwrap();
    let trace = detect_with_trace(&s, t).unwrap();
    ensure!(
        trace.row.iter().all(|c| *c == ProjectionClass::Product),
        "row {:?}",
        trace.row
    );
    ensure!(
        trace.verdict.kind == VerdictKind::CertifiedGenuine,
        "verdict {:?}",
        trace.verdict.kind
    );
    ensure!(oracle_genuine(&s, t).unwrap(), "oracle finds a product cut");
    ensure!(
        !sufficient_3q(&s, t).unwrap().certified,
        "shortcut certifies"
    );
    Ok("all-product row, genuine state".to_string())
}

fn performance() -> Outcome {
    let t = tol();
    let mut rng = seeded_rng(0xfa57);
    let s10 = random_state(&mut rng, 10).unwrap();
    let start = Instant::now();
    let v = detect(&s10, t).unwrap();
    let detect_time = start.elapsed();
    ensure!(
        v.kind == VerdictKind::CertifiedGenuine,
        "dense 10-qubit verdict {:?}",
        v.kind
    );
    ensure!(detect_time < DETECT_BUDGET, "detect took {detect_time:?}");

    let s20 = random_state(&mut rng, 20).unwrap();
    let start = Instant::now();
    let p = lose_qubit(&s20, 7).unwrap();
    let project_time = start.elapsed();
    ensure!(p.state.num_qubits() == 19, "wrong size");
    ensure!(
        project_time < PROJECTION_BUDGET,
        "projection took {project_time:?}"
    );
    Ok(format!(
        "detect {detect_time:?}, projection {project_time:?}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("AC1", "three-qubit projection table", table1),
        ("AC2", "reductions vs projections table", table2),
        ("AC3", "W projection formula", w_formula),
        ("AC4", "GHZ-type chains", ghz_chains),
        ("AC5", "four-qubit worked trace", example3_trace),
        ("AC6", "entanglement measure", measures),
        ("AC7", "soundness sweep on products", soundness_sweep),
        ("AC8", "base-case exactness", base_exactness),
        (
            "AC9",
            "three-qubit shortcut consistency",
            shortcut_consistency,
        ),
        ("AC10", "incompleteness exhibit", incompleteness),
        ("AC11", "performance", performance),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|payload| {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".to_string());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{id:<5} PASS  {name} ({secs:.3}s): {detail}"),
            Err(reason) => {
                failures += 1;
                println!("{id:<5} FAIL  {name} ({secs:.3}s): {reason}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
