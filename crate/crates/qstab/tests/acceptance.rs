//! Acceptance suite: the headline guarantees of the workspace, one test per
//! guarantee, each ending in a single PASS line with the measured numbers
//! (visible under `--nocapture`). Checks that carry a wall-clock target
//! state it for 8 cores and scale it by the cores actually present.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

use blackbox::{cqed_hamiltonian, find_modes, CqedParams, RlcBranch, RlcNetwork};
use circuits::{
    band_energy_mathieu, charge_dispersion, eigensolve, eigensolve_lowest, CircuitParams,
};
use dynamics::{chaos_indicator, integrate_pendulum, poincare_section, PendulumParams};
use mathieu_core::{ClassifyCriteria, ClassifyMethod, IntegratorControls, OscState};
use stability::{sweep, tongue_boundary, Range1D, SampleRng, StabilityGrid, SweepSpec};

/// Wall-clock budget in seconds for a target stated on 8 cores, scaled to
/// this machine's core count.
fn runtime_budget(target_secs_on_8_cores: f64) -> f64 {
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    target_secs_on_8_cores * 8.0 / cores as f64
}

fn chart_spec(gamma: f64, method: ClassifyMethod) -> SweepSpec {
    SweepSpec {
        delta: Range1D::new(0.0, 6.0, 400).unwrap(),
        epsilon: Range1D::new(0.0, 3.0, 200).unwrap(),
        omega: 2.0,
        gamma,
        method,
        criteria: ClassifyCriteria::default(),
    }
}

/// The undamped Floquet chart, shared by the tongue-tip and damping checks;
/// the stored float is the sweep's wall time in seconds.
fn base_chart() -> &'static (StabilityGrid, f64) {
    static CHART: OnceLock<(StabilityGrid, f64)> = OnceLock::new();
    CHART.get_or_init(|| {
        let t = Instant::now();
        let grid = sweep(&chart_spec(0.0, ClassifyMethod::Floquet)).unwrap();
        (grid, t.elapsed().as_secs_f64())
    })
}

#[test]
fn tongue_tips_land_on_integer_squares() {
    let (grid, sweep_secs) = base_chart();
    let t = Instant::now();
    let boundary = tongue_boundary(grid).unwrap();
    let secs = sweep_secs + t.elapsed().as_secs_f64();

    assert_eq!(grid.errored_count(), 0, "no cell may fail to integrate");

    // The refined boundary must dip below epsilon = 0.03 within 0.02 of the
    // resonant stiffnesses delta = 1 and 4 (drive at twice / once the
    // natural frequency).
    let tip = |center: f64| {
        boundary
            .iter()
            .filter(|(d, e)| (d - center).abs() <= 0.02 && *e < 0.03)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .copied()
    };
    let tip1 = tip(1.0).expect("no boundary point below eps 0.03 near delta = 1");
    let tip4 = tip(4.0).expect("no boundary point below eps 0.03 near delta = 4");

    let budget = runtime_budget(120.0);
    assert!(secs < budget, "chart took {secs:.1} s, budget {budget:.1} s");
    println!(
        "PASS tongue tips: boundary reaches eps = {:.4} at delta = {:.4} and \
         eps = {:.4} at delta = {:.4}; 400x200 chart in {secs:.1} s (budget {budget:.0} s)",
        tip1.1, tip1.0, tip4.1, tip4.0
    );
}

#[test]
fn damping_shrinks_the_unstable_area() {
    let gammas = [0.0, 0.05, 0.1, 0.2];
    let counts: Vec<usize> = gammas
        .iter()
        .map(|&gamma| {
            if gamma == 0.0 {
                base_chart().0.unstable_count()
            } else {
                sweep(&chart_spec(gamma, ClassifyMethod::Floquet))
                    .unwrap()
                    .unstable_count()
            }
        })
        .collect();

    assert!(
        counts[2] < counts[0],
        "gamma = 0.1 must lose unstable cells vs gamma = 0: {counts:?}"
    );
    for (w, pair) in counts.windows(2).enumerate() {
        assert!(
            pair[1] <= pair[0],
            "unstable count rose from {} to {} between gamma = {} and {}",
            pair[0],
            pair[1],
            gammas[w],
            gammas[w + 1]
        );
    }
    println!(
        "PASS damping: unstable cells {:?} at gamma {:?} (monotone non-increasing)",
        counts, gammas
    );
}

#[test]
fn classifiers_agree_off_the_margins() {
    let t = Instant::now();
    let grid = sweep(&chart_spec(0.0, ClassifyMethod::Both)).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let frac = grid
        .agreement_fraction()
        .expect("a both-method sweep carries agreement data");
    assert!(
        frac >= 0.97,
        "floquet and time-domain labels agree on only {:.3} of off-margin cells",
        frac
    );
    println!(
        "PASS classifier cross-check: {:.4} agreement off the marginal band \
         ({} cells, {secs:.1} s)",
        frac,
        grid.cells.len()
    );
}

#[test]
fn band_formula_matches_the_eigensolver() {
    let t = Instant::now();
    let e_c = 1.0;
    let mut worst = 0.0f64;
    for ratio in [0.2, 1.0, 5.0] {
        for n_g in [0.1, 0.25, 0.4] {
            let p = CircuitParams::new(e_c, ratio * e_c, 0.0, n_g, 0.0, 30).unwrap();
            let levels = eigensolve_lowest(&p, 3).unwrap();
            for (m, level) in levels.iter().enumerate() {
                let formula = band_energy_mathieu(m, n_g, &p).unwrap();
                let rel = (formula - level).abs() / level.abs().max(1e-12);
                worst = worst.max(rel);
                assert!(
                    rel < 1e-4,
                    "band {m} at N_g = {n_g}, E_J/E_C = {ratio}: rel {rel:.2e}"
                );
            }
        }
    }

    // Without a junction both routes are the same charging parabola.
    let mut worst_bare = 0.0f64;
    for n_g in [0.1, 0.25, 0.4] {
        let p = CircuitParams::new(e_c, 0.0, 0.0, n_g, 0.0, 30).unwrap();
        let levels = eigensolve_lowest(&p, 3).unwrap();
        for (m, level) in levels.iter().enumerate() {
            let formula = band_energy_mathieu(m, n_g, &p).unwrap();
            let rel = (formula - level).abs() / level.abs().max(1e-12);
            worst_bare = worst_bare.max(rel);
            assert!(rel < 1e-9, "band {m} at N_g = {n_g}, E_J = 0: rel {rel:.2e}");
        }
    }

    let secs = t.elapsed().as_secs_f64();
    let budget = runtime_budget(10.0);
    assert!(secs < budget, "took {secs:.1} s, budget {budget:.1} s");
    println!(
        "PASS band formula: worst rel {worst:.2e} over 3 bands x 3 gates x 3 ratios \
         (bare limit {worst_bare:.2e}) in {secs:.1} s"
    );
}

#[test]
fn dispersion_collapses_exponentially() {
    let e_c = 1.0;
    let ratios = [0.2, 1.0, 5.0, 10.0, 50.0];
    let dispersion: Vec<f64> = ratios
        .iter()
        .map(|&r| {
            let p = CircuitParams::new(e_c, r * e_c, 0.0, 0.0, 0.0, 30).unwrap();
            charge_dispersion(&p, 0).unwrap()
        })
        .collect();

    for (w, pair) in dispersion.windows(2).enumerate() {
        assert!(
            pair[1] <= pair[0],
            "ground-band dispersion rose between E_J/E_C = {} and {}",
            ratios[w],
            ratios[w + 1]
        );
    }
    assert!(
        dispersion[4] < 1e-3 * dispersion[1],
        "dispersion at ratio 50 is {:.3e}, not below 1e-3 x {:.3e}",
        dispersion[4],
        dispersion[1]
    );
    println!(
        "PASS dispersion: {:.3e} -> {:.3e} across E_J/E_C = {:?} \
         (ratio-50/ratio-1 = {:.2e})",
        dispersion[0],
        dispersion[4],
        ratios,
        dispersion[4] / dispersion[1]
    );
}

#[test]
fn modal_impedances_match_the_branch_oracle() {
    // Five seeded random networks of 1..6 parallel-RLC stages in series.
    // Every mode of such a network sits exactly on one branch resonance
    // with effective impedance sqrt(L/C) of that branch: an analytic oracle
    // for the numeric admittance-derivative route.
    let mut checked = 0usize;
    for (netlist_index, &branch_count) in [1usize, 2, 3, 5, 6].iter().enumerate() {
        let mut rng = SampleRng::new(20_260_817, netlist_index as u64);
        let mut branches = Vec::with_capacity(branch_count);
        for j in 0..branch_count {
            // Resonances a jittered factor ~1.5 apart: always well separated.
            let c = 1e-13 * (1.0 + 9.0 * rng.uniform());
            let omega = 2.0e10 * 1.5f64.powi(j as i32) * (1.0 + 0.1 * rng.uniform());
            let l = 1.0 / (omega * omega * c);
            branches.push(RlcBranch::lossless(c, l).unwrap());
        }
        let mut oracle: Vec<(f64, f64)> = branches
            .iter()
            .map(|b| (b.resonance(), (b.l_star / b.c_star).sqrt()))
            .collect();
        oracle.sort_by(|a, b| a.0.total_cmp(&b.0));

        let set = find_modes(&RlcNetwork::new(branches).unwrap()).unwrap();
        assert_eq!(
            set.modes.len(),
            branch_count,
            "netlist {netlist_index}: one mode per branch"
        );
        for (mode, (omega, z)) in set.modes.iter().zip(&oracle) {
            assert!(
                (mode.omega - omega).abs() <= 1e-9 * omega,
                "netlist {netlist_index}: mode at {} vs resonance {omega}",
                mode.omega
            );
            assert!(
                (mode.z_eff - z).abs() <= 1e-9 * z,
                "netlist {netlist_index}: z_eff {} vs sqrt(L/C) {z}",
                mode.z_eff
            );
            checked += 1;
        }
    }

    // With the coupling off, the qubit-resonator product spectrum is the
    // tensor sum of the two bare spectra.
    let circuit = CircuitParams::new(0.25, 5.0, 0.0, 0.0, 0.0, 10).unwrap();
    let p = CqedParams::new(circuit, 1.8e10, 1e-13, 0.0, 4).unwrap();
    let product = cqed_hamiltonian(&p).unwrap().eigenvalues().unwrap();
    let qubit = eigensolve(&circuit).unwrap();
    let photon_ghz = p.omega_r / (2.0 * std::f64::consts::PI * 1e9);
    let mut tensor: Vec<f64> = qubit
        .eigenvalues
        .iter()
        .flat_map(|&e| (0..=p.fock_cutoff).map(move |k| e + photon_ghz * k as f64))
        .collect();
    tensor.sort_by(f64::total_cmp);
    let scale = tensor.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    let mut worst = 0.0f64;
    for (a, b) in product.iter().zip(&tensor) {
        worst = worst.max((a - b).abs() / scale);
    }
    assert!(
        worst < 1e-10,
        "uncoupled product spectrum deviates from the tensor sum by {worst:.2e} relative"
    );
    println!(
        "PASS black-box oracle: {checked} modes across 5 random netlists match \
         sqrt(L/C) to 1e-9; uncoupled product spectrum within {worst:.2e} of the tensor sum"
    );
}

#[test]
fn pendulum_conserves_energy_and_separates_regimes() {
    // Undriven, undamped: a large-amplitude libration must hold its energy.
    let p = PendulumParams::new(2.5, 0.0, 2.0, 0.0).unwrap();
    let init = OscState::new(2.5, 0.0, 0.0).unwrap();
    let tight = IntegratorControls::adaptive(1e-12, 1e-14);
    let traj = integrate_pendulum(&p, &init, 1000.0 * p.period(), &tight).unwrap();
    assert!(!traj.overflow);
    let drift = (p.energy(traj.last()) - p.energy(&init)).abs();
    assert!(drift < 1e-8, "energy drift {drift:.3e} over 1000 periods");

    // Regular-to-chaotic contrast, driven by the chart itself: the same
    // near-origin start probes both regimes at delta = 2. At epsilon = 0.1
    // the origin sits in the stable gap between the first two tongues and
    // the strobe traces a thin ellipse; at epsilon = 4 the origin is inside
    // the first tongue, so the linear instability throws the orbit onto the
    // chaotic sea and the strobe scatters over the cylinder.
    let controls = IntegratorControls::default();
    let start = OscState::new(0.03, 0.0, 0.0).unwrap();
    let occupancy = |epsilon: f64| {
        let p = PendulumParams::new(2.0, epsilon, 2.0, 0.0).unwrap();
        let section = poincare_section(&p, &start, 2000, &controls).unwrap();
        chaos_indicator(&section, 64).unwrap()
    };
    let quiet = occupancy(0.1);
    let stormy = occupancy(4.0);
    let ratio = stormy / quiet;
    assert!(
        ratio > 10.0,
        "box occupancy {quiet:.4} -> {stormy:.4}: contrast ratio {ratio:.1} <= 10"
    );
    println!(
        "PASS pendulum: energy drift {drift:.2e} over 1000 periods; \
         occupancy {quiet:.4} -> {stormy:.4} across the tongue edge (ratio {ratio:.1})"
    );
}

fn qstab(args: &[&str], dir: &Path) {
    let out = Command::new(env!("CARGO_BIN_EXE_qstab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary should launch");
    assert!(
        out.status.success(),
        "qstab {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn every_subcommand_is_deterministic_across_workers() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(
        tmp.path().join("bbq.net"),
        "C=2e-13 L=1.2e-9\nC=1.5e-13 L=8e-10\nC=1e-13 L=5e-10\n",
    )
    .unwrap();

    let jobs: &[(&str, &str)] = &[
        (
            "tongue",
            "[sweep]\ndelta_min = 0\ndelta_max = 6\ndelta_count = 15\n\
             epsilon_min = 0\nepsilon_max = 3\nepsilon_count = 8\n\
             gamma = 0.02\nmethod = both\n",
        ),
        (
            "spectrum",
            "[circuit]\ne_c = 0.25\ne_j_sigma = 1.25\n[spectrum]\ncount = 21\nlevels = 4\n",
        ),
        (
            "bands",
            "[circuit]\ne_c = 0.25\ne_j_sigma = 0.25\n[bands]\nn_g_count = 21\nbands = 3\n",
        ),
        ("bbq", "[network]\nnetlist = bbq.net\n[yscan]\ncount = 101\n"),
        (
            "poincare",
            "[pendulum]\ndelta = 2\nepsilon = 2.5\n[section]\nn_periods = 40\n",
        ),
        (
            "mc",
            "[circuit]\ne_c = 0.25\ne_j_sigma = 1.25\n[mc]\ne_k = 0.25\nsamples = 24\n\
             rel_sigma_ej = 0.05\nrel_sigma_ec = 0.05\n",
        ),
        ("charvals", "[charvals]\nq_count = 51\nn_max = 4\n"),
    ];

    let mut files_compared = 0usize;
    for (cmd, ini) in jobs {
        let cfg = tmp.path().join(format!("{cmd}.ini"));
        fs::write(&cfg, ini).unwrap();
        let cfg = cfg.to_str().unwrap();
        for (label, workers) in [("w1", "1"), ("w4", "4")] {
            let out = format!("{label}/{cmd}");
            qstab(
                &[cmd, "--config", cfg, "--out", &out, "--workers", workers, "--seed", "7"],
                tmp.path(),
            );
        }

        let dir1 = tmp.path().join("w1").join(cmd);
        let dir4 = tmp.path().join("w4").join(cmd);
        let mut names: Vec<String> = fs::read_dir(&dir1)
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        names.sort();
        assert!(!names.is_empty(), "{cmd} wrote no outputs");
        let mut other: Vec<String> = fs::read_dir(&dir4)
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        other.sort();
        assert_eq!(names, other, "{cmd}: file sets differ between worker counts");
        for name in &names {
            let a = fs::read(dir1.join(name)).unwrap();
            let b = fs::read(dir4.join(name)).unwrap();
            assert!(!a.is_empty(), "{cmd}/{name} is empty");
            assert_eq!(a, b, "{cmd}/{name} differs between 1 and 4 workers");
            files_compared += 1;
        }
    }
    println!(
        "PASS determinism: {files_compared} output files from {} subcommands are \
         byte-identical across worker counts",
        jobs.len()
    );
}
