//! Acceptance suite: one test per criterion, each an exact (zero-tolerance)
//! check over exact arithmetic.  Run with
//!
//!     cargo test -p b3rep --test acceptance -- --nocapture
//!
//! Each test prints a single PASS line on success; a failed assertion names
//! the offending component or instance.

use b3rep::braidrep::{burnside_dimension, jacobian_rank, lift, verify_relations, WordMode};
use b3rep::dimvectors::{
    check_tau_type, enumerate_components, n_sigma, tau_for, validate_sigma, ComponentCase,
    SigmaVector, TauVector,
};
use b3rep::linalg::{matrix_to_json, Matrix, RowSpan};
use b3rep::parametrize::{assemble_deformed, instantiate, plan_component};
use b3rep::quiver::{
    base_matrix_b0, canonical_form, is_companion, local_quiver, markov_params, meataxe_is_simple,
    westbury_rep, zero_rep, LinearSystem,
};
use b3rep::report::{par_map, run_sweep, ExecMode, SweepConfig};
use b3rep::rng::{derive_seed, SplitMix64};
use b3rep::scalars::{
    make_prime_field, Dual, DualField, EisensteinField, Field, PrimeField, DEFAULT_PRIME,
};

const SECOND_PRIME: u64 = 1_000_000_009;

fn supported_components(n_min: usize, n_max: usize) -> Vec<SigmaVector> {
    (n_min..=n_max)
        .flat_map(enumerate_components)
        .filter(|s| tau_for(s).is_ok())
        .collect()
}

#[test]
fn c1_braid_and_central_relations_hold_exactly_n3_to_12() {
    let field = make_prime_field(DEFAULT_PRIME).unwrap();
    let work: Vec<(SigmaVector, u64)> = supported_components(3, 12)
        .into_iter()
        .flat_map(|s| (0..3u64).map(move |t| (s, derive_seed(0, &s.to_string(), t))))
        .collect();
    let total = work.len();
    let failures: Vec<String> = par_map(ExecMode::default(), work, |(sigma, seed)| {
        let plan = plan_component(&sigma).expect("supported component");
        let (b, assignment) = match instantiate(&plan, &field, seed) {
            Ok(v) => v,
            Err(e) => return Some(format!("{sigma}: det B = 0 ({e})")),
        };
        let mu = assignment.value(plan.mu_param);
        let rep = lift(&b, mu, &sigma).expect("invertible point");
        let relations = verify_relations(&rep);
        if !relations.braid {
            return Some(format!("{sigma} seed {seed}: braid relation failed"));
        }
        if !relations.central {
            return Some(format!("{sigma} seed {seed}: central relation failed"));
        }
        None
    })
    .into_iter()
    .flatten()
    .collect();
    assert!(failures.is_empty(), "{failures:?}");
    println!("PASS criterion 1: braid and central relations exact on {total} trials (n = 3..=12, 3 seeds)");
}

#[test]
fn c2_burnside_dimension_is_n_squared_across_the_sweep() {
    let field = make_prime_field(DEFAULT_PRIME).unwrap();
    let work: Vec<(SigmaVector, u64)> = supported_components(3, 12)
        .into_iter()
        .flat_map(|s| (0..3u64).map(move |t| (s, derive_seed(0, &s.to_string(), t))))
        .collect();
    let total = work.len();
    let failures: Vec<String> = par_map(ExecMode::default(), work, |(sigma, seed)| {
        let plan = plan_component(&sigma).expect("supported component");
        let (b, assignment) = instantiate(&plan, &field, seed).expect("invertible point");
        let mu = assignment.value(plan.mu_param);
        let rep = lift(&b, mu, &sigma).expect("invertible point");
        let n = sigma.n();
        let dim = burnside_dimension(&rep);
        (dim != n * n).then(|| format!("{sigma} seed {seed}: burnside {dim} != {}", n * n))
    })
    .into_iter()
    .flatten()
    .collect();
    assert!(failures.is_empty(), "{failures:?}");
    println!("PASS criterion 2: burnside dimension = n^2 on {total} trials (n = 3..=12, 3 seeds)");
}

#[test]
fn c3_trace_jacobian_rank_equals_component_dimension() {
    let targets = [
        ((2usize, 1usize, 1usize, 1usize, 1usize), 2usize),
        ((3, 2, 2, 2, 1), 4),
        ((3, 3, 2, 2, 2), 7),
        ((4, 4, 3, 3, 2), 11),
        ((5, 4, 3, 3, 3), 14),
    ];
    let primes = [DEFAULT_PRIME, SECOND_PRIME];
    let work: Vec<(SigmaVector, usize, u64, u64)> = targets
        .iter()
        .flat_map(|&((a, b, x, y, z), t)| {
            let sigma = validate_sigma(a, b, x, y, z).unwrap();
            primes
                .iter()
                .flat_map(move |&p| [0u64, 1].map(move |seed| (sigma, t, p, seed)))
        })
        .collect();
    let results = par_map(ExecMode::default(), work, |(sigma, target, p, seed)| {
        let field = make_prime_field(p).unwrap();
        let plan = plan_component(&sigma).unwrap();
        let rank = jacobian_rank(&plan, &field, seed, WordMode::C2C3, 14).unwrap();
        (sigma.to_string(), target, p, seed, rank)
    });
    for (sigma, target, p, seed, rank) in &results {
        assert_eq!(
            rank, target,
            "{sigma} over fp:{p} seed {seed}: rank {rank} != n_sigma {target}"
        );
        assert_eq!(*target, n_sigma(&SigmaVector::parse(sigma).unwrap()));
    }
    println!(
        "PASS criterion 3: rank_c2c3 = n_sigma on {} (sigma, prime, seed) runs",
        results.len()
    );
}

#[test]
fn c4_tau_bookkeeping_holds_to_n30() {
    let mut supported = 0usize;
    for n in 2..=30usize {
        for sigma in enumerate_components(n) {
            let Ok((tau, case)) = tau_for(&sigma) else {
                continue;
            };
            supported += 1;
            assert!(check_tau_type(&tau, &sigma), "{sigma}");
            if let ComponentCase::Greater { d, e, f, g, h } = case {
                // automatic nonnegativity for a > b, by x = max <= b
                assert!(d >= 1 && e + 1 == d);
                let _ = (f, g, h); // usize: nonnegative by type, values checked above
            }
        }
    }
    println!("PASS criterion 4: corrected type equations hold for all {supported} supported components, n <= 30");
}

#[test]
fn c5_meataxe_and_burnside_oracles_agree() {
    // Components with coprime entries: over a small field, a component with
    // sigma = c·sigma0 contains simple points defined over an extension,
    // where graded simplicity and the n²-algebra certificate legitimately
    // part ways; coprime entries exclude that descent.
    let coprime: Vec<SigmaVector> = (2..=8)
        .flat_map(enumerate_components)
        .filter(|s| gcd5(s.a(), s.b(), s.x(), s.y(), s.z()) == 1)
        .collect();
    let mut checked = 0usize;
    for (fi, p) in [7u64, DEFAULT_PRIME].into_iter().enumerate() {
        let field = make_prime_field(p).unwrap();
        let mut rng = SplitMix64::new(500 + fi as u64);
        for i in 0..25usize {
            let sigma = coprime[rng.next_below(coprime.len() as u64) as usize];
            let n = sigma.n();
            let b = loop {
                let b = Matrix::from_fn(field, n, n, |_, _| field.sample(&mut rng));
                if b.inverse().is_ok() {
                    break b;
                }
            };
            let mu = loop {
                let m = field.sample(&mut rng);
                if !field.is_zero(&m) {
                    break m;
                }
            };
            let rep = lift(&b, &mu, &sigma).unwrap();
            let irreducible = burnside_dimension(&rep) == n * n;
            let simple = meataxe_is_simple(&field, &westbury_rep(&b, &sigma).unwrap(), i as u64);
            assert_eq!(
                irreducible, simple,
                "fp:{p} instance {i} at {sigma}: burnside says {irreducible}, meataxe says {simple}"
            );
            checked += 1;
        }
    }
    println!("PASS criterion 5: meataxe and burnside verdicts agree on {checked} instances (F7 and default prime)");
}

fn gcd2(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd2(b, a % b)
    }
}

fn gcd5(a: usize, b: usize, c: usize, d: usize, e: usize) -> usize {
    gcd2(gcd2(gcd2(a, b), gcd2(c, d)), e)
}

#[test]
fn c6_canonical_form_preserves_markov_parameters_over_the_rationals() {
    let q = EisensteinField;
    let mut rng = SplitMix64::new(6);
    let mut done = 0usize;
    while done < 20 {
        let n = 1 + rng.next_below(6) as usize;
        let m = 1 + rng.next_below(6) as usize;
        let p = 1 + rng.next_below(6) as usize;
        let sys = LinearSystem::new(
            Matrix::from_fn(q, n, n, |_, _| q.sample(&mut rng)),
            Matrix::from_fn(q, n, m, |_, _| q.sample(&mut rng)),
            Matrix::from_fn(q, p, n, |_, _| q.sample(&mut rng)),
        )
        .unwrap();
        let Ok(canon) = canonical_form(&sys) else {
            continue; // non-cyclic draw; the criterion quantifies over cyclic systems
        };
        assert!(is_companion(&canon.a), "A' not in companion form (n={n})");
        for r in 0..n {
            let expected = if r == 0 { q.one() } else { q.zero() };
            assert_eq!(canon.b.get(r, 0), &expected, "B' first column != e1");
        }
        assert_eq!(
            markov_params(&sys, 2 * n),
            markov_params(&canon, 2 * n),
            "Markov parameters changed (n={n}, m={m}, p={p})"
        );
        done += 1;
    }
    println!("PASS criterion 6: canonical form exact on 20 random cyclic systems over Q(rho), n,m,p <= 6");
}

/// Rank of the Jacobian of the Markov map CA^kB (k < 2n) with respect to
/// the free entries of the companion normal form, by dual numbers.
fn markov_jacobian_rank(field: PrimeField, n: usize, m: usize, p: usize, seed: u64) -> usize {
    let mut rng = SplitMix64::new(seed);
    let dual = DualField::new(field);
    let a0: Vec<u64> = (0..n).map(|_| field.sample(&mut rng)).collect();
    let b0: Vec<u64> = (0..n * m).map(|_| field.sample(&mut rng)).collect();
    let c0: Vec<u64> = (0..p * n).map(|_| field.sample(&mut rng)).collect();
    let free = n + n * (m - 1) + p * n;
    let mut span = RowSpan::new(field, 2 * n * p * m);
    for dir in 0..free {
        let mut next = 0usize;
        let mut fresh = |base: &u64| {
            let e = if next == dir { field.one() } else { field.zero() };
            next += 1;
            Dual { v: *base, e }
        };
        // companion A: subdiagonal ones, free last column
        let mut a = Matrix::zeros(dual.clone(), n, n);
        for r in 1..n {
            a.set(r, r - 1, dual.one());
        }
        for (r, v) in a0.iter().enumerate() {
            a.set(r, n - 1, fresh(v));
        }
        // B: first column e1, remaining columns free
        let mut b = Matrix::zeros(dual.clone(), n, m);
        b.set(0, 0, dual.one());
        for c in 1..m {
            for r in 0..n {
                b.set(r, c, fresh(&b0[r * m + c]));
            }
        }
        // C: fully free
        let c = Matrix::from_fn(dual.clone(), p, n, |r, cc| fresh(&c0[r * n + cc]));
        let sys = LinearSystem::new(a, b, c).unwrap();
        let row: Vec<u64> = markov_params(&sys, 2 * n)
            .iter()
            .flat_map(|mk| mk.data().iter().map(|d| d.e))
            .collect();
        span.insert(row);
    }
    span.dim()
}

#[test]
fn c7_markov_jacobian_has_the_moduli_rank() {
    let field = make_prime_field(DEFAULT_PRIME).unwrap();
    for n in 1..=3usize {
        for m in 1..=3usize {
            for p in 1..=3usize {
                let rank = markov_jacobian_rank(field, n, m, p, (n * 100 + m * 10 + p) as u64);
                assert_eq!(
                    rank,
                    (m + p) * n,
                    "Markov Jacobian rank at (n,m,p)=({n},{m},{p})"
                );
            }
        }
    }
    println!("PASS criterion 7: Markov-parameter Jacobian rank = (m+p)n for all n,m,p <= 3");
}

#[test]
fn c8_deformed_assembly_anchors_to_the_base_matrix() {
    let field = make_prime_field(DEFAULT_PRIME).unwrap();
    let quiver = local_quiver();
    let mut rng = SplitMix64::new(8);
    let mut done = 0usize;
    while done < 50 {
        let entries: [usize; 9] = std::array::from_fn(|_| rng.next_below(4) as usize);
        let tau = TauVector::from_array(entries);
        if tau.n() == 0 {
            continue;
        }
        let q = loop {
            let q = field.sample(&mut rng);
            if !field.is_zero(&q) && !field.is_one(&q) {
                break q;
            }
        };
        let rep = zero_rep(&field, &quiver, &tau.as_array());
        let assembled = assemble_deformed(&tau, &rep, &q, &field).unwrap();
        let base = base_matrix_b0(&tau, &q, &field).unwrap();
        // byte-exact through the serialized payloads
        assert_eq!(
            serde_json::to_string(&matrix_to_json(&assembled)).unwrap(),
            serde_json::to_string(&matrix_to_json(&base)).unwrap(),
            "tau = {tau}"
        );
        done += 1;
    }

    // the semisimple base point with three one-dimensional summands lifts to
    // a three-character representation
    let tau = TauVector::from_array([1, 0, 0, 0, 1, 1, 0, 0, 0]);
    let q = field.from_i64(4);
    let b0 = base_matrix_b0(&tau, &q, &field).unwrap();
    let (a, b, x, y, z) = tau.sigma_parts();
    let sigma = validate_sigma(a, b, x, y, z).unwrap();
    let rep = lift(&b0, &field.from_i64(9), &sigma).unwrap();
    assert_eq!(burnside_dimension(&rep), 3);
    println!("PASS criterion 8: deformed assembly = base matrix on 50 random tau; base-point lift has algebra dimension 3");
}

#[test]
fn c9_degenerate_components_are_reported_not_crashed() {
    let config = SweepConfig::new(2, 12, DEFAULT_PRIME, 1, 0);
    let report = run_sweep(&config).unwrap();
    let unsupported: Vec<(String, String)> = report
        .components
        .iter()
        .filter(|c| c.status == "unsupported")
        .map(|c| (c.sigma.clone(), c.reason.clone().unwrap_or_default()))
        .collect();
    // exactly the two extreme families (a,a;a,a,0) and (a,a;a,0,a)
    let mut expected = Vec::new();
    for a in 1..=6usize {
        expected.push((format!("{a},{a}:{a},{a},0"), "g = -1".to_string()));
        expected.push((format!("{a},{a}:{a},0,{a}"), "f = -1".to_string()));
    }
    let mut got = unsupported.clone();
    got.sort();
    expected.sort();
    assert_eq!(got, expected);
    assert!(report.components.iter().any(|c| c.sigma == "2,2:2,2,0"));
    // supported components all ran to a verdict
    for c in &report.components {
        if c.status != "unsupported" {
            assert_eq!(c.trials.len(), 1, "{}", c.sigma);
        }
    }
    assert!(report.all_pass);
    println!(
        "PASS criterion 9: sweep n <= 12 lists {} degenerate components and completes ({} supported pass)",
        unsupported.len(),
        report.summary.passed
    );
}
