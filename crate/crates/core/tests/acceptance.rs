//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spectra_core::families::{
    construct_b, construct_c, max_cross_product_search, max_intersecting_search, maurey_check, PermFamily,
    SearchConfig,
};
use spectra_core::group_algebra::{
    characteristic_vector, coset_span_partitions, coset_span_rank, distance_to_u, project_isotypic_naive,
    project_onto, projection_coordinate_closed_form,
};
use spectra_core::repr::{dimension, low_dim_classification, permutation_character_by_kostka,
    permutation_character_by_tabloids, CharacterTable};
use spectra_core::sampling::{random_cross_intersecting_pair, random_maximal_intersecting};
use spectra_core::spectral::{
    cross_distance_inequality_check, derangement_classes, derangement_spectrum, distance_bound_independent,
    hoffman_independent_bound, normal_cayley_spectrum, nu_formula_check, trace_identity_check,
};
use spectra_core::{partitions_of, Partition, Permutation, Rational};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn fact(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `d_n = (n-1)(d_{n-1} + d_{n-2})`.
fn derangements(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::one(), BigInt::zero());
    if n == 0 {
        return a;
    }
    for k in 2..=n {
        let next = BigInt::from(k - 1) * (&a + &b);
        a = b;
        b = next;
    }
    b
}

fn class_size(p: &Partition) -> BigInt {
    let n = p.n();
    let mut z = BigInt::one();
    for k in 1..=n {
        let m = p.parts().iter().filter(|&&x| x == k).count();
        z *= BigInt::from(k).pow(m as u32) * fact(m);
    }
    fact(n) / z
}

fn hook_dimension(p: &Partition) -> BigInt {
    let parts = p.parts();
    let mut prod = BigInt::one();
    for (r, &len) in parts.iter().enumerate() {
        for c in 0..len {
            let arm = len - c - 1;
            let leg = parts[r + 1..].iter().filter(|&&l| l > c).count();
            prod *= BigInt::from(arm + leg + 1);
        }
    }
    fact(p.n()) / prod
}

fn part(v: Vec<usize>) -> Partition {
    Partition::new(v).unwrap()
}

fn sign(k: usize) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `{σ : σ(i) = j}` by filtering the group.
fn coset_oracle(n: usize, i: usize, j: usize) -> PermFamily {
    let members: Vec<Permutation> = Permutation::all(n).into_iter().filter(|p| p.apply(i) == j).collect();
    PermFamily::from_perms(n, &members).unwrap()
}

fn all_cosets_oracle(n: usize) -> BTreeSet<PermFamily> {
    (0..n).flat_map(|i| (0..n).map(move |j| coset_oracle(n, i, j))).collect()
}

fn pairwise_intersecting(f: &PermFamily) -> bool {
    let perms = f.perms();
    perms.iter().all(|a| perms.iter().all(|b| a.intersects(b)))
}

fn exhaustive() -> SearchConfig {
    SearchConfig {
        budget: None,
        ..SearchConfig::default()
    }
}

fn eigenvalue_table() -> Outcome {
    let start = Instant::now();
    for n in 4..=9 {
        let t = derangement_spectrum(n).map_err(|e| e.to_string())?;
        let d = derangements(n);
        let rows = [
            (vec![n], d.clone()),
            (vec![n - 1, 1], -(&d / BigInt::from(n - 1))),
            (vec![1; n], sign(n - 1) * BigInt::from(n - 1)),
            (std::iter::once(2).chain(std::iter::repeat_n(1, n - 2)).collect(), sign(n)),
        ];
        for (parts, expected) in rows {
            let a = part(parts);
            ensure!(t.eigenvalue(&a) == Some(&expected), "n={n}: lambda_{a} = {:?}, expected {expected}", t.eigenvalue(&a));
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(format!("n=4..9 in {elapsed:.2?}"))
}

fn trace_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut unions = 0;
    for n in 3..=9 {
        let t = derangement_spectrum(n).map_err(|e| e.to_string())?;
        let lhs: BigInt = t.entries.iter().map(|e| (hook_dimension(&e.alpha) * &e.lambda).pow(2)).sum();
        ensure!(lhs == fact(n) * derangements(n), "n={n}: {lhs}");
        ensure!(trace_identity_check(&t).passed, "n={n}: library check");
        let classes = derangement_classes(n);
        for _ in 0..20 {
            let pick: Vec<Partition> = loop {
                let p: Vec<Partition> = classes.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
                if !p.is_empty() {
                    break p;
                }
            };
            let degree: BigInt = pick.iter().map(class_size).sum();
            let t = normal_cayley_spectrum(n, &pick).map_err(|e| e.to_string())?;
            ensure!(t.degree == degree, "n={n}: degree");
            let lhs: BigInt = t.entries.iter().map(|e| (hook_dimension(&e.alpha) * &e.lambda).pow(2)).sum();
            ensure!(lhs == fact(n) * &degree, "n={n}: union {pick:?}");
            unions += 1;
        }
    }
    Ok(format!("n=3..9, {unions} random class unions, residual 0"))
}

fn nu_claim() -> Outcome {
    for n in 4..=9 {
        let t = derangement_spectrum(n).map_err(|e| e.to_string())?;
        let expected = Rational::new(derangements(n), BigInt::from(n - 1));
        let s = t.summary();
        ensure!(Rational::from_integer(s.nu.clone()) == expected, "n={n}: nu={}", s.nu);
        if n >= 5 {
            for e in &t.entries {
                if e.alpha != part(vec![n]) && e.alpha != part(vec![n - 1, 1]) {
                    ensure!(Rational::from_integer(e.lambda.abs()) < expected, "n={n}: |lambda_{}|", e.alpha);
                }
            }
            ensure!(!s.tie_flag, "n={n}: unexpected tie");
        }
    }
    let r4 = nu_formula_check(4).map_err(|e| e.to_string())?;
    let t4 = derangement_spectrum(4).map_err(|e| e.to_string())?;
    let three = BigInt::from(3);
    ensure!(r4.tie_flag, "tie at n=4 not flagged");
    ensure!(
        t4.eigenvalue(&part(vec![1, 1, 1, 1])).map(|v| v.abs()) == Some(three.clone())
            && t4.eigenvalue(&part(vec![3, 1])).map(|v| v.abs()) == Some(three),
        "n=4 tie values"
    );
    Ok("nu = d_n/(n-1) for n=4..9, strict for n=5..9, tie reported at n=4".into())
}

fn deza_frankl_tightness() -> Outcome {
    for n in 4..=9 {
        let t = derangement_spectrum(n).map_err(|e| e.to_string())?;
        let s = t.summary();
        let h = hoffman_independent_bound(&s.d, &s.lambda_min, &t.order()).map_err(|e| e.to_string())?;
        ensure!(h == Rational::from_integer(fact(n - 1)), "n={n}: Hoffman {h}");
    }
    let mut notes = Vec::new();
    for n in [4, 5] {
        let start = Instant::now();
        let r = max_intersecting_search(n, &exhaustive()).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure!(r.is_complete(), "n={n}: incomplete");
        ensure!(r.optimum == fact(n - 1), "n={n}: optimum {}", r.optimum);
        let found: BTreeSet<PermFamily> = r.witnesses.iter().map(|w| w.a.clone()).collect();
        ensure!(found == all_cosets_oracle(n), "n={n}: {} witnesses are not the 1-cosets", found.len());
        ensure!(found.iter().all(pairwise_intersecting), "n={n}: witness not intersecting");
        ensure!(elapsed < Duration::from_secs(600), "n={n}: took {elapsed:?}");
        notes.push(format!("n={n}: {} cosets in {elapsed:.2?}", found.len()));
    }
    Ok(format!("Hoffman = (n-1)! for n=4..9; {}", notes.join(", ")))
}

fn leader_bound() -> Outcome {
    let start = Instant::now();
    let r = max_cross_product_search(4, &exhaustive()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(r.is_complete() && r.optimum == 36.into(), "n=4: optimum {}", r.optimum);
    let cosets = all_cosets_oracle(4);
    let pairs: BTreeSet<PermFamily> = r
        .witnesses
        .iter()
        .map(|w| {
            if w.b.as_ref() == Some(&w.a) {
                Ok(w.a.clone())
            } else {
                Err("optimal pair with A != B".to_string())
            }
        })
        .collect::<Result<_, _>>()?;
    ensure!(pairs == cosets && r.witness_count == 16, "n=4: optima are not exactly A = B = 1-coset");
    ensure!(elapsed < Duration::from_secs(300), "n=4 scan took {elapsed:?}");
    let r3 = max_cross_product_search(3, &exhaustive()).map_err(|e| e.to_string())?;
    ensure!(r3.optimum > 4.into(), "n=3 optimum {}", r3.optimum);
    let a = PermFamily::from_perms(
        3,
        &[
            Permutation::identity(3),
            Permutation::parse_cycles(3, "(1 2 3)").unwrap(),
            Permutation::parse_cycles(3, "(1 3 2)").unwrap(),
        ],
    )
    .unwrap();
    let b = PermFamily::from_perms(
        3,
        &["(1 2)", "(2 3)", "(1 3)"].map(|c| Permutation::parse_cycles(3, c).unwrap()),
    )
    .unwrap();
    let has_pair = r3.witnesses.iter().any(|w| w.a == a && w.b.as_ref() == Some(&b));
    ensure!(r3.optimum != 9.into() || has_pair, "n=3: even/odd pair missing from optima");
    Ok(format!("n=4: 36 with 16 coset pairs in {elapsed:.2?}; n=3 optimum {}", r3.optimum))
}

fn low_dimensional_shapes() -> Outcome {
    let start = Instant::now();
    for n in 9..=13 {
        let threshold = BigInt::from((n - 1) * (n - 2) / 2) - 1;
        let scanned: BTreeSet<Partition> = partitions_of(n)
            .into_iter()
            .filter(|a| hook_dimension(a) < threshold)
            .collect();
        let expected: BTreeSet<Partition> = [
            vec![n],
            vec![1; n],
            vec![n - 1, 1],
            std::iter::once(2).chain(std::iter::repeat_n(1, n - 2)).collect(),
        ]
        .into_iter()
        .map(part)
        .collect();
        ensure!(scanned == expected, "n={n}: oracle scan {scanned:?}");
        let lib: BTreeSet<Partition> = low_dim_classification(n, None).into_iter().collect();
        ensure!(lib == expected, "n={n}: library scan {lib:?}");
        // boundary shapes sit at or above the threshold
        let c2 = BigInt::from((n - 1) * (n - 2) / 2);
        ensure!(dimension(&part(vec![n - 2, 2])) == &c2 - 1, "n={n}: f^(n-2,2)");
        ensure!(dimension(&part(vec![n - 2, 1, 1])) == c2, "n={n}: f^(n-2,1,1)");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!("four shapes for n=9..13 in {elapsed:.2?}"))
}

fn coset_rank() -> Outcome {
    let mut ranks = Vec::new();
    for n in 3..=6 {
        let r = coset_span_rank(n).map_err(|e| e.to_string())?;
        ensure!(r == 1 + (n - 1) * (n - 1), "n={n}: rank {r}");
        ranks.push(r.to_string());
    }
    Ok(format!("ranks {} for n=3..6", ranks.join(", ")))
}

fn two_route_projection() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut count = 0;
    for n in [4, 5] {
        let order = fact(n).try_into().unwrap();
        let mut families = vec![construct_b(n).unwrap(), construct_c(n).unwrap()];
        families.extend(all_cosets_oracle(n));
        for _ in 0..20 {
            families.push(PermFamily::from_ranks(n, (0..order).filter(|_| rng.gen_bool(0.3))).unwrap());
        }
        let span = coset_span_partitions(n);
        for f in &families {
            let v = characteristic_vector::<Rational>(f);
            let p = project_onto(&v, &span).map_err(|e| e.to_string())?;
            if n == 4 {
                // third route: element-by-element convolution
                let naive = project_isotypic_naive(&v, &span[0])
                    .and_then(|a| project_isotypic_naive(&v, &span[1]).map(|b| a.add(&b)))
                    .map_err(|e| e.to_string())?;
                ensure!(naive == p, "n=4: convolution route differs");
            }
            for s in Permutation::all(n) {
                let closed = projection_coordinate_closed_form(f, &s).map_err(|e| e.to_string())?;
                ensure!(&closed == p.get(&s), "n={n}: coordinate {s} differs");
            }
            count += 1;
        }
    }
    Ok(format!("{count} families, every coordinate equal"))
}

fn constructions() -> Outcome {
    for n in 4..=8 {
        let all = Permutation::all(n);
        let b_oracle: Vec<Permutation> = all
            .iter()
            .filter(|p| (0..3).filter(|&x| p.apply(x) == x).count() >= 2)
            .cloned()
            .collect();
        let t12 = Permutation::from_cycles(n, &[&[1, 2]]).unwrap();
        let c_oracle: Vec<Permutation> = all
            .iter()
            .filter(|p| (p.apply(0) == 0 && p.intersects(&t12)) || **p == t12)
            .cloned()
            .collect();
        let b = construct_b(n).unwrap();
        let c = construct_c(n).unwrap();
        ensure!(b == PermFamily::from_perms(n, &b_oracle).unwrap(), "n={n}: B differs from definition");
        ensure!(c == PermFamily::from_perms(n, &c_oracle).unwrap(), "n={n}: C differs from definition");
        let b_formula = 3 * fact(n - 2) - 2 * fact(n - 3);
        let c_formula = fact(n - 1) - derangements(n - 1) - derangements(n - 2) + 1;
        ensure!(BigInt::from(b.len()) == b_formula, "n={n}: |B|={}", b.len());
        ensure!(BigInt::from(c.len()) == c_formula, "n={n}: |C|={}", c.len());
        if n <= 5 {
            ensure!(b.len() == c.len(), "n={n}: |B| != |C|");
        } else {
            ensure!(c.len() > b.len(), "n={n}: |C| <= |B|");
        }
        // removals by brute-force slice maximization
        let removals = |f: &PermFamily| {
            let perms = f.perms();
            let best = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| perms.iter().filter(|p| p.apply(i) == j).count())
                .max()
                .unwrap();
            BigInt::from(perms.len() - best)
        };
        ensure!(removals(&b) == fact(n - 2) - fact(n - 3), "n={n}: B removals");
        ensure!(b.min_removals_to_centred() == removals(&b), "n={n}: library B removals");
        ensure!(removals(&c).is_one() && c.min_removals_to_centred().is_one(), "n={n}: C removals");
    }
    Ok("n=4..8 sizes, ordering and removals match".into())
}

fn stability_inequalities() -> Outcome {
    let t = derangement_spectrum(5).map_err(|e| e.to_string())?;
    let s = t.summary();
    let lambda_m = s.lambda_m.clone().ok_or("no lambda_M")?;
    let span = coset_span_partitions(5);
    let n_fact = Rational::from_integer(120.into());
    // D² through the closed form: α - (1/N) Σ_{σ∈A} P_σ
    let closed_d2 = |f: &PermFamily| -> Result<Rational, String> {
        let mut sum = Rational::zero();
        for s in f.perms() {
            sum += projection_coordinate_closed_form(f, &s).map_err(|e| e.to_string())?;
        }
        Ok(Rational::new(f.len().into(), 120.into()) - sum / &n_fact)
    };
    let mut families: Vec<PermFamily> = Vec::new();
    for non_centred in [false, true] {
        let cfg = SearchConfig {
            non_centred,
            ..exhaustive()
        };
        let r = max_intersecting_search(5, &cfg).map_err(|e| e.to_string())?;
        ensure!(r.is_complete() && !r.witnesses_truncated, "search incomplete");
        families.extend(r.witnesses.into_iter().map(|w| w.a));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..100 {
        families.push(random_maximal_intersecting(5, &mut rng).map_err(|e| e.to_string())?);
    }
    for (k, f) in families.iter().enumerate() {
        let d2 = closed_d2(f)?;
        if k % 50 == 0 {
            let lib = distance_to_u(&characteristic_vector::<Rational>(f), &span).map_err(|e| e.to_string())?;
            ensure!(lib == d2, "distance routes differ");
        }
        let alpha = Rational::new(f.len().into(), 120.into());
        let bound = distance_bound_independent(&alpha, &s.d, &s.lambda_min, &lambda_m).map_err(|e| e.to_string())?;
        ensure!(d2 <= bound, "family {k}: D^2 {d2} > {bound}");
    }
    let mut pair_rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..100 {
        let (a, b) = random_cross_intersecting_pair(5, &mut pair_rng).map_err(|e| e.to_string())?;
        ensure!(a.is_cross_intersecting(&b).unwrap(), "pair {k} not cross-intersecting");
        let (d2, e2) = (closed_d2(&a)?, closed_d2(&b)?);
        let r = cross_distance_inequality_check(&a, &b, &s, &d2, &e2).map_err(|e| e.to_string())?;
        ensure!(r.holds, "pair {k}: inequality fails");
    }
    Ok(format!("{} independent sets and 100 cross pairs", families.len()))
}

fn slice_bound() -> Outcome {
    let mut families = vec![construct_b(5).unwrap(), construct_c(5).unwrap()];
    families.extend(all_cosets_oracle(5));
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        families.push(random_maximal_intersecting(5, &mut rng).map_err(|e| e.to_string())?);
    }
    let bound = BigInt::from(36);
    let mut checks = 0;
    for f in &families {
        let perms = f.perms();
        for i in 0..5 {
            for j in 0..5 {
                for k in (0..5).filter(|&k| k != j) {
                    let r = f.slice_product_check(i, j, k).map_err(|e| e.to_string())?;
                    let direct = perms.iter().filter(|p| p.apply(i) == j).count()
                        * perms.iter().filter(|p| p.apply(i) == k).count();
                    ensure!(r.product == direct.into() && BigInt::from(direct) <= bound, "({i},{j},{k}) direct");
                    ensure!(r.direct_holds && r.reduced_holds && r.reduced_cross_intersecting, "({i},{j},{k}) routes");
                    ensure!(r.verdicts_agree(), "({i},{j},{k}) verdicts differ");
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{} families, {checks} slice pairs, verdicts identical", families.len()))
}

fn maurey() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let two = Rational::from_integer(2.into());
    let mut radii = BTreeSet::new();
    for n in [5usize, 6] {
        let order: usize = fact(n).try_into().unwrap();
        let a = Rational::new(BigInt::one(), BigInt::from(n.pow(4)));
        for k in 0..50 {
            let size = rng.gen_range(1..=order / 4);
            let mut ranks: Vec<usize> = (0..order).collect();
            for x in 0..size {
                let y = rng.gen_range(x..order);
                ranks.swap(x, y);
            }
            let x = PermFamily::from_ranks(n, ranks[..size].iter().copied()).unwrap();
            let r = maurey_check(&x, &a, &two).map_err(|e| e.to_string())?;
            ensure!(r.size_condition, "n={n} set {k}: |X| < a n!");
            ensure!(r.holds, "n={n} set {k}: neighbourhood {} below bound", r.neighborhood);
            radii.insert((n, r.radius));
        }
    }
    Ok(format!("100 sets, (n, radius) {radii:?}"))
}

fn character_engine() -> Outcome {
    for n in 1..=9 {
        let t = CharacterTable::get(n);
        t.check_column_orthogonality().map_err(|e| format!("n={n}: {e}"))?;
        let parts = partitions_of(n);
        for a in &parts {
            ensure!(t.value(a, &part(vec![1; n])) == Some(&hook_dimension(a)), "n={n}: degree of {a}");
            for b in &parts {
                let sign_b = if (n - b.len()) % 2 == 0 { 1 } else { -1 };
                let lhs = t.value(&a.transpose(), b).unwrap();
                let rhs = t.value(a, b).unwrap() * sign_b;
                ensure!(*lhs == rhs, "n={n}: transpose sign at ({a}, {b})");
            }
        }
    }
    for n in 1..=6 {
        for b in partitions_of(n) {
            for g in partitions_of(n) {
                let k = permutation_character_by_kostka(&b, &g).map_err(|e| e.to_string())?;
                let f = permutation_character_by_tabloids(&b, &g).map_err(|e| e.to_string())?;
                ensure!(k == f, "n={n}: ({b}, {g})");
            }
        }
    }
    Ok("orthogonality and transpose sign for n<=9, two routes agree for n<=6".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("eigenvalue table", eigenvalue_table),
        ("trace identity", trace_identity),
        ("nu claim", nu_claim),
        ("Deza-Frankl tightness", deza_frankl_tightness),
        ("Leader bound at n=4", leader_bound),
        ("low-dimensional shapes", low_dimensional_shapes),
        ("coset span rank", coset_rank),
        ("two-route projection", two_route_projection),
        ("constructions", constructions),
        ("stability inequalities", stability_inequalities),
        ("slice bound", slice_bound),
        ("Maurey spot checks", maurey),
        ("character engine", character_engine),
    ];
    let mut failures = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{elapsed:.2?}]", k + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{elapsed:.2?}]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
