//! Named invariant suites over a range of `n`, run by the `verify` command.

use std::cell::Cell;
use std::collections::BTreeSet;
use std::time::Duration;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{derangement_count, factorial, DerangementStats};
use crate::error::{Result, SpectraError};
use crate::families::{
    b_size_formula, c_size_formula, construct_b, construct_c, count_agreeing_at_two_separate_points,
    deza_frankl_partition_check, intersecting_with_fixed_tau_count, max_cross_product_search,
    max_intersecting_search, maurey_check, PermFamily, SearchConfig,
};
use crate::group::SymmetricGroup;
use crate::group_algebra::{
    apply_derangement_adjacency, characteristic_vector, coset_span_partitions, coset_span_rank, distance_to_u,
    project_all, project_onto, projection_coordinate_closed_form, projection_report,
};
use crate::partition::{partitions_of, Partition};
use crate::perm::Permutation;
use crate::repr::{
    branching_restriction, dimension, low_dim_classification, permutation_character_by_kostka,
    permutation_character_by_tabloids, CharacterTable,
};
use crate::sampling::{
    random_class_union, random_cross_intersecting_pair, random_family, random_maximal_intersecting,
    random_permutation, random_rational_vector, seeded,
};
use crate::spectral::{
    cross_distance_inequality_check, derangement_spectrum, distance_bound_independent, hoffman_independent_bound,
    normal_cayley_spectrum, nu_formula_check, trace_identity_check,
};
use crate::Rational;

pub const TASKS: [&str; 5] = ["perm-core", "repr", "spectral", "group-algebra", "families"];

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub tasks: Vec<String>,
    pub budget: Option<Duration>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            n_min: 3,
            n_max: 7,
            seed: 42,
            tasks: TASKS.iter().map(|s| s.to_string()).collect(),
            budget: Some(Duration::from_secs(60)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskReport {
    pub task: String,
    pub passed: bool,
    pub incomplete: bool,
    pub checks: Vec<CheckOutcome>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub passed: bool,
    pub incomplete: bool,
    pub tasks: Vec<TaskReport>,
}

impl VerifyReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.tasks.iter().flat_map(|t| t.checks.iter()).filter(|c| !c.passed)
    }
}

struct Checks {
    task: &'static str,
    out: Vec<CheckOutcome>,
    incomplete: bool,
}

impl Checks {
    fn new(task: &'static str) -> Self {
        Self {
            task,
            out: Vec::new(),
            incomplete: false,
        }
    }

    fn check(&mut self, name: impl AsRef<str>, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, e.to_string()),
        };
        self.out.push(CheckOutcome {
            name: format!("{}.{}", self.task, name.as_ref()),
            passed,
            detail,
        });
    }

    fn finish(self) -> TaskReport {
        TaskReport {
            task: self.task.to_string(),
            passed: self.out.iter().all(|c| c.passed),
            incomplete: self.incomplete,
            checks: self.out,
        }
    }
}

fn ok(b: bool) -> Result<(bool, String)> {
    Ok((b, String::new()))
}

fn range(cfg: &VerifyConfig, lo: usize, hi: usize) -> std::ops::RangeInclusive<usize> {
    cfg.n_min.max(lo)..=cfg.n_max.min(hi)
}

fn perm_core(cfg: &VerifyConfig) -> TaskReport {
    let mut c = Checks::new("perm-core");
    let mut rng = seeded(cfg.seed);
    for n in range(cfg, 1, 8) {
        c.check(format!("derangement-closed-forms[n={n}]"), || {
            let g = SymmetricGroup::get(n)?;
            let d = g.elements().iter().filter(|p| p.is_derangement()).count();
            let signed: i64 = g
                .elements()
                .iter()
                .filter(|p| p.is_derangement())
                .map(|p| i64::from(p.sign()))
                .sum();
            let stats = DerangementStats::new(n);
            ok(stats.d == d.into() && stats.e_minus_o == signed.into() && stats.matches_closed_form())
        });
        c.check(format!("rank-roundtrip[n={n}]"), || {
            let g = SymmetricGroup::get(n)?;
            ok(g.elements()
                .iter()
                .enumerate()
                .all(|(r, p)| p.lex_rank() == r && Permutation::from_lex_rank(n, r) == *p))
        });
        let samples: Vec<(Permutation, Permutation, usize)> = (0..50)
            .map(|_| (random_permutation(n, &mut rng), random_permutation(n, &mut rng), rng_index(&mut rng, n)))
            .collect();
        c.check(format!("i-fix-agreements[n={n}]"), || {
            for (p, q, i) in &samples {
                let fixed = p.i_fix(*i)?;
                if fixed.apply(*i) != *i {
                    return ok(false);
                }
                for j in 0..n {
                    if j != *i && p.apply(j) == q.apply(j) && q.apply(j) != *i && fixed.apply(j) != q.apply(j) {
                        return ok(false);
                    }
                }
            }
            ok(true)
        });
        c.check(format!("class-sizes[n={n}]"), || {
            let g = SymmetricGroup::get(n)?;
            let mut counts = vec![0usize; g.classes().len()];
            for r in 0..g.order() {
                counts[g.class_index(r)] += 1;
            }
            ok(g.classes()
                .iter()
                .zip(&counts)
                .all(|(cls, &k)| crate::counting::conjugacy_class_size(cls) == k.into()))
        });
    }
    c.finish()
}

fn rng_index(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> usize {
    use rand::Rng;
    rng.gen_range(0..n)
}

fn repr_suite(cfg: &VerifyConfig) -> TaskReport {
    let mut c = Checks::new("repr");
    for n in range(cfg, 1, 9) {
        c.check(format!("column-orthogonality[n={n}]"), || {
            let t = CharacterTable::get(n);
            match t.check_column_orthogonality() {
                Ok(()) => ok(true),
                Err(e) => Ok((false, e)),
            }
        });
        c.check(format!("transpose-sign[n={n}]"), || {
            let t = CharacterTable::get(n);
            for a in partitions_of(n) {
                for b in partitions_of(n) {
                    let lhs = t.value(&a.transpose(), &b).cloned();
                    let rhs = t.value(&a, &b).map(|v| v * b.class_sign());
                    if lhs != rhs {
                        return Ok((false, format!("alpha={a}, beta={b}")));
                    }
                }
            }
            ok(true)
        });
        c.check(format!("dimension-squares[n={n}]"), || {
            let total: BigInt = partitions_of(n).iter().map(|a| dimension(a).pow(2)).sum();
            ok(total == factorial(n))
        });
        c.check(format!("branching-dimensions[n={n}]"), || {
            ok(n < 2 || partitions_of(n).iter().all(|a| branching_restriction(a).total_dimension() == dimension(a)))
        });
    }
    for n in range(cfg, 1, 6) {
        c.check(format!("permutation-character-two-routes[n={n}]"), || {
            for b in partitions_of(n) {
                for g in partitions_of(n) {
                    if permutation_character_by_kostka(&b, &g)? != permutation_character_by_tabloids(&b, &g)? {
                        return Ok((false, format!("beta={b}, gamma={g}")));
                    }
                }
            }
            ok(true)
        });
    }
    for n in range(cfg, 9, 13) {
        c.check(format!("low-dimensional-shapes[n={n}]"), || {
            let shapes = low_dim_classification(n, None);
            let expected: BTreeSet<Partition> = [vec![n], vec![n - 1, 1]]
                .into_iter()
                .map(Partition::new)
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flat_map(|p| [p.transpose(), p])
                .collect();
            ok(shapes.into_iter().collect::<BTreeSet<_>>() == expected)
        });
    }
    c.finish()
}

fn spectral_suite(cfg: &VerifyConfig) -> TaskReport {
    let mut c = Checks::new("spectral");
    let mut rng = seeded(cfg.seed ^ 0x5eed);
    for n in range(cfg, 2, 9) {
        c.check(format!("trace-identity[n={n}]"), || {
            let r = trace_identity_check(&derangement_spectrum(n)?);
            Ok((r.passed, format!("residual {}", r.residual)))
        });
        let unions: Vec<Vec<Partition>> = (0..20).map(|_| random_class_union(n, &mut rng)).collect();
        c.check(format!("trace-identity-random-unions[n={n}]"), || {
            for u in &unions {
                if !trace_identity_check(&normal_cayley_spectrum(n, u)?).passed {
                    return ok(false);
                }
            }
            ok(true)
        });
        if n >= 4 {
            c.check(format!("eigenvalue-table[n={n}]"), || {
                let t = derangement_spectrum(n)?;
                let dn = derangement_count(n);
                let sign = |k: usize| if k.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
                let rows = [
                    (vec![n], dn.clone()),
                    (vec![n - 1, 1], -(&dn / BigInt::from(n - 1))),
                    (vec![1; n], sign(n - 1) * BigInt::from(n - 1)),
                    (std::iter::once(2).chain(std::iter::repeat_n(1, n - 2)).collect(), sign(n)),
                ];
                for (parts, expected) in rows {
                    let a = Partition::new(parts)?;
                    if t.eigenvalue(&a) != Some(&expected) {
                        return Ok((false, format!("alpha={a}")));
                    }
                }
                ok(true)
            });
            c.check(format!("hoffman-equals-(n-1)![n={n}]"), || {
                let t = derangement_spectrum(n)?;
                let s = t.summary();
                ok(hoffman_independent_bound(&s.d, &s.lambda_min, &t.order())? == Rational::from_integer(factorial(n - 1)))
            });
            c.check(format!("nu-formula[n={n}]"), || {
                let r = nu_formula_check(n)?;
                Ok((r.passed(), if r.tie_flag { "tie |lambda2| = |lambda_min|".into() } else { String::new() }))
            });
        }
    }
    for n in range(cfg, 2, 6) {
        let reps = if n <= 5 { 50 } else { 3 };
        let vectors: Vec<_> = (0..reps).map(|_| random_rational_vector(n, &mut rng)).collect();
        c.check(format!("isotypic-eigenspaces[n={n}]"), || {
            let t = derangement_spectrum(n)?;
            for v in vectors {
                for (a, p) in project_all(&v?)? {
                    let lambda = Rational::from_integer(t.eigenvalue(&a).cloned().unwrap_or_default());
                    if apply_derangement_adjacency(&p) != p.scale(&lambda) {
                        return Ok((false, format!("alpha={a}")));
                    }
                }
            }
            ok(true)
        });
    }
    c.finish()
}

fn group_algebra_suite(cfg: &VerifyConfig) -> TaskReport {
    let mut c = Checks::new("group-algebra");
    let mut rng = seeded(cfg.seed ^ 0xa16e);
    for n in range(cfg, 3, 6) {
        c.check(format!("coset-span-rank[n={n}]"), || {
            let r = coset_span_rank(n)?;
            Ok((r == 1 + (n - 1) * (n - 1), format!("rank {r}")))
        });
    }
    for n in range(cfg, 3, 5) {
        let mut families = vec![construct_b(n), construct_c(n)];
        families.extend(PermFamily::all_cosets(n).into_iter().flatten().map(Ok));
        families.extend((0..20).map(|_| random_family(n, 0.3, &mut rng)));
        c.check(format!("closed-form-projection[n={n}]"), || {
            let span = coset_span_partitions(n);
            for fam in families {
                let fam = fam?;
                let p = project_onto(&characteristic_vector::<Rational>(&fam), &span)?;
                for s in Permutation::all(n) {
                    if &projection_coordinate_closed_form(&fam, &s)? != p.get(&s) {
                        return Ok((false, format!("sigma={s}")));
                    }
                }
            }
            ok(true)
        });
        let randoms: Vec<_> = (0..50).map(|_| random_family(n, 0.5, &mut rng)).collect();
        c.check(format!("parseval[n={n}]"), || {
            for fam in randoms {
                let rep = projection_report(&characteristic_vector(&fam?), &coset_span_partitions(n))?;
                if !rep.parseval_holds() {
                    return ok(false);
                }
            }
            ok(true)
        });
    }
    c.finish()
}

fn families_suite(cfg: &VerifyConfig) -> TaskReport {
    let mut c = Checks::new("families");
    let mut rng = seeded(cfg.seed ^ 0xfa11);
    let search_cfg = SearchConfig {
        budget: cfg.budget,
        ..SearchConfig::default()
    };
    let incomplete = Cell::new(false);
    let note = |complete: bool| incomplete.set(incomplete.get() || !complete);
    for n in range(cfg, 4, 8) {
        c.check(format!("construction-sizes[n={n}]"), || {
            let b = construct_b(n)?;
            let cc = construct_c(n)?;
            let sizes = BigInt::from(b.len()) == b_size_formula(n) && BigInt::from(cc.len()) == c_size_formula(n);
            let order = if n <= 5 { b.len() == cc.len() } else { cc.len() > b.len() };
            Ok((sizes && order, format!("|B|={}, |C|={}", b.len(), cc.len())))
        });
        c.check(format!("construction-properties[n={n}]"), || {
            let b = construct_b(n)?;
            let cc = construct_c(n)?;
            let intersecting = if n <= 7 {
                b.is_intersecting() && cc.is_intersecting()
            } else {
                true
            };
            ok(intersecting
                && !b.is_centred()
                && !cc.is_centred()
                && b.min_removals_to_centred() == factorial(n - 2) - factorial(n - 3)
                && cc.min_removals_to_centred().is_one())
        });
    }
    for n in range(cfg, 3, 7) {
        c.check(format!("fixed-tau-count[n={n}]"), || {
            let tau = Permutation::from_cycles(n, &[&[1, 2]])?;
            let count = intersecting_with_fixed_tau_count(0, 0, &tau)?;
            ok(count == factorial(n - 1) - derangement_count(n - 1) - derangement_count(n - 2))
        });
        c.check(format!("clique-partition[n={n}]"), || {
            let rho = Permutation::from_cycles(n, &[&(1..=n).collect::<Vec<_>>()])?;
            let r = deza_frankl_partition_check(&rho)?;
            ok(r.passed() && BigInt::from(r.cosets) == factorial(n - 1))
        });
    }
    for n in range(cfg, 2, 6) {
        let pairs: Vec<(Permutation, Permutation)> =
            (0..5).map(|_| (random_permutation(n, &mut rng), random_permutation(n, &mut rng))).collect();
        c.check(format!("two-point-agreement-translation[n={n}]"), || {
            let e = Permutation::identity(n);
            let base = count_agreeing_at_two_separate_points(&e, &e)?;
            for (r, _) in &pairs {
                if count_agreeing_at_two_separate_points(r, r)? != base {
                    return ok(false);
                }
            }
            ok(true)
        });
    }
    for n in range(cfg, 2, 5) {
        c.check(format!("max-intersecting[n={n}]"), || {
            let r = max_intersecting_search(n, &search_cfg)?;
            note(r.is_complete());
            let cosets: BTreeSet<PermFamily> = PermFamily::all_cosets(n)?.into_iter().collect();
            let found: BTreeSet<PermFamily> = r.witnesses.iter().map(|w| w.a.clone()).collect();
            let expected_opt = factorial(n - 1);
            let tight = n < 3 || r.upper_bound.as_ref() == Some(&expected_opt);
            Ok((
                r.is_complete() && r.optimum == expected_opt && found == cosets && tight,
                format!("optimum {}, {} witnesses", r.optimum, r.witness_count),
            ))
        });
    }
    if range(cfg, 5, 5).contains(&5) {
        c.check("max-intersecting-non-centred[n=5]", || {
            let r = max_intersecting_search(
                5,
                &SearchConfig {
                    non_centred: true,
                    ..search_cfg.clone()
                },
            )?;
            note(r.is_complete());
            let found: BTreeSet<PermFamily> = r.witnesses.iter().map(|w| w.a.clone()).collect();
            let has = |f: PermFamily| found.contains(&f);
            Ok((
                r.is_complete() && has(construct_b(5)?) && has(construct_c(5)?),
                format!("optimum {}, {} witnesses", r.optimum, r.witness_count),
            ))
        });
    }
    for n in range(cfg, 2, 4) {
        c.check(format!("max-cross-product[n={n}]"), || {
            let r = max_cross_product_search(n, &search_cfg)?;
            note(r.is_complete());
            let pass = match n {
                3 => r.optimum > 4.into(),
                4 => {
                    r.optimum == 36.into()
                        && r.witnesses.iter().all(|w| {
                            w.b.as_ref() == Some(&w.a) && w.a.is_centred() && w.a.len() == 6
                        })
                        && r.witness_count == 16
                }
                _ => r.optimum == BigInt::one(),
            };
            Ok((pass && r.is_complete(), format!("optimum {}", r.optimum)))
        });
    }
    if range(cfg, 5, 5).contains(&5) {
        let maximal: Vec<_> = (0..100).map(|_| random_maximal_intersecting(5, &mut rng)).collect();
        let pairs: Vec<_> = (0..100).map(|_| random_cross_intersecting_pair(5, &mut rng)).collect();
        c.check("slice-products[n=5]", || {
            let mut families = vec![construct_b(5)?, construct_c(5)?];
            families.extend(PermFamily::all_cosets(5)?);
            for f in maximal {
                families.push(f?);
            }
            for f in &families {
                for i in 0..5 {
                    for j in 0..5 {
                        for k in (0..5).filter(|&k| k != j) {
                            let r = f.slice_product_check(i, j, k)?;
                            if !(r.direct_holds && r.reduced_holds && r.verdicts_agree()) {
                                return Ok((false, format!("({i},{j},{k})")));
                            }
                        }
                    }
                }
            }
            ok(true)
        });
        c.check("stability-inequalities[n=5]", || {
            let t = derangement_spectrum(5)?;
            let s = t.summary();
            let lambda_m = s.lambda_m.clone().ok_or_else(|| SpectraError::Inconsistent("no lambda_M".into()))?;
            let span = coset_span_partitions(5);
            let mut rng = seeded(cfg.seed ^ 0xd157);
            for _ in 0..20 {
                let f = random_maximal_intersecting(5, &mut rng)?;
                let v = characteristic_vector::<Rational>(&f);
                let d2 = distance_to_u(&v, &span)?;
                let alpha = Rational::new(f.len().into(), 120.into());
                if d2 > distance_bound_independent(&alpha, &s.d, &s.lambda_min, &lambda_m)? {
                    return ok(false);
                }
            }
            for pair in pairs {
                let (a, b) = pair?;
                let d2 = distance_to_u(&characteristic_vector::<Rational>(&a), &span)?;
                let e2 = distance_to_u(&characteristic_vector::<Rational>(&b), &span)?;
                if !cross_distance_inequality_check(&a, &b, &s, &d2, &e2)?.holds {
                    return ok(false);
                }
            }
            ok(true)
        });
    }
    for n in range(cfg, 5, 6) {
        let sets: Vec<_> = (0..50).map(|_| random_family(n, 0.02, &mut rng)).collect();
        c.check(format!("maurey[n={n}]"), || {
            let a = Rational::new(BigInt::one(), BigInt::from(n.pow(4)));
            let two = Rational::from_integer(2.into());
            for x in sets {
                let x = x?;
                if x.is_empty() {
                    continue;
                }
                if !maurey_check(&x, &a, &two)?.holds {
                    return ok(false);
                }
            }
            ok(true)
        });
    }
    c.incomplete = incomplete.get();
    c.finish()
}

fn run_task(name: &str, cfg: &VerifyConfig) -> Result<TaskReport> {
    Ok(match name {
        "perm-core" => perm_core(cfg),
        "repr" => repr_suite(cfg),
        "spectral" => spectral_suite(cfg),
        "group-algebra" => group_algebra_suite(cfg),
        "families" => families_suite(cfg),
        other => return Err(SpectraError::Domain(format!("unknown task {other}"))),
    })
}

/// Runs the configured suites; tasks are independent and run in parallel.
pub fn verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.n_min > cfg.n_max {
        return Err(SpectraError::Domain(format!("n_min {} > n_max {}", cfg.n_min, cfg.n_max)));
    }
    let tasks = cfg
        .tasks
        .par_iter()
        .map(|t| run_task(t, cfg))
        .collect::<Result<Vec<_>>>()?;
    let incomplete = tasks.iter().any(|t| t.incomplete);
    Ok(VerifyReport {
        n_min: cfg.n_min,
        n_max: cfg.n_max,
        seed: cfg.seed,
        passed: tasks.iter().all(|t| t.passed),
        incomplete,
        tasks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_task_list_is_a_pass() {
        let cfg = VerifyConfig {
            tasks: vec![],
            ..VerifyConfig::default()
        };
        let r = verify(&cfg).unwrap();
        assert!(r.passed && r.tasks.is_empty());
    }

    #[test]
    fn unknown_task_and_bad_range() {
        let cfg = VerifyConfig {
            tasks: vec!["nope".into()],
            ..VerifyConfig::default()
        };
        assert!(verify(&cfg).is_err());
        let cfg = VerifyConfig {
            n_min: 5,
            n_max: 3,
            ..VerifyConfig::default()
        };
        assert!(verify(&cfg).is_err());
    }

    #[test]
    fn small_range_passes() {
        let cfg = VerifyConfig {
            n_min: 3,
            n_max: 4,
            ..VerifyConfig::default()
        };
        let r = verify(&cfg).unwrap();
        let failed: Vec<_> = r.failed_checks().map(|c| c.name.clone()).collect();
        assert!(r.passed, "{failed:?}");
        assert!(!r.tasks.iter().any(|t| t.checks.is_empty()));
    }
}
