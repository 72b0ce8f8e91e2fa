//! Batch verification over seeded random instances.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use smt_core::graph::principal_block;
use smt_core::polytope::{
    between_branch, build_relaxation, midpoint_membership_among, rational_incidence,
    tight_certificates, tight_rank_of_points,
};
use smt_core::{
    build_star, enumerate_stable_with_cap, is_stable, path_between, random_instance, serialize,
    Error, Instance, Matching, Side, SkeletonGraph, TieProbability,
};

use crate::CommandOutcome;

pub const ASSERTIONS: [&str; 10] = [
    "isolated-equals-common",
    "edge-in-principal-block",
    "between-branch",
    "oracle-agreement",
    "certificates",
    "path-validity",
    "distance-bound",
    "diameter-third",
    "diameter-quarter",
    "no-panic",
];

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub count: usize,
    pub max_people: usize,
    pub tie_probability: TieProbability,
    pub seed: u64,
    pub cap: usize,
}

#[derive(Debug, Clone, Serialize)]
struct Failure {
    assertion: &'static str,
    detail: String,
}

#[derive(Debug, Default)]
struct Checks {
    counts: BTreeMap<&'static str, usize>,
    failures: Vec<Failure>,
}

impl Checks {
    fn record(&mut self, assertion: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        *self.counts.entry(assertion).or_default() += 1;
        if !ok && !self.failures.iter().any(|f| f.assertion == assertion) {
            self.failures.push(Failure {
                assertion,
                detail: detail(),
            });
        }
    }

    fn fails(&self, assertion: &str) -> bool {
        self.failures.iter().any(|f| f.assertion == assertion)
    }
}

/// Instance `i` of a run: size, split and list length drawn from a generator
/// seeded with `seed + i`, preferences from [`random_instance`] with the
/// same seed. Both sides are non-empty whenever there are two people.
pub fn verify_instance(opts: &VerifyOptions, i: usize) -> (u64, Instance) {
    let seed = opts.seed.wrapping_add(i as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let people = rng.gen_range(opts.max_people / 2..=opts.max_people);
    let men = if people >= 2 {
        rng.gen_range(1..people)
    } else {
        people
    };
    let women = people - men;
    let longest = men.max(women).max(1);
    let max_list = rng.gen_range(longest.div_ceil(2)..=longest);
    (
        seed,
        random_instance(men, women, max_list, opts.tie_probability, seed),
    )
}

fn check(instance: &Instance, strict: bool, cap: usize) -> Result<Checks, Error> {
    let stable = enumerate_stable_with_cap(instance, cap)?;
    let mut checks = Checks::default();
    match catch_unwind(AssertUnwindSafe(|| {
        check_stable(instance, &stable, strict, &mut checks)
    })) {
        Ok(()) => checks.record("no-panic", true, String::new),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            checks.record("no-panic", false, || format!("panic: {msg}"));
        }
    }
    Ok(checks)
}

fn check_stable(instance: &Instance, stable: &[Matching], strict: bool, c: &mut Checks) {
    let dim = instance.acceptable_pairs().len();
    let system = build_relaxation(instance);
    let points: Vec<_> = stable
        .iter()
        .map(|m| rational_incidence(instance, m).unwrap())
        .collect();
    let pair_text = |a: &Matching, b: &Matching| format!("mu = [{a}], nu = [{b}]");

    // Unordered pairs: the three verdicts and the tight-row certificates.
    let mut adjacent: HashMap<(usize, usize), bool> = HashMap::new();
    for a in 0..stable.len() {
        for b in a + 1..stable.len() {
            let (mu, nu) = (&stable[a], &stable[b]);
            let by_components = build_star(instance, mu, nu).map(|s| s.nontrivial_count() == 1);
            let by_rank = tight_rank_of_points(&system, &points[a], &points[b]) + 1 == dim;
            let by_lp =
                midpoint_membership_among(instance, stable, mu, nu).map(|m| !m.is_feasible());
            let agree = matches!((&by_components, &by_lp), (Ok(x), Ok(z)) if *x == by_rank && by_rank == *z);
            c.record("oracle-agreement", agree, || {
                format!(
                    "{}: components {by_components:?}, rank {by_rank}, lp {by_lp:?}",
                    pair_text(mu, nu)
                )
            });
            adjacent.insert((a, b), agree && by_rank);
            let certs = tight_certificates(instance, mu, nu);
            c.record("certificates", certs.is_ok(), || {
                format!(
                    "{}: {}",
                    pair_text(mu, nu),
                    certs
                        .as_ref()
                        .err()
                        .map(ToString::to_string)
                        .unwrap_or_default()
                )
            });
        }
    }

    let sk = SkeletonGraph::from_nodes(instance, stable.to_vec());
    let position = |m: &Matching| stable.iter().position(|s| s == m);

    for mu in stable {
        for nu in stable {
            let tag = || pair_text(mu, nu);
            let star = match build_star(instance, mu, nu) {
                Ok(s) => s,
                Err(e) => {
                    c.record("isolated-equals-common", false, || {
                        format!("{}: {e}", tag())
                    });
                    continue;
                }
            };
            let common: Vec<_> = mu
                .pairs()
                .iter()
                .copied()
                .filter(|&p| nu.contains(p))
                .collect();
            c.record(
                "isolated-equals-common",
                star.isolated_vertices() == common.as_slice(),
                || {
                    let list = |ps: &[smt_core::Pair]| {
                        ps.iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(" ")
                    };
                    format!(
                        "{}: isolated {{{}}}, common {{{}}}",
                        tag(),
                        list(star.isolated_vertices()),
                        list(&common)
                    )
                },
            );

            for e in star.edges() {
                let owner = match e.rep {
                    Side::Man => e.from.man_id(),
                    Side::Woman => e.from.woman_id(),
                };
                let covered = principal_block(&star, owner).is_ok_and(|b| b.edges.contains(e));
                c.record("edge-in-principal-block", covered, || {
                    format!(
                        "{}: edge {} -> {} outside the block of {owner}",
                        tag(),
                        e.from,
                        e.to
                    )
                });
            }

            for &p in star.vertices() {
                if !mu.contains(p) && !nu.contains(p) {
                    c.record(
                        "between-branch",
                        between_branch(instance, mu, nu, p).is_some(),
                        || format!("{}: vertex {p} satisfies neither branch", tag()),
                    );
                }
            }

            let k = star.nontrivial_count();
            let path_ok = match path_between(instance, mu, nu) {
                Ok(path) => {
                    path.len() == k + 1
                        && path.iter().all(|m| is_stable(instance, m).unwrap_or(false))
                        && path
                            .windows(2)
                            .all(|w| match (position(&w[0]), position(&w[1])) {
                                (Some(x), Some(y)) if x != y => adjacent[&(x.min(y), x.max(y))],
                                _ => false,
                            })
                }
                Err(_) => false,
            };
            c.record("path-validity", path_ok, || {
                format!("{}: component path invalid", tag())
            });

            let dist = sk.distance(mu, nu);
            c.record("distance-bound", matches!(dist, Ok(d) if d <= k), || {
                format!("{}: distance {dist:?} with {k} components", tag())
            });
        }
    }

    let n = instance.num_people();
    let diameter = sk.diameter();
    c.record(
        "diameter-third",
        matches!(diameter, Ok(d) if d <= n / 3),
        || format!("diameter {diameter:?} with {n} people"),
    );
    if strict {
        c.record(
            "diameter-quarter",
            !instance.has_ties() && matches!(diameter, Ok(d) if d <= n / 4),
            || format!("diameter {diameter:?} with {n} people and no ties"),
        );
    }
}

/// Removes people one at a time while the assertion keeps failing.
fn minimize(instance: &Instance, strict: bool, cap: usize, assertion: &str) -> (Instance, Failure) {
    let mut current = instance.clone();
    'outer: loop {
        for person in current.people().collect::<Vec<_>>() {
            let smaller = current.without_person(person);
            if matches!(check(&smaller, strict, cap), Ok(c) if c.fails(assertion)) {
                current = smaller;
                continue 'outer;
            }
        }
        break;
    }
    let failure = check(&current, strict, cap)
        .ok()
        .and_then(|c| c.failures.into_iter().find(|f| f.assertion == assertion))
        .expect("the minimized instance still fails");
    (current, failure)
}

struct Reproduction {
    seed: u64,
    failure: Failure,
    instance: Instance,
}

pub fn run_verify(opts: &VerifyOptions, json_output: bool) -> CommandOutcome {
    let strict = opts.tie_probability.is_zero();
    let results: Vec<(u64, Instance, Result<Checks, Error>)> = (0..opts.count)
        .into_par_iter()
        .map(|i| {
            let (seed, instance) = verify_instance(opts, i);
            let checks = check(&instance, strict, opts.cap);
            (seed, instance, checks)
        })
        .collect();

    let mut totals: BTreeMap<&'static str, (usize, usize)> = BTreeMap::new();
    let mut reproductions = Vec::new();
    let mut sorted = results;
    sorted.sort_by_key(|r| r.0);
    for (seed, instance, checks) in &sorted {
        let checks = match checks {
            Ok(c) => c,
            Err(e) => {
                let msg = format!("instance with seed {seed}: {e}");
                return if json_output {
                    CommandOutcome::input_error(format!(
                        "{}\n",
                        json!({ "format": 1, "error": msg })
                    ))
                } else {
                    CommandOutcome::input_error(format!("error: {msg}\n"))
                };
            }
        };
        for (name, n) in &checks.counts {
            totals.entry(name).or_default().0 += n;
        }
        for f in &checks.failures {
            totals.entry(f.assertion).or_default().1 += 1;
        }
        if let Some(first) = checks.failures.first() {
            let (small, failure) = minimize(instance, strict, opts.cap, first.assertion);
            reproductions.push(Reproduction {
                seed: *seed,
                failure,
                instance: small,
            });
        }
    }

    let passed = reproductions.is_empty();
    let report = if json_output {
        let value = json!({
            "format": 1,
            "instances": opts.count,
            "max_people": opts.max_people,
            "tie_probability": opts.tie_probability.to_string(),
            "seed": opts.seed,
            "passed": passed,
            "assertions": ASSERTIONS.iter().filter_map(|a| totals.get(a).map(|(checks, failed)| {
                json!({ "name": a, "checks": checks, "failed_instances": failed })
            })).collect::<Vec<_>>(),
            "failures": reproductions.iter().map(|r| json!({
                "seed": r.seed,
                "assertion": r.failure.assertion,
                "detail": r.failure.detail,
                "instance": serialize(&r.instance),
            })).collect::<Vec<_>>(),
        });
        let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialize");
        s.push('\n');
        s
    } else {
        let mut s = format!(
            "verify: {} instances, max people {}, tie probability {}, seed {}\n",
            opts.count, opts.max_people, opts.tie_probability, opts.seed
        );
        writeln!(s, "{:<24} {:>10} {:>10}", "assertion", "checks", "failed").unwrap();
        for a in ASSERTIONS {
            if let Some((checks, failed)) = totals.get(a) {
                writeln!(s, "{a:<24} {checks:>10} {failed:>10}").unwrap();
            }
        }
        for r in &reproductions {
            writeln!(
                s,
                "\nFAIL seed {} {}: {}",
                r.seed, r.failure.assertion, r.failure.detail
            )
            .unwrap();
            writeln!(
                s,
                "minimized instance ({} people):",
                r.instance.num_people()
            )
            .unwrap();
            s.push_str(&serialize(&r.instance));
        }
        writeln!(
            s,
            "{}",
            if passed {
                "all assertions passed"
            } else {
                "assertion failures found"
            }
        )
        .unwrap();
        s
    };
    if passed {
        CommandOutcome::ok(report)
    } else {
        CommandOutcome::violation(report)
    }
}
