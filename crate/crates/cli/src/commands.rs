use std::fmt::Write as _;
use std::io::Read as _;
use std::path::Path;

use serde_json::{json, Value};
use smt_core::polytope::{
    build_relaxation, midpoint_membership_among, rational_incidence, tight_rank_of_points,
    Membership,
};
use smt_core::{
    blocking_pairs, build_star, enumerate_stable_with_cap, parse, path_between, random_instance,
    serialize, tight_family, Error, Instance, Matching, SkeletonGraph, TieProbability,
};

use crate::{verify, Cli, Command, CommandOutcome, GenKind, GraphFormat, Oracle, Output, Shape};

/// A command that stopped early.
enum Stop {
    Input(String),
    Violation(String),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::Disconnected => Stop::Violation(e.to_string()),
            _ => Stop::Input(e.to_string()),
        }
    }
}

type Step<T> = Result<T, Stop>;

pub(crate) fn dispatch(cli: &Cli) -> CommandOutcome {
    let ctx = Ctx {
        json: cli.json,
        cap: cli.enum_cap,
    };
    let result = match &cli.command {
        Command::Gen { kind } => ctx.gen(kind),
        Command::Check { file, matching } => ctx.check(file, matching),
        Command::Adjacent {
            file,
            mu,
            nu,
            oracle,
            explain,
        } => ctx.adjacent(file, mu, nu, *oracle, *explain),
        Command::Path { file, mu, nu } => ctx.path(file, mu, nu),
        Command::Skeleton { file, format } => ctx.skeleton(file, *format),
        Command::Diameter { file, bound_check } => ctx.diameter(file, *bound_check),
        Command::Enumerate { file, count } => ctx.enumerate(file, *count),
        Command::Relaxation { file } => ctx.relaxation(file),
        Command::Verify(args) => Ok(verify::run_verify(
            &verify::VerifyOptions {
                count: args.count,
                max_people: args.max_people,
                tie_probability: args.tie_prob,
                seed: args.seed,
                cap: cli.enum_cap,
            },
            cli.json,
        )),
    };
    match result {
        Ok(outcome) => outcome,
        Err(Stop::Input(msg)) => CommandOutcome::input_error(ctx.error_report(&msg)),
        Err(Stop::Violation(msg)) => CommandOutcome::violation(ctx.error_report(&msg)),
    }
}

struct Ctx {
    json: bool,
    cap: usize,
}

fn read_instance(file: &Path) -> Step<Instance> {
    let text = if file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Stop::Input(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(file)
            .map_err(|e| Stop::Input(format!("reading {}: {e}", file.display())))?
    };
    parse(&text).map_err(|e| Stop::Input(format!("{}: {e}", file.display())))
}

fn read_matching(text: &str) -> Step<Matching> {
    text.parse().map_err(|e| Stop::Input(format!("{e}")))
}

/// Parses a matching and requires it to be a stable matching of `instance`.
fn read_stable(instance: &Instance, text: &str) -> Step<Matching> {
    let m = read_matching(text)?;
    let blocking = blocking_pairs(instance, &m)?;
    if let Some(p) = blocking.first() {
        return Err(Error::Unstable(*p).into());
    }
    Ok(m)
}

fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

impl Ctx {
    fn error_report(&self, msg: &str) -> String {
        if self.json {
            render_json(&json!({ "format": 1, "error": msg }))
        } else {
            format!("error: {msg}\n")
        }
    }

    fn emit(&self, value: Value, text: String) -> String {
        if self.json {
            render_json(&value)
        } else {
            text
        }
    }

    fn stable_matchings(&self, instance: &Instance) -> Step<Vec<Matching>> {
        Ok(enumerate_stable_with_cap(instance, self.cap)?)
    }

    fn gen(&self, kind: &GenKind) -> Step<CommandOutcome> {
        let random = |shape: &Shape, p: TieProbability| {
            let max_list = shape.max_list.unwrap_or(shape.men.max(shape.women));
            random_instance(shape.men, shape.women, max_list, p, shape.seed)
        };
        let (instance, out) = match kind {
            GenKind::Random {
                shape,
                tie_prob,
                out,
            } => (random(shape, *tie_prob), out),
            GenKind::Noties { shape, out } => (random(shape, TieProbability::ZERO), out),
            GenKind::Tight { t, out } => (tight_family(*t), out),
        };
        let text = serialize(&instance);
        let Output { output } = out;
        Ok(CommandOutcome::ok(match output {
            Some(path) => {
                std::fs::write(path, &text)
                    .map_err(|e| Stop::Input(format!("writing {}: {e}", path.display())))?;
                let shown = path.display().to_string();
                self.emit(json!({ "format": 1, "path": shown }), format!("{shown}\n"))
            }
            None => self.emit(json!({ "format": 1, "instance": text }), text.clone()),
        }))
    }

    fn check(&self, file: &Path, matching: &str) -> Step<CommandOutcome> {
        let instance = read_instance(file)?;
        let m = read_matching(matching)?;
        let blocking = blocking_pairs(&instance, &m)?;
        let names: Vec<String> = blocking.iter().map(ToString::to_string).collect();
        let value = json!({ "format": 1, "stable": blocking.is_empty(), "blocking_pairs": names });
        if blocking.is_empty() {
            return Ok(CommandOutcome::ok(self.emit(value, "stable\n".into())));
        }
        let mut text = String::from("unstable\n");
        for p in &names {
            writeln!(text, "blocking pair {p}").unwrap();
        }
        Ok(CommandOutcome::violation(self.emit(value, text)))
    }

    fn adjacent(
        &self,
        file: &Path,
        mu: &str,
        nu: &str,
        oracle: Oracle,
        explain: bool,
    ) -> Step<CommandOutcome> {
        let instance = read_instance(file)?;
        let mu = read_stable(&instance, mu)?;
        let nu = read_stable(&instance, nu)?;
        if mu == nu {
            return Err(Error::EqualMatchings.into());
        }
        let star = build_star(&instance, &mu, &nu)?;
        let dim = instance.acceptable_pairs().len();
        let wanted = |o: Oracle| oracle == o || oracle == Oracle::All;

        // (name, adjacent, detail, JSON detail)
        let mut rows: Vec<(&str, bool, String, Value)> = Vec::new();
        if wanted(Oracle::Component) {
            let k = star.nontrivial_count();
            rows.push((
                "component",
                k == 1,
                format!("{k} nontrivial component{}", if k == 1 { "" } else { "s" }),
                json!({ "nontrivial_components": k }),
            ));
        }
        if wanted(Oracle::Rank) {
            let system = build_relaxation(&instance);
            let x = rational_incidence(&instance, &mu)?;
            let y = rational_incidence(&instance, &nu)?;
            let r = tight_rank_of_points(&system, &x, &y);
            rows.push((
                "rank",
                r + 1 == dim,
                format!("tight rank {r}, dimension {dim}"),
                json!({ "tight_rank": r, "dimension": dim }),
            ));
        }
        if wanted(Oracle::Lp) {
            let stable = self.stable_matchings(&instance)?;
            let (adjacent, detail, value) = match midpoint_membership_among(
                &instance, &stable, &mu, &nu,
            )? {
                Membership::Feasible(weights) => {
                    let listed: Vec<String> =
                        weights.iter().map(|(m, l)| format!("{l}*[{m}]")).collect();
                    let value = json!({
                        "midpoint_in_hull": true,
                        "weights": weights.iter().map(|(m, l)| json!({ "matching": m, "weight": l.to_string() })).collect::<Vec<_>>(),
                    });
                    (false, format!("midpoint = {}", listed.join(" + ")), value)
                }
                Membership::Infeasible {
                    phase_one_optimum,
                    farkas,
                } => {
                    let value = json!({
                        "midpoint_in_hull": false,
                        "phase_one_optimum": phase_one_optimum.to_string(),
                        "farkas": farkas.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    });
                    (
                        true,
                        format!("midpoint outside hull, phase-1 optimum {phase_one_optimum}"),
                        value,
                    )
                }
            };
            rows.push(("lp", adjacent, detail, value));
        }

        let agree = rows.iter().all(|r| r.1 == rows[0].1);
        let verdict = rows[0].1;
        let value = json!({
            "format": 1,
            "mu": mu,
            "nu": nu,
            "adjacent": agree.then_some(verdict),
            "agree": agree,
            "oracles": rows.iter().map(|(name, adj, _, v)| json!({ "oracle": name, "adjacent": adj, "detail": v })).collect::<Vec<_>>(),
            "explain": explain.then(|| star.to_json()),
        });
        let word = |a: bool| if a { "adjacent" } else { "not adjacent" };
        let mut text = String::new();
        if oracle == Oracle::All {
            writeln!(text, "{:<10} {:<13} detail", "oracle", "verdict").unwrap();
            for (name, adj, detail, _) in &rows {
                writeln!(text, "{name:<10} {:<13} {detail}", word(*adj)).unwrap();
            }
            writeln!(
                text,
                "{}",
                if agree {
                    "all oracles agree"
                } else {
                    "ORACLES DISAGREE"
                }
            )
            .unwrap();
        } else {
            writeln!(text, "{} ({})", word(verdict), rows[0].2).unwrap();
        }
        if explain {
            text.push_str(&star.to_dot());
        }
        let report = self.emit(value, text);
        Ok(if agree {
            CommandOutcome::ok(report)
        } else {
            CommandOutcome::violation(report)
        })
    }

    fn path(&self, file: &Path, mu: &str, nu: &str) -> Step<CommandOutcome> {
        let instance = read_instance(file)?;
        let mu = read_stable(&instance, mu)?;
        let nu = read_stable(&instance, nu)?;
        let path = path_between(&instance, &mu, &nu)?;
        let mut text = String::new();
        for m in &path {
            writeln!(text, "{m}").unwrap();
        }
        let value = json!({ "format": 1, "length": path.len() - 1, "path": path });
        Ok(CommandOutcome::ok(self.emit(value, text)))
    }

    fn skeleton_of(&self, instance: &Instance) -> Step<SkeletonGraph> {
        Ok(SkeletonGraph::from_nodes(
            instance,
            self.stable_matchings(instance)?,
        ))
    }

    fn skeleton(&self, file: &Path, format: GraphFormat) -> Step<CommandOutcome> {
        let instance = read_instance(file)?;
        let sk = self.skeleton_of(&instance)?;
        let report = if self.json || format == GraphFormat::Json {
            render_json(&sk.to_json())
        } else {
            sk.to_dot()
        };
        Ok(CommandOutcome::ok(report))
    }

    fn diameter(&self, file: &Path, bound_check: bool) -> Step<CommandOutcome> {
        let instance = read_instance(file)?;
        let sk = self.skeleton_of(&instance)?;
        let d = sk.diameter()?;
        let n = instance.num_people();
        let mut bounds = vec![("n/3", n / 3)];
        if !instance.has_ties() {
            bounds.push(("n/4", n / 4));
        }
        let violated: Vec<&(&str, usize)> = bounds.iter().filter(|(_, b)| d > *b).collect();
        let mut text = format!("diameter {d}\n");
        for (name, b) in &bounds {
            writeln!(
                text,
                "bound floor({name}) = {b}{}",
                if d > *b { " VIOLATED" } else { "" }
            )
            .unwrap();
        }
        let value = json!({
            "format": 1,
            "diameter": d,
            "people": n,
            "nodes": sk.nodes().len(),
            "bounds": bounds.iter().map(|(name, b)| json!({ "bound": format!("floor({name})"), "value": b, "holds": d <= *b })).collect::<Vec<_>>(),
        });
        let report = self.emit(value, text);
        Ok(if bound_check && !violated.is_empty() {
            CommandOutcome::violation(report)
        } else {
            CommandOutcome::ok(report)
        })
    }

    fn enumerate(&self, file: &Path, count_only: bool) -> Step<CommandOutcome> {
        let instance = read_instance(file)?;
        let stable = self.stable_matchings(&instance)?;
        let text = if count_only {
            format!("{}\n", stable.len())
        } else {
            stable.iter().map(|m| format!("{m}\n")).collect()
        };
        let value = if count_only {
            json!({ "format": 1, "count": stable.len() })
        } else {
            json!({ "format": 1, "count": stable.len(), "matchings": stable })
        };
        Ok(CommandOutcome::ok(self.emit(value, text)))
    }

    fn relaxation(&self, file: &Path) -> Step<CommandOutcome> {
        let instance = read_instance(file)?;
        let system = build_relaxation(&instance);
        let value = json!({
            "format": 1,
            "variables": instance.acceptable_pairs().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "lp": system.to_lp_text(),
        });
        Ok(CommandOutcome::ok(self.emit(value, system.to_lp_text())))
    }
}
