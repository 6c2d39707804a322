use std::sync::Arc;

use rector::elcat::ElCategory;
use rector::modrep::{p_regular_partitions, regular_accounting, symmetric_group, FiniteGroup, GroupModule};
use rector::sfunctor::{check_noetherian, check_weak_noetherian, validate, SetFunctorRef};
use rector::simples::{simples_report, verify_main1};
use rector::vfunctor::{
    adjunction_check, bar_extension_check, cross_effect, defined_classes, delta_bar, delta_bar_power, forgetful_lift,
    injective_cogen, polynomial_degree, unit, validate_functor, vanishes, window_objects, ConstantFunctor, DirectSum,
    ModuleOnClass, SigmaNFunctorRef, TensorSigma, VecFunctorRef, VfBuiltin,
};
use rector::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{self, RunConfig};
use crate::{Command, DemoTask, GlobalArgs};

pub struct Output {
    pub envelope: Value,
    pub passed: bool,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn envelope(command: &str, config: &RunConfig, passed: bool, report: Value) -> Output {
    Output {
        envelope: json!({
            "schema": 1,
            "command": command,
            "config": to_value(config),
            "passed": passed,
            "report": report,
        }),
        passed,
    }
}

pub fn run(args: &GlobalArgs, cmd: &Command) -> Result<Output> {
    if let Command::Demo { task } = cmd {
        return demo(args, *task);
    }
    let (s, config) = config::set_functor(args, cmd)?;
    run_on(args, cmd, s, &config)
}

fn run_on(args: &GlobalArgs, cmd: &Command, s: SetFunctorRef, config: &RunConfig) -> Result<Output> {
    let budget = &config.budget;
    Ok(match cmd {
        Command::Validate => {
            let r = validate(s.as_ref(), budget, config.seed)?;
            let mut passed = r.passed();
            let mut report = json!({ "sfunctor": to_value(&r) });
            if args.vfunctor.is_some() {
                let cat = config::category(s, config)?;
                let f = config::vec_functor(args, &cat)?;
                let fc = validate_functor(f.as_ref(), 1 << 20, config.seed)?;
                passed &= fc.passed();
                report["vfunctor"] = to_value(&fc);
            }
            envelope("validate", config, passed, report)
        }
        Command::CheckNoetherian => {
            let weak = check_weak_noetherian(s.as_ref(), budget)?;
            let noeth = check_noetherian(s.as_ref())?;
            let passed = weak.holds();
            envelope(
                "check-noetherian",
                config,
                passed,
                json!({ "weak": to_value(&weak), "noetherian": to_value(&noeth) }),
            )
        }
        Command::Rector => {
            let cat = config::category(s, config)?;
            let r = cat.skeleton().report();
            envelope("rector", config, r.injective, to_value(&r))
        }
        Command::Degree => {
            let cat = config::category(s, config)?;
            let f = config::vec_functor(args, &cat)?;
            let cert = polynomial_degree(&f, cat.cap())?;
            let mut report = to_value(&cert);
            report["functor"] = json!(f.name());
            report["summary"] = json!(cert.to_string());
            envelope("degree", config, true, report)
        }
        Command::Delta => {
            let cat = config::category(s, config)?;
            let f = config::vec_functor(args, &cat)?;
            envelope("delta", config, true, delta_table(&cat, &f, config.n_max)?)
        }
        Command::CrossEffect { class, split } => {
            let cat = config::category(s, config)?;
            let f = config::vec_functor(args, &cat)?;
            let xs: Vec<usize> = split
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("--split: bad entry {x:?}"))))
                .collect::<Result<_>>()?;
            let classes: Vec<usize> = match class {
                Some(c) => vec![*c],
                None => (0..cat.skeleton().len()).collect(),
            };
            let mut rows = Vec::new();
            for c in classes {
                let o = cat.obj(c, 0).ok_or_else(|| Error::OutsideWindow(format!("no class {c}")))?;
                match cross_effect(f.as_ref(), o, &xs) {
                    Ok((big, cr)) => rows.push(json!({
                        "class": c,
                        "class_dim": cat.object(o).dim,
                        "object": big,
                        "object_dim": cat.object(big).dim,
                        "value_dim": f.dim_at(big),
                        "cross_effect_dim": cr.dim(),
                    })),
                    Err(e) => rows.push(json!({ "class": c, "class_dim": cat.object(o).dim, "error": e.to_string() })),
                }
            }
            envelope(
                "cross-effect",
                config,
                true,
                json!({ "functor": f.name(), "split": xs, "window": to_value(&f.window()), "rows": rows }),
            )
        }
        Command::SimplesOfGroup { group } => simples_of_group(&s, config, group)?,
        Command::EnumerateSimples => {
            let cat = config::category(s, config)?;
            let r = simples_report(&cat, config.n_max, budget, config.seed)?;
            envelope("enumerate-simples", config, r.passed(), to_value(&r))
        }
        Command::VerifyTheorems => {
            let cat = config::category(s, config)?;
            let suites = vec![
                lemma_suite(&cat, config.n_max)?,
                adjunction_suite(&cat, config)?,
                main1_suite(&cat, config.n_max)?,
                mainx_suite(&cat, config)?,
            ];
            let passed = suites.iter().all(|s| s.passed);
            envelope("verify-theorems", config, passed, json!({ "suites": to_value(&suites) }))
        }
        Command::Demo { .. } => unreachable!("handled by run"),
    })
}

fn delta_table(cat: &Arc<ElCategory>, f: &VecFunctorRef, n_max: usize) -> Result<Value> {
    let powers: Vec<Option<VecFunctorRef>> = (1..=n_max.max(1)).map(|n| delta_bar_power(f, n).ok()).collect();
    let rows: Vec<Value> = window_objects(f.as_ref())
        .into_iter()
        .map(|o| {
            let obj = cat.object(o);
            let deltas: Vec<Option<usize>> = powers
                .iter()
                .map(|d| d.as_ref().filter(|d| cat.in_window(o, d.window())).map(|d| d.dim_at(o)))
                .collect();
            json!({ "object": o, "class": obj.class, "k": obj.k, "dim": obj.dim, "value_dim": f.dim_at(o), "delta_dims": deltas })
        })
        .collect();
    Ok(json!({ "functor": f.name(), "window": to_value(&f.window()), "rows": rows }))
}

fn parse_group(s: &SetFunctorRef, config: &RunConfig, spec: &str) -> Result<(Arc<FiniteGroup>, Option<usize>)> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("--group: expected kind:N, got {spec:?}")))?;
    let n: usize = arg.parse().map_err(|_| Error::Parse(format!("--group: bad number {arg:?}")))?;
    Ok(match kind {
        "sym" => (symmetric_group(n).group().clone(), Some(n)),
        "cyclic" if n >= 1 => (Arc::new(FiniteGroup::cyclic(n)), None),
        "aut" => {
            let cat = config::category(s.clone(), config)?;
            if n >= cat.skeleton().len() {
                return Err(Error::Parse(format!("--group: no Rector class {n}")));
            }
            (ModuleOnClass::group(&cat, n, config.n_max), None)
        }
        _ => return Err(Error::Parse(format!("--group: unknown group {spec:?}"))),
    })
}

fn simples_of_group(s: &SetFunctorRef, config: &RunConfig, spec: &str) -> Result<Output> {
    let (g, sym) = parse_group(s, config, spec)?;
    let field = s.field();
    let (simples, mult) = regular_accounting(&g, field, &config.budget, config.seed)?;
    let total: usize = simples.iter().zip(&mult).map(|(m, k)| m.dim() * k).sum();
    let expected = sym.map(|n| p_regular_partitions(n, field.p()).len());
    let passed = total == g.order() && expected.is_none_or(|e| e == simples.len());
    let rows: Vec<Value> = simples
        .iter()
        .zip(&mult)
        .map(|(m, k)| json!({ "dim": m.dim(), "multiplicity_in_regular": k, "module": to_value(&m.to_file()) }))
        .collect();
    Ok(envelope(
        "simples-of-group",
        config,
        passed,
        json!({
            "group": g.name(),
            "order": g.order(),
            "count": simples.len(),
            "p_regular_partitions": expected,
            "accounted_order": total,
            "simples": rows,
        }),
    ))
}

#[derive(Serialize)]
struct Suite {
    name: &'static str,
    passed: bool,
    checks: usize,
    failures: Vec<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, passed: true, checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.passed = false;
            self.failures.push(what());
        }
    }
}

fn tensor(cat: &Arc<ElCategory>, n: usize) -> VecFunctorRef {
    forgetful_lift(cat, VfBuiltin::Tensor(n))
}

fn constant(cat: &Arc<ElCategory>, d: usize) -> VecFunctorRef {
    Arc::new(ConstantFunctor::new(cat.clone(), cat.full_window(), d))
}

fn lemma_suite(cat: &Arc<ElCategory>, n_max: usize) -> Result<Suite> {
    let mut suite = Suite::new("lemmas");
    let c = constant(cat, 1);
    suite.check(vanishes(delta_bar(&c)?.as_ref()), || "difference of the constant functor is nonzero".into());
    for n in 0..=n_max.min(cat.cap().saturating_sub(1)) {
        let t = tensor(cat, n);
        let d = polynomial_degree(&t, n + 1)?;
        suite.check(d.degree == Some(n), || format!("T^{n}: {d}"));
        if n == 0 {
            continue;
        }
        if let Ok(dn) = delta_bar_power(&t, n) {
            for o in window_objects(dn.as_ref()) {
                let (_, cr) = cross_effect(t.as_ref(), o, &vec![1; n])?;
                suite.check(dn.dim_at(o) == cr.dim(), || format!("T^{n}: iterated difference differs from cr_{n} at {o}"));
            }
        }
    }
    let mut degree0 = vec![c];
    for class in 0..cat.skeleton().len() {
        if let Some(o) = cat.obj(class, 0) {
            degree0.push(injective_cogen(cat, o)?);
        }
    }
    for f in &degree0 {
        let r = bar_extension_check(f);
        suite.check(r.holds(), || format!("{}: bar extension {:?}", f.name(), r.witness));
    }
    Ok(suite)
}

fn module_on(cat: &Arc<ElCategory>, class: usize, n: usize, regular: bool) -> Result<SigmaNFunctorRef> {
    let g = ModuleOnClass::group(cat, class, n);
    cat.budget().check_group(g.order())?;
    let m = if regular {
        GroupModule::regular(g, cat.field())
    } else {
        GroupModule::trivial(g, cat.field())
    };
    Ok(Arc::new(ModuleOnClass::new(cat.clone(), class, n, m)?))
}

fn adjunction_suite(cat: &Arc<ElCategory>, config: &RunConfig) -> Result<Suite> {
    let mut suite = Suite::new("adjunction");
    for n in 0..=config.n_max {
        for class in 0..cat.skeleton().len() {
            if cat.skeleton().class(class).dim + n > cat.cap() {
                continue;
            }
            for regular in [false, true] {
                let m = module_on(cat, class, n, regular)?;
                let t = Arc::new(TensorSigma::new(m.clone(), cat.full_window()));
                let u = unit(&t)?;
                let iso = defined_classes(u.delta.as_ref()).into_iter().all(|k| u.eta.components[k].inverse().is_some());
                suite.check(iso, || format!("unit not invertible for n = {n}, class {class}"));
                let r = adjunction_check(&m, &tensor(cat, n))?;
                suite.check(r.holds(), || format!("Hom dimensions differ for n = {n}, class {class}: {r:?}"));
            }
        }
    }
    Ok(suite)
}

fn main1_suite(cat: &Arc<ElCategory>, n_max: usize) -> Result<Suite> {
    let mut suite = Suite::new("main1");
    for n in 0..=n_max {
        let mut samples = vec![tensor(cat, n), constant(cat, 1)];
        if n >= 1 {
            samples.push(Arc::new(DirectSum::new(vec![tensor(cat, n), tensor(cat, n - 1)])));
        }
        for f in samples {
            if polynomial_degree(&f, n + 1)?.degree.is_none_or(|d| d > n) {
                continue;
            }
            let r = verify_main1(&f, n)?;
            suite.check(r.holds(), || format!("{r:?}"));
        }
    }
    Ok(suite)
}

fn mainx_suite(cat: &Arc<ElCategory>, config: &RunConfig) -> Result<Suite> {
    let mut suite = Suite::new("mainx");
    let r = simples_report(cat, config.n_max, &config.budget, config.seed)?;
    suite.check(r.passed(), || format!("{} simples, expected {}", r.simples.len(), r.expected_count));
    Ok(suite)
}

fn demo(args: &GlobalArgs, task: Option<DemoTask>) -> Result<Output> {
    if let Some(task) = task {
        let cmd = match task {
            DemoTask::Validate => Command::Validate,
            DemoTask::CheckNoetherian => Command::CheckNoetherian,
            DemoTask::Rector => Command::Rector,
            DemoTask::Degree => Command::Degree,
            DemoTask::Delta => Command::Delta,
            DemoTask::EnumerateSimples => Command::EnumerateSimples,
            DemoTask::VerifyTheorems => Command::VerifyTheorems,
        };
        let (s, config) = config::set_functor(args, &cmd)?;
        return run_on(args, &cmd, s, &config);
    }
    // one-line summaries of every built-in example
    let examples = [("representable", 1), ("representable", 2), ("constant", 0), ("orbit", 1), ("subsets", 0)];
    let mut rows = Vec::new();
    let mut cfg = None;
    for (kind, u) in examples {
        let mut a = args.clone();
        a.input = None;
        a.builtin = kind.to_string();
        a.u_dim = u.max(1);
        let (s, config) = config::set_functor(&a, &Command::Rector)?;
        let weak = check_weak_noetherian(s.as_ref(), &config.budget)?;
        let mut row = json!({ "builtin": kind, "u_dim": a.u_dim, "weak_noetherian": weak.holds() });
        if weak.holds() {
            let cat = config::category(s, &config)?;
            let sk = cat.skeleton();
            row["classes"] = json!(sk.len());
            row["class_dims"] = json!((0..sk.len()).map(|c| sk.class(c).dim).collect::<Vec<_>>());
            row["aut_orders"] = json!((0..sk.len()).map(|c| sk.class(c).aut.len()).collect::<Vec<_>>());
        }
        rows.push(row);
        cfg.get_or_insert(config);
    }
    let config = cfg.expect("at least one example");
    Ok(envelope("demo", &config, true, json!({ "examples": rows })))
}
