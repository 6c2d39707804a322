use std::sync::Arc;

use rector::elcat::ElCategory;
use rector::gf::FieldPrime;
use rector::sfunctor::{parse_sfunctor, BuiltinSpec, SetFunctorRef};
use rector::vfunctor::{
    forgetful_lift, injective_cogen, projective_gen, ConstantFunctor, DirectSum, TableFunctor, VFunctorFile,
    VecFunctorRef, VfBuiltin,
};
use rector::{Budget, Error, Result};
use serde::Serialize;

use crate::{Command, GlobalArgs};

const DEFAULT_CAP: usize = 3;

/// Everything a report needs to state what it was certified under.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub p: u32,
    pub cap: usize,
    pub n_max: usize,
    pub seed: u64,
    pub budget: Budget,
    pub source: String,
}

pub fn budget(args: &GlobalArgs) -> Budget {
    let mut b = Budget::default();
    if let Some(m) = args.budget_maps {
        b.maps = m;
    }
    if let Some(g) = args.budget_group {
        b.group_order = g;
    }
    b
}

fn builtin_spec(args: &GlobalArgs) -> BuiltinSpec {
    let gamma = if args.builtin == "orbit" {
        // default Γ = {±1} acting by scalars
        let u = args.u_dim;
        let minus = args.p as i64 - 1;
        vec![(0..u).map(|i| (0..u).map(|j| if i == j { minus } else { 0 }).collect()).collect()]
    } else {
        Vec::new()
    };
    BuiltinSpec {
        kind: args.builtin.clone(),
        p: Some(args.p),
        cap: None,
        u_dim: Some(args.u_dim),
        gamma_generators: gamma,
    }
}

/// The cap used when none is given: the classification window for the
/// commands that need one, else a small default.
fn default_cap(args: &GlobalArgs, cmd: &Command) -> usize {
    let classifying = matches!(cmd, Command::EnumerateSimples | Command::VerifyTheorems);
    if !classifying {
        return DEFAULT_CAP;
    }
    let d_reg = match args.builtin.as_str() {
        "constant" => 0,
        _ => args.u_dim,
    };
    d_reg + args.n_max + 1
}

pub fn set_functor(args: &GlobalArgs, cmd: &Command) -> Result<(SetFunctorRef, RunConfig)> {
    let cap = args.cap.unwrap_or_else(|| default_cap(args, cmd));
    if cap == 0 {
        return Err(Error::Parse("--cap must be at least 1".into()));
    }
    FieldPrime::new(args.p)?;
    let (s, source) = match &args.input {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            (parse_sfunctor(&text, args.p, cap)?, path.display().to_string())
        }
        None => {
            let spec = builtin_spec(args);
            (spec.build(args.p, cap)?, format!("builtin {} (U_dim {})", args.builtin, args.u_dim))
        }
    };
    let config = RunConfig {
        p: s.field().p() as u32,
        cap: s.cap(),
        n_max: args.n_max,
        seed: args.seed,
        budget: budget(args),
        source,
    };
    Ok((s, config))
}

pub fn category(s: SetFunctorRef, config: &RunConfig) -> Result<Arc<ElCategory>> {
    ElCategory::new(s, config.budget)
}

fn parse_num(part: Option<&str>, what: &str) -> Result<usize> {
    part.and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("functor spec: expected a number for {what}")))
}

fn one_functor(cat: &Arc<ElCategory>, spec: &str) -> Result<VecFunctorRef> {
    let mut parts = spec.trim().split(':');
    let kind = parts.next().unwrap_or("");
    Ok(match kind {
        "tensor" => forgetful_lift(cat, VfBuiltin::Tensor(parse_num(parts.next(), "n")?)),
        "injective" => forgetful_lift(cat, VfBuiltin::Injective(parse_num(parts.next(), "v")?)),
        "constant" => Arc::new(ConstantFunctor::new(cat.clone(), cat.full_window(), parse_num(parts.next(), "dim")?)),
        "cogen" | "projective" => {
            let class = parse_num(parts.next(), "class")?;
            let k = parse_num(parts.next(), "k")?;
            let o = cat
                .obj(class, k)
                .ok_or_else(|| Error::OutsideWindow(format!("no object (class {class}, k {k}) under the cap")))?;
            if kind == "cogen" {
                injective_cogen(cat, o)?
            } else {
                projective_gen(cat, o)?
            }
        }
        other => return Err(Error::Parse(format!("unknown functor {other:?}"))),
    })
}

pub fn vec_functor(args: &GlobalArgs, cat: &Arc<ElCategory>) -> Result<VecFunctorRef> {
    if let Some(path) = &args.vfunctor {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        let file: VFunctorFile =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        return Ok(Arc::new(TableFunctor::from_file(cat.clone(), &file)?));
    }
    let parts: Vec<VecFunctorRef> = args.functor.split('+').map(|s| one_functor(cat, s)).collect::<Result<_>>()?;
    Ok(if parts.len() == 1 {
        parts.into_iter().next().unwrap()
    } else {
        Arc::new(DirectSum::new(parts))
    })
}
