use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{ElMorphism, ElObject};
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::gf::{enumerate_invertibles, enumerate_maps, FieldPrime, Matrix};
use crate::modrep::FiniteGroup;
use crate::sfunctor::{regular_set, SElement, SetFunctor};

/// One isomorphism class of regular pairs, represented by the
/// enumeration-minimal element of its `GL`-orbit.
#[derive(Clone, Debug)]
pub struct RectorClass {
    pub dim: usize,
    pub element: SElement,
    /// `{g in GL(dim) : g^* element = element}` in enumeration order.
    pub aut: Vec<Matrix>,
    /// The same group as a table over indices into `aut`.
    pub group: Arc<FiniteGroup>,
}

impl RectorClass {
    pub fn object(&self) -> ElObject {
        ElObject::new(self.element)
    }
}

/// Canonical skeleton of Rector's category of regular pairs.
#[derive(Debug)]
pub struct RectorSkeleton {
    field: FieldPrime,
    cap: usize,
    classes: Vec<RectorClass>,
    /// Per dimension: regular element -> (class, w) with `w^* rep = element`.
    witnesses: Vec<HashMap<u32, (usize, Matrix)>>,
    /// `homs[c][c2]`: all `f` with `f^* rep_c2 = rep_c`, in index order.
    homs: Vec<Vec<Vec<Matrix>>>,
}

/// Result of the injectivity check on all morphisms between classes.
#[derive(Clone, Debug, Serialize)]
pub struct InjectivityReport {
    pub holds: bool,
    pub morphisms_checked: usize,
    /// `(source class, target class, map)` of a non-injective morphism.
    pub witness: Option<(usize, usize, Matrix)>,
}

struct DimOrbits {
    reps: Vec<(SElement, Vec<Matrix>)>,
    witnesses: HashMap<u32, (usize, Matrix)>,
}

fn orbits_at(s: &dyn SetFunctor, d: usize, budget: &Budget) -> Result<DimOrbits> {
    let regular = regular_set(s, d)?;
    let mut out = DimOrbits {
        reps: Vec::new(),
        witnesses: HashMap::new(),
    };
    if regular.is_empty() {
        return Ok(out);
    }
    let gl = enumerate_invertibles(s.field(), d, budget)?;
    for x in &regular {
        if out.witnesses.contains_key(&x.index) {
            continue;
        }
        let local = out.reps.len();
        let mut stab = Vec::new();
        for g in &gl {
            let t = s.pull(g, x.index);
            if t == x.index {
                stab.push(g.clone());
            }
            if let Some((c, _)) = out.witnesses.get(&t) {
                if *c != local {
                    return Err(Error::InvalidFunctor(format!(
                        "GL({d}) orbits of {x} and a smaller class overlap"
                    )));
                }
            } else {
                out.witnesses.insert(t, (local, g.clone()));
            }
        }
        out.reps.push((*x, stab));
    }
    for x in &regular {
        if !out.witnesses.contains_key(&x.index) {
            return Err(Error::InvalidFunctor(format!("{x} lies in no orbit")));
        }
    }
    if out.witnesses.len() != regular.len() {
        return Err(Error::WeakNoetherianViolated(format!(
            "GL({d}) moves a regular element of dimension {d} to a non-regular one"
        )));
    }
    Ok(out)
}

impl RectorSkeleton {
    pub fn build(s: &dyn SetFunctor, budget: &Budget) -> Result<Self> {
        let f = s.field();
        let cap = s.cap();
        let per_dim: Vec<DimOrbits> = (0..=cap)
            .into_par_iter()
            .map(|d| orbits_at(s, d, budget))
            .collect::<Result<_>>()?;
        let mut classes = Vec::new();
        let mut witnesses = Vec::new();
        for (d, orb) in per_dim.into_iter().enumerate() {
            let offset = classes.len();
            for (element, aut) in orb.reps {
                let group = FiniteGroup::from_matrices(&aut, format!("Aut{}", element))?;
                classes.push(RectorClass {
                    dim: d,
                    element,
                    aut,
                    group: Arc::new(group),
                });
            }
            witnesses.push(
                orb.witnesses
                    .into_iter()
                    .map(|(t, (c, g))| (t, (c + offset, g)))
                    .collect(),
            );
        }
        let homs = classes
            .par_iter()
            .map(|a| {
                classes
                    .iter()
                    .map(|b| {
                        Ok(enumerate_maps(f, a.dim, b.dim, budget)?
                            .filter(|m| s.pull(m, b.element.index) == a.element.index)
                            .collect())
                    })
                    .collect::<Result<Vec<Vec<Matrix>>>>()
            })
            .collect::<Result<_>>()?;
        Ok(RectorSkeleton {
            field: f,
            cap,
            classes,
            witnesses,
            homs,
        })
    }

    pub fn field(&self) -> FieldPrime {
        self.field
    }
    pub fn cap(&self) -> usize {
        self.cap
    }
    pub fn classes(&self) -> &[RectorClass] {
        &self.classes
    }
    pub fn class(&self, c: usize) -> &RectorClass {
        &self.classes[c]
    }
    pub fn len(&self) -> usize {
        self.classes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Largest dimension carrying a regular class.
    pub fn d_reg(&self) -> usize {
        self.classes.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    /// The class of a regular element and a witness `w` with `w^* rep = x`.
    pub fn class_of(&self, x: SElement) -> Option<(usize, &Matrix)> {
        self.witnesses.get(x.dim)?.get(&x.index).map(|(c, w)| (*c, w))
    }

    /// The stored isomorphism from a regular pair to its representative.
    pub fn iso_witness(&self, x: SElement) -> Option<ElMorphism> {
        let (c, w) = self.class_of(x)?;
        Some(ElMorphism {
            src: ElObject::new(x),
            dst: self.classes[c].object(),
            map: w.clone(),
        })
    }

    /// `hom_R(c, c2)`: maps `f` with `f^* rep_c2 = rep_c`.
    pub fn hom_r(&self, c: usize, c2: usize) -> &[Matrix] {
        &self.homs[c][c2]
    }

    pub fn check_injectivity(&self) -> InjectivityReport {
        let mut checked = 0;
        for (a, row) in self.homs.iter().enumerate() {
            for (b, maps) in row.iter().enumerate() {
                for m in maps {
                    checked += 1;
                    if !m.is_injective() {
                        return InjectivityReport {
                            holds: false,
                            morphisms_checked: checked,
                            witness: Some((a, b, m.clone())),
                        };
                    }
                }
            }
        }
        InjectivityReport {
            holds: true,
            morphisms_checked: checked,
            witness: None,
        }
    }

    pub fn report(&self) -> RectorReport {
        RectorReport {
            p: self.field.p(),
            cap: self.cap,
            classes: self
                .classes
                .iter()
                .enumerate()
                .map(|(i, c)| ClassReport {
                    index: i,
                    dim: c.dim,
                    element: c.element.index,
                    aut_order: c.aut.len(),
                    aut_elements: c.aut.clone(),
                    aut_table: (0..c.aut.len())
                        .map(|a| (0..c.aut.len()).map(|b| c.group.mul(a, b)).collect())
                        .collect(),
                    aut_generators: c.group.generators().to_vec(),
                })
                .collect(),
            hom_counts: self.homs.iter().map(|r| r.iter().map(Vec::len).collect()).collect(),
            injective: self.check_injectivity().holds,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub index: usize,
    pub dim: usize,
    pub element: u32,
    pub aut_order: usize,
    pub aut_elements: Vec<Matrix>,
    pub aut_table: Vec<Vec<usize>>,
    pub aut_generators: Vec<usize>,
}

/// Serializable summary: classes with their automorphism tables and the
/// matrix of `|hom_R(c, c2)|`.
#[derive(Clone, Debug, Serialize)]
pub struct RectorReport {
    pub p: u8,
    pub cap: usize,
    pub classes: Vec<ClassReport>,
    pub hom_counts: Vec<Vec<usize>>,
    pub injective: bool,
}

pub fn build_rector_skeleton(s: &dyn SetFunctor, budget: &Budget) -> Result<RectorSkeleton> {
    RectorSkeleton::build(s, budget)
}
