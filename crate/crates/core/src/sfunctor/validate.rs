use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{SElement, SetFunctor};
use crate::config::{pow_count, Budget};
use crate::error::Result;
use crate::gf::{enumerate_maps, FieldPrime, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    OutOfRange { alpha: Matrix, s: SElement, value: u32 },
    Identity { s: SElement, image: u32 },
    Composition {
        alpha: Matrix,
        beta: Matrix,
        s: SElement,
        composite: u32,
        iterated: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive,
    Sampled { seed: u64, samples: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub cap: usize,
    /// `(alpha g)^* = g^* alpha^*` for every map `alpha` and every generator
    /// `g` of the category of spaces up to the cap. Together with the identity
    /// law this implies the full composition law.
    pub generator_pairs_checked: u128,
    pub triple_mode: CheckMode,
    pub triples_checked: u128,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Elementary maps into `F_p^n` generating every linear map between spaces of
/// dimension at most `cap`: transvections, a primitive scaling, and the
/// inclusion from / projection onto neighbouring dimensions.
pub fn category_generators(field: FieldPrime, n: usize, cap: usize) -> Vec<Matrix> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut t = Matrix::identity(field, n);
                t.set(i, j, 1);
                gens.push(t);
            }
        }
    }
    if field.p() > 2 && n > 0 {
        let mut d = Matrix::identity(field, n);
        d.set(0, 0, field.primitive_root());
        gens.push(d);
    }
    if n > 0 {
        let mut inc = Matrix::zeros(field, n, n - 1);
        inc.paste(0, 0, &Matrix::identity(field, n - 1));
        gens.push(inc);
    }
    if n < cap {
        let mut proj = Matrix::zeros(field, n, n + 1);
        proj.paste(0, 0, &Matrix::identity(field, n));
        gens.push(proj);
    }
    gens
}

/// Checks totality, identities, and composition. Composition is checked
/// against generators (complete), and additionally on literal triples, either
/// all of them or a seeded sample when they exceed `budget.checks`.
pub fn validate(s: &dyn SetFunctor, budget: &Budget, seed: u64) -> Result<ValidationReport> {
    let f = s.field();
    let cap = s.cap();
    let all = Budget {
        maps: u128::MAX,
        ..*budget
    };
    let mut report = ValidationReport {
        cap,
        generator_pairs_checked: 0,
        triple_mode: CheckMode::Exhaustive,
        triples_checked: 0,
        violation: None,
    };
    for d in 0..=cap {
        let id = Matrix::identity(f, d);
        if let Some(v) = (0..s.size(d)).find_map(|i| {
            let image = s.pull(&id, i);
            (image != i).then_some(Violation::Identity {
                s: SElement::new(d, i),
                image,
            })
        }) {
            report.violation = Some(v);
            return Ok(report);
        }
    }
    for m in 0..=cap {
        for n in 0..=cap {
            let gens = category_generators(f, n, cap);
            let sizes: Vec<u32> = (0..=cap).map(|d| s.size(d)).collect();
            let maps: Vec<Matrix> = enumerate_maps(f, n, m, &all)?.collect();
            let found = maps.par_iter().find_map_first(|alpha| {
                (0..sizes[m]).find_map(|i| {
                    let t = s.pull(alpha, i);
                    if t >= sizes[n] {
                        return Some(Violation::OutOfRange {
                            alpha: alpha.clone(),
                            s: SElement::new(m, i),
                            value: t,
                        });
                    }
                    gens.iter().find_map(|g| {
                        let composite = s.pull(&alpha.mul(g), i);
                        let iterated = s.pull(g, t);
                        (composite != iterated).then(|| Violation::Composition {
                            alpha: alpha.clone(),
                            beta: g.clone(),
                            s: SElement::new(m, i),
                            composite,
                            iterated,
                        })
                    })
                })
            });
            report.generator_pairs_checked +=
                maps.len() as u128 * sizes[m] as u128 * gens.len() as u128;
            if found.is_some() {
                report.violation = found;
                return Ok(report);
            }
        }
    }
    let mut total: u128 = 0;
    for m in 0..=cap {
        for n in 0..=cap {
            for l in 0..=cap {
                let c = pow_count(f.order(), m * n)
                    .saturating_mul(pow_count(f.order(), n * l))
                    .saturating_mul(s.size(m) as u128);
                total = total.saturating_add(c);
            }
        }
    }
    if total <= budget.checks {
        report.triples_checked = total;
        for m in 0..=cap {
            for n in 0..=cap {
                for l in 0..=cap {
                    let alphas: Vec<Matrix> = enumerate_maps(f, n, m, &all)?.collect();
                    let betas: Vec<Matrix> = enumerate_maps(f, l, n, &all)?.collect();
                    let found = alphas.par_iter().find_map_first(|alpha| {
                        betas.iter().find_map(|beta| {
                            let ab = alpha.mul(beta);
                            (0..s.size(m)).find_map(|i| composition_violation(s, alpha, beta, &ab, m, i))
                        })
                    });
                    if found.is_some() {
                        report.violation = found;
                        return Ok(report);
                    }
                }
            }
        }
    } else {
        let samples = budget.checks.min(1 << 16) as u64;
        report.triple_mode = CheckMode::Sampled { seed, samples };
        report.triples_checked = samples as u128;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (m, n, l) = (rng.gen_range(0..=cap), rng.gen_range(0..=cap), rng.gen_range(0..=cap));
            let alpha = random_matrix(f, m, n, &mut rng);
            let beta = random_matrix(f, n, l, &mut rng);
            if s.size(m) == 0 {
                continue;
            }
            let i = rng.gen_range(0..s.size(m));
            let ab = alpha.mul(&beta);
            if let Some(v) = composition_violation(s, &alpha, &beta, &ab, m, i) {
                report.violation = Some(v);
                return Ok(report);
            }
        }
    }
    Ok(report)
}

fn composition_violation(
    s: &dyn SetFunctor,
    alpha: &Matrix,
    beta: &Matrix,
    ab: &Matrix,
    m: usize,
    i: u32,
) -> Option<Violation> {
    let composite = s.pull(ab, i);
    let iterated = s.pull(beta, s.pull(alpha, i));
    (composite != iterated).then(|| Violation::Composition {
        alpha: alpha.clone(),
        beta: beta.clone(),
        s: SElement::new(m, i),
        composite,
        iterated,
    })
}

pub(crate) fn random_matrix<R: Rng>(f: FieldPrime, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let mut m = Matrix::zeros(f, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rng.gen_range(0..f.p()));
        }
    }
    m
}
