//! Truncated functors from the category of elements to `F_p`-vector spaces,
//! with difference functors, cross effects and the polynomial filtration.

mod adjunction;
mod builtin;
mod delta;
mod nat;
mod oe;
mod sigma;
mod sub;
mod table;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::elcat::{ElCategory, ElMorphism, Morphism, ObjId, Window};
use crate::error::{Error, Result};
use crate::gf::Matrix;

pub use adjunction::{
    adjunction_check, bar_extension_check, counit, delta_map, tensor_map, triangle_identities, unit, AdjunctionReport,
    BarExtensionReport, Counit, TriangleReport, Unit,
};
pub use builtin::{
    forgetful_lift, injective_cogen, projective_gen, ConstantFunctor, DirectSum, ForgetfulLift, InjectiveCogen,
    ProjectiveGen, Restrict, VfBuiltin,
};
pub use delta::{
    cross_effect, cross_effect_sigma, delta_bar, delta_bar_power, pi_idempotent, polynomial_degree, p_n,
    vanishes, DeltaBar, DegreeCertificate,
};
pub use nat::{hom_space, hom_space_sigma, is_natural, is_natural_sigma, NatTrans, SigmaNatTrans};
pub use oe::{extendable, ETransform, ExtensionCheck, OTransform, RVFunctor, RVFunctorRef};
pub use sigma::{defined_classes, DeltaBarN, ModuleOnClass, SigmaNFunctor, SigmaNFunctorRef, TensorSigma};
pub use sub::{generated_subfunctor, generated_by, QuotientFunctor, SubFunctor};
pub use table::{MapEntry, ObjectEntry, TableFunctor, VFunctorFile};

/// A covariant functor on the skeletal category of elements, defined on a
/// window of objects.
pub trait VecFunctor: Send + Sync {
    fn category(&self) -> &Arc<ElCategory>;
    fn window(&self) -> Window;
    fn dim_at(&self, o: ObjId) -> usize;
    /// `F(m)`, a `dim_at(m.dst) x dim_at(m.src)` matrix. Both ends must lie in
    /// the window; see [`checked_act`].
    fn act(&self, m: &Morphism) -> Matrix;
    fn name(&self) -> String {
        "F".into()
    }
}

pub type VecFunctorRef = Arc<dyn VecFunctor>;

impl std::fmt::Debug for dyn VecFunctor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} on {:?}", self.name(), self.window())
    }
}

pub fn window_objects(f: &dyn VecFunctor) -> Vec<ObjId> {
    f.category().window_objects(f.window())
}

pub fn checked_dim(f: &dyn VecFunctor, o: ObjId) -> Result<usize> {
    if o >= f.category().objects().len() || !f.category().in_window(o, f.window()) {
        return Err(Error::OutsideWindow(format!("object {o} outside {:?}", f.window())));
    }
    Ok(f.dim_at(o))
}

pub fn checked_act(f: &dyn VecFunctor, m: &Morphism) -> Result<Matrix> {
    checked_dim(f, m.src)?;
    checked_dim(f, m.dst)?;
    if !f.category().is_skeletal_morphism(m) {
        return Err(Error::InvalidFunctor(format!("{} is not a morphism {} -> {}", m.map.key(), m.src, m.dst)));
    }
    Ok(f.act(m))
}

/// `F(m)` for a morphism between arbitrary objects, transported along the
/// stored isomorphisms to the skeleton.
pub fn act_general(f: &dyn VecFunctor, m: &ElMorphism) -> Result<Matrix> {
    let routed = f.category().route(m)?;
    checked_act(f, &routed)
}

pub fn is_zero(f: &dyn VecFunctor) -> bool {
    window_objects(f).into_iter().all(|o| f.dim_at(o) == 0)
}

/// Value dimensions on the window.
pub fn dims(f: &dyn VecFunctor) -> Vec<(ObjId, usize)> {
    window_objects(f).into_iter().map(|o| (o, f.dim_at(o))).collect()
}

/// Result of checking the functor laws on a window.
#[derive(Clone, Debug, Serialize)]
pub struct FunctorCheck {
    pub window: Window,
    pub exhaustive: bool,
    pub pairs_checked: usize,
    pub failure: Option<String>,
}

impl FunctorCheck {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `F(id) = id` and `F(g m) = F(g) F(m)` for every generator `g` and
/// every morphism `m` in the window, which by induction on word length gives
/// all composites. Above `max_pairs` the morphisms `m` are sampled.
pub fn validate_functor(f: &dyn VecFunctor, max_pairs: usize, seed: u64) -> Result<FunctorCheck> {
    let cat = f.category();
    let w = f.window();
    let gens = cat.generators(w);
    let objs = window_objects(f);
    let mut out = FunctorCheck {
        window: w,
        exhaustive: true,
        pairs_checked: 0,
        failure: None,
    };
    for &o in &objs {
        let id = f.act(&cat.identity(o));
        if !id.is_identity() || id.rows() != f.dim_at(o) {
            out.failure = Some(format!("F(id) is not the identity at object {o}"));
            return Ok(out);
        }
    }
    let mut total: u128 = 0;
    for &a in &objs {
        for &b in &objs {
            let out_gens = gens.iter().filter(|g| g.src == b).count() as u128;
            total = total.saturating_add(cat.hom_count(a, b).saturating_mul(out_gens));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample = total > max_pairs as u128;
    out.exhaustive = !sample;
    for &a in &objs {
        for &b in &objs {
            let homs = cat.skeleton_homs(a, b)?;
            let chosen: Vec<&Matrix> = if sample {
                let k = (max_pairs / (objs.len() * objs.len()).max(1)).max(1);
                (0..k.min(homs.len())).map(|_| &homs[rng.gen_range(0..homs.len())]).collect()
            } else {
                homs.iter().collect()
            };
            for m in chosen {
                let mm = Morphism {
                    src: a,
                    dst: b,
                    map: m.clone(),
                };
                let fm = f.act(&mm);
                for g in gens.iter().filter(|g| g.src == b) {
                    out.pairs_checked += 1;
                    if f.act(&cat.compose(g, &mm)) != f.act(g).mul(&fm) {
                        out.failure = Some(format!(
                            "F({} . {}) != F({}) F({}) from object {a}",
                            g.map.key(),
                            m.key(),
                            g.map.key(),
                            m.key()
                        ));
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}
