use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::VecFunctor;
use crate::elcat::{ElCategory, Morphism, ObjId, Window};
use crate::error::{Error, Result};
use crate::gf::Matrix;

/// A functor stored as explicit tables: a dimension per window object and a
/// matrix per skeletal morphism.
pub struct TableFunctor {
    cat: Arc<ElCategory>,
    window: Window,
    dims: Vec<usize>,
    maps: HashMap<(ObjId, ObjId, Matrix), Matrix>,
    name: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ObjectEntry {
    pub id: ObjId,
    pub class: usize,
    pub k: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapEntry {
    pub src: ObjId,
    pub dst: ObjId,
    pub src_class: usize,
    pub dst_class: usize,
    /// The morphism, as a matrix key.
    pub key: String,
    pub matrix: String,
}

/// On-disk form of a tabulated functor (`vfunctor.json`).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VFunctorFile {
    pub schema: u32,
    pub p: u32,
    pub window: Window,
    pub objects: Vec<ObjectEntry>,
    pub maps: Vec<MapEntry>,
}

impl TableFunctor {
    /// Tabulates `f` on every skeletal morphism of its window.
    pub fn tabulate(f: &dyn VecFunctor) -> Result<Self> {
        let cat = f.category().clone();
        let w = f.window();
        let objs = cat.window_objects(w);
        let mut dims = vec![0; cat.objects().len()];
        let mut maps = HashMap::new();
        for &a in &objs {
            dims[a] = f.dim_at(a);
            for &b in &objs {
                for m in cat.skeleton_homs(a, b)? {
                    let mm = Morphism { src: a, dst: b, map: m };
                    let v = f.act(&mm);
                    maps.insert((a, b, mm.map), v);
                }
            }
        }
        Ok(TableFunctor {
            cat,
            window: w,
            dims,
            maps,
            name: f.name(),
        })
    }

    pub fn to_file(&self) -> VFunctorFile {
        let objects = self
            .cat
            .window_objects(self.window)
            .into_iter()
            .map(|o| {
                let so = self.cat.object(o);
                ObjectEntry {
                    id: o,
                    class: so.class,
                    k: so.k,
                    dim: self.dims[o],
                }
            })
            .collect();
        let mut maps: Vec<MapEntry> = self
            .maps
            .iter()
            .map(|((a, b, m), v)| MapEntry {
                src: *a,
                dst: *b,
                src_class: self.cat.object(*a).class,
                dst_class: self.cat.object(*b).class,
                key: m.key(),
                matrix: v.key(),
            })
            .collect();
        maps.sort_by(|x, y| (x.src, x.dst, &x.key).cmp(&(y.src, y.dst, &y.key)));
        VFunctorFile {
            schema: 1,
            p: self.cat.field().p() as u32,
            window: self.window,
            objects,
            maps,
        }
    }

    /// Reads a table against `cat`, checking that it covers every skeletal
    /// morphism of its window with matrices of the right shape. Functoriality
    /// is left to [`super::validate_functor`].
    pub fn from_file(cat: Arc<ElCategory>, file: &VFunctorFile) -> Result<Self> {
        if file.schema != 1 {
            return Err(Error::Parse(format!("unsupported vfunctor schema {}", file.schema)));
        }
        let field = cat.field();
        if file.p != field.p() as u32 {
            return Err(Error::Parse(format!("table is over F_{}, category over {field}", file.p)));
        }
        let w = file.window;
        if w.total > cat.cap() {
            return Err(Error::OutsideWindow(format!("window {w:?} exceeds the cap {}", cat.cap())));
        }
        let objs = cat.window_objects(w);
        let mut dims = vec![0; cat.objects().len()];
        let mut seen = vec![false; cat.objects().len()];
        for e in &file.objects {
            if e.id >= cat.objects().len() || !cat.in_window(e.id, w) {
                return Err(Error::Parse(format!("object {} is outside the window", e.id)));
            }
            let so = cat.object(e.id);
            if (so.class, so.k) != (e.class, e.k) {
                return Err(Error::Parse(format!("object {} is (class {}, k {}), not ({}, {})", e.id, so.class, so.k, e.class, e.k)));
            }
            dims[e.id] = e.dim;
            seen[e.id] = true;
        }
        if let Some(o) = objs.iter().find(|&&o| !seen[o]) {
            return Err(Error::Parse(format!("no dimension given for object {o}")));
        }
        let mut maps = HashMap::new();
        for e in &file.maps {
            if e.src >= seen.len() || e.dst >= seen.len() || !seen[e.src] || !seen[e.dst] {
                return Err(Error::Parse(format!("map {} between unknown objects", e.key)));
            }
            let m = Matrix::from_key(field, &e.key)?;
            let mm = Morphism { src: e.src, dst: e.dst, map: m };
            if !cat.is_skeletal_morphism(&mm) {
                return Err(Error::InvalidFunctor(format!("{} is not a morphism {} -> {}", e.key, e.src, e.dst)));
            }
            let v = Matrix::from_key(field, &e.matrix)?;
            if v.rows() != dims[e.dst] || v.cols() != dims[e.src] {
                return Err(Error::DimensionMismatch(format!("value of {} has shape {}x{}", e.key, v.rows(), v.cols())));
            }
            maps.insert((e.src, e.dst, mm.map), v);
        }
        for &a in &objs {
            for &b in &objs {
                for m in cat.skeleton_homs(a, b)? {
                    if !maps.contains_key(&(a, b, m.clone())) {
                        return Err(Error::Parse(format!("missing map {} : {a} -> {b}", m.key())));
                    }
                }
            }
        }
        Ok(TableFunctor {
            cat,
            window: w,
            dims,
            maps,
            name: "table".into(),
        })
    }
}

impl VecFunctor for TableFunctor {
    fn category(&self) -> &Arc<ElCategory> {
        &self.cat
    }
    fn window(&self) -> Window {
        self.window
    }
    fn dim_at(&self, o: ObjId) -> usize {
        self.dims[o]
    }
    fn act(&self, m: &Morphism) -> Matrix {
        self.maps[&(m.src, m.dst, m.map.clone())].clone()
    }
    fn name(&self) -> String {
        self.name.clone()
    }
}
