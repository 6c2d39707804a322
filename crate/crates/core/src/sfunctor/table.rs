use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::builtin::{Constant, OrbitFunctor, Representable, SubsetFunctor, SubspaceFunctor};
use super::{SetFunctor, SetFunctorRef};
use crate::config::{pow_count, Budget};
use crate::error::{Error, Result};
use crate::gf::{enumerate_maps, FieldPrime, Matrix};

/// A set functor given by explicit tables: for every map `alpha` between
/// spaces up to the cap, the array `s -> alpha^* s`.
#[derive(Clone, Debug)]
pub struct TableFunctor {
    field: FieldPrime,
    cap: usize,
    sizes: Vec<u32>,
    actions: HashMap<(usize, usize, u64), Vec<u32>>,
}

/// On-disk form of a tabulated functor.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SFunctorFile {
    pub p: u32,
    pub cap: usize,
    pub sets: Vec<u32>,
    pub action: BTreeMap<String, Vec<u32>>,
}

/// On-disk form of a built-in functor.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BuiltinSpec {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default)]
    pub p: Option<u32>,
    #[serde(default)]
    pub cap: Option<usize>,
    #[serde(rename = "U_dim", default)]
    pub u_dim: Option<usize>,
    #[serde(default)]
    pub gamma_generators: Vec<Vec<Vec<i64>>>,
}

impl BuiltinSpec {
    /// Builds the functor; `p` and `cap` fall back to the given defaults.
    pub fn build(&self, default_p: u32, default_cap: usize) -> Result<SetFunctorRef> {
        let f = FieldPrime::new(self.p.unwrap_or(default_p))?;
        let cap = self.cap.unwrap_or(default_cap);
        let u = self.u_dim.unwrap_or(1);
        Ok(match self.kind.as_str() {
            "representable" => Arc::new(Representable::new(f, u, cap)?),
            "orbit" => {
                let gens = self
                    .gamma_generators
                    .iter()
                    .map(|rows| {
                        if rows.iter().any(|r| r.len() != u) || rows.len() != u {
                            return Err(Error::Parse(format!("orbit generator must be {u}x{u}")));
                        }
                        Ok(Matrix::from_rows_with_cols(f, rows, u))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Arc::new(OrbitFunctor::new(f, u, cap, gens)?)
            }
            "constant" => Arc::new(Constant::new(f, cap)),
            "subspaces" => Arc::new(SubspaceFunctor::new(f, cap)),
            "subsets" => Arc::new(SubsetFunctor::new(f, cap)?),
            other => return Err(Error::Parse(format!("unknown built-in functor type {other:?}"))),
        })
    }
}

/// Reads either form from JSON text.
pub fn parse_sfunctor(text: &str, default_p: u32, default_cap: usize) -> Result<SetFunctorRef> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("sfunctor.json: {e}")))?;
    if value.get("type").is_some() {
        let spec: BuiltinSpec =
            serde_json::from_value(value).map_err(|e| Error::Parse(format!("sfunctor.json: {e}")))?;
        spec.build(default_p, default_cap)
    } else {
        let file: SFunctorFile =
            serde_json::from_value(value).map_err(|e| Error::Parse(format!("sfunctor.json: {e}")))?;
        Ok(Arc::new(TableFunctor::from_file(&file)?))
    }
}

impl TableFunctor {
    pub fn tabulate(s: &dyn SetFunctor, budget: &Budget) -> Result<Self> {
        let f = s.field();
        let cap = s.cap();
        let entries: u128 = (0..=cap)
            .flat_map(|m| (0..=cap).map(move |n| (m, n)))
            .map(|(m, n)| pow_count(f.order(), m * n))
            .sum();
        budget.check_maps(entries)?;
        let sizes: Vec<u32> = (0..=cap).map(|d| s.size(d)).collect();
        let mut actions = HashMap::new();
        for m in 0..=cap {
            for n in 0..=cap {
                for alpha in enumerate_maps(f, n, m, budget)? {
                    let row: Vec<u32> = (0..sizes[m]).map(|i| s.pull(&alpha, i)).collect();
                    actions.insert((m, n, alpha.index()), row);
                }
            }
        }
        Ok(TableFunctor {
            field: f,
            cap,
            sizes,
            actions,
        })
    }

    pub fn from_file(file: &SFunctorFile) -> Result<Self> {
        let f = FieldPrime::new(file.p)?;
        let cap = file.cap;
        if file.sets.len() != cap + 1 {
            return Err(Error::Parse(format!(
                "\"sets\" lists {} sizes, expected {} (dimensions 0..={cap})",
                file.sets.len(),
                cap + 1
            )));
        }
        let mut actions = HashMap::new();
        for (key, row) in &file.action {
            let alpha = Matrix::from_key(f, key)?;
            let (m, n) = (alpha.rows(), alpha.cols());
            if m > cap || n > cap {
                return Err(Error::Parse(format!("map {key} exceeds the cap {cap}")));
            }
            if row.len() != file.sets[m] as usize {
                return Err(Error::Parse(format!(
                    "map {key}: {} images given for a set of size {}",
                    row.len(),
                    file.sets[m]
                )));
            }
            actions.insert((m, n, alpha.index()), row.clone());
        }
        for m in 0..=cap {
            for n in 0..=cap {
                let count = pow_count(f.order(), m * n);
                if count > 1 << 24 {
                    return Err(Error::Parse(format!("tables of {m}x{n} maps are too large")));
                }
                for idx in 0..count as u64 {
                    if !actions.contains_key(&(m, n, idx)) {
                        let key = Matrix::from_index(f, m, n, idx).key();
                        return Err(Error::InvalidFunctor(format!("missing action for map {key}")));
                    }
                }
            }
        }
        Ok(TableFunctor {
            field: f,
            cap,
            sizes: file.sets.clone(),
            actions,
        })
    }

    pub fn to_file(&self) -> SFunctorFile {
        let action = self
            .actions
            .iter()
            .map(|(&(m, n, idx), row)| (Matrix::from_index(self.field, m, n, idx).key(), row.clone()))
            .collect();
        SFunctorFile {
            p: self.field.p() as u32,
            cap: self.cap,
            sets: self.sizes.clone(),
            action,
        }
    }

    /// Overwrites one entry of `alpha^*`; used to inject faults.
    pub fn corrupt(&mut self, alpha: &Matrix, s: u32, value: u32) -> Result<()> {
        let row = self
            .actions
            .get_mut(&(alpha.rows(), alpha.cols(), alpha.index()))
            .ok_or_else(|| Error::InvalidFunctor(format!("no map {alpha:?}")))?;
        let slot = row
            .get_mut(s as usize)
            .ok_or_else(|| Error::InvalidFunctor(format!("no element {s}")))?;
        *slot = value;
        Ok(())
    }
}

impl SetFunctor for TableFunctor {
    fn field(&self) -> FieldPrime {
        self.field
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn size(&self, d: usize) -> u32 {
        self.sizes[d]
    }
    fn pull(&self, alpha: &Matrix, s: u32) -> u32 {
        self.actions[&(alpha.rows(), alpha.cols(), alpha.index())][s as usize]
    }
    fn name(&self) -> String {
        "table".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let f = FieldPrime::TWO;
        let s = Representable::new(f, 1, 2).unwrap();
        let t = TableFunctor::tabulate(&s, &Budget::default()).unwrap();
        let text = serde_json::to_string(&t.to_file()).unwrap();
        let back = parse_sfunctor(&text, 2, 2).unwrap();
        let alpha = Matrix::from_rows(f, &[[1, 0], [1, 1]]);
        for i in 0..4 {
            assert_eq!(back.pull(&alpha, i), s.pull(&alpha, i));
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_sfunctor("{\"p\": 2,\n \"cap\": }", 2, 2).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = parse_sfunctor(r#"{"p":2,"cap":1,"sets":[1,2],"action":{}}"#, 2, 1).unwrap_err();
        assert!(matches!(err, Error::InvalidFunctor(_)));
    }

    #[test]
    fn builtin_specs() {
        let s = parse_sfunctor(r#"{"type":"orbit","U_dim":2,"gamma_generators":[[[0,1],[1,0]]]}"#, 2, 2)
            .unwrap();
        assert_eq!(s.size(1), 3);
        assert!(parse_sfunctor(r#"{"type":"nope"}"#, 2, 2).is_err());
    }
}
