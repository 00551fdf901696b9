//! Built-in data registry: group generators, the named forms, orbit
//! representatives, line and conic descriptors, complete intersections, and
//! pencils. Everything is declared as cyclotomic/polynomial literals in a
//! JSON document embedded in the crate and can be overridden with an
//! external file of the same schema.

use crate::cyclo::{CycError, Field};
use crate::group::{enumerate_group, GroupError, MatrixGroup, ProjPoint, DEFAULT_ENUMERATION_BOUND};
use crate::linalg::{Matrix, Subspace};
use crate::poly::{MultiPoly, N_VARS};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};
use thiserror::Error;

pub const BUILTIN_REGISTRY: &str = include_str!("../registry.json");

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("registry parse failure: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Field(#[from] CycError),
    #[error("{0}")]
    Group(#[from] GroupError),
    #[error("unknown registry key: {0}")]
    UnknownKey(String),
    #[error("bad registry entry {key}: {msg}")]
    BadEntry { key: String, msg: String },
}

#[derive(Deserialize)]
struct GroupDef {
    generators: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct PencilDef {
    a_form: String,
    b_form: String,
    ambient: String,
}

#[derive(Deserialize)]
struct RegistryDoc {
    #[allow(dead_code)]
    schema_version: u32,
    conductor: u32,
    groups: BTreeMap<String, GroupDef>,
    forms: BTreeMap<String, String>,
    points: BTreeMap<String, Vec<String>>,
    lines: BTreeMap<String, Vec<String>>,
    planes: BTreeMap<String, Vec<String>>,
    ci: BTreeMap<String, Vec<String>>,
    pencils: BTreeMap<String, PencilDef>,
    /// Optional externally-sourced curve parametrizations (5 binary forms in
    /// the variables x1, x2 per curve). Absent from the built-in registry;
    /// checks depending on them report skipped-with-reason.
    #[serde(default)]
    zweb: BTreeMap<String, Vec<String>>,
}

/// A pencil of surfaces {a·A + b·B = 0} ∩ ambient.
#[derive(Clone)]
pub struct Pencil {
    pub a_form: MultiPoly,
    pub b_form: MultiPoly,
    pub ambient: MultiPoly,
}

pub struct Registry {
    field: Field,
    doc: RegistryDoc,
    groups: Mutex<BTreeMap<String, Arc<MatrixGroup>>>,
}

impl Registry {
    /// Built-in registry at the given conductor (the scenarios need 120 | N).
    pub fn new(conductor: u32) -> Result<Registry, RegistryError> {
        Self::from_json(BUILTIN_REGISTRY, Some(conductor))
    }

    pub fn from_json(text: &str, conductor_override: Option<u32>) -> Result<Registry, RegistryError> {
        let doc: RegistryDoc = serde_json::from_str(text)?;
        let conductor = conductor_override.unwrap_or(doc.conductor);
        let field = Field::new(conductor)?;
        Ok(Registry {
            field,
            doc,
            groups: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn field(&self) -> Field {
        self.field.clone()
    }

    pub fn group_keys(&self) -> Vec<String> {
        self.doc.groups.keys().cloned().collect()
    }

    pub fn group(&self, key: &str) -> Result<Arc<MatrixGroup>, RegistryError> {
        if let Some(g) = self.groups.lock().unwrap().get(key) {
            return Ok(g.clone());
        }
        let def = self
            .doc
            .groups
            .get(key)
            .ok_or_else(|| RegistryError::UnknownKey(key.into()))?;
        let mut gens = Vec::new();
        for g in &def.generators {
            if g.len() != N_VARS * N_VARS {
                return Err(RegistryError::BadEntry {
                    key: key.into(),
                    msg: "generator is not a 5x5 matrix".into(),
                });
            }
            let mut rows = Vec::new();
            for r in 0..N_VARS {
                let mut row = Vec::new();
                for c in 0..N_VARS {
                    row.push(self.field.parse(&g[r * N_VARS + c])?);
                }
                rows.push(row);
            }
            gens.push(Matrix::from_rows(&self.field, rows));
        }
        let grp = Arc::new(enumerate_group(
            &self.field,
            gens,
            DEFAULT_ENUMERATION_BOUND,
        )?);
        self.groups
            .lock()
            .unwrap()
            .insert(key.to_string(), grp.clone());
        Ok(grp)
    }

    pub fn form(&self, key: &str) -> Result<MultiPoly, RegistryError> {
        let lit = self
            .doc
            .forms
            .get(key)
            .ok_or_else(|| RegistryError::UnknownKey(key.into()))?;
        Ok(MultiPoly::parse(&self.field, lit)?)
    }

    pub fn point(&self, key: &str) -> Result<ProjPoint, RegistryError> {
        let coords = self
            .doc
            .points
            .get(key)
            .ok_or_else(|| RegistryError::UnknownKey(key.into()))?;
        let mut v = Vec::new();
        for c in coords {
            v.push(self.field.parse(c)?);
        }
        Ok(ProjPoint::new(v))
    }

    pub fn point_keys(&self) -> Vec<String> {
        self.doc.points.keys().cloned().collect()
    }

    /// Parse a point from a literal list "a : b : c : d : e" or from a
    /// registry key.
    pub fn point_or_literal(&self, text: &str) -> Result<ProjPoint, RegistryError> {
        if self.doc.points.contains_key(text) {
            return self.point(text);
        }
        let parts: Vec<&str> = text
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .split(':')
            .collect();
        if parts.len() != N_VARS {
            return Err(RegistryError::BadEntry {
                key: text.into(),
                msg: "expected 5 colon-separated coordinates".into(),
            });
        }
        let mut v = Vec::new();
        for p in parts {
            v.push(self.field.parse(p)?);
        }
        Ok(ProjPoint::new(v))
    }

    /// The linear forms cutting a registered line.
    pub fn line_forms(&self, key: &str) -> Result<Vec<MultiPoly>, RegistryError> {
        let lits = self
            .doc
            .lines
            .get(key)
            .ok_or_else(|| RegistryError::UnknownKey(key.into()))?;
        lits.iter()
            .map(|l| Ok(MultiPoly::parse(&self.field, l)?))
            .collect()
    }

    /// A registered line as a 2-dimensional subspace.
    pub fn line(&self, key: &str) -> Result<Subspace, RegistryError> {
        let forms = self.line_forms(key)?;
        subspace_from_linear_forms(&self.field, &forms, 2).ok_or_else(|| RegistryError::BadEntry {
            key: key.into(),
            msg: "cutting forms do not define a line".into(),
        })
    }

    /// The two linear forms cutting a registered plane (for plane conics).
    pub fn plane_forms(&self, key: &str) -> Result<Vec<MultiPoly>, RegistryError> {
        let lits = self
            .doc
            .planes
            .get(key)
            .ok_or_else(|| RegistryError::UnknownKey(key.into()))?;
        lits.iter()
            .map(|l| Ok(MultiPoly::parse(&self.field, l)?))
            .collect()
    }

    pub fn plane(&self, key: &str) -> Result<Subspace, RegistryError> {
        let forms = self.plane_forms(key)?;
        subspace_from_linear_forms(&self.field, &forms, 3).ok_or_else(|| RegistryError::BadEntry {
            key: key.into(),
            msg: "cutting forms do not define a plane".into(),
        })
    }

    /// Defining forms of a registered complete intersection.
    pub fn ci_forms(&self, key: &str) -> Result<Vec<MultiPoly>, RegistryError> {
        let lits = self
            .doc
            .ci
            .get(key)
            .ok_or_else(|| RegistryError::UnknownKey(key.into()))?;
        lits.iter()
            .map(|l| Ok(MultiPoly::parse(&self.field, l)?))
            .collect()
    }

    /// An optional externally-sourced parametrized curve; Ok(None) when the
    /// registry does not carry it.
    pub fn zweb_curve(&self, key: &str) -> Result<Option<crate::variety::RationalCurve>, RegistryError> {
        let Some(lits) = self.doc.zweb.get(key) else {
            return Ok(None);
        };
        let mut param = Vec::new();
        for l in lits {
            param.push(MultiPoly::parse(&self.field, l)?);
        }
        Ok(Some(crate::variety::RationalCurve::new(param)))
    }

    pub fn pencil(&self, key: &str) -> Result<Pencil, RegistryError> {
        let def = self
            .doc
            .pencils
            .get(key)
            .ok_or_else(|| RegistryError::UnknownKey(key.into()))?;
        // Pencil forms may reference registered forms by name.
        let parse_or_ref = |lit: &str| -> Result<MultiPoly, RegistryError> {
            if let Some(f) = self.doc.forms.get(lit) {
                Ok(MultiPoly::parse(&self.field, f)?)
            } else {
                Ok(MultiPoly::parse(&self.field, lit)?)
            }
        };
        Ok(Pencil {
            a_form: parse_or_ref(&def.a_form)?,
            b_form: parse_or_ref(&def.b_form)?,
            ambient: self.form(&def.ambient)?,
        })
    }
}

/// Common zero locus of linear forms as a subspace of the expected dimension.
pub fn subspace_from_linear_forms(
    field: &Field,
    forms: &[MultiPoly],
    expect_dim: usize,
) -> Option<Subspace> {
    let mut rows = Vec::new();
    for f in forms {
        if f.homogeneous_degree() != Some(1) {
            return None;
        }
        let mut row = vec![field.zero(); N_VARS];
        for (e, c) in f.terms() {
            let i = (0..N_VARS).find(|&i| e.0[i] == 1).unwrap();
            row[i] = c.clone();
        }
        rows.push(row);
    }
    let m = Matrix::from_rows(field, rows);
    let ker = m.kernel_basis();
    if ker.len() != expect_dim {
        return None;
    }
    Subspace::from_spanning(ker, field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_loads_and_parses() {
        let reg = Registry::new(120).unwrap();
        let x1 = reg.form("X1").unwrap();
        assert_eq!(x1.num_terms(), 5);
        let x2 = reg.form("X2").unwrap();
        assert_eq!(x2.num_terms(), 15);
        let y1 = reg.form("Y1").unwrap();
        assert_eq!(y1.num_terms(), 10);
        let f1 = reg.form("f1").unwrap();
        let f2 = reg.form("f2").unwrap();
        assert_eq!(f1.num_terms(), 15);
        assert_eq!(f2.num_terms(), 15);
        assert_eq!((&f1 + &f2).num_terms(), 30);
        // Y2 = (8-3ζ6) f1 + 7 f2.
        let f = reg.field();
        let y2 = reg.form("Y2").unwrap();
        let want = &f1.scale(&(&f.integer(8) - &(&f.integer(3) * &f.zeta(6).unwrap())))
            + &f2.scale(&f.integer(7));
        assert_eq!(y2, want);
    }

    #[test]
    fn all_reps_lie_on_their_varieties() {
        let reg = Registry::new(120).unwrap();
        for (prefix, form) in [("x1.", "X1"), ("y1.", "Y1"), ("x2.", "X2"), ("y2.", "Y2")] {
            let v = reg.form(form).unwrap();
            for key in reg.point_keys() {
                if key.starts_with(prefix) {
                    let p = reg.point(&key).unwrap();
                    assert!(
                        v.eval(&p.coords).is_zero(),
                        "{key} does not lie on {form}"
                    );
                }
            }
        }
    }

    #[test]
    fn lines_and_planes_resolve() {
        let reg = Registry::new(120).unwrap();
        for key in ["L12_x1", "L12p_x1", "L10_y1", "L6_y2", "L6p_y2", "L10_y2", "L10p_y2", "L30_y2"] {
            let l = reg.line(key).unwrap();
            assert_eq!(l.dim(), 2, "{key}");
        }
        for key in ["C6_x1", "C6p_x1", "C5_x2", "C6_x2", "C6p_x2", "CUSP_y2"] {
            let p = reg.plane(key).unwrap();
            assert_eq!(p.dim(), 3, "{key}");
        }
    }

    #[test]
    fn sqrt6_reps_square_to_six() {
        let reg = Registry::new(120).unwrap();
        let f = reg.field();
        let s6 = f.parse("(z8+z8^-1)*(z12+z12^-1)").unwrap();
        assert_eq!(&s6 * &s6, f.integer(6));
    }
}
