use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use super::gallery;
use super::json::{
    array, check_len, field, mat_value, matrix, object, parse_text, q_value, rational,
};
use crate::error::{Error, Result};
use crate::kernel::rational::Q;
use crate::kernel::{dual_description, Described, Halfspace, PolyhedronSpec};
use crate::polyfun::PolyhedralFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SceneSource {
    Gallery,
    File(String),
    Inline,
}

/// A named weighted union of polyhedra and the function it defines.
#[derive(Clone, Debug)]
pub struct Scene {
    pub name: String,
    pub ambient_dim: usize,
    pub terms: Vec<(Q, PolyhedronSpec)>,
    pub function: PolyhedralFunction,
    pub source: SceneSource,
    /// Free-form notes (gallery scenes describe their construction here).
    pub note: Option<String>,
}

impl Scene {
    pub fn new(
        name: impl Into<String>,
        ambient_dim: usize,
        terms: Vec<(Q, PolyhedronSpec)>,
        source: SceneSource,
    ) -> Result<Scene> {
        let mut pieces = Vec::new();
        for (i, (c, spec)) in terms.iter().enumerate() {
            match spec {
                PolyhedronSpec::H(hs) => {
                    let rows: Vec<Vec<Q>> = hs.iter().map(|h| h.normal.clone()).collect();
                    check_len(&rows, ambient_dim)?;
                }
                PolyhedronSpec::V {
                    vertices,
                    rays,
                    lineality,
                } => {
                    if vertices.is_empty() {
                        return Err(Error::schema(
                            format!("terms[{i}].polyhedron.vertices"),
                            "at least one vertex is required",
                        ));
                    }
                    check_len(vertices, ambient_dim)?;
                    check_len(rays, ambient_dim)?;
                    check_len(lineality, ambient_dim)?;
                }
            }
            if let Described::Polyhedron(p) = dual_description(ambient_dim, spec) {
                pieces.push((c.clone(), p));
            }
        }
        let function = PolyhedralFunction::from_weighted_union(ambient_dim, &pieces)?;
        Ok(Scene {
            name: name.into(),
            ambient_dim,
            terms,
            function,
            source,
            note: None,
        })
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Scene {
        self.note = Some(note.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(c, spec)| {
                let poly = match spec {
                    PolyhedronSpec::H(hs) => {
                        let rows: Vec<Vec<Q>> = hs
                            .iter()
                            .map(|h| {
                                let mut r = h.normal.clone();
                                r.push(h.offset.clone());
                                r
                            })
                            .collect();
                        json!({ "halfspaces": mat_value(&rows) })
                    }
                    PolyhedronSpec::V {
                        vertices,
                        rays,
                        lineality,
                    } => {
                        let mut m = Map::new();
                        m.insert("vertices".into(), mat_value(vertices));
                        if !rays.is_empty() {
                            m.insert("rays".into(), mat_value(rays));
                        }
                        if !lineality.is_empty() {
                            m.insert("lineality".into(), mat_value(lineality));
                        }
                        Value::Object(m)
                    }
                };
                json!({ "coefficient": q_value(c), "polyhedron": poly })
            })
            .collect();
        let mut m = Map::new();
        m.insert("name".into(), Value::String(self.name.clone()));
        m.insert("dimension".into(), json!(self.ambient_dim));
        if let Some(n) = &self.note {
            m.insert("note".into(), Value::String(n.clone()));
        }
        m.insert("terms".into(), Value::Array(terms));
        Value::Object(m)
    }

    /// Canonical pretty JSON text.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("json values serialize") + "\n"
    }

    /// Hex SHA-256 of the canonical JSON.
    pub fn digest(&self) -> String {
        let h = Sha256::digest(self.to_json_string().as_bytes());
        h.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn scene_from_json(text: &str, source: SceneSource) -> Result<Scene> {
    let v = parse_text(text)?;
    scene_from_value(&v, source)
}

pub fn scene_from_value(v: &Value, source: SceneSource) -> Result<Scene> {
    let root = object(v, "$")?;
    let dim = field(root, "dimension", "$")?
        .as_u64()
        .ok_or_else(|| Error::schema("$.dimension", "expected a nonnegative integer"))?
        as usize;
    let name = match root.get("name") {
        None => "scene".to_string(),
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(Error::schema("$.name", "expected a string")),
    };
    let note = match root.get("note") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(Error::schema("$.note", "expected a string")),
    };
    let mut terms = Vec::new();
    for (i, t) in array(field(root, "terms", "$")?, "$.terms")?
        .iter()
        .enumerate()
    {
        let path = format!("$.terms[{i}]");
        let tm = object(t, &path)?;
        let c = rational(
            field(tm, "coefficient", &path)?,
            &format!("{path}.coefficient"),
        )?;
        let ppath = format!("{path}.polyhedron");
        let pm = object(field(tm, "polyhedron", &path)?, &ppath)?;
        let spec = if let Some(hs) = pm.get("halfspaces") {
            let rows = matrix(hs, &format!("{ppath}.halfspaces"))?;
            let mut out = Vec::with_capacity(rows.len());
            for (j, r) in rows.into_iter().enumerate() {
                if r.len() != dim + 1 {
                    return Err(Error::schema(
                        format!("{ppath}.halfspaces[{j}]"),
                        format!(
                            "expected {} entries [a_1..a_d, b], found {}",
                            dim + 1,
                            r.len()
                        ),
                    ));
                }
                let mut a = r;
                let b = a.pop().expect("length checked");
                out.push(Halfspace::new(a, b));
            }
            PolyhedronSpec::H(out)
        } else if let Some(vs) = pm.get("vertices") {
            let vertices = matrix(vs, &format!("{ppath}.vertices"))?;
            let rays = match pm.get("rays") {
                Some(r) => matrix(r, &format!("{ppath}.rays"))?,
                None => Vec::new(),
            };
            let lineality = match pm.get("lineality") {
                Some(r) => matrix(r, &format!("{ppath}.lineality"))?,
                None => Vec::new(),
            };
            PolyhedronSpec::V {
                vertices,
                rays,
                lineality,
            }
        } else {
            return Err(Error::schema(
                ppath,
                "expected \"halfspaces\" or \"vertices\"",
            ));
        };
        terms.push((c, spec));
    }
    let scene = Scene::new(name, dim, terms, source)?;
    Ok(match note {
        Some(n) => scene.with_note(n),
        None => scene,
    })
}

/// `gallery:<name>` or a file path.
pub fn parse_scene(spec: &str, seed: u64) -> Result<Scene> {
    if let Some(name) = spec.strip_prefix("gallery:") {
        return gallery::scene(name, seed);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Io(format!("{spec}: {e}")))?;
    scene_from_json(&text, SceneSource::File(spec.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halfspace_scene() {
        let text = r#"{"dimension": 1, "terms": [
            {"coefficient": "2", "polyhedron": {"halfspaces": [["1", "1"], [-1, 0]]}}]}"#;
        let s = scene_from_json(text, SceneSource::Inline).unwrap();
        assert_eq!(s.function.cells().count(), 1);
        let again = scene_from_json(&s.to_json_string(), SceneSource::Inline).unwrap();
        assert_eq!(again.to_json_string(), s.to_json_string());
        assert_eq!(again.digest(), s.digest());
    }

    #[test]
    fn floats_are_rejected() {
        let text = r#"{"dimension": 1, "terms": [
            {"coefficient": "1.5", "polyhedron": {"vertices": [["0"], ["1"]]}}]}"#;
        assert!(matches!(
            scene_from_json(text, SceneSource::Inline),
            Err(Error::NonRational(_))
        ));
        let text = r#"{"dimension": 1, "terms": [
            {"coefficient": 1, "polyhedron": {"vertices": [[0.5], ["1"]]}}]}"#;
        assert!(matches!(
            scene_from_json(text, SceneSource::Inline),
            Err(Error::NonRational(_))
        ));
    }

    #[test]
    fn diagnostics_name_the_field() {
        let text = r#"{"dimension": 2, "terms": [{"coefficient": "1", "polyhedron": {}}]}"#;
        match scene_from_json(text, SceneSource::Inline) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "$.terms[0].polyhedron"),
            other => panic!("unexpected {other:?}"),
        }
        match scene_from_json("{\"dimension\": 2,\n \"terms\": [}", SceneSource::Inline) {
            Err(Error::Schema { path, .. }) => assert!(path.starts_with("line 2")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch() {
        let text = r#"{"dimension": 2, "terms": [
            {"coefficient": "1", "polyhedron": {"vertices": [["0", "0", "0"]]}}]}"#;
        assert!(matches!(
            scene_from_json(text, SceneSource::Inline),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
