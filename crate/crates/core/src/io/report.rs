use std::time::Instant;

use serde_json::{json, Map, Value};

use super::json::{
    array, field, mat_value, matrix, object, parse_text, q_value, rational, vec_value, vector,
};
use super::scene::{Scene, SceneSource};
use crate::cones::{generic_direction, Cone};
use crate::decomposition::{
    algebraic_vertices_with, check_section_theorem, decompose_cones_with, decompose_simplices,
    generating_hyperplanes, DecompositionKind, Piece, SignedDecomposition,
};
use crate::error::{Error, Result};
use crate::kernel::rational::{to_f64, Q};
use crate::kernel::Simplex;
use crate::transform::{
    evaluate_exact, format_sci, is_decision_exact, is_zero_with, quadrature_oracle,
    transform_cones, transform_function, TransformSum, ZeroTest,
};

/// Relative tolerance of the quadrature cross-check.
pub const ORACLE_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug)]
pub enum Command {
    Vertices,
    Decompose {
        kind: DecompositionKind,
    },
    Transform {
        eval: Option<Vec<Q>>,
        check_oracle: bool,
    },
    CheckSections,
    Verify {
        decomposition: SignedDecomposition,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Vertices => "vertices",
            Command::Decompose { .. } => "decompose",
            Command::Transform { .. } => "transform",
            Command::CheckSections => "check-sections",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Grid offset and fallback seed of the zero test.
    pub seed: u64,
    /// Include wall-clock time. Off by default so reports are reproducible.
    pub timing: bool,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub scene: String,
    pub source: SceneSource,
    pub input_digest: String,
    pub seed: u64,
    pub outputs: Value,
    /// All certificates and checks passed.
    pub ok: bool,
    /// Every verdict is a proof (no randomized zero test was needed).
    pub exact: bool,
    pub timing_ms: Option<f64>,
    /// The decomposition, for `decompose`.
    pub decomposition: Option<SignedDecomposition>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let source = match &self.source {
            SceneSource::Gallery => json!("gallery"),
            SceneSource::File(p) => json!({ "file": p }),
            SceneSource::Inline => json!("inline"),
        };
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert(
            "scene".into(),
            json!({ "name": self.scene, "source": source, "digest": self.input_digest }),
        );
        m.insert("seed".into(), json!(self.seed));
        m.insert("ok".into(), json!(self.ok));
        m.insert("exact".into(), json!(self.exact));
        m.insert("outputs".into(), self.outputs.clone());
        if let Some(t) = self.timing_ms {
            m.insert("timing_ms".into(), json!(t));
        }
        Value::Object(m)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("json values serialize") + "\n"
    }
}

pub fn decomposition_to_json(dec: &SignedDecomposition) -> Value {
    let terms: Vec<Value> = dec
        .terms
        .iter()
        .map(|(c, p)| match p {
            Piece::Simplex(s) => {
                json!({ "coefficient": q_value(c), "simplex": mat_value(&s.vertices) })
            }
            Piece::Cone(k) => json!({ "coefficient": q_value(c), "cone": cone_value(k) }),
        })
        .collect();
    let residual: Vec<Value> = dec
        .residual
        .iter()
        .map(|(c, k)| json!({ "coefficient": q_value(c), "cone": cone_value(k) }))
        .collect();
    json!({
        "kind": dec.kind.as_str(),
        "dimension": dec.ambient_dim,
        "terms": terms,
        "residual": residual,
        "certificate": dec.certificate,
    })
}

fn cone_value(k: &Cone) -> Value {
    json!({
        "apex": vec_value(k.apex()),
        "generators": mat_value(k.generators()),
        "lineality": mat_value(k.lineality()),
    })
}

fn cone_from(v: &Value, path: &str) -> Result<Cone> {
    let m = object(v, path)?;
    let apex = vector(field(m, "apex", path)?, &format!("{path}.apex"))?;
    let gens = matrix(field(m, "generators", path)?, &format!("{path}.generators"))?;
    let lin = match m.get("lineality") {
        Some(l) => matrix(l, &format!("{path}.lineality"))?,
        None => Vec::new(),
    };
    Cone::new(apex, &gens, &lin)
}

pub fn decomposition_from_json(text: &str) -> Result<SignedDecomposition> {
    let v = parse_text(text)?;
    let root = object(&v, "$")?;
    let kind = match field(root, "kind", "$")?.as_str() {
        Some("simplices") => DecompositionKind::Simplices,
        Some("cones") => DecompositionKind::Cones,
        _ => {
            return Err(Error::schema(
                "$.kind",
                "expected \"simplices\" or \"cones\"",
            ))
        }
    };
    let dim = field(root, "dimension", "$")?
        .as_u64()
        .ok_or_else(|| Error::schema("$.dimension", "expected a nonnegative integer"))?
        as usize;
    let certificate = match root.get("certificate") {
        None => false,
        Some(Value::Bool(b)) => *b,
        Some(_) => return Err(Error::schema("$.certificate", "expected a boolean")),
    };
    let check = |p: &[Q]| -> Result<()> {
        if p.len() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            })
        }
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
        let piece = if let Some(s) = tm.get("simplex") {
            let verts = matrix(s, &format!("{path}.simplex"))?;
            for p in &verts {
                check(p)?;
            }
            Piece::Simplex(Simplex::new(verts))
        } else if let Some(k) = tm.get("cone") {
            let cone = cone_from(k, &format!("{path}.cone"))?;
            check(cone.apex())?;
            Piece::Cone(cone)
        } else {
            return Err(Error::schema(path, "expected \"simplex\" or \"cone\""));
        };
        terms.push((c, piece));
    }
    let mut residual = Vec::new();
    if let Some(r) = root.get("residual") {
        for (i, t) in array(r, "$.residual")?.iter().enumerate() {
            let path = format!("$.residual[{i}]");
            let tm = object(t, &path)?;
            let c = rational(
                field(tm, "coefficient", &path)?,
                &format!("{path}.coefficient"),
            )?;
            let cone = cone_from(field(tm, "cone", &path)?, &format!("{path}.cone"))?;
            check(cone.apex())?;
            residual.push((c, cone));
        }
    }
    Ok(SignedDecomposition {
        kind,
        ambient_dim: dim,
        terms,
        residual,
        certificate,
    })
}

/// A point given as `z=[...]`, a bare JSON array, or a file holding either
/// an array or `{"z": [...]}`.
pub fn parse_point(arg: &str) -> Result<Vec<Q>> {
    let inline = arg.strip_prefix("z=").unwrap_or(arg).trim();
    let text = if inline.starts_with('[') {
        inline.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Io(format!("{arg}: {e}")))?
    };
    let v = parse_text(&text)?;
    match &v {
        Value::Object(m) => vector(field(m, "z", "$")?, "$.z"),
        _ => vector(&v, "$"),
    }
}

fn residual_ok(dec: &SignedDecomposition, test: ZeroTest) -> (bool, bool) {
    let sum = transform_cones(dec.ambient_dim, &dec.residual);
    let line_cones = dec.residual.iter().all(|(_, c)| c.is_line_cone());
    (
        line_cones && is_zero_with(&sum, test),
        is_decision_exact(&sum, test),
    )
}

/// A point where no linear form of `s` vanishes, scaled into the unit box
/// and negated.
fn default_point(s: &TransformSum) -> Vec<Q> {
    let forms: Vec<Vec<Q>> = s
        .terms
        .iter()
        .flat_map(|t| t.forms.iter().cloned())
        .collect();
    let u = generic_direction(s.ambient_dim, &forms);
    let m = u
        .iter()
        .max()
        .cloned()
        .unwrap_or_else(|| Q::from_integer(1.into()));
    u.iter().map(|x| -x / &m).collect()
}

fn run_transform(
    scene: &Scene,
    eval: &Option<Vec<Q>>,
    check_oracle: bool,
    test: ZeroTest,
) -> Result<(Value, bool, bool)> {
    let f = &scene.function;
    let sum = transform_function(f);
    let zero = is_zero_with(&sum, test);
    let mut exact = is_decision_exact(&sum, test);
    let mut ok = true;
    let mut m = Map::new();
    m.insert(
        "transform".into(),
        serde_json::to_value(&sum).expect("serializable"),
    );
    m.insert("term_count".into(), json!(sum.len()));
    m.insert("is_zero".into(), json!(zero));
    let z = match eval {
        Some(z) => {
            if z.len() != scene.ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: scene.ambient_dim,
                    found: z.len(),
                });
            }
            Some(z.clone())
        }
        None if check_oracle => Some(default_point(&sum)),
        None => None,
    };
    if let Some(z) = z {
        let value = evaluate_exact(&sum, &z)?;
        let numeric = value.to_f64();
        m.insert(
            "evaluation".into(),
            json!({
                "z": vec_value(&z),
                "exact": serde_json::to_value(&value).expect("serializable"),
                "value": format_sci(numeric),
            }),
        );
        if check_oracle {
            let zf: Vec<f64> = z.iter().map(to_f64).collect();
            let reference = quadrature_oracle(f, &zf)?;
            let rel = (numeric - reference).abs() / reference.abs().max(f64::MIN_POSITIVE);
            let pass =
                rel <= ORACLE_TOLERANCE || (numeric - reference).abs() <= ORACLE_TOLERANCE * 1e-6;
            ok &= pass;
            exact = false;
            m.insert(
                "oracle".into(),
                json!({
                    "quadrature": format_sci(reference),
                    "relative_error": format_sci(rel),
                    "tolerance": format_sci(ORACLE_TOLERANCE),
                    "pass": pass,
                }),
            );
        }
    }
    Ok((Value::Object(m), ok, exact))
}

/// Execute `command` on `scene`.
pub fn run(command: &Command, scene: &Scene, options: &RunOptions) -> Result<Report> {
    let start = Instant::now();
    let test = ZeroTest::Auto {
        offset: options.seed,
    };
    let f = &scene.function;
    let mut decomposition = None;
    let (outputs, ok, exact) = match command {
        Command::Vertices => {
            let r = algebraic_vertices_with(f, test);
            let exact = r
                .per_vertex
                .iter()
                .all(|v| is_decision_exact(&v.transform, test));
            let subset = r.algebraic.iter().all(|v| r.geometric.contains(v));
            let mut out = serde_json::to_value(&r).expect("serializable");
            out["algebraic_subset_of_geometric"] = json!(subset);
            (out, subset, exact)
        }
        Command::Decompose { kind } => {
            let (dec, ok, exact) = match kind {
                DecompositionKind::Simplices => {
                    let dec = decompose_simplices(f)?;
                    let ok = dec.certificate;
                    (dec, ok, true)
                }
                DecompositionKind::Cones => {
                    let report = algebraic_vertices_with(f, test);
                    let exact = report
                        .per_vertex
                        .iter()
                        .all(|v| is_decision_exact(&v.transform, test));
                    let dec = decompose_cones_with(f, &report)?;
                    let (res_ok, res_exact) = residual_ok(&dec, test);
                    let ok = dec.certificate && res_ok;
                    (dec, ok, exact && res_exact)
                }
            };
            let out = decomposition_to_json(&dec);
            decomposition = Some(dec);
            (out, ok, exact)
        }
        Command::Transform { eval, check_oracle } => {
            run_transform(scene, eval, *check_oracle, test)?
        }
        Command::CheckSections => {
            let r = check_section_theorem(f, &generating_hyperplanes(f));
            (
                serde_json::to_value(&r).expect("serializable"),
                r.biconditional_holds,
                true,
            )
        }
        Command::Verify { decomposition: dec } => {
            if dec.ambient_dim != scene.ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: scene.ambient_dim,
                    found: dec.ambient_dim,
                });
            }
            let certificate = dec.verify(f)?;
            let (res_ok, exact) = residual_ok(dec, test);
            let out = json!({
                "kind": dec.kind.as_str(),
                "term_count": dec.terms.len(),
                "residual_count": dec.residual.len(),
                "claimed_certificate": dec.certificate,
                "certificate": certificate,
                "residual_line_cones_zero": res_ok,
                "integer_coefficients": dec.has_integer_coefficients(),
            });
            (out, certificate && res_ok, exact)
        }
    };
    Ok(Report {
        command: command.name(),
        scene: scene.name.clone(),
        source: scene.source.clone(),
        input_digest: scene.digest(),
        seed: options.seed,
        outputs,
        ok,
        exact,
        timing_ms: options
            .timing
            .then(|| start.elapsed().as_secs_f64() * 1000.0),
        decomposition,
    })
}

/// JSON body describing an error.
pub fn error_json(e: &Error) -> Value {
    let mut m = Map::new();
    m.insert("error".into(), json!(e.kind()));
    m.insert("message".into(), json!(e.to_string()));
    m.insert("exit_code".into(), json!(e.exit_code()));
    if let Error::Schema { path, .. } = e {
        m.insert("path".into(), json!(path));
    }
    json!({ "ok": false, "error": Value::Object(m) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::gallery::scene;
    use crate::kernel::rational::qvec;

    fn opts() -> RunOptions {
        RunOptions::default()
    }

    #[test]
    fn lshape_vertices() {
        let r = run(&Command::Vertices, &scene("lshape", 0).unwrap(), &opts()).unwrap();
        assert!(r.ok && r.exact);
        assert_eq!(r.outputs["algebraic"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn square_decomposition_round_trips() {
        let sc = scene("square", 0).unwrap();
        let r = run(
            &Command::Decompose {
                kind: DecompositionKind::Simplices,
            },
            &sc,
            &opts(),
        )
        .unwrap();
        assert!(r.ok);
        assert_eq!(r.outputs["terms"].as_array().unwrap().len(), 2);
        let text = serde_json::to_string(&r.outputs).unwrap();
        let dec = decomposition_from_json(&text).unwrap();
        assert_eq!(Some(&dec), r.decomposition.as_ref());
        let v = run(&Command::Verify { decomposition: dec }, &sc, &opts()).unwrap();
        assert!(v.ok);
    }

    #[test]
    fn cone_decomposition_round_trips() {
        let sc = scene("lshape", 0).unwrap();
        let r = run(
            &Command::Decompose {
                kind: DecompositionKind::Cones,
            },
            &sc,
            &opts(),
        )
        .unwrap();
        assert!(r.ok);
        let dec = decomposition_from_json(&serde_json::to_string(&r.outputs).unwrap()).unwrap();
        assert!(
            run(&Command::Verify { decomposition: dec }, &sc, &opts())
                .unwrap()
                .ok
        );
    }

    #[test]
    fn tampered_decomposition_fails() {
        let sc = scene("square", 0).unwrap();
        let mut dec = decompose_simplices(&sc.function).unwrap();
        dec.terms[0].0 = Q::from_integer(2.into());
        let v = run(&Command::Verify { decomposition: dec }, &sc, &opts()).unwrap();
        assert!(!v.ok);
        assert_eq!(v.outputs["claimed_certificate"], json!(true));
    }

    #[test]
    fn square_transform_matches_quadrature() {
        let sc = scene("square", 0).unwrap();
        let z = parse_point("z=[-1,-2]").unwrap();
        assert_eq!(z, qvec(&[-1, -2]));
        let r = run(
            &Command::Transform {
                eval: Some(z),
                check_oracle: true,
            },
            &sc,
            &opts(),
        )
        .unwrap();
        assert!(r.ok, "{}", r.to_json_string());
        // (1 - e^-1)(1 - e^-2)/2
        let expected = (1.0 - (-1.0f64).exp()) * (1.0 - (-2.0f64).exp()) / 2.0;
        let got: f64 = r.outputs["evaluation"]["value"]
            .as_str()
            .unwrap()
            .parse()
            .unwrap();
        assert!((got - expected).abs() < 1e-10);
    }

    #[test]
    fn default_oracle_point() {
        let r = run(
            &Command::Transform {
                eval: None,
                check_oracle: true,
            },
            &scene("lshape", 0).unwrap(),
            &opts(),
        )
        .unwrap();
        assert!(r.ok);
    }

    #[test]
    fn reports_are_deterministic() {
        let sc = scene("three-sectors", 0).unwrap();
        let a = run(&Command::CheckSections, &sc, &opts()).unwrap();
        let b = run(&Command::CheckSections, &sc, &opts()).unwrap();
        assert_eq!(a.to_json_string(), b.to_json_string());
        assert!(a.ok);
        assert!(!a.to_json_string().contains("timing_ms"));
    }

    #[test]
    fn dimension_checks() {
        let sc = scene("square", 0).unwrap();
        let err = run(
            &Command::Transform {
                eval: Some(qvec(&[1])),
                check_oracle: false,
            },
            &sc,
            &opts(),
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 5);
        assert!(matches!(parse_point("z=[0.5]"), Err(Error::NonRational(_))));
    }

    #[test]
    fn error_bodies() {
        let v = error_json(&Error::schema("$.terms", "expected an array"));
        assert_eq!(v["error"]["exit_code"], json!(3));
        assert_eq!(v["error"]["path"], json!("$.terms"));
    }
}
