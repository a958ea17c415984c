//! Map definitions loadable from JSON documents.
//!
//! Schema:
//!
//! ```json
//! {
//!   "kind": "generated" | "singleton" | "ball" | "example51",
//!   "functions": ["expression", ...],
//!   "d": 1,
//!   "l": 1,
//!   "lipschitz_hint": 3.0
//! }
//! ```
//!
//! `functions` is a flat list of expression strings in the grammar of
//! [`crate::maps::expr`] (variables `x1..xd`). Components are listed
//! generator-major: a generated map with `N` generators into `R^l` lists
//! `N * l` expressions; a singleton lift lists `l`; a ball map lists the `l`
//! center components followed by the radius. `example51` takes no functions
//! and fixes `d = 1`, `l = 2`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::maps::expr::Expr;
use crate::maps::{
    ball_valued_map, counterexample_map, generated_map, singleton_lift, ScalarFn, SetValuedMap,
    VecFn,
};
use crate::scalar::Real;
use crate::{Result, Vector};

/// Serializable map definition.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MapSpec {
    pub kind: String,
    #[serde(default)]
    pub functions: Vec<String>,
    #[serde(default)]
    pub d: usize,
    #[serde(default)]
    pub l: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lipschitz_hint: Option<f64>,
}

impl MapSpec {
    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Config(format!("map spec: {e}")))
    }
}

fn parse_all(functions: &[String], d: usize) -> Result<Vec<Expr>> {
    let mut exprs = Vec::with_capacity(functions.len());
    for src in functions {
        let e = Expr::parse(src)?;
        if e.var_count() > d {
            return Err(Error::Config(format!(
                "expression '{src}' references x{} but d = {d}",
                e.var_count()
            )));
        }
        exprs.push(e);
    }
    Ok(exprs)
}

/// Closure evaluating `l` expression components into a vector.
fn vector_fn<T: Real>(components: Vec<Expr>) -> VecFn<T> {
    Arc::new(move |x: &Vector<T>| {
        Vector::from_iterator(
            components.len(),
            components.iter().map(|e| e.eval(x.as_slice())),
        )
    })
}

/// Build a set-valued map from its JSON definition.
pub fn build_map<T: Real>(spec: &MapSpec) -> Result<SetValuedMap<T>> {
    let map = match spec.kind.as_str() {
        "example51" => {
            if (spec.d != 0 && spec.d != 1) || (spec.l != 0 && spec.l != 2) {
                return Err(Error::Config("example51 has d = 1, l = 2".into()));
            }
            counterexample_map::<T>()
        }
        "singleton" => {
            let (d, l) = dims(spec)?;
            if spec.functions.len() != l {
                return Err(Error::Config(format!(
                    "singleton lift needs l = {l} component expressions, got {}",
                    spec.functions.len()
                )));
            }
            let exprs = parse_all(&spec.functions, d)?;
            singleton_lift(d, l, vector_fn(exprs), None)
        }
        "generated" => {
            let (d, l) = dims(spec)?;
            if spec.functions.is_empty() || !spec.functions.len().is_multiple_of(l) {
                return Err(Error::Config(format!(
                    "generated map needs N * l = N * {l} expressions, got {}",
                    spec.functions.len()
                )));
            }
            let exprs = parse_all(&spec.functions, d)?;
            let funcs: Vec<VecFn<T>> = exprs
                .chunks(l)
                .map(|chunk| vector_fn(chunk.to_vec()))
                .collect();
            generated_map(d, l, funcs, None)?
        }
        "ball" => {
            let (d, l) = dims(spec)?;
            if spec.functions.len() != l + 1 {
                return Err(Error::Config(format!(
                    "ball map needs {l} center components plus a radius, got {}",
                    spec.functions.len()
                )));
            }
            let mut exprs = parse_all(&spec.functions, d)?;
            let radius_expr = exprs.pop().expect("nonempty");
            let center = vector_fn(exprs);
            let radius: ScalarFn<T> = Arc::new(move |x: &Vector<T>| radius_expr.eval(x.as_slice()));
            ball_valued_map(d, l, center, radius)
        }
        other => {
            return Err(Error::Config(format!(
                "unknown map kind '{other}' (expected generated|singleton|ball|example51)"
            )))
        }
    };
    Ok(match spec.lipschitz_hint {
        Some(k) => map.with_lipschitz_hint(T::of(k)),
        None => map,
    })
}

fn dims(spec: &MapSpec) -> Result<(usize, usize)> {
    if spec.d == 0 || spec.l == 0 {
        return Err(Error::Config("map spec needs positive d and l".into()));
    }
    Ok((spec.d, spec.l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::MapKind;

    fn v(c: &[f64]) -> Vector<f64> {
        Vector::from_vec(c.to_vec())
    }

    #[test]
    fn builds_segment_map_from_json() {
        let spec =
            MapSpec::from_json(r#"{"kind":"generated","functions":["x1","x1+1"],"d":1,"l":1}"#)
                .unwrap();
        let m = build_map::<f64>(&spec).unwrap();
        assert_eq!(m.kind(), MapKind::Generated);
        let body = m.eval(&v(&[0.25])).unwrap();
        assert_eq!(body.vertices().unwrap(), &[v(&[0.25]), v(&[1.25])]);
    }

    #[test]
    fn builds_planar_generated_map() {
        let spec = MapSpec::from_json(
            r#"{"kind":"generated","functions":["x1","0","0","x1","1","1"],"d":1,"l":2}"#,
        )
        .unwrap();
        let m = build_map::<f64>(&spec).unwrap();
        let body = m.eval(&v(&[1.0])).unwrap();
        assert_eq!(
            body.vertices().unwrap(),
            &[v(&[1.0, 0.0]), v(&[0.0, 1.0]), v(&[1.0, 1.0])]
        );
    }

    #[test]
    fn builds_ball_map() {
        let spec = MapSpec::from_json(r#"{"kind":"ball","functions":["x1","0","1"],"d":1,"l":2}"#)
            .unwrap();
        let m = build_map::<f64>(&spec).unwrap();
        assert_eq!(m.kind(), MapKind::SupportParametrized);
        let body = m.eval(&v(&[0.5])).unwrap();
        assert!((body.support(&v(&[1.0, 0.0])).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn builds_singleton_and_example51() {
        let spec =
            MapSpec::from_json(r#"{"kind":"singleton","functions":["abs(x1)"],"d":1,"l":1}"#)
                .unwrap();
        let m = build_map::<f64>(&spec).unwrap();
        assert_eq!(
            m.eval(&v(&[-3.0])).unwrap().vertices().unwrap(),
            &[v(&[3.0])]
        );

        let spec = MapSpec::from_json(r#"{"kind":"example51"}"#).unwrap();
        let m = build_map::<f64>(&spec).unwrap();
        assert_eq!(m.lipschitz_hint(), Some(3.0));
    }

    #[test]
    fn rejects_malformed_specs() {
        for json in [
            r#"{"kind":"nope","d":1,"l":1}"#,
            r#"{"kind":"generated","functions":["x1"],"d":1,"l":2}"#,
            r#"{"kind":"generated","functions":["x2"],"d":1,"l":1}"#,
            r#"{"kind":"singleton","functions":["x1"],"d":0,"l":1}"#,
            r#"{"kind":"ball","functions":["x1","0"],"d":1,"l":2}"#,
        ] {
            let spec = MapSpec::from_json(json).unwrap();
            assert!(build_map::<f64>(&spec).is_err(), "{json}");
        }
    }

    #[test]
    fn lipschitz_hint_is_attached() {
        let spec = MapSpec::from_json(
            r#"{"kind":"singleton","functions":["3*x1"],"d":1,"l":1,"lipschitz_hint":3.0}"#,
        )
        .unwrap();
        let m = build_map::<f64>(&spec).unwrap();
        assert_eq!(m.lipschitz_hint(), Some(3.0));
    }
}
