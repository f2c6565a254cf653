//! JSON formats for spaces, semigroups, actions, groupoids, morphisms and
//! matrices.
//!
//! Every document carries a `"kind"` tag. Documents without one are
//! recognised by their keys (`points`, `order`, `arrows`).

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::bits::PointSet;
use crate::error::{Error, Result};
use crate::groupoid::{CoupleMorphism, GroupoidData, GroupoidHom, TopGroupoid};
use crate::semigroup::{Action, ActionMorphism, InverseSemigroup, SemigroupHom};
use crate::star_algebra::{Matrix, Scalar};
use crate::topology::{FiniteSpace, PartialMap};

/// A parsed input document.
#[derive(Debug, Clone)]
pub enum Document {
    Space(FiniteSpace),
    Semigroup(InverseSemigroup),
    SemigroupHom(SemigroupHom),
    Action(Action),
    ActionMorphism(ActionMorphism),
    Groupoid(TopGroupoid),
    Couple(CoupleMorphism),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Space(_) => "space",
            Document::Semigroup(_) => "semigroup",
            Document::SemigroupHom(_) => "semigroup_hom",
            Document::Action(_) => "action",
            Document::ActionMorphism(_) => "action_morphism",
            Document::Groupoid(_) => "groupoid",
            Document::Couple(_) => "couple",
        }
    }

    pub fn to_json(&self) -> Result<Value> {
        match self {
            Document::Space(x) => space_to_json(x),
            Document::Semigroup(s) => Ok(semigroup_to_json(s)),
            Document::SemigroupHom(h) => Ok(semigroup_hom_to_json(h)),
            Document::Action(a) => action_to_json(a),
            Document::ActionMorphism(m) => action_morphism_to_json(m),
            Document::Groupoid(g) => groupoid_to_json(g),
            Document::Couple(c) => couple_to_json(c),
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field \"{key}\"")))
}

fn as_usize(v: &Value) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| bad(format!("expected a natural number, got {v}")))
}

fn usize_list(v: &Value) -> Result<Vec<usize>> {
    v.as_array().ok_or_else(|| bad("expected an array"))?.iter().map(as_usize).collect()
}

fn list_field(v: &Value, key: &str) -> Result<Vec<usize>> {
    usize_list(field(v, key)?)
}

/// Detects the document kind from its tag or its keys.
pub fn detect_kind(v: &Value) -> Option<String> {
    if let Some(k) = v.get("kind").and_then(Value::as_str) {
        return Some(k.to_string());
    }
    let has = |k: &str| v.get(k).is_some();
    if has("points") {
        Some("space".into())
    } else if has("order") {
        Some("semigroup".into())
    } else if has("arrows") {
        Some("groupoid".into())
    } else if has("maps") {
        Some("action".into())
    } else if has("theta") {
        Some("action_morphism".into())
    } else if has("phi") {
        Some("couple".into())
    } else {
        None
    }
}

/// Parses a document. `base` resolves string references to space files
/// inside actions.
pub fn parse_document(v: &Value, base: Option<&Path>) -> Result<Document> {
    match detect_kind(v).as_deref() {
        Some("space") => Ok(Document::Space(space_from_json(v)?)),
        Some("semigroup") => Ok(Document::Semigroup(semigroup_from_json(v)?)),
        Some("semigroup_hom") => Ok(Document::SemigroupHom(semigroup_hom_from_json(v)?)),
        Some("action") => Ok(Document::Action(action_from_json(v, base)?)),
        Some("action_morphism") => Ok(Document::ActionMorphism(action_morphism_from_json(v, base)?)),
        Some("groupoid") => Ok(Document::Groupoid(groupoid_from_json(v)?)),
        Some("couple") => Ok(Document::Couple(couple_from_json(v)?)),
        Some(other) => Err(bad(format!("unknown kind \"{other}\""))),
        None => Err(bad("cannot detect the document kind")),
    }
}

fn sets_to_json(sets: &[PointSet]) -> Value {
    json!(sets.iter().map(PointSet::to_vec).collect::<Vec<_>>())
}

pub fn space_to_json(x: &FiniteSpace) -> Result<Value> {
    Ok(json!({"kind": "space", "points": x.len(), "opens": sets_to_json(&x.opens()?)}))
}

pub fn space_from_json(v: &Value) -> Result<FiniteSpace> {
    let n = as_usize(field(v, "points")?)?;
    let opens = field(v, "opens")?
        .as_array()
        .ok_or_else(|| bad("\"opens\" must be an array"))?
        .iter()
        .map(|o| usize_list(o).map(|l| l.into_iter().collect::<PointSet>()))
        .collect::<Result<Vec<_>>>()?;
    FiniteSpace::from_opens(n, &opens)
}

pub fn partial_map_to_json(m: &PartialMap) -> Value {
    let values: Map<String, Value> = m.pairs().map(|(x, y)| (x.to_string(), json!(y))).collect();
    json!({"domain": m.domain().to_vec(), "values": values})
}

pub fn partial_map_from_json(v: &Value, source: Arc<FiniteSpace>, target: Arc<FiniteSpace>) -> Result<PartialMap> {
    let domain: PointSet = list_field(v, "domain")?.into_iter().collect();
    let obj = field(v, "values")?.as_object().ok_or_else(|| bad("\"values\" must be an object"))?;
    let mut pairs = BTreeMap::new();
    for (k, y) in obj {
        let x: usize = k.parse().map_err(|_| bad(format!("bad point key \"{k}\"")))?;
        pairs.insert(x, as_usize(y)?);
    }
    if pairs.keys().copied().collect::<PointSet>() != domain {
        return Err(bad("\"domain\" does not match the keys of \"values\""));
    }
    PartialMap::from_pairs(source, target, &pairs.into_iter().collect::<Vec<_>>())
}

pub fn semigroup_to_json(s: &InverseSemigroup) -> Value {
    json!({"kind": "semigroup", "order": s.order(), "table": s.rows()})
}

pub fn semigroup_from_json(v: &Value) -> Result<InverseSemigroup> {
    let n = as_usize(field(v, "order")?)?;
    let rows = field(v, "table")?
        .as_array()
        .ok_or_else(|| bad("\"table\" must be an array"))?
        .iter()
        .map(usize_list)
        .collect::<Result<Vec<_>>>()?;
    if rows.len() != n {
        return Err(bad(format!("\"order\" is {n} but the table has {} rows", rows.len())));
    }
    InverseSemigroup::from_rows(&rows)
}

pub fn semigroup_hom_to_json(h: &SemigroupHom) -> Value {
    json!({
        "kind": "semigroup_hom",
        "source": semigroup_to_json(h.source()),
        "target": semigroup_to_json(h.target()),
        "map": h.map(),
    })
}

pub fn semigroup_hom_from_json(v: &Value) -> Result<SemigroupHom> {
    let s = Arc::new(semigroup_from_json(field(v, "source")?)?);
    let t = Arc::new(semigroup_from_json(field(v, "target")?)?);
    SemigroupHom::new(s, t, list_field(v, "map")?)
}

pub fn action_to_json(a: &Action) -> Result<Value> {
    Ok(json!({
        "kind": "action",
        "semigroup": semigroup_to_json(a.semigroup()),
        "space": space_to_json(a.space())?,
        "maps": a.maps().iter().map(partial_map_to_json).collect::<Vec<_>>(),
    }))
}

pub fn action_from_json(v: &Value, base: Option<&Path>) -> Result<Action> {
    let s = Arc::new(semigroup_from_json(field(v, "semigroup")?)?);
    let space_v = field(v, "space")?;
    let x = Arc::new(match space_v.as_str() {
        Some(path) => {
            let p = base.map(|b| b.join(path)).unwrap_or_else(|| path.into());
            let text = std::fs::read_to_string(&p).map_err(|e| bad(format!("{}: {e}", p.display())))?;
            let sv: Value = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
            space_from_json(&sv)?
        }
        None => space_from_json(space_v)?,
    });
    let maps = field(v, "maps")?
        .as_array()
        .ok_or_else(|| bad("\"maps\" must be an array"))?
        .iter()
        .map(|m| partial_map_from_json(m, x.clone(), x.clone()))
        .collect::<Result<Vec<_>>>()?;
    Action::new(s, x, maps)
}

pub fn action_morphism_to_json(m: &ActionMorphism) -> Result<Value> {
    Ok(json!({
        "kind": "action_morphism",
        "source": action_to_json(m.source())?,
        "target": action_to_json(m.target())?,
        "theta": m.theta().map(),
        "xi": partial_map_to_json(m.xi()),
    }))
}

pub fn action_morphism_from_json(v: &Value, base: Option<&Path>) -> Result<ActionMorphism> {
    let a = Arc::new(action_from_json(field(v, "source")?, base)?);
    let b = Arc::new(action_from_json(field(v, "target")?, base)?);
    let theta = SemigroupHom::new(a.semigroup().clone(), b.semigroup().clone(), list_field(v, "theta")?)?;
    let xi = partial_map_from_json(field(v, "xi")?, b.space().clone(), a.space().clone())?;
    ActionMorphism::new(a, b, theta, xi)
}

pub fn groupoid_to_json(g: &TopGroupoid) -> Result<Value> {
    let data = g.data();
    Ok(json!({
        "kind": "groupoid",
        "arrows": data.arrows,
        "units": data.units,
        "d": data.d,
        "r": data.r,
        "inv": data.inv,
        "mult": data.mult.iter().map(|&(a, b, c)| [a, b, c]).collect::<Vec<_>>(),
        "opens": sets_to_json(&g.topology().opens()?),
    }))
}

pub fn groupoid_from_json(v: &Value) -> Result<TopGroupoid> {
    let n = as_usize(field(v, "arrows")?)?;
    let mult = field(v, "mult")?
        .as_array()
        .ok_or_else(|| bad("\"mult\" must be an array"))?
        .iter()
        .map(|t| match usize_list(t)?.as_slice() {
            &[a, b, c] => Ok((a, b, c)),
            _ => Err(bad("\"mult\" entries must be triples")),
        })
        .collect::<Result<Vec<_>>>()?;
    let opens = field(v, "opens")?
        .as_array()
        .ok_or_else(|| bad("\"opens\" must be an array"))?
        .iter()
        .map(|o| usize_list(o).map(|l| l.into_iter().collect::<PointSet>()))
        .collect::<Result<Vec<_>>>()?;
    TopGroupoid::new(GroupoidData {
        arrows: n,
        units: list_field(v, "units")?,
        d: list_field(v, "d")?,
        r: list_field(v, "r")?,
        inv: list_field(v, "inv")?,
        mult,
        topology: FiniteSpace::from_opens(n, &opens)?,
    })
}

pub fn couple_to_json(c: &CoupleMorphism) -> Result<Value> {
    Ok(json!({
        "kind": "couple",
        "source": groupoid_to_json(c.source())?,
        "target": groupoid_to_json(c.target())?,
        "k": groupoid_to_json(c.k())?,
        "phi": c.phi().map(),
        "psi": c.psi().map(),
        "canon": c.canon().iter().map(|&(g, h)| [g, h]).collect::<Vec<_>>(),
    }))
}

pub fn couple_from_json(v: &Value) -> Result<CoupleMorphism> {
    let g = Arc::new(groupoid_from_json(field(v, "source")?)?);
    let h = Arc::new(groupoid_from_json(field(v, "target")?)?);
    let k = Arc::new(groupoid_from_json(field(v, "k")?)?);
    let phi = GroupoidHom::new(k.clone(), g, list_field(v, "phi")?)?;
    let psi = GroupoidHom::new(k, h, list_field(v, "psi")?)?;
    CoupleMorphism::new(phi, psi)
}

/// Short form used in counterexamples: endpoint sizes and `canon`.
pub fn couple_summary(c: &CoupleMorphism) -> Value {
    json!({
        "source_arrows": c.source().len(),
        "target_arrows": c.target().len(),
        "canon": c.canon().iter().map(|&(g, h)| [g, h]).collect::<Vec<_>>(),
    })
}

/// Short form used in counterexamples: `θ` and `ξ`.
pub fn morphism_summary(m: &ActionMorphism) -> Value {
    json!({"theta": m.theta().map(), "xi": partial_map_to_json(m.xi())})
}

fn bigint_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(i) => json!(i),
        None => json!(n.to_string()),
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    json!({
        "re": {"n": bigint_to_json(s.re.numer()), "d": bigint_to_json(s.re.denom())},
        "im": {"n": bigint_to_json(s.im.numer()), "d": bigint_to_json(s.im.denom())},
    })
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let rows: Vec<Vec<Value>> =
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| scalar_to_json(m.get(i, j))).collect()).collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": rows})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_round_trip_is_bit_exact() {
        let x = FiniteSpace::sierpinski();
        let a = space_to_json(&x).unwrap();
        let b = space_to_json(&space_from_json(&a).unwrap()).unwrap();
        assert_eq!(a.to_string(), b.to_string());
        assert_eq!(a.to_string(), r#"{"kind":"space","opens":[[],[1],[0,1]],"points":2}"#);
    }

    #[test]
    fn untagged_documents_are_detected() {
        let v = json!({"order": 1, "table": [[0]]});
        assert!(matches!(parse_document(&v, None).unwrap(), Document::Semigroup(_)));
        let v = json!({"foo": 1});
        assert!(parse_document(&v, None).is_err());
    }

    #[test]
    fn partial_map_domain_must_match_values() {
        let x = Arc::new(FiniteSpace::discrete(2));
        let v = json!({"domain": [0, 1], "values": {"0": 1}});
        assert!(partial_map_from_json(&v, x.clone(), x).is_err());
    }

    #[test]
    fn rational_entries() {
        let v = scalar_to_json(&Scalar::from_int(-3));
        assert_eq!(v, json!({"re": {"n": -3, "d": 1}, "im": {"n": 0, "d": 1}}));
    }
}
