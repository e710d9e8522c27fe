//! JSON documents for elements, chains, complexes, labellings and spheres.
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise; both forms are accepted on input. Every
//! top-level document carries `"format": 1`.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serializer;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::labelling::{Label, Labelling};
use crate::resolution::StandardChain;
use crate::ring::{GroupRingElement, RingSpec};
use crate::simplicial::{GroupActionOnComplex, SimplicialChain, SimplicialComplex};
use crate::tucker::GeneralizedSphere;

pub const FORMAT_VERSION: u64 = 1;

pub fn json_int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| Error::Format(format!("{n} is not an integer"))),
        Value::String(s) => s.parse().map_err(|_| Error::Format(format!("`{s}` is not an integer"))),
        other => Err(Error::Format(format!("expected an integer, found {other}"))),
    }
}

pub fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub fn serialize_bigints<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(json_int))
}

pub fn serialize_opt_bigint<S: Serializer>(
    x: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => serialize_bigint(x, s),
        None => s.serialize_none(),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Format(format!("missing field `{key}`")))
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Format(format!("field `{key}` must be a non-negative integer")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Format(format!("`{what}` must be an array")))
}

fn check_format(v: &Value) -> Result<()> {
    match v.get("format").and_then(Value::as_u64) {
        Some(FORMAT_VERSION) | None => Ok(()),
        Some(other) => Err(Error::Format(format!("unsupported format version {other}"))),
    }
}

fn ring_field(v: &Value) -> Result<RingSpec> {
    match v.get("ring") {
        None => Ok(RingSpec::Integers),
        Some(r) => RingSpec::parse(
            r.as_str().ok_or_else(|| Error::Format("`ring` must be a string".into()))?,
        ),
    }
}

pub fn group_ring_to_json(x: &GroupRingElement) -> Value {
    json!({
        "k": x.k(),
        "ring": x.ring().to_string(),
        "coeffs": x.coeffs().iter().map(json_int).collect::<Vec<_>>(),
    })
}

pub fn group_ring_from_json(v: &Value) -> Result<GroupRingElement> {
    let k = usize_field(v, "k")?;
    let ring = ring_field(v)?;
    let coeffs = array(field(v, "coeffs")?, "coeffs")?.iter().map(parse_int).collect::<Result<_>>()?;
    GroupRingElement::from_coeffs(k, ring, coeffs)
}

pub fn standard_chain_to_json(c: &StandardChain) -> Value {
    let terms: Vec<Value> = c
        .terms()
        .map(|(w, x)| {
            json!({
                "word": w.letters(),
                "coeff": x.coeffs().iter().map(json_int).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "format": FORMAT_VERSION,
        "k": c.k(),
        "ring": c.ring().to_string(),
        "degree": c.degree(),
        "terms": terms,
    })
}

pub fn complex_to_json(x: &SimplicialComplex, action: Option<&GroupActionOnComplex>) -> Value {
    let names = x.vertex_names();
    let facets: Vec<Vec<&str>> =
        x.facets().iter().map(|f| f.iter().map(|&v| names[v].as_str()).collect()).collect();
    let mut doc = json!({
        "format": FORMAT_VERSION,
        "vertices": names,
        "facets": facets,
    });
    if let Some(a) = action {
        let generator: Map<String, Value> = a
            .generator()
            .iter()
            .enumerate()
            .map(|(v, &w)| (names[v].clone(), Value::String(names[w].clone())))
            .collect();
        doc["action"] = json!({ "k": a.k(), "generator": generator });
    }
    doc
}

pub fn complex_from_json(v: &Value) -> Result<(SimplicialComplex, Option<GroupActionOnComplex>)> {
    check_format(v)?;
    let names = array(field(v, "vertices")?, "vertices")?
        .iter()
        .map(|n| {
            n.as_str().map(str::to_string).ok_or_else(|| Error::Format("vertex ids must be strings".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let facets = array(field(v, "facets")?, "facets")?
        .iter()
        .map(|f| {
            array(f, "facet")?
                .iter()
                .map(|n| {
                    n.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| Error::Format("vertex ids must be strings".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let x = SimplicialComplex::from_named_facets(names, &facets)?;
    let action = match v.get("action") {
        None | Some(Value::Null) => None,
        Some(a) => {
            let k = usize_field(a, "k")?;
            let gen = field(a, "generator")?
                .as_object()
                .ok_or_else(|| Error::Format("`generator` must be an object".into()))?;
            let lookup = |name: &str| {
                x.vertex_by_name(name).ok_or_else(|| Error::Format(format!("unknown vertex `{name}`")))
            };
            let mut generator = vec![usize::MAX; x.num_vertices()];
            for (from, to) in gen {
                let to = to.as_str().ok_or_else(|| Error::Format("generator images must be ids".into()))?;
                generator[lookup(from)?] = lookup(to)?;
            }
            if let Some(v) = generator.iter().position(|&w| w == usize::MAX) {
                return Err(Error::Format(format!(
                    "generator misses vertex `{}`",
                    x.vertex_name(v)
                )));
            }
            Some(GroupActionOnComplex::new(&x, k, generator)?)
        }
    };
    Ok((x, action))
}

pub fn chain_to_json(c: &SimplicialChain, x: &SimplicialComplex) -> Value {
    let terms: Vec<Value> = c
        .terms()
        .map(|(s, a)| {
            json!({
                "simplex": s.iter().map(|&v| x.vertex_name(v)).collect::<Vec<_>>(),
                "coeff": json_int(a),
            })
        })
        .collect();
    json!({
        "format": FORMAT_VERSION,
        "ring": c.ring().to_string(),
        "degree": c.degree(),
        "terms": terms,
    })
}

/// Reads a chain; the ring recorded in the document wins over `default_ring`.
pub fn chain_from_json(
    v: &Value,
    x: &SimplicialComplex,
    default_ring: &RingSpec,
) -> Result<SimplicialChain> {
    check_format(v)?;
    let ring = if v.get("ring").is_some() { ring_field(v)? } else { default_ring.clone() };
    let degree = usize_field(v, "degree")?;
    let mut c = SimplicialChain::zero(ring, degree);
    for t in array(field(v, "terms")?, "terms")? {
        let simplex = array(field(t, "simplex")?, "simplex")?
            .iter()
            .map(|n| {
                let name = n.as_str().ok_or_else(|| Error::Format("vertex ids must be strings".into()))?;
                x.vertex_by_name(name).ok_or_else(|| Error::Format(format!("unknown vertex `{name}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if simplex.len() != degree + 1 {
            return Err(Error::Format(format!("simplex {simplex:?} in a chain of degree {degree}")));
        }
        c.add_oriented(&simplex, &parse_int(field(t, "coeff")?)?)?;
    }
    x.check_chain(&c)?;
    Ok(c)
}

pub fn labelling_to_json(l: &Labelling, x: &SimplicialComplex) -> Value {
    let labels: Map<String, Value> = l
        .labels()
        .iter()
        .enumerate()
        .map(|(v, lab)| (x.vertex_name(v).to_string(), json!({"sign": lab.sign, "color": lab.color})))
        .collect();
    json!({ "format": FORMAT_VERSION, "k": l.k(), "labels": labels })
}

pub fn labelling_from_json(v: &Value, x: &SimplicialComplex) -> Result<Labelling> {
    check_format(v)?;
    let k = usize_field(v, "k")?;
    let obj = field(v, "labels")?
        .as_object()
        .ok_or_else(|| Error::Format("`labels` must be an object".into()))?;
    let mut by_vertex: BTreeMap<usize, Label> = BTreeMap::new();
    for (name, lab) in obj {
        let vtx = x.vertex_by_name(name).ok_or_else(|| Error::Format(format!("unknown vertex `{name}`")))?;
        let color = field(lab, "color")?
            .as_u64()
            .ok_or_else(|| Error::Format("`color` must be a positive integer".into()))?;
        by_vertex.insert(vtx, Label { sign: usize_field(lab, "sign")?, color });
    }
    let labels = (0..x.num_vertices())
        .map(|v| by_vertex.get(&v).copied().ok_or_else(|| Error::Coverage(x.vertex_name(v).to_string())))
        .collect::<Result<Vec<_>>>()?;
    Labelling::new(k, labels)
}

pub fn sphere_to_json(gs: &GeneralizedSphere) -> Value {
    json!({
        "format": FORMAT_VERSION,
        "ring": gs.ring.to_string(),
        "complex": complex_to_json(&gs.complex, Some(&gs.action)),
        "chains": gs.chains.iter().map(|c| chain_to_json(c, &gs.complex)).collect::<Vec<_>>(),
    })
}

pub fn sphere_from_json(v: &Value) -> Result<GeneralizedSphere> {
    check_format(v)?;
    let ring = ring_field(v)?;
    let (complex, action) = complex_from_json(field(v, "complex")?)?;
    let action = action.ok_or_else(|| Error::Format("a sphere needs a group action".into()))?;
    let chains = array(field(v, "chains")?, "chains")?
        .iter()
        .map(|c| chain_from_json(c, &complex, &ring))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneralizedSphere { complex, action, ring, chains })
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Format(format!("{} is not valid JSON: {e}", path.display())))
}

/// Pretty-printed with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    std::fs::write(path, to_pretty(v))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelling::tautological_labelling;
    use crate::simplicial::join_complex;
    use crate::tucker::build_ezk_sphere;

    #[test]
    fn big_integers_round_trip_as_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(json_int(&big), Value::String(big.to_string()));
        assert_eq!(parse_int(&json_int(&big)).unwrap(), big);
        assert_eq!(json_int(&BigInt::from(-3)), json!(-3));
    }

    #[test]
    fn complex_and_action_round_trip() {
        let (x, a) = join_complex(3, 2).unwrap();
        let doc = complex_to_json(&x, Some(&a));
        assert_eq!(doc["vertices"][4], "s1c2");
        let (y, b) = complex_from_json(&doc).unwrap();
        assert_eq!(x, y);
        assert_eq!(Some(a), b);
    }

    #[test]
    fn sphere_and_labelling_round_trip() {
        let gs = build_ezk_sphere(3, 2, &RingSpec::modular(9).unwrap()).unwrap();
        let back = sphere_from_json(&sphere_to_json(&gs)).unwrap();
        assert_eq!(gs, back);
        let l = tautological_labelling(3, 3);
        assert_eq!(labelling_from_json(&labelling_to_json(&l, &gs.complex), &gs.complex).unwrap(), l);
    }

    #[test]
    fn group_ring_round_trip() {
        let x = GroupRingElement::from_i64s(4, RingSpec::Integers, &[1, -2, 0, 5]).unwrap();
        assert_eq!(group_ring_from_json(&group_ring_to_json(&x)).unwrap(), x);
    }

    #[test]
    fn wrong_version_is_rejected() {
        let (x, _) = join_complex(2, 2).unwrap();
        let mut doc = complex_to_json(&x, None);
        doc["format"] = json!(2);
        assert!(matches!(complex_from_json(&doc), Err(Error::Format(_))));
    }
}
