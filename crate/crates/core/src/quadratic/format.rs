//! JSON descriptions of square groups and quadratic pair modules.
//!
//! Homomorphisms and `H` are given generator by generator, each image an
//! element expression in the target's generator names. Omitted entries are
//! zero. See `docs/qpm-format.md` for the full format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::carrier::{AbGroup, Elem, GroupCarrier, Hom};
use super::qpm::QuadraticPairModule;
use super::square::{QuadraticMap, SquareGroup};
use super::QuadError;
use crate::nilgroup::PointedSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CarrierSpec {
    /// Free nil-2 group on the listed generators.
    Nil(Vec<String>),
    Abelian(AbelianSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianSpec {
    #[serde(default)]
    pub free: Vec<String>,
    /// `(name, order)` pairs.
    #[serde(default)]
    pub torsion: Vec<(String, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticSpec {
    /// `H(g)` per generator.
    #[serde(default)]
    pub values: BTreeMap<String, String>,
    /// `(g|h)_H` keyed `"g|h"`.
    #[serde(default)]
    pub cross: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Description {
    SquareGroup {
        xe: CarrierSpec,
        xee: AbelianSpec,
        #[serde(rename = "P", default)]
        p: BTreeMap<String, String>,
        #[serde(rename = "H", default)]
        h: QuadraticSpec,
    },
    Qpm {
        #[serde(default)]
        name: Option<String>,
        c0: CarrierSpec,
        c1: CarrierSpec,
        cee: AbelianSpec,
        #[serde(default)]
        boundary: BTreeMap<String, String>,
        #[serde(rename = "P", default)]
        p: BTreeMap<String, String>,
        #[serde(rename = "H", default)]
        h: QuadraticSpec,
    },
}

/// A parsed description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    SquareGroup(SquareGroup),
    Qpm(QuadraticPairModule),
}

impl AbelianSpec {
    fn build(&self) -> Result<AbGroup, QuadError> {
        let names = self.free.iter().chain(self.torsion.iter().map(|(n, _)| n)).cloned().collect();
        AbGroup::with_names(names, self.free.len(), self.torsion.iter().map(|&(_, d)| d).collect())
    }

    fn of(a: &AbGroup) -> Self {
        let names = a.names();
        Self {
            free: names[..a.rank()].to_vec(),
            torsion: names[a.rank()..].iter().cloned().zip(a.torsion().iter().copied()).collect(),
        }
    }
}

impl CarrierSpec {
    fn build(&self) -> Result<GroupCarrier, QuadError> {
        match self {
            CarrierSpec::Nil(names) => PointedSet::new(names.iter().map(String::as_str))
                .map(GroupCarrier::Nil)
                .map_err(|e| QuadError::Json(e.to_string())),
            CarrierSpec::Abelian(a) => a.build().map(GroupCarrier::Ab),
        }
    }

    fn of(c: &GroupCarrier) -> Self {
        match c {
            GroupCarrier::Nil(e) => CarrierSpec::Nil(e.names().to_vec()),
            GroupCarrier::Ab(a) => CarrierSpec::Abelian(AbelianSpec::of(a)),
        }
    }
}

fn check_keys<'a>(what: &str, keys: impl IntoIterator<Item = &'a String>, allowed: &[String]) -> Result<(), QuadError> {
    match keys.into_iter().find(|k| !allowed.contains(k)) {
        Some(k) => Err(QuadError::Json(format!("{what}: unknown generator '{k}'"))),
        None => Ok(()),
    }
}

fn parse_in(what: &str, key: &str, c: &GroupCarrier, src: &str) -> Result<Elem, QuadError> {
    c.parse(src).map_err(|e| QuadError::Json(format!("{what}[{key}]: {e}")))
}

fn build_hom(what: &str, map: &BTreeMap<String, String>, src: &GroupCarrier, tgt: &GroupCarrier) -> Result<Hom, QuadError> {
    let names = src.generator_names();
    check_keys(what, map.keys(), names)?;
    let images = names
        .iter()
        .map(|n| map.get(n).map_or_else(|| Ok(tgt.zero()), |s| parse_in(what, n, tgt, s)))
        .collect::<Result<_, _>>()?;
    Hom::new(src.clone(), tgt.clone(), images)
}

fn build_quadratic(spec: &QuadraticSpec, src: &GroupCarrier, tgt: &AbGroup) -> Result<QuadraticMap, QuadError> {
    let names = src.generator_names();
    check_keys("H.values", spec.values.keys(), names)?;
    let t = GroupCarrier::Ab(tgt.clone());
    let vec_of = |what: &str, key: &str, s: Option<&String>| -> Result<Vec<i64>, QuadError> {
        match s {
            None => Ok(tgt.zero()),
            Some(s) => Ok(parse_in(what, key, &t, s)?.as_ab().to_vec()),
        }
    };
    let values = names.iter().map(|n| vec_of("H.values", n, spec.values.get(n))).collect::<Result<_, _>>()?;
    for key in spec.cross.keys() {
        let ok = key.split_once('|').is_some_and(|(a, b)| names.contains(&a.to_string()) && names.contains(&b.to_string()));
        if !ok {
            return Err(QuadError::Json(format!("H.cross: key '{key}' is not of the form 'g|h'")));
        }
    }
    let cross = names
        .iter()
        .map(|a| {
            names
                .iter()
                .map(|b| {
                    let key = format!("{a}|{b}");
                    vec_of("H.cross", &key, spec.cross.get(&key))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    QuadraticMap::new(src.clone(), tgt.clone(), values, cross)
}

fn hom_spec(h: &Hom) -> BTreeMap<String, String> {
    h.source
        .generator_names()
        .iter()
        .zip(h.images())
        .filter(|(_, v)| !h.target.is_zero(v))
        .map(|(n, v)| (n.clone(), h.target.show(v)))
        .collect()
}

fn quadratic_spec(q: &QuadraticMap) -> QuadraticSpec {
    let names = q.source.generator_names();
    let show = |v: &Vec<i64>| (!q.target.is_zero(v)).then(|| q.target.show(v));
    QuadraticSpec {
        values: names.iter().zip(q.values()).filter_map(|(n, v)| Some((n.clone(), show(v)?))).collect(),
        cross: names
            .iter()
            .zip(q.table())
            .flat_map(|(a, row)| names.iter().zip(row).filter_map(move |(b, v)| Some((format!("{a}|{b}"), show(v)?))))
            .collect(),
    }
}

impl Description {
    pub fn build(&self) -> Result<Structure, QuadError> {
        match self {
            Description::SquareGroup { xe, xee, p, h } => {
                let xe = xe.build()?;
                let xee = xee.build()?;
                let p = build_hom("P", p, &GroupCarrier::Ab(xee.clone()), &xe)?;
                let h = build_quadratic(h, &xe, &xee)?;
                SquareGroup::new(xe, xee, p, h).map(Structure::SquareGroup)
            }
            Description::Qpm { name, c0, c1, cee, boundary, p, h } => {
                let c0 = c0.build()?;
                let c1 = c1.build()?;
                let cee = cee.build()?;
                let bd = build_hom("boundary", boundary, &c1, &c0)?;
                let p = build_hom("P", p, &GroupCarrier::Ab(cee.clone()), &c1)?;
                let h = build_quadratic(h, &c0, &cee)?;
                let name = name.clone().unwrap_or_else(|| "qpm".into());
                QuadraticPairModule::new(name, c0, c1, cee, bd, p, h).map(Structure::Qpm)
            }
        }
    }

    pub fn of_qpm(c: &QuadraticPairModule) -> Self {
        Description::Qpm {
            name: Some(c.name.clone()),
            c0: CarrierSpec::of(&c.c0),
            c1: CarrierSpec::of(&c.c1),
            cee: AbelianSpec::of(&c.cee),
            boundary: hom_spec(&c.bd),
            p: hom_spec(&c.p),
            h: quadratic_spec(&c.h),
        }
    }

    pub fn of_square_group(x: &SquareGroup) -> Self {
        Description::SquareGroup {
            xe: CarrierSpec::of(&x.xe),
            xee: AbelianSpec::of(&x.xee),
            p: hom_spec(&x.p),
            h: quadratic_spec(&x.h),
        }
    }
}

pub fn from_json(src: &str) -> Result<Structure, QuadError> {
    let d: Description = serde_json::from_str(src).map_err(|e| QuadError::Json(e.to_string()))?;
    d.build()
}

pub fn to_json(d: &Description) -> String {
    serde_json::to_string_pretty(d).expect("descriptions serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::instances::{qpm_doubling, qpm_eta, qpm_nil, z_nil_square_group};

    #[test]
    fn qpm_round_trip() {
        let e = PointedSet::new(["a", "b"]).unwrap();
        for c in [qpm_eta(), qpm_nil(&e), qpm_doubling()] {
            let json = to_json(&Description::of_qpm(&c));
            assert_eq!(from_json(&json).unwrap(), Structure::Qpm(c), "{json}");
        }
    }

    #[test]
    fn square_group_round_trip() {
        let x = z_nil_square_group();
        let json = to_json(&Description::of_square_group(&x));
        assert_eq!(from_json(&json).unwrap(), Structure::SquareGroup(x));
    }

    #[test]
    fn hand_written_eta() {
        let src = r#"{
            "type": "qpm",
            "c0": {"nil": ["e"]},
            "c1": {"abelian": {"torsion": [["eta", 2]]}},
            "cee": {"free": ["e.e"]},
            "P": {"e.e": "eta"},
            "H": {"cross": {"e|e": "e.e"}}
        }"#;
        let Structure::Qpm(c) = from_json(src).unwrap() else { panic!() };
        let mut expected = qpm_eta();
        expected.name = "qpm".into();
        assert_eq!(c, expected);
    }

    #[test]
    fn errors_are_reported() {
        let unknown = r#"{"type":"qpm","c0":{"nil":["e"]},"c1":{"abelian":{}},"cee":{},"P":{"x":"0"}}"#;
        assert!(matches!(from_json(unknown), Err(QuadError::Json(m)) if m.contains("unknown generator 'x'")));
        let bad_expr = r#"{"type":"qpm","c0":{"nil":["e"]},"c1":{"abelian":{}},"cee":{"free":["z"]},"H":{"values":{"e":"z +"}}}"#;
        assert!(matches!(from_json(bad_expr), Err(QuadError::Json(m)) if m.starts_with("H.values[e]")));
        assert!(matches!(from_json("{"), Err(QuadError::Json(_))));
        let torsion = r#"{"type":"square_group","xe":{"abelian":{"torsion":[["t",1]]}},"xee":{}}"#;
        assert_eq!(from_json(torsion), Err(QuadError::BadTorsion(1)));
    }
}
