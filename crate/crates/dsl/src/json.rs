//! JSON documents for rigs, ideal lists, spectra and frames.
//!
//! Output is canonical: keys come in a fixed order, element and point
//! lists are sorted, and [`to_canonical`] lays the text out the same way
//! every time, so documents can be compared byte for byte.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use mvw::ideals::{classify_ideal, enumerate_ideals, enumerate_mv_ideals, mv_ideal_closure, mv_prime_witness};
use mvw::locale::FrameLA;
use mvw::spectrum::SpecSpace;
use mvw::{Carrier, ElemSet, Error, Limits, MvAlgebra, MvwRig, Structure};

/// A document that does not describe a valid object. `path` locates the
/// offending value, e.g. `add[2][0]`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() || self.path == "." {
            write!(f, "schema error: {}", self.message)
        } else {
            write!(f, "schema error at {}: {}", self.path, self.message)
        }
    }
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> SchemaError {
    SchemaError { path: path.into(), message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsDoc {
    pub commutative: bool,
    pub unit: Option<usize>,
    pub product_below_meet: bool,
}

/// An MV-algebra (no `mul`, no `flags`) or an MVW-rig.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RigDoc {
    pub name: String,
    pub elements: Vec<String>,
    pub zero: usize,
    pub neg: Vec<usize>,
    pub add: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mul: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<FlagsDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealEntry {
    pub members: Vec<usize>,
    pub proper: bool,
    /// Absent for MV-algebras, which have no product.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<bool>,
    pub mv_prime: bool,
    pub maximal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealsDoc {
    pub algebra: String,
    pub elements: Vec<String>,
    pub ideals: Vec<IdealEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    pub algebra: String,
    pub elements: Vec<String>,
    pub unital: bool,
    pub points: Vec<Vec<usize>>,
    /// `V(a)` for each element name.
    pub base: BTreeMap<String, Vec<usize>>,
    pub opens: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDoc {
    pub algebra: String,
    pub elements: Vec<String>,
    pub filters: Vec<Vec<usize>>,
    /// Index into `filters` of the principal P-filter of each element.
    pub principal: Vec<usize>,
    pub hasse: Vec<[usize; 2]>,
}

/// The principal P-filter of one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrincipalDoc {
    pub algebra: String,
    pub element: String,
    pub members: Vec<usize>,
}

fn rows(table: &[usize], n: usize) -> Vec<Vec<usize>> {
    table.chunks(n).map(<[usize]>::to_vec).collect()
}

pub fn rig_doc(s: &Structure) -> RigDoc {
    let mv = s.mv();
    let n = mv.size();
    let rig = s.rig();
    RigDoc {
        name: mv.name().to_string(),
        elements: mv.carrier().names().to_vec(),
        zero: mv.zero(),
        neg: mv.neg_table(),
        add: rows(&mv.add_table(), n),
        mul: rig.map(|r| rows(&r.mul_table(), n)),
        flags: rig.map(|r| {
            let f = r.flags();
            FlagsDoc { commutative: f.commutative, unit: f.unit, product_below_meet: f.product_below_meet }
        }),
    }
}

fn flat(table: &[Vec<usize>], n: usize, key: &str) -> Result<Vec<usize>, SchemaError> {
    if table.len() != n {
        return Err(schema(key, format!("expected {n} rows, found {}", table.len())));
    }
    let mut out = Vec::with_capacity(n * n);
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(schema(format!("{key}[{i}]"), format!("expected {n} entries, found {}", row.len())));
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(schema(format!("{key}[{i}][{j}]"), format!("{v} is outside the carrier of size {n}")));
            }
        }
        out.extend_from_slice(row);
    }
    Ok(out)
}

/// Rebuilds the structure a [`RigDoc`] describes. Declared flags must
/// agree with the ones recomputed from the tables.
pub fn structure_from_doc(doc: &RigDoc) -> Result<Structure, SchemaError> {
    let n = doc.elements.len();
    if doc.zero != 0 {
        return Err(schema("zero", "the zero must be element 0"));
    }
    if doc.neg.len() != n {
        return Err(schema("neg", format!("expected {n} entries, found {}", doc.neg.len())));
    }
    if let Some(i) = doc.neg.iter().position(|&v| v >= n) {
        return Err(schema(format!("neg[{i}]"), format!("{} is outside the carrier of size {n}", doc.neg[i])));
    }
    let carrier = Carrier::new(doc.elements.clone()).map_err(|e| schema("elements", e.to_string()))?;
    let add = flat(&doc.add, n, "add")?;
    let mv = MvAlgebra::derive(doc.name.clone(), carrier, &doc.neg, &add).map_err(|e| schema("add", e.to_string()))?;
    match (&doc.mul, &doc.flags) {
        (None, None) => Ok(Structure::Mv(mv)),
        (Some(mul), Some(flags)) => {
            let mul = flat(mul, n, "mul")?;
            let rig = MvwRig::with_product(mv, &mul).map_err(|e| schema("mul", e.to_string()))?;
            let s = Structure::Rig(rig);
            if rig_doc(&s).flags.as_ref() != Some(flags) {
                return Err(schema("flags", "flags do not match the product table"));
            }
            Ok(s)
        }
        (Some(_), None) => Err(schema("flags", "a rig document needs flags")),
        (None, Some(_)) => Err(schema("mul", "flags given without a product table")),
    }
}

fn set_vec(s: &ElemSet) -> Vec<usize> {
    s.to_vec()
}

fn elem_set(v: &[usize], n: usize, path: &str) -> Result<ElemSet, SchemaError> {
    if v.windows(2).any(|w| w[0] >= w[1]) {
        return Err(schema(path, "entries must be strictly increasing"));
    }
    if let Some(&x) = v.iter().find(|&&x| x >= n) {
        return Err(schema(path, format!("{x} is out of range (size {n})")));
    }
    Ok(ElemSet::from_elems(n, v.iter().copied()))
}

/// Every ideal of the structure with its classification. MV-algebras
/// list their MV-ideals and leave `prime` out.
pub fn ideals_doc(s: &Structure, limits: &Limits) -> Result<IdealsDoc, Error> {
    let mv = s.mv();
    let ideals = match s.rig() {
        Some(r) => enumerate_ideals(r, limits)?
            .into_iter()
            .map(|i| {
                let c = classify_ideal(r, &i);
                IdealEntry { members: set_vec(&i), proper: c.proper, prime: Some(c.prime), mv_prime: c.mv_prime, maximal: c.maximal }
            })
            .collect(),
        None => enumerate_mv_ideals(mv, limits)?
            .into_iter()
            .map(|i| {
                let maximal = mv.elements().filter(|&a| !i.contains(a)).all(|a| mv_ideal_closure(mv, i.iter().chain([a])).is_full());
                IdealEntry {
                    members: set_vec(&i),
                    proper: !i.is_full(),
                    prime: None,
                    mv_prime: mv_prime_witness(mv, &i).is_none(),
                    maximal,
                }
            })
            .collect(),
    };
    Ok(IdealsDoc { algebra: mv.name().to_string(), elements: mv.carrier().names().to_vec(), ideals })
}

impl IdealsDoc {
    /// The member sets, checked against the element list.
    pub fn ideal_sets(&self) -> Result<Vec<ElemSet>, SchemaError> {
        let n = self.elements.len();
        self.ideals.iter().enumerate().map(|(i, e)| elem_set(&e.members, n, &format!("ideals[{i}].members"))).collect()
    }
}

pub fn spec_doc(sp: &SpecSpace, rig: &MvwRig) -> SpecDoc {
    SpecDoc {
        algebra: sp.name().to_string(),
        elements: rig.carrier().names().to_vec(),
        unital: sp.is_unital(),
        points: sp.points().iter().map(set_vec).collect(),
        base: rig.elements().map(|a| (rig.elem_name(a).to_string(), set_vec(sp.basic_open(a)))).collect(),
        opens: sp.opens().iter().map(set_vec).collect(),
    }
}

/// Rebuilds the space from its points; the basic opens and opens in the
/// document must be the ones the points determine.
pub fn spec_from_doc(doc: &SpecDoc) -> Result<SpecSpace, SchemaError> {
    let n = doc.elements.len();
    let points = doc
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| elem_set(p, n, &format!("points[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let sp = SpecSpace::from_points(doc.algebra.clone(), n, doc.unital, points);
    for (a, name) in doc.elements.iter().enumerate() {
        match doc.base.get(name) {
            Some(v) if *v == set_vec(sp.basic_open(a)) => {}
            Some(_) => return Err(schema(format!("base.{name}"), "does not match the points")),
            None => return Err(schema("base", format!("missing element {name}"))),
        }
    }
    if doc.base.len() != n {
        return Err(schema("base", "keys must be exactly the elements"));
    }
    if doc.opens != sp.opens().iter().map(set_vec).collect::<Vec<_>>() {
        return Err(schema("opens", "does not match the points"));
    }
    Ok(sp)
}

pub fn frame_doc(fr: &FrameLA, rig: &MvwRig) -> FrameDoc {
    FrameDoc {
        algebra: rig.name().to_string(),
        elements: rig.carrier().names().to_vec(),
        filters: fr.filters().iter().map(set_vec).collect(),
        principal: rig.elements().map(|a| fr.principal(a)).collect(),
        hasse: fr.hasse().into_iter().map(|(i, j)| [i, j]).collect(),
    }
}

pub fn frame_from_doc(doc: &FrameDoc) -> Result<FrameLA, SchemaError> {
    let n = doc.elements.len();
    let filters = doc
        .filters
        .iter()
        .enumerate()
        .map(|(i, f)| elem_set(f, n, &format!("filters[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    if doc.principal.len() != n {
        return Err(schema("principal", format!("expected {n} entries, found {}", doc.principal.len())));
    }
    let fr = FrameLA::from_filters(filters, doc.principal.clone()).map_err(|e| schema("filters", e.to_string()))?;
    if doc.hasse != fr.hasse().into_iter().map(|(i, j)| [i, j]).collect::<Vec<_>>() {
        return Err(schema("hasse", "does not match the filters"));
    }
    Ok(fr)
}

/// Parses a document, reporting the path of the first value that does not
/// fit the schema.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, SchemaError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        schema(path, e.into_inner().to_string())
    })
}

pub fn rig_from_json(text: &str) -> Result<Structure, SchemaError> {
    structure_from_doc(&from_json(text)?)
}

/// Canonical text for any of the documents above.
pub fn to_canonical<T: Serialize>(doc: &T) -> String {
    let v = serde_json::to_value(doc).expect("documents serialize to JSON");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

/// Objects and arrays of arrays are broken over lines; arrays of scalars
/// stay on one line, so a table reads row by row.
fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |k: usize| "  ".repeat(k);
    match v {
        Value::Array(xs) if is_flat(v) => {
            let parts: Vec<String> = xs.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(xs) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mvw::builders::build_zn;
    use mvw::catalog;

    const Z1_GOLDEN: &str = r#"{
  "name": "Z1",
  "elements": ["0", "1"],
  "zero": 0,
  "neg": [1, 0],
  "add": [
    [0, 1],
    [1, 1]
  ],
  "mul": [
    [0, 0],
    [0, 1]
  ],
  "flags": {
    "commutative": true,
    "unit": 1,
    "product_below_meet": true
  }
}
"#;

    #[test]
    fn z1_golden_document() {
        let s = Structure::Rig(build_zn(1).unwrap());
        assert_eq!(to_canonical(&rig_doc(&s)), Z1_GOLDEN);
        assert_eq!(rig_from_json(Z1_GOLDEN).unwrap(), s);
    }

    #[test]
    fn shipped_examples_round_trip() {
        for s in catalog::shipped() {
            let text = to_canonical(&rig_doc(&s));
            assert_eq!(rig_from_json(&text).unwrap(), s, "{}", s.name());
            assert_eq!(to_canonical(&rig_doc(&s)), text);
        }
    }

    #[test]
    fn malformed_documents_name_a_path() {
        let e = rig_from_json(&Z1_GOLDEN.replace("\"neg\": [1, 0]", "\"neg\": [1, \"x\"]")).unwrap_err();
        assert_eq!(e.path, "neg[1]");
        let e = rig_from_json(&Z1_GOLDEN.replace("[0, 1],\n    [1, 1]", "[0, 1],\n    [1, 7]")).unwrap_err();
        assert_eq!(e.path, "add[1][1]");
        let e = rig_from_json(&Z1_GOLDEN.replace("\"unit\": 1", "\"unit\": 0")).unwrap_err();
        assert_eq!(e.path, "flags");
        let e = rig_from_json(&Z1_GOLDEN.replace("\"zero\"", "\"nil\"")).unwrap_err();
        assert!(e.message.contains("nil"), "{e}");
        assert!(rig_from_json("{").is_err());
    }

    #[test]
    fn spec_and_frame_round_trip() {
        let limits = Limits::default();
        for s in catalog::shipped() {
            let Some(r) = s.rig() else { continue };
            if !r.is_commutative() {
                continue;
            }
            let sp = mvw::spectrum::spec(r, &limits).unwrap();
            let text = to_canonical(&spec_doc(&sp, r));
            assert_eq!(spec_from_doc(&from_json(&text).unwrap()).unwrap(), sp, "{}", s.name());
            let fr = mvw::locale::frame(r, &limits).unwrap();
            let text = to_canonical(&frame_doc(&fr, r));
            assert_eq!(frame_from_doc(&from_json(&text).unwrap()).unwrap(), fr, "{}", s.name());
        }
    }

    #[test]
    fn z1xz1_spec_document() {
        let r = catalog::by_name("Z1xZ1").unwrap();
        let r = r.rig().unwrap();
        let doc = spec_doc(&mvw::spectrum::spec(r, &Limits::default()).unwrap(), r);
        assert_eq!(doc.points.len(), 2);
        let mut bad = doc.clone();
        bad.opens.pop();
        assert_eq!(spec_from_doc(&bad).unwrap_err().path, "opens");
    }

    #[test]
    fn ideals_documents() {
        let limits = Limits::default();
        for s in catalog::shipped() {
            let doc = ideals_doc(&s, &limits).unwrap();
            let back: IdealsDoc = from_json(&to_canonical(&doc)).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.ideal_sets().unwrap().len(), doc.ideals.len());
        }
        let z3 = Structure::Rig(build_zn(3).unwrap());
        let doc = ideals_doc(&z3, &limits).unwrap();
        assert_eq!(doc.ideals.iter().map(|e| e.members.clone()).collect::<Vec<_>>(), vec![vec![0], vec![0, 1, 2, 3]]);
    }
}
