//! Structured text (JSON) encodings of every object. Rationals are `"p/q"`
//! strings, words are digit strings, and perms/axes are 1-based.

use serde_json::{json, Map, Value};

use crate::cantor_model::{validate_ifs, Address, Point, Word};
use crate::error::{Error, Result};
use crate::exact_num::{parse_rational, ScaleElement};
use crate::nv_patterns::{CubeSymmetry, DustAddress, NVElement, PatternTree};
use crate::pl_action::{Model, MultiGerm, PLMap, PLPiece, StandardGerm};
use crate::tree_calculus::{GroupElement, Piece, Symbol, Tree, Variant};
use crate::{Ifs, Rational};

/// Parses JSON text, reporting the line/column of syntax errors.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        let line = text.lines().nth(e.line().saturating_sub(1)).unwrap_or("");
        let token: String = line.chars().skip(e.column().saturating_sub(1)).take(12).collect();
        Error::parse(format!("line {} column {}", e.line(), e.column()), token, e.to_string())
    })
}

fn bad(path: &str, v: &Value, message: &str) -> Error {
    Error::parse(path, v.to_string(), message)
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(path, v, "expected an object"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::parse(format!("{path}.{key}"), "", format!("missing field `{key}`")))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(path, v, "expected a string"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(path, v, "expected an array"))
}

fn integer(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad(path, v, "expected an integer"))
}

fn index(v: &Value, path: &str) -> Result<usize> {
    let i = integer(v, path)?;
    if i < 1 {
        return Err(bad(path, v, "indices are 1-based"));
    }
    Ok(i as usize - 1)
}

fn located<T>(r: Result<T>, path: &str, v: &Value) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { ref location, .. } if location.starts_with('$') => e,
        Error::Parse { message, .. } => Error::parse(path, v.to_string(), message),
        other => other,
    })
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(q.to_string())
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<Rational> {
    located(parse_rational(string(v, path)?), path, v)
}

pub fn word_from_json(v: &Value, path: &str) -> Result<Word> {
    located(string(v, path)?.parse(), path, v)
}

pub fn scale_to_json(k: &ScaleElement) -> Value {
    json!(k.0)
}

fn scale_from_json(v: &Value, path: &str) -> Result<ScaleElement> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| integer(x, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()
        .map(ScaleElement)
}

pub fn ifs_to_json(ifs: &Ifs) -> Value {
    let pieces: Vec<Value> = ifs
        .maps()
        .iter()
        .map(|m| json!({"ratio": m.ratio.to_string(), "offset": m.offset.to_string()}))
        .collect();
    json!({ "pieces": pieces })
}

pub fn ifs_from_json(v: &Value) -> Result<Ifs> {
    let obj = object(v, "$")?;
    let pieces = array(field(obj, "pieces", "$")?, "$.pieces")?;
    let mut raw = Vec::with_capacity(pieces.len());
    for (i, p) in pieces.iter().enumerate() {
        let path = format!("$.pieces[{i}]");
        let o = object(p, &path)?;
        let ratio = rational_from_json(field(o, "ratio", &path)?, &format!("{path}.ratio"))?;
        let offset = rational_from_json(field(o, "offset", &path)?, &format!("{path}.offset"))?;
        raw.push((ratio, offset));
    }
    validate_ifs(raw)
}

pub fn address_to_json(a: &Address) -> Value {
    json!({"pre": a.pre().to_string(), "per": a.per().to_string()})
}

pub fn point_to_json(p: &Point) -> Value {
    match p {
        Point::Periodic(a) => address_to_json(a),
        Point::Aperiodic { prefix } => json!({"pre": prefix.to_string(), "aperiodic": true}),
    }
}

pub fn point_from_json(v: &Value, path: &str) -> Result<Point> {
    let obj = object(v, path)?;
    let pre = word_from_json(field(obj, "pre", path)?, &format!("{path}.pre"))?;
    if obj.get("aperiodic").and_then(Value::as_bool) == Some(true) {
        return Ok(Point::Aperiodic { prefix: pre });
    }
    let per = word_from_json(field(obj, "per", path)?, &format!("{path}.per"))?;
    Ok(Point::Periodic(located(Address::new(pre, per), path, v)?))
}

pub fn address_from_json(v: &Value, path: &str) -> Result<Address> {
    match point_from_json(v, path)? {
        Point::Periodic(a) => Ok(a),
        Point::Aperiodic { .. } => Err(bad(path, v, "expected an eventually periodic address")),
    }
}

fn flips_string(flips: &[bool]) -> String {
    flips.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn symbol_to_json(s: &Symbol) -> Value {
    json!({
        "arity": s.arity(),
        "target": s.target().to_string(),
        "source": s.source().to_string(),
        "perm": s.perm().iter().map(|p| p + 1).collect::<Vec<_>>(),
        "flips": flips_string(s.flips()),
    })
}

pub fn element_to_json(e: &GroupElement) -> Value {
    let mut v = symbol_to_json(e.symbol());
    v["variant"] = Value::String(e.variant().name().into());
    v
}

pub fn symbol_from_json(v: &Value) -> Result<Symbol> {
    let obj = object(v, "$")?;
    let tree = |key: &str| -> Result<Tree> {
        let path = format!("$.{key}");
        let f = field(obj, key, "$")?;
        located(string(f, &path)?.parse(), &path, f)
    };
    let target = tree("target")?;
    let source = tree("source")?;
    let arity = match obj.get("arity") {
        Some(a) => integer(a, "$.arity")? as usize,
        None => target.arity()?.or(source.arity()?).unwrap_or(2),
    };
    let perm = array(field(obj, "perm", "$")?, "$.perm")?
        .iter()
        .enumerate()
        .map(|(i, x)| index(x, &format!("$.perm[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let flips = match obj.get("flips") {
        None => vec![false; perm.len()],
        Some(f) => string(f, "$.flips")?
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::parse(format!("$.flips[{i}]"), c.to_string(), "flips are a bitstring")),
            })
            .collect::<Result<Vec<_>>>()?,
    };
    located(Symbol::new(arity, target, source, perm, flips), "$", v)
}

/// Parses a symbol; the group defaults to the smallest one containing it.
pub fn element_from_json(v: &Value) -> Result<GroupElement> {
    let symbol = symbol_from_json(v)?;
    match object(v, "$")?.get("variant") {
        None => Ok(GroupElement::from_symbol(symbol)),
        Some(name) => {
            let variant = located(Variant::parse(string(name, "$.variant")?), "$.variant", name)?;
            located(GroupElement::new(symbol, variant), "$", v)
        }
    }
}

pub fn plmap_to_json(f: &PLMap) -> Value {
    let pieces: Vec<Value> = f
        .pieces()
        .iter()
        .map(|p| {
            json!({
                "source": p.source.word.to_string(),
                "target_left": address_to_json(&p.target_left),
                "scale": scale_to_json(&p.scale),
                "rev": p.reversed,
            })
        })
        .collect();
    json!({"model": f.model().name(), "pieces": pieces})
}

pub fn plmap_from_json(v: &Value, ifs: &Ifs) -> Result<PLMap> {
    let obj = object(v, "$")?;
    let model = match obj.get("model") {
        None => Model::Exchange,
        Some(m) => located(Model::parse(string(m, "$.model")?), "$.model", m)?,
    };
    let mut pieces = Vec::new();
    for (i, p) in array(field(obj, "pieces", "$")?, "$.pieces")?.iter().enumerate() {
        let path = format!("$.pieces[{i}]");
        let o = object(p, &path)?;
        let source = word_from_json(field(o, "source", &path)?, &format!("{path}.source"))?;
        let left = address_from_json(field(o, "target_left", &path)?, &format!("{path}.target_left"))?;
        let scale = scale_from_json(field(o, "scale", &path)?, &format!("{path}.scale"))?;
        if scale.len() != ifs.arity() {
            return Err(bad(&format!("{path}.scale"), &o["scale"], "scale length must equal the IFS alphabet size"));
        }
        let flip = match o.get("rev") {
            None => false,
            Some(r) => r.as_bool().ok_or_else(|| bad(&format!("{path}.rev"), r, "expected a boolean"))?,
        };
        let target = located(PLPiece::target_word(&source, &left, &scale), &path, p)?;
        pieces.push(Piece { source, target, flip });
    }
    located(PLMap::new(ifs, model, pieces), "$", v)
}

pub fn germ_to_json(g: &StandardGerm) -> Value {
    json!({"source": g.source.to_string(), "target": g.target.to_string()})
}

pub fn germ_from_json(v: &Value, path: &str) -> Result<StandardGerm> {
    let obj = object(v, path)?;
    Ok(StandardGerm::new(
        word_from_json(field(obj, "source", path)?, &format!("{path}.source"))?,
        word_from_json(field(obj, "target", path)?, &format!("{path}.target"))?,
    ))
}

pub fn multigerm_to_json(m: &MultiGerm) -> Value {
    json!({"arity": m.arity(), "germs": m.germs().iter().map(germ_to_json).collect::<Vec<_>>()})
}

pub fn multigerm_from_json(v: &Value) -> Result<MultiGerm> {
    let obj = object(v, "$")?;
    let arity = match obj.get("arity") {
        Some(a) => integer(a, "$.arity")? as usize,
        None => 2,
    };
    let germs = array(field(obj, "germs", "$")?, "$.germs")?
        .iter()
        .enumerate()
        .map(|(i, g)| germ_from_json(g, &format!("$.germs[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    located(MultiGerm::new(arity, germs), "$", v)
}

pub fn pattern_to_json(p: &PatternTree) -> Value {
    match p {
        PatternTree::Cell => json!("cell"),
        PatternTree::Cut { axis, low, high } => {
            json!({"cut": axis + 1, "low": pattern_to_json(low), "high": pattern_to_json(high)})
        }
    }
}

pub fn pattern_from_json(v: &Value, path: &str) -> Result<PatternTree> {
    if v.as_str() == Some("cell") {
        return Ok(PatternTree::Cell);
    }
    let obj = object(v, path).map_err(|_| bad(path, v, "expected \"cell\" or a cut object"))?;
    let axis = index(field(obj, "cut", path)?, &format!("{path}.cut"))?;
    let low = pattern_from_json(field(obj, "low", path)?, &format!("{path}.low"))?;
    let high = pattern_from_json(field(obj, "high", path)?, &format!("{path}.high"))?;
    Ok(PatternTree::cut(axis, low, high))
}

pub fn symmetry_to_json(s: &CubeSymmetry) -> Value {
    json!({"perm": s.perm().iter().map(|p| p + 1).collect::<Vec<_>>(), "signs": s.signs()})
}

fn symmetry_from_json(v: &Value, path: &str) -> Result<CubeSymmetry> {
    let obj = object(v, path)?;
    let perm = array(field(obj, "perm", path)?, &format!("{path}.perm"))?
        .iter()
        .enumerate()
        .map(|(i, x)| index(x, &format!("{path}.perm[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let signs = array(field(obj, "signs", path)?, &format!("{path}.signs"))?
        .iter()
        .enumerate()
        .map(|(i, x)| integer(x, &format!("{path}.signs[{i}]")).map(|s| s as i8))
        .collect::<Result<Vec<_>>>()?;
    located(CubeSymmetry::new(perm, signs), path, v)
}

pub fn nv_to_json(f: &NVElement) -> Value {
    json!({
        "dim": f.dim(),
        "source": pattern_to_json(f.source()),
        "target": pattern_to_json(f.target()),
        "perm": f.perm().iter().map(|p| p + 1).collect::<Vec<_>>(),
        "syms": f.syms().iter().map(symmetry_to_json).collect::<Vec<_>>(),
    })
}

pub fn nv_from_json(v: &Value) -> Result<NVElement> {
    let obj = object(v, "$")?;
    let dim = integer(field(obj, "dim", "$")?, "$.dim")? as usize;
    let source = pattern_from_json(field(obj, "source", "$")?, "$.source")?;
    let target = pattern_from_json(field(obj, "target", "$")?, "$.target")?;
    let perm = array(field(obj, "perm", "$")?, "$.perm")?
        .iter()
        .enumerate()
        .map(|(i, x)| index(x, &format!("$.perm[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let syms = match obj.get("syms") {
        None => vec![CubeSymmetry::identity(dim); perm.len()],
        Some(s) => array(s, "$.syms")?
            .iter()
            .enumerate()
            .map(|(i, x)| symmetry_from_json(x, &format!("$.syms[{i}]")))
            .collect::<Result<Vec<_>>>()?,
    };
    located(NVElement::new(dim, source, target, perm, syms), "$", v)
}

pub fn dust_to_json(a: &DustAddress) -> Value {
    json!({"coords": a.coords.iter().map(point_to_json).collect::<Vec<_>>()})
}

pub fn dust_from_json(v: &Value) -> Result<DustAddress> {
    let obj = object(v, "$")?;
    let coords = array(field(obj, "coords", "$")?, "$.coords")?
        .iter()
        .enumerate()
        .map(|(i, c)| point_from_json(c, &format!("$.coords[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    located(DustAddress::new(coords), "$", v)
}
