//! The versioned JSON document format for quivers, representations,
//! barcodes and reports.
//!
//! Serialization is canonical: object keys are sorted, fractions reduced,
//! cuts increasing and barcodes sorted, so equal documents are equal bytes.

use serde_json::{json, Map, Value};
use thiserror::Error;

use quiver_reflect::barcode::Barcode;
use quiver_reflect::linalg::{Field, Matrix, Scalar};
use quiver_reflect::quiver::{Coord, Orientation, OrientedQuiver};
use quiver_reflect::representation::{Bar, CellPartition, Endpoint, Rep};

pub const VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T, SchemaError> {
    Err(SchemaError::Field {
        path: path.to_string(),
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarcodeDoc {
    pub quiver: Option<OrientedQuiver>,
    pub barcode: Barcode,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Quiver(OrientedQuiver),
    Rep(Rep),
    Barcode(BarcodeDoc),
    /// Reports are produced by the tool; their payload is kept as parsed.
    Report(Value),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Quiver(_) => "quiver",
            Document::Rep(_) => "rep",
            Document::Barcode(_) => "barcode",
            Document::Report(_) => "report",
        }
    }

    pub fn to_value(&self) -> Value {
        let payload = match self {
            Document::Quiver(q) => quiver_value(q),
            Document::Rep(r) => rep_value(r),
            Document::Barcode(b) => barcode_value(b),
            Document::Report(v) => v.clone(),
        };
        json!({ "kind": self.kind(), "version": VERSION, "payload": payload })
    }
}

/// Canonical text: pretty-printed JSON with sorted keys and a final newline.
pub fn serialize(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(&doc.to_value()).expect("values always serialize");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Document, SchemaError> {
    let value: Value = serde_json::from_str(text).map_err(|e| SchemaError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let top = object(&value, "")?;
    let kind = string(field(top, "", "kind")?, "kind")?;
    let version = field(top, "", "version")?
        .as_u64()
        .ok_or_else(|| schema("version", "expected a non-negative integer"))?;
    if version != VERSION {
        return err("version", format!("unsupported version {version}, expected {VERSION}"));
    }
    let payload = field(top, "", "payload")?;
    match kind {
        "quiver" => Ok(Document::Quiver(parse_quiver(payload, "payload")?)),
        "rep" => Ok(Document::Rep(parse_rep(payload, "payload")?)),
        "barcode" => Ok(Document::Barcode(parse_barcode(payload, "payload")?)),
        "report" => Ok(Document::Report(payload.clone())),
        other => err("kind", format!("unknown kind {other:?}")),
    }
}

fn schema(path: &str, message: &str) -> SchemaError {
    SchemaError::Field {
        path: path.to_string(),
        message: message.to_string(),
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, SchemaError> {
    v.as_object()
        .ok_or_else(|| schema(if path.is_empty() { "document" } else { path }, "expected an object"))
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value, SchemaError> {
    obj.get(key).ok_or_else(|| schema(&join(path, key), "missing field"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a [Value], SchemaError> {
    v.as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| schema(path, "expected an array"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str, SchemaError> {
    v.as_str().ok_or_else(|| schema(path, "expected a string"))
}

fn integer(v: &Value, path: &str) -> Result<i64, SchemaError> {
    v.as_i64().ok_or_else(|| schema(path, "expected an integer"))
}

fn count(v: &Value, path: &str) -> Result<usize, SchemaError> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| schema(path, "expected a non-negative integer"))
}

// ---- coordinates, fields, quivers ----

fn coord_value(x: Coord) -> Value {
    json!({ "num": x.numer(), "den": x.denom() })
}

fn parse_coord(v: &Value, path: &str) -> Result<Coord, SchemaError> {
    let obj = object(v, path)?;
    let num = integer(field(obj, path, "num")?, &join(path, "num"))?;
    let den = integer(field(obj, path, "den")?, &join(path, "den"))?;
    Coord::new(num, den).ok_or_else(|| schema(&join(path, "den"), "zero denominator"))
}

fn field_value(f: Field) -> Value {
    match f {
        Field::Prime(p) => json!({ "p": p }),
        Field::Rationals => json!("Q"),
    }
}

fn parse_field(v: &Value, path: &str) -> Result<Field, SchemaError> {
    match v {
        Value::String(s) if s == "Q" => Ok(Field::Rationals),
        Value::Object(obj) => {
            let p = field(obj, path, "p")?
                .as_u64()
                .ok_or_else(|| schema(&join(path, "p"), "expected a prime"))?;
            Field::prime(p).map_err(|e| schema(&join(path, "p"), &e.to_string()))
        }
        _ => err(path, "expected {\"p\": prime} or \"Q\""),
    }
}

fn orientation_name(o: Orientation) -> &'static str {
    match o {
        Orientation::Ascending => "ascending",
        Orientation::Descending => "descending",
    }
}

pub fn quiver_value(q: &OrientedQuiver) -> Value {
    json!({
        "breakpoints": q.breakpoints().iter().map(|&x| coord_value(x)).collect::<Vec<_>>(),
        "segments": q.segments().iter().map(|&o| orientation_name(o)).collect::<Vec<_>>(),
    })
}

fn parse_quiver(v: &Value, path: &str) -> Result<OrientedQuiver, SchemaError> {
    let obj = object(v, path)?;
    let bp_path = join(path, "breakpoints");
    let breakpoints = array(field(obj, path, "breakpoints")?, &bp_path)?
        .iter()
        .enumerate()
        .map(|(i, x)| parse_coord(x, &format!("{bp_path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let seg_path = join(path, "segments");
    let segments = array(field(obj, path, "segments")?, &seg_path)?
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let p = format!("{seg_path}[{i}]");
            match string(s, &p)? {
                "ascending" => Ok(Orientation::Ascending),
                "descending" => Ok(Orientation::Descending),
                other => err(&p, format!("unknown orientation {other:?}")),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    OrientedQuiver::new(breakpoints, segments).map_err(|e| schema(path, &e.to_string()))
}

// ---- representations ----

fn matrix_value(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|s| Value::String(s.to_string())).collect()))
            .collect(),
    )
}

fn parse_matrix(v: &Value, path: &str, field: Field, shape: (usize, usize)) -> Result<Matrix, SchemaError> {
    let rows = array(v, path)?;
    if rows.len() != shape.0 {
        return err(path, format!("expected {} rows, found {}", shape.0, rows.len()));
    }
    let mut entries: Vec<Scalar> = Vec::with_capacity(shape.0 * shape.1);
    for (i, row) in rows.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let row = array(row, &rp)?;
        if row.len() != shape.1 {
            return err(&rp, format!("row has {} entries, expected {}", row.len(), shape.1));
        }
        for (j, e) in row.iter().enumerate() {
            let ep = format!("{rp}[{j}]");
            let s = field
                .parse_scalar(string(e, &ep)?)
                .map_err(|e| schema(&ep, &e.to_string()))?;
            entries.push(s);
        }
    }
    Ok(Matrix::from_scalars(field, shape.0, shape.1, entries).expect("entry count checked"))
}

pub fn rep_value(r: &Rep) -> Value {
    json!({
        "quiver": quiver_value(r.quiver()),
        "field": field_value(r.field()),
        "cuts": r.partition().cuts().iter().map(|&x| coord_value(x)).collect::<Vec<_>>(),
        "dims": r.dims(),
        "maps": r.maps().iter().map(matrix_value).collect::<Vec<_>>(),
    })
}

/// Parses a representation. Structural problems the shapes allow to be
/// represented (such as a breakpoint that is not a cut) are left for
/// [`Rep::validate`].
fn parse_rep(v: &Value, path: &str) -> Result<Rep, SchemaError> {
    let obj = object(v, path)?;
    let quiver = parse_quiver(field(obj, path, "quiver")?, &join(path, "quiver"))?;
    let field_kind = parse_field(field(obj, path, "field")?, &join(path, "field"))?;
    let cuts_path = join(path, "cuts");
    let cuts = array(field(obj, path, "cuts")?, &cuts_path)?
        .iter()
        .enumerate()
        .map(|(i, x)| parse_coord(x, &format!("{cuts_path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(i) = cuts.windows(2).position(|w| w[0] >= w[1]) {
        return err(&format!("{cuts_path}[{}]", i + 1), "cuts must be strictly increasing");
    }
    let partition = CellPartition::new(cuts);
    let dims_path = join(path, "dims");
    let dims = array(field(obj, path, "dims")?, &dims_path)?
        .iter()
        .enumerate()
        .map(|(i, d)| count(d, &format!("{dims_path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    if dims.len() != partition.cell_count() {
        return err(
            &dims_path,
            format!(
                "expected {} cell dimensions, found {}",
                partition.cell_count(),
                dims.len()
            ),
        );
    }
    let skeleton = Rep::from_parts(quiver, partition, field_kind, dims, Vec::new());
    let maps_path = join(path, "maps");
    let raw = array(field(obj, path, "maps")?, &maps_path)?;
    if raw.len() != skeleton.partition().link_count() {
        return err(
            &maps_path,
            format!(
                "expected {} maps, found {}",
                skeleton.partition().link_count(),
                raw.len()
            ),
        );
    }
    let maps = raw
        .iter()
        .enumerate()
        .map(|(j, m)| {
            let shape = (
                skeleton.dims()[skeleton.link_target(j)],
                skeleton.dims()[skeleton.link_source(j)],
            );
            parse_matrix(m, &format!("{maps_path}[{j}]"), field_kind, shape)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Rep::from_parts(
        skeleton.quiver().clone(),
        skeleton.partition().clone(),
        field_kind,
        skeleton.dims().to_vec(),
        maps,
    ))
}

// ---- bars and barcodes ----

fn endpoint_value(e: Endpoint) -> Value {
    match e {
        Endpoint::Infinite => Value::Null,
        Endpoint::Open(x) => json!({ "num": x.numer(), "den": x.denom(), "closed": false }),
        Endpoint::Closed(x) => json!({ "num": x.numer(), "den": x.denom(), "closed": true }),
    }
}

fn parse_endpoint(v: &Value, path: &str) -> Result<Endpoint, SchemaError> {
    if v.is_null() {
        return Ok(Endpoint::Infinite);
    }
    let x = parse_coord(v, path)?;
    let obj = object(v, path)?;
    let closed = field(obj, path, "closed")?
        .as_bool()
        .ok_or_else(|| schema(&join(path, "closed"), "expected a boolean"))?;
    Ok(if closed { Endpoint::Closed(x) } else { Endpoint::Open(x) })
}

pub fn bar_value(b: &Bar) -> Value {
    json!({ "lo": endpoint_value(b.lo()), "hi": endpoint_value(b.hi()) })
}

fn parse_bar(v: &Value, path: &str) -> Result<Bar, SchemaError> {
    let obj = object(v, path)?;
    let lo = parse_endpoint(field(obj, path, "lo")?, &join(path, "lo"))?;
    let hi = parse_endpoint(field(obj, path, "hi")?, &join(path, "hi"))?;
    Bar::new(lo, hi).map_err(|e| schema(path, &e.to_string()))
}

pub fn barcode_bars_value(bc: &Barcode) -> Value {
    Value::Array(
        bc.iter()
            .map(|(b, m)| {
                let mut v = bar_value(b);
                v["multiplicity"] = json!(m);
                v
            })
            .collect(),
    )
}

fn barcode_value(doc: &BarcodeDoc) -> Value {
    let mut v = json!({ "bars": barcode_bars_value(&doc.barcode) });
    if let Some(q) = &doc.quiver {
        v["quiver"] = quiver_value(q);
    }
    v
}

fn parse_barcode(v: &Value, path: &str) -> Result<BarcodeDoc, SchemaError> {
    let obj = object(v, path)?;
    let quiver = match obj.get("quiver") {
        None | Some(Value::Null) => None,
        Some(q) => Some(parse_quiver(q, &join(path, "quiver"))?),
    };
    let bars_path = join(path, "bars");
    let mut barcode = Barcode::new();
    for (i, entry) in array(field(obj, path, "bars")?, &bars_path)?.iter().enumerate() {
        let p = format!("{bars_path}[{i}]");
        let bar = parse_bar(entry, &p)?;
        let mult = match object(entry, &p)?.get("multiplicity") {
            None => 1,
            Some(m) => count(m, &join(&p, "multiplicity"))?,
        };
        if mult == 0 {
            return err(&join(&p, "multiplicity"), "multiplicity must be positive");
        }
        barcode.insert(bar, mult);
    }
    Ok(BarcodeDoc { quiver, barcode })
}

#[cfg(test)]
mod tests {
    use super::*;
    use quiver_reflect::quiver::Orientation::*;

    fn q013() -> OrientedQuiver {
        OrientedQuiver::new(
            vec![0.into(), 1.into(), 3.into()],
            vec![Ascending, Ascending, Descending, Descending],
        )
        .unwrap()
    }

    fn rep_text(entry: &str) -> String {
        // One bar [0, 1] over Q on the partition {0, 1, 3}.
        let maps: Vec<String> = (0..6)
            .map(|j| match j {
                0 | 3 => "[[]]".to_string(),
                1 | 2 => format!("[[\"{entry}\"]]"),
                4 | 5 => "[]".to_string(),
                _ => unreachable!(),
            })
            .collect();
        format!(
            r#"{{"kind":"rep","version":1,"payload":{{
              "quiver":{{"breakpoints":[{{"num":0,"den":1}},{{"num":2,"den":2}},{{"num":3,"den":1}}],
                        "segments":["ascending","ascending","descending","descending"]}},
              "field":"Q",
              "cuts":[{{"num":0,"den":1}},{{"num":1,"den":1}},{{"num":3,"den":1}}],
              "dims":[0,1,1,1,0,0,0],
              "maps":[{}]}}}}"#,
            maps.join(",")
        )
    }

    #[test]
    fn fractions_are_reduced() {
        let doc = parse(&rep_text("2/4")).unwrap();
        let text = serialize(&doc);
        assert!(text.contains("\"1/2\""));
        assert!(!text.contains("\"den\": 2"));
        assert_eq!(serialize(&parse(&text).unwrap()), text);
    }

    #[test]
    fn keys_are_sorted() {
        let text = serialize(&parse(&rep_text("1")).unwrap());
        let cuts = text.find("\"cuts\"").unwrap();
        let dims = text.find("\"dims\"").unwrap();
        let quiver = text.find("\"quiver\"").unwrap();
        assert!(cuts < dims && dims < quiver);
        assert!(text.find("\"kind\"").unwrap() < text.find("\"payload\"").unwrap());
    }

    #[test]
    fn bad_row_names_the_map() {
        let text = rep_text("1").replacen("[[\"1\"]]", "[[\"1\",\"0\"]]", 1);
        match parse(&text) {
            Err(SchemaError::Field { path, .. }) => assert_eq!(path, "payload.maps[1][0]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse("{\n  \"kind\": ") {
            Err(SchemaError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse("{\"kind\":\"rep\",\"version\":7,\"payload\":{}}"),
            Err(SchemaError::Field { .. })
        ));
    }

    #[test]
    fn barcode_documents_sort_bars() {
        let bc: Barcode = [
            Bar::closed(1.into(), 3.into()),
            Bar::point(0.into()),
            Bar::point(0.into()),
        ]
        .into_iter()
        .collect();
        let doc = Document::Barcode(BarcodeDoc {
            quiver: Some(q013()),
            barcode: bc,
        });
        let text = serialize(&doc);
        assert_eq!(parse(&text).unwrap(), doc);
        assert!(text.find("\"multiplicity\": 2").unwrap() < text.find("\"multiplicity\": 1").unwrap());
    }
}
