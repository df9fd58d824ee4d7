//! Rendering of computed records to text, CSV, and JSON.
//!
//! All three formats print interval endpoints as directed decimals (lower
//! endpoint rounded down, upper rounded up), so a printed interval is still
//! an enclosure of the underlying quantity. Output is a pure function of
//! the inputs — byte-identical across runs and thread counts.

use rug::Integer;
use serde_json::{json, Map, Value};
use std::fmt::Write as _;

/// Every input that affects the numbers in a record.
#[derive(Debug, Clone)]
pub struct ParamsOut {
    pub precision_bits: u32,
    pub cutoff_a: Option<u32>,
    pub subdivisions_n: Option<u64>,
    pub grid_n: Option<u32>,
}

impl ParamsOut {
    fn json(&self) -> Value {
        json!({
            "precision_bits": self.precision_bits,
            "cutoff_a": self.cutoff_a,
            "subdivisions_N": self.subdivisions_n,
            "grid_N": self.grid_n,
        })
    }

    fn text(&self) -> String {
        let mut s = format!("precision {} bits", self.precision_bits);
        if let Some(a) = self.cutoff_a {
            let _ = write!(s, ", cutoff a = {a}");
        }
        if let Some(n) = self.subdivisions_n {
            let _ = write!(s, ", subdivisions N = {n}");
        }
        if let Some(g) = self.grid_n {
            let _ = write!(s, ", grid N = {g}");
        }
        s
    }

    fn csv_cells(&self) -> String {
        format!(
            "{},{},{},{}",
            self.precision_bits,
            self.cutoff_a.map(|a| a.to_string()).unwrap_or_default(),
            self.subdivisions_n.map(|n| n.to_string()).unwrap_or_default(),
            self.grid_n.map(|g| g.to_string()).unwrap_or_default(),
        )
    }
}

/// One computed quantity, ready to render.
#[derive(Debug, Clone)]
pub struct OutputRecord {
    /// `mean_width`, `theta`, `hadwiger`, or `rogers_r`.
    pub quantity: &'static str,
    pub n: u32,
    /// `general` / `symmetric` for body-class-dependent quantities.
    pub class: Option<&'static str>,
    pub value_lo: String,
    pub value_hi: String,
    /// Present exactly for `hadwiger` records.
    pub integer: Option<Integer>,
    pub method: String,
    pub params: ParamsOut,
    /// Human-readable headline for the text format.
    pub title: String,
    /// Multi-line derivation trace (text format only).
    pub detail: Option<String>,
}

/// JSON value for an arbitrary-size integer: a number when it fits an u64,
/// a decimal string beyond that.
fn integer_json(i: &Integer) -> Value {
    match i.to_u64() {
        Some(v) => Value::from(v),
        None => Value::from(i.to_string()),
    }
}

pub fn render_record_text(r: &OutputRecord) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", r.title);
    if let Some(i) = &r.integer {
        let _ = writeln!(s, "  integer bound: {i}");
    }
    let _ = writeln!(s, "  enclosure: [{}, {}]", r.value_lo, r.value_hi);
    let _ = writeln!(s, "  method: {}", r.method);
    let _ = writeln!(s, "  params: {}", r.params.text());
    if let Some(d) = &r.detail {
        let _ = writeln!(s, "  derivation:");
        for line in d.lines() {
            let _ = writeln!(s, "    {line}");
        }
    }
    s
}

pub fn render_record_csv(r: &OutputRecord) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "quantity,n,class,value_lo,value_hi,integer,method,precision_bits,cutoff_a,subdivisions_N,grid_N"
    );
    let _ = writeln!(
        s,
        "{},{},{},{},{},{},{},{}",
        r.quantity,
        r.n,
        r.class.unwrap_or_default(),
        r.value_lo,
        r.value_hi,
        r.integer.as_ref().map(|i| i.to_string()).unwrap_or_default(),
        r.method,
        r.params.csv_cells(),
    );
    s
}

pub fn render_record_json(r: &OutputRecord) -> String {
    let mut obj = Map::new();
    obj.insert("quantity".into(), Value::from(r.quantity));
    obj.insert("n".into(), Value::from(r.n));
    obj.insert(
        "class".into(),
        r.class.map(Value::from).unwrap_or(Value::Null),
    );
    obj.insert("value_lo".into(), Value::from(r.value_lo.clone()));
    obj.insert("value_hi".into(), Value::from(r.value_hi.clone()));
    obj.insert(
        "integer".into(),
        r.integer.as_ref().map(integer_json).unwrap_or(Value::Null),
    );
    obj.insert("method".into(), Value::from(r.method.clone()));
    obj.insert("params".into(), r.params.json());
    let mut s = Value::Object(obj).to_string();
    s.push('\n');
    s
}

/// One row of an integer-bound table.
#[derive(Debug, Clone)]
pub struct BoundRow {
    pub n: u32,
    pub bound: Integer,
    pub method: String,
    /// Citation for externally sourced rows, empty otherwise.
    pub comment: String,
}

/// One row of the covering-density-minimum table.
#[derive(Debug, Clone)]
pub struct RogersRow {
    pub n: u32,
    pub r_hi: String,
}

/// The three tables plus the parameters that produced them.
#[derive(Debug, Clone)]
pub struct TablesOut {
    pub params: ParamsOut,
    pub general: Vec<BoundRow>,
    pub symmetric: Vec<BoundRow>,
    pub rogers: Vec<RogersRow>,
}

const GENERAL_TITLE: &str = "general covering bounds";
const SYMMETRIC_TITLE: &str = "symmetric covering bounds";
const ROGERS_TITLE: &str = "rogers covering-density minima";

pub fn render_tables_text(t: &TablesOut) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "params: {}", t.params.text());
    for (title, rows) in [(GENERAL_TITLE, &t.general), (SYMMETRIC_TITLE, &t.symmetric)] {
        let _ = writeln!(s, "\n{title}");
        let _ = writeln!(s, "  {:>3}  {:>12}  {:<8}  comment", "n", "bound", "method");
        for row in rows {
            let line = format!(
                "  {:>3}  {:>12}  {:<8}  {}",
                row.n, row.bound, row.method, row.comment
            );
            let _ = writeln!(s, "{}", line.trim_end());
        }
    }
    let _ = writeln!(s, "\n{ROGERS_TITLE}");
    let _ = writeln!(s, "  {:>3}  {:>14}", "n", "r_n (ceiled)");
    for row in &t.rogers {
        let _ = writeln!(s, "  {:>3}  {:>14}", row.n, row.r_hi);
    }
    s
}

pub fn render_tables_csv(t: &TablesOut) -> String {
    let mut s = String::new();
    for (title, rows) in [(GENERAL_TITLE, &t.general), (SYMMETRIC_TITLE, &t.symmetric)] {
        let _ = writeln!(s, "# {title}");
        let _ = writeln!(s, "n,bound,method,comment");
        for row in rows {
            let _ = writeln!(s, "{},{},{},{}", row.n, row.bound, row.method, row.comment);
        }
        let _ = writeln!(s);
    }
    let _ = writeln!(s, "# {ROGERS_TITLE}");
    let _ = writeln!(s, "n,r_hi");
    for row in &t.rogers {
        let _ = writeln!(s, "{},{}", row.n, row.r_hi);
    }
    s
}

pub fn render_tables_json(t: &TablesOut) -> String {
    let bound_rows = |rows: &[BoundRow]| -> Value {
        Value::from(
            rows.iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "bound": integer_json(&r.bound),
                        "method": r.method,
                        "comment": r.comment,
                    })
                })
                .collect::<Vec<_>>(),
        )
    };
    let rogers_rows = Value::from(
        t.rogers
            .iter()
            .map(|r| json!({"n": r.n, "r_hi": r.r_hi}))
            .collect::<Vec<_>>(),
    );
    let doc = json!({
        "params": t.params.json(),
        "tables": {
            "general": bound_rows(&t.general),
            "symmetric": bound_rows(&t.symmetric),
            "rogers": rogers_rows,
        },
    });
    let mut s = doc.to_string();
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_params() -> ParamsOut {
        ParamsOut {
            precision_bits: 128,
            cutoff_a: Some(20),
            subdivisions_n: Some(1000),
            grid_n: None,
        }
    }

    #[test]
    fn record_renders_in_all_three_formats() {
        let r = OutputRecord {
            quantity: "hadwiger",
            n: 6,
            class: Some("general"),
            value_lo: "6137.351142".into(),
            value_hi: "6137.757928".into(),
            integer: Some(Integer::from(6137)),
            method: "john".into(),
            params: sample_params(),
            title: "covering bound, n = 6, general".into(),
            detail: Some("W_0: volume <= 272.247810".into()),
        };
        let text = render_record_text(&r);
        assert!(text.contains("integer bound: 6137"));
        assert!(text.contains("derivation:"));

        let csv = render_record_csv(&r);
        assert!(csv.starts_with("quantity,n,class,"));
        assert!(csv.contains("hadwiger,6,general,6137.351142,6137.757928,6137,john,128,20,1000,"));

        let j: Value = serde_json::from_str(&render_record_json(&r)).unwrap();
        assert_eq!(j["integer"], 6137);
        assert_eq!(j["value_lo"], "6137.351142");
        assert_eq!(j["params"]["subdivisions_N"], 1000);
        assert_eq!(j["params"]["grid_N"], Value::Null);
    }

    #[test]
    fn json_integer_falls_back_to_string_when_too_large() {
        let huge = Integer::from(Integer::u_pow_u(10, 30));
        assert_eq!(integer_json(&huge), Value::from(huge.to_string()));
        assert_eq!(integer_json(&Integer::from(7)), Value::from(7u64));
    }

    #[test]
    fn tables_render_with_sections_and_compact_rows() {
        let t = TablesOut {
            params: sample_params(),
            general: vec![
                BoundRow { n: 3, bound: Integer::from(14), method: "external".into(), comment: "Prymak 2023".into() },
                BoundRow { n: 9, bound: Integer::from(2_064_332), method: "rogers".into(), comment: String::new() },
            ],
            symmetric: vec![BoundRow { n: 3, bound: Integer::from(8), method: "external".into(), comment: "Lassak 1984".into() }],
            rogers: vec![RogersRow { n: 8, r_hi: "36.603890".into() }],
        };
        let csv = render_tables_csv(&t);
        assert!(csv.contains("# general covering bounds\n"));
        assert!(csv.contains("\n9,2064332,rogers,\n"));
        assert!(csv.contains("\n3,14,external,Prymak 2023\n"));

        let json = render_tables_json(&t);
        assert!(json.contains(r#"{"n":8,"r_hi":"36.603890"}"#));
        let parsed: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["tables"]["general"][1]["bound"], 2_064_332);

        let text = render_tables_text(&t);
        assert!(text.contains("rogers covering-density minima"));
    }
}
