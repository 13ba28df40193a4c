//! Deterministic run reports: tab-separated tables with `#` comment lines, or
//! one JSON object. Reals print at 12 significant digits in `%g` style.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(BigUint),
    Real(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Real(x) => format_g(*x),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(n) => match n.to_u64() {
                Some(v) => json!(v),
                None => json!(n.to_string()),
            },
            Cell::Real(x) => real_json(*x),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<BigUint> for Cell {
    fn from(n: BigUint) -> Self {
        Cell::Int(n)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n.into())
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub title: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: Vec<&'static str>) -> Self {
        Table {
            title: title.into(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub command: String,
    pub input_sha256: String,
    pub notices: Vec<String>,
    pub tables: Vec<Table>,
    /// Footer facts, in insertion order.
    pub facts: Vec<(String, Cell)>,
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn new(command: String, input_sha256: String) -> Self {
        Report {
            command,
            input_sha256,
            ..Default::default()
        }
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl Into<Cell>) {
        self.facts.push((key.into(), value.into()));
    }

    pub fn verdict(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!(
            "# command: {}\n# input-sha256: {}\n",
            self.command, self.input_sha256
        );
        for n in &self.notices {
            out += &format!("# notice: {n}\n");
        }
        for t in &self.tables {
            out += &format!("# table: {}\n{}\n", t.title, t.columns.join("\t"));
            for row in &t.rows {
                out += &row.iter().map(Cell::render).collect::<Vec<_>>().join("\t");
                out.push('\n');
            }
        }
        for (k, v) in &self.facts {
            out += &format!("# {k}: {}\n", v.render());
        }
        for v in &self.verdicts {
            let status = if v.pass { "PASS" } else { "FAIL" };
            out += &format!("# verdict: {}: {status} ({})\n", v.name, v.detail);
        }
        out
    }

    pub fn to_json(&self) -> String {
        let tables: Vec<Value> = self
            .tables
            .iter()
            .map(|t| {
                let rows: Vec<Value> = t
                    .rows
                    .iter()
                    .map(|r| {
                        let obj: Map<String, Value> = t
                            .columns
                            .iter()
                            .zip(r)
                            .map(|(c, v)| (c.to_string(), v.to_json()))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                json!({ "title": t.title, "columns": t.columns, "rows": rows })
            })
            .collect();
        let facts: Map<String, Value> = self
            .facts
            .iter()
            .map(|(k, v)| (k.clone(), v.to_json()))
            .collect();
        let verdicts: Vec<Value> = self
            .verdicts
            .iter()
            .map(|v| json!({ "name": v.name, "pass": v.pass, "detail": v.detail }))
            .collect();
        let report = json!({
            "command": self.command,
            "input_sha256": self.input_sha256,
            "notices": self.notices,
            "tables": tables,
            "facts": facts,
            "verdicts": verdicts,
            "pass": self.all_pass(),
        });
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        s
    }
}

/// JSON number carrying the same 12 significant digits as the table output.
fn real_json(x: f64) -> Value {
    if !x.is_finite() {
        return json!(format_g(x));
    }
    let rounded: f64 = format_g(x).parse().expect("formatted real parses");
    json!(rounded)
}

/// `printf("%.12g")`.
pub fn format_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let p = SIGNIFICANT_DIGITS;
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_format_matches_printf() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (-1.0, "-1"),
            (30f64.ln(), "3.40119738166"),
            (6f64.ln(), "1.79175946923"),
            (0.5, "0.5"),
            (1e-5, "1e-05"),
            (0.0001234, "0.0001234"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (9.9999999999996, "10"),
            (2.5e-13, "2.5e-13"),
            (f64::INFINITY, "inf"),
        ];
        for (x, s) in cases {
            assert_eq!(format_g(x), s, "{x}");
        }
    }

    #[test]
    fn tsv_layout() {
        let mut r = Report::new("kentropy entropy".into(), "00".into());
        let mut t = Table::new("entropy", vec!["n", "a_n"]);
        t.push(vec![1u64.into(), 0.5.into()]);
        r.tables.push(t);
        r.fact("estimate", 0.25);
        r.verdict("bound", true, "ok");
        assert_eq!(
            r.to_tsv(),
            "# command: kentropy entropy\n# input-sha256: 00\n# table: entropy\nn\ta_n\n1\t0.5\n\
             # estimate: 0.25\n# verdict: bound: PASS (ok)\n"
        );
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["tables"][0]["rows"][0]["a_n"], json!(0.5));
        assert_eq!(v["pass"], json!(true));
    }
}
