use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}
impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}
impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// One command's result: the echoed inputs plus a rectangular table.
#[derive(Debug, Clone)]
pub struct Record {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Record {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Record {
            command,
            inputs: Map::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros trimmed.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.11e}");
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}"))
    } else {
        format!("{}e{}", trim_zeros(mant), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn csv_field(c: &Cell) -> String {
    match c {
        Cell::Num(v) => fmt_num(*v),
        Cell::Int(i) => i.to_string(),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
    }
}

fn json_value(c: &Cell) -> Value {
    match c {
        Cell::Num(v) => fmt_num(*v)
            .parse::<f64>()
            .ok()
            .and_then(serde_json::Number::from_f64)
            .map_or(Value::Null, Value::Number),
        Cell::Int(i) => Value::from(*i),
        Cell::Text(s) => Value::from(s.as_str()),
    }
}

pub fn render(rec: &Record, format: Format, meta: &[(String, String)]) -> String {
    match format {
        Format::Csv => {
            let mut out = rec.columns.join(",");
            out.push('\n');
            for row in &rec.rows {
                let line: Vec<String> = row.iter().map(csv_field).collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
            for (k, v) in meta {
                out.push_str(&format!("# {k}: {v}\n"));
            }
            out
        }
        Format::Json => {
            let mut top = Map::new();
            top.insert("schema_version".into(), "1".into());
            top.insert("command".into(), rec.command.into());
            top.insert("inputs".into(), Value::Object(rec.inputs.clone()));
            let rows = rec
                .rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = rec
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(k, c)| (k.to_string(), json_value(c)))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            top.insert("rows".into(), Value::Array(rows));
            if !meta.is_empty() {
                let m: Map<String, Value> = meta.iter().map(|(k, v)| (k.clone(), Value::from(v.as_str()))).collect();
                top.insert("meta".into(), Value::Object(m));
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("serializable");
            s.push('\n');
            s
        }
    }
}
