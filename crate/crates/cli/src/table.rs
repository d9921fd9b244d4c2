use serde_json::{Map, Value};
use wallcross::rational::{fmt_q, Q};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Bool(bool),
    Rational(Q),
    Text(String),
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    fn to_field(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Rational(x) => fmt_q(x),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_value(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Bool(b) => Value::from(*b),
            Cell::Rational(x) => Value::from(fmt_q(x)),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

/// Rows of named cells rendered identically as CSV or JSON.
#[derive(Clone, Debug, Default)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn to_json(&self, schema_version: u32, command: &str, meta: Option<Value>) -> serde_json::Result<String> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().cloned().zip(row.iter().map(Cell::to_value)).collect();
                Value::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("schema_version".into(), Value::from(schema_version));
        doc.insert("command".into(), Value::from(command));
        doc.insert("columns".into(), Value::from(self.columns.clone()));
        doc.insert("rows".into(), Value::Array(rows));
        if let Some(m) = meta {
            doc.insert("meta".into(), m);
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(doc))?;
        s.push('\n');
        Ok(s)
    }

    /// Metadata, when present, goes into leading `#` comment lines.
    pub fn to_csv(&self, meta: Option<Value>) -> Result<String, Box<dyn std::error::Error>> {
        let mut out = String::new();
        if let Some(Value::Object(m)) = meta {
            for (k, v) in m {
                out.push_str(&format!("# {k}: {v}\n"));
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_field))?;
        }
        out.push_str(&String::from_utf8(w.into_inner()?)?);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wallcross::rational::frac;

    fn sample() -> Table {
        let mut t = Table::new(&["name", "value", "n", "flag", "note"]);
        t.push(vec![Cell::text("a,b"), Cell::Rational(frac(-3, 6)), Cell::Int(4), Cell::Bool(true), Cell::Empty]);
        t
    }

    #[test]
    fn csv_quotes_and_rationals() {
        let s = sample().to_csv(None).unwrap();
        assert_eq!(s, "name,value,n,flag,note\n\"a,b\",-1/2,4,true,\n");
    }

    #[test]
    fn json_matches_csv_content() {
        let v: Value = serde_json::from_str(&sample().to_json(1, "test", None).unwrap()).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["rows"][0]["value"], "-1/2");
        assert_eq!(v["rows"][0]["n"], 4);
        assert!(v["rows"][0]["note"].is_null());
        assert!(v.get("meta").is_none());
    }
}
