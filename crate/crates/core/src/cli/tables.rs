//! Table emission: `e_0`, `e^cusp_d`, half-integral `e_d` and `σ_d` on the
//! class grid, as Markdown, CSV or JSON.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::classes::{class_grid, RegSSClass};
use crate::error::{Error, Result};
use crate::projectors::{cusp_d_integral, e0, e_d_halfintegral, sigma};
use crate::scalar::{q_normalize, Depth};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TableKind {
    /// `e_0`.
    Table1,
    /// `e^cusp_d`, integral `d ≥ 1`.
    Table2,
    /// `e_d`, half-integral `d`.
    Table3,
    Sigma,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Table1 => "table1",
            TableKind::Table2 => "table2",
            TableKind::Table3 => "table3",
            TableKind::Sigma => "sigma",
        }
    }

    fn title(self) -> &'static str {
        match self {
            TableKind::Table1 => "e_0",
            TableKind::Table2 => "e^cusp_d",
            TableKind::Table3 => "e_d",
            TableKind::Sigma => "σ_d",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub table: TableKind,
    pub q: u64,
    pub depth: Depth,
    pub class: RegSSClass,
    pub value: BigRational,
}

/// One table for one `q` and one depth.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub kind: TableKind,
    pub q: u64,
    pub depth: Depth,
    pub rows: Vec<TableRow>,
}

fn build(kind: TableKind, q: u64, depth: Depth, grid: &[RegSSClass]) -> Result<Table> {
    let rows = grid
        .iter()
        .map(|c| {
            let value: BigRational = match kind {
                TableKind::Table1 => e0(q, c),
                TableKind::Table2 => cusp_d_integral(q, depth, c)?,
                TableKind::Table3 => e_d_halfintegral(q, depth, c)?,
                TableKind::Sigma => sigma(q, depth, c),
            };
            Ok(TableRow { table: kind, q, depth, class: *c, value })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table { kind, q, depth, rows })
}

/// Every table for every `q`, over `class_grid(q, depth_max)`, in canonical order.
pub fn build_tables(q_list: &[u64], depth_max: Depth) -> Result<Vec<Table>> {
    let mut out = Vec::new();
    for &q in q_list {
        let grid = class_grid(q, depth_max);
        out.push(build(TableKind::Table1, q, Depth::ZERO, &grid)?);
        for d in depth_max.up_to().filter(|d| *d != Depth::ZERO) {
            let kind = if d.is_integral() { TableKind::Table2 } else { TableKind::Table3 };
            out.push(build(kind, q, d, &grid)?);
        }
        for d in depth_max.up_to() {
            out.push(build(TableKind::Sigma, q, d, &grid)?);
        }
    }
    out.sort_by_key(|t| (t.kind, t.q, t.depth));
    Ok(out)
}

pub(crate) fn big_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub const CSV_HEADER: [&str; 7] = ["table", "q", "depth", "class", "value_num", "value_den", "q_exponent"];

fn csv_record(r: &TableRow) -> [String; 7] {
    let n = q_normalize(&r.value, r.q);
    [
        r.table.name().to_string(),
        r.q.to_string(),
        r.depth.to_string(),
        r.class.to_string(),
        n.num.to_string(),
        n.den.to_string(),
        n.q_exponent.to_string(),
    ]
}

/// CSV with a header line.
pub fn rows_to_csv<'a, I: IntoIterator<Item = &'a TableRow>>(rows: I) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let wrap = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
    w.write_record(CSV_HEADER).map_err(wrap)?;
    for r in rows {
        w.write_record(csv_record(r)).map_err(wrap)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidInput(format!("csv: {e}")))
}

pub fn table_json(t: &Table) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| {
            let n = q_normalize(&r.value, r.q);
            json!({
                "class": r.class.to_string(),
                "value_num": big_json(&n.num),
                "value_den": big_json(&n.den),
                "q_exponent": n.q_exponent,
            })
        })
        .collect();
    json!({ "table": t.kind.name(), "q": t.q, "depth": t.depth.to_string(), "rows": rows })
}

fn normalized_text(v: &BigRational, q: u64) -> String {
    let n = q_normalize(v, q);
    let coeff = if n.den == BigInt::from(1) { n.num.to_string() } else { format!("{}/{}", n.num, n.den) };
    match n.q_exponent {
        0 => coeff,
        e => format!("{coeff}·q^{e}"),
    }
}

pub fn table_markdown(t: &Table) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "## {} ({}), q = {}, d = {}\n", t.kind.name(), t.kind.title(), t.q, t.depth);
    s.push_str("| class | value | normalized |\n|---|---:|---:|\n");
    for r in &t.rows {
        let _ = writeln!(s, "| {} | {} | {} |", r.class, r.value, normalized_text(&r.value, r.q));
    }
    s
}

pub fn render_tables(tables: &[Table], format: super::Format) -> Result<String> {
    Ok(match format {
        super::Format::Md => tables.iter().map(table_markdown).collect::<Vec<_>>().join("\n"),
        super::Format::Csv => rows_to_csv(tables.iter().flat_map(|t| &t.rows))?,
        super::Format::Json => {
            let v: Vec<Value> = tables.iter().map(table_json).collect();
            serde_json::to_string_pretty(&v).map_err(|e| Error::InvalidInput(format!("json: {e}")))? + "\n"
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let t = build_tables(&[3], Depth::integral(1)).unwrap();
        let kinds: Vec<_> = t.iter().map(|x| (x.kind, x.depth.to_string())).collect();
        assert_eq!(
            kinds,
            vec![
                (TableKind::Table1, "0".into()),
                (TableKind::Table2, "1".into()),
                (TableKind::Table3, "1/2".into()),
                (TableKind::Sigma, "0".into()),
                (TableKind::Sigma, "1/2".into()),
                (TableKind::Sigma, "1".into()),
            ]
        );
        let csv = render_tables(&t, super::super::Format::Csv).unwrap();
        assert!(csv.starts_with("table,q,depth,class,value_num,value_den,q_exponent\n"));
        assert!(csv.contains("sigma,3,1,split:+1:m=2,40,1,3\n"));
    }
}
