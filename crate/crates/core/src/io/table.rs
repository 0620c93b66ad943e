use std::collections::HashSet;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

impl Column {
    pub fn new(name: &str, unit: &str) -> Self {
        Column {
            name: name.to_owned(),
            unit: unit.to_owned(),
        }
    }
}

/// Per-node records on a rectangular grid, row-major with x fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldTable {
    /// Nodes per axis (x, y[, z]).
    pub shape: Vec<usize>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
}

impl FieldTable {
    pub fn new(shape: Vec<usize>, columns: Vec<Column>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let t = FieldTable {
            shape,
            columns,
            rows,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let expected: usize = self.shape.iter().product();
        if self.rows.len() != expected {
            return Err(Error::InvalidTable(format!(
                "{} rows for a grid of {expected} nodes",
                self.rows.len()
            )));
        }
        let mut seen = HashSet::new();
        for c in &self.columns {
            if c.unit.is_empty() {
                return Err(Error::InvalidTable(format!(
                    "column `{}` has no unit",
                    c.name
                )));
            }
            if !seen.insert(c.name.as_str()) {
                return Err(Error::InvalidTable(format!(
                    "duplicate column `{}`",
                    c.name
                )));
            }
        }
        if let Some(r) = self.rows.iter().find(|r| r.len() != self.columns.len()) {
            return Err(Error::InvalidTable(format!(
                "row with {} values for {} columns",
                r.len(),
                self.columns.len()
            )));
        }
        Ok(())
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::UnknownColumn(name.to_owned()))
    }

    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        let i = self.column_index(name)?;
        Ok(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn unit(&self, name: &str) -> Result<&str> {
        let i = self.column_index(name)?;
        Ok(&self.columns[i].unit)
    }

    /// (nx, ny) of a 2D table.
    pub fn shape_2d(&self) -> Result<(usize, usize)> {
        match self.shape.as_slice() {
            [nx, ny] => Ok((*nx, *ny)),
            _ => Err(Error::InvalidTable(format!(
                "expected a 2D table, got shape {:?}",
                self.shape
            ))),
        }
    }
}

/// Formats a binary64 with 17 significant digits, which round-trips exactly.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// `# name(unit),...` header, then one line per node, LF endings.
pub fn write_field_csv(table: &FieldTable, mut out: impl Write) -> Result<()> {
    table.validate()?;
    let header: Vec<String> = table
        .columns
        .iter()
        .map(|c| format!("{}({})", c.name, c.unit))
        .collect();
    writeln!(out, "# {}", header.join(","))?;
    let mut line = String::new();
    for row in &table.rows {
        line.clear();
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            line.push_str(&format_f64(*v));
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    out.flush()?;
    Ok(())
}

/// Reads back a CSV written by [`write_field_csv`]. The grid shape is not
/// stored in the file, so the result is a flat table.
pub fn read_field_csv(input: impl BufRead) -> Result<FieldTable> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidTable("empty file".into()))??;
    let header = header
        .strip_prefix("# ")
        .ok_or_else(|| Error::InvalidTable("missing `# ` header".into()))?;
    let columns = header
        .split(',')
        .map(|h| {
            let (name, rest) = h
                .split_once('(')
                .ok_or_else(|| Error::InvalidTable(format!("bad header field `{h}`")))?;
            let unit = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::InvalidTable(format!("bad header field `{h}`")))?;
            Ok(Column::new(name, unit))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for line in lines {
        let line = line?;
        let row = line
            .split(',')
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| Error::InvalidTable(format!("bad number `{v}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    FieldTable::new(vec![rows.len()], columns, rows)
}
