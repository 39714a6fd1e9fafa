//! CSV readers and writers for edges, attributes, labels, groups and rankings.

use std::collections::HashMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{
    build_graph, standardize_attributes, AttributeMatrix, GroupAssignment, LabelSet,
    WeightedDigraph,
};
use crate::rankers::RankVector;
use crate::scalar::Scalar;

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_err(name: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: name.to_string(),
        line,
        message: message.into(),
    }
}

struct Table {
    header: Vec<String>,
    // (line number, fields)
    rows: Vec<(usize, Vec<String>)>,
}

fn read_table<R: Read>(reader: R, name: &str) -> Result<Table> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| parse_err(name, 1, e.to_string()))?
        .iter()
        .map(|s| s.trim_start_matches('\u{feff}').to_string())
        .collect();
    let mut rows = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| parse_err(name, line, e.to_string()))?;
        rows.push((line, record.iter().map(str::to_string).collect()));
    }
    Ok(Table { header, rows })
}

fn expect_header(table: &Table, name: &str, expected: &[&str]) -> Result<()> {
    if table.header.len() != expected.len()
        || table.header.iter().zip(expected).any(|(h, e)| h != e)
    {
        return Err(parse_err(
            name,
            1,
            format!(
                "expected header `{}`, found `{}`",
                expected.join(","),
                table.header.join(",")
            ),
        ));
    }
    Ok(())
}

fn parse_real(name: &str, line: usize, field: &str, what: &str) -> Result<f64> {
    field
        .parse::<f64>()
        .map_err(|_| parse_err(name, line, format!("{what} `{field}` is not a number")))
}

/// Reads an edge list with header `source,target,weight`.
pub fn read_edges<T: Scalar, R: Read>(reader: R, name: &str) -> Result<WeightedDigraph<T>> {
    let table = read_table(reader, name)?;
    expect_header(&table, name, &["source", "target", "weight"])?;
    let mut records = Vec::with_capacity(table.rows.len());
    for (line, fields) in &table.rows {
        let w = parse_real(name, *line, &fields[2], "weight")?;
        if w < 0.0 {
            return Err(parse_err(
                name,
                *line,
                format!("negative weight {w} on edge {} -> {}", fields[0], fields[1]),
            ));
        }
        records.push((fields[0].clone(), fields[1].clone(), T::lit(w)));
    }
    build_graph(records)
}

pub fn read_edges_path<T: Scalar>(path: &Path) -> Result<WeightedDigraph<T>> {
    read_edges(open(path)?, &path.display().to_string())
}

/// Maps an id column onto graph indices, requiring every graph node exactly
/// once when `total` is set.
fn align_ids<T: Scalar>(
    graph: &WeightedDigraph<T>,
    ids: &[(usize, String)],
    name: &str,
    total: bool,
) -> Result<Vec<usize>> {
    let unknown: Vec<String> = ids
        .iter()
        .filter(|(_, id)| graph.node_index(id).is_none())
        .map(|(_, id)| id.clone())
        .collect();
    if !unknown.is_empty() {
        return Err(Error::UnknownNodes {
            context: name.to_string(),
            ids: unknown,
        });
    }
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut dups = Vec::new();
    let mut idx = Vec::with_capacity(ids.len());
    for (line, id) in ids {
        let i = graph.node_index(id).expect("checked above");
        if seen.insert(i, *line).is_some() {
            dups.push(id.clone());
        }
        idx.push(i);
    }
    if !dups.is_empty() {
        return Err(Error::DuplicateNodes {
            context: name.to_string(),
            ids: dups,
        });
    }
    if total && seen.len() != graph.node_count() {
        let missing: Vec<String> = (0..graph.node_count())
            .filter(|i| !seen.contains_key(i))
            .map(|i| graph.node_id(i).to_string())
            .collect();
        return Err(Error::MissingNodes {
            context: name.to_string(),
            ids: missing,
        });
    }
    Ok(idx)
}

/// Reads `node_id,<attr_1>,...` and standardizes the columns. Rows are
/// returned in graph index order.
pub fn read_attributes<T: Scalar, R: Read>(
    reader: R,
    name: &str,
    graph: &WeightedDigraph<T>,
) -> Result<AttributeMatrix<T>> {
    let table = read_table(reader, name)?;
    if table.header.len() < 2 || table.header[0] != "node_id" {
        return Err(parse_err(
            name,
            1,
            "expected header `node_id,<attr_1>,...,<attr_m>`",
        ));
    }
    let names: Vec<String> = table.header[1..].to_vec();
    let ids: Vec<(usize, String)> = table.rows.iter().map(|(l, f)| (*l, f[0].clone())).collect();
    let idx = align_ids(graph, &ids, name, true)?;
    let mut raw = vec![Vec::new(); graph.node_count()];
    for ((line, fields), &i) in table.rows.iter().zip(&idx) {
        if fields.len() != names.len() + 1 {
            return Err(parse_err(name, *line, "wrong number of fields"));
        }
        raw[i] = fields[1..]
            .iter()
            .map(|f| parse_real(name, *line, f, "attribute").map(T::lit))
            .collect::<Result<_>>()?;
    }
    standardize_attributes(&raw, names)
}

pub fn read_attributes_path<T: Scalar>(
    path: &Path,
    graph: &WeightedDigraph<T>,
) -> Result<AttributeMatrix<T>> {
    read_attributes(open(path)?, &path.display().to_string(), graph)
}

/// Reads `node_id,label`.
pub fn read_labels<T: Scalar, R: Read>(
    reader: R,
    name: &str,
    graph: &WeightedDigraph<T>,
) -> Result<LabelSet> {
    let table = read_table(reader, name)?;
    expect_header(&table, name, &["node_id", "label"])?;
    let ids: Vec<(usize, String)> = table.rows.iter().map(|(l, f)| (*l, f[0].clone())).collect();
    let idx = align_ids(graph, &ids, name, false)?;
    let entries = table
        .rows
        .iter()
        .zip(idx)
        .map(|((line, f), i)| Ok((i, parse_real(name, *line, &f[1], "label")?)))
        .collect::<Result<Vec<_>>>()?;
    LabelSet::new(entries, graph.node_count())
}

pub fn read_labels_path<T: Scalar>(path: &Path, graph: &WeightedDigraph<T>) -> Result<LabelSet> {
    read_labels(open(path)?, &path.display().to_string(), graph)
}

/// Reads `node_id,group` covering every graph node.
pub fn read_groups<T: Scalar, R: Read>(
    reader: R,
    name: &str,
    graph: &WeightedDigraph<T>,
) -> Result<GroupAssignment> {
    let table = read_table(reader, name)?;
    expect_header(&table, name, &["node_id", "group"])?;
    let ids: Vec<(usize, String)> = table.rows.iter().map(|(l, f)| (*l, f[0].clone())).collect();
    let idx = align_ids(graph, &ids, name, true)?;
    let mut labels = vec![0i64; graph.node_count()];
    for ((line, f), i) in table.rows.iter().zip(idx) {
        labels[i] = f[1]
            .parse()
            .map_err(|_| parse_err(name, *line, format!("group `{}` is not an integer", f[1])))?;
    }
    GroupAssignment::from_labels(&labels)
}

pub fn read_groups_path<T: Scalar>(
    path: &Path,
    graph: &WeightedDigraph<T>,
) -> Result<GroupAssignment> {
    read_groups(open(path)?, &path.display().to_string(), graph)
}

/// Formats like C's `%.{digits}g`.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
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

/// Writes `node_id,score,rank` rows in node index order.
pub fn write_ranks<T: Scalar, W: Write>(
    out: W,
    graph: &WeightedDigraph<T>,
    ranks: &RankVector<T>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io {
        path: "<rank output>".into(),
        source: std::io::Error::other(e),
    };
    w.write_record(["node_id", "score", "rank"]).map_err(io)?;
    for i in 0..graph.node_count() {
        w.write_record([
            graph.node_id(i).to_string(),
            format_significant(ranks.scores[i].as_f64(), 12),
            ranks.ranks[i].to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|source| Error::Io {
        path: "<rank output>".into(),
        source,
    })
}

/// Reads the first two columns of `node_id,<value>[,...]` without resolving
/// ids against a graph. Duplicate ids are rejected.
pub fn read_values<R: Read>(reader: R, name: &str) -> Result<(String, Vec<(String, f64)>)> {
    let table = read_table(reader, name)?;
    if table.header.len() < 2 || table.header[0] != "node_id" {
        return Err(parse_err(name, 1, "expected header `node_id,<value>`"));
    }
    let mut seen = HashMap::new();
    let mut dups = Vec::new();
    let mut values = Vec::with_capacity(table.rows.len());
    for (line, f) in &table.rows {
        if f.len() < 2 || f[0].is_empty() {
            return Err(parse_err(name, *line, "expected a node id and a value"));
        }
        let v = parse_real(name, *line, &f[1], &table.header[1])?;
        if !v.is_finite() {
            return Err(parse_err(
                name,
                *line,
                format!("{} `{}` is not finite", table.header[1], f[1]),
            ));
        }
        if seen.insert(f[0].clone(), *line).is_some() {
            dups.push(f[0].clone());
        }
        values.push((f[0].clone(), v));
    }
    if !dups.is_empty() {
        return Err(Error::DuplicateNodes {
            context: name.to_string(),
            ids: dups,
        });
    }
    Ok((table.header[1].clone(), values))
}

pub fn read_values_path(path: &Path) -> Result<(String, Vec<(String, f64)>)> {
    read_values(open(path)?, &path.display().to_string())
}

/// Writes a two-column `node_id,<column>` table; `None` leaves the value empty.
pub fn write_values<W: Write>(out: W, column: &str, rows: &[(String, Option<f64>)]) -> Result<()> {
    let io = |e: csv::Error| Error::Io {
        path: "<value output>".into(),
        source: std::io::Error::other(e),
    };
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["node_id", column]).map_err(io)?;
    for (id, v) in rows {
        let v = v.map(|x| format_significant(x, 12)).unwrap_or_default();
        w.write_record([id.as_str(), v.as_str()]).map_err(io)?;
    }
    w.flush().map_err(|source| Error::Io {
        path: "<value output>".into(),
        source,
    })
}

/// Reads `node_id,score[,rank]` back into per-node scores keyed by graph-free ids.
pub fn read_scores<R: Read>(reader: R, name: &str) -> Result<Vec<(String, f64)>> {
    let table = read_table(reader, name)?;
    if table.header.len() < 2 || table.header[0] != "node_id" || table.header[1] != "score" {
        return Err(parse_err(name, 1, "expected header `node_id,score,rank`"));
    }
    table
        .rows
        .iter()
        .map(|(line, f)| Ok((f[0].clone(), parse_real(name, *line, &f[1], "score")?)))
        .collect()
}
