//! Plain-text edge lists.
//!
//! ```text
//! n m
//! u v      (m lines, 0 <= u < v < n)
//! ```
//!
//! Fields are whitespace separated. Blank lines are ignored.

use std::io::{BufRead, Write};

use super::{Graph, Vertex};
use crate::error::{Error, Result};

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut lines = reader
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));

    let (line_no, header) = match lines.next() {
        Some((no, l)) => (no, l?),
        None => return Err(Error::parse(1, "missing header line \"n m\"")),
    };
    let (n, m) = parse_pair::<usize>(&header, line_no)?;
    if n > Vertex::MAX as usize {
        return Err(Error::parse(
            line_no,
            format!("n = {n} exceeds vertex id range"),
        ));
    }

    let mut edges = Vec::with_capacity(m);
    for (no, line) in lines.by_ref() {
        let line = line?;
        let (u, v) = parse_pair::<Vertex>(&line, no)?;
        if u as usize >= n || v as usize >= n {
            return Err(Error::parse(no, format!("vertex out of range for n = {n}")));
        }
        if u == v {
            return Err(Error::parse(no, format!("self-loop at vertex {u}")));
        }
        if u > v {
            return Err(Error::parse(no, format!("expected u < v, got {u} {v}")));
        }
        edges.push(((u, v), no));
        if edges.len() > m {
            return Err(Error::parse(
                no,
                format!("more than the declared {m} edges"),
            ));
        }
    }
    if edges.len() != m {
        return Err(Error::parse(
            line_no,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    edges.sort_unstable();
    if let Some(w) = edges.windows(2).find(|w| w[0].0 == w[1].0) {
        let (u, v) = w[0].0;
        let later = w[0].1.max(w[1].1);
        return Err(Error::parse(later, format!("duplicate edge {u} {v}")));
    }
    let edges: Vec<_> = edges.into_iter().map(|(e, _)| e).collect();
    Ok(Graph::from_sorted_edges(n, &edges))
}

pub fn write_edge_list<W: Write>(graph: &Graph, mut writer: W) -> Result<()> {
    writeln!(writer, "{} {}", graph.vertex_count(), graph.edge_count())?;
    for (u, v) in graph.edges() {
        writeln!(writer, "{u} {v}")?;
    }
    writer.flush()?;
    Ok(())
}

fn parse_pair<T: std::str::FromStr>(line: &str, no: usize) -> Result<(T, T)> {
    let mut fields = line.split_whitespace();
    let mut next = |what: &str| -> Result<T> {
        let tok = fields
            .next()
            .ok_or_else(|| Error::parse(no, format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| Error::parse(no, format!("cannot parse {what} from {tok:?}")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if fields.next().is_some() {
        return Err(Error::parse(no, "expected exactly two fields"));
    }
    Ok((a, b))
}
