//! Edge-list files and pattern shorthand strings.
//!
//! Edge-list format: the first non-comment line is `n <N>`, followed by one
//! whitespace-separated `u v` pair per line. `#` starts a comment. Labels
//! that are all integers in `0..N` are used as-is; any other labels are
//! re-indexed in order of first appearance.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{HostGraph, PatternGraph};

/// A parsed edge list: the edges plus the original label of each vertex.
#[derive(Clone, Debug)]
pub struct EdgeList {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub labels: Vec<String>,
}

pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut declared: Option<usize> = None;
    let mut raw: Vec<(usize, String, String)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if declared.is_none() {
            if tokens.len() != 2 || tokens[0] != "n" {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "expected header `n <N>`".into(),
                });
            }
            let n = tokens[1].parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("bad vertex count `{}`", tokens[1]),
            })?;
            declared = Some(n);
            continue;
        }
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected `u v`, got `{body}`"),
            });
        }
        raw.push((lineno, tokens[0].to_string(), tokens[1].to_string()));
    }
    let n = declared.ok_or(Error::Parse {
        line: 0,
        msg: "missing header `n <N>`".into(),
    })?;

    let numeric = raw.iter().all(|(_, a, b)| {
        [a, b]
            .iter()
            .all(|t| t.parse::<usize>().map(|x| x < n).unwrap_or(false))
    });
    let mut edges = Vec::with_capacity(raw.len());
    let labels: Vec<String>;
    if numeric {
        labels = (0..n).map(|i| i.to_string()).collect();
        for (lineno, a, b) in &raw {
            let (u, v) = (a.parse().unwrap(), b.parse().unwrap());
            if u == v {
                return Err(Error::Parse {
                    line: *lineno,
                    msg: format!("self-loop at {u}"),
                });
            }
            edges.push((u, v));
        }
    } else {
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut order = Vec::new();
        for (lineno, a, b) in &raw {
            let mut id = |t: &String| -> Result<usize> {
                if let Some(&i) = index.get(t) {
                    return Ok(i);
                }
                let i = order.len();
                if i >= n {
                    return Err(Error::Parse {
                        line: *lineno,
                        msg: format!("more than {n} distinct labels"),
                    });
                }
                index.insert(t.clone(), i);
                order.push(t.clone());
                Ok(i)
            };
            let u = id(a)?;
            let v = id(b)?;
            if u == v {
                return Err(Error::Parse {
                    line: *lineno,
                    msg: format!("self-loop at {a}"),
                });
            }
            edges.push((u, v));
        }
        while order.len() < n {
            order.push(format!("_{}", order.len()));
        }
        labels = order;
    }
    Ok(EdgeList {
        vertex_count: n,
        edges,
        labels,
    })
}

pub fn read_host_graph(path: impl AsRef<Path>) -> Result<(HostGraph, Vec<String>)> {
    let text = std::fs::read_to_string(path)?;
    let list = parse_edge_list(&text)?;
    let g = HostGraph::from_edges(list.vertex_count, list.edges.iter().copied())?;
    Ok((g, list.labels))
}

/// Parses `star:r`, `path:k`, `cycle:k`, `clique:k`, `biclique:a,b` or
/// `file:<path>`.
pub fn parse_pattern(spec: &str) -> Result<PatternGraph> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| Error::invalid(format!("pattern `{spec}` is not of the form kind:arg")))?;
    let int = |s: &str| -> Result<usize> {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::invalid(format!("bad integer `{s}` in pattern `{spec}`")))
    };
    match kind {
        "star" => {
            let r = int(arg)?;
            if r == 0 {
                return Err(Error::invalid("star needs at least one arm"));
            }
            PatternGraph::star(r)
        }
        "path" => {
            let k = int(arg)?;
            if k < 2 {
                return Err(Error::invalid("path needs at least 2 vertices"));
            }
            PatternGraph::path(k)
        }
        "cycle" => PatternGraph::cycle(int(arg)?),
        "clique" => {
            let k = int(arg)?;
            if k < 2 {
                return Err(Error::invalid("clique needs at least 2 vertices"));
            }
            PatternGraph::clique(k)
        }
        "biclique" => {
            let (a, b) = arg
                .split_once(',')
                .ok_or_else(|| Error::invalid("biclique expects `a,b`"))?;
            let (a, b) = (int(a)?, int(b)?);
            if a == 0 || b == 0 {
                return Err(Error::invalid("biclique sides must be nonempty"));
            }
            PatternGraph::biclique(a, b)
        }
        "file" => {
            let text = std::fs::read_to_string(arg)?;
            let list = parse_edge_list(&text)?;
            PatternGraph::new(list.vertex_count, &list.edges)
        }
        other => Err(Error::invalid(format!("unknown pattern kind `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_edge_list() {
        let list = parse_edge_list("# triangle\nn 3\n0 1\n1 2 # trailing\n\n2 0\n").unwrap();
        assert_eq!(list.vertex_count, 3);
        assert_eq!(list.edges, vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(list.labels[2], "2");
    }

    #[test]
    fn relabels_arbitrary_tokens() {
        let list = parse_edge_list("n 3\nalice bob\nbob carol\n").unwrap();
        assert_eq!(list.edges, vec![(0, 1), (1, 2)]);
        assert_eq!(list.labels, vec!["alice", "bob", "carol"]);
    }

    #[test]
    fn malformed_lists() {
        assert!(matches!(parse_edge_list("0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("n 3\n0 1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("n 2\n1 1\n"), Err(Error::Parse { .. })));
        assert!(parse_edge_list("n 2\na b\nb c\n").is_err());
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn pattern_shorthand() {
        assert_eq!(parse_pattern("star:3").unwrap(), PatternGraph::star(3).unwrap());
        assert_eq!(parse_pattern("path:4").unwrap().edge_count(), 3);
        assert_eq!(parse_pattern("cycle:5").unwrap().edge_count(), 5);
        assert_eq!(parse_pattern("clique:4").unwrap().edge_count(), 6);
        assert_eq!(parse_pattern("biclique:2,3").unwrap().edge_count(), 6);
        assert!(parse_pattern("wheel:5").is_err());
        assert!(parse_pattern("star").is_err());
        assert!(parse_pattern("cycle:2").is_err());
    }
}
