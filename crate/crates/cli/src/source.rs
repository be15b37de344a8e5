//! Graph sources: named generators, inline graph6, or a graph6 file.

use std::path::Path;

use critset::sudoku::sudoku_graph;
use critset::{parse_graph6, Error, Graph};

use crate::CliError;

/// Parse `cycle:n`, `complete:n`, `path:n`, `empty:n`, `star:n`, `sudoku:n`,
/// `latin:n`, `g6:<text>`, `file:<path>`, or a bare graph6 string.
pub fn parse_source(spec: &str) -> Result<Graph, CliError> {
    let Some((kind, arg)) = spec.split_once(':') else {
        return Ok(parse_graph6(spec)?);
    };
    let size = || -> Result<usize, CliError> {
        arg.parse().map_err(|_| CliError::input(format!("{kind}: expected a vertex count, got {arg:?}")))
    };
    let g = match kind {
        "cycle" => Graph::cycle(size()?)?,
        "complete" => Graph::complete(size()?),
        "path" => Graph::path(size()?),
        "empty" => Graph::empty(size()?),
        "star" => Graph::star(size()?),
        "sudoku" => sudoku_graph(size()?)?.graph().clone(),
        "latin" => {
            let k = Graph::complete(size()?);
            k.cartesian_product(&k)
        }
        "g6" => parse_graph6(arg)?,
        "file" => read_first_graph(Path::new(arg))?,
        _ => return Err(CliError::input(format!("unknown graph source {kind:?}"))),
    };
    Ok(g)
}

fn read_first_graph(path: &Path) -> Result<Graph, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| CliError::from(Error::Parse { offset: 0, message: "file contains no graph".into() }))?;
    Ok(parse_graph6(line)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_sources() {
        assert_eq!(parse_source("cycle:5").unwrap(), Graph::cycle(5).unwrap());
        assert_eq!(parse_source("latin:2").unwrap().edge_count(), 4);
        assert_eq!(parse_source("sudoku:2").unwrap().vertex_count(), 16);
        assert_eq!(parse_source("g6:A_").unwrap(), Graph::complete(2));
        assert_eq!(parse_source("A_").unwrap(), Graph::complete(2));
        assert_eq!(parse_source("star:3").unwrap(), Graph::star(3));
    }

    #[test]
    fn bad_sources() {
        assert_eq!(parse_source("cycle:x").unwrap_err().code, 1);
        assert_eq!(parse_source("blob:3").unwrap_err().code, 1);
        assert_eq!(parse_source("cycle:2").unwrap_err().code, 1);
        assert_eq!(parse_source("sudoku:9").unwrap_err().code, 2);
    }
}
