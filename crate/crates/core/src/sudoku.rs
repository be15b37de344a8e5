//! The Sudoku graph `Sud_n`, fair-puzzle certification, the randomized
//! determining-set process, and the exhaustive minimum-clue search for `n = 2`.
//!
//! Cells are indexed row-major: cell `(a, b)` of the `n² × n²` board is vertex
//! `a·n² + b`; its block is `(a / n, b / n)`. Digit `d` on a board is color
//! `d - 1`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coloring::{Coloring, PartialAssignment, ProperColorings};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::extension::{count_extensions, MaskCounter};
use crate::graph::{Graph, VertexSet};

/// Largest supported box order; boards need `n² <= 32` colors.
pub const MAX_ORDER: usize = 5;

#[derive(Clone, Debug)]
pub struct SudokuStructure {
    n: usize,
    side: usize,
    graph: Graph,
}

impl SudokuStructure {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Board side length `n²`, which is also the palette size.
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn cells(&self) -> usize {
        self.side * self.side
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cell(&self, row: usize, col: usize) -> usize {
        row * self.side + col
    }

    pub fn row_col(&self, v: usize) -> (usize, usize) {
        (v / self.side, v % self.side)
    }

    pub fn block(&self, v: usize) -> (usize, usize) {
        let (a, b) = self.row_col(v);
        (a / self.n, b / self.n)
    }

    /// `K_{n²} □ K_{n²}` edge-unioned with `nK_n ⊠ nK_n`.
    pub fn product_formula_graph(&self) -> Graph {
        let line = Graph::complete(self.side);
        let rook = line.cartesian_product(&line);
        let bands = Graph::complete(self.n).repeat(self.n);
        let blocks = bands.strong_product(&bands);
        rook.edge_union(&blocks).expect("both products have n⁴ vertices")
    }

    fn check_board(&self, phi: &Coloring) -> Result<()> {
        if phi.palette() != self.side || !phi.is_proper(&self.graph) {
            return Err(Error::invalid("not a proper board coloring of this Sudoku graph"));
        }
        Ok(())
    }

    /// The cells `c_v^γ` (same row), `r_v^γ` (same column) and `b_v^γ` (same
    /// block) carrying color `γ`, deduplicated. `γ` must differ from `φ(v)`.
    pub fn witness_cells(&self, phi: &Coloring, v: usize, gamma: u8) -> Vec<usize> {
        let (a, b) = self.row_col(v);
        let blk = self.block(v);
        let find =
            |pred: &dyn Fn(usize) -> bool| (0..self.cells()).find(|&w| w != v && phi.color(w) == gamma && pred(w));
        let mut out: Vec<usize> =
            [find(&|w| self.row_col(w).0 == a), find(&|w| self.row_col(w).1 == b), find(&|w| self.block(w) == blk)]
                .into_iter()
                .flatten()
                .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Over the colors `γ ≠ φ(v)`, how many have 2 and how many have 3
    /// witness cells.
    pub fn witness_split(&self, phi: &Coloring, v: usize) -> (usize, usize) {
        let own = phi.color(v);
        let (mut two, mut three) = (0, 0);
        for g in (0..self.side as u8).filter(|&g| g != own) {
            match self.witness_cells(phi, v, g).len() {
                2 => two += 1,
                3 => three += 1,
                _ => {}
            }
        }
        (two, three)
    }
}

/// Build `Sud_n` from its row, column and block cliques.
pub fn sudoku_graph(n: usize) -> Result<SudokuStructure> {
    if n == 0 {
        return Err(Error::invalid("box order must be at least 1"));
    }
    if n > MAX_ORDER {
        return Err(Error::SizeLimit { what: "Sudoku box order", n, cap: MAX_ORDER });
    }
    let side = n * n;
    let cells = side * side;
    let mut edges = Vec::new();
    for v in 0..cells {
        let (a, b) = (v / side, v % side);
        for w in v + 1..cells {
            let (c, d) = (w / side, w % side);
            if a == c || b == d || (a / n == c / n && b / n == d / n) {
                edges.push((v, w));
            }
        }
    }
    Ok(SudokuStructure { n, side, graph: Graph::from_edges(cells, edges)? })
}

/// All boards in lexicographic order (288 for `n = 2`). Only `n <= 2`.
pub fn all_boards(s: &SudokuStructure) -> Result<Vec<Coloring>> {
    if s.n > 2 {
        return Err(Error::Unsupported(format!("enumerating every board of Sud_{}", s.n)));
    }
    Ok(ProperColorings::new(&s.graph, s.side, false, true)?.collect())
}

/// Boards up to relabelling of the digits (12 for `n = 2`).
pub fn canonical_boards(s: &SudokuStructure) -> Result<Vec<Coloring>> {
    if s.n > 2 {
        return Err(Error::Unsupported(format!("enumerating every board of Sud_{}", s.n)));
    }
    Ok(ProperColorings::new(&s.graph, s.side, true, true)?.collect())
}

/// A valid board from randomized backtracking: cells are filled in order,
/// each trying the digits in a seeded random order. Not uniform over boards.
pub fn random_board(s: &SudokuStructure, seed: u64) -> Coloring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = s.cells();
    let mut colors = vec![0u8; cells];
    let mut orders: Vec<Vec<u8>> = vec![Vec::new(); cells];
    let mut pos = vec![0usize; cells];
    let mut v = 0;
    orders[0] = (0..s.side as u8).collect();
    orders[0].shuffle(&mut rng);
    while v < cells {
        let mut placed = false;
        while pos[v] < orders[v].len() {
            let c = orders[v][pos[v]];
            pos[v] += 1;
            if s.graph.neighbors(v).iter().take_while(|&&w| w < v).all(|&w| colors[w] != c) {
                colors[v] = c;
                placed = true;
                break;
            }
        }
        if placed {
            v += 1;
            if v < cells {
                let mut order: Vec<u8> = (0..s.side as u8).collect();
                order.shuffle(&mut rng);
                orders[v] = order;
                pos[v] = 0;
            }
        } else {
            assert!(v > 0, "Sudoku graphs always admit a board");
            v -= 1;
        }
    }
    Coloring::new(colors, s.side).expect("colors are below n²")
}

/// Run the randomized determining-set process on board `phi`.
///
/// Cells are visited in a seeded uniformly random order (standing in for
/// independent uniform birth times). A cell is dropped when every color other
/// than its own is still shown by some retained neighbour; the retained set
/// after all cells have been visited is returned.
pub fn random_determining_set(s: &SudokuStructure, phi: &Coloring, seed: u64) -> Result<VertexSet> {
    s.check_board(phi)?;
    let cells = s.cells();
    let k = s.side;
    let mut order: Vec<usize> = (0..cells).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    // shown[v·k + γ] = retained neighbours of v colored γ.
    let mut shown = vec![0u32; cells * k];
    for v in 0..cells {
        for &w in s.graph.neighbors(v) {
            shown[v * k + phi.color(w) as usize] += 1;
        }
    }
    let mut kept = VertexSet::full(cells);
    for v in order {
        let own = phi.color(v) as usize;
        if (0..k).all(|g| g == own || shown[v * k + g] > 0) {
            kept.remove(v);
            for &u in s.graph.neighbors(v) {
                shown[u * k + own] -= 1;
            }
        }
    }
    Ok(kept)
}

/// True iff revealing `phi` on `clues` leaves exactly one completed board.
pub fn certify_fair_puzzle(s: &SudokuStructure, phi: &Coloring, clues: &VertexSet) -> Result<bool> {
    s.check_board(phi)?;
    Ok(count_extensions(&s.graph, &phi.restrict(clues), 2) == 1)
}

/// Number of completions of a puzzle, truncated at `cap`.
pub fn count_completions(s: &SudokuStructure, puzzle: &PartialAssignment, cap: u64) -> Result<u64> {
    if puzzle.len() != s.cells() || puzzle.palette() != s.side {
        return Err(Error::invalid("puzzle does not match the board size"));
    }
    Ok(count_extensions(&s.graph, puzzle, cap))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub board_seed: u64,
    pub process_seed: u64,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialStats {
    pub n: usize,
    pub seed: u64,
    pub records: Vec<TrialRecord>,
    pub mean: Option<f64>,
    pub min: Option<usize>,
    pub max: Option<usize>,
}

impl TrialStats {
    pub fn trials(&self) -> usize {
        self.records.len()
    }

    /// `(n⁴ - mean) / n^{10/3}`: how many cells the process drops on average,
    /// in units of `n^{10/3}`. Descriptive only.
    pub fn removed_per_n_ten_thirds(&self) -> Option<f64> {
        let n = self.n as f64;
        self.mean.map(|m| (n.powi(4) - m) / n.powf(10.0 / 3.0))
    }

    /// CSV with header `trial,board_seed,process_seed,size`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,board_seed,process_seed,size\n");
        for r in &self.records {
            out.push_str(&format!("{},{},{},{}\n", r.trial, r.board_seed, r.process_seed, r.size));
        }
        out
    }
}

/// Run `trials` certified rounds of [`random_determining_set`] on `Sud_n`,
/// `n ∈ {2, 3}`. For `n = 2` trial `i` uses board `i mod 288` of the full
/// enumeration; for `n = 3` each trial draws a [`random_board`]. All seeds are
/// drawn from one ChaCha stream seeded with `seed`.
pub fn trial_campaign(n: usize, trials: usize, seed: u64, mode: Execution) -> Result<TrialStats> {
    if !(2..=3).contains(&n) {
        return Err(Error::Unsupported(format!("trial campaigns run for n = 2 or 3, got {n}")));
    }
    let s = sudoku_graph(n)?;
    let boards = if n == 2 { all_boards(&s)? } else { Vec::new() };
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let jobs: Vec<(usize, u64, u64)> = (0..trials).map(|i| (i, master.gen(), master.gen())).collect();
    let results = exec::map(mode, &jobs, |&(i, board_seed, process_seed)| -> Result<TrialRecord> {
        let phi = if n == 2 { boards[i % boards.len()].clone() } else { random_board(&s, board_seed) };
        let kept = random_determining_set(&s, &phi, process_seed)?;
        if count_extensions(&s.graph, &phi.restrict(&kept), 2) != 1 {
            return Err(Error::Internal(format!("trial {i} produced a non-determining set")));
        }
        Ok(TrialRecord { trial: i, board_seed, process_seed, size: kept.len() })
    });
    let records: Vec<TrialRecord> = results.into_iter().collect::<Result<_>>()?;
    let sizes = records.iter().map(|r| r.size);
    let mean = (!records.is_empty()).then(|| sizes.clone().sum::<usize>() as f64 / records.len() as f64);
    Ok(TrialStats { n, seed, mean, min: sizes.clone().min(), max: sizes.max(), records })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustedSize {
    pub clues: usize,
    pub boards: usize,
    pub sets_checked: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MncReport {
    pub minimum: usize,
    pub witness_board: Coloring,
    pub witness_clues: VertexSet,
    /// Sizes below the minimum, each checked against every board examined.
    pub exhausted: Vec<ExhaustedSize>,
    /// Fair puzzles of the minimum size over the boards examined.
    pub fair_at_minimum: u64,
    pub symmetry_reduced: bool,
}

fn masks_of_size(n: u32, size: u32) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut cur = if size == 0 { 0 } else { (1u64 << size) - 1 };
    let mut first = true;
    std::iter::from_fn(move || {
        if size > n {
            return None;
        }
        if !first {
            if cur == 0 {
                return None;
            }
            // Gosper's hack: next mask with the same popcount.
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            cur = (((r ^ cur) >> 2) / c) | r;
        }
        first = false;
        (cur < limit).then_some(cur)
    })
}

/// Minimum number of clues in a fair Shidoku (`n = 2`) puzzle, by exhausting
/// every board and clue set of increasing size. With `symmetry` only the 12
/// digit-relabelling classes of boards are examined.
pub fn mnc_exhaustive(n: usize, symmetry: bool, mode: Execution) -> Result<MncReport> {
    if n != 2 {
        return Err(Error::Unsupported(format!("exhaustive minimum-clue search only runs for n = 2, got {n}")));
    }
    let s = sudoku_graph(2)?;
    let boards = if symmetry { canonical_boards(&s)? } else { all_boards(&s)? };
    let cells = s.cells() as u32;
    let counter = MaskCounter::<u64>::new(&s.graph, s.side);
    let fair = |board: &Coloring, clues: u64| {
        let fixed: Vec<Option<u8>> =
            (0..cells as usize).map(|v| (clues >> v & 1 == 1).then(|| board.color(v))).collect();
        counter.count(counter.candidates(&fixed), 2) == 1
    };
    let mut exhausted = Vec::new();
    for size in 0..=cells {
        let per_board = exec::map(mode, &boards, |b| {
            let mut first = None;
            let mut fair_count = 0u64;
            let mut checked = 0u64;
            for m in masks_of_size(cells, size) {
                checked += 1;
                if fair(b, m) {
                    fair_count += 1;
                    first.get_or_insert(m);
                }
            }
            (first, fair_count, checked)
        });
        let checked: u64 = per_board.iter().map(|r| r.2).sum();
        let hit = per_board.iter().enumerate().find_map(|(i, r)| r.0.map(|m| (i, m)));
        match hit {
            None => exhausted.push(ExhaustedSize { clues: size as usize, boards: boards.len(), sets_checked: checked }),
            Some((i, m)) => {
                return Ok(MncReport {
                    minimum: size as usize,
                    witness_board: boards[i].clone(),
                    witness_clues: VertexSet::from_mask(cells as usize, m),
                    exhausted,
                    fair_at_minimum: per_board.iter().map(|r| r.1).sum(),
                    symmetry_reduced: symmetry,
                });
            }
        }
    }
    Err(Error::Internal("the full board is always a fair puzzle".into()))
}

/// Parse the puzzle text format: `n²` lines of `n²` whitespace-separated
/// tokens, each a digit `1..=n²` or `.`. Returns the box order and the cells.
pub fn parse_puzzle(text: &str) -> Result<(usize, PartialAssignment)> {
    let lines: Vec<(usize, &str)> = text
        .split_inclusive('\n')
        .scan(0usize, |off, l| {
            let start = *off;
            *off += l.len();
            Some((start, l.trim_end_matches(['\n', '\r'])))
        })
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let side = lines.len();
    let n = (1..=MAX_ORDER).find(|&n| n * n == side).ok_or_else(|| {
        Error::parse(text.len(), format!("expected n² rows for some box order n <= {MAX_ORDER}, found {side}"))
    })?;
    let mut cells = Vec::with_capacity(side * side);
    for (start, line) in &lines {
        let mut count = 0;
        let mut col = 0usize;
        for tok in line.split_whitespace() {
            let at = start + line[col..].find(tok).map_or(col, |p| p + col);
            col = at - start + tok.len();
            count += 1;
            if count > side {
                return Err(Error::parse(at, format!("more than {side} cells in a row")));
            }
            if tok == "." {
                cells.push(None);
                continue;
            }
            match tok.parse::<usize>() {
                Ok(d) if (1..=side).contains(&d) => cells.push(Some((d - 1) as u8)),
                _ => return Err(Error::parse(at, format!("bad cell {tok:?}; expected 1..={side} or '.'"))),
            }
        }
        if count < side {
            return Err(Error::parse(start + line.len(), format!("row has {count} cells, expected {side}")));
        }
    }
    Ok((n, PartialAssignment::new(cells, side)?))
}

/// Inverse of [`parse_puzzle`]: single spaces between cells, `\n` after each row.
pub fn emit_puzzle(side: usize, puzzle: &PartialAssignment) -> String {
    let mut out = String::new();
    for row in 0..side {
        let toks: Vec<String> = (0..side)
            .map(|col| puzzle.get(row * side + col).map_or(".".to_string(), |c| (c + 1).to_string()))
            .collect();
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}
