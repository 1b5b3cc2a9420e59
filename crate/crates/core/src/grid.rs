//! The singular grid diagram model.
//!
//! A grid diagram presents an oriented link on the torus: every column and
//! every row carries decorations (`O` and `X` markers), horizontal strands run
//! from an `O` to the `X` of the same row, vertical strands from an `X` up or
//! down to the `O` of the same column, and vertical strands always cross over
//! horizontal ones. This module extends the classical model with *singular*
//! columns and rows: a singular column (resp. row) carries two `O`s and two
//! `X`s and represents a transversal double point where two strands are fused.
//!
//! Coordinates are 0-based with the origin at the bottom-left cell; `col`
//! indexes columns left to right and `row` indexes rows bottom to top. A
//! diagram of complexity `n` (the number of `O`s) with `kc` singular columns
//! and `kr` singular rows has `n - kc` columns and `n - kr` rows.
//!
//! Within a singular column, sorting its four decorations bottom to top, the
//! strand pairing is fixed: the first and third decorations belong to one
//! strand, the second and fourth to the other. Consequently those pairs must
//! carry opposite marker kinds, which restricts the bottom-to-top kind pattern
//! to `OOXX`, `OXXO`, `XXOO`, `XOOX` (the alternating patterns are
//! impossible). Singular rows behave the same way with "bottom to top"
//! replaced by "left to right". Each singular column or row also carries an
//! orientation sign describing how the double point is oriented relative to
//! the ambient plane; the sign is part of the link data and changes which
//! desingularized diagrams the two resolutions of the double point yield
//! their roles in.
//!
//! One configuration is deliberately rejected: a decoration lying in a
//! singular column *and* a singular row. The curved-curve geometry built on
//! top of this model (see `cube`/`geom`) needs every pair of curves to meet
//! exactly once, which fails in that configuration. No construction in this
//! crate produces such diagrams.

use crate::error::{Error, Result};

/// Marker kind: `O` or `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// An `O` marker.
    O,
    /// An `X` marker.
    X,
}

impl Kind {
    /// The other marker kind.
    pub fn flip(self) -> Kind {
        match self {
            Kind::O => Kind::X,
            Kind::X => Kind::O,
        }
    }

    /// Single-letter name used by the file format.
    pub fn letter(self) -> char {
        match self {
            Kind::O => 'O',
            Kind::X => 'X',
        }
    }
}

/// Orientation sign attached to a singular column or row.
///
/// `Plus` means the double point's own orientation agrees with the
/// orientation induced by the plane of the diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    /// Orientations agree.
    Plus,
    /// Orientations disagree.
    Minus,
}

impl Sign {
    /// The opposite sign.
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Single-character name used by the file format.
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One `O` or `X` marker at a grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Decoration {
    /// Marker kind.
    pub kind: Kind,
    /// Column index, 0-based from the left.
    pub col: usize,
    /// Row index, 0-based from the bottom.
    pub row: usize,
}

/// A validated singular grid diagram.
///
/// Construction always validates; every `SingularGrid` in existence satisfies
/// the structural rules listed in the module documentation. The decoration
/// list is kept sorted by `(col, row)` and the singular index lists sorted by
/// index, so equal diagrams compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SingularGrid {
    num_cols: usize,
    num_rows: usize,
    decos: Vec<Decoration>,
    sing_cols: Vec<(usize, Sign)>,
    sing_rows: Vec<(usize, Sign)>,
}

/// The four legal bottom-to-top (resp. left-to-right) kind patterns of a
/// singular column (resp. row).
pub const LEGAL_PATTERNS: [[Kind; 4]; 4] = [
    [Kind::O, Kind::O, Kind::X, Kind::X],
    [Kind::O, Kind::X, Kind::X, Kind::O],
    [Kind::X, Kind::X, Kind::O, Kind::O],
    [Kind::X, Kind::O, Kind::O, Kind::X],
];

impl SingularGrid {
    /// Builds and validates a diagram from raw parts.
    ///
    /// The decoration order in `decos` is irrelevant; it is sorted
    /// internally. Returns a [`Error::Validation`] naming the violated rule
    /// otherwise.
    pub fn new(
        num_cols: usize,
        num_rows: usize,
        mut decos: Vec<Decoration>,
        mut sing_cols: Vec<(usize, Sign)>,
        mut sing_rows: Vec<(usize, Sign)>,
    ) -> Result<Self> {
        decos.sort_by_key(|d| (d.col, d.row));
        sing_cols.sort_by_key(|&(i, _)| i);
        sing_rows.sort_by_key(|&(i, _)| i);
        let grid = SingularGrid { num_cols, num_rows, decos, sing_cols, sing_rows };
        grid.validate()?;
        Ok(grid)
    }

    fn validate(&self) -> Result<()> {
        fn bad(rule: &'static str, msg: String) -> Result<()> {
            Err(Error::Validation { rule, msg })
        }

        if self.num_cols == 0 || self.num_rows == 0 {
            return bad("dims", "a diagram needs at least one column and one row".into());
        }
        for &(i, _) in &self.sing_cols {
            if i >= self.num_cols {
                return bad("dims", format!("singular column {i} out of range"));
            }
        }
        for &(i, _) in &self.sing_rows {
            if i >= self.num_rows {
                return bad("dims", format!("singular row {i} out of range"));
            }
        }
        if self.sing_cols.windows(2).any(|w| w[0].0 == w[1].0) {
            return bad("dims", "duplicate singular column declaration".into());
        }
        if self.sing_rows.windows(2).any(|w| w[0].0 == w[1].0) {
            return bad("dims", "duplicate singular row declaration".into());
        }

        for d in &self.decos {
            if d.col >= self.num_cols || d.row >= self.num_rows {
                return bad(
                    "cell",
                    format!("{} at ({}, {}) is out of range", d.kind.letter(), d.col, d.row),
                );
            }
        }
        if let Some(w) = self
            .decos
            .windows(2)
            .find(|w| (w[0].col, w[0].row) == (w[1].col, w[1].row))
        {
            return bad(
                "cell",
                format!("two decorations share the cell ({}, {})", w[0].col, w[0].row),
            );
        }

        // Per-column and per-row marker counts.
        for c in 0..self.num_cols {
            let col = self.column(c);
            let os = col.iter().filter(|d| d.kind == Kind::O).count();
            let xs = col.len() - os;
            let (eo, ex) = if self.singular_col(c).is_some() { (2, 2) } else { (1, 1) };
            if (os, xs) != (eo, ex) {
                return bad(
                    "count",
                    format!("column {c} has {os} O and {xs} X markers, expected {eo} and {ex}"),
                );
            }
        }
        for r in 0..self.num_rows {
            let row = self.row(r);
            let os = row.iter().filter(|d| d.kind == Kind::O).count();
            let xs = row.len() - os;
            let (eo, ex) = if self.singular_row(r).is_some() { (2, 2) } else { (1, 1) };
            if (os, xs) != (eo, ex) {
                return bad(
                    "count",
                    format!("row {r} has {os} O and {xs} X markers, expected {eo} and {ex}"),
                );
            }
        }

        // Strand pairing forces the kind pattern of every singular column/row.
        for &(c, _) in &self.sing_cols {
            let pat: Vec<Kind> = self.column(c).iter().map(|d| d.kind).collect();
            if !LEGAL_PATTERNS.iter().any(|p| p[..] == pat[..]) {
                let s: String = pat.iter().map(|k| k.letter()).collect();
                return bad("pattern", format!("singular column {c} has pattern {s}"));
            }
        }
        for &(r, _) in &self.sing_rows {
            let pat: Vec<Kind> = self.row(r).iter().map(|d| d.kind).collect();
            if !LEGAL_PATTERNS.iter().any(|p| p[..] == pat[..]) {
                let s: String = pat.iter().map(|k| k.letter()).collect();
                return bad("pattern", format!("singular row {r} has pattern {s}"));
            }
        }

        // Rejected configuration: see the module documentation.
        for d in &self.decos {
            if self.singular_col(d.col).is_some() && self.singular_row(d.row).is_some() {
                return bad(
                    "shared-decoration",
                    format!(
                        "{} at ({}, {}) lies in both a singular column and a singular row",
                        d.kind.letter(),
                        d.col,
                        d.row
                    ),
                );
            }
        }

        Ok(())
    }

    /// Complexity `n`: the number of `O` markers.
    pub fn n(&self) -> usize {
        self.num_cols + self.sing_cols.len()
    }

    /// Number of columns.
    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    /// Number of rows.
    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    /// Total number of singular columns and rows.
    pub fn num_singular(&self) -> usize {
        self.sing_cols.len() + self.sing_rows.len()
    }

    /// True if the diagram has no singular column or row.
    pub fn is_regular(&self) -> bool {
        self.num_singular() == 0
    }

    /// All decorations, sorted by `(col, row)`.
    pub fn decorations(&self) -> &[Decoration] {
        &self.decos
    }

    /// Singular columns as `(index, sign)`, sorted by index.
    pub fn singular_cols(&self) -> &[(usize, Sign)] {
        &self.sing_cols
    }

    /// Singular rows as `(index, sign)`, sorted by index.
    pub fn singular_rows(&self) -> &[(usize, Sign)] {
        &self.sing_rows
    }

    /// The sign of singular column `c`, or `None` if the column is regular.
    pub fn singular_col(&self, c: usize) -> Option<Sign> {
        self.sing_cols.iter().find(|&&(i, _)| i == c).map(|&(_, s)| s)
    }

    /// The sign of singular row `r`, or `None` if the row is regular.
    pub fn singular_row(&self, r: usize) -> Option<Sign> {
        self.sing_rows.iter().find(|&&(i, _)| i == r).map(|&(_, s)| s)
    }

    /// Decorations of column `c`, sorted bottom to top.
    pub fn column(&self, c: usize) -> Vec<&Decoration> {
        // `decos` is sorted by (col, row), so a column is a contiguous slice
        // already in bottom-to-top order.
        let start = self.decos.partition_point(|d| d.col < c);
        let end = self.decos.partition_point(|d| d.col <= c);
        self.decos[start..end].iter().collect()
    }

    /// Decorations of row `r`, sorted left to right.
    pub fn row(&self, r: usize) -> Vec<&Decoration> {
        self.decos.iter().filter(|d| d.row == r).collect()
    }

    /// The decoration at cell `(c, r)`, if any.
    pub fn decoration_at(&self, c: usize, r: usize) -> Option<&Decoration> {
        let start = self.decos.partition_point(|d| (d.col, d.row) < (c, r));
        self.decos.get(start).filter(|d| (d.col, d.row) == (c, r))
    }

    /// Number of link components.
    ///
    /// Decorations are the corners of the link; each one is joined to a
    /// partner along its column and to a partner along its row. In a regular
    /// column/row the two decorations are partners; in a singular one, sorting
    /// the four decorations in coordinate order, the first pairs with the
    /// third and the second with the fourth. The resulting 2-regular graph is
    /// a disjoint union of cycles, one per link component.
    pub fn components(&self) -> usize {
        let idx_of = |d: &Decoration| -> usize {
            self.decos.partition_point(|e| (e.col, e.row) < (d.col, d.row))
        };
        let mut col_partner = vec![usize::MAX; self.decos.len()];
        let mut row_partner = vec![usize::MAX; self.decos.len()];
        let pair = |line: &[&Decoration], partner: &mut Vec<usize>| match line.len() {
            2 => {
                let (a, b) = (idx_of(line[0]), idx_of(line[1]));
                partner[a] = b;
                partner[b] = a;
            }
            4 => {
                for (i, j) in [(0, 2), (1, 3)] {
                    let (a, b) = (idx_of(line[i]), idx_of(line[j]));
                    partner[a] = b;
                    partner[b] = a;
                }
            }
            _ => unreachable!("validated grids have 2 or 4 decorations per line"),
        };
        for c in 0..self.num_cols {
            pair(&self.column(c), &mut col_partner);
        }
        for r in 0..self.num_rows {
            pair(&self.row(r), &mut row_partner);
        }

        let mut seen = vec![false; self.decos.len()];
        let mut cycles = 0;
        for start in 0..self.decos.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            // Walk the cycle alternating column and row edges.
            let mut at = start;
            let mut via_col = true;
            loop {
                seen[at] = true;
                at = if via_col { col_partner[at] } else { row_partner[at] };
                via_col = !via_col;
                if at == start && via_col {
                    break;
                }
            }
        }
        cycles
    }

    /// Serializes the diagram in the `grid v1` text format.
    ///
    /// The output is canonical for the diagram data: decorations sorted by
    /// `(col, row)`, singular declarations sorted by index. Parsing the
    /// output reproduces an equal diagram.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        writeln!(s, "grid v1").unwrap();
        writeln!(s, "cols {}", self.num_cols).unwrap();
        writeln!(s, "rows {}", self.num_rows).unwrap();
        for d in &self.decos {
            writeln!(s, "{} {} {}", d.kind.letter(), d.col, d.row).unwrap();
        }
        for &(i, sg) in &self.sing_cols {
            writeln!(s, "sing col {} {}", i, sg.symbol()).unwrap();
        }
        for &(i, sg) in &self.sing_rows {
            writeln!(s, "sing row {} {}", i, sg.symbol()).unwrap();
        }
        s
    }

    /// Parses the `grid v1` text format.
    ///
    /// Blank lines and `#` comments are allowed anywhere; the `grid v1`
    /// header must be the first significant line, followed by `cols`/`rows`
    /// and then decoration and singular declarations in any order.
    pub fn parse(text: &str) -> Result<Self> {
        let syn = |line: usize, msg: String| Error::Syntax { line, msg };
        let mut header = false;
        let mut cols: Option<usize> = None;
        let mut rows: Option<usize> = None;
        let mut decos = Vec::new();
        let mut sing_cols = Vec::new();
        let mut sing_rows = Vec::new();
        let mut last_line = 0;

        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            last_line = lineno;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if !header {
                if toks == ["grid", "v1"] {
                    header = true;
                    continue;
                }
                return Err(syn(lineno, "expected `grid v1` header".into()));
            }
            let parse_num = |tok: &str| -> Result<usize> {
                tok.parse::<usize>()
                    .map_err(|_| syn(lineno, format!("expected a number, found `{tok}`")))
            };
            match toks.as_slice() {
                ["cols", v] => cols = Some(parse_num(v)?),
                ["rows", v] => rows = Some(parse_num(v)?),
                [kind @ ("O" | "X"), c, r] => decos.push(Decoration {
                    kind: if *kind == "O" { Kind::O } else { Kind::X },
                    col: parse_num(c)?,
                    row: parse_num(r)?,
                }),
                ["sing", axis @ ("col" | "row"), i, sg @ ("+" | "-")] => {
                    let sign = if *sg == "+" { Sign::Plus } else { Sign::Minus };
                    let entry = (parse_num(i)?, sign);
                    if *axis == "col" {
                        sing_cols.push(entry);
                    } else {
                        sing_rows.push(entry);
                    }
                }
                _ => return Err(syn(lineno, format!("unrecognized line `{line}`"))),
            }
        }
        if !header {
            return Err(syn(last_line.max(1), "missing `grid v1` header".into()));
        }
        let num_cols = cols.ok_or_else(|| syn(last_line, "missing `cols` line".into()))?;
        let num_rows = rows.ok_or_else(|| syn(last_line, "missing `rows` line".into()))?;
        SingularGrid::new(num_cols, num_rows, decos, sing_cols, sing_rows)
    }

    /// The diagram with columns cyclically shifted so that the old column
    /// `c` becomes column `(c + delta) mod num_cols`.
    ///
    /// This is a raw re-indexing used by canonicalization and by the cyclic
    /// permutation move; it does not check move legality.
    pub(crate) fn shift_cols(&self, delta: usize) -> SingularGrid {
        let m = self.num_cols;
        let decos = self
            .decos
            .iter()
            .map(|d| Decoration { col: (d.col + delta) % m, ..*d })
            .collect();
        let sing_cols = self.sing_cols.iter().map(|&(i, s)| ((i + delta) % m, s)).collect();
        SingularGrid::new(m, self.num_rows, decos, sing_cols, self.sing_rows.clone())
            .expect("re-indexing preserves validity")
    }

    /// Row counterpart of [`shift_cols`](Self::shift_cols).
    pub(crate) fn shift_rows(&self, delta: usize) -> SingularGrid {
        let m = self.num_rows;
        let decos = self
            .decos
            .iter()
            .map(|d| Decoration { row: (d.row + delta) % m, ..*d })
            .collect();
        let sing_rows = self.sing_rows.iter().map(|&(i, s)| ((i + delta) % m, s)).collect();
        SingularGrid::new(self.num_cols, self.num_rows, decos, self.sing_cols.clone(), sing_rows)
            .expect("re-indexing preserves validity")
    }

    /// Column shifts realizable by sequences of legal cyclic permutation
    /// moves (a move may only transport a regular column across the edge of
    /// the diagram).
    fn legal_col_shifts(&self) -> Vec<usize> {
        Self::legal_shifts(self.num_cols, &|c| self.singular_col(c).is_none())
    }

    fn legal_row_shifts(&self) -> Vec<usize> {
        Self::legal_shifts(self.num_rows, &|r| self.singular_row(r).is_none())
    }

    fn legal_shifts(m: usize, regular: &dyn Fn(usize) -> bool) -> Vec<usize> {
        let mut shifts = vec![0usize];
        // Moving the first index to the far end, repeatedly: legal while the
        // indices transported so far are all regular.
        for j in 1..m {
            if (0..j).all(regular) {
                shifts.push(m - j); // old index i maps to i - j ≡ i + (m - j)
            } else {
                break;
            }
        }
        // The opposite direction.
        for j in 1..m {
            if ((m - j)..m).all(regular) {
                shifts.push(j % m);
            } else {
                break;
            }
        }
        shifts.sort_unstable();
        shifts.dedup();
        shifts
    }

    /// A canonical representative of the diagram modulo cyclic permutation
    /// moves: the lexicographically least serialization over all reachable
    /// column and row shifts.
    ///
    /// Two diagrams related by cyclic permutations (and nothing else) have
    /// equal canonical text.
    pub fn canonical_text(&self) -> String {
        let mut best: Option<String> = None;
        for &dc in &self.legal_col_shifts() {
            let g = self.shift_cols(dc);
            for &dr in &g.legal_row_shifts() {
                let t = g.shift_rows(dr).to_text();
                if best.as_ref().is_none_or(|b| t < *b) {
                    best = Some(t);
                }
            }
        }
        best.expect("shift 0 always legal")
    }

    /// A small ASCII picture of the diagram, rows printed top to bottom.
    /// Singular columns and rows are flagged in the margins with their sign.
    pub fn ascii_art(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        for r in (0..self.num_rows).rev() {
            for c in 0..self.num_cols {
                let ch = self.decoration_at(c, r).map_or('.', |d| d.kind.letter());
                write!(s, " {ch}").unwrap();
            }
            match self.singular_row(r) {
                Some(sg) => writeln!(s, "  {}r{}", sg.symbol(), r).unwrap(),
                None => writeln!(s).unwrap(),
            }
        }
        for c in 0..self.num_cols {
            match self.singular_col(c) {
                Some(sg) => write!(s, " {}", sg.symbol()).unwrap(),
                None => write!(s, "  ").unwrap(),
            }
        }
        writeln!(s).unwrap();
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 2x2 regular unknot: O at (0,0),(1,1); X at (0,1),(1,0).
    fn unknot() -> SingularGrid {
        SingularGrid::new(
            2,
            2,
            vec![
                Decoration { kind: Kind::O, col: 0, row: 0 },
                Decoration { kind: Kind::O, col: 1, row: 1 },
                Decoration { kind: Kind::X, col: 0, row: 1 },
                Decoration { kind: Kind::X, col: 1, row: 0 },
            ],
            vec![],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn unknot_basics() {
        let g = unknot();
        assert_eq!(g.n(), 2);
        assert_eq!(g.components(), 1);
        assert!(g.is_regular());
    }

    #[test]
    fn roundtrip() {
        let g = unknot();
        let text = g.to_text();
        let h = SingularGrid::parse(&text).unwrap();
        assert_eq!(g, h);
        assert_eq!(text, h.to_text());
    }

    #[test]
    fn parse_with_comments() {
        let text = "# a comment\ngrid v1\ncols 2\nrows 2\nO 0 0 # inline\nO 1 1\nX 0 1\nX 1 0\n";
        assert_eq!(SingularGrid::parse(text).unwrap(), unknot());
    }

    #[test]
    fn count_rule() {
        let err = SingularGrid::new(
            2,
            2,
            vec![
                Decoration { kind: Kind::O, col: 0, row: 0 },
                Decoration { kind: Kind::O, col: 0, row: 1 },
                Decoration { kind: Kind::X, col: 1, row: 0 },
                Decoration { kind: Kind::X, col: 1, row: 1 },
            ],
            vec![],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Validation { rule: "count", .. }));
    }

    #[test]
    fn pattern_rule() {
        // A singular column with alternating kinds (here X,O,X,O bottom to
        // top) is impossible: its strand pairs would carry equal kinds.
        let err = SingularGrid::new(
            3,
            4,
            vec![
                Decoration { kind: Kind::O, col: 0, row: 0 },
                Decoration { kind: Kind::X, col: 0, row: 1 },
                Decoration { kind: Kind::O, col: 1, row: 2 },
                Decoration { kind: Kind::X, col: 1, row: 3 },
                Decoration { kind: Kind::X, col: 2, row: 0 },
                Decoration { kind: Kind::O, col: 2, row: 1 },
                Decoration { kind: Kind::X, col: 2, row: 2 },
                Decoration { kind: Kind::O, col: 2, row: 3 },
            ],
            vec![(2, Sign::Plus)],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Validation { rule: "pattern", .. }));
    }

    #[test]
    fn canonical_is_shift_invariant() {
        let g = unknot();
        assert_eq!(g.canonical_text(), g.shift_cols(1).canonical_text());
        assert_eq!(g.canonical_text(), g.shift_rows(1).canonical_text());
    }
}
