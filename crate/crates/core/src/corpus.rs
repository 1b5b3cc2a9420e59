//! Diagram constructors: reference diagrams and singularity-introducing
//! surgeries.
//!
//! The named diagrams here (unknot, staircase torus links, the singular
//! trefoils) are the fixed points the test suite measures against. The two
//! surgeries are:
//!
//! * [`add_singular_loop`] — splice a small singular loop into a vertical
//!   strand: a kink whose crossing is a double point oriented with the plane.
//!   The homology of any diagram containing such a loop vanishes identically,
//!   which the verification suite exercises heavily.
//! * [`singularize_crossing`] — fuse a transversal crossing between a
//!   vertical and a horizontal strand into a double point by merging the
//!   crossing into a new singular column. This is how singular versions of
//!   classical knots are produced from their regular diagrams.

use crate::error::{Error, Result};
use crate::grid::{Decoration, Kind, Sign, SingularGrid};

fn illegal<T>(msg: String) -> Result<T> {
    Err(Error::IllegalMove(msg))
}

/// The 2×2 unknot diagram: `O` on the main diagonal, `X` off it.
pub fn unknot2() -> SingularGrid {
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
    .expect("fixed diagram is valid")
}

/// The staircase diagram of size `n ≥ 4`: `O` at `(i + 1, i)` and `X` at
/// `(i + 3, i)`, indices mod `n`.
///
/// This presents the closure of a 2-strand braid: `n = 4` gives the Hopf
/// link, `n = 5` the trefoil whose crossings are all negative.
pub fn staircase(n: usize) -> SingularGrid {
    assert!(n >= 4, "staircase needs size at least 4");
    let mut decos = Vec::with_capacity(2 * n);
    for i in 0..n {
        decos.push(Decoration { kind: Kind::O, col: (i + 1) % n, row: i });
        decos.push(Decoration { kind: Kind::X, col: (i + 3) % n, row: i });
    }
    SingularGrid::new(n, n, decos, vec![], vec![]).expect("staircase is valid")
}

/// A 5×5 trefoil diagram (all four crossings negative).
pub fn trefoil5() -> SingularGrid {
    staircase(5)
}

/// The two-component unlink as two stacked 2×2 blocks.
pub fn unlink2() -> SingularGrid {
    let mut decos = Vec::new();
    for base in [0usize, 2] {
        decos.push(Decoration { kind: Kind::O, col: base, row: base });
        decos.push(Decoration { kind: Kind::O, col: base + 1, row: base + 1 });
        decos.push(Decoration { kind: Kind::X, col: base, row: base + 1 });
        decos.push(Decoration { kind: Kind::X, col: base + 1, row: base });
    }
    SingularGrid::new(4, 4, decos, vec![], vec![]).expect("unlink is valid")
}

/// The Hopf link as a 4×4 staircase.
pub fn hopf() -> SingularGrid {
    staircase(4)
}

/// The fully singular trefoil: both strands of a two-strand cable pass
/// through three stacked double points (circular visiting order 1,2,3,1,2,3),
/// with no regular crossings left over.
///
/// Each singular column follows the fused-crossing local form: kinds XXOO
/// bottom to top, the vertical strand owning the 1st and 3rd decorations, the
/// horizontal one the 2nd and 4th, and the row partners of the 2nd and 3rd
/// decorations on the same side so that either resolution shows exactly one
/// crossing there. The middle double point sits west of the other two, and
/// two regular columns close the cable top-to-bottom.
///
/// `signs` orients the three double points bottom to top.
pub fn trefoil_sing3(signs: [Sign; 3]) -> SingularGrid {
    let os = [(0, 1), (1, 4), (1, 5), (2, 2), (2, 3), (3, 6), (3, 7), (4, 0)];
    let xs = [(0, 6), (1, 2), (1, 3), (2, 0), (2, 1), (3, 4), (3, 5), (4, 7)];
    let mut decos = Vec::new();
    for (col, row) in os {
        decos.push(Decoration { kind: Kind::O, col, row });
    }
    for (col, row) in xs {
        decos.push(Decoration { kind: Kind::X, col, row });
    }
    // Bottom double point = column 2 (rows 0..=3), middle = column 1
    // (rows 2..=5), top = column 3 (rows 4..=7).
    let sing_cols = vec![(1, signs[1]), (2, signs[0]), (3, signs[2])];
    SingularGrid::new(5, 8, decos, sing_cols, vec![]).expect("fixed diagram is valid")
}

/// The trefoil with one double point: [`trefoil5`] with its crossing at
/// column 3, row 1 fused.
pub fn trefoil_sing1(sign: Sign) -> SingularGrid {
    singularize_crossing(&trefoil5(), 3, 1, sign).expect("the staircase crossing is fusable")
}

/// Splices a singular loop into the vertical strand of column `col`.
///
/// Preconditions: column `col` is regular and its two decorations lie in
/// adjacent rows `r` and `r + 1`. The result replaces that short vertical
/// strand by a kink whose crossing is a double point oriented with the plane
/// (sign `+`): complexity grows by two, one singular column appears, and the
/// underlying link is unchanged except for the added singular loop.
pub fn add_singular_loop(grid: &SingularGrid, col: usize) -> Result<SingularGrid> {
    if grid.singular_col(col).is_some() {
        return illegal(format!("loop insertion: column {col} must be regular"));
    }
    let column = grid.column(col);
    let (bot, top) = (*column[0], *column[1]);
    if top.row != bot.row + 1 {
        return illegal(format!(
            "loop insertion: the decorations of column {col} must lie in adjacent rows"
        ));
    }
    let r = bot.row;
    if grid.singular_row(r).is_some() || grid.singular_row(r + 1).is_some() {
        return illegal(format!("loop insertion: rows {r} and {} must be regular", r + 1));
    }
    // The singular column sits right of the rerouted strand when the lower
    // marker is an `O`, left of it when the lower marker is an `X` (the two
    // cases are 180-degree rotations of each other).
    let (sing_at, reg_at) = match bot.kind {
        Kind::O => (col + 1, col),
        Kind::X => (col, col + 1),
    };

    let mut decos: Vec<Decoration> = grid
        .decorations()
        .iter()
        .filter(|d| d.col != col)
        .map(|d| Decoration {
            kind: d.kind,
            col: if d.col > col { d.col + 1 } else { d.col },
            row: if d.row > r { d.row + 2 } else { d.row },
        })
        .collect();
    // Four markers of the singular column, bottom to top: two of the lower
    // kind then two of the upper kind.
    for (i, kind) in [bot.kind, bot.kind, top.kind, top.kind].into_iter().enumerate() {
        decos.push(Decoration { kind, col: sing_at, row: r + i });
    }
    // The rerouted regular column: upper kind below, lower kind above.
    decos.push(Decoration { kind: top.kind, col: reg_at, row: r + 1 });
    decos.push(Decoration { kind: bot.kind, col: reg_at, row: r + 2 });

    let sing_cols = grid
        .singular_cols()
        .iter()
        .map(|&(i, s)| (if i > col { i + 1 } else { i }, s))
        .chain([(sing_at, Sign::Plus)])
        .collect();
    let sing_rows = grid
        .singular_rows()
        .iter()
        .map(|&(i, s)| (if i > r { i + 2 } else { i }, s))
        .collect();
    SingularGrid::new(grid.num_cols() + 1, grid.num_rows() + 2, decos, sing_cols, sing_rows)
}

/// The trefoil with a singular loop spliced in.
///
/// No column of [`trefoil5`] has vertically adjacent decorations, so the
/// diagram is first stabilized at the decoration `(1, 0)` — the eastern
/// sub-column of the new block then carries an adjacent pair — and the loop
/// is spliced there.
pub fn trefoil_loop() -> SingularGrid {
    let stabilized = crate::moves::apply_move(
        &trefoil5(),
        crate::moves::ElementaryMove::Stabilization {
            col: 1,
            row: 0,
            corner: crate::moves::Corner::NW,
        },
    )
    .expect("stabilization of a regular corpus diagram is legal");
    add_singular_loop(&stabilized, 2).expect("the stabilized block column is eligible")
}

/// True if some singular column of `grid` matches a loop inserted by
/// [`add_singular_loop`], oriented with the plane.
pub fn has_singular_loop(grid: &SingularGrid) -> bool {
    for &(c, sign) in grid.singular_cols() {
        if sign != Sign::Plus {
            continue;
        }
        let col = grid.column(c);
        let r = col[0].row;
        if col.iter().enumerate().any(|(i, d)| d.row != r + i) {
            continue;
        }
        let kinds: Vec<Kind> = col.iter().map(|d| d.kind).collect();
        // The rerouted companion column flanks the singular one on the side
        // determined by the kind pattern.
        let reg_at = match kinds[..] {
            [Kind::O, Kind::O, Kind::X, Kind::X] if c > 0 => c - 1,
            [Kind::X, Kind::X, Kind::O, Kind::O] if c + 1 < grid.num_cols() => c + 1,
            _ => continue,
        };
        let want = [(kinds[2], r + 1), (kinds[0], r + 2)];
        if want.iter().all(|&(kind, row)| {
            grid.decoration_at(reg_at, row).is_some_and(|d| d.kind == kind)
        }) {
            return true;
        }
    }
    false
}

/// Fuses the transversal crossing at `(col, row)` — between the vertical
/// strand of column `col` and the horizontal strand of row `row` — into a
/// double point with orientation `sign`, producing a diagram with one more
/// singular column.
///
/// The configuration must be local enough for the surgery to be an isotopy
/// away from the crossing: the vertical strand's upper decoration sits
/// directly above the crossing (row `row + 1`), the crossing is planar
/// (strictly inside both strands without wrapping), the four rows and two
/// columns involved are regular, and no vertical strand obstructs the
/// rerouted horizontal segment (no decoration in row `row + 1` strictly
/// between the crossing and the far end of the horizontal strand).
pub fn singularize_crossing(
    grid: &SingularGrid,
    col: usize,
    row: usize,
    sign: Sign,
) -> Result<SingularGrid> {
    if grid.singular_col(col).is_some() {
        return illegal(format!("crossing fusion: column {col} must be regular"));
    }
    if grid.singular_row(row).is_some() {
        return illegal(format!("crossing fusion: row {row} must be regular"));
    }
    let column = grid.column(col);
    let (low, high) = (*column[0], *column[1]);
    if !(low.row < row && row < high.row) {
        return illegal(format!(
            "crossing fusion: row {row} is not strictly inside the vertical strand of column {col}"
        ));
    }
    if high.row != row + 1 {
        return illegal(format!(
            "crossing fusion: the upper decoration of column {col} must sit at row {}",
            row + 1
        ));
    }
    let row_line = grid.row(row);
    let (e1, e2) = (*row_line[0], *row_line[1]);
    if !(e1.col < col && col < e2.col) {
        return illegal(format!(
            "crossing fusion: column {col} is not strictly inside the horizontal strand of row {row}"
        ));
    }
    // The far end is the one matching the lower vertical decoration's kind;
    // the fused column's strand pairing forces this.
    let far = if e1.kind == low.kind { e1 } else { e2 };
    if far.kind != low.kind {
        return illegal(format!(
            "crossing fusion: neither end of row {row} has kind {}",
            low.kind.letter()
        ));
    }
    if grid.singular_col(far.col).is_some() {
        return illegal(format!("crossing fusion: column {} must be regular", far.col));
    }
    if grid.singular_row(low.row).is_some() || grid.singular_row(high.row).is_some() {
        return illegal(format!(
            "crossing fusion: rows {} and {} must be regular",
            low.row, high.row
        ));
    }
    // Obstruction check for the rerouted far segment.
    let (lo_c, hi_c) = (col.min(far.col), col.max(far.col));
    for c in (lo_c + 1)..hi_c {
        if c != col && grid.decoration_at(c, row + 1).is_some() {
            return illegal(format!(
                "crossing fusion: the strand through ({c}, {}) obstructs the rerouting",
                row + 1
            ));
        }
    }

    // Insert a new row directly above the vertical strand's upper
    // decoration; move that decoration and the far end up into it; fill the
    // vacated cells to form the singular column.
    let bump = |y: usize| if y > row + 1 { y + 1 } else { y };
    let mut decos: Vec<Decoration> = grid
        .decorations()
        .iter()
        .filter(|d| {
            let p = (d.col, d.row);
            p != (high.col, high.row) && p != (far.col, far.row)
        })
        .map(|d| Decoration { kind: d.kind, col: d.col, row: bump(d.row) })
        .collect();
    decos.push(Decoration { kind: high.kind, col, row: row + 2 });
    decos.push(Decoration { kind: far.kind, col: far.col, row: row + 2 });
    decos.push(Decoration { kind: high.kind, col, row: row + 1 });
    decos.push(Decoration { kind: far.kind, col, row });

    let sing_cols = grid.singular_cols().iter().copied().chain([(col, sign)]).collect();
    let sing_rows = grid.singular_rows().iter().map(|&(i, s)| (bump(i), s)).collect();
    SingularGrid::new(grid.num_cols(), grid.num_rows() + 1, decos, sing_cols, sing_rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staircase_components() {
        assert_eq!(trefoil5().components(), 1);
        assert_eq!(hopf().components(), 2);
        assert_eq!(unlink2().components(), 2);
    }

    #[test]
    fn singular_trefoil_is_connected() {
        let g = trefoil_sing3([Sign::Plus; 3]);
        assert_eq!(g.components(), 1);
        assert_eq!(g.n(), 8);
        assert_eq!(g.num_singular(), 3);
    }

    #[test]
    fn loop_on_unknot() {
        let g = add_singular_loop(&unknot2(), 0).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.components(), 1);
        assert!(has_singular_loop(&g));
        // The fixed diagram recorded for this construction.
        let expect = SingularGrid::new(
            3,
            4,
            vec![
                Decoration { kind: Kind::X, col: 0, row: 1 },
                Decoration { kind: Kind::O, col: 0, row: 2 },
                Decoration { kind: Kind::O, col: 1, row: 0 },
                Decoration { kind: Kind::O, col: 1, row: 1 },
                Decoration { kind: Kind::X, col: 1, row: 2 },
                Decoration { kind: Kind::X, col: 1, row: 3 },
                Decoration { kind: Kind::X, col: 2, row: 0 },
                Decoration { kind: Kind::O, col: 2, row: 3 },
            ],
            vec![(1, Sign::Plus)],
            vec![],
        )
        .unwrap();
        assert_eq!(g, expect);
    }

    #[test]
    fn fused_trefoil_matches_recorded_diagram() {
        let g = trefoil_sing1(Sign::Plus);
        assert_eq!(g.n(), 6);
        assert_eq!(g.components(), 1);
        let os = [(1, 0), (2, 1), (3, 2), (3, 3), (4, 4), (0, 5)];
        let xs = [(3, 0), (3, 1), (0, 2), (4, 3), (1, 4), (2, 5)];
        for (c, r) in os {
            assert_eq!(g.decoration_at(c, r).map(|d| d.kind), Some(Kind::O), "O at ({c}, {r})");
        }
        for (c, r) in xs {
            assert_eq!(g.decoration_at(c, r).map(|d| d.kind), Some(Kind::X), "X at ({c}, {r})");
        }
        assert_eq!(g.singular_cols(), &[(3, Sign::Plus)]);
    }
}
