//! Global diagram symmetries.
//!
//! Unlike the elementary moves, these transforms change the presented link in
//! a controlled way, and the homology changes by a corresponding closed
//! formula (verified in `verify`):
//!
//! * [`diagonal_flip`] — transpose the diagram across the south-west to
//!   north-east diagonal. The result presents the same underlying link with
//!   every component's orientation reversed; double point signs are kept.
//! * [`decoration_swap`] — exchange every `O` with an `X`. The result
//!   presents the mirror link with the original component orientations and
//!   all double point signs reversed.
//! * [`quarter_turn`] — the composite of the two (realized directly as an
//!   upside-down reflection of the diagram): the mirror link with reversed
//!   component orientations, double point signs reversed.

use crate::grid::{Decoration, SingularGrid};

/// A named diagram symmetry, for use in CLIs and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryTransform {
    /// Transpose across the main diagonal.
    DiagonalFlip,
    /// Exchange `O` and `X` markers.
    DecorationSwap,
    /// Reflect the diagram upside down.
    QuarterTurn,
}

/// Applies the named transform.
pub fn apply_transform(grid: &SingularGrid, t: SymmetryTransform) -> SingularGrid {
    match t {
        SymmetryTransform::DiagonalFlip => diagonal_flip(grid),
        SymmetryTransform::DecorationSwap => decoration_swap(grid),
        SymmetryTransform::QuarterTurn => quarter_turn(grid),
    }
}

/// Transposes the diagram: cell `(c, r)` goes to `(r, c)`, columns and rows
/// trade places. Double point signs are preserved.
pub fn diagonal_flip(grid: &SingularGrid) -> SingularGrid {
    let decos = grid
        .decorations()
        .iter()
        .map(|d| Decoration { kind: d.kind, col: d.row, row: d.col })
        .collect();
    SingularGrid::new(
        grid.num_rows(),
        grid.num_cols(),
        decos,
        grid.singular_rows().to_vec(),
        grid.singular_cols().to_vec(),
    )
    .expect("transposition preserves validity")
}

/// Swaps every `O` marker with an `X` marker in place. Double point signs
/// are reversed.
pub fn decoration_swap(grid: &SingularGrid) -> SingularGrid {
    let decos = grid
        .decorations()
        .iter()
        .map(|d| Decoration { kind: d.kind.flip(), ..*d })
        .collect();
    let rev = |v: &[(usize, crate::grid::Sign)]| v.iter().map(|&(i, s)| (i, s.flip())).collect();
    SingularGrid::new(
        grid.num_cols(),
        grid.num_rows(),
        decos,
        rev(grid.singular_cols()),
        rev(grid.singular_rows()),
    )
    .expect("marker swap preserves validity")
}

/// Reflects the diagram upside down: cell `(c, r)` goes to
/// `(c, num_rows - 1 - r)`. Double point signs are reversed.
///
/// This equals the transpose composed with a quarter rotation of the plane,
/// whence the name.
pub fn quarter_turn(grid: &SingularGrid) -> SingularGrid {
    let h = grid.num_rows();
    let decos = grid
        .decorations()
        .iter()
        .map(|d| Decoration { kind: d.kind, col: d.col, row: h - 1 - d.row })
        .collect();
    let sing_rows = grid
        .singular_rows()
        .iter()
        .map(|&(i, s)| (h - 1 - i, s.flip()))
        .collect();
    let sing_cols = grid
        .singular_cols()
        .iter()
        .map(|&(i, s)| (i, s.flip()))
        .collect();
    SingularGrid::new(grid.num_cols(), h, decos, sing_cols, sing_rows)
        .expect("reflection preserves validity")
}
