//! Random diagram generation for property tests and fuzzing.
//!
//! Diagrams are sampled in two stages: a random regular diagram (two
//! permutations with no fixed column cell in common), then a requested number
//! of adjacent column/row pairs merged into singular columns/rows, with
//! rejection of merges that violate a structural rule. Every returned diagram
//! is valid by construction; the *link* it presents is arbitrary, which is
//! exactly what structural property tests want.

use rand::prelude::*;

use crate::corpus::add_singular_loop;
use crate::grid::{Decoration, Kind, Sign, SingularGrid};
use crate::moves::{apply_move, Corner, ElementaryMove};

/// Samples a random regular diagram of complexity `n ≥ 2`.
pub fn random_regular(rng: &mut impl Rng, n: usize) -> SingularGrid {
    assert!(n >= 2, "a diagram needs complexity at least 2");
    loop {
        let mut sigma_o: Vec<usize> = (0..n).collect();
        let mut sigma_x: Vec<usize> = (0..n).collect();
        sigma_o.shuffle(rng);
        sigma_x.shuffle(rng);
        if sigma_o.iter().zip(&sigma_x).any(|(a, b)| a == b) {
            continue; // an O and an X in the same cell
        }
        let mut decos = Vec::with_capacity(2 * n);
        for c in 0..n {
            decos.push(Decoration { kind: Kind::O, col: c, row: sigma_o[c] });
            decos.push(Decoration { kind: Kind::X, col: c, row: sigma_x[c] });
        }
        return SingularGrid::new(n, n, decos, vec![], vec![])
            .expect("permutation diagrams are valid");
    }
}

/// Merges the adjacent columns `c` and `c + 1` of a diagram into one
/// singular column, if the result is valid and every band is plumb (so the
/// sample is usable by the homology pipeline).
fn merge_cols(grid: &SingularGrid, c: usize, sign: Sign) -> Option<SingularGrid> {
    let decos = grid
        .decorations()
        .iter()
        .map(|d| Decoration {
            kind: d.kind,
            col: if d.col > c { d.col - 1 } else { d.col },
            row: d.row,
        })
        .collect();
    let sing_cols = grid
        .singular_cols()
        .iter()
        .map(|&(i, s)| (if i > c { i - 1 } else { i }, s))
        .chain([(c, sign)])
        .collect();
    let sing_rows = grid.singular_rows().to_vec();
    SingularGrid::new(grid.num_cols() - 1, grid.num_rows(), decos, sing_cols, sing_rows)
        .ok()
        .filter(|g| crate::cube::check_plumb(g).is_ok())
}

/// Samples a random diagram of complexity `n` with exactly `k` singular
/// columns/rows.
///
/// Internally retries until the requested number of merges succeeds; for the
/// small `n`, `k` used by tests a sample is found quickly.
pub fn random_singular(rng: &mut impl Rng, n: usize, k: usize) -> SingularGrid {
    assert!(n >= 2 * k + 2, "complexity {n} too small for {k} singular lines");
    'outer: loop {
        let mut grid = random_regular(rng, n);
        for _ in 0..k {
            // Collect every adjacent pair, on both axes, whose merge is valid.
            let mut options: Vec<SingularGrid> = Vec::new();
            let sign = if rng.gen::<bool>() { Sign::Plus } else { Sign::Minus };
            for c in 0..grid.num_cols().saturating_sub(1) {
                if let Some(merged) = merge_cols(&grid, c, sign) {
                    options.push(merged);
                }
            }
            let flipped = crate::transform::diagonal_flip(&grid);
            for c in 0..flipped.num_cols().saturating_sub(1) {
                if let Some(merged) = merge_cols(&flipped, c, sign) {
                    options.push(crate::transform::diagonal_flip(&merged));
                }
            }
            match options.choose(rng) {
                Some(g) => grid = g.clone(),
                None => continue 'outer,
            }
        }
        return grid;
    }
}

/// Samples a random diagram containing a singular loop.
///
/// A random regular diagram is stabilized at a random decoration — which
/// always produces a column whose two decorations sit in adjacent rows — and
/// the loop is spliced into that column. The result has complexity `n + 3`
/// and one singular column.
pub fn random_with_loop(rng: &mut impl Rng, n: usize) -> SingularGrid {
    let grid = random_regular(rng, n);
    loop {
        let d = *grid.decorations().choose(rng).expect("diagram has decorations");
        let corner = *[Corner::NW, Corner::NE, Corner::SW, Corner::SE].choose(rng).unwrap();
        let Ok(stabilized) = apply_move(
            &grid,
            ElementaryMove::Stabilization { col: d.col, row: d.row, corner },
        ) else {
            continue;
        };
        // The block's sub-column away from the empty corner holds two block
        // markers in adjacent rows — always eligible for the loop splice.
        let c = if corner.west() { d.col + 1 } else { d.col };
        match add_singular_loop(&stabilized, c) {
            Ok(g) => return g,
            Err(_) => continue,
        }
    }
}
