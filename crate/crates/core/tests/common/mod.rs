//! Shared helpers for the integration tests: a from-scratch enumerator for
//! the homology of *regular* diagrams, and a dense GF(2) rank routine.
//!
//! The enumerator is deliberately independent of the library's machinery:
//! its own permutation listing, its own planar pair-counting gradings, its
//! own torus-rectangle differential, and its own dense linear algebra. It
//! exists so the production pipeline can be checked against a second
//! implementation that shares no code with it beyond the diagram accessors.
#![allow(dead_code)]

use std::collections::BTreeMap;

use gridfloer_core::grid::{Kind, SingularGrid};

/// Dense GF(2) rank of a list of bit-rows (each row a `Vec<u64>` of words).
pub fn dense_rank_f2(mut rows: Vec<Vec<u64>>) -> usize {
    let words = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for pivot_bit in 0..(words * 64) {
        let (w, b) = (pivot_bit / 64, pivot_bit % 64);
        let Some(pos) = (rank..rows.len()).find(|&i| rows[i][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pos);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[w] >> b & 1 == 1 {
                for (dst, src) in row.iter_mut().zip(&pivot) {
                    *dst ^= src;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All permutations of `0..n` in a fixed order, via Heap's algorithm.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut a: Vec<usize> = (0..n).collect();
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k % 2 == 0 {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut a, &mut out);
    out
}

/// Count of ordered pairs `a × b` strictly increasing in both coordinates.
fn inc_pairs(a: &[(i64, i64)], b: &[(i64, i64)]) -> i64 {
    let mut c = 0;
    for p in a {
        for q in b {
            if q.0 > p.0 && q.1 > p.1 {
                c += 1;
            }
        }
    }
    c
}

/// Is `v` strictly inside the cyclic open interval `(lo, hi)` mod `n`?
fn strictly_between(lo: usize, hi: usize, v: usize, n: usize) -> bool {
    if v == lo || v == hi {
        return false;
    }
    ((v + n - lo) % n) < ((hi + n - lo) % n)
}

/// Is `v` one of the cells of the cyclic half-open interval `[lo, hi)` mod
/// `n`? (`lo == hi` means the full circle is excluded — callers never pass
/// that here.)
fn in_cells(lo: usize, hi: usize, v: usize, n: usize) -> bool {
    ((v + n - lo) % n) < ((hi + n - lo) % n)
}

/// Homology table of the fully blocked complex of a *regular* diagram,
/// keyed `(maslov, doubled_alexander) → rank`, computed from scratch.
pub fn naive_tilde_table(grid: &SingularGrid) -> BTreeMap<(i32, i32), u64> {
    assert!(grid.is_regular(), "the naive enumerator handles regular diagrams");
    let n = grid.n();
    assert!(n <= 6, "factorial enumeration is sized for small diagrams");

    // Decoration cells, as doubled planar coordinates (cell centers), plus
    // per-column lookup of the O and X rows.
    let mut o2 = Vec::new();
    let mut x2 = Vec::new();
    let mut o_row = vec![0usize; n];
    let mut x_row = vec![0usize; n];
    let mut o_col_of_row = vec![0usize; n];
    for d in grid.decorations() {
        let p = (2 * d.col as i64 + 1, 2 * d.row as i64 + 1);
        match d.kind {
            Kind::O => {
                o2.push(p);
                o_row[d.col] = d.row;
                o_col_of_row[d.row] = d.col;
            }
            Kind::X => {
                x2.push(p);
                x_row[d.col] = d.row;
            }
        }
    }

    // Link components: follow column → its X's row → that row's O → column.
    let components = {
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                c = o_col_of_row[x_row[c]];
            }
        }
        count
    };

    let ioo = inc_pairs(&o2, &o2);
    let ixx = inc_pairs(&x2, &x2);

    // Gradings per generator. A generator is a permutation sigma: the dot on
    // vertical line i sits at horizontal line sigma(i); planar coordinates
    // are taken in the fundamental domain, doubled.
    let perms = permutations(n);
    let index_of: BTreeMap<&[usize], usize> =
        perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();

    let grading = |sigma: &[usize]| -> (i32, i32) {
        let dots: Vec<(i64, i64)> =
            sigma.iter().enumerate().map(|(i, &r)| (2 * i as i64, 2 * r as i64)).collect();
        let ixx_dots = inc_pairs(&dots, &dots);
        let s_o = inc_pairs(&dots, &o2) + inc_pairs(&o2, &dots);
        let s_x = inc_pairs(&dots, &x2) + inc_pairs(&x2, &dots);
        let m = ixx_dots - s_o + ioo + 1;
        let a2 = s_x - s_o + ioo - ixx - (n as i64 - components as i64);
        (m as i32, a2 as i32)
    };
    let grades: Vec<(i32, i32)> = perms.iter().map(|p| grading(p)).collect();

    // The differential: for each generator and each unordered column pair,
    // the two torus rectangles from it to the transposed generator; a
    // rectangle counts when none of its cells holds a decoration and no
    // other dot lies in its open interior.
    let deco_cells: Vec<(usize, usize)> =
        grid.decorations().iter().map(|d| (d.col, d.row)).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (xi, sigma) in perms.iter().enumerate() {
        for i in 0..n {
            for j in i + 1..n {
                let (ri, rj) = (sigma[i], sigma[j]);
                let mut target = sigma.clone();
                target.swap(i, j);
                let yi = index_of[target.as_slice()];
                let mut count = 0u32;
                for (clo, chi, rlo, rhi) in [(i, j, ri, rj), (j, i, rj, ri)] {
                    let blocked = deco_cells
                        .iter()
                        .any(|&(c, r)| in_cells(clo, chi, c, n) && in_cells(rlo, rhi, r, n));
                    if blocked {
                        continue;
                    }
                    let dotted = (0..n).filter(|&a| a != i && a != j).any(|a| {
                        strictly_between(clo, chi, a, n)
                            && strictly_between(rlo, rhi, sigma[a], n)
                    });
                    if !dotted {
                        count += 1;
                    }
                }
                if count % 2 == 1 {
                    assert_eq!(
                        (grades[xi].0 - 1, grades[xi].1),
                        grades[yi],
                        "enumerator self-check: a rectangle must drop the \
                         homological degree by one and keep the other grading"
                    );
                    edges.push((xi, yi));
                }
            }
        }
    }

    // Homology ranks, block by block.
    let mut blocks: BTreeMap<(i32, i32), Vec<usize>> = BTreeMap::new();
    for (i, &g) in grades.iter().enumerate() {
        blocks.entry(g).or_default().push(i);
    }
    let boundary_rank = |from: &(i32, i32)| -> usize {
        let to = (from.0 - 1, from.1);
        let (Some(src), Some(dst)) = (blocks.get(from), blocks.get(&to)) else {
            return 0;
        };
        let dst_pos: BTreeMap<usize, usize> =
            dst.iter().enumerate().map(|(p, &g)| (g, p)).collect();
        let words = dst.len().div_ceil(64);
        let rows: Vec<Vec<u64>> = src
            .iter()
            .map(|&g| {
                let mut row = vec![0u64; words];
                for &(x, y) in edges.iter().filter(|&&(x, _)| x == g) {
                    let p = dst_pos[&y];
                    row[p / 64] ^= 1 << (p % 64);
                }
                row
            })
            .collect();
        dense_rank_f2(rows)
    };
    let mut table = BTreeMap::new();
    for (&g, gens) in &blocks {
        let out_rank = boundary_rank(&g);
        let in_rank = boundary_rank(&(g.0 + 1, g.1));
        let h = gens.len() - out_rank - in_rank;
        if h > 0 {
            table.insert(g, h as u64);
        }
    }
    table
}
