//! Generators, gradings, and the counting differential.
//!
//! A generator is a pair `(mask, σ)`: a resolution of every band together
//! with a bijection between vertical and horizontal curves (a dot on each
//! crossing `V_a ∩ H_{σ(a)}`). The differential counts embedded polygons
//! with corners at two dots of the source, two dots of the target, and at
//! most one selected crossing (*peak*) per band whose resolution the
//! polygon flips from `0` to `1`; polygons must contain no other dot of the
//! source and — in the theory computed here — no drawn decoration. All
//! counts are mod 2.
//!
//! Gradings: with `J(A, B)` counting ordered pairs of points strictly
//! increasing in both coordinates (half the symmetrized count), the Maslov
//! degree of a generator is `J(x, x) − 2J(x, O) + J(O, O) + 1` computed in
//! its own resolution, shifted down by the number of `1`-resolved bands;
//! the Alexander degree is half the difference of the `O`- and `X`-based
//! Maslov numbers, normalized so that (doubled) `2A = M_O − M_X − (n − ℓ)`
//! with no resolution shift.

use itertools::Itertools;
use rayon::prelude::*;

use crate::cube::{Cube, PeakBinding, ResolutionMask, SCALE};
use crate::error::{Error, Result};
use crate::geom::{
    assemble_boundary, cyc_between_strict, ArcKind, ArcSpec, Fine, GridGeometry, Shape,
};
use crate::grid::SingularGrid;
use crate::cube::BandAxis;

/// Default ceiling on `2^k · n!`, the number of generators.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// The chain complex of a diagram: generator gradings plus the mod-2
/// differential as an edge list.
#[derive(Debug, Clone)]
pub struct TildeComplex {
    /// Curves per family in every resolution.
    pub n: usize,
    /// Number of bands (double points).
    pub k: usize,
    /// Number of link components.
    pub components: usize,
    /// Total number of generators, `2^k · n!`.
    pub num_generators: usize,
    /// Maslov degree per generator (resolution shift included).
    pub m: Vec<i32>,
    /// Doubled Alexander degree per generator.
    pub a2: Vec<i32>,
    /// Differential entries `(source, target)`, sorted, odd-parity only.
    pub edges: Vec<(u32, u32)>,
}

/// Factorials fitting in `u64`.
fn fact(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Lexicographic rank of a permutation of `0..n`.
fn perm_rank(perm: &[u8]) -> u64 {
    let n = perm.len();
    let mut rank = 0u64;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count() as u64;
        rank += smaller * fact(n - 1 - i);
    }
    rank
}

/// The permutation of `0..n` with the given lexicographic rank.
fn perm_unrank(n: usize, mut rank: u64) -> Vec<u8> {
    let mut pool: Vec<u8> = (0..n as u8).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let f = fact(n - 1 - i);
        let j = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(j));
    }
    out
}

/// Ordered pairs of `a × b` strictly increasing in both coordinates.
fn count_gt(a: &[(i64, i64)], b: &[(i64, i64)]) -> i64 {
    let mut c = 0;
    for p in a {
        for q in b {
            if (q.0 - p.0) * (q.1 - p.1) > 0 {
                c += 1;
            }
        }
    }
    c
}

/// What a curve of the resolved diagram is, at a fixed resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CurveKind {
    /// Not a band middle: always straight.
    Plain,
    /// Middle of a `0`-resolved band: straight, but flippable.
    Alpha(u32),
    /// Middle of a `1`-resolved band: curved.
    Beta(u32),
}

/// Per-resolution lookup tables.
struct MaskCtx {
    /// Doubled `O` positions (cell centers) in this resolution.
    o2: Vec<(i64, i64)>,
    /// Doubled `X` positions.
    x2: Vec<(i64, i64)>,
    /// `J(O, O)` doubled.
    joo: i64,
    /// `J(X, X)` doubled.
    jxx: i64,
    col_kind: Vec<CurveKind>,
    row_kind: Vec<CurveKind>,
}

struct Builder<'a> {
    cube: &'a Cube,
    geom: &'a GridGeometry,
    gaps: &'a [usize],
    n: usize,
    components: usize,
    nfact: u64,
    masks: Vec<MaskCtx>,
}

impl TildeComplex {
    /// Builds the complex with the calibrated peak binding.
    pub fn build(grid: &SingularGrid, budget: u64) -> Result<TildeComplex> {
        TildeComplex::build_with_binding(grid, budget, PeakBinding::DEFAULT)
    }

    /// Builds the complex with an explicit peak binding (used by the
    /// calibration tooling and the binding-sensitivity tests).
    pub fn build_with_binding(
        grid: &SingularGrid,
        budget: u64,
        binding: PeakBinding,
    ) -> Result<TildeComplex> {
        let cube = Cube::new(grid)?;
        let gaps: Vec<usize> = cube.bands().iter().map(|b| b.peak_gap(binding)).collect();
        TildeComplex::build_with_peaks(grid, budget, &gaps)
    }

    /// Builds the complex with an explicitly chosen peak gap index per band,
    /// bypassing the sign-to-label binding (calibration tooling only).
    pub fn build_with_peaks(
        grid: &SingularGrid,
        budget: u64,
        gaps: &[usize],
    ) -> Result<TildeComplex> {
        let n = grid.n();
        let k = grid.num_singular();
        let total_u128 = (fact(n) as u128) << k;
        if total_u128 > budget as u128 {
            return Err(Error::ResourceLimit(format!(
                "state space 2^{k} * {n}! = {total_u128} exceeds budget {budget}"
            )));
        }
        let total = total_u128 as usize;
        let cube = Cube::new(grid)?;
        let geom = GridGeometry::new(&cube);
        let components = grid.components();
        let nfact = fact(n);

        let masks: Vec<MaskCtx> = (0..1u32 << k)
            .map(|mask| {
                let mut o2 = Vec::with_capacity(n);
                let mut x2 = Vec::with_capacity(n);
                for (kind, c, r) in cube.resolved_decorations(mask) {
                    let p = (2 * c as i64 + 1, 2 * r as i64 + 1);
                    match kind {
                        crate::grid::Kind::O => o2.push(p),
                        crate::grid::Kind::X => x2.push(p),
                    }
                }
                let joo = count_gt(&o2, &o2);
                let jxx = count_gt(&x2, &x2);
                let curve_kind = |band: Option<usize>| match band {
                    Some(bi) if mask & (1 << bi) != 0 => CurveKind::Beta(bi as u32),
                    Some(bi) => CurveKind::Alpha(bi as u32),
                    None => CurveKind::Plain,
                };
                let col_kind = (0..n).map(|a| curve_kind(geom.col_band(a))).collect();
                let row_kind = (0..n).map(|b| curve_kind(geom.row_band(b))).collect();
                MaskCtx { o2, x2, joo, jxx, col_kind, row_kind }
            })
            .collect();

        let builder =
            Builder { cube: &cube, geom: &geom, gaps, n, components, nfact, masks };

        // Gradings.
        let grading: Vec<(i32, i32)> = (0..total as u64)
            .into_par_iter()
            .map(|idx| builder.grading(idx))
            .collect();
        let m = grading.iter().map(|g| g.0).collect();
        let a2 = grading.iter().map(|g| g.1).collect();

        // Differential.
        let mut edges: Vec<(u32, u32)> = (0..total as u64)
            .into_par_iter()
            .map(|idx| builder.boundary(idx))
            .flatten()
            .collect();
        edges.par_sort_unstable();

        Ok(TildeComplex {
            n,
            k,
            components,
            num_generators: total,
            m,
            a2,
            edges,
        })
    }

    /// The resolution mask of generator `idx`.
    pub fn mask_of(&self, idx: usize) -> ResolutionMask {
        (idx as u64 / fact(self.n)) as u32
    }

    /// The permutation of generator `idx`.
    pub fn perm_of(&self, idx: usize) -> Vec<u8> {
        perm_unrank(self.n, idx as u64 % fact(self.n))
    }

    /// The index of the generator `(mask, perm)`.
    pub fn index_of(&self, mask: ResolutionMask, perm: &[u8]) -> usize {
        (mask as u64 * fact(self.n) + perm_rank(perm)) as usize
    }
}

impl Builder<'_> {
    fn split(&self, idx: u64) -> (u32, Vec<u8>) {
        ((idx / self.nfact) as u32, perm_unrank(self.n, idx % self.nfact))
    }

    fn grading(&self, idx: u64) -> (i32, i32) {
        let (mask, perm) = self.split(idx);
        let ctx = &self.masks[mask as usize];
        let dots: Vec<(i64, i64)> =
            perm.iter().enumerate().map(|(a, &b)| (2 * a as i64, 2 * b as i64)).collect();
        let cxx = count_gt(&dots, &dots);
        let m2o = cxx - 2 * count_gt(&dots, &ctx.o2) + ctx.joo + 2;
        let m2x = cxx - 2 * count_gt(&dots, &ctx.x2) + ctx.jxx + 2;
        debug_assert_eq!(m2o.rem_euclid(2), 0, "integral Maslov degree");
        debug_assert_eq!(m2x.rem_euclid(2), 0, "integral basepoint degree");
        // Each 1-resolution drops the Maslov degree by one relative to the
        // 0-resolution, and the whole complex is shifted up by one per band so
        // that the all-ones corner keeps the plain grading of its resolved
        // diagram.
        let shift = self.cube.k() as i64 - mask.count_ones() as i64;
        let m = (m2o / 2 + shift) as i32;
        let a2 = ((m2o - m2x) / 2 - (self.n as i64 - self.components as i64)) as i32;
        (m, a2)
    }

    /// All differential targets of generator `idx`, odd parity only.
    fn boundary(&self, idx: u64) -> Vec<(u32, u32)> {
        let (mask, perm) = self.split(idx);
        let ctx = &self.masks[mask as usize];
        let n = self.n;
        let mut hits: Vec<u32> = Vec::new();

        for vs in 0..n {
            for vt in 0..n {
                if vs == vt {
                    continue;
                }
                let hs = perm[vs] as usize;
                let ht = perm[vt] as usize;
                // Side curves in boundary order: bottom, right, top, left.
                let kinds = [
                    ctx.row_kind[hs],
                    ctx.col_kind[vt],
                    ctx.row_kind[ht],
                    ctx.col_kind[vs],
                ];
                let flippable: Vec<(usize, u32)> = kinds
                    .iter()
                    .enumerate()
                    .filter_map(|(i, k)| match k {
                        CurveKind::Alpha(bi) => Some((i, *bi)),
                        _ => None,
                    })
                    .collect();
                let any_beta = kinds.iter().any(|k| matches!(k, CurveKind::Beta(_)));

                for fmask in 0..(1u32 << flippable.len()) {
                    let mut flips = [None::<u32>; 4];
                    let mut jmask = mask;
                    for (bit, &(side, bi)) in flippable.iter().enumerate() {
                        if fmask & (1 << bit) != 0 {
                            flips[side] = Some(bi);
                            jmask |= 1 << bi;
                        }
                    }
                    let accepted = if fmask == 0 && !any_beta {
                        self.rectangle_case(&perm, mask, vs, vt, hs, ht)
                    } else {
                        self.polygon_case(&perm, mask, jmask, vs, vt, hs, ht, &flips)
                    };
                    if accepted {
                        let mut tperm = perm.clone();
                        tperm[vs] = ht as u8;
                        tperm[vt] = hs as u8;
                        let tidx = jmask as u64 * self.nfact + perm_rank(&tperm);
                        hits.push(tidx as u32);
                    }
                }
            }
        }

        hits.sort_unstable();
        let mut out = Vec::new();
        let mut i = 0;
        while i < hits.len() {
            let mut j = i;
            while j < hits.len() && hits[j] == hits[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                out.push((idx as u32, hits[i]));
            }
            i = j;
        }
        out
    }

    /// Pure-rectangle test: all four sides straight. Interior curves may
    /// still be curved — dot positions account for that — but containment
    /// reduces to cyclic interval tests.
    #[allow(clippy::too_many_arguments)]
    fn rectangle_case(
        &self,
        perm: &[u8],
        mask: u32,
        vs: usize,
        vt: usize,
        hs: usize,
        ht: usize,
    ) -> bool {
        let period = self.geom.period();
        let x0 = SCALE * vs as Fine;
        let x1 = SCALE * vt as Fine;
        let y0 = SCALE * hs as Fine;
        let y1 = SCALE * ht as Fine;
        for a in 0..self.n {
            if a == vs || a == vt {
                continue;
            }
            let p = self.geom.dot_position(a, perm[a] as usize, mask);
            if cyc_between_strict(x0, p.x, x1, period) && cyc_between_strict(y0, p.y, y1, period)
            {
                return false;
            }
        }
        for &(_, p) in self.geom.decorations() {
            if cyc_between_strict(x0, p.x, x1, period) && cyc_between_strict(y0, p.y, y1, period)
            {
                return false;
            }
        }
        true
    }

    /// General polygon test: assemble the lifted boundary and ray-cast.
    #[allow(clippy::too_many_arguments)]
    fn polygon_case(
        &self,
        perm: &[u8],
        mask: u32,
        jmask: u32,
        vs: usize,
        vt: usize,
        hs: usize,
        ht: usize,
        flips: &[Option<u32>; 4],
    ) -> bool {
        let geom = self.geom;
        let period = geom.period();
        let s = geom.dot_position(vs, hs, mask);
        let t = geom.dot_position(vt, ht, mask);
        let u1 = geom.dot_position(vt, hs, jmask);
        let u2 = geom.dot_position(vs, ht, jmask);

        // Per side: the curve index, its axis, direction, endpoints, and
        // whether the walk starts at a source dot (determines the shape
        // order of a composite side).
        let side_data = [
            (BandAxis::Row, hs, 1i64, s, u1, true),
            (BandAxis::Col, vt, 1, u1, t, false),
            (BandAxis::Row, ht, -1, t, u2, true),
            (BandAxis::Col, vs, -1, u2, s, false),
        ];

        let mut sides: Vec<ArcSpec<'_>> = Vec::with_capacity(4);
        for (i, &(axis, curve, dir, from, to, from_is_source)) in side_data.iter().enumerate() {
            let shape_at = |m: u32| match axis {
                BandAxis::Col => geom.vshape(curve, m),
                BandAxis::Row => geom.hshape(curve, m),
            };
            let kind = match flips[i] {
                None => ArcKind::Plain(shape_at(mask)),
                Some(bi) => {
                    let band = &self.cube.bands()[bi as usize];
                    let gap = self.gaps[bi as usize];
                    let peak = geom.bands()[bi as usize].crossing_point(gap);
                    let alpha = Shape::Line(SCALE * band.middle() as Fine);
                    let beta = shape_at(jmask);
                    if from_is_source {
                        ArcKind::Switch { from_shape: alpha, to_shape: beta, peak }
                    } else {
                        ArcKind::Switch { from_shape: beta, to_shape: alpha, peak }
                    }
                }
            };
            sides.push(ArcSpec { axis, dir, from, to, kind });
        }
        let sides: [ArcSpec<'_>; 4] = [sides[0], sides[1], sides[2], sides[3]];
        let segs = match assemble_boundary(&sides, period) {
            Some(s) => s,
            None => return false,
        };

        for a in 0..self.n {
            if a == vs || a == vt {
                continue;
            }
            let p = geom.dot_position(a, perm[a] as usize, mask);
            if crate::geom::interior_count(&segs, period, p) > 0 {
                return false;
            }
        }
        for &(_, p) in geom.decorations() {
            if crate::geom::interior_count(&segs, period, p) > 0 {
                return false;
            }
        }
        true
    }
}

/// Convenience: all permutations of `0..n` in lexicographic (= rank) order.
pub fn all_perms(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..n as u8).permutations(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn rank_matches_lexicographic_enumeration() {
        for n in 1..6 {
            for (i, p) in all_perms(n).enumerate() {
                assert_eq!(perm_rank(&p), i as u64);
                assert_eq!(perm_unrank(n, i as u64), p);
            }
        }
    }

    #[test]
    fn small_unknot_gradings_and_vanishing_differential() {
        let cx = TildeComplex::build(&corpus::unknot2(), DEFAULT_BUDGET).unwrap();
        assert_eq!(cx.num_generators, 2);
        // Identity permutation (diagonal dots) and the swap.
        let id = cx.index_of(0, &[0, 1]);
        let sw = cx.index_of(0, &[1, 0]);
        assert_eq!((cx.m[id], cx.a2[id]), (-1, -2));
        assert_eq!((cx.m[sw], cx.a2[sw]), (0, 0));
        // Every small rectangle contains a decoration, so no edges survive.
        assert!(cx.edges.is_empty());
    }

    #[test]
    fn trefoil_edges_respect_gradings() {
        let cx = TildeComplex::build(&corpus::trefoil5(), DEFAULT_BUDGET).unwrap();
        assert_eq!(cx.num_generators, 120);
        assert!(!cx.edges.is_empty());
        for &(x, y) in &cx.edges {
            assert_eq!(cx.m[x as usize] - cx.m[y as usize], 1, "degree drop");
            assert_eq!(cx.a2[x as usize], cx.a2[y as usize], "filtration preserved");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = TildeComplex::build(&corpus::trefoil5(), 10).unwrap_err();
        assert!(matches!(err, crate::error::Error::ResourceLimit(_)));
    }
}
