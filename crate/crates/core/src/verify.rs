//! Structural self-checks: the theorems the implementation must satisfy.
//!
//! Every check returns a [`CheckOutcome`] — a pass/fail record with an
//! optional witness — rather than panicking, so failures can be reported
//! honestly by the CLI (`verify` subcommand) and the acceptance suite.
//!
//! The checks:
//! * `d ∘ d = 0` over GF(2);
//! * the differential drops the Maslov degree by exactly 1 and preserves
//!   the Alexander degree;
//! * diagrams containing a singular loop have vanishing homology;
//! * the desingularization identities: the complex is block-triangular
//!   along each band (its two diagonal blocks are the complexes of the two
//!   single-band resolutions), and Euler characteristics satisfy
//!   `χ(G) = χ(G₀) − χ(G₁)`;
//! * symmetry laws for the diagonal flip, the mirror (flip + decoration
//!   swap), and the quarter turn;
//! * invariance of the reduced polynomial under random legal-move walks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::TildeComplex;
use crate::cube::BandAxis;
use crate::error::Result;
use crate::grid::SingularGrid;
use crate::homology::{self, Flavor};
use crate::moves::{apply_move, legal_moves, ElementaryMove};
use crate::poly::LaurentTQ;
use crate::transform::{decoration_swap, diagonal_flip, quarter_turn};

/// Result of one structural check, serializable as a JSON line.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    /// Check name.
    pub check: String,
    /// Label of the diagram the check ran on.
    pub grid: String,
    /// RNG seed, for randomized checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Whether the check passed.
    pub pass: bool,
    /// Counterexample description when it failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckOutcome {
    fn pass(check: &str, grid: &str) -> CheckOutcome {
        CheckOutcome {
            check: check.into(),
            grid: grid.into(),
            seed: None,
            pass: true,
            witness: None,
        }
    }

    fn fail(check: &str, grid: &str, witness: String) -> CheckOutcome {
        CheckOutcome {
            check: check.into(),
            grid: grid.into(),
            seed: None,
            pass: false,
            witness: Some(witness),
        }
    }

    /// Attaches the RNG seed (randomized checks).
    pub fn with_seed(mut self, seed: u64) -> CheckOutcome {
        self.seed = Some(seed);
        self
    }
}

/// Renders outcomes as JSON lines.
pub fn to_jsonl(outcomes: &[CheckOutcome]) -> String {
    outcomes
        .iter()
        .map(|o| serde_json::to_string(o).expect("outcome serializes"))
        .map(|l| l + "\n")
        .collect()
}

/// Per-source offsets into the sorted edge list.
fn edge_offsets(cx: &TildeComplex) -> Vec<usize> {
    let mut starts = vec![0usize; cx.num_generators + 1];
    for &(x, _) in &cx.edges {
        starts[x as usize + 1] += 1;
    }
    for i in 0..cx.num_generators {
        starts[i + 1] += starts[i];
    }
    starts
}

/// Checks `d ∘ d = 0`.
pub fn check_d_squared(label: &str, grid: &SingularGrid, budget: u64) -> Result<CheckOutcome> {
    let cx = TildeComplex::build(grid, budget)?;
    let starts = edge_offsets(&cx);
    let succ = |g: usize| &cx.edges[starts[g]..starts[g + 1]];
    for x in 0..cx.num_generators {
        let mut seconds: Vec<u32> = Vec::new();
        for &(_, y) in succ(x) {
            seconds.extend(succ(y as usize).iter().map(|&(_, z)| z));
        }
        seconds.sort_unstable();
        let mut i = 0;
        while i < seconds.len() {
            let mut j = i;
            while j < seconds.len() && seconds[j] == seconds[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                let z = seconds[i] as usize;
                return Ok(CheckOutcome::fail(
                    "d_squared",
                    label,
                    format!(
                        "d²(x) ≠ 0: x={x} (m={}, 2a={}) reaches z={z} (m={}, 2a={}) {} times",
                        cx.m[x],
                        cx.a2[x],
                        cx.m[z],
                        cx.a2[z],
                        j - i
                    ),
                ));
            }
            i = j;
        }
    }
    Ok(CheckOutcome::pass("d_squared", label))
}

/// Checks the grading laws on every differential entry.
pub fn check_gradings(label: &str, grid: &SingularGrid, budget: u64) -> Result<CheckOutcome> {
    let cx = TildeComplex::build(grid, budget)?;
    for &(x, y) in &cx.edges {
        let (x, y) = (x as usize, y as usize);
        if cx.m[x] - cx.m[y] != 1 || cx.a2[x] != cx.a2[y] {
            return Ok(CheckOutcome::fail(
                "gradings",
                label,
                format!(
                    "edge {x}→{y}: Δm={}, Δ2a={}",
                    cx.m[x] - cx.m[y],
                    cx.a2[x] - cx.a2[y]
                ),
            ));
        }
    }
    Ok(CheckOutcome::pass("gradings", label))
}

/// Checks that a diagram (which must contain a singular loop) has vanishing
/// homology.
pub fn check_acyclicity(label: &str, grid: &SingularGrid, budget: u64) -> Result<CheckOutcome> {
    let cx = TildeComplex::build(grid, budget)?;
    let table = homology::tilde_rank_table(&cx);
    if table.is_empty() {
        Ok(CheckOutcome::pass("loop_acyclicity", label))
    } else {
        Ok(CheckOutcome::fail(
            "loop_acyclicity",
            label,
            format!("nonzero ranks: {:?}", table),
        ))
    }
}

/// Maps a generator of the full diagram into the complex of a single-band
/// resolution by deleting band `pi` from its mask.
fn project_index(cx: &TildeComplex, sub: &TildeComplex, idx: usize, pi: usize) -> usize {
    let mask = cx.mask_of(idx);
    let low = mask & ((1 << pi) - 1);
    let high = (mask >> (pi + 1)) << pi;
    sub.index_of(low | high, &cx.perm_of(idx))
}

/// Checks the desingularization identities along every band: diagonal
/// blocks of the differential match the complexes of the two single-band
/// resolutions, and Euler characteristics are additive.
pub fn check_desingularization(
    label: &str,
    grid: &SingularGrid,
    budget: u64,
) -> Result<CheckOutcome> {
    let check = "desingularization";
    let cx = TildeComplex::build(grid, budget)?;
    let euler = homology::compute(grid, Flavor::Hat, budget)?.euler_poly;

    let bands: Vec<(BandAxis, usize)> = grid
        .singular_cols()
        .iter()
        .map(|&(c, _)| (BandAxis::Col, c))
        .chain(grid.singular_rows().iter().map(|&(r, _)| (BandAxis::Row, r)))
        .collect();

    for (pi, &(axis, index)) in bands.iter().enumerate() {
        let mut halves = Vec::new();
        for bit in [false, true] {
            let sub_grid = crate::cube::desingularize_one(grid, axis, index, bit);
            let sub = TildeComplex::build(&sub_grid, budget)?;

            // Diagonal block: edges of the full complex staying at this bit.
            let bitval = u32::from(bit) << pi;
            let mut block: Vec<(u32, u32)> = cx
                .edges
                .iter()
                .filter(|&&(x, y)| {
                    cx.mask_of(x as usize) & (1 << pi) == bitval
                        && cx.mask_of(y as usize) & (1 << pi) == bitval
                })
                .map(|&(x, y)| {
                    (
                        project_index(&cx, &sub, x as usize, pi) as u32,
                        project_index(&cx, &sub, y as usize, pi) as u32,
                    )
                })
                .collect();
            block.sort_unstable();
            if block != sub.edges {
                return Ok(CheckOutcome::fail(
                    check,
                    label,
                    format!(
                        "band {pi}: diagonal block at bit {} has {} entries, \
                         resolved diagram has {}",
                        u32::from(bit),
                        block.len(),
                        sub.edges.len()
                    ),
                ));
            }
            halves.push(sub_grid);
        }

        let e0 = homology::compute(&halves[0], Flavor::Hat, budget)?.euler_poly;
        let e1 = homology::compute(&halves[1], Flavor::Hat, budget)?.euler_poly;
        let minus_one = LaurentTQ::from_terms(&[(0, 0, -1)]);
        let mut expected = e0.clone();
        expected.add_assign(&e1.mul(&minus_one));
        if expected != euler {
            return Ok(CheckOutcome::fail(
                check,
                label,
                format!(
                    "band {pi}: χ = {euler} but χ₀ − χ₁ = {expected} (χ₀ = {e0}, χ₁ = {e1})"
                ),
            ));
        }
    }
    Ok(CheckOutcome::pass(check, label))
}

/// Checks the three symmetry laws of the reduced polynomial.
pub fn check_symmetries(label: &str, grid: &SingularGrid, budget: u64) -> Result<CheckOutcome> {
    let check = "symmetries";
    let ell = grid.components() as i32;
    let k = grid.num_singular() as i32;

    let tilde = homology::compute(grid, Flavor::Tilde, budget)?.poly;
    let hat = homology::compute(grid, Flavor::Hat, budget)?.poly;

    let flipped = homology::compute(&diagonal_flip(grid), Flavor::Tilde, budget)?.poly;
    if flipped != tilde {
        return Ok(CheckOutcome::fail(
            check,
            label,
            format!("diagonal flip changed the polynomial: {tilde} vs {flipped}"),
        ));
    }

    let mirror_grid = decoration_swap(&diagonal_flip(grid));
    let mirror = homology::compute(&mirror_grid, Flavor::Hat, budget)?.poly;
    if mirror != hat.mirror_subst() {
        return Ok(CheckOutcome::fail(
            check,
            label,
            format!(
                "mirror law failed: got {mirror}, expected {}",
                hat.mirror_subst()
            ),
        ));
    }

    let turned = homology::compute(&quarter_turn(grid), Flavor::Hat, budget)?.poly;
    let expected = hat.invert_vars().mul_monomial(1 - ell + k, 0);
    if turned != expected {
        return Ok(CheckOutcome::fail(
            check,
            label,
            format!("quarter-turn law failed: got {turned}, expected {expected}"),
        ));
    }

    Ok(CheckOutcome::pass(check, label))
}

/// Policy knobs of the random-move walker.
#[derive(Debug, Clone, Copy)]
pub struct FuzzConfig {
    /// Number of moves per walk.
    pub steps: usize,
    /// Complexity ceiling: stabilizations are disallowed at or above it.
    pub size_cap: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { steps: 6, size_cap: 8 }
    }
}

fn is_stab(mv: &ElementaryMove) -> bool {
    matches!(mv, ElementaryMove::Stabilization { .. })
}

fn is_destab(mv: &ElementaryMove) -> bool {
    matches!(mv, ElementaryMove::Destabilization { .. })
}

/// Picks the next move: half the time a size-neutral move, otherwise a
/// stabilization (40%) or destabilization (60%), subject to availability
/// and the size cap.
fn pick_move(
    rng: &mut impl Rng,
    moves: &[ElementaryMove],
    n: usize,
    cap: usize,
) -> Option<ElementaryMove> {
    let neutral: Vec<&ElementaryMove> =
        moves.iter().filter(|m| !is_stab(m) && !is_destab(m)).collect();
    let stabs: Vec<&ElementaryMove> =
        moves.iter().filter(|m| is_stab(m) && n < cap).collect();
    let destabs: Vec<&ElementaryMove> = moves.iter().filter(|m| is_destab(m)).collect();
    fn choose(rng: &mut impl Rng, list: &[&ElementaryMove]) -> ElementaryMove {
        *list[rng.gen_range(0..list.len())]
    }
    if rng.gen_bool(0.5) && !neutral.is_empty() {
        return Some(choose(rng, &neutral));
    }
    let prefer_stab = rng.gen_bool(0.4);
    let (first, second) = if prefer_stab { (&stabs, &destabs) } else { (&destabs, &stabs) };
    for list in [first, second, &neutral] {
        if !list.is_empty() {
            return Some(choose(rng, list));
        }
    }
    None
}

/// Runs a random legal-move walk from `grid`, recomputing the reduced
/// polynomial after every move and failing on the first change.
pub fn fuzz_invariance(
    label: &str,
    grid: &SingularGrid,
    seed: u64,
    config: FuzzConfig,
    budget: u64,
) -> Result<CheckOutcome> {
    let check = "move_invariance";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reference = homology::compute(grid, Flavor::Hat, budget)?.poly;
    let mut current = grid.clone();
    let mut history: Vec<String> = Vec::new();
    for step in 0..config.steps {
        let moves = legal_moves(&current);
        let Some(mv) = pick_move(&mut rng, &moves, current.n(), config.size_cap) else {
            break;
        };
        let next = apply_move(&current, mv).map_err(|e| {
            crate::error::Error::IllegalMove(format!(
                "legal_moves offered an inapplicable move {mv:?}: {e}"
            ))
        })?;
        history.push(format!("{mv:?}"));
        let poly = homology::compute(&next, Flavor::Hat, budget)?.poly;
        if poly != reference {
            return Ok(CheckOutcome::fail(
                check,
                label,
                format!(
                    "polynomial changed after step {step}: {reference} became {poly}; \
                     moves: [{}]; diagram:\n{}",
                    history.join(", "),
                    next.to_text()
                ),
            )
            .with_seed(seed));
        }
        current = next;
    }
    Ok(CheckOutcome::pass(check, label).with_seed(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::DEFAULT_BUDGET;
    use crate::corpus;

    #[test]
    fn unknot_passes_basic_checks() {
        let g = corpus::unknot2();
        assert!(check_d_squared("unknot2", &g, DEFAULT_BUDGET).unwrap().pass);
        assert!(check_gradings("unknot2", &g, DEFAULT_BUDGET).unwrap().pass);
        assert!(check_symmetries("unknot2", &g, DEFAULT_BUDGET).unwrap().pass);
    }

    #[test]
    fn jsonl_shape() {
        let o = CheckOutcome::pass("d_squared", "unknot2").with_seed(3);
        let line = to_jsonl(&[o]);
        assert!(line.contains("\"check\":\"d_squared\""));
        assert!(line.contains("\"seed\":3"));
        assert!(line.ends_with('\n'));
    }
}
