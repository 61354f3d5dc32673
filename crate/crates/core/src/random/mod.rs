//! Seeded generators for the random graph models.
//!
//! Every generator is a pure function of its parameters and a [`Seed`]. The
//! pseudorandom stream is ChaCha8 keyed by the seed; sub-tasks draw from
//! child seeds obtained with [`Seed::derive`], so adding a draw in one place
//! never shifts the stream seen by another.

mod gap;

pub use gap::{
    cycle_plus_matching, gap_sequence_from_subset, subdivide, subdivide_cycle_model,
    subset_from_gap_sequence, GapSequence, MatchingRule, SubdivisionRecord,
};

use std::collections::HashMap;

use rand::seq::index;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ordered, Graph, Multigraph, Vertex};

pub type Rng64 = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Seed {
    pub fn rng(self) -> Rng64 {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Child seed for sub-task `tag`.
    pub fn derive(self, tag: u64) -> Seed {
        Seed(mix64(self.0 ^ mix64(tag.wrapping_add(GOLDEN_GAMMA))))
    }

    /// Child seed along a path of tags, e.g. `(n, r, trial)`.
    pub fn derive_path(self, tags: &[u64]) -> Seed {
        tags.iter().fold(self, |s, &t| s.derive(t))
    }
}

/// Configuration-model state: `n` cells of `r` points, point `p` lying in
/// cell `p / r`, with `partner[p]` its matched point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingState {
    pub n: usize,
    pub r: usize,
    pub partner: Vec<usize>,
}

impl PairingState {
    #[inline]
    pub fn cell(&self, point: usize) -> usize {
        point / self.r
    }

    /// The pairs `(p, partner[p])` with `p < partner[p]`, in point order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(p, &q)| p < q)
            .map(|(p, &q)| (p, q))
    }

    /// Cells as vertices, pairs as edges.
    pub fn to_multigraph(&self) -> Multigraph {
        let edges: Vec<_> = self
            .pairs()
            .map(|(p, q)| (self.cell(p), self.cell(q)))
            .collect();
        Multigraph::new(self.n, &edges).expect("cells are in range")
    }
}

fn check_points(n: usize, r: usize) -> Result<()> {
    if (n * r) % 2 == 1 {
        return Err(Error::OddPointCount { n, r });
    }
    Ok(())
}

/// Uniform perfect matching on the `n·r` points.
pub fn sample_pairing(n: usize, r: usize, seed: Seed) -> Result<PairingState> {
    check_points(n, r)?;
    let mut rng = seed.rng();
    let mut points: Vec<usize> = (0..n * r).collect();
    let mut partner = vec![0; n * r];
    // points[i] is matched to a uniform choice among the remaining points
    for i in (0..points.len()).step_by(2) {
        let j = rng.gen_range(i + 1..points.len());
        points.swap(i + 1, j);
        let (p, q) = (points[i], points[i + 1]);
        partner[p] = q;
        partner[q] = p;
    }
    Ok(PairingState { n, r, partner })
}

/// How [`sample_regular`] draws simple `r`-regular graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegularSampler {
    /// Pairing model conditioned on simplicity: exactly uniform. Acceptance
    /// probability is about `exp(-(r²-1)/4)`.
    Pairing,
    /// Steger–Wormald sequential pairing avoiding loops and parallel edges:
    /// asymptotically uniform for fixed `r`, practical for large `r`.
    StegerWormald,
}

impl RegularSampler {
    /// Exact rejection while it stays cheap (r ≤ 6), sequential beyond.
    pub fn auto(r: usize) -> Self {
        if r <= 6 {
            RegularSampler::Pairing
        } else {
            RegularSampler::StegerWormald
        }
    }
}

fn check_regular(n: usize, r: usize) -> Result<()> {
    check_points(n, r)?;
    if n > 0 && r >= n {
        return Err(Error::InvalidParameter(format!(
            "no simple {r}-regular graph on {n} vertices"
        )));
    }
    Ok(())
}

/// Uniform simple `r`-regular graph by rejection from the pairing model.
///
/// Each attempt uses its own child seed and is abandoned at the first loop or
/// repeated pair; that only skips work, the accepted pairing is still uniform.
pub fn sample_simple_regular(n: usize, r: usize, seed: Seed, max_attempts: usize) -> Result<Graph> {
    sample_regular(n, r, seed, RegularSampler::Pairing, max_attempts)
}

pub fn sample_regular(
    n: usize,
    r: usize,
    seed: Seed,
    sampler: RegularSampler,
    max_attempts: usize,
) -> Result<Graph> {
    check_regular(n, r)?;
    let mut scratch = RegularScratch::new(n, r);
    for attempt in 0..max_attempts {
        let mut rng = seed.derive(attempt as u64).rng();
        let ok = match sampler {
            RegularSampler::Pairing => scratch.try_pairing(&mut rng),
            RegularSampler::StegerWormald => scratch.try_steger_wormald(&mut rng),
        };
        if ok {
            return Ok(Graph::new(n, &scratch.edges).expect("sampler emits simple edges"));
        }
    }
    Err(Error::AttemptsExhausted {
        what: format!("simple {r}-regular graph on {n} vertices"),
        attempts: max_attempts,
    })
}

struct RegularScratch {
    n: usize,
    r: usize,
    points: Vec<usize>,
    nbrs: Vec<usize>,
    fill: Vec<usize>,
    edges: Vec<(Vertex, Vertex)>,
}

impl RegularScratch {
    fn new(n: usize, r: usize) -> Self {
        RegularScratch {
            n,
            r,
            points: (0..n * r).collect(),
            nbrs: vec![0; n * r],
            fill: vec![0; n],
            edges: Vec::with_capacity(n * r / 2),
        }
    }

    fn reset(&mut self) {
        self.fill.fill(0);
        self.edges.clear();
    }

    #[inline]
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.nbrs[u * self.r..u * self.r + self.fill[u]].contains(&v)
    }

    #[inline]
    fn link(&mut self, u: usize, v: usize) {
        self.nbrs[u * self.r + self.fill[u]] = v;
        self.fill[u] += 1;
        self.nbrs[v * self.r + self.fill[v]] = u;
        self.fill[v] += 1;
        self.edges.push(ordered(u, v));
    }

    fn try_pairing(&mut self, rng: &mut Rng64) -> bool {
        self.reset();
        let len = self.points.len();
        for i in (0..len).step_by(2) {
            let j = rng.gen_range(i + 1..len);
            self.points.swap(i + 1, j);
            let u = self.points[i] / self.r;
            let v = self.points[i + 1] / self.r;
            if u == v || self.adjacent(u, v) {
                return false;
            }
            self.link(u, v);
        }
        true
    }

    fn try_steger_wormald(&mut self, rng: &mut Rng64) -> bool {
        self.reset();
        // one entry per unpaired point, holding its cell
        let mut stubs: Vec<usize> = (0..self.n * self.r).map(|p| p / self.r).collect();
        let mut misses = 0usize;
        while !stubs.is_empty() {
            let i = rng.gen_range(0..stubs.len());
            let j = rng.gen_range(0..stubs.len());
            let (u, v) = (stubs[i], stubs[j]);
            if i != j && u != v && !self.adjacent(u, v) {
                self.link(u, v);
                let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                stubs.swap_remove(hi);
                stubs.swap_remove(lo);
                misses = 0;
                continue;
            }
            misses += 1;
            if misses > 64 + 4 * stubs.len() && !self.has_suitable_pair(&stubs) {
                return false;
            }
        }
        true
    }

    fn has_suitable_pair(&self, stubs: &[usize]) -> bool {
        let mut cells: Vec<usize> = stubs.to_vec();
        cells.sort_unstable();
        cells.dedup();
        cells
            .iter()
            .enumerate()
            .any(|(k, &u)| cells[k + 1..].iter().any(|&v| !self.adjacent(u, v)))
    }
}

/// Cycle through a uniform random ordering of the vertices, as the ordering.
pub fn random_hamiltonian_order(n: usize, seed: Seed) -> Result<Vec<Vertex>> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "Hamiltonian cycle needs n >= 3, got {n}"
        )));
    }
    let mut rng = seed.rng();
    Ok(index::sample(&mut rng, n, n).into_vec())
}

fn cycle_edges(order: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    (0..order.len())
        .map(|i| (order[i], order[(i + 1) % order.len()]))
        .collect()
}

pub fn random_hamiltonian_cycle(n: usize, seed: Seed) -> Result<Graph> {
    let order = random_hamiltonian_order(n, seed)?;
    Graph::new(n, &cycle_edges(&order))
}

/// `m` edges: a uniform `2m`-subset of the vertices with a uniform perfect
/// matching on it, edges in random order.
pub fn random_matching_edges(n: usize, m: usize, seed: Seed) -> Result<Vec<(Vertex, Vertex)>> {
    if 2 * m > n {
        return Err(Error::InvalidParameter(format!(
            "a matching with {m} edges needs 2m <= n, got n = {n}"
        )));
    }
    let mut rng = seed.rng();
    let picked = index::sample(&mut rng, n, 2 * m).into_vec();
    Ok(picked.chunks_exact(2).map(|p| (p[0], p[1])).collect())
}

pub fn random_matching(n: usize, m: usize, seed: Seed) -> Result<Graph> {
    Graph::new(n, &random_matching_edges(n, m, seed)?)
}

/// One factor of an ⊕-union.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum PartSpec {
    Regular { r: usize },
    HamiltonianCycle,
    Matching { m: usize },
    Fixed { edges: Vec<(Vertex, Vertex)> },
}

impl PartSpec {
    fn is_random(&self) -> bool {
        !matches!(self, PartSpec::Fixed { .. })
    }

    /// Edges in generation order: cycle order for Hamiltonian cycles,
    /// sampling order for matchings.
    pub fn sample(&self, n: usize, seed: Seed) -> Result<Vec<(Vertex, Vertex)>> {
        match self {
            PartSpec::Regular { r } => {
                let g = sample_regular(n, *r, seed, RegularSampler::auto(*r), REGULAR_ATTEMPTS)?;
                Ok(g.edges().to_vec())
            }
            PartSpec::HamiltonianCycle => Ok(cycle_edges(&random_hamiltonian_order(n, seed)?)),
            PartSpec::Matching { m } => random_matching_edges(n, *m, seed),
            PartSpec::Fixed { edges } => Ok(edges.clone()),
        }
    }
}

/// Attempt budget for one regular graph. Exact rejection at `r = 6` accepts
/// about one pairing in 6300, so this leaves failure odds near `e^{-150}`.
pub const REGULAR_ATTEMPTS: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct OplusUnion {
    pub graph: Graph,
    /// Each factor's edges, in that factor's generation order.
    pub parts: Vec<Vec<(Vertex, Vertex)>>,
    pub attempts: usize,
}

/// Union of independent samples conditioned on pairwise edge-disjointness.
/// On any collision every factor is resampled.
pub fn oplus_union(
    n: usize,
    parts: &[PartSpec],
    seed: Seed,
    max_attempts: usize,
) -> Result<OplusUnion> {
    if parts.len() < 2 {
        return Err(Error::InvalidParameter(
            "an ⊕-union needs at least two parts".into(),
        ));
    }
    let mut owner: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    for attempt in 0..max_attempts {
        let round = seed.derive(attempt as u64);
        let sampled = parts
            .iter()
            .enumerate()
            .map(|(i, p)| p.sample(n, round.derive(i as u64)))
            .collect::<Result<Vec<_>>>()?;
        owner.clear();
        let mut clash_between_random = false;
        let mut disjoint = true;
        for (i, edges) in sampled.iter().enumerate() {
            for &(u, v) in edges {
                let e = ordered(u, v);
                if let Some(&j) = owner.get(&e) {
                    if j != i {
                        disjoint = false;
                        clash_between_random |= parts[i].is_random() || parts[j].is_random();
                    }
                } else {
                    owner.insert(e, i);
                }
            }
        }
        if disjoint {
            let all: Vec<_> = owner.keys().copied().collect();
            return Ok(OplusUnion {
                graph: Graph::new(n, &all)?,
                parts: sampled,
                attempts: attempt + 1,
            });
        }
        if !clash_between_random {
            // fixed factors collide with each other: resampling cannot help
            return Err(Error::AttemptsExhausted {
                what: "edge-disjoint union (fixed parts overlap)".into(),
                attempts: attempt + 1,
            });
        }
    }
    Err(Error::AttemptsExhausted {
        what: "edge-disjoint union".into(),
        attempts: max_attempts,
    })
}
