//! Orbits of `Zₙ` under `SL(2,F₂)^×n ⋊ Sₙ`.
//!
//! For `n ≤ 6` a point fits in one `u64` key and the generators act by
//! word-level bit mixing, which is what the breadth-first searches run on.
//! Each orbit is represented by its least key; orbits are numbered from 1
//! in order of `(size, key)`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2core::{principal_minor_u64, BitVector};
use crate::graphstates::{graph_to_point, Graph};
use crate::groupaction::{generators, GroupElement, Local2};
use crate::lagrangian::Lagrangian;
use crate::minorvariety::{
    lagrangian_from_point, minor_point, mix_word, swap_adjacent_word, IndexOrder, MinorPoint,
};
use crate::pauli::StabilizerGroup;

/// Largest `n` for which full partitions and classification are supported.
pub const PARTITION_BOUND: usize = 6;

/// Frontiers at least this large are expanded in parallel.
const PAR_FRONTIER: usize = 1 << 12;

/// `|Zₙ| = ∏_{i=1}^{n} (2^i + 1)`.
pub fn variety_size(n: usize) -> u64 {
    (1..=n as u32).map(|i| (1u64 << i) + 1).product()
}

#[derive(Clone, Copy)]
enum KeyGen {
    Slot(usize, Local2),
    Swap(usize),
}

impl KeyGen {
    #[inline]
    fn apply(self, key: u64) -> u64 {
        match self {
            KeyGen::Slot(i, m) => mix_word(key, i, m),
            KeyGen::Swap(i) => swap_adjacent_word(key, i),
        }
    }
}

/// Key-level mirror of [`generators`], index for index.
fn key_generators(n: usize) -> Vec<KeyGen> {
    let mut gens = Vec::with_capacity(3 * n);
    gens.extend((0..n).map(|q| KeyGen::Slot(q, Local2::HAD)));
    gens.extend((0..n).map(|q| KeyGen::Slot(q, Local2::SQZ)));
    gens.extend((0..n.saturating_sub(1)).map(KeyGen::Swap));
    gens
}

fn check_bound(n: usize) -> Result<()> {
    if n == 0 || n > PARTITION_BOUND {
        return Err(Error::BoundExceeded {
            n,
            bound: PARTITION_BOUND,
        });
    }
    Ok(())
}

fn key_of(p: &MinorPoint) -> u64 {
    p.key().expect("n <= 6 points fit one word")
}

fn point_of(n: usize, key: u64) -> MinorPoint {
    MinorPoint::from_bits(n, BitVector::from_u64(1 << n, key)).expect("orbit keys are nonzero")
}

fn expand(frontier: &[u64], gens: &[KeyGen]) -> Vec<u64> {
    if frontier.len() >= PAR_FRONTIER {
        frontier
            .par_iter()
            .flat_map_iter(|&k| gens.iter().map(move |g| g.apply(k)))
            .collect()
    } else {
        frontier
            .iter()
            .flat_map(|&k| gens.iter().map(move |g| g.apply(k)))
            .collect()
    }
}

/// Breadth-first closure of `seed`, inserting into `visited`. Returns the
/// number of new keys and the least key reached.
fn close_keys(n: usize, seed: u64, visited: &mut HashSet<u64>) -> (u64, u64) {
    let gens = key_generators(n);
    let mut frontier = vec![seed];
    visited.insert(seed);
    let (mut size, mut least) = (1u64, seed);
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for k in expand(&frontier, &gens) {
            if visited.insert(k) {
                size += 1;
                least = least.min(k);
                next.push(k);
            }
        }
        frontier = next;
    }
    (size, least)
}

/// The full orbit of `p`, sorted.
pub fn orbit_of(p: &MinorPoint) -> Vec<MinorPoint> {
    let n = p.n();
    if n <= PARTITION_BOUND {
        let mut visited = HashSet::new();
        close_keys(n, key_of(p), &mut visited);
        let mut keys: Vec<u64> = visited.into_iter().collect();
        keys.sort_unstable();
        return keys.into_iter().map(|k| point_of(n, k)).collect();
    }
    let gens = generators(n);
    let mut visited: HashSet<MinorPoint> = HashSet::from([p.clone()]);
    let mut frontier = vec![p.clone()];
    while let Some(q) = frontier.pop() {
        for g in &gens {
            let r = g.act_on_point(&q).expect("same n");
            if visited.insert(r.clone()) {
                frontier.push(r);
            }
        }
    }
    let mut out: Vec<MinorPoint> = visited.into_iter().collect();
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub orbit_id: usize,
    pub size: u64,
    pub canonical_point: MinorPoint,
    pub representative_graph: Graph,
    /// `4ⁿ·size`, the count attached to an orbit in the literature.
    pub paper_state_count: u64,
    /// `2ⁿ·size`: one state per sign vector of each stabilizer group.
    pub derived_state_count: u64,
    pub paper_label: Option<String>,
}

impl OrbitReport {
    pub fn state_counts(&self) -> (u64, u64) {
        (self.paper_state_count, self.derived_state_count)
    }
}

/// A loopless graph in the orbit of `p`.
fn representative_graph(p: &MinorPoint) -> Graph {
    let l = lagrangian_from_point(p).expect("canonical points lie on the variety");
    Graph::new(l.graph_form().0).expect("graph form is symmetric")
}

/// Loopless chart points: every orbit contains one.
fn seeds(n: usize) -> Vec<u64> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len())
        .into_par_iter()
        .map(|code| {
            let mut rows = vec![0u64; n];
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if code >> b & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
            (0u64..1 << n)
                .filter(|&mask| principal_minor_u64(&rows, mask))
                .fold(0u64, |key, mask| key | 1 << mask)
        })
        .collect()
}

/// All orbits of `Zₙ`, sorted by `(size, canonical key)`.
pub fn partition(n: usize) -> Result<Vec<OrbitReport>> {
    check_bound(n)?;
    let mut visited = HashSet::new();
    let mut found = Vec::new();
    for seed in seeds(n) {
        if !visited.contains(&seed) {
            found.push(close_keys(n, seed, &mut visited));
        }
    }
    debug_assert_eq!(visited.len() as u64, variety_size(n));
    found.sort_unstable();
    Ok(found
        .into_iter()
        .enumerate()
        .map(|(i, (size, key))| {
            let canonical_point = point_of(n, key);
            OrbitReport {
                orbit_id: i + 1,
                size,
                representative_graph: representative_graph(&canonical_point),
                canonical_point,
                paper_state_count: size << (2 * n),
                derived_state_count: size << n,
                paper_label: None,
            }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub orbit_id: usize,
    pub canonical_point: MinorPoint,
    /// Maps the input point to `canonical_point`.
    pub witness: GroupElement,
    pub verified: bool,
}

/// The orbit census of one `n`, with classification against it.
#[derive(Clone, Debug)]
pub struct Census {
    n: usize,
    reports: Vec<OrbitReport>,
    by_key: HashMap<u64, usize>,
}

impl Census {
    pub fn compute(n: usize) -> Result<Census> {
        let reports = partition(n)?;
        let by_key = reports
            .iter()
            .map(|r| (key_of(&r.canonical_point), r.orbit_id))
            .collect();
        let mut census = Census { n, reports, by_key };
        for (id, label) in crate::tables::paper_labels(&census)? {
            census.reports[id - 1].paper_label = Some(label);
        }
        Ok(census)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn reports(&self) -> &[OrbitReport] {
        &self.reports
    }

    pub fn report(&self, orbit_id: usize) -> Option<&OrbitReport> {
        self.reports.get(orbit_id.checked_sub(1)?)
    }

    pub fn total_points(&self) -> u64 {
        self.reports.iter().map(|r| r.size).sum()
    }

    /// Finds the orbit of `p` and a group element carrying `p` to the
    /// orbit's canonical point, along a shortest generator path.
    pub fn classify_point(&self, p: &MinorPoint) -> Result<Classification> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: p.n(),
            });
        }
        lagrangian_from_point(p)?;
        let gens = key_generators(self.n);
        let start = key_of(p);
        let mut parent: HashMap<u64, (u64, u8)> = HashMap::from([(start, (start, u8::MAX))]);
        let mut frontier = vec![start];
        let mut least = start;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &k in &frontier {
                for (gi, g) in gens.iter().enumerate() {
                    let r = g.apply(k);
                    if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(r) {
                        e.insert((k, gi as u8));
                        least = least.min(r);
                        next.push(r);
                    }
                }
            }
            frontier = next;
        }
        let orbit_id = *self.by_key.get(&least).ok_or(Error::NotOnVariety)?;

        let group_gens = generators(self.n);
        let mut path = Vec::new();
        let mut k = least;
        while k != start {
            let (prev, gi) = parent[&k];
            path.push(gi as usize);
            k = prev;
        }
        let mut witness = GroupElement::identity(self.n);
        for &gi in path.iter().rev() {
            witness = group_gens[gi].compose(&witness)?;
        }
        let canonical_point = point_of(self.n, least);
        let verified = witness.act_on_point(p)? == canonical_point;
        assert!(verified, "witness does not reach the canonical point");
        Ok(Classification {
            orbit_id,
            canonical_point,
            witness,
            verified,
        })
    }

    pub fn classify_graph(&self, g: &Graph) -> Result<Classification> {
        self.classify_point(&graph_to_point(g)?)
    }

    pub fn classify_group(&self, s: &StabilizerGroup) -> Result<Classification> {
        self.classify_point(&minor_point(&Lagrangian::from_group(s)?))
    }

    pub fn to_file(&self) -> CensusFile {
        CensusFile {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            n: self.n,
            conventions: Conventions::default(),
            total_points: self.total_points(),
            orbits: self.reports.iter().map(OrbitRecord::from).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "n={}  orbits={}  points={}\n",
            self.n,
            self.reports.len(),
            self.total_points()
        );
        out.push_str("id\tlabel\tsize\t4^n*size\t2^n*size\tcanonical point (graded-lex)\trepresentative\n");
        for r in &self.reports {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.orbit_id,
                r.paper_label.as_deref().unwrap_or("-"),
                r.size,
                r.paper_state_count,
                r.derived_state_count,
                r.canonical_point,
                if r.representative_graph.edges().is_empty() {
                    "(empty)".to_string()
                } else {
                    r.representative_graph.edge_string()
                },
            ));
        }
        out
    }
}

/// Header describing how the census file is to be read.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub point_order: String,
    pub canonical: String,
    pub orbit_order: String,
    pub graph_generators: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Self {
            point_order: "graded-lex".into(),
            canonical: "least bitmask key".into(),
            orbit_order: "size, then canonical key".into(),
            graph_generators: "standard: X on vertex, Z on neighbours".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub orbit_id: usize,
    pub size: u64,
    pub canonical_key: u64,
    pub canonical_point: String,
    pub canonical_point_bitmask: String,
    pub representative_edges: String,
    pub paper_state_count: u64,
    pub derived_state_count: u64,
    pub paper_label: Option<String>,
}

impl From<&OrbitReport> for OrbitRecord {
    fn from(r: &OrbitReport) -> Self {
        Self {
            orbit_id: r.orbit_id,
            size: r.size,
            canonical_key: key_of(&r.canonical_point),
            canonical_point: r.canonical_point.to_string_in(IndexOrder::GradedLex),
            canonical_point_bitmask: r.canonical_point.to_string_in(IndexOrder::Bitmask),
            representative_edges: r.representative_graph.edge_string(),
            paper_state_count: r.paper_state_count,
            derived_state_count: r.derived_state_count,
            paper_label: r.paper_label.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusFile {
    pub tool: String,
    pub version: String,
    pub n: usize,
    pub conventions: Conventions,
    pub total_points: u64,
    pub orbits: Vec<OrbitRecord>,
}
