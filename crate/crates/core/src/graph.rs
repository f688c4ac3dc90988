//! Unweighted graphs, bipartitions and the exhaustive Max-Cut oracle.
//!
//! Vertex `i` is carried by bit `i` of a partition word (bit 0 least
//! significant). Display strings are MSB-first, so the partition with only
//! vertices 1 and 3 on the far side prints as `"01010"` for five vertices.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count accepted by [`brute_force_maxcut`].
pub const MAX_BRUTE_FORCE_VERTICES: usize = 24;

/// Partition words are `u64`, which caps the vertex count of any graph.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, normalizing every pair to `(min, max)` and sorting the
    /// edge list.
    pub fn new(n_vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::invalid_graph("vertices", "must be at least 1"));
        }
        if n_vertices > MAX_VERTICES {
            return Err(Error::Budget {
                what: "vertices",
                requested: n_vertices,
                limit: MAX_VERTICES,
            });
        }
        let mut normalized = Vec::new();
        for (k, (i, j)) in edges.into_iter().enumerate() {
            let field = format!("edges[{k}]");
            if i >= n_vertices || j >= n_vertices {
                return Err(Error::invalid_graph(
                    field,
                    format!("vertex index {} out of range 0..{n_vertices}", i.max(j)),
                ));
            }
            if i == j {
                return Err(Error::invalid_graph(
                    field,
                    format!("self-loop on vertex {i}"),
                ));
            }
            normalized.push((i.min(j), i.max(j), k));
        }
        normalized.sort_unstable();
        for pair in normalized.windows(2) {
            if (pair[0].0, pair[0].1) == (pair[1].0, pair[1].1) {
                return Err(Error::invalid_graph(
                    format!("edges[{}]", pair[0].2.max(pair[1].2)),
                    format!(
                        "duplicate edge ({}, {}) also listed at edges[{}]",
                        pair[1].0,
                        pair[1].1,
                        pair[0].2.min(pair[1].2)
                    ),
                ));
            }
        }
        Ok(Self {
            n_vertices,
            edges: normalized.into_iter().map(|(i, j, _)| (i, j)).collect(),
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Normalized `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Cut size of a raw partition word. Bits above `n_vertices` are ignored.
    pub fn cut_of_word(&self, word: u64) -> usize {
        self.edges
            .iter()
            .filter(|&&(i, j)| ((word >> i) ^ (word >> j)) & 1 == 1)
            .count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphFile {
            vertices: self.n_vertices,
            edges: self.edges.iter().map(|&(i, j)| [i, j]).collect(),
        })
        .expect("graph serialization is infallible")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

/// Parses the JSON graph format `{"vertices": n, "edges": [[i, j], ...]}`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Graph::new(file.vertices, file.edges.into_iter().map(|[i, j]| (i, j)))
}

/// Two-sided vertex assignment: bit `i` clear puts vertex `i` in the first
/// set, set puts it in the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n_bits: usize,
    word: u64,
}

impl Partition {
    pub fn new(n_bits: usize, word: u64) -> Result<Self> {
        if n_bits == 0 || n_bits > MAX_VERTICES {
            return Err(Error::InvalidArgument(format!(
                "partition length {n_bits} outside 1..={MAX_VERTICES}"
            )));
        }
        if n_bits < 64 && word >> n_bits != 0 {
            return Err(Error::InvalidArgument(format!(
                "word {word:#x} has bits set above position {n_bits}"
            )));
        }
        Ok(Self { n_bits, word })
    }

    /// Parses an MSB-first bitstring such as `"01010"`.
    pub fn from_msb_str(bits: &str) -> Result<Self> {
        let mut word = 0u64;
        for (k, ch) in bits.chars().enumerate() {
            word <<= 1;
            match ch {
                '0' => {}
                '1' => word |= 1,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "invalid character {other:?} at position {k} of bitstring"
                    )))
                }
            }
        }
        Self::new(bits.len(), word)
    }

    pub fn len(&self) -> usize {
        self.n_bits
    }

    pub fn is_empty(&self) -> bool {
        self.n_bits == 0
    }

    pub fn word(&self) -> u64 {
        self.word
    }

    pub fn bit(&self, vertex: usize) -> bool {
        (self.word >> vertex) & 1 == 1
    }

    pub fn complement(&self) -> Self {
        Self {
            n_bits: self.n_bits,
            word: !self.word & low_mask(self.n_bits),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&msb_string(self.word, self.n_bits))
    }
}

/// MSB-first rendering of the low `n_bits` of `word`.
pub fn msb_string(word: u64, n_bits: usize) -> String {
    (0..n_bits)
        .rev()
        .map(|b| if (word >> b) & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub(crate) fn low_mask(n_bits: usize) -> u64 {
    if n_bits >= 64 {
        u64::MAX
    } else {
        (1u64 << n_bits) - 1
    }
}

/// Number of edges whose endpoints fall on opposite sides of `p`.
pub fn cut_value(g: &Graph, p: &Partition) -> Result<usize> {
    if p.len() != g.n_vertices() {
        return Err(Error::LengthMismatch {
            expected: g.n_vertices(),
            actual: p.len(),
        });
    }
    Ok(g.cut_of_word(p.word()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxCutSolution {
    pub max_cut: usize,
    /// Every optimal partition, ascending by word.
    pub solutions: Vec<Partition>,
}

impl MaxCutSolution {
    pub fn degeneracy(&self) -> usize {
        self.solutions.len()
    }

    pub fn contains_word(&self, word: u64) -> bool {
        self.solutions
            .binary_search_by_key(&word, |p| p.word())
            .is_ok()
    }

    pub fn words(&self) -> impl Iterator<Item = u64> + '_ {
        self.solutions.iter().map(|p| p.word())
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

const BRUTE_FORCE_CHUNK: u64 = 1 << 14;

/// Enumerates all `2^n` partitions and returns the maximal cut together with
/// every partition attaining it.
pub fn brute_force_maxcut(g: &Graph) -> Result<MaxCutSolution> {
    let n = g.n_vertices();
    if n > MAX_BRUTE_FORCE_VERTICES {
        return Err(Error::Budget {
            what: "vertices for brute-force enumeration",
            requested: n,
            limit: MAX_BRUTE_FORCE_VERTICES,
        });
    }
    let total = 1u64 << n;
    let n_chunks = total.div_ceil(BRUTE_FORCE_CHUNK);
    // Chunks are merged in index order so the result never depends on scheduling.
    let scan = |c: u64| {
        let start = c * BRUTE_FORCE_CHUNK;
        let end = (start + BRUTE_FORCE_CHUNK).min(total);
        let mut best = 0usize;
        let mut words = Vec::new();
        for w in start..end {
            let cut = g.cut_of_word(w);
            if cut > best {
                best = cut;
                words.clear();
            }
            if cut == best {
                words.push(w);
            }
        }
        (best, words)
    };
    // Small instances skip the thread pool entirely.
    let per_chunk: Vec<(usize, Vec<u64>)> = if n_chunks == 1 {
        vec![scan(0)]
    } else {
        (0..n_chunks).into_par_iter().map(scan).collect()
    };
    let max_cut = per_chunk.iter().map(|(c, _)| *c).max().unwrap_or(0);
    let solutions = per_chunk
        .into_iter()
        .filter(|(c, _)| *c == max_cut)
        .flat_map(|(_, words)| words)
        .map(|w| Partition { n_bits: n, word: w })
        .collect();
    Ok(MaxCutSolution { max_cut, solutions })
}

/// The five-vertex, six-edge example instance used throughout the docs and tests.
pub fn reference_graph() -> Graph {
    Graph::new(5, [(0, 1), (1, 2), (1, 3), (1, 4), (2, 3), (3, 4)]).expect("valid fixture")
}
