//! Exhaustive search over small graph families for `P_n`-induced-saturated
//! graphs.
//!
//! Families: Cayley graphs over the additive group of GF(2^k) (every subset
//! of nonzero elements is a valid connection set), circulants over `Z_m`
//! (negation-closed connection sets), and all labeled graphs on `m` vertices.
//! Candidate order is a fixed function of the index, so runs are reproducible
//! and workers can split the index range freely.

use crate::gf2k::{BinaryField, FieldError, FieldElement};
use crate::graph::{cayley_graph, circulant_graph, Graph};
use crate::graph6;
use crate::saturation::{check_certificate, verify_induced_saturated, SaturationCertificate};
use crate::symmetry::{affine_group, cyclic_translations};
use rayon::prelude::*;
use serde::Serialize;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("path length must be at least 2, got {n}")]
    PathTooShort { n: usize },
    #[error("cayley family supports k <= 6 (at most 64 vertices), got k = {k}")]
    CayleyTooLarge { k: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("circulant family supports 1..=64 vertices, got m = {m}")]
    CirculantSize { m: usize },
    #[error("all-graphs family supports 1..=8 vertices, got m = {m}")]
    AllGraphsSize { m: usize },
    #[error("all-graphs search on 8 vertices enumerates 2^28 candidates; enable allow_large to run it")]
    LargeFamilyDisabled,
    #[error("worker count must be at least 1")]
    ZeroJobs,
}

/// A candidate-graph family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphFamily {
    /// Cayley graphs over the additive group of GF(2^k); one candidate per
    /// subset of the 2^k - 1 nonzero element masks.
    CayleyZ2k { k: u32, modulus: u32 },
    /// Circulant graphs on Z_m; one candidate per negation-closed connection
    /// set, i.e. per subset of the classes {s, m-s}.
    Circulant { m: usize },
    /// Every labeled graph on m vertices.
    AllGraphs { m: usize },
}

/// A search space: family, target path length, and optional limits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSpace {
    family: GraphFamily,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_candidates: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    time_budget_ms: Option<u64>,
    #[serde(skip)]
    allow_large: bool,
}

impl SearchSpace {
    pub fn new(family: GraphFamily, n: usize) -> Result<SearchSpace, SearchError> {
        if n < 2 {
            return Err(SearchError::PathTooShort { n });
        }
        match family {
            GraphFamily::CayleyZ2k { k, modulus } => {
                if k == 0 || k > 6 {
                    return Err(SearchError::CayleyTooLarge { k });
                }
                BinaryField::new(k, modulus)?;
            }
            GraphFamily::Circulant { m } => {
                if m == 0 || m > 64 {
                    return Err(SearchError::CirculantSize { m });
                }
            }
            GraphFamily::AllGraphs { m } => {
                if m == 0 || m > 8 {
                    return Err(SearchError::AllGraphsSize { m });
                }
            }
        }
        Ok(SearchSpace {
            family,
            n,
            max_candidates: None,
            time_budget_ms: None,
            allow_large: false,
        })
    }

    pub fn with_max_candidates(mut self, cap: u64) -> SearchSpace {
        self.max_candidates = Some(cap);
        self
    }

    pub fn with_time_budget(mut self, budget: Duration) -> SearchSpace {
        self.time_budget_ms = Some(budget.as_millis() as u64);
        self
    }

    /// Opts in to the 2^28-candidate all-graphs space on 8 vertices.
    pub fn allow_large(mut self) -> SearchSpace {
        self.allow_large = true;
        self
    }

    pub fn family(&self) -> GraphFamily {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of candidates in the family.
    pub fn candidate_count(&self) -> Result<u64, SearchError> {
        match self.family {
            GraphFamily::CayleyZ2k { k, .. } => Ok(1u64 << ((1u32 << k) - 1)),
            GraphFamily::Circulant { m } => Ok(1u64 << (m / 2)),
            GraphFamily::AllGraphs { m } => {
                if m == 8 && !self.allow_large {
                    return Err(SearchError::LargeFamilyDisabled);
                }
                Ok(1u64 << (m * (m - 1) / 2))
            }
        }
    }

    /// The candidate at a given index; a pure function of `(family, index)`.
    pub fn candidate(&self, index: u64) -> Graph {
        match self.family {
            GraphFamily::CayleyZ2k { k, modulus } => {
                let field = BinaryField::new(k, modulus).expect("validated at construction");
                let connection: Vec<FieldElement> = (1..field.order())
                    .filter(|&mask| (index >> (mask - 1)) & 1 == 1)
                    .map(|mask| field.element(mask).expect("mask < order"))
                    .collect();
                cayley_graph(&field, &connection).expect("valid connection set")
            }
            GraphFamily::Circulant { m } => {
                let mut connection = Vec::new();
                for (bit, s) in (1..=m / 2).enumerate() {
                    if (index >> bit) & 1 == 1 {
                        connection.push(s);
                        connection.push(m - s);
                    }
                }
                circulant_graph(m, &connection).expect("negation-closed by construction")
            }
            GraphFamily::AllGraphs { m } => {
                let mut edges = Vec::new();
                let mut t = 0;
                for u in 0..m {
                    for v in (u + 1)..m {
                        if (index >> t) & 1 == 1 {
                            edges.push((u, v));
                        }
                        t += 1;
                    }
                }
                Graph::from_edges(m, &edges).expect("indices in range")
            }
        }
    }

    /// Streams all candidates in index order.
    pub fn candidates(&self) -> Result<impl Iterator<Item = Graph> + '_, SearchError> {
        let count = self.candidate_count()?;
        Ok((0..count).map(move |i| self.candidate(i)))
    }

    /// The symmetry generators passed to the verifier for this family:
    /// translations for the group-based families, nothing for labeled graphs.
    fn translation_generators(&self) -> Option<Vec<Vec<usize>>> {
        match self.family {
            GraphFamily::CayleyZ2k { k, modulus } => {
                let field = BinaryField::new(k, modulus).expect("validated at construction");
                let one = field.element(1).expect("1 < order");
                Some(affine_group(&field, &[one]).expect("nonzero multiplier"))
            }
            GraphFamily::Circulant { m } => Some(cyclic_translations(m)),
            GraphFamily::AllGraphs { .. } => None,
        }
    }
}

/// A saturated candidate together with its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub candidate_index: u64,
    pub graph: String,
    pub certificate: SaturationCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub space: SearchSpace,
    pub candidates_examined: u64,
    pub hits: Vec<SearchHit>,
    pub exhausted: bool,
}

/// Runs the search with `jobs` workers. Candidates are pure functions of
/// their index, so the hit list is identical for any worker count; hits are
/// merged in candidate order. The time budget is enforced between candidates
/// only, never mid-candidate, and unset limits mean an exhaustive run.
pub fn run_search(space: &SearchSpace, jobs: usize) -> Result<SearchReport, SearchError> {
    if jobs == 0 {
        return Err(SearchError::ZeroJobs);
    }
    let total = space.candidate_count()?;
    let limit = space.max_candidates.map_or(total, |cap| cap.min(total));
    let generators = space.translation_generators();
    let deadline = space
        .time_budget_ms
        .map(|ms| Instant::now() + Duration::from_millis(ms));
    let stopped = AtomicBool::new(false);
    let examined = AtomicU64::new(0);

    let evaluate = |index: u64| -> Option<SearchHit> {
        if stopped.load(Ordering::Relaxed) {
            return None;
        }
        if let Some(d) = deadline {
            if Instant::now() >= d {
                stopped.store(true, Ordering::Relaxed);
                return None;
            }
        }
        examined.fetch_add(1, Ordering::Relaxed);
        let g = space.candidate(index);
        let (verdict, certificate) = verify_induced_saturated(&g, space.n, generators.as_deref())
            .expect("candidates and translation generators are always valid");
        if !verdict.is_saturated() {
            return None;
        }
        let certificate = certificate.expect("saturated verdict carries a certificate");
        debug_assert!(matches!(check_certificate(&certificate, &g), Ok(true)));
        Some(SearchHit {
            candidate_index: index,
            graph: graph6::encode(&g),
            certificate,
        })
    };

    let mut hits: Vec<SearchHit> = if jobs == 1 {
        let mut out = Vec::new();
        for index in 0..limit {
            if stopped.load(Ordering::Relaxed) {
                break;
            }
            if let Some(hit) = evaluate(index) {
                out.push(hit);
            }
        }
        out
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("worker pool");
        pool.install(|| (0..limit).into_par_iter().filter_map(evaluate).collect())
    };
    hits.sort_by_key(|h| h.candidate_index);

    let exhausted = !stopped.load(Ordering::Relaxed) && limit == total;
    Ok(SearchReport {
        space: space.clone(),
        candidates_examined: examined.load(Ordering::Relaxed),
        hits,
        exhausted,
    })
}

// ============================================================================
// Tests
// ============================================================================
