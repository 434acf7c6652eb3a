//! The induced-saturation verifier.
//!
//! A graph `G` is `P_n`-induced-saturated when it contains no induced path on
//! `n` vertices, yet toggling any single vertex pair (removing an edge or
//! adding a non-edge) creates one. The verifier decides this exhaustively and
//! emits a machine-checkable certificate: for every pair `e` a full path
//! sequence that is an induced `P_n` in the toggled graph `G_e` and contains
//! both endpoints of `e`. Supplying automorphism generators reduces the work
//! to one representative pair per orbit.

use crate::graph::{Graph, GraphError, PathWitness, VertexPair};
use crate::graph6;
use crate::symmetry::{pair_orbits, SymmetryError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SaturationError {
    #[error("path length must be at least 2, got {n}")]
    PathTooShort { n: usize },
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error("graph is not P_n-induced-free: witness {0:?}")]
    NotPathFree(PathWitness),
    #[error("no witness path exists for pair ({}, {})", .0.u(), .0.v())]
    NoWitness(VertexPair),
    #[error("pair ({u}, {v}) out of range for a graph on {n} vertices")]
    PairOutOfRange { u: usize, v: usize, n: usize },
    #[error("certificate graph {cert:?} does not match graph {actual:?}")]
    GraphMismatch { cert: String, actual: String },
}

/// Freeness decision, carrying the offending path when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathFreeness {
    Free,
    ContainsPath(PathWitness),
}

impl PathFreeness {
    pub fn is_free(&self) -> bool {
        matches!(self, PathFreeness::Free)
    }

    pub fn witness(&self) -> Option<&PathWitness> {
        match self {
            PathFreeness::Free => None,
            PathFreeness::ContainsPath(w) => Some(w),
        }
    }
}

/// True iff `g` has no induced path on `n` vertices; otherwise carries one.
pub fn is_path_free(g: &Graph, n: usize) -> Result<PathFreeness, SaturationError> {
    let found = g.find_induced_path(n).map_err(lift_path_len)?;
    Ok(match found {
        None => PathFreeness::Free,
        Some(w) => PathFreeness::ContainsPath(w),
    })
}

fn lift_path_len(e: GraphError) -> SaturationError {
    match e {
        GraphError::PathTooShort { n } => SaturationError::PathTooShort { n },
        other => unreachable!("unexpected graph error: {other}"),
    }
}

/// Outcome of a saturation check. Exactly one offending datum accompanies
/// each failure status.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum SaturationVerdict {
    #[serde(rename = "SATURATED")]
    Saturated,
    #[serde(rename = "CONTAINS_INDUCED_PATH")]
    ContainsInducedPath { witness: PathWitness },
    #[serde(rename = "REMOVAL_FAILS")]
    RemovalFails { pair: VertexPair },
    #[serde(rename = "ADDITION_FAILS")]
    AdditionFails { pair: VertexPair },
}

impl SaturationVerdict {
    pub fn is_saturated(&self) -> bool {
        matches!(self, SaturationVerdict::Saturated)
    }

    pub fn status(&self) -> &'static str {
        match self {
            SaturationVerdict::Saturated => "SATURATED",
            SaturationVerdict::ContainsInducedPath { .. } => "CONTAINS_INDUCED_PATH",
            SaturationVerdict::RemovalFails { .. } => "REMOVAL_FAILS",
            SaturationVerdict::AdditionFails { .. } => "ADDITION_FAILS",
        }
    }
}

/// One verified pair: the stored path is an induced `P_n` in the graph with
/// `pair` toggled, and contains both endpoints of `pair`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub pair: VertexPair,
    pub was_edge: bool,
    pub path: Vec<usize>,
}

/// Machine-checkable witness map in the form `f : pairs -> paths`.
///
/// Without orbit reduction the entries cover every vertex pair; with it they
/// cover one representative per orbit of the supplied generators, and
/// `orbit_reduced` records that the remaining pairs are covered by symmetry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationCertificate {
    pub graph: String,
    pub n: usize,
    pub orbit_reduced: bool,
    pub verified_pairs: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub warning: Option<String>,
    pub entries: Vec<CertificateEntry>,
}

impl SaturationCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<SaturationCertificate, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Witness search for a single toggled pair, assuming the un-toggled graph is
/// `P_n`-free. Adding a non-edge forces any created path to traverse it;
/// removing an edge forces any created path to contain both endpoints.
fn pair_witness(g: &Graph, e: VertexPair, n: usize) -> Option<PathWitness> {
    let toggled = g.toggle_edge(e);
    if g.has_edge(e.u(), e.v()) {
        toggled
            .find_induced_path_containing(e.u(), e.v(), n)
            .expect("validated pair and length")
    } else {
        toggled
            .find_induced_path_through(e, n)
            .expect("validated pair and length")
    }
}

/// Witness lookup for one pair: toggles `e` and searches the result for an
/// induced `P_n` containing both endpoints (traversing them when `e` was
/// added). Both endpoints must be vertices of `g`.
pub fn witness_for_pair(
    g: &Graph,
    e: VertexPair,
    n: usize,
) -> Result<Option<PathWitness>, SaturationError> {
    if n < 2 {
        return Err(SaturationError::PathTooShort { n });
    }
    if e.v() >= g.n_vertices() {
        return Err(SaturationError::PairOutOfRange {
            u: e.u(),
            v: e.v(),
            n: g.n_vertices(),
        });
    }
    Ok(pair_witness(g, e, n))
}

/// Decides whether `g` is `P_n`-induced-saturated.
///
/// Checks freeness first, then that every non-edge addition and every edge
/// removal creates an induced `P_n`; conditions over empty pair sets hold
/// vacuously. With `generators` (which must be automorphisms of `g`), only
/// one representative per pair orbit is checked. Returns the certificate on
/// success.
pub fn verify_induced_saturated(
    g: &Graph,
    n: usize,
    generators: Option<&[Vec<usize>]>,
) -> Result<(SaturationVerdict, Option<SaturationCertificate>), SaturationError> {
    if n < 2 {
        return Err(SaturationError::PathTooShort { n });
    }

    let (additions, removals, orbit_reduced) = match generators {
        Some(gens) => {
            let orbits = pair_orbits(g, gens, &g.all_pairs())?;
            let mut additions = Vec::new();
            let mut removals = Vec::new();
            for orbit in &orbits {
                let rep = orbit.representative();
                if g.has_edge(rep.u(), rep.v()) {
                    removals.push(rep);
                } else {
                    additions.push(rep);
                }
            }
            (additions, removals, true)
        }
        None => (g.non_edges(), g.edges(), false),
    };

    if let PathFreeness::ContainsPath(witness) = is_path_free(g, n)? {
        return Ok((SaturationVerdict::ContainsInducedPath { witness }, None));
    }

    let mut entries = Vec::with_capacity(additions.len() + removals.len());
    for &e in &additions {
        match pair_witness(g, e, n) {
            Some(w) => entries.push(CertificateEntry {
                pair: e,
                was_edge: false,
                path: w.into_vertices(),
            }),
            None => return Ok((SaturationVerdict::AdditionFails { pair: e }, None)),
        }
    }
    for &e in &removals {
        match pair_witness(g, e, n) {
            Some(w) => entries.push(CertificateEntry {
                pair: e,
                was_edge: true,
                path: w.into_vertices(),
            }),
            None => return Ok((SaturationVerdict::RemovalFails { pair: e }, None)),
        }
    }
    entries.sort_by_key(|e| e.pair);

    let warning = (n > g.n_vertices()).then(|| {
        format!(
            "path length {n} exceeds the vertex count {}; saturation holds only by vacuity",
            g.n_vertices()
        )
    });
    let verified_pairs = entries.len();
    let certificate = SaturationCertificate {
        graph: graph6::encode(g),
        n,
        orbit_reduced,
        verified_pairs,
        warning,
        entries,
    };
    Ok((SaturationVerdict::Saturated, Some(certificate)))
}

/// The total witness function on all vertex pairs of a `P_n`-free
/// graph: each pair maps to a full path sequence that is an induced `P_n` in
/// the toggled graph. Fails with the first pair that has no witness.
pub fn witness_function(
    g: &Graph,
    n: usize,
) -> Result<BTreeMap<VertexPair, PathWitness>, SaturationError> {
    if n < 2 {
        return Err(SaturationError::PathTooShort { n });
    }
    if let PathFreeness::ContainsPath(w) = is_path_free(g, n)? {
        return Err(SaturationError::NotPathFree(w));
    }
    let mut map = BTreeMap::new();
    for e in g.all_pairs() {
        match pair_witness(g, e, n) {
            Some(w) => {
                map.insert(e, w);
            }
            None => return Err(SaturationError::NoWitness(e)),
        }
    }
    Ok(map)
}

/// Re-validates a certificate against `g`, independently of the search that
/// produced it: freeness is re-run, and every stored path is re-checked with
/// the induced-path predicate in the appropriate toggled graph.
///
/// Returns `Ok(false)` when any stored datum fails; errors only when the
/// certificate refers to a different graph.
pub fn check_certificate(
    cert: &SaturationCertificate,
    g: &Graph,
) -> Result<bool, SaturationError> {
    let actual = graph6::encode(g);
    if cert.graph != actual {
        return Err(SaturationError::GraphMismatch {
            cert: cert.graph.clone(),
            actual,
        });
    }
    let n = cert.n;
    if n < 2 || cert.verified_pairs != cert.entries.len() {
        return Ok(false);
    }
    if g.find_induced_path(n).expect("n >= 2").is_some() {
        return Ok(false);
    }

    let mut seen = std::collections::BTreeSet::new();
    for entry in &cert.entries {
        let e = entry.pair;
        if e.v() >= g.n_vertices() || !seen.insert(e) {
            return Ok(false);
        }
        if entry.was_edge != g.has_edge(e.u(), e.v()) {
            return Ok(false);
        }
        if entry.path.len() != n {
            return Ok(false);
        }
        // the pair and the other n-2 vertices must assemble into the path
        let in_path = |v: usize| entry.path.contains(&v);
        if !in_path(e.u()) || !in_path(e.v()) {
            return Ok(false);
        }
        let toggled = g.toggle_edge(e);
        if !toggled.is_induced_path(&entry.path) {
            return Ok(false);
        }
    }

    if !cert.orbit_reduced {
        // the witness map must be total
        let expected = g.n_vertices() * g.n_vertices().saturating_sub(1) / 2;
        if cert.entries.len() != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2k::BinaryField;
    use crate::graph::{cayley_graph, circulant_graph};
    use crate::symmetry::{affine_group, cyclic_translations};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn gf16() -> BinaryField {
        BinaryField::new(4, 0x13).unwrap()
    }

    fn clebsch() -> Graph {
        let f = gf16();
        cayley_graph(&f, &f.nonzero_cubes()).unwrap()
    }

    fn clebsch_generators() -> Vec<Vec<usize>> {
        let f = gf16();
        affine_group(&f, &f.nonzero_cubes()).unwrap()
    }

    fn pair(u: usize, v: usize) -> VertexPair {
        VertexPair::new(u, v).unwrap()
    }

    #[test]
    fn freeness_on_known_graphs() {
        let g = clebsch();
        assert!(is_path_free(&g, 6).unwrap().is_free());
        let found = is_path_free(&g, 5).unwrap();
        assert!(!found.is_free());
        assert!(g.is_induced_path(found.witness().unwrap().vertices()));

        let k5 = Graph::complete(5).unwrap();
        assert!(is_path_free(&k5, 3).unwrap().is_free());

        assert!(matches!(
            is_path_free(&g, 0),
            Err(SaturationError::PathTooShort { n: 0 })
        ));
    }

    #[test]
    fn clebsch_is_p6_saturated_full_check() {
        let g = clebsch();
        let (verdict, cert) = verify_induced_saturated(&g, 6, None).unwrap();
        assert!(verdict.is_saturated());
        let cert = cert.unwrap();
        assert!(!cert.orbit_reduced);
        assert_eq!(cert.verified_pairs, 120);
        assert_eq!(cert.entries.len(), 120);
        assert_eq!(cert.entries.iter().filter(|e| e.was_edge).count(), 40);
        assert_eq!(cert.entries.iter().filter(|e| !e.was_edge).count(), 80);
        assert!(cert.warning.is_none());
        assert!(check_certificate(&cert, &g).unwrap());
    }

    #[test]
    fn clebsch_orbit_reduced_check_agrees() {
        let g = clebsch();
        let gens = clebsch_generators();
        let (verdict, cert) = verify_induced_saturated(&g, 6, Some(&gens)).unwrap();
        assert!(verdict.is_saturated());
        let cert = cert.unwrap();
        assert!(cert.orbit_reduced);
        assert_eq!(cert.verified_pairs, 3);
        assert_eq!(cert.entries.len(), 3);
        assert!(check_certificate(&cert, &g).unwrap());
    }

    #[test]
    fn orbit_reduced_and_full_agree_on_clebsch_for_other_lengths() {
        let g = clebsch();
        let gens = clebsch_generators();
        for n in 4..=7 {
            let (full, _) = verify_induced_saturated(&g, n, None).unwrap();
            let (reduced, _) = verify_induced_saturated(&g, n, Some(&gens)).unwrap();
            assert_eq!(full.status(), reduced.status(), "n = {n}");
        }
    }

    #[test]
    fn orbit_reduced_and_full_agree_on_random_circulants() {
        let mut rng = StdRng::seed_from_u64(0xc19c);
        for _ in 0..50 {
            let m = rng.random_range(4..=20);
            let mut conn = Vec::new();
            for s in 1..=m / 2 {
                if rng.random_bool(0.4) {
                    conn.push(s);
                    conn.push(m - s);
                }
            }
            let g = circulant_graph(m, &conn).unwrap();
            let gens = cyclic_translations(m);
            let n = rng.random_range(3..=6);
            let (full, _) = verify_induced_saturated(&g, n, None).unwrap();
            let (reduced, _) = verify_induced_saturated(&g, n, Some(&gens)).unwrap();
            assert_eq!(
                full.status(),
                reduced.status(),
                "m = {m}, n = {n}, conn = {conn:?}"
            );
        }
    }

    #[test]
    fn trivial_cases_from_the_definition() {
        // the empty graph is P2-saturated: removal is vacuous
        for m in 2..=6 {
            let g = Graph::empty(m).unwrap();
            let (verdict, cert) = verify_induced_saturated(&g, 2, None).unwrap();
            assert!(verdict.is_saturated(), "empty graph on {m}");
            assert!(check_certificate(&cert.unwrap(), &g).unwrap());
        }
        // complete graphs are P3-saturated: addition is vacuous
        for m in 3..=6 {
            let g = Graph::complete(m).unwrap();
            let (verdict, cert) = verify_induced_saturated(&g, 3, None).unwrap();
            assert!(verdict.is_saturated(), "K_{m}");
            assert!(check_certificate(&cert.unwrap(), &g).unwrap());
        }
        // P6 contains itself
        let p6 = Graph::path(6).unwrap();
        let (verdict, cert) = verify_induced_saturated(&p6, 6, None).unwrap();
        assert!(matches!(
            verdict,
            SaturationVerdict::ContainsInducedPath { .. }
        ));
        assert!(cert.is_none());
    }

    #[test]
    fn c6_fails_on_the_first_chord() {
        // C6 is P6-free; deleting any edge leaves P6, but no chord addition
        // can create an induced P6 on six vertices. Additions are checked
        // first, in pair order.
        let c6 = circulant_graph(6, &[1, 5]).unwrap();
        let (verdict, cert) = verify_induced_saturated(&c6, 6, None).unwrap();
        assert_eq!(
            verdict,
            SaturationVerdict::AdditionFails { pair: pair(0, 2) }
        );
        assert!(cert.is_none());
    }

    #[test]
    fn witness_function_covers_all_pairs() {
        let g = clebsch();
        let map = witness_function(&g, 6).unwrap();
        assert_eq!(map.len(), 120);
        for (e, w) in &map {
            let toggled = g.toggle_edge(*e);
            assert!(toggled.is_induced_path(w.vertices()));
            assert!(w.vertices().contains(&e.u()) && w.vertices().contains(&e.v()));
            // e and the remaining n-2 vertices are disjoint by construction
            let rest: Vec<usize> = w
                .vertices()
                .iter()
                .copied()
                .filter(|&v| v != e.u() && v != e.v())
                .collect();
            assert_eq!(rest.len(), 4);
        }

        // an edge pair: the endpoints appear non-consecutively
        let w = &map[&pair(0, 1)];
        let pu = w.vertices().iter().position(|&x| x == 0).unwrap();
        let pv = w.vertices().iter().position(|&x| x == 1).unwrap();
        assert!(pu.abs_diff(pv) > 1);

        // a non-edge pair: the endpoints are traversed consecutively
        let w = &map[&pair(0, 7)];
        let pu = w.vertices().iter().position(|&x| x == 0).unwrap();
        let pv = w.vertices().iter().position(|&x| x == 7).unwrap();
        assert_eq!(pu.abs_diff(pv), 1);
    }

    #[test]
    fn witness_function_rejects_non_free_and_unsaturated_graphs() {
        let p6 = Graph::path(6).unwrap();
        assert!(matches!(
            witness_function(&p6, 6),
            Err(SaturationError::NotPathFree(_))
        ));
        // the empty graph on 6 vertices is P6-free but no single added edge
        // creates a P6
        let empty = Graph::empty(6).unwrap();
        assert!(matches!(
            witness_function(&empty, 6),
            Err(SaturationError::NoWitness(_))
        ));
    }

    #[test]
    fn certificate_rejects_corruption() {
        let g = clebsch();
        let (_, cert) = verify_induced_saturated(&g, 6, None).unwrap();
        let cert = cert.unwrap();

        let mut corrupted = cert.clone();
        corrupted.entries[17].path[2] = (corrupted.entries[17].path[2] + 1) % 16;
        assert!(!check_certificate(&corrupted, &g).unwrap());

        let mut wrong_flag = cert.clone();
        wrong_flag.entries[0].was_edge = !wrong_flag.entries[0].was_edge;
        assert!(!check_certificate(&wrong_flag, &g).unwrap());

        let mut missing = cert.clone();
        missing.entries.pop();
        missing.verified_pairs -= 1;
        assert!(!check_certificate(&missing, &g).unwrap());

        let mut bad_count = cert.clone();
        bad_count.verified_pairs = 7;
        assert!(!check_certificate(&bad_count, &g).unwrap());

        // wrong graph is an error, not a false
        let other = Graph::path(6).unwrap();
        assert!(matches!(
            check_certificate(&cert, &other),
            Err(SaturationError::GraphMismatch { .. })
        ));
    }

    #[test]
    fn certificate_json_roundtrip() {
        let g = clebsch();
        let gens = clebsch_generators();
        let (_, cert) = verify_induced_saturated(&g, 6, Some(&gens)).unwrap();
        let cert = cert.unwrap();
        let json = cert.to_json();
        let back = SaturationCertificate::from_json(&json).unwrap();
        assert_eq!(back, cert);
        assert!(check_certificate(&back, &g).unwrap());

        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["graph"], "O`?G?EhTlKJHe_XOlOCi@");
        assert_eq!(value["n"], 6);
        assert_eq!(value["orbit_reduced"], true);
        assert!(value["entries"].as_array().unwrap().len() == 3);
        let entry = &value["entries"][0];
        assert!(entry["pair"].is_array());
        assert!(entry["was_edge"].is_boolean());
        assert_eq!(entry["path"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn vacuous_saturation_of_tiny_graphs_is_flagged() {
        // a single vertex has no pairs at all: saturated by vacuity, with a
        // warning that n exceeds the vertex count
        let g = Graph::empty(1).unwrap();
        let (verdict, cert) = verify_induced_saturated(&g, 6, None).unwrap();
        assert!(verdict.is_saturated());
        let cert = cert.unwrap();
        assert!(cert.warning.is_some());
        assert_eq!(cert.entries.len(), 0);
        assert!(check_certificate(&cert, &g).unwrap());

        // two vertices, n = 6: the single pair cannot create a P6
        let g2 = Graph::empty(2).unwrap();
        let (verdict, _) = verify_induced_saturated(&g2, 6, None).unwrap();
        assert_eq!(
            verdict,
            SaturationVerdict::AdditionFails { pair: pair(0, 1) }
        );
    }

    #[test]
    fn contained_paths_are_monotone_in_length() {
        // sub-paths of induced paths are induced: containing P_n implies
        // containing P_n' for all 2 <= n' <= n
        let mut rng = StdRng::seed_from_u64(0x5219);
        for _ in 0..120 {
            let m = rng.random_range(3..=9);
            let mut edges = Vec::new();
            for u in 0..m {
                for v in (u + 1)..m {
                    if rng.random_bool(0.45) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(m, &edges).unwrap();
            for n in (3..=m).rev() {
                if g.find_induced_path(n).unwrap().is_some() {
                    for shorter in 2..n {
                        assert!(
                            g.find_induced_path(shorter).unwrap().is_some(),
                            "P_{n} exists but P_{shorter} missing on {g:?}"
                        );
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn verdict_json_statuses() {
        let v = SaturationVerdict::Saturated;
        assert_eq!(
            serde_json::to_value(&v).unwrap(),
            serde_json::json!({"status": "SATURATED"})
        );
        let v = SaturationVerdict::AdditionFails { pair: pair(0, 2) };
        assert_eq!(
            serde_json::to_value(&v).unwrap(),
            serde_json::json!({"status": "ADDITION_FAILS", "pair": [0, 2]})
        );
    }
}
