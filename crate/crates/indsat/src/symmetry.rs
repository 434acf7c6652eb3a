//! Affine maps of a binary field, automorphism checks, and orbit computation
//! on vertex pairs.
//!
//! The affine maps `x -> a*x + b` with `a` a nonzero cube preserve any Cayley
//! graph whose connection set is the cube subgroup, and their orbits on
//! vertex pairs are what lets a verifier check one representative pair
//! instead of every pair. Orbits are computed generically from explicit
//! permutations, so any symmetry source can feed them.

use crate::gf2k::{BinaryField, FieldElement};
use crate::graph::{Graph, VertexPair};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("permutation has length {len}, expected {n}")]
    LengthMismatch { len: usize, n: usize },
    #[error("permutation is not a bijection: image {v} repeated or out of range")]
    NotABijection { v: usize },
    #[error("generator {index} is not an automorphism of the graph")]
    NotAnAutomorphism { index: usize },
    #[error("affine multiplier must be nonzero")]
    ZeroMultiplier,
    #[error("affine multiplier {mask} is not a nonzero cube of the field")]
    MultiplierNotCube { mask: u16 },
    #[error("pair ({u}, {v}) out of range for a graph on {n} vertices")]
    PairOutOfRange { u: usize, v: usize, n: usize },
}

/// The map `x -> a*x + beta` on a binary field, with `a` restricted to the
/// cube subgroup. Any such map is a bijection, and it is an automorphism of
/// the Cayley graph over the nonzero cubes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineMap {
    field: BinaryField,
    a: FieldElement,
    beta: FieldElement,
}

impl AffineMap {
    pub fn new(
        field: BinaryField,
        a: FieldElement,
        beta: FieldElement,
    ) -> Result<AffineMap, SymmetryError> {
        if a.is_zero() {
            return Err(SymmetryError::ZeroMultiplier);
        }
        if !field.nonzero_cubes().contains(&a) {
            return Err(SymmetryError::MultiplierNotCube { mask: a.mask() });
        }
        Ok(AffineMap { field, a, beta })
    }

    pub fn multiplier(&self) -> FieldElement {
        self.a
    }

    pub fn translation(&self) -> FieldElement {
        self.beta
    }

    pub fn apply(&self, x: FieldElement) -> FieldElement {
        self.field.add(self.field.mul(self.a, x), self.beta)
    }

    /// Materializes the map as a permutation of element masks.
    pub fn to_permutation(&self) -> Vec<usize> {
        self.field
            .elements()
            .map(|x| self.apply(x).mask() as usize)
            .collect()
    }
}

/// Validates that `perm` is a bijection on the vertices of `g` and returns
/// whether it preserves adjacency in both directions.
pub fn is_automorphism(g: &Graph, perm: &[usize]) -> Result<bool, SymmetryError> {
    let n = g.n_vertices();
    check_bijection(perm, n)?;
    for u in 0..n {
        for v in (u + 1)..n {
            if g.has_edge(u, v) != g.has_edge(perm[u], perm[v]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_bijection(perm: &[usize], n: usize) -> Result<(), SymmetryError> {
    if perm.len() != n {
        return Err(SymmetryError::LengthMismatch { len: perm.len(), n });
    }
    let mut seen = vec![false; n];
    for &v in perm {
        if v >= n || seen[v] {
            return Err(SymmetryError::NotABijection { v });
        }
        seen[v] = true;
    }
    Ok(())
}

/// Materializes every map `x -> a*x + beta` for `a` in `multipliers` and
/// `beta` ranging over the whole field, as permutations of element masks.
/// Multipliers must be nonzero but are otherwise unrestricted, so the family
/// can also be used to exhibit non-automorphisms.
pub fn affine_group(
    field: &BinaryField,
    multipliers: &[FieldElement],
) -> Result<Vec<Vec<usize>>, SymmetryError> {
    let mut out = Vec::with_capacity(multipliers.len() * field.order() as usize);
    for &a in multipliers {
        if a.is_zero() {
            return Err(SymmetryError::ZeroMultiplier);
        }
        for beta in field.elements() {
            out.push(
                field
                    .elements()
                    .map(|x| field.add(field.mul(a, x), beta).mask() as usize)
                    .collect(),
            );
        }
    }
    Ok(out)
}

/// The cyclic translations `x -> (x + t) mod m`, the automorphism group
/// shared by every circulant graph on `m` vertices.
pub fn cyclic_translations(m: usize) -> Vec<Vec<usize>> {
    (0..m)
        .map(|t| (0..m).map(|x| (x + t) % m).collect())
        .collect()
}

/// One orbit of the generated group acting on a set of vertex pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairOrbit {
    representative: VertexPair,
    members: Vec<VertexPair>,
}

impl PairOrbit {
    /// Lexicographically least member.
    pub fn representative(&self) -> VertexPair {
        self.representative
    }

    /// All members, sorted.
    pub fn members(&self) -> &[VertexPair] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

impl Serialize for PairOrbit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PairOrbit", 3)?;
        st.serialize_field("representative", &self.representative)?;
        st.serialize_field("size", &self.size())?;
        st.serialize_field("members", &self.members)?;
        st.end()
    }
}

/// Partitions `pairs` into orbits under the group generated by `generators`,
/// each of which must be an automorphism of `g`.
///
/// Closure runs over the full pair universe, so two input pairs connected
/// only via pairs outside the input set still land in one orbit. Orbits are
/// returned sorted by representative.
pub fn pair_orbits(
    g: &Graph,
    generators: &[Vec<usize>],
    pairs: &[VertexPair],
) -> Result<Vec<PairOrbit>, SymmetryError> {
    let n = g.n_vertices();
    for (index, gen) in generators.iter().enumerate() {
        if !is_automorphism(g, gen)? {
            return Err(SymmetryError::NotAnAutomorphism { index });
        }
    }
    for p in pairs {
        if p.v() >= n {
            return Err(SymmetryError::PairOutOfRange {
                u: p.u(),
                v: p.v(),
                n,
            });
        }
    }

    // union-find over all C(n, 2) pair indices
    let total = n * n.saturating_sub(1) / 2;
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let index_of = |u: usize, v: usize| -> usize {
        debug_assert!(u < v);
        v * (v - 1) / 2 + u
    };

    for gen in generators {
        for v in 1..n {
            for u in 0..v {
                let (iu, iv) = (gen[u].min(gen[v]), gen[u].max(gen[v]));
                let a = find(&mut parent, index_of(u, v));
                let b = find(&mut parent, index_of(iu, iv));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }

    let mut sorted: Vec<VertexPair> = pairs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();

    let mut orbits: std::collections::BTreeMap<usize, Vec<VertexPair>> = Default::default();
    for p in sorted {
        let root = find(&mut parent, index_of(p.u(), p.v()));
        orbits.entry(root).or_default().push(p);
    }

    let mut out: Vec<PairOrbit> = orbits
        .into_values()
        .map(|members| PairOrbit {
            representative: members[0],
            members,
        })
        .collect();
    out.sort_by_key(|o| o.representative);
    Ok(out)
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2k::BinaryField;
    use crate::graph::{cayley_graph, circulant_graph};

    fn gf16() -> BinaryField {
        BinaryField::new(4, 0x13).unwrap()
    }

    fn clebsch() -> Graph {
        let f = gf16();
        cayley_graph(&f, &f.nonzero_cubes()).unwrap()
    }

    fn pair(u: usize, v: usize) -> VertexPair {
        VertexPair::new(u, v).unwrap()
    }

    #[test]
    fn affine_map_application() {
        let f = gf16();
        let one = f.element(1).unwrap();
        let zero = f.element(0).unwrap();
        let alpha3 = f.element(8).unwrap();

        let id = AffineMap::new(f, one, zero).unwrap();
        for x in f.elements() {
            assert_eq!(id.apply(x), x);
        }

        let m = AffineMap::new(f, alpha3, one).unwrap();
        assert_eq!(m.apply(zero), one);
        let m0 = AffineMap::new(f, alpha3, zero).unwrap();
        assert_eq!(m0.apply(one), alpha3);

        assert!(matches!(
            AffineMap::new(f, zero, zero),
            Err(SymmetryError::ZeroMultiplier)
        ));
        // alpha itself is not a cube
        let alpha = f.element(2).unwrap();
        assert!(matches!(
            AffineMap::new(f, alpha, zero),
            Err(SymmetryError::MultiplierNotCube { mask: 2 })
        ));
    }

    #[test]
    fn all_cube_affine_maps_are_automorphisms() {
        let f = gf16();
        let g = clebsch();
        let maps = affine_group(&f, &f.nonzero_cubes()).unwrap();
        assert_eq!(maps.len(), 80);
        for (i, perm) in maps.iter().enumerate() {
            assert!(is_automorphism(&g, perm).unwrap(), "map {i} failed");
        }
    }

    #[test]
    fn unit_multiplier_gives_the_translations() {
        let f = gf16();
        let one = f.element(1).unwrap();
        let maps = affine_group(&f, &[one]).unwrap();
        assert_eq!(maps.len(), 16);
        for (beta, perm) in maps.iter().enumerate() {
            for (x, &image) in perm.iter().enumerate() {
                assert_eq!(image, x ^ beta);
            }
        }
        assert!(matches!(
            affine_group(&f, &[f.element(0).unwrap()]),
            Err(SymmetryError::ZeroMultiplier)
        ));
    }

    #[test]
    fn non_cube_multiplier_is_not_an_automorphism() {
        let f = gf16();
        let g = clebsch();
        let alpha = f.element(2).unwrap();
        let maps = affine_group(&f, &[alpha]).unwrap();
        // the pure multiplication x -> alpha * x (beta = 0) breaks adjacency
        assert!(!is_automorphism(&g, &maps[0]).unwrap());
    }

    #[test]
    fn identity_is_always_an_automorphism() {
        let g = circulant_graph(7, &[1, 6, 2, 5]).unwrap();
        let id: Vec<usize> = (0..7).collect();
        assert!(is_automorphism(&g, &id).unwrap());
    }

    #[test]
    fn is_automorphism_rejects_non_bijections() {
        let g = Graph::path(4).unwrap();
        assert!(matches!(
            is_automorphism(&g, &[0, 1, 2]),
            Err(SymmetryError::LengthMismatch { len: 3, n: 4 })
        ));
        assert!(matches!(
            is_automorphism(&g, &[0, 1, 1, 3]),
            Err(SymmetryError::NotABijection { v: 1 })
        ));
        assert!(matches!(
            is_automorphism(&g, &[0, 1, 2, 4]),
            Err(SymmetryError::NotABijection { v: 4 })
        ));
    }

    #[test]
    fn clebsch_edge_and_nonedge_orbits() {
        let f = gf16();
        let g = clebsch();
        let maps = affine_group(&f, &f.nonzero_cubes()).unwrap();

        let edge_orbits = pair_orbits(&g, &maps, &g.edges()).unwrap();
        assert_eq!(edge_orbits.len(), 1);
        assert_eq!(edge_orbits[0].size(), 40);
        assert_eq!(edge_orbits[0].representative(), pair(0, 1));

        let nonedge_orbits = pair_orbits(&g, &maps, &g.non_edges()).unwrap();
        assert_eq!(nonedge_orbits.len(), 2);
        assert_eq!(nonedge_orbits.iter().map(|o| o.size()).sum::<usize>(), 80);
        // one orbit holds {0, alpha^10} = {0, 7}, the other {0, alpha^14} = {0, 9}
        let holds = |p: VertexPair| {
            nonedge_orbits
                .iter()
                .position(|o| o.members().contains(&p))
                .unwrap()
        };
        assert_ne!(holds(pair(0, 7)), holds(pair(0, 9)));

        // orbit sizes divide the group order
        for o in edge_orbits.iter().chain(&nonedge_orbits) {
            assert_eq!(80 % o.size(), 0);
        }
    }

    #[test]
    fn orbits_partition_the_input_pairs() {
        let f = gf16();
        let g = clebsch();
        let maps = affine_group(&f, &f.nonzero_cubes()).unwrap();
        let all = g.all_pairs();
        let orbits = pair_orbits(&g, &maps, &all).unwrap();

        let mut collected: Vec<VertexPair> =
            orbits.iter().flat_map(|o| o.members().to_vec()).collect();
        collected.sort_unstable();
        assert_eq!(collected, all, "orbits must partition the pair set");
        for o in &orbits {
            assert!(o.members().contains(&o.representative()));
            assert_eq!(o.representative(), o.members()[0]);
        }
    }

    #[test]
    fn identity_generator_gives_singleton_orbits() {
        let g = clebsch();
        let id: Vec<usize> = (0..16).collect();
        let orbits = pair_orbits(&g, &[id], &g.all_pairs()).unwrap();
        assert_eq!(orbits.len(), 120);
        assert!(orbits.iter().all(|o| o.size() == 1));

        // no generators at all behaves the same
        let orbits = pair_orbits(&g, &[], &g.all_pairs()).unwrap();
        assert_eq!(orbits.len(), 120);
    }

    #[test]
    fn pair_orbits_rejects_non_automorphism_generators() {
        let g = circulant_graph(16, &[1, 15]).unwrap(); // C16, not the Clebsch graph
        let f = gf16();
        let maps = affine_group(&f, &f.nonzero_cubes()).unwrap();
        let err = pair_orbits(&g, &maps, &g.edges()).unwrap_err();
        assert!(matches!(err, SymmetryError::NotAnAutomorphism { .. }));
    }

    #[test]
    fn translations_of_cyclic_group() {
        let perms = cyclic_translations(6);
        assert_eq!(perms.len(), 6);
        let g = circulant_graph(6, &[1, 5]).unwrap();
        for p in &perms {
            assert!(is_automorphism(&g, p).unwrap());
        }
        // orbits of edges under rotation: one orbit of size 6
        let orbits = pair_orbits(&g, &perms, &g.edges()).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].size(), 6);
    }

    #[test]
    fn orbit_json_shape() {
        let g = circulant_graph(4, &[2]).unwrap();
        let orbits = pair_orbits(&g, &cyclic_translations(4), &g.edges()).unwrap();
        let json = serde_json::to_value(&orbits).unwrap();
        assert_eq!(
            json,
            serde_json::json!([
                {"representative": [0, 2], "size": 2, "members": [[0, 2], [1, 3]]}
            ])
        );
    }
}
