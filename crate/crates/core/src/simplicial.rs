//! Abstract simplicial complexes, oriented chain bases, boundary matrices and
//! homology over a PID.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::matrix::{snd, Matrix};
use crate::rings::EuclideanDomain;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex {vertex:?} of simplex {simplex:?} is not in the orientation")]
    UnknownVertex { vertex: String, simplex: String },
    #[error("vertex {vertex:?} repeated in simplex {simplex:?}")]
    RepeatedVertex { vertex: String, simplex: String },
    #[error("vertex {0:?} listed twice in the orientation")]
    RepeatedOrientationVertex(String),
    #[error("orientation vertex {0:?} is not a 0-simplex of the complex")]
    UnusedOrientationVertex(String),
    #[error("empty simplex")]
    EmptySimplex,
    #[error("simplex {simplex} is missing faces: {}", missing.join(", "))]
    ClosureViolation { simplex: String, missing: Vec<String> },
}

/// A total order on the vertex names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    order: Vec<String>,
    index: HashMap<String, usize>,
}

impl Orientation {
    pub fn new(order: Vec<String>) -> Result<Self, ComplexError> {
        let mut index = HashMap::with_capacity(order.len());
        for (i, v) in order.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(ComplexError::RepeatedOrientationVertex(v.clone()));
            }
        }
        Ok(Orientation { order, index })
    }

    /// Orders the given names lexicographically, dropping duplicates.
    pub fn lexicographic<I: IntoIterator<Item = String>>(names: I) -> Self {
        let order: Vec<String> = names.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        Orientation::new(order).expect("set has no duplicates")
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, position: usize) -> &str {
        &self.order[position]
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Vertex names of `s` separated by spaces. Used by file formats.
    pub fn tokens(&self, s: &Simplex) -> String {
        s.0.iter().map(|&v| self.name(v)).collect::<Vec<_>>().join(" ")
    }

    /// Compact display: names concatenated when all are single characters.
    pub fn label(&self, s: &Simplex) -> String {
        if s.0.iter().all(|&v| self.name(v).chars().count() == 1) {
            s.0.iter().map(|&v| self.name(v)).collect()
        } else {
            self.tokens(s)
        }
    }

    /// Sorts `tokens` into orientation order and returns the simplex with the
    /// sign of the sorting permutation.
    pub fn canonicalize<S: AsRef<str>>(&self, tokens: &[S]) -> Result<(Simplex, i8), ComplexError> {
        if tokens.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        let shown = || tokens.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(" ");
        let mut positions = Vec::with_capacity(tokens.len());
        for t in tokens {
            let t = t.as_ref();
            let p = self.position(t).ok_or_else(|| ComplexError::UnknownVertex {
                vertex: t.to_string(),
                simplex: shown(),
            })?;
            positions.push(p);
        }
        // parity by counting inversions; simplices are small
        let mut inversions = 0usize;
        for i in 0..positions.len() {
            for j in i + 1..positions.len() {
                if positions[i] == positions[j] {
                    return Err(ComplexError::RepeatedVertex {
                        vertex: tokens[i].as_ref().to_string(),
                        simplex: shown(),
                    });
                }
                if positions[i] > positions[j] {
                    inversions += 1;
                }
            }
        }
        positions.sort_unstable();
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Ok((Simplex(positions), sign))
    }
}

/// A simplex as the ascending list of its vertex positions in the orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Builds a simplex from vertex positions; sorts and deduplicates them.
    pub fn from_positions(mut positions: Vec<usize>) -> Self {
        positions.sort_unstable();
        positions.dedup();
        Simplex(positions)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-one faces with their boundary signs: removing the vertex at
    /// index `i` contributes `(-1)^i`.
    pub fn facets(&self) -> impl Iterator<Item = (i8, Simplex)> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            (if i % 2 == 0 { 1 } else { -1 }, Simplex(v))
        })
    }
}

/// A finite face-closed family of simplices with an orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    orientation: Arc<Orientation>,
    by_dim: Vec<Vec<Simplex>>,
    index: HashMap<Simplex, usize>,
}

impl SimplicialComplex {
    /// Builds a complex from simplices already known to be face-closed.
    pub(crate) fn from_closed(orientation: Arc<Orientation>, simplices: BTreeSet<Simplex>) -> Self {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        // BTreeSet order is lexicographic on position tuples
        for s in simplices {
            let d = s.dim();
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(s);
        }
        let index = by_dim
            .iter()
            .flat_map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)))
            .collect();
        SimplicialComplex {
            orientation,
            by_dim,
            index,
        }
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub(crate) fn orientation_arc(&self) -> &Arc<Orientation> {
        &self.orientation
    }

    /// Dimension of the complex; `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    /// Index of `s` within the standard basis of its dimension.
    pub fn basis_index(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    /// The n-simplices in lexicographic order of their vertex tuples.
    pub fn standard_basis(&self, n: isize) -> &[Simplex] {
        usize::try_from(n)
            .ok()
            .and_then(|n| self.by_dim.get(n))
            .map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, n: isize) -> usize {
        self.standard_basis(n).len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Matrix of `∂_n : C_n → C_{n-1}` in the standard bases.
    pub fn boundary_matrix<R: EuclideanDomain>(&self, n: isize, ring: &R) -> Matrix<R::Elem> {
        let cols = self.standard_basis(n);
        let rows = self.count(n - 1);
        let mut m = Matrix::zeros(ring, rows, cols.len());
        if n <= 0 {
            return m;
        }
        let one = ring.one();
        let minus_one = ring.neg(&one);
        for (j, s) in cols.iter().enumerate() {
            for (sign, face) in s.facets() {
                let i = self.index[&face];
                m.set(i, j, if sign > 0 { one.clone() } else { minus_one.clone() });
            }
        }
        m
    }

    pub fn display_simplex(&self, s: &Simplex) -> String {
        self.orientation.label(s)
    }
}

/// Checks face-closure and orientation coverage.
///
/// Without an explicit orientation the vertex names are ordered
/// lexicographically. With `auto_close` missing faces are inserted instead of
/// reported.
pub fn validate_complex<S: AsRef<str>>(
    simplices: &[Vec<S>],
    orientation: Option<Vec<String>>,
    auto_close: bool,
) -> Result<SimplicialComplex, ComplexError> {
    let orientation = match orientation {
        Some(order) => Orientation::new(order)?,
        None => Orientation::lexicographic(
            simplices.iter().flatten().map(|v| v.as_ref().to_string()),
        ),
    };
    let mut set = BTreeSet::new();
    for tokens in simplices {
        let (s, _) = orientation.canonicalize(tokens)?;
        set.insert(s);
    }
    if auto_close {
        let mut stack: Vec<Simplex> = set.iter().cloned().collect();
        while let Some(s) = stack.pop() {
            for (_, f) in s.facets() {
                if set.insert(f.clone()) {
                    stack.push(f);
                }
            }
        }
    } else {
        for s in &set {
            let missing: Vec<String> = s
                .facets()
                .filter(|(_, f)| !set.contains(f))
                .map(|(_, f)| orientation.label(&f))
                .collect();
            if !missing.is_empty() {
                return Err(ComplexError::ClosureViolation {
                    simplex: orientation.label(s),
                    missing,
                });
            }
        }
    }
    for (p, name) in orientation.names().iter().enumerate() {
        if !set.contains(&Simplex(vec![p])) {
            return Err(ComplexError::UnusedOrientationVertex(name.clone()));
        }
    }
    Ok(SimplicialComplex::from_closed(Arc::new(orientation), set))
}

/// `H_n ≅ R^free_rank ⊕ ⊕ R/(d_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyDecomposition<T> {
    pub dim: isize,
    pub free_rank: usize,
    pub invariant_factors: Vec<T>,
}

impl<T> HomologyDecomposition<T> {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }
}

/// Homology in dimension `n` from the Smith normal forms of `∂_n` and `∂_{n+1}`.
pub fn homology<R: EuclideanDomain>(
    k: &SimplicialComplex,
    n: isize,
    ring: &R,
) -> HomologyDecomposition<R::Elem> {
    if n < 0 || k.dim().is_none_or(|d| n > d as isize) {
        return HomologyDecomposition {
            dim: n,
            free_rank: 0,
            invariant_factors: Vec::new(),
        };
    }
    let higher = snd(ring, &k.boundary_matrix(n + 1, ring));
    let lower = snd(ring, &k.boundary_matrix(n, ring));
    let kernel_rank = k.count(n) - lower.rank;
    HomologyDecomposition {
        dim: n,
        free_rank: kernel_rank - higher.rank,
        invariant_factors: higher
            .diagonal
            .into_iter()
            .filter(|d| !ring.is_unit(d))
            .collect(),
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::matrix::{is_zero_matrix, mat_mul};
    use crate::rings::{Integers, PrimeField, Rationals};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn complex(spec: &str) -> SimplicialComplex {
        let simplices: Vec<Vec<String>> = spec
            .split(',')
            .map(|s| s.trim().chars().map(|c| c.to_string()).collect())
            .collect();
        validate_complex(&simplices, None, false).unwrap()
    }

    fn named(list: &[&[&str]]) -> Vec<Vec<String>> {
        list.iter()
            .map(|s| s.iter().map(|v| v.to_string()).collect())
            .collect()
    }

    #[test]
    fn validation_examples() {
        let k = complex("a,b,c,ab,ac,bc,abc");
        assert_eq!(k.dim(), Some(2));
        assert_eq!(k.len(), 7);

        let err = validate_complex(&named(&[&["a", "b"]]), None, false).unwrap_err();
        assert_eq!(
            err,
            ComplexError::ClosureViolation {
                simplex: "ab".into(),
                missing: vec!["b".into(), "a".into()],
            }
        );
        let closed = validate_complex(&named(&[&["a", "b"]]), None, true).unwrap();
        assert_eq!(closed.len(), 3);

        let k = complex("a,b,c,d,ab,ac,bc,ad,bd,abc,abd");
        assert_eq!(k.count(1), 5);
    }

    #[test]
    fn orientation_errors() {
        let simplices = named(&[&["a"], &["b"]]);
        let err = validate_complex(&simplices, Some(vec!["a".into()]), false).unwrap_err();
        assert!(matches!(err, ComplexError::UnknownVertex { ref vertex, .. } if vertex == "b"));
        let err = validate_complex(
            &simplices,
            Some(vec!["a".into(), "b".into(), "c".into()]),
            false,
        )
        .unwrap_err();
        assert_eq!(err, ComplexError::UnusedOrientationVertex("c".into()));
        let err = validate_complex(&simplices, Some(vec!["a".into(), "a".into()]), false).unwrap_err();
        assert_eq!(err, ComplexError::RepeatedOrientationVertex("a".into()));
        let err = validate_complex(&named(&[&["a", "a"]]), None, true).unwrap_err();
        assert!(matches!(err, ComplexError::RepeatedVertex { .. }));
    }

    #[test]
    fn canonical_sign() {
        let o = Orientation::new(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let (s, sign) = o.canonicalize(&["c", "a", "b"]).unwrap();
        assert_eq!(s.vertices(), &[0, 1, 2]);
        assert_eq!(sign, 1);
        let (_, sign) = o.canonicalize(&["b", "a", "c"]).unwrap();
        assert_eq!(sign, -1);
    }

    #[test]
    fn standard_bases_of_the_tetrahedron() {
        let k = validate_complex(&named(&[&["a", "b", "c", "d"]]), None, true).unwrap();
        let labels = |n| -> Vec<String> {
            k.standard_basis(n).iter().map(|s| k.display_simplex(s)).collect()
        };
        assert_eq!(labels(1), ["ab", "ac", "ad", "bc", "bd", "cd"]);
        assert_eq!(labels(2), ["abc", "abd", "acd", "bcd"]);
        assert!(labels(-1).is_empty());
        assert!(labels(4).is_empty());
    }

    fn two_triangles() -> SimplicialComplex {
        let simplices = named(&[&["a1", "a3", "a4"], &["a2", "a3", "a4"], &["a1", "a2"]]);
        let order = ["a1", "a2", "a3", "a4"].map(String::from).to_vec();
        validate_complex(&simplices, Some(order), true).unwrap()
    }

    fn zmat(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn boundary_matrices_of_two_triangles() {
        let k = two_triangles();
        assert_eq!(
            k.boundary_matrix(1, &Integers),
            zmat(&[
                &[-1, -1, -1, 0, 0, 0],
                &[1, 0, 0, -1, -1, 0],
                &[0, 1, 0, 1, 0, -1],
                &[0, 0, 1, 0, 1, 1],
            ])
        );
        assert_eq!(
            k.boundary_matrix(2, &Integers),
            zmat(&[&[0, 0], &[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1]])
        );
        assert_eq!(k.boundary_matrix(0, &Integers).shape(), (0, 4));
    }

    #[test]
    fn homology_of_two_triangles() {
        let k = two_triangles();
        let h1 = homology(&k, 1, &Integers);
        assert_eq!((h1.free_rank, h1.invariant_factors.len()), (1, 0));
        let h0 = homology(&k, 0, &Integers);
        assert_eq!(h0.free_rank, 1);
        assert!(homology(&k, 2, &Integers).is_trivial());
        assert!(homology(&k, -1, &Integers).is_trivial());
        assert!(homology(&k, 7, &Integers).is_trivial());
    }

    #[test]
    fn homology_of_six_vertex_graph() {
        let simplices = named(&[
            &["a1", "a2"],
            &["a3", "a4"],
            &["a4", "a5"],
            &["a4", "a6"],
            &["a5", "a6"],
        ]);
        let k = validate_complex(&simplices, None, true).unwrap();
        let h0 = homology(&k, 0, &Integers);
        assert_eq!(h0.free_rank, 2);
        assert!(h0.invariant_factors.is_empty());
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // 6-vertex triangulation of RP^2
        let faces = [
            "124", "126", "135", "136", "145", "234", "235", "256", "346", "456",
        ];
        let simplices: Vec<Vec<String>> = faces
            .iter()
            .map(|f| f.chars().map(|c| c.to_string()).collect())
            .collect();
        let k = validate_complex(&simplices, None, true).unwrap();
        let h1 = homology(&k, 1, &Integers);
        assert_eq!(h1.free_rank, 0);
        assert_eq!(h1.invariant_factors, vec![BigInt::from(2)]);
        assert!(homology(&k, 2, &Integers).is_trivial());
        // over Z_2 the torsion disappears and a free class shows up in H_1 and H_2
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(homology(&k, 1, &f2).free_rank, 1);
        assert_eq!(homology(&k, 2, &f2).free_rank, 1);
        assert_eq!(homology(&k, 1, &Rationals).free_rank, 0);
    }

    fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
        prop::collection::vec(prop::collection::btree_set(0usize..6, 1..=4), 1..8).prop_map(|sets| {
            let simplices: Vec<Vec<String>> = sets
                .into_iter()
                .map(|s| s.into_iter().map(|v| format!("v{v}")).collect())
                .collect();
            validate_complex(&simplices, None, true).unwrap()
        })
    }

    proptest! {
        #[test]
        fn boundary_squares_to_zero(k in arb_complex()) {
            for n in 0..=4isize {
                let product = mat_mul(&Integers, &k.boundary_matrix(n, &Integers), &k.boundary_matrix(n + 1, &Integers)).unwrap();
                prop_assert!(is_zero_matrix(&Integers, &product));
            }
        }

        #[test]
        fn free_rank_matches_gaussian_elimination(k in arb_complex()) {
            let q = Rationals;
            for n in 0..=3isize {
                let kernel = k.count(n) - linalg::rank(&q, &k.boundary_matrix(n, &q));
                let image = linalg::rank(&q, &k.boundary_matrix(n + 1, &q));
                prop_assert_eq!(homology(&k, n, &q).free_rank, kernel - image);
            }
        }

        #[test]
        fn homology_ignores_vertex_order(k in arb_complex(), seed in any::<u64>()) {
            let mut order = k.orientation().names().to_vec();
            // deterministic shuffle from the seed
            let len = order.len();
            let mut state = seed;
            for i in (1..len).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                order.swap(i, (state >> 33) as usize % (i + 1));
            }
            let simplices: Vec<Vec<String>> = k
                .simplices()
                .map(|s| s.vertices().iter().map(|&v| k.orientation().name(v).to_string()).collect())
                .collect();
            let shuffled = validate_complex(&simplices, Some(order), false).unwrap();
            for n in 0..=3isize {
                prop_assert_eq!(homology(&k, n, &Integers), homology(&shuffled, n, &Integers));
            }
        }
    }
}
