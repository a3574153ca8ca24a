//! ℕ-indexed simplicial filtrations and their graded boundary matrices.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::matrix::{GradedMatrix, Matrix};
use crate::rings::{Field, PolyRing};
use crate::simplicial::{ComplexError, Orientation, Simplex, SimplicialComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiltrationError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("face {face} is born at {face_birth}, after its coface {coface} at {coface_birth}")]
    Monotonicity {
        face: String,
        face_birth: usize,
        coface: String,
        coface_birth: usize,
    },
    #[error("simplex {simplex} listed with births {first} and {second}")]
    Duplicate {
        simplex: String,
        first: usize,
        second: usize,
    },
}

/// A finite simplicial complex with a birth time for every simplex, such that
/// faces are born no later than their cofaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    complex: SimplicialComplex,
    births: HashMap<Simplex, usize>,
    horizon: usize,
}

/// Standard ordered basis of the graded chain module in one dimension:
/// simplices with births, sorted by birth then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedChainBasis {
    pub dim: isize,
    pub entries: Vec<(Simplex, usize)>,
}

impl GradedChainBasis {
    pub fn degrees(&self) -> Vec<usize> {
        self.entries.iter().map(|(_, t)| *t).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Filtration {
    /// Builds a filtration from `(birth, vertex tokens)` events.
    ///
    /// A simplex listed twice with different births is an error when `strict`;
    /// otherwise the earlier birth wins and a warning is returned.
    pub fn from_events<S: AsRef<str>>(
        events: &[(usize, Vec<S>)],
        orientation: Option<Vec<String>>,
        strict: bool,
    ) -> Result<(Filtration, Vec<String>), FiltrationError> {
        let orientation = match orientation {
            Some(order) => Orientation::new(order)?,
            None => Orientation::lexicographic(
                events
                    .iter()
                    .flat_map(|(_, s)| s.iter().map(|v| v.as_ref().to_string())),
            ),
        };
        let mut warnings = Vec::new();
        let mut births: HashMap<Simplex, usize> = HashMap::new();
        for (t, tokens) in events {
            let (s, _) = orientation.canonicalize(tokens)?;
            match births.get(&s).copied() {
                Some(prev) if prev != *t => {
                    if strict {
                        return Err(FiltrationError::Duplicate {
                            simplex: orientation.label(&s),
                            first: prev,
                            second: *t,
                        });
                    }
                    warnings.push(format!(
                        "simplex {} listed with births {prev} and {t}; keeping {}",
                        orientation.label(&s),
                        prev.min(*t)
                    ));
                    births.insert(s, prev.min(*t));
                }
                Some(_) => {}
                None => {
                    births.insert(s, *t);
                }
            }
        }

        let set: BTreeSet<Simplex> = births.keys().cloned().collect();
        for s in &set {
            let missing: Vec<String> = s
                .facets()
                .filter(|(_, f)| !births.contains_key(f))
                .map(|(_, f)| orientation.label(&f))
                .collect();
            if !missing.is_empty() {
                return Err(ComplexError::ClosureViolation {
                    simplex: orientation.label(s),
                    missing,
                }
                .into());
            }
            for (_, f) in s.facets() {
                if births[&f] > births[s] {
                    return Err(FiltrationError::Monotonicity {
                        face: orientation.label(&f),
                        face_birth: births[&f],
                        coface: orientation.label(s),
                        coface_birth: births[s],
                    });
                }
            }
        }
        for (p, name) in orientation.names().iter().enumerate() {
            if !births.contains_key(&Simplex::from_positions(vec![p])) {
                return Err(ComplexError::UnusedOrientationVertex(name.clone()).into());
            }
        }

        let horizon = births.values().copied().max().unwrap_or(0);
        let complex = SimplicialComplex::from_closed(Arc::new(orientation), set);
        Ok((
            Filtration {
                complex,
                births,
                horizon,
            },
            warnings,
        ))
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn orientation(&self) -> &Orientation {
        self.complex.orientation()
    }

    /// Largest birth time; the filtration is constant from here on.
    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn birth(&self, s: &Simplex) -> Option<usize> {
        self.births.get(s).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    /// The subcomplex `K_t` of simplices born at or before `t`. It shares the
    /// orientation of the full complex.
    pub fn complex_at(&self, t: usize) -> SimplicialComplex {
        let set = self
            .complex
            .simplices()
            .filter(|s| self.births[*s] <= t)
            .cloned()
            .collect();
        SimplicialComplex::from_closed(self.complex.orientation_arc().clone(), set)
    }

    pub fn graded_chain_basis(&self, n: isize) -> GradedChainBasis {
        let mut entries: Vec<(Simplex, usize)> = self
            .complex
            .standard_basis(n)
            .iter()
            .map(|s| (s.clone(), self.births[s]))
            .collect();
        // stable sort keeps lexicographic order among equal births
        entries.sort_by_key(|(_, t)| *t);
        GradedChainBasis { dim: n, entries }
    }

    /// Matrix of the graded boundary `∂_n` relative to the standard graded
    /// bases: the entry for facet `τ_j` of `σ_i` is `±x^{t_i - t_j}`.
    pub fn graded_boundary_matrix<F: Field>(
        &self,
        n: isize,
        ring: &PolyRing<F>,
    ) -> GradedMatrix<F::Elem> {
        let rows = self.graded_chain_basis(n - 1);
        let cols = self.graded_chain_basis(n);
        let row_index: HashMap<&Simplex, usize> =
            rows.entries.iter().enumerate().map(|(i, (s, _))| (s, i)).collect();
        let mut base = Matrix::zeros(ring, rows.len(), cols.len());
        let field = ring.field();
        for (i, (s, t)) in cols.entries.iter().enumerate() {
            if n <= 0 {
                break;
            }
            for (sign, f) in s.facets() {
                let j = row_index[&f];
                let tf = rows.entries[j].1;
                let coef = if sign > 0 { field.one() } else { field.neg(&field.one()) };
                base.set(j, i, ring.monomial(coef, t - tf));
            }
        }
        GradedMatrix::new(ring, base, rows.degrees(), cols.degrees())
            .expect("graded boundary matrices are homogeneous by construction")
    }

    /// Iterates over all simplices with their births.
    pub fn events(&self) -> impl Iterator<Item = (&Simplex, usize)> {
        self.complex.simplices().map(|s| (s, self.births[s]))
    }
}

/// Substitutes `x := 1` into every entry.
pub fn dehomogenize<F: Field>(ring: &PolyRing<F>, m: &Matrix<crate::rings::Poly<F::Elem>>) -> Matrix<F::Elem> {
    m.map(|e| ring.eval_at_one(e))
}
