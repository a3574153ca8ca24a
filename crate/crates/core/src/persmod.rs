//! Finite-type persistence modules as explicit vector spaces and matrices,
//! with a rank oracle that checks barcodes by plain linear algebra.

use thiserror::Error;

use crate::barcode::Interval;
use crate::filtration::Filtration;
use crate::linalg;
use crate::matrix::{mat_mul, Matrix};
use crate::rings::Field;
use crate::simplicial::Simplex;

pub type IntervalSpec = Interval;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PersModError {
    #[error("a persistence module needs at least one vector space")]
    Empty,
    #[error("{maps} structure maps for {spaces} vector spaces")]
    MapCount { spaces: usize, maps: usize },
    #[error("structure map {t} is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MapShape {
        t: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
}

/// `V_0 → V_1 → … → V_T`, constant with identity maps from `T` on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTypePersMod<T> {
    dims: Vec<usize>,
    maps: Vec<Matrix<T>>,
}

impl<T: Clone> FiniteTypePersMod<T> {
    /// `maps[t]` is the `dims[t+1] x dims[t]` matrix of `V_t → V_{t+1}`.
    pub fn new(dims: Vec<usize>, maps: Vec<Matrix<T>>) -> Result<Self, PersModError> {
        if dims.is_empty() {
            return Err(PersModError::Empty);
        }
        if maps.len() + 1 != dims.len() {
            return Err(PersModError::MapCount {
                spaces: dims.len(),
                maps: maps.len(),
            });
        }
        for (t, m) in maps.iter().enumerate() {
            if m.shape() != (dims[t + 1], dims[t]) {
                return Err(PersModError::MapShape {
                    t,
                    rows: m.rows(),
                    cols: m.cols(),
                    expected_rows: dims[t + 1],
                    expected_cols: dims[t],
                });
            }
        }
        Ok(FiniteTypePersMod { dims, maps })
    }

    pub fn zero<F: Field<Elem = T>>(field: &F, horizon: usize) -> Self {
        FiniteTypePersMod {
            dims: vec![0; horizon + 1],
            maps: vec![Matrix::zeros(field, 0, 0); horizon],
        }
    }

    pub fn horizon(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix<T>] {
        &self.maps
    }

    /// `dim V_t`, also past the horizon.
    pub fn dim(&self, t: usize) -> usize {
        self.dims[t.min(self.horizon())]
    }

    fn extended<F: Field<Elem = T>>(&self, field: &F, horizon: usize) -> Self {
        let mut out = self.clone();
        while out.horizon() < horizon {
            let d = *out.dims.last().expect("nonempty");
            out.dims.push(d);
            out.maps.push(Matrix::identity(field, d));
        }
        out
    }
}

/// The module that is `F` on `j` with identity maps inside `j`.
pub fn interval_module<F: Field>(field: &F, j: IntervalSpec, horizon: usize) -> FiniteTypePersMod<F::Elem> {
    let dims: Vec<usize> = (0..=horizon).map(|t| usize::from(j.contains(t))).collect();
    let maps = (0..horizon)
        .map(|t| {
            if j.contains_range(t, t + 1) {
                Matrix::identity(field, 1)
            } else {
                Matrix::zeros(field, dims[t + 1], dims[t])
            }
        })
        .collect();
    FiniteTypePersMod { dims, maps }
}

/// Pointwise direct sum with block-diagonal maps. The module with the
/// smaller horizon is first extended by identities.
pub fn direct_sum<F: Field>(
    field: &F,
    a: &FiniteTypePersMod<F::Elem>,
    b: &FiniteTypePersMod<F::Elem>,
) -> FiniteTypePersMod<F::Elem> {
    let horizon = a.horizon().max(b.horizon());
    let (a, b) = (a.extended(field, horizon), b.extended(field, horizon));
    let dims: Vec<usize> = a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect();
    let maps = (0..horizon)
        .map(|t| {
            let mut m = Matrix::zeros(field, dims[t + 1], dims[t]);
            for (i, j, e) in a.maps[t].entries() {
                m.set(i, j, e.clone());
            }
            let (r0, c0) = (a.dims[t + 1], a.dims[t]);
            for (i, j, e) in b.maps[t].entries() {
                m.set(r0 + i, c0 + j, e.clone());
            }
            m
        })
        .collect();
    FiniteTypePersMod { dims, maps }
}

/// Rank of the structure map `V_t → V_s` for `t <= s`.
pub fn rank_map<F: Field>(field: &F, m: &FiniteTypePersMod<F::Elem>, t: usize, s: usize) -> usize {
    assert!(t <= s, "rank_map needs t <= s, got t = {t}, s = {s}");
    let (t, s) = (t.min(m.horizon()), s.min(m.horizon()));
    let mut acc = Matrix::identity(field, m.dims[t]);
    for r in t..s {
        acc = mat_mul(field, &m.maps[r], &acc).expect("consecutive maps compose");
    }
    linalg::rank(field, &acc)
}

/// Columns of `m` indexed by `cols`.
fn columns<T: Clone>(m: &Matrix<T>, cols: impl Iterator<Item = usize>) -> Vec<Vec<T>> {
    cols.map(|j| m.column(j)).collect()
}

/// Cycle basis and boundary generators, in that order.
type CyclesAndBoundaries<T> = (Vec<Vec<T>>, Vec<Vec<T>>);

struct Level<T> {
    boundaries: Vec<Vec<T>>,
    classes: Vec<Vec<T>>,
}

/// Cycle and boundary data of `K_t` in coordinates of the full `n`-chains.
fn level<F: Field>(
    filt: &Filtration,
    field: &F,
    n: isize,
    t: usize,
    dn: &Matrix<F::Elem>,
    dn1: &Matrix<F::Elem>,
) -> CyclesAndBoundaries<F::Elem> {
    let k = filt.complex();
    let born = |basis: &[Simplex]| -> Vec<usize> {
        (0..basis.len())
            .filter(|&j| filt.birth(&basis[j]).is_some_and(|b| b <= t))
            .collect()
    };
    let here = born(k.standard_basis(n));
    let len = k.count(n);
    let cycles = linalg::nullspace(field, &dn.select_columns(&here))
        .into_iter()
        .map(|z| {
            let mut full = vec![field.zero(); len];
            for (c, &j) in z.into_iter().zip(&here) {
                full[j] = c;
            }
            full
        })
        .collect();
    let boundaries = columns(dn1, born(k.standard_basis(n + 1)).into_iter());
    (cycles, boundaries)
}

/// The `n`-th persistent homology of `filt` as explicit matrices. Homology
/// bases are picked greedily from cycle bases modulo boundaries, so only
/// ranks are meaningful.
pub fn from_filtration<F: Field>(filt: &Filtration, n: isize, field: &F) -> FiniteTypePersMod<F::Elem> {
    let horizon = filt.horizon();
    if n < 0 {
        return FiniteTypePersMod::zero(field, horizon);
    }
    let k = filt.complex();
    let dn = k.boundary_matrix(n, field);
    let dn1 = k.boundary_matrix(n + 1, field);
    let len = k.count(n);
    let levels: Vec<Level<F::Elem>> = (0..=horizon)
        .map(|t| {
            let (cycles, boundaries) = level(filt, field, n, t, &dn, &dn1);
            let mut span = boundaries.clone();
            let mut classes = Vec::new();
            for z in cycles {
                if !linalg::in_span(field, &span, &z) {
                    span.push(z.clone());
                    classes.push(z);
                }
            }
            Level { boundaries, classes }
        })
        .collect();
    let dims: Vec<usize> = levels.iter().map(|l| l.classes.len()).collect();
    let maps = (0..horizon)
        .map(|t| {
            let next = &levels[t + 1];
            let nb = next.boundaries.len();
            let basis: Vec<Vec<F::Elem>> =
                next.boundaries.iter().chain(&next.classes).cloned().collect();
            let system = Matrix::from_columns(len, &basis, field.zero());
            let mut m = Matrix::zeros(field, dims[t + 1], dims[t]);
            for (j, h) in levels[t].classes.iter().enumerate() {
                let x = linalg::solve(field, &system, h).expect("cycles of K_t are cycles of K_t+1");
                for i in 0..dims[t + 1] {
                    m.set(i, j, x[nb + i].clone());
                }
            }
            m
        })
        .collect();
    FiniteTypePersMod { dims, maps }
}

/// `rank(H_n(K_t) → H_n(K_s)) = rank[Z_t | B_s] - rank B_s`, straight from
/// cycle and boundary spaces.
pub fn induced_rank<F: Field>(filt: &Filtration, n: isize, field: &F, t: usize, s: usize) -> usize {
    assert!(t <= s, "induced_rank needs t <= s");
    if n < 0 {
        return 0;
    }
    let k = filt.complex();
    let dn = k.boundary_matrix(n, field);
    let dn1 = k.boundary_matrix(n + 1, field);
    let len = k.count(n);
    let (cycles, _) = level(filt, field, n, t, &dn, &dn1);
    let (_, boundaries) = level(filt, field, n, s, &dn, &dn1);
    let both: Vec<Vec<F::Elem>> = cycles.into_iter().chain(boundaries.iter().cloned()).collect();
    linalg::span_rank(field, len, &both) - linalg::span_rank(field, len, &boundaries)
}

/// Whether `m` has the given barcode, by comparing `rank(V_t → V_s)` with
/// the number of intervals containing `[t, s]` for every `t <= s` up to the
/// point where both sides are constant.
pub fn check_interval_decomposition<F: Field>(
    field: &F,
    m: &FiniteTypePersMod<F::Elem>,
    intervals: &[IntervalSpec],
) -> bool {
    let last = intervals
        .iter()
        .map(|j| j.death().unwrap_or(0).max(j.birth()))
        .chain([m.horizon()])
        .max()
        .unwrap_or(0)
        + 1;
    (0..=last).all(|t| {
        (t..=last).all(|s| {
            let expected = intervals.iter().filter(|j| j.contains_range(t, s)).count();
            rank_map(field, m, t, s) == expected
        })
    })
}
