//! Persistence barcodes from graded Smith normal forms of the graded boundary
//! matrices of a filtration.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::filtration::Filtration;
use crate::linalg;
use crate::matrix::{graded_snd, is_zero_matrix, mat_mul, Matrix, MatrixError};
use crate::rings::{Field, Poly, PolyRing};
use crate::simplicial::Simplex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BarcodeError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("dim {dim}: torsion generator of degree {degree} has no matching kernel basis degree")]
    KernelDegreeMismatch { dim: usize, degree: usize },
    #[error("dim {dim}: essential births by degree count {multiset:?} differ from greedy births {greedy:?}")]
    EssentialMismatch {
        dim: usize,
        multiset: Vec<usize>,
        greedy: Vec<usize>,
    },
    #[error("barcode check failed: {0}")]
    Verification(String),
}

/// A half-open interval `[birth, death)` of ℕ; `death == None` means `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    birth: usize,
    death: Option<usize>,
}

impl Interval {
    /// `None` unless `birth < death`.
    pub fn new(birth: usize, death: Option<usize>) -> Option<Self> {
        match death {
            Some(d) if d <= birth => None,
            _ => Some(Interval { birth, death }),
        }
    }

    pub fn finite(birth: usize, death: usize) -> Option<Self> {
        Self::new(birth, Some(death))
    }

    pub fn infinite(birth: usize) -> Self {
        Interval { birth, death: None }
    }

    pub fn birth(&self) -> usize {
        self.birth
    }

    pub fn death(&self) -> Option<usize> {
        self.death
    }

    pub fn is_essential(&self) -> bool {
        self.death.is_none()
    }

    pub fn contains(&self, t: usize) -> bool {
        self.contains_range(t, t)
    }

    /// Whether `[t, s] ⊆ self`, for `t <= s`.
    pub fn contains_range(&self, t: usize, s: usize) -> bool {
        self.birth <= t && self.death.is_none_or(|d| s < d)
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |i: &Interval| (i.birth, i.death.is_none(), i.death);
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.death {
            Some(d) => write!(f, "[{}, {d})", self.birth),
            None => write!(f, "[{}, inf)", self.birth),
        }
    }
}

/// A chain over a field with nonzero coefficients, sorted by simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain<T> {
    terms: Vec<(Simplex, T)>,
}

impl<T: Clone> Chain<T> {
    pub fn new<F: Field<Elem = T>>(field: &F, terms: impl IntoIterator<Item = (Simplex, T)>) -> Self {
        let mut merged: BTreeMap<Simplex, T> = BTreeMap::new();
        for (s, c) in terms {
            let sum = match merged.get(&s) {
                Some(prev) => field.add(prev, &c),
                None => c,
            };
            merged.insert(s, sum);
        }
        Chain {
            terms: merged.into_iter().filter(|(_, c)| !field.is_zero(c)).collect(),
        }
    }

    pub fn terms(&self) -> &[(Simplex, T)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coordinates relative to `basis`; panics on a simplex outside it.
    pub fn to_vector<F: Field<Elem = T>>(&self, field: &F, basis: &[Simplex]) -> Vec<T> {
        let mut v = vec![field.zero(); basis.len()];
        for (s, c) in &self.terms {
            let i = basis.binary_search(s).expect("chain simplex lies in the basis");
            v[i] = c.clone();
        }
        v
    }

    pub fn scale<F: Field<Elem = T>>(&self, field: &F, c: &T) -> Self {
        Chain::new(field, self.terms.iter().map(|(s, e)| (s.clone(), field.mul(e, c))))
    }
}

/// One bar of a barcode with an optional cycle representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bar<T> {
    pub dim: usize,
    pub interval: Interval,
    pub representative: Option<Chain<T>>,
}

/// Per-dimension bars; `bars(n)` is empty beyond the computed range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Barcode<T> {
    pub field: String,
    pub dims: Vec<Vec<Bar<T>>>,
}

impl<T> Barcode<T> {
    pub fn bars(&self, n: usize) -> &[Bar<T>] {
        self.dims.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn intervals(&self, n: usize) -> Vec<Interval> {
        self.bars(n).iter().map(|b| b.interval).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Bar<T>> {
        self.dims.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.dims.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Summand of a graded invariant factor decomposition: `Σ^s F[x]` or
/// `Σ^s F[x]/(x^t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GradedIfdSummand {
    Free { shift: usize },
    Torsion { shift: usize, exponent: usize },
}

impl GradedIfdSummand {
    pub fn interval(&self) -> Interval {
        match *self {
            GradedIfdSummand::Free { shift } => Interval::infinite(shift),
            GradedIfdSummand::Torsion { shift, exponent } => {
                Interval::finite(shift, shift + exponent).expect("torsion exponent is positive")
            }
        }
    }
}

/// Both essential-birth computations for one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialBirths {
    /// Kernel basis degrees minus all torsion generator degrees.
    pub by_degree_count: Vec<usize>,
    /// Births of the kernel columns accepted by greedy span membership.
    pub greedy: Vec<usize>,
}

struct Decomposition<T> {
    dim: usize,
    /// `(shift, exponent, generator)` for every positive exponent.
    torsion: Vec<(usize, usize, Chain<T>)>,
    essential: Vec<(usize, Chain<T>)>,
    births: EssentialBirths,
}

fn decompose<F: Field>(
    filt: &Filtration,
    n: usize,
    field: &F,
) -> Result<Decomposition<F::Elem>, BarcodeError> {
    let ring = PolyRing::new(field.clone());
    let ni = n as isize;
    let basis: Vec<Simplex> = filt
        .graded_chain_basis(ni)
        .entries
        .into_iter()
        .map(|(s, _)| s)
        .collect();
    let lower = graded_snd(&ring, &filt.graded_boundary_matrix(ni, &ring))?;
    let upper = graded_snd(&ring, &filt.graded_boundary_matrix(ni + 1, &ring))?;

    let flat = |col: &[Poly<F::Elem>]| -> Vec<F::Elem> { col.iter().map(|e| ring.eval_at_one(e)).collect() };
    let chain = |v: &[F::Elem]| Chain::new(field, basis.iter().cloned().zip(v.iter().cloned()));

    let exponents = upper.diagonal_exponents();
    let mut generators: Vec<(usize, usize, Vec<F::Elem>)> = (0..upper.snd.rank)
        .map(|j| (upper.new_row_degrees[j], exponents[j], flat(&upper.snd.u.column(j))))
        .collect();
    generators.sort_by_key(|g| g.0);

    let mut kernel: Vec<(Vec<F::Elem>, usize)> = lower
        .kernel_columns()
        .into_iter()
        .map(|(col, d)| (flat(&col), d))
        .collect();
    kernel.sort_by_key(|k| k.1);

    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for (_, d) in &kernel {
        *counts.entry(*d).or_default() += 1;
    }
    for (s, _, _) in &generators {
        match counts.get_mut(s) {
            Some(c) if *c > 0 => *c -= 1,
            _ => return Err(BarcodeError::KernelDegreeMismatch { dim: n, degree: *s }),
        }
    }
    let by_degree_count: Vec<usize> = counts
        .iter()
        .flat_map(|(&d, &c)| std::iter::repeat_n(d, c))
        .collect();

    let mut span: Vec<Vec<F::Elem>> = Vec::new();
    let mut next_gen = 0;
    let mut essential = Vec::new();
    for (z, d) in &kernel {
        while next_gen < generators.len() && generators[next_gen].0 <= *d {
            span.push(generators[next_gen].2.clone());
            next_gen += 1;
        }
        if !linalg::in_span(field, &span, z) {
            span.push(z.clone());
            essential.push((*d, chain(z)));
        }
    }
    let greedy = essential.iter().map(|(d, _)| *d).collect();

    let torsion = generators
        .iter()
        .filter(|(_, t, _)| *t > 0)
        .map(|(s, t, v)| (*s, *t, chain(v)))
        .collect();
    Ok(Decomposition {
        dim: n,
        torsion,
        essential,
        births: EssentialBirths {
            by_degree_count,
            greedy,
        },
    })
}

fn checked<T>(d: Decomposition<T>) -> Result<Decomposition<T>, BarcodeError> {
    if d.births.by_degree_count != d.births.greedy {
        return Err(BarcodeError::EssentialMismatch {
            dim: d.dim,
            multiset: d.births.by_degree_count,
            greedy: d.births.greedy,
        });
    }
    Ok(d)
}

/// Essential births in dimension `n` by both procedures, without comparing
/// them. [`persistent_homology`] fails when they differ.
pub fn essential_births<F: Field>(
    filt: &Filtration,
    n: usize,
    field: &F,
) -> Result<EssentialBirths, BarcodeError> {
    Ok(decompose(filt, n, field)?.births)
}

/// Graded invariant factor decomposition of the `n`-th graded homology,
/// free summands first, then torsion, each sorted.
pub fn graded_ifd<F: Field>(
    filt: &Filtration,
    n: isize,
    field: &F,
) -> Result<Vec<GradedIfdSummand>, BarcodeError> {
    if n < 0 {
        return Ok(Vec::new());
    }
    let d = checked(decompose(filt, n as usize, field)?)?;
    let mut out: Vec<GradedIfdSummand> = d
        .essential
        .iter()
        .map(|(s, _)| GradedIfdSummand::Free { shift: *s })
        .chain(d.torsion.iter().map(|(s, t, _)| GradedIfdSummand::Torsion {
            shift: *s,
            exponent: *t,
        }))
        .collect();
    out.sort();
    Ok(out)
}

fn rep_key<F: Field>(field: &F, bar: &Bar<F::Elem>) -> Vec<(Simplex, String)> {
    bar.representative
        .iter()
        .flat_map(|c| c.terms())
        .map(|(s, e)| (s.clone(), field.format_elem(e)))
        .collect()
}

/// Bars of the `n`-th persistent homology with representatives.
///
/// Finite bars carry the torsion generator read from the graded SNF. Which
/// cycle represents an essential bar is not canonical; here it is the first
/// kernel basis column, in degree order, that is not in the span of the
/// generators and representatives already born.
pub fn persistent_homology<F: Field>(
    filt: &Filtration,
    n: isize,
    field: &F,
) -> Result<Vec<Bar<F::Elem>>, BarcodeError> {
    if n < 0 {
        return Ok(Vec::new());
    }
    let d = checked(decompose(filt, n as usize, field)?)?;
    let dim = d.dim;
    let mut bars: Vec<Bar<F::Elem>> = d
        .torsion
        .into_iter()
        .map(|(s, t, rep)| Bar {
            dim,
            interval: Interval::finite(s, s + t).expect("positive exponent"),
            representative: Some(rep),
        })
        .chain(d.essential.into_iter().map(|(s, rep)| Bar {
            dim,
            interval: Interval::infinite(s),
            representative: Some(rep),
        }))
        .collect();
    bars.sort_by_cached_key(|b| (b.interval, rep_key(field, b)));
    Ok(bars)
}

/// Bars in dimensions `0..=max_dim`; `max_dim` defaults to the dimension of
/// the complex.
pub fn barcode<F: Field>(
    filt: &Filtration,
    field: &F,
    max_dim: Option<usize>,
) -> Result<Barcode<F::Elem>, BarcodeError> {
    let top = max_dim.unwrap_or_else(|| filt.complex().dim().unwrap_or(0));
    let dims = (0..=top)
        .map(|n| persistent_homology(filt, n as isize, field))
        .collect::<Result<_, _>>()?;
    Ok(Barcode {
        field: field.label(),
        dims,
    })
}

/// Number of bars containing `t`.
pub fn betti_at<T>(bars: &[Bar<T>], t: usize) -> usize {
    bars.iter().filter(|b| b.interval.contains(t)).count()
}

/// Number of bars containing `[t, t + p]`, i.e. the rank of the map from
/// time `t` to time `t + p`.
pub fn p_persistent_betti<T>(bars: &[Bar<T>], t: usize, p: usize) -> usize {
    bars.iter().filter(|b| b.interval.contains_range(t, t + p)).count()
}

fn fail<T>(msg: String) -> Result<T, BarcodeError> {
    Err(BarcodeError::Verification(msg))
}

/// Independent checks of a computed barcode: `∂∂ = 0` on the graded
/// boundaries, essential counts and Euler characteristics against plain
/// linear algebra, and validity of every representative.
pub fn verify_barcode<F: Field>(
    filt: &Filtration,
    field: &F,
    barcode: &Barcode<F::Elem>,
) -> Result<(), BarcodeError> {
    let ring = PolyRing::new(field.clone());
    let k = filt.complex();
    let top = k.dim().map_or(-1, |d| d as isize);
    for n in 0..=top {
        let lower = filt.graded_boundary_matrix(n, &ring);
        let upper = filt.graded_boundary_matrix(n + 1, &ring);
        let prod = mat_mul(&ring, lower.base(), upper.base())?;
        if !is_zero_matrix(&ring, &prod) {
            return fail(format!("graded boundary composite in dim {n} is nonzero"));
        }
    }

    for (n, bars) in barcode.dims.iter().enumerate() {
        let ni = n as isize;
        let dn = k.boundary_matrix(ni, field);
        let dn1 = k.boundary_matrix(ni + 1, field);
        let expected = k.count(ni) - linalg::rank(field, &dn) - linalg::rank(field, &dn1);
        let essential = bars.iter().filter(|b| b.interval.is_essential()).count();
        if essential != expected {
            return fail(format!("dim {n}: {essential} essential bars, homology has rank {expected}"));
        }
        let basis = k.standard_basis(ni);
        let upper_basis = k.standard_basis(ni + 1);
        let boundaries_by = |s: usize| -> Vec<Vec<F::Elem>> {
            (0..upper_basis.len())
                .filter(|&j| filt.birth(&upper_basis[j]).is_some_and(|b| b <= s))
                .map(|j| dn1.column(j))
                .collect()
        };
        for bar in bars {
            if bar.dim != n {
                return fail(format!("bar of dim {} listed under dim {n}", bar.dim));
            }
            let Some(rep) = &bar.representative else { continue };
            let b = bar.interval.birth();
            let shown = || format!("dim {n} bar {}", bar.interval);
            if rep.is_zero() {
                return fail(format!("{}: zero representative", shown()));
            }
            let latest = rep.terms().iter().map(|(s, _)| filt.birth(s)).max().flatten();
            if latest != Some(b) {
                return fail(format!("{}: representative is not born at {b}", shown()));
            }
            let v = rep.to_vector(field, basis);
            let col = Matrix::from_columns(v.len(), std::slice::from_ref(&v), field.zero());
            if !is_zero_matrix(field, &mat_mul(field, &dn, &col)?) {
                return fail(format!("{}: representative is not a cycle", shown()));
            }
            let horizon = filt.horizon();
            match bar.interval.death() {
                Some(d) => {
                    if !linalg::in_span(field, &boundaries_by(d), &v) {
                        return fail(format!("{}: representative is not a boundary at {d}", shown()));
                    }
                    if linalg::in_span(field, &boundaries_by(d - 1), &v) {
                        return fail(format!("{}: representative is a boundary before {d}", shown()));
                    }
                }
                None => {
                    if linalg::in_span(field, &boundaries_by(horizon), &v) {
                        return fail(format!("{}: essential representative is a boundary", shown()));
                    }
                }
            }
        }
    }

    if barcode.dims.len() as isize > top {
        for t in 0..=filt.horizon() {
            let kt = filt.complex_at(t);
            let alternating: i64 = barcode
                .dims
                .iter()
                .enumerate()
                .map(|(n, bars)| {
                    let b = betti_at(bars, t) as i64;
                    if n % 2 == 0 { b } else { -b }
                })
                .sum();
            if alternating != kt.euler_characteristic() {
                return fail(format!(
                    "at t = {t} bars give Euler characteristic {alternating}, complex has {}",
                    kt.euler_characteristic()
                ));
            }
        }
    }
    Ok(())
}
