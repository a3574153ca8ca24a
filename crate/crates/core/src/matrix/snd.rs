use crate::rings::EuclideanDomain;

use super::{
    apply_elementary_in_place, mat_mul, ElementaryOp, Matrix, OpKind, Side,
};

/// A Smith normal decomposition `U⁻¹·A·V = D`.
///
/// `U` is stored directly (not its inverse). `diagonal` holds the `rank`
/// nonzero canonical entries `d₁ | d₂ | … | d_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SndResult<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    pub rank: usize,
    pub diagonal: Vec<T>,
}

/// Working state for a reduction: applies operations to `D` and keeps
/// `U⁻¹·A·V = D` by updating `U` and `V`.
pub(crate) struct Reducer<'r, R: EuclideanDomain> {
    pub ring: &'r R,
    pub d: Matrix<R::Elem>,
    pub u: Matrix<R::Elem>,
    pub v: Matrix<R::Elem>,
}

impl<'r, R: EuclideanDomain> Reducer<'r, R> {
    pub fn new(ring: &'r R, a: &Matrix<R::Elem>) -> Self {
        Reducer {
            ring,
            d: a.clone(),
            u: Matrix::identity(ring, a.rows()),
            v: Matrix::identity(ring, a.cols()),
        }
    }

    /// Applies `op` to `D`. A row operation `E` turns `U` into `U·E⁻¹`; a
    /// column operation `E` turns `V` into `V·E`.
    pub fn apply(&mut self, op: &ElementaryOp<R::Elem>) {
        let ring = self.ring;
        apply_elementary_in_place(ring, &mut self.d, op).expect("reduction op in range");
        match op.side {
            Side::Col => {
                apply_elementary_in_place(ring, &mut self.v, op).expect("V op in range");
            }
            Side::Row => {
                let inverse = match &op.kind {
                    OpKind::Swap(a, b) => OpKind::Swap(*a, *b),
                    OpKind::Dilate(k, mu) => OpKind::Dilate(
                        *k,
                        ring.unit_inverse(mu).expect("dilation by a unit"),
                    ),
                    OpKind::Transvect { target, source, alpha } => OpKind::Transvect {
                        target: *source,
                        source: *target,
                        alpha: ring.neg(alpha),
                    },
                };
                apply_elementary_in_place(ring, &mut self.u, &ElementaryOp::col(inverse))
                    .expect("U op in range");
            }
        }
    }

    pub fn finish(self, rank: usize) -> SndResult<R::Elem> {
        let diagonal = (0..rank).map(|k| self.d.get(k, k).clone()).collect();
        SndResult {
            u: self.u,
            d: self.d,
            v: self.v,
            rank,
            diagonal,
        }
    }
}

/// Position of a nonzero entry of minimal `key` in the submatrix `[k.., k..]`,
/// ties broken by smallest `(row, col)`.
pub(crate) fn min_pivot<T: Clone, K: Ord>(
    d: &Matrix<T>,
    k: usize,
    mut key: impl FnMut(&T) -> Option<K>,
) -> Option<(usize, usize)> {
    let mut best: Option<(K, usize, usize)> = None;
    for i in k..d.rows() {
        for j in k..d.cols() {
            if let Some(kv) = key(d.get(i, j)) {
                if best.as_ref().is_none_or(|(b, _, _)| kv < *b) {
                    best = Some((kv, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Smith normal decomposition over any Euclidean domain.
///
/// Each stage picks a minimal-norm pivot in the active submatrix, clears its
/// row and column by Euclidean division, and repeats until the pivot divides
/// everything left in the submatrix. The pivot is then normalized by a column
/// dilation.
pub fn snd<R: EuclideanDomain>(ring: &R, a: &Matrix<R::Elem>) -> SndResult<R::Elem> {
    let (m, n) = a.shape();
    let mut red = Reducer::new(ring, a);
    let mut rank = 0;
    for k in 0..m.min(n) {
        loop {
            let Some((r, c)) = min_pivot(&red.d, k, |e| (!ring.is_zero(e)).then(|| ring.norm(e)))
            else {
                return red.finish(rank);
            };
            if r != k {
                red.apply(&ElementaryOp::row(OpKind::Swap(k, r)));
            }
            if c != k {
                red.apply(&ElementaryOp::col(OpKind::Swap(k, c)));
            }

            let mut leftover = false;
            for i in k + 1..n {
                if ring.is_zero(red.d.get(k, i)) {
                    continue;
                }
                let (q, rem) = ring
                    .div_rem(red.d.get(k, i), red.d.get(k, k))
                    .expect("pivot is nonzero");
                leftover |= !ring.is_zero(&rem);
                red.apply(&ElementaryOp::col(OpKind::Transvect {
                    target: i,
                    source: k,
                    alpha: ring.neg(&q),
                }));
            }
            for j in k + 1..m {
                if ring.is_zero(red.d.get(j, k)) {
                    continue;
                }
                let (q, rem) = ring
                    .div_rem(red.d.get(j, k), red.d.get(k, k))
                    .expect("pivot is nonzero");
                leftover |= !ring.is_zero(&rem);
                red.apply(&ElementaryOp::row(OpKind::Transvect {
                    target: j,
                    source: k,
                    alpha: ring.neg(&q),
                }));
            }
            if leftover {
                continue;
            }

            // divisibility repair: pull a non-multiple into the pivot row
            let pivot = red.d.get(k, k).clone();
            let offender = (k + 1..m).find(|&j| {
                (k + 1..n).any(|i| !ring.divides(&pivot, red.d.get(j, i)))
            });
            match offender {
                Some(j) => red.apply(&ElementaryOp::row(OpKind::Transvect {
                    target: k,
                    source: j,
                    alpha: ring.one(),
                })),
                None => break,
            }
        }

        let (unit, _) = ring.unit_normalize(red.d.get(k, k));
        if unit != ring.one() {
            let inv = ring.unit_inverse(&unit).expect("normalizing factor is a unit");
            red.apply(&ElementaryOp::col(OpKind::Dilate(k, inv)));
        }
        rank += 1;
    }
    red.finish(rank)
}

fn is_invertible<R: EuclideanDomain>(ring: &R, m: &Matrix<R::Elem>) -> bool {
    if m.rows() != m.cols() {
        return false;
    }
    let res = snd(ring, m);
    res.rank == m.rows() && res.diagonal.iter().all(|d| ring.is_unit(d))
}

/// Checks `A·V = U·D`, the shape of `D`, canonical diagonal entries, the
/// divisibility chain, and invertibility of `U` and `V`.
pub fn verify_snd<R: EuclideanDomain>(ring: &R, a: &Matrix<R::Elem>, res: &SndResult<R::Elem>) -> bool {
    let (m, n) = a.shape();
    if res.u.shape() != (m, m) || res.d.shape() != (m, n) || res.v.shape() != (n, n) {
        return false;
    }
    if res.rank > m.min(n) || res.diagonal.len() != res.rank {
        return false;
    }
    for (i, j, e) in res.d.entries() {
        let ok = if i == j && i < res.rank {
            *e == res.diagonal[i] && !ring.is_zero(e) && ring.is_canonical(e)
        } else {
            ring.is_zero(e)
        };
        if !ok {
            return false;
        }
    }
    if !res.diagonal.windows(2).all(|w| ring.divides(&w[0], &w[1])) {
        return false;
    }
    let (Ok(av), Ok(ud)) = (mat_mul(ring, a, &res.v), mat_mul(ring, &res.u, &res.d)) else {
        return false;
    };
    if av != ud {
        return false;
    }
    is_invertible(ring, &res.u) && is_invertible(ring, &res.v)
}

/// Columns `r+1..n` of `V`: coordinates of a kernel basis in the domain's
/// original basis.
pub fn kernel_columns<T: Clone>(res: &SndResult<T>) -> Vec<Vec<T>> {
    (res.rank..res.v.cols()).map(|j| res.v.column(j)).collect()
}
