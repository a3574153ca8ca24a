//! End-to-end acceptance checks. Runs without the libtest harness so every
//! criterion prints exactly one PASS or FAIL line.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use persnf_core::barcode::{essential_births, Barcode};
use persnf_core::linalg;
use persnf_core::matrix::{
    apply_elementary_in_place, check_homogeneity, graded_snd_verified, graded_snd_with_hook,
};
use persnf_core::persmod::{check_interval_decomposition, from_filtration, induced_rank};
use persnf_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Failures = Vec<String>;
type Criterion = (&'static str, fn() -> Failures);

fn check(failures: &mut Failures, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn events(list: &[(usize, &str)]) -> Vec<(usize, Vec<String>)> {
    list.iter()
        .map(|(t, s)| (*t, s.chars().map(|c| c.to_string()).collect()))
        .collect()
}

fn fig1() -> Filtration {
    let ev = events(&[
        (0, "a"), (0, "b"), (1, "c"), (1, "d"), (1, "ab"), (1, "bc"),
        (2, "ad"), (2, "cd"), (3, "ac"), (4, "abc"), (5, "acd"),
    ]);
    Filtration::from_events(&ev, None, true).unwrap().0
}

fn zmat(rows: &[&[i64]]) -> Matrix<num_bigint::BigInt> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Integers.from_i64(v)).collect()).collect())
        .unwrap()
}

fn divisibility_chain<R: EuclideanDomain>(ring: &R, diag: &[R::Elem]) -> bool {
    diag.windows(2).all(|w| ring.divides(&w[0], &w[1]))
}

fn criterion_1() -> Failures {
    let mut f = Failures::new();
    let z = Integers;
    let goldens = [
        zmat(&[&[1, 2, 0, 1], &[0, 3, 0, 3], &[0, 0, 1, 1]]),
        zmat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9], &[1, 2, 4]]),
        zmat(&[&[2, 0, 3, 0], &[0, 7, 2, 0], &[0, 0, 0, 3]]),
    ];
    for (i, a) in goldens.iter().enumerate() {
        let res = snd(&z, a);
        let diag: Vec<String> = res.diagonal.iter().map(|e| z.format_elem(e)).collect();
        check(&mut f, diag == ["1", "1", "3"], format!("matrix {}: diagonal {diag:?}", i + 1));
        check(&mut f, verify_snd(&z, a, &res), format!("matrix {}: verify_snd failed", i + 1));
    }
    f
}

fn criterion_2() -> Failures {
    let mut f = Failures::new();
    let ring = PolyRing::new(Rationals);
    let g = fig1().graded_boundary_matrix(1, &ring);
    let mut steps = 0;
    let mut inhomogeneous = 0;
    let res = graded_snd_with_hook(&ring, &g, &mut |step| {
        steps += 1;
        if check_homogeneity(&ring, step.matrix, step.row_degrees, step.col_degrees).is_err() {
            inhomogeneous += 1;
        }
    })
    .unwrap();
    let diag: Vec<String> = res.snd.diagonal.iter().map(|e| ring.format_elem(e)).collect();
    check(&mut f, diag == ["1", "x", "x"], format!("diagonal {diag:?}"));
    check(&mut f, steps > 0, "hook saw no steps");
    check(&mut f, inhomogeneous == 0, format!("{inhomogeneous} steps broke homogeneity"));
    check(&mut f, verify_snd(&ring, g.base(), &res.snd), "verify_snd failed");
    f
}

fn expected_fig1(bc_intervals: &dyn Fn(usize) -> Vec<Interval>, label: &str, f: &mut Failures) {
    let fin = |b, d| Interval::finite(b, d).unwrap();
    let mut h0 = bc_intervals(0);
    h0.sort();
    let mut want0 = vec![Interval::infinite(0), fin(0, 1), fin(1, 2)];
    want0.sort();
    check(f, h0 == want0, format!("{label} dim 0: {h0:?}"));
    let mut h1 = bc_intervals(1);
    h1.sort();
    check(f, h1 == [fin(2, 5), fin(3, 4)], format!("{label} dim 1: {h1:?}"));
    check(f, bc_intervals(2).is_empty(), format!("{label} dim 2 not empty"));
}

fn criterion_3() -> Failures {
    let mut f = Failures::new();
    let filt = fig1();
    let bc = barcode(&filt, &Rationals, Some(2)).unwrap();
    expected_fig1(&|n| bc.intervals(n), "Q", &mut f);
    for p in [2, 3, 5] {
        let fp = PrimeField::new(p).unwrap();
        let bc = barcode(&filt, &fp, Some(2)).unwrap();
        expected_fig1(&|n| bc.intervals(n), &format!("Z{p}"), &mut f);
    }
    f
}

/// Coordinates of a chain in the standard basis of the full complex.
fn coords<F: Field>(field: &F, filt: &Filtration, chain: &Chain<F::Elem>, n: isize) -> Vec<F::Elem> {
    chain.to_vector(field, filt.complex().standard_basis(n))
}

fn boundaries_by<F: Field>(field: &F, filt: &Filtration, n: isize, t: usize) -> Vec<Vec<F::Elem>> {
    let k = filt.complex();
    let d = k.boundary_matrix(n + 1, field);
    k.standard_basis(n + 1)
        .iter()
        .enumerate()
        .filter(|(_, s)| filt.birth(s).unwrap() <= t)
        .map(|(j, _)| d.column(j))
        .collect()
}

fn criterion_4() -> Failures {
    let mut f = Failures::new();
    let q = Rationals;
    let filt = fig1();
    let bars = persistent_homology(&filt, 1, &q).unwrap();
    let expected: [(usize, &[(&str, i64)]); 2] = [
        (2, &[("ab", 1), ("bc", 1), ("ad", -1), ("cd", 1)]),
        (3, &[("ab", -1), ("bc", -1), ("ac", 1)]),
    ];
    for (birth, terms) in expected {
        let Some(bar) = bars.iter().find(|b| b.interval.birth() == birth) else {
            f.push(format!("no dim 1 bar born at {birth}"));
            continue;
        };
        let Some(rep) = &bar.representative else {
            f.push(format!("bar born at {birth} has no representative"));
            continue;
        };
        let want = Chain::new(
            &q,
            terms.iter().map(|(s, c)| {
                let tokens: Vec<String> = s.chars().map(|c| c.to_string()).collect();
                let (simplex, sign) = filt.orientation().canonicalize(&tokens).unwrap();
                (simplex, q.from_i64(*c * i64::from(sign)))
            }),
        );
        // rep = λ·want for a single nonzero λ
        let lambda = q.mul(&rep.terms()[0].1, &q.inv(&want.terms()[0].1).unwrap());
        check(
            &mut f,
            want.scale(&q, &lambda) == *rep,
            format!("bar born at {birth}: representative {:?} is not a multiple of the expected cycle", rep.terms()),
        );
        let v = coords(&q, &filt, rep, 1);
        let d1 = filt.complex().boundary_matrix(1, &q);
        let cycle = (0..d1.rows()).all(|i| {
            let s = (0..d1.cols()).fold(q.zero(), |acc, j| q.add(&acc, &q.mul(d1.get(i, j), &v[j])));
            q.is_zero(&s)
        });
        let born = rep.terms().iter().all(|(s, _)| filt.birth(s).unwrap() <= birth);
        check(&mut f, cycle && born, format!("bar born at {birth}: not a cycle of K_{birth}"));
        let death = bar.interval.death().unwrap();
        check(
            &mut f,
            linalg::in_span(&q, &boundaries_by(&q, &filt, 1, death), &v)
                && !linalg::in_span(&q, &boundaries_by(&q, &filt, 1, death - 1), &v),
            format!("bar born at {birth}: does not become a boundary exactly at {death}"),
        );
    }
    f
}

fn torus() -> SimplicialComplex {
    let name = |c: char, i: usize| format!("{c}{}", i % 3);
    let mut triangles = Vec::new();
    for i in 0..3 {
        let (a, b, c) = (|k| name('a', k), |k| name('b', k), |k| name('c', k));
        triangles.push(vec![a(i), a(i + 1), b(i + 1)]);
        triangles.push(vec![a(i), b(i), b(i + 1)]);
        triangles.push(vec![b(i), b(i + 1), c(i + 1)]);
        triangles.push(vec![b(i), c(i), c(i + 1)]);
        triangles.push(vec![c(i), c(i + 1), a(i + 1)]);
        triangles.push(vec![c(i), a(i), a(i + 1)]);
    }
    validate_complex(&triangles, None, true).unwrap()
}

fn criterion_5() -> Failures {
    let mut f = Failures::new();
    let z = Integers;
    let t = torus();
    check(&mut f, t.count(0) == 9 && t.count(1) == 27 && t.count(2) == 18, "torus simplex counts");
    for (n, rank) in [(0, 1), (1, 2), (2, 1)] {
        let h = homology(&t, n, &z);
        check(
            &mut f,
            h.free_rank == rank && h.invariant_factors.is_empty(),
            format!("torus H{n}: rank {}, torsion {:?}", h.free_rank, h.invariant_factors),
        );
    }
    let order: Vec<String> = ["a1", "a2", "a3", "a4"].map(String::from).to_vec();
    let two = validate_complex(
        &[vec!["a1", "a3", "a4"], vec!["a2", "a3", "a4"], vec!["a1", "a2"]],
        Some(order),
        true,
    )
    .unwrap();
    let h1 = homology(&two, 1, &z);
    check(&mut f, h1.free_rank == 1 && h1.invariant_factors.is_empty(), format!("two-triangle H1: {h1:?}"));
    let six = validate_complex(
        &[vec!["a1", "a2"], vec!["a3", "a4"], vec!["a4", "a5"], vec!["a4", "a6"], vec!["a5", "a6"]],
        None,
        true,
    )
    .unwrap();
    let h0 = homology(&six, 0, &z);
    check(&mut f, h0.free_rank == 2 && h0.invariant_factors.is_empty(), format!("six-vertex H0: {h0:?}"));
    f
}

fn criterion_6() -> Failures {
    let mut f = Failures::new();
    let bc = barcode(&fig1(), &Rationals, None).unwrap();
    let h0 = bc.bars(0);
    let b = betti_at(h0, 1);
    check(&mut f, b == 2, format!("beta_0(K_1) = {b}, expected 2"));
    let b = p_persistent_betti(h0, 0, 1);
    check(&mut f, b == 2, format!("1-persistent beta_0(K_0) = {b}, expected 2"));
    let b = p_persistent_betti(h0, 1, 3);
    check(&mut f, b == 1, format!("3-persistent beta_0(K_1) = {b}, expected 1"));
    f
}

fn random_op<R: EuclideanDomain>(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    unit: impl Fn(&mut ChaCha8Rng) -> R::Elem,
    scalar: impl Fn(&mut ChaCha8Rng) -> R::Elem,
) -> Option<ElementaryOp<R::Elem>> {
    let row = rng.random_bool(0.5);
    let len = if row { rows } else { cols };
    if len == 0 {
        return None;
    }
    let a = rng.random_range(0..len);
    let b = rng.random_range(0..len);
    let kind = match rng.random_range(0..3) {
        0 => OpKind::Swap(a, b),
        1 => OpKind::Dilate(a, unit(rng)),
        _ if a != b => OpKind::Transvect { target: a, source: b, alpha: scalar(rng) },
        _ => return None,
    };
    Some(if row { ElementaryOp::row(kind) } else { ElementaryOp::col(kind) })
}

fn scramble<R: EuclideanDomain>(
    ring: &R,
    rng: &mut ChaCha8Rng,
    a: &Matrix<R::Elem>,
    unit: impl Fn(&mut ChaCha8Rng) -> R::Elem,
    scalar: impl Fn(&mut ChaCha8Rng) -> R::Elem,
) -> Matrix<R::Elem> {
    let mut b = a.clone();
    for _ in 0..rng.random_range(0..=5) {
        if let Some(op) = random_op::<R>(rng, a.rows(), a.cols(), &unit, &scalar) {
            apply_elementary_in_place(ring, &mut b, &op).unwrap();
        }
    }
    b
}

fn graded_cases<F: Field>(field: F, rng: &mut ChaCha8Rng, f: &mut Failures) {
    let ring = PolyRing::new(field.clone());
    let label = ring.name();
    for case in 0..200 {
        let (m, n) = (rng.random_range(0..=6), rng.random_range(0..=6));
        let rd: Vec<usize> = (0..m).map(|_| rng.random_range(0..=5)).collect();
        let cd: Vec<usize> = (0..n).map(|_| rng.random_range(0..=5)).collect();
        let mut base = Matrix::zeros(&ring, m, n);
        for (j, &r) in rd.iter().enumerate() {
            for (i, &c) in cd.iter().enumerate() {
                let coef = field.from_i64(rng.random_range(-3i64..=3));
                if c >= r && !field.is_zero(&coef) {
                    base.set(j, i, ring.monomial(coef, c - r));
                }
            }
        }
        let g = GradedMatrix::new(&ring, base.clone(), rd, cd).unwrap();
        let res = graded_snd_verified(&ring, &g).unwrap();
        check(f, verify_snd(&ring, &base, &res.snd), format!("{label} case {case}: verify_snd"));
        check(f, divisibility_chain(&ring, &res.snd.diagonal), format!("{label} case {case}: divisibility"));
        let nonzero_const = |r: &mut ChaCha8Rng| loop {
            let c = field.from_i64(r.random_range(-4i64..=4));
            if !field.is_zero(&c) {
                return ring.constant(c);
            }
        };
        let poly = |r: &mut ChaCha8Rng| {
            (0..=2usize).fold(ring.zero(), |acc, d| {
                ring.add(&acc, &ring.monomial(field.from_i64(r.random_range(-2i64..=2)), d))
            })
        };
        let scrambled = scramble(&ring, rng, &base, nonzero_const, poly);
        let again = snd(&ring, &scrambled);
        check(
            f,
            again.diagonal == res.snd.diagonal,
            format!("{label} case {case}: SNF changed under elementary operations"),
        );
    }
}

fn criterion_7() -> Failures {
    let mut f = Failures::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let z = Integers;
    for case in 0..200 {
        let (m, n) = (rng.random_range(0..=6), rng.random_range(0..=6));
        let data = (0..m * n).map(|_| z.from_i64(rng.random_range(-9i64..=9))).collect();
        let a = Matrix::new(m, n, data).unwrap();
        let res = snd(&z, &a);
        check(&mut f, verify_snd(&z, &a, &res), format!("Z case {case}: verify_snd"));
        check(&mut f, divisibility_chain(&z, &res.diagonal), format!("Z case {case}: divisibility"));
        let unit = |r: &mut ChaCha8Rng| z.from_i64(if r.random_bool(0.5) { 1 } else { -1 });
        let scalar = |r: &mut ChaCha8Rng| z.from_i64(r.random_range(-5i64..=5));
        let b = scramble(&z, &mut rng, &a, unit, scalar);
        check(&mut f, snd(&z, &b).d == res.d, format!("Z case {case}: SNF changed under elementary operations"));
    }
    graded_cases(Rationals, &mut rng, &mut f);
    graded_cases(PrimeField::new(5).unwrap(), &mut rng, &mut f);
    f
}

/// Random closed filtration with at most 15 simplices, dimension at most 3
/// and births in `0..=6`.
fn random_filtration(rng: &mut ChaCha8Rng) -> Filtration {
    loop {
        let vertices = rng.random_range(1..=6usize);
        let mut births: std::collections::BTreeMap<Vec<usize>, usize> = Default::default();
        for _ in 0..rng.random_range(1..=5) {
            let size = rng.random_range(1..=4usize.min(vertices));
            let mut top: Vec<usize> = rand::seq::index::sample(rng, vertices, size).into_vec();
            top.sort_unstable();
            let t = rng.random_range(0..=6);
            for mask in 1u32..(1 << top.len()) {
                let face: Vec<usize> = (0..top.len()).filter(|i| mask & (1 << i) != 0).map(|i| top[i]).collect();
                let b = births.entry(face).or_insert(t);
                *b = (*b).min(t);
            }
        }
        if births.len() > 15 {
            continue;
        }
        let ev: Vec<(usize, Vec<String>)> = births
            .into_iter()
            .map(|(s, t)| (t, s.into_iter().map(|v| format!("v{v}")).collect()))
            .collect();
        return Filtration::from_events(&ev, None, true).unwrap().0;
    }
}

fn oracle_cases<F: Field>(field: &F, rng: &mut ChaCha8Rng, f: &mut Failures) {
    let label = field.label();
    for case in 0..120 {
        let filt = random_filtration(rng);
        let bc: Barcode<F::Elem> = match barcode(&filt, field, Some(2)) {
            Ok(bc) => bc,
            Err(e) => {
                f.push(format!("{label} case {case}: {e}"));
                continue;
            }
        };
        for n in 0..=2usize {
            let intervals = bc.intervals(n);
            let module = from_filtration(&filt, n as isize, field);
            check(
                f,
                check_interval_decomposition(field, &module, &intervals),
                format!("{label} case {case} dim {n}: bars {intervals:?} fail the rank check"),
            );
            for t in 0..=filt.horizon() {
                for s in t..=filt.horizon() {
                    let count = intervals.iter().filter(|j| j.contains_range(t, s)).count();
                    let rank = induced_rank(&filt, n as isize, field, t, s);
                    check(
                        f,
                        rank == count,
                        format!("{label} case {case} dim {n}: rank {rank} vs {count} bars over [{t}, {s}]"),
                    );
                }
            }
        }
    }
}

fn criterion_8() -> Failures {
    let mut f = Failures::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    oracle_cases(&Rationals, &mut rng, &mut f);
    oracle_cases(&PrimeField::new(2).unwrap(), &mut rng, &mut f);
    f
}

fn self_checks<F: Field>(field: &F, filt: &Filtration, label: &str, f: &mut Failures) {
    let top = filt.complex().dim().unwrap_or(0);
    for n in 0..=top + 1 {
        match essential_births(filt, n, field) {
            Ok(e) => check(
                f,
                e.by_degree_count == e.greedy,
                format!("{label} dim {n}: essential births {:?} vs {:?}", e.by_degree_count, e.greedy),
            ),
            Err(e) => f.push(format!("{label} dim {n}: {e}")),
        }
    }
    match barcode(filt, field, None) {
        Ok(bc) => {
            if let Err(e) = verify_barcode(filt, field, &bc) {
                f.push(format!("{label}: {e}"));
            }
        }
        Err(e) => f.push(format!("{label}: {e}")),
    }
}

fn criterion_9() -> Failures {
    let mut f = Failures::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    self_checks(&Rationals, &fig1(), "fig1", &mut f);
    let z2 = PrimeField::new(2).unwrap();
    for case in 0..150 {
        let filt = random_filtration(&mut rng);
        self_checks(&Rationals, &filt, &format!("Q case {case}"), &mut f);
        self_checks(&z2, &filt, &format!("Z2 case {case}"), &mut f);
    }
    f
}

fn criterion_10() -> Failures {
    let mut f = Failures::new();
    let z = Integers;
    for (m, n) in [(0, 0), (0, 3), (3, 0), (2, 2), (3, 5)] {
        let a = Matrix::zeros(&z, m, n);
        let res = snd(&z, &a);
        check(&mut f, res.rank == 0 && res.diagonal.is_empty(), format!("zero {m}x{n}: rank {}", res.rank));
        check(&mut f, verify_snd(&z, &a, &res), format!("zero {m}x{n}: verify_snd"));
    }
    let ring = PolyRing::new(Rationals);
    let g = GradedMatrix::new(&ring, Matrix::zeros(&ring, 2, 3), vec![0, 1], vec![1, 2, 3]).unwrap();
    let res = graded_snd(&ring, &g).unwrap();
    check(&mut f, res.snd.rank == 0 && res.kernel_columns().len() == 3, "graded zero matrix");

    let q = Rationals;
    let empty = Filtration::from_events::<String>(&[], None, true).unwrap().0;
    check(&mut f, barcode(&empty, &q, None).unwrap().is_empty(), "empty filtration has bars");
    check(&mut f, persistent_homology(&empty, 0, &q).unwrap().is_empty(), "empty filtration dim 0");
    check(&mut f, from_filtration(&empty, 0, &q).dims() == [0], "empty filtration oracle");

    let single = Filtration::from_events(&events(&[(0, "a")]), None, true).unwrap().0;
    let bc = barcode(&single, &q, None).unwrap();
    check(&mut f, bc.intervals(0) == [Interval::infinite(0)] && bc.len() == 1, "single vertex barcode");

    let filt = fig1();
    for n in [-3isize, -1, 3, 4, 10] {
        check(&mut f, persistent_homology(&filt, n, &q).unwrap().is_empty(), format!("fig1 bars in dim {n}"));
        check(&mut f, graded_ifd(&filt, n, &q).unwrap().is_empty(), format!("fig1 summands in dim {n}"));
        let h = homology(filt.complex(), n, &z);
        check(&mut f, h.free_rank == 0 && h.invariant_factors.is_empty(), format!("fig1 H{n} over Z"));
        check(
            &mut f,
            from_filtration(&filt, n, &q).dims().iter().all(|&d| d == 0),
            format!("fig1 oracle in dim {n}"),
        );
    }
    f
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("SNF goldens over Z", criterion_1),
        ("graded SNF golden with homogeneity hook", criterion_2),
        ("Fig-1 barcodes over Q, Z2, Z3, Z5", criterion_3),
        ("dim-1 representatives", criterion_4),
        ("static homology goldens over Z", criterion_5),
        ("Betti queries", criterion_6),
        ("SND property suite", criterion_7),
        ("oracle equivalence on random filtrations", criterion_8),
        ("internal cross-checks", criterion_9),
        ("trivial and degenerate inputs", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let failures = match catch_unwind(AssertUnwindSafe(run)) {
            Ok(f) => f,
            Err(p) => {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                vec![format!("panicked: {msg}")]
            }
        };
        let status = if failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status}: {name}", i + 1);
        for msg in failures.iter().take(10) {
            println!("    {msg}");
        }
        if failures.len() > 10 {
            println!("    ... and {} more", failures.len() - 10);
        }
        failed += usize::from(!failures.is_empty());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
