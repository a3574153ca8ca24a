//! Workloads shared by the benchmarks in `benches/`.

use persnf_core::Filtration;

/// An `n x n` grid triangulation of the torus, filtered by sweeping rows:
/// every simplex is born at the largest row index among its vertices.
pub fn torus_sweep(n: usize) -> Filtration {
    assert!(n >= 3, "a grid torus needs at least 3 rows");
    let v = |i: usize, j: usize| ((i % n) * n + j % n, i % n);
    let mut tops = Vec::new();
    for i in 0..n {
        for j in 0..n {
            tops.push([v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            tops.push([v(i, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    let mut events: Vec<(usize, Vec<String>)> = Vec::new();
    for tri in &tops {
        for mask in 1u32..8 {
            let face: Vec<(usize, usize)> =
                (0..3).filter(|k| mask & (1 << k) != 0).map(|k| tri[k]).collect();
            let birth = face.iter().map(|&(_, row)| row).max().unwrap_or(0);
            events.push((birth, face.iter().map(|&(id, _)| format!("v{id}")).collect()));
        }
    }
    Filtration::from_events(&events, None, false)
        .expect("grid torus is a valid filtration")
        .0
}
