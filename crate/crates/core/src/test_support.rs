use proptest::prelude::*;

use crate::filtration::Filtration;

pub fn fig1() -> Filtration {
    let events: Vec<(usize, Vec<String>)> = [
        (0, "a"), (0, "b"), (1, "c"), (1, "d"), (1, "ab"), (1, "bc"),
        (2, "ad"), (2, "cd"), (3, "ac"), (4, "abc"), (5, "acd"),
    ]
    .iter()
    .map(|(t, s)| (*t, s.chars().map(|c| c.to_string()).collect()))
    .collect();
    Filtration::from_events(&events, None, true).unwrap().0
}

pub fn arb_filtration() -> impl Strategy<Value = Filtration> {
    prop::collection::vec((prop::collection::btree_set(0usize..5, 1..=4), 0usize..6), 1..6)
        .prop_map(|tops| {
            // every face takes the smallest birth among chosen simplices containing it
            let mut births: std::collections::BTreeMap<Vec<usize>, usize> = Default::default();
            for (set, t) in tops {
                let v: Vec<usize> = set.into_iter().collect();
                for mask in 1u32..(1 << v.len()) {
                    let face: Vec<usize> =
                        (0..v.len()).filter(|i| mask & (1 << i) != 0).map(|i| v[i]).collect();
                    let b = births.entry(face).or_insert(t);
                    *b = (*b).min(t);
                }
            }
            let events: Vec<(usize, Vec<String>)> = births
                .into_iter()
                .map(|(s, t)| (t, s.into_iter().map(|v| format!("v{v}")).collect()))
                .collect();
            Filtration::from_events(&events, None, true).unwrap().0
        })
}


/// Events from single-character vertex names, e.g. `(1, "ab")`.
pub fn events(list: &[(usize, &str)]) -> Vec<(usize, Vec<String>)> {
    list.iter()
        .map(|(t, s)| (*t, s.chars().map(|c| c.to_string()).collect()))
        .collect()
}
