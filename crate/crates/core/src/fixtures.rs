//! Small named fans and posets used by tests, benchmarks, and the CLI docs.

use crate::fan::{braid_fan, Fan};
use crate::preposet::Preposet;

fn poset(n: usize, rels: &[(usize, usize)]) -> Preposet {
    Preposet::from_relations(n, rels.iter().copied()).expect("fixture relations in range")
}

/// Covers `4 -> 2`, `2 -> 1`, `2 -> 3`.
pub fn claw_poset() -> Preposet {
    poset(4, &[(4, 2), (2, 1), (2, 3)])
}

/// The three stars on `[3]` with a common top: rays `e_12, e_13, e_23`.
pub fn p2_fan() -> Fan {
    Fan::from_labels(
        3,
        [
            poset(3, &[(1, 3), (2, 3)]),
            poset(3, &[(3, 1), (2, 1)]),
            poset(3, &[(1, 2), (3, 2)]),
        ],
    )
    .expect("valid fixture")
}

/// The three stars on `[3]` with a common bottom: rays `e_1, e_2, e_3`.
pub fn p2_opposite_fan() -> Fan {
    Fan::from_labels(
        3,
        [
            poset(3, &[(3, 1), (3, 2)]),
            poset(3, &[(1, 2), (1, 3)]),
            poset(3, &[(2, 1), (2, 3)]),
        ],
    )
    .expect("valid fixture")
}

/// A single non-smooth cone: the diamond `1 < 2, 3 < 4`.
pub fn diamond_fan() -> Fan {
    Fan::from_labels(4, [poset(4, &[(1, 2), (1, 3), (2, 4), (3, 4)])]).expect("valid fixture")
}

/// `B(4)` with the chambers `1234` and `2134` replaced by the single cone
/// `1 ⪯ 3, 2 ⪯ 3, 3 ⪯ 4`.
///
/// This partitions the chambers but is not a fan: the merged cone meets the
/// chambers `1243` and `2143` in cones that are not faces of it, and `e_34`
/// stays a ray of the collection.
pub fn merged_chamber_fan_n4() -> Fan {
    merge_chambers(
        &[(&[1, 2, 3, 4], &[2, 1, 3, 4])],
        &[poset(4, &[(1, 3), (2, 3), (3, 4)])],
    )
}

/// `B(4)` with the ray `e_34` removed: the chamber pairs `1234 | 2134` and
/// `1243 | 2143` are each merged. 22 maximal cones, 13 rays.
pub fn blowdown_fan_n4() -> Fan {
    merge_chambers(
        &[
            (&[1, 2, 3, 4], &[2, 1, 3, 4]),
            (&[1, 2, 4, 3], &[2, 1, 4, 3]),
        ],
        &[
            poset(4, &[(1, 3), (2, 3), (3, 4)]),
            poset(4, &[(1, 4), (2, 4), (4, 3)]),
        ],
    )
}

fn merge_chambers(pairs: &[(&[usize], &[usize])], merged: &[Preposet]) -> Fan {
    let removed: Vec<Preposet> = pairs
        .iter()
        .flat_map(|(a, b)| [Preposet::chain(a).unwrap(), Preposet::chain(b).unwrap()])
        .collect();
    let labels = braid_fan(4)
        .unwrap()
        .labels()
        .filter(|l| !removed.contains(l))
        .cloned()
        .chain(merged.iter().cloned())
        .collect::<Vec<_>>();
    Fan::from_labels(4, labels).expect("valid fixture")
}
