//! Brute-force checks that do not rely on the factorization code.
//!
//! Validity of a fan is decided combinatorially: maximal labels must be tree
//! posets with unimodular rays, every Weyl chamber must lie in exactly one
//! maximal cone, and any two maximal cones must meet in a common face (the
//! closure of the union of their relations must be a contraction of both).

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::{chamber_counts, star_subdivide_rays, Cone, Fan};
use crate::perm;
use crate::preposet::{Preposet, Relation};
use crate::quotient_lattice::is_unimodular_extendable;

/// Largest `n` for [`enumerate_coarsenings`].
pub const ENUMERATION_MAX_N: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    UncoveredOrder,
    DoublyCoveredOrder,
    BadIntersection,
    NonTreeLabel,
    NonUnimodular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub kind: FailureKind,
    /// Indices of the maximal cones involved.
    pub cones: Vec<usize>,
    /// Witness linear order, lowest element first.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    pub fn has(&self, kind: FailureKind) -> bool {
        self.failures.iter().any(|f| f.kind == kind)
    }

    pub fn summary(&self) -> String {
        match self.failures.first() {
            None => "ok".into(),
            Some(f) => format!(
                "{} failure(s), first: {:?} {}",
                self.failures.len(),
                f.kind,
                f.detail
            ),
        }
    }
}

/// Label of the intersection of two braid cones.
pub fn intersection_preposet(p: &Preposet, q: &Preposet) -> Result<Preposet> {
    if p.n() != q.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            found: q.n(),
        });
    }
    let mut rels: Vec<Relation> = p.relations();
    rels.extend(q.relations());
    Preposet::from_relations(p.n(), rels)
}

fn meet_is_common_face(p: &Preposet, q: &Preposet) -> bool {
    intersection_preposet(p, q)
        .and_then(|m| Ok(m.is_contraction_of(p)? && m.is_contraction_of(q)?))
        .unwrap_or(false)
}

pub fn validate_fan(fan: &Fan) -> ValidationReport {
    let cones = fan.maximal();
    let mut failures = Vec::new();

    for (i, cone) in cones.iter().enumerate() {
        let label = cone.label();
        if !label.is_tree_poset() {
            failures.push(Failure {
                kind: FailureKind::NonTreeLabel,
                cones: vec![i],
                order: None,
                detail: format!("{label} is not a tree poset"),
            });
        } else if is_unimodular_extendable(cone.rays().unwrap_or(&[])) != Ok(true) {
            failures.push(Failure {
                kind: FailureKind::NonUnimodular,
                cones: vec![i],
                order: None,
                detail: format!("rays of {label} do not extend to a lattice basis"),
            });
        }
    }

    let counts = chamber_counts(fan.n(), fan.labels());
    for (r, &c) in counts.iter().enumerate() {
        if c == 1 {
            continue;
        }
        let order = perm::unrank(fan.n(), r);
        let covering: Vec<usize> = cones
            .iter()
            .enumerate()
            .filter(|(_, cone)| extends(&order, cone.label()))
            .map(|(i, _)| i)
            .collect();
        failures.push(Failure {
            kind: if c == 0 {
                FailureKind::UncoveredOrder
            } else {
                FailureKind::DoublyCoveredOrder
            },
            detail: format!("order {order:?} extends {c} maximal labels"),
            cones: covering,
            order: Some(order),
        });
    }

    let pairs: Vec<Failure> = (0..cones.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..cones.len()).filter_map(move |j| {
                let (p, q) = (cones[i].label(), cones[j].label());
                (!meet_is_common_face(p, q)).then(|| Failure {
                    kind: FailureKind::BadIntersection,
                    cones: vec![i, j],
                    order: None,
                    detail: format!("{p} and {q} do not meet in a common face"),
                })
            })
        })
        .collect();
    failures.extend(pairs);

    ValidationReport {
        ok: failures.is_empty(),
        failures,
    }
}

fn extends(order: &[usize], label: &Preposet) -> bool {
    let pos = |x: usize| order.iter().position(|&y| y == x).expect("permutation");
    label.is_antisymmetric()
        && label
            .covers()
            .iter()
            .all(|&(a, b)| pos(label.classes()[a][0]) < pos(label.classes()[b][0]))
}

/// Whether `after` is the star subdivision of `before` at `tau`, checked by
/// recomputing it on ray sets, and `after` is a valid fan.
pub fn verify_step(before: &Fan, after: &Fan, tau: &Cone) -> Result<bool> {
    let sub = star_subdivide_rays(before, tau)?;
    let mut expected = sub.ray_sets();
    let Some(mut got) = after
        .maximal_ray_sets()
        .into_iter()
        .collect::<Option<Vec<_>>>()
    else {
        return Ok(false);
    };
    expected.sort();
    got.sort();
    if expected != got {
        return Ok(false);
    }
    let relabeled = matches!(sub.to_fan(), Some(Ok(ref f)) if f == after);
    Ok(relabeled && validate_fan(after).ok)
}

/// Every tree poset on `[n]`: labeled trees from Prüfer sequences, each
/// with all `2^(n-1)` edge orientations.
pub fn all_tree_posets(n: usize) -> Result<Vec<Preposet>> {
    if n < 2 {
        return Err(Error::InvalidDimension {
            n,
            min: 2,
            max: usize::MAX,
        });
    }
    let mut out = Vec::new();
    let mut seq = vec![1usize; n - 2];
    loop {
        let edges = prufer_decode(n, &seq);
        for mask in 0u32..1 << (n - 1) {
            let rels =
                edges.iter().enumerate().map(
                    |(i, &(a, b))| {
                        if mask & (1 << i) != 0 {
                            (b, a)
                        } else {
                            (a, b)
                        }
                    },
                );
            out.push(Preposet::from_relations(n, rels)?);
        }
        // Odometer over [n]^(n-2).
        let mut i = 0;
        while i < seq.len() && seq[i] == n {
            seq[i] = 1;
            i += 1;
        }
        if i == seq.len() {
            break;
        }
        seq[i] += 1;
    }
    out.sort();
    Ok(out)
}

fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n + 1];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (1..=n).find(|&i| degree[i] == 1).expect("a leaf remains");
        edges.push((leaf, x));
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let last: Vec<usize> = (1..=n).filter(|&i| degree[i] == 1).collect();
    edges.push((last[0], last[1]));
    edges
}

/// All complete smooth coarsenings of the braid fan on `[n]`, `n <= 4`.
pub fn enumerate_coarsenings(n: usize) -> Result<Vec<Fan>> {
    enumerate_coarsenings_within(n, None)
}

/// Exact-cover search over the chambers: each candidate block is the set of
/// linear extensions of a tree poset, and chosen blocks must pairwise meet
/// in common faces. The lowest uncovered chamber is always covered next, so
/// each fan is produced once.
pub fn enumerate_coarsenings_within(n: usize, budget: Option<Duration>) -> Result<Vec<Fan>> {
    if n < 2 {
        return Err(Error::InvalidDimension {
            n,
            min: 2,
            max: ENUMERATION_MAX_N,
        });
    }
    if n > ENUMERATION_MAX_N {
        return Err(Error::TooLarge {
            n,
            max: ENUMERATION_MAX_N,
        });
    }
    let deadline = budget.map(|b| Instant::now() + b);
    let candidates = all_tree_posets(n)?;
    let masks: Vec<u32> = candidates
        .iter()
        .map(|p| {
            let mut m = 0u32;
            p.for_each_linear_extension(|o| m |= 1 << perm::rank(o))
                .expect("poset");
            m
        })
        .collect();
    let chambers = perm::factorial(n);
    let by_chamber: Vec<Vec<usize>> = (0..chambers)
        .map(|c| {
            (0..candidates.len())
                .filter(|&i| masks[i] & (1 << c) != 0)
                .collect()
        })
        .collect();
    let compatible: Vec<Vec<bool>> = candidates
        .iter()
        .map(|p| {
            candidates
                .iter()
                .map(|q| meet_is_common_face(p, q))
                .collect()
        })
        .collect();

    let search = Search {
        full: (1u32 << chambers) - 1,
        masks: &masks,
        by_chamber: &by_chamber,
        compatible: &compatible,
        deadline,
    };
    let mut found = Vec::new();
    search.run(0, &mut Vec::new(), &mut found)?;

    let mut fans = found
        .into_iter()
        .map(|chosen| {
            let fan = Fan::from_labels(n, chosen.iter().map(|&i| candidates[i].clone()))?;
            let report = validate_fan(&fan);
            if !report.ok {
                return Err(Error::InternalVerification(report.summary()));
            }
            Ok(fan)
        })
        .collect::<Result<Vec<_>>>()?;
    fans.sort_by(|a, b| a.maximal().cmp(b.maximal()));
    Ok(fans)
}

struct Search<'a> {
    full: u32,
    masks: &'a [u32],
    by_chamber: &'a [Vec<usize>],
    compatible: &'a [Vec<bool>],
    deadline: Option<Instant>,
}

impl Search<'_> {
    fn run(&self, covered: u32, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) -> Result<()> {
        if covered == self.full {
            out.push(chosen.clone());
            return Ok(());
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::BudgetExceeded);
        }
        let chamber = (!covered).trailing_zeros() as usize;
        for &i in &self.by_chamber[chamber] {
            if self.masks[i] & covered != 0 || !chosen.iter().all(|&j| self.compatible[i][j]) {
                continue;
            }
            chosen.push(i);
            self.run(covered | self.masks[i], chosen, out)?;
            chosen.pop();
        }
        Ok(())
    }
}
