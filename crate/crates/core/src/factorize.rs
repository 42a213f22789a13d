//! Strong factorization of smooth braid coarsenings.
//!
//! While some maximal cone is not a Weyl chamber, its Hasse tree has a class
//! `b` with `k >= 2` lower covers (or, failing that, `k >= 2` upper covers).
//! Cutting those `k` edges splits `[n]` into parts `A_1, ..., A_k` and the
//! hub part `B`, and contracting everything else gives a face `tau` whose
//! rays are `e_{[n] \ A_i}`. Their sum is `e_B`, and the star subdivision at
//! `tau` replaces every cone through `tau` by `k` cones: in the `j`-th one
//! the edges `a_i -> b` (`i != j`) are rerouted to `a_i -> a_j`.
//!
//! The rerouting is only valid when every cone through `tau` joins the `k`
//! parts to a single class of `B`. Another cone through `tau` can attach
//! them to different classes, and then the star subdivision leaves the
//! braid coarsenings. Centers are therefore scanned in canonical order
//! and the first admissible one is used.
//!
//! Each step adds exactly one ray, so a fan with `r` rays reaches the braid
//! fan after `2^n - 2 - r` steps.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::{
    cones_containing, is_complete_coarsening_bounded, is_smooth, Cone, Fan, DEFAULT_MAX_N,
};
use crate::oracle::{validate_fan, verify_step};
use crate::preposet::{Cover, Preposet, Relation};
use crate::quotient_lattice::{sum_vectors, LatticeVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// The hub has `k >= 2` lower covers.
    Down,
    /// The hub has `k >= 2` upper covers; handled on the opposite poset.
    Up,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionCenter {
    /// The maximal cone the center was read from.
    pub sigma: Cone,
    /// Elements of the hub class `b`.
    pub hub: Vec<usize>,
    pub orientation: Orientation,
    pub k: usize,
    /// `A_1, ..., A_k, B`; the `A_i` ordered by the minimum element of the
    /// hub neighbor they contain, `B` last.
    pub parts: Vec<Vec<usize>>,
    pub tau: Cone,
}

impl SubdivisionCenter {
    pub fn hub_part(&self) -> &[usize] {
        &self.parts[self.k]
    }

    /// The ray the subdivision adds: `e_B` for a down hub, `e_{[n] \ B}`
    /// for an up hub.
    pub fn new_ray(&self) -> Result<LatticeVector> {
        let n = self.sigma.label().n();
        let hub_side = self.hub_part();
        match self.orientation {
            Orientation::Down => LatticeVector::indicator(n, hub_side),
            Orientation::Up => {
                let rest: Vec<usize> = (1..=n).filter(|x| !hub_side.contains(x)).collect();
                LatticeVector::indicator(n, &rest)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub center: SubdivisionCenter,
    pub new_ray: LatticeVector,
    pub result: Fan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationTrace {
    pub initial: Fan,
    pub steps: Vec<Step>,
}

impl FactorizationTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn final_fan(&self) -> &Fan {
        self.steps.last().map_or(&self.initial, |s| &s.result)
    }

    pub fn added_rays(&self) -> Vec<LatticeVector> {
        self.steps.iter().map(|s| s.new_ray.clone()).collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FactorOptions {
    /// Check every step against the ray-level subdivision and the full
    /// validator, and validate the input up front.
    pub verify: bool,
    pub max_n: usize,
}

impl Default for FactorOptions {
    fn default() -> Self {
        Self {
            verify: false,
            max_n: DEFAULT_MAX_N,
        }
    }
}

fn check_input(fan: &Fan, max_n: usize) -> Result<()> {
    if !is_smooth(fan) {
        return Err(Error::InvalidFan(
            "not smooth: some maximal label is not a tree poset".into(),
        ));
    }
    if !is_complete_coarsening_bounded(fan, max_n)?.is_complete() {
        return Err(Error::InvalidFan(
            "maximal cones do not partition the Weyl chambers".into(),
        ));
    }
    Ok(())
}

/// The canonical subdivision center of a smooth complete coarsening, or
/// `None` when the fan is already the braid fan.
pub fn find_center(fan: &Fan) -> Result<Option<SubdivisionCenter>> {
    check_input(fan, DEFAULT_MAX_N)?;
    select_center(fan)
}

fn select_center(fan: &Fan) -> Result<Option<SubdivisionCenter>> {
    let mut any = false;
    for sigma in fan
        .maximal()
        .iter()
        .filter(|c| !c.label().is_linear_order())
    {
        any = true;
        for (hub, orientation) in hub_candidates(sigma.label()) {
            let center = center_with_hub(sigma, hub, orientation)?;
            if is_admissible(fan, &center)? {
                return Ok(Some(center));
            }
        }
    }
    if any {
        return Err(Error::InternalVerification(
            "no admissible subdivision center".into(),
        ));
    }
    Ok(None)
}

/// Classes with `k >= 2` lower covers, then classes with `k >= 2` upper
/// covers, each in class order.
fn hub_candidates(p: &Preposet) -> Vec<(usize, Orientation)> {
    let deg = p.degrees();
    let down = (0..deg.len())
        .filter(|&c| deg[c].0 >= 2)
        .map(|c| (c, Orientation::Down));
    let up = (0..deg.len())
        .filter(|&c| deg[c].1 >= 2)
        .map(|c| (c, Orientation::Up));
    down.chain(up).collect()
}

/// Whether every cone through `tau` joins all `k` parts to one class of
/// the hub part, so that each of them is rewired around a single hub.
pub fn is_admissible(fan: &Fan, center: &SubdivisionCenter) -> Result<bool> {
    for cone in cones_containing(fan, &center.tau)? {
        let (_, crossing) = crossing_edges(cone.label(), center)?;
        let work = oriented(cone.label(), center.orientation);
        let hub = work.class_of(crossing[0].1);
        if crossing.iter().any(|&(_, y)| work.class_of(y) != hub) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Center read off a non-linear tree poset cone, with the first hub in
/// [`hub_candidates`] order.
pub fn center_at(sigma: &Cone) -> Result<SubdivisionCenter> {
    let p = sigma.label();
    if !p.is_tree_poset() {
        return Err(Error::NotATree);
    }
    let Some(&(hub, orientation)) = hub_candidates(p).first() else {
        return Err(Error::InvalidFan(format!("{p} is a linear order")));
    };
    center_with_hub(sigma, hub, orientation)
}

fn center_with_hub(
    sigma: &Cone,
    hub: usize,
    orientation: Orientation,
) -> Result<SubdivisionCenter> {
    let p = sigma.label();
    let m = p.classes().len();
    // Covers are sorted, so neighbors come out in ascending class order.
    let hub_edges: Vec<Cover> = p
        .covers()
        .iter()
        .copied()
        .filter(|&(a, b)| match orientation {
            Orientation::Down => b == hub,
            Orientation::Up => a == hub,
        })
        .collect();
    let neighbor = |&(a, b): &Cover| if a == hub { b } else { a };
    let mut hub_edges = hub_edges;
    hub_edges.sort_by_key(neighbor);

    let ids = p.component_ids(&hub_edges)?;
    let block = |id: usize| -> Vec<usize> {
        let mut v: Vec<usize> = (0..m)
            .filter(|&c| ids[c] == id)
            .flat_map(|c| p.classes()[c].iter().copied())
            .collect();
        v.sort_unstable();
        v
    };
    let mut parts: Vec<Vec<usize>> = hub_edges.iter().map(|e| block(ids[neighbor(e)])).collect();
    parts.push(block(ids[hub]));

    let rest: Vec<Cover> = p
        .covers()
        .iter()
        .copied()
        .filter(|e| !hub_edges.contains(e))
        .collect();
    let tau = Cone::new(p.contract(&rest)?)?;
    Ok(SubdivisionCenter {
        sigma: sigma.clone(),
        hub: p.classes()[hub].clone(),
        orientation,
        k: hub_edges.len(),
        parts,
        tau,
    })
}

fn oriented(label: &Preposet, orientation: Orientation) -> Preposet {
    match orientation {
        Orientation::Down => label.clone(),
        Orientation::Up => label.opposite(),
    }
}

type Crossing = (Vec<Relation>, Vec<(usize, usize)>);

/// Covers of `label` (oriented so the hub sits above) inside a part, and
/// the `k` covers leaving `A_1, ..., A_k` for the hub part, as element pairs.
fn crossing_edges(label: &Preposet, center: &SubdivisionCenter) -> Result<Crossing> {
    let work = oriented(label, center.orientation);
    let k = center.k;
    let part_of = |x: usize| {
        center
            .parts
            .iter()
            .position(|p| p.contains(&x))
            .expect("partition")
    };
    let rep = |c: usize| work.classes()[c][0];

    let mut crossing: Vec<Option<(usize, usize)>> = vec![None; k];
    let mut kept = Vec::new();
    for &(a, b) in work.covers() {
        let (pa, pb) = (part_of(rep(a)), part_of(rep(b)));
        if pa == pb {
            kept.push(Relation::new(rep(a), rep(b)));
        } else if pb == k && pa < k && crossing[pa].is_none() {
            crossing[pa] = Some((rep(a), rep(b)));
        } else {
            return Err(Error::InternalVerification(format!(
                "cone {label} does not meet the center in the expected star"
            )));
        }
    }
    let crossing = crossing
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InternalVerification(format!("cone {label} misses a hub edge")))?;
    Ok((kept, crossing))
}

/// The `k` labels replacing `label` in the star subdivision at `center`.
fn rewire(label: &Preposet, center: &SubdivisionCenter) -> Result<Vec<Preposet>> {
    let work = oriented(label, center.orientation);
    let k = center.k;
    let (mut kept, crossing) = crossing_edges(label, center)?;

    for class in work.classes() {
        for &x in &class[1..] {
            kept.push(Relation::new(class[0], x));
            kept.push(Relation::new(x, class[0]));
        }
    }

    (0..k)
        .map(|j| {
            let (xj, yj) = crossing[j];
            let mut rels = kept.clone();
            rels.push(Relation::new(xj, yj));
            rels.extend(
                crossing
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, &(xi, _))| Relation::new(xi, xj)),
            );
            let q = Preposet::from_relations(work.n(), rels)?;
            Ok(match center.orientation {
                Orientation::Down => q,
                Orientation::Up => q.opposite(),
            })
        })
        .collect()
}

/// One poset-level star subdivision.
pub fn subdivide_at_center(fan: &Fan, center: &SubdivisionCenter) -> Result<(LatticeVector, Fan)> {
    let containing = cones_containing(fan, &center.tau)?;
    if containing.is_empty() {
        return Err(Error::StaleCenter);
    }
    let new_ray = center.new_ray()?;
    let v0 = sum_vectors(center.tau.rays().ok_or(Error::NotATree)?)?;
    if v0 != new_ray {
        return Err(Error::InternalVerification(format!(
            "sum of face rays {v0} differs from the hub indicator {new_ray}"
        )));
    }
    let old_rays = fan.ray_set();
    if old_rays.contains(&new_ray) {
        return Err(Error::InvalidFan(format!(
            "{new_ray} lies inside a face of {} but is already a ray",
            center.sigma.label()
        )));
    }

    let mut labels = Vec::with_capacity(fan.maximal().len() + center.k);
    for cone in fan.maximal() {
        if containing.contains(&cone) {
            labels.extend(rewire(cone.label(), center)?);
        } else {
            labels.push(cone.label().clone());
        }
    }
    let next = Fan::from_labels(fan.n(), labels)?;

    let mut expected = old_rays;
    expected.insert(new_ray.clone());
    if next.ray_set() != expected || !is_smooth(&next) {
        return Err(Error::InternalVerification(format!(
            "subdivision at {} did not add exactly the ray {new_ray}",
            center.sigma.label()
        )));
    }
    Ok((new_ray, next))
}

/// Subdivide until every maximal cone is a Weyl chamber.
pub fn factor_to_braid(fan: &Fan, opts: &FactorOptions) -> Result<FactorizationTrace> {
    check_input(fan, opts.max_n)?;
    if opts.verify {
        let report = validate_fan(fan);
        if !report.ok {
            return Err(Error::InvalidFan(report.summary()));
        }
    }

    let n = fan.n();
    let full = (1usize << n) - 2;
    let mut steps: Vec<Step> = Vec::new();
    let mut current = fan.clone();
    while let Some(center) = select_center(&current)? {
        let (new_ray, next) = subdivide_at_center(&current, &center)?;
        if opts.verify && !verify_step(&current, &next, &center.tau)? {
            return Err(Error::InternalVerification(format!(
                "step {} disagrees with the ray-level star subdivision",
                steps.len() + 1
            )));
        }
        current = next.clone();
        steps.push(Step {
            center,
            new_ray,
            result: next,
        });
        if steps.len() > full {
            return Err(Error::InternalVerification(
                "factorization does not terminate".into(),
            ));
        }
    }

    if !is_complete_coarsening_bounded(&current, opts.max_n)?.is_complete() {
        return Err(Error::InternalVerification(
            "final fan is not complete".into(),
        ));
    }
    let deficit = full - fan.ray_set().len();
    if steps.len() != deficit {
        return Err(Error::InternalVerification(format!(
            "{} steps for a ray deficit of {deficit}",
            steps.len()
        )));
    }
    Ok(FactorizationTrace {
        initial: fan.clone(),
        steps,
    })
}

/// Factor both fans down to their common refinement, the braid fan.
pub fn strong_factorize(
    first: &Fan,
    second: &Fan,
    opts: &FactorOptions,
) -> Result<(FactorizationTrace, FactorizationTrace)> {
    if first.n() != second.n() {
        return Err(Error::DimensionMismatch {
            expected: first.n(),
            found: second.n(),
        });
    }
    Ok((
        factor_to_braid(first, opts)?,
        factor_to_braid(second, opts)?,
    ))
}
