//! Cones and fans coarsening the braid arrangement fan.
//!
//! A cone is stored by its preposet label. For tree labels the ray
//! generators are read off the Hasse tree: cutting the edge `a -> b` leaves
//! two components, and the ray for that edge is the indicator vector of the
//! component containing `b`. [`preposet_of_rays`] goes the other way.
//!
//! A [`Fan`] keeps only its maximal cones, in canonical order (ascending
//! sorted ray sets, then label). Faces are recovered by contraction.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::perm;
use crate::preposet::{Cover, Preposet, Relation};
use crate::quotient_lattice::{is_unimodular_extendable, sum_vectors, LatticeVector};

/// Largest `n` accepted by [`braid_fan`] and fan-wide chamber checks.
pub const DEFAULT_MAX_N: usize = 8;

/// Ray generator of every cover edge of a tree preposet, in cover order.
pub fn edge_rays(p: &Preposet) -> Result<Vec<(Cover, LatticeVector)>> {
    if !p.is_tree() {
        return Err(Error::NotATree);
    }
    p.covers()
        .iter()
        .map(|&(a, b)| {
            let ids = p.component_ids(&[(a, b)])?;
            let upper: Vec<usize> = p
                .classes()
                .iter()
                .enumerate()
                .filter(|(c, _)| ids[*c] == ids[b])
                .flat_map(|(_, class)| class.iter().copied())
                .collect();
            Ok(((a, b), LatticeVector::indicator(p.n(), &upper)?))
        })
        .collect()
}

/// Ray generators of the cone labeled by a tree preposet, sorted.
pub fn rays_of(p: &Preposet) -> Result<Vec<LatticeVector>> {
    let mut rays: Vec<LatticeVector> = edge_rays(p)?.into_iter().map(|(_, v)| v).collect();
    rays.sort();
    Ok(rays)
}

/// The preposet cut out by `x_i <= x_j` for every pair that holds on all of
/// `rays`.
pub fn preposet_of_rays(n: usize, rays: &[LatticeVector]) -> Result<Preposet> {
    for v in rays {
        if v.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.n(),
            });
        }
        if v.is_zero() {
            return Err(Error::InvalidRay);
        }
    }
    let mut rels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rays.iter().all(|v| v.coords()[i] <= v.coords()[j]) {
                rels.push(Relation::new(i + 1, j + 1));
            }
        }
    }
    Preposet::from_relations(n, rels)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    rays: Option<Vec<LatticeVector>>,
    label: Preposet,
}

impl Cone {
    pub fn new(label: Preposet) -> Result<Self> {
        if !label.is_connected() {
            return Err(Error::Disconnected);
        }
        let rays = if label.is_tree() {
            Some(rays_of(&label)?)
        } else {
            None
        };
        Ok(Self { rays, label })
    }

    pub fn label(&self) -> &Preposet {
        &self.label
    }

    /// Ray generators, available when the label is a tree preposet.
    pub fn rays(&self) -> Option<&[LatticeVector]> {
        self.rays.as_deref()
    }

    pub fn dimension(&self) -> usize {
        self.label.dimension()
    }

    /// Whether `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> Result<bool> {
        self.label.is_contraction_of(&other.label)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    n: usize,
    maximal: Vec<Cone>,
}

impl Fan {
    pub fn new(n: usize, mut cones: Vec<Cone>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension {
                n,
                min: 2,
                max: usize::MAX,
            });
        }
        if let Some(c) = cones.iter().find(|c| c.label.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: c.label.n(),
            });
        }
        cones.sort();
        if cones.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateCone);
        }
        for (i, small) in cones.iter().enumerate() {
            for (j, big) in cones.iter().enumerate() {
                if small.dimension() < big.dimension() && small.is_face_of(big)? {
                    return Err(Error::NotMaximal { face: i, cone: j });
                }
            }
        }
        Ok(Self { n, maximal: cones })
    }

    pub fn from_labels(n: usize, labels: impl IntoIterator<Item = Preposet>) -> Result<Self> {
        let cones = labels
            .into_iter()
            .map(Cone::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, cones)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn maximal(&self) -> &[Cone] {
        &self.maximal
    }

    pub fn labels(&self) -> impl Iterator<Item = &Preposet> {
        self.maximal.iter().map(Cone::label)
    }

    /// Union of the ray sets of all maximal cones with tree labels.
    pub fn ray_set(&self) -> BTreeSet<LatticeVector> {
        self.maximal
            .iter()
            .filter_map(Cone::rays)
            .flat_map(|r| r.iter().cloned())
            .collect()
    }

    /// Sorted ray sets of the maximal cones, `None` for non-tree labels.
    pub fn maximal_ray_sets(&self) -> Vec<Option<Vec<LatticeVector>>> {
        self.maximal.iter().map(|c| c.rays.clone()).collect()
    }

    /// Every maximal label is a chain, so this is the braid fan itself
    /// provided the fan is complete.
    pub fn all_linear(&self) -> bool {
        self.labels().all(Preposet::is_linear_order)
    }
}

/// The braid arrangement fan: one maximal cone per linear order of `[n]`.
pub fn braid_fan(n: usize) -> Result<Fan> {
    braid_fan_bounded(n, DEFAULT_MAX_N)
}

pub fn braid_fan_bounded(n: usize, max_n: usize) -> Result<Fan> {
    if n < 2 || n > max_n {
        return Err(Error::InvalidDimension {
            n,
            min: 2,
            max: max_n,
        });
    }
    let cones = perm::all(n)
        .iter()
        .map(|order| Cone::new(Preposet::chain(order)?))
        .collect::<Result<Vec<_>>>()?;
    let mut maximal = cones;
    maximal.sort();
    // Chains of equal length are never contractions of one another.
    Ok(Fan { n, maximal })
}

/// Smooth in the sense that every maximal label is a tree poset.
pub fn is_smooth(fan: &Fan) -> bool {
    let smooth = fan.labels().all(Preposet::is_tree_poset);
    debug_assert!(
        !smooth
            || fan
                .maximal
                .iter()
                .all(|c| is_unimodular_extendable(c.rays().unwrap_or(&[])) == Ok(true)),
        "tree poset cone with non-unimodular rays"
    );
    smooth
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coverage {
    /// Every linear order extends exactly one maximal label.
    Complete,
    /// The lexicographically least order extending `covering` labels, where
    /// `covering != 1`.
    Defect { order: Vec<usize>, covering: usize },
}

impl Coverage {
    pub fn is_complete(&self) -> bool {
        matches!(self, Coverage::Complete)
    }
}

/// For each linear order of `[n]` (by lexicographic rank), the number of
/// labels it extends. Labels that are not posets extend nothing.
pub(crate) fn chamber_counts<'a>(
    n: usize,
    labels: impl IntoIterator<Item = &'a Preposet>,
) -> Vec<u32> {
    let mut counts = vec![0u32; perm::factorial(n)];
    for label in labels {
        // Only posets have linear extensions; others contribute nothing.
        let _ = label.for_each_linear_extension(|order| counts[perm::rank(order)] += 1);
    }
    counts
}

/// Whether the maximal cones of a smooth fan partition the Weyl chambers.
pub fn is_complete_coarsening(fan: &Fan) -> Result<Coverage> {
    is_complete_coarsening_bounded(fan, DEFAULT_MAX_N)
}

pub fn is_complete_coarsening_bounded(fan: &Fan, max_n: usize) -> Result<Coverage> {
    if fan.n > max_n {
        return Err(Error::InvalidDimension {
            n: fan.n,
            min: 2,
            max: max_n,
        });
    }
    if !is_smooth(fan) {
        return Err(Error::NotSmooth);
    }
    let counts = chamber_counts(fan.n, fan.labels());
    Ok(match counts.iter().position(|&c| c != 1) {
        None => Coverage::Complete,
        Some(r) => Coverage::Defect {
            order: perm::unrank(fan.n, r),
            covering: counts[r] as usize,
        },
    })
}

/// Maximal cones of `fan` having `tau` as a face.
pub fn cones_containing<'a>(fan: &'a Fan, tau: &Cone) -> Result<Vec<&'a Cone>> {
    let mut out = Vec::new();
    for sigma in &fan.maximal {
        if tau.is_face_of(sigma)? {
            debug_assert!(match (tau.rays(), sigma.rays()) {
                (Some(t), Some(s)) => t.iter().all(|r| s.contains(r)),
                _ => true,
            });
            out.push(sigma);
        }
    }
    Ok(out)
}

/// A maximal cone of a star subdivision, given by its rays. `label` is set
/// when the rays are exactly the rays of a tree-labeled braid cone.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RayCone {
    pub rays: Vec<LatticeVector>,
    pub label: Option<Preposet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdividedFan {
    pub n: usize,
    pub new_ray: LatticeVector,
    pub cones: Vec<RayCone>,
}

impl SubdividedFan {
    pub fn ray_sets(&self) -> Vec<Vec<LatticeVector>> {
        self.cones.iter().map(|c| c.rays.clone()).collect()
    }

    /// The relabeled fan, if every cone received a label.
    pub fn to_fan(&self) -> Option<Result<Fan>> {
        let labels: Option<Vec<Preposet>> = self.cones.iter().map(|c| c.label.clone()).collect();
        labels.map(|l| Fan::from_labels(self.n, l))
    }
}

/// Star subdivision of a smooth fan at the face `tau`, computed on ray sets:
/// each maximal cone containing `tau` is replaced by the cones obtained by
/// swapping one ray of `tau` for the sum of all rays of `tau`.
pub fn star_subdivide_rays(fan: &Fan, tau: &Cone) -> Result<SubdividedFan> {
    if !is_smooth(fan) {
        return Err(Error::NotSmooth);
    }
    let tau_rays = tau.rays().ok_or(Error::NotATree)?;
    let containing = cones_containing(fan, tau)?;
    if containing.is_empty() {
        return Err(Error::NotAFace);
    }
    let v0 = sum_vectors(tau_rays)?;

    let mut sets: Vec<Vec<LatticeVector>> = Vec::new();
    for sigma in &fan.maximal {
        let rays = sigma.rays().expect("smooth fan");
        if containing.contains(&sigma) {
            for r in tau_rays {
                let mut s: Vec<LatticeVector> = rays.iter().filter(|v| *v != r).cloned().collect();
                s.push(v0.clone());
                s.sort();
                s.dedup();
                sets.push(s);
            }
        } else {
            sets.push(rays.to_vec());
        }
    }
    sets.sort();
    sets.dedup();

    let cones = sets
        .into_iter()
        .map(|rays| {
            let label = relabel(fan.n, &rays)?;
            Ok(RayCone { rays, label })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubdividedFan {
        n: fan.n,
        new_ray: v0,
        cones,
    })
}

fn relabel(n: usize, rays: &[LatticeVector]) -> Result<Option<Preposet>> {
    let label = preposet_of_rays(n, rays)?;
    if label.is_tree() && rays_of(&label)? == rays {
        Ok(Some(label))
    } else {
        Ok(None)
    }
}
