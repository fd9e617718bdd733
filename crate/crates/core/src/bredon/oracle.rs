//! The brute-force oracle: cochains are computed literally as natural
//! transformations from the fixed-point chain diagram to the coefficient
//! system, by solving the naturality equations as an integer kernel
//! problem. No equivariant assembly is involved, so this pipeline is the
//! arbiter for the engine's orbit bookkeeping and signs.

use super::system::all_values_free;
use super::{BredonError, BredonInput};
use crate::abgrp::{cohomology_of_complex, smith_normal_form, CochainComplex, FGAbGroup, IntMatrix};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

struct DegreeUnknowns {
    /// Per category object: ascending object ids of the n-simplices of X^H.
    fixed: Vec<Vec<usize>>,
    /// (object index, simplex id) -> first unknown index of its generator
    /// block.
    base: BTreeMap<(usize, usize), usize>,
    total: usize,
}

fn degree_unknowns(input: &BredonInput, degree: usize) -> DegreeUnknowns {
    let space = input.groupoid.space();
    let system = &input.system;
    let complex = space.complex();
    let mut fixed = Vec::new();
    let mut base = BTreeMap::new();
    let mut total = 0;
    for (obj, subgroup) in system.category().objects().iter().enumerate() {
        let mut list = Vec::new();
        for id in complex.simplices_of_dim(degree) {
            let s = &complex.simplices()[id];
            let is_fixed = s
                .iter()
                .all(|&v| subgroup.members().iter().all(|&h| space.vertex_image(h, v) == v));
            if is_fixed {
                base.insert((obj, id), total);
                total += system.value(obj).rank;
                list.push(id);
            }
        }
        fixed.push(list);
    }
    DegreeUnknowns { fixed, base, total }
}

/// The naturality equations at one degree, one row per scalar condition.
fn naturality_matrix(input: &BredonInput, unknowns: &DegreeUnknowns) -> IntMatrix {
    let space = input.groupoid.space();
    let system = &input.system;
    let complex = space.complex();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for hom in system.category().all_homs() {
        if hom == system.category().identity_hom(hom.src) {
            continue;
        }
        let rank_src = system.value(hom.src).rank;
        let rank_dst = system.value(hom.dst).rank;
        let matrix = system.matrix(hom);
        for &sigma in &unknowns.fixed[hom.dst] {
            // the chain map sends sigma to sign * (rep . sigma), which is
            // fixed by the source subgroup
            let vertices = &complex.simplices()[sigma];
            let image: usize = space.object_image(hom.rep, sigma);
            let sign = space.action_sign(hom.rep, vertices);
            let Some(&image_base) = unknowns.base.get(&(hom.src, image)) else {
                debug_assert!(false, "image of a fixed simplex must be fixed");
                continue;
            };
            let sigma_base = unknowns.base[&(hom.dst, sigma)];
            for a in 0..rank_src {
                let mut row = vec![BigInt::zero(); unknowns.total];
                row[image_base + a] = BigInt::from(sign);
                for b in 0..rank_dst {
                    row[sigma_base + b] -= matrix.get(a, b);
                }
                rows.push(row);
            }
        }
    }
    let cols = unknowns.total;
    IntMatrix::from_fn(rows.len(), cols, |r, c| rows[r][c].clone())
}

/// The raw coboundary on unknown vectors: precomposition with the
/// simplicial boundary inside each fixed-point complex.
fn raw_coboundary(
    input: &BredonInput,
    lower: &DegreeUnknowns,
    upper: &DegreeUnknowns,
) -> IntMatrix {
    let space = input.groupoid.space();
    let system = &input.system;
    let complex = space.complex();
    let mut d = IntMatrix::zero(upper.total, lower.total);
    for (obj, list) in upper.fixed.iter().enumerate() {
        let rank = system.value(obj).rank;
        for &tau in list {
            let tau_base = upper.base[&(obj, tau)];
            let vertices = &complex.simplices()[tau];
            for i in 0..vertices.len() {
                let mut face = vertices.clone();
                face.remove(i);
                let face_id = complex.simplex_id(&face).expect("faces closed");
                let face_base = lower.base[&(obj, face_id)];
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for a in 0..rank {
                    let v = d.get(tau_base + a, face_base + a) + BigInt::from(sign);
                    d.set(tau_base + a, face_base + a, v);
                }
            }
        }
    }
    d
}

/// One degree of the oracle cochain complex: the free group of natural
/// transformations and the induced differential in its coordinates.
#[derive(Clone, Debug)]
pub struct OracleDegree {
    pub group: FGAbGroup,
    pub differential: IntMatrix,
}

struct DegreeSolution {
    kernel: IntMatrix,
    /// Rows of v_inv * x below the rank give coordinates in the kernel
    /// basis; rows above must vanish for vectors in the kernel.
    v_inv: IntMatrix,
    rank: usize,
}

fn solve_degree(input: &BredonInput, degree: usize) -> (DegreeUnknowns, DegreeSolution) {
    let unknowns = degree_unknowns(input, degree);
    let equations = naturality_matrix(input, &unknowns);
    let snf = smith_normal_form(&equations);
    let r = snf.rank();
    let n = unknowns.total;
    let mut kernel = IntMatrix::zero(n, n - r);
    for (k, j) in (r..n).enumerate() {
        for i in 0..n {
            kernel.set(i, k, snf.v.get(i, j).clone());
        }
    }
    (unknowns, DegreeSolution { kernel, v_inv: snf.v_inv, rank: r })
}

/// The full oracle cochain complex of the input.
pub fn hom_oracle_complex(input: &BredonInput) -> Result<CochainComplex, BredonError> {
    let space = input.groupoid.space();
    space.require_admissible()?;
    if let Some(object) = all_values_free(&input.system) {
        return Err(BredonError::NonFreeValue { object });
    }
    let top = space.complex().dim().map_or(0, |d| d);
    let mut degrees = Vec::with_capacity(top + 1);
    for n in 0..=top {
        degrees.push(solve_degree(input, n));
    }
    let ranks: Vec<usize> = degrees.iter().map(|(_, s)| s.kernel.cols()).collect();
    let mut diffs = Vec::new();
    for n in 0..top {
        let (lower_unknowns, lower) = &degrees[n];
        let (upper_unknowns, upper) = &degrees[n + 1];
        let raw = raw_coboundary(input, lower_unknowns, upper_unknowns);
        let image = raw.mul(&lower.kernel);
        let coords = upper.v_inv.mul(&image);
        // naturality is preserved by the coboundary, so the image lies in
        // the kernel at the next degree
        for i in 0..upper.rank {
            for c in 0..coords.cols() {
                if !coords.get(i, c).is_zero() {
                    return Err(BredonError::NotTransportable(
                        "coboundary left the space of natural transformations".into(),
                    ));
                }
            }
        }
        diffs.push(coords.row_submatrix(upper.rank, upper_unknowns.total));
    }
    Ok(CochainComplex::new(ranks, diffs)?)
}

/// The literal Hom-group at one degree, with its outgoing differential.
pub fn hom_oracle(input: &BredonInput, degree: usize) -> Result<OracleDegree, BredonError> {
    let complex = hom_oracle_complex(input)?;
    let rank = *complex.ranks.get(degree).unwrap_or(&0);
    let differential = if degree < complex.diffs.len() {
        complex.diffs[degree].clone()
    } else {
        IntMatrix::zero(0, rank)
    };
    Ok(OracleDegree {
        group: FGAbGroup::free(format!("Hom^{degree}"), rank),
        differential,
    })
}

/// Cohomology through the oracle pipeline.
pub fn oracle_cohomology(input: &BredonInput) -> Result<Vec<FGAbGroup>, BredonError> {
    Ok(cohomology_of_complex(&hom_oracle_complex(input)?)?)
}
