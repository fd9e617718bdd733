//! Assembly of the equivariant cochain complex: one block per orbit of
//! simplices, with values at the stabilizer of the least representative
//! and differentials built from faces, transporter signs, and the
//! system's structure maps.

use super::system::all_values_free;
use super::{BredonError, BredonInput};
use crate::abgrp::{cohomology_of_complex, CochainComplex, FGAbGroup, IntMatrix};
use num_bigint::BigInt;

/// Per-degree layout of the assembled complex.
#[derive(Clone, Debug)]
pub struct DegreeLayout {
    /// Object ids (in the groupoid's complex) of the chosen orbit
    /// representatives, ascending.
    pub orbit_reps: Vec<usize>,
    /// Index in the orbit category of the stabilizer of each representative.
    pub stabilizers: Vec<usize>,
    /// Column offset of each representative's block.
    pub offsets: Vec<usize>,
    pub total_rank: usize,
}

#[derive(Clone, Debug)]
pub struct BredonComplex {
    pub complex: CochainComplex,
    pub layout: Vec<DegreeLayout>,
}

pub fn bredon_cochain_complex(input: &BredonInput) -> Result<BredonComplex, BredonError> {
    let space = input.groupoid.space();
    space.require_admissible()?;
    let system = &input.system;
    if let Some(object) = all_values_free(system) {
        return Err(BredonError::NonFreeValue { object });
    }
    let complex = space.complex();
    let top = complex.dim().map_or(0, |d| d);

    let orbits = space.object_orbits();
    let mut layout: Vec<DegreeLayout> = Vec::new();
    let mut rep_info: Vec<Option<(usize, usize)>> = vec![None; complex.simplex_count()];
    for degree in 0..=top {
        let mut orbit_reps = Vec::new();
        let mut stabilizers = Vec::new();
        for orbit in &orbits {
            let rep = orbit[0];
            if complex.simplices()[rep].len() != degree + 1 {
                continue;
            }
            let stab = space.object_stabilizer(rep);
            let stab_idx = system
                .category()
                .object_index(&stab)
                .ok_or(BredonError::MissingObject { members: stab })?;
            for &member in orbit {
                rep_info[member] = Some((degree, orbit_reps.len()));
            }
            orbit_reps.push(rep);
            stabilizers.push(stab_idx);
        }
        let mut offsets = Vec::with_capacity(orbit_reps.len());
        let mut total = 0;
        for &stab in &stabilizers {
            offsets.push(total);
            total += system.value(stab).rank;
        }
        layout.push(DegreeLayout { orbit_reps, stabilizers, offsets, total_rank: total });
    }

    let mut diffs = Vec::new();
    for degree in 0..top {
        let lower = &layout[degree];
        let upper = &layout[degree + 1];
        let mut d = IntMatrix::zero(upper.total_rank, lower.total_rank);
        for (row_block, &tau) in upper.orbit_reps.iter().enumerate() {
            let tau_vertices = &complex.simplices()[tau];
            let row_offset = upper.offsets[row_block];
            let tau_stab = upper.stabilizers[row_block];
            for i in 0..tau_vertices.len() {
                let mut face = tau_vertices.clone();
                face.remove(i);
                let face_id = complex.simplex_id(&face).expect("faces are closed");
                let (fd, col_block) = rep_info[face_id].expect("face has an orbit");
                debug_assert_eq!(fd, degree);
                let sigma = lower.orbit_reps[col_block];
                let g = space.transporter_rep(sigma, face_id).expect("same orbit");
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let sign = sign * space.action_sign(g, &complex.simplices()[sigma]);
                let sigma_stab = lower.stabilizers[col_block];
                let rep = system
                    .category()
                    .canonical_rep(g, sigma_stab);
                let hom = system
                    .category()
                    .hom(tau_stab, sigma_stab, rep)
                    .expect("stabilizer inclusion along a face");
                let block = system.matrix(hom);
                let col_offset = lower.offsets[col_block];
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        let v = d.get(row_offset + r, col_offset + c)
                            + BigInt::from(sign) * block.get(r, c);
                        d.set(row_offset + r, col_offset + c, v);
                    }
                }
            }
        }
        diffs.push(d);
    }
    let ranks: Vec<usize> = layout.iter().map(|l| l.total_rank).collect();
    let complex = CochainComplex::new(ranks, diffs)?;
    Ok(BredonComplex { complex, layout })
}

pub fn bredon_cohomology(input: &BredonInput) -> Result<Vec<FGAbGroup>, BredonError> {
    let assembled = bredon_cochain_complex(input)?;
    Ok(cohomology_of_complex(&assembled.complex)?)
}

/// Cohomology padded with zero groups up to the requested degree.
pub fn padded_cohomology(
    input: &BredonInput,
    max_degree: usize,
) -> Result<Vec<FGAbGroup>, BredonError> {
    let mut h = bredon_cohomology(input)?;
    while h.len() <= max_degree {
        let n = h.len();
        h.push(FGAbGroup::zero(format!("H^{n}")));
    }
    h.truncate(max_degree + 1);
    Ok(h)
}
