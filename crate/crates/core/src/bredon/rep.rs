//! Representation-ring coefficient systems: the value at G/H is the free
//! abelian group on the irreducible characters of H, with structure maps
//! given by restricting characters along conjugation-and-inclusion.
//!
//! Character data for abelian subgroups is computed internally (characters
//! into roots of unity, found through a Smith normal form of the relation
//! lattice); non-abelian subgroups take an integer-valued table from the
//! caller. Labels are canonical forms of the character data, so subgroups
//! with identical data share labels.

use super::orbit::build_orbit_category;
use super::system::CoefficientSystem;
use super::BredonError;
use crate::abgrp::{smith_normal_form, solve, FGAbGroup, IntMatrix};
use crate::grp::{FiniteGroup, Subgroup};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharacterTable {
    /// Rows of exponents: entry e in row t, class c means the value
    /// zeta_modulus^e of the t-th irreducible on the c-th class.
    Cyclotomic { modulus: usize, rows: Vec<Vec<usize>> },
    /// Integer-valued irreducible characters, one row per irreducible.
    Integer { rows: Vec<Vec<i64>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterData {
    /// Conjugacy classes as sorted member lists, in canonical order.
    pub classes: Vec<Vec<usize>>,
    pub table: CharacterTable,
}

/// A rendered character value: an exact root of unity as a reduced
/// fraction of the full turn, or a plain integer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Rendered {
    Root(usize, usize),
    Int(i64),
}

fn render_row(table: &CharacterTable, row: usize, class_order: &[usize]) -> Vec<Rendered> {
    match table {
        CharacterTable::Cyclotomic { modulus, rows } => class_order
            .iter()
            .map(|&c| {
                let e = rows[row][c] % modulus.max(&1);
                let g = e.gcd(modulus);
                if *modulus == 0 || e == 0 {
                    Rendered::Root(0, 1)
                } else {
                    Rendered::Root(e / g, modulus / g)
                }
            })
            .collect(),
        CharacterTable::Integer { rows } => {
            class_order.iter().map(|&c| Rendered::Int(rows[row][c])).collect()
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Canonicalize character data: order classes by (size, element order),
/// resolve ties by the column arrangement minimizing the sorted row list,
/// and sort the rows. The canonical form depends only on the abstract
/// data, never on element indices.
fn canonicalize(
    group: &FiniteGroup,
    data: CharacterData,
) -> Result<CharacterData, BredonError> {
    let n_classes = data.classes.len();
    let keys: Vec<(usize, usize)> = data
        .classes
        .iter()
        .map(|c| (c.len(), group.element_order(c[0])))
        .collect();
    let mut order: Vec<usize> = (0..n_classes).collect();
    order.sort_by_key(|&i| (keys[i], data.classes[i].clone()));

    // tie groups of equal (size, order)
    let mut tie_groups: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match tie_groups.last_mut() {
            Some(g) if keys[g[0]] == keys[i] => g.push(i),
            _ => tie_groups.push(vec![i]),
        }
    }
    for g in &tie_groups {
        if g.len() > 8 {
            return Err(BredonError::BadCharacterData(
                "too many tied conjugacy classes to canonicalize".into(),
            ));
        }
    }
    let row_count = match &data.table {
        CharacterTable::Cyclotomic { rows, .. } => rows.len(),
        CharacterTable::Integer { rows } => rows.len(),
    };
    let per_group_perms: Vec<Vec<Vec<usize>>> =
        tie_groups.iter().map(|g| permutations(g.len())).collect();
    let mut stack = vec![0usize; tie_groups.len()];
    let mut best: Option<(Vec<Vec<Rendered>>, Vec<usize>)> = None;
    loop {
        let arrangement: Vec<usize> = {
            let mut a = Vec::with_capacity(n_classes);
            for (gi, g) in tie_groups.iter().enumerate() {
                for &p in &per_group_perms[gi][stack[gi]] {
                    a.push(g[p]);
                }
            }
            a
        };
        let mut rendered: Vec<Vec<Rendered>> =
            (0..row_count).map(|r| render_row(&data.table, r, &arrangement)).collect();
        rendered.sort();
        if best.as_ref().is_none_or(|(b, _)| rendered < *b) {
            best = Some((rendered, arrangement));
        }
        // advance the mixed-radix counter over tie permutations
        let mut i = 0;
        loop {
            if i == stack.len() {
                let (_, arrangement) = best.expect("at least one arrangement");
                return Ok(finish_canonical(data, arrangement));
            }
            stack[i] += 1;
            if stack[i] < per_group_perms[i].len() {
                break;
            }
            stack[i] = 0;
            i += 1;
        }
    }
}

/// Re-express the table in the chosen class order with canonically sorted
/// rows.
fn finish_canonical(data: CharacterData, arrangement: Vec<usize>) -> CharacterData {
    let classes: Vec<Vec<usize>> = arrangement.iter().map(|&c| data.classes[c].clone()).collect();
    let table = match &data.table {
        CharacterTable::Cyclotomic { modulus, rows } => {
            let mut new_rows: Vec<Vec<usize>> = rows
                .iter()
                .map(|row| arrangement.iter().map(|&c| row[c] % modulus.max(&1)).collect())
                .collect();
            new_rows.sort_by_key(|row| {
                row.iter()
                    .map(|&e| {
                        let g = e.gcd(modulus);
                        if e == 0 {
                            Rendered::Root(0, 1)
                        } else {
                            Rendered::Root(e / g, modulus / g)
                        }
                    })
                    .collect::<Vec<_>>()
            });
            CharacterTable::Cyclotomic { modulus: *modulus, rows: new_rows }
        }
        CharacterTable::Integer { rows } => {
            let mut new_rows: Vec<Vec<i64>> = rows
                .iter()
                .map(|row| arrangement.iter().map(|&c| row[c]).collect())
                .collect();
            new_rows.sort();
            CharacterTable::Integer { rows: new_rows }
        }
    };
    CharacterData { classes, table }
}

/// The canonical label of character data; identical data yields identical
/// labels regardless of the ambient group.
pub fn canonical_character_label(group: &FiniteGroup, data: &CharacterData) -> String {
    let keys: Vec<String> = data
        .classes
        .iter()
        .map(|c| format!("{}:{}", c.len(), group.element_order(c[0])))
        .collect();
    let rows: Vec<String> = match &data.table {
        CharacterTable::Cyclotomic { modulus, rows } => rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&e| {
                        let g = e.gcd(modulus);
                        if e == 0 {
                            "1".to_string()
                        } else {
                            format!("z{}/{}", e / g, modulus / g)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect(),
        CharacterTable::Integer { rows } => rows
            .iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect(),
    };
    format!("R[{}|{}]", keys.join(";"), rows.join(";"))
}

/// Internal character data of an abelian subgroup: a basis of the subgroup
/// is read off a Smith normal form of its relation lattice, and the
/// characters are the homomorphisms into roots of unity.
fn abelian_character_data(
    group: &FiniteGroup,
    subgroup: &Subgroup,
) -> Result<CharacterData, BredonError> {
    let members = subgroup.members();
    let k = members.len();
    let pos: BTreeMap<usize, usize> =
        members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    // relations x_a + x_b - x_{ab} as columns
    let mut relations = IntMatrix::zero(k, k * k);
    for a in 0..k {
        for b in 0..k {
            let col = a * k + b;
            let ab = pos[&group.mul(members[a], members[b])];
            let bump = |m: &mut IntMatrix, row: usize, delta: i64| {
                let v = m.get(row, col) + BigInt::from(delta);
                m.set(row, col, v);
            };
            bump(&mut relations, a, 1);
            bump(&mut relations, b, 1);
            bump(&mut relations, ab, -1);
        }
    }
    let snf = smith_normal_form(&relations);
    let r = snf.rank();
    if r != k {
        return Err(BredonError::BadCharacterData("abelian subgroup has free quotient".into()));
    }
    let factors: Vec<usize> = (0..k)
        .map(|i| snf.s.get(i, i).abs().to_usize().expect("small invariant factor"))
        .collect();
    // coordinates of the generator x_m in the canonical basis: column m of U
    let coord = |m: usize, i: usize| -> usize {
        let d = factors[i];
        if d <= 1 {
            return 0;
        }
        let v = snf.u.get(i, m);
        let d_big = BigInt::from(d);
        let reduced = ((v % &d_big) + &d_big) % &d_big;
        reduced.to_usize().expect("reduced coordinate")
    };
    let modulus = factors.iter().filter(|&&d| d >= 2).fold(1usize, |acc, &d| acc.lcm(&d)).max(1);
    // enumerate characters as tuples over the torsion coordinates
    let torsion_axes: Vec<(usize, usize)> =
        factors.iter().enumerate().filter(|(_, &d)| d >= 2).map(|(i, &d)| (i, d)).collect();
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for &(_, d) in &torsion_axes {
        let mut next = Vec::new();
        for t in &tuples {
            for v in 0..d {
                let mut t2 = t.clone();
                t2.push(v);
                next.push(t2);
            }
        }
        tuples = next;
    }
    let rows: Vec<Vec<usize>> = tuples
        .iter()
        .map(|t| {
            (0..k)
                .map(|m| {
                    let mut total = 0usize;
                    for (axis, &(i, d)) in torsion_axes.iter().enumerate() {
                        total = (total + t[axis] * coord(m, i) * (modulus / d)) % modulus;
                    }
                    total
                })
                .collect()
        })
        .collect();
    let classes: Vec<Vec<usize>> = members.iter().map(|&m| vec![m]).collect();
    canonicalize(group, CharacterData { classes, table: CharacterTable::Cyclotomic { modulus, rows } })
}

/// Validate and canonicalize supplied character data for a subgroup.
fn prepare_supplied(
    group: &FiniteGroup,
    subgroup: &Subgroup,
    data: &CharacterData,
) -> Result<CharacterData, BredonError> {
    let mut covered: Vec<usize> = data.classes.iter().flatten().copied().collect();
    covered.sort_unstable();
    if covered != subgroup.members() {
        return Err(BredonError::BadCharacterData(
            "classes do not partition the subgroup".into(),
        ));
    }
    let rows = match &data.table {
        CharacterTable::Integer { rows } => rows,
        CharacterTable::Cyclotomic { .. } => {
            return Err(BredonError::BadCharacterData(
                "supplied tables must be integer-valued".into(),
            ))
        }
    };
    if rows.len() != data.classes.len() || rows.iter().any(|r| r.len() != data.classes.len()) {
        return Err(BredonError::BadCharacterData("table must be square".into()));
    }
    canonicalize(group, data.clone())
}

/// Cyclotomic polynomial of order m, ascending coefficients.
fn cyclotomic_polynomial(m: usize) -> Vec<i64> {
    fn poly_div(num: &[i64], den: &[i64]) -> Vec<i64> {
        let mut num = num.to_vec();
        let mut out = vec![0i64; num.len().saturating_sub(den.len()) + 1];
        let lead = *den.last().expect("nonzero divisor");
        for i in (0..out.len()).rev() {
            let c = num[i + den.len() - 1] / lead;
            out[i] = c;
            for (j, &d) in den.iter().enumerate() {
                num[i + j] -= c * d;
            }
        }
        out
    }
    if m == 1 {
        return vec![-1, 1];
    }
    let mut num = vec![0i64; m + 1];
    num[0] = -1;
    num[m] = 1;
    let mut result = num;
    for d in 1..m {
        if m.is_multiple_of(d) {
            result = poly_div(&result, &cyclotomic_polynomial(d));
        }
    }
    result
}

/// x^e reduced modulo the cyclotomic polynomial of order m, as a
/// coefficient vector of length phi(m) = deg.
fn root_power_coords(e: usize, m: usize, phi: &[i64]) -> Vec<BigInt> {
    let deg = phi.len() - 1;
    let mut poly = vec![BigInt::zero(); (e % m) + 1];
    poly[e % m] = BigInt::from(1);
    // long division by phi (monic)
    while poly.len() > deg {
        let top = poly.len() - 1;
        let c = poly[top].clone();
        if !c.is_zero() {
            for (j, &coeff) in phi.iter().enumerate() {
                let idx = top + j - (phi.len() - 1);
                let v = &poly[idx] - &c * BigInt::from(coeff);
                poly[idx] = v;
            }
        }
        poly.pop();
    }
    poly.resize(deg, BigInt::zero());
    poly
}

struct ObjectCharacters {
    data: CharacterData,
    class_of: BTreeMap<usize, usize>,
    label: String,
}

/// Decompose the class function "chi_t of the target pulled back along
/// conjugation by the representative" in the source's irreducible basis.
fn restriction_matrix(
    group: &FiniteGroup,
    rep: usize,
    src: &ObjectCharacters,
    dst: &ObjectCharacters,
) -> Result<IntMatrix, BredonError> {
    let src_rows = match &src.data.table {
        CharacterTable::Cyclotomic { rows, .. } => rows.len(),
        CharacterTable::Integer { rows } => rows.len(),
    };
    let dst_rows = match &dst.data.table {
        CharacterTable::Cyclotomic { rows, .. } => rows.len(),
        CharacterTable::Integer { rows } => rows.len(),
    };
    let mut out = IntMatrix::zero(src_rows, dst_rows);
    // pulled-back class index on the source side
    let pulled_class: Vec<usize> = src
        .data
        .classes
        .iter()
        .map(|c| {
            let m = c[0];
            let conj = group.mul(group.mul(group.inv(rep), m), rep);
            dst.class_of[&conj]
        })
        .collect();
    for t in 0..dst_rows {
        let column: Vec<BigInt> = match (&src.data.table, &dst.data.table) {
            (
                CharacterTable::Cyclotomic { modulus: m_src, rows: rows_src },
                CharacterTable::Cyclotomic { modulus: m_dst, rows: rows_dst },
            ) => {
                let l = m_src.lcm(m_dst);
                let alpha: Vec<usize> =
                    pulled_class.iter().map(|&c| rows_dst[t][c] * (l / m_dst) % l).collect();
                let found = (0..src_rows).find(|&s| {
                    (0..src.data.classes.len())
                        .all(|c| rows_src[s][c] * (l / m_src) % l == alpha[c])
                });
                let s = found.ok_or_else(|| {
                    BredonError::BadCharacterData(
                        "pulled-back character is not irreducible on an abelian subgroup".into(),
                    )
                })?;
                (0..src_rows).map(|i| BigInt::from(usize::from(i == s))).collect()
            }
            (
                CharacterTable::Cyclotomic { modulus, rows: rows_src },
                CharacterTable::Integer { rows: rows_dst },
            ) => {
                // solve sum_s x_s chi_s = alpha over Z[zeta_modulus]
                let phi = cyclotomic_polynomial(*modulus);
                let deg = phi.len() - 1;
                let n_classes = src.data.classes.len();
                let mut a = IntMatrix::zero(n_classes * deg, src_rows);
                let mut b = IntMatrix::zero(n_classes * deg, 1);
                for c in 0..n_classes {
                    for s in 0..src_rows {
                        let coords = root_power_coords(rows_src[s][c], *modulus, &phi);
                        for (d, v) in coords.into_iter().enumerate() {
                            a.set(c * deg + d, s, v);
                        }
                    }
                    b.set(c * deg, 0, BigInt::from(rows_dst[t][pulled_class[c]]));
                }
                let x = solve(&a, &b).ok_or_else(|| {
                    BredonError::BadCharacterData(
                        "integral decomposition of a restricted character failed".into(),
                    )
                })?;
                (0..src_rows).map(|i| x.get(i, 0).clone()).collect()
            }
            (
                CharacterTable::Integer { rows: rows_src },
                CharacterTable::Integer { rows: rows_dst },
            ) => {
                let order: usize = src.data.classes.iter().map(|c| c.len()).sum();
                (0..src_rows)
                    .map(|s| {
                        let mut total = BigInt::zero();
                        for (c, class) in src.data.classes.iter().enumerate() {
                            total += BigInt::from(class.len() as i64)
                                * BigInt::from(rows_dst[t][pulled_class[c]])
                                * BigInt::from(rows_src[s][c]);
                        }
                        let order = BigInt::from(order as i64);
                        if !(&total % &order).is_zero() {
                            return Err(BredonError::BadCharacterData(
                                "non-integral character multiplicity".into(),
                            ));
                        }
                        Ok(&total / &order)
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
            (CharacterTable::Integer { .. }, CharacterTable::Cyclotomic { .. }) => {
                return Err(BredonError::BadCharacterData(
                    "a non-abelian subgroup cannot include into an abelian one".into(),
                ))
            }
        };
        for (i, v) in column.into_iter().enumerate() {
            out.set(i, t, v);
        }
    }
    Ok(out)
}

/// The representation-ring coefficient system of a finite group.
/// `supplied` provides integer character tables for non-abelian subgroups,
/// keyed by sorted member lists; abelian subgroups are computed internally.
pub fn representation_system(
    group: &Arc<FiniteGroup>,
    supplied: &BTreeMap<Vec<usize>, CharacterData>,
) -> Result<CoefficientSystem, BredonError> {
    let category = build_orbit_category(group)?;
    let mut per_object = Vec::with_capacity(category.object_count());
    for subgroup in category.objects() {
        let abelian = subgroup.members().iter().all(|&a| {
            subgroup.members().iter().all(|&b| group.mul(a, b) == group.mul(b, a))
        });
        let data = if abelian {
            abelian_character_data(group, subgroup)?
        } else {
            let raw = supplied
                .get(subgroup.members())
                .ok_or(BredonError::MissingCharacterData {
                    members: subgroup.members().to_vec(),
                })?;
            prepare_supplied(group, subgroup, raw)?
        };
        let mut class_of = BTreeMap::new();
        for (c, class) in data.classes.iter().enumerate() {
            for &m in class {
                class_of.insert(m, c);
            }
        }
        let label = canonical_character_label(group, &data);
        per_object.push(ObjectCharacters { data, class_of, label });
    }
    let values: Vec<FGAbGroup> = per_object
        .iter()
        .map(|o| FGAbGroup::free(o.label.clone(), o.data.classes.len()))
        .collect();
    let mut maps = BTreeMap::new();
    for hom in category.all_homs() {
        let matrix =
            restriction_matrix(group, hom.rep, &per_object[hom.src], &per_object[hom.dst])?;
        maps.insert((hom.src, hom.dst, hom.rep), matrix);
    }
    CoefficientSystem::new(category, values, maps)
}
