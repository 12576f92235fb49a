//! Brute-force enumeration of lattice simplices of small normalized volume,
//! by two independent pipelines, and cross-validation against the parametric
//! families.
//!
//! Pipeline one sweeps Hermite-form vertex matrices: every d-simplex with a
//! vertex at the origin is `conv(0, rows of H)` for a lower-triangular `H`
//! with positive diagonal and column-reduced entries below it, so sweeping
//! all such `H` with `det H <= vmax` covers every unimodular class at least
//! once. Pipeline two sweeps quotient-group column patterns directly, using
//! nothing but modular arithmetic. Both pipelines reduce classes to the
//! canonical group form, so their outputs are comparable sets.

use std::collections::{BTreeMap, BTreeSet};

use crate::catalog::{make_simplex, table1_instances, FamilyId};
use crate::error::{Error, Result};
use crate::lambda::{
    build_cyclic4, build_klein4, build_order2, build_order3, lambda_of_simplex, LambdaGroup,
};
use crate::polytope::LatticePolytope;

/// Canonical key of a group class: (denominator, canonical column form).
pub type GroupKey = (i64, Vec<Vec<i64>>);

#[derive(Debug, Clone)]
pub struct SimplexClass {
    pub dim: usize,
    pub volume: i64,
    /// Sorted heights of the nonzero group elements; the delta exponents.
    pub exponents: Vec<i64>,
    pub key: GroupKey,
    pub representative: LatticePolytope,
    /// True when the group has a zero column, i.e. the simplex is a lattice
    /// pyramid over a lower-dimensional one.
    pub is_pyramid: bool,
}

fn group_key(g: &LambdaGroup) -> Result<GroupKey> {
    Ok((g.den(), g.canonical_form()?.0))
}

fn exponents_of(g: &LambdaGroup) -> Vec<i64> {
    let mut out: Vec<i64> = (0..g.order())
        .map(|i| g.height_of(i))
        .filter(|&h| h != 0)
        .collect();
    out.sort_unstable();
    out
}

/// Number of lower-triangular column-reduced d x d matrices with determinant
/// `m`: the sum over ordered factorizations (m_1, ..., m_d) of
/// `prod m_j^(j-1)`.
pub fn hnf_matrix_count(d: usize, m: i64) -> i64 {
    fn rec(slots: usize, m: i64, weight_exp: i64) -> i64 {
        if slots == 0 {
            return if m == 1 { 1 } else { 0 };
        }
        let mut total = 0;
        for f in 1..=m {
            if m % f == 0 {
                total += f.pow(weight_exp as u32) * rec(slots - 1, m / f, weight_exp + 1);
            }
        }
        total
    }
    rec(d, m, 0)
}

/// All unimodular classes of d-dimensional lattice simplices with normalized
/// volume in `2..=vmax`, via the Hermite-form sweep. Pyramid classes are
/// included and flagged.
pub fn enumerate_simplices(d: usize, vmax: i64) -> Result<Vec<SimplexClass>> {
    if d == 0 || vmax < 2 {
        return Ok(Vec::new());
    }
    let mut classes: BTreeMap<GroupKey, SimplexClass> = BTreeMap::new();
    let mut generated = vec![0i64; (vmax + 1) as usize];
    let mut diag = vec![1i64; d];
    sweep_diagonals(d, 0, vmax, &mut diag, &mut |diag| {
        let m: i64 = diag.iter().product();
        let mut digits = Vec::new();
        for i in 0..d {
            for j in 0..i {
                // column operations reduce row i's off-diagonal entries
                // modulo the diagonal entry of that row
                digits.push((i, j, diag[i]));
            }
        }
        let mut value = vec![0i64; digits.len()];
        loop {
            generated[m as usize] += 1;
            let mut verts = vec![vec![0i64; d]];
            let mut rows = vec![vec![0i64; d]; d];
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] = diag[i];
            }
            for (pos, &(i, j, _)) in digits.iter().enumerate() {
                rows[i][j] = value[pos];
            }
            verts.extend(rows);
            let simplex = LatticePolytope::new(d, verts)?;
            let group = lambda_of_simplex(&simplex)?;
            let key = group_key(&group)?;
            if !classes.contains_key(&key) {
                assert_reroot_invariance(&simplex, &key)?;
                classes.insert(
                    key.clone(),
                    SimplexClass {
                        dim: d,
                        volume: group.order() as i64,
                        exponents: exponents_of(&group),
                        key,
                        representative: simplex,
                        is_pyramid: !group.zero_columns().is_empty(),
                    },
                );
            }
            // mixed-radix increment over the below-diagonal digits
            let mut carry = true;
            for (pos, &(_, _, radix)) in digits.iter().enumerate() {
                if !carry {
                    break;
                }
                value[pos] += 1;
                if value[pos] < radix {
                    carry = false;
                } else {
                    value[pos] = 0;
                }
            }
            if carry {
                break;
            }
        }
        Ok(())
    })?;
    // generator self-check against the closed-form matrix count
    for m in 2..=vmax {
        let expect = hnf_matrix_count(d, m);
        if generated[m as usize] != expect {
            return Err(Error::InconsistentCounts(format!(
                "hermite sweep generated {} matrices of determinant {m}, expected {expect}",
                generated[m as usize]
            )));
        }
    }
    Ok(classes.into_values().collect())
}

fn sweep_diagonals(
    d: usize,
    pos: usize,
    budget: i64,
    diag: &mut Vec<i64>,
    f: &mut impl FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    if pos == d {
        if diag.iter().product::<i64>() >= 2 {
            f(diag)?;
        }
        return Ok(());
    }
    let mut v = 1;
    while v <= budget {
        diag[pos] = v;
        sweep_diagonals(d, pos + 1, budget / v, diag, f)?;
        v += 1;
    }
    diag[pos] = 1;
    Ok(())
}

/// The canonical form of a simplex class must not depend on which vertex
/// sits at the origin; recompute it with each vertex translated there.
fn assert_reroot_invariance(simplex: &LatticePolytope, key: &GroupKey) -> Result<()> {
    for v in simplex.vertices().to_vec() {
        let shift: Vec<i64> = v.iter().map(|x| -x).collect();
        let moved = simplex.translate(&shift)?;
        let k = group_key(&lambda_of_simplex(&moved)?)?;
        if &k != key {
            return Err(Error::InconsistentCounts(
                "group canonical form changed under re-rooting".into(),
            ));
        }
    }
    Ok(())
}

/// Group-pattern sweep: canonical keys of all non-pyramid quotient groups on
/// `d + 1` columns with order in `2..=vmax`, enumerated by plain modular
/// arithmetic (no polytopes involved). Requires `vmax <= 4`.
pub fn enumerate_groups(d: usize, vmax: i64) -> Result<BTreeSet<GroupKey>> {
    if vmax > 4 {
        return Err(Error::BadInput(format!(
            "group sweep covers orders 2..=4, got vmax {vmax}"
        )));
    }
    let cols = d + 1;
    let mut keys = BTreeSet::new();
    if vmax >= 2 {
        for g in sweep_order2(cols)? {
            keys.insert(group_key(&g)?);
        }
    }
    if vmax >= 3 {
        for g in sweep_order3(cols)? {
            keys.insert(group_key(&g)?);
        }
    }
    if vmax >= 4 {
        for g in sweep_cyclic4(cols)? {
            keys.insert(group_key(&g)?);
        }
        for g in sweep_klein4(cols)? {
            keys.insert(group_key(&g)?);
        }
    }
    Ok(keys)
}

/// Non-pyramid order-2 groups: a single residue-1/2 pattern with no zero
/// coordinate and integral height.
fn sweep_order2(cols: usize) -> Result<Vec<LambdaGroup>> {
    let mut out = Vec::new();
    // alphabet {1/2} on every coordinate; height integrality means an even
    // coordinate count
    if cols % 2 == 0 {
        let g = vec![1i64; cols];
        out.push(LambdaGroup::new(cols, 2, vec![vec![0; cols], g])?);
    }
    Ok(out)
}

/// Non-pyramid order-3 groups: generators over {1/3, 2/3} with digit sum
/// divisible by 3.
fn sweep_order3(cols: usize) -> Result<Vec<LambdaGroup>> {
    let mut out = Vec::new();
    for pattern in 0..(1u64 << cols) {
        let g: Vec<i64> = (0..cols)
            .map(|i| if pattern >> i & 1 == 1 { 2 } else { 1 })
            .collect();
        if g.iter().sum::<i64>() % 3 != 0 {
            continue;
        }
        let g2: Vec<i64> = g.iter().map(|x| 2 * x % 3).collect();
        out.push(LambdaGroup::new(cols, 3, vec![vec![0; cols], g, g2])?);
    }
    Ok(out)
}

/// Non-pyramid cyclic order-4 groups: generators over {1/4, 1/2, 3/4} with
/// digit sum divisible by 4 and at least one odd digit.
fn sweep_cyclic4(cols: usize) -> Result<Vec<LambdaGroup>> {
    let mut out = Vec::new();
    let mut g = vec![1i64; cols];
    loop {
        if g.iter().sum::<i64>() % 4 == 0 && g.iter().any(|&x| x % 2 == 1) {
            let elements: Vec<Vec<i64>> = (0..4)
                .map(|k| g.iter().map(|&x| k * x % 4).collect())
                .collect();
            out.push(LambdaGroup::new(cols, 4, elements)?);
        }
        let mut carry = true;
        for slot in g.iter_mut() {
            if !carry {
                break;
            }
            *slot += 1;
            if *slot <= 3 {
                carry = false;
            } else {
                *slot = 1;
            }
        }
        if carry {
            return Ok(out);
        }
    }
}

/// Non-pyramid Klein four-groups: two distinct order-2 patterns of even
/// weight whose supports cover every column.
fn sweep_klein4(cols: usize) -> Result<Vec<LambdaGroup>> {
    let mut out = Vec::new();
    let full = (1u64 << cols) - 1;
    for s1 in 1..=full {
        if (s1.count_ones() % 2) != 0 {
            continue;
        }
        for s2 in (s1 + 1)..=full {
            if (s2.count_ones() % 2) != 0 || s1 | s2 != full {
                continue;
            }
            let to_vec = |mask: u64| -> Vec<i64> {
                (0..cols).map(|i| (mask >> i & 1) as i64).collect()
            };
            let g3 = s1 ^ s2;
            if g3 == 0 {
                continue;
            }
            out.push(LambdaGroup::new(
                cols,
                2,
                vec![vec![0; cols], to_vec(s1), to_vec(s2), to_vec(g3)],
            )?);
        }
    }
    Ok(out)
}

/// The quotient group of a parametric simplex instance, built directly from
/// its block sizes rather than from the simplex.
pub fn group_of_instance(family: FamilyId, params: &[i64]) -> Result<LambdaGroup> {
    // validate parameters exactly as construction does
    make_simplex(family, params)?;
    let s = |x: i64| -> Result<usize> {
        usize::try_from(x).map_err(|_| Error::BadGroupParams(format!("negative block size {x}")))
    };
    match (family, params) {
        (FamilyId::Delta2, [i1]) => build_order2(s(2 * i1)?),
        (FamilyId::Delta3, [i1, i2]) => build_order3(s(-i1 + 2 * i2)?, s(2 * i1 - i2)?),
        (FamilyId::Delta41, [i1, i2, i3]) => {
            build_cyclic4(s(-i1 + i2 + i3)?, s(i1 - 2 * i2 + i3)?, s(i1 + i2 - i3)?)
        }
        (FamilyId::Delta42, [i1, i2, i3]) => {
            build_cyclic4(s(i1 - i2 + i3)?, s(-2 * i1 + i2 + i3)?, s(i1 + i2 - i3)?)
        }
        (FamilyId::Delta43, [i1, i2, i3]) => {
            build_klein4(s(-i1 + i2 + i3)?, s(i1 - i2 + i3)?, s(i1 + i2 - i3)?)
        }
        _ => Err(Error::BadInput(format!("{family} is not a simplex family"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossValidation {
    pub dim: usize,
    /// Non-pyramid classes found by the Hermite sweep.
    pub hermite_classes: usize,
    /// Classes found by the direct group sweep.
    pub group_classes: usize,
    /// Parametric family instances of this exact dimension.
    pub parametric_instances: usize,
    pub agree: bool,
}

/// Runs both enumeration pipelines plus the parametric construction at exact
/// dimension `d` and volume at most `vmax`, and compares the three canonical
/// class sets.
pub fn cross_validate(d: usize, vmax: i64) -> Result<CrossValidation> {
    let hermite: BTreeMap<GroupKey, SimplexClass> = enumerate_simplices(d, vmax)?
        .into_iter()
        .filter(|c| !c.is_pyramid)
        .map(|c| (c.key.clone(), c))
        .collect();
    let groups = enumerate_groups(d, vmax)?;
    let mut parametric: BTreeSet<GroupKey> = BTreeSet::new();
    let mut parametric_instances = 0usize;
    for (family, params) in table1_instances(d) {
        let g = group_of_instance(family, &params)?;
        if g.dim() != d {
            continue; // instance lives in a lower dimension
        }
        parametric_instances += 1;
        if !parametric.insert(group_key(&g)?) {
            return Err(Error::InconsistentCounts(format!(
                "two parametric instances share a class at dimension {d}"
            )));
        }
    }
    let hermite_keys: BTreeSet<GroupKey> = hermite.keys().cloned().collect();
    let agree = hermite_keys == groups && groups == parametric;
    Ok(CrossValidation {
        dim: d,
        hermite_classes: hermite.len(),
        group_classes: groups.len(),
        parametric_instances,
        agree,
    })
}

/// (volume, exponent multiset) pairs realized by a non-pyramid simplex of
/// exact dimension `d`.
pub fn achieved_exponents(d: usize, vmax: i64) -> Result<BTreeSet<(i64, Vec<i64>)>> {
    Ok(enumerate_simplices(d, vmax)?
        .into_iter()
        .filter(|c| !c.is_pyramid)
        .map(|c| (c.volume, c.exponents))
        .collect())
}
