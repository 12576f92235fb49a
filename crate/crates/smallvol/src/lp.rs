//! Minimal exact-rational simplex solver used for hull membership tests.
//!
//! Problems here are tiny (a handful of rows, at most ~20 columns), so a
//! dense tableau with Bland's rule is plenty: exact, cycle-free, no
//! tolerances anywhere.

use crate::arith::Rat;
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    Infeasible,
    Optimal { value: Rat, solution: Vec<Rat> },
    Unbounded,
}

/// Maximize `c·z` subject to `A z = b`, `z >= 0`.
pub(crate) fn solve_standard(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> Result<LpOutcome> {
    let m = a.len();
    let n = if m == 0 { c.len() } else { a[0].len() };
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);
    debug_assert_eq!(c.len(), n);

    // tableau with artificial columns n..n+m; last column is the rhs
    let width = n + m + 1;
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Rat::ZERO; width];
        let flip = b[i] < Rat::ZERO;
        for j in 0..n {
            row[j] = if flip { a[i][j].neg() } else { a[i][j] };
        }
        row[n + i] = Rat::ONE;
        row[width - 1] = if flip { b[i].neg() } else { b[i] };
        tab.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // phase one: maximize -sum(artificials)
    let mut obj = vec![Rat::ZERO; width];
    for j in n..n + m {
        obj[j] = Rat::int(-1);
    }
    price_out(&mut obj, &tab, &basis)?;
    run_simplex(&mut tab, &mut basis, &mut obj, n + m)?;
    if obj[width - 1].neg() != Rat::ZERO {
        return Ok(LpOutcome::Infeasible);
    }
    // drive leftover artificials out of the basis, dropping redundant rows
    let mut keep = vec![true; m];
    for i in 0..m {
        if basis[i] >= n {
            let piv = (0..n).find(|&j| !tab[i][j].is_zero());
            match piv {
                Some(j) => pivot(&mut tab, &mut basis, &mut obj, i, j)?,
                None => keep[i] = false, // redundant constraint
            }
        }
    }
    let (mut tab, mut basis): (Vec<_>, Vec<_>) = {
        let mut t = Vec::new();
        let mut bs = Vec::new();
        for i in 0..m {
            if keep[i] {
                t.push(tab[i].clone());
                bs.push(basis[i]);
            }
        }
        (t, bs)
    };

    // phase two on the real objective, artificial columns frozen
    let mut obj = vec![Rat::ZERO; width];
    obj[..n].copy_from_slice(c);
    price_out(&mut obj, &tab, &basis)?;
    if !run_simplex(&mut tab, &mut basis, &mut obj, n)? {
        return Ok(LpOutcome::Unbounded);
    }
    let mut solution = vec![Rat::ZERO; n];
    for (i, &bi) in basis.iter().enumerate() {
        if bi < n {
            solution[bi] = tab[i][width - 1];
        }
    }
    Ok(LpOutcome::Optimal { value: obj[width - 1].neg(), solution })
}

/// Reduce the objective row against the current basic columns.
fn price_out(obj: &mut [Rat], tab: &[Vec<Rat>], basis: &[usize]) -> Result<()> {
    for (i, &bi) in basis.iter().enumerate() {
        if !obj[bi].is_zero() {
            let f = obj[bi];
            for j in 0..obj.len() {
                obj[j] = obj[j].sub(f.mul(tab[i][j])?)?;
            }
        }
    }
    Ok(())
}

/// Bland's rule; columns `>= limit` are never entered. Returns false when the
/// objective is unbounded.
fn run_simplex(
    tab: &mut Vec<Vec<Rat>>,
    basis: &mut Vec<usize>,
    obj: &mut [Rat],
    limit: usize,
) -> Result<bool> {
    let width = obj.len();
    loop {
        let enter = (0..limit).find(|&j| obj[j] > Rat::ZERO);
        let Some(e) = enter else { return Ok(true) };
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..tab.len() {
            if tab[i][e] > Rat::ZERO {
                let ratio = tab[i][width - 1].div(tab[i][e])?;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((l, _)) = leave else { return Ok(false) };
        pivot(tab, basis, obj, l, e)?;
    }
}

fn pivot(
    tab: &mut [Vec<Rat>],
    basis: &mut [usize],
    obj: &mut [Rat],
    row: usize,
    col: usize,
) -> Result<()> {
    let width = obj.len();
    let inv = Rat::ONE.div(tab[row][col])?;
    for j in 0..width {
        tab[row][j] = tab[row][j].mul(inv)?;
    }
    for i in 0..tab.len() {
        if i != row && !tab[i][col].is_zero() {
            let f = tab[i][col];
            for j in 0..width {
                tab[i][j] = tab[i][j].sub(f.mul(tab[row][j])?)?;
            }
        }
    }
    if !obj[col].is_zero() {
        let f = obj[col];
        for j in 0..width {
            obj[j] = obj[j].sub(f.mul(tab[row][j])?)?;
        }
    }
    basis[row] = col;
    Ok(())
}

/// Is `x` in the dilate `n * conv(vertices)`? Exact feasibility of
/// `Σ c_i v_i = x`, `Σ c_i = n`, `c_i >= 0`.
pub(crate) fn in_hull(vertices: &[Vec<i64>], x: &[i64], n: i64) -> Result<bool> {
    let d = x.len();
    let k = vertices.len();
    let mut a = vec![vec![Rat::ZERO; k]; d + 1];
    for (j, v) in vertices.iter().enumerate() {
        for (i, &vi) in v.iter().enumerate() {
            a[i][j] = Rat::int(vi);
        }
        a[d][j] = Rat::ONE;
    }
    let mut b: Vec<Rat> = x.iter().map(|&xi| Rat::int(xi)).collect();
    b.push(Rat::int(n));
    let c = vec![Rat::ZERO; k];
    Ok(!matches!(solve_standard(&a, &b, &c)?, LpOutcome::Infeasible))
}

/// Is `x` in the relative interior of `n * conv(vertices)`? Maximizes the
/// minimum barycentric weight; relative-interior points are exactly the
/// strictly positive combinations.
pub(crate) fn in_hull_relint(vertices: &[Vec<i64>], x: &[i64], n: i64) -> Result<bool> {
    let d = x.len();
    let k = vertices.len();
    // variables: y_1..y_k >= 0 and eps >= 0, with c_i = y_i + eps
    let mut a = vec![vec![Rat::ZERO; k + 1]; d + 1];
    for (j, v) in vertices.iter().enumerate() {
        for (i, &vi) in v.iter().enumerate() {
            a[i][j] = Rat::int(vi);
        }
        a[d][j] = Rat::ONE;
    }
    for i in 0..d {
        let mut s: i64 = 0;
        for v in vertices {
            s = crate::arith::add(s, v[i])?;
        }
        a[i][k] = Rat::int(s);
    }
    a[d][k] = Rat::int(k as i64);
    let mut b: Vec<Rat> = x.iter().map(|&xi| Rat::int(xi)).collect();
    b.push(Rat::int(n));
    let mut c = vec![Rat::ZERO; k + 1];
    c[k] = Rat::ONE;
    match solve_standard(&a, &b, &c)? {
        LpOutcome::Infeasible => Ok(false),
        LpOutcome::Unbounded => Ok(true), // cannot happen: eps <= n/k
        LpOutcome::Optimal { value, .. } => Ok(value > Rat::ZERO),
    }
}
