//! The catalog of normalized-volume-at-most-4 building blocks and the
//! classifier that reduces an arbitrary lattice polytope to one of them.
//!
//! The catalog has three parts:
//! * five parametric simplex families (`Δ2`, `Δ3`, `Δ41`, `Δ42`, `Δ43`) that
//!   realize every feasible exponent tuple without being lattice pyramids,
//! * twenty-four sporadic non-simplices whose lattice points span the full
//!   lattice (`P*`, `Q*`, `R*`, `S*` ids),
//! * four parametric non-spanning non-simplices (`A4_1`, `A4_2`, `A4_3`, `B4`).
//!
//! `classify` inverts the construction: normalize, peel pyramid layers, then
//! identify the core either through its quotient group (simplices) or through
//! explicit equivalence search (non-simplices), returning a replayable witness.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ehrhart::{delta_of_polytope, DeltaVector};
use crate::equiv::{are_equivalent, EquivOutcome};
use crate::error::{Error, Result};
use crate::lambda::{lambda_of_simplex, simplex_equivalent};
use crate::matrix::{left_kernel, smith_normal_form, IntegerMatrix};
use crate::polytope::LatticePolytope;
use crate::transform::{affine_lattice_normalize, UnimodularMap};
use crate::{arith, polytope};

fn to_dim(x: i64) -> Result<usize> {
    usize::try_from(x).map_err(|_| Error::BadInput(format!("dimension {x} out of range")))
}

/// First `rank` columns of a change-of-basis matrix: the coordinates that
/// survive projection onto the affine lattice.
fn truncate_cols(m: &IntegerMatrix, rank: usize) -> IntegerMatrix {
    let mut out = IntegerMatrix::zero(m.nrows(), rank);
    for i in 0..m.nrows() {
        for j in 0..rank {
            out.set(i, j, m.get(i, j));
        }
    }
    out
}

/// Node budget used by `classify` when the caller does not supply one.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    Delta2,
    Delta3,
    Delta41,
    Delta42,
    Delta43,
    P2,
    P31,
    P32,
    Q31,
    Q32,
    P41,
    P42,
    P43,
    P44,
    Q41,
    Q42,
    Q43,
    Q44,
    Q45,
    Q46,
    Q47,
    Q48,
    Q49,
    R41,
    R42,
    S41,
    S42,
    S43,
    S44,
    A41,
    A42,
    A43,
    B4,
}

use FamilyId::*;

impl FamilyId {
    pub fn all() -> [FamilyId; 33] {
        [
            Delta2, Delta3, Delta41, Delta42, Delta43, P2, P31, P32, Q31, Q32, P41, P42, P43,
            P44, Q41, Q42, Q43, Q44, Q45, Q46, Q47, Q48, Q49, R41, R42, S41, S42, S43, S44,
            A41, A42, A43, B4,
        ]
    }

    pub fn simplex_families() -> [FamilyId; 5] {
        [Delta2, Delta3, Delta41, Delta42, Delta43]
    }

    pub fn table2_ids() -> [FamilyId; 24] {
        [
            P2, P31, P32, Q31, Q32, P41, P42, P43, P44, Q41, Q42, Q43, Q44, Q45, Q46, Q47,
            Q48, Q49, R41, R42, S41, S42, S43, S44,
        ]
    }

    pub fn table3_ids() -> [FamilyId; 4] {
        [A41, A42, A43, B4]
    }

    pub fn is_simplex_family(self) -> bool {
        matches!(self, Delta2 | Delta3 | Delta41 | Delta42 | Delta43)
    }

    pub fn is_sporadic(self) -> bool {
        Self::table2_ids().contains(&self)
    }

    pub fn is_nonspanning_family(self) -> bool {
        matches!(self, A41 | A42 | A43 | B4)
    }

    /// Names of the parameters the family expects, in flag order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Delta2 => &["i1"],
            Delta3 => &["i1", "i2"],
            Delta41 | Delta42 | Delta43 => &["i1", "i2", "i3"],
            A41 | A42 | A43 | B4 => &["k"],
            _ => &[],
        }
    }

    /// Ambient dimension of a sporadic entry.
    pub fn sporadic_dim(self) -> Option<usize> {
        Some(match self {
            P2 | P31 | P41 | P42 | Q41 | Q42 => 2,
            P32 | Q31 | P43 | Q43 | Q44 | Q45 | Q46 | R41 => 3,
            Q32 | P44 | Q47 | Q48 | R42 | S41 | S42 => 4,
            Q49 | S43 => 5,
            S44 => 6,
            _ => return None,
        })
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Delta2 => "Δ2",
            Delta3 => "Δ3",
            Delta41 => "Δ41",
            Delta42 => "Δ42",
            Delta43 => "Δ43",
            P2 => "P2",
            P31 => "P3_1",
            P32 => "P3_2",
            Q31 => "Q3_1",
            Q32 => "Q3_2",
            P41 => "P4_1",
            P42 => "P4_2",
            P43 => "P4_3",
            P44 => "P4_4",
            Q41 => "Q4_1",
            Q42 => "Q4_2",
            Q43 => "Q4_3",
            Q44 => "Q4_4",
            Q45 => "Q4_5",
            Q46 => "Q4_6",
            Q47 => "Q4_7",
            Q48 => "Q4_8",
            Q49 => "Q4_9",
            R41 => "R4_1",
            R42 => "R4_2",
            S41 => "S4_1",
            S42 => "S4_2",
            S43 => "S4_3",
            S44 => "S4_4",
            A41 => "A4_1",
            A42 => "A4_2",
            A43 => "A4_3",
            B4 => "B4",
        };
        f.write_str(s)
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        // Accept the display form, an ASCII spelling of Δ, and underscore-free
        // abbreviations, case-insensitively.
        let key: String = s
            .trim()
            .chars()
            .filter(|c| *c != '_')
            .map(|c| if c == 'Δ' || c == 'δ' { 'D' } else { c.to_ascii_uppercase() })
            .collect();
        for id in FamilyId::all() {
            let canon: String = id
                .to_string()
                .chars()
                .filter(|c| *c != '_')
                .map(|c| if c == 'Δ' { 'D' } else { c })
                .collect();
            if canon == key {
                return Ok(id);
            }
        }
        Err(Error::BadInput(format!("unknown family id {s:?}")))
    }
}

fn zeros(d: usize) -> Vec<i64> {
    vec![0; d]
}

fn unit(d: usize, i: usize) -> Vec<i64> {
    // 1-indexed coordinate
    let mut v = vec![0; d];
    v[i - 1] = 1;
    v
}

/// Adds `coef` to coordinates `lo..=hi` (1-indexed); empty when lo > hi.
fn add_range(v: &mut [i64], coef: i64, lo: i64, hi: i64) {
    let lo = lo.max(1);
    for i in lo..=hi.min(v.len() as i64) {
        v[i as usize - 1] += coef;
    }
}

fn param_err(family: FamilyId, condition: &str) -> Error {
    Error::BadGroupParams(format!("{family} requires {condition}"))
}

fn take_params<const N: usize>(family: FamilyId, params: &[i64]) -> Result<[i64; N]> {
    if params.len() != N {
        return Err(Error::BadGroupParams(format!(
            "{family} takes {N} parameter(s) ({}), got {}",
            family.param_names().join(", "),
            params.len()
        )));
    }
    let mut out = [0i64; N];
    out.copy_from_slice(params);
    Ok(out)
}

/// One of the five non-pyramid simplices realizing a feasible exponent tuple.
/// The returned simplex has dimension fixed by the family:
/// 2i1-1, i1+i2-1, i1+i3-1, i2+i3-1 and i1+i2+i3-1 respectively.
pub fn make_simplex(family: FamilyId, params: &[i64]) -> Result<LatticePolytope> {
    match family {
        Delta2 => {
            let [i1] = take_params::<1>(family, params)?;
            if i1 < 1 {
                return Err(param_err(family, "i1 >= 1"));
            }
            let d = to_dim(2 * i1 - 1)?;
            let mut verts = vec![zeros(d)];
            for i in 1..d {
                verts.push(unit(d, i));
            }
            let mut w = vec![1i64; d];
            w[d - 1] = 2;
            verts.push(w);
            LatticePolytope::new(d, verts)
        }
        Delta3 => {
            let [i1, i2] = take_params::<2>(family, params)?;
            if !(1 <= i1 && i1 <= i2) {
                return Err(param_err(family, "1 <= i1 <= i2"));
            }
            if i2 > 2 * i1 {
                return Err(param_err(family, "i2 <= 2*i1"));
            }
            let d = to_dim(i1 + i2 - 1)?;
            let mut verts = vec![zeros(d)];
            for i in 1..d {
                verts.push(unit(d, i));
            }
            let mut w = zeros(d);
            add_range(&mut w, 2, 1, -i1 + 2 * i2 - 1);
            add_range(&mut w, 1, -i1 + 2 * i2, d as i64 - 1);
            w[d - 1] = 3;
            verts.push(w);
            LatticePolytope::new(d, verts)
        }
        Delta41 => {
            let [i1, i2, i3] = take_params::<3>(family, params)?;
            if !(1 <= i1 && i1 < i2 && i2 < i3) {
                return Err(param_err(family, "1 <= i1 < i2 < i3"));
            }
            if 2 * i2 > i1 + i3 {
                return Err(param_err(family, "2*i2 <= i1 + i3"));
            }
            if i3 > i1 + i2 {
                return Err(param_err(family, "i3 <= i1 + i2"));
            }
            let d = to_dim(i1 + i3 - 1)?;
            let mut verts = vec![zeros(d)];
            for i in 1..d {
                verts.push(unit(d, i));
            }
            let mut w = zeros(d);
            add_range(&mut w, 2, 1, i1 - 2 * i2 + i3);
            add_range(&mut w, 1, i1 - 2 * i2 + i3 + 1, 2 * i1 - i2);
            add_range(&mut w, 3, 2 * i1 - i2 + 1, d as i64 - 1);
            w[d - 1] = 4;
            verts.push(w);
            LatticePolytope::new(d, verts)
        }
        Delta42 => {
            let [i1, i2, i3] = take_params::<3>(family, params)?;
            if !(1 <= i1 && i1 <= i2 && i2 <= i3) {
                return Err(param_err(family, "1 <= i1 <= i2 <= i3"));
            }
            if i3 > i1 + i2 {
                return Err(param_err(family, "i3 <= i1 + i2"));
            }
            let d = to_dim(i2 + i3 - 1)?;
            let mut verts = vec![zeros(d)];
            for i in 1..d {
                verts.push(unit(d, i));
            }
            let mut w = zeros(d);
            add_range(&mut w, 2, 1, -2 * i1 + i2 + i3);
            add_range(&mut w, 1, -2 * i1 + i2 + i3 + 1, (-i1 + 2 * i2).min(d as i64 - 1));
            add_range(&mut w, 3, -i1 + 2 * i2 + 1, d as i64 - 1);
            w[d - 1] = 4;
            verts.push(w);
            LatticePolytope::new(d, verts)
        }
        Delta43 => {
            let [i1, i2, i3] = take_params::<3>(family, params)?;
            if !(1 <= i1 && i1 <= i2 && i2 <= i3) {
                return Err(param_err(family, "1 <= i1 <= i2 <= i3"));
            }
            if i3 > i1 + i2 {
                return Err(param_err(family, "i3 <= i1 + i2"));
            }
            let d = to_dim(i1 + i2 + i3 - 1)?;
            let mut verts = vec![zeros(d)];
            for i in 1..=d - 2 {
                verts.push(unit(d, i));
            }
            let mut v1 = zeros(d);
            add_range(&mut v1, 1, -i1 + i2 + i3, d as i64 - 2);
            v1[d - 2] = 2;
            verts.push(v1);
            let mut v2 = zeros(d);
            add_range(&mut v2, 1, 1, -i1 + i2 + i3 - 1);
            add_range(&mut v2, 1, 2 * i3 - 1, d as i64 - 2);
            v2[d - 1] = 2;
            verts.push(v2);
            LatticePolytope::new(d, verts)
        }
        other => Err(Error::BadInput(format!("{other} is not a simplex family"))),
    }
}

/// One of the 24 sporadic spanning non-simplices.
pub fn make_sporadic(id: FamilyId) -> Result<LatticePolytope> {
    let rows: &[&[i64]] = match id {
        P2 => &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]],
        P31 => &[&[0, 0], &[2, 0], &[0, 1], &[1, 1]],
        P32 => &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 0, 1], &[0, 1, 1]],
        Q31 => &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -2]],
        Q32 => &[
            &[0, 0, 0, 0],
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[-1, -1, 1, 1],
        ],
        P41 => &[&[0, 0], &[2, 0], &[0, 1], &[2, 1]],
        P42 => &[&[0, 0], &[3, 0], &[1, 1], &[2, 1]],
        P43 => &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1], &[0, 0, 2]],
        P44 => &[
            &[0, 0, 0, 0],
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[1, 1, 0, 0],
            &[1, 0, 1, 0],
            &[1, 0, 0, 1],
        ],
        Q41 => &[&[1, 0], &[0, -1], &[1, -1], &[-1, 1]],
        Q42 => &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]],
        Q43 => &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[0, 0, -1]],
        Q44 => &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 2]],
        Q45 => &[
            &[0, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, 1, 0],
            &[1, 1, 1],
        ],
        Q46 => &[
            &[0, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, 1, 0],
            &[1, 1, -1],
        ],
        Q47 => &[
            &[0, 0, 0, 0],
            &[2, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 1, 0, 1],
            &[0, 0, 1, 1],
            &[0, 1, 1, 1],
        ],
        Q48 => &[
            &[0, 0, 0, 0],
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[1, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[0, 0, 1, 1],
        ],
        Q49 => &[
            &[0, 0, 0, 0, 0],
            &[1, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0],
            &[1, 1, 0, 0, 0],
            &[0, 0, 0, 0, 1],
            &[0, 0, 1, 0, 1],
            &[0, 0, 0, 1, 1],
            &[0, 0, 1, 1, 1],
        ],
        R41 => &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -3]],
        R42 => &[
            &[0, 0, 0, 0],
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[-2, -1, 1, 1],
        ],
        S41 => &[
            &[0, 0, 0, 0],
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[-1, -1, -1, 1],
        ],
        S42 => &[
            &[0, 0, 0, 0],
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[-1, -1, -1, 2],
        ],
        S43 => &[
            &[0, 0, 0, 0, 0],
            &[1, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0],
            &[0, 0, 1, 0, 0],
            &[0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 1],
            &[-2, -1, 1, 1, 1],
        ],
        S44 => &[
            &[0, 0, 0, 0, 0, 0],
            &[1, 0, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0],
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 0, 1],
            &[-1, -1, -1, 1, 1, 1],
        ],
        other => return Err(Error::BadInput(format!("{other} is not a sporadic entry"))),
    };
    LatticePolytope::from_slices(rows[0].len(), rows)
}

/// One of the four non-spanning families at its parameter `k >= 2`.
pub fn make_nonspanning(id: FamilyId, k: i64) -> Result<LatticePolytope> {
    if k < 2 {
        return Err(param_err(id, "k >= 2"));
    }
    let (d, tail_cut, last): (i64, i64, fn(usize) -> Vec<i64>) = match id {
        A41 => (2 * k, 2, |d| {
            let mut v = zeros(d);
            v[0] = 1;
            v[d - 2] = -1;
            v
        }),
        A42 => (2 * k + 1, 3, |d| {
            let mut v = zeros(d);
            v[d - 3] = 1;
            v[d - 2] = 1;
            v
        }),
        A43 => (2 * k + 2, 4, |d| {
            let mut v = zeros(d);
            v[d - 4] = -1;
            v[d - 3] = 1;
            v[d - 2] = 1;
            v
        }),
        B4 => (2 * k, 2, |d| {
            let mut v = zeros(d);
            v[0] = -1;
            v[d - 2] = 1;
            v
        }),
        other => return Err(Error::BadInput(format!("{other} takes no parameter k"))),
    };
    let d = to_dim(d)?;
    let mut verts = vec![zeros(d)];
    for i in 1..d {
        verts.push(unit(d, i));
    }
    let mut v = zeros(d);
    add_range(&mut v, 1, 1, d as i64 - tail_cut);
    v[d - 1] = 2;
    verts.push(v);
    verts.push(last(d));
    LatticePolytope::new(d, verts)
}

/// Uniform constructor: simplex families take the exponent tuple, sporadic
/// entries take no parameters, non-spanning families take `[k]`.
pub fn make_polytope(family: FamilyId, params: &[i64]) -> Result<LatticePolytope> {
    if family.is_simplex_family() {
        make_simplex(family, params)
    } else if family.is_sporadic() {
        if !params.is_empty() {
            return Err(Error::BadGroupParams(format!("{family} takes no parameters")));
        }
        make_sporadic(family)
    } else {
        let [k] = take_params::<1>(family, params)?;
        make_nonspanning(family, k)
    }
}

/// The delta-vector each catalog entry is claimed to have, at full length
/// (dimension + 1 coefficients).
pub fn expected_delta(family: FamilyId, params: &[i64]) -> Result<DeltaVector> {
    let exps: Vec<i64>;
    let d: i64;
    match family {
        Delta2 => {
            let [i1] = take_params::<1>(family, params)?;
            exps = vec![i1];
            d = 2 * i1 - 1;
        }
        Delta3 => {
            let [i1, i2] = take_params::<2>(family, params)?;
            exps = vec![i1, i2];
            d = i1 + i2 - 1;
        }
        Delta41 => {
            let [i1, i2, i3] = take_params::<3>(family, params)?;
            exps = vec![i1, i2, i3];
            d = i1 + i3 - 1;
        }
        Delta42 => {
            let [i1, i2, i3] = take_params::<3>(family, params)?;
            exps = vec![i1, i2, i3];
            d = i2 + i3 - 1;
        }
        Delta43 => {
            let [i1, i2, i3] = take_params::<3>(family, params)?;
            exps = vec![i1, i2, i3];
            d = i1 + i2 + i3 - 1;
        }
        A41 | A42 | A43 => {
            let [k] = take_params::<1>(family, params)?;
            exps = vec![1, k, k + 1];
            d = match family {
                A41 => 2 * k,
                A42 => 2 * k + 1,
                _ => 2 * k + 2,
            };
        }
        B4 => {
            let [k] = take_params::<1>(family, params)?;
            exps = vec![1, k, k];
            d = 2 * k;
        }
        sporadic => {
            take_params::<0>(family, params)?;
            d = sporadic.sporadic_dim().unwrap() as i64;
            exps = match sporadic {
                P2 => vec![1],
                P31 | P32 => vec![1, 1],
                Q31 | Q32 => vec![1, 2],
                P41 | P42 | P43 | P44 => vec![1, 1, 1],
                Q41 | Q42 | Q43 | Q44 | Q45 | Q46 | Q47 | Q48 | Q49 => vec![1, 1, 2],
                R41 | R42 => vec![1, 2, 2],
                _ => vec![1, 2, 3], // S-entries
            };
        }
    }
    let mut coeffs = vec![0i64; to_dim(d)? + 1];
    coeffs[0] = 1;
    for e in exps {
        coeffs[to_dim(e)?] += 1;
    }
    DeltaVector::new(coeffs)
}

/// All valid simplex-family parameter tuples with dimension at most `dmax`.
pub fn table1_instances(dmax: usize) -> Vec<(FamilyId, Vec<i64>)> {
    let dmax = dmax as i64;
    let mut out = Vec::new();
    for i1 in 1..=(dmax + 1) / 2 {
        out.push((Delta2, vec![i1]));
    }
    for i1 in 1..=dmax {
        for i2 in i1..=(2 * i1).min(dmax + 1 - i1) {
            out.push((Delta3, vec![i1, i2]));
        }
    }
    for i1 in 1..=dmax {
        for i2 in i1..=dmax {
            for i3 in i2..=dmax {
                if i3 > i1 + i2 {
                    continue;
                }
                if i1 < i2 && i2 < i3 && 2 * i2 <= i1 + i3 && i1 + i3 - 1 <= dmax {
                    out.push((Delta41, vec![i1, i2, i3]));
                }
                if i2 + i3 - 1 <= dmax {
                    out.push((Delta42, vec![i1, i2, i3]));
                }
                if i1 + i2 + i3 - 1 <= dmax {
                    out.push((Delta43, vec![i1, i2, i3]));
                }
            }
        }
    }
    out
}

/// Candidate polytopes in the elimination that pins down the 1+t+t^k+t^(k+1)
/// chain: eleven d+2 vertex polytopes, of which numbers 1, 6 and 11 are the
/// `A4_1`, `A4_2` and `A4_3` catalog representatives.
pub fn a_candidate(index: usize, k: i64) -> Result<LatticePolytope> {
    if k < 2 {
        return Err(Error::BadGroupParams("candidate chains need k >= 2".into()));
    }
    let (d, cut): (i64, i64) = match index {
        1..=4 => (2 * k, 2),
        5..=10 => (2 * k + 1, 3),
        11 => (2 * k + 2, 4),
        _ => return Err(Error::BadInput(format!("candidate index {index} out of range 1..=11"))),
    };
    let d = to_dim(d)?;
    let mut verts = vec![zeros(d)];
    for i in 1..d {
        verts.push(unit(d, i));
    }
    let mut v = zeros(d);
    add_range(&mut v, 1, 1, d as i64 - cut);
    v[d - 1] = 2;
    verts.push(v.clone());
    let mut w = zeros(d);
    match index {
        1 => {
            w[0] = 1;
            w[d - 2] = -1;
        }
        2 => {
            w[0] = 1;
            w[1] = 1;
            w[d - 2] = -1;
        }
        3 => {
            add_range(&mut w, 1, 1, d as i64 - 2);
            w[d - 2] = -1;
            w[d - 1] = 2;
        }
        4 => {
            w[0] = 2;
            add_range(&mut w, 1, 2, d as i64 - 2);
            w[d - 2] = -1;
            w[d - 1] = 2;
        }
        5 => {
            add_range(&mut w, -1, 1, d as i64 - 3);
            w[d - 3] = 1;
            w[d - 2] = 1;
            w[d - 1] = -2;
        }
        6 => {
            w[d - 3] = 1;
            w[d - 2] = 1;
        }
        7 => {
            w[0] = -1;
            w[d - 3] = 1;
            w[d - 2] = 1;
        }
        8 => {
            w[d - 3] = -1;
            w[d - 2] = 1;
        }
        9 => {
            w[0] = 1;
            w[d - 3] = -1;
            w[d - 2] = 1;
        }
        10 => {
            add_range(&mut w, 1, 1, d as i64 - 3);
            w[d - 3] = -1;
            w[d - 2] = 1;
            w[d - 1] = 2;
        }
        _ => {
            w[d - 4] = -1;
            w[d - 3] = 1;
            w[d - 2] = 1;
        }
    }
    verts.push(w);
    LatticePolytope::new(d, verts)
}

/// Candidate polytopes in the elimination for the 1+t+2t^k chain: seven
/// d+2 vertex polytopes in dimension 2k, of which number 5 is `B4`.
pub fn b_candidate(index: usize, k: i64) -> Result<LatticePolytope> {
    if k < 2 {
        return Err(Error::BadGroupParams("candidate chains need k >= 2".into()));
    }
    if !(1..=7).contains(&index) {
        return Err(Error::BadInput(format!("candidate index {index} out of range 1..=7")));
    }
    let d = to_dim(2 * k)?;
    let mut verts = vec![zeros(d)];
    for i in 1..d {
        verts.push(unit(d, i));
    }
    // Candidate 7 is printed in the source with the base vertex sum ending
    // at d-3, but that polytope has volume 6 and cannot be equivalent to
    // the representative; its own derivation uses the standard base ending
    // at d-2, which we follow here.
    let mut v = zeros(d);
    add_range(&mut v, 1, 1, d as i64 - 2);
    v[d - 1] = 2;
    verts.push(v);
    let mut w = zeros(d);
    match index {
        1 => {
            add_range(&mut w, -1, 1, d as i64 - 3);
            w[d - 2] = 1;
            w[d - 1] = -2;
        }
        2 => {
            add_range(&mut w, -1, 1, d as i64 - 2);
            w[d - 2] = 1;
            w[d - 1] = -2;
        }
        3 => {
            w[0] = 1;
            w[d - 2] = 1;
        }
        4 => {
            add_range(&mut w, 1, 1, d as i64 - 1);
            w[d - 1] = 2;
        }
        5 => {
            w[0] = -1;
            w[d - 2] = 1;
        }
        6 => {
            w[0] = -1;
            w[1] = 1;
            w[d - 2] = 1;
        }
        _ => {
            add_range(&mut w, 1, 2, d as i64 - 1);
            w[d - 1] = 2;
        }
    }
    verts.push(w);
    LatticePolytope::new(d, verts)
}

/// conv(P x {0}, (0,..,0,1)): raises dimension by one, preserves the
/// delta-vector.
pub fn pyramid(p: &LatticePolytope) -> Result<LatticePolytope> {
    let d = p.dim();
    let mut verts: Vec<Vec<i64>> = Vec::with_capacity(p.n_vertices() + 1);
    for v in p.vertices() {
        let mut w = v.clone();
        w.push(0);
        verts.push(w);
    }
    let mut apex = vec![0; d + 1];
    apex[d] = 1;
    verts.push(apex);
    LatticePolytope::new(d + 1, verts)
}

/// Index of the lex-first vertex that is an apex over the hyperplane spanned
/// by the remaining vertices at lattice distance 1, if any.
pub fn pyramid_apex(p: &LatticePolytope) -> Result<Option<usize>> {
    let d = p.dim();
    if p.affine_rank()? != d {
        return Err(Error::NotFullDimensional { dim: d, rank: p.affine_rank()? });
    }
    if d == 0 {
        return Ok(None);
    }
    if d == 1 {
        let (lo, hi) = p.bounding_box();
        return Ok(if hi[0] - lo[0] == 1 { Some(0) } else { None });
    }
    'apex: for (i, v) in p.vertices().iter().enumerate() {
        let others: Vec<&Vec<i64>> = p
            .vertices()
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, w)| w)
            .collect();
        let mut diffs = Vec::with_capacity(others.len() - 1);
        for w in &others[1..] {
            let mut row = Vec::with_capacity(d);
            for (a, b) in w.iter().zip(others[0]) {
                row.push(arith::sub(*a, *b)?);
            }
            diffs.push(row);
        }
        let e = IntegerMatrix::from_rows(&diffs)?;
        if e.rank()? != d - 1 {
            continue; // remaining vertices do not lie in a common hyperplane
        }
        let kernel = left_kernel(&e.transpose())?;
        if kernel.nrows() != 1 {
            continue;
        }
        let mut h = kernel.row(0).to_vec();
        let g = h.iter().fold(0i64, |acc, &x| arith::gcd(acc, x));
        if g > 1 {
            for x in &mut h {
                *x /= g;
            }
        }
        let c = polytope::dot(&h, others[0])?;
        for w in &others[1..] {
            if polytope::dot(&h, w)? != c {
                continue 'apex; // not actually coplanar (rank said otherwise)
            }
        }
        if (polytope::dot(&h, v)? - c).abs() == 1 {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// One stage of a classification witness. Replaying the stages on the input
/// polytope reproduces the catalog representative exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessStage {
    /// Project onto the affine lattice of the polytope: x -> (x - base) * matrix.
    Normalize { base: Vec<i64>, matrix: IntegerMatrix },
    /// Remove the apex vertex, then project the base facet one dimension down.
    StripApex { apex: Vec<i64>, base: Vec<i64>, matrix: IntegerMatrix },
    /// Apply a unimodular affine map in place.
    Map { map: UnimodularMap },
}

fn project_vertices(
    verts: &[Vec<i64>],
    base: &[i64],
    matrix: &IntegerMatrix,
) -> Result<LatticePolytope> {
    let mut rows = Vec::with_capacity(verts.len());
    for v in verts {
        if v.len() != base.len() {
            return Err(Error::DimensionMismatch { expected: base.len(), got: v.len() });
        }
        let mut diff = Vec::with_capacity(v.len());
        for (a, b) in v.iter().zip(base) {
            diff.push(arith::sub(*a, *b)?);
        }
        rows.push(matrix.apply_row(&diff)?);
    }
    LatticePolytope::new(matrix.ncols(), rows)
}

/// Applies a witness chain to a polytope.
pub fn replay_witness(p: &LatticePolytope, stages: &[WitnessStage]) -> Result<LatticePolytope> {
    let mut cur = p.clone();
    for stage in stages {
        cur = match stage {
            WitnessStage::Normalize { base, matrix } => {
                project_vertices(cur.vertices(), base, matrix)?
            }
            WitnessStage::StripApex { apex, base, matrix } => {
                let rest: Vec<Vec<i64>> =
                    cur.vertices().iter().filter(|v| *v != apex).cloned().collect();
                if rest.len() + 1 != cur.n_vertices() {
                    return Err(Error::BadInput(
                        "witness stage names an apex that is not a vertex".into(),
                    ));
                }
                project_vertices(&rest, base, matrix)?
            }
            WitnessStage::Map { map } => cur.apply(map)?,
        };
    }
    Ok(cur)
}

/// Peels pyramid layers until the core is not a pyramid. Returns the core,
/// the number of layers removed, and replayable stages.
pub fn strip_pyramids(
    p: &LatticePolytope,
) -> Result<(LatticePolytope, usize, Vec<WitnessStage>)> {
    let mut cur = p.clone();
    let mut stages = Vec::new();
    let mut layers = 0;
    while let Some(idx) = pyramid_apex(&cur)? {
        let apex = cur.vertices()[idx].clone();
        let rest: Vec<Vec<i64>> = cur
            .vertices()
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != idx)
            .map(|(_, v)| v.clone())
            .collect();
        let (projected, norm) = affine_lattice_normalize(&rest)?;
        stages.push(WitnessStage::StripApex {
            apex,
            base: norm.base().to_vec(),
            matrix: truncate_cols(norm.forward(), norm.rank()),
        });
        cur = LatticePolytope::new(norm.rank(), projected)?;
        layers += 1;
    }
    Ok((cur, layers, stages))
}

/// Whether the lattice points of P, lifted to height 1, generate the full
/// lattice Z^(dim+1). Lower-dimensional input is measured inside its own
/// affine lattice.
pub fn spans_lattice(p: &LatticePolytope) -> Result<bool> {
    let full = if p.affine_rank()? == p.dim() {
        p.clone()
    } else {
        p.normalized()?.0
    };
    let pts = full.lattice_points_in_dilate(1)?;
    let mut rows = Vec::with_capacity(pts.len());
    for pt in pts {
        let mut row = pt;
        row.push(1);
        rows.push(row);
    }
    let m = IntegerMatrix::from_rows(&rows)?;
    let divisors = smith_normal_form(&m)?.divisors();
    Ok(divisors.len() == full.dim() + 1 && divisors.iter().all(|&x| x == 1))
}

/// Largest even number of vertices (with multiplicity zero or one each) whose
/// sum is divisible by 2 in every coordinate; 0 for the empty set. Unchanged
/// under unimodular maps, translations and vertex relabeling.
pub fn half_sum_invariant(p: &LatticePolytope) -> Result<i64> {
    let d = p.dim();
    let n = p.n_vertices();
    let parities: Vec<Vec<u8>> = p
        .vertices()
        .iter()
        .map(|v| v.iter().map(|x| (x.rem_euclid(2)) as u8).collect())
        .collect();
    if d <= 64 && n <= 24 {
        let masks: Vec<u64> = parities
            .iter()
            .map(|par| {
                par.iter()
                    .enumerate()
                    .fold(0u64, |m, (i, &b)| m | ((b as u64) << i))
            })
            .collect();
        // Gray-code walk over all subsets: one XOR per step.
        let mut cur = 0u64;
        let mut chosen = 0u32;
        let mut best = 0i64;
        for i in 1u64..(1u64 << n) {
            let j = i.trailing_zeros() as usize;
            cur ^= masks[j];
            chosen ^= 1u32 << j;
            let size = chosen.count_ones();
            if cur == 0 && size % 2 == 0 {
                best = best.max(size as i64);
            }
        }
        return Ok(best);
    }
    if d <= 20 {
        // Parity-class dynamic program: dp[class][size parity] = max subset size.
        let full = 1usize << d;
        let mut dp = vec![[-1i64; 2]; full];
        dp[0][0] = 0;
        for par in &parities {
            let mask = par
                .iter()
                .enumerate()
                .fold(0usize, |m, (i, &b)| m | ((b as usize) << i));
            let old = dp.clone();
            for (p_class, sizes) in old.iter().enumerate() {
                for (s, &val) in sizes.iter().enumerate() {
                    if val < 0 {
                        continue;
                    }
                    let slot = &mut dp[p_class ^ mask][s ^ 1];
                    *slot = (*slot).max(val + 1);
                }
            }
        }
        return Ok(dp[0][0]);
    }
    Err(Error::BadInput(format!(
        "half-sum search space too large: {n} vertices in dimension {d}"
    )))
}

/// Whether some lattice polytope of dimension `d` has delta-polynomial
/// 1 + t^i1 + ... (volume `volume`, exponents sorted ascending).
///
/// The `as_printed` flag switches the volume-3 test to the commonly quoted
/// form `i2 <= floor((d+1)/2)`, which disagrees with enumeration at
/// (i1, i2, d) = (1, 2, 2); the default replaces it with `i1 + i2 <= d + 1`.
pub fn feasible_delta(volume: i64, exponents: &[i64], d: usize, as_printed: bool) -> Result<bool> {
    let d = d as i64;
    if !(1..=4).contains(&volume) {
        return Err(Error::BadInput(format!("feasibility is defined for volume 1..=4, got {volume}")));
    }
    if exponents.len() as i64 != volume - 1 {
        return Err(Error::BadInput(format!(
            "volume {volume} needs {} exponent(s), got {}",
            volume - 1,
            exponents.len()
        )));
    }
    if exponents.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::BadInput("exponents must be sorted ascending".into()));
    }
    if let Some(&e) = exponents.first() {
        if e < 1 {
            return Err(Error::BadInput("exponents must be >= 1".into()));
        }
    }
    if let Some(&e) = exponents.last() {
        if e > d {
            return Err(Error::BadInput(format!("exponent {e} exceeds dimension {d}")));
        }
    }
    Ok(match volume {
        1 => true,
        2 => 2 * exponents[0] <= d + 1,
        3 => {
            let (i1, i2) = (exponents[0], exponents[1]);
            let head = i2 <= 2 * i1;
            if as_printed {
                head && 2 * i2 <= d + 1
            } else {
                head && i1 + i2 <= d + 1
            }
        }
        _ => {
            let (i1, i2, i3) = (exponents[0], exponents[1], exponents[2]);
            i3 <= i1 + i2
                && i1 + i3 <= d + 1
                && 2 * i2 <= d + 1
                && (2 * i2 <= i1 + i3 || i2 + i3 <= d + 1)
        }
    })
}

/// Recovers the simplex family and parameters from the invariants of a
/// non-pyramid simplex: its volume, its delta exponents (with multiplicity)
/// and its dimension. Errors if no family matches, which would contradict
/// the classification.
pub fn group_params_from_exponents(
    volume: i64,
    exponents: &[i64],
    d: usize,
) -> Result<(FamilyId, Vec<i64>)> {
    let dd = d as i64 + 1;
    let fail = |why: &str| {
        Err(Error::InconsistentCounts(format!(
            "no simplex family matches volume {volume}, exponents {exponents:?}, dimension {d}: {why}"
        )))
    };
    match (volume, exponents) {
        (2, [i1]) => {
            if dd == 2 * i1 {
                Ok((Delta2, vec![*i1]))
            } else {
                fail("a non-pyramid volume-2 simplex has dimension 2*i1 - 1")
            }
        }
        (3, [i1, i2]) => {
            if dd == i1 + i2 && *i2 <= 2 * i1 {
                Ok((Delta3, vec![*i1, *i2]))
            } else {
                fail("a non-pyramid volume-3 simplex has dimension i1 + i2 - 1 with i2 <= 2*i1")
            }
        }
        (4, [i1, i2, i3]) => {
            if dd == i1 + i2 + i3 {
                if i3 <= &(i1 + i2) {
                    Ok((Delta43, vec![*i1, *i2, *i3]))
                } else {
                    fail("i3 <= i1 + i2 is forced for the order-2 block structure")
                }
            } else if dd == i2 + i3 {
                if i3 <= &(i1 + i2) {
                    Ok((Delta42, vec![*i1, *i2, *i3]))
                } else {
                    fail("i3 <= i1 + i2 is forced for the cyclic block structure")
                }
            } else if dd == i1 + i3 && i1 < i2 && i2 < i3 && 2 * i2 <= i1 + i3 && *i3 <= i1 + i2
            {
                Ok((Delta41, vec![*i1, *i2, *i3]))
            } else {
                fail("dimension matches none of i1+i3-1, i2+i3-1, i1+i2+i3-1")
            }
        }
        _ => fail("volume and exponent count disagree"),
    }
}

fn delta_exponents(delta: &DeltaVector) -> Vec<i64> {
    let mut out = Vec::new();
    for (i, &c) in delta.coeffs().iter().enumerate().skip(1) {
        for _ in 0..c {
            out.push(i as i64);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Catalog { family: FamilyId, params: Vec<i64> },
    /// Normalized volume 1: a unimodular simplex of the stated dimension.
    UnitSimplex { dim: usize },
    VolumeExceedsFour { volume: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub outcome: Outcome,
    pub pyramid_layers: usize,
    /// Stages that map the input polytope onto the catalog representative.
    pub witness: Vec<WitnessStage>,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Catalog { family, params } => {
                write!(f, "{family}")?;
                if !params.is_empty() {
                    let named: Vec<String> = family
                        .param_names()
                        .iter()
                        .zip(params)
                        .map(|(n, v)| format!("{n}={v}"))
                        .collect();
                    write!(f, " ({})", named.join(","))?;
                }
                write!(f, ", pyramids: {}", self.pyramid_layers)
            }
            Outcome::UnitSimplex { dim } => {
                write!(f, "unit simplex of dimension {dim}, pyramids: {}", self.pyramid_layers)
            }
            Outcome::VolumeExceedsFour { volume } => {
                write!(f, "volume exceeds 4 (volume {volume})")
            }
        }
    }
}

/// Identifies a lattice polytope of normalized volume at most 4 as a pyramid
/// tower over a catalog entry, with a witness chain whose replay lands
/// exactly on `make_polytope(family, params)`.
pub fn classify(p: &LatticePolytope, budget: u64) -> Result<Classification> {
    let mut stages: Vec<WitnessStage> = Vec::new();
    let full = if p.affine_rank()? == p.dim() {
        p.clone()
    } else {
        let (q, norm) = p.normalized()?;
        stages.push(WitnessStage::Normalize {
            base: norm.base().to_vec(),
            matrix: truncate_cols(norm.forward(), norm.rank()),
        });
        q
    };
    let volume = full.normalized_volume()?;
    if volume > 4 {
        return Ok(Classification {
            outcome: Outcome::VolumeExceedsFour { volume },
            pyramid_layers: 0,
            witness: Vec::new(),
        });
    }
    if volume == 1 {
        return Ok(Classification {
            outcome: Outcome::UnitSimplex { dim: full.dim() },
            pyramid_layers: 0,
            witness: stages,
        });
    }
    let (core, layers, strip_stages) = strip_pyramids(&full)?;
    stages.extend(strip_stages);
    if core.is_simplex()? {
        let group = lambda_of_simplex(&core)?;
        let delta = group.delta_vector()?;
        let exps = delta_exponents(&delta);
        let (family, params) = group_params_from_exponents(volume, &exps, core.dim())?;
        let reference = make_simplex(family, &params)?;
        let map = simplex_equivalent(&core, &reference)?.ok_or(Error::NoCatalogMatch {
            volume,
            dim: core.dim(),
        })?;
        stages.push(WitnessStage::Map { map });
        return Ok(Classification {
            outcome: Outcome::Catalog { family, params },
            pyramid_layers: layers,
            witness: stages,
        });
    }
    let delta = delta_of_polytope(&core)?;
    let spanning = spans_lattice(&core)?;
    let mut candidates: Vec<(FamilyId, Vec<i64>)> = Vec::new();
    if spanning {
        for id in FamilyId::table2_ids() {
            if id.sporadic_dim() == Some(core.dim()) {
                candidates.push((id, Vec::new()));
            }
        }
    } else {
        // k is the smallest exponent >= 2 carrying a nonzero coefficient.
        let k = delta
            .coeffs()
            .iter()
            .enumerate()
            .skip(2)
            .find(|(_, &c)| c != 0)
            .map(|(i, _)| i as i64);
        if let Some(k) = k {
            for id in FamilyId::table3_ids() {
                let d = match id {
                    A41 | B4 => 2 * k,
                    A42 => 2 * k + 1,
                    _ => 2 * k + 2,
                };
                if d == core.dim() as i64 && k >= 2 {
                    candidates.push((id, vec![k]));
                }
            }
        }
    }
    let mut hit_budget = false;
    for (family, params) in candidates {
        let target = make_polytope(family, &params)?;
        if delta != delta_of_polytope(&target)? {
            continue;
        }
        match are_equivalent(&core, &target, budget)? {
            EquivOutcome::Equivalent(w) => {
                stages.push(WitnessStage::Map { map: w.map });
                return Ok(Classification {
                    outcome: Outcome::Catalog { family, params },
                    pyramid_layers: layers,
                    witness: stages,
                });
            }
            EquivOutcome::NotEquivalent => {}
            EquivOutcome::Indeterminate => hit_budget = true,
        }
    }
    if hit_budget {
        Err(Error::BadInput(
            "classification budget exhausted before a catalog match was confirmed".into(),
        ))
    } else {
        Err(Error::NoCatalogMatch { volume, dim: core.dim() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart::delta_of_polytope;
    use crate::transform::random_unimodular_map;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn poly(d: usize, rows: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::from_slices(d, rows).unwrap()
    }

    #[test]
    fn family_ids_parse_and_print() {
        for id in FamilyId::all() {
            assert_eq!(id.to_string().parse::<FamilyId>().unwrap(), id);
        }
        assert_eq!("D41".parse::<FamilyId>().unwrap(), Delta41);
        assert_eq!("q4_9".parse::<FamilyId>().unwrap(), Q49);
        assert_eq!("Q49".parse::<FamilyId>().unwrap(), Q49);
        assert!("Z9".parse::<FamilyId>().is_err());
    }

    #[test]
    fn simplex_families_match_known_vertices() {
        assert_eq!(
            make_simplex(Delta2, &[2]).unwrap(),
            poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]])
        );
        assert_eq!(
            make_simplex(Delta3, &[1, 2]).unwrap(),
            poly(2, &[&[0, 0], &[1, 0], &[2, 3]])
        );
        assert_eq!(
            make_simplex(Delta43, &[1, 1, 1]).unwrap(),
            poly(2, &[&[0, 0], &[2, 0], &[0, 2]])
        );
        let d43 = delta_of_polytope(&make_simplex(Delta43, &[1, 1, 1]).unwrap()).unwrap();
        assert_eq!(d43.coeffs(), &[1, 3, 0]);
    }

    #[test]
    fn simplex_families_reject_bad_params() {
        let e = make_simplex(Delta41, &[1, 1, 2]).unwrap_err().to_string();
        assert!(e.contains("i1 < i2 < i3"), "{e}");
        let e = make_simplex(Delta41, &[1, 3, 4]).unwrap_err().to_string();
        assert!(e.contains("2*i2 <= i1 + i3"), "{e}");
        let e = make_simplex(Delta42, &[1, 2, 4]).unwrap_err().to_string();
        assert!(e.contains("i3 <= i1 + i2"), "{e}");
        assert!(make_simplex(Delta2, &[0]).is_err());
        assert!(make_simplex(Delta3, &[1]).is_err());
        assert!(make_simplex(Delta3, &[1, 3]).is_err());
    }

    #[test]
    fn simplex_grid_has_claimed_delta_and_no_pyramids() {
        for (family, params) in table1_instances(6) {
            let s = make_simplex(family, &params).unwrap();
            let want = expected_delta(family, &params).unwrap();
            let got = delta_of_polytope(&s).unwrap();
            assert_eq!(got, want, "{family} {params:?}");
            assert_eq!(
                s.normalized_volume().unwrap(),
                want.volume().unwrap(),
                "{family} {params:?}"
            );
            let group = lambda_of_simplex(&s).unwrap();
            assert!(group.zero_columns().is_empty(), "{family} {params:?} is a pyramid");
            assert_eq!(pyramid_apex(&s).unwrap(), None, "{family} {params:?}");
        }
    }

    #[test]
    fn sporadic_entries_have_claimed_invariants() {
        for id in FamilyId::table2_ids() {
            let p = make_sporadic(id).unwrap();
            assert_eq!(p.dim(), id.sporadic_dim().unwrap());
            let want = expected_delta(id, &[]).unwrap();
            assert_eq!(delta_of_polytope(&p).unwrap(), want, "{id}");
            assert!(spans_lattice(&p).unwrap(), "{id} must span");
            assert_eq!(pyramid_apex(&p).unwrap(), None, "{id} must not be a pyramid");
        }
    }

    #[test]
    fn nonspanning_families_have_claimed_invariants() {
        for k in [2i64, 3] {
            for id in FamilyId::table3_ids() {
                let p = make_nonspanning(id, k).unwrap();
                let want = expected_delta(id, &[k]).unwrap();
                assert_eq!(delta_of_polytope(&p).unwrap(), want, "{id} k={k}");
                assert!(!spans_lattice(&p).unwrap(), "{id} k={k} must not span");
                assert_eq!(pyramid_apex(&p).unwrap(), None, "{id} k={k}");
            }
        }
        // spot-check the stated vertex sets at k=2
        let a41 = make_nonspanning(A41, 2).unwrap();
        assert!(a41.vertices().contains(&vec![1, 0, -1, 0]));
        assert!(a41.vertices().contains(&vec![1, 1, 0, 2]));
        let a43 = make_nonspanning(A43, 2).unwrap();
        assert_eq!(a43.dim(), 6);
        assert!(a43.vertices().contains(&vec![0, 0, -1, 1, 1, 0]));
        assert!(make_nonspanning(B4, 1).is_err());
    }

    #[test]
    fn half_sum_matches_claimed_values() {
        for k in [2i64, 3] {
            assert_eq!(half_sum_invariant(&a_candidate(1, k).unwrap()).unwrap(), 2 * k);
            assert_eq!(half_sum_invariant(&a_candidate(5, k).unwrap()).unwrap(), 2 * k + 2);
            assert_eq!(half_sum_invariant(&a_candidate(11, k).unwrap()).unwrap(), 2 * k + 4);
        }
        let seg = poly(1, &[&[0], &[1]]);
        assert_eq!(half_sum_invariant(&seg).unwrap(), 0);
    }

    #[test]
    fn half_sum_is_invariant_under_maps_and_translation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for id in [A41, A42, A43, B4] {
            let p = make_nonspanning(id, 2).unwrap();
            let base = half_sum_invariant(&p).unwrap();
            for _ in 0..5 {
                let f = random_unimodular_map(p.dim(), &mut rng);
                let q = p.apply(&f).unwrap().translate(&vec![1; p.dim()]).unwrap();
                assert_eq!(half_sum_invariant(&q).unwrap(), base, "{id}");
            }
        }
    }

    #[test]
    fn pyramids_strip_back_to_the_core() {
        let point = poly(0, &[&[]]);
        let seg = pyramid(&point).unwrap();
        assert_eq!(seg, poly(1, &[&[0], &[1]]));

        let square = make_sporadic(P2).unwrap();
        let twice = pyramid(&pyramid(&square).unwrap()).unwrap();
        assert_eq!(
            delta_of_polytope(&twice).unwrap().coeffs(),
            &[1, 1, 0, 0, 0]
        );
        let (core, layers, stages) = strip_pyramids(&twice).unwrap();
        assert_eq!((core.clone(), layers), (square.clone(), 2));
        assert_eq!(replay_witness(&twice, &stages).unwrap(), square);

        let (_, layers, _) = strip_pyramids(&make_simplex(Delta2, &[2]).unwrap()).unwrap();
        assert_eq!(layers, 0);

        let b4 = make_nonspanning(B4, 2).unwrap();
        let (core, layers, _) = strip_pyramids(&pyramid(&b4).unwrap()).unwrap();
        assert_eq!(layers, 1);
        assert_eq!(delta_of_polytope(&core).unwrap(), delta_of_polytope(&b4).unwrap());
    }

    #[test]
    fn pyramid_stripping_agrees_with_group_criterion() {
        let mut cases = vec![
            make_simplex(Delta2, &[1]).unwrap(),
            make_simplex(Delta2, &[2]).unwrap(),
            make_simplex(Delta3, &[2, 3]).unwrap(),
            make_simplex(Delta43, &[1, 2, 2]).unwrap(),
            pyramid(&make_simplex(Delta2, &[2]).unwrap()).unwrap(),
            pyramid(&pyramid(&make_simplex(Delta3, &[1, 2]).unwrap()).unwrap()).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let skew = make_simplex(Delta42, &[1, 2, 2]).unwrap();
        cases.push(skew.apply(&random_unimodular_map(skew.dim(), &mut rng)).unwrap());
        for s in cases {
            let by_group = !lambda_of_simplex(&s).unwrap().zero_columns().is_empty();
            let by_geometry = pyramid_apex(&s).unwrap().is_some();
            assert_eq!(by_group, by_geometry, "{:?}", s.vertices());
        }
    }

    #[test]
    fn spanning_flag_known_values() {
        assert!(spans_lattice(&make_sporadic(P2).unwrap()).unwrap());
        assert!(spans_lattice(&poly(2, &[&[0, 0], &[1, 0], &[0, 1]])).unwrap());
        assert!(!spans_lattice(&make_simplex(Delta2, &[2]).unwrap()).unwrap());
        assert!(!spans_lattice(&make_nonspanning(B4, 2).unwrap()).unwrap());
    }

    #[test]
    fn feasibility_known_values() {
        assert!(feasible_delta(2, &[2], 3, false).unwrap());
        assert!(feasible_delta(3, &[1, 2], 2, false).unwrap());
        assert!(!feasible_delta(3, &[1, 2], 2, true).unwrap());
        assert!(feasible_delta(4, &[1, 2, 3], 5, false).unwrap());
        assert!(!feasible_delta(4, &[1, 1, 3], 3, false).unwrap());
        assert!(feasible_delta(1, &[], 4, false).unwrap());
        assert!(feasible_delta(2, &[1], 1, false).unwrap());
        assert!(feasible_delta(2, &[4], 3, true).is_err()); // exponent above d
        assert!(feasible_delta(4, &[2, 1, 3], 5, false).is_err()); // unsorted
    }

    #[test]
    fn group_params_round_trip_through_simplices() {
        for (family, params) in table1_instances(7) {
            let s = make_simplex(family, &params).unwrap();
            let delta = lambda_of_simplex(&s).unwrap().delta_vector().unwrap();
            let exps = delta_exponents(&delta);
            let vol = delta.volume().unwrap();
            let got = group_params_from_exponents(vol, &exps, s.dim()).unwrap();
            assert_eq!(got, (family, params.clone()), "{family} {params:?}");
        }
    }

    #[test]
    fn classify_handles_simplices_and_pyramids() {
        let c = classify(&make_simplex(Delta3, &[1, 2]).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(
            c.outcome,
            Outcome::Catalog { family: Delta3, params: vec![1, 2] }
        );
        assert_eq!(c.pyramid_layers, 0);

        let tower =
            pyramid(&pyramid(&make_simplex(Delta3, &[1, 2]).unwrap()).unwrap()).unwrap();
        let c = classify(&tower, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.to_string(), "Δ3 (i1=1,i2=2), pyramids: 2");
        assert_eq!(
            replay_witness(&tower, &c.witness).unwrap(),
            make_simplex(Delta3, &[1, 2]).unwrap()
        );
    }

    #[test]
    fn classify_edge_outcomes() {
        let point = poly(0, &[&[]]);
        assert_eq!(
            classify(&point, DEFAULT_BUDGET).unwrap().outcome,
            Outcome::UnitSimplex { dim: 0 }
        );
        let big = poly(2, &[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]);
        assert_eq!(
            classify(&big, DEFAULT_BUDGET).unwrap().outcome,
            Outcome::VolumeExceedsFour { volume: 8 }
        );
        // lower-dimensional input is normalized first
        let seg = poly(3, &[&[1, 1, 1], &[3, 3, 3]]);
        let c = classify(&seg, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.outcome, Outcome::Catalog { family: Delta2, params: vec![1] });
        assert_eq!(
            replay_witness(&seg, &c.witness).unwrap(),
            make_simplex(Delta2, &[1]).unwrap()
        );
    }

    #[test]
    fn classify_recovers_disguised_nonsimplices() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for id in [P2, Q45, Q49, R41, S42] {
            let p = make_sporadic(id).unwrap();
            let f = random_unimodular_map(p.dim(), &mut rng);
            let q = p.apply(&f).unwrap();
            let c = classify(&q, DEFAULT_BUDGET).unwrap();
            assert_eq!(
                c.outcome,
                Outcome::Catalog { family: id, params: vec![] },
                "{id}"
            );
            assert_eq!(replay_witness(&q, &c.witness).unwrap(), p, "{id}");
        }
        let b4 = make_nonspanning(B4, 2).unwrap();
        let f = random_unimodular_map(b4.dim(), &mut rng);
        let c = classify(&b4.apply(&f).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(c.outcome, Outcome::Catalog { family: B4, params: vec![2] });
    }

    #[test]
    fn candidate_chains_share_delta_polynomials() {
        for k in [2i64, 3] {
            let want_a = expected_delta(A41, &[k]).unwrap().coeffs()[1..].to_vec();
            for i in 1..=11 {
                let p = a_candidate(i, k).unwrap();
                let got = delta_of_polytope(&p).unwrap();
                let mut trimmed = got.coeffs()[1..].to_vec();
                trimmed.resize(want_a.len().max(trimmed.len()), 0);
                let mut want = want_a.clone();
                want.resize(trimmed.len(), 0);
                assert_eq!(trimmed, want, "a-candidate {i} k={k}");
            }
            let want_b = expected_delta(B4, &[k]).unwrap();
            for i in 1..=7 {
                let p = b_candidate(i, k).unwrap();
                assert_eq!(delta_of_polytope(&p).unwrap(), want_b, "b-candidate {i} k={k}");
            }
        }
    }
}
