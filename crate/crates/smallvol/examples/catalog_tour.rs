//! Walks the whole catalog of lattice polytopes with normalized volume
//! between 2 and 4: the five simplex families (at their smallest
//! parameters), the twenty-four spanning non-simplices, and the four
//! non-spanning families at k = 2.
//!
//! Run with `cargo run --example catalog_tour`.

use smallvol::catalog::{expected_delta, make_polytope, spans_lattice, FamilyId};
use smallvol::ehrhart::delta_of_polytope;
use smallvol::Result;

fn main() -> Result<()> {
    let smallest: Vec<(FamilyId, Vec<i64>)> = FamilyId::all()
        .into_iter()
        .map(|f| {
            let params: Vec<i64> = match f.param_names() {
                ["i1"] => vec![1],
                ["i1", "i2"] => vec![1, 1],
                ["i1", "i2", "i3"] => vec![1, 2, 3],
                ["k"] => vec![2],
                _ => Vec::new(),
            };
            (f, params)
        })
        .collect();

    println!("{:<22} {:>4} {:>6} {:>6}  delta", "family", "dim", "verts", "spans");
    for (family, params) in smallest {
        let p = make_polytope(family, &params)?;
        let delta = delta_of_polytope(&p)?;
        // The constructed polytope must realize the claimed δ exactly.
        assert_eq!(delta, expected_delta(family, &params)?);
        let label = if params.is_empty() {
            family.to_string()
        } else {
            let named: Vec<String> = family
                .param_names()
                .iter()
                .zip(&params)
                .map(|(n, v)| format!("{n}={v}"))
                .collect();
            format!("{family}({})", named.join(","))
        };
        println!(
            "{label:<22} {:>4} {:>6} {:>6}  {}",
            p.dim(),
            p.n_vertices(),
            spans_lattice(&p)?,
            delta.polynomial()
        );
    }
    Ok(())
}
