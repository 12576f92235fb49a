//! The finite abelian group behind a lattice simplex: its elements live in
//! the quotient of the ambient lattice by the sublattice spanned by the
//! lifted vertices, each element carries a height, and the heights are
//! exactly the exponents of the δ-polynomial.
//!
//! Run with `cargo run --example simplex_groups`.

use smallvol::catalog::{make_simplex, FamilyId};
use smallvol::ehrhart::delta_of_polytope;
use smallvol::lambda::lambda_of_simplex;
use smallvol::Result;

fn main() -> Result<()> {
    let p = make_simplex(FamilyId::Delta41, &[1, 2, 3])?;
    println!("Δ41(i1=1,i2=2,i3=3): dim {}, {} vertices", p.dim(), p.n_vertices());

    let g = lambda_of_simplex(&p)?;
    println!("group order {} (= normalized volume), denominator {}", g.order(), g.den());
    for i in 0..g.order() {
        println!(
            "  element {:?}/{}  height {}  order {}",
            g.elements()[i],
            g.den(),
            g.height_of(i),
            g.element_order(i)
        );
    }

    // δ from the group: coefficient of t^h counts elements of height h.
    let from_group = g.delta_vector()?;
    // δ from geometry: inclusion-exclusion over dilate point counts.
    let from_counting = delta_of_polytope(&p)?;
    println!("delta via group:    {from_group}");
    println!("delta via counting: {from_counting}");
    assert_eq!(from_group, from_counting);

    // A zero column in the element table means every group element is
    // supported away from that vertex: the simplex is a lattice pyramid.
    println!("zero columns: {:?} (none -> not a pyramid)", g.zero_columns());
    Ok(())
}
