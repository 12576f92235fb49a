//! Computes the full invariant set of a few lattice polytopes: δ-vector,
//! normalized volume, lattice-spanning, pyramid layers, and the half-sum
//! invariant.
//!
//! Run with `cargo run --example invariants`.

use smallvol::catalog::{
    half_sum_invariant, pyramid, spans_lattice, strip_pyramids,
};
use smallvol::ehrhart::delta_of_polytope;
use smallvol::polytope::LatticePolytope;
use smallvol::Result;

fn describe(label: &str, p: &LatticePolytope) -> Result<()> {
    // lower-dimensional input is measured inside its own affine lattice
    let full = if p.affine_rank()? == p.dim() { p.clone() } else { p.normalized()?.0 };
    let delta = delta_of_polytope(&full)?;
    let (_, layers, _) = strip_pyramids(&full)?;
    println!("{label}");
    println!("  dim {}, {} vertices", p.dim(), p.n_vertices());
    println!("  delta    = {} = {}", delta.polynomial(), delta);
    println!("  volume   = {}", delta.volume()?);
    println!("  spans    = {}", spans_lattice(&full)?);
    println!("  pyramids = {layers}");
    println!("  half-sum = {}", half_sum_invariant(&full)?);
    Ok(())
}

fn main() -> Result<()> {
    let square = LatticePolytope::from_slices(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])?;
    describe("unit square", &square)?;

    // A volume-3 triangle; less obviously, a lattice pyramid — the origin
    // sits at lattice height 1 over the opposite edge, which is what the
    // pyramid count detects.
    let simplex = LatticePolytope::from_slices(2, &[&[0, 0], &[1, 0], &[1, 3]])?;
    describe("\ntriangle conv(0, e1, e1 + 3·e2)", &simplex)?;

    // Pyramids preserve the δ-vector; the invariant printout shows the
    // layer count instead.
    let tower = pyramid(&pyramid(&simplex)?)?;
    describe("\nsecond pyramid over that triangle", &tower)?;

    // Degenerate input: a segment embedded diagonally in the plane is
    // measured inside its own affine lattice.
    let segment = LatticePolytope::from_slices(2, &[&[0, 0], &[2, 2]])?;
    describe("\nsegment from (0,0) to (2,2)", &segment)?;
    Ok(())
}
