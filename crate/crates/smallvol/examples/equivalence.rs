//! Decides unimodular equivalence with an explicit witness, and shows two
//! volume-4 polytopes that share a δ-vector yet are genuinely distinct.
//!
//! Run with `cargo run --example equivalence`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use smallvol::catalog::{make_polytope, FamilyId};
use smallvol::ehrhart::delta_of_polytope;
use smallvol::equiv::{are_equivalent, EquivOutcome};
use smallvol::transform::random_unimodular_map;
use smallvol::Result;

const BUDGET: u64 = 1_000_000;

fn main() -> Result<()> {
    // A disguised copy is recognized, and the witness is checkable.
    let p = make_polytope(FamilyId::S42, &[])?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let q = p.apply(&random_unimodular_map(p.dim(), &mut rng))?;
    match are_equivalent(&p, &q, BUDGET)? {
        EquivOutcome::Equivalent(w) => {
            assert_eq!(p.apply(&w.map)?, q);
            println!("S4_2 and its disguise: equivalent");
            println!("  witness matrix rows: {:?}", w.map.matrix().row_vecs());
            println!("  translation:         {:?}", w.map.translation());
        }
        other => panic!("expected equivalence, got {other:?}"),
    }

    // δ-vectors alone do not separate classes: the planar entries P4_1 and
    // P4_2 share δ = 1 + 3t and even the half-sum invariant, but no
    // unimodular map carries one to the other.
    let a = make_polytope(FamilyId::P41, &[])?;
    let b = make_polytope(FamilyId::P42, &[])?;
    assert_eq!(delta_of_polytope(&a)?, delta_of_polytope(&b)?);
    match are_equivalent(&a, &b, BUDGET)? {
        EquivOutcome::NotEquivalent => {
            println!("P4_1 vs P4_2: same delta (1+3t), still not equivalent")
        }
        other => panic!("expected distinct classes, got {other:?}"),
    }
    Ok(())
}
