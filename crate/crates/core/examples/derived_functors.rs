//! L₁SP² along three independent routes: simplicial, closed form and Koszul.
use dimlab::abelian::FgAbelian;
use dimlab::functors::{derived_l1, koszul_derived, l1sp2_closed, quad_apply, QuadTag};

fn main() -> dimlab::Result<()> {
    for inv in [&[2, 2][..], &[2, 4], &[4, 4, 0], &[6]] {
        let a = FgAbelian::from_invariants(inv);
        let simplicial = derived_l1(QuadTag::Sp2, &a)?.value;
        let closed = l1sp2_closed(&a).value;
        let koszul = koszul_derived(&a)?.value;
        println!("A = {a}: L1SP2 = {simplicial} | {closed} | {koszul}; SP2(A) = {}", quad_apply(QuadTag::Sp2, &a));
    }
    let a = FgAbelian::cyclic(2);
    println!("L1 of the antisymmetric square of Z/2: {}", derived_l1(QuadTag::Tilde2, &a)?.value);
    Ok(())
}
