//! Invariant factors, lattice membership and kernels of integer matrices.
use dimlab::abelian::{kernel, smith_normal_form, AbMap, FgAbelian, IntMatrix, Lattice};
use dimlab::Int;

fn main() -> dimlab::Result<()> {
    let m = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
    let s = smith_normal_form(&m);
    println!("diagonal of {m:?}: {:?}", s.diagonal.iter().map(Int::to_string).collect::<Vec<_>>());

    let a = FgAbelian::new(3, m.clone())?;
    println!("coker = {a}");

    let lat = Lattice::from_columns(&m);
    let v: Vec<Int> = [4, 0, 0].map(Int::from).to_vec();
    println!("(4,0,0) in column lattice: {}", lat.contains(&v));
    println!("kernel rank: {}", kernel(&m).rank());

    let double = AbMap::new(FgAbelian::cyclic(4), FgAbelian::cyclic(4), IntMatrix::from_rows(&[[2]]))?;
    println!("ker(2: Z/4 -> Z/4) = {}, coker = {}", double.kernel().group(), double.cokernel());
    Ok(())
}
