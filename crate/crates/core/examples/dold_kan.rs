//! The simplicial resolution of Z/4 and the functor SP² applied degreewise.
use dimlab::abelian::FgAbelian;
use dimlab::functors::DoldKan;

fn main() {
    let dk = DoldKan::of_group(&FgAbelian::cyclic(4));
    for m in 0..=DoldKan::TOP {
        println!("K_{m} has rank {}", dk.dim(m));
    }
    for i in 0..=2 {
        println!("d_{i}: K_2 -> K_1 = {:?}", dk.face(2, i).to_rows());
    }
}
