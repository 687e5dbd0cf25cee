//! Exactness of the natural sequences relating the quadratic functors and Tor.
use dimlab::abelian::FgAbelian;
use dimlab::functors::natural_sequences_check;

fn main() {
    for inv in [&[2][..], &[2, 4], &[3, 6, 0]] {
        let r = natural_sequences_check(&FgAbelian::from_invariants(inv));
        println!("{inv:?}: {}", r.status);
        for (k, v) in &r.details {
            println!("  {k}: {v}");
        }
    }
}
