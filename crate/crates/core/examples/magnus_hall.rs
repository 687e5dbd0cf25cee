//! Magnus expansions of free words and the Hall basis of the free Lie ring.
use dimlab::magnus::{expand, hall_basis, parse_word, witt_number};

fn main() -> dimlab::Result<()> {
    let w = parse_word("[x1,x2]", 2)?;
    println!("[x1,x2] -> {}", expand(&w, 3));

    let hall = hall_basis(2, 4)?;
    for k in 1..=4 {
        let names: Vec<String> = hall.stratum(k).map(|i| hall.commutator(i).to_string()).collect();
        println!("weight {k}: {} basic commutators (Witt: {}): {}", hall.count(k), witt_number(2, k), names.join(" "));
    }
    Ok(())
}
