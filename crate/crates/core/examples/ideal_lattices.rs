//! Truncated two-sided ideals of Z[F] and generalized dimension subgroups.
use dimlab::ideals::{ideal_membership, parse_ideal, IdealEnv, TruncIdealLattice};
use dimlab::magnus::parse_word;

fn main() -> dimlab::Result<()> {
    let rels = [parse_word("x1^2", 2)?, parse_word("x2^2", 2)?];
    let env = IdealEnv::new(2).with_relators("r", &rels)?;
    let e = parse_ideal("f r + f^3")?;
    let lat = env.lattice(&e, 3)?;
    let f = TruncIdealLattice::aug_power(2, 3, 1);
    println!("f/(fr + f^3) has invariants {:?}", f.quotient_invariants(&lat)?.iter().map(|d| d.to_string()).collect::<Vec<_>>());

    let w = parse_word("[x1^2,x2]", 2)?;
    println!("{w} in 1 + fr + f^3: {}", ideal_membership(&w, &e, &rels, 2, 3)?);
    let d = env.dimension_subgroup(&parse_ideal("f r + f^3")?, 3, 2)?;
    println!("D(3, fr) has {} canonical generators modulo γ₃F", d.len());
    Ok(())
}
