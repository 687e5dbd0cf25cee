//! Subgroups of a free nilpotent group and the abelian section K = (R ∩ γ₂F)/γ₂R(R ∩ γ₃F).
use dimlab::nilpotent::{commutator_subgroup, meet_gamma, section_invariants, NilContext};
use dimlab::verify::PresentationSpec;

fn main() -> dimlab::Result<()> {
    let pres = PresentationSpec::from_words(2, &["x1^2", "x2^2"])?.with_gamma2();
    let ctx = NilContext::new(2, 3)?;
    let r = pres.relator_subgroup(&ctx)?;
    let r2 = commutator_subgroup(&r, &r)?;
    println!("R has {} canonical generators modulo γ₄F", r.len());

    let k = section_invariants(&meet_gamma(&r, 2)?, &r2.join(&meet_gamma(&r, 3)?))?;
    println!("K = {}", k.group);
    let g = section_invariants(&dimlab::nilpotent::NilSubgroup::whole(&ctx), &r)?;
    println!("F/Rγ₄F is abelian here: G = {}", g.group);
    Ok(())
}
