//! Words in the Fox subgroup F ∩ (1 + 𝔯𝔣³), and the limit of L₁SP²(K).
use dimlab::verify::{check_fox, check_foxlimit, FoxPart, FoxWitness, PresentationSpec};

fn main() -> dimlab::Result<()> {
    let pres = PresentationSpec::from_words(3, &["x1^2", "x2^2", "x3^2"])?.with_gamma2();
    for w in FoxWitness::standard(&pres)? {
        println!("tuple: {w}");
    }
    for part in [FoxPart::GenB, FoxPart::IsoA] {
        let r = check_fox(part, &pres, None);
        println!("{part}: {} {:?}", r.status, r.details);
    }
    let r = check_foxlimit(&pres);
    println!("lim L1SP2(K) = {:?}, L1SP2(L1SP2(G_ab)) = {:?}: {}", r.lhs_invariants, r.rhs_invariants, r.status);
    Ok(())
}
