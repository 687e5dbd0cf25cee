//! Every dimension-subgroup identity on one instance.
use dimlab::verify::{check_dim_identity, DimCheck, DimInput, PresentationSpec};

fn main() -> dimlab::Result<()> {
    let pres = PresentationSpec::from_words(2, &["x1^4", "x2^2"])?.with_gamma2();
    for id in DimCheck::ALL {
        let input = match id {
            DimCheck::Fg1 | DimCheck::L2 => DimInput::Exponents(vec![4, 2]),
            DimCheck::Corfrf => DimInput::Presentation(PresentationSpec::from_words(2, &["[x1,x2]"])?),
            _ => DimInput::Presentation(pres.clone()),
        };
        let r = check_dim_identity(id, &input);
        println!("{id:<8} {:<8} lhs {:?} rhs {:?}", r.status.to_string(), r.lhs_invariants, r.rhs_invariants);
    }
    Ok(())
}
