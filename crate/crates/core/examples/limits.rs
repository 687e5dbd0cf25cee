//! Limits over the category of presentations, computed as equalizers over one self-coproduct.
use dimlab::verify::{expected_limit, limit_equalizer, monoadd_check, PresentationSpec, RepTag};

fn main() -> dimlab::Result<()> {
    let klein = PresentationSpec::from_words(2, &["x1^2", "x2^2"])?.with_gamma2();
    let redundant = PresentationSpec::from_words(3, &["x1^2", "x2^2", "x3 x2^-1 x1^-1"])?.with_gamma2();
    for p in [&klein, &redundant] {
        let lim = limit_equalizer(RepTag::Gamma2Mod3, p)?;
        println!("rank {}: lim GAMMA2_MOD3 = {lim} (closed form {})", p.rank, expected_limit(RepTag::Gamma2Mod3, &p.abelianization()).unwrap());
    }
    for tag in [RepTag::F2OverFrF4, RepTag::Gamma2Mod3] {
        let r = monoadd_check(tag, &klein);
        println!("{tag}: T injective? {}", r.status);
    }
    Ok(())
}
