//! Dimension quotients of the bundled finite groups, compared with limits over presentations.
use dimlab::verify::{check_dim_quotients, check_thdim, dim_quotient_finite, FiniteGroupTable, PresentationSpec};

fn main() -> dimlab::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data/groups");
    let mut paths: Vec<_> = std::fs::read_dir(dir)?.filter_map(|e| e.ok().map(|e| e.path())).collect();
    paths.sort();
    for path in paths {
        let g = FiniteGroupTable::load(&path)?;
        let name = path.file_stem().unwrap().to_string_lossy().into_owned();
        let r = check_dim_quotients(&name, &g);
        println!("{name:<14} order {:>2}: {} (D4/γ4 = {})", g.order(), r.status, dim_quotient_finite(&g, 4)?);
    }
    let pres = PresentationSpec::load(concat!(env!("CARGO_MANIFEST_DIR"), "/data/presentations/z4_z2.pres"))?;
    let table = FiniteGroupTable::load(concat!(env!("CARGO_MANIFEST_DIR"), "/data/groups/z2_z4.tbl"))?;
    let r = check_thdim(&pres, &table);
    println!("lim RCAP2_MOD4 -> lim GAMMA2_MOD4: {} {:?}", r.status, r.details);
    Ok(())
}
