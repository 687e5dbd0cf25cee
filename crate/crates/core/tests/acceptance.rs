//! The twelve acceptance criteria, one line each. Expected values come from the oracles in `common`.
mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use dimlab::abelian::{FgAbelian, Lattice};
use dimlab::functors::{derived_l1, koszul_derived, koszul_lsp2, l1sp2_closed, natural_sequences_check, QuadTag};
use dimlab::magnus::FreeWord;
use dimlab::verify::{
    check_dim_identity, check_dim_identity_with, check_dim_quotients, check_fox, check_foxlimit, check_thdim, dim_quotient_finite,
    limit_equalizer, monoadd_check, CheckOptions, CheckReport, DimCheck, DimInput, FiniteGroupTable, FoxPart, FoxWitness,
    PresentationSpec, RepTag, Status,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn expect(r: &CheckReport, status: Status) -> Result<(), String> {
    ensure(r.status == status, || format!("{} {:?}: expected {status}, got {} {:?}", r.check, r.params, r.status, r.witnesses))
}

fn pres(rank: usize, words: &[&str], gamma2: bool) -> PresentationSpec {
    let p = PresentationSpec::from_words(rank, words).unwrap();
    if gamma2 { p.with_gamma2() } else { p }
}

fn gab_orders(p: &PresentationSpec) -> Vec<i64> {
    invariants(&p.abelianization())
}

fn table(orders: &[usize]) -> FiniteGroupTable {
    orders.iter().fold(FiniteGroupTable::cyclic(1).unwrap(), |acc, &n| acc.product(&FiniteGroupTable::cyclic(n).unwrap()).unwrap())
}

const EXPONENTS: [&[i64]; 6] = [&[0, 0], &[1, 1], &[2, 2], &[4, 2], &[6, 2], &[4, 2, 2]];

/// `γ₃F / D γ₄F` read off the claimed generators `[x_j,x_i,x_i]^{e_i}` and `[x_j,x_i,x_k]^{lcm(e_j,e_k)}`.
fn fg1_oracle(e: &[i64]) -> Vec<i64> {
    let m = e.len();
    let mut orders = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            orders.push(e[i]);
            orders.extend((i + 1..m).map(|k| lcm(e[j], e[k])));
        }
    }
    invariants_of_cyclics(&orders)
}

fn derived_functors() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let o = random_orders(&mut rng);
        let a = FgAbelian::from_invariants(&o);
        let want = l1sp2_oracle(&o);
        let routes = [
            derived_l1(QuadTag::Sp2, &a).map_err(|e| e.to_string())?.value,
            l1sp2_closed(&a).value,
            koszul_derived(&a).map_err(|e| e.to_string())?.value,
        ];
        for v in &routes {
            ensure(invariants(v) == want, || format!("A = {a}: got {v}, expected {want:?}"))?;
        }
    }
    let zero_law = std::iter::once(FgAbelian::free(1)).chain((2..=12).map(FgAbelian::cyclic));
    for a in zero_law {
        ensure(derived_l1(QuadTag::Sp2, &a).unwrap().value.is_trivial(), || format!("L1SP2({a}) is nonzero"))?;
    }
    Ok("50 random groups agree on three routes; L1SP2(Z) = L1SP2(Z/m) = 0 for m = 2..12".into())
}

fn exact_sequences() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let k = rng.gen_range(0..=n);
        let j = Lattice::from_vectors(n, (0..k).map(|_| ints(&(0..n).map(|_| rng.gen_range(-6..=6)).collect::<Vec<_>>()))).unwrap();
        let r = koszul_lsp2(n, &j).map_err(|e| e.to_string())?;
        let q = invariants(&FgAbelian::from_lattice(&j));
        ensure(r.exact, || format!("I = Z^{n}, J = {:?}: not exact", j.basis()))?;
        ensure(invariants(&r.l1) == l1sp2_oracle(&q), || format!("I/J = {q:?}: kernel {}", r.l1))?;
    }
    let mut finite = 0;
    for _ in 0..50 {
        let o = random_orders(&mut rng);
        let a = FgAbelian::from_invariants(&o);
        expect(&natural_sequences_check(&a), Status::Verified)?;
        if o.contains(&0) {
            continue;
        }
        finite += 1;
        let l1 = |t| invariants(&derived_l1(t, &a).unwrap().value);
        let product = order_of(&l1(QuadTag::Lambda2)).unwrap() * order_of(&l1(QuadTag::Sp2)).unwrap();
        ensure(product == tor_square_order(&o), || format!("A = {a}: |L1Λ²|·|L1SP²| = {product}"))?;
    }
    Ok(format!("Koszul sequence exact on 100 pairs; natural sequences exact on 50 groups; order identity on {finite} finite ones"))
}

fn fg1() -> Outcome {
    for e in EXPONENTS {
        let r = check_dim_identity(DimCheck::Fg1, &DimInput::Exponents(e.to_vec()));
        expect(&r, Status::Verified)?;
        let want = ints(&fg1_oracle(e));
        ensure(r.lhs_invariants == want, || format!("e = {e:?}: quotient {:?}, expected {want:?}", r.lhs_invariants))?;
    }
    ensure(fg1_oracle(&[4, 2]) == [2, 4], || "oracle disagrees at (4,2)".into())?;
    Ok("six exponent vectors; γ₃/Dγ₄ = [2, 4] at e = (4,2)".into())
}

fn l2_corfrf_frcapf3() -> Outcome {
    let mut tf = 0;
    for e in EXPONENTS {
        let input = DimInput::Exponents(e.to_vec());
        expect(&check_dim_identity(DimCheck::L2, &input), Status::Verified)?;
        let r = check_dim_identity(DimCheck::Corfrf, &input);
        if input.presentation().abelianization().is_torsion_free() {
            expect(&r, Status::Verified)?;
            tf += 1;
        } else {
            ensure(r.is_usage_error(), || format!("CORFRF on e = {e:?} with torsion was not rejected"))?;
        }
    }
    for p in [pres(2, &["[x1,x2]"], false), pres(3, &["[x1,x2]", "[x2,x3]", "[x1,x3]"], false)] {
        expect(&check_dim_identity(DimCheck::Corfrf, &DimInput::Presentation(p)), Status::Verified)?;
        tf += 1;
    }
    for e in &EXPONENTS[1..] {
        let r = check_dim_identity(DimCheck::Frcapf3, &DimInput::Exponents(e.to_vec()));
        expect(&r, Status::Verified)?;
        let tor = order_of(&invariants(&dimlab::abelian::ab_tor(
            &FgAbelian::from_invariants(e),
            &FgAbelian::from_invariants(e),
        )));
        let lhs = order_of(&r.lhs_invariants.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>());
        ensure(matches!((lhs, tor), (Some(a), Some(b)) if b % a == 0), || format!("e = {e:?}: |quotient| = {lhs:?} vs |Tor| = {tor:?}"))?;
    }
    Ok(format!("L2 on 6 instances; CORFRF on {tf} torsion-free instances, torsion ones rejected; FRCAPF3 on 5"))
}

/// A product of up to three factors `x_i^{±k}` or `[x_i, x_j]`.
fn random_relator(rng: &mut ChaCha8Rng, rank: usize) -> FreeWord {
    (0..rng.gen_range(1..=3)).fold(FreeWord::identity(rank), |w, _| {
        let i = rng.gen_range(1..=rank);
        let f = if rank > 1 && rng.gen_bool(0.3) {
            let j = (i % rank) + 1;
            FreeWord::generator(rank, i).comm(&FreeWord::generator(rank, j)).unwrap()
        } else {
            let k = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
            FreeWord::generator(rank, i).pow(k)
        };
        w.mul(&f).unwrap()
    })
}

fn relator_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let opts = CheckOptions { class: 4, max_degree: 4 };
    for _ in 0..10 {
        let rank = rng.gen_range(1..=3);
        let rels = (0..rng.gen_range(1..=3)).map(|_| random_relator(&mut rng, rank)).filter(|w| !w.is_identity()).collect();
        let input = DimInput::Presentation(PresentationSpec::new(rank, rels));
        for id in [DimCheck::Eqr, DimCheck::Kkv, DimCheck::D3r2, DimCheck::FsIdeal] {
            expect(&check_dim_identity_with(id, &input, opts), Status::Verified)?;
        }
    }
    Ok("EQR, KKV, D3R2 and FSIDEAL on 10 random relator sets at class and degree 4".into())
}

fn d3fr() -> Outcome {
    for (words, want) in [(["x1^2", "x2^2"], [2]), (["x1^2", "x2^4"], [2]), (["x1^4", "x2^4"], [4])] {
        let p = pres(2, &words, true);
        let oracle = l1sp2_oracle(&gab_orders(&p));
        ensure(oracle == want, || format!("oracle gives {oracle:?} for {words:?}"))?;
        let r = check_dim_identity(DimCheck::D3fr, &DimInput::Presentation(p));
        expect(&r, Status::Verified)?;
        ensure(r.lhs_invariants == ints(&want), || format!("{words:?}: D(3,fr)/γ₂Rγ₃F = {:?}", r.lhs_invariants))?;
    }
    Ok("Z/2+Z/2 -> Z/2, Z/2+Z/4 -> Z/2, Z/4+Z/4 -> Z/4".into())
}

fn limit_gamma2_mod3() -> Outcome {
    let cases = [
        pres(2, &["x1^2", "x2^2"], true),
        pres(2, &["x1^2", "x2^4"], true),
        pres(3, &["x1^2", "x2^2", "x3 x2^-1 x1^-1"], true),
    ];
    let mut values = Vec::new();
    for p in &cases {
        let lim = limit_equalizer(RepTag::Gamma2Mod3, p).map_err(|e| e.to_string())?;
        let want = l1sp2_oracle(&gab_orders(p));
        ensure(invariants(&lim) == want, || format!("rank {}: limit {lim}, expected {want:?}", p.rank))?;
        values.push(lim);
    }
    ensure(values[0] == values[2], || "the redundant presentation gives a different limit".into())?;
    Ok("Z/2+Z/2 and Z/2+Z/4 give L1SP2(G_ab); the rank-3 presentation agrees".into())
}

fn monoadditivity() -> Outcome {
    for p in [pres(2, &["x1^2", "x2^2"], true), pres(2, &["x1^2", "x2^4"], true)] {
        expect(&monoadd_check(RepTag::F2OverFrF4, &p), Status::Verified)?;
        let r = monoadd_check(RepTag::Gamma2Mod3, &p);
        expect(&r, Status::Partial)?;
        let want = ints(&l1sp2_oracle(&gab_orders(&p)));
        ensure(r.lhs_invariants == want && r.rhs_invariants == want, || format!("ker T = {:?}, limit {:?}", r.lhs_invariants, r.rhs_invariants))?;
    }
    Ok("T injective for F2_OVER_FR_F4 twice; ker T is the antidiagonal limit for GAMMA2_MOD3".into())
}

fn induced_map_of_limits() -> Outcome {
    for (words, orders) in [(["x1^2", "x2^2"], [2, 2]), (["x1^4", "x2^2"], [4, 2])] {
        let g = table(&orders);
        ensure(dim_quotient_finite(&g, 4).map_err(|e| e.to_string())?.is_trivial(), || format!("D4/γ4 of {orders:?} is nonzero"))?;
        let r = check_thdim(&pres(2, &words, true), &g);
        expect(&r, Status::Verified)?;
    }
    Ok("A injects into B with trivial cokernel for Z/2+Z/2 and Z/4+Z/2; D4/γ4 = 0 from the tables".into())
}

fn fox_membership() -> Outcome {
    let klein = pres(2, &["x1^2", "x2^2"], true);
    let r = check_fox(FoxPart::GenB, &klein, None);
    expect(&r, Status::Verified)?;
    ensure(FoxWitness::standard(&klein).map_err(|e| e.to_string())?.len() == 5, || "expected 5 standard tuples".into())?;
    ensure(r.details.get("confirmed").is_some_and(|c| c == "5/5"), || format!("GEN_B details {:?}", r.details))?;
    let r = check_fox(FoxPart::IsoA, &pres(3, &["x1^2", "x2^2", "x3^2"], true), None);
    expect(&r, Status::Partial)?;
    let lifted = r.details.get("lifted generators").cloned().unwrap_or_default();
    let (a, b) = lifted.split_once('/').ok_or_else(|| format!("ISO_A details {:?}", r.details))?;
    ensure(a == b && a != "0", || format!("only {lifted} generators lift"))?;
    let r = check_fox(FoxPart::RemarkTf, &pres(2, &["[x1,x2]"], false), None);
    expect(&r, Status::Verified)?;
    ensure(r.lhs_invariants.is_empty(), || format!("L1SP2(K) = {:?}", r.lhs_invariants))?;
    Ok(format!("GEN_B 5/5 witnesses in 1 + rf^3; ISO_A lifts {lifted}; L1SP2(K) = 0 for Z+Z"))
}

fn limit_of_l1sp2_of_k() -> Outcome {
    for p in [pres(3, &["x1^2", "x2^2", "x3^2"], true), pres(1, &["x1^2"], false)] {
        let r = check_foxlimit(&p);
        expect(&r, Status::Verified)?;
        let want = ints(&l1sp2_oracle(&l1sp2_oracle(&gab_orders(&p))));
        ensure(r.lhs_invariants == want && r.rhs_invariants == want, || format!("{:?} vs {:?}, expected {want:?}", r.lhs_invariants, r.rhs_invariants))?;
    }
    Ok("(Z/2)^3 gives (Z/2)^3 on both sides; Z/2 gives 0".into())
}

fn finite_dimension_quotients() -> Outcome {
    let mut groups = Vec::new();
    for entry in std::fs::read_dir(data("groups")).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        groups.push((path.file_stem().unwrap().to_string_lossy().into_owned(), FiniteGroupTable::load(&path).map_err(|e| e.to_string())?));
    }
    for o in 2..=16 {
        ensure(groups.iter().any(|(_, g)| g.order() == o), || format!("no group of order {o} in the corpus"))?;
    }
    let nonabelian = groups.iter().filter(|(_, g)| !g.is_abelian()).count();
    for (name, g) in &groups {
        expect(&check_dim_quotients(name, g), Status::Verified)?;
    }
    Ok(format!("D2/γ2 = D3/γ3 = 0 on {} groups, {nonabelian} of them nonabelian", groups.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("derived-functor cross-validation", 30, derived_functors),
        ("exact-sequence suite", 60, exact_sequences),
        ("FG1 lattice equality", 30, fg1),
        ("L2, CORFRF and FRCAPF3", 60, l2_corfrf_frcapf3),
        ("EQR, KKV, D3R2, FSIDEAL", 120, relator_identities),
        ("D3FR against L1SP2", 30, d3fr),
        ("limit of GAMMA2_MOD3", 120, limit_gamma2_mod3),
        ("monoadditivity", 60, monoadditivity),
        ("lim RCAP2_MOD4 -> lim GAMMA2_MOD4", 300, induced_map_of_limits),
        ("Fox subgroup F(3,R)", 120, fox_membership),
        ("limit of L1SP2_OF_K", 300, limit_of_l1sp2_of_k),
        ("finite dimension quotients", 60, finite_dimension_quotients),
    ];
    let mut failed = 0;
    for (i, (title, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if took <= Duration::from_secs(budget) { Ok(msg) } else { Err(format!("{msg}; over the {budget}s budget")) }
        });
        let (tag, msg) = match &outcome {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        failed += usize::from(outcome.is_err());
        println!("criterion {:>2} {tag} {title} ({:.1}s): {msg}", i + 1, took.as_secs_f64());
    }
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
