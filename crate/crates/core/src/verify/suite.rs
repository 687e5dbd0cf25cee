use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::checks::{check_dim_identity_with, CheckOptions, DimCheck, DimInput};
use super::finite::{check_dim_quotients, FiniteGroupTable};
use super::fox::{check_fox, check_foxlimit, check_thdim, FoxPart, FoxWitness};
use super::presentation::PresentationSpec;
use super::report::CheckReport;
use super::reps::{check_limit, monoadd_check, RepTag};

/// One independent check on one instance.
#[derive(Clone, Debug)]
pub enum Job {
    Dim { id: DimCheck, input: DimInput, opts: CheckOptions },
    Limit { tag: RepTag, pres: PresentationSpec },
    Monoadd { tag: RepTag, pres: PresentationSpec },
    Fox { part: FoxPart, pres: PresentationSpec, witnesses: Option<Vec<FoxWitness>> },
    Thdim { pres: PresentationSpec, table: FiniteGroupTable },
    FoxLimit { pres: PresentationSpec },
    DimQuotients { name: String, table: FiniteGroupTable },
}

impl Job {
    fn dim(id: DimCheck, input: DimInput) -> Self {
        Job::Dim { id, input, opts: CheckOptions::default() }
    }

    pub fn run(&self) -> CheckReport {
        match self {
            Job::Dim { id, input, opts } => check_dim_identity_with(*id, input, *opts),
            Job::Limit { tag, pres } => check_limit(*tag, pres),
            Job::Monoadd { tag, pres } => monoadd_check(*tag, pres),
            Job::Fox { part, pres, witnesses } => check_fox(*part, pres, witnesses.as_deref()),
            Job::Thdim { pres, table } => check_thdim(pres, table),
            Job::FoxLimit { pres } => check_foxlimit(pres),
            Job::DimQuotients { name, table } => check_dim_quotients(name, table),
        }
    }
}

/// Named instance collections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// One small instance per check; a few seconds.
    Smoke,
    /// Every instance family of the acceptance criteria.
    Full,
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "smoke" => Ok(Preset::Smoke),
            "full" => Ok(Preset::Full),
            _ => Err(Error::InvalidConfig(format!("unknown preset `{s}` (expected smoke or full)"))),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Smoke => "smoke",
            Preset::Full => "full",
        })
    }
}

fn pres(name: &str, rank: usize, words: &[&str], gamma2: bool) -> Result<PresentationSpec> {
    let p = PresentationSpec::from_words(rank, words)?.named(name);
    Ok(if gamma2 { p.with_gamma2() } else { p })
}

/// `Z/d₁ ⊕ ... ⊕ Z/d_k` as a table.
pub fn abelian_table(invariants: &[usize]) -> Result<FiniteGroupTable> {
    invariants.iter().try_fold(FiniteGroupTable::cyclic(1)?, |acc, &d| acc.product(&FiniteGroupTable::cyclic(d)?))
}

/// Invariant-factor lists `d₁ | d₂ | ...` (all `> 1`) of the abelian groups of order `n`.
fn abelian_invariants(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, divides: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            let mut v = acc.clone();
            v.reverse();
            out.push(v);
            return;
        }
        // Largest factor first; each next factor divides the previous one.
        for d in (2..=rest.min(divides)).rev() {
            if rest.is_multiple_of(d) && divides.is_multiple_of(d) {
                acc.push(d);
                go(rest / d, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every abelian group of order at most 16, then the dihedral and quaternion groups of order 8.
pub fn finite_corpus() -> Result<Vec<(String, FiniteGroupTable)>> {
    let mut out = Vec::new();
    for n in 1..=16 {
        for inv in abelian_invariants(n) {
            let name = if inv.is_empty() { "trivial".to_string() } else { inv.iter().map(|d| format!("z{d}")).collect::<Vec<_>>().join("_") };
            out.push((name, abelian_table(&inv)?));
        }
    }
    out.push(("d8".to_string(), FiniteGroupTable::dihedral(4)?));
    out.push(("q8".to_string(), FiniteGroupTable::quaternion()?));
    Ok(out)
}

impl Preset {
    pub fn jobs(self) -> Result<Vec<Job>> {
        let klein = pres("klein", 2, &["x1^2", "x2^2"], true)?;
        let z4z2 = pres("z4_z2", 2, &["x1^4", "x2^2"], true)?;
        let z2 = pres("z2", 1, &["x1^2"], false)?;
        let integers = pres("z", 2, &["x1 x2^-1"], false)?;
        let commuting = pres("z2_free", 2, &["[x1,x2]"], false)?;
        let klein_table = abelian_table(&[2, 2])?;
        let mut jobs = Vec::new();
        match self {
            Preset::Smoke => {
                for id in [DimCheck::Fg1, DimCheck::L2] {
                    jobs.push(Job::dim(id, DimInput::Exponents(vec![4, 2])));
                }
                jobs.push(Job::dim(DimCheck::Corfrf, DimInput::Presentation(commuting)));
                for id in [DimCheck::Frcapf3, DimCheck::Eqr, DimCheck::Kkv, DimCheck::D3fr, DimCheck::D3r2, DimCheck::FsIdeal] {
                    jobs.push(Job::dim(id, DimInput::Presentation(z4z2.clone())));
                }
                jobs.push(Job::Limit { tag: RepTag::Gamma2Mod3, pres: klein.clone() });
                for tag in [RepTag::F2OverFrF4, RepTag::Gamma2Mod3] {
                    jobs.push(Job::Monoadd { tag, pres: klein.clone() });
                }
                for part in [FoxPart::GenB, FoxPart::IsoA] {
                    jobs.push(Job::Fox { part, pres: klein.clone(), witnesses: None });
                }
                jobs.push(Job::Fox { part: FoxPart::RemarkTf, pres: integers, witnesses: None });
                jobs.push(Job::Thdim { pres: klein, table: klein_table });
                jobs.push(Job::FoxLimit { pres: z2 });
                for (name, table) in finite_corpus()?.into_iter().filter(|(n, _)| ["z2_z2", "d8", "q8"].contains(&n.as_str())) {
                    jobs.push(Job::DimQuotients { name, table });
                }
            }
            Preset::Full => {
                let exps: [&[i64]; 6] = [&[0, 0], &[1, 1], &[2, 2], &[4, 2], &[6, 2], &[4, 2, 2]];
                for e in exps {
                    for id in [DimCheck::Fg1, DimCheck::L2] {
                        jobs.push(Job::dim(id, DimInput::Exponents(e.to_vec())));
                    }
                }
                let torsion_free = [commuting.clone(), integers.clone(), pres("free2", 2, &[], false)?, pres("z3_free", 3, &["[x1,x2]", "[x2,x3]", "[x1,x3]"], false)?];
                for p in &torsion_free {
                    jobs.push(Job::dim(DimCheck::Corfrf, DimInput::Presentation(p.clone())));
                }
                let relator_sets = [
                    klein.clone(),
                    z4z2.clone(),
                    pres("z4_z4", 2, &["x1^4", "x2^4"], true)?,
                    pres("z2_z2_plain", 2, &["x1^2", "x2^2"], false)?,
                    pres("twisted", 2, &["x1^4 [x1,x2]", "x2^2"], false)?,
                    pres("z3_heisenberg", 2, &["x1^3", "[x1,x2,x2]"], false)?,
                    pres("z2_cubed", 3, &["x1^2", "x2^2", "x3^2"], true)?,
                    pres("mixed3", 3, &["x1^4", "x2^2 [x1,x3]", "x3^2"], false)?,
                    commuting.clone(),
                    integers.clone(),
                ];
                for p in &relator_sets[..5] {
                    jobs.push(Job::dim(DimCheck::Frcapf3, DimInput::Presentation(p.clone())));
                }
                for p in &relator_sets {
                    for id in [DimCheck::Eqr, DimCheck::Kkv, DimCheck::D3r2, DimCheck::FsIdeal] {
                        jobs.push(Job::dim(id, DimInput::Presentation(p.clone())));
                    }
                }
                for words in [&["x1^2", "x2^2"], &["x1^2", "x2^4"], &["x1^4", "x2^4"]] {
                    jobs.push(Job::dim(DimCheck::D3fr, DimInput::Presentation(pres("d3fr", 2, words, true)?)));
                }
                let redundant = pres("klein_rank3", 3, &["x1^2", "x2^2", "x3 x2^-1 x1^-1"], true)?;
                let z2z4 = pres("z2_z4", 2, &["x1^2", "x2^4"], true)?;
                for p in [&klein, &z2z4, &redundant] {
                    jobs.push(Job::Limit { tag: RepTag::Gamma2Mod3, pres: p.clone() });
                }
                for p in [&klein, &z4z2] {
                    jobs.push(Job::Monoadd { tag: RepTag::F2OverFrF4, pres: p.clone() });
                }
                jobs.push(Job::Monoadd { tag: RepTag::Gamma2Mod3, pres: klein.clone() });
                let cube = pres("z2_cubed", 3, &["x1^2", "x2^2", "x3^2"], true)?;
                for p in [&klein, &cube] {
                    for part in [FoxPart::GenB, FoxPart::IsoA] {
                        jobs.push(Job::Fox { part, pres: p.clone(), witnesses: None });
                    }
                }
                for p in [&integers, &commuting] {
                    jobs.push(Job::Fox { part: FoxPart::RemarkTf, pres: p.clone(), witnesses: None });
                }
                jobs.push(Job::Thdim { pres: klein.clone(), table: klein_table });
                jobs.push(Job::Thdim { pres: z4z2.clone(), table: abelian_table(&[4, 2])? });
                for p in [cube, z2, pres("free2", 2, &[], false)?] {
                    jobs.push(Job::FoxLimit { pres: p });
                }
                for (name, table) in finite_corpus()? {
                    jobs.push(Job::DimQuotients { name, table });
                }
            }
        }
        Ok(jobs)
    }
}

/// Runs the jobs on `threads` workers (all cores when `None`), keeping their order.
pub fn run_suite(jobs: &[Job], threads: Option<usize>) -> Result<Vec<CheckReport>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::InvalidConfig("--jobs must be positive".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::InvalidConfig(e.to_string()))?;
    Ok(pool.install(|| jobs.par_iter().map(Job::run).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_has_every_abelian_group() {
        // Number of abelian groups of order 1..=16.
        let counts: Vec<usize> = (1..=16).map(|n| abelian_invariants(n).len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        assert_eq!(abelian_invariants(12), [vec![12], vec![2, 6]]);
        let corpus = finite_corpus().unwrap();
        assert_eq!(corpus.len(), 27);
        assert!(corpus.iter().all(|(_, g)| g.order() <= 16));
    }

    #[test]
    fn smoke_preset_passes() {
        let jobs = Preset::Smoke.jobs().unwrap();
        let reports = run_suite(&jobs, Some(2)).unwrap();
        assert_eq!(reports.len(), jobs.len());
        for r in &reports {
            assert!(!r.is_failed(), "{r:?}");
        }
        assert!(run_suite(&jobs[..1], Some(0)).is_err());
        assert!("medium".parse::<Preset>().is_err());
    }
}
