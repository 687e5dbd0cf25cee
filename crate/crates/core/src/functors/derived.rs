use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::abelian::{preimage, AbMap, FgAbelian, IntMatrix, Lattice, SpanSolver, Subquotient};
use crate::error::{Error, Result};
use crate::int::Int;

use super::quad::{Functor, Natural, QuadTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DerivedPath {
    ClosedForm,
    Koszul,
    DoldKan,
}

impl fmt::Display for DerivedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DerivedPath::ClosedForm => "CLOSED_FORM",
            DerivedPath::Koszul => "KOSZUL",
            DerivedPath::DoldKan => "DOLD_KAN",
        })
    }
}

/// A first derived functor value together with how it was obtained.
#[derive(Clone, Debug)]
pub struct DerivedResult {
    pub tag: QuadTag,
    pub input: Vec<Int>,
    pub value: FgAbelian,
    pub path: DerivedPath,
    pub witnesses: Option<Vec<String>>,
}

impl Serialize for DerivedResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DerivedResult", 5)?;
        st.serialize_field("input", &self.input)?;
        st.serialize_field("tag", &self.tag)?;
        st.serialize_field("path", &self.path)?;
        st.serialize_field("output", self.value.invariant_factors())?;
        if let Some(w) = &self.witnesses {
            st.serialize_field("witnesses", w)?;
        }
        st.end()
    }
}

/// The Dold–Kan simplicial object of a two-term free complex `P_1 --∂--> P_0`,
/// in simplicial degrees `0..=3`.
///
/// `K_m = P_0 ⊕ P_1^m` with `d_0(x, y_1, ..., y_m) = (x + ∂y_1, y_2, ...)`,
/// `d_i` adding `y_i + y_{i+1}` for `0 < i < m`, `d_m` dropping `y_m`, and
/// `s_i` inserting a zero in slot `i + 1`. Its normalized complex is `P_1 -> P_0`.
#[derive(Clone, Debug)]
pub struct DoldKan {
    boundary: IntMatrix,
}

impl DoldKan {
    pub const TOP: usize = 3;

    /// `boundary` must have independent columns for `K` to resolve its cokernel.
    pub fn new(boundary: IntMatrix) -> Self {
        DoldKan { boundary }
    }

    /// The presentation matrix of `a` as a resolution.
    pub fn of_group(a: &FgAbelian) -> Self {
        DoldKan::new(a.relation_lattice().basis_matrix())
    }

    pub fn p0(&self) -> usize {
        self.boundary.rows()
    }

    pub fn p1(&self) -> usize {
        self.boundary.cols()
    }

    pub fn dim(&self, m: usize) -> usize {
        self.p0() + m * self.p1()
    }

    fn assemble(&self, rows: usize, cols: usize, blocks: &[(usize, usize, &IntMatrix)]) -> IntMatrix {
        let mut e = vec![Int::ZERO; rows * cols];
        for &(r0, c0, b) in blocks {
            for i in 0..b.rows() {
                for (j, x) in b.row(i).iter().enumerate() {
                    e[(r0 + i) * cols + c0 + j] += x;
                }
            }
        }
        IntMatrix::from_entries(rows, cols, e).expect("sizes agree")
    }

    /// `d_i : K_m -> K_{m-1}`.
    pub fn face(&self, m: usize, i: usize) -> IntMatrix {
        assert!((1..=Self::TOP).contains(&m) && i <= m, "face d_{i} out of range in degree {m}");
        let (n, r) = (self.p0(), self.p1());
        let id_n = IntMatrix::identity(n);
        let id_r = IntMatrix::identity(r);
        let mut blocks = vec![(0, 0, &id_n)];
        // Slot k of K_m (1-based) sits at column n + (k-1) r.
        let col = |k: usize| n + (k - 1) * r;
        let row = |k: usize| n + (k - 1) * r;
        for k in 1..=m {
            // `None` sends slot k through the boundary; slots dropped by `d_m` are skipped.
            let target = match (i, k) {
                (0, 1) => None,
                (0, k) => Some(k - 1),
                (i, k) if k < i => Some(k),
                (i, k) if k == i && i == m => continue,
                (i, k) if k == i || k == i + 1 => Some(i),
                (_, k) => Some(k - 1),
            };
            match target {
                Some(t) => blocks.push((row(t), col(k), &id_r)),
                None => blocks.push((0, col(k), &self.boundary)),
            }
        }
        self.assemble(self.dim(m - 1), self.dim(m), &blocks)
    }

    /// `s_i : K_m -> K_{m+1}`.
    pub fn degeneracy(&self, m: usize, i: usize) -> IntMatrix {
        assert!(m < Self::TOP && i <= m, "degeneracy s_{i} out of range in degree {m}");
        let (n, r) = (self.p0(), self.p1());
        let id_n = IntMatrix::identity(n);
        let id_r = IntMatrix::identity(r);
        let mut blocks = vec![(0, 0, &id_n)];
        for k in 1..=m {
            let t = if k <= i { k } else { k + 1 };
            blocks.push((n + (t - 1) * r, n + (k - 1) * r, &id_r));
        }
        self.assemble(self.dim(m + 1), self.dim(m), &blocks)
    }
}

/// A functor applied degreewise to a [`DoldKan`] object, through degree 2.
#[derive(Clone, Debug)]
pub(crate) struct Applied {
    pub functor: Functor,
    pub dk: DoldKan,
    objects: Vec<FgAbelian>,
    faces: Vec<Vec<IntMatrix>>,
}

impl Applied {
    pub fn new(functor: Functor, dk: &DoldKan) -> Self {
        let objects = (0..3).map(|m| functor.on_free(dk.dim(m))).collect();
        let faces = (1..3).map(|m| (0..=m).map(|i| functor.on_matrix(&dk.face(m, i))).collect()).collect();
        Applied { functor, dk: dk.clone(), objects, faces }
    }

    pub fn object(&self, m: usize) -> &FgAbelian {
        &self.objects[m]
    }

    fn face(&self, m: usize, i: usize) -> &IntMatrix {
        &self.faces[m - 1][i]
    }

    /// `ker d_i` on generators of `F(K_m)`, relations included.
    fn face_kernel(&self, m: usize, i: usize) -> Result<Lattice> {
        preimage(self.face(m, i), self.object(m - 1).relation_lattice())
    }

    /// The unnormalized boundary `d_0 - d_1` from degree 1 to degree 0.
    pub fn boundary1(&self) -> Result<AbMap> {
        AbMap::new(self.object(1).clone(), self.object(0).clone(), self.face(1, 0).sub(self.face(1, 1))?)
    }

    /// `π_1` by Moore normalization: `N_m = ∩_{i ≥ 1} ker d_i`, boundary `d_0`.
    pub fn pi1(&self) -> Result<Subquotient> {
        let n1 = self.face_kernel(1, 1)?;
        let cycles = n1.intersect(&self.face_kernel(1, 0)?)?;
        let n2 = self.face_kernel(2, 1)?.intersect(&self.face_kernel(2, 2)?)?;
        let bounds = self.object(1).relation_lattice().add_vectors(n2.basis().iter().map(|v| self.face(2, 0).mul_vec(v)))?;
        Subquotient::new(cycles, bounds).map_err(|_| Error::NotAComplex(1))
    }

    /// `π_1` as the homology of the alternating face sums.
    #[cfg(test)]
    pub fn pi1_unnormalized(&self) -> Result<Subquotient> {
        let d2 = self.face(2, 0).sub(self.face(2, 1))?.add(self.face(2, 2))?;
        let d2 = AbMap::new(self.object(2).clone(), self.object(1).clone(), d2)?;
        crate::abelian::homology(&d2, &self.boundary1()?)
    }

    pub fn pi0(&self) -> Result<FgAbelian> {
        Ok(self.boundary1()?.cokernel())
    }
}

/// Groups and maps of the long exact sequence of `0 -> S -> M -> Q -> 0`
/// evaluated on `A`: `L_1S, L_1M, L_1Q, S(A), M(A), Q(A)` with the five maps between them.
#[derive(Clone, Debug)]
pub(crate) struct LongSequence {
    pub groups: Vec<FgAbelian>,
    pub maps: Vec<AbMap>,
}

pub(crate) fn long_sequence(a: &FgAbelian, s: Functor, m: Functor, q: Functor, iota: Natural, pi: Natural) -> Result<LongSequence> {
    if pi != Natural::Projection {
        return Err(Error::PreconditionViolated("the quotient functor must share generators with the middle one".into()));
    }
    let dk = DoldKan::of_group(a);
    let (sa, ma, qa) = (Applied::new(s, &dk), Applied::new(m, &dk), Applied::new(q, &dk));
    let (hs, hm, hq) = (sa.pi1()?, ma.pi1()?, qa.pi1()?);
    let (ps, pm, pq) = (sa.pi0()?, ma.pi0()?, qa.pi0()?);
    let n1 = dk.dim(1);
    let n0 = dk.dim(0);
    let l1_iota = hs.induced(&hm, &iota.matrix(n1))?;
    let l1_pi = hm.induced(&hq, &pi.matrix(n1))?;
    let p0_iota = AbMap::new(ps.clone(), pm.clone(), iota.matrix(n0))?;
    let p0_pi = AbMap::new(pm.clone(), pq.clone(), pi.matrix(n0))?;

    // δ: lift a cycle of Q to M, take its boundary there and pull it back along ι.
    let iota0 = iota.matrix(n0);
    let rel_m = ma.object(0).relation_lattice().basis_matrix();
    let solver = SpanSolver::new(&iota0.hstack(&rel_m)?);
    let dm = ma.boundary1()?;
    let mut cols = Vec::new();
    for z in hq.top().basis() {
        let coeffs = solver.solve(&dm.apply(z)).ok_or(Error::NotAComplex(3))?;
        cols.push(coeffs[..iota0.cols()].to_vec());
    }
    let delta = AbMap::new(hq.group(), ps.clone(), IntMatrix::from_columns(ps.n_gens(), &cols))?;

    Ok(LongSequence { groups: vec![hs.group(), hm.group(), hq.group(), ps, pm, pq], maps: vec![l1_iota, l1_pi, delta, p0_iota, p0_pi] })
}

fn label(dk: &DoldKan, i: usize) -> String {
    let n = dk.p0();
    if i < n {
        format!("x{}", i + 1)
    } else {
        format!("y{}", i - n + 1)
    }
}

/// Cycles of `F(K_1)` generating `L_1F(A)`, written on tensors of `K_1` basis vectors.
fn describe_cycles(ap: &Applied, h: &Subquotient) -> Vec<String> {
    let d = ap.dk.dim(1);
    let g = h.group();
    h.top()
        .basis()
        .iter()
        .enumerate()
        .filter(|(k, _)| {
            let mut e = vec![Int::ZERO; g.n_gens()];
            e[*k] = Int::ONE;
            !g.is_zero_element(&e)
        })
        .map(|(_, v)| {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(idx, c)| {
                    let t = match ap.functor {
                        Functor::Quad(_) => format!("{}⊗{}", label(&ap.dk, idx / d), label(&ap.dk, idx % d)),
                        Functor::ModTwo => label(&ap.dk, idx),
                    };
                    if c.is_one() {
                        t
                    } else {
                        format!("{c}·{t}")
                    }
                })
                .collect();
            terms.join(" + ")
        })
        .collect()
}

/// `L_1F(A)` as `π_1` of `F` applied to the Dold–Kan object of a presentation of `A`.
pub fn derived_l1(tag: QuadTag, a: &FgAbelian) -> Result<DerivedResult> {
    let ap = Applied::new(Functor::Quad(tag), &DoldKan::of_group(a));
    let h = ap.pi1()?;
    let witnesses = describe_cycles(&ap, &h);
    Ok(DerivedResult {
        tag,
        input: a.invariant_factors().to_vec(),
        value: h.group(),
        path: DerivedPath::DoldKan,
        witnesses: Some(witnesses),
    })
}

/// `L_1F(f)` for a homomorphism `f: A -> B` of presented groups.
///
/// The matrix of `f` lifts to relation modules (`∂_B N = M ∂_A`), giving a map of
/// Dold–Kan objects that is `M ⊕ N` in degree one.
pub fn derived_l1_map(tag: QuadTag, f: &AbMap) -> Result<AbMap> {
    let (src, dst) = (DoldKan::of_group(f.source()), DoldKan::of_group(f.target()));
    let m = f.matrix();
    let solver = SpanSolver::new(&dst.boundary);
    let lifted = m.mul(&src.boundary)?;
    let cols = (0..lifted.cols())
        .map(|j| solver.solve(&lifted.column(j)).ok_or_else(|| Error::IllFormedMap("relations do not map to relations".into())))
        .collect::<Result<Vec<_>>>()?;
    let n = IntMatrix::from_columns(dst.p1(), &cols);
    let mut e = vec![Int::ZERO; dst.dim(1) * src.dim(1)];
    let width = src.dim(1);
    for (r0, c0, b) in [(0, 0, m), (dst.p0(), src.p0(), &n)] {
        for i in 0..b.rows() {
            for (j, x) in b.row(i).iter().enumerate() {
                e[(r0 + i) * width + c0 + j] = x.clone();
            }
        }
    }
    let k1 = IntMatrix::from_entries(dst.dim(1), width, e)?;
    let functor = Functor::Quad(tag);
    let (a, b) = (Applied::new(functor, &src), Applied::new(functor, &dst));
    a.pi1()?.induced(&b.pi1()?, &functor.on_matrix(&k1))
}

/// `L_1SP²(A) = ⊕_{i<j} Tor(Z/d_i, Z/d_j)` over the invariant factors of `A`.
pub fn l1sp2_closed(a: &FgAbelian) -> DerivedResult {
    let inv = a.invariant_factors();
    let mut factors = Vec::new();
    let mut witnesses = Vec::new();
    for i in 0..inv.len() {
        for j in i + 1..inv.len() {
            if inv[i].is_zero() || inv[j].is_zero() {
                continue;
            }
            let g = inv[i].gcd(&inv[j]);
            if !g.is_one() {
                witnesses.push(format!("Tor(Z/{}, Z/{}) = Z/{g}", inv[i], inv[j]));
                factors.push(g);
            }
        }
    }
    DerivedResult {
        tag: QuadTag::Sp2,
        input: inv.to_vec(),
        value: FgAbelian::from_invariant_ints(&factors),
        path: DerivedPath::ClosedForm,
        witnesses: Some(witnesses),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::ab_tor;

    fn g(inv: &[i64]) -> FgAbelian {
        FgAbelian::from_invariants(inv)
    }

    #[test]
    fn simplicial_identities() {
        let dk = DoldKan::new(IntMatrix::from_rows(&[[2, 0], [1, 3], [0, 5]]));
        let mul = |a: &IntMatrix, b: &IntMatrix| a.mul(b).unwrap();
        for m in 2..=DoldKan::TOP {
            for j in 1..=m {
                for i in 0..j {
                    assert_eq!(mul(&dk.face(m - 1, i), &dk.face(m, j)), mul(&dk.face(m - 1, j - 1), &dk.face(m, i)), "d{i}d{j} in {m}");
                }
            }
        }
        for m in 0..DoldKan::TOP {
            for j in 0..=m {
                for i in 0..=m + 1 {
                    let lhs = mul(&dk.face(m + 1, i), &dk.degeneracy(m, j));
                    if i == j || i == j + 1 {
                        assert_eq!(lhs, IntMatrix::identity(dk.dim(m)));
                    } else if i < j {
                        assert_eq!(lhs, mul(&dk.degeneracy(m - 1, j - 1), &dk.face(m, i)));
                    } else {
                        assert_eq!(lhs, mul(&dk.degeneracy(m - 1, j), &dk.face(m, i - 1)));
                    }
                }
            }
        }
    }

    #[test]
    fn normalization_matches_alternating_sums() {
        for inv in [&[2, 4][..], &[3, 0], &[2, 2, 2], &[6]] {
            let dk = DoldKan::of_group(&g(inv));
            for tag in QuadTag::ALL {
                let ap = Applied::new(Functor::Quad(tag), &dk);
                assert_eq!(ap.pi1().unwrap().group(), ap.pi1_unnormalized().unwrap().group(), "{tag} on {inv:?}");
                assert_eq!(ap.pi0().unwrap(), super::super::quad_apply(tag, &g(inv)), "{tag} on {inv:?}");
            }
        }
    }

    #[test]
    fn derived_values() {
        assert!(derived_l1(QuadTag::Sp2, &g(&[6])).unwrap().value.is_trivial());
        assert_eq!(derived_l1(QuadTag::Tensor2, &g(&[3])).unwrap().value, g(&[3]));
        assert_eq!(derived_l1(QuadTag::Lambda2, &g(&[4])).unwrap().value, g(&[4]));
        assert!(derived_l1(QuadTag::Sp2, &FgAbelian::free(2)).unwrap().value.is_trivial());
        let a = g(&[2, 4, 0]);
        assert_eq!(derived_l1(QuadTag::Tensor2, &a).unwrap().value, ab_tor(&a, &a));
    }

    #[test]
    fn induced_maps() {
        let a = g(&[4, 4]);
        let id = derived_l1_map(QuadTag::Sp2, &AbMap::identity(&a)).unwrap();
        assert!(id.is_isomorphism() && id.source() == &FgAbelian::cyclic(4));
        let scale = |k: i64| AbMap::new(a.clone(), a.clone(), IntMatrix::from_rows(&[[k, 0], [0, k]])).unwrap();
        // Quadratic functors scale L_1 by k².
        assert!(derived_l1_map(QuadTag::Sp2, &scale(2)).unwrap().is_zero());
        assert!(derived_l1_map(QuadTag::Sp2, &scale(3)).unwrap().is_isomorphism());
        let swap = AbMap::new(a.clone(), a.clone(), IntMatrix::from_rows(&[[0, 1], [1, 0]])).unwrap();
        assert!(derived_l1_map(QuadTag::Sp2, &swap).unwrap().is_isomorphism());
        let onto = AbMap::new(a.clone(), g(&[2, 2]), IntMatrix::from_rows(&[[1, 0], [0, 1]])).unwrap();
        let composite = derived_l1_map(QuadTag::Sp2, &swap.then(&onto).unwrap()).unwrap();
        let chained = derived_l1_map(QuadTag::Sp2, &swap).unwrap().then(&derived_l1_map(QuadTag::Sp2, &onto).unwrap()).unwrap();
        assert!(composite.equals(&chained));
    }

    #[test]
    fn closed_form() {
        assert!(l1sp2_closed(&FgAbelian::free(1)).value.is_trivial());
        assert_eq!(l1sp2_closed(&g(&[2, 4])).value, g(&[2]));
        assert_eq!(l1sp2_closed(&g(&[2, 2, 2])).value, g(&[2, 2, 2]));
        for inv in [&[2, 4][..], &[2, 2, 2], &[3, 6, 0], &[4, 8]] {
            assert_eq!(l1sp2_closed(&g(inv)).value, derived_l1(QuadTag::Sp2, &g(inv)).unwrap().value);
        }
    }

    #[test]
    fn serializes_compactly() {
        let r = l1sp2_closed(&g(&[2, 4]));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["tag"], "SP2");
        assert_eq!(v["path"], "CLOSED_FORM");
        assert_eq!(v["output"].as_array().unwrap().len(), 1);
    }
}
