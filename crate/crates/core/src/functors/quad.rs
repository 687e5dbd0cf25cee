use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::abelian::{AbMap, FgAbelian, IntMatrix};
use crate::error::{Error, Result};
use crate::int::Int;

/// The four quadratic functors on abelian groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum QuadTag {
    Tensor2,
    Sp2,
    Lambda2,
    Tilde2,
}

impl QuadTag {
    pub const ALL: [QuadTag; 4] = [QuadTag::Tensor2, QuadTag::Sp2, QuadTag::Lambda2, QuadTag::Tilde2];
}

impl fmt::Display for QuadTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QuadTag::Tensor2 => "tensor2",
            QuadTag::Sp2 => "sp2",
            QuadTag::Lambda2 => "lambda2",
            QuadTag::Tilde2 => "tilde2",
        };
        f.write_str(s)
    }
}

impl FromStr for QuadTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tensor2" | "tensor" => Ok(QuadTag::Tensor2),
            "sp2" | "sym2" => Ok(QuadTag::Sp2),
            "lambda2" | "ext2" => Ok(QuadTag::Lambda2),
            "tilde2" | "antisym2" => Ok(QuadTag::Tilde2),
            _ => Err(Error::Parse(format!("unknown functor tag `{s}`"))),
        }
    }
}

/// A functor on free abelian groups, given by a presentation of its value on
/// `Z^d` and its action on matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Functor {
    Quad(QuadTag),
    /// `A ↦ A ⊗ Z/2`.
    ModTwo,
}

fn unit(len: usize, i: usize) -> Vec<Int> {
    let mut v = vec![Int::ZERO; len];
    v[i] = Int::ONE;
    v
}

impl Functor {
    pub fn n_gens(self, d: usize) -> usize {
        match self {
            Functor::Quad(_) => d * d,
            Functor::ModTwo => d,
        }
    }

    /// Relations of the value on `Z^d`, on generators `e_i ⊗ e_j` at index `i * d + j`.
    pub fn free_relations(self, d: usize) -> Vec<Vec<Int>> {
        let len = self.n_gens(d);
        let pair = |i: usize, j: usize, sign: i64| {
            let mut v = unit(len, i * d + j);
            v[j * d + i] += &Int::from(sign);
            v
        };
        let mut out = Vec::new();
        match self {
            Functor::Quad(QuadTag::Tensor2) => {}
            Functor::Quad(QuadTag::Sp2) => {
                for i in 0..d {
                    for j in i + 1..d {
                        out.push(pair(i, j, -1));
                    }
                }
            }
            Functor::Quad(QuadTag::Lambda2) => {
                for i in 0..d {
                    out.push(unit(len, i * d + i));
                    for j in i + 1..d {
                        out.push(pair(i, j, 1));
                    }
                }
            }
            Functor::Quad(QuadTag::Tilde2) => {
                for i in 0..d {
                    for j in i..d {
                        out.push(pair(i, j, 1));
                    }
                }
            }
            Functor::ModTwo => {
                for i in 0..d {
                    let mut v = vec![Int::ZERO; d];
                    v[i] = Int::from(2);
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn on_free(self, d: usize) -> FgAbelian {
        FgAbelian::from_relation_vectors(self.n_gens(d), &self.free_relations(d)).expect("dimensions agree")
    }

    /// Value on a homomorphism `Z^e -> Z^d` with matrix `m`.
    pub fn on_matrix(self, m: &IntMatrix) -> IntMatrix {
        match self {
            Functor::Quad(_) => m.kronecker(m),
            Functor::ModTwo => m.clone(),
        }
    }

    /// Value on a presented group `Z^n / L`.
    pub fn on_group(self, a: &FgAbelian) -> FgAbelian {
        let n = a.n_gens();
        let mut rels = self.free_relations(n);
        let basis = a.relation_lattice().basis();
        match self {
            Functor::Quad(_) => {
                for r in basis {
                    for j in 0..n {
                        let mut left = vec![Int::ZERO; n * n];
                        let mut right = vec![Int::ZERO; n * n];
                        for i in 0..n {
                            left[i * n + j] = r[i].clone();
                            right[j * n + i] = r[i].clone();
                        }
                        rels.push(left);
                        rels.push(right);
                    }
                }
            }
            Functor::ModTwo => rels.extend(basis.iter().cloned()),
        }
        FgAbelian::from_relation_vectors(self.n_gens(n), &rels).expect("dimensions agree")
    }
}

/// Natural transformations between the functors above, as matrices on `Z^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Natural {
    /// `ā ↦ a ⊗ a` from `A ⊗ Z/2` to `⊗̃²`.
    Diagonal,
    /// `ab ↦ a ⊗ b + b ⊗ a` from `SP²` to `⊗²`.
    Symmetrize,
    /// `a ∧ b ↦ a ⊗ b - b ⊗ a` from `Λ²` to `⊗²`.
    Antisymmetrize,
    /// Quotient maps between functors presented on the same generators.
    Projection,
}

impl Natural {
    pub fn matrix(self, d: usize) -> IntMatrix {
        let n2 = d * d;
        match self {
            Natural::Diagonal => {
                let cols: Vec<Vec<Int>> = (0..d).map(|i| unit(n2, i * d + i)).collect();
                IntMatrix::from_columns(n2, &cols)
            }
            Natural::Symmetrize | Natural::Antisymmetrize => {
                let sign = if self == Natural::Symmetrize { Int::ONE } else { Int::from(-1) };
                let cols: Vec<Vec<Int>> = (0..n2)
                    .map(|k| {
                        let (i, j) = (k / d, k % d);
                        let mut v = unit(n2, k);
                        v[j * d + i] += &sign;
                        v
                    })
                    .collect();
                IntMatrix::from_columns(n2, &cols)
            }
            Natural::Projection => IntMatrix::identity(n2),
        }
    }
}

/// `F(A)` for a quadratic functor, presented on `e_i ⊗ e_j`.
pub fn quad_apply(tag: QuadTag, a: &FgAbelian) -> FgAbelian {
    Functor::Quad(tag).on_group(a)
}

/// `F(f)`, acting on `e_i ⊗ e_j` by `f(e_i) ⊗ f(e_j)`.
pub fn quad_apply_map(tag: QuadTag, f: &AbMap) -> Result<AbMap> {
    let fun = Functor::Quad(tag);
    AbMap::new(fun.on_group(f.source()), fun.on_group(f.target()), fun.on_matrix(f.matrix()))
}
