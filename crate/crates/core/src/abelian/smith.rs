//! Smith normal form with unimodular transforms.

use crate::int::Int;

use super::lattice::Lattice;
use super::matrix::IntMatrix;

/// `u * m * v = d` with `u`, `v` unimodular and `u_inv = u^{-1}`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    /// Nonzero diagonal entries, each dividing the next.
    pub diagonal: Vec<Int>,
}

struct Work {
    a: Vec<Vec<Int>>,
    u: Vec<Vec<Int>>,
    u_inv: Vec<Vec<Int>>,
    v: Vec<Vec<Int>>,
    track: bool,
}

impl Work {
    // row_i -= q * row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        let (ri, rj) = two_mut(&mut self.a, i, j);
        for (x, y) in ri.iter_mut().zip(rj.iter()) {
            if !y.is_zero() {
                x.sub_mul(q, y);
            }
        }
        if self.track {
            let (ui, uj) = two_mut(&mut self.u, i, j);
            for (x, y) in ui.iter_mut().zip(uj.iter()) {
                if !y.is_zero() {
                    x.sub_mul(q, y);
                }
            }
            // u_inv: col_j += q * col_i
            for row in self.u_inv.iter_mut() {
                if !row[i].is_zero() {
                    let t = row[i].clone();
                    row[j].add_mul(q, &t);
                }
            }
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if self.track {
            self.u.swap(i, j);
            for row in self.u_inv.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn row_negate(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if self.track {
            for x in self.u[i].iter_mut() {
                *x = -&*x;
            }
            for row in self.u_inv.iter_mut() {
                row[i] = -&row[i];
            }
        }
    }

    // col_i -= q * col_j
    fn col_sub(&mut self, i: usize, j: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            if !row[j].is_zero() {
                let t = row[j].clone();
                row[i].sub_mul(q, &t);
            }
        }
        if self.track {
            for row in self.v.iter_mut() {
                if !row[j].is_zero() {
                    let t = row[j].clone();
                    row[i].sub_mul(q, &t);
                }
            }
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if self.track {
            for row in self.v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn run(&mut self) -> Vec<Int> {
        let r = self.a.len();
        let c = if r == 0 { 0 } else { self.a[0].len() };
        let mut diag = Vec::new();
        let mut t = 0;
        while t < r.min(c) {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &self.a[i][j];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                        best = Some((i, j));
                        if x.abs().is_one() {
                            break;
                        }
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            self.row_swap(t, bi);
            self.col_swap(t, bj);
            loop {
                let mut clean = true;
                for i in t + 1..r {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.row_sub(i, t, &q);
                        if !self.a[i][t].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..c {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.col_sub(j, t, &q);
                        if !self.a[t][j].is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    self.move_min_to_pivot(t);
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !p.divides(&self.a[i][j])));
                match bad {
                    Some(i) => {
                        // row_t += row_i
                        self.row_sub(t, i, &Int::from(-1));
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.row_negate(t);
            }
            diag.push(self.a[t][t].clone());
            t += 1;
        }
        diag
    }

    fn move_min_to_pivot(&mut self, t: usize) {
        let r = self.a.len();
        let c = self.a[0].len();
        let mut best = (t, t);
        for i in t + 1..r {
            if !self.a[i][t].is_zero() && self.a[i][t].abs() < self.a[best.0][best.1].abs() {
                best = (i, t);
            }
        }
        for j in t + 1..c {
            if !self.a[t][j].is_zero() && self.a[t][j].abs() < self.a[best.0][best.1].abs() {
                best = (t, j);
            }
        }
        self.row_swap(t, best.0);
        self.col_swap(t, best.1);
    }
}

fn two_mut<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &T) {
    debug_assert_ne!(i, j);
    if i < j {
        let (a, b) = v.split_at_mut(j);
        (&mut a[i], &b[0])
    } else {
        let (a, b) = v.split_at_mut(i);
        (&mut b[0], &a[j])
    }
}

fn identity_rows(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            let mut r = vec![Int::ZERO; n];
            r[i] = Int::ONE;
            r
        })
        .collect()
}

fn from_rows(rows: Vec<Vec<Int>>, cols: usize) -> IntMatrix {
    let r = rows.len();
    IntMatrix::from_entries(r, cols, rows.into_iter().flatten().collect()).expect("rectangular")
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows(), m.cols());
    let mut w = Work { a: m.to_rows(), u: identity_rows(r), u_inv: identity_rows(r), v: identity_rows(c), track: true };
    let diagonal = w.run();
    Smith {
        d: from_rows(w.a, c),
        u: from_rows(w.u, r),
        u_inv: from_rows(w.u_inv, r),
        v: from_rows(w.v, c),
        diagonal,
    }
}

/// Nonzero Smith diagonal of `m`, without transforms.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<Int> {
    // Compress the column span to a square-ish HNF basis first.
    let l = Lattice::from_columns(m);
    let basis = l.basis_matrix();
    let mut w = Work { a: basis.to_rows(), u: vec![], u_inv: vec![], v: vec![], track: false };
    if basis.cols() == 0 {
        return Vec::new();
    }
    w.run()
}

/// Invariant factors of `coker(m)` for `m: Z^cols -> Z^rows`: the torsion
/// factors greater than one in divisibility order, followed by one zero per
/// free summand.
pub fn invariant_factors(m: &IntMatrix) -> Vec<Int> {
    let diag = smith_diagonal(m);
    let mut out: Vec<Int> = diag.iter().filter(|d| !d.is_one()).cloned().collect();
    out.extend(std::iter::repeat_n(Int::ZERO, m.rows() - diag.len()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(m.rows()));
        for w in s.diagonal.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
        s
    }

    #[test]
    fn diag_two_three() {
        let s = check(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.diagonal, vec![Int::from(1), Int::from(6)]);
    }

    #[test]
    fn antidiagonal_twos() {
        let s = check(&IntMatrix::from_rows(&[[0, 2], [2, 0]]));
        assert_eq!(s.diagonal, vec![Int::from(2), Int::from(2)]);
    }

    #[test]
    fn rectangular_and_free_part() {
        let m = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        let s = check(&m);
        assert_eq!(s.diagonal, vec![Int::from(2), Int::from(6), Int::from(12)]);
        let m2 = IntMatrix::from_rows(&[[2, 0], [0, 0], [0, 4]]);
        check(&m2);
        assert_eq!(invariant_factors(&m2), vec![Int::from(2), Int::from(4), Int::from(0)]);
        assert_eq!(invariant_factors(&IntMatrix::zeros(2, 0)), vec![Int::ZERO, Int::ZERO]);
    }
}
