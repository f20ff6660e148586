//! Row echelon, Hermite and Smith normal forms over the integers.
//!
//! All reductions use Euclidean row/column operations with a smallest-magnitude
//! pivot and rounded quotients, which keeps intermediate entries small on the
//! sparse, small-entry matrices this crate feeds them.

use crate::int::Int;
use crate::linalg::IntMatrix;

/// Result of an integer row reduction `form = U · M`.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// The reduced matrix; rows `0..rank()` are nonzero.
    pub form: IntMatrix,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
    /// The unimodular `U`, when tracked.
    pub transform: Option<IntMatrix>,
    /// The transpose of `U⁻¹`, when tracked.
    pub inverse_transpose: Option<IntMatrix>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

struct Tracker {
    u: Option<IntMatrix>,
    wt: Option<IntMatrix>,
}

impl Tracker {
    fn swap(&mut self, a: usize, b: usize) {
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
        if let Some(w) = &mut self.wt {
            w.swap_rows(a, b);
        }
    }

    // row[dst] += q * row[src] on U; the inverse picks up row[src] -= q * row[dst]
    fn add(&mut self, dst: usize, src: usize, q: &Int) {
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, q);
        }
        if let Some(w) = &mut self.wt {
            w.add_row_multiple(src, dst, &-q);
        }
    }
}

/// Integer row echelon form. Pivots are not normalized in sign and entries
/// above pivots are not reduced; see [`hermite_normal_form`] for that.
pub fn row_echelon(m: &IntMatrix, track: bool, track_inverse: bool) -> Echelon {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut tr = Tracker {
        u: track.then(|| IntMatrix::identity(rows)),
        wt: track_inverse.then(|| IntMatrix::identity(rows)),
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| !a[(i, col)].is_zero())
                .min_by(|&x, &y| a[(x, col)].cmp_abs(&a[(y, col)]));
            let Some(best) = best else { break };
            a.swap_rows(best, r);
            tr.swap(best, r);
            let piv = a[(r, col)].clone();
            let mut clean = true;
            for i in r + 1..rows {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let q = a[(i, col)].div_round(&piv);
                let nq = -&q;
                a.add_row_multiple(i, r, &nq);
                tr.add(i, r, &nq);
                if !a[(i, col)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                pivots.push(col);
                r += 1;
                break;
            }
        }
    }
    Echelon { form: a, pivots, transform: tr.u, inverse_transpose: tr.wt }
}

/// Hermite normal form `H = U · M`: row echelon with positive pivots and
/// every entry above a pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let e = row_echelon(m, true, false);
    let mut h = e.form;
    let mut u = e.transform.expect("tracked");
    for (t, &pc) in e.pivots.iter().enumerate() {
        if h[(t, pc)].is_negative() {
            h.negate_row(t);
            u.negate_row(t);
        }
        let piv = h[(t, pc)].clone();
        for s in 0..t {
            let (q, _) = h[(s, pc)].div_mod_floor(&piv);
            if !q.is_zero() {
                let nq = -&q;
                h.add_row_multiple(s, t, &nq);
                u.add_row_multiple(s, t, &nq);
            }
        }
    }
    (h, u)
}

/// Smith normal form with transforms: returns `(D, U, V)` with `D = U·M·V`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let piv = a[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let nq = -&a[(i, t)].div_round(&piv);
                a.add_row_multiple(i, t, &nq);
                u.add_row_multiple(i, t, &nq);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let nq = -&a[(t, j)].div_round(&piv);
                a.add_col_multiple(j, t, &nq);
                v.add_col_multiple(j, t, &nq);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                // move the smallest leftover of row/column t onto the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[(i, t)].is_zero() && a[(i, t)].cmp_abs(&a[best]).is_lt() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[(t, j)].is_zero() && a[(t, j)].cmp_abs(&a[best]).is_lt() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                } else if best.1 != t {
                    a.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            // row and column are clear; enforce divisibility of the rest
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !piv.divides(&a[(i, j)]));
            match bad {
                Some((i, _)) => {
                    a.add_row_multiple(t, i, &Int::ONE);
                    u.add_row_multiple(t, i, &Int::ONE);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    (a, u, v)
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            if best.is_none_or(|b| a[(i, j)].cmp_abs(&a[b]).is_lt()) {
                best = Some((i, j));
                if a[(i, j)].abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Nonzero Smith invariants `d_1 | d_2 | ... | d_r` (units included),
/// without transforms.
///
/// Repeatedly takes a nonzero entry of least absolute value as pivot and
/// clears its row and column, moving the pivot to any smaller remainder.
/// Isolated pivots give a diagonal matrix whose divisibility chain is the
/// answer. Only the nonzero pattern of the pivot row and column is touched,
/// which keeps sparse small-entry inputs cheap.
pub fn smith_invariants(m: &IntMatrix) -> Vec<Int> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.to_rows();
    let mut row_alive = vec![true; rows];
    let mut col_alive = vec![true; cols];
    let mut diag = Vec::new();
    while let Some((mut pi, mut pj)) = least_entry(&a, &row_alive, &col_alive) {
        loop {
            let piv = a[pi][pj].clone();
            let support: Vec<usize> = (0..cols).filter(|&j| col_alive[j] && !a[pi][j].is_zero()).collect();
            let mut smaller: Option<usize> = None;
            for k in 0..rows {
                if k == pi || !row_alive[k] || a[k][pj].is_zero() {
                    continue;
                }
                let q = a[k][pj].div_round(&piv);
                if !q.is_zero() {
                    let (src, dst) = if k < pi {
                        let (lo, hi) = a.split_at_mut(pi);
                        (&hi[0], &mut lo[k])
                    } else {
                        let (lo, hi) = a.split_at_mut(k);
                        (&lo[pi], &mut hi[0])
                    };
                    for &j in &support {
                        dst[j].sub_mul_assign(&q, &src[j]);
                    }
                }
                if !a[k][pj].is_zero() && smaller.is_none_or(|s| a[k][pj].cmp_abs(&a[s][pj]).is_lt()) {
                    smaller = Some(k);
                }
            }
            if let Some(k) = smaller {
                pi = k;
                continue;
            }
            // the column is clear, so column operations only touch row pi
            let mut smaller: Option<usize> = None;
            for &j in &support {
                if j == pj {
                    continue;
                }
                let q = a[pi][j].div_round(&piv);
                a[pi][j].sub_mul_assign(&q, &piv);
                if !a[pi][j].is_zero() && smaller.is_none_or(|s| a[pi][j].cmp_abs(&a[pi][s]).is_lt()) {
                    smaller = Some(j);
                }
            }
            match smaller {
                Some(j) => pj = j,
                None => break,
            }
        }
        diag.push(a[pi][pj].abs());
        row_alive[pi] = false;
        col_alive[pj] = false;
    }
    divisibility_chain(diag)
}

fn least_entry(a: &[Vec<Int>], row_alive: &[bool], col_alive: &[bool]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate() {
        if !row_alive[i] {
            continue;
        }
        for (j, x) in row.iter().enumerate() {
            if !col_alive[j] || x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.cmp_abs(&a[bi][bj]).is_lt()) {
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Rewrites a list of positive integers as an equivalent divisibility chain
/// (the same direct sum of cyclic groups), sorted ascending.
pub fn divisibility_chain(mut d: Vec<Int>) -> Vec<Int> {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            if d[i].divides(&d[j]) {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d.sort();
    d
}
