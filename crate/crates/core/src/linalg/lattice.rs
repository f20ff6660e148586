//! Kernels, integer solving and cokernels.

use crate::abelian::FGAbelianGroup;
use crate::int::Int;
use crate::linalg::normal_forms::{row_echelon, smith_invariants, smith_normal_form};
use crate::linalg::IntMatrix;

/// A saturated kernel lattice together with a left inverse of its basis.
#[derive(Clone, Debug)]
pub struct PureKernel {
    /// Columns form a basis of `{x : M x = 0}`.
    pub basis: IntMatrix,
    /// `coords · basis = I`; `coords · x` gives the coordinates of a kernel
    /// vector `x`.
    pub coords: IntMatrix,
}

impl PureKernel {
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of each column of `v` in the kernel basis, or `None` when
    /// some column is not in the kernel lattice.
    pub fn coordinates_of(&self, v: &IntMatrix) -> Option<IntMatrix> {
        let c = self.coords.mul(v);
        (self.basis.mul(&c) == *v).then_some(c)
    }
}

/// Pure integer kernel of `m` with a left inverse, from a tracked echelon of
/// the transpose: the rows of `U` that annihilate `mᵀ` are kernel vectors, and
/// because `U` is unimodular they span a saturated lattice.
pub fn pure_kernel(m: &IntMatrix) -> PureKernel {
    let n = m.cols();
    let e = row_echelon(&m.transpose(), true, true);
    let r = e.rank();
    let u = e.transform.expect("tracked");
    let wt = e.inverse_transpose.expect("tracked");
    PureKernel { basis: u.row_slice(r, n).transpose(), coords: wt.row_slice(r, n) }
}

/// Basis (as columns) of the integer kernel of `m`. The lattice is pure.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    pure_kernel(m).basis
}

/// Some integer `x` with `a x = b`, or `None`.
pub fn solve_integer(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(a.rows(), b.len(), "right-hand side has the wrong length");
    let (d, u, v) = smith_normal_form(a);
    let ub = u.mul_vec(b);
    let mut y = vec![Int::ZERO; a.cols()];
    for (i, c) in ub.iter().enumerate() {
        let di = if i < a.cols() { d[(i, i)].clone() } else { Int::ZERO };
        if di.is_zero() {
            if !c.is_zero() {
                return None;
            }
        } else {
            let (q, r) = c.div_mod_floor(&di);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(v.mul_vec(&y))
}

/// `Z^rows / colspan(m)`.
pub fn cokernel_structure(m: &IntMatrix) -> FGAbelianGroup {
    if m.rows() == 0 {
        return FGAbelianGroup::trivial();
    }
    if m.cols() == 0 {
        return FGAbelianGroup::free(m.rows());
    }
    let d = smith_invariants(m);
    FGAbelianGroup::new(m.rows() - d.len(), d)
}

/// Rank over `Q`.
pub fn rational_rank(m: &IntMatrix) -> usize {
    row_echelon(m, false, false).rank()
}
