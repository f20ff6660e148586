#![allow(dead_code)]

use crystalk::linalg::IntMatrix;
use crystalk::zpmod::ZpModule;
use crystalk::Int;
use rand::Rng;

/// A random `Z[Z/p]`-lattice of rank at most `max_rank`: a block sum of
/// trivial, regular and cyclotomic pieces conjugated by a random unimodular
/// matrix.
pub fn random_module<R: Rng>(rng: &mut R, p: u64, max_rank: usize) -> ZpModule {
    let mut blocks: Vec<ZpModule> = Vec::new();
    let mut rank = 0;
    loop {
        let block = match rng.gen_range(0..3) {
            0 => ZpModule::trivial(p, 1).unwrap(),
            1 => ZpModule::regular(p).unwrap(),
            _ => ZpModule::cyclotomic(p).unwrap(),
        };
        if rank + block.rank() > max_rank {
            if rank > 0 {
                break;
            }
            continue;
        }
        rank += block.rank();
        blocks.push(block);
        if rng.gen_bool(0.3) {
            break;
        }
    }
    let sum = blocks.iter().skip(1).fold(blocks[0].clone(), |a, b| a.direct_sum(b).unwrap());
    let (u, u_inv) = random_unimodular(rng, rank, 2 * rank);
    ZpModule::new(p, u.mul(sum.action()).mul(&u_inv)).unwrap()
}

/// A random unimodular `U` together with `U^{-1}`.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n < 2 {
        return (u, inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = Int::from(rng.gen_range(-2i64..=2));
        // E = I + c e_ij: U <- E U, U^{-1} <- U^{-1} E^{-1}
        u.add_row_multiple(i, j, &c);
        inv.add_col_multiple(j, i, &-&c);
    }
    (u, inv)
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect();
    IntMatrix::from_vec(rows, cols, data)
}
