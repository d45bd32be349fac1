//! Small named semigroups used throughout the docs and tests.

use crate::semigroup::Semigroup;

pub const T2_ID: usize = 0;
pub const T2_SIGMA: usize = 1;
pub const T2_C1: usize = 2;
pub const T2_C2: usize = 3;

pub const B2_E12: usize = 0;
pub const B2_E21: usize = 1;
pub const B2_E11: usize = 2;
pub const B2_E22: usize = 3;
pub const B2_ZERO: usize = 4;

pub fn trivial() -> Semigroup {
    Semigroup::from_table_unchecked(1, vec![0])
}

/// `xy = x`.
pub fn left_zero(n: usize) -> Semigroup {
    let table = (0..n * n).map(|i| i / n).collect();
    Semigroup::from_table_unchecked(n, table)
}

/// `xy = y`.
pub fn right_zero(n: usize) -> Semigroup {
    let table = (0..n * n).map(|i| i % n).collect();
    Semigroup::from_table_unchecked(n, table)
}

/// `Z/n` written multiplicatively: element `k` is `g^k`, identity is 0.
pub fn cyclic_group(n: usize) -> Semigroup {
    let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    Semigroup::from_table_unchecked(n, table)
}

/// All products equal the zero, which is the last element.
pub fn null(n: usize) -> Semigroup {
    Semigroup::from_table_unchecked(n, vec![n - 1; n * n])
}

pub fn klein_four() -> Semigroup {
    cyclic_group(2).direct_product(&cyclic_group(2))
}

/// Full transformation monoid on two points, acting on the right:
/// `id`, the swap `σ`, and the two constant maps `c1`, `c2`.
pub fn t2() -> Semigroup {
    let maps: [[usize; 2]; 4] = [[0, 1], [1, 0], [0, 0], [1, 1]];
    let find = |m: [usize; 2]| maps.iter().position(|&x| x == m).unwrap();
    let mut table = Vec::with_capacity(16);
    for x in &maps {
        for y in &maps {
            table.push(find([y[x[0]], y[x[1]]]));
        }
    }
    Semigroup::from_table_unchecked(4, table)
        .with_labels(["id", "s", "c1", "c2"])
        .expect("four labels")
}

/// Five-element Brandt semigroup of 2×2 matrix units with zero.
pub fn b2() -> Semigroup {
    let units: [(usize, usize); 4] = [(1, 2), (2, 1), (1, 1), (2, 2)];
    let mut table = Vec::with_capacity(25);
    for x in 0..5 {
        for y in 0..5 {
            let v = if x == B2_ZERO || y == B2_ZERO {
                B2_ZERO
            } else {
                let ((i, j), (k, l)) = (units[x], units[y]);
                if j == k {
                    units.iter().position(|&u| u == (i, l)).unwrap()
                } else {
                    B2_ZERO
                }
            };
            table.push(v);
        }
    }
    Semigroup::from_table_unchecked(5, table)
        .with_labels(["E12", "E21", "E11", "E22", "0"])
        .expect("five labels")
}
