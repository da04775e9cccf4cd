//! Hyperplucker coordinates of a grassman-format matrix: the boundary-format
//! maximal minors indexed by last-direction column subsets. All coordinates
//! vanish exactly when the slice span meets the corank-1 stratum.
//!
//! ```bash
//! cargo run --example hyperplucker_coordinates
//! ```

use hyperdet::determinants::{hyperplucker, pencil_rank_drop_oracle, DetOptions};
use hyperdet::exactalg::{rat, RationalMatrix};
use hyperdet::mdmatrix::{Format, MDMatrix};

fn main() {
    let opts = DetOptions::default();
    let f = Format::new(vec![2, 2, 5]);

    // random instance: 10 coordinates of format [2,2,3]
    let random = MDMatrix::random_rational(f.clone(), 11, 6);
    let v = hyperplucker(&random, &opts).unwrap();
    println!("coordinates of a random [2,2,5] matrix (minor format {:?}):", v.minor_format);
    for (cols, det) in &v.coords {
        println!("  columns {:?}: {}", cols, det.value);
    }
    println!("all vanish: {}\n", v.all_vanish());
    assert!(!v.all_vanish());

    // construct a matrix whose first-direction slice pencil hits rank <= 1:
    // a rank-one first slice makes the pencil point (1, 0) drop rank
    let b1 = RationalMatrix::from_i64(2, 5, &[1, -2, 3, 1, 2, 2, -4, 6, 2, 4]);
    let b2 = RationalMatrix::from_i64(2, 5, &[0, 1, 2, -1, 3, 1, 1, 0, 2, -2]);
    let oracle = pencil_rank_drop_oracle(&b1, &b2).unwrap();
    println!("constructed pencil has a rank drop: {}", oracle.exists);
    assert!(oracle.exists);

    let mut values = vec![rat(0); f.len()];
    for i2 in 1..=2u16 {
        for j in 1..=5u16 {
            values[f.offset(&[1, i2, j])] = b1[(i2 as usize - 1, j as usize - 1)].clone();
            values[f.offset(&[2, i2, j])] = b2[(i2 as usize - 1, j as usize - 1)].clone();
        }
    }
    let constructed = MDMatrix::numeric(f, values);
    let v = hyperplucker(&constructed, &opts).unwrap();
    println!("its coordinate vector vanishes identically: {}", v.all_vanish());
    assert!(v.all_vanish());
}
