//! Corank of 2 x 2 x n matrices via the quadratic form of the slice pencil:
//! the determinant of `z_1 A_1 + ... + z_n A_n` is a quadratic form in `z`,
//! and corank 1 is exactly rank 2.
//!
//! ```bash
//! cargo run --example corank_quadratic_form
//! ```

use hyperdet::determinants::{corank_22n, corank_one_instance};
use hyperdet::exactalg::rat;
use hyperdet::mdmatrix::{Format, MDMatrix};

fn main() {
    // two complementary diagonal idempotents: the form is z1*z2, rank 2
    let constructed = corank_one_instance(4);
    let report = corank_22n(&constructed).unwrap();
    println!("constructed instance: rank {}, corank one: {}", report.rank, report.corank_one);
    assert!(report.corank_one);

    // all slices equal and invertible: the form is a perfect square, rank 1
    let f = Format::new(vec![2, 2, 4]);
    let mut values = vec![rat(0); f.len()];
    for i in 1..=4u16 {
        values[f.offset(&[1, 1, i])] = rat(1);
        values[f.offset(&[2, 2, i])] = rat(1);
    }
    let squares = MDMatrix::numeric(f.clone(), values);
    let report = corank_22n(&squares).unwrap();
    println!("equal invertible slices: rank {}, corank one: {}", report.rank, report.corank_one);
    assert_eq!(report.rank, 1);

    // random instances are generic: rank 3 or 4
    for seed in 0..5u64 {
        let a = MDMatrix::random_rational(f.clone(), seed, 10);
        let report = corank_22n(&a).unwrap();
        println!("random seed {seed}: rank {}", report.rank);
        assert!(report.rank >= 3);
    }
}
