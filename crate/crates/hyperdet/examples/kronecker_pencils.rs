//! Pairs of n x (n+1) matrices: the stacked n x (n+1) x 2 determinant is
//! nonzero exactly when the pencil of the pair never drops rank, and the
//! shifted-identity pair is the canonical nondegenerate example.
//!
//! ```bash
//! cargo run --example kronecker_pencils
//! ```

use hyperdet::determinants::{
    det_dispatch, kronecker_pair, pencil_from_slices, pencil_rank_drop_oracle, DetOptions,
    RankDropWitness,
};
use hyperdet::mdmatrix::{Format, MDMatrix};

fn main() {
    let opts = DetOptions::default();
    for n in 2..=3usize {
        let (a, b) = kronecker_pair(n);
        let det = det_dispatch(&pencil_from_slices(&a, &b), &opts).unwrap();
        let oracle = pencil_rank_drop_oracle(&a, &b).unwrap();
        println!(
            "canonical pair n={n}: det = {}, rank drop exists = {}",
            det.value, oracle.exists
        );
        assert!(!det.value.is_zero());
        assert!(!oracle.exists);

        // the pair (A, A) is maximally degenerate
        let det = det_dispatch(&pencil_from_slices(&a, &a), &opts).unwrap();
        let oracle = pencil_rank_drop_oracle(&a, &a).unwrap();
        println!(
            "repeated slice n={n}: det = {}, rank drop exists = {}",
            det.value, oracle.exists
        );
        assert!(det.value.is_zero());
        assert!(oracle.exists);
    }

    // agreement on a batch of 2 x 3 x 2 samples: det vanishes exactly when
    // the oracle finds a rank-drop point
    let f = Format::new(vec![2, 3, 2]);
    let mut agreements = 0;
    for seed in 0..10u64 {
        let m = MDMatrix::random_rational(f.clone(), seed, 8);
        let det_zero = det_dispatch(&m, &opts).unwrap().value.is_zero();
        let b1 = slice(&m, 1);
        let b2 = slice(&m, 2);
        let oracle = pencil_rank_drop_oracle(&b1, &b2).unwrap();
        assert_eq!(det_zero, oracle.exists);
        agreements += 1;
        if let Some(RankDropWitness::Point(z1, z2)) = &oracle.witness {
            println!(
                "seed {seed}: rank drop at ({}, {})",
                hyperdet::exactalg::format_rational(z1),
                hyperdet::exactalg::format_rational(z2)
            );
        }
    }
    println!("oracle agreed with the determinant on {agreements} samples");
}

fn slice(m: &MDMatrix, layer: usize) -> hyperdet::exactalg::RationalMatrix {
    let s = m.slice(3, layer).unwrap();
    hyperdet::exactalg::RationalMatrix::from_fn(2, 3, |i, j| {
        s.value(&[i as u16 + 1, j as u16 + 1]).unwrap().clone()
    })
}
