//! The 2x2x2 determinant via the pencil-discriminant method: the degree-4
//! polynomial with 12 terms whose vanishing characterizes degeneracy of a
//! trilinear form on three two-dimensional spaces.
//!
//! ```bash
//! cargo run --example cayley_quartic
//! ```

use hyperdet::determinants::{det_pencil_nn2, make_degenerate, DetOptions};
use hyperdet::mdmatrix::{Format, MDMatrix};

fn main() {
    let opts = DetOptions::default();
    let f = Format::new(vec![2, 2, 2]);

    // symbolic: the discriminant in z of det(A + zB), where A and B are the
    // two third-direction slices
    let det = det_pencil_nn2(&MDMatrix::symbolic(f.clone()), &opts).unwrap();
    let p = det.polynomial();
    println!("det[2,2,2] = {p}");
    println!(
        "terms: {}, degree: {}, content removed: {}",
        p.num_terms(),
        p.total_degree(),
        det.normalization.content
    );
    assert_eq!(p.num_terms(), 12);
    assert_eq!(p.total_degree(), 4);

    // the polynomial vanishes exactly on constructed degenerate matrices
    for seed in 0..3u64 {
        let (m, _witness) = make_degenerate(&f, seed).unwrap();
        let value = p.eval(&m.assignment().unwrap()).unwrap();
        println!("degenerate sample (seed {seed}): evaluates to {value}");
        assert!(num_traits::Zero::is_zero(&value));
    }

    // and stays nonzero on random integer matrices
    let random = MDMatrix::random_rational(f, 1, 10);
    let value = det_pencil_nn2(&random, &opts).unwrap().scalar().clone();
    println!("random sample: {}", hyperdet::exactalg::format_rational(&value));
    assert!(!num_traits::Zero::is_zero(&value));
}
