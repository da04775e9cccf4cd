//! Constructing certified degenerate matrices: sample witness vectors, solve
//! the critical system exactly, and confirm that every determinant method
//! vanishes on the result. The witness is ground truth independent of any
//! determinant algorithm.
//!
//! ```bash
//! cargo run --example degeneracy_witness
//! ```

use hyperdet::determinants::{det_dispatch, make_degenerate, witness_check, DetOptions};
use hyperdet::exactalg::format_rational;
use hyperdet::mdmatrix::Format;

fn main() {
    let opts = DetOptions::default();
    for dims in [vec![2, 2], vec![2, 2, 2], vec![2, 2, 3], vec![2, 3, 2]] {
        let f = Format::new(dims);
        let (matrix, witness) = make_degenerate(&f, 7).unwrap();
        println!("format {f}:");
        for (k, v) in witness.vectors.iter().enumerate() {
            let coords: Vec<String> = v.iter().map(format_rational).collect();
            println!("  x({}) = ({})", k + 1, coords.join(", "));
        }
        let entries: Vec<String> = matrix
            .values()
            .unwrap()
            .iter()
            .map(format_rational)
            .collect();
        println!("  entries: [{}]", entries.join(", "));
        assert!(witness_check(&matrix, &witness).unwrap());
        let det = det_dispatch(&matrix, &opts).unwrap();
        println!("  witness check passes; det = {} ({})\n", det.value, det.method);
        assert!(det.value.is_zero());
    }
}
