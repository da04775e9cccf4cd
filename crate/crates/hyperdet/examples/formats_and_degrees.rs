//! Format taxonomy tour: which dimension vectors admit a determinant, their
//! derived m-sequences, and the degree of the boundary-format determinant.
//!
//! ```bash
//! cargo run --example formats_and_degrees
//! ```

use hyperdet::determinants::degree_boundary;
use hyperdet::mdmatrix::{Format, FormatClass};

fn main() {
    let formats = [
        vec![3, 3],
        vec![2, 3],
        vec![2, 2, 2],
        vec![2, 2, 3],
        vec![2, 3, 2],
        vec![2, 3, 4],
        vec![2, 2, 4],
        vec![2, 2, 5],
        vec![2, 2, 2, 4],
        vec![2, 1, 2],
    ];
    println!("{:<14} {:<10} {:<16} degree", "format", "class", "m-sequence");
    for dims in formats {
        let f = Format::new(dims);
        let class = f.classify();
        let degree = match class {
            FormatClass::Square2d | FormatClass::Boundary { .. } => {
                degree_boundary(&f).unwrap().to_string()
            }
            _ => "-".to_string(),
        };
        println!(
            "{:<14} {:<10} {:<16} {}",
            f.to_string(),
            class.to_string(),
            format!("{:?}", f.m_sequence()),
            degree
        );
    }

    // a square matrix is the one-level boundary case: the determinant the
    // engine computes for [n, n] is the usual one of degree n
    for n in 2..=6usize {
        assert_eq!(
            degree_boundary(&Format::new(vec![n, n])).unwrap(),
            n.into()
        );
    }
    println!("\nsquare formats [n,n] have boundary degree n, as expected");
}
