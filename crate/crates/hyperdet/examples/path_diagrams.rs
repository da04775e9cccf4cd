//! The combinatorics under the boundary engine, drawn: level sets, a cut
//! sequence with its induced path, the initial diagram's block labels, and
//! the entry index each sequence contributes to the diagonal monomial.
//!
//! ```bash
//! cargo run --example path_diagrams
//! ```

use hyperdet::mdmatrix::Format;
use hyperdet::qpaths::{
    diagonal_monomial, render_diagram, render_qseq, DiagonalVariant, QSeq, QSpace,
};

fn main() {
    // four levels of size 2: level sets of sizes 1, 2, 3, 4, 5
    let space = QSpace::new(&[2, 2, 2, 2], 1 << 20).unwrap();
    println!(
        "level sizes {:?} give {} cut sequences",
        space.m(),
        space.len()
    );

    // the worked sequence: crosses at positions 1, 3, 2, 2 bottom-up
    let q = QSeq {
        subsets: [1u16, 3, 2, 2].iter().map(|&x| vec![x]).collect(),
    };
    println!("\ncut sequence {q} (x = cut, * = path):");
    print!("{}", render_qseq(&space, &q));
    println!("\nits initial diagram (block labels on each level):");
    print!("{}", render_diagram(&space, &space.initial_diagram(&q)));

    let read = space.path_over_diagram(&q, &space.initial_diagram(&q));
    println!(
        "\npath over the initial diagram reads entry ({}, j={})",
        read.iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(","),
        space.j_of(&q)
    );

    // diagonal monomials assembled from all such reads
    let square = diagonal_monomial(&Format::new(vec![4, 4]), DiagonalVariant::Boundary, 1 << 20)
        .unwrap();
    println!("\nboundary diagonal of [4,4]: {square}");
    let closed = diagonal_monomial(&Format::new(vec![2, 2, 2]), DiagonalVariant::Closed, 1 << 20)
        .unwrap();
    println!("closed diagonal of [2,2,2]: {closed}");
}
