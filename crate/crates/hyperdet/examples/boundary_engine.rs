//! The signed-double-sum engine for boundary formats, exercised on 2x2x3:
//! the smallest format where the combinatorial machinery goes beyond the
//! square-matrix expansion.
//!
//! Also prints the calibration report: of the eight ways to read the
//! engine's index bookkeeping, exactly one reproduces square determinants
//! and survives the degeneracy oracles, and that one ships as the default.
//!
//! ```bash
//! cargo run --example boundary_engine
//! ```

use hyperdet::determinants::{
    calibration_report, det_boundary, multidegree_profile, DetOptions, EnginePolicy,
};
use hyperdet::mdmatrix::{Format, MDMatrix};

fn main() {
    let opts = DetOptions::default();
    let f = Format::new(vec![2, 2, 3]);
    let det = det_boundary(&MDMatrix::symbolic(f.clone()), &opts).unwrap();
    let p = det.polynomial();
    println!("det[2,2,3] has {} terms, degree {}", p.num_terms(), p.total_degree());
    println!("multidegree per direction: {:?}", multidegree_profile(p, &f).unwrap());
    println!("first terms: {}...", &p.to_string()[..80.min(p.to_string().len())]);

    // the same engine at one level is the permutation expansion
    let square = det_boundary(&MDMatrix::symbolic(Format::new(vec![3, 3])), &opts).unwrap();
    println!("\ndet[3,3] via the engine: {}", square.polynomial());

    println!("\ncalibration of the eight interpretation policies:");
    for outcome in calibration_report(1_000_000) {
        let name = outcome.policy.name();
        let default_marker = if outcome.policy == EnginePolicy::default() {
            " (default)"
        } else {
            ""
        };
        match outcome.result {
            Ok(()) => println!("  {name}{default_marker}: passes"),
            Err(e) => println!("  {name}: fails ({e})"),
        }
    }
}
