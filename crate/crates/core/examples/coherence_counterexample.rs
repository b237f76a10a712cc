//! M_2 acting on ℂ² with p' = 1 is compatible but not coherent; p' = e11 repairs it.

use rtp::limit::random::{corner_family, counterexample_family};
use rtp::limit::{coherence_check, coherence_sufficient_check, validate_corr_family};

fn main() {
    for (name, f) in [("p' = 1", counterexample_family(2)), ("p' = e11", corner_family(2))] {
        let compatible = validate_corr_family(&f, 1e-9);
        let coherent = coherence_check(&f, 1e-9);
        let sufficient = coherence_sufficient_check(&f, 1e-9);
        println!("{name}: compatible {}, coherent {}", compatible.pass, coherent.pass);
        for d in sufficient.failures() {
            println!("  blamed {}", d.location);
        }
    }
}
