use gkz::residue::toric_residue;
use gkz::weyl::verify_hypergeometric;
use gkz::{classify, SearchLimits};
use gkz_bench::{certification_inputs, classification_corpus, residue_inputs};

#[test]
fn benchmark_inputs_are_valid() {
    for (name, a) in classification_corpus() {
        assert!(classify(&a, SearchLimits::default()).is_ok(), "{name}");
    }
    for (name, a, f) in certification_inputs() {
        assert!(verify_hypergeometric(&a, &f, 1_000_000).unwrap().is_certified(), "{name}");
    }
    for (name, p) in residue_inputs() {
        assert!(toric_residue(&p).is_ok(), "{name}");
    }
}
