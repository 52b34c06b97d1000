// Runs every example's body so the examples stay in sync with the library.

#[path = "../examples/bounds.rs"]
mod bounds;
#[path = "../examples/decomposition.rs"]
mod decomposition;
#[path = "../examples/diagonalization.rs"]
mod diagonalization;
#[path = "../examples/finite_fields.rs"]
mod finite_fields;
#[path = "../examples/gamma.rs"]
mod gamma;
#[path = "../examples/indicators.rs"]
mod indicators;
#[path = "../examples/poset_lemma.rs"]
mod poset_lemma;
#[path = "../examples/sandwich.rs"]
mod sandwich;
#[path = "../examples/selftest.rs"]
mod selftest;
#[path = "../examples/tensor_semantics.rs"]
mod tensor_semantics;

#[test]
fn examples_run() {
    bounds::run_example().unwrap();
    decomposition::run_example().unwrap();
    diagonalization::run_example().unwrap();
    finite_fields::run_example().unwrap();
    gamma::run_example().unwrap();
    indicators::run_example().unwrap();
    lattice::run_example().unwrap();
    poset_lemma::run_example().unwrap();
    sandwich::run_example().unwrap();
    search::run_example().unwrap();
    selftest::run_example().unwrap();
    tensor_semantics::run_example().unwrap();
}
