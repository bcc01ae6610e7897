//! Square-zero verdicts for a failing element and for one built to pass.
//!
//! cargo run --example square_zero

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use omega_cofrob::graded::{int, GradedBasis, SymMonomial};
use omega_cofrob::weyl::random::random_square_zero_element;
use omega_cofrob::weyl::{square_zero_report, SquareZeroVerdict, SymOp, Truncation, WeylElement};

fn entry(basis: &GradedBasis, input: &[usize], output: &[usize]) -> SymOp {
    let mut op = SymOp::zero(input.len(), output.len(), -1);
    let mono = |e: &[usize]| SymMonomial::from_sorted(e.to_vec());
    op.add_entry(basis, mono(input), mono(output), int(1)).expect("degree −1 entry");
    op
}

fn report(basis: &GradedBasis, label: &str, h: &WeylElement) {
    match square_zero_report(basis, h, Truncation::new(2, 3)).expect("reduced") {
        SquareZeroVerdict::Zero { .. } => println!("{label}: H⋆H = 0"),
        SquareZeroVerdict::NonZero { genus, arity_in, arity_out, input, output } => {
            let image: Vec<String> = output.iter().map(|(m, c)| format!("{c} {}", basis.format_monomial(m))).collect();
            println!("{label}: ħ^{genus} S^{arity_in}→S^{arity_out} sends {} to {}", basis.format_monomial(&input), image.join(" + "));
        }
    }
}

fn main() {
    let basis = GradedBasis::from_pairs(&[("u", 1), ("x", 0), ("y", -1)]).expect("distinct names");
    // u ↦ x·x followed by x ↦ y
    let mut h = WeylElement::from_component(0, entry(&basis, &[0], &[1, 1]));
    h.add_component(0, &entry(&basis, &[1], &[2]));
    report(&basis, "u ↦ x², x ↦ y", &h);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = random_square_zero_element(&mut rng, &basis, 1, 3, 4, 0.5);
    report(&basis, "split element", &h);
}
