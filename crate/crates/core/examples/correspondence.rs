//! From a Weyl element to its family of maps and back, with the quadratic
//! relations checked against `H⋆H`.
//!
//! cargo run --example correspondence -- [seed]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use omega_cofrob::correspondence::{check_theorem, relation_sums, weyl_to_family, FamilyFile};
use omega_cofrob::weyl::random::{random_basis, random_reduced_element};
use omega_cofrob::weyl::Truncation;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(11);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = random_basis(&mut rng, 2);
    let h = random_reduced_element(&mut rng, &basis, 1, 2, 2, 0.6);
    let bounds = Truncation::new(1, 2);

    let family = weyl_to_family(&basis, &h).expect("reduced degree −1 element");
    println!("{}", FamilyFile::from_family(&basis, &family).to_json());
    for ((r, t, g), sum) in relation_sums(&basis, &family, bounds) {
        println!("relation ({r},{t},{g}): {}", if sum.is_zero() { "0" } else { "nonzero" });
    }
    let check = check_theorem(&basis, &h, bounds).expect("reduced degree −1 element");
    println!("{check:?}");
}
