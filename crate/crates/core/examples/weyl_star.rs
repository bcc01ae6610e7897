//! Star product of two random operators, next to the p-q normal-ordered
//! product of their coordinate forms.
//!
//! cargo run --example weyl_star -- [seed]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use omega_cofrob::weyl::random::{random_basis, random_homogeneous_symop};
use omega_cofrob::weyl::{pq_product, star, weyl_to_pq, Truncation, WeylElement};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = random_basis(&mut rng, 2);
    let f = WeylElement::from_component(0, random_homogeneous_symop(&mut rng, &basis, 1, 2, 0.6));
    let g = WeylElement::from_component(0, random_homogeneous_symop(&mut rng, &basis, 2, 1, 0.6));
    let cutoff = Truncation::new(2, 6);

    let names: Vec<String> = basis.elements().iter().map(|e| format!("{}:{}", e.name, e.degree)).collect();
    println!("basis  {}", names.join(" "));
    println!("f      {}", weyl_to_pq(&basis, &f).format(&basis));
    println!("g      {}", weyl_to_pq(&basis, &g).format(&basis));
    let product = weyl_to_pq(&basis, &star(&basis, &f, &g, cutoff));
    let oracle = pq_product(&basis, &weyl_to_pq(&basis, &f), &weyl_to_pq(&basis, &g)).truncated(cutoff);
    println!("f⋆g    {}", product.format(&basis));
    println!("p-q    {}", oracle.format(&basis));
    println!("agree  {}", product == oracle);
}
