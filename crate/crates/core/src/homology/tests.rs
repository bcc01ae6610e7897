use num_traits::Signed;
use proptest::prelude::*;

use super::*;
use crate::cobar::{d_generator, GenLabel};
use crate::graded::{int, ratio};

fn generator_vector(r: usize, t: usize, g: usize) -> GraphVector {
    GraphVector::from_term(PropGraph::generator(GenLabel::new(r, t, g).unwrap()), int(1))
}

/// Dense row reduction over ℚ with the first nonzero pivot.
fn naive_rank(rows: usize, cols: usize, entries: &[(usize, usize, Scalar)]) -> usize {
    let mut m = vec![vec![int(0); cols]; rows];
    for (r, c, v) in entries {
        m[*r][*c] += v;
    }
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != int(0)) else { continue };
        m.swap(rank, pivot);
        for r in 0..rows {
            if r != rank && m[r][col] != int(0) {
                let factor = &m[r][col] / &m[rank][col];
                for c in 0..cols {
                    let delta = &factor * &m[rank][c];
                    m[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn rank_examples() {
    assert_eq!(rank(&SparseMatrix::from_entries(3, 4, &[]).unwrap()), 0);
    let identity: Vec<_> = (0..5).map(|i| (i, i, int(1))).collect();
    assert_eq!(rank(&SparseMatrix::from_entries(5, 5, &identity).unwrap()), 5);
    let dependent = [(0, 0, int(1)), (1, 0, int(2)), (0, 1, ratio(1, 2)), (1, 1, int(1))];
    assert_eq!(rank(&SparseMatrix::from_entries(2, 2, &dependent).unwrap()), 1);
}

#[test]
fn rank_survives_overflow() {
    // entries near 2^40 force the big-integer rerun during elimination
    let big = |k: i64| Scalar::from_integer((k << 40).into());
    let entries = [(0, 0, big(3)), (1, 0, big(5)), (0, 1, big(7)), (1, 1, big(11)), (2, 2, int(1))];
    let m = SparseMatrix::from_entries(3, 3, &entries).unwrap();
    assert_eq!(rank(&m), naive_rank(3, 3, &entries));
}

fn arb_matrix() -> impl Strategy<Value = (usize, usize, Vec<(usize, usize, Scalar)>)> {
    (1usize..7, 1usize..7).prop_flat_map(|(rows, cols)| {
        let entry = (0..rows, 0..cols, -3i64..=3, 1i64..=3).prop_map(|(r, c, n, d)| (r, c, ratio(n, d)));
        (Just(rows), Just(cols), prop::collection::vec(entry, 0..20))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_matches_naive_reduction((rows, cols, entries) in arb_matrix()) {
        let m = SparseMatrix::from_entries(rows, cols, &entries).unwrap();
        prop_assert_eq!(rank(&m), naive_rank(rows, cols, &entries));
    }
}

#[test]
fn mu_cell() {
    let cell = build_complex(2, 1, 0, 10);
    assert_eq!((cell.max_vertices(), cell.dim(1), cell.truncated), (1, 1, false));
    assert!(cell.boundary(1).is_zero());
    assert_eq!(cell.betti().unwrap(), vec![1]);
    assert_eq!(build_complex(1, 2, 0, 10).betti().unwrap(), vec![1]);
}

#[test]
fn genus_one_loop_cell() {
    let cell = build_complex(1, 1, 1, 10);
    assert_eq!((cell.dim(1), cell.dim(2)), (1, 1));
    let d = cell.boundary(1);
    let expected = d_generator(GenLabel::new(1, 1, 1).unwrap()).unwrap();
    let (graph, coeff) = expected.iter().next().unwrap();
    assert_eq!(cell.basis(2), vec![graph.clone()]);
    assert_eq!(d.entry(0, 0), *coeff);
    assert_eq!(coeff.abs(), ratio(1, 2));
    assert_eq!(cell.betti().unwrap(), vec![0, 0]);
}

#[test]
fn truncated_cells_refuse_betti() {
    let cell = build_complex(3, 2, 0, 2);
    assert!(cell.truncated);
    assert!(matches!(cell.betti(), Err(HomologyError::Truncated { .. })));
}

#[test]
fn boundaries_compose_to_zero() {
    for (r, t, g) in [(3, 2, 0), (2, 2, 1), (3, 1, 1), (2, 1, 2)] {
        let cell = build_complex(r, t, g, 12);
        for p in 1..cell.max_vertices() {
            assert!(cell.boundary(p + 1).product(&cell.boundary(p)).is_zero(), "({r},{t},{g}) p={p}");
        }
    }
}

#[test]
fn euler_characteristic_two_ways() {
    for (r, t, g) in [(3, 2, 0), (2, 2, 1), (4, 1, 1), (1, 2, 2)] {
        let cell = build_complex(r, t, g, 12);
        let betti = cell.betti().unwrap();
        let from_betti: i64 = betti.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { -(b as i64) } else { b as i64 }).sum();
        assert_eq!(cell.euler_characteristic(), from_betti);
        let summary = CellSummary::compute(r, t, g, Limits::default());
        assert_eq!(summary.betti.as_ref(), Some(&betti));
        assert_eq!(summary.euler_from_chains(), cell.euler_characteristic());
    }
}

#[test]
fn cycles_and_boundaries() {
    let mu = build_complex(2, 1, 0, 10);
    let generator = generator_vector(2, 1, 0);
    assert!(mu.is_cycle(&generator).unwrap());
    assert!(!mu.is_boundary(&generator).unwrap());
    assert!(mu.is_cycle(&GraphVector::new()).unwrap());
    assert!(mu.is_boundary(&GraphVector::new()).unwrap());

    let cell = build_complex(2, 2, 1, 10);
    for graph in cell.basis(2).into_iter().take(5) {
        let image = differential(&GraphVector::from_term(graph, int(1)));
        assert!(cell.is_boundary(&image).unwrap());
        assert!(cell.is_cycle(&image).unwrap());
    }
    let mixed = {
        let mut v = generator_vector(2, 2, 1);
        v += &GraphVector::from_term(cell.basis(2)[0].clone(), int(1));
        v
    };
    assert_eq!(cell.is_boundary(&mixed), Err(HomologyError::Inhomogeneous));
    assert!(matches!(mu.is_cycle(&generator_vector(1, 2, 0)), Err(HomologyError::NotInCell(_))));
}

#[test]
fn relation_classes_are_differentials_of_generators() {
    let d = |r, t, g| d_generator(GenLabel::new(r, t, g).unwrap()).unwrap();
    assert_eq!(relation_class(Relation::Jacobi), d(3, 1, 0));
    assert_eq!(relation_class(Relation::CoJacobi), d(1, 3, 0));
    assert_eq!(relation_class(Relation::FiveTerm), d(2, 2, 0));
    assert_eq!(relation_class(Relation::Involutivity), d(1, 1, 1).scaled(&int(2)));
}

#[test]
fn relation_classes_vanish_in_homology() {
    for relation in Relation::ALL {
        let (r, t, g) = relation.cell();
        let cell = build_complex(r, t, g, 10);
        let class = relation_class(relation);
        assert!(!class.is_zero());
        assert!(cell.is_cycle(&class).unwrap(), "{relation}");
        assert!(cell.is_boundary(&class).unwrap(), "{relation}");
    }
}

#[test]
fn relation_names_roundtrip() {
    for relation in Relation::ALL {
        assert_eq!(relation.name().parse::<Relation>(), Ok(relation));
    }
    assert!("jacoby".parse::<Relation>().is_err());
}

#[test]
fn tables_do_not_depend_on_thread_count() {
    let cells = [(2, 1, 0), (3, 2, 0), (2, 2, 1), (3, 1, 1), (2, 1, 2)];
    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
            let table = betti_grid(&cells, Limits::default());
            (table.to_csv(), table.to_json())
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn csv_layout() {
    let table = betti_grid(&[(2, 1, 0), (3, 2, 0)], Limits { p_max: 2, max_basis: 1000 });
    let two_vertex = crate::cobar::enumerate_basis(3, 2, 0, 2).len();
    assert_eq!(
        table.to_csv(),
        format!("r,t,g,degree,dim_chains,betti\n2,1,0,-1,1,1\n3,2,0,-1,1,truncated\n3,2,0,-2,{two_vertex},truncated\n")
    );
    assert!(!table.is_complete());
    assert!(table.to_json().contains("\"status\": \"truncated\""));
}

#[test]
fn ranked_split_agrees_with_exact_boundaries() {
    // nothing skipped, so rows are dependent and the exact rerun is taken
    for (r, t, g) in [(2, 2, 0), (3, 1, 0), (2, 1, 1), (3, 2, 0)] {
        let cell = build_complex(r, t, g, 4);
        let mut level = crate::cobar::first_level(r, t, g).unwrap();
        for p in 1..cell.max_vertices() {
            let (next, rank, pivots) = super::table::ranked_split(&level, &vec![true; level.basis.len()], usize::MAX).unwrap();
            assert_eq!(rank, super::rank(&cell.boundary(p)), "({r},{t},{g}) p={p}");
            assert_eq!(pivots.len(), rank);
            level = next;
        }
    }
}

proptest! {
    #[test]
    fn modular_rank_matches_exact(rows in 1usize..8, cols in 1usize..8, seed in any::<u64>()) {
        use crate::cobar::Coefficient;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        // entries of size ≤ 3 keep every minor below the prime
        let dense: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| if rng.gen_bool(0.5) { rng.gen_range(-3..=3) } else { 0 }).collect()).collect();
        let residue = |x: i64| super::modular::Residue::from_small(SmallCoeff::from_integer(x));
        let vectors: Vec<Vec<(u32, super::modular::Residue)>> = dense
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j as u32, residue(x))).collect())
            .collect();
        let (modular, _) = super::modular::rank_mod_prime(super::modular::to_rows(vectors), cols);
        let entries: Vec<(usize, usize, Scalar)> = dense
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().filter(|(_, &x)| x != 0).map(move |(j, &x)| (j, i, int(x))))
            .collect();
        let exact = super::rank(&SparseMatrix::from_entries(cols, rows, &entries).unwrap());
        prop_assert_eq!(modular, exact);
    }
}
