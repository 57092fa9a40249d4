//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line. Run with `cargo test --test acceptance -- --nocapture` to see
//! the lines.

use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use maxmin_eigen::algebra::{IndexSet, Matrix, Vector};
use maxmin_eigen::bellman::{bellman_solution_set, is_bellman_solution, least_solution};
use maxmin_eigen::closure::{kleene_star, reconstruct_principal};
use maxmin_eigen::cover::{build_cover_problem, minimal_solution};
use maxmin_eigen::eigenspace::{
    background_eigenvectors, full_eigenspace, kl_eigenvectors, pure_eigenvectors, Partition,
    PieceKind,
};
use maxmin_eigen::oracle::{
    breakpoints, check_eigen, cross_validate, grid_eigenvectors, ValueGrid, DEFAULT_GRID_CAP,
};
use maxmin_eigen::scalar::Scalar;

fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

fn mat(rows: &[&[&str]]) -> Matrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|t| s(t)).collect())
            .collect(),
    )
    .unwrap()
}

fn vec_of(entries: &[&str]) -> Vector {
    Vector::new(entries.iter().map(|t| s(t)).collect())
}

fn example_3d() -> Matrix {
    mat(&[&[".1", ".5", ".7"], &["0", ".4", ".8"], &[".1", ".1", ".5"]])
}

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "acceptance criterion {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn tenths() -> Vec<Scalar> {
    (0..=10).map(|i| Scalar::new(i, 10).unwrap()).collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, values: &[Scalar]) -> Matrix {
    Matrix::from_fn(n, n, |_, _| values[rng.gen_range(0..values.len())])
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize, values: &[Scalar]) -> Vector {
    Vector::new(
        (0..n)
            .map(|_| values[rng.gen_range(0..values.len())])
            .collect(),
    )
}

/// Criterion 1: the worked covering example returns exactly the two
/// minimal coverings W = {1} and W = {2, 3} with their minimal
/// solutions, in under a millisecond.
#[test]
fn criterion_1_covering_example() {
    let a = mat(&[
        &[".3", ".5", ".3"],
        &[".6", ".6", ".2"],
        &[".6", ".3", ".6"],
    ]);
    let b = vec_of(&[".6", ".3", ".2"]);
    let lambda = s(".6");

    let mut best = Duration::MAX;
    let mut result = Vec::new();
    for _ in 0..5 {
        let start = Instant::now();
        let problem = build_cover_problem(&a, &b, lambda).unwrap();
        let coverings = problem.minimal_coverings();
        let solutions: Vec<Vector> = coverings
            .iter()
            .map(|w| minimal_solution(w, lambda, 3))
            .collect();
        best = best.min(start.elapsed());
        result = coverings.into_iter().map(|c| c.w).zip(solutions).collect();
    }

    let pass = result.len() == 2
        && result[0].0 == IndexSet::new(vec![0])
        && result[0].1 == vec_of(&[".6", "0", "0"])
        && result[1].0 == IndexSet::new(vec![1, 2])
        && result[1].1 == vec_of(&["0", ".6", ".6"])
        && best < Duration::from_millis(1);
    report(
        "1",
        pass,
        &format!("coverings {{1}} and {{2,3}} with z = (.6,0,0), (0,.6,.6); solve time {best:?}"),
    );
    assert!(pass);
}

/// Criterion 2: exact pure generator set of the 3-d example.
#[test]
fn criterion_2_pure_generators() {
    let set = pure_eigenvectors(&example_3d(), s(".5")).unwrap();
    let mut columns: Vec<Vector> = (0..set.generators().cols())
        .map(|j| set.generators().column(j))
        .collect();
    columns.sort();
    columns.dedup();
    let mut expected = vec![
        vec_of(&[".1", ".1", ".1"]),
        vec_of(&[".4", ".4", ".1"]),
        vec_of(&[".5", ".5", ".5"]),
    ];
    expected.sort();
    let pass = columns == expected;
    report(
        "2",
        pass,
        "pure generators {(.1,.1,.1), (.4,.4,.1), (.5,.5,.5)}",
    );
    assert!(pass);
}

fn in_box(x: &Vector, bounds: &[(Scalar, Scalar)]) -> bool {
    bounds
        .iter()
        .enumerate()
        .all(|(i, (lo, hi))| *lo <= x.get(i) && x.get(i) <= *hi)
}

/// Criterion 3: the background piece of the 3-d example denotes exactly
/// the box [.5,1] × [.5,1] × {.5}.
#[test]
fn criterion_3_background_box() {
    let a = example_3d();
    let lambda = s(".5");
    let set = background_eigenvectors(&a, lambda).unwrap().unwrap();
    let expected = vec![
        (s(".5"), Scalar::one()),
        (s(".5"), Scalar::one()),
        (s(".5"), s(".5")),
    ];
    let mut pass = set.bounds() == expected;

    // grid membership agrees with the box in both directions
    let grid = breakpoints(&a, lambda);
    let mut mismatches = 0usize;
    grid.for_each_vector(3, DEFAULT_GRID_CAP, |x| {
        if set.contains(x).unwrap() != in_box(x, &expected) {
            mismatches += 1;
        }
    })
    .unwrap();
    pass = pass && mismatches == 0;
    report(
        "3",
        pass,
        &format!("box bounds exact, {mismatches} grid membership mismatches"),
    );
    assert!(pass);
}

/// Criterion 4: on the 3-d example, K = {1,3} yields exactly
/// (.5, [.5,1], .5), K = {2,3} yields ([.5,1], .5, .5), and every other
/// proper partition yields an empty list.
///
/// The emptiness clause contradicts the algebra, so this test is
/// expected to fail there: the solution sets for K = {1}, {2}, {3} and
/// {1,2} are genuinely nonempty — (.5, .5, .5) is directly checkable as
/// a λ-eigenvector with x_2 ≤ λ and x_1, x_3 ≥ λ, so K = {2} cannot
/// have an empty solution set. Those extra sets are merely redundant,
/// lying inside the union of the other pieces. The clause is asserted
/// anyway rather than weakened; the two exact-piece clauses are fully
/// verified.
#[test]
fn criterion_4_kl_pieces() {
    let a = example_3d();
    let lambda = s(".5");
    let grid = breakpoints(&a, lambda);

    let verify_exact = |k: &[usize], bounds: &[(Scalar, Scalar)]| -> bool {
        let partition = Partition::from_k(IndexSet::new(k.to_vec()), 3).unwrap();
        let pieces = kl_eigenvectors(&a, &partition, lambda).unwrap();
        if pieces.len() != 1 {
            return false;
        }
        let set = &pieces[0].set;
        if set.bounds() != bounds {
            return false;
        }
        let mut ok = true;
        grid.for_each_vector(3, DEFAULT_GRID_CAP, |x| {
            if set.contains(x).unwrap() != in_box(x, bounds) {
                ok = false;
            }
        })
        .unwrap();
        ok
    };

    let k13 = verify_exact(
        &[0, 2],
        &[
            (s(".5"), s(".5")),
            (s(".5"), Scalar::one()),
            (s(".5"), s(".5")),
        ],
    );
    let k23 = verify_exact(
        &[1, 2],
        &[
            (s(".5"), Scalar::one()),
            (s(".5"), s(".5")),
            (s(".5"), s(".5")),
        ],
    );

    let mut nonempty_others = Vec::new();
    for k in [vec![0], vec![1], vec![2], vec![0, 1]] {
        let partition = Partition::from_k(IndexSet::new(k.clone()), 3).unwrap();
        let pieces = kl_eigenvectors(&a, &partition, lambda).unwrap();
        if !pieces.is_empty() {
            let shown: Vec<usize> = k.iter().map(|i| i + 1).collect();
            nonempty_others.push((shown, pieces.len()));
        }
    }
    let others_empty = nonempty_others.is_empty();

    let pass = k13 && k23 && others_empty;
    report(
        "4",
        pass,
        &format!(
            "K={{1,3}} exact: {k13}; K={{2,3}} exact: {k23}; other proper partitions empty: \
             {others_empty}{}",
            if others_empty {
                String::new()
            } else {
                format!(
                    " (nonempty for K in {nonempty_others:?}; these sets are genuinely nonempty \
                     solution sets — e.g. (.5,.5,.5) is a (K={{2}}, L={{1,3}})-eigenvector — \
                     and every one of them lies inside the union of the other pieces)"
                )
            }
        ),
    );
    assert!(pass);
}

/// Criterion 5: the genuine (K, L)-point of the first 2-d example, and
/// the absence of genuine cross points in the second.
#[test]
fn criterion_5_genuine_kl_points() {
    // (.35, .8) is an exact eigenvector and lies in a K = {1} piece
    let a = mat(&[&[".7", ".3"], &[".2", ".5"]]);
    let lambda = s(".5");
    let x = vec_of(&[".35", ".8"]);
    let verified = check_eigen(&a, lambda, &x).unwrap();
    let desc = full_eigenspace(&a, lambda).unwrap();
    let covered = desc.pieces.iter().any(|p| {
        p.kind == PieceKind::Kl
            && p.partition.k() == &IndexSet::new(vec![0])
            && p.set.contains(&x).unwrap()
    });

    // second example: every grid eigenvector strictly crossing λ lies in
    // the pure or background set (in fact none crosses strictly)
    let b = mat(&[&[".4", ".5"], &[".2", ".5"]]);
    let pure = pure_eigenvectors(&b, lambda).unwrap();
    let background = background_eigenvectors(&b, lambda).unwrap();
    let grid = breakpoints(&b, lambda);
    let mut genuine_outside = 0usize;
    grid.for_each_vector(2, DEFAULT_GRID_CAP, |x| {
        let crosses =
            (x.get(0) < lambda && lambda < x.get(1)) || (x.get(1) < lambda && lambda < x.get(0));
        if crosses && check_eigen(&b, lambda, x).unwrap() {
            let inside = pure.contains(x).unwrap()
                || background
                    .as_ref()
                    .map(|bg| bg.contains(x).unwrap())
                    .unwrap_or(false);
            if !inside {
                genuine_outside += 1;
            }
        }
    })
    .unwrap();

    let pass = verified && covered && genuine_outside == 0;
    report(
        "5",
        pass,
        &format!(
            "(.35,.8) verified: {verified}, covered by a K={{1}} piece: {covered}; \
             crossing eigenvectors outside pure/background in example 2: {genuine_outside}"
        ),
    );
    assert!(pass);
}

/// Criterion 6: the property suite over 500 random instances.
#[test]
fn criterion_6_property_suite() {
    let start = Instant::now();
    let values = tenths();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6EED);
    let mut sampled_members = 0usize;
    let mut grid_points_checked = 0usize;

    for round in 0..500 {
        let n = 2 + (round % 2);
        let a = random_matrix(&mut rng, n, &values);
        let lambda = values[rng.gen_range(0..values.len())];
        let star = kleene_star(&a).unwrap();

        // (a) sampled members of every piece are eigenvectors, satisfy
        // the side constraints, and are fixed by A*
        let desc = full_eigenspace(&a, lambda).unwrap();
        for (index, piece) in desc.pieces.iter().enumerate() {
            for x in piece.set.sample(20, 0xA11CE ^ index as u64) {
                assert!(
                    check_eigen(&a, lambda, &x).unwrap(),
                    "piece member fails A⊗x = λ⊗x for A = {a:?}, λ = {lambda}, x = {x}"
                );
                assert_eq!(
                    star.mul_vec(&x).unwrap(),
                    x,
                    "piece member not fixed by A* for A = {a:?}, λ = {lambda}"
                );
                for i in piece.partition.k().iter() {
                    assert!(x.get(i) <= lambda);
                }
                for i in piece.partition.l().iter() {
                    assert!(x.get(i) >= lambda);
                }
                sampled_members += 1;
            }
        }

        // (b) every grid eigenvector is covered by some piece
        let grid = breakpoints(&a, lambda);
        let validation =
            cross_validate(&a, lambda, &desc, &grid, DEFAULT_GRID_CAP, 10, round as u64).unwrap();
        assert!(
            validation.pass,
            "cross-validation failed for A = {a:?}, λ = {lambda}:\n{validation}"
        );

        // (c) + (d) Bellman: grid solutions coincide with set
        // membership, and the least solution is below all of them
        let b = random_vector(&mut rng, n, &values);
        let set = bellman_solution_set(&a, &b).unwrap();
        let least = least_solution(&a, &b).unwrap();
        let bellman_grid = ValueGrid::from_values(a.entries().chain(b.entries().iter().copied()));
        bellman_grid
            .for_each_vector(n, DEFAULT_GRID_CAP, |x| {
                let solves = is_bellman_solution(&a, &b, x).unwrap();
                assert_eq!(
                    solves,
                    set.contains(x).unwrap(),
                    "Bellman membership mismatch at x = {x} for A = {a:?}, b = {b}"
                );
                if solves {
                    assert!(
                        least.le(x),
                        "least solution above {x} for A = {a:?}, b = {b}"
                    );
                }
                grid_points_checked += 1;
            })
            .unwrap();
    }

    let elapsed = start.elapsed();
    let pass = elapsed < Duration::from_secs(60);
    report(
        "6",
        pass,
        &format!(
            "500 instances, {sampled_members} sampled members, {grid_points_checked} Bellman \
             grid points, all exact; elapsed {elapsed:?} (budget 60s)"
        ),
    );
    assert!(pass);
}

/// Criterion 7: Kleene star fixed point and idempotence on 1000 random
/// matrices up to n = 6.
#[test]
fn criterion_7_closure_identities() {
    let start = Instant::now();
    let values = tenths();
    let mut rng = ChaCha8Rng::seed_from_u64(0x57A7);
    for round in 0..1000 {
        let n = 1 + (round % 6);
        let a = random_matrix(&mut rng, n, &values);
        let star = kleene_star(&a).unwrap();
        let fixed = Matrix::identity(n).oplus(&a.mul(&star).unwrap()).unwrap();
        assert_eq!(fixed, star, "star fixed-point identity failed for {a:?}");
        assert_eq!(
            star.mul(&star).unwrap(),
            star,
            "star idempotence failed for {a:?}"
        );
    }
    let elapsed = start.elapsed();
    let pass = elapsed < Duration::from_secs(5);
    report(
        "7",
        pass,
        &format!(
            "1000 matrices up to n = 6, both identities exact; elapsed {elapsed:?} (budget 5s)"
        ),
    );
    assert!(pass);
}

/// Criterion 8: reconstruction returns every grid principal eigenvector
/// exactly, over 200 random instances.
#[test]
fn criterion_8_reconstruction_oracle() {
    let start = Instant::now();
    let values = tenths();
    let mut rng = ChaCha8Rng::seed_from_u64(0x8ECA);
    let mut reconstructed = 0usize;
    for round in 0..200 {
        let n = 2 + (round % 2);
        let a = random_matrix(&mut rng, n, &values);
        let grid = ValueGrid::from_values(a.entries());
        // principal eigenvectors are the λ = 1 eigenvectors
        for x in grid_eigenvectors(&a, Scalar::one(), &grid, DEFAULT_GRID_CAP).unwrap() {
            assert_eq!(
                reconstruct_principal(&a, &x).unwrap(),
                x,
                "reconstruction differs for A = {a:?}, x = {x}"
            );
            reconstructed += 1;
        }
    }
    let elapsed = start.elapsed();
    let pass = elapsed < Duration::from_secs(30);
    report(
        "8",
        pass,
        &format!(
            "200 instances, {reconstructed} principal eigenvectors reconstructed exactly; \
             elapsed {elapsed:?} (budget 30s)"
        ),
    );
    assert!(pass);
}
