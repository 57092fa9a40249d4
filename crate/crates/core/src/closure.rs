//! Metric matrix, Kleene star and the principal eigenproblem.
//!
//! For square `A`, the metric matrix is `A⁺ = A ⊕ A² ⊕ … ⊕ Aⁿ` and the
//! Kleene star is `A* = I ⊕ A⁺`; entry `(i, j)` of `A⁺` is the best
//! bottleneck weight over all walks from `i` to `j`. The principal
//! eigenvectors — the solutions of `A ⊗ x = x` — form a max-min space
//! generated by the columns `a⁺_ii ⊗ (A*)_·i`, and every principal
//! eigenvector is recovered from those generators through the strongly
//! connected components of its saturation graph.

use std::collections::BTreeSet;

use crate::algebra::{IndexSet, Matrix, Vector};
use crate::error::Error;

/// Metric matrix `A⁺ = A ⊕ A² ⊕ … ⊕ Aⁿ`.
///
/// The series stabilizes after `n` terms because walks longer than `n`
/// revisit a node and can be shortened without lowering their weight.
pub fn metric_matrix(a: &Matrix) -> Result<Matrix, Error> {
    if !a.is_square() {
        return Err(Error::shape(format!(
            "metric matrix of a non-square {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut power = a.clone();
    let mut acc = a.clone();
    for _ in 1..n {
        power = power.mul(a)?;
        acc = acc.oplus(&power)?;
    }
    Ok(acc)
}

/// Kleene star `A* = I ⊕ A ⊕ … ⊕ A^{n-1}`, equal to `I ⊕ A⁺` since the
/// unit diagonal dominates the n-th power.
pub fn kleene_star(a: &Matrix) -> Result<Matrix, Error> {
    if a.rows() == 0 {
        return Ok(Matrix::identity(0));
    }
    Matrix::identity(a.rows()).oplus(&metric_matrix(a)?)
}

/// The generators `a⁺_ii ⊗ (A*)_·i` of the principal eigenspace,
/// one per index. Each satisfies `A ⊗ v = v`.
pub fn principal_generators(a: &Matrix) -> Result<Vec<Vector>, Error> {
    let plus = metric_matrix(a)?;
    let star = Matrix::identity(a.rows()).oplus(&plus)?;
    Ok((0..a.rows())
        .map(|i| star.column(i).scale(plus.get(i, i)))
        .collect())
}

/// The generators of [`principal_generators`] as the columns of an
/// `n × n` matrix.
pub fn principal_generator_matrix(a: &Matrix) -> Result<Matrix, Error> {
    let cols = principal_generators(a)?;
    Ok(Matrix::from_columns(a.rows(), &cols))
}

/// Whether `A ⊗ x = x`; the index of the first failing row otherwise.
fn principal_defect(a: &Matrix, x: &Vector) -> Result<Option<usize>, Error> {
    let ax = a.mul_vec(x)?;
    Ok((0..x.dim()).find(|&i| ax.get(i) != x.get(i)))
}

/// True iff `x` is a principal eigenvector of `A`.
pub fn is_principal(a: &Matrix, x: &Vector) -> Result<bool, Error> {
    Ok(principal_defect(a, x)?.is_none())
}

/// The saturation graph of a principal eigenvector: all edges `(i, j)`
/// with `a_ij ⊗ x_j = x_i`, plus their endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    nodes: IndexSet,
}

impl SaturationGraph {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    pub fn nodes(&self) -> &IndexSet {
        &self.nodes
    }

    /// Strongly connected components that contain a cycle of the graph
    /// (at least two nodes, or one node with a self-loop), each sorted.
    /// Components are returned sorted by smallest member.
    pub fn cyclic_components(&self) -> Vec<Vec<usize>> {
        let mut adjacency = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            adjacency[i].push(j);
        }
        let mut components = tarjan_scc(&adjacency);
        components.retain(|comp| comp.len() > 1 || self.has_edge(comp[0], comp[0]));
        for comp in &mut components {
            comp.sort_unstable();
        }
        components.sort_by_key(|comp| comp[0]);
        components
    }
}

/// Builds the saturation graph `Sat(A, x)`; errors unless `A ⊗ x = x`.
pub fn saturation_graph(a: &Matrix, x: &Vector) -> Result<SaturationGraph, Error> {
    if let Some(row) = principal_defect(a, x)? {
        return Err(Error::NotPrincipal { row });
    }
    let n = a.rows();
    let mut edges = BTreeSet::new();
    let mut nodes = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if a.get(i, j).otimes(x.get(j)) == x.get(i) {
                edges.insert((i, j));
                nodes.push(i);
                nodes.push(j);
            }
        }
    }
    Ok(SaturationGraph {
        n,
        edges,
        nodes: IndexSet::new(nodes),
    })
}

/// One node from each cyclic strongly connected component of the
/// saturation graph — the smallest index, for determinism. The
/// representation below holds for any choice of representatives.
pub fn cycle_representatives(graph: &SaturationGraph) -> IndexSet {
    graph
        .cyclic_components()
        .iter()
        .map(|comp| comp[0])
        .collect()
}

/// Reconstructs a principal eigenvector from the generators:
/// `x = ⊕_{i ∈ C(A,x)} x_i ⊗ a⁺_ii ⊗ (A*)_·i`.
pub fn reconstruct_principal(a: &Matrix, x: &Vector) -> Result<Vector, Error> {
    let graph = saturation_graph(a, x)?;
    reconstruct_with_representatives(a, x, &cycle_representatives(&graph))
}

/// Same reconstruction with an explicit choice of component
/// representatives, used to test that the choice does not matter.
pub fn reconstruct_with_representatives(
    a: &Matrix,
    x: &Vector,
    representatives: &IndexSet,
) -> Result<Vector, Error> {
    if let Some(row) = principal_defect(a, x)? {
        return Err(Error::NotPrincipal { row });
    }
    let plus = metric_matrix(a)?;
    let star = Matrix::identity(a.rows()).oplus(&plus)?;
    let mut acc = Vector::zeros(a.rows());
    for i in representatives.iter() {
        let term = star.column(i).scale(plus.get(i, i)).scale(x.get(i));
        acc = acc.oplus(&term)?;
    }
    Ok(acc)
}

fn tarjan_scc(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        adjacency: &'a [Vec<usize>],
        index: usize,
        stack: Vec<usize>,
        on_stack: Vec<bool>,
        order: Vec<Option<usize>>,
        low: Vec<usize>,
        components: Vec<Vec<usize>>,
    }

    fn connect(v: usize, st: &mut State) {
        st.order[v] = Some(st.index);
        st.low[v] = st.index;
        st.index += 1;
        st.stack.push(v);
        st.on_stack[v] = true;

        for &w in &st.adjacency[v] {
            if st.order[w].is_none() {
                connect(w, st);
                st.low[v] = st.low[v].min(st.low[w]);
            } else if st.on_stack[w] {
                st.low[v] = st.low[v].min(st.order[w].unwrap());
            }
        }

        if st.low[v] == st.order[v].unwrap() {
            let mut comp = Vec::new();
            loop {
                let w = st.stack.pop().expect("tarjan stack underflow");
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            st.components.push(comp);
        }
    }

    let n = adjacency.len();
    let mut st = State {
        adjacency,
        index: 0,
        stack: Vec::new(),
        on_stack: vec![false; n],
        order: vec![None; n],
        low: vec![0; n],
        components: Vec::new(),
    };
    for v in 0..n {
        if st.order[v].is_none() {
            connect(v, &mut st);
        }
    }
    st.components
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use proptest::prelude::*;

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

    #[test]
    fn metric_matrix_examples() {
        assert_eq!(
            metric_matrix(&example_3d()).unwrap(),
            mat(&[
                &[".1", ".5", ".7"],
                &[".1", ".4", ".8"],
                &[".1", ".1", ".5"]
            ])
        );
        assert_eq!(
            metric_matrix(&Matrix::zeros(3, 3)).unwrap(),
            Matrix::zeros(3, 3)
        );
        let a = mat(&[&[".7", ".3"], &[".2", ".5"]]);
        assert_eq!(metric_matrix(&a).unwrap(), a);
        assert!(metric_matrix(&Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn kleene_star_examples() {
        let a_kk = mat(&[&[".1", ".7"], &[".1", ".5"]]);
        assert_eq!(
            kleene_star(&a_kk).unwrap(),
            mat(&[&["1", ".7"], &[".1", "1"]])
        );
        assert_eq!(
            kleene_star(&mat(&[&[".7", ".3"], &[".2", ".5"]])).unwrap(),
            mat(&[&["1", ".3"], &[".2", "1"]])
        );
        assert_eq!(
            kleene_star(&Matrix::zeros(3, 3)).unwrap(),
            Matrix::identity(3)
        );
    }

    #[test]
    fn principal_generators_of_the_3d_example() {
        let gens = principal_generators(&example_3d()).unwrap();
        assert_eq!(
            gens,
            vec![
                vec_of(&[".1", ".1", ".1"]),
                vec_of(&[".4", ".4", ".1"]),
                vec_of(&[".5", ".5", ".5"]),
            ]
        );
    }

    #[test]
    fn principal_generators_degenerate_cases() {
        assert_eq!(
            principal_generators(&Matrix::zeros(2, 2)).unwrap(),
            vec![Vector::zeros(2), Vector::zeros(2)]
        );
        let gens = principal_generators(&Matrix::identity(3)).unwrap();
        for (i, g) in gens.iter().enumerate() {
            assert_eq!(*g, Matrix::identity(3).column(i));
        }
    }

    #[test]
    fn saturation_graph_examples() {
        let g = saturation_graph(&Matrix::identity(2), &Vector::ones(2)).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 0), (1, 1)]);
        assert_eq!(g.nodes(), &IndexSet::full(2));

        let a = mat(&[&[".7", ".3"], &[".2", ".5"]]);
        let g = saturation_graph(&a, &vec_of(&[".4", ".2"])).unwrap();
        assert!(g.has_edge(0, 0) && g.has_edge(1, 0) && g.has_edge(1, 1));
        assert!(!g.has_edge(0, 1));

        let g = saturation_graph(&Matrix::zeros(2, 2), &Vector::zeros(2)).unwrap();
        assert_eq!(g.edges().count(), 4);

        // not principal: rejected
        let err = saturation_graph(&a, &vec_of(&[".8", ".1"])).unwrap_err();
        assert!(matches!(err, Error::NotPrincipal { .. }));
    }

    #[test]
    fn cycle_representative_examples() {
        let g = saturation_graph(&Matrix::identity(3), &vec_of(&[".2", ".4", ".9"])).unwrap();
        assert_eq!(cycle_representatives(&g), IndexSet::full(3));

        // single 2-cycle {(0,1),(1,0)}: A = [[0,.5],[.5,0]], x = (.5,.5)
        let a = mat(&[&["0", ".5"], &[".5", "0"]]);
        let g = saturation_graph(&a, &vec_of(&[".5", ".5"])).unwrap();
        assert_eq!(cycle_representatives(&g), IndexSet::new(vec![0]));

        // chain 1 -> 0 plus loop (0,0): A = [[.5,0],[.3,0]], x = (.5,.3)
        let a = mat(&[&[".5", "0"], &[".3", "0"]]);
        let g = saturation_graph(&a, &vec_of(&[".5", ".3"])).unwrap();
        assert!(g.has_edge(0, 0) && g.has_edge(1, 0));
        assert_eq!(cycle_representatives(&g), IndexSet::new(vec![0]));
    }

    #[test]
    fn reconstruction_examples() {
        let a = example_3d();
        assert_eq!(
            reconstruct_principal(&a, &Vector::zeros(3)).unwrap(),
            Vector::zeros(3)
        );
        let v = vec_of(&[".4", ".4", ".1"]);
        assert_eq!(reconstruct_principal(&a, &v).unwrap(), v);
        let x = vec_of(&[".3", ".9"]);
        assert_eq!(reconstruct_principal(&Matrix::identity(2), &x).unwrap(), x);
    }

    fn grid_scalar() -> impl Strategy<Value = Scalar> {
        prop::sample::select(vec![
            Scalar::zero(),
            s(".25"),
            s(".5"),
            s(".75"),
            Scalar::one(),
        ])
    }

    fn grid_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec(grid_scalar(), n * n)
            .prop_map(move |data| Matrix::from_fn(n, n, |i, j| data[i * n + j]))
    }

    fn square_matrix(max_n: usize) -> impl Strategy<Value = Matrix> {
        (1..=max_n).prop_flat_map(grid_matrix)
    }

    /// All vectors over the 5-value grid satisfying `A ⊗ x = x`.
    fn enumerate_principal(a: &Matrix) -> Vec<Vector> {
        let values = [Scalar::zero(), s(".25"), s(".5"), s(".75"), Scalar::one()];
        let n = a.rows();
        let mut found = Vec::new();
        let mut counters = vec![0usize; n];
        loop {
            let x = Vector::new(counters.iter().map(|&c| values[c]).collect());
            if is_principal(a, &x).unwrap() {
                found.push(x);
            }
            let mut pos = n;
            while pos > 0 {
                pos -= 1;
                counters[pos] += 1;
                if counters[pos] < values.len() {
                    break;
                }
                counters[pos] = 0;
                if pos == 0 {
                    return found;
                }
            }
        }
    }

    proptest! {
        #[test]
        fn star_fixed_point_and_idempotence(a in square_matrix(4)) {
            let star = kleene_star(&a).unwrap();
            let fixed = Matrix::identity(a.rows()).oplus(&a.mul(&star).unwrap()).unwrap();
            prop_assert_eq!(&fixed, &star);
            prop_assert_eq!(star.mul(&star).unwrap(), star);
        }

        #[test]
        fn metric_series_stabilizes(a in square_matrix(4)) {
            let n = a.rows();
            let plus = metric_matrix(&a).unwrap();
            let mut acc = a.clone();
            let mut power = a.clone();
            for _ in 1..2 * n {
                power = power.mul(&a).unwrap();
                acc = acc.oplus(&power).unwrap();
            }
            prop_assert_eq!(acc, plus);
        }

        #[test]
        fn generators_are_principal(a in square_matrix(4)) {
            for g in principal_generators(&a).unwrap() {
                prop_assert_eq!(a.mul_vec(&g).unwrap(), g);
            }
        }

        #[test]
        fn reconstruction_is_exact_on_enumerated_eigenvectors(a in square_matrix(3)) {
            for x in enumerate_principal(&a) {
                prop_assert_eq!(reconstruct_principal(&a, &x).unwrap(), x);
            }
        }

        #[test]
        fn reconstruction_holds_for_any_representative_choice(
            a in square_matrix(3),
            picks in prop::collection::vec(0usize..100, 3),
        ) {
            for x in enumerate_principal(&a) {
                let graph = saturation_graph(&a, &x).unwrap();
                let reps: IndexSet = graph
                    .cyclic_components()
                    .iter()
                    .enumerate()
                    .map(|(c, comp)| comp[picks[c % picks.len()] % comp.len()])
                    .collect();
                prop_assert_eq!(
                    reconstruct_with_representatives(&a, &x, &reps).unwrap(),
                    x
                );
            }
        }

        #[test]
        fn every_node_has_an_outgoing_saturation_edge(a in square_matrix(3)) {
            // for a principal eigenvector the defining max is attained in
            // every row, so no node of Sat(A, x) is ever isolated
            for x in enumerate_principal(&a) {
                let graph = saturation_graph(&a, &x).unwrap();
                prop_assert_eq!(graph.nodes(), &IndexSet::full(a.rows()));
                for i in 0..a.rows() {
                    prop_assert!(graph.edges().any(|(from, _)| from == i));
                }
            }
        }
    }
}
