//! Shared inputs for the benchmarks.

use gkz::exactalg::{parse, RationalFunction};
use gkz::residue::toric::integer_problem;
use gkz::residue::ResidueProblem;
use gkz::{catalog, Configuration};

/// Named configurations spanning every branch of the classifier.
pub fn classification_corpus() -> Vec<(&'static str, Configuration)> {
    vec![
        ("square", catalog::gauss_square()),
        ("scroll", catalog::scroll()),
        ("veronese", catalog::veronese()),
        ("wedge_1_2", catalog::wedge(1, 2)),
        ("seven_1_2", catalog::seven_points(1, 2)),
        ("product_2_2", catalog::product_of_simplices(2, 2)),
        ("product_1_2", catalog::product_of_simplices(1, 2)),
        ("multiple_3_3", catalog::simplex_multiple(3, 3)),
    ]
}

/// A configuration together with a function to certify on it.
pub fn certification_inputs() -> Vec<(&'static str, Configuration, RationalFunction)> {
    let r = "x1^2*x6^2 - x1*x2*x5*x6 - 2*x1*x3*x4*x6 + x1*x3*x5^2 + x2^2*x4*x6 - x2*x3*x4*x5 + x3^2*x4^2";
    let segments = "x4*(-x1^4*x4^2 - 6*x1^2*x2^2*x3*x4 + 3*x2^4*x3^2)/(x2^2*(x2^2*x3 + x1^2*x4)^3)";
    vec![
        ("square", catalog::gauss_square(), parse("1/(x1*x2 - x3*x4)", 4).expect("valid")),
        ("scroll", catalog::scroll(), parse(&format!("(x1*x6 - x3*x4)/({r})"), 6).expect("valid")),
        ("segments", catalog::cayley_segments(), parse(segments, 4).expect("valid")),
    ]
}

/// Residue instances on `P^1` and `P^2`.
pub fn residue_inputs() -> Vec<(&'static str, ResidueProblem)> {
    vec![
        ("quadrics", integer_problem(1, 2, &[vec![1, 1, 1], vec![2, 1, 3]], vec![2]).expect("valid")),
        ("cubics", integer_problem(1, 3, &[vec![1, -2, 3, 1], vec![2, 1, -1, 3]], vec![3]).expect("valid")),
        (
            "plane_conics",
            integer_problem(
                2,
                2,
                &[vec![1, 2, 0, -1, 3, 1], vec![2, -1, 1, 0, 1, 3], vec![1, 1, 2, 3, -2, 1]],
                vec![2, 1],
            )
            .expect("valid"),
        ),
    ]
}
