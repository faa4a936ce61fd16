//! Shared fixtures for the benchmarks.

use coprime_census::CoprimalityGraph;

/// Named graphs of increasing size: K2, P3, C4, K4, Petersen.
pub fn fixtures() -> Vec<(&'static str, CoprimalityGraph)> {
    let cycle4 = CoprimalityGraph::new(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
    let petersen = CoprimalityGraph::new(
        10,
        &[
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (1, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 10),
            (6, 8),
            (8, 10),
            (7, 10),
            (7, 9),
            (6, 9),
        ],
    )
    .unwrap();
    vec![
        ("K2", CoprimalityGraph::complete(2).unwrap()),
        ("P3", CoprimalityGraph::path(3).unwrap()),
        ("C4", cycle4),
        ("K4", CoprimalityGraph::complete(4).unwrap()),
        ("petersen", petersen),
    ]
}
