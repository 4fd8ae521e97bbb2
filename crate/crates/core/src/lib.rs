//! Shortest paths in the distant graph of the projective line over the integers.
//!
//! Vertices are points `a:b` of P(Z); two points are adjacent when their
//! representatives form a matrix of determinant +-1.

pub mod error;
pub mod matrices;
pub mod oracle;
pub mod paths;
pub mod point;
pub mod render;
pub mod transition;

pub use error::{Error, Result};
pub use matrices::{
    cf_expand, e_matrix, eval_word, factorization, reduce_word, shortest_path_matrices,
    standard_basis, standard_word, CFExpansion, EWord, Factorization, Mat2,
};
pub use paths::{
    all_shortest_paths, consistent_paths, count_shortest_paths, distance, hamiltonian_cycle,
    is_unique_shortest, shortening, standard_path, standard_shortest_path, Cycle, Path,
    ShorteningAnalysis,
};
pub use point::{
    canonicalize, cone_sign, det2, is_distant, maximal_cliques, neighbors, ConeClass, IVec2,
    NeighborSequence, ProjPoint,
};
pub use transition::{
    corner_graph, klein_graph, sails, transition, KleinGraph, Orientation, TransitionData,
};
