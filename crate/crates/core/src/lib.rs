//! Componentwise linearity of monomial ideals `∩_{ {i,j} ∈ E } ⟨x_i, x_j⟩^t`
//! attached to simple graphs.
//!
//! * [`monomial`]: exact monomial and monomial-ideal arithmetic.
//! * [`graph`]: graphs, chordality, t-covers and the cover ideals.
//! * [`resolution`]: Betti numbers (two engines), linearity, linear
//!   quotients and the exchange condition.
//! * [`search`]: sweeps over small labeled graphs.
//!
//! Homology is computed over any [`Coefficient`] ring; the aliases below
//! name the ones wired to [`FieldChoice`].

pub mod error;
pub mod graph;
pub mod monomial;
pub mod resolution;
pub mod scalar;
pub mod search;

pub use error::{Error, Result};
pub use graph::{
    complete_graph, counterexample_graph, cover_ideal, edge_ideal, is_chordal, knt_closed_form,
    minimal_t_covers, minimal_vertex_covers, theorem_order, CoverMethod, CoverVector, SimpleGraph,
};
pub use monomial::{deglex_compare, Monomial, MonomialIdeal, OrderedGenerators};
pub use resolution::betti::{betti_table, koszul_betti, taylor_strand_betti, BettiTable};
pub use resolution::homology::{simplicial_homology_ranks, SimplicialComplexOnVars};
pub use resolution::linearity::{
    first_syzygy_degrees, has_linear_resolution, is_componentwise_linear, CwlOptions, CwlReport,
    Linearity,
};
pub use resolution::polymatroid::{polymatroidal_check, Exchange};
pub use resolution::quotients::{find_linear_quotient_order, linear_quotients_check, OrderStrategy};
pub use resolution::{Engine, Limits};
pub use scalar::{Coefficient, FieldChoice, Fp};

/// Integer coefficients; fraction-free elimination over these gives ranks over `Q`.
pub type Integer = num_bigint::BigInt;
/// Exact rationals.
pub type Rational = num_rational::BigRational;
pub type Gf2 = Fp<2>;
pub type Gf3 = Fp<3>;
pub type Gf32003 = Fp<32003>;
