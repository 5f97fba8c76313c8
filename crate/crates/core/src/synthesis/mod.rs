//! Constructions that produce point sets with a prescribed graph.
//!
//! Every construction checks its output with an isomorphism test against
//! its target before returning it.

mod any;
mod cube;
mod extend;
mod k22;
mod rescale;

pub use any::represent_any;
pub use cube::{
    cube_from_representation, cubical_to_representation, cubical_values, hypercube_embed,
    is_c_valuation, CubeEmbedding,
};
pub use extend::{add_isolated, add_pendant, glue_components, represent_forest};
pub use k22::k22_representations;
pub use rescale::{rescale_representation, rescale_with_profile, EdgeLabeling};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graphcore::{Graph, VertexMap};
use crate::sintring::{split_s_part, PrimeSet};
use crate::unitgraph::Representation;

fn integer_points(rep: &Representation) -> Result<Vec<BigInt>> {
    rep.integer_points().ok_or(Error::NotIntegral)
}

fn is_integer_unit(d: &BigInt, primes: &PrimeSet) -> bool {
    !d.is_zero() && split_s_part(d, primes).1.is_one()
}

/// Target graph and map of `rep`, defaulting to its own graph.
fn target_of(rep: &Representation) -> (Graph, VertexMap) {
    match (rep.target(), rep.map()) {
        (Some(g), Some(m)) => (g.clone(), m.clone()),
        _ => (rep.graph(), VertexMap::identity(rep.len())),
    }
}

/// Builds the representation and checks it against `target` under `map`.
fn verified(
    primes: &PrimeSet,
    points: &[BigInt],
    target: &Graph,
    map: VertexMap,
) -> Result<Representation> {
    let rep = Representation::from_integers(primes.clone(), points)?;
    rep.with_target(target.clone(), map)
}
