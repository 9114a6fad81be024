//! The centralizer algebra of the base-vertex stabilizer, which coincides with
//! the Terwilliger algebra `T` of `O_{m+1}`.

mod distance;
mod orbit;
mod spectral;
mod verify;

pub use distance::{
    build_distance_matrices, build_dual_idempotents, intersection_numbers_all_pairs, BoseMesnerElement,
    DistanceMatrices, DualIdempotents,
};
pub use orbit::{
    base_orbit, build_orbit_basis, identity_coordinates, structure_constants, OrbitBasis, OrbitBasisElement,
    StructureConstants,
};
pub use spectral::{
    build_primitive_idempotents, compute_krein_parameters, find_q_polynomial_orderings, scan_eigenvalues_full,
    select_ordering, SpectralData,
};
pub use verify::{
    alternating_product_term, center_dimension, estar_type, flat_type, generated_dimension, generator_coordinates,
    lowering_type, raising_type, verify_centralizer, verify_dimensions, verify_generation, verify_lemma51, verify_prop35, CheckItem,
    Report,
};

use crate::error::Result;
use crate::odd_graph::{enum_valid_types, enum_vertices, GraphContext, TypeIndexSet};

/// Everything built for one `m`, in dependency order.
#[derive(Clone, Debug)]
pub struct TerwilligerAlgebra {
    pub ctx: GraphContext,
    pub types: TypeIndexSet,
    pub distance: DistanceMatrices,
    pub dual: DualIdempotents,
    pub orbit_basis: OrbitBasis,
    pub structure: StructureConstants,
    pub spectral: SpectralData,
}

impl TerwilligerAlgebra {
    pub fn build(m: usize) -> Result<Self> {
        let ctx = enum_vertices(m)?;
        let types = enum_valid_types(m);
        let distance = build_distance_matrices(&ctx)?;
        let dual = build_dual_idempotents(&ctx, &distance);
        let orbit_basis = build_orbit_basis(&ctx, &types)?;
        let structure = structure_constants(&orbit_basis, &ctx)?;
        let spectral = build_primitive_idempotents(&ctx, &distance)?;
        Ok(TerwilligerAlgebra { ctx, types, distance, dual, orbit_basis, structure, spectral })
    }

    pub fn m(&self) -> usize {
        self.ctx.m()
    }
}
