//! Explicit finite matrix groups over prime fields: closure, conjugacy
//! classes, class numbers of affine groups `V ⋊ G`, rational canonical
//! form census, and the subgroups of `GammaL(1, p^n)`.

mod extraspecial;
mod group;
mod jordan;
mod kgv;
mod matrix;
mod metacyclic;

pub use extraspecial::{central_quaternion, max_class_number_symplectic_type, SymplecticTypeSearch};
pub use group::{
    closure, closure_of, general_linear, gl_generators, max_subgroup_class_number, normalizer_in_gl,
    preserves_symplectic_form, primitive_root, sp_generators, symplectic_group, symplectic_transvection, ClassInfo,
    FiniteMatrixGroup, DEFAULT_CLOSURE_CAP,
};
pub use jordan::{involution_census, jordan_class_datum, type_histogram, InvolutionCensus, JordanLabel};
pub use kgv::{
    affine_group, cyclic_orbit_count, dual_orbits, dual_stabilizer, fixed_points, kgv_count, orbits, vector_orbits, KgvMethod, DIRECT_CAP,
};
pub use matrix::{rank_mod, MatCtx, MatrixOverFp, Packed};
pub use metacyclic::{
    metacyclic_enumerate, metacyclic_instances, metacyclic_survey, prime_powers_up_to, theorem_violations,
    verify_metacyclic_theorem,
    verify_small_lemmas, LemmaCheck, MetacyclicRecord, MetacyclicSpec, Violation, METACYCLIC_CAP,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Generator file contents: `{"p": 3, "n": 2, "generators": [[[1,1],[0,1]], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub p: u32,
    pub n: usize,
    pub generators: Vec<Vec<Vec<u32>>>,
}

impl GeneratorFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("generator file: {e}")))
    }

    pub fn group(&self, cap: usize) -> Result<FiniteMatrixGroup> {
        let ctx = MatCtx::new(self.p, self.n)?;
        let gens = self
            .generators
            .iter()
            .map(|rows| ctx.from_rows(rows))
            .collect::<Result<Vec<_>>>()?;
        closure(ctx, &gens, cap)
    }
}
