use serde::{Deserialize, Serialize};

use super::group::{closure, FiniteMatrixGroup};
use super::matrix::{MatCtx, Packed};
use crate::error::{Error, Result};

/// Largest `|G| p^n` for which the semidirect product is built explicitly.
pub const DIRECT_CAP: u64 = 100_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KgvMethod {
    /// Sum of `k(Stab_G(lambda))` over orbit representatives of `G` on the
    /// dual space.
    Lgt,
    /// Conjugacy classes of the affine group `V ⋊ G`.
    Direct,
}

/// Orbits of a group acting on `0..count` through the given generator maps,
/// as `(least member, size)` in increasing order of the least member.
pub fn orbits(count: u64, gens: &[Box<dyn Fn(u64) -> u64 + '_>]) -> Vec<(u64, usize)> {
    let mut seen = vec![false; count as usize];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for v in 0..count {
        if seen[v as usize] {
            continue;
        }
        seen[v as usize] = true;
        stack.push(v);
        let mut size = 0;
        while let Some(x) = stack.pop() {
            size += 1;
            for g in gens {
                let y = g(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        out.push((v, size));
    }
    out
}

/// Orbits of `G` on `V = F_p^n`.
pub fn vector_orbits(group: &FiniteMatrixGroup) -> Vec<(u64, usize)> {
    let c = group.ctx();
    let gens: Vec<Box<dyn Fn(u64) -> u64 + '_>> = group
        .generators()
        .iter()
        .map(|&g| Box::new(move |v| c.apply(g, v)) as Box<dyn Fn(u64) -> u64>)
        .collect();
    orbits(c.vector_count(), &gens)
}

/// Orbits of `G` on the dual space, with `g` acting as `(g^{-1})^T` on
/// coordinate functionals.
pub fn dual_orbits(group: &FiniteMatrixGroup) -> Vec<(u64, usize)> {
    let c = group.ctx();
    let duals: Vec<Packed> = group
        .generators()
        .iter()
        .map(|&g| c.transpose(c.inverse(g).expect("invertible")))
        .collect();
    let gens: Vec<Box<dyn Fn(u64) -> u64 + '_>> = duals
        .into_iter()
        .map(|g| Box::new(move |v| c.apply(g, v)) as Box<dyn Fn(u64) -> u64>)
        .collect();
    orbits(c.vector_count(), &gens)
}

/// `Stab_G(lambda)` for the functional with coordinates `lambda`: the `g`
/// with `g^T lambda = lambda`.
pub fn dual_stabilizer(group: &FiniteMatrixGroup, lambda: u64) -> Result<FiniteMatrixGroup> {
    let c = group.ctx();
    group.subgroup_where(|g| c.apply(c.transpose(g), lambda) == lambda)
}

/// `C_V(g)` as a count of fixed vectors.
pub fn fixed_points(ctx: MatCtx, g: Packed) -> u64 {
    let kernel = ctx.n() - ctx.rank(ctx.minus_scalar(g, 1));
    (ctx.p() as u64).pow(kernel as u32)
}

/// The affine group `V ⋊ G` in dimension `n + 1`.
pub fn affine_group(group: &FiniteMatrixGroup, cap: usize) -> Result<FiniteMatrixGroup> {
    let c = group.ctx();
    let n = c.n();
    let big = MatCtx::new(c.p(), n + 1)?;
    let embed = |g: Packed| {
        let mut rows = vec![vec![0u32; n + 1]; n + 1];
        for (i, row) in c.rows(g).into_iter().enumerate() {
            rows[i][..n].copy_from_slice(&row);
        }
        rows[n][n] = 1;
        big.from_rows(&rows).expect("square")
    };
    let mut gens: Vec<Packed> = group.generators().iter().map(|&g| embed(g)).collect();
    for i in 0..n {
        let mut rows: Vec<Vec<u32>> = (0..=n).map(|a| (0..=n).map(|b| (a == b) as u32).collect()).collect();
        rows[i][n] = 1;
        gens.push(big.from_rows(&rows).expect("square"));
    }
    closure(big, &gens, cap)
}

/// Number of orbits of `<x>` on `F_p^n` for the unipotent `x` with Jordan
/// blocks of the given sizes.
pub fn cyclic_orbit_count(p: u32, blocks: &[usize]) -> Result<u64> {
    let n: usize = blocks.iter().sum();
    let ctx = MatCtx::new(p, n)?;
    let mut rows = vec![vec![0u32; n]; n];
    let mut start = 0;
    for &b in blocks {
        for i in start..start + b {
            rows[i][i] = 1;
            if i + 1 < start + b {
                rows[i][i + 1] = 1;
            }
        }
        start += b;
    }
    let x = ctx.from_rows(&rows)?;
    let gens: Vec<Box<dyn Fn(u64) -> u64>> = vec![Box::new(move |v| ctx.apply(x, v))];
    Ok(orbits(ctx.vector_count(), &gens).len() as u64)
}

/// `k(GV)` for the natural module `V = F_p^n` of `G`.
pub fn kgv_count(group: &FiniteMatrixGroup, method: KgvMethod) -> Result<u64> {
    match method {
        KgvMethod::Lgt => {
            let mut total = 0;
            for (lambda, _) in dual_orbits(group) {
                total += dual_stabilizer(group, lambda)?.class_count() as u64;
            }
            Ok(total)
        }
        KgvMethod::Direct => {
            let size = group.order() as u64 * group.ctx().vector_count();
            if size > DIRECT_CAP {
                return Err(Error::CapExceeded {
                    what: "|GV| for the direct method",
                    value: size as u128,
                    cap: DIRECT_CAP as u128,
                });
            }
            Ok(affine_group(group, DIRECT_CAP as usize)?.class_count() as u64)
        }
    }
}
