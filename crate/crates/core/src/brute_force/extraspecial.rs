use std::collections::HashSet;

use serde::Serialize;

use super::group::{closure, normalizer_in_gl, FiniteMatrixGroup};
use super::matrix::{MatCtx, Packed};
use crate::arith::is_prime;
use crate::error::{Error, Result};

/// `C_4 ∘ Q_8` inside `GL(2, q)` for a prime `q ≡ 1 (mod 4)`.
pub fn central_quaternion(q: u32) -> Result<FiniteMatrixGroup> {
    if !is_prime(q as u64) || q % 4 != 1 {
        return Err(Error::Precondition(format!("need a prime q ≡ 1 mod 4, got {q}")));
    }
    let ctx = MatCtx::new(q, 2)?;
    let iota = (2..q).find(|&x| (x as u64 * x as u64) % q as u64 == q as u64 - 1).expect("q ≡ 1 mod 4");
    let i = ctx.from_rows(&[vec![iota, 0], vec![0, q - iota]])?;
    let j = ctx.from_rows(&[vec![0, 1], vec![q - 1, 0]])?;
    closure(ctx, &[i, j, ctx.scalar(iota)], 16)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticTypeSearch {
    pub q: u32,
    pub normalizer_order: usize,
    /// Subgroups `G` of the normalizer containing a nonabelian normal
    /// subgroup of `C_4 ∘ Q_8`.
    pub subgroups: usize,
    pub max_class_number: usize,
}

/// Largest `k(G)` over `G <= N_{GL(2,q)}(C_4 ∘ Q_8)` having a nonabelian
/// subgroup `X` of `C_4 ∘ Q_8` as a normal subgroup, for `G` generated by
/// `X` and two more elements.
pub fn max_class_number_symplectic_type(q: u32) -> Result<SymplecticTypeSearch> {
    let r = central_quaternion(q)?;
    let ctx = r.ctx();
    let n = normalizer_in_gl(&r, q as u64, 100_000)?;
    let mut cores: Vec<FiniteMatrixGroup> = Vec::new();
    let mut seen = HashSet::new();
    for &x in r.elements() {
        for &y in r.elements() {
            let h = closure(ctx, &[x, y], 16)?;
            if !h.is_abelian() && seen.insert(h.fingerprint()) {
                cores.push(h);
            }
        }
    }
    let mut found: HashSet<Vec<Packed>> = HashSet::new();
    let mut best = 0;
    for core in &cores {
        let mut layer: Vec<FiniteMatrixGroup> = Vec::new();
        let mut layer_seen = HashSet::new();
        for &g in n.elements() {
            let mut gens = core.generators().to_vec();
            gens.push(g);
            let h = closure(ctx, &gens, n.order())?;
            if layer_seen.insert(h.fingerprint()) {
                layer.push(h);
            }
        }
        let mut groups = layer.clone();
        for h in &layer {
            for &g in n.elements() {
                if h.contains(g) {
                    continue;
                }
                let mut gens = h.generators().to_vec();
                gens.push(g);
                let k = closure(ctx, &gens, n.order())?;
                if layer_seen.insert(k.fingerprint()) {
                    groups.push(k);
                }
            }
        }
        for g in groups {
            if g.normalizes(core) && found.insert(g.fingerprint()) {
                best = best.max(g.class_count());
            }
        }
    }
    Ok(SymplecticTypeSearch {
        q,
        normalizer_order: n.order(),
        subgroups: found.len(),
        max_class_number: best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizer_orders() {
        let r = central_quaternion(5).unwrap();
        assert_eq!(r.order(), 16);
        assert_eq!(normalizer_in_gl(&r, 5, 1000).unwrap().order(), 96);
    }
}
