use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use super::matrix::{MatCtx, MatrixOverFp, Packed};
use crate::arith::{multiplicative_order, prime_power};
use crate::error::{Error, Result};
use crate::group_orders::gl_order;

/// Default element cap for closures.
pub const DEFAULT_CLOSURE_CAP: usize = 2_000_000;

/// A finite matrix group held as an explicit element list in breadth-first
/// order from the identity.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    ctx: MatCtx,
    elements: Vec<Packed>,
    generators: Vec<Packed>,
    index: FxHashMap<Packed, u32>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub rep: Packed,
    pub size: usize,
}

/// Group generated by `generators`, breadth-first from the identity.
pub fn closure(ctx: MatCtx, generators: &[Packed], cap: usize) -> Result<FiniteMatrixGroup> {
    if let Some(g) = generators.iter().find(|&&g| !ctx.is_invertible(g)) {
        return Err(Error::Precondition(format!("singular generator {:?}", ctx.rows(*g))));
    }
    let id = ctx.identity();
    let mut elements = vec![id];
    let mut index = FxHashMap::default();
    index.insert(id, 0u32);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for &g in generators {
            let y = ctx.mul(x, g);
            if !index.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "group order",
                        value: elements.len() as u128 + 1,
                        cap: cap as u128,
                    });
                }
                index.insert(y, elements.len() as u32);
                elements.push(y);
                queue.push_back(y);
            }
        }
    }
    Ok(FiniteMatrixGroup {
        ctx,
        elements,
        generators: generators.to_vec(),
        index,
    })
}

/// Closure of generators given as plain matrices sharing `p` and `n`.
pub fn closure_of(p: u32, n: usize, generators: &[MatrixOverFp], cap: usize) -> Result<FiniteMatrixGroup> {
    let ctx = MatCtx::new(p, n)?;
    let gens = generators.iter().map(|g| ctx.from_matrix(g)).collect::<Result<Vec<_>>>()?;
    closure(ctx, &gens, cap)
}

impl FiniteMatrixGroup {
    /// The group with the given element set, with generators chosen
    /// greedily in list order.
    pub fn from_elements(ctx: MatCtx, elements: &[Packed]) -> Result<Self> {
        let mut gens = Vec::new();
        let mut current = closure(ctx, &gens, elements.len().max(1))?;
        for &e in elements {
            if !current.contains(e) {
                gens.push(e);
                current = closure(ctx, &gens, elements.len())?;
            }
        }
        if current.order() != elements.len() {
            return Err(Error::Precondition("element list is not a group".into()));
        }
        Ok(current)
    }

    pub fn ctx(&self) -> MatCtx {
        self.ctx
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Packed] {
        &self.elements
    }

    pub fn generators(&self) -> &[Packed] {
        &self.generators
    }

    pub fn contains(&self, x: Packed) -> bool {
        self.index.contains_key(&x)
    }

    pub fn position(&self, x: Packed) -> Option<usize> {
        self.index.get(&x).map(|&i| i as usize)
    }

    /// Sorted element list, identifying the subgroup independent of
    /// generators.
    pub fn fingerprint(&self) -> Vec<Packed> {
        let mut v = self.elements.clone();
        v.sort_unstable();
        v
    }

    pub fn is_abelian(&self) -> bool {
        let c = &self.ctx;
        self.generators
            .iter()
            .all(|&g| self.generators.iter().all(|&h| c.mul(g, h) == c.mul(h, g)))
    }

    /// Conjugacy classes by closing each unvisited element under
    /// conjugation by the generators.
    pub fn classes(&self) -> Vec<ClassInfo> {
        let c = &self.ctx;
        let conj: Vec<(Packed, Packed)> = self
            .generators
            .iter()
            .map(|&g| (g, c.inverse(g).expect("invertible")))
            .collect();
        let mut seen = vec![false; self.elements.len()];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for (i, &x) in self.elements.iter().enumerate() {
            if seen[i] {
                continue;
            }
            seen[i] = true;
            stack.push(x);
            let mut size = 0;
            while let Some(y) = stack.pop() {
                size += 1;
                for &(g, gi) in &conj {
                    let z = c.mul(c.mul(g, y), gi);
                    let k = self.index[&z] as usize;
                    if !seen[k] {
                        seen[k] = true;
                        stack.push(z);
                    }
                }
            }
            out.push(ClassInfo { rep: x, size });
        }
        out
    }

    pub fn class_count(&self) -> usize {
        self.classes().len()
    }

    /// Subgroup of the elements satisfying `keep`.
    pub fn subgroup_where(&self, keep: impl Fn(Packed) -> bool) -> Result<FiniteMatrixGroup> {
        let elements: Vec<Packed> = self.elements.iter().copied().filter(|&x| keep(x)).collect();
        FiniteMatrixGroup::from_elements(self.ctx, &elements)
    }

    /// Whether `self` normalizes the group generated by `gens`.
    pub fn normalizes(&self, sub: &FiniteMatrixGroup) -> bool {
        let c = &self.ctx;
        self.generators.iter().all(|&g| {
            let gi = c.inverse(g).expect("invertible");
            sub.generators.iter().all(|&t| sub.contains(c.mul(c.mul(g, t), gi)))
        })
    }

    pub fn to_matrices(&self, xs: &[Packed]) -> Vec<MatrixOverFp> {
        xs.iter().map(|&x| self.ctx.to_matrix(x)).collect()
    }
}

/// Least primitive root modulo the prime `p`.
pub fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    (1..p).find(|&g| multiplicative_order(g as u64, p as u64) == p as u64 - 1).expect("prime")
}

/// Elementary transvections and one diagonal generator of `GL(n, p)`.
pub fn gl_generators(ctx: MatCtx) -> Vec<Packed> {
    let n = ctx.n();
    let mut gens = Vec::new();
    let mut diag: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u32).collect()).collect();
    diag[0][0] = primitive_root(ctx.p());
    if ctx.p() > 2 {
        gens.push(ctx.from_rows(&diag).expect("square"));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut rows: Vec<Vec<u32>> =
                    (0..n).map(|a| (0..n).map(|b| (a == b) as u32).collect()).collect();
                rows[i][j] = 1;
                gens.push(ctx.from_rows(&rows).expect("square"));
            }
        }
    }
    gens
}

/// `GL(n, p)` as an explicit group.
pub fn general_linear(p: u32, n: usize, cap: usize) -> Result<FiniteMatrixGroup> {
    let order = gl_order(n as u64, p as u64);
    if order > cap.into() {
        return Err(Error::CapExceeded {
            what: "|GL(n, p)|",
            value: order.try_into().unwrap_or(u128::MAX),
            cap: cap as u128,
        });
    }
    let ctx = MatCtx::new(p, n)?;
    closure(ctx, &gl_generators(ctx), cap)
}

/// Gram matrix of the standard alternating form on the basis
/// `e_1..e_a, f_1..f_a`: `B(e_i, f_j) = delta_ij`.
pub fn symplectic_gram(ctx: MatCtx) -> Packed {
    let n = ctx.n();
    let a = n / 2;
    let mut rows = vec![vec![0u32; n]; n];
    for i in 0..a {
        rows[i][a + i] = 1;
        rows[a + i][i] = ctx.p() - 1;
    }
    ctx.from_rows(&rows).expect("square")
}

/// `x -> x + B(x, v) v` as a matrix, with `v` given by coordinates.
pub fn symplectic_transvection(ctx: MatCtx, v: &[u32]) -> Packed {
    let n = ctx.n();
    let gram = symplectic_gram(ctx);
    let p = ctx.p() as u64;
    // B(x, v) = sum_ij x_i J_ij v_j, so the row functional is (J v)_i
    let jv: Vec<u64> = (0..n)
        .map(|i| (0..n).map(|j| ctx.entry(gram, i, j) as u64 * v[j] as u64).sum::<u64>() % p)
        .collect();
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (((i == j) as u64 + v[i] as u64 * jv[j]) % p) as u32)
                .collect()
        })
        .collect();
    ctx.from_rows(&rows).expect("square")
}

/// Transvection generators of `Sp(2a, p)`: along `e_i`, `f_i` and
/// `e_i + e_{i+1}`.
pub fn sp_generators(a: usize, p: u32) -> Result<(MatCtx, Vec<Packed>)> {
    let ctx = MatCtx::new(p, 2 * a)?;
    let n = 2 * a;
    let unit = |k: usize| (0..n).map(|j| (j == k) as u32).collect::<Vec<_>>();
    let mut gens = Vec::new();
    for i in 0..a {
        gens.push(symplectic_transvection(ctx, &unit(i)));
        gens.push(symplectic_transvection(ctx, &unit(a + i)));
    }
    for i in 0..a.saturating_sub(1) {
        let mut v = unit(i);
        v[i + 1] = 1;
        gens.push(symplectic_transvection(ctx, &v));
    }
    Ok((ctx, gens))
}

pub fn symplectic_group(a: usize, p: u32, cap: usize) -> Result<FiniteMatrixGroup> {
    let (ctx, gens) = sp_generators(a, p)?;
    closure(ctx, &gens, cap)
}

/// Whether `x` preserves the standard alternating form.
pub fn preserves_symplectic_form(ctx: MatCtx, x: Packed) -> bool {
    let j = symplectic_gram(ctx);
    ctx.mul(ctx.mul(ctx.transpose(x), j), x) == j
}

/// Normalizer of `target` in `GL(n, q)` by testing every element of the
/// ambient group. Only prime `q` is supported.
pub fn normalizer_in_gl(target: &FiniteMatrixGroup, ambient_q: u64, cap: usize) -> Result<FiniteMatrixGroup> {
    let (p, k) = prime_power(ambient_q).ok_or(Error::NotPrimePower(ambient_q))?;
    if k != 1 || p != target.ctx().p() as u64 {
        return Err(Error::Precondition(format!(
            "ambient field must be the prime field F_{} of the target",
            target.ctx().p()
        )));
    }
    let ambient = general_linear(p as u32, target.ctx().n(), cap)?;
    let c = ambient.ctx();
    let inverses: Vec<Packed> = ambient.elements().iter().map(|&g| c.inverse(g).expect("invertible")).collect();
    let normalizing: Vec<Packed> = ambient
        .elements()
        .iter()
        .zip(&inverses)
        .filter(|(&g, &gi)| target.generators().iter().all(|&t| target.contains(c.mul(c.mul(g, t), gi))))
        .map(|(&g, _)| g)
        .collect();
    FiniteMatrixGroup::from_elements(c, &normalizing)
}

/// Largest class number of a subgroup of `Sp(2, r)`, over all subgroups
/// generated by at most two elements (every subgroup of `SL(2, r)` for
/// `r <= 3`).
pub fn max_subgroup_class_number(group: &FiniteMatrixGroup) -> Result<usize> {
    let els = group.elements();
    let mut best = 1;
    let mut seen = std::collections::HashSet::new();
    for (i, &x) in els.iter().enumerate() {
        for &y in &els[i..] {
            let h = closure(group.ctx(), &[x, y], group.order())?;
            if seen.insert(h.fingerprint()) {
                best = best.max(h.class_count());
            }
        }
    }
    Ok(best)
}
