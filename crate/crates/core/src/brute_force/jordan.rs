use std::collections::BTreeMap;

use serde::Serialize;

use super::group::FiniteMatrixGroup;
use super::matrix::{MatCtx, Packed};
use crate::error::Result;
use crate::partitions::Partition;
use crate::polyfield::{enumerate_irreducibles, MonicPoly};

/// Rational canonical form data: each irreducible factor of the
/// characteristic polynomial with its partition of elementary divisor
/// exponents.
pub type JordanLabel = BTreeMap<MonicPoly, Partition>;

/// Irreducibles (excluding `t`) that can divide a characteristic
/// polynomial in dimension `n`.
pub fn label_polys(ctx: MatCtx) -> Result<Vec<MonicPoly>> {
    enumerate_irreducibles(ctx.p(), ctx.n())
}

/// The label of `x` from kernel dimensions of powers of `phi(x)`.
pub fn jordan_class_datum(ctx: MatCtx, x: Packed) -> Result<JordanLabel> {
    jordan_with(ctx, x, &label_polys(ctx)?)
}

fn jordan_with(ctx: MatCtx, x: Packed, polys: &[MonicPoly]) -> Result<JordanLabel> {
    let n = ctx.n();
    let mut label = JordanLabel::new();
    let mut covered = 0;
    for phi in polys {
        if covered == n {
            break;
        }
        let deg = phi.degree();
        if covered + deg > n {
            continue;
        }
        let a = ctx.eval_poly(phi.coeffs(), x);
        let mut power = a;
        let mut prev_kernel = 0;
        // parts >= k counted from successive kernel jumps
        let mut at_least = Vec::new();
        loop {
            let kernel = n - ctx.rank(power);
            if kernel == prev_kernel {
                break;
            }
            at_least.push(((kernel - prev_kernel) / deg) as u32);
            prev_kernel = kernel;
            if kernel == n {
                break;
            }
            power = ctx.mul(power, a);
        }
        if at_least.is_empty() {
            continue;
        }
        covered += prev_kernel;
        // at_least[k-1] = number of parts >= k, i.e. the dual partition
        let dual = Partition::new(at_least);
        label.insert(phi.clone(), dual.dual());
    }
    Ok(label)
}

/// Element census of a group by label, computed on class representatives.
pub fn type_histogram(group: &FiniteMatrixGroup) -> Result<BTreeMap<JordanLabel, u64>> {
    let ctx = group.ctx();
    let polys = label_polys(ctx)?;
    let mut out = BTreeMap::new();
    for class in group.classes() {
        let label = jordan_with(ctx, class.rep, &polys)?;
        *out.entry(label).or_insert(0) += class.size as u64;
    }
    Ok(out)
}

/// Involutions of a group over `F_2` by Jordan type, with the number whose
/// image of `x - 1` is totally singular for the quadratic form
/// `Q(v) = sum_i v_{e_i} v_{f_i}` polarizing to the standard alternating form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionCensus {
    pub mu: Partition,
    pub total: u64,
    pub totally_singular: u64,
}

pub fn involution_census(group: &FiniteMatrixGroup) -> Vec<InvolutionCensus> {
    let ctx = group.ctx();
    assert_eq!(ctx.p(), 2, "involution census is for characteristic 2");
    let n = ctx.n();
    let a = n / 2;
    let id = ctx.identity();
    let mut by_type: BTreeMap<Partition, (u64, u64)> = BTreeMap::new();
    for &x in group.elements() {
        if x == id || ctx.mul(x, x) != id {
            continue;
        }
        let y = ctx.minus_scalar(x, 1);
        let rank = ctx.rank(y) as u32;
        // an involution has rank(x - 1) blocks of size 2
        let mu = Partition::from_powers(&[(2, rank), (1, n as u32 - 2 * rank)]);
        // the image is spanned by the columns, on which the form vanishes
        let singular = (0..n).all(|j| {
            let col: Vec<u32> = (0..n).map(|i| ctx.entry(y, i, j)).collect();
            (0..a).map(|i| col[i] * col[a + i]).sum::<u32>() % 2 == 0
        });
        let slot = by_type.entry(mu).or_insert((0, 0));
        slot.0 += 1;
        slot.1 += singular as u64;
    }
    by_type
        .into_iter()
        .map(|(mu, (total, totally_singular))| InvolutionCensus {
            mu,
            total,
            totally_singular,
        })
        .collect()
}
