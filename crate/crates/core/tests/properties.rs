use kgv_core::brute_force::MatCtx;
use kgv_core::element_counts::fg_unipotent_count;
use kgv_core::kgv_bounds::pow_frac_ceil;
use kgv_core::partitions::{enumerate_partitions, FormFamily, Partition, SignedPartition, validate_signed};
use kgv_core::polyfield::{enumerate_irreducibles, MonicPoly};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..9, 0..9).prop_map(Partition::new)
}

fn mobius(n: u64) -> i64 {
    let (mut n, mut sign, mut p) = (n, 1i64, 2u64);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

fn necklace(r: u64, d: u64) -> u64 {
    let total: i64 = (1..=d).filter(|e| d % e == 0).map(|e| mobius(e) * (r.pow((d / e) as u32) as i64)).sum();
    total as u64 / d
}

proptest! {
    #[test]
    fn dual_is_an_involution(p in partition()) {
        prop_assert_eq!(p.dual().dual(), p.clone());
        prop_assert_eq!(p.dual().size(), p.size());
    }

    #[test]
    fn n_statistic_is_weighted_sum(p in partition()) {
        let weighted: u64 = p.parts().iter().enumerate().map(|(i, &x)| i as u64 * x as u64).sum();
        prop_assert_eq!(p.n_statistic(), weighted);
    }

    #[test]
    fn reciprocal_conjugate_is_an_involution(
        r in prop::sample::select(vec![2u32, 3, 5, 7]),
        tail in prop::collection::vec(0u32..7, 1..5),
        c0 in 1u32..7,
    ) {
        let mut coeffs = vec![c0 % r];
        coeffs.extend(tail);
        coeffs.push(1);
        prop_assume!(coeffs[0] != 0);
        let f = MonicPoly::new(r, coeffs).unwrap();
        let g = f.reciprocal_conjugate().unwrap();
        prop_assert_eq!(g.degree(), f.degree());
        prop_assert_eq!(g.reciprocal_conjugate().unwrap(), f.clone());
        prop_assert_eq!(g.is_irreducible(), f.is_irreducible());
    }

    #[test]
    fn pow_frac_ceil_brackets(x in 1u64..1_000_000_000, num in 1u64..12, den in 1u64..12) {
        let x = BigUint::from(x);
        let c = pow_frac_ceil(&x, num, den);
        let target = x.pow(num as u32);
        prop_assert!(c.pow(den as u32) >= target);
        prop_assert!((&c - BigUint::one()).pow(den as u32) < target);
    }

    #[test]
    fn matrix_inverse_roundtrip(
        p in prop::sample::select(vec![2u32, 3, 5, 7]),
        entries in prop::collection::vec(0u32..7, 9),
    ) {
        let ctx = MatCtx::new(p, 3).unwrap();
        let rows: Vec<Vec<u32>> = entries.chunks(3).map(|c| c.iter().map(|x| x % p).collect()).collect();
        let x = ctx.from_rows(&rows).unwrap();
        match ctx.inverse(x) {
            Some(y) => {
                prop_assert_eq!(ctx.mul(x, y), ctx.identity());
                prop_assert_eq!(ctx.mul(y, x), ctx.identity());
            }
            None => prop_assert!(ctx.rank(x) < 3),
        }
    }
}

#[test]
fn irreducible_counts_follow_necklace_formula() {
    for (r, max_d) in [(2u32, 10usize), (3, 6), (5, 4), (7, 3)] {
        let polys = enumerate_irreducibles(r, max_d).unwrap();
        for d in 1..=max_d {
            let count = polys.iter().filter(|f| f.degree() == d).count() as u64;
            // t itself is excluded
            let expected = necklace(r as u64, d as u64) - (d == 1) as u64;
            assert_eq!(count, expected, "r={r} d={d}");
        }
    }
}

#[test]
fn unipotent_counts_vanish_off_symplectic_types() {
    for a in 1..=4u32 {
        for mu in enumerate_partitions(2 * a).unwrap() {
            let valid = !SignedPartition::all_signings(&mu, FormFamily::Symplectic)
                .iter()
                .all(|s| !validate_signed(FormFamily::Symplectic, s));
            let count = fg_unipotent_count(a, 3, &mu).unwrap();
            assert_eq!(count.is_zero(), !valid, "mu = {mu:?}");
        }
    }
}
