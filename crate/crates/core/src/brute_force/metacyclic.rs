use std::collections::HashSet;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::group::{closure, FiniteMatrixGroup};
use super::kgv::{dual_orbits, dual_stabilizer, fixed_points, kgv_count, vector_orbits, KgvMethod, DIRECT_CAP};
use super::matrix::{MatCtx, Packed};
use crate::arith::{divisors, is_prime, prime_power, smallest_prime_divisor};
use crate::error::{Error, Result};
use crate::kgv_bounds::{metacyclic_bound, MetacyclicBound};
use crate::polyfield::{zsigmondy, FiniteField};

/// Largest field size accepted by the enumeration.
pub const METACYCLIC_CAP: u64 = 1024;

/// `G = <a^m, a^k b^{n/d}>` inside `GammaL(1, p^n)`, where `a` multiplies by
/// a fixed primitive element and `b` is the Frobenius map.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MetacyclicSpec {
    pub p: u64,
    pub n: u32,
    pub m: u64,
    pub d: u32,
    pub k: u64,
}

impl MetacyclicSpec {
    pub fn new(p: u64, n: u32, m: u64, d: u32, k: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 || d == 0 || n % d != 0 {
            return Err(Error::Precondition(format!("d = {d} must divide n = {n}")));
        }
        let q1 = p.pow(n) - 1;
        if m == 0 || q1 % m != 0 {
            return Err(Error::Precondition(format!("m = {m} must divide {q1}")));
        }
        if k >= q1.max(1) {
            return Err(Error::Precondition(format!("k = {k} must lie below {q1}")));
        }
        let step = p.pow(n / d) - 1;
        // a^k b^{n/d} raised to the d-th power is a^{k (p^n - 1)/(p^{n/d} - 1)}
        if (k as u128 * (q1 / step) as u128) % m as u128 != 0 {
            return Err(Error::Precondition(format!(
                "(a^{k} b^{{n/d}})^d does not lie in <a^{m}>"
            )));
        }
        Ok(MetacyclicSpec { p, n, m, d, k })
    }

    pub fn field_size(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn order(&self) -> u64 {
        self.d as u64 * (self.field_size() - 1) / self.m
    }

    /// Matrices of `a^m` and `a^k b^{n/d}` on `F_p^n`.
    pub fn generators(&self, field: &FiniteField) -> Result<(MatCtx, Vec<Packed>)> {
        let ctx = MatCtx::new(self.p as u32, self.n as usize)?;
        let n = self.n as usize;
        let basis: Vec<u32> = (0..n)
            .map(|j| field.from_coordinates(&(0..n).map(|i| (i == j) as u32).collect::<Vec<_>>()))
            .collect();
        let matrix_of = |f: &dyn Fn(u32) -> u32| {
            let cols: Vec<Vec<u32>> = basis.iter().map(|&e| field.coordinates(f(e))).collect();
            let rows: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
            ctx.from_rows(&rows).expect("square")
        };
        let am = field.exp(self.m);
        let ak = field.exp(self.k);
        let s = self.n / self.d;
        let frob_s = |x: u32| (0..s).fold(x, |y, _| field.frobenius(y));
        let g1 = matrix_of(&|x| field.mul(am, x));
        let g2 = matrix_of(&|x| field.mul(ak, frob_s(x)));
        let gens = [g1, g2].into_iter().filter(|&g| g != ctx.identity()).collect();
        Ok((ctx, gens))
    }

    pub fn group(&self, field: &FiniteField) -> Result<FiniteMatrixGroup> {
        let (ctx, gens) = self.generators(field)?;
        let g = closure(ctx, &gens, self.order() as usize)?;
        debug_assert_eq!(g.order() as u64, self.order());
        Ok(g)
    }
}

/// Every subgroup of `GammaL(1, p^n)` as `(spec, group)`, one per subgroup,
/// with `k` reduced below `m`.
pub fn metacyclic_instances(p: u64, n: u32) -> Result<Vec<(MetacyclicSpec, FiniteMatrixGroup)>> {
    let q = p
        .checked_pow(n)
        .filter(|&q| q <= METACYCLIC_CAP)
        .ok_or(Error::CapExceeded {
            what: "p^n",
            value: (p as u128).saturating_pow(n),
            cap: METACYCLIC_CAP as u128,
        })?;
    let field = FiniteField::new(p, n)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for d in divisors(n as u64) {
        for m in divisors(q - 1) {
            for k in 0..m {
                let Ok(spec) = MetacyclicSpec::new(p, n, m, d as u32, k) else {
                    continue;
                };
                let group = spec.group(&field)?;
                if seen.insert(group.fingerprint()) {
                    out.push((spec, group));
                }
            }
        }
    }
    Ok(out)
}

pub fn metacyclic_enumerate(p: u64, n: u32) -> Result<Vec<MetacyclicSpec>> {
    Ok(metacyclic_instances(p, n)?.into_iter().map(|(s, _)| s).collect())
}

/// Every prime power `2 <= q <= q_max` as `(p, n)`.
pub fn prime_powers_up_to(q_max: u64) -> Vec<(u64, u32)> {
    (2..=q_max).filter_map(prime_power).collect()
}

/// Brute-force data of one instance with the estimates that apply to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetacyclicRecord {
    #[serde(flatten)]
    pub spec: MetacyclicSpec,
    pub order: u64,
    pub k_g: u64,
    #[serde(rename = "kGV")]
    pub k_gv: u64,
    #[serde(rename = "V")]
    pub v: u64,
    /// `(lemma, bound, holds)` for every estimate whose preconditions hold.
    pub bounds: Vec<(MetacyclicBound, String, bool)>,
}

impl MetacyclicRecord {
    pub fn violates_theorem(&self) -> bool {
        self.k_gv > self.v
    }

    pub fn bounds_hold(&self) -> bool {
        self.bounds.iter().all(|(_, _, ok)| *ok)
    }
}

fn applicable_bounds(spec: &MetacyclicSpec, k_g: u64, k_gv: u64) -> Result<Vec<(MetacyclicBound, String, bool)>> {
    let MetacyclicSpec { p, n, m, d, .. } = *spec;
    let (n, d) = (n as u64, d as u64);
    let mut out = Vec::new();
    let mut push = |lemma, value: BigRational, observed: u64| {
        let ok = BigRational::from_integer(observed.into()) <= value;
        out.push((lemma, value.to_string(), ok));
    };
    if d == 1 {
        let v = metacyclic_bound(MetacyclicBound::D1Case, p, n, m, d)?;
        // the d = 1 value is an equality
        out.push((
            MetacyclicBound::D1Case,
            v.to_string(),
            v == BigRational::from_integer(k_gv.into()),
        ));
        return Ok(out);
    }
    push(MetacyclicBound::ClassNumber, metacyclic_bound(MetacyclicBound::ClassNumber, p, n, m, d)?, k_g);
    push(MetacyclicBound::General, metacyclic_bound(MetacyclicBound::General, p, n, m, d)?, k_gv);
    if m < d && p.checked_pow(n as u32).is_some() && zsigmondy(p, n as u32)?.is_some() {
        push(MetacyclicBound::PrimitiveDivisor, metacyclic_bound(MetacyclicBound::PrimitiveDivisor, p, n, m, d)?, k_gv);
    }
    if m == 1 {
        push(MetacyclicBound::CyclicKernel, metacyclic_bound(MetacyclicBound::CyclicKernel, p, n, m, d)?, k_gv);
    }
    Ok(out)
}

/// `k(G)`, `k(GV)` and every applicable estimate for every subgroup of
/// `GammaL(1, q)` with `q <= q_max`, in increasing `(q, spec)` order.
pub fn metacyclic_survey(q_max: u64) -> Result<Vec<MetacyclicRecord>> {
    if q_max > METACYCLIC_CAP {
        return Err(Error::CapExceeded {
            what: "q_max",
            value: q_max as u128,
            cap: METACYCLIC_CAP as u128,
        });
    }
    let fields = prime_powers_up_to(q_max);
    let per_field: Vec<Vec<MetacyclicRecord>> = fields
        .par_iter()
        .map(|&(p, n)| {
            let instances = metacyclic_instances(p, n)?;
            instances
                .par_iter()
                .map(|(spec, group)| {
                    let k_g = group.class_count() as u64;
                    let k_gv = kgv_count(group, KgvMethod::Lgt)?;
                    Ok(MetacyclicRecord {
                        spec: *spec,
                        order: group.order() as u64,
                        k_g,
                        k_gv,
                        v: spec.field_size(),
                        bounds: applicable_bounds(spec, k_g, k_gv)?,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<MetacyclicRecord> = per_field.into_iter().flatten().collect();
    out.sort_by_key(|r| (r.v, r.spec));
    Ok(out)
}

/// One instance with `k(GV) > |V|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub p: u64,
    pub n: u32,
    pub m: u64,
    pub d: u32,
    pub k: u64,
    #[serde(rename = "kGV")]
    pub k_gv: u64,
    #[serde(rename = "V")]
    pub v: u64,
    /// `D8` or `S4` when `GV` has order 8 or 24.
    pub name: Option<String>,
}

impl From<&MetacyclicRecord> for Violation {
    fn from(r: &MetacyclicRecord) -> Self {
        let gv = r.order * r.v;
        Violation {
            p: r.spec.p,
            n: r.spec.n,
            m: r.spec.m,
            d: r.spec.d,
            k: r.spec.k,
            k_gv: r.k_gv,
            v: r.v,
            name: match gv {
                8 => Some("D8".into()),
                24 => Some("S4".into()),
                _ => None,
            },
        }
    }
}

impl MetacyclicSpec {
    /// Representative of the conjugacy class under `<a>`: conjugating
    /// `a^k b^{n/d}` by `a^j` shifts `k` by `j (p^{n/d} - 1)`.
    pub fn conjugacy_representative(&self) -> MetacyclicSpec {
        let step = self.p.pow(self.n / self.d) - 1;
        let g = num_integer::gcd(self.m, step);
        MetacyclicSpec { k: self.k % g, ..*self }
    }
}

/// Instances with `k(GV) > |V|`, one per conjugacy class of subgroups.
pub fn verify_metacyclic_theorem(q_max: u64) -> Result<Vec<Violation>> {
    Ok(theorem_violations(&metacyclic_survey(q_max)?))
}

/// Survey records with `k(GV) > |V|`, one per conjugacy class of subgroups.
pub fn theorem_violations(survey: &[MetacyclicRecord]) -> Vec<Violation> {
    let mut seen = HashSet::new();
    survey
        .iter()
        .filter(|r| r.violates_theorem())
        .filter_map(|r| {
            let spec = r.spec.conjugacy_representative();
            seen.insert(spec).then(|| Violation::from(&MetacyclicRecord { spec, ..r.clone() }))
        })
        .collect()
}

/// Outcome of one family of lemma checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub lemma: String,
    pub instances: u64,
    pub failures: Vec<String>,
}

impl LemmaCheck {
    fn new(lemma: &str) -> Self {
        LemmaCheck {
            lemma: lemma.into(),
            instances: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(witness());
        }
    }

    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Centralizer, inertia, orbit-count, Nagao and Gallagher checks on every
/// subgroup of `GammaL(1, q)` with `q <= q_max`.
pub fn verify_small_lemmas(q_max: u64) -> Result<Vec<LemmaCheck>> {
    let mut centralizer = LemmaCheck::new("centralizer: |C_V(g)| <= |V|^(1/q) for g != 1, d > 1");
    let mut inertia = LemmaCheck::new("inertia: Stab(lambda) is cyclic of order <= d for lambda != 0");
    let mut brauer = LemmaCheck::new("orbit counts on V and on Irr(V) agree");
    let mut nagao = LemmaCheck::new("Nagao: k(GV) <= k(V) k(G) and k(G) <= k(G ∩ S) k(G/(G ∩ S))");
    let mut gallagher = LemmaCheck::new("Gallagher: k(GV) = sum of k(Stab) over dual orbits, checked directly");
    for (p, n) in prime_powers_up_to(q_max) {
        for (spec, group) in metacyclic_instances(p, n)? {
            let ctx = group.ctx();
            let v = spec.field_size();
            let label = format!("{spec:?}");
            if spec.d > 1 {
                let q = smallest_prime_divisor(spec.d as u64).expect("d > 1");
                for &g in group.elements().iter().filter(|&&g| g != ctx.identity()) {
                    let fixed = fixed_points(ctx, g) as u128;
                    centralizer.record(fixed.pow(q as u32) <= v as u128, || format!("{label}: {:?}", ctx.rows(g)));
                }
            }
            let dual = dual_orbits(&group);
            for &(lambda, _) in dual.iter().filter(|(l, _)| *l != 0) {
                let stab = dual_stabilizer(&group, lambda)?;
                let cyclic = stab
                    .elements()
                    .iter()
                    .any(|&x| closure(ctx, &[x], stab.order()).map(|c| c.order()).ok() == Some(stab.order()));
                inertia.record(cyclic && stab.order() as u32 <= spec.d, || format!("{label}: lambda={lambda}"));
            }
            brauer.record(dual.len() == vector_orbits(&group).len(), || label.clone());
            let k_g = group.class_count() as u64;
            let k_gv = kgv_count(&group, KgvMethod::Lgt)?;
            let cyclic_part = (v - 1) / spec.m;
            nagao.record(k_gv <= v * k_g && k_g <= cyclic_part * spec.d as u64, || label.clone());
            if group.order() as u64 * v <= DIRECT_CAP {
                gallagher.record(kgv_count(&group, KgvMethod::Direct)? == k_gv, || label.clone());
            }
        }
    }
    Ok(vec![centralizer, inertia, brauer, nagao, gallagher])
}
