//! Empirical verification engine: exhaustive enumeration of
//! symmetry-constrained linear pencils over small finite fields, explicit
//! witnesses for nonempty strata, and Monte-Carlo codimension estimation
//! across field towers.
//!
//! All randomness is ChaCha-seeded and partitioned into per-chunk streams,
//! so results are deterministic for a given seed regardless of the worker
//! count.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::codim::{constrained_ambient_dim, DeltaSpec, Sym};
use crate::error::{Error, Result};
use crate::field::{ExactField, FieldElem};
use crate::linalg::Matrix;

pub const DEFAULT_BUDGET: u64 = 1 << 26;

/// The shape of a constrained pencil space over a concrete finite field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstrainedSpec {
    pub e: usize,
    pub a: usize,
    pub f: usize,
    pub sym: Sym,
    pub field: ExactField,
}

impl ConstrainedSpec {
    pub fn ambient_dim(&self) -> usize {
        constrained_ambient_dim(self.e, self.a, self.f, self.sym)
    }

    /// q^ambient_dim when it fits in a u64.
    pub fn total_count(&self) -> Option<u64> {
        let q = self.field.cardinality()?;
        let mut acc: u64 = 1;
        for _ in 0..self.ambient_dim() {
            acc = acc.checked_mul(q)?;
        }
        Some(acc)
    }

    /// Layout of the free coordinates: for each target component, first
    /// the constrained block over A x A (row-major upper triangle,
    /// diagonal included only for symmetric blocks), then the rows of
    /// E outside A against A, row-major.
    fn data_slots(&self) -> Vec<(usize, usize, usize)> {
        let mut slots = Vec::with_capacity(self.ambient_dim());
        for t in 0..self.f {
            for v in 0..self.a {
                let start = match self.sym {
                    Sym::Sym => v,
                    Sym::Alt => v + 1,
                };
                for w in start..self.a {
                    slots.push((t, v, w));
                }
            }
            for v in self.a..self.e {
                for w in 0..self.a {
                    slots.push((t, v, w));
                }
            }
        }
        slots
    }
}

/// One symmetry-constrained pencil, with its realized matrix: rows are
/// indexed by a basis of E, columns by (A-index w, component t) as
/// w + a * t, so the top a rows are the restriction to A.
#[derive(Clone, Debug)]
pub struct ConstrainedMap {
    pub spec: ConstrainedSpec,
    pub data: Vec<FieldElem>,
    pub realized: Matrix,
}

pub fn map_from_data(spec: &ConstrainedSpec, data: Vec<FieldElem>) -> ConstrainedMap {
    let field = spec.field;
    let slots = spec.data_slots();
    assert_eq!(data.len(), slots.len());
    let mut realized = Matrix::zero(field, spec.e, spec.a * spec.f);
    for ((t, v, w), c) in slots.iter().zip(&data) {
        realized.set(*v, w + spec.a * t, c.clone());
        if *v < spec.a && v != w {
            // mirrored block entry: symmetric or alternating
            let mirrored = match spec.sym {
                Sym::Sym => c.clone(),
                Sym::Alt => field.neg(c),
            };
            realized.set(*w, v + spec.a * t, mirrored);
        }
    }
    ConstrainedMap { spec: *spec, data, realized }
}

/// The idx-th pencil in the deterministic enumeration (base-q digits of
/// idx fill the data slots in layout order).
pub fn map_from_index(spec: &ConstrainedSpec, idx: u64) -> ConstrainedMap {
    let q = spec.field.cardinality().expect("enumeration needs a finite field");
    let dim = spec.ambient_dim();
    let mut rem = idx;
    let mut data = Vec::with_capacity(dim);
    for _ in 0..dim {
        data.push(spec.field.elem_from_index(rem % q));
        rem /= q;
    }
    map_from_data(spec, data)
}

/// Uniformly random pencil.
pub fn map_from_rng<R: RngCore>(spec: &ConstrainedSpec, rng: &mut R) -> ConstrainedMap {
    let dim = spec.ambient_dim();
    let data = (0..dim).map(|_| spec.field.sample(rng)).collect();
    map_from_data(spec, data)
}

/// Rank defect and kernel-meet classification of a pencil.
pub fn classify_map(map: &ConstrainedMap) -> (usize, usize) {
    let spec = &map.spec;
    let m = spec.e.min(spec.a * spec.f);
    let i = m - map.realized.rank();
    let a_block = map.realized.submatrix_rows(0..spec.a);
    let p = spec.a - a_block.rank();
    (i, p)
}

/// Iterator over every pencil, in deterministic order.
pub fn enumerate_constrained(
    spec: &ConstrainedSpec,
    budget: u64,
) -> Result<impl Iterator<Item = ConstrainedMap> + '_> {
    let q = spec.field.cardinality().ok_or(Error::InfiniteField)? as u128;
    let total128 = q
        .checked_pow(spec.ambient_dim() as u32)
        .unwrap_or(u128::MAX);
    if total128 > budget as u128 {
        return Err(Error::BudgetExceeded(total128, budget));
    }
    let spec = *spec;
    Ok((0..total128 as u64).map(move |idx| map_from_index(&spec, idx)))
}

/// Exact stratum counts by (i, p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTable {
    pub counts: BTreeMap<(usize, usize), u64>,
    pub total: u64,
}

impl CensusTable {
    pub fn occupied(&self) -> Vec<(usize, usize)> {
        self.counts.keys().copied().collect()
    }
}

/// Exhaustive classification of every pencil, parallelized over
/// contiguous index chunks and merged by addition.
pub fn stratum_census(spec: &ConstrainedSpec, budget: u64) -> Result<CensusTable> {
    let q = spec.field.cardinality().ok_or(Error::InfiniteField)? as u128;
    let total128 = q
        .checked_pow(spec.ambient_dim() as u32)
        .unwrap_or(u128::MAX);
    if total128 > budget as u128 {
        return Err(Error::BudgetExceeded(total128, budget));
    }
    let total = total128 as u64;
    let chunk: u64 = 1 << 14;
    let nchunks = total.div_ceil(chunk);
    let counts = (0..nchunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk;
            let hi = ((c + 1) * chunk).min(total);
            let mut local: BTreeMap<(usize, usize), u64> = BTreeMap::new();
            for idx in lo..hi {
                let m = map_from_index(spec, idx);
                *local.entry(classify_map(&m)).or_insert(0) += 1;
            }
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    Ok(CensusTable { counts, total })
}

/// Constructs an explicit pencil in the (i, p) stratum: chains of basis
/// pairings on A against one or two target vectors, extended by
/// independent maps on basis vectors outside A. The output is checked to
/// classify as (i, p).
pub fn witness(dspec: &DeltaSpec, field: ExactField) -> Result<ConstrainedMap> {
    if !crate::codim::delta_nonempty(dspec) {
        return Err(Error::EmptyStratum);
    }
    let spec = ConstrainedSpec { e: dspec.e, a: dspec.a, f: dspec.f, sym: dspec.sym, field };
    let a = dspec.a;
    let n = dspec.n() as usize;
    let s = a - dspec.p; // rank of the restriction to A
    let one = field.one();

    // bilinear block: rank s on A with the right symmetry
    let mut block = Matrix::zero(field, a, a * dspec.f);
    match dspec.sym {
        Sym::Sym => {
            let mut idx = 0;
            while idx + 1 < s {
                block.set(idx, idx + 1, one.clone());
                block.set(idx + 1, idx, one.clone());
                idx += 2;
            }
            if s % 2 == 1 {
                block.set(s - 1, s - 1, one.clone());
            }
        }
        Sym::Alt => {
            if s % 2 == 0 {
                let mut idx = 0;
                while idx + 1 < s {
                    block.set(idx, idx + 1, one.clone());
                    block.set(idx + 1, idx, field.neg(&one));
                    idx += 2;
                }
            } else {
                // odd rank needs two target vectors: a consecutive chain
                // against the first and one closing pairing against the
                // second
                debug_assert!(dspec.f >= 2 && s >= 3);
                for j in 0..s - 2 {
                    block.set(j, j + 1, one.clone());
                    block.set(j + 1, j, field.neg(&one));
                }
                block.set(s - 1, a, one.clone());
                block.set(0, (s - 1) + a, field.neg(&one));
            }
        }
    }

    // extend by n - s independent rows on basis vectors outside A
    let mut rows: Vec<Vec<FieldElem>> = (0..a).map(|v| block.row(v).to_vec()).collect();
    let extensions = n - s;
    let mut current_rank = Matrix::from_rows(field, rows.clone()).rank();
    debug_assert_eq!(current_rank, s);
    let target_rows = a + extensions;
    for unit in 0..(a * dspec.f) {
        if rows.len() == target_rows {
            break;
        }
        let mut cand = vec![field.zero(); a * dspec.f];
        cand[unit] = one.clone();
        let mut trial = rows.clone();
        trial.push(cand.clone());
        let r = Matrix::from_rows(field, trial).rank();
        if r > current_rank {
            current_rank = r;
            rows.push(cand);
        }
    }
    debug_assert_eq!(rows.len(), target_rows);
    while rows.len() < spec.e {
        rows.push(vec![field.zero(); a * dspec.f]);
    }
    let full = Matrix::from_rows(field, rows);

    // read the data slots back off the realized matrix
    let slots = spec.data_slots();
    let data: Vec<FieldElem> = slots
        .iter()
        .map(|&(t, v, w)| full.at(v, w + a * t).clone())
        .collect();
    let out = map_from_data(&spec, data);
    let (gi, gp) = classify_map(&out);
    if (gi, gp) != (dspec.i, dspec.p) {
        return Err(Error::PreconditionViolated(format!(
            "witness construction produced stratum ({gi}, {gp}), wanted ({}, {})",
            dspec.i, dspec.p
        )));
    }
    Ok(out)
}

// ---- Monte-Carlo codimension estimation ----

/// Result of a tower fit: hit fractions per field and the least-squares
/// slope of -log_q(fraction) against the extension exponent.
#[derive(Clone, Debug)]
pub struct CodimEstimate {
    pub tower: Vec<ExactField>,
    pub hits: Vec<u64>,
    pub samples_per_field: u64,
    pub estimate: BigRational,
    pub halfwidth: BigRational,
}

impl CodimEstimate {
    pub fn fractions(&self) -> Vec<(u64, u64)> {
        self.hits.iter().map(|&h| (h, self.samples_per_field)).collect()
    }
}

fn big(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// log2 of a positive rational, accurate to well below 1e-6, computed in
/// integer arithmetic only.
pub fn log2_rational(x: &BigRational, frac_bits: usize) -> BigRational {
    assert!(x.is_positive(), "log of a non-positive value");
    let mut e: i64 = (x.numer().bits() as i64) - (x.denom().bits() as i64);
    let two = BigRational::from(BigInt::from(2));
    let pow2 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from(BigInt::from(1) << (k as usize))
        } else {
            BigRational::new(BigInt::one(), BigInt::from(1) << ((-k) as usize))
        }
    };
    // adjust so that 2^e <= x < 2^{e+1}
    while *x < pow2(e) {
        e -= 1;
    }
    while *x >= pow2(e + 1) {
        e += 1;
    }
    const K: usize = 64;
    // mantissa in [2^K, 2^{K+1}) as an integer with denominator 2^K
    let m = x / pow2(e);
    let mut mant: BigInt =
        (m * BigRational::from(BigInt::one() << K)).to_integer();
    let mut frac = BigRational::zero();
    let mut weight = BigRational::new(BigInt::one(), BigInt::from(2));
    for _ in 0..frac_bits {
        mant = (&mant * &mant) >> K;
        if mant.bits() as usize > K + 1 {
            mant >>= 1;
            frac += &weight;
        }
        weight /= &two;
    }
    big(e) + frac
}

fn approx_sqrt(x: &BigRational) -> BigRational {
    if !x.is_positive() {
        return BigRational::zero();
    }
    let scale = BigInt::from(10u64.pow(12));
    let scaled = (x * BigRational::from(&scale * &scale)).to_integer();
    BigRational::new(scaled.sqrt(), scale)
}

/// Generic tower-fit engine: for each field of the tower, draws
/// `samples_per_field` Bernoulli trials from `membership` and fits the
/// slope of -log_q(fraction) against the extension exponent over the base
/// field. Chunked sampling with per-chunk ChaCha streams keeps the result
/// deterministic in (seed, tower).
pub fn estimate_codim_mc_with<M>(
    tower: &[ExactField],
    samples_per_field: u64,
    seed: u64,
    membership: M,
) -> Result<CodimEstimate>
where
    M: Fn(&ExactField, &mut ChaCha12Rng) -> bool + Sync,
{
    if tower.len() < 3 {
        return Err(Error::PreconditionViolated(
            "a tower needs at least 3 fields".into(),
        ));
    }
    let charac = tower[0].characteristic();
    if tower.iter().any(|f| f.characteristic() != charac || f.cardinality().is_none()) {
        return Err(Error::PreconditionViolated(
            "tower fields must be finite of one characteristic".into(),
        ));
    }
    let chunk: u64 = 1 << 14;
    let mut hits = Vec::with_capacity(tower.len());
    for (level, field) in tower.iter().enumerate() {
        let nchunks = samples_per_field.div_ceil(chunk);
        let h: u64 = (0..nchunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = ChaCha12Rng::seed_from_u64(seed);
                rng.set_stream(((level as u64) << 32) | c);
                let lo = c * chunk;
                let hi = ((c + 1) * chunk).min(samples_per_field);
                let mut local = 0u64;
                for _ in lo..hi {
                    if membership(field, &mut rng) {
                        local += 1;
                    }
                }
                local
            })
            .sum();
        hits.push(h);
    }
    if hits.iter().all(|&h| h == 0) {
        return Err(Error::DegenerateTower);
    }

    // exponents over the base: log_q(card) with q = first cardinality
    let q0 = tower[0].cardinality().unwrap();
    let log2_q0 = log2_rational(&BigRational::from(BigInt::from(q0)), 40);
    let xs: Vec<BigRational> = tower
        .iter()
        .map(|f| {
            let c = BigRational::from(BigInt::from(f.cardinality().unwrap()));
            log2_rational(&c, 40) / &log2_q0
        })
        .collect();
    // y = -log_q(fraction); levels with zero hits are clamped to one hit
    // so the fit stays finite (they only make the slope steeper)
    let ys: Vec<BigRational> = hits
        .iter()
        .map(|&h| {
            let hh = h.max(1);
            let frac = BigRational::new(BigInt::from(hh), BigInt::from(samples_per_field));
            -log2_rational(&frac, 40) / &log2_q0
        })
        .collect();

    let k = big(tower.len() as i64);
    let xbar = xs.iter().sum::<BigRational>() / &k;
    let ybar = ys.iter().sum::<BigRational>() / &k;
    let mut sxx = BigRational::zero();
    let mut sxy = BigRational::zero();
    for (x, y) in xs.iter().zip(&ys) {
        let dx = x - &xbar;
        sxx += &dx * &dx;
        sxy += &dx * (y - &ybar);
    }
    let estimate = &sxy / &sxx;

    // propagated binomial error band (2 sigma), engineering grade
    let ln2 = BigRational::new(BigInt::from(693147u64), BigInt::from(1_000_000u64));
    let lnq = &log2_q0 * &ln2;
    let mut var_num = BigRational::zero();
    for (x, &h) in xs.iter().zip(&hits) {
        let hh = h.max(1);
        let frac = BigRational::new(BigInt::from(hh), BigInt::from(samples_per_field));
        let var_frac = &frac * (BigRational::one() - &frac)
            / BigRational::from(BigInt::from(samples_per_field));
        let sigma_y = approx_sqrt(&var_frac) / (&frac * &lnq);
        let dx = x - &xbar;
        var_num += &dx * &dx * &sigma_y * &sigma_y;
    }
    let halfwidth = big(2) * approx_sqrt(&var_num) / &sxx;

    Ok(CodimEstimate {
        tower: tower.to_vec(),
        hits,
        samples_per_field,
        estimate,
        halfwidth,
    })
}

/// Tower fit for membership in the (i, p) stratum of a constrained pencil
/// space.
pub fn estimate_codim_mc(
    dspec: &DeltaSpec,
    tower: &[ExactField],
    samples_per_field: u64,
    seed: u64,
) -> Result<CodimEstimate> {
    let (e, a, f, sym) = (dspec.e, dspec.a, dspec.f, dspec.sym);
    let target = (dspec.i, dspec.p);
    estimate_codim_mc_with(tower, samples_per_field, seed, move |field, rng| {
        let spec = ConstrainedSpec { e, a, f, sym, field: *field };
        let m = map_from_rng(&spec, rng);
        classify_map(&m) == target
    })
}

/// Decimal rendering of a rational with the given number of places,
/// computed by integer division.
pub fn decimal_string(x: &BigRational, places: usize) -> String {
    let sign = if x.is_negative() { "-" } else { "" };
    let ax = x.abs();
    let scale = BigInt::from(10u64).pow(places as u32);
    let scaled = (&ax * BigRational::from(scale.clone())).round().to_integer();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let frac_str = format!("{:0width$}", frac_part, width = places);
    format!("{sign}{int_part}.{frac_str}")
}

/// Convenience: estimate rounded into an f64-free display pair.
pub fn estimate_abs_error(est: &CodimEstimate, formula: usize) -> BigRational {
    (&est.estimate - big(formula as i64)).abs()
}

/// Whether |estimate - formula| is at most milli/1000, exactly.
pub fn within_milli_tolerance(est: &CodimEstimate, formula: usize, milli: u64) -> bool {
    estimate_abs_error(est, formula)
        <= BigRational::new(BigInt::from(milli), BigInt::from(1000u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> ExactField {
        ExactField::prime(2).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let spec = ConstrainedSpec { e: 2, a: 2, f: 1, sym: Sym::Sym, field: f2() };
        assert_eq!(spec.ambient_dim(), 3);
        assert_eq!(enumerate_constrained(&spec, DEFAULT_BUDGET).unwrap().count(), 8);

        let spec = ConstrainedSpec { e: 2, a: 2, f: 1, sym: Sym::Alt, field: f2() };
        assert_eq!(enumerate_constrained(&spec, DEFAULT_BUDGET).unwrap().count(), 2);

        let spec = ConstrainedSpec { e: 3, a: 2, f: 2, sym: Sym::Sym, field: f2() };
        assert_eq!(spec.ambient_dim(), 10);
        assert_eq!(enumerate_constrained(&spec, DEFAULT_BUDGET).unwrap().count(), 1024);
    }

    #[test]
    fn budget_guard() {
        let spec = ConstrainedSpec { e: 8, a: 8, f: 4, sym: Sym::Sym, field: f2() };
        assert!(matches!(
            enumerate_constrained(&spec, DEFAULT_BUDGET).err(),
            Some(Error::BudgetExceeded(_, _))
        ));
    }

    #[test]
    fn symmetric_2x2_rank_counts() {
        let spec = ConstrainedSpec { e: 2, a: 2, f: 1, sym: Sym::Sym, field: f2() };
        let table = stratum_census(&spec, DEFAULT_BUDGET).unwrap();
        // rank r corresponds to i = 2 - r, and p = i when a = e
        let by_rank: BTreeMap<usize, u64> = table
            .counts
            .iter()
            .map(|(&(i, _), &c)| (2 - i, c))
            .collect();
        assert_eq!(by_rank, BTreeMap::from([(0, 1), (1, 3), (2, 4)]));
    }

    #[test]
    fn alternating_2x2_rank_counts() {
        let spec = ConstrainedSpec { e: 2, a: 2, f: 1, sym: Sym::Alt, field: f2() };
        let table = stratum_census(&spec, DEFAULT_BUDGET).unwrap();
        let by_rank: BTreeMap<usize, u64> = table
            .counts
            .iter()
            .map(|(&(i, _), &c)| (2 - i, c))
            .collect();
        assert_eq!(by_rank, BTreeMap::from([(0, 1), (2, 1)]));
    }

    #[test]
    fn witness_examples() {
        // rank-1 map with A inside the kernel
        let d = DeltaSpec { e: 3, a: 2, f: 1, i: 1, p: 2, sym: Sym::Alt };
        let w = witness(&d, f2()).unwrap();
        assert_eq!(classify_map(&w), (1, 2));

        // full-rank stratum
        let d = DeltaSpec { e: 3, a: 2, f: 2, i: 0, p: 0, sym: Sym::Sym };
        let w = witness(&d, ExactField::prime(3).unwrap()).unwrap();
        assert_eq!(classify_map(&w), (0, 0));

        // odd alternating rank via the two-target-vector chain
        let d = DeltaSpec { e: 5, a: 4, f: 2, i: 2, p: 1, sym: Sym::Alt };
        assert!(crate::codim::delta_nonempty(&d));
        let w = witness(&d, f2()).unwrap();
        assert_eq!(classify_map(&w), (2, 1));

        let d = DeltaSpec { e: 3, a: 2, f: 1, i: 1, p: 1, sym: Sym::Alt };
        assert!(matches!(witness(&d, f2()), Err(Error::EmptyStratum)));
    }

    #[test]
    fn witness_over_rationals() {
        let d = DeltaSpec { e: 4, a: 3, f: 2, i: 1, p: 1, sym: Sym::Sym };
        if crate::codim::delta_nonempty(&d) {
            let w = witness(&d, ExactField::rationals()).unwrap();
            assert_eq!(classify_map(&w), (1, 1));
        }
    }

    #[test]
    fn log2_rational_accuracy() {
        let x = BigRational::new(BigInt::from(1), BigInt::from(8));
        let l = log2_rational(&x, 40);
        assert_eq!(l, big(-3));
        let x = BigRational::new(BigInt::from(3), BigInt::from(1));
        let l = log2_rational(&x, 40);
        // log2(3) = 1.58496...
        let err = (&l - BigRational::new(BigInt::from(1584963), BigInt::from(1_000_000))).abs();
        assert!(err < BigRational::new(BigInt::from(1), BigInt::from(10_000)));
    }

    #[test]
    fn mc_singular_matrices_estimate_one() {
        // general 2x2 matrices realized as (e, a, f) = (2, 1, 2) with a
        // trivial symmetry constraint; singular means rank defect
        let tower = [
            ExactField::prime(2).unwrap(),
            ExactField::extension(2, 2).unwrap(),
            ExactField::extension(2, 4).unwrap(),
        ];
        let est = estimate_codim_mc_with(&tower, 200_000, 11, |field, rng| {
            let spec = ConstrainedSpec { e: 2, a: 1, f: 2, sym: Sym::Sym, field: *field };
            let m = map_from_rng(&spec, rng);
            classify_map(&m).0 >= 1
        })
        .unwrap();
        let err = estimate_abs_error(&est, 1);
        assert!(
            err < BigRational::new(BigInt::from(35), BigInt::from(100)),
            "estimate {} too far from 1",
            decimal_string(&est.estimate, 4)
        );
    }

    #[test]
    fn mc_always_false_degenerates() {
        let tower = [
            ExactField::prime(2).unwrap(),
            ExactField::extension(2, 2).unwrap(),
            ExactField::extension(2, 4).unwrap(),
        ];
        let r = estimate_codim_mc_with(&tower, 1000, 5, |_, _| false);
        assert!(matches!(r, Err(Error::DegenerateTower)));
    }

    #[test]
    fn decimal_rendering() {
        let x = BigRational::new(BigInt::from(-1), BigInt::from(3));
        assert_eq!(decimal_string(&x, 4), "-0.3333");
        let y = BigRational::new(BigInt::from(5), BigInt::from(2));
        assert_eq!(decimal_string(&y, 2), "2.50");
    }
}
