//! Exact field arithmetic over the rationals, prime fields and their
//! finite extensions.
//!
//! A field handle is a small `Copy` value; elements of finite fields are
//! packed into a single `u64` (base-p digit expansion of the coefficient
//! vector), so finite arithmetic never allocates. Rational elements carry
//! an arbitrary-precision fraction. No floating point is used anywhere.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rand::RngCore;

use crate::error::{Error, Result};

/// Description of a field prior to validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime { p: u64 },
    Extension { p: u64, k: u32, modulus: Option<Vec<u64>> },
}

/// A validated field handle.
///
/// Extension moduli are stored packed in base p (little-endian digits,
/// including the leading monic coefficient).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExactField {
    Rationals,
    Prime { p: u64 },
    Extension { p: u64, k: u32, modulus: u64 },
}

/// An element of some [`ExactField`].
///
/// The interpretation of the `Fin` payload depends on the field handle:
/// a residue for prime fields, packed base-p coefficients for extensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rat(BigRational),
    Fin(u64),
}

impl FieldElem {
    pub fn as_fin(&self) -> u64 {
        match self {
            FieldElem::Fin(v) => *v,
            FieldElem::Rat(_) => panic!("expected a finite-field element"),
        }
    }
}

const MAX_CARDINALITY: u64 = 1 << 20;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---- packed polynomial helpers (base-p digit vectors in a u64) ----

fn unpack(p: u64, mut v: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for slot in out.iter_mut() {
        *slot = v % p;
        v /= p;
    }
    out
}

fn pack(p: u64, digits: &[u64]) -> u64 {
    let mut v = 0u64;
    for &d in digits.iter().rev() {
        v = v * p + (d % p);
    }
    v
}

fn poly_deg(digits: &[u64]) -> Option<usize> {
    digits.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo monic `m` over F_p, both as digit vectors.
fn poly_rem(p: u64, a: &mut Vec<u64>, m: &[u64]) {
    let md = poly_deg(m).expect("modulus must be nonzero");
    while let Some(ad) = poly_deg(a) {
        if ad < md {
            break;
        }
        let c = a[ad];
        let shift = ad - md;
        for (i, &mc) in m.iter().enumerate().take(md + 1) {
            let idx = i + shift;
            let sub = (c * mc) % p;
            a[idx] = (a[idx] + p - sub % p) % p;
        }
    }
}

fn poly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    out
}

/// First monic irreducible polynomial of degree k over F_p in ascending
/// packed order. Deterministic, so element enumeration is reproducible
/// across runs and builds.
fn irreducible_modulus(p: u64, k: u32) -> u64 {
    let kk = k as usize;
    'cand: for low in 0..p.pow(k) {
        let mut cand = unpack(p, low, kk + 1);
        cand[kk] = 1;
        // trial division by every monic polynomial of degree 1..=k/2
        for d in 1..=(kk / 2) {
            for dl in 0..p.pow(d as u32) {
                let mut div = unpack(p, dl, d + 1);
                div[d] = 1;
                let mut rem = cand.clone();
                poly_rem(p, &mut rem, &div);
                if poly_deg(&rem).is_none() {
                    continue 'cand;
                }
            }
        }
        return pack(p, &cand);
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

impl ExactField {
    pub fn rationals() -> Self {
        ExactField::Rationals
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(ExactField::Prime { p })
    }

    /// Extension field F_{p^k} with the modulus taken from the built-in
    /// deterministic table (first irreducible in enumeration order).
    pub fn extension(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        if k == 0 || p.checked_pow(k).map_or(true, |q| q > MAX_CARDINALITY) {
            return Err(Error::PreconditionViolated(format!(
                "p^k must be positive and at most 2^20, got {p}^{k}"
            )));
        }
        if k == 1 {
            return Ok(ExactField::Prime { p });
        }
        let modulus = irreducible_modulus(p, k);
        Ok(ExactField::Extension { p, k, modulus })
    }

    /// Extension field with an explicit monic modulus given as little-endian
    /// coefficients of length k+1.
    pub fn extension_with_modulus(p: u64, k: u32, coeffs: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        if coeffs.len() != k as usize + 1 || coeffs[k as usize] % p != 1 {
            return Err(Error::PreconditionViolated(
                "modulus must be monic of degree k".into(),
            ));
        }
        if p.checked_pow(k).map_or(true, |q| q > MAX_CARDINALITY) {
            return Err(Error::PreconditionViolated("p^k must be at most 2^20".into()));
        }
        let digits: Vec<u64> = coeffs.iter().map(|&c| c % p).collect();
        // exhaustive factor check, cheap at this size
        for d in 1..=(k as usize / 2) {
            for dl in 0..p.pow(d as u32) {
                let mut div = unpack(p, dl, d + 1);
                div[d] = 1;
                let mut rem = digits.clone();
                poly_rem(p, &mut rem, &div);
                if poly_deg(&rem).is_none() {
                    return Err(Error::ReducibleModulus(p));
                }
            }
        }
        Ok(ExactField::Extension { p, k, modulus: pack(p, &digits) })
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        match spec {
            FieldSpec::Rationals => Ok(ExactField::Rationals),
            FieldSpec::Prime { p } => ExactField::prime(*p),
            FieldSpec::Extension { p, k, modulus: None } => ExactField::extension(*p, *k),
            FieldSpec::Extension { p, k, modulus: Some(m) } => {
                ExactField::extension_with_modulus(*p, *k, m)
            }
        }
    }

    /// Parses the CLI field syntax: `Q`, `F2`, `F3`, `F2^4`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(ExactField::Rationals);
        }
        let body = s
            .strip_prefix('F')
            .ok_or_else(|| Error::Parse(format!("unknown field spec {s:?}")))?;
        if let Some((ps, ks)) = body.split_once('^') {
            let p: u64 = ps.parse().map_err(|_| Error::Parse(format!("bad prime in {s:?}")))?;
            let k: u32 = ks.parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            ExactField::extension(p, k)
        } else {
            // plain prime, or a prime power like F4, F16, F27
            let q: u64 = body.parse().map_err(|_| Error::Parse(format!("bad order in {s:?}")))?;
            if is_prime(q) {
                return ExactField::prime(q);
            }
            let mut p = 2u64;
            while p * p <= q {
                if q % p == 0 {
                    let mut k = 0u32;
                    let mut rest = q;
                    while rest % p == 0 {
                        rest /= p;
                        k += 1;
                    }
                    if rest != 1 {
                        return Err(Error::NonPrimeModulus(q));
                    }
                    return ExactField::extension(p, k);
                }
                p += 1;
            }
            Err(Error::NonPrimeModulus(q))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            ExactField::Rationals => 0,
            ExactField::Prime { p } | ExactField::Extension { p, .. } => *p,
        }
    }

    pub fn cardinality(&self) -> Option<u64> {
        match self {
            ExactField::Rationals => None,
            ExactField::Prime { p } => Some(*p),
            ExactField::Extension { p, k, .. } => Some(p.pow(*k)),
        }
    }

    pub fn modulus_coeffs(&self) -> Option<Vec<u64>> {
        match self {
            ExactField::Extension { p, k, modulus } => {
                Some(unpack(*p, *modulus, *k as usize + 1))
            }
            _ => None,
        }
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            ExactField::Rationals => FieldElem::Rat(BigRational::zero()),
            _ => FieldElem::Fin(0),
        }
    }

    pub fn one(&self) -> FieldElem {
        match self {
            ExactField::Rationals => FieldElem::Rat(BigRational::one()),
            _ => FieldElem::Fin(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self {
            ExactField::Rationals => FieldElem::Rat(BigRational::from(BigInt::from(n))),
            ExactField::Prime { p } | ExactField::Extension { p, .. } => {
                let r = n.rem_euclid(*p as i64) as u64;
                FieldElem::Fin(r)
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldElem> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        match self {
            ExactField::Rationals => Ok(FieldElem::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            _ => self.div(&self.from_i64(num), &self.from_i64(den)),
        }
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Rat(r) => r.is_zero(),
            FieldElem::Fin(v) => *v == 0,
        }
    }

    fn ext_parts(&self) -> (u64, usize, u64) {
        match self {
            ExactField::Extension { p, k, modulus } => (*p, *k as usize, *modulus),
            _ => unreachable!(),
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (ExactField::Rationals, FieldElem::Rat(x), FieldElem::Rat(y)) => {
                FieldElem::Rat(x + y)
            }
            (ExactField::Prime { p }, FieldElem::Fin(x), FieldElem::Fin(y)) => {
                FieldElem::Fin((x + y) % p)
            }
            (ExactField::Extension { .. }, FieldElem::Fin(x), FieldElem::Fin(y)) => {
                let (p, k, _) = self.ext_parts();
                let xa = unpack(p, *x, k);
                let ya = unpack(p, *y, k);
                let sum: Vec<u64> = xa.iter().zip(&ya).map(|(u, v)| (u + v) % p).collect();
                FieldElem::Fin(pack(p, &sum))
            }
            _ => panic!("element does not belong to this field"),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match (self, a) {
            (ExactField::Rationals, FieldElem::Rat(x)) => FieldElem::Rat(-x),
            (ExactField::Prime { p }, FieldElem::Fin(x)) => FieldElem::Fin((p - x % p) % p),
            (ExactField::Extension { .. }, FieldElem::Fin(x)) => {
                let (p, k, _) = self.ext_parts();
                let xa = unpack(p, *x, k);
                let na: Vec<u64> = xa.iter().map(|&u| (p - u % p) % p).collect();
                FieldElem::Fin(pack(p, &na))
            }
            _ => panic!("element does not belong to this field"),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (ExactField::Rationals, FieldElem::Rat(x), FieldElem::Rat(y)) => {
                FieldElem::Rat(x * y)
            }
            (ExactField::Prime { p }, FieldElem::Fin(x), FieldElem::Fin(y)) => {
                FieldElem::Fin((x * y) % p)
            }
            (ExactField::Extension { p: 2, k, modulus }, FieldElem::Fin(x), FieldElem::Fin(y)) => {
                // base-2 digits are plain bits: carry-less multiply and
                // reduce by the modulus bit pattern
                let k = *k as u32;
                let mut acc = 0u64;
                let mut xx = *x;
                let mut shift = 0u32;
                while xx != 0 {
                    if xx & 1 == 1 {
                        acc ^= y << shift;
                    }
                    xx >>= 1;
                    shift += 1;
                }
                let mut d = 2 * k;
                while d >= k {
                    if (acc >> d) & 1 == 1 {
                        acc ^= modulus << (d - k);
                    }
                    if d == 0 {
                        break;
                    }
                    d -= 1;
                }
                FieldElem::Fin(acc)
            }
            (ExactField::Extension { .. }, FieldElem::Fin(x), FieldElem::Fin(y)) => {
                // stack-allocated convolution and reduction; k is at most
                // 20 since p^k stays under 2^20
                let (p, k, modulus) = self.ext_parts();
                let mut xa = [0u64; 21];
                let mut ya = [0u64; 21];
                let mut md = [0u64; 21];
                let (mut xv, mut yv, mut mv) = (*x, *y, modulus);
                for i in 0..k {
                    xa[i] = xv % p;
                    xv /= p;
                    ya[i] = yv % p;
                    yv /= p;
                }
                for slot in md.iter_mut().take(k + 1) {
                    *slot = mv % p;
                    mv /= p;
                }
                let mut prod = [0u64; 41];
                for i in 0..k {
                    if xa[i] == 0 {
                        continue;
                    }
                    for j in 0..k {
                        prod[i + j] = (prod[i + j] + xa[i] * ya[j]) % p;
                    }
                }
                if k >= 1 && 2 * k >= 2 {
                    let mut d = 2 * k - 2;
                    while d >= k {
                        let c = prod[d];
                        if c != 0 {
                            let shift = d - k;
                            for (i, &mc) in md.iter().enumerate().take(k + 1) {
                                let sub = (c * mc) % p;
                                prod[i + shift] = (prod[i + shift] + p - sub) % p;
                            }
                        }
                        if d == k {
                            break;
                        }
                        d -= 1;
                    }
                }
                let mut out = 0u64;
                for i in (0..k).rev() {
                    out = out * p + prod[i];
                }
                FieldElem::Fin(out)
            }
            _ => panic!("element does not belong to this field"),
        }
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match self {
            ExactField::Rationals => match a {
                FieldElem::Rat(x) => Ok(FieldElem::Rat(x.recip())),
                _ => panic!("element does not belong to this field"),
            },
            _ => {
                let q = self.cardinality().unwrap();
                Ok(self.pow(a, q - 2))
            }
        }
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Deterministic enumeration of all elements of a finite field.
    pub fn enumerate(&self) -> Result<impl Iterator<Item = FieldElem>> {
        let q = self.cardinality().ok_or(Error::InfiniteField)?;
        Ok((0..q).map(FieldElem::Fin))
    }

    /// The idx-th element in enumeration order.
    pub fn elem_from_index(&self, idx: u64) -> FieldElem {
        debug_assert!(idx < self.cardinality().unwrap_or(u64::MAX));
        match self {
            ExactField::Rationals => panic!("rationals have no enumeration order"),
            _ => FieldElem::Fin(idx),
        }
    }

    /// Uniform sample from a finite field, deterministic in the RNG state.
    pub fn sample<R: RngCore>(&self, rng: &mut R) -> FieldElem {
        let q = self.cardinality().expect("sampling needs a finite field");
        FieldElem::Fin(rng.next_u64() % q)
    }

    /// Uniform integer from [-height, height] mapped into the field.
    pub fn sample_bounded<R: RngCore>(&self, rng: &mut R, height: u64) -> FieldElem {
        let span = 2 * height + 1;
        let v = (rng.next_u64() % span) as i64 - height as i64;
        self.from_i64(v)
    }

    /// Square root. In characteristic 2 the field is perfect and the root
    /// is unique (x^(q/2)); in odd characteristic Tonelli-Shanks; over Q
    /// only exact square fractions have roots.
    pub fn sqrt(&self, a: &FieldElem) -> Option<FieldElem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        match self {
            ExactField::Rationals => {
                let r = match a {
                    FieldElem::Rat(r) => r,
                    _ => panic!("element does not belong to this field"),
                };
                if r.is_negative() {
                    return None;
                }
                let ns = r.numer().sqrt();
                let ds = r.denom().sqrt();
                if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
                    Some(FieldElem::Rat(BigRational::new(ns, ds)))
                } else {
                    None
                }
            }
            _ => {
                let q = self.cardinality().unwrap();
                if self.characteristic() == 2 {
                    return Some(self.pow(a, q / 2));
                }
                // odd characteristic: Euler criterion, then Tonelli-Shanks
                if self.pow(a, (q - 1) / 2) != self.one() {
                    return None;
                }
                Some(self.tonelli_shanks(a, q))
            }
        }
    }

    fn nonsquare_cached(&self, q: u64) -> FieldElem {
        use std::collections::HashMap;
        use std::sync::{Mutex, OnceLock};
        static CACHE: OnceLock<Mutex<HashMap<ExactField, u64>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(&v) = cache.lock().unwrap().get(self) {
            return FieldElem::Fin(v);
        }
        let z = (1..q)
            .map(FieldElem::Fin)
            .find(|z| self.pow(z, (q - 1) / 2) != self.one())
            .expect("a non-square exists in every finite field of odd order");
        cache.lock().unwrap().insert(*self, z.as_fin());
        z
    }

    fn tonelli_shanks(&self, a: &FieldElem, q: u64) -> FieldElem {
        let mut s = 0u64;
        let mut t = q - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        if s == 1 {
            return self.pow(a, (q + 1) / 4);
        }
        // first non-square in enumeration order
        let z = self.nonsquare_cached(q);
        let mut m = s;
        let mut c = self.pow(&z, t);
        let mut u = self.pow(a, t);
        let mut r = self.pow(a, (t + 1) / 2);
        loop {
            if u == self.one() {
                return r;
            }
            let mut i = 0u64;
            let mut probe = u.clone();
            while probe != self.one() {
                probe = self.mul(&probe, &probe);
                i += 1;
            }
            let b = self.pow(&c, 1 << (m - i - 1));
            m = i;
            c = self.mul(&b, &b);
            u = self.mul(&u, &c);
            r = self.mul(&r, &b);
        }
    }

    /// A fixed non-square of an odd finite field (first in enumeration order).
    pub fn canonical_nonsquare(&self) -> Option<FieldElem> {
        let q = self.cardinality()?;
        if self.characteristic() == 2 {
            return None;
        }
        Some(self.nonsquare_cached(q))
    }

    /// Reinterprets a prime-field residue inside this extension of the
    /// same characteristic (the packed value of a constant polynomial is
    /// the residue itself).
    pub fn embed_from_prime(&self, a: &FieldElem) -> FieldElem {
        let v = a.as_fin();
        debug_assert!(v < self.characteristic());
        FieldElem::Fin(v)
    }

    /// Trace to the prime subfield, as an element of F_p.
    pub fn trace_to_prime(&self, a: &FieldElem) -> u64 {
        match self {
            ExactField::Rationals => panic!("trace needs a finite field"),
            ExactField::Prime { .. } => a.as_fin(),
            ExactField::Extension { p, k, .. } => {
                let mut acc = self.zero();
                let mut x = a.clone();
                for _ in 0..*k {
                    acc = self.add(&acc, &x);
                    x = self.pow(&x, *p);
                }
                // the trace lies in the prime subfield: constant coefficient
                let (pp, kk, _) = self.ext_parts();
                let digits = unpack(pp, acc.as_fin(), kk);
                debug_assert!(digits[1..].iter().all(|&c| c == 0));
                digits[0]
            }
        }
    }

    /// Solves z^2 + z = c over a field of characteristic 2, when solvable.
    pub fn solve_artin_schreier(&self, c: &FieldElem) -> Option<FieldElem> {
        debug_assert_eq!(self.characteristic(), 2);
        if self.trace_to_prime(c) != 0 {
            return None;
        }
        match self {
            ExactField::Prime { .. } => Some(self.zero()),
            ExactField::Extension { k, .. } => {
                if *k % 2 == 1 {
                    // half trace
                    let mut acc = self.zero();
                    let mut x = c.clone();
                    for i in 0..=(*k - 1) / 2 {
                        if i > 0 {
                            x = self.pow(&x, 4);
                        }
                        acc = self.add(&acc, &x);
                    }
                    Some(acc)
                } else {
                    let q = self.cardinality().unwrap();
                    (0..q).map(FieldElem::Fin).find(|z| {
                        let z2 = self.mul(z, z);
                        self.add(&z2, z) == *c
                    })
                }
            }
            ExactField::Rationals => unreachable!(),
        }
    }

    /// Renders an element for reports.
    pub fn render(&self, a: &FieldElem) -> String {
        match (self, a) {
            (ExactField::Rationals, FieldElem::Rat(r)) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            (ExactField::Prime { .. }, FieldElem::Fin(v)) => v.to_string(),
            (ExactField::Extension { p, k, .. }, FieldElem::Fin(v)) => {
                let digits = unpack(*p, *v, *k as usize);
                let mut parts = Vec::new();
                for (i, &c) in digits.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let term = match i {
                        0 => c.to_string(),
                        1 => {
                            if c == 1 {
                                "t".into()
                            } else {
                                format!("{c}*t")
                            }
                        }
                        _ => {
                            if c == 1 {
                                format!("t^{i}")
                            } else {
                                format!("{c}*t^{i}")
                            }
                        }
                    };
                    parts.push(term);
                }
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join("+")
                }
            }
            _ => panic!("element does not belong to this field"),
        }
    }
}

impl fmt::Display for ExactField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactField::Rationals => write!(f, "Q"),
            ExactField::Prime { p } => write!(f, "F{p}"),
            ExactField::Extension { p, k, .. } => write!(f, "F{p}^{k}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn prime_field_arithmetic() {
        let f5 = ExactField::prime(5).unwrap();
        let two = f5.from_i64(2);
        let three = f5.from_i64(3);
        assert_eq!(f5.mul(&two, &three), f5.one());
    }

    #[test]
    fn f4_modulus_is_t2_t_1() {
        let f4 = ExactField::extension(2, 2).unwrap();
        assert_eq!(f4.modulus_coeffs(), Some(vec![1, 1, 1]));
        // t * t = t + 1
        let t = FieldElem::Fin(2);
        let t_plus_1 = FieldElem::Fin(3);
        assert_eq!(f4.mul(&t, &t), t_plus_1);
    }

    #[test]
    fn rational_arithmetic() {
        let q = ExactField::rationals();
        let third = q.from_ratio(1, 3).unwrap();
        let sixth = q.from_ratio(1, 6).unwrap();
        assert_eq!(q.add(&third, &sixth), q.from_ratio(1, 2).unwrap());
    }

    #[test]
    fn enumeration_orders() {
        let f2 = ExactField::prime(2).unwrap();
        let elems: Vec<_> = f2.enumerate().unwrap().collect();
        assert_eq!(elems, vec![FieldElem::Fin(0), FieldElem::Fin(1)]);

        let f3 = ExactField::prime(3).unwrap();
        assert_eq!(f3.enumerate().unwrap().count(), 3);

        let f4 = ExactField::extension(2, 2).unwrap();
        let all: Vec<_> = f4.enumerate().unwrap().collect();
        assert_eq!(all.len(), 4);
        let mut dedup = all.clone();
        dedup.sort_by_key(|e| e.as_fin());
        dedup.dedup();
        assert_eq!(dedup.len(), 4);
    }

    #[test]
    fn composite_modulus_rejected() {
        assert_eq!(ExactField::prime(6), Err(Error::NonPrimeModulus(6)));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t^2 + 1 = (t+1)^2 over F_2
        let r = ExactField::extension_with_modulus(2, 2, &[1, 0, 1]);
        assert_eq!(r, Err(Error::ReducibleModulus(2)));
    }

    #[test]
    fn infinite_field_enumeration_fails() {
        assert!(ExactField::rationals().enumerate().is_err());
    }

    #[test]
    fn field_axioms_random_triples() {
        let fields = [
            ExactField::rationals(),
            ExactField::prime(5).unwrap(),
            ExactField::extension(2, 3).unwrap(),
            ExactField::extension(3, 2).unwrap(),
        ];
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for f in fields {
            for _ in 0..10_000 {
                let (a, b, c) = match f {
                    ExactField::Rationals => (
                        f.sample_bounded(&mut rng, 20),
                        f.sample_bounded(&mut rng, 20),
                        f.sample_bounded(&mut rng, 20),
                    ),
                    _ => (f.sample(&mut rng), f.sample(&mut rng), f.sample(&mut rng)),
                };
                assert_eq!(
                    f.add(&f.add(&a, &b), &c),
                    f.add(&a, &f.add(&b, &c))
                );
                assert_eq!(
                    f.mul(&a, &f.add(&b, &c)),
                    f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                );
                assert_eq!(
                    f.mul(&f.mul(&a, &b), &c),
                    f.mul(&a, &f.mul(&b, &c))
                );
                assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
                if !f.is_zero(&a) {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                }
            }
        }
    }

    #[test]
    fn char2_sqrt_is_inverse_of_square() {
        for k in 1..=4u32 {
            let f = ExactField::extension(2, k).unwrap();
            for x in f.enumerate().unwrap() {
                let r = f.sqrt(&x).unwrap();
                assert_eq!(f.mul(&r, &r), x);
            }
        }
    }

    #[test]
    fn odd_sqrt_roundtrip() {
        let f = ExactField::prime(101).unwrap();
        for v in 0..101 {
            let x = FieldElem::Fin(v);
            let sq = f.mul(&x, &x);
            let r = f.sqrt(&sq).expect("squares have roots");
            assert_eq!(f.mul(&r, &r), sq);
        }
        let f9 = ExactField::extension(3, 2).unwrap();
        for x in f9.enumerate().unwrap() {
            let sq = f9.mul(&x, &x);
            let r = f9.sqrt(&sq).expect("squares have roots");
            assert_eq!(f9.mul(&r, &r), sq);
        }
    }

    #[test]
    fn parse_field_specs() {
        assert_eq!(ExactField::parse("Q").unwrap(), ExactField::Rationals);
        assert_eq!(ExactField::parse("F2").unwrap(), ExactField::prime(2).unwrap());
        assert_eq!(
            ExactField::parse("F2^4").unwrap(),
            ExactField::extension(2, 4).unwrap()
        );
        assert!(ExactField::parse("F6").is_err());
    }

    #[test]
    fn artin_schreier_solutions() {
        for k in [2u32, 3, 4] {
            let f = ExactField::extension(2, k).unwrap();
            for c in f.enumerate().unwrap() {
                match f.solve_artin_schreier(&c) {
                    Some(z) => {
                        assert_eq!(f.add(&f.mul(&z, &z), &z), c);
                    }
                    None => assert_eq!(f.trace_to_prime(&c), 1),
                }
            }
        }
    }
}
