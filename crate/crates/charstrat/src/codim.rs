//! Closed-form codimension and nonemptiness evaluators for the strata of
//! maps and of symmetry-constrained linear pencils, together with the
//! brute-force minimizer used as an oracle against the closed forms.
//!
//! Every evaluator distinguishes "empty" (None) from "codimension 0".

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symmetry type of the constrained bilinear block: full symmetric forms
/// or alternating forms with zero diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sym {
    Sym,
    Alt,
}

impl Sym {
    pub fn sign(&self) -> i64 {
        match self {
            Sym::Sym => 1,
            Sym::Alt => -1,
        }
    }

    pub fn parse(s: &str) -> Result<Sym> {
        match s.to_ascii_lowercase().as_str() {
            "sym" | "plus" | "+" => Ok(Sym::Sym),
            "alt" | "minus" | "-" => Ok(Sym::Alt),
            other => Err(Error::Parse(format!("unknown symmetry {other:?}"))),
        }
    }
}

impl std::fmt::Display for Sym {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sym::Sym => write!(f, "sym"),
            Sym::Alt => write!(f, "alt"),
        }
    }
}

/// Codimension of the corank-i stratum of maps A^n -> A^r, None when the
/// stratum is empty (i > min(n, r)).
pub fn crit_codim(n: usize, r: usize, i: usize) -> Option<usize> {
    if i > n.min(r) {
        return None;
    }
    Some(i * (n.abs_diff(r) + i))
}

/// Codimension of the second-order stratum with symbol (i, j), None when
/// empty. `charac` is 0 or a prime; characteristic 2 restricts parity for
/// corank-1 strata with r <= n and flips the quadratic term's sign.
pub fn second_order_codim(n: usize, r: usize, i: usize, j: usize, charac: u64) -> Option<usize> {
    let m = n.min(r);
    if i > m {
        return None;
    }
    if j > n - m + i {
        return None;
    }
    if i == 0 && j > 0 {
        return None;
    }
    if charac == 2 && i == 1 && r <= n && (n - m + i - j) % 2 == 1 {
        return None;
    }
    let sign: i64 = if charac == 2 { -1 } else { 1 };
    let (n, r, i, j, m) = (n as i64, r as i64, i as i64, j as i64, m as i64);
    let first = i * ((n - r).abs() + i);
    let second = j * (n - m + i - j) * (r - m + i - 1);
    let third = j * (j + sign) * (r - m + i) / 2;
    Some((first + second + third) as usize)
}

/// Codimension of the bad locus of the corank-i stratum, None when empty.
pub fn bad_locus_codim(n: usize, r: usize, i: usize, charac: u64) -> Option<usize> {
    if i == 0 || i > n.min(r) {
        return None;
    }
    let stratum = i * (n.abs_diff(r) + i);
    if n < stratum {
        // the whole stratum is bad
        return Some(stratum);
    }
    let exceptional = charac == 2 && i == 1 && (r >= n || (r == 1 && n % 2 == 1));
    Some(if exceptional { n } else { n + 1 })
}

/// Parameters of a constrained-pencil stratum: maps h from a space of
/// dimension e to Hom(A, F) with dim A = a, dim F = f, whose bilinear
/// restriction to A x A has the given symmetry; the stratum asks for rank
/// min(e, af) - i and kernel-meet dim(ker h ∩ A) = p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaSpec {
    pub e: usize,
    pub a: usize,
    pub f: usize,
    pub i: usize,
    pub p: usize,
    pub sym: Sym,
}

impl DeltaSpec {
    /// Rank of the stratum's maps.
    pub fn n(&self) -> i64 {
        (self.e.min(self.a * self.f)) as i64 - self.i as i64
    }

    /// Number of free coordinates of the constrained pencil space.
    pub fn ambient_dim(&self) -> usize {
        constrained_ambient_dim(self.e, self.a, self.f, self.sym)
    }
}

/// f * (a(a+1)/2 + a(e-a)) for symmetric blocks, f * (a(a-1)/2 + a(e-a))
/// for alternating ones.
pub fn constrained_ambient_dim(e: usize, a: usize, f: usize, sym: Sym) -> usize {
    let block = match sym {
        Sym::Sym => a * (a + 1) / 2,
        Sym::Alt => a * (a - 1) / 2,
    };
    f * (block + a * (e - a))
}

/// Nonemptiness of the (i, p) stratum.
///
/// Beyond the rank-range conditions, alternating blocks force two parity
/// constraints: a single alternating form has even rank (so a - p must be
/// even when f = 1), and a stack of alternating forms can never have rank
/// exactly one (a - p = 1 is impossible for every f: a common kernel of
/// codimension one would force every form below rank two, hence to zero).
pub fn delta_nonempty(spec: &DeltaSpec) -> bool {
    let n = spec.n();
    if n < 0 {
        return false;
    }
    let (a, e, p) = (spec.a as i64, spec.e as i64, spec.p as i64);
    if p < (a - n).max(0) || p > a.min(e - n) {
        return false;
    }
    if spec.sym == Sym::Alt {
        let s = a - p;
        if spec.f == 1 && s % 2 == 1 {
            return false;
        }
        if s == 1 {
            return false;
        }
    }
    true
}

/// Codimension of the (i, p) stratum inside the constrained pencil space,
/// None when the stratum is empty.
pub fn delta_codim(spec: &DeltaSpec) -> Option<usize> {
    if !delta_nonempty(spec) {
        return None;
    }
    let n = spec.n();
    let (a, e, p, f) = (spec.a as i64, spec.e as i64, spec.p as i64, spec.f as i64);
    let sign = spec.sym.sign();
    let value = p * (n - a + p) + f * ((-p * p + sign * p) / 2 + (e - n) * a) - n * (e - n);
    debug_assert!(value >= 0);
    Some(value as usize)
}

/// Codimension of the rank stratum of tuples of symmetry-constrained
/// forms on a single space, by its own closed formula
/// i(e-i)(f-1) + i(i+-1)f/2; None when empty. Alternating tuples exclude
/// odd rank for f = 1 and rank exactly one for every f.
pub fn box_rank_stratum_codim(e: usize, f: usize, i: usize, sym: Sym) -> Option<usize> {
    if i > e {
        return None;
    }
    let rank = e - i;
    if sym == Sym::Alt {
        if f == 1 && rank % 2 == 1 {
            return None;
        }
        if rank == 1 {
            return None;
        }
    }
    let (e, f, i) = (e as i64, f as i64, i as i64);
    let value = i * (e - i) * (f - 1) + i * (i + sym.sign()) / 2 * f;
    Some(value as usize)
}

/// Codimension of the locus where a constrained pencil drops rank at all
/// (the union over i >= 1), valid when af <= e.
pub fn first_degeneracy_codim(e: usize, a: usize, f: usize, sym: Sym) -> Result<usize> {
    if a * f > e {
        return Err(Error::PreconditionViolated(format!(
            "need a*f <= e, got a*f = {} > e = {e}",
            a * f
        )));
    }
    let full = e - a * f + 1;
    Ok(match sym {
        Sym::Sym => full,
        Sym::Alt => {
            let cond = a > 1 && (f != 1 || (a == e && e % 2 == 0));
            if cond {
                full
            } else {
                e - a * f
            }
        }
    })
}

/// Parameter bundle for the lattice minimization of the codimension
/// function over the polygonal region R.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CMinSpec {
    pub e: usize,
    pub a: usize,
    pub f: usize,
    pub sign: Sym,
}

impl CMinSpec {
    pub fn new(e: usize, a: usize, f: usize, sign: Sym) -> Result<Self> {
        if a == 0 || f == 0 || a * f > e {
            return Err(Error::PreconditionViolated(format!(
                "need a, f >= 1 and a*f <= e, got e={e}, a={a}, f={f}"
            )));
        }
        Ok(CMinSpec { e, a, f, sign })
    }

    /// The codimension function evaluated at a lattice point.
    pub fn value(&self, i: i64, p: i64) -> i64 {
        let (e, a, f) = (self.e as i64, self.a as i64, self.f as i64);
        let sign = self.sign.sign();
        p * (a * f - i - a + p) + f * ((-p * p + sign * p) / 2 + (e - a * f + i) * a)
            - (a * f - i) * (e - a * f + i)
    }

    /// Whether (i, p) lies in the admissible lattice region, including the
    /// parity restriction active for alternating pencils with f = 1.
    pub fn admissible(&self, i: i64, p: i64) -> bool {
        let (e, a, f) = (self.e as i64, self.a as i64, self.f as i64);
        if i < 1 || i > a * f {
            return false;
        }
        if p < (a - a * f + i).max(0) || p > a.min(e - a * f + i) {
            return false;
        }
        if self.sign == Sym::Alt && f == 1 && (a - p).rem_euclid(2) != 0 {
            return false;
        }
        true
    }

    fn region_points(&self) -> Vec<(i64, i64)> {
        let (a, f) = (self.a as i64, self.f as i64);
        let mut pts = Vec::new();
        for i in 1..=a * f {
            for p in 0..=a {
                if self.admissible(i, p) {
                    pts.push((i, p));
                }
            }
        }
        pts
    }
}

/// Closed-form minimum of the codimension function over the region, with
/// a witness lattice point. The minimum is always attained on the two
/// boundary segments where i is smallest for the given p; the witness is
/// the lexicographically least point on those segments achieving it.
pub fn minimize_c(spec: &CMinSpec) -> Result<(i64, (i64, i64))> {
    let (e, a, f) = (spec.e as i64, spec.a as i64, spec.f as i64);
    let value = match spec.sign {
        Sym::Sym => e - a * f + 1,
        Sym::Alt => {
            if f > 1 {
                if a > 1 {
                    e - a * f + 1
                } else {
                    e - a * f
                }
            } else if a == e && e % 2 == 0 {
                e - a * f + 1
            } else {
                e - a * f
            }
        }
    };
    // boundary segments: i = 1, and p = e - af + i
    let mut boundary: Vec<(i64, i64)> = Vec::new();
    for p in 0..=a {
        if spec.admissible(1, p) {
            boundary.push((1, p));
        }
    }
    for i in 1..=(f + 1) * a - e {
        let p = e - a * f + i;
        if spec.admissible(i, p) {
            boundary.push((i, p));
        }
    }
    boundary.sort();
    let witness = boundary
        .into_iter()
        .find(|&(i, p)| spec.value(i, p) == value)
        .ok_or(Error::EmptyRegion)?;
    Ok((value, witness))
}

/// Exhaustive minimum over every admissible lattice point, with the full
/// argmin set. Independent oracle for [`minimize_c`].
pub fn brute_force_min_c(spec: &CMinSpec) -> Result<(i64, Vec<(i64, i64)>)> {
    let pts = spec.region_points();
    if pts.is_empty() {
        return Err(Error::EmptyRegion);
    }
    let min = pts.iter().map(|&(i, p)| spec.value(i, p)).min().unwrap();
    let argmin = pts
        .into_iter()
        .filter(|&(i, p)| spec.value(i, p) == min)
        .collect();
    Ok((min, argmin))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crit_codim_examples() {
        assert_eq!(crit_codim(2, 2, 1), Some(1));
        assert_eq!(crit_codim(2, 2, 3), None);
        assert_eq!(crit_codim(3, 1, 1), Some(3));
    }

    #[test]
    fn second_order_examples() {
        for n in 1..8 {
            assert_eq!(second_order_codim(n, 1, 1, 1, 0), Some(n + 1));
        }
        for n in 1..6 {
            for r in 1..6 {
                for i in 0..=n.min(r) {
                    for charac in [0u64, 2, 3] {
                        let so = second_order_codim(n, r, i, 0, charac);
                        match so {
                            Some(c) => assert_eq!(Some(c), crit_codim(n, r, i)),
                            None => {
                                // only the char-2 parity gate may empty the
                                // (i, 0) stratum while the corank stratum
                                // is nonempty
                                let m = n.min(r);
                                assert!(
                                    charac == 2 && i == 1 && r <= n && (n - m + 1) % 2 == 1,
                                    "unexpected empty (i,0) stratum at ({n},{r},{i},{charac})"
                                );
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(second_order_codim(2, 1, 1, 1, 2), None);
        // nondegenerate symbol is impossible for odd kernel rank in char 2
        assert_eq!(second_order_codim(1, 1, 1, 0, 2), None);
    }

    #[test]
    fn bad_locus_examples() {
        assert_eq!(bad_locus_codim(2, 2, 1, 0), Some(3));
        assert_eq!(bad_locus_codim(2, 2, 1, 2), Some(2));
        assert_eq!(bad_locus_codim(3, 1, 1, 2), Some(3));
        assert_eq!(bad_locus_codim(2, 2, 0, 0), None);
        assert_eq!(bad_locus_codim(2, 2, 3, 0), None);
        // whole-stratum case: codim of the stratum itself
        assert_eq!(bad_locus_codim(2, 1, 2, 0), None); // i > min(n,r)
        assert_eq!(bad_locus_codim(1, 3, 1, 0), Some(3)); // 1 < 1*(2+1)
    }

    #[test]
    fn delta_nonempty_examples() {
        let base = DeltaSpec { e: 3, a: 2, f: 1, i: 1, p: 1, sym: Sym::Sym };
        assert!(delta_nonempty(&base));
        assert!(!delta_nonempty(&DeltaSpec { sym: Sym::Alt, ..base }));
        assert!(delta_nonempty(&DeltaSpec { p: 2, sym: Sym::Alt, ..base }));
    }

    #[test]
    fn rank_one_alternating_stack_is_empty() {
        // stacked alternating forms cannot have rank exactly one
        let spec = DeltaSpec { e: 2, a: 1, f: 2, i: 1, p: 0, sym: Sym::Alt };
        assert!(!delta_nonempty(&spec));
        let spec = DeltaSpec { e: 4, a: 2, f: 2, i: 1, p: 1, sym: Sym::Alt };
        assert!(!delta_nonempty(&spec));
    }

    #[test]
    fn delta_codim_examples() {
        let spec = DeltaSpec { e: 2, a: 2, f: 1, i: 0, p: 0, sym: Sym::Sym };
        assert_eq!(delta_codim(&spec), Some(0));

        // hand substitution at (4,2,1,1,1) sym: n = 1, value 3
        let spec = DeltaSpec { e: 4, a: 2, f: 1, i: 1, p: 1, sym: Sym::Sym };
        assert_eq!(delta_codim(&spec), Some(3));
    }

    #[test]
    fn box_rank_examples() {
        assert_eq!(box_rank_stratum_codim(3, 1, 1, Sym::Alt), Some(0));
        assert_eq!(box_rank_stratum_codim(3, 2, 1, Sym::Alt), Some(2));
        for e in 1..6usize {
            for f in 1..4usize {
                assert_eq!(box_rank_stratum_codim(e, f, 0, Sym::Sym), Some(0));
                // alternating tuples cannot reach full rank when the rank
                // would be odd (single form) or exactly one
                let expect_empty = e == 1 || (f == 1 && e % 2 == 1);
                assert_eq!(
                    box_rank_stratum_codim(e, f, 0, Sym::Alt),
                    if expect_empty { None } else { Some(0) }
                );
            }
        }
    }

    #[test]
    fn first_degeneracy_examples() {
        assert_eq!(first_degeneracy_codim(4, 2, 2, Sym::Sym).unwrap(), 1);
        assert_eq!(first_degeneracy_codim(3, 1, 2, Sym::Alt).unwrap(), 1);
        assert_eq!(first_degeneracy_codim(4, 4, 1, Sym::Alt).unwrap(), 1);
        assert!(first_degeneracy_codim(3, 2, 2, Sym::Sym).is_err());
    }

    #[test]
    fn minimize_examples() {
        let spec = CMinSpec::new(4, 2, 1, Sym::Sym).unwrap();
        assert_eq!(minimize_c(&spec).unwrap().0, 3);

        let spec = CMinSpec::new(3, 1, 2, Sym::Alt).unwrap();
        assert_eq!(minimize_c(&spec).unwrap().0, 1);

        let spec = CMinSpec::new(4, 4, 1, Sym::Alt).unwrap();
        assert_eq!(minimize_c(&spec).unwrap().0, 1);
    }

    #[test]
    fn brute_force_matches_closed_form_spotchecks() {
        for (e, a, f, sign) in [
            (4, 2, 1, Sym::Sym),
            (3, 1, 2, Sym::Alt),
            (4, 4, 1, Sym::Alt),
            (12, 3, 4, Sym::Alt),
        ] {
            let spec = CMinSpec::new(e, a, f, sign).unwrap();
            let (bf, argmin) = brute_force_min_c(&spec).unwrap();
            let (cf, witness) = minimize_c(&spec).unwrap();
            assert_eq!(bf, cf, "spec {spec:?}");
            assert!(argmin.contains(&witness));
        }
    }

    #[test]
    fn region_cardinality_bound() {
        let spec = CMinSpec::new(4, 2, 1, Sym::Sym).unwrap();
        assert!(spec.region_points().len() <= 2 * 3);
    }

    #[test]
    fn delta_matches_cmin_on_region() {
        for e in 1..=8usize {
            for a in 1..=e {
                for f in 1..=3usize {
                    if a * f > e {
                        continue;
                    }
                    for sym in [Sym::Sym, Sym::Alt] {
                        let cspec = CMinSpec::new(e, a, f, sym).unwrap();
                        for (i, p) in cspec.region_points() {
                            let dspec = DeltaSpec {
                                e,
                                a,
                                f,
                                i: i as usize,
                                p: p as usize,
                                sym,
                            };
                            if let Some(c) = delta_codim(&dspec) {
                                assert_eq!(c as i64, cspec.value(i, p));
                            }
                        }
                    }
                }
            }
        }
    }
}
