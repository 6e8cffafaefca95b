//! Linear systems of polynomial maps, order-2 jet evaluation matrices and
//! separation checks, and seeded sampling of members.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::field::{ExactField, FieldElem};
use crate::linalg::Matrix;
use crate::poly::{Mono, PolyMap, Series};

/// A finite-dimensional linear system of maps A^n -> A^r.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub field: ExactField,
    pub n: usize,
    pub r: usize,
    pub basis: Vec<PolyMap>,
}

impl LinearSystem {
    pub fn new(basis: Vec<PolyMap>) -> Self {
        let first = basis.first().expect("a linear system needs a basis");
        let (field, n, r) = (first.field, first.n, first.r);
        assert!(basis.iter().all(|m| m.field == field && m.n == n && m.r == r));
        LinearSystem { field, n, r, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The system of all maps whose components are monomials of total
    /// degree at most `d` (the CLI's `monomials(n,r,d)`).
    pub fn monomials(field: ExactField, n: usize, r: usize, d: usize) -> Self {
        let monos = monomials_up_to(n, d);
        let mut basis = Vec::new();
        for slot in 0..r {
            for m in &monos {
                let mut comps = vec![Series::zero(field, n, None); r];
                comps[slot] = Series::monomial(field, n, &m.0, field.one(), None);
                basis.push(PolyMap::new(field, n, comps));
            }
        }
        LinearSystem::new(basis)
    }

    /// Linear combination sum_i coeffs[i] * basis[i].
    pub fn member(&self, coeffs: &[FieldElem]) -> PolyMap {
        assert_eq!(coeffs.len(), self.basis.len());
        let f = self.field;
        let mut comps = vec![Series::zero(f, self.n, None); self.r];
        for (c, map) in coeffs.iter().zip(&self.basis) {
            if f.is_zero(c) {
                continue;
            }
            for (slot, comp) in map.components.iter().enumerate() {
                comps[slot] = comps[slot].add(&comp.scale(c));
            }
        }
        PolyMap::new(f, self.n, comps)
    }

    /// Seeded uniform member: coefficients drawn uniformly from a finite
    /// field, or from the integers in [-height, height] over the rationals.
    pub fn sample_member(&self, seed: u64, height: u64) -> PolyMap {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let f = self.field;
        let coeffs: Vec<FieldElem> = (0..self.dim())
            .map(|_| match f {
                ExactField::Rationals => f.sample_bounded(&mut rng, height),
                _ => f.sample(&mut rng),
            })
            .collect();
        self.member(&coeffs)
    }
}

/// All exponent tuples of total degree at most d, in ascending grevlex order.
pub fn monomials_up_to(nvars: usize, d: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut current = vec![0u16; nvars];
    collect_monos(nvars, d, 0, &mut current, &mut out);
    out.sort();
    out
}

fn collect_monos(nvars: usize, budget: usize, var: usize, current: &mut Vec<u16>, out: &mut Vec<Mono>) {
    if var == nvars {
        out.push(Mono(smallvec::SmallVec::from_slice(current)));
        return;
    }
    for e in 0..=budget {
        current[var] = e as u16;
        collect_monos(nvars, budget - e, var + 1, current, out);
    }
    current[var] = 0;
}

/// Exponent tuples of total degree exactly d.
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Mono> {
    monomials_up_to(nvars, d)
        .into_iter()
        .filter(|m| m.degree() == d)
        .collect()
}

/// Dimension of the order-2 jet space for maps A^n -> A^r. The quadratic
/// block keeps all n(n+1)/2 coordinates in every characteristic: the
/// coefficient of x_i^2 survives in the jet even where Hessian diagonals
/// vanish.
pub fn jet2_dim(n: usize, r: usize) -> usize {
    r * (1 + n + n * (n + 1) / 2)
}

/// Per-point outcome of the separation check.
#[derive(Clone, Debug)]
pub struct SeparationReport {
    pub jet_dim: usize,
    pub system_dim: usize,
    /// (point, evaluation rank, separated?) per sampled point.
    pub per_point: Vec<(Vec<FieldElem>, usize, bool)>,
    pub all_separated: bool,
}

/// The order-2 jet of one map at one point, flattened to a coordinate
/// vector of length `jet2_dim(n, r)`: per component, the Taylor
/// coefficients of 1, the variables, and the quadratic monomials.
pub fn jet2_coordinates(map: &PolyMap, x0: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let n = map.n;
    let mut coords = Vec::with_capacity(jet2_dim(n, map.r));
    let quad: Vec<Mono> = {
        let mut v = monomials_of_degree(n, 2);
        v.sort();
        v
    };
    for comp in &map.components {
        let shifted = comp.shift(x0, Some(2))?;
        coords.push(shifted.constant_term());
        for i in 0..n {
            coords.push(shifted.coeff(&Mono::var(n, i)));
        }
        for m in &quad {
            coords.push(shifted.coeff(m));
        }
    }
    Ok(coords)
}

/// Checks whether the evaluation of the system onto order-2 jet
/// coordinates is surjective at every sampled point.
pub fn separates_order2(system: &LinearSystem, points: &[Vec<FieldElem>]) -> Result<SeparationReport> {
    if points.is_empty() {
        return Err(Error::EmptySample);
    }
    let jet_dim = jet2_dim(system.n, system.r);
    let mut per_point = Vec::with_capacity(points.len());
    let mut all = true;
    for x0 in points {
        let mut rows = Vec::with_capacity(system.dim());
        for b in &system.basis {
            rows.push(jet2_coordinates(b, x0)?);
        }
        let m = Matrix::from_rows(system.field, rows);
        let rank = m.rank();
        let ok = rank == jet_dim;
        all &= ok;
        per_point.push((x0.clone(), rank, ok));
    }
    Ok(SeparationReport { jet_dim, system_dim: system.dim(), per_point, all_separated: all })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ExactField {
        ExactField::rationals()
    }

    #[test]
    fn monomial_system_dimension() {
        let w = LinearSystem::monomials(q(), 2, 1, 2);
        assert_eq!(w.dim(), 6);
        let w = LinearSystem::monomials(q(), 2, 2, 3);
        assert_eq!(w.dim(), 20);
    }

    #[test]
    fn full_quadratics_separate() {
        let w = LinearSystem::monomials(q(), 2, 1, 2);
        let pts = vec![
            vec![q().zero(), q().zero()],
            vec![q().from_i64(1), q().from_i64(-2)],
            vec![q().from_i64(3), q().from_i64(5)],
        ];
        let rep = separates_order2(&w, &pts).unwrap();
        assert_eq!(rep.jet_dim, 6);
        assert!(rep.all_separated);
    }

    #[test]
    fn linear_maps_do_not_separate() {
        let w = LinearSystem::monomials(q(), 2, 1, 1);
        let pts = vec![vec![q().zero(), q().zero()]];
        let rep = separates_order2(&w, &pts).unwrap();
        assert!(!rep.all_separated);
        assert!(rep.per_point[0].1 <= 3);
    }

    #[test]
    fn missing_cross_term_fails_everywhere() {
        // span{1, x, y, x^2, y^2}: rank 5 < 6 at every point
        let f = q();
        let shapes = ["1", "x0", "x1", "x0^2", "x1^2"];
        let basis: Vec<PolyMap> = shapes
            .iter()
            .map(|s| crate::poly::parse_map(f, 2, s).unwrap())
            .collect();
        let w = LinearSystem::new(basis);
        let pts = vec![
            vec![f.zero(), f.zero()],
            vec![f.from_i64(2), f.from_i64(7)],
        ];
        let rep = separates_order2(&w, &pts).unwrap();
        assert!(!rep.all_separated);
        for (_, rank, ok) in &rep.per_point {
            assert_eq!(*rank, 5);
            assert!(!ok);
        }
    }

    #[test]
    fn empty_sample_rejected() {
        let w = LinearSystem::monomials(q(), 1, 1, 1);
        assert!(matches!(separates_order2(&w, &[]), Err(Error::EmptySample)));
    }

    #[test]
    fn sample_member_deterministic() {
        let f2 = ExactField::prime(2).unwrap();
        let w = LinearSystem::monomials(f2, 2, 1, 1);
        let a = w.sample_member(42, 0);
        let b = w.sample_member(42, 0);
        assert_eq!(a, b);
        let c = w.sample_member(43, 0);
        let d = w.sample_member(44, 0);
        // different seeds almost surely differ on some coefficient
        assert!(a != c || c != d);
    }

    #[test]
    fn rational_sampling_respects_height() {
        let f = q();
        let w = LinearSystem::monomials(f, 1, 1, 0);
        assert_eq!(w.dim(), 1);
        for seed in 0..50 {
            let m = w.sample_member(seed, 1);
            let c = m.components[0].constant_term();
            let allowed = [f.from_i64(-1), f.zero(), f.from_i64(1)];
            assert!(allowed.contains(&c));
        }
    }
}
