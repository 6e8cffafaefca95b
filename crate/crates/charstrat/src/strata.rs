//! Pointwise singularity classification of a polynomial map at a rational
//! point: corank, intrinsic differential, second intrinsic differential,
//! second-order symbol and bad-locus membership.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{ExactField, FieldElem};
use crate::linalg::Matrix;
use crate::poly::{PolyMap, Series};

/// A matrix whose entries are polynomials, used for bundle maps given in
/// coordinates.
#[derive(Clone, Debug)]
pub struct PolyMatrix {
    pub field: ExactField,
    pub nvars: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Series>,
}

impl PolyMatrix {
    pub fn new(field: ExactField, nvars: usize, rows: usize, cols: usize, entries: Vec<Series>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        assert!(entries.iter().all(|e| e.nvars == nvars && e.field == field));
        PolyMatrix { field, nvars, rows, cols, entries }
    }

    pub fn at(&self, r: usize, c: usize) -> &Series {
        &self.entries[r * self.cols + c]
    }

    pub fn eval(&self, x: &[FieldElem]) -> Result<Matrix> {
        let mut m = Matrix::zero(self.field, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.at(r, c).eval(x)?);
            }
        }
        Ok(m)
    }

    /// Entrywise partial derivative in direction `i`.
    pub fn derive(&self, i: usize) -> PolyMatrix {
        PolyMatrix {
            field: self.field,
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.derive(i)).collect(),
        }
    }

    /// The Jacobian of a polynomial map as a polynomial matrix.
    pub fn jacobian_of(map: &PolyMap) -> PolyMatrix {
        let mut entries = Vec::with_capacity(map.r * map.n);
        for comp in &map.components {
            for i in 0..map.n {
                entries.push(comp.derive(i));
            }
        }
        PolyMatrix::new(map.field, map.n, map.r, map.n, entries)
    }

    /// Constant-matrix conjugation psi * self * phi.
    pub fn conjugate(&self, psi: &Matrix, phi: &Matrix) -> Result<PolyMatrix> {
        if psi.cols != self.rows || self.cols != phi.rows {
            return Err(Error::DimensionMismatch("conjugation shapes".into()));
        }
        let f = self.field;
        let mut entries = Vec::with_capacity(psi.rows * phi.cols);
        for r in 0..psi.rows {
            for c in 0..phi.cols {
                let mut acc = Series::zero(f, self.nvars, None);
                for i in 0..self.rows {
                    if f.is_zero(psi.at(r, i)) {
                        continue;
                    }
                    for j in 0..self.cols {
                        if f.is_zero(phi.at(j, c)) {
                            continue;
                        }
                        let coeff = f.mul(psi.at(r, i), phi.at(j, c));
                        acc = acc.add(&self.at(i, j).scale(&coeff));
                    }
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix::new(f, self.nvars, psi.rows, phi.cols, entries))
    }
}

/// The intrinsic differential of a bundle map at a point: the derivative
/// projected to Hom(kernel, cokernel), together with the deterministic
/// kernel and cokernel bases it is expressed in.
#[derive(Clone, Debug)]
pub struct IntrinsicDiff {
    pub point: Vec<FieldElem>,
    /// Rank defect of the evaluated matrix.
    pub corank: usize,
    /// Columns span ker at the point (cols x dim_k).
    pub kernel_basis: Matrix,
    /// (dim_c x rows) projection onto the cokernel.
    pub coker_projection: Matrix,
    /// One dim_c x dim_k matrix per source direction: the value of the
    /// differential on that coordinate vector field, as a map K -> C.
    pub tensor: Vec<Matrix>,
}

impl IntrinsicDiff {
    pub fn dim_k(&self) -> usize {
        self.kernel_basis.cols
    }

    pub fn dim_c(&self) -> usize {
        self.coker_projection.rows
    }

    /// The tensor flattened to a (dim_k * dim_c) x nvars matrix, the matrix
    /// of the linear map from tangent directions to Hom(K, C).
    pub fn flatten(&self) -> Matrix {
        let field = self.kernel_basis.field;
        let dk = self.dim_k();
        let dc = self.dim_c();
        let mut m = Matrix::zero(field, dk * dc, self.tensor.len());
        for (dir, slice) in self.tensor.iter().enumerate() {
            for r in 0..dc {
                for c in 0..dk {
                    m.set(r * dk + c, dir, slice.at(r, c).clone());
                }
            }
        }
        m
    }

    /// Rank of the map from tangent directions to Hom(K, C).
    pub fn rank(&self) -> usize {
        self.flatten().rank()
    }
}

/// Restriction of an intrinsic differential to the kernel: a bilinear map
/// K x K -> C.
#[derive(Clone, Debug)]
pub struct SecondDiff {
    pub point: Vec<FieldElem>,
    pub kernel_basis: Matrix,
    pub coker_projection: Matrix,
    /// One dim_c x dim_k matrix per kernel basis vector.
    pub tensor: Vec<Matrix>,
}

impl SecondDiff {
    pub fn dim_k(&self) -> usize {
        self.kernel_basis.cols
    }

    pub fn dim_c(&self) -> usize {
        self.coker_projection.rows
    }

    /// Per cokernel coordinate, the dim_k x dim_k matrix of the bilinear
    /// form; symmetric away from characteristic 2, alternating in
    /// characteristic 2.
    pub fn component_matrices(&self) -> Vec<Matrix> {
        let field = self.kernel_basis.field;
        let dk = self.dim_k();
        let dc = self.dim_c();
        let mut out = Vec::with_capacity(dc);
        for comp in 0..dc {
            let mut m = Matrix::zero(field, dk, dk);
            for u in 0..dk {
                for v in 0..dk {
                    m.set(u, v, self.tensor[u].at(comp, v).clone());
                }
            }
            out.push(m);
        }
        out
    }

    /// Rank of the induced linear map K -> Hom(K, C).
    pub fn rank(&self) -> usize {
        let field = self.kernel_basis.field;
        let dk = self.dim_k();
        let dc = self.dim_c();
        let mut m = Matrix::zero(field, dk * dc, dk);
        for (u, slice) in self.tensor.iter().enumerate() {
            for r in 0..dc {
                for c in 0..dk {
                    m.set(r * dk + c, u, slice.at(r, c).clone());
                }
            }
        }
        m.rank()
    }
}

/// Second-order singularity symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolClass {
    pub i: usize,
    pub j: usize,
}

/// Rank defect of the differential at a rational point.
pub fn corank_at(map: &PolyMap, x: &[FieldElem]) -> Result<usize> {
    let j = map.jacobian_at(x)?;
    Ok(map.n.min(map.r) - j.rank())
}

/// The intrinsic differential of a polynomial bundle map at a point:
/// evaluates the entrywise gradient and projects through the kernel
/// inclusion and cokernel projection of the evaluated matrix.
pub fn intrinsic_differential_at(alpha: &PolyMatrix, x: &[FieldElem]) -> Result<IntrinsicDiff> {
    if x.len() != alpha.nvars {
        return Err(Error::DimensionMismatch("point dimension".into()));
    }
    let a0 = alpha.eval(x)?;
    let profile = a0.rank_profile();
    let kernel = profile.kernel;
    let coker = profile.coker_projection;
    let mut tensor = Vec::with_capacity(alpha.nvars);
    for dir in 0..alpha.nvars {
        let d = alpha.derive(dir).eval(x)?;
        let slice = coker.mul(&d)?.mul(&kernel)?;
        tensor.push(slice);
    }
    Ok(IntrinsicDiff {
        point: x.to_vec(),
        corank: a0.rows.min(a0.cols) - profile.rank,
        kernel_basis: kernel,
        coker_projection: coker,
        tensor,
    })
}

/// The second intrinsic differential of a map at a point: the Hessian
/// restricted to the kernel of the differential and projected to its
/// cokernel.
pub fn second_intrinsic_differential_at(map: &PolyMap, x: &[FieldElem]) -> Result<SecondDiff> {
    let alpha = PolyMatrix::jacobian_of(map);
    let id = intrinsic_differential_at(&alpha, x)?;
    let f = map.field;
    let dk = id.dim_k();
    // restrict directions to the kernel: column u of the kernel basis
    let mut tensor = Vec::with_capacity(dk);
    for u in 0..dk {
        let mut acc = Matrix::zero(f, id.dim_c(), dk);
        for dir in 0..map.n {
            let w = id.kernel_basis.at(dir, u);
            if f.is_zero(w) {
                continue;
            }
            acc = acc.add(&id.tensor[dir].scale(w))?;
        }
        tensor.push(acc);
    }
    Ok(SecondDiff {
        point: x.to_vec(),
        kernel_basis: id.kernel_basis,
        coker_projection: id.coker_projection,
        tensor,
    })
}

/// Second-order symbol (i, j) of a map at a point.
pub fn symbol_at(map: &PolyMap, x: &[FieldElem]) -> Result<SymbolClass> {
    let i = corank_at(map, x)?;
    let dd2 = second_intrinsic_differential_at(map, x)?;
    let j = dd2.dim_k() - dd2.rank();
    Ok(SymbolClass { i, j })
}

/// Whether the point lies in the bad locus of its own corank stratum:
/// either the stratum cannot have its expected codimension (the whole
/// stratum is bad) or the intrinsic differential fails to be surjective
/// onto Hom(K, C).
pub fn bad_locus_member(map: &PolyMap, x: &[FieldElem]) -> Result<bool> {
    let i = corank_at(map, x)?;
    if i == 0 {
        return Ok(false);
    }
    let target = i * (map.n.abs_diff(map.r) + i);
    if map.n < target {
        return Ok(true);
    }
    let alpha = PolyMatrix::jacobian_of(map);
    let id = intrinsic_differential_at(&alpha, x)?;
    Ok(id.rank() < target)
}

/// JSON payload of the CLI `classify` subcommand.
#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub corank: usize,
    pub symbol: SymbolClass,
    pub bad_locus: bool,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
}

pub fn classify(map: &PolyMap, x: &[FieldElem]) -> Result<ClassifyReport> {
    let symbol = symbol_at(map, x)?;
    let dd2 = second_intrinsic_differential_at(map, x)?;
    Ok(ClassifyReport {
        corank: symbol.i,
        symbol,
        bad_locus: bad_locus_member(map, x)?,
        kernel_dim: dd2.dim_k(),
        cokernel_dim: dd2.dim_c(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_map, parse_poly};

    fn q() -> ExactField {
        ExactField::rationals()
    }

    fn origin(f: ExactField, n: usize) -> Vec<FieldElem> {
        vec![f.zero(); n]
    }

    #[test]
    fn corank_examples() {
        let id2 = parse_map(q(), 2, "x0;x1").unwrap();
        assert_eq!(corank_at(&id2, &origin(q(), 2)).unwrap(), 0);
        assert_eq!(
            corank_at(&id2, &[q().from_i64(3), q().from_i64(-1)]).unwrap(),
            0
        );

        let fold = parse_map(q(), 2, "x0;x1^2").unwrap();
        assert_eq!(corank_at(&fold, &origin(q(), 2)).unwrap(), 1);

        let cusp = parse_map(q(), 2, "x0^2 + x1^3").unwrap();
        assert_eq!(corank_at(&cusp, &origin(q(), 2)).unwrap(), 1);
    }

    #[test]
    fn intrinsic_differential_1x1() {
        let f = q();
        let alpha = PolyMatrix::new(f, 1, 1, 1, vec![parse_poly(f, 1, "x0").unwrap()]);
        let id = intrinsic_differential_at(&alpha, &[f.zero()]).unwrap();
        assert_eq!(id.dim_k(), 1);
        assert_eq!(id.dim_c(), 1);
        assert_eq!(id.tensor[0].at(0, 0), &f.one());
    }

    #[test]
    fn intrinsic_differential_diag() {
        let f = q();
        let entries = vec![
            parse_poly(f, 1, "1").unwrap(),
            parse_poly(f, 1, "0").unwrap(),
            parse_poly(f, 1, "0").unwrap(),
            parse_poly(f, 1, "x0").unwrap(),
        ];
        let alpha = PolyMatrix::new(f, 1, 2, 2, entries);
        let id = intrinsic_differential_at(&alpha, &[f.zero()]).unwrap();
        assert_eq!(id.dim_k(), 1);
        assert_eq!(id.dim_c(), 1);
        // kernel is e2, cokernel is the e2 quotient, derivative 1
        assert_eq!(id.tensor[0].at(0, 0), &f.one());
    }

    #[test]
    fn second_differential_examples() {
        // x^2 + y^3: kernel is everything, Hessian restriction [[2,0],[0,0]]
        let m = parse_map(q(), 2, "x0^2 + x1^3").unwrap();
        let dd2 = second_intrinsic_differential_at(&m, &origin(q(), 2)).unwrap();
        assert_eq!(dd2.dim_k(), 2);
        assert_eq!(dd2.dim_c(), 1);
        let comp = &dd2.component_matrices()[0];
        assert_eq!(comp, &Matrix::from_i64_rows(q(), &[&[2, 0], &[0, 0]]));

        // xy + x^3 in characteristic 2: alternating
        let f2 = ExactField::prime(2).unwrap();
        let m = parse_map(f2, 2, "x0*x1 + x0^3").unwrap();
        let dd2 = second_intrinsic_differential_at(&m, &origin(f2, 2)).unwrap();
        let comp = &dd2.component_matrices()[0];
        assert_eq!(comp, &Matrix::from_i64_rows(f2, &[&[0, 1], &[1, 0]]));

        // fold (x, y^2): kernel e2, value 2
        let m = parse_map(q(), 2, "x0;x1^2").unwrap();
        let dd2 = second_intrinsic_differential_at(&m, &origin(q(), 2)).unwrap();
        assert_eq!(dd2.dim_k(), 1);
        assert_eq!(dd2.dim_c(), 1);
        assert_eq!(dd2.component_matrices()[0].at(0, 0), &q().from_i64(2));
    }

    #[test]
    fn symbol_examples() {
        let m = parse_map(q(), 2, "x0^2 + x1^2").unwrap();
        assert_eq!(symbol_at(&m, &origin(q(), 2)).unwrap(), SymbolClass { i: 1, j: 0 });

        let m = parse_map(q(), 2, "x0^2 + x1^3").unwrap();
        assert_eq!(symbol_at(&m, &origin(q(), 2)).unwrap(), SymbolClass { i: 1, j: 1 });

        let f2 = ExactField::prime(2).unwrap();
        let m = parse_map(f2, 2, "x0;x1^2").unwrap();
        assert_eq!(symbol_at(&m, &origin(f2, 2)).unwrap(), SymbolClass { i: 1, j: 1 });
    }

    #[test]
    fn bad_locus_examples() {
        let m = parse_map(q(), 2, "x0^2 + x1^2").unwrap();
        assert!(!bad_locus_member(&m, &origin(q(), 2)).unwrap());

        let f2 = ExactField::prime(2).unwrap();
        let m = parse_map(f2, 2, "x0^2 + x1^2").unwrap();
        assert!(bad_locus_member(&m, &origin(f2, 2)).unwrap());

        let id2 = parse_map(q(), 2, "x0;x1").unwrap();
        assert!(!bad_locus_member(&id2, &origin(q(), 2)).unwrap());
    }
}
