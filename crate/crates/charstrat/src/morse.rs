//! Constructive local theory of power series: Jacobian ideals, Milnor
//! numbers, determinacy bounds, right-equivalences, quadratic normal
//! forms in every characteristic, Morse splitting with parameters, and
//! the corank-1 normal form of maps.

use crate::error::{Error, Result};
use crate::field::{ExactField, FieldElem};
use crate::jets::{monomials_of_degree, monomials_up_to};
use crate::linalg::Matrix;
use crate::poly::{Mono, PolyMap, Series};
use crate::strata;

/// A local automorphism of the truncated power series ring: a tuple of
/// variable images with zero constant term and invertible linear part.
/// The leading `fixed_prefix` variables map to themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalAutomorphism {
    pub field: ExactField,
    pub nvars: usize,
    pub trunc: usize,
    pub images: Vec<Series>,
    pub fixed_prefix: usize,
}

impl LocalAutomorphism {
    pub fn identity(field: ExactField, nvars: usize, trunc: usize) -> Self {
        let images = (0..nvars)
            .map(|i| Series::variable(field, nvars, i, Some(trunc)))
            .collect();
        LocalAutomorphism { field, nvars, trunc, images, fixed_prefix: nvars }
    }

    pub fn from_images(
        field: ExactField,
        images: Vec<Series>,
        trunc: usize,
        fixed_prefix: usize,
    ) -> Result<Self> {
        let nvars = images.len();
        for im in &images {
            if im.nvars != nvars || im.field != field {
                return Err(Error::DimensionMismatch("automorphism images".into()));
            }
            if !field.is_zero(&im.constant_term()) {
                return Err(Error::NonzeroConstantTerm);
            }
        }
        let auto = LocalAutomorphism {
            field,
            nvars,
            trunc,
            images: images.into_iter().map(|s| s.with_trunc(Some(trunc))).collect(),
            fixed_prefix,
        };
        if auto.linear_part().rank() != nvars {
            return Err(Error::PreconditionViolated(
                "automorphism linear part is singular".into(),
            ));
        }
        for i in 0..fixed_prefix {
            let var = Series::variable(field, nvars, i, Some(trunc));
            if auto.images[i] != var {
                return Err(Error::PreconditionViolated(
                    "fixed-prefix variables must map to themselves".into(),
                ));
            }
        }
        Ok(auto)
    }

    /// Matrix of degree-1 coefficients: entry (i, j) is the coefficient of
    /// x_i in the image of x_j.
    pub fn linear_part(&self) -> Matrix {
        let mut m = Matrix::zero(self.field, self.nvars, self.nvars);
        for (j, im) in self.images.iter().enumerate() {
            for i in 0..self.nvars {
                m.set(i, j, im.coeff(&Mono::var(self.nvars, i)));
            }
        }
        m
    }

    /// Applies the automorphism to a series by substitution.
    pub fn apply(&self, f: &Series) -> Result<Series> {
        f.compose(&self.images, self.trunc)
    }

    /// Composite automorphism: applying the result equals applying `self`
    /// and then `next`.
    pub fn then(&self, next: &LocalAutomorphism) -> Result<LocalAutomorphism> {
        if self.nvars != next.nvars || self.field != next.field {
            return Err(Error::DimensionMismatch("automorphism composition".into()));
        }
        let trunc = self.trunc.min(next.trunc);
        let images = self
            .images
            .iter()
            .map(|im| im.compose(&next.images, trunc))
            .collect::<Result<Vec<_>>>()?;
        LocalAutomorphism::from_images(
            self.field,
            images,
            trunc,
            self.fixed_prefix.min(next.fixed_prefix),
        )
    }

    /// Inverse up to the truncation order, by degree-raising iteration.
    pub fn inverse(&self) -> Result<LocalAutomorphism> {
        let f = self.field;
        let n = self.nvars;
        let linv = self
            .linear_part()
            .inverse()
            .ok_or_else(|| Error::PreconditionViolated("singular linear part".into()))?;
        let apply_linear = |tuple: &[Series]| -> Vec<Series> {
            (0..n)
                .map(|i| {
                    let mut acc = Series::zero(f, n, Some(self.trunc));
                    for (j, s) in tuple.iter().enumerate() {
                        acc = acc.add(&s.scale(linv.at(i, j)));
                    }
                    acc
                })
                .collect()
        };
        // higher-order part of the images
        let linear_images: Vec<Series> = (0..n)
            .map(|j| {
                let mut s = Series::zero(f, n, Some(self.trunc));
                for i in 0..n {
                    let c = self.images[j].coeff(&Mono::var(n, i));
                    s.add_term(Mono::var(n, i), c);
                }
                s
            })
            .collect();
        let higher: Vec<Series> = self
            .images
            .iter()
            .zip(&linear_images)
            .map(|(im, lin)| im.sub(lin))
            .collect();
        let id_tuple: Vec<Series> = (0..n)
            .map(|i| Series::variable(f, n, i, Some(self.trunc)))
            .collect();
        let mut psi = apply_linear(&id_tuple);
        for _ in 0..self.trunc {
            // psi <- L^{-1} (id - H(psi))
            let h_of_psi: Vec<Series> = higher
                .iter()
                .map(|hi| hi.compose(&psi, self.trunc))
                .collect::<Result<Vec<_>>>()?;
            let rhs: Vec<Series> =
                id_tuple.iter().zip(&h_of_psi).map(|(x, h)| x.sub(h)).collect();
            psi = apply_linear(&rhs);
        }
        LocalAutomorphism::from_images(f, psi, self.trunc, self.fixed_prefix)
    }
}

// ---- Milnor numbers ----

/// Outcome of the truncated Milnor computation.
#[derive(Clone, Debug)]
pub struct MilnorReport {
    pub certified: bool,
    pub mu: Option<usize>,
    /// Smallest radius with the maximal-ideal power certified inside the
    /// Jacobian ideal.
    pub r: Option<usize>,
    pub monomial_basis: Vec<Mono>,
    pub n_used: usize,
    /// Quotient dimension at the last level computed, certified or not.
    pub last_dim: usize,
}

fn mono_index(order: &[Mono]) -> std::collections::HashMap<Mono, usize> {
    order
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect()
}

/// Rows spanning the image of the Jacobian ideal in the space of
/// monomials of degree below `level`, with columns in descending grevlex
/// order (so echelon pivots land on the largest monomials).
fn jacobian_rows(
    f: &Series,
    partials: &[Series],
    level: usize,
    order: &[Mono],
    index: &std::collections::HashMap<Mono, usize>,
) -> Matrix {
    let field = f.field;
    let nvars = f.nvars;
    let mut rows = Vec::new();
    for m in monomials_up_to(nvars, level - 1) {
        for pd in partials {
            let mut row = vec![field.zero(); order.len()];
            let mut nonzero = false;
            for (pm, c) in pd.terms() {
                let prod = m.mul(pm);
                if prod.degree() >= level {
                    continue;
                }
                let slot = index[&prod];
                row[slot] = field.add(&row[slot], c);
                nonzero = true;
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        Matrix::zero(field, 0, order.len())
    } else {
        Matrix::from_rows(field, rows)
    }
}

/// Truncated Milnor number computation: stabilized quotient dimension
/// plus a Nakayama-style certificate that a power of the maximal ideal
/// lies in the Jacobian ideal.
pub fn milnor(f: &Series, n_max: usize) -> Result<MilnorReport> {
    let field = f.field;
    if !field.is_zero(&f.constant_term()) {
        return Err(Error::NonzeroConstant);
    }
    let nvars = f.nvars;
    let partials: Vec<Series> = (0..nvars).map(|i| f.derive(i)).collect();

    let mut prev_dim: Option<usize> = None;
    let mut last_dim = 0usize;
    for level in 3..=n_max {
        // columns: monomials of degree < level, largest first
        let mut order = monomials_up_to(nvars, level - 1);
        order.sort();
        order.reverse();
        let index = mono_index(&order);
        let jrows = jacobian_rows(f, &partials, level, &order, &index);
        let jprofile = jrows.rank_profile();
        let dim = order.len() - jprofile.rank;
        last_dim = dim;

        // ranks of J extended by unit rows for all monomials of degree >= k
        let mut certified_r: Option<usize> = None;
        if prev_dim == Some(dim) {
            let mut ranks = vec![0usize; level + 1]; // ranks[k] for units of degree >= k
            for k in (1..=level).rev() {
                let mut rows: Vec<Vec<FieldElem>> = Vec::new();
                for r in 0..jrows.rows {
                    rows.push(jrows.row(r).to_vec());
                }
                for (slot, m) in order.iter().enumerate() {
                    if m.degree() >= k && m.degree() < level {
                        let mut unit = vec![field.zero(); order.len()];
                        unit[slot] = field.one();
                        rows.push(unit);
                    }
                }
                ranks[k] = if rows.is_empty() {
                    0
                } else {
                    Matrix::from_rows(field, rows).rank()
                };
            }
            // smallest radius k <= level - 2 whose monomials reduce into
            // the span of the Jacobian rows plus higher monomials
            for k in 1..=level.saturating_sub(2) {
                if ranks[k] == ranks[k + 1] {
                    certified_r = Some(k);
                    break;
                }
            }
            // radius 0 only when the Jacobian ideal is the unit ideal
            if dim == 0 && certified_r.is_none() {
                certified_r = Some(0);
            }
        }

        if let Some(r) = certified_r {
            // standard monomials: non-pivot columns, smallest first
            let pivot_cols: Vec<usize> = jprofile.pivots.iter().map(|&(_, c)| c).collect();
            let mut basis: Vec<Mono> = order
                .iter()
                .enumerate()
                .filter(|(slot, _)| !pivot_cols.contains(slot))
                .map(|(_, m)| m.clone())
                .collect();
            basis.sort();
            return Ok(MilnorReport {
                certified: true,
                mu: Some(dim),
                r: Some(r),
                monomial_basis: basis,
                n_used: level,
                last_dim: dim,
            });
        }
        prev_dim = Some(dim);
    }
    Ok(MilnorReport {
        certified: false,
        mu: None,
        r: None,
        monomial_basis: Vec::new(),
        n_used: n_max,
        last_dim,
    })
}

/// 2r, from the smallest certified radius r.
pub fn determinacy_bound(f: &Series, n_max: usize) -> Result<usize> {
    let report = milnor(f, n_max)?;
    match report.r {
        Some(r) if report.certified => Ok(2 * r),
        _ => Err(Error::NotCertifiedFinite),
    }
}

// ---- quadratic normal forms ----

/// Result of normalizing a quadratic form by a linear automorphism.
#[derive(Clone, Debug)]
pub struct QuadNormalForm {
    pub phi: LocalAutomorphism,
    /// Hessian rank away from characteristic 2, polar (alternating) rank
    /// in characteristic 2 (always even there).
    pub rank: usize,
    /// Characteristic 2 only: a residual single square on the first
    /// variable after the paired block.
    pub extra_square: bool,
    /// The image of the input quadratic under `phi`.
    pub normal: Series,
}

fn linear_step(
    field: ExactField,
    nvars: usize,
    trunc: usize,
    prefix: usize,
    edit: impl FnOnce(&mut Vec<Series>),
) -> LocalAutomorphism {
    let mut images: Vec<Series> = (0..nvars)
        .map(|i| Series::variable(field, nvars, i, Some(trunc)))
        .collect();
    edit(&mut images);
    LocalAutomorphism::from_images(field, images, trunc, prefix)
        .expect("elementary steps are invertible")
}

fn swap_step(
    field: ExactField,
    nvars: usize,
    trunc: usize,
    prefix: usize,
    i: usize,
    j: usize,
) -> LocalAutomorphism {
    linear_step(field, nvars, trunc, prefix, |images| {
        images.swap(i, j);
    })
}

fn quad_coeff(qs: &Series, i: usize, j: usize) -> FieldElem {
    let nvars = qs.nvars;
    let mut exps = smallvec::SmallVec::from_elem(0u16, nvars);
    if i == j {
        exps[i] = 2;
    } else {
        exps[i] = 1;
        exps[j] = 1;
    }
    qs.coeff(&Mono(exps))
}

/// Squarefree part of a rational, preserving sign: c = s * t^2 with s a
/// squarefree integer (complete for prime factors up to 10^6).
fn rational_squarefree_scale(_field: &ExactField, c: &FieldElem) -> (FieldElem, FieldElem) {
    use num::bigint::BigInt;
    use num::rational::BigRational;
    use num::{One, Signed};
    let r = match c {
        FieldElem::Rat(r) => r.clone(),
        _ => unreachable!(),
    };
    let prod: BigInt = r.numer() * r.denom();
    let negative = prod.is_negative();
    let mut abs = prod.abs();
    let mut square = BigInt::one();
    let mut sf = BigInt::one();
    let mut d = BigInt::from(2);
    let limit = BigInt::from(1_000_000u64);
    while &d * &d <= abs && d <= limit {
        let mut count = 0u32;
        while (&abs % &d) == BigInt::from(0) {
            abs /= &d;
            count += 1;
        }
        if count % 2 == 1 {
            sf *= &d;
        }
        for _ in 0..(count / 2) {
            square *= &d;
        }
        d += 1;
    }
    sf *= &abs; // leftover cofactor, squarefree unless it hides huge squares
    let mut target = BigRational::from(sf);
    if negative {
        target = -target;
    }
    // c * lambda^2 = target with lambda = denom / square
    let lambda = BigRational::new(r.denom().clone(), square);
    (FieldElem::Rat(target), FieldElem::Rat(lambda))
}

fn quad_normal_form_odd(
    quad: &Series,
    offset: usize,
    trunc: usize,
) -> Result<QuadNormalForm> {
    let field = quad.field;
    let nvars = quad.nvars;
    let two_inv = field.inv(&field.from_i64(2)).expect("characteristic is not 2");
    let mut current = quad.clone();
    let mut total = LocalAutomorphism::identity(field, nvars, trunc);
    let push = |total: &mut LocalAutomorphism, current: &mut Series, step: LocalAutomorphism| {
        *current = step.apply(current).unwrap().with_trunc(Some(2)).homogeneous_part(2);
        *total = total.then(&step).unwrap();
    };

    let mut rank = 0usize;
    for t in offset..nvars {
        // symmetric matrix entries of the remaining block
        let diag = |cur: &Series, i: usize| quad_coeff(cur, i, i);
        let off = |cur: &Series, i: usize, j: usize| field.mul(&quad_coeff(cur, i, j), &two_inv);
        if field.is_zero(&diag(&current, t)) {
            if let Some(s) = (t + 1..nvars).find(|&s| !field.is_zero(&diag(&current, s))) {
                push(&mut total, &mut current, swap_step(field, nvars, trunc, offset, t, s));
            } else {
                // look for any off-diagonal entry in the remaining block
                let mut found = None;
                'outer: for s in t..nvars {
                    for u in s + 1..nvars {
                        if !field.is_zero(&off(&current, s, u)) {
                            found = Some((s, u));
                            break 'outer;
                        }
                    }
                }
                let Some((s, u)) = found else { break };
                // make a diagonal entry at u, then move it to t
                let step = linear_step(field, nvars, trunc, offset, |images| {
                    let xu = Series::variable(field, nvars, u, Some(trunc));
                    images[s] = images[s].add(&xu);
                });
                push(&mut total, &mut current, step);
                if u != t {
                    push(&mut total, &mut current, swap_step(field, nvars, trunc, offset, t, u));
                }
            }
        }
        let pivot = diag(&current, t);
        if field.is_zero(&pivot) {
            break;
        }
        // clear the rest of row/column t
        for s in t + 1..nvars {
            let b = off(&current, t, s);
            if field.is_zero(&b) {
                continue;
            }
            let gamma = field.div(&b, &pivot)?;
            let step = linear_step(field, nvars, trunc, offset, |images| {
                let xs = Series::variable(field, nvars, s, Some(trunc));
                images[t] = images[t].sub(&xs.scale(&gamma));
            });
            push(&mut total, &mut current, step);
        }
        rank += 1;
    }

    // normalize diagonal coefficients
    for t in offset..offset + rank {
        let c = quad_coeff(&current, t, t);
        debug_assert!(!field.is_zero(&c));
        let lambda = match field {
            ExactField::Rationals => {
                let (_, lambda) = rational_squarefree_scale(&field, &c);
                lambda
            }
            _ => {
                if let Some(root) = field.sqrt(&c) {
                    field.inv(&root)?
                } else {
                    let eps = field.canonical_nonsquare().expect("odd finite field");
                    let ratio = field.div(&c, &eps)?;
                    let root = field.sqrt(&ratio).expect("quotient of non-squares is a square");
                    field.inv(&root)?
                }
            }
        };
        if lambda != field.one() {
            let step = linear_step(field, nvars, trunc, offset, |images| {
                images[t] = images[t].scale(&lambda);
            });
            push(&mut total, &mut current, step);
        }
    }

    Ok(QuadNormalForm { phi: total, rank, extra_square: false, normal: current })
}

fn quad_normal_form_char2(
    quad: &Series,
    offset: usize,
    trunc: usize,
) -> Result<QuadNormalForm> {
    let field = quad.field;
    let nvars = quad.nvars;
    let one = field.one();
    let mut current = quad.clone();
    let mut total = LocalAutomorphism::identity(field, nvars, trunc);
    let push = |total: &mut LocalAutomorphism, current: &mut Series, step: LocalAutomorphism| {
        *current = step.apply(current).unwrap().with_trunc(Some(2)).homogeneous_part(2);
        *total = total.then(&step).unwrap();
    };

    'restart: loop {
        // phase A: reduce the polar part to coefficient-1 pairs at the front
        let mut pos = offset;
        loop {
            let mut found = None;
            'scan: for i in pos..nvars {
                for j in i + 1..nvars {
                    if !field.is_zero(&quad_coeff(&current, i, j)) {
                        found = Some((i, j));
                        break 'scan;
                    }
                }
            }
            let Some((i, j)) = found else { break };
            if i != pos {
                push(&mut total, &mut current, swap_step(field, nvars, trunc, offset, i, pos));
            }
            let j = if j == pos { i } else { j };
            if j != pos + 1 {
                push(&mut total, &mut current, swap_step(field, nvars, trunc, offset, j, pos + 1));
            }
            let c = quad_coeff(&current, pos, pos + 1);
            debug_assert!(!field.is_zero(&c));
            if c != one {
                let cinv = field.inv(&c)?;
                let step = linear_step(field, nvars, trunc, offset, |images| {
                    images[pos + 1] = images[pos + 1].scale(&cinv);
                });
                push(&mut total, &mut current, step);
            }
            // decouple all later variables from the pair: adding b x_s to
            // the image of x_pos and a x_s to the image of x_{pos+1}
            // cancels both couplings and shifts the diagonal of x_s by ab
            for s in pos + 2..nvars {
                let a = quad_coeff(&current, pos, s);
                let b = quad_coeff(&current, pos + 1, s);
                if field.is_zero(&a) && field.is_zero(&b) {
                    continue;
                }
                let step = linear_step(field, nvars, trunc, offset, |images| {
                    let xs = Series::variable(field, nvars, s, Some(trunc));
                    images[pos] = images[pos].add(&xs.scale(&b));
                    images[pos + 1] = images[pos + 1].add(&xs.scale(&a));
                });
                push(&mut total, &mut current, step);
            }
            pos += 2;
        }
        let rank = pos - offset;

        // phase B: residual diagonal
        let diag = |cur: &Series, i: usize| quad_coeff(cur, i, i);
        let unpaired_diag = (offset + rank..nvars).find(|&i| !field.is_zero(&diag(&current, i)));
        if let Some(i0) = unpaired_diag {
            let spot = offset + rank;
            if i0 != spot {
                push(&mut total, &mut current, swap_step(field, nvars, trunc, offset, i0, spot));
            }
            // fold all other unpaired diagonal into the single square
            let root_spot = field.sqrt(&diag(&current, spot)).expect("perfect field");
            let others: Vec<(usize, FieldElem)> = (spot + 1..nvars)
                .filter_map(|i| {
                    let d = diag(&current, i);
                    if field.is_zero(&d) {
                        None
                    } else {
                        Some((i, field.sqrt(&d).expect("perfect field")))
                    }
                })
                .collect();
            if !others.is_empty() || root_spot != one {
                let rinv = field.inv(&root_spot)?;
                let step = linear_step(field, nvars, trunc, offset, |images| {
                    let mut img = Series::variable(field, nvars, spot, Some(trunc));
                    for (i, root) in &others {
                        let xi = Series::variable(field, nvars, *i, Some(trunc));
                        img = img.add(&xi.scale(root));
                    }
                    images[spot] = img.scale(&rinv);
                });
                push(&mut total, &mut current, step);
            }
            // absorb paired-variable diagonal through the square
            let paired: Vec<(usize, FieldElem)> = (offset..offset + rank)
                .filter_map(|i| {
                    let d = diag(&current, i);
                    if field.is_zero(&d) {
                        None
                    } else {
                        Some((i, field.sqrt(&d).expect("perfect field")))
                    }
                })
                .collect();
            if !paired.is_empty() {
                let step = linear_step(field, nvars, trunc, offset, |images| {
                    let mut img = Series::variable(field, nvars, spot, Some(trunc));
                    for (i, root) in &paired {
                        let xi = Series::variable(field, nvars, *i, Some(trunc));
                        img = img.add(&xi.scale(root));
                    }
                    images[spot] = img;
                });
                push(&mut total, &mut current, step);
            }
            return Ok(QuadNormalForm { phi: total, rank, extra_square: true, normal: current });
        }

        // no unpaired square: treat each pair's diagonal remnant
        let mut remnants: Vec<usize> = Vec::new();
        for t in 0..rank / 2 {
            let (u, v) = (offset + 2 * t, offset + 2 * t + 1);
            let a = diag(&current, u);
            let b = diag(&current, v);
            if field.is_zero(&a) && field.is_zero(&b) {
                continue;
            }
            if field.is_zero(&b) {
                let step = linear_step(field, nvars, trunc, offset, |images| {
                    let xu = Series::variable(field, nvars, u, Some(trunc));
                    images[v] = images[v].add(&xu.scale(&a));
                });
                push(&mut total, &mut current, step);
                continue;
            }
            if field.is_zero(&a) {
                let step = linear_step(field, nvars, trunc, offset, |images| {
                    let xv = Series::variable(field, nvars, v, Some(trunc));
                    images[u] = images[u].add(&xv.scale(&b));
                });
                push(&mut total, &mut current, step);
                continue;
            }
            let ab = field.mul(&a, &b);
            if let Some(z) = field.solve_artin_schreier(&ab) {
                // split x*y + a x^2 + b y^2 as a product of two forms
                let w = field.div(&z, &a)?;
                let t_mat = Matrix::from_rows(
                    field,
                    vec![
                        vec![a.clone(), field.add(&one, &field.mul(&a, &w))],
                        vec![one.clone(), w.clone()],
                    ],
                );
                let tinv = t_mat.inverse().expect("splitting change is invertible");
                let step = linear_step(field, nvars, trunc, offset, |images| {
                    let xu = Series::variable(field, nvars, u, Some(trunc));
                    let xv = Series::variable(field, nvars, v, Some(trunc));
                    images[u] = xu.scale(tinv.at(0, 0)).add(&xv.scale(tinv.at(0, 1)));
                    images[v] = xu.scale(tinv.at(1, 0)).add(&xv.scale(tinv.at(1, 1)));
                });
                push(&mut total, &mut current, step);
            } else {
                remnants.push(t);
            }
        }

        if remnants.len() >= 2 {
            // merge two anisotropic planes into a hyperbolic plane plus a
            // splittable plane, then restart
            let t1 = remnants[0];
            let t2 = remnants[1];
            let (u1, v1) = (offset + 2 * t1, offset + 2 * t1 + 1);
            let (u2, v2) = (offset + 2 * t2, offset + 2 * t2 + 1);
            let a1 = diag(&current, u1);
            let b1 = diag(&current, v1);
            let a2 = diag(&current, u2);
            // isotropic vector w = e_{v1} + y e_{u2} with y = sqrt(b1 / a2)
            let y = field.sqrt(&field.div(&b1, &a2)?).expect("perfect field");
            // hyperbolic partner w'' = a1 w + e_{u1}
            // orthogonal complement basis of span(w, w'') under the polar
            // form: g1 = e_{v2} + y e_{v1}... compute directly
            // polar couplings: B(w, e_{u1}) = 1, B(w, e_{v1}) = 0,
            // B(w, e_{u2}) = 0, B(w, e_{v2}) = y
            // B(w'', e_{u1}) = 0, B(w'', e_{v1}) = 1 + 0, B(w'', e_{u2}) = a1 y...
            let vecs = {
                let zero = field.zero();
                // coordinates in the (u1, v1, u2, v2) sub-basis
                let w = vec![zero.clone(), one.clone(), y.clone(), zero.clone()];
                let wpp = vec![
                    one.clone(),
                    a1.clone(),
                    field.mul(&a1, &y),
                    zero.clone(),
                ];
                // complement: solve B(w, g) = 0 and B(w'', g) = 0
                // B rows in this sub-basis: polar matrix
                let polar = Matrix::from_rows(
                    field,
                    vec![
                        vec![zero.clone(), one.clone(), zero.clone(), zero.clone()],
                        vec![one.clone(), zero.clone(), zero.clone(), zero.clone()],
                        vec![zero.clone(), zero.clone(), zero.clone(), one.clone()],
                        vec![zero.clone(), zero.clone(), one.clone(), zero.clone()],
                    ],
                );
                let bw = polar.mul_vec(&w).unwrap();
                let bwpp = polar.mul_vec(&wpp).unwrap();
                let cond = Matrix::from_rows(field, vec![bw, bwpp]);
                let comp = cond.rank_profile().kernel; // 4 x 2
                let g1 = comp.col(0);
                let g2 = comp.col(1);
                vec![w, wpp, g1, g2]
            };
            let change = {
                let mut m = Matrix::zero(field, 4, 4);
                for (col, v) in vecs.iter().enumerate() {
                    for row in 0..4 {
                        m.set(row, col, v[row].clone());
                    }
                }
                m
            };
            debug_assert_eq!(change.rank(), 4);
            let slots = [u1, v1, u2, v2];
            let step = linear_step(field, nvars, trunc, offset, |images| {
                for (row, &slot) in slots.iter().enumerate() {
                    let mut img = Series::zero(field, nvars, Some(trunc));
                    for (col, &target) in slots.iter().enumerate() {
                        let xt = Series::variable(field, nvars, target, Some(trunc));
                        img = img.add(&xt.scale(change.at(row, col)));
                    }
                    images[slot] = img;
                }
            });
            push(&mut total, &mut current, step);
            continue 'restart;
        }

        return Ok(QuadNormalForm { phi: total, rank, extra_square: false, normal: current });
    }
}

/// Linear normalization of the quadratic part of `f`: diagonal with
/// square-class-normalized coefficients away from characteristic 2;
/// coefficient-1 pairings plus at most a residual square (or one
/// irreducible two-variable remnant over non-closed fields) in
/// characteristic 2. Variables below `offset` are left untouched and the
/// input must not involve them.
pub fn quad_normal_form(f: &Series, offset: usize, trunc: usize) -> Result<QuadNormalForm> {
    let field = f.field;
    if f.terms().any(|(m, _)| m.degree() < 2) {
        return Err(Error::OrderTooLow);
    }
    let quad = f.homogeneous_part(2);
    if quad
        .terms()
        .any(|(m, _)| m.0.iter().take(offset).any(|&e| e > 0))
    {
        return Err(Error::PreconditionViolated(
            "quadratic part touches fixed-prefix variables".into(),
        ));
    }
    if field.characteristic() == 2 {
        quad_normal_form_char2(&quad, offset, trunc)
    } else {
        quad_normal_form_odd(&quad, offset, trunc)
    }
}

// ---- Morse splitting with parameters ----

/// Result of splitting off the quadratic rank: phi fixes the parameter
/// block and sends the input to q + h with h free of the variables of q.
#[derive(Clone, Debug)]
pub struct MorseSplit {
    pub phi: LocalAutomorphism,
    pub q: Series,
    pub h: Series,
    pub rank: usize,
    pub extra_square: bool,
}

fn is_qvar_divisible(m: &Mono, q_lo: usize, q_hi: usize) -> bool {
    (q_lo..q_hi).any(|i| m.0[i] > 0)
}

/// Morse splitting with parameters: the leading `params` variables are
/// treated as a parameter block fixed by the automorphism; the quadratic
/// part of the fiber block is normalized and every higher term divisible
/// by one of its variables is absorbed by degree-raising substitutions.
pub fn morse_with_params(f: &Series, params: usize, n: usize) -> Result<MorseSplit> {
    if n < 2 {
        return Err(Error::NotTruncatable);
    }
    let field = f.field;
    let nvars = f.nvars;
    if params > nvars {
        return Err(Error::DimensionMismatch("parameter block too large".into()));
    }
    // no pure-fiber linear terms
    for (m, _) in f.terms() {
        if m.degree() == 1 && (params..nvars).any(|i| m.0[i] > 0) {
            return Err(Error::PreconditionViolated(
                "fiber variables must not appear linearly".into(),
            ));
        }
    }
    let full = f.with_trunc(Some(n));
    // pure-fiber quadratic part
    let mut fiber_quad = Series::zero(field, nvars, Some(2));
    for (m, c) in full.homogeneous_part(2).terms() {
        if (0..params).all(|i| m.0[i] == 0) {
            fiber_quad.add_term(m.clone(), c.clone());
        }
    }
    let qnf = if fiber_quad.is_zero() {
        QuadNormalForm {
            phi: LocalAutomorphism::identity(field, nvars, n),
            rank: 0,
            extra_square: false,
            normal: fiber_quad.clone(),
        }
    } else {
        quad_normal_form(&fiber_quad, params, n)?
    };
    let (q_lo, q_hi) = (params, params + qnf.rank);
    // q: the part of the normalized quadratic supported on its own block
    let mut q = Series::zero(field, nvars, Some(n));
    for (m, c) in qnf.normal.terms() {
        if is_qvar_divisible(m, q_lo, q_hi) {
            q.add_term(m.clone(), c.clone());
        }
    }

    let mut total = qnf.phi.clone();
    let mut current = total.apply(&full)?;
    let charac = field.characteristic();
    let two_inv = if charac != 2 {
        Some(field.inv(&field.from_i64(2))?)
    } else {
        None
    };

    for d in 2..=n {
        let mut targets: Vec<(Mono, FieldElem)> = Vec::new();
        let g = current.sub(&q);
        for (m, c) in g.terms() {
            if m.degree() == d && is_qvar_divisible(m, q_lo, q_hi) {
                targets.push((m.clone(), c.clone()));
            }
        }
        if targets.is_empty() {
            continue;
        }
        // solve sum_i u_i dq/dx_i = targets by reading off one variable
        let mut u = vec![Series::zero(field, nvars, Some(n)); nvars];
        for (m, c) in targets {
            let v = (q_lo..q_hi).find(|&i| m.0[i] > 0).unwrap();
            let mut reduced = m.clone();
            reduced.0[v] -= 1;
            match charac {
                2 => {
                    // the partner variable's partial is exactly x_v
                    let partner = if (v - q_lo) % 2 == 0 { v + 1 } else { v - 1 };
                    u[partner].add_term(reduced, c);
                }
                _ => {
                    // dq/dx_v = 2 c_v x_v
                    let cv = quad_coeff(&q, v, v);
                    let scale = field.div(&c, &field.mul(&field.from_i64(2), &cv))?;
                    let _ = &two_inv;
                    u[v].add_term(reduced, scale);
                }
            }
        }
        let step_images: Vec<Series> = (0..nvars)
            .map(|i| {
                let x = Series::variable(field, nvars, i, Some(n));
                if u[i].is_zero() {
                    x
                } else {
                    x.sub(&u[i])
                }
            })
            .collect();
        let step = LocalAutomorphism::from_images(field, step_images, n, params)?;
        current = step.apply(&current)?;
        total = total.then(&step)?;
    }

    let h = current.sub(&q);
    debug_assert!(
        h.terms().all(|(m, _)| !is_qvar_divisible(m, q_lo, q_hi)),
        "remainder must avoid the quadratic block"
    );
    Ok(MorseSplit { phi: total, q, h, rank: qnf.rank, extra_square: qnf.extra_square })
}

// ---- constructive right-equivalence ----

/// Builds an automorphism sending g to f up to order `n`, given that f is
/// certified with radius r and g agrees with f to order 2r. Returns None
/// when a lifting step fails (the certificate was wrong).
pub fn right_equiv_truncated(f: &Series, g: &Series, n: usize) -> Result<Option<LocalAutomorphism>> {
    let field = f.field;
    let nvars = f.nvars;
    let report = milnor(f, (2 * n).max(12))?;
    let (Some(r), true) = (report.r, report.certified) else {
        return Err(Error::NotCertifiedFinite);
    };
    let f = f.with_trunc(Some(n));
    let mut g = g.with_trunc(Some(n));
    let diff0 = f.sub(&g);
    if let Some(ord) = diff0.order() {
        if ord < 2 * r + 1 {
            return Err(Error::PreconditionViolated(format!(
                "perturbation has order {ord}, needs at least {}",
                2 * r + 1
            )));
        }
    }
    let partials: Vec<Series> = (0..nvars).map(|i| f.derive(i)).collect();
    let mut total = LocalAutomorphism::identity(field, nvars, n);

    loop {
        let diff = f.sub(&g);
        let Some(ord) = diff.order() else {
            return Ok(Some(total));
        };
        if ord > n {
            return Ok(Some(total));
        }
        let s = ord - 1; // g agrees with f modulo order s+1
        // solve sum u_i df/dx_i = diff modulo order s+2, with u_i of
        // order >= s+1-r
        let lo = (s + 1).saturating_sub(r).max(1);
        let hi = s + 1;
        let mut cols: Vec<(usize, Mono)> = Vec::new();
        for i in 0..nvars {
            for d in lo..=hi {
                for m in monomials_of_degree(nvars, d) {
                    cols.push((i, m));
                }
            }
        }
        let row_monos: Vec<Mono> = monomials_up_to(nvars, s + 1)
            .into_iter()
            .filter(|m| m.degree() >= lo)
            .collect();
        let row_index = mono_index(&row_monos);
        let mut mat = Matrix::zero(field, row_monos.len(), cols.len());
        for (cidx, (i, m)) in cols.iter().enumerate() {
            for (pm, pc) in partials[*i].terms() {
                let prod = m.mul(pm);
                if prod.degree() > s + 1 {
                    continue;
                }
                if let Some(&ridx) = row_index.get(&prod) {
                    let cur = field.add(mat.at(ridx, cidx), pc);
                    mat.set(ridx, cidx, cur);
                }
            }
        }
        let rhs: Vec<FieldElem> = row_monos.iter().map(|m| diff.coeff(m)).collect();
        let Some(sol) = mat.solve(&rhs)? else {
            return Ok(None);
        };
        let mut u = vec![Series::zero(field, nvars, Some(n)); nvars];
        for (cidx, (i, m)) in cols.iter().enumerate() {
            u[*i].add_term(m.clone(), sol[cidx].clone());
        }
        let images: Vec<Series> = (0..nvars)
            .map(|i| Series::variable(field, nvars, i, Some(n)).add(&u[i]))
            .collect();
        let step = LocalAutomorphism::from_images(field, images, n, 0)?;
        let g_next = step.apply(&g)?;
        let next_ord = f.sub(&g_next).order();
        if let Some(no) = next_ord {
            if no <= ord {
                return Ok(None);
            }
        }
        g = g_next;
        total = total.then(&step)?;
    }
}

// ---- corank-1 normal form ----

/// Full normal-form report at a corank-1 point.
#[derive(Clone, Debug)]
pub struct NormalFormReport {
    /// Reordering of the target components: the first r-1 become the new
    /// parameters, the last carries the normal form.
    pub target_order: Vec<usize>,
    /// The coordinate system: images are the new coordinates expressed in
    /// the shifted source coordinates.
    pub coordinates: LocalAutomorphism,
    /// Second-order defect at the point.
    pub j: usize,
    pub q: Series,
    pub h: Series,
    /// Automorphism in the new coordinates with phi(last component) = q + h.
    pub phi: LocalAutomorphism,
    pub rank: usize,
    pub extra_square: bool,
    pub achieved_order: usize,
    /// The last component expressed in the new coordinates (the series phi
    /// acts on).
    pub last_component: Series,
}

/// Normal form of a map at a corank-1 rational point: reorders the target,
/// builds a parameter system whose leading r-1 coordinates are the first
/// components, and splits the last component as q + h by Morse reduction
/// with the leading coordinates as parameters.
pub fn corank1_normal_form(map: &PolyMap, x0: &[FieldElem], n: usize) -> Result<NormalFormReport> {
    let field = map.field;
    let (nv, r) = (map.n, map.r);
    if r > nv {
        return Err(Error::TargetTooBig);
    }
    if strata::corank_at(map, x0)? != 1 {
        return Err(Error::WrongCorank);
    }
    let jac = map.jacobian_at(x0)?;

    // greedy choice of r-1 independent target components
    let mut picked: Vec<usize> = Vec::new();
    let mut rank_so_far = 0usize;
    for row in 0..r {
        if picked.len() == r - 1 {
            break;
        }
        let mut rows: Vec<Vec<FieldElem>> = picked.iter().map(|&p| jac.row(p).to_vec()).collect();
        rows.push(jac.row(row).to_vec());
        let rk = Matrix::from_rows(field, rows).rank();
        if rk > rank_so_far {
            rank_so_far = rk;
            picked.push(row);
        }
    }
    debug_assert_eq!(picked.len(), r - 1);
    let last = (0..r).find(|i| !picked.contains(i)).unwrap();
    let mut target_order = picked.clone();
    target_order.push(last);

    // shifted components (expanded around x0)
    let shifted: Vec<Series> = map
        .components
        .iter()
        .map(|c| c.shift(x0, Some(n)))
        .collect::<Result<Vec<_>>>()?;

    // coordinate system: first the picked components minus their values,
    // then greedy unit coordinates completing the linear part
    let mut coord_images: Vec<Series> = Vec::with_capacity(nv);
    for &p in &picked {
        let c0 = shifted[p].constant_term();
        coord_images.push(shifted[p].sub(&Series::constant(field, nv, Some(n), c0)));
    }
    let mut lin_rows: Vec<Vec<FieldElem>> = picked.iter().map(|&p| jac.row(p).to_vec()).collect();
    let mut lin_rank = Matrix::from_rows(field, lin_rows.clone()).rank();
    for unit in 0..nv {
        if coord_images.len() == nv {
            break;
        }
        let mut row = vec![field.zero(); nv];
        row[unit] = field.one();
        let mut trial = lin_rows.clone();
        trial.push(row.clone());
        let rk = Matrix::from_rows(field, trial).rank();
        if rk > lin_rank {
            lin_rank = rk;
            lin_rows.push(row);
            coord_images.push(Series::variable(field, nv, unit, Some(n)));
        }
    }
    let coords = LocalAutomorphism::from_images(field, coord_images, n, 0)?;
    let inv = coords.inverse()?;

    // the last component in the new coordinates
    let last_series = shifted[last].compose(&inv.images, n)?;
    let split = morse_with_params(&last_series, r - 1, n)?;

    let fiber_dim = nv - (r - 1);
    let j = fiber_dim - split.rank;
    if field.characteristic() == 2 {
        debug_assert_eq!((fiber_dim - j) % 2, 0);
    }

    Ok(NormalFormReport {
        target_order,
        coordinates: coords,
        j,
        q: split.q,
        h: split.h,
        phi: split.phi,
        rank: split.rank,
        extra_square: split.extra_square,
        achieved_order: n,
        last_component: last_series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_map, parse_poly};

    fn q() -> ExactField {
        ExactField::rationals()
    }

    fn f2() -> ExactField {
        ExactField::prime(2).unwrap()
    }

    #[test]
    fn automorphism_inverse_roundtrip() {
        let f = q();
        let n = 6;
        let images = vec![
            parse_poly(f, 2, "x0 + x1^2").unwrap().with_trunc(Some(n)),
            parse_poly(f, 2, "x1 + x0^3").unwrap().with_trunc(Some(n)),
        ];
        let phi = LocalAutomorphism::from_images(f, images, n, 0).unwrap();
        let inv = phi.inverse().unwrap();
        let id = phi.then(&inv).unwrap();
        for (i, im) in id.images.iter().enumerate() {
            assert_eq!(im, &Series::variable(f, 2, i, Some(n)));
        }
    }

    #[test]
    fn milnor_examples() {
        let f = parse_poly(q(), 2, "x0^2 + x1^2").unwrap();
        let rep = milnor(&f, 10).unwrap();
        assert!(rep.certified);
        assert_eq!(rep.mu, Some(1));
        assert_eq!(rep.r, Some(1));

        let f = parse_poly(q(), 2, "x0^3 - x1^2").unwrap();
        let rep = milnor(&f, 10).unwrap();
        assert_eq!(rep.mu, Some(2));
        let names: Vec<String> = rep
            .monomial_basis
            .iter()
            .map(|m| format!("{:?}", m.0.as_slice()))
            .collect();
        assert_eq!(names, vec!["[0, 0]", "[1, 0]"]);

        let f = parse_poly(f2(), 2, "x0^3 + x1^3").unwrap();
        let rep = milnor(&f, 10).unwrap();
        assert_eq!(rep.mu, Some(4));
        assert_eq!(rep.monomial_basis.len(), 4);
        // basis {1, x, y, xy}
        assert!(rep.monomial_basis.iter().any(|m| m.degree() == 2));
    }

    #[test]
    fn milnor_rejects_units() {
        let f = parse_poly(q(), 1, "1 + x0").unwrap();
        assert_eq!(milnor(&f, 8).err(), Some(Error::NonzeroConstant));
    }

    #[test]
    fn milnor_infinite_not_certified() {
        // x^2 in two variables: the second variable never dies
        let f = parse_poly(q(), 2, "x0^2").unwrap();
        let rep = milnor(&f, 9).unwrap();
        assert!(!rep.certified);
    }

    #[test]
    fn determinacy_examples() {
        let f = parse_poly(q(), 2, "x0^2 + x1^2").unwrap();
        assert_eq!(determinacy_bound(&f, 10).unwrap(), 2);

        let f = parse_poly(q(), 2, "x0^3 + x1^3").unwrap();
        assert_eq!(determinacy_bound(&f, 10).unwrap(), 6);

        let f = parse_poly(q(), 2, "x0^2 + x1^3").unwrap();
        assert_eq!(determinacy_bound(&f, 10).unwrap(), 4);
    }

    #[test]
    fn quad_normal_form_char2_examples() {
        // x^2 + xy: one pairing, no residual square
        let f = parse_poly(f2(), 2, "x0^2 + x0*x1").unwrap();
        let nf = quad_normal_form(&f, 0, 4).unwrap();
        assert_eq!(nf.rank, 2);
        assert!(!nf.extra_square);
        assert_eq!(nf.normal, parse_poly(f2(), 2, "x0*x1").unwrap().with_trunc(Some(2)));
        // verification by application
        assert_eq!(nf.phi.apply(&f).unwrap().homogeneous_part(2), nf.normal.with_trunc(Some(4)).homogeneous_part(2));

        // a single square: rank 0 with the residual branch
        let f = parse_poly(f2(), 1, "x0^2").unwrap();
        let nf = quad_normal_form(&f, 0, 4).unwrap();
        assert_eq!(nf.rank, 0);
        assert!(nf.extra_square);

        // coupled chain: the pair must absorb the third variable
        let f = parse_poly(f2(), 4, "x2*x3 + x1*x2").unwrap();
        let nf = quad_normal_form(&f, 0, 4).unwrap();
        assert_eq!(nf.rank, 2);
        assert!(!nf.extra_square);
        assert_eq!(nf.normal, parse_poly(f2(), 4, "x0*x1").unwrap().with_trunc(Some(2)));
        assert_eq!(
            nf.phi.apply(&f).unwrap().homogeneous_part(2),
            nf.normal.with_trunc(Some(4)).homogeneous_part(2)
        );
    }

    #[test]
    fn quad_normal_form_char0_example() {
        let f = parse_poly(q(), 2, "x0^2 + 2*x0*x1 + 3*x1^2").unwrap();
        let nf = quad_normal_form(&f, 0, 4).unwrap();
        assert_eq!(nf.rank, 2);
        assert_eq!(
            nf.normal,
            parse_poly(q(), 2, "x0^2 + 2*x1^2").unwrap().with_trunc(Some(2))
        );
        let image = nf.phi.apply(&f).unwrap();
        assert_eq!(image.homogeneous_part(2), nf.normal.with_trunc(Some(4)).homogeneous_part(2));
    }

    #[test]
    fn quad_normal_form_arf_remnant() {
        // the anisotropic plane over F_2 stays a two-variable remnant
        let f = parse_poly(f2(), 2, "x0*x1 + x0^2 + x1^2").unwrap();
        let nf = quad_normal_form(&f, 0, 4).unwrap();
        assert_eq!(nf.rank, 2);
        assert!(!nf.extra_square);
        let img = nf.phi.apply(&f).unwrap().homogeneous_part(2);
        assert_eq!(img, nf.normal.with_trunc(Some(4)).homogeneous_part(2));

        // two anisotropic planes merge into split form
        let g = parse_poly(f2(), 4, "x0*x1 + x0^2 + x1^2 + x2*x3 + x2^2 + x3^2").unwrap();
        let nf = quad_normal_form(&g, 0, 4).unwrap();
        assert_eq!(nf.rank, 4);
        let expect = parse_poly(f2(), 4, "x0*x1 + x2*x3").unwrap().with_trunc(Some(2));
        assert_eq!(nf.normal, expect);
    }

    #[test]
    fn morse_with_params_examples() {
        // x^2 + t x^3 over the rationals: h depends only on t
        let f = parse_poly(q(), 2, "x1^2 + x0*x1^3").unwrap();
        let split = morse_with_params(&f, 1, 6).unwrap();
        assert_eq!(split.rank, 1);
        for (m, _) in split.h.terms() {
            assert_eq!(m.0[1], 0, "h must avoid the quadratic variable");
        }
        let image = split.phi.apply(&f).unwrap();
        assert_eq!(image, split.q.add(&split.h));

        // x1 x2 + x3^3 in characteristic 2, no parameters
        let f = parse_poly(f2(), 3, "x0*x1 + x2^3").unwrap();
        let split = morse_with_params(&f, 0, 6).unwrap();
        assert_eq!(split.q, parse_poly(f2(), 3, "x0*x1").unwrap().with_trunc(Some(6)));
        assert_eq!(split.h, parse_poly(f2(), 3, "x2^3").unwrap().with_trunc(Some(6)));

        // already split input: identity behavior
        let f = parse_poly(q(), 2, "x0^2 + x1^2").unwrap();
        let split = morse_with_params(&f, 0, 6).unwrap();
        assert!(split.h.is_zero());
        assert_eq!(split.q, f.with_trunc(Some(6)));
    }

    #[test]
    fn right_equiv_examples() {
        let f = parse_poly(q(), 2, "x0^2 + x1^2").unwrap();
        let g = parse_poly(q(), 2, "x0^2 + x1^2 + x0^5").unwrap();
        let phi = right_equiv_truncated(&f, &g, 8).unwrap().expect("equivalence exists");
        let image = phi.apply(&g.with_trunc(Some(8))).unwrap();
        assert_eq!(image, f.with_trunc(Some(8)));

        // f = g gives the identity
        let phi = right_equiv_truncated(&f, &f, 8).unwrap().unwrap();
        assert_eq!(phi, LocalAutomorphism::identity(q(), 2, 8));

        // infinite Milnor number is rejected
        let f = parse_poly(q(), 2, "x0^2").unwrap();
        let g = parse_poly(q(), 2, "x0^2 + x1^2").unwrap();
        assert_eq!(right_equiv_truncated(&f, &g, 8).err(), Some(Error::NotCertifiedFinite));
    }

    #[test]
    fn corank1_examples() {
        // x1^2 + x2^2 + x3^3 from A^3 to A^1
        let map = parse_map(q(), 3, "x0^2 + x1^2 + x2^3").unwrap();
        let rep = corank1_normal_form(&map, &[q().zero(), q().zero(), q().zero()], 8).unwrap();
        assert_eq!(rep.j, 1);
        assert_eq!(rep.rank, 2);
        // h carries the cubic direction only
        for (m, _) in rep.h.terms() {
            assert!(m.0[0] == 0 && m.0[1] == 0);
        }
        let image = rep.phi.apply(&rep.last_component).unwrap();
        assert_eq!(image, rep.q.add(&rep.h));

        // fold (x, y^2)
        let map = parse_map(q(), 2, "x0;x1^2").unwrap();
        let rep = corank1_normal_form(&map, &[q().zero(), q().zero()], 6).unwrap();
        assert_eq!(rep.j, 0);
        assert_eq!(rep.rank, 1);

        // (x, yz + x^3) in characteristic 2
        let map = parse_map(f2(), 3, "x0;x1*x2 + x0^3").unwrap();
        let rep = corank1_normal_form(&map, &vec![f2().zero(); 3], 6).unwrap();
        assert_eq!(rep.j, 0);
        assert_eq!(rep.rank, 2);
        assert!(!rep.extra_square);
        let image = rep.phi.apply(&rep.last_component).unwrap();
        assert_eq!(image, rep.q.add(&rep.h));
    }

    #[test]
    fn corank1_rejects_wrong_inputs() {
        let map = parse_map(q(), 2, "x0;x1").unwrap();
        assert_eq!(
            corank1_normal_form(&map, &[q().zero(), q().zero()], 6).err(),
            Some(Error::WrongCorank)
        );
        let map = parse_map(q(), 1, "x0;x0^2").unwrap();
        assert_eq!(
            corank1_normal_form(&map, &[q().zero()], 6).err(),
            Some(Error::TargetTooBig)
        );
    }
}
