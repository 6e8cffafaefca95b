//! Sparse multivariate polynomials and order-N truncated power series:
//! arithmetic, substitution, differentiation and 2-jet extraction.
//!
//! Exponent tuples are keyed in graded reverse lexicographic order so
//! every iteration (and every matrix built from one) is deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{ExactField, FieldElem};
use crate::linalg::Matrix;

/// Exponent tuple with graded reverse lexicographic ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub SmallVec<[u16; 6]>);

impl Mono {
    pub fn unit(nvars: usize) -> Self {
        Mono(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Mono::unit(nvars);
        m.0[i] = 1;
        m
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        let da = self.degree();
        let db = other.degree();
        if da != db {
            return da.cmp(&db);
        }
        for i in (0..self.0.len()).rev() {
            if self.0[i] != other.0[i] {
                // larger exponent in the last differing slot sorts lower
                return other.0[i].cmp(&self.0[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial (`trunc == None`) or power series truncated at total
/// degree `N` (`trunc == Some(N)`): terms of degree above N are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub field: ExactField,
    pub nvars: usize,
    pub trunc: Option<usize>,
    terms: BTreeMap<Mono, FieldElem>,
}

fn min_trunc(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (None, t) | (t, None) => t,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

impl Series {
    pub fn zero(field: ExactField, nvars: usize, trunc: Option<usize>) -> Self {
        Series { field, nvars, trunc, terms: BTreeMap::new() }
    }

    pub fn constant(field: ExactField, nvars: usize, trunc: Option<usize>, c: FieldElem) -> Self {
        let mut s = Series::zero(field, nvars, trunc);
        s.add_term(Mono::unit(nvars), c);
        s
    }

    pub fn variable(field: ExactField, nvars: usize, i: usize, trunc: Option<usize>) -> Self {
        let mut s = Series::zero(field, nvars, trunc);
        s.add_term(Mono::var(nvars, i), field.one());
        s
    }

    pub fn monomial(
        field: ExactField,
        nvars: usize,
        exps: &[u16],
        coeff: FieldElem,
        trunc: Option<usize>,
    ) -> Self {
        let mut s = Series::zero(field, nvars, trunc);
        s.add_term(Mono(SmallVec::from_slice(exps)), coeff);
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &FieldElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> FieldElem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> FieldElem {
        self.coeff(&Mono::unit(self.nvars))
    }

    /// Adds a term, dropping zeros and anything beyond the truncation order.
    pub fn add_term(&mut self, m: Mono, c: FieldElem) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if self.field.is_zero(&c) {
            return;
        }
        if let Some(n) = self.trunc {
            if m.degree() > n {
                return;
            }
        }
        let f = self.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(e.get(), &c);
                if f.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn with_trunc(&self, trunc: Option<usize>) -> Series {
        let mut out = Series::zero(self.field, self.nvars, trunc);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn add(&self, other: &Series) -> Series {
        debug_assert_eq!(self.field, other.field);
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.with_trunc(min_trunc(self.trunc, other.trunc));
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        let f = self.field;
        let mut out = Series::zero(f, self.nvars, self.trunc);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f.neg(c));
        }
        out
    }

    pub fn scale(&self, s: &FieldElem) -> Series {
        let f = self.field;
        let mut out = Series::zero(f, self.nvars, self.trunc);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f.mul(c, s));
        }
        out
    }

    pub fn mul(&self, other: &Series) -> Series {
        debug_assert_eq!(self.field, other.field);
        debug_assert_eq!(self.nvars, other.nvars);
        let f = self.field;
        let trunc = min_trunc(self.trunc, other.trunc);
        let mut out = Series::zero(f, self.nvars, trunc);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if let Some(n) = trunc {
                if da > n {
                    continue;
                }
            }
            for (mb, cb) in &other.terms {
                if let Some(n) = trunc {
                    if da + mb.degree() > n {
                        continue;
                    }
                }
                out.add_term(ma.mul(mb), f.mul(ca, cb));
            }
        }
        out
    }

    /// Formal partial derivative; exponents reduce modulo the characteristic.
    pub fn derive(&self, i: usize) -> Series {
        assert!(i < self.nvars, "variable index out of range");
        let f = self.field;
        let trunc = self.trunc.map(|n| n.saturating_sub(1));
        let mut out = Series::zero(f, self.nvars, trunc.or(self.trunc));
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut me = m.clone();
            me.0[i] -= 1;
            let factor = f.from_i64(e as i64);
            out.add_term(me, f.mul(c, &factor));
        }
        out
    }

    pub fn eval(&self, point: &[FieldElem]) -> Result<FieldElem> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "series in {} variables evaluated at a {}-tuple",
                self.nvars,
                point.len()
            )));
        }
        let f = self.field;
        // power tables
        let max_exp: Vec<u16> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let mut powers: Vec<Vec<FieldElem>> = Vec::with_capacity(self.nvars);
        for i in 0..self.nvars {
            let mut tab = Vec::with_capacity(max_exp[i] as usize + 1);
            tab.push(f.one());
            for e in 1..=max_exp[i] as usize {
                let prev = tab[e - 1].clone();
                tab.push(f.mul(&prev, &point[i]));
            }
            powers.push(tab);
        }
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..self.nvars {
                let e = m.0[i] as usize;
                if e > 0 {
                    term = f.mul(&term, &powers[i][e]);
                }
            }
            acc = f.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Substitution f(subs_0, ..., subs_{nvars-1}) truncated at `n`.
    /// Every substituted series must have zero constant term.
    pub fn compose(&self, subs: &[Series], n: usize) -> Result<Series> {
        if subs.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} substitutions for {} variables",
                subs.len(),
                self.nvars
            )));
        }
        for s in subs {
            if !s.field.is_zero(&s.constant_term()) {
                return Err(Error::NonzeroConstantTerm);
            }
        }
        let f = self.field;
        let out_vars = subs.first().map_or(0, |s| s.nvars);
        debug_assert!(subs.iter().all(|s| s.nvars == out_vars));
        let mut out = Series::zero(f, out_vars, Some(n));
        // cache powers of each substituted series
        let mut pow_cache: Vec<Vec<Series>> = subs
            .iter()
            .map(|s| vec![Series::constant(f, out_vars, Some(n), f.one()), s.with_trunc(Some(n))])
            .collect();
        for (m, c) in &self.terms {
            // zero constant terms make images of degree-d monomials lie in
            // order >= d, so anything past the cutoff contributes nothing
            if m.degree() > n {
                continue;
            }
            let mut term = Series::constant(f, out_vars, Some(n), c.clone());
            for i in 0..self.nvars {
                let e = m.0[i] as usize;
                if e == 0 {
                    continue;
                }
                while pow_cache[i].len() <= e {
                    let last = pow_cache[i].last().unwrap().clone();
                    let next = last.mul(&pow_cache[i][1]);
                    pow_cache[i].push(next);
                }
                term = term.mul(&pow_cache[i][e]);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Expansion around a point: returns g with g(u) = f(x0 + u), truncated
    /// at `n` when given.
    pub fn shift(&self, x0: &[FieldElem], n: Option<usize>) -> Result<Series> {
        if x0.len() != self.nvars {
            return Err(Error::DimensionMismatch("shift point".into()));
        }
        let f = self.field;
        let cap = n.or(self.trunc);
        let mut out = Series::zero(f, self.nvars, cap);
        for (m, c) in &self.terms {
            // product of (x0_i + u_i)^{e_i}, expanded exactly
            let mut term = Series::constant(f, self.nvars, cap, c.clone());
            for i in 0..self.nvars {
                let e = m.0[i] as usize;
                if e == 0 {
                    continue;
                }
                let mut binom = Series::zero(f, self.nvars, cap);
                binom.add_term(Mono::unit(self.nvars), x0[i].clone());
                binom.add_term(Mono::var(self.nvars, i), f.one());
                for _ in 0..e {
                    term = term.mul(&binom);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Degree-d homogeneous part.
    pub fn homogeneous_part(&self, d: usize) -> Series {
        let mut out = Series::zero(self.field, self.nvars, self.trunc);
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Largest total degree with a nonzero term, or None for the zero series.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Smallest total degree with a nonzero term.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    /// Renames variables into a larger ring: variable i becomes `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Series {
        let mut out = Series::zero(self.field, nvars, self.trunc);
        for (m, c) in &self.terms {
            let mut exps = SmallVec::from_elem(0u16, nvars);
            for (i, &e) in m.0.iter().enumerate() {
                exps[map[i]] += e;
            }
            out.add_term(Mono(exps), c.clone());
        }
        out
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field;
        let mut first = true;
        for (m, c) in &self.terms {
            let rendered = field.render(c);
            let (sign, mag) = match rendered.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", rendered),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = m.degree() == 0;
            let needs_coeff = is_const || mag != "1";
            if needs_coeff {
                if mag.contains('+') || mag.contains('*') {
                    factors.push(format!("({mag})"));
                } else {
                    factors.push(mag);
                }
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{i}")),
                    _ => factors.push(format!("x{i}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// A polynomial map A^n -> A^r given by r polynomial components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    pub field: ExactField,
    pub n: usize,
    pub r: usize,
    pub components: Vec<Series>,
}

impl PolyMap {
    pub fn new(field: ExactField, n: usize, components: Vec<Series>) -> Self {
        assert!(components.iter().all(|c| c.nvars == n && c.field == field));
        PolyMap { field, n, r: components.len(), components }
    }

    pub fn eval(&self, x: &[FieldElem]) -> Result<Vec<FieldElem>> {
        self.components.iter().map(|c| c.eval(x)).collect()
    }

    /// r x n matrix of formal partial derivatives.
    pub fn jacobian_polys(&self) -> Vec<Vec<Series>> {
        self.components
            .iter()
            .map(|c| (0..self.n).map(|i| c.derive(i)).collect())
            .collect()
    }

    pub fn jacobian_at(&self, x: &[FieldElem]) -> Result<Matrix> {
        let mut m = Matrix::zero(self.field, self.r, self.n);
        for (row, comp) in self.components.iter().enumerate() {
            for col in 0..self.n {
                m.set(row, col, comp.derive(col).eval(x)?);
            }
        }
        Ok(m)
    }
}

/// Pointwise 2-jet data: value, Jacobian and the Hessian 3-tensor.
#[derive(Clone, Debug)]
pub struct Jet2 {
    pub value: Vec<FieldElem>,
    pub jacobian: Matrix,
    /// One n x n symmetric slice per target component; in characteristic 2
    /// the diagonals vanish.
    pub hessian: Vec<Matrix>,
}

/// Value, first and second derivatives of `map` at `x0`.
pub fn jet2_at(map: &PolyMap, x0: &[FieldElem]) -> Result<Jet2> {
    if x0.len() != map.n {
        return Err(Error::DimensionMismatch(format!(
            "map has source dimension {}, point has {}",
            map.n,
            x0.len()
        )));
    }
    let value = map.eval(x0)?;
    let jacobian = map.jacobian_at(x0)?;
    let mut hessian = Vec::with_capacity(map.r);
    for comp in &map.components {
        let mut h = Matrix::zero(map.field, map.n, map.n);
        for i in 0..map.n {
            let di = comp.derive(i);
            for j in i..map.n {
                let v = di.derive(j).eval(x0)?;
                h.set(i, j, v.clone());
                h.set(j, i, v);
            }
        }
        hessian.push(h);
    }
    Ok(Jet2 { value, jacobian, hessian })
}

// ---- polynomial text syntax ----

struct Parser<'a> {
    field: ExactField,
    nvars: usize,
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn expr(&mut self) -> Result<Series> {
        self.skip_ws();
        let mut negate = false;
        if let Some(&c) = self.chars.peek() {
            if c == '+' || c == '-' {
                self.chars.next();
                negate = c == '-';
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some('+') => {
                    self.chars.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.chars.next();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Series> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some('*') => {
                    self.chars.next();
                    let t = self.factor()?;
                    acc = acc.mul(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Series> {
        let base = self.atom()?;
        self.skip_ws();
        if let Some('^') = self.chars.peek() {
            self.chars.next();
            let e = self.integer()? as usize;
            let mut acc = Series::constant(self.field, self.nvars, None, self.field.one());
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Series> {
        self.skip_ws();
        match self.chars.peek() {
            Some('(') => {
                self.chars.next();
                let e = self.expr()?;
                self.skip_ws();
                if self.chars.next() != Some(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                Ok(e)
            }
            Some('x') => {
                self.chars.next();
                let idx = self.integer()? as usize;
                if idx >= self.nvars {
                    return Err(Error::Parse(format!(
                        "variable x{idx} out of range for {} variables",
                        self.nvars
                    )));
                }
                Ok(Series::variable(self.field, self.nvars, idx, None))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(Series::constant(self.field, self.nvars, None, self.field.from_i64(v)))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let mut digits = String::new();
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.chars.next().unwrap());
        }
        digits.parse().map_err(|_| Error::Parse("expected an integer".into()))
    }
}

/// Parses the CLI polynomial syntax, e.g. `x0^2 + 3*x0*x1 - x1^3`,
/// with variables named x0..x{nvars-1}.
pub fn parse_poly(field: ExactField, nvars: usize, text: &str) -> Result<Series> {
    let mut p = Parser { field, nvars, chars: text.chars().peekable() };
    let e = p.expr()?;
    p.skip_ws();
    if p.chars.next().is_some() {
        return Err(Error::Parse("trailing input".into()));
    }
    Ok(e)
}

/// Parses a map given as `;`-separated polynomial components.
pub fn parse_map(field: ExactField, nvars: usize, text: &str) -> Result<PolyMap> {
    let comps = text
        .split(';')
        .map(|part| parse_poly(field, nvars, part))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyMap::new(field, nvars, comps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ExactField {
        ExactField::rationals()
    }

    #[test]
    fn grevlex_order() {
        // degree-2 monomials in two variables, ascending: y^2, xy, x^2
        let x2 = Mono(SmallVec::from_slice(&[2, 0]));
        let xy = Mono(SmallVec::from_slice(&[1, 1]));
        let y2 = Mono(SmallVec::from_slice(&[0, 2]));
        assert!(y2 < xy);
        assert!(xy < x2);
        let x = Mono(SmallVec::from_slice(&[1, 0]));
        assert!(x < y2);
    }

    #[test]
    fn compose_square_of_sum() {
        let f = parse_poly(q(), 1, "x0^2").unwrap();
        let sub = parse_poly(q(), 2, "x0 + x1").unwrap();
        let got = f.compose(&[sub], 4).unwrap();
        let want = parse_poly(q(), 2, "x0^2 + 2*x0*x1 + x1^2").unwrap().with_trunc(Some(4));
        assert_eq!(got, want);
    }

    #[test]
    fn compose_square_of_sum_char2() {
        let f2 = ExactField::prime(2).unwrap();
        let f = parse_poly(f2, 1, "x0^2").unwrap();
        let sub = parse_poly(f2, 2, "x0 + x1").unwrap();
        let got = f.compose(&[sub], 4).unwrap();
        let want = parse_poly(f2, 2, "x0^2 + x1^2").unwrap().with_trunc(Some(4));
        assert_eq!(got, want);
    }

    #[test]
    fn compose_truncates() {
        let f = parse_poly(q(), 1, "x0 + x0^2").unwrap();
        let sub = parse_poly(q(), 1, "x0 + x0^2").unwrap();
        let got = f.compose(&[sub], 3).unwrap();
        // (y + y^2) + (y + y^2)^2 = y + 2y^2 + 2y^3 + y^4
        let want = parse_poly(q(), 1, "x0 + 2*x0^2 + 2*x0^3").unwrap().with_trunc(Some(3));
        assert_eq!(got, want);
    }

    #[test]
    fn compose_rejects_constant_terms() {
        let f = parse_poly(q(), 1, "x0").unwrap();
        let sub = parse_poly(q(), 1, "1 + x0").unwrap();
        assert_eq!(f.compose(&[sub], 3), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn derive_examples() {
        let f3 = ExactField::prime(3).unwrap();
        let f = parse_poly(f3, 1, "x0^3").unwrap();
        assert!(f.derive(0).is_zero());

        let g = parse_poly(q(), 2, "x0*x1").unwrap();
        assert_eq!(g.derive(0), parse_poly(q(), 2, "x1").unwrap());

        let f2 = ExactField::prime(2).unwrap();
        let h = parse_poly(f2, 2, "x0^2*x1 + x1^2").unwrap();
        assert_eq!(h.derive(1), parse_poly(f2, 2, "x0^2").unwrap());
    }

    #[test]
    fn jet2_examples() {
        // x^2 + y^2 at the origin in characteristic zero
        let map = parse_map(q(), 2, "x0^2 + x1^2").unwrap();
        let origin = vec![q().zero(), q().zero()];
        let jet = jet2_at(&map, &origin).unwrap();
        assert!(q().is_zero(&jet.value[0]));
        assert!(jet.jacobian.is_zero());
        assert_eq!(jet.hessian[0], Matrix::from_i64_rows(q(), &[&[2, 0], &[0, 2]]));

        // xy at the origin in characteristic 2: alternating Hessian
        let f2 = ExactField::prime(2).unwrap();
        let map = parse_map(f2, 2, "x0*x1").unwrap();
        let origin = vec![f2.zero(), f2.zero()];
        let jet = jet2_at(&map, &origin).unwrap();
        assert_eq!(jet.hessian[0], Matrix::from_i64_rows(f2, &[&[0, 1], &[1, 0]]));

        // x^3 at x = 1
        let map = parse_map(q(), 1, "x0^3").unwrap();
        let jet = jet2_at(&map, &[q().one()]).unwrap();
        assert_eq!(jet.value[0], q().from_i64(1));
        assert_eq!(jet.jacobian.at(0, 0), &q().from_i64(3));
        assert_eq!(jet.hessian[0].at(0, 0), &q().from_i64(6));
    }

    #[test]
    fn shift_reads_taylor_coefficients() {
        let f = parse_poly(q(), 1, "x0^3").unwrap();
        let g = f.shift(&[q().one()], Some(2)).unwrap();
        // (1+u)^3 = 1 + 3u + 3u^2 + ...
        assert_eq!(g, parse_poly(q(), 1, "1 + 3*x0 + 3*x0^2").unwrap().with_trunc(Some(2)));
    }

    #[test]
    fn display_roundtrip() {
        let f = parse_poly(q(), 2, "x0^2 + 3*x0*x1 - x1^3").unwrap();
        let text = f.to_string();
        let g = parse_poly(q(), 2, &text).unwrap();
        assert_eq!(f, g);
    }
}
