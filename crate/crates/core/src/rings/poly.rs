use std::collections::BTreeMap;

use super::{parse, EuclideanDomain, Field, RingError};

/// A polynomial in one variable, stored as degree → nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    terms: BTreeMap<usize, C>,
}

impl<C> Poly<C> {
    pub fn terms(&self) -> impl Iterator<Item = (usize, &C)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of a nonzero polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coefficient(&self) -> Option<&C> {
        self.terms.values().next_back()
    }

    /// Homogeneous degree: `Some(t)` iff the polynomial is a single term `a·xᵗ`.
    pub fn degh(&self) -> Option<usize> {
        if self.terms.len() == 1 {
            self.degree()
        } else {
            None
        }
    }

    pub fn coefficient(&self, degree: usize) -> Option<&C> {
        self.terms.get(&degree)
    }
}

/// The polynomial ring F[x] over a field, with the standard grading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing<F> {
    field: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    fn from_terms(&self, terms: impl IntoIterator<Item = (usize, F::Elem)>) -> Poly<F::Elem> {
        let mut out = BTreeMap::new();
        for (d, c) in terms {
            let entry = out.entry(d).or_insert_with(|| self.field.zero());
            *entry = self.field.add(entry, &c);
        }
        out.retain(|_, c| !self.field.is_zero(c));
        Poly { terms: out }
    }

    /// `c·xᵈ`
    pub fn monomial(&self, coef: F::Elem, degree: usize) -> Poly<F::Elem> {
        self.from_terms([(degree, coef)])
    }

    pub fn constant(&self, coef: F::Elem) -> Poly<F::Elem> {
        self.monomial(coef, 0)
    }

    pub fn x_pow(&self, degree: usize) -> Poly<F::Elem> {
        self.monomial(self.field.one(), degree)
    }

    pub fn scale(&self, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        self.from_terms(a.terms().map(|(d, v)| (d, self.field.mul(v, c))))
    }

    /// Substitutes `x := 1`.
    pub fn eval_at_one(&self, a: &Poly<F::Elem>) -> F::Elem {
        a.terms()
            .fold(self.field.zero(), |acc, (_, c)| self.field.add(&acc, c))
    }
}

impl<F: Field> EuclideanDomain for PolyRing<F> {
    type Elem = Poly<F::Elem>;
    type Norm = usize;

    fn zero(&self) -> Self::Elem {
        Poly { terms: BTreeMap::new() }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.field.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.from_terms(a.terms().chain(b.terms()).map(|(d, c)| (d, c.clone())))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.from_terms(a.terms().map(|(d, c)| (d, self.field.neg(c))))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (da, ca) in a.terms() {
            for (db, cb) in b.terms() {
                out.push((da + db, self.field.mul(ca, cb)));
            }
        }
        self.from_terms(out)
    }

    fn norm(&self, a: &Self::Elem) -> usize {
        a.degree().unwrap_or(0)
    }

    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> Result<(Self::Elem, Self::Elem), RingError> {
        let (db, lb) = match (b.degree(), b.leading_coefficient()) {
            (Some(d), Some(c)) => (d, c),
            _ => return Err(RingError::DivisionByZero),
        };
        let lb_inv = self.field.inv(lb).expect("leading coefficient is nonzero");
        let mut q = self.zero();
        let mut r = a.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let c = self.field.mul(r.leading_coefficient().unwrap(), &lb_inv);
            let t = self.monomial(c, dr - db);
            r = self.sub(&r, &self.mul(&t, b));
            q = self.add(&q, &t);
        }
        Ok((q, r))
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        a.degree() == Some(0)
    }

    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if !self.is_unit(a) {
            return None;
        }
        let c = self.field.inv(a.leading_coefficient()?)?;
        Some(self.constant(c))
    }

    fn unit_normalize(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem) {
        match a.leading_coefficient() {
            None => (self.one(), self.zero()),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                (self.constant(lc.clone()), self.scale(a, &inv))
            }
        }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn name(&self) -> String {
        format!("{}x", self.field.name())
    }

    fn parse_elem(&self, text: &str) -> Result<Self::Elem, RingError> {
        let err = |reason: String| RingError::Parse {
            text: text.into(),
            ring: self.name(),
            reason,
        };
        let terms = parse::poly_terms(text).map_err(err)?;
        let mut parsed = Vec::with_capacity(terms.len());
        for term in terms {
            let coef = if term.coef.is_empty() {
                self.field.one()
            } else {
                self.field.parse_elem(term.coef)?
            };
            let coef = if term.negative { self.field.neg(&coef) } else { coef };
            parsed.push((term.degree, coef));
        }
        Ok(self.from_terms(parsed))
    }

    fn format_elem(&self, a: &Self::Elem) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let one = self.field.one();
        let minus_one = self.field.neg(&one);
        let mut out = String::new();
        for (d, c) in a.terms.iter().rev() {
            let text = self.field.format_elem(c);
            let (negative, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if negative {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let implicit = *d > 0 && (*c == one || *c == minus_one) && mag == "1";
            if !implicit {
                out.push_str(&mag);
            }
            match d {
                0 => {}
                1 => out.push('x'),
                _ => out.push_str(&format!("x^{d}")),
            }
        }
        out
    }
}
