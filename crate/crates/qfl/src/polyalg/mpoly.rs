//! Exact multivariate polynomials over the integers in the variables
//! x1..x16 and t1..t16.
//!
//! Terms live in a BTreeMap keyed by exponent vectors, compared
//! lexicographically with every x before every t. The map never stores a
//! zero coefficient, so equality is structural.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

pub const MAXV: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("cannot parse polynomial near \"{0}\"")]
    Parse(String),
    #[error("variable index {0} out of range 1..={MAXV}")]
    VarRange(usize),
}

/// Exponent vector of a single monomial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Expo {
    pub xs: [u8; MAXV],
    pub ts: [u8; MAXV],
}

impl Expo {
    pub fn unit() -> Expo {
        Expo {
            xs: [0; MAXV],
            ts: [0; MAXV],
        }
    }

    /// Exponent vector of x_i, 1-indexed.
    pub fn x(i: usize) -> Expo {
        assert!((1..=MAXV).contains(&i));
        let mut e = Expo::unit();
        e.xs[i - 1] = 1;
        e
    }

    /// Exponent vector of t_i, 1-indexed.
    pub fn t(i: usize) -> Expo {
        assert!((1..=MAXV).contains(&i));
        let mut e = Expo::unit();
        e.ts[i - 1] = 1;
        e
    }

    pub fn is_unit(&self) -> bool {
        self.xs.iter().all(|&e| e == 0) && self.ts.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Expo) -> Expo {
        let mut out = *self;
        for k in 0..MAXV {
            out.xs[k] += other.xs[k];
            out.ts[k] += other.ts[k];
        }
        out
    }

    /// Component-wise difference, None if any entry would go negative.
    pub fn checked_sub(&self, other: &Expo) -> Option<Expo> {
        let mut out = *self;
        for k in 0..MAXV {
            out.xs[k] = out.xs[k].checked_sub(other.xs[k])?;
            out.ts[k] = out.ts[k].checked_sub(other.ts[k])?;
        }
        Some(out)
    }

    pub fn x_degree(&self) -> u32 {
        self.xs.iter().map(|&e| e as u32).sum()
    }

    pub fn t_degree(&self) -> u32 {
        self.ts.iter().map(|&e| e as u32).sum()
    }

    pub fn joint_degree(&self) -> u32 {
        self.x_degree() + self.t_degree()
    }

    /// Largest i with x_i present, or 0.
    pub fn max_x(&self) -> usize {
        (1..=MAXV).rev().find(|&i| self.xs[i - 1] > 0).unwrap_or(0)
    }

    pub fn max_t(&self) -> usize {
        (1..=MAXV).rev().find(|&i| self.ts[i - 1] > 0).unwrap_or(0)
    }
}

impl fmt::Debug for Expo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, &e) in self.xs.iter().enumerate() {
            if e > 0 {
                parts.push(format!("x{}^{}", k + 1, e));
            }
        }
        for (k, &e) in self.ts.iter().enumerate() {
            if e > 0 {
                parts.push(format!("t{}^{}", k + 1, e));
            }
        }
        let body = if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        };
        write!(f, "{body}")
    }
}

/// Integer-coefficient polynomial in x1..x16, t1..t16.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Expo, BigInt>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn one() -> MPoly {
        MPoly::from_int(1)
    }

    pub fn from_int(c: i64) -> MPoly {
        MPoly::monomial(Expo::unit(), BigInt::from(c))
    }

    pub fn monomial(e: Expo, c: BigInt) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MPoly { terms }
    }

    pub fn x(i: usize) -> MPoly {
        MPoly::monomial(Expo::x(i), BigInt::one())
    }

    pub fn t(i: usize) -> MPoly {
        MPoly::monomial(Expo::t(i), BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Expo) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Leading term in the lex order (all x before all t).
    pub fn leading(&self) -> Option<(&Expo, &BigInt)> {
        self.terms.last_key_value()
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(Expo::x_degree).max().unwrap_or(0)
    }

    pub fn t_degree(&self) -> u32 {
        self.terms.keys().map(Expo::t_degree).max().unwrap_or(0)
    }

    pub fn joint_degree(&self) -> u32 {
        self.terms.keys().map(Expo::joint_degree).max().unwrap_or(0)
    }

    pub fn max_x(&self) -> usize {
        self.terms.keys().map(Expo::max_x).max().unwrap_or(0)
    }

    pub fn max_t(&self) -> usize {
        self.terms.keys().map(Expo::max_t).max().unwrap_or(0)
    }

    pub fn is_t_only(&self) -> bool {
        self.max_x() == 0
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Expo::joint_degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn insert_term(&mut self, e: Expo, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.insert_term(ea.add(eb), ca * cb);
            }
        }
        out
    }

    pub fn mul_int(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> MPoly {
        let mut base = self.clone();
        let mut out = MPoly::one();
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Exact division: Some(q) with self = q * d, or None if d does not
    /// divide self. Single-divisor reduction in the lex order.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (de, dc) = d.leading()?;
        let (de, dc) = (*de, dc.clone());
        let mut rem = self.clone();
        let mut q = MPoly::zero();
        while let Some((re, rc)) = rem.leading() {
            let e = re.checked_sub(&de)?;
            let (c, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let piece = MPoly::monomial(e, c);
            rem = rem.sub(&piece.mul(d));
            q = q.add(&piece);
        }
        Some(q)
    }

    /// Applies a monomial-to-monomial exponent map (a variable renaming or
    /// merge), combining collisions.
    pub fn map_monomials(&self, f: impl Fn(&Expo) -> Expo) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            out.insert_term(f(e), c.clone());
        }
        out
    }

    /// Simultaneous substitution: x_i := xv[i-1], t_i := tv[i-1] where
    /// given; None entries and indices past the slice end keep the
    /// variable.
    pub fn subst_all(&self, xv: &[Option<MPoly>], tv: &[Option<MPoly>]) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let mut acc = MPoly::monomial(kept_expo(e, xv, tv), c.clone());
            for (k, slot) in xv.iter().enumerate() {
                if let Some(v) = slot {
                    let exp = e.xs[k] as u32;
                    if exp > 0 {
                        acc = acc.mul(&v.pow(exp));
                    }
                }
            }
            for (k, slot) in tv.iter().enumerate() {
                if let Some(v) = slot {
                    let exp = e.ts[k] as u32;
                    if exp > 0 {
                        acc = acc.mul(&v.pow(exp));
                    }
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Keeps only terms the predicate accepts.
    pub fn filter_terms(&self, keep: impl Fn(&Expo) -> bool) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn parse(s: &str) -> Result<MPoly, PolyError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PolyError::Parse(String::new()));
        }
        let mut out = MPoly::zero();
        let mut rest = s;
        let mut sign = BigInt::one();
        // peel a leading sign if present
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        loop {
            let split = rest.find(['+', '-']);
            let (chunk, tail) = match split {
                Some(p) => (&rest[..p], &rest[p..]),
                None => (rest, ""),
            };
            out = out.add(&parse_term(chunk.trim(), &sign)?);
            if tail.is_empty() {
                return Ok(out);
            }
            sign = if tail.starts_with('-') {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            rest = tail[1..].trim_start();
        }
    }
}

// the part of an exponent whose variables are not being substituted
fn kept_expo(e: &Expo, xv: &[Option<MPoly>], tv: &[Option<MPoly>]) -> Expo {
    let mut kept = *e;
    for (k, slot) in xv.iter().enumerate() {
        if slot.is_some() {
            kept.xs[k] = 0;
        }
    }
    for (k, slot) in tv.iter().enumerate() {
        if slot.is_some() {
            kept.ts[k] = 0;
        }
    }
    kept
}

fn parse_term(chunk: &str, sign: &BigInt) -> Result<MPoly, PolyError> {
    if chunk.is_empty() {
        return Err(PolyError::Parse(chunk.to_string()));
    }
    let mut coef = sign.clone();
    let mut expo = Expo::unit();
    for factor in chunk.split('*') {
        let f = factor.trim();
        if f.is_empty() {
            return Err(PolyError::Parse(chunk.to_string()));
        }
        if f.chars().all(|c| c.is_ascii_digit()) {
            let n: BigInt = f.parse().map_err(|_| PolyError::Parse(f.to_string()))?;
            coef *= n;
            continue;
        }
        let (kind, rest) = f.split_at(1);
        let (idx_str, exp_str) = match rest.split_once('^') {
            Some((a, b)) => (a, b),
            None => (rest, "1"),
        };
        let idx: usize = idx_str.parse().map_err(|_| PolyError::Parse(f.to_string()))?;
        let exp: u8 = exp_str.parse().map_err(|_| PolyError::Parse(f.to_string()))?;
        if !(1..=MAXV).contains(&idx) {
            return Err(PolyError::VarRange(idx));
        }
        match kind {
            "x" => expo.xs[idx - 1] += exp,
            "t" => expo.ts[idx - 1] += exp,
            _ => return Err(PolyError::Parse(f.to_string())),
        }
    }
    Ok(MPoly::monomial(expo, coef))
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts = Vec::new();
            if !mag.is_one() || e.is_unit() {
                parts.push(mag.to_string());
            }
            for (i, &exp) in e.xs.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => parts.push(format!("x{}", i + 1)),
                    _ => parts.push(format!("x{}^{}", i + 1, exp)),
                }
            }
            for (i, &exp) in e.ts.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => parts.push(format!("t{}", i + 1)),
                    _ => parts.push(format!("t{}^{}", i + 1, exp)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coef: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    xexp: Vec<u8>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    texp: Vec<u8>,
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let reprs: Vec<TermRepr> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut xexp = e.xs.to_vec();
                while xexp.last() == Some(&0) {
                    xexp.pop();
                }
                let mut texp = e.ts.to_vec();
                while texp.last() == Some(&0) {
                    texp.pop();
                }
                TermRepr {
                    coef: c.to_string(),
                    xexp,
                    texp,
                }
            })
            .collect();
        reprs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<MPoly, D::Error> {
        use serde::de::Error;
        let reprs = Vec::<TermRepr>::deserialize(d)?;
        let mut out = MPoly::zero();
        for r in reprs {
            if r.xexp.len() > MAXV || r.texp.len() > MAXV {
                return Err(D::Error::custom("too many variables"));
            }
            let mut e = Expo::unit();
            e.xs[..r.xexp.len()].copy_from_slice(&r.xexp);
            e.ts[..r.texp.len()].copy_from_slice(&r.texp);
            let c: BigInt = r
                .coef
                .parse()
                .map_err(|_| D::Error::custom("bad coefficient"))?;
            out.insert_term(e, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        MPoly::parse(s).unwrap()
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let samples = [
            "x1 - t1",
            "x1^2 + 2*x1*x2 - 3*t4",
            "-x3 + 5",
            "0",
            "7",
            "x1*t1 - t1^2",
        ];
        for s in samples {
            let poly = p(s);
            assert_eq!(poly.to_string(), s);
            assert_eq!(p(&poly.to_string()), poly);
        }
        assert_eq!(p("t2 + x1"), p("x1 + t2"));
        assert!(MPoly::parse("x0").is_err());
        assert!(MPoly::parse("y1").is_err());
        assert!(MPoly::parse("x1 ++ 2").is_err());
    }

    #[test]
    fn ring_identities() {
        let a = p("x1 + t2");
        let b = p("x1 - t2");
        assert_eq!(a.mul(&b), p("x1^2 - t2^2"));
        assert_eq!(a.sub(&a), MPoly::zero());
        assert_eq!(a.pow(2), p("x1^2 + 2*x1*t2 + t2^2"));
        assert_eq!(a.pow(0), MPoly::one());
        assert_eq!(MPoly::zero().mul(&a), MPoly::zero());
    }

    #[test]
    fn exact_division() {
        let d = p("x1 - t1");
        let f = p("x1^2 - t1^2");
        assert_eq!(f.div_exact(&d), Some(p("x1 + t1")));
        assert_eq!(p("x1^2 - t2^2").div_exact(&d), None);
        assert_eq!(MPoly::zero().div_exact(&d), Some(MPoly::zero()));
        // multivariate: (x1+x2-t1-t2) stays prime to (x1-t1)
        assert_eq!(p("x1 + x2 - t1 - t2").div_exact(&d), None);
        let prod = p("x1 + x2 - t1 - t2").mul(&d).mul(&d);
        assert_eq!(
            prod.div_exact(&d.mul(&d)),
            Some(p("x1 + x2 - t1 - t2"))
        );
    }

    #[test]
    fn substitution() {
        let f = p("x1^2*t1 + x2");
        // x1 := t3
        let g = f.subst_all(&[Some(MPoly::t(3))], &[]);
        assert_eq!(g, p("t3^2*t1 + x2"));
        // simultaneous swap x1 <-> x2 leaves no aliasing artifacts
        let h = p("x1 - x2").subst_all(&[Some(MPoly::x(2)), Some(MPoly::x(1))], &[]);
        assert_eq!(h, p("x2 - x1"));
        // t1 := t1 + t16 translation
        let tr = p("t2 - t1").subst_all(
            &[],
            &[
                Some(p("t1 + t16")),
                Some(p("t2 + t16")),
            ],
        );
        assert_eq!(tr, p("t2 - t1"));
    }

    #[test]
    fn degrees_and_leading() {
        let f = p("x1*t2^2 + x2^2*t1");
        assert_eq!(f.x_degree(), 2);
        assert_eq!(f.t_degree(), 2);
        assert_eq!(f.joint_degree(), 3);
        assert!(f.is_homogeneous());
        assert!(!p("x1 + 1").is_homogeneous());
        let (e, _) = f.leading().unwrap();
        assert_eq!(e.x_degree(), 1);
        assert_eq!(f.max_x(), 2);
        assert_eq!(f.max_t(), 2);
    }

    #[test]
    fn serde_roundtrip() {
        let f = p("3*x1^2*t3 - t1 + 4");
        let js = serde_json::to_string(&f).unwrap();
        let back: MPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
        assert!(js.contains("\"coef\":\"3\""));
    }
}
