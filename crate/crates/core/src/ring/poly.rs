use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::RingError;

/// Exponent tuple of one monomial: `t1..tr` exponents followed by the `u`
/// exponent. Total order puts `u` most significant so that polynomials
/// serialize leading-`u`-term first.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn zeros(arity: usize) -> Self {
        ExponentVector(vec![0; arity])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn u_exp(&self) -> i64 {
        *self.0.last().expect("empty exponent vector")
    }

    pub fn dot(&self, class: &CohomologyClass) -> i64 {
        assert_eq!(self.0.len(), class.0.len());
        self.0.iter().zip(&class.0).map(|(e, c)| e * c).sum()
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        match self.u_exp().cmp(&other.u_exp()) {
            Ordering::Equal => self.0[..self.0.len() - 1].cmp(&other.0[..other.0.len() - 1]),
            ord => ord,
        }
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Integral cohomology class `(s1..sr, y)` pairing coordinatewise with the
/// variables `(t1..tr, u)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyClass(pub Vec<i64>);

impl CohomologyClass {
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == 0)
    }
}

/// Variable names used for display and parsing. The `u` name is last.
#[derive(Clone, Debug)]
pub struct VarNames(pub Vec<String>);

impl VarNames {
    /// `t` for a single deck variable, `t1..tr` otherwise, then `u`.
    pub fn default_for(arity: usize) -> Self {
        let r = arity.saturating_sub(1);
        let mut names = Vec::with_capacity(arity);
        if r == 1 {
            names.push("t".to_string());
        } else {
            for i in 1..=r {
                names.push(format!("t{i}"));
            }
        }
        if arity > 0 {
            names.push("u".to_string());
        }
        VarNames(names)
    }

    /// Univariate display variable for valuations.
    pub fn x() -> Self {
        VarNames(vec!["X".to_string()])
    }

    /// Univariate deck variable, used by the Burau representation.
    pub fn t() -> Self {
        VarNames(vec!["t".to_string()])
    }
}

/// Sparse multivariate Laurent polynomial over the integers. No zero
/// coefficients are stored and all exponent vectors share the arity.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentPoly {
    arity: usize,
    terms: BTreeMap<ExponentVector, i128>,
}

impl LaurentPoly {
    pub fn zero(arity: usize) -> Self {
        LaurentPoly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: i128) -> Self {
        let mut p = Self::zero(arity);
        if c != 0 {
            p.terms.insert(ExponentVector::zeros(arity), c);
        }
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, 1)
    }

    pub fn monomial(arity: usize, exps: Vec<i64>, coef: i128) -> Self {
        assert_eq!(exps.len(), arity);
        let mut p = Self::zero(arity);
        if coef != 0 {
            p.terms.insert(ExponentVector(exps), coef);
        }
        p
    }

    /// The deck variable `t_{index}` (0-based among the first `arity-1`).
    pub fn t_var(arity: usize, index: usize, exp: i64) -> Self {
        assert!(index + 1 < arity);
        let mut exps = vec![0; arity];
        exps[index] = exp;
        Self::monomial(arity, exps, 1)
    }

    /// The fibration variable `u^exp`.
    pub fn u_var(arity: usize, exp: i64) -> Self {
        let mut exps = vec![0; arity];
        exps[arity - 1] = exp;
        Self::monomial(arity, exps, 1)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &i128)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn coefficient(&self, exps: &ExponentVector) -> i128 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    fn insert_term(&mut self, exps: ExponentVector, coef: i128) {
        if coef == 0 {
            return;
        }
        let entry = self.terms.entry(exps).or_insert(0);
        *entry = entry.checked_add(coef).expect("coefficient overflow");
        if *entry == 0 {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| **v == 0)
                .map(|(k, _)| k.clone())
                .unwrap();
            self.terms.remove(&key);
        }
    }

    fn check_arity(&self, other: &Self) -> Result<(), RingError> {
        if self.arity != other.arity {
            Err(RingError::ArityMismatch(self.arity, other.arity))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), -*c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -*c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<i64> =
                    ea.0.iter().zip(&eb.0).map(|(x, y)| x + y).collect();
                out.insert_term(
                    ExponentVector(exps),
                    ca.checked_mul(*cb).expect("coefficient overflow"),
                );
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: i128) -> Self {
        let mut out = Self::zero(self.arity);
        if c != 0 {
            for (e, v) in &self.terms {
                out.terms.insert(e.clone(), v * c);
            }
        }
        out
    }

    /// Multiplies by the monomial with the given exponent shifts.
    pub fn shift(&self, delta: &[i64]) -> Self {
        assert_eq!(delta.len(), self.arity);
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            let exps: Vec<i64> = e.0.iter().zip(delta).map(|(x, d)| x + d).collect();
            out.terms.insert(ExponentVector(exps), *c);
        }
        out
    }

    /// True when no term involves the `u` variable.
    pub fn is_u_free(&self) -> bool {
        self.terms.keys().all(|e| e.u_exp() == 0)
    }

    /// Specializes every deck variable `t_i := 1`, keeping `u`.
    pub fn specialize_t_to_one(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(1);
        for (e, c) in &self.terms {
            out.insert_term(ExponentVector(vec![e.u_exp()]), *c);
        }
        out
    }

    /// Valuation at an integral class: each exponent vector is replaced by
    /// its pairing with the class, colliding terms summed. Returns a
    /// univariate polynomial (arity 1).
    pub fn valuate(&self, class: &CohomologyClass) -> Result<LaurentPoly, RingError> {
        if class.arity() != self.arity {
            return Err(RingError::ArityMismatch(self.arity, class.arity()));
        }
        let mut out = LaurentPoly::zero(1);
        for (e, c) in &self.terms {
            out.insert_term(ExponentVector(vec![e.dot(class)]), *c);
        }
        Ok(out)
    }

    /// Per-variable minimal exponents over the support.
    pub fn min_exponents(&self) -> Option<Vec<i64>> {
        if self.is_zero() {
            return None;
        }
        let mut mins = vec![i64::MAX; self.arity];
        for e in self.terms.keys() {
            for (m, x) in mins.iter_mut().zip(&e.0) {
                *m = (*m).min(*x);
            }
        }
        Some(mins)
    }

    /// Divides by the monomial gcd (shifting every variable's minimal
    /// exponent to zero) and normalizes the sign so the greatest term in the
    /// term order has a positive coefficient. Idempotent; the zero
    /// polynomial is rejected.
    pub fn canonical_unit_form(&self) -> Result<Self, RingError> {
        let mins = self
            .min_exponents()
            .ok_or(RingError::ZeroPolynomial("canonical unit form"))?;
        let delta: Vec<i64> = mins.iter().map(|m| -m).collect();
        let shifted = self.shift(&delta);
        let lead = *shifted.terms.values().next_back().unwrap();
        Ok(if lead < 0 { shifted.neg() } else { shifted })
    }

    /// Coefficients of a univariate polynomial after shifting the minimal
    /// exponent to zero, constant term first.
    pub fn univariate_coeffs(&self) -> Result<Vec<i128>, RingError> {
        if self.arity != 1 {
            return Err(RingError::NotUnivariate(self.arity));
        }
        if self.is_zero() {
            return Err(RingError::ZeroPolynomial("coefficient extraction"));
        }
        let min = self.min_exponents().unwrap()[0];
        let max = self.terms.keys().next_back().unwrap().0[0];
        let mut coeffs = vec![0i128; (max - min) as usize + 1];
        for (e, c) in &self.terms {
            coeffs[(e.0[0] - min) as usize] = *c;
        }
        Ok(coeffs)
    }

    pub fn to_string_with(&self, names: &VarNames) -> String {
        assert_eq!(names.0.len(), self.arity);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = *c < 0;
            let mag = c.unsigned_abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, exp) in names.0.iter().zip(&e.0) {
                match exp {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{exp}")),
                }
            }
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if mag != 1 {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Groups terms by `u`-power, descending, with parenthesized deck
    /// coefficients. This is the presentation used by the CLI.
    pub fn to_u_grouped_string(&self, names: &VarNames) -> String {
        assert_eq!(names.0.len(), self.arity);
        if self.is_zero() {
            return "0".to_string();
        }
        let u_name = names.0.last().unwrap().clone();
        let coeff_names = VarNames(names.0[..self.arity - 1].to_vec());
        let mut by_u: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let entry = by_u
                .entry(e.u_exp())
                .or_insert_with(|| LaurentPoly::zero(self.arity - 1));
            entry.insert_term(ExponentVector(e.0[..self.arity - 1].to_vec()), *c);
        }
        let mut out = String::new();
        for (i, (uexp, coeff)) in by_u.iter().rev().enumerate() {
            let single = coeff.num_terms() == 1;
            let all_negative = coeff.terms.values().all(|c| *c < 0);
            let (coeff, neg) = if all_negative {
                (coeff.neg(), true)
            } else {
                (coeff.clone(), false)
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_str = coeff.to_string_with(&coeff_names);
            if *uexp == 0 {
                if single {
                    out.push_str(&coeff_str);
                } else {
                    out.push_str(&format!("({coeff_str})"));
                }
            } else {
                let u_str = if *uexp == 1 {
                    u_name.clone()
                } else {
                    format!("{u_name}^{uexp}")
                };
                if coeff_str == "1" {
                    out.push_str(&u_str);
                } else if single {
                    out.push_str(&format!("{coeff_str}*{u_str}"));
                } else {
                    out.push_str(&format!("({coeff_str})*{u_str}"));
                }
            }
        }
        out
    }

    /// Parses the flat term grammar produced by [`to_string_with`] with the
    /// given variable names.
    pub fn parse(input: &str, names: &VarNames) -> Result<Self, RingError> {
        let arity = names.0.len();
        let mut poly = LaurentPoly::zero(arity);
        let bytes = input.as_bytes();
        let mut pos = 0usize;
        let err = |at: usize, msg: &str| RingError::Parse { at, msg: msg.to_string() };
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(err(pos, "empty input"));
        }
        if input[pos..].trim() == "0" {
            return Ok(poly);
        }
        let mut first = true;
        while pos < bytes.len() {
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            let mut sign = 1i128;
            match bytes[pos] {
                b'+' => {
                    pos += 1;
                }
                b'-' => {
                    sign = -1;
                    pos += 1;
                }
                _ if first => {}
                _ => return Err(err(pos, "expected '+' or '-'")),
            }
            first = false;
            skip_ws(&mut pos);
            let mut coef: i128 = 1;
            let mut saw_number = false;
            if pos < bytes.len() && bytes[pos].is_ascii_digit() {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                coef = input[start..pos]
                    .parse()
                    .map_err(|_| err(start, "bad integer"))?;
                saw_number = true;
            }
            let mut exps = vec![0i64; arity];
            let mut saw_var = false;
            loop {
                let save = pos;
                skip_ws(&mut pos);
                if (saw_number || saw_var) && pos < bytes.len() && bytes[pos] == b'*' {
                    pos += 1;
                    skip_ws(&mut pos);
                } else if saw_number && !saw_var && save == pos {
                    // allow `2t` style without '*'
                } else if saw_var || saw_number {
                    // next factor must follow a '*'; otherwise term ends
                    if !(pos < bytes.len() && bytes[pos].is_ascii_alphabetic() && !saw_var && !saw_number)
                    {
                        pos = save;
                    }
                }
                if pos >= bytes.len() || !bytes[pos].is_ascii_alphabetic() {
                    pos = save;
                    break;
                }
                let start = pos;
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric()) {
                    pos += 1;
                }
                let name = &input[start..pos];
                let idx = names
                    .0
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| err(start, "unknown variable"))?;
                let mut exp = 1i64;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let estart = pos;
                    if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
                        pos += 1;
                    }
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    exp = input[estart..pos]
                        .parse()
                        .map_err(|_| err(estart, "bad exponent"))?;
                }
                exps[idx] += exp;
                saw_var = true;
            }
            if !saw_number && !saw_var {
                return Err(err(pos, "expected term"));
            }
            poly.insert_term(ExponentVector(exps), sign * coef);
        }
        Ok(poly)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&VarNames::default_for(self.arity)))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
