//! Ordinals below epsilon-zero in Cantor normal form.
//!
//! An [`Ordinal`] is a finite sum `w^e1*c1 + ... + w^ek*ck` with strictly
//! decreasing exponents (themselves ordinals) and coefficients >= 1; the
//! empty sum is zero. Comparison, addition and the literal syntax all work
//! on this canonical representation, so equal ordinals are structurally
//! equal.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default ceiling on probe-set enumeration, in members.
pub const DEFAULT_PROBE_LIMIT: usize = 200_000;

/// Maximum `w^(...)` nesting accepted by the parser.
const MAX_PARSE_DEPTH: usize = 128;

/// An ordinal below epsilon-zero, kept in Cantor normal form.
///
/// Invariant: `terms` holds `(exponent, coefficient)` pairs with strictly
/// decreasing exponents and every coefficient >= 1. Zero is the empty list.
/// The derived lexicographic order on that list is exactly the ordinal
/// order, so `Ord` can be derived.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn from_nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(Self::zero(), n)],
            }
        }
    }

    pub fn one() -> Self {
        Self::from_nat(1)
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    /// `w^e` as a single-term normal form.
    pub fn omega_pow(e: Ordinal) -> Self {
        Ordinal { terms: vec![(e, 1)] }
    }

    /// `w^e * c`; zero when `c == 0`.
    pub fn omega_pow_mul(e: Ordinal, c: u64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Ordinal { terms: vec![(e, c)] }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True exactly for nonzero ordinals whose final exponent is positive.
    pub fn is_limit(&self) -> bool {
        match self.terms.last() {
            None => false,
            Some((e, _)) => !e.is_zero(),
        }
    }

    pub fn is_successor(&self) -> bool {
        !self.is_zero() && !self.is_limit()
    }

    /// The finite value, if this ordinal is below omega.
    pub fn natural(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    /// Splits off the final normal-form term: `self = prefix + w^e * c`.
    /// Returns `None` on zero.
    pub(crate) fn split_last_term(&self) -> Option<(Ordinal, &Ordinal, u64)> {
        let (e, c) = self.terms.last()?;
        let prefix = Ordinal {
            terms: self.terms[..self.terms.len() - 1].to_vec(),
        };
        Some((prefix, e, *c))
    }

    /// Ordinal sum. Left terms below the right-hand leading exponent are
    /// absorbed; equal leading exponents merge coefficients.
    ///
    /// Panics on coefficient overflow, which is unreachable for inputs
    /// below `w * 2^64`-sized coefficients produced by [`Ordinal::parse`].
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some((lead, lead_c)) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> = Vec::new();
        for (e, c) in &self.terms {
            match e.cmp(lead) {
                Ordering::Greater => terms.push((e.clone(), *c)),
                Ordering::Equal | Ordering::Less => break,
            }
        }
        let merged = self
            .terms
            .get(terms.len())
            .filter(|(e, _)| e == lead)
            .map(|(_, c)| *c)
            .unwrap_or(0);
        let c = merged
            .checked_add(*lead_c)
            .expect("ordinal coefficient overflow in add");
        terms.push((lead.clone(), c));
        terms.extend(rhs.terms[1..].iter().cloned());
        Ordinal { terms }
    }

    pub fn successor(&self) -> Ordinal {
        self.add(&Self::one())
    }

    /// Predecessor of a successor ordinal; `None` for zero and limits.
    pub(crate) fn predecessor(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor is nonzero");
        if last.1 > 1 {
            last.1 -= 1;
        } else {
            terms.pop();
        }
        Some(Ordinal { terms })
    }

    /// Left subtraction: the unique `d` with `rhs + d == self`, when
    /// `rhs <= self`.
    pub fn minus(&self, rhs: &Ordinal) -> Option<Ordinal> {
        let mut a = self.terms.as_slice();
        let mut b = rhs.terms.as_slice();
        loop {
            let Some((be, bc)) = b.first() else {
                return Some(Ordinal { terms: a.to_vec() });
            };
            let Some((ae, ac)) = a.first() else {
                return None;
            };
            match ae.cmp(be) {
                Ordering::Greater => return Some(Ordinal { terms: a.to_vec() }),
                Ordering::Less => return None,
                Ordering::Equal => match ac.cmp(bc) {
                    Ordering::Less => return None,
                    Ordering::Greater => {
                        let mut terms = vec![(ae.clone(), ac - bc)];
                        terms.extend(a[1..].iter().cloned());
                        return Some(Ordinal { terms });
                    }
                    Ordering::Equal => {
                        a = &a[1..];
                        b = &b[1..];
                    }
                },
            }
        }
    }

    /// Parses the literal grammar
    /// `ordinal := term ("+" term)*`,
    /// `term := "w" ("^" (nat | "(" ordinal ")"))? ("*" nat)? | nat`.
    /// Whitespace is insignificant; terms in any order canonicalize through
    /// ordinal addition.
    pub fn parse(input: &str) -> Result<Ordinal> {
        let mut p = Parser {
            bytes: input.as_bytes(),
            pos: 0,
        };
        p.skip_ws();
        let value = p.ordinal(0)?;
        p.skip_ws();
        if p.pos < p.bytes.len() {
            return Err(Error::Syntax {
                pos: p.pos,
                msg: format!("unexpected character {:?}", p.bytes[p.pos] as char),
            });
        }
        Ok(value)
    }

    /// Canonical literal: `" + "`-joined terms, `*1`/`^1` omitted,
    /// non-natural exponents parenthesized.
    pub fn format(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            if e.is_zero() {
                out.push_str(&c.to_string());
                continue;
            }
            out.push('w');
            match e.natural() {
                Some(1) => {}
                Some(n) => {
                    out.push('^');
                    out.push_str(&n.to_string());
                }
                None => {
                    out.push_str("^(");
                    out.push_str(&e.format());
                    out.push(')');
                }
            }
            if *c != 1 {
                out.push('*');
                out.push_str(&c.to_string());
            }
        }
        out
    }

    /// Three-way comparison, exposed under the name the rest of the crate
    /// and the CLI use; identical to `Ord::cmp`.
    pub fn compare(&self, rhs: &Ordinal) -> Ordering {
        self.cmp(rhs)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

impl FromStr for Ordinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ordinal::parse(s)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.format())
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Ordinal::parse(&s).map_err(D::Error::custom)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ordinal(&mut self, depth: usize) -> Result<Ordinal> {
        if depth > MAX_PARSE_DEPTH {
            return Err(Error::resource(format!(
                "literal nesting exceeds {MAX_PARSE_DEPTH} levels"
            )));
        }
        let mut acc = self.term(depth)?;
        loop {
            self.skip_ws();
            if !self.eat(b'+') {
                return Ok(acc);
            }
            self.skip_ws();
            acc = acc.add(&self.term(depth)?);
        }
    }

    fn term(&mut self, depth: usize) -> Result<Ordinal> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                self.skip_ws();
                let exponent = if self.eat(b'^') {
                    self.skip_ws();
                    self.power(depth)?
                } else {
                    Ordinal::one()
                };
                self.skip_ws();
                let coefficient = if self.eat(b'*') {
                    self.skip_ws();
                    self.nat()?
                } else {
                    1
                };
                Ok(Ordinal::omega_pow_mul(exponent, coefficient))
            }
            Some(b) if b.is_ascii_digit() => Ok(Ordinal::from_nat(self.nat()?)),
            _ => Err(Error::Syntax {
                pos: self.pos,
                msg: "expected a term ('w' or a natural number)".to_string(),
            }),
        }
    }

    fn power(&mut self, depth: usize) -> Result<Ordinal> {
        if self.eat(b'(') {
            self.skip_ws();
            let inner = self.ordinal(depth + 1)?;
            self.skip_ws();
            if !self.eat(b')') {
                return Err(Error::Syntax {
                    pos: self.pos,
                    msg: "expected ')'".to_string(),
                });
            }
            Ok(inner)
        } else if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            Ok(Ordinal::from_nat(self.nat()?))
        } else {
            Err(Error::Syntax {
                pos: self.pos,
                msg: "expected a natural number or '(' after '^'".to_string(),
            })
        }
    }

    fn nat(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut value: u64 = 0;
        let mut any = false;
        while let Some(b) = self.peek() {
            if !b.is_ascii_digit() {
                break;
            }
            any = true;
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(b - b'0')))
                .ok_or_else(|| {
                    Error::Overflow(format!("number at byte {start} exceeds the 64-bit range"))
                })?;
            self.pos += 1;
        }
        if !any {
            return Err(Error::Syntax {
                pos: self.pos,
                msg: "expected a natural number".to_string(),
            });
        }
        Ok(value)
    }
}

/// A deterministic finite sample of ordinals below a cap.
///
/// Members are exactly the ordinals below `cap` whose normal form, at every
/// nesting level, has depth <= `tier`, at most `tier + 1` terms, and every
/// coefficient <= `tier + 1` (depth of zero is 0; otherwise one more than
/// the deepest exponent). Members are stored in increasing order, and the
/// member set is monotone in `tier`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeSet {
    cap: Ordinal,
    tier: u32,
    members: Vec<Ordinal>,
}

impl ProbeSet {
    /// Enumerates with the default member limit of [`DEFAULT_PROBE_LIMIT`].
    pub fn new(cap: &Ordinal, tier: u32) -> Result<ProbeSet> {
        Self::with_limit(cap, tier, DEFAULT_PROBE_LIMIT)
    }

    pub fn with_limit(cap: &Ordinal, tier: u32, limit: usize) -> Result<ProbeSet> {
        if cap.is_zero() {
            return Err(Error::pre("probe cap must be positive"));
        }
        let mut budget = limit;
        let members = enumerate(cap, tier, tier as usize + 1, &mut budget)?;
        Ok(ProbeSet {
            cap: cap.clone(),
            tier,
            members,
        })
    }

    pub fn cap(&self) -> &Ordinal {
        &self.cap
    }

    pub fn tier(&self) -> u32 {
        self.tier
    }

    pub fn members(&self) -> &[Ordinal] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Ordinal> {
        self.members.iter()
    }
}

/// Ordinals below `cap` with hereditary depth <= `depth`, <= `max_terms`
/// terms and coefficients <= `max_terms` per level, ascending.
fn enumerate(
    cap: &Ordinal,
    depth: u32,
    max_terms: usize,
    budget: &mut usize,
) -> Result<Vec<Ordinal>> {
    if cap.is_zero() {
        return Ok(Vec::new());
    }
    if depth == 0 {
        return charge(budget, vec![Ordinal::zero()]);
    }
    // Exponents usable below cap: all e with w^e < cap, i.e. e < exp_cap.
    let exp_cap = {
        let (lead, _) = &cap.terms()[0];
        if *cap > Ordinal::omega_pow(lead.clone()) {
            lead.successor()
        } else {
            lead.clone()
        }
    };
    let exponents = enumerate(&exp_cap, depth - 1, max_terms, budget)?;
    let max_coeff = max_terms as u64;

    // tails[t] = ordinals with <= t terms over exponents[..i], ascending;
    // rebuilt as i grows so concatenation below stays in normal form.
    let mut tails: Vec<Vec<Ordinal>> = vec![vec![Ordinal::zero()]; max_terms];
    let mut out = vec![Ordinal::zero()];
    for i in 0..exponents.len() {
        let e = &exponents[i];
        'coeff: for c in 1..=max_coeff {
            let lead = Ordinal::omega_pow_mul(e.clone(), c);
            if lead >= *cap {
                break 'coeff;
            }
            for tail in &tails[max_terms - 1] {
                let candidate = concat_term(&lead, tail);
                if candidate >= *cap {
                    break;
                }
                out.push(candidate);
                if out.len() > *budget {
                    return Err(Error::resource(format!(
                        "probe enumeration exceeds the member limit of {budget}"
                    )));
                }
            }
        }
        // Extend the tail tables with ordinals led by exponents[i].
        for t in (1..max_terms).rev() {
            let mut grown = Vec::new();
            for c in 1..=max_coeff {
                let lead = Ordinal::omega_pow_mul(e.clone(), c);
                for tail in &tails[t - 1] {
                    grown.push(concat_term(&lead, tail));
                }
            }
            let (prev, slot) = {
                let len = grown.len() + tails[t].len();
                if len > *budget {
                    return Err(Error::resource(format!(
                        "probe enumeration exceeds the member limit of {budget}"
                    )));
                }
                (grown, t)
            };
            tails[slot].extend(prev);
        }
    }
    Ok(out)
}

fn charge(budget: &mut usize, v: Vec<Ordinal>) -> Result<Vec<Ordinal>> {
    if v.len() > *budget {
        return Err(Error::resource(format!(
            "probe enumeration exceeds the member limit of {budget}"
        )));
    }
    Ok(v)
}

/// `lead + tail` where every exponent of `tail` is strictly below the
/// exponent of the single-term `lead`: plain concatenation.
fn concat_term(lead: &Ordinal, tail: &Ordinal) -> Ordinal {
    let mut terms = lead.terms.clone();
    terms.extend(tail.terms.iter().cloned());
    Ordinal { terms }
}
