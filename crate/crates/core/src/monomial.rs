//! Monomials and monomial ideals in `k[x1, ..., xn]`.
//!
//! Every ideal is stored by its minimal generating set, sorted in the
//! degree-lexicographic order of [`deglex_compare`]. Operations never mutate;
//! they return freshly minimalized ideals.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest exponent any construction may produce unless a caller overrides it.
pub const DEFAULT_EXPONENT_CAP: u32 = 64;

/// A monomial `x^a`, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn new(exps: impl Into<Vec<u32>>) -> Self {
        Monomial {
            exps: exps.into().into_boxed_slice(),
        }
    }

    /// The unit monomial `1`.
    pub fn one(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    /// The variable `x_{i+1}` (indices are 0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial::new(exps)
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Componentwise `self <= other`. Monomials of different arity never divide.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.nvars() == other.nvars() && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u32::max)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u32::min)
    }

    /// `self / gcd(self, f)`, the generator contributed to a colon ideal `⟨self⟩ : f`.
    pub fn colon(&self, f: &Monomial) -> Monomial {
        self.zip_with(f, |a, b| a.saturating_sub(b))
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| self.zip_with(other, |a, b| a - b))
    }

    /// Product, rejecting any exponent above `cap`.
    pub fn checked_mul(&self, other: &Monomial, cap: u32) -> Result<Monomial> {
        let mut exps = Vec::with_capacity(self.nvars());
        for (&a, &b) in self.exps.iter().zip(other.exps.iter()) {
            let e = a as u64 + b as u64;
            if e > cap as u64 {
                return Err(Error::ExponentCap { exponent: e, cap });
            }
            exps.push(e as u32);
        }
        Ok(Monomial::new(exps))
    }

    /// Bitmask of the variables with a positive exponent.
    pub fn support(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |mask, (i, _)| mask | (1 << i))
    }

    /// Relabels variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        let mut exps = vec![0; self.nvars()];
        for (i, &e) in self.exps.iter().enumerate() {
            exps[perm[i]] = e;
        }
        Monomial::new(exps)
    }

    fn zip_with(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| f(a, b))
                .collect::<Vec<_>>(),
        )
    }

    /// Parses `x1^2*x3` style text (or `1`) over `nvars` variables.
    pub fn parse(text: &str, nvars: usize) -> Result<Monomial> {
        Self::parse_line(text, nvars, 0)
    }

    fn parse_line(text: &str, nvars: usize, line: usize) -> Result<Monomial> {
        let text = text.trim();
        let mut exps = vec![0u32; nvars];
        if text == "1" {
            return Ok(Monomial::new(exps));
        }
        if text.is_empty() {
            return Err(Error::parse(line, "empty monomial"));
        }
        for factor in text.split('*') {
            let rest = factor
                .strip_prefix('x')
                .ok_or_else(|| Error::parse(line, format!("expected `x<i>`, found `{factor}`")))?;
            let (index, exponent) = match rest.split_once('^') {
                Some((i, e)) => (i, Some(e)),
                None => (rest, None),
            };
            let index: usize = parse_digits(index)
                .ok_or_else(|| Error::parse(line, format!("bad variable index in `{factor}`")))?;
            if index == 0 || index > nvars {
                return Err(Error::parse(
                    line,
                    format!("variable x{index} outside x1..x{nvars}"),
                ));
            }
            let exponent: u32 = match exponent {
                Some(e) => parse_digits(e)
                    .filter(|&e| e >= 1)
                    .ok_or_else(|| Error::parse(line, format!("bad exponent in `{factor}`")))?,
                None => 1,
            };
            exps[index - 1] = exps[index - 1]
                .checked_add(exponent)
                .ok_or_else(|| Error::parse(line, "exponent overflow"))?;
        }
        Ok(Monomial::new(exps))
    }
}

fn parse_digits<T: std::str::FromStr>(s: &str) -> Option<T> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Degree-lexicographic order: lower total degree first; among equal degrees,
/// scan from the last variable down and put the larger exponent first.
///
/// With this tie-break the generators of the complete-graph ideals come out
/// in the row order `x_1`-deficient, `x_2`-deficient, ... within each degree.
pub fn deglex_compare(a: &Monomial, b: &Monomial) -> Ordering {
    a.nvars()
        .cmp(&b.nvars())
        .then_with(|| a.degree().cmp(&b.degree()))
        .then_with(|| {
            for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
                if x != y {
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        })
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        deglex_compare(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_arity(a: &Monomial, b: &Monomial) -> Result<()> {
    if a.nvars() != b.nvars() {
        return Err(Error::Dimension {
            expected: a.nvars(),
            found: b.nvars(),
        });
    }
    Ok(())
}

/// Dimension-checked divisibility test.
pub fn divides(a: &Monomial, b: &Monomial) -> Result<bool> {
    check_arity(a, b)?;
    Ok(a.divides(b))
}

/// Dimension-checked least common multiple.
pub fn lcm(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    check_arity(a, b)?;
    Ok(a.lcm(b))
}

/// A monomial ideal, held as its minimal generators in deglex order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// The ideal generated by `gens`, reduced to its inclusion-minimal generators.
    pub fn minimalize(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::Invalid("polynomial ring needs at least one variable".into()));
        }
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        if let Some(bad) = all.iter().find(|m| m.nvars() != nvars) {
            return Err(Error::Dimension {
                expected: nvars,
                found: bad.nvars(),
            });
        }
        all.sort_unstable();
        all.dedup();
        Ok(MonomialIdeal {
            nvars,
            gens: minimal_sorted(all),
        })
    }

    pub fn zero(nvars: usize) -> Result<Self> {
        Self::minimalize(nvars, std::iter::empty())
    }

    pub fn unit(nvars: usize) -> Result<Self> {
        Self::minimalize(nvars, [Monomial::one(nvars)])
    }

    /// `⟨x_i, x_j⟩` for 0-based `i`, `j`.
    pub fn prime_pair(nvars: usize, i: usize, j: usize) -> Result<Self> {
        if i >= nvars || j >= nvars {
            return Err(Error::Invalid(format!("variable index out of range for {nvars} variables")));
        }
        Self::minimalize(nvars, [Monomial::var(nvars, i), Monomial::var(nvars, j)])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Same as [`is_zero`](Self::is_zero): no generators.
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.gens.first().map(Monomial::degree)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.gens.last().map(Monomial::degree)
    }

    /// The common generator degree, if the ideal is nonzero and equigenerated.
    pub fn equigenerated_degree(&self) -> Option<u32> {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) if lo == hi => Some(lo),
            _ => None,
        }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Dimension-checked membership.
    pub fn membership(&self, m: &Monomial) -> Result<bool> {
        if m.nvars() != self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: m.nvars(),
            });
        }
        Ok(self.contains(m))
    }

    fn check_same_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_same_ring(other)?;
        let lcms = self
            .gens
            .iter()
            .flat_map(|f| other.gens.iter().map(move |g| f.lcm(g)));
        Self::minimalize(self.nvars, lcms)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_same_ring(other)?;
        Self::minimalize(self.nvars, self.gens.iter().chain(other.gens.iter()).cloned())
    }

    pub fn product(&self, other: &MonomialIdeal, cap: u32) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut products = Vec::with_capacity(self.len() * other.len());
        for f in &self.gens {
            for g in &other.gens {
                products.push(f.checked_mul(g, cap)?);
            }
        }
        Self::minimalize(self.nvars, products)
    }

    /// `I^t` with the default exponent cap.
    pub fn power(&self, t: u32) -> Result<Self> {
        self.power_capped(t, DEFAULT_EXPONENT_CAP)
    }

    /// `I^t`, minimalizing after every multiplication. `I^0` is the unit ideal.
    pub fn power_capped(&self, t: u32, cap: u32) -> Result<Self> {
        let mut acc = Self::unit(self.nvars)?;
        for _ in 0..t {
            acc = acc.product(self, cap)?;
        }
        Ok(acc)
    }

    /// The colon ideal `I : f`.
    pub fn colon(&self, f: &Monomial) -> Result<Self> {
        if f.nvars() != self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: f.nvars(),
            });
        }
        Self::minimalize(self.nvars, self.gens.iter().map(|g| g.colon(f)))
    }

    /// `I_⟨d⟩`: the ideal generated by every degree-`d` monomial of `I`.
    pub fn component(&self, d: u32) -> Result<Self> {
        self.component_capped(d, DEFAULT_EXPONENT_CAP)
    }

    pub fn component_capped(&self, d: u32, cap: u32) -> Result<Self> {
        let mut found: HashSet<Monomial> = HashSet::new();
        for g in self.gens.iter().filter(|g| g.degree() <= d) {
            let mut err = None;
            for_each_monomial_of_degree(self.nvars, d - g.degree(), &mut |m| {
                if err.is_some() {
                    return;
                }
                match g.checked_mul(m, cap) {
                    Ok(p) => {
                        found.insert(p);
                    }
                    Err(e) => err = Some(e),
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        let mut gens: Vec<Monomial> = found.into_iter().collect();
        gens.sort_unstable();
        // Distinct monomials of one degree never divide each other.
        Ok(MonomialIdeal {
            nvars: self.nvars,
            gens,
        })
    }

    /// Relabels variables by `perm` (`x_i ↦ x_{perm[i]}`).
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut gens: Vec<Monomial> = self.gens.iter().map(|g| g.permute(perm)).collect();
        gens.sort_unstable();
        MonomialIdeal {
            nvars: self.nvars,
            gens,
        }
    }

    /// Histogram of generator degrees as `(degree, count)` pairs.
    pub fn degree_histogram(&self) -> Vec<(u32, usize)> {
        let mut hist: Vec<(u32, usize)> = Vec::new();
        for g in &self.gens {
            let d = g.degree();
            match hist.last_mut() {
                Some((last, count)) if *last == d => *count += 1,
                _ => hist.push((d, 1)),
            }
        }
        hist
    }

    /// Parses the ideal file format: `vars <n>` followed by one monomial per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (first_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `vars <n>` header"))?;
        let nvars = header
            .strip_prefix("vars")
            .map(str::trim)
            .and_then(parse_digits::<usize>)
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::parse(first_no, "expected `vars <n>` with n >= 1"))?;
        let gens = lines
            .map(|(no, l)| Monomial::parse_line(l, nvars, no))
            .collect::<Result<Vec<_>>>()?;
        Self::minimalize(nvars, gens)
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("vars {}\n", self.nvars);
        for g in &self.gens {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("⟩")
    }
}

/// Keeps the members of a deglex-sorted, deduplicated list that no earlier member divides.
fn minimal_sorted(sorted: Vec<Monomial>) -> Vec<Monomial> {
    let mut kept: Vec<Monomial> = Vec::with_capacity(sorted.len());
    for m in sorted {
        if !kept.iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    kept
}

/// Calls `f` on every monomial of total degree `d` in `nvars` variables.
pub fn for_each_monomial_of_degree(nvars: usize, d: u32, f: &mut dyn FnMut(&Monomial)) {
    fn rec(exps: &mut Vec<u32>, pos: usize, left: u32, f: &mut dyn FnMut(&Monomial)) {
        if pos + 1 == exps.len() {
            exps[pos] = left;
            f(&Monomial::new(exps.clone()));
            return;
        }
        for e in (0..=left).rev() {
            exps[pos] = e;
            rec(exps, pos + 1, left - e, f);
        }
    }
    if nvars == 0 {
        return;
    }
    let mut exps = vec![0; nvars];
    rec(&mut exps, 0, d, f);
}

/// Minimal generators in a caller-chosen sequence `f_1, ..., f_r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderedGenerators {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl OrderedGenerators {
    /// Validates that the entries are distinct, share one arity and are
    /// minimal in the ideal they generate.
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Result<Self> {
        if let Some(bad) = gens.iter().find(|m| m.nvars() != nvars) {
            return Err(Error::Dimension {
                expected: nvars,
                found: bad.nvars(),
            });
        }
        for (i, a) in gens.iter().enumerate() {
            for (j, b) in gens.iter().enumerate() {
                if i != j && a.divides(b) {
                    return Err(Error::Contract(if a == b {
                        format!("duplicate generator {a}")
                    } else {
                        format!("{a} divides {b}, so {b} is not a minimal generator")
                    }));
                }
            }
        }
        Ok(OrderedGenerators { nvars, gens })
    }

    /// The minimal generators of `ideal` in its stored deglex order.
    pub fn deglex(ideal: &MonomialIdeal) -> Self {
        OrderedGenerators {
            nvars: ideal.nvars(),
            gens: ideal.generators().to_vec(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn as_slice(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_degree_ordered(&self) -> bool {
        self.gens.windows(2).all(|w| w[0].degree() <= w[1].degree())
    }

    pub fn to_ideal(&self) -> MonomialIdeal {
        let mut gens = self.gens.clone();
        gens.sort_unstable();
        MonomialIdeal {
            nvars: self.nvars,
            gens,
        }
    }
}
