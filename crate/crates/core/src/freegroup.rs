//! Free groups on `2g` letters, their integral group rings, Fox free
//! derivatives and abelianization.
//!
//! Letters are signed generator indices: `i` is `x_i` and `-i` is its
//! inverse, with `1 <= i <= rank`. Words are kept freely reduced at all
//! times.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeGroupError {
    #[error("generator index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: i64, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

/// A freely reduced word in the letters `x_1, ..., x_n` and their inverses.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn letter(l: i32) -> Self {
        assert!(l != 0, "letter 0 does not exist");
        Word { letters: vec![l] }
    }

    /// Builds a word from arbitrary letters, reducing as it goes.
    pub fn from_letters<I: IntoIterator<Item = i32>>(letters: I) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Builds a word only if the given letters are already reduced.
    pub fn from_reduced(letters: Vec<i32>) -> Option<Self> {
        if letters.contains(&0) || letters.windows(2).any(|p| p[0] == -p[1]) {
            return None;
        }
        Some(Word { letters })
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index occurring in the word.
    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    fn push(&mut self, l: i32) {
        debug_assert!(l != 0);
        if self.letters.last() == Some(&-l) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    /// Exponent-sum vector of length `rank`.
    pub fn abelianize(&self, rank: usize) -> HVector {
        let mut coords = vec![0i64; rank];
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            coords[i] += l.signum() as i64;
        }
        HVector::new(coords)
    }

    /// Replaces every letter `x_j` by `images[j-1]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for &l in &self.letters {
            let img = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                for &m in &img.letters {
                    out.push(m);
                }
            } else {
                for &m in img.letters.iter().rev() {
                    out.push(-m);
                }
            }
        }
        out
    }

    /// Fox free derivative with respect to `x_index`.
    pub fn fox_derivative(&self, index: usize) -> GroupRingElement {
        let target = index as i32;
        let mut out = GroupRingElement::zero();
        let mut prefix = Word::identity();
        for &l in &self.letters {
            if l == target {
                out.add_term(prefix.clone(), BigInt::one());
            }
            prefix.push(l);
            if l == -target {
                out.add_term(prefix.clone(), -BigInt::one());
            }
        }
        out
    }

    pub fn check_rank(&self, rank: usize) -> Result<(), FreeGroupError> {
        match self.letters.iter().find(|l| l.unsigned_abs() as usize > rank) {
            Some(&l) => Err(FreeGroupError::IndexOutOfRange { index: l as i64, rank }),
            None => Ok(()),
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters.len().cmp(&other.letters.len()).then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            if *l > 0 {
                write!(f, "x{l}")?;
            } else {
                write!(f, "X{}", -l)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = FreeGroupError;

    /// Parses signed decimal letters separated by whitespace; the input is reduced.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            match tok.parse::<i32>() {
                Ok(l) if l != 0 => letters.push(l),
                _ => return Err(FreeGroupError::Parse { what: "word", input: s.to_string() }),
            }
        }
        Ok(Word::from_letters(letters))
    }
}

/// Finite integral combination of reduced words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w, BigInt::one());
        e
    }

    pub fn from_int(n: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(Word::identity(), BigInt::from(n));
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }

    /// Left multiplication by a group element.
    pub fn left_mul_word(&self, w: &Word) -> Self {
        let mut out = Self::zero();
        for (u, c) in &self.terms {
            out.add_term(w.mul(u), c.clone());
        }
        out
    }

    /// Ring endomorphism induced by substituting `x_j -> images[j-1]`.
    pub fn substitute(&self, images: &[Word]) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.substitute(images), c.clone());
        }
        out
    }

    /// Sum of coefficients (sends every group element to 1).
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn abelianize(&self, rank: usize) -> LaurentElement {
        let mut out = LaurentElement::zero();
        for (w, c) in &self.terms {
            out.add_term(w.abelianize(rank).coords().to_vec(), c.clone());
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    /// `coef:word;coef:word` in length-then-lexicographic term order; zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}:{w}")).collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*{w:?}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupRingElement {
    type Err = FreeGroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FreeGroupError::Parse { what: "group ring element", input: s.to_string() };
        let mut out = Self::zero();
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(out);
        }
        for term in s.split(';') {
            let (c, w) = term.split_once(':').ok_or_else(err)?;
            let c: BigInt = c.trim().parse().map_err(|_| err())?;
            let w: Word = w.parse()?;
            out.add_term(w, c);
        }
        Ok(out)
    }
}

/// Element of the integral Laurent polynomial ring on `rank` commuting
/// variables, i.e. the group ring of `H = Z^rank`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct LaurentElement {
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentElement {
    pub fn zero() -> Self {
        LaurentElement { terms: BTreeMap::new() }
    }

    pub fn monomial(exponents: Vec<i64>, c: BigInt) -> Self {
        let mut e = Self::zero();
        e.add_term(exponents, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exponents: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, a) in &self.terms {
            for (e2, b) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.add_term(e, a * b);
            }
        }
        out
    }

    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(vec![0; rank], BigInt::one())
    }

    pub fn from_int(rank: usize, n: i64) -> Self {
        Self::monomial(vec![0; rank], BigInt::from(n))
    }

    pub fn neg(&self) -> Self {
        LaurentElement { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Ring map induced by the linear substitution sending the `i`-th
    /// variable to the monomial with exponents `rows[i]`.
    pub fn substitute_linear(&self, rows: &[Vec<i64>]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut img = vec![0i64; rows.first().map_or(e.len(), |r| r.len())];
            for (k, &x) in e.iter().enumerate() {
                for (acc, &r) in img.iter_mut().zip(&rows[k]) {
                    *acc += x * r;
                }
            }
            out.add_term(img, c.clone());
        }
        out
    }
}

impl fmt::Display for LaurentElement {
    /// `coef:e1 e2 ...;...` with exponent vectors in lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let exps: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                format!("{c}:{}", exps.join(" "))
            })
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Integer vector in the ordered basis `(A_1, B_1, ..., A_g, B_g)`, or in
/// generator coordinates when it is an exponent-sum vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct HVector {
    coords: Vec<i64>,
}

impl HVector {
    pub fn new(coords: Vec<i64>) -> Self {
        HVector { coords }
    }

    pub fn zero(rank: usize) -> Self {
        HVector { coords: vec![0; rank] }
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.coords[i] = 1;
        v
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &HVector) -> HVector {
        HVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &HVector) -> HVector {
        HVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> HVector {
        HVector { coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: i64) -> HVector {
        HVector { coords: self.coords.iter().map(|a| a * k).collect() }
    }

    /// Intersection pairing `omega(self, other)` with `omega(A_i, B_i) = 1`.
    pub fn omega(&self, other: &HVector) -> i64 {
        self.coords.chunks(2).zip(other.coords.chunks(2)).map(|(u, v)| u[0] * v[1] - u[1] * v[0]).sum()
    }

    pub fn gcd(&self) -> i64 {
        self.coords.iter().fold(0i64, |acc, &c| num_integer::gcd(acc, c.abs()))
    }

    pub fn max_abs(&self) -> i64 {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// An endomorphism of the free group, given by the images of the generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EndoMap {
    images: Vec<Word>,
}

impl EndoMap {
    pub fn new(images: Vec<Word>) -> Self {
        EndoMap { images }
    }

    pub fn identity(rank: usize) -> Self {
        EndoMap { images: (1..=rank as i32).map(Word::letter).collect() }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Word {
        &self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, w)| w.letters() == [k as i32 + 1])
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// Substitutes `self` into `next`: the image of `x_i` is `next(x_i)`
    /// with each letter `x_j` replaced by `self(x_j)`.
    ///
    /// If `self` expresses the generators of `G1` in the letters of `G0`
    /// and `next` those of `G2` in the letters of `G1`, the result expresses
    /// the generators of `G2` in the letters of `G0`.
    pub fn then(&self, next: &EndoMap) -> Result<EndoMap, FreeGroupError> {
        if self.rank() != next.rank() {
            return Err(FreeGroupError::RankMismatch { left: self.rank(), right: next.rank() });
        }
        Ok(EndoMap { images: next.images.iter().map(|w| w.substitute(&self.images)).collect() })
    }

    /// Exponent-sum matrix: row `i` is the abelianized image of `x_{i+1}`.
    pub fn abelianization(&self) -> Vec<Vec<i64>> {
        self.images.iter().map(|w| w.abelianize(self.rank()).coords().to_vec()).collect()
    }

    /// Fox Jacobian: entry `(i, j)` is the derivative of the `i`-th image by `x_j`.
    pub fn fox_jacobian(&self) -> Vec<Vec<GroupRingElement>> {
        let n = self.rank();
        self.images.iter().map(|w| (1..=n).map(|j| w.fox_derivative(j)).collect()).collect()
    }
}

impl fmt::Display for EndoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            writeln!(f, "{}: {}", i + 1, w)?;
        }
        Ok(())
    }
}

/// `phi` then `psi` in substitution order; see [`EndoMap::then`].
pub fn compose_endos(phi: &EndoMap, psi: &EndoMap) -> Result<EndoMap, FreeGroupError> {
    phi.then(psi)
}

/// Fox derivative with a range check on the generator index.
pub fn fox_derivative(w: &Word, index: usize, rank: usize) -> Result<GroupRingElement, FreeGroupError> {
    if index == 0 || index > rank {
        return Err(FreeGroupError::IndexOutOfRange { index: index as i64, rank });
    }
    Ok(w.fox_derivative(index))
}

/// Integer determinant by fraction-free elimination (Bareiss).
pub fn int_determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone() * sign
}
