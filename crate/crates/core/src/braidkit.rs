//! Braid words, the alternating 3-braid forms `α` and `ω`, plat decompositions
//! of 2-bridge links, and genus arithmetic for positive-braid closures.
//!
//! A letter `v` stands for `σ_{|v|}^{sign v}`. Word equality is free equality:
//! adjacent `σ_i σ_i^{-1}` pairs cancel, nothing else is rewritten.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::TooFewStrands(strands));
        }
        if let Some(&letter) = letters
            .iter()
            .find(|v| **v == 0 || v.unsigned_abs() as usize >= strands)
        {
            return Err(Error::InvalidLetter { letter, strands });
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    /// Parses whitespace-separated signed letters.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|t| {
                t.parse::<i32>()
                    .map_err(|e| Error::Parse(format!("braid letter {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
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

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|v| *v > 0)
    }

    /// Concatenation `self · other`. Panics on mismatched strand counts.
    pub fn then(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "strand counts differ");
        let letters = self.letters.iter().chain(&other.letters).copied().collect();
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Maximal runs of a single generator, as `(generator, signed exponent)`.
    /// Runs mixing signs split, so `σ_1 σ_1^{-1}` gives two syllables.
    pub fn syllables(&self) -> Vec<(u32, i64)> {
        let mut out: Vec<(u32, i64)> = Vec::new();
        for &v in &self.letters {
            let (g, s) = (v.unsigned_abs(), i64::from(v.signum()));
            match out.last_mut() {
                Some((lg, e)) if *lg == g && e.signum() == s => *e += s,
                _ => out.push((g, s)),
            }
        }
        out
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
        f.write_str(&s.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Parses a 3-strand word.
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(3, s)
    }
}

fn power(generator: i32, exponent: i64) -> impl Iterator<Item = i32> {
    let letter = if exponent < 0 { -generator } else { generator };
    std::iter::repeat_n(letter, exponent.unsigned_abs() as usize)
}

fn bar(i: usize) -> i32 {
    if i % 2 == 1 {
        1
    } else {
        2
    }
}

/// `α = σ_{\bar n}^{ε_n a_n} ... σ_2^{a_2} σ_1^{-a_1}` with `ε_i = (-1)^i`.
pub fn alpha_form(a: &[u32]) -> BraidWord {
    let letters = (1..=a.len())
        .rev()
        .flat_map(|i| {
            let eps = if i % 2 == 0 { 1 } else { -1 };
            power(bar(i), eps * i64::from(a[i - 1]))
        })
        .collect();
    BraidWord { strands: 3, letters }
}

/// `ω = σ_1^{z_1} σ_2^{-z_2} σ_1^{z_3} ...`.
pub fn omega_form(z: &[u32]) -> BraidWord {
    let letters = (1..=z.len())
        .flat_map(|i| {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            power(bar(i), sign * i64::from(z[i - 1]))
        })
        .collect();
    BraidWord { strands: 3, letters }
}

/// Reads `w` back as `alpha_form(a)` with every `a_i > 0`.
pub fn as_alpha_form(w: &BraidWord) -> Option<Vec<u32>> {
    if w.strands != 3 {
        return None;
    }
    let syl = w.syllables();
    let mut a = Vec::with_capacity(syl.len());
    for (k, &(g, e)) in syl.iter().rev().enumerate() {
        let i = k + 1;
        let eps = if i % 2 == 0 { 1 } else { -1 };
        if g as i32 != bar(i) || e.signum() != eps {
            return None;
        }
        a.push(u32::try_from(e.abs()).ok()?);
    }
    Some(a)
}

/// Reads `w` back as `omega_form(z)` with every `z_i > 0`.
pub fn as_omega_form(w: &BraidWord) -> Option<Vec<u32>> {
    if w.strands != 3 {
        return None;
    }
    let mut z = Vec::new();
    for (k, (g, e)) in w.syllables().into_iter().enumerate() {
        let i = k + 1;
        let sign = if i % 2 == 1 { 1 } else { -1 };
        if g as i32 != bar(i) || e.signum() != sign {
            return None;
        }
        z.push(u32::try_from(e.abs()).ok()?);
    }
    Some(z)
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(w: &BraidWord) -> BraidWord {
    let mut stack: Vec<i32> = Vec::with_capacity(w.letters.len());
    for &v in &w.letters {
        if stack.last() == Some(&-v) {
            stack.pop();
        } else {
            stack.push(v);
        }
    }
    BraidWord {
        strands: w.strands,
        letters: stack,
    }
}

pub fn inverse(w: &BraidWord) -> BraidWord {
    BraidWord {
        strands: w.strands,
        letters: w.letters.iter().rev().map(|v| -v).collect(),
    }
}

/// All crossings changed.
pub fn mirror(w: &BraidWord) -> BraidWord {
    BraidWord {
        strands: w.strands,
        letters: w.letters.iter().map(|v| -v).collect(),
    }
}

pub fn reverse(w: &BraidWord) -> BraidWord {
    BraidWord {
        strands: w.strands,
        letters: w.letters.iter().rev().copied().collect(),
    }
}

/// Exchanges `σ_1` and `σ_2` on a 3-braid.
pub fn generator_swap(w: &BraidWord) -> Result<BraidWord> {
    if w.strands != 3 {
        return Err(Error::NotThreeStrand(w.strands));
    }
    let letters = w.letters.iter().map(|v| v.signum() * (3 - v.abs())).collect();
    Ok(BraidWord { strands: 3, letters })
}

/// The four word operations at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordOps {
    pub inverse: BraidWord,
    pub mirror: BraidWord,
    pub reverse: BraidWord,
    /// `None` unless the word has three strands.
    pub generator_swap: Option<BraidWord>,
}

pub fn word_ops(w: &BraidWord) -> WordOps {
    WordOps {
        inverse: inverse(w),
        mirror: mirror(w),
        reverse: reverse(w),
        generator_swap: generator_swap(w).ok(),
    }
}

/// Sign pattern of an alternating 3-braid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlternatingType {
    /// `σ_1` negative, `σ_2` positive, like `α`.
    Alpha,
    /// `σ_1` positive, `σ_2` negative, like `ω`.
    Omega,
}

/// `None` for the trivial braid and for braids that use only one generator
/// with no σ_1 letter to fix the type.
pub fn alternating_type(w: &BraidWord) -> Result<Option<AlternatingType>> {
    if w.strands != 3 {
        return Err(Error::NotThreeStrand(w.strands));
    }
    let sign_of = |g: i32| {
        let mut signs = w.letters.iter().filter(|v| v.abs() == g).map(|v| v.signum());
        let first = signs.next();
        match first {
            Some(s) if signs.all(|t| t == s) => Ok(Some(s)),
            Some(_) => Err(Error::NotAlternating(format!("σ_{g} occurs with both signs in {w}"))),
            None => Ok(None),
        }
    };
    let (s1, s2) = (sign_of(1)?, sign_of(2)?);
    if let (Some(a), Some(b)) = (s1, s2) {
        if a == b {
            return Err(Error::NotAlternating(format!("σ_1 and σ_2 share a sign in {w}")));
        }
    }
    Ok(match (s1, s2) {
        (Some(-1), _) | (None, Some(1)) => Some(AlternatingType::Alpha),
        (Some(_), _) | (None, Some(_)) => Some(AlternatingType::Omega),
        (None, None) => None,
    })
}

/// Which branch of the construction produced the decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecompositionCase {
    /// `ξ = σ_1^{-1} ξ'`: `α = ξ' α'`, `ω = α'^{-1}`.
    LeadingNegative,
    /// `ξ` starts with a positive power of `σ_1`: `α = α'`, `ω = α'^{-1} σ_1 ξ`.
    LeadingPositive,
    /// `ξ` trivial: `α = α'`, `ω = α'^{-1} σ_1`.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionCertificate {
    pub case: DecompositionCase,
    /// `σ_1^{-1} α ω` and `ξ` agree after free reduction.
    pub identity_holds: bool,
    /// `α` read back as normal-form coefficients, if possible.
    pub alpha_coeffs: Option<Vec<u32>>,
    /// `ω` read back as normal-form coefficients, if possible.
    pub omega_coeffs: Option<Vec<u32>>,
}

impl DecompositionCertificate {
    /// Identity holds and both braids have at least three positive twist parameters.
    pub fn is_valid(&self) -> bool {
        let long = |c: &Option<Vec<u32>>| c.as_ref().is_some_and(|c| c.len() >= 3 && c.iter().all(|v| *v > 0));
        self.identity_holds && long(&self.alpha_coeffs) && long(&self.omega_coeffs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoBridgeDecomposition {
    pub alpha: BraidWord,
    pub omega: BraidWord,
    pub certificate: DecompositionCertificate,
}

/// The `α'` used when none is given.
pub const DEFAULT_ALPHA_PRIME: [u32; 3] = [1, 1, 1];

/// Writes an alternating 3-braid `ξ` (trivial or starting with a power of `σ_1`)
/// as `σ_1^{-1} α ω` with `α`, `ω` in alternating normal form.
pub fn decompose_two_bridge(xi: &BraidWord, a_prime: &[u32]) -> Result<TwoBridgeDecomposition> {
    if a_prime.len() < 3 || a_prime.contains(&0) {
        return Err(Error::InvalidAlphaPrime(format!("{a_prime:?}")));
    }
    alternating_type(xi)?;
    let alpha_prime = alpha_form(a_prime);
    let alpha_prime_inv = inverse(&alpha_prime);
    let sigma1 = BraidWord {
        strands: 3,
        letters: vec![1],
    };
    let (case, alpha, omega) = match xi.letters.first() {
        None => (DecompositionCase::Trivial, alpha_prime, alpha_prime_inv.then(&sigma1)),
        Some(-1) => {
            let rest = BraidWord {
                strands: 3,
                letters: xi.letters[1..].to_vec(),
            };
            (
                DecompositionCase::LeadingNegative,
                rest.then(&alpha_prime),
                alpha_prime_inv,
            )
        }
        Some(1) => {
            let omega = alpha_prime_inv.then(&sigma1).then(xi);
            (DecompositionCase::LeadingPositive, alpha_prime, omega)
        }
        Some(_) => return Err(Error::NotNormalized),
    };
    let product = inverse(&sigma1).then(&alpha).then(&omega);
    let certificate = DecompositionCertificate {
        case,
        identity_holds: free_reduce(&product) == free_reduce(xi),
        alpha_coeffs: as_alpha_form(&alpha),
        omega_coeffs: as_omega_form(&omega),
    };
    Ok(TwoBridgeDecomposition {
        alpha,
        omega,
        certificate,
    })
}

/// Seifert genus `(c - s + 1)/2` of the knot closing a positive braid with
/// `s` strands and `c` crossings.
pub fn genus_positive_closure(strands: u64, length: u64) -> Result<u64> {
    let euler = (length + 1).checked_sub(strands).filter(|v| v % 2 == 0);
    euler.map(|v| v / 2).ok_or(Error::NotAKnot { strands, length })
}

/// Underlying permutation as a map `start strand -> end strand` (0-based, top to bottom).
pub fn permutation(w: &BraidWord) -> Vec<usize> {
    let mut at: Vec<usize> = (0..w.strands).collect();
    for &v in &w.letters {
        let i = v.unsigned_abs() as usize - 1;
        at.swap(i, i + 1);
    }
    // at[position] = strand now there; invert to strand -> position.
    let mut perm = vec![0; w.strands];
    for (pos, &strand) in at.iter().enumerate() {
        perm[strand] = pos;
    }
    perm
}

/// Number of components of the braid closure (cycles of the permutation).
pub fn closure_components(w: &BraidWord) -> usize {
    let perm = permutation(w);
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if !seen[start] {
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = perm[k];
            }
        }
    }
    cycles
}

pub fn closes_to_knot(w: &BraidWord) -> bool {
    closure_components(w) == 1
}
