//! Exact arithmetic in the group ring `R[Z_k]` for `R = Z` or `R = Z/m`.
//!
//! An element is stored as its coefficient vector in the group basis
//! `e, g, ..., g^{k-1}`. Coefficients are arbitrary-precision integers; over
//! `Z/m` they are kept as canonical residues in `[0, m)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient ring of every chain and group-ring element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    IntegersMod(BigInt),
}

impl RingSpec {
    pub fn modular(m: impl Into<BigInt>) -> Result<Self> {
        let m = m.into();
        if m < BigInt::from(2) {
            return Err(Error::Domain(format!("modulus must be at least 2, got {m}")));
        }
        Ok(RingSpec::IntegersMod(m))
    }

    /// Parses `Z`, `Z/m` or `Zmod:m`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "Z" {
            return Ok(RingSpec::Integers);
        }
        let modulus = text
            .strip_prefix("Z/")
            .or_else(|| text.strip_prefix("Zmod:"))
            .ok_or_else(|| Error::Format(format!("unknown ring `{text}`")))?;
        let m: BigInt = modulus
            .parse()
            .map_err(|_| Error::Format(format!("bad modulus in ring `{text}`")))?;
        Self::modular(m)
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        match self {
            RingSpec::Integers => None,
            RingSpec::IntegersMod(m) => Some(m),
        }
    }

    /// Canonical representative of `x`.
    pub fn reduce(&self, x: BigInt) -> BigInt {
        match self {
            RingSpec::Integers => x,
            RingSpec::IntegersMod(m) => x.mod_floor(m),
        }
    }

    pub fn from_i64(&self, x: i64) -> BigInt {
        self.reduce(BigInt::from(x))
    }

    pub fn is_zero(&self, x: &BigInt) -> bool {
        match self {
            RingSpec::Integers => x.is_zero(),
            RingSpec::IntegersMod(m) => x.mod_floor(m).is_zero(),
        }
    }

    /// True when `k` is a unit of the ring, i.e. `kR = R`.
    pub fn is_unit(&self, k: usize) -> bool {
        match self {
            RingSpec::Integers => k == 1,
            RingSpec::IntegersMod(m) => BigInt::from(k).gcd(m).is_one(),
        }
    }

    /// Congruence of two ring values modulo `k` (lifted to `Z` first).
    ///
    /// Over `Z/m` the comparison is only meaningful when `k | m`; otherwise
    /// `Z/m -> Z/k` is not well defined and the residues are compared modulo
    /// `gcd(k, m)`.
    pub fn congruent_mod(&self, a: &BigInt, b: &BigInt, k: usize) -> bool {
        let modulus = match self {
            RingSpec::Integers => BigInt::from(k),
            RingSpec::IntegersMod(m) => BigInt::from(k).gcd(m),
        };
        (a - b).mod_floor(&modulus).is_zero()
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

/// One of the two `R`-bases of the group ring used by the minimal resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// `e, tau_1, ..., tau_{k-1}`
    T,
    /// `sigma_1, ..., sigma_k`
    Sigma,
}

/// Selector for [`special_element`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Special {
    SigmaR(usize),
    TauR(usize),
    Group(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Element of `R[Z_k]`; `coeffs[a]` is the coefficient of `g^a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    k: usize,
    ring: RingSpec,
    coeffs: Vec<BigInt>,
}

impl GroupRingElement {
    pub fn from_coeffs(k: usize, ring: RingSpec, coeffs: Vec<BigInt>) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("group order must be at least 2, got {k}")));
        }
        if coeffs.len() != k {
            return Err(Error::DimensionMismatch(format!(
                "expected {k} coefficients, got {}",
                coeffs.len()
            )));
        }
        let coeffs = coeffs.into_iter().map(|c| ring.reduce(c)).collect();
        Ok(Self { k, ring, coeffs })
    }

    pub fn from_i64s(k: usize, ring: RingSpec, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(k, ring, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(k: usize, ring: RingSpec) -> Self {
        Self { k, ring, coeffs: vec![BigInt::zero(); k] }
    }

    /// The group element `g^a`, with `a` taken modulo `k`.
    pub fn group(k: usize, ring: RingSpec, a: usize) -> Self {
        let mut x = Self::zero(k, ring);
        x.coeffs[a % k] = x.ring.reduce(BigInt::one());
        x
    }

    pub fn identity(k: usize, ring: RingSpec) -> Self {
        Self::group(k, ring, 0)
    }

    /// `sigma = e + g + ... + g^{k-1}`
    pub fn sigma(k: usize, ring: RingSpec) -> Self {
        Self::sigma_r_unchecked(k, ring, k)
    }

    /// `tau = g - e`
    pub fn tau(k: usize, ring: RingSpec) -> Self {
        Self::tau_r_unchecked(k, ring, 1)
    }

    fn sigma_r_unchecked(k: usize, ring: RingSpec, r: usize) -> Self {
        let mut x = Self::zero(k, ring);
        for c in x.coeffs.iter_mut().take(r) {
            *c = x.ring.reduce(BigInt::one());
        }
        x
    }

    fn tau_r_unchecked(k: usize, ring: RingSpec, r: usize) -> Self {
        let mut x = Self::zero(k, ring);
        if r % k != 0 {
            x.coeffs[r] = x.ring.reduce(BigInt::one());
            x.coeffs[0] = x.ring.reduce(-BigInt::one());
        }
        x
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, a: usize) -> &BigInt {
        &self.coeffs[a % self.k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.k != other.k || self.ring != other.ring {
            return Err(Error::DimensionMismatch(format!(
                "cannot combine elements of {}[Z_{}] and {}[Z_{}]",
                self.ring, self.k, other.ring, other.k
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.reduce(a + b))
            .collect();
        Ok(Self { k: self.k, ring: self.ring.clone(), coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.reduce(a - b))
            .collect();
        Ok(Self { k: self.k, ring: self.ring.clone(), coeffs })
    }

    /// Cyclic convolution.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let k = self.k;
        let mut coeffs = vec![BigInt::zero(); k];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    coeffs[(a + b) % k] += x * y;
                }
            }
        }
        let coeffs = coeffs.into_iter().map(|c| self.ring.reduce(c)).collect();
        Ok(Self { k, ring: self.ring.clone(), coeffs })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.reduce(a * c)).collect();
        Self { k: self.k, ring: self.ring.clone(), coeffs }
    }

    /// Multiplication by `g^j`.
    pub fn shift(&self, j: usize) -> Self {
        let k = self.k;
        let mut coeffs = vec![BigInt::zero(); k];
        for (a, c) in self.coeffs.iter().enumerate() {
            coeffs[(a + j) % k] = c.clone();
        }
        Self { k, ring: self.ring.clone(), coeffs }
    }

    /// Coefficient of `g^j`; `j = 0` is the evaluation `u` at the neutral element.
    pub fn evaluate(&self, j: usize) -> Result<BigInt> {
        if j >= self.k {
            return Err(Error::Domain(format!("evaluation index {j} outside [0, {})", self.k)));
        }
        Ok(self.coeffs[j].clone())
    }

    /// Augmentation `sum_i alpha_i g^i -> sum_i alpha_i`.
    pub fn augment(&self) -> BigInt {
        self.ring.reduce(self.coeffs.iter().sum())
    }

    /// Coordinates with respect to `T = (e, tau_1, ..., tau_{k-1})` or
    /// `Sigma = (sigma_1, ..., sigma_k)`, in that order.
    pub fn coords_in_basis(&self, basis: Basis) -> Vec<BigInt> {
        let k = self.k;
        let x = &self.coeffs;
        match basis {
            // x = c_0 e + sum_{i>=1} c_i (g^i - e)
            Basis::T => {
                let mut out = Vec::with_capacity(k);
                out.push(self.augment());
                out.extend(x[1..].iter().cloned());
                out
            }
            // coefficient of g^i is sum_{j > i} c_j
            Basis::Sigma => (1..=k)
                .map(|j| {
                    let next = if j < k { x[j].clone() } else { BigInt::zero() };
                    self.ring.reduce(&x[j - 1] - next)
                })
                .collect(),
        }
    }

    /// Inverse of [`coords_in_basis`](Self::coords_in_basis).
    pub fn from_basis_coords(
        k: usize,
        ring: RingSpec,
        basis: Basis,
        coords: &[BigInt],
    ) -> Result<Self> {
        if coords.len() != k {
            return Err(Error::DimensionMismatch(format!(
                "expected {k} basis coordinates, got {}",
                coords.len()
            )));
        }
        let mut acc = Self::zero(k, ring.clone());
        for (pos, c) in coords.iter().enumerate() {
            let basis_element = match basis {
                Basis::T if pos == 0 => Self::identity(k, ring.clone()),
                Basis::T => Self::tau_r_unchecked(k, ring.clone(), pos),
                Basis::Sigma => Self::sigma_r_unchecked(k, ring.clone(), pos + 1),
            };
            acc = &acc + &basis_element.scale(c);
        }
        Ok(acc)
    }

    /// Lifts each coefficient to a symmetric representative; only used for display.
    fn display_coeff(&self, c: &BigInt) -> BigInt {
        match &self.ring {
            RingSpec::Integers => c.clone(),
            RingSpec::IntegersMod(m) => {
                if (c.clone() * 2) > *m {
                    c - m
                } else {
                    c.clone()
                }
            }
        }
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = self.display_coeff(c);
            let sep = if first {
                if c.is_negative() { "-" } else { "" }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            first = false;
            let abs = c.abs();
            let mag = if abs.is_one() { String::new() } else { format!("{abs}") };
            match a {
                0 if mag.is_empty() => write!(f, "{sep}e")?,
                0 => write!(f, "{sep}{mag}e")?,
                _ => write!(f, "{sep}{mag}g^{a}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `sigma_r`, `tau_r` (0 <= r <= k) or the group element `g^a` (0 <= a < k).
pub fn special_element(k: usize, ring: RingSpec, which: Special) -> Result<GroupRingElement> {
    if k < 2 {
        return Err(Error::Domain(format!("group order must be at least 2, got {k}")));
    }
    match which {
        Special::SigmaR(r) if r <= k => Ok(GroupRingElement::sigma_r_unchecked(k, ring, r)),
        Special::TauR(r) if r <= k => Ok(GroupRingElement::tau_r_unchecked(k, ring, r)),
        Special::Group(a) if a < k => Ok(GroupRingElement::group(k, ring, a)),
        other => Err(Error::Domain(format!("{other:?} out of range for k = {k}"))),
    }
}

/// Checked group-ring arithmetic; errors on mismatched `k` or ring.
pub fn gr_arith(
    a: &GroupRingElement,
    b: &GroupRingElement,
    op: ArithOp,
) -> Result<GroupRingElement> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

// Operator impls panic on mismatched operands; use the `checked_*` methods
// where operands come from outside the crate.
impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: Self) -> GroupRingElement {
        self.checked_add(rhs).expect("group-ring operands must share k and ring")
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: Self) -> GroupRingElement {
        self.checked_sub(rhs).expect("group-ring operands must share k and ring")
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: Self) -> GroupRingElement {
        self.checked_mul(rhs).expect("group-ring operands must share k and ring")
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        self.scale(&-BigInt::one())
    }
}
