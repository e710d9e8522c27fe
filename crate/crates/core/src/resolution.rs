//! The standard resolution of `R` over `R[Z_k]` written in the bar basis, the
//! minimal resolution, and the explicit chain map between them.
//!
//! Group elements are written as exponents: the letter `a` stands for `g^a`.
//! A bar word `[a_1|...|a_r]` is the tensor `e ⊗ g^{a_1} ⊗ g^{a_1+a_2} ⊗ ...`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{GroupRingElement, RingSpec};

/// Default upper bound on the number of words enumerated by the verifier.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// Basis element `[g^{a_1}|...|g^{a_r}]` of the bar resolution.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarWord {
    k: usize,
    letters: Vec<usize>,
}

impl BarWord {
    pub fn new(k: usize, letters: Vec<usize>) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("group order must be at least 2, got {k}")));
        }
        if let Some(bad) = letters.iter().find(|&&a| a >= k) {
            return Err(Error::Domain(format!("letter {bad} outside [0, {k})")));
        }
        Ok(Self { k, letters })
    }

    pub fn empty(k: usize) -> Self {
        Self { k, letters: Vec::new() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    /// Alternating: no letter is the neutral element.
    pub fn is_alternating(&self) -> bool {
        self.letters.iter().all(|&a| a != 0)
    }

    /// Strongly alternating in the sense matching the degree parity: for even
    /// degree every pair `(a_{2i+1}, a_{2i+2})` sums to at least `k`; for odd
    /// degree additionally `a_1 != 0` and the remaining letters form an even
    /// strongly alternating word.
    pub fn is_strongly_alternating(&self) -> bool {
        if self.letters.len() % 2 == 0 {
            pairs_reach_k(&self.letters, self.k)
        } else {
            self.letters[0] != 0 && pairs_reach_k(&self.letters[1..], self.k)
        }
    }

    /// The tensor `g^lead · [self]`.
    pub fn to_tensor(&self, lead: usize) -> TensorElement {
        let mut entries = Vec::with_capacity(self.letters.len() + 1);
        let mut acc = lead % self.k;
        entries.push(acc);
        for &a in &self.letters {
            acc = (acc + a) % self.k;
            entries.push(acc);
        }
        TensorElement { k: self.k, entries }
    }
}

fn pairs_reach_k(letters: &[usize], k: usize) -> bool {
    letters.len() % 2 == 0 && letters.chunks(2).all(|p| p[0] + p[1] >= k)
}

/// Standard `R`-basis element `g^{b_0} ⊗ ... ⊗ g^{b_r}` of `S_r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorElement {
    k: usize,
    entries: Vec<usize>,
}

impl TensorElement {
    pub fn new(k: usize, entries: Vec<usize>) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("group order must be at least 2, got {k}")));
        }
        if entries.is_empty() {
            return Err(Error::Domain("a tensor needs at least one factor".into()));
        }
        if let Some(bad) = entries.iter().find(|&&b| b >= k) {
            return Err(Error::Domain(format!("entry {bad} outside [0, {k})")));
        }
        Ok(Self { k, entries })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn degree(&self) -> usize {
        self.entries.len() - 1
    }

    /// `g^a ⊗ self`, one degree higher.
    pub fn prepend(&self, a: usize) -> TensorElement {
        let mut entries = Vec::with_capacity(self.entries.len() + 1);
        entries.push(a % self.k);
        entries.extend_from_slice(&self.entries);
        TensorElement { k: self.k, entries }
    }

    /// Diagonal action of `g^j`.
    pub fn shift(&self, j: usize) -> TensorElement {
        let entries = self.entries.iter().map(|&b| (b + j) % self.k).collect();
        TensorElement { k: self.k, entries }
    }

    /// Rewrites `h_0 ⊗ ... ⊗ h_r` as `h_0 [h_0^{-1} h_1 | ... | h_{r-1}^{-1} h_r]`.
    pub fn to_bar(&self) -> (usize, BarWord) {
        let k = self.k;
        let letters = self.entries.windows(2).map(|w| (w[1] + k - w[0]) % k).collect();
        (self.entries[0], BarWord { k, letters })
    }

    pub fn is_alternating(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] != w[1])
    }

    /// Even degree: the bar letters pair up to sums `>= k`. Odd degree: the
    /// tail `h_1 ⊗ ... ⊗ h_r` is strongly alternating and `h_0 != h_1`.
    pub fn is_strongly_alternating(&self) -> bool {
        if self.degree() % 2 == 0 {
            let (_, word) = self.to_bar();
            pairs_reach_k(&word.letters, self.k)
        } else {
            let tail = TensorElement { k: self.k, entries: self.entries[1..].to_vec() };
            self.entries[0] != self.entries[1] && tail.is_strongly_alternating()
        }
    }
}

/// `tensor_to_bar`: lead exponent and bar word.
pub fn tensor_to_bar(t: &TensorElement) -> (usize, BarWord) {
    t.to_bar()
}

/// Element of `S_r` as a `Λ`-linear combination of bar words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardChain {
    k: usize,
    ring: RingSpec,
    degree: usize,
    terms: BTreeMap<BarWord, GroupRingElement>,
}

impl StandardChain {
    pub fn zero(k: usize, ring: RingSpec, degree: usize) -> Self {
        Self { k, ring, degree, terms: BTreeMap::new() }
    }

    pub fn from_word(word: BarWord, ring: RingSpec) -> Self {
        let mut c = Self::zero(word.k, ring.clone(), word.degree());
        let one = GroupRingElement::identity(word.k, ring);
        c.add_term(word, &one).expect("word matches its own chain");
        c
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BarWord, &GroupRingElement)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &BarWord) -> Option<&GroupRingElement> {
        self.terms.get(word)
    }

    /// Adds `coeff · word`, dropping the term if it cancels.
    pub fn add_term(&mut self, word: BarWord, coeff: &GroupRingElement) -> Result<()> {
        if word.k != self.k || word.degree() != self.degree {
            return Err(Error::DimensionMismatch(format!(
                "word of degree {} over Z_{} in a chain of degree {} over Z_{}",
                word.degree(),
                word.k,
                self.degree,
                self.k
            )));
        }
        if coeff.k() != self.k || coeff.ring() != &self.ring {
            return Err(Error::DimensionMismatch("coefficient ring differs from chain".into()));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&word) {
            Some(existing) => {
                let sum = &*existing + coeff;
                if sum.is_zero() {
                    self.terms.remove(&word);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(word, coeff.clone());
            }
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "degrees {} and {} differ",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c)?;
        }
        Ok(out)
    }

    /// Left multiplication by a group-ring element.
    pub fn scale(&self, x: &GroupRingElement) -> Self {
        let mut out = Self::zero(self.k, self.ring.clone(), self.degree);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &(x * c)).expect("same ring");
        }
        out
    }

    /// Boundary, extended `Λ`-linearly from [`bar_boundary`].
    pub fn boundary(&self) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::Degree(
                "S_0 has no boundary; use the augmentation of the coefficients".into(),
            ));
        }
        let mut out = Self::zero(self.k, self.ring.clone(), self.degree - 1);
        for (w, c) in &self.terms {
            let bw = bar_boundary(w, &self.ring)?;
            for (w2, c2) in bw.terms {
                out.add_term(w2, &(c * &c2))?;
            }
        }
        Ok(out)
    }

    /// Expansion in the standard `R`-basis of tensors.
    pub fn tensor_expansion(&self) -> BTreeMap<TensorElement, BigInt> {
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            for (lead, a) in c.coeffs().iter().enumerate() {
                if !a.is_zero() {
                    out.insert(w.to_tensor(lead), a.clone());
                }
            }
        }
        out
    }
}

/// `∂[h_1|...|h_r] = h_1[h_2|...|h_r] + sum_i (-1)^i [...|h_i h_{i+1}|...] + (-1)^r [h_1|...|h_{r-1}]`.
pub fn bar_boundary(w: &BarWord, ring: &RingSpec) -> Result<StandardChain> {
    let r = w.degree();
    if r == 0 {
        return Err(Error::Degree(
            "the empty word has no boundary; S_0 maps to R by augmentation".into(),
        ));
    }
    let k = w.k;
    let mut out = StandardChain::zero(k, ring.clone(), r - 1);
    let sign = |i: usize| {
        let one = GroupRingElement::identity(k, ring.clone());
        if i % 2 == 0 {
            one
        } else {
            -&one
        }
    };

    let head = BarWord { k, letters: w.letters[1..].to_vec() };
    out.add_term(head, &GroupRingElement::group(k, ring.clone(), w.letters[0]))?;

    for i in 1..r {
        let mut letters = Vec::with_capacity(r - 1);
        letters.extend_from_slice(&w.letters[..i - 1]);
        letters.push((w.letters[i - 1] + w.letters[i]) % k);
        letters.extend_from_slice(&w.letters[i + 1..]);
        out.add_term(BarWord { k, letters }, &sign(i))?;
    }

    let tail = BarWord { k, letters: w.letters[..r - 1].to_vec() };
    out.add_term(tail, &sign(r))?;
    Ok(out)
}

/// Linear extension of [`bar_boundary`] to standard chains.
pub fn standard_boundary(c: &StandardChain) -> Result<StandardChain> {
    c.boundary()
}

/// Element of `M_r = Λ` tagged with its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalElement {
    pub degree: usize,
    pub value: GroupRingElement,
}

/// `∂_r = m_τ` for odd `r` and `m_σ` for even `r > 0`.
pub fn minimal_boundary(x: &MinimalElement) -> Result<MinimalElement> {
    if x.degree == 0 {
        return Err(Error::Degree(
            "M_0 has no boundary; its augmentation is GroupRingElement::augment".into(),
        ));
    }
    let k = x.value.k();
    let ring = x.value.ring().clone();
    let factor = if x.degree % 2 == 1 {
        GroupRingElement::tau(k, ring)
    } else {
        GroupRingElement::sigma(k, ring)
    };
    Ok(MinimalElement { degree: x.degree - 1, value: &factor * &x.value })
}

/// Value of the chain map on a single bar word.
///
/// Even degree: `e` if the word is strongly alternating, else `0`.
/// Odd degree: `sigma_{a_1} · f([a_2|...])`.
pub fn f_word(w: &BarWord, ring: &RingSpec) -> GroupRingElement {
    let k = w.k;
    if w.degree() % 2 == 0 {
        if pairs_reach_k(&w.letters, k) {
            GroupRingElement::identity(k, ring.clone())
        } else {
            GroupRingElement::zero(k, ring.clone())
        }
    } else if w.letters[0] != 0 && pairs_reach_k(&w.letters[1..], k) {
        let mut coeffs = vec![BigInt::zero(); k];
        for c in coeffs.iter_mut().take(w.letters[0]) {
            *c = BigInt::one();
        }
        GroupRingElement::from_coeffs(k, ring.clone(), coeffs).expect("length k")
    } else {
        GroupRingElement::zero(k, ring.clone())
    }
}

/// The chain map `S_• -> M_•`, `Λ`-linear on bar words.
pub fn f_map(c: &StandardChain) -> MinimalElement {
    let mut value = GroupRingElement::zero(c.k, c.ring.clone());
    for (w, coeff) in &c.terms {
        let fw = f_word(w, &c.ring);
        if !fw.is_zero() {
            value = &value + &(coeff * &fw);
        }
    }
    MinimalElement { degree: c.degree, value }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapFailure {
    pub word: BarWord,
    /// `∂ f(w)` in the minimal resolution.
    pub minimal_side: GroupRingElement,
    /// `f(∂w)`.
    pub standard_side: GroupRingElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapReport {
    pub k: usize,
    pub max_degree: usize,
    pub checked: u64,
    pub failures: Vec<ChainMapFailure>,
}

impl ChainMapReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// All bar words of degree `r`, in lexicographic order.
pub fn enumerate_words(k: usize, r: usize) -> impl Iterator<Item = BarWord> {
    let total = (k as u64).checked_pow(r as u32).unwrap_or(u64::MAX);
    (0..total).map(move |mut n| {
        let mut letters = vec![0; r];
        for slot in letters.iter_mut().rev() {
            *slot = (n % k as u64) as usize;
            n /= k as u64;
        }
        BarWord { k, letters }
    })
}

/// Checks `∂ f(w) = f(∂ w)` for every bar word of degree `1..=max_degree`.
pub fn verify_f_chain_map(
    k: usize,
    max_degree: usize,
    ring: &RingSpec,
    cap: Option<u64>,
) -> Result<ChainMapReport> {
    if k < 2 || max_degree < 1 {
        return Err(Error::Domain(format!(
            "need k >= 2 and max_degree >= 1, got k = {k}, max_degree = {max_degree}"
        )));
    }
    let cap = cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
    let total: u128 = (1..=max_degree).map(|r| (k as u128).pow(r as u32)).sum();
    if total > cap as u128 {
        return Err(Error::ResourceLimit { requested: total, cap: cap as u128 });
    }

    let mut checked = 0;
    let mut failures = Vec::new();
    for r in 1..=max_degree {
        for w in enumerate_words(k, r) {
            let fw = MinimalElement { degree: r, value: f_word(&w, ring) };
            let minimal_side = minimal_boundary(&fw)?.value;
            let standard_side = f_map(&bar_boundary(&w, ring)?).value;
            checked += 1;
            if minimal_side != standard_side {
                failures.push(ChainMapFailure { word: w, minimal_side, standard_side });
            }
        }
    }
    Ok(ChainMapReport { k, max_degree, checked, failures })
}
