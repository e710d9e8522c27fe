//! Vertex labellings `V → Z_k × N`, their admissibility and equivariance, and
//! the pattern chain map `h^ℓ` into the standard resolution.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::resolution::{StandardChain, TensorElement};
use crate::ring::GroupRingElement;
use crate::simplicial::{
    sort_with_sign, GroupActionOnComplex, SimplicialChain, SimplicialComplex,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub sign: usize,
    pub color: u64,
}

/// A labelling of vertices `0..n`; `labels[v]` belongs to vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labelling {
    k: usize,
    labels: Vec<Label>,
}

impl Labelling {
    pub fn new(k: usize, labels: Vec<Label>) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("group order must be at least 2, got {k}")));
        }
        for (v, l) in labels.iter().enumerate() {
            if l.sign >= k || l.color == 0 {
                return Err(Error::Domain(format!(
                    "vertex {v}: label (sign {}, color {}) needs sign < {k} and color >= 1",
                    l.sign, l.color
                )));
            }
        }
        Ok(Self { k, labels })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Label {
        self.labels[v]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn max_color(&self) -> u64 {
        self.labels.iter().map(|l| l.color).max().unwrap_or(0)
    }

    /// Multiplies every sign by `g^j`.
    pub fn shift_signs(&self, j: usize) -> Self {
        let labels = self
            .labels
            .iter()
            .map(|l| Label { sign: (l.sign + j) % self.k, color: l.color })
            .collect();
        Self { k: self.k, labels }
    }

    fn check_covers(&self, x: &SimplicialComplex) -> Result<()> {
        if self.labels.len() < x.num_vertices() {
            return Err(Error::Coverage(x.vertex_name(self.labels.len()).to_string()));
        }
        if self.labels.len() > x.num_vertices() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} vertices",
                self.labels.len(),
                x.num_vertices()
            )));
        }
        Ok(())
    }

    fn violates(&self, v: usize, w: usize) -> bool {
        let (a, b) = (self.labels[v], self.labels[w]);
        a.color == b.color && a.sign != b.sign
    }
}

/// Edges whose endpoints share a color but carry different signs.
pub fn check_admissible(x: &SimplicialComplex, l: &Labelling) -> Result<Vec<(usize, usize)>> {
    l.check_covers(x)?;
    Ok(x.edges().filter(|&(v, w)| l.violates(v, w)).collect())
}

/// Vertices `v` with `ℓ(gv) != g ℓ(v)`.
pub fn check_equivariant(l: &Labelling, action: &GroupActionOnComplex) -> Result<Vec<usize>> {
    if action.k() != l.k {
        return Err(Error::DimensionMismatch(format!(
            "labelling over Z_{} and action of Z_{}",
            l.k,
            action.k()
        )));
    }
    if action.generator().len() != l.labels.len() {
        return Err(Error::DimensionMismatch("labelling and action cover different vertex sets".into()));
    }
    Ok((0..l.labels.len())
        .filter(|&v| {
            let (a, b) = (l.labels[v], l.labels[action.apply_vertex(1, v)]);
            b.color != a.color || b.sign != (a.sign + 1) % l.k
        })
        .collect())
}

/// `ℓ(s, c) = (s, c)` on `(Z_k)^{*m}` with the vertex order of
/// [`crate::simplicial::join_complex`].
pub fn tautological_labelling(k: usize, m: usize) -> Labelling {
    let labels = (0..k * m).map(|v| Label { sign: v % k, color: (v / k + 1) as u64 }).collect();
    Labelling { k, labels }
}

/// Label pattern of a simplex: the signs sorted by color, with the sign of the
/// sorting permutation. `None` when two colors coincide.
pub fn pattern(simplex: &[usize], l: &Labelling) -> Option<(TensorElement, i8)> {
    let mut order: Vec<usize> = (0..simplex.len()).collect();
    order.sort_by_key(|&i| l.labels[simplex[i]].color);
    if order.windows(2).any(|w| l.labels[simplex[w[0]]].color == l.labels[simplex[w[1]]].color) {
        return None;
    }
    let (_, sign) = sort_with_sign(&order).expect("a permutation has no repeats");
    let entries = order.iter().map(|&i| l.labels[simplex[i]].sign).collect();
    Some((TensorElement::new(l.k, entries).expect("signs lie in [0, k)"), sign))
}

fn check_support(x: &SimplicialChain, l: &Labelling) -> Result<()> {
    let mut bad = Vec::new();
    for s in x.support() {
        if let Some(&v) = s.iter().find(|&&v| v >= l.labels.len()) {
            return Err(Error::Coverage(v.to_string()));
        }
        for (i, &v) in s.iter().enumerate() {
            for &w in &s[i + 1..] {
                if l.violates(v, w) {
                    bad.push((v, w));
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        bad.sort_unstable();
        bad.dedup();
        Err(Error::Admissibility { edges: bad })
    }
}

/// `h^ℓ(x)` expanded in the standard `R`-basis of tensors.
pub fn tensor_patterns(
    x: &SimplicialChain,
    l: &Labelling,
) -> Result<BTreeMap<TensorElement, BigInt>> {
    check_support(x, l)?;
    let ring = x.ring();
    let mut out: BTreeMap<TensorElement, BigInt> = BTreeMap::new();
    for (s, c) in x.terms() {
        if let Some((t, sign)) = pattern(s, l) {
            let entry = out.entry(t).or_insert_with(BigInt::zero);
            *entry = ring.reduce(&*entry + if sign < 0 { -c.clone() } else { c.clone() });
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// The pattern chain map `h^ℓ : C_•(X) → S_•` in the bar basis.
pub fn h_ell(x: &SimplicialChain, l: &Labelling) -> Result<StandardChain> {
    check_support(x, l)?;
    let ring = x.ring().clone();
    let mut out = StandardChain::zero(l.k, ring.clone(), x.degree());
    for (s, c) in x.terms() {
        if let Some((t, sign)) = pattern(s, l) {
            let (lead, word) = t.to_bar();
            let c = if sign < 0 { -c.clone() } else { c.clone() };
            out.add_term(word, &GroupRingElement::group(l.k, ring.clone(), lead).scale(&c))?;
        }
    }
    Ok(out)
}

/// `ℓ_#`: the chain pushed into `(Z_k)^{*C}` where `C` is the largest color.
pub fn push_forward_to_join(x: &SimplicialChain, l: &Labelling) -> Result<SimplicialChain> {
    check_support(x, l)?;
    let mut out = SimplicialChain::zero(x.ring().clone(), x.degree());
    let mut buf = Vec::with_capacity(x.degree() + 1);
    for (s, c) in x.terms() {
        buf.clear();
        buf.extend(s.iter().map(|&v| {
            let lab = l.labels[v];
            (lab.color as usize - 1) * l.k + lab.sign
        }));
        out.add_oriented(&buf, c)?;
    }
    Ok(out)
}

/// `ℓ ∘ φ` for a vertex map `φ` given as `phi[v]`.
pub fn pullback(l: &Labelling, phi: &[usize]) -> Result<Labelling> {
    let labels = phi
        .iter()
        .map(|&w| l.labels.get(w).copied().ok_or_else(|| Error::Coverage(w.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Labelling { k: l.k, labels })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabellingMode {
    Admissible,
    EquivariantAdmissible,
}

const REPAIR_STEPS_PER_VERTEX: usize = 400;

/// Seeded random admissible labelling with colors `1..=colors`, built by
/// min-conflict repair. In equivariant mode only orbit representatives are
/// drawn and `ℓ(g^j v) = g^j ℓ(v)` fixes the rest.
pub fn random_labelling(
    x: &SimplicialComplex,
    k: usize,
    colors: u64,
    mode: LabellingMode,
    action: Option<&GroupActionOnComplex>,
    seed: u64,
) -> Result<Labelling> {
    if colors == 0 {
        return Err(Error::Domain("need at least one color".into()));
    }
    if k < 2 {
        return Err(Error::Domain(format!("group order must be at least 2, got {k}")));
    }
    let n = x.num_vertices();
    // unit_of[v] = (unit, j) with v = g^j · rep(unit)
    let (reps, unit_of): (Vec<usize>, Vec<(usize, usize)>) = match mode {
        LabellingMode::Admissible => ((0..n).collect(), (0..n).map(|v| (v, 0)).collect()),
        LabellingMode::EquivariantAdmissible => {
            let a = action.ok_or_else(|| {
                Error::Precondition("equivariant labellings need a group action".into())
            })?;
            if a.k() != k || a.generator().len() != n {
                return Err(Error::DimensionMismatch("action does not match the complex".into()));
            }
            let reps = a.orbit_representatives();
            let index: BTreeMap<usize, usize> =
                reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
            let unit_of = (0..n)
                .map(|v| {
                    let (rep, j) = a.orbit_position(v);
                    (index[&rep], j)
                })
                .collect();
            (reps, unit_of)
        }
    };
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); reps.len()];
    for (v, &(u, _)) in unit_of.iter().enumerate() {
        members[u].push(v);
    }
    let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, w) in x.edges() {
        neighbours[v].push(w);
        neighbours[w].push(v);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| Label {
        sign: rng.gen_range(0..k),
        color: rng.gen_range(1..=colors),
    };
    let mut unit_label: Vec<Label> = (0..reps.len()).map(|_| draw(&mut rng)).collect();
    let label_of = |unit_label: &[Label], v: usize| {
        let (u, j) = unit_of[v];
        let l = unit_label[u];
        Label { sign: (l.sign + j) % k, color: l.color }
    };
    let conflicts_at = |unit_label: &[Label], u: usize| -> usize {
        members[u]
            .iter()
            .map(|&v| {
                let a = label_of(unit_label, v);
                neighbours[v]
                    .iter()
                    .filter(|&&w| {
                        let b = label_of(unit_label, w);
                        a.color == b.color && a.sign != b.sign
                    })
                    .count()
            })
            .sum()
    };

    let budget = REPAIR_STEPS_PER_VERTEX * n.max(1);
    for _ in 0..budget {
        let bad: Vec<(usize, usize)> = x
            .edges()
            .filter(|&(v, w)| {
                let (a, b) = (label_of(&unit_label, v), label_of(&unit_label, w));
                a.color == b.color && a.sign != b.sign
            })
            .collect();
        if bad.is_empty() {
            let labels = (0..n).map(|v| label_of(&unit_label, v)).collect();
            return Labelling::new(k, labels);
        }
        let (v, w) = bad[rng.gen_range(0..bad.len())];
        let u = if rng.gen_bool(0.5) { unit_of[v].0 } else { unit_of[w].0 };
        if rng.gen_bool(0.2) {
            unit_label[u] = draw(&mut rng);
            continue;
        }
        let mut best: Vec<Label> = Vec::new();
        let mut best_score = usize::MAX;
        for sign in 0..k {
            for color in 1..=colors {
                let cand = Label { sign, color };
                unit_label[u] = cand;
                let score = conflicts_at(&unit_label, u);
                if score < best_score {
                    best_score = score;
                    best.clear();
                }
                if score == best_score {
                    best.push(cand);
                }
            }
        }
        unit_label[u] = best[rng.gen_range(0..best.len())];
    }
    Err(Error::GenerationFailed(format!(
        "no admissible labelling with {colors} colors found after {budget} repair steps"
    )))
}
