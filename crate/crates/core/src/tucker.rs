//! Generalized `Z_k`-spheres, the Tucker invariants `α_i`, and experiments
//! built on them.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::labelling::{
    check_equivariant, h_ell, random_labelling, tautological_labelling, Labelling, LabellingMode,
};
use crate::resolution::f_map;
use crate::ring::{GroupRingElement, RingSpec};
use crate::simplicial::{
    barycentric_subdivision, join_chains, join_complex, k_gon_join_sphere, CopyLayout,
    GroupActionOnComplex, SimplicialChain, SimplicialComplex,
};

/// Chains `x_0, …, x_r` with `∂x_i = σ x_{i-1}` (`i` even) or `τ x_{i-1}` (`i` odd).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedSphere {
    pub complex: SimplicialComplex,
    pub action: GroupActionOnComplex,
    pub ring: RingSpec,
    pub chains: Vec<SimplicialChain>,
}

impl GeneralizedSphere {
    pub fn k(&self) -> usize {
        self.action.k()
    }

    /// Top degree `r`.
    pub fn degree(&self) -> usize {
        self.chains.len().saturating_sub(1)
    }

    /// The sphere pushed through the equivariant subdivision chain map.
    pub fn subdivide(&self) -> Result<GeneralizedSphere> {
        let sd = barycentric_subdivision(&self.complex, Some(&self.action))?;
        let chains = self.chains.iter().map(|x| sd.apply(x)).collect::<Result<Vec<_>>>()?;
        let action = sd.action.expect("an action was supplied");
        Ok(GeneralizedSphere { complex: sd.complex, action, ring: self.ring.clone(), chains })
    }
}

/// `σ · x` or `τ · x` through the complex's action.
fn multiply(action: &GroupActionOnComplex, ring: &RingSpec, x: &SimplicialChain, by_sigma: bool) -> SimplicialChain {
    let k = action.k();
    let factor = if by_sigma {
        GroupRingElement::sigma(k, ring.clone())
    } else {
        GroupRingElement::tau(k, ring.clone())
    };
    x.act(action, &factor)
}

/// `x_{2s} = u^s ⋈ T_s`, `x_{2s+1} = w^s ⋈ T_s`, `T_{s+1} = σw^s ⋈ T_s`.
fn assemble(
    action: &GroupActionOnComplex,
    ring: &RingSpec,
    layout: CopyLayout,
    u: &[SimplicialChain],
    w: &[SimplicialChain],
    top: usize,
) -> Result<Vec<SimplicialChain>> {
    let mut chains = Vec::with_capacity(top + 1);
    let mut tail: Option<SimplicialChain> = None;
    let join = |x: &SimplicialChain, t: &Option<SimplicialChain>| match t {
        None => Ok(x.clone()),
        Some(t) => join_chains(x, t, layout),
    };
    for i in 0..=top {
        let s = i / 2;
        if i % 2 == 0 {
            chains.push(join(&u[s], &tail)?);
        } else {
            chains.push(join(&w[s], &tail)?);
            let o = multiply(action, ring, &w[s], true);
            tail = Some(join(&o, &tail)?);
        }
    }
    Ok(chains)
}

/// The sphere `x_0, …, x_d` in `(Z_k)^{*(d+1)}` built from
/// `u^i = ⟨(e, d-2i)⟩` and
/// `w^i = ⟨(e, d-2i-1), (g, d-2i)⟩ - ⟨(e, d-2i-1), (e, d-2i)⟩`.
///
/// Copies are numbered `0..=d` here and stored as join copies `1..=d+1`.
pub fn build_ezk_sphere(k: usize, d: usize, ring: &RingSpec) -> Result<GeneralizedSphere> {
    let (complex, action) = join_complex(k, d + 1)?;
    let vertex = |copy: usize, sign: usize| copy * k + sign;
    let mut u = Vec::new();
    let mut w = Vec::new();
    for i in 0..=d / 2 {
        let c = d - 2 * i;
        u.push(SimplicialChain::simplex(ring.clone(), &[vertex(c, 0)])?);
        if c >= 1 {
            let mut wi = SimplicialChain::simplex(ring.clone(), &[vertex(c - 1, 0), vertex(c, 1)])?;
            wi = wi.checked_sub(&SimplicialChain::simplex(
                ring.clone(),
                &[vertex(c - 1, 0), vertex(c, 0)],
            )?)?;
            w.push(wi);
        }
    }
    let chains = assemble(&action, ring, CopyLayout { per_copy: k }, &u, &w, d)?;
    Ok(GeneralizedSphere { complex, action, ring: ring.clone(), chains })
}

/// The sphere `x_0, …, x_{2m+1}` on the join of `m + 1` rotating `k`-gons.
pub fn build_kgon_sphere(k: usize, m: usize, ring: &RingSpec) -> Result<GeneralizedSphere> {
    let kg = k_gon_join_sphere(k, m, ring)?;
    let u = kg
        .u
        .iter()
        .map(|&v| SimplicialChain::simplex(ring.clone(), &[v]))
        .collect::<Result<Vec<_>>>()?;
    let chains = assemble(&kg.action, ring, kg.layout, &u, &kg.w, 2 * m + 1)?;
    Ok(GeneralizedSphere { complex: kg.complex, action: kg.action, ring: ring.clone(), chains })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereVerification {
    pub ok: bool,
    pub checked: usize,
    /// Degree `i` of the first relation `∂x_i = σ/τ x_{i-1}` that fails, or
    /// of the first chain with the wrong degree or support.
    pub first_failure: Option<usize>,
}

pub fn verify_generalized_sphere(gs: &GeneralizedSphere) -> SphereVerification {
    let fail = |i: usize, checked: usize| SphereVerification { ok: false, checked, first_failure: Some(i) };
    for (i, x) in gs.chains.iter().enumerate() {
        if x.degree() != i || x.ring() != &gs.ring || gs.complex.check_chain(x).is_err() {
            return fail(i, i);
        }
        if i == 0 {
            continue;
        }
        let lhs = match x.boundary() {
            Ok(b) => b,
            Err(_) => return fail(i, i - 1),
        };
        let rhs = multiply(&gs.action, &gs.ring, &gs.chains[i - 1], i % 2 == 0);
        if lhs != rhs {
            return fail(i, i - 1);
        }
    }
    SphereVerification { ok: true, checked: gs.chains.len().saturating_sub(1), first_failure: None }
}

/// `u(σ · f(h^ℓ(x))) = augment(f(h^ℓ(x)))`.
pub fn alpha_of(x: &SimplicialChain, l: &Labelling) -> Result<BigInt> {
    Ok(f_map(&h_ell(x, l)?).value.augment())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaSequence {
    pub k: usize,
    #[serde(serialize_with = "crate::io::serialize_bigints")]
    pub values: Vec<BigInt>,
    /// Coefficient sum of `x_0`, which `α_0` must equal.
    #[serde(serialize_with = "crate::io::serialize_bigint")]
    pub alpha0_direct: BigInt,
    /// Every `α_i ≡ α_0 (mod k)` and `α_0` equals the direct value.
    pub congruent: bool,
}

pub fn alpha_sequence(gs: &GeneralizedSphere, l: &Labelling) -> Result<AlphaSequence> {
    let bad = check_equivariant(l, &gs.action)?;
    if !bad.is_empty() {
        return Err(Error::Precondition(format!(
            "labelling is not equivariant at {} vertex(es)",
            bad.len()
        )));
    }
    let values = gs.chains.iter().map(|x| alpha_of(x, l)).collect::<Result<Vec<_>>>()?;
    let alpha0_direct = gs.chains.first().map(SimplicialChain::augmentation).unwrap_or_default();
    let k = gs.k();
    let congruent = values.first() == Some(&alpha0_direct)
        && values.iter().all(|a| gs.ring.congruent_mod(a, &values[0], k));
    Ok(AlphaSequence { k, values, alpha0_direct, congruent })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubdivisionTuckerReport {
    pub k: usize,
    pub d: usize,
    pub rounds: usize,
    pub vertices: usize,
    pub facets: usize,
    pub sphere_ok: bool,
    pub seeds: Vec<u64>,
    /// `α_{d+1}` per seed.
    #[serde(serialize_with = "crate::io::serialize_bigints")]
    pub counts: Vec<BigInt>,
    pub all_congruent_to_one: bool,
}

/// Subdivides the sphere of `(Z_k)^{*(d+2)}` `rounds` times and checks
/// `α_{d+1} ≡ 1 (mod k)` for random equivariant admissible labellings.
pub fn subdivision_tucker_check(
    k: usize,
    d: usize,
    rounds: usize,
    seeds: &[u64],
    colors: u64,
) -> Result<SubdivisionTuckerReport> {
    let ring = RingSpec::Integers;
    let mut gs = build_ezk_sphere(k, d + 1, &ring)?;
    for _ in 0..rounds {
        let facets = gs.complex.facets().len() as u128;
        let grown = facets.saturating_mul((1..=(d as u128 + 2)).product());
        if grown > crate::simplicial::DEFAULT_FACET_CAP {
            return Err(Error::ResourceLimit { requested: grown, cap: crate::simplicial::DEFAULT_FACET_CAP });
        }
        gs = gs.subdivide()?;
    }
    let sphere_ok = verify_generalized_sphere(&gs).ok;
    let mut counts = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let l = if rounds == 0 && seed == 0 {
            tautological_labelling(k, d + 2)
        } else {
            random_labelling(
                &gs.complex,
                k,
                colors,
                LabellingMode::EquivariantAdmissible,
                Some(&gs.action),
                seed,
            )?
        };
        counts.push(alpha_of(&gs.chains[d + 1], &l)?);
    }
    let one = BigInt::from(1);
    let all_congruent_to_one = sphere_ok && counts.iter().all(|c| ring.congruent_mod(c, &one, k));
    Ok(SubdivisionTuckerReport {
        k,
        d,
        rounds,
        vertices: gs.complex.num_vertices(),
        facets: gs.complex.facets().len(),
        sphere_ok,
        seeds: seeds.to_vec(),
        counts,
        all_congruent_to_one,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub k: usize,
    pub degree: usize,
    #[serde(serialize_with = "crate::io::serialize_bigints")]
    pub values: Vec<BigInt>,
    pub single_class: bool,
}

/// `α = u(σ f(h^ℓ(x)))` for every labelling, all required to agree mod `k`.
/// Needs `∂(τx) = 0` for even degree and `∂(σx) = 0` for odd degree, and
/// equivariant labellings.
pub fn alpha_invariance_experiment(
    x_complex: &SimplicialComplex,
    action: &GroupActionOnComplex,
    x: &SimplicialChain,
    labellings: &[Labelling],
) -> Result<InvarianceReport> {
    x_complex.check_chain(x)?;
    let ring = x.ring();
    let k = action.k();
    if x.degree() > 0 {
        let y = multiply(action, ring, x, x.degree() % 2 == 1);
        if !y.boundary()?.is_zero() {
            let which = if x.degree() % 2 == 1 { "σx" } else { "τx" };
            return Err(Error::Precondition(format!("{which} is not a cycle")));
        }
    }
    let mut values = Vec::with_capacity(labellings.len());
    for l in labellings {
        if !check_equivariant(l, action)?.is_empty() {
            return Err(Error::Precondition("labelling is not equivariant".into()));
        }
        values.push(alpha_of(x, l)?);
    }
    let single_class = values.windows(2).all(|w| ring.congruent_mod(&w[0], &w[1], k));
    Ok(InvarianceReport { k, degree: x.degree(), values, single_class })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ezk_spheres_verify() {
        for k in 2..=4 {
            for d in 0..=3 {
                let gs = build_ezk_sphere(k, d, &RingSpec::Integers).unwrap();
                let v = verify_generalized_sphere(&gs);
                assert!(v.ok, "k={k} d={d}: {v:?}");
                assert_eq!(gs.degree(), d);
            }
        }
    }

    #[test]
    fn ezk_base_vertex() {
        let gs = build_ezk_sphere(3, 0, &RingSpec::Integers).unwrap();
        assert_eq!(gs.chains[0].coeff(&[0]), BigInt::from(1));
        let gs = build_ezk_sphere(3, 2, &RingSpec::Integers).unwrap();
        // u^0 sits in copy d = 2, stored as join copy 3
        assert_eq!(gs.complex.vertex_name(6), "s0c3");
        assert_eq!(gs.chains[0].coeff(&[6]), BigInt::from(1));
    }

    #[test]
    fn kgon_sphere_verifies() {
        let gs = build_kgon_sphere(3, 1, &RingSpec::Integers).unwrap();
        assert!(verify_generalized_sphere(&gs).ok);
        assert_eq!(gs.degree(), 3);
    }

    #[test]
    fn corrupted_sphere_is_located() {
        let mut gs = build_ezk_sphere(3, 2, &RingSpec::Integers).unwrap();
        let s = gs.chains[1].support().next().unwrap().clone();
        gs.chains[1].add_term(s, BigInt::from(1));
        let v = verify_generalized_sphere(&gs);
        assert!(!v.ok);
        assert_eq!(v.first_failure, Some(1));
    }

    #[test]
    fn tautological_alphas_are_one() {
        for k in 2..=4 {
            let gs = build_ezk_sphere(k, 3, &RingSpec::Integers).unwrap();
            let a = alpha_sequence(&gs, &tautological_labelling(k, 4)).unwrap();
            assert!(a.congruent, "{a:?}");
            assert_eq!(a.values[0], BigInt::from(1));
        }
    }

    #[test]
    fn zero_rounds_reduce_to_the_plain_sphere() {
        let r = subdivision_tucker_check(3, 0, 0, &[0, 1, 2], 4).unwrap();
        assert!(r.all_congruent_to_one, "{r:?}");
    }
}
