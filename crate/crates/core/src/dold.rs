//! Spheres from vanishing homology, the colorful strongly alternating
//! simplex they force, and refutation of equivariant maps into
//! low-dimensional complexes.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homalg::{boundary_matrix, reduced_homology, solve_linear};
use crate::labelling::{
    check_admissible, check_equivariant, pattern, pullback, Label, Labelling,
};
use crate::ring::{GroupRingElement, RingSpec};
use crate::simplicial::{GroupActionOnComplex, Simplex, SimplicialChain, SimplicialComplex};
use crate::tucker::{alpha_of, verify_generalized_sphere, GeneralizedSphere};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomologicalSphere {
    Sphere(GeneralizedSphere),
    /// `∂x_degree = target` has no solution; `target` is a cycle with a
    /// nonzero homology class.
    Obstruction { degree: usize, target: SimplicialChain },
}

/// Builds `x_0 = ⟨v_0⟩, x_1, …, x_r` by solving `∂x_{i+1} = τx_i` (`i` even)
/// or `σx_i` (`i` odd) over `ring`. Requires `k` to be a non-unit of `ring`.
pub fn build_sphere_homologically(
    x: &SimplicialComplex,
    action: &GroupActionOnComplex,
    r: usize,
    ring: &RingSpec,
) -> Result<HomologicalSphere> {
    let k = action.k();
    if ring.is_unit(k) {
        return Err(Error::Precondition(format!("{k} is a unit in {ring}, so kR = R")));
    }
    if x.num_vertices() == 0 {
        return Err(Error::Domain("the complex has no vertices".into()));
    }
    let mut chains = vec![SimplicialChain::simplex(ring.clone(), &[0])?];
    for i in 0..r {
        let factor = if i % 2 == 0 {
            GroupRingElement::tau(k, ring.clone())
        } else {
            GroupRingElement::sigma(k, ring.clone())
        };
        let target = chains[i].act(action, &factor);
        let a = boundary_matrix(x, i + 1);
        let b = target.to_vector(x)?;
        match solve_linear(&a, &b, ring)? {
            Some(sol) => chains.push(SimplicialChain::from_vector(x, ring.clone(), i + 1, &sol)),
            None => return Ok(HomologicalSphere::Obstruction { degree: i + 1, target }),
        }
    }
    let gs = GeneralizedSphere {
        complex: x.clone(),
        action: action.clone(),
        ring: ring.clone(),
        chains,
    };
    debug_assert!(verify_generalized_sphere(&gs).ok);
    Ok(HomologicalSphere::Sphere(gs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessVerdict {
    /// An `(r+1)`-simplex with `r+2` colors and a strongly alternating pattern.
    Witness { simplex: Simplex, pattern: Vec<usize>, in_sphere_support: bool },
    /// A hypothesis of the bound fails for this input.
    HypothesisViolated { reason: String },
    /// Hypotheses hold, yet `α_{r+1} ≢ α_0 (mod k)`.
    Contradiction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub r: usize,
    #[serde(serialize_with = "crate::io::serialize_opt_bigint")]
    pub alpha0: Option<BigInt>,
    #[serde(serialize_with = "crate::io::serialize_opt_bigint")]
    pub alpha_top: Option<BigInt>,
    pub verdict: WitnessVerdict,
}

fn strongly_alternating_simplex(s: &[usize], l: &Labelling) -> Option<Vec<usize>> {
    pattern(s, l)
        .filter(|(t, _)| t.is_strongly_alternating())
        .map(|(t, _)| t.entries().to_vec())
}

/// Searches the support of `x_{r+1}` and then all `(r+1)`-faces for a
/// simplex with a strongly alternating `r+2`-colored pattern.
pub fn hom_bound_witness(
    gs: &GeneralizedSphere,
    l: &Labelling,
    r: usize,
) -> Result<WitnessReport> {
    if gs.chains.len() < r + 2 {
        return Err(Error::Degree(format!("the sphere stops below degree {}", r + 1)));
    }
    let violated = |reason: String| WitnessReport {
        r,
        alpha0: None,
        alpha_top: None,
        verdict: WitnessVerdict::HypothesisViolated { reason },
    };
    let bad = check_admissible(&gs.complex, l)?;
    if !bad.is_empty() {
        return Ok(violated(format!("labelling is not admissible on {} edge(s)", bad.len())));
    }
    let bad = check_equivariant(l, &gs.action)?;
    if !bad.is_empty() {
        return Ok(violated(format!("labelling is not equivariant at {} vertex(es)", bad.len())));
    }
    if !verify_generalized_sphere(gs).ok {
        return Ok(violated("the chains do not form a generalized sphere".into()));
    }
    let alpha0 = alpha_of(&gs.chains[0], l)?;
    let alpha_top = alpha_of(&gs.chains[r + 1], l)?;

    let found = gs.chains[r + 1]
        .support()
        .find_map(|s| strongly_alternating_simplex(s, l).map(|p| (s.clone(), p, true)))
        .or_else(|| {
            gs.complex
                .faces(r + 1)
                .iter()
                .find_map(|s| strongly_alternating_simplex(s, l).map(|p| (s.clone(), p, false)))
        });
    let verdict = match found {
        Some((simplex, pattern, in_sphere_support)) => {
            WitnessVerdict::Witness { simplex, pattern, in_sphere_support }
        }
        None if !gs.ring.congruent_mod(&alpha_top, &alpha0, gs.k()) => WitnessVerdict::Contradiction,
        None => WitnessVerdict::HypothesisViolated {
            reason: "no witness although α_{r+1} ≡ α_0; α_0 must be a non-unit multiple of k".into(),
        },
    };
    Ok(WitnessReport { r, alpha0: Some(alpha0), alpha_top: Some(alpha_top), verdict })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RefutationVerdict {
    /// The vertex map sends this simplex of `X` to a non-face of `Y`.
    NotSimplicial { simplex: Simplex },
    /// `φ(g v) != g φ(v)` at this vertex.
    NotEquivariant { vertex: usize },
    HypothesisFailed { reason: String },
    /// All hypotheses hold and the pulled-back labelling yields the
    /// contradiction `α_{r+1} ≢ α_0`: the map cannot exist.
    Refuted {
        #[serde(serialize_with = "crate::io::serialize_bigint")]
        alpha0: BigInt,
        #[serde(serialize_with = "crate::io::serialize_bigint")]
        alpha_top: BigInt,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefutationReport {
    pub r: usize,
    pub verdict: RefutationVerdict,
}

impl RefutationReport {
    /// True when the candidate map was shown not to be an equivariant
    /// simplicial map (or not to exist at all).
    pub fn rejected(&self) -> bool {
        !matches!(self.verdict, RefutationVerdict::HypothesisFailed { .. })
    }
}

/// Labels `Y` by orbits: color = orbit index + 1, sign = position in the orbit.
pub fn orbit_labelling(action: &GroupActionOnComplex) -> Labelling {
    let reps = action.orbit_representatives();
    let labels = (0..action.generator().len())
        .map(|v| {
            let (rep, j) = action.orbit_position(v);
            let color = reps.binary_search(&rep).expect("rep is listed") as u64 + 1;
            Label { sign: j, color }
        })
        .collect();
    Labelling::new(action.k(), labels).expect("signs and colors are in range")
}

/// Checks `φ : X → Y` and, if it is an equivariant simplicial map, derives
/// the contradiction with `dim Y <= r` from vanishing `H̃_{<= r}(X; ring)`.
pub fn refute_equivariant_map(
    x: &SimplicialComplex,
    action_x: &GroupActionOnComplex,
    y: &SimplicialComplex,
    action_y: &GroupActionOnComplex,
    phi: &[usize],
    r: usize,
    ring: &RingSpec,
) -> Result<RefutationReport> {
    if phi.len() != x.num_vertices() || phi.iter().any(|&w| w >= y.num_vertices()) {
        return Err(Error::DimensionMismatch("vertex map does not match the complexes".into()));
    }
    if action_x.k() != action_y.k() {
        return Err(Error::DimensionMismatch("actions of different groups".into()));
    }
    let report = |verdict| Ok(RefutationReport { r, verdict });
    for f in x.facets() {
        let mut image: Vec<usize> = f.iter().map(|&v| phi[v]).collect();
        image.sort_unstable();
        image.dedup();
        if !y.contains(&image) {
            return report(RefutationVerdict::NotSimplicial { simplex: f.clone() });
        }
    }
    if let Some(v) = (0..phi.len()).find(|&v| phi[action_x.apply_vertex(1, v)] != action_y.apply_vertex(1, phi[v])) {
        return report(RefutationVerdict::NotEquivariant { vertex: v });
    }
    let failed = |reason: String| report(RefutationVerdict::HypothesisFailed { reason });
    if y.dimension().is_some_and(|d| d > r) {
        return failed(format!("dim Y = {} exceeds r = {r}", y.dimension().unwrap_or(0)));
    }
    if ring.is_unit(action_x.k()) {
        return failed(format!("{} is a unit in {ring}", action_x.k()));
    }
    let h = reduced_homology(x, ring)?;
    if let Some(i) = h.iter().take(r + 1).position(|g| !g.is_trivial()) {
        return failed(format!("reduced homology of X is nonzero in degree {i}"));
    }
    let ly = orbit_labelling(action_y);
    let bad = check_admissible(y, &ly)?;
    if !bad.is_empty() {
        return failed("Y has an edge between vertices of one orbit".into());
    }
    let lx = pullback(&ly, phi)?;
    let gs = match build_sphere_homologically(x, action_x, r + 1, ring)? {
        HomologicalSphere::Sphere(gs) => gs,
        HomologicalSphere::Obstruction { degree, .. } => {
            return failed(format!("no sphere chain in degree {degree}"))
        }
    };
    let w = hom_bound_witness(&gs, &lx, r)?;
    match (w.verdict, w.alpha0, w.alpha_top) {
        (WitnessVerdict::Contradiction, Some(alpha0), Some(alpha_top)) => {
            report(RefutationVerdict::Refuted { alpha0, alpha_top })
        }
        (WitnessVerdict::Witness { simplex, .. }, _, _) => failed(format!(
            "pulled-back labelling has a colorful simplex {simplex:?}, so dim Y > r after all"
        )),
        (WitnessVerdict::HypothesisViolated { reason }, _, _) => failed(reason),
        _ => failed("inconsistent witness report".into()),
    }
}

/// Every equivariant vertex map `X → Y`: each orbit representative of `X`
/// may go to any vertex of `Y`, which fixes the rest of its orbit.
pub fn enumerate_equivariant_vertex_maps(
    action_x: &GroupActionOnComplex,
    action_y: &GroupActionOnComplex,
) -> Result<Vec<Vec<usize>>> {
    let reps = action_x.orbit_representatives();
    let ny = action_y.generator().len();
    let total = (ny as u128).checked_pow(reps.len() as u32).unwrap_or(u128::MAX);
    let cap = crate::resolution::DEFAULT_ENUMERATION_CAP as u128;
    if total > cap {
        return Err(Error::ResourceLimit { requested: total, cap });
    }
    let n = action_x.generator().len();
    let mut out = Vec::with_capacity(total as usize);
    let mut choice = vec![0usize; reps.len()];
    loop {
        let phi: Vec<usize> = (0..n)
            .map(|v| {
                let (rep, j) = action_x.orbit_position(v);
                let idx = reps.binary_search(&rep).expect("rep is listed");
                action_y.apply_vertex(j, choice[idx])
            })
            .collect();
        out.push(phi);
        // odometer over the choices
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < ny {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelling::tautological_labelling;
    use crate::simplicial::join_complex;

    #[test]
    fn join_sphere_is_found() {
        let (x, a) = join_complex(3, 3).unwrap();
        match build_sphere_homologically(&x, &a, 2, &RingSpec::Integers).unwrap() {
            HomologicalSphere::Sphere(gs) => assert!(verify_generalized_sphere(&gs).ok),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn points_obstruct_in_degree_one() {
        let x = SimplicialComplex::from_index_facets(3, vec![vec![0], vec![1], vec![2]]).unwrap();
        let a = GroupActionOnComplex::new(&x, 3, vec![1, 2, 0]).unwrap();
        match build_sphere_homologically(&x, &a, 1, &RingSpec::Integers).unwrap() {
            HomologicalSphere::Obstruction { degree, .. } => assert_eq!(degree, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unit_k_is_rejected() {
        let (x, a) = join_complex(3, 2).unwrap();
        let z2 = RingSpec::modular(2).unwrap();
        assert!(matches!(
            build_sphere_homologically(&x, &a, 1, &z2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn witness_on_full_join() {
        let (x, a) = join_complex(3, 3).unwrap();
        let HomologicalSphere::Sphere(gs) = build_sphere_homologically(&x, &a, 2, &RingSpec::Integers).unwrap()
        else {
            panic!("no sphere")
        };
        let rep = hom_bound_witness(&gs, &tautological_labelling(3, 3), 1).unwrap();
        assert!(matches!(rep.verdict, WitnessVerdict::Witness { .. }), "{rep:?}");
    }

    #[test]
    fn octahedron_to_square_has_64_candidates_all_rejected() {
        let (x, ax) = join_complex(2, 3).unwrap();
        let (y, ay) = join_complex(2, 2).unwrap();
        let maps = enumerate_equivariant_vertex_maps(&ax, &ay).unwrap();
        assert_eq!(maps.len(), 64);
        for phi in &maps {
            let rep = refute_equivariant_map(&x, &ax, &y, &ay, phi, 1, &RingSpec::Integers).unwrap();
            assert!(rep.rejected(), "{rep:?}");
        }
    }
}
