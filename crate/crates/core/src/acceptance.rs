//! The acceptance suite as library code, shared by the `acceptance` test
//! target and the `selftest` command. Outcomes hold no timings so that
//! reports are byte-identical across runs; callers time the criteria.

use std::time::Duration;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dold::{
    build_sphere_homologically, enumerate_equivariant_vertex_maps, refute_equivariant_map,
    HomologicalSphere, RefutationVerdict,
};
use crate::error::{Error, Result};
use crate::homalg::{homology_retract_check, reduced_homology, smith_normal_form, Matrix};
use crate::labelling::{random_labelling, LabellingMode};
use crate::resolution::{
    minimal_boundary, verify_f_chain_map, BarWord, MinimalElement, StandardChain,
};
use crate::ring::{special_element, Basis, GroupRingElement, RingSpec, Special};
use crate::simplicial::{
    alt_subcomplex, join_chains, join_complex, pseudomanifold_analysis, CopyLayout,
    SimplicialChain, SimplicialComplex,
};
use crate::stokes::{plus_alternating_count, stokes_sides};
use crate::tucker::{
    alpha_invariance_experiment, alpha_sequence, build_ezk_sphere, subdivision_tucker_check,
    verify_generalized_sphere,
};

/// Fixed seed of the randomized substrate checks.
pub const SUBSTRATE_SEED: u64 = 0x5eed_2024;
/// Randomized trials per substrate property.
pub const SUBSTRATE_TRIALS: usize = 1000;

#[derive(Clone, Copy, Debug)]
pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    /// Wall-clock budget.
    pub limit: Duration,
    run: fn() -> Result<Tally>,
}

impl Criterion {
    pub fn run(&self) -> CriterionOutcome {
        let (passed, checks, detail) = match (self.run)() {
            Ok(t) => (t.failures.is_empty(), t.checks, t.summary()),
            Err(e) => (false, 0, format!("error: {e}")),
        };
        CriterionOutcome { id: self.id, name: self.name.to_string(), passed, checks, detail }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub checks: u64,
    pub detail: String,
}

pub const CRITERIA: [Criterion; 8] = [
    Criterion { id: 1, name: "chain map f", limit: Duration::from_secs(5), run: chain_map },
    Criterion { id: 2, name: "Stokes formula", limit: Duration::from_secs(30), run: stokes },
    Criterion { id: 3, name: "Fan parity for k = 2", limit: Duration::from_secs(10), run: fan },
    Criterion { id: 4, name: "generalized Tucker", limit: Duration::from_secs(60), run: tucker },
    Criterion { id: 5, name: "labelling invariance", limit: Duration::from_secs(10), run: invariance },
    Criterion { id: 6, name: "homological spheres and Dold", limit: Duration::from_secs(60), run: dold },
    Criterion { id: 7, name: "retract homology", limit: Duration::from_secs(60), run: retract },
    Criterion { id: 8, name: "algebra substrate", limit: Duration::from_secs(10), run: substrate },
];

pub fn run_all() -> Vec<CriterionOutcome> {
    CRITERIA.iter().map(Criterion::run).collect()
}

#[derive(Default)]
struct Tally {
    checks: u64,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn summary(&self) -> String {
        let mut s = format!("{} checks, {} failures", self.checks, self.failures.len());
        for n in &self.notes {
            s.push_str("; ");
            s.push_str(n);
        }
        if let Some(f) = self.failures.first() {
            s.push_str("; first failure: ");
            s.push_str(f);
        }
        s
    }
}

fn chain_map() -> Result<Tally> {
    let mut t = Tally::default();
    for k in 2..=6 {
        let rep = verify_f_chain_map(k, 4, &RingSpec::Integers, None)?;
        t.checks += rep.checked;
        if let Some(f) = rep.failures.first() {
            t.failures.push(format!("k={k} word {:?}", f.word.letters()));
        }
    }
    Ok(t)
}

fn full_simplex(r: usize) -> Result<(SimplicialComplex, SimplicialChain)> {
    let vertices: Vec<usize> = (0..=r).collect();
    let x = SimplicialComplex::from_index_facets(r + 1, vec![vertices.clone()])?;
    Ok((x, SimplicialChain::simplex(RingSpec::Integers, &vertices)?))
}

fn octahedral_sphere(d: usize) -> Result<(SimplicialComplex, crate::simplicial::GroupActionOnComplex, SimplicialChain)> {
    let (x, a) = join_complex(2, d + 1)?;
    let o = pseudomanifold_analysis(&x)
        .orientation_chain
        .ok_or_else(|| Error::Precondition("the octahedral sphere must be orientable".into()))?;
    Ok((x, a, o))
}

fn random_top_chain(x: &SimplicialComplex, rng: &mut ChaCha8Rng) -> SimplicialChain {
    let d = x.dimension().unwrap_or(0);
    let mut c = SimplicialChain::zero(RingSpec::Integers, d);
    for f in x.faces(d) {
        c.add_term(f.clone(), BigInt::from(rng.gen_range(-2i64..=2)));
    }
    c
}

fn stokes() -> Result<Tally> {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let simplices = (1..=3).map(full_simplex).collect::<Result<Vec<_>>>()?;
    let octahedra = (1..=3).map(octahedral_sphere).collect::<Result<Vec<_>>>()?;
    for k in 2..=4 {
        let alts = [alt_subcomplex(k, 3, 1)?.0, alt_subcomplex(k, 4, 2)?.0];
        for seed in 0..100u64 {
            let mut cases: Vec<(&str, &SimplicialComplex, SimplicialChain)> = Vec::new();
            for (x, c) in &simplices {
                cases.push(("simplex", x, c.clone()));
            }
            let alt = &alts[seed as usize % 2];
            cases.push(("alt", alt, random_top_chain(alt, &mut rng)));
            let (oct, _, o) = &octahedra[seed as usize % 3];
            cases.push(("octahedron", oct, o.clone()));
            for (kind, x, c) in cases {
                let colors = 1 + seed % (c.degree() as u64 + 2);
                let l = random_labelling(x, k, colors, LabellingMode::Admissible, None, seed)?;
                let rep = stokes_sides(&c, &l)?;
                t.check(rep.equal, || format!("k={k} {kind} seed={seed}: {rep:?}"));
            }
        }
    }
    Ok(t)
}

fn fan() -> Result<Tally> {
    let mut t = Tally::default();
    for d in 1..=3 {
        let (x, a, o) = octahedral_sphere(d)?;
        for seed in 0..50u64 {
            let colors = (d + 1) as u64 + seed % 3;
            let l = random_labelling(&x, 2, colors, LabellingMode::EquivariantAdmissible, Some(&a), seed)?;
            let count = plus_alternating_count(&o, &l);
            t.check(count % 2 == 1, || format!("d={d} seed={seed}: {count} facets"));
        }
    }
    Ok(t)
}

fn tucker() -> Result<Tally> {
    let mut t = Tally::default();
    let z = RingSpec::Integers;
    for k in 2..=4 {
        for d in 0..=3 {
            let gs = build_ezk_sphere(k, d, &z)?;
            let v = verify_generalized_sphere(&gs);
            t.check(v.ok, || format!("k={k} d={d}: sphere fails at {:?}", v.first_failure));
            for seed in 0..25u64 {
                let colors = (d + 1) as u64 + seed % 3;
                let l = random_labelling(
                    &gs.complex,
                    k,
                    colors,
                    LabellingMode::EquivariantAdmissible,
                    Some(&gs.action),
                    seed,
                )?;
                let seq = alpha_sequence(&gs, &l)?;
                let ok = seq.congruent && seq.values[0].is_one();
                t.check(ok, || format!("k={k} d={d} seed={seed}: {:?}", seq.values));
            }
        }
    }
    let seeds: Vec<u64> = (0..25).collect();
    for k in 2..=3 {
        for d in 0..=1 {
            let rep = subdivision_tucker_check(k, d, 1, &seeds, d as u64 + 2)?;
            t.checks += rep.counts.len() as u64;
            if !rep.all_congruent_to_one {
                t.failures.push(format!("subdivided k={k} d={d}: {:?}", rep.counts));
            }
        }
    }
    Ok(t)
}

fn invariance() -> Result<Tally> {
    let mut t = Tally::default();
    for k in 2..=3 {
        for d in 0..=2 {
            let gs = build_ezk_sphere(k, d, &RingSpec::Integers)?;
            let labellings = (0..20u64)
                .map(|seed| {
                    random_labelling(
                        &gs.complex,
                        k,
                        (d + 1) as u64 + seed % 3,
                        LabellingMode::EquivariantAdmissible,
                        Some(&gs.action),
                        seed,
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            let rep = alpha_invariance_experiment(&gs.complex, &gs.action, &gs.chains[d], &labellings)?;
            t.check(rep.single_class, || format!("k={k} d={d}: {:?}", rep.values));
        }
    }
    Ok(t)
}

fn dold() -> Result<Tally> {
    let mut t = Tally::default();
    let z = RingSpec::Integers;
    for k in 2..=3 {
        for r in 0..=2 {
            let (x, a) = join_complex(k, r + 2)?;
            let ok = match build_sphere_homologically(&x, &a, r + 1, &z)? {
                HomologicalSphere::Sphere(gs) => verify_generalized_sphere(&gs).ok,
                HomologicalSphere::Obstruction { .. } => false,
            };
            t.check(ok, || format!("no homological sphere on k={k}, {} copies", r + 2));
        }
    }
    let (x, ax) = join_complex(2, 3)?;
    let (y, ay) = join_complex(2, 2)?;
    let maps = enumerate_equivariant_vertex_maps(&ax, &ay)?;
    let mut not_simplicial = 0;
    for phi in &maps {
        let rep = refute_equivariant_map(&x, &ax, &y, &ay, phi, 1, &z)?;
        if matches!(rep.verdict, RefutationVerdict::NotSimplicial { .. }) {
            not_simplicial += 1;
        }
        t.check(rep.rejected(), || format!("map {phi:?} not refuted: {:?}", rep.verdict));
    }
    t.check(maps.len() == 64, || format!("expected 64 equivariant vertex maps, found {}", maps.len()));
    t.notes.push(format!("{} maps rejected, {not_simplicial} not simplicial", maps.len()));
    Ok(t)
}

fn retract() -> Result<Tally> {
    let mut t = Tally::default();
    for (k, d, m) in [(2, 1, 3), (2, 1, 4), (2, 2, 4), (3, 0, 3), (3, 1, 3)] {
        let rep = homology_retract_check(k, m, d)?;
        t.check(rep.matches, || format!("(k,d,m)=({k},{d},{m}): {:?} vs {:?}", rep.alt, rep.join));
    }
    for k in 2..=3usize {
        for d in 0..=2 {
            let (x, _) = join_complex(k, d + 1)?;
            let h = reduced_homology(&x, &RingSpec::Integers)?;
            let rank = (k - 1).pow(d as u32 + 1);
            let ok = h.iter().enumerate().all(|(i, g)| {
                g.torsion.is_empty() && g.rank == if i == d { rank } else { 0 }
            });
            t.check(ok, || format!("k={k} d={d}: {h:?}"));
        }
    }
    Ok(t)
}

fn random_ring(rng: &mut ChaCha8Rng) -> RingSpec {
    match rng.gen_range(0..3) {
        0 => RingSpec::Integers,
        _ => RingSpec::IntegersMod(BigInt::from(rng.gen_range(2..=12))),
    }
}

fn random_element(k: usize, ring: &RingSpec, rng: &mut ChaCha8Rng) -> GroupRingElement {
    let coeffs = (0..k).map(|_| ring.reduce(BigInt::from(rng.gen_range(-9i64..=9)))).collect();
    GroupRingElement::from_coeffs(k, ring.clone(), coeffs).expect("k coefficients")
}

fn random_simplicial_chain(rng: &mut ChaCha8Rng, ring: &RingSpec, vertices: &[usize], degree: usize) -> SimplicialChain {
    let mut c = SimplicialChain::zero(ring.clone(), degree);
    for _ in 0..rng.gen_range(1..=4) {
        let mut pool = vertices.to_vec();
        let mut s = Vec::with_capacity(degree + 1);
        for _ in 0..=degree {
            s.push(pool.swap_remove(rng.gen_range(0..pool.len())));
        }
        c.add_oriented(&s, &BigInt::from(rng.gen_range(-3i64..=3)))
            .expect("distinct vertices");
    }
    c
}

/// `∂(x ⋈ y) = ∂x ⋈ y + (-1)^{deg x + 1} x ⋈ ∂y`, with `∂v ⋈ y = ε(v) y` in
/// degree 0, for the supplied join operation.
pub fn leibniz_holds<J>(join: &J, x: &SimplicialChain, y: &SimplicialChain, layout: CopyLayout) -> Result<bool>
where
    J: Fn(&SimplicialChain, &SimplicialChain, CopyLayout) -> Result<SimplicialChain>,
{
    let lhs = join(x, y, layout)?.boundary()?;
    let first = if x.degree() == 0 {
        y.scale(&x.augmentation())
    } else {
        join(&x.boundary()?, y, layout)?
    };
    let second = if y.degree() == 0 {
        x.scale(&y.augmentation())
    } else {
        join(x, &y.boundary()?, layout)?
    };
    let sign = if x.degree() % 2 == 0 { -BigInt::one() } else { BigInt::one() };
    Ok(lhs == first.checked_add(&second.scale(&sign))?)
}

/// Runs the Leibniz property on `trials` random pairs of chains living on
/// disjoint copies of a join; returns the number of violations.
pub fn leibniz_trials<J>(join: J, trials: usize, seed: u64) -> Result<usize>
where
    J: Fn(&SimplicialChain, &SimplicialChain, CopyLayout) -> Result<SimplicialChain>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let k = rng.gen_range(2..=3);
        let copies = 4;
        let layout = CopyLayout { per_copy: k };
        let ring = random_ring(&mut rng);
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for c in 0..copies {
            let side = if c == 0 { &mut left } else if c == 1 { &mut right } else if rng.gen_bool(0.5) {
                &mut left
            } else {
                &mut right
            };
            side.extend((0..k).map(|j| c * k + j));
        }
        let dx = rng.gen_range(0..left.len().min(4));
        let dy = rng.gen_range(0..right.len().min(4));
        let x = random_simplicial_chain(&mut rng, &ring, &left, dx);
        let y = random_simplicial_chain(&mut rng, &ring, &right, dy);
        if !leibniz_holds(&join, &x, &y, layout)? {
            failures += 1;
        }
    }
    Ok(failures)
}

fn snf_is_valid(a: &Matrix<i64>) -> bool {
    let snf = smith_normal_form(a);
    let Ok(uav) = snf.u.checked_mul(a).and_then(|ua| ua.checked_mul(&snf.v)) else { return false };
    if uav != snf.s || !snf.u.is_unimodular() || !snf.v.is_unimodular() {
        return false;
    }
    let diagonal = (0..a.rows()).all(|i| (0..a.cols()).all(|j| i == j || *snf.s.get(i, j) == 0));
    let diag: Vec<i64> = (0..a.rows().min(a.cols())).map(|i| *snf.s.get(i, i)).collect();
    let divides = diag.windows(2).all(|w| if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 });
    diagonal && divides && diag.iter().all(|&d| d >= 0)
}

fn substrate() -> Result<Tally> {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SUBSTRATE_SEED);
    for _ in 0..SUBSTRATE_TRIALS {
        let k = rng.gen_range(2..=7);
        let ring = random_ring(&mut rng);
        let sigma = GroupRingElement::sigma(k, ring.clone());
        let tau = GroupRingElement::tau(k, ring.clone());
        let x = random_element(k, &ring, &mut rng);

        let product = &(&sigma * &x) * &tau;
        t.check(product.is_zero(), || format!("σ x τ != 0 for k={k}"));

        let i = rng.gen_range(1..=k);
        let sigma_i = special_element(k, ring.clone(), Special::SigmaR(i))?;
        let tau_i = special_element(k, ring.clone(), Special::TauR(i))?;
        t.check(&tau * &sigma_i == tau_i, || format!("τ σ_{i} != τ_{i} for k={k}"));

        let k_sigma = sigma.scale(&BigInt::from(k));
        t.check(&sigma * &sigma == k_sigma, || format!("σ² != kσ for k={k}"));

        for basis in [Basis::T, Basis::Sigma] {
            let back = GroupRingElement::from_basis_coords(k, ring.clone(), basis, &x.coords_in_basis(basis))?;
            t.check(back == x, || format!("{basis:?} round trip fails for {x:?}"));
        }

        let r = rng.gen_range(2..=4);
        let mut c = StandardChain::zero(k, ring.clone(), r);
        for _ in 0..rng.gen_range(1..=3) {
            let letters = (0..r).map(|_| rng.gen_range(0..k)).collect();
            c.add_term(BarWord::new(k, letters)?, &random_element(k, &ring, &mut rng))?;
        }
        let dd = c.boundary()?.boundary()?;
        t.check(dd.is_empty(), || format!("∂∂ != 0 on a bar chain of degree {r}"));

        let m = MinimalElement { degree: rng.gen_range(2..=6), value: x.clone() };
        let dd = minimal_boundary(&minimal_boundary(&m)?)?;
        t.check(dd.value.is_zero(), || "∂∂ != 0 in the minimal resolution".to_string());

        let vertices: Vec<usize> = (0..8).collect();
        let degree = rng.gen_range(2..=5);
        let s = random_simplicial_chain(&mut rng, &ring, &vertices, degree);
        let dd = s.boundary()?.boundary()?;
        t.check(dd.is_zero(), || "∂∂ != 0 on a simplicial chain".to_string());

        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let a = Matrix::from_rows(
            (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-6i64..=6)).collect()).collect(),
        )?;
        t.check(snf_is_valid(&a), || format!("SNF invariants fail on {a:?}"));
    }
    let leibniz = leibniz_trials(join_chains, SUBSTRATE_TRIALS, SUBSTRATE_SEED)?;
    t.checks += SUBSTRATE_TRIALS as u64;
    if leibniz > 0 {
        t.failures.push(format!("Leibniz rule fails in {leibniz} trials"));
    }
    Ok(t)
}
