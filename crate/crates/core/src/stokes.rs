//! Both sides of the Stokes identity for labelled chains, once by counting label
//! patterns and once through `u ∘ f ∘ h^ℓ`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::labelling::{h_ell, tensor_patterns, Labelling};
use crate::resolution::f_map;
use crate::ring::GroupRingElement;
use crate::simplicial::SimplicialChain;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StokesReport {
    pub degree: usize,
    #[serde(serialize_with = "crate::io::serialize_bigint")]
    pub lhs_count: BigInt,
    #[serde(serialize_with = "crate::io::serialize_bigint")]
    pub rhs_count: BigInt,
    #[serde(serialize_with = "crate::io::serialize_bigint")]
    pub lhs_alg: BigInt,
    #[serde(serialize_with = "crate::io::serialize_bigint")]
    pub rhs_alg: BigInt,
    pub equal: bool,
}

/// Evaluates the four Stokes quantities for `x` of degree `r >= 1`.
///
/// Counting sides, with `P` ranging over patterns of `x` and `Q` over
/// patterns of `∂x`:
/// * `r` even: `lhs = Σ c_Q [g ⊗ Q s.a.]`, `rhs = Σ c_P [P s.a.]`;
/// * `r` odd: `lhs = Σ c_Q [Q s.a., Q_0 = e]`,
///   `rhs = Σ c_P ([e ⊗ P s.a.] - [g ⊗ P s.a.])`.
///
/// Algebraic sides: `u(f(h(∂x)))` and `u(σ f(h(x)))` or `u(τ f(h(x)))`.
pub fn stokes_sides(x: &SimplicialChain, l: &Labelling) -> Result<StokesReport> {
    let r = x.degree();
    if r == 0 {
        return Err(Error::Degree("the Stokes formula needs a chain of degree >= 1".into()));
    }
    let ring = x.ring().clone();
    let k = l.k();
    let dx = x.boundary()?;

    let inner = tensor_patterns(x, l)?;
    let outer = tensor_patterns(&dx, l)?;
    let total = |terms: Vec<BigInt>| ring.reduce(terms.into_iter().sum());
    let (lhs_count, rhs_count) = if r % 2 == 0 {
        let lhs = outer
            .iter()
            .filter(|(q, _)| q.prepend(1).is_strongly_alternating())
            .map(|(_, c)| c.clone());
        let rhs = inner.iter().filter(|(p, _)| p.is_strongly_alternating()).map(|(_, c)| c.clone());
        (total(lhs.collect()), total(rhs.collect()))
    } else {
        let lhs = outer
            .iter()
            .filter(|(q, _)| q.entries()[0] == 0 && q.is_strongly_alternating())
            .map(|(_, c)| c.clone());
        let rhs = inner.iter().map(|(p, c)| {
            let plus = i32::from(p.prepend(0).is_strongly_alternating());
            let minus = i32::from(p.prepend(1).is_strongly_alternating());
            c * BigInt::from(plus - minus)
        });
        (total(lhs.collect()), total(rhs.collect()))
    };

    let lhs_alg = f_map(&h_ell(&dx, l)?).value.evaluate(0)?;
    let top = f_map(&h_ell(x, l)?).value;
    let factor = if r % 2 == 0 {
        GroupRingElement::sigma(k, ring.clone())
    } else {
        GroupRingElement::tau(k, ring.clone())
    };
    let rhs_alg = (&factor * &top).evaluate(0)?;

    let equal = lhs_count == lhs_alg && lhs_alg == rhs_alg && rhs_alg == rhs_count;
    Ok(StokesReport { degree: r, lhs_count, rhs_count, lhs_alg, rhs_alg, equal })
}

/// Number of `+alternating` facets of a `Z_2`-labelled chain's support: signs
/// alternate `0, 1, 0, …` when read in increasing color, all colors distinct.
/// Facets are counted without orientation.
pub fn plus_alternating_count(x: &SimplicialChain, l: &Labelling) -> usize {
    x.support()
        .filter(|s| {
            crate::labelling::pattern(s, l)
                .map(|(t, _)| t.entries().iter().enumerate().all(|(i, &e)| e == i % 2))
                .unwrap_or(false)
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelling::Label;
    use crate::ring::RingSpec;

    #[test]
    fn edge_with_two_colors() {
        let l = Labelling::new(3, vec![Label { sign: 0, color: 1 }, Label { sign: 2, color: 2 }])
            .unwrap();
        let e = SimplicialChain::simplex(RingSpec::Integers, &[0, 1]).unwrap();
        let rep = stokes_sides(&e, &l).unwrap();
        assert!(rep.equal, "{rep:?}");
        assert_eq!(rep.degree, 1);
    }

    #[test]
    fn triangle_fan_case() {
        // +1, -2, +3 on a single triangle: one +alternating facet
        let l = Labelling::new(
            2,
            vec![Label { sign: 0, color: 1 }, Label { sign: 1, color: 2 }, Label { sign: 0, color: 3 }],
        )
        .unwrap();
        let t = SimplicialChain::simplex(RingSpec::Integers, &[0, 1, 2]).unwrap();
        let rep = stokes_sides(&t, &l).unwrap();
        assert!(rep.equal, "{rep:?}");
        assert_eq!(plus_alternating_count(&t, &l), 1);
    }

    #[test]
    fn vertex_chain_is_rejected() {
        let l = Labelling::new(2, vec![Label { sign: 0, color: 1 }]).unwrap();
        let v = SimplicialChain::simplex(RingSpec::Integers, &[0]).unwrap();
        assert!(matches!(stokes_sides(&v, &l), Err(Error::Degree(_))));
    }
}
