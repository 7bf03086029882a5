//! Enumeration of the hypergeometric index sets and effective classes up to
//! a grading bound.
//!
//! Every set enumerated here lives inside the dual of the extended Kahler
//! cone, where the grading covector is strictly positive, so the region of
//! degree at most B is a bounded polytope. Enumeration computes exact LP
//! bounding boxes for that polytope and scans the lattice coset inside the
//! box; every candidate is then checked against the defining predicate. This
//! trades the spec's lattice walk for a provably complete scan at the same
//! desk scale.

use crate::charges::{ChargeData, ExponentVector};
use crate::error::{Error, Result};
use crate::lp::{maximize, Cmp, Constraint, LpOutcome};
use crate::util::{is_integer, is_negative_integer};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Which index set to enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaSpec {
    /// Smooth ray j: integral classes with `<D_j, d>` a negative integer and
    /// all other pairings nonnegative integers.
    Smooth { j: usize },
    /// Twisted sector for extra j (flat index): classes in the coset of the
    /// extra's representative with no pairing a negative integer.
    Twisted { j: usize },
    /// Effective curve classes: integral, annihilated by the extra divisor
    /// classes (the H_2 part of L), satisfying the anticone condition.
    Effective,
}

impl OmegaSpec {
    fn coset_rep(&self, data: &ChargeData) -> ExponentVector {
        match self {
            OmegaSpec::Smooth { .. } | OmegaSpec::Effective => ExponentVector::zero(data.r),
            OmegaSpec::Twisted { j } => data.coset_reps[j - data.fan.num_rays()].clone(),
        }
    }

    /// The defining predicate, re-checkable independently of how the
    /// candidate was produced.
    pub fn accepts(&self, data: &ChargeData, d: &ExponentVector) -> bool {
        let pair = data.pair_all_divisors(d);
        match self {
            OmegaSpec::Smooth { j } => {
                if !is_negative_integer(&pair[*j]) {
                    return false;
                }
                for (i, p) in pair.iter().enumerate() {
                    if i != *j && (!is_integer(p) || p.is_negative()) {
                        return false;
                    }
                }
                // reduction vanishes automatically for integral classes; the
                // double-entry check recomputes it anyway
                data.reduction(d).iter().all(Zero::is_zero) && data.is_effective(d)
            }
            OmegaSpec::Twisted { j } => {
                if pair.iter().any(is_negative_integer) {
                    return false;
                }
                if &data.reduction(d) != data.fan.vector(*j) {
                    return false;
                }
                data.is_effective(d)
            }
            OmegaSpec::Effective => {
                if !d.is_integral() {
                    return false;
                }
                for j in data.fan.num_rays()..data.fan.num_vectors() {
                    if !pair[j].is_zero() {
                        return false;
                    }
                }
                data.is_effective(d)
            }
        }
    }
}

/// All classes matching `spec` of grading degree at most `bound`, ordered by
/// (degree, lexicographic pairings). Results at a smaller bound are a prefix
/// of results at a larger one.
pub fn enumerate_omega(
    data: &ChargeData,
    spec: &OmegaSpec,
    bound: &BigRational,
) -> Result<Vec<ExponentVector>> {
    let rep = spec.coset_rep(data);
    let candidates = coset_points_in_effective_region(data, &rep, bound)?;
    let mut out: Vec<ExponentVector> = candidates
        .into_iter()
        .filter(|d| spec.accepts(data, d))
        .collect();
    out.sort_by(|a, b| {
        let da = data.degree(a);
        let db = data.degree(b);
        da.cmp(&db).then_with(|| a.pairings.cmp(&b.pairings))
    });
    Ok(out)
}

pub fn enumerate_effective(data: &ChargeData, bound: &BigRational) -> Result<Vec<ExponentVector>> {
    enumerate_omega(data, &OmegaSpec::Effective, bound)
}

/// Lattice points of `rep + Z^r` inside the dual Kahler cone sliced at
/// degree <= bound, with no omega predicate applied. Used by the
/// compactification verifier, which filters with its own extended predicate.
pub fn coset_scan(
    data: &ChargeData,
    rep: &ExponentVector,
    bound: &BigRational,
) -> Result<Vec<ExponentVector>> {
    coset_points_in_effective_region(data, rep, bound)
}

/// Lattice points of `rep + Z^r` inside the dual Kahler cone sliced at
/// degree <= bound. Complete by construction: the region is a polytope
/// (grading interior to the Kahler cone), LP gives exact per-coordinate
/// bounds, and the box is scanned exhaustively.
fn coset_points_in_effective_region(
    data: &ChargeData,
    rep: &ExponentVector,
    bound: &BigRational,
) -> Result<Vec<ExponentVector>> {
    let r = data.r;
    if r == 0 {
        return Ok(vec![ExponentVector::zero(0)]);
    }
    // Everything enumerated pairs nonnegatively with the closed extended
    // Kahler cone, so the region is {w . x >= 0 for the cone's extreme rays,
    // grading . x <= bound}; variables split x = u - v with u, v >= 0.
    let mut constraints = Vec::new();
    for w in &data.kahler_rays {
        let mut coeffs: Vec<BigRational> = w
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        coeffs.extend(w.iter().map(|c| BigRational::from_integer(-c.clone())));
        constraints.push(Constraint {
            coeffs,
            cmp: Cmp::Ge,
            rhs: BigRational::zero(),
        });
    }
    let mut deg_coeffs: Vec<BigRational> = data.grading.clone();
    deg_coeffs.extend(data.grading.iter().map(|c| -c.clone()));
    constraints.push(Constraint {
        coeffs: deg_coeffs,
        cmp: Cmp::Le,
        rhs: bound.clone(),
    });

    let mut lo = Vec::with_capacity(r);
    let mut hi = Vec::with_capacity(r);
    for a in 0..r {
        let mut obj = vec![BigRational::zero(); 2 * r];
        obj[a] = BigRational::one();
        obj[r + a] = -BigRational::one();
        let max = match maximize(&obj, &constraints)? {
            LpOutcome::Optimal { objective, .. } => objective,
            LpOutcome::Infeasible => return Ok(vec![]),
            LpOutcome::Unbounded => {
                return Err(Error::GradingFailure(format!(
                    "degree-{bound} region unbounded in coordinate {a}; grading not strictly positive"
                )))
            }
        };
        let neg_obj: Vec<BigRational> = obj.iter().map(|c| -c.clone()).collect();
        let min = match maximize(&neg_obj, &constraints)? {
            LpOutcome::Optimal { objective, .. } => -objective,
            LpOutcome::Infeasible => return Ok(vec![]),
            LpOutcome::Unbounded => {
                return Err(Error::GradingFailure(format!(
                    "degree-{bound} region unbounded in coordinate {a}; grading not strictly positive"
                )))
            }
        };
        lo.push(min);
        hi.push(max);
    }

    // integer offsets k with rep + k inside [lo, hi]
    let lo_k: Vec<BigInt> = (0..r)
        .map(|a| (&lo[a] - &rep.pairings[a]).ceil().to_integer())
        .collect();
    let hi_k: Vec<BigInt> = (0..r)
        .map(|a| (&hi[a] - &rep.pairings[a]).floor().to_integer())
        .collect();
    if (0..r).any(|a| lo_k[a] > hi_k[a]) {
        return Ok(vec![]);
    }

    let mut out = Vec::new();
    let mut cursor = lo_k.clone();
    'scan: loop {
        let x = ExponentVector::new(
            (0..r)
                .map(|a| &rep.pairings[a] + BigRational::from_integer(cursor[a].clone()))
                .collect(),
        );
        if data.degree(&x) <= *bound {
            out.push(x);
        }
        for a in 0..r {
            cursor[a] += 1;
            if cursor[a] <= hi_k[a] {
                continue 'scan;
            }
            cursor[a] = lo_k[a].clone();
        }
        break;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charges::build_charges;
    use crate::fan::StackyFan;
    use crate::util::{big, rat, rat_int};

    fn c2zm(m: i64) -> StackyFan {
        StackyFan {
            rank: 2,
            rays: vec![vec![big(0), big(1)], vec![big(m), big(1)]],
            max_cones: vec![vec![0, 1]],
            extra: (1..m).map(|k| vec![big(k), big(1)]).collect(),
            cy_covector: vec![big(0), big(1)],
        }
    }

    fn kf2_data() -> ChargeData {
        let fan = StackyFan {
            rank: 3,
            rays: vec![
                vec![big(0), big(0), big(1)],
                vec![big(-1), big(1), big(1)],
                vec![big(0), big(1), big(1)],
                vec![big(1), big(1), big(1)],
                vec![big(0), big(-1), big(1)],
            ],
            max_cones: vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4], vec![0, 4, 1]],
            extra: vec![],
            cy_covector: vec![big(0), big(0), big(1)],
        };
        // pin p_1 = D_1 (e-dual), p_2 = D_4 (f-dual) for reproducible tests
        let mut d1 = vec![big(0); 5];
        d1[1] = big(1);
        let mut d4 = vec![big(0); 5];
        d4[4] = big(1);
        let hint = crate::charges::basis_hint_from_divisors(&fan, &[d1, d4]).unwrap();
        build_charges(&fan, Some(hint)).unwrap()
    }

    fn kp2_data() -> ChargeData {
        let fan = StackyFan {
            rank: 3,
            rays: vec![
                vec![big(0), big(0), big(1)],
                vec![big(1), big(0), big(1)],
                vec![big(0), big(1), big(1)],
                vec![big(-1), big(-1), big(1)],
            ],
            max_cones: vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3]],
            extra: vec![],
            cy_covector: vec![big(0), big(0), big(1)],
        };
        build_charges(&fan, None).unwrap()
    }

    #[test]
    fn c2z2_twisted_enumeration() {
        let data = build_charges(&c2zm(2), None).unwrap();
        let out = enumerate_omega(&data, &OmegaSpec::Twisted { j: 2 }, &rat(5, 2)).unwrap();
        // divisor pairings (-1/2,-1/2,1), (-3/2,-3/2,3), (-5/2,-5/2,5)
        assert_eq!(out.len(), 3);
        let pairings: Vec<Vec<BigRational>> =
            out.iter().map(|d| data.pair_all_divisors(d)).collect();
        assert_eq!(
            pairings[0],
            vec![rat(-1, 2), rat(-1, 2), rat_int(1)]
        );
        assert_eq!(
            pairings[1],
            vec![rat(-3, 2), rat(-3, 2), rat_int(3)]
        );
        assert_eq!(
            pairings[2],
            vec![rat(-5, 2), rat(-5, 2), rat_int(5)]
        );
    }

    #[test]
    fn kf2_omega_two_is_pure_e() {
        let data = kf2_data();
        let out = enumerate_omega(&data, &OmegaSpec::Smooth { j: 2 }, &rat_int(3)).unwrap();
        assert_eq!(out.len(), 3);
        for (k, d) in out.iter().enumerate() {
            let k = k as i64 + 1;
            assert_eq!(d.pairings, vec![rat_int(k), rat_int(0)]);
        }
    }

    #[test]
    fn kf2_omega_zero_rows() {
        // the zero-section ray: alpha e + beta f with alpha >= 0 and
        // beta >= max(2 alpha, 1)
        let data = kf2_data();
        let out = enumerate_omega(&data, &OmegaSpec::Smooth { j: 0 }, &rat_int(4)).unwrap();
        let got: Vec<(i64, i64)> = out
            .iter()
            .map(|d| {
                let a: i64 = d.pairings[0].to_integer().try_into().unwrap();
                let b: i64 = d.pairings[1].to_integer().try_into().unwrap();
                (a, b)
            })
            .collect();
        let mut expect = Vec::new();
        for a in 0..=4i64 {
            for b in 1..=4i64 {
                if a + b <= 4 && b >= 2 * a {
                    expect.push((a, b));
                }
            }
        }
        let mut got_sorted = got.clone();
        got_sorted.sort();
        expect.sort();
        assert_eq!(got_sorted, expect);
    }

    #[test]
    fn kf2_omega_one_empty() {
        // rays 1 and 3 share a divisor class; requiring one pairing negative
        // and the other nonnegative is impossible
        let data = kf2_data();
        for j in [1usize, 3, 4] {
            let out = enumerate_omega(&data, &OmegaSpec::Smooth { j }, &rat_int(5)).unwrap();
            assert!(out.is_empty(), "ray {j}");
        }
    }

    #[test]
    fn kp2_effective_is_nonnegative_line_multiples() {
        let data = kp2_data();
        let out = enumerate_effective(&data, &rat_int(4)).unwrap();
        let got: Vec<BigRational> = out.iter().map(|d| d.pairings[0].clone()).collect();
        assert_eq!(got, vec![rat_int(0), rat_int(1), rat_int(2), rat_int(3), rat_int(4)]);
    }

    #[test]
    fn c2z2_effective_is_origin_only() {
        // r' = 0: no compact curve classes
        let data = build_charges(&c2zm(2), None).unwrap();
        let out = enumerate_effective(&data, &rat_int(4)).unwrap();
        assert_eq!(out.len(), 1);
        assert!(out[0].pairings[0].is_zero());
    }

    #[test]
    fn monotone_prefix_property() {
        let data = kf2_data();
        for spec in [OmegaSpec::Smooth { j: 0 }, OmegaSpec::Smooth { j: 2 }, OmegaSpec::Effective] {
            let small = enumerate_omega(&data, &spec, &rat_int(3)).unwrap();
            let large = enumerate_omega(&data, &spec, &rat_int(5)).unwrap();
            assert!(small.len() <= large.len());
            assert_eq!(&large[..small.len()], &small[..]);
        }
    }

    #[test]
    fn double_entry_reverification() {
        // every enumerated class satisfies its predicate when re-checked
        let data = build_charges(&c2zm(3), None).unwrap();
        for j in [2usize, 3] {
            let spec = OmegaSpec::Twisted { j };
            for d in enumerate_omega(&data, &spec, &rat_int(3)).unwrap() {
                assert!(spec.accepts(&data, &d));
                assert!(data.degree(&d).is_positive());
            }
        }
    }

    #[test]
    fn kp2_smooth_zero_ray() {
        let data = kp2_data();
        let out = enumerate_omega(&data, &OmegaSpec::Smooth { j: 0 }, &rat_int(4)).unwrap();
        let got: Vec<BigRational> = out.iter().map(|d| d.pairings[0].clone()).collect();
        assert_eq!(got, vec![rat_int(1), rat_int(2), rat_int(3), rat_int(4)]);
        for j in 1..4 {
            assert!(enumerate_omega(&data, &OmegaSpec::Smooth { j }, &rat_int(4))
                .unwrap()
                .is_empty());
        }
    }
}
