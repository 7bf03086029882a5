//! GKZ-type box operators and exact annihilation certificates for the
//! mirror-map components.
//!
//! The Euler derivations act diagonally on monomials (eigenvalue the divisor
//! pairing of the exponent class), and logarithmic coordinates are handled
//! structurally: applying an Euler derivation to `log y_a` produces the
//! constant charge entry, and any shifted factor `(D - k)` with `k != 0`
//! keeps a scaled log part. Both product sides of a box operator contain a
//! `k = 0` factor, so log parts die after the first factor and the final
//! residue is a genuine power series whose exact vanishing is the
//! certificate.

use crate::charges::{ChargeData, ExponentVector};
use crate::error::{Error, Result};
use crate::mirror_map::MirrorMap;
use crate::series::RatSeries;
use crate::util::{parallel_map, rat_string};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};

/// A mirror-map coordinate: an optional logarithmic variable index plus a
/// series correction. For a <= r' the component is `log y_a + correction`;
/// for the twisted components it is a pure series.
#[derive(Clone, Debug)]
pub struct LogComponent {
    pub log_var: Option<usize>,
    pub series: RatSeries,
    pub name: String,
}

/// Intermediate state while applying shifted Euler factors.
#[derive(Clone, Debug)]
struct LogState {
    /// coefficient of log y_a (the index fixed by the component)
    log_scale: BigRational,
    series: RatSeries,
}

/// Multiply every term of S by its divisor pairing: the Euler derivation for
/// divisor i.
pub fn euler_apply(data: &ChargeData, i: usize, s: &RatSeries) -> RatSeries {
    let mut out = RatSeries::zero(s.vars.clone(), s.order.clone());
    for (exp, c) in s.terms() {
        let d = ExponentVector::new(exp.clone());
        let eig = data.pair_divisor(i, &d);
        if eig.is_zero() {
            continue;
        }
        out.add_term(exp.clone(), c * eig);
    }
    out
}

/// Apply `(D_i - k)` to a log state.
fn apply_shifted_euler(
    data: &ChargeData,
    i: usize,
    k: &BigRational,
    state: &LogState,
    log_var: Option<usize>,
) -> Result<LogState> {
    let mut series = euler_apply(data, i, &state.series);
    // log part: D_i(log y_a) = Q[i][a] lands in the series as a constant
    if let Some(a) = log_var {
        if !state.log_scale.is_zero() {
            let q = BigRational::from_integer(data.q_matrix_entry(i, a));
            let constant = &state.log_scale * q;
            let zero_exp = vec![BigRational::zero(); series.vars.len()];
            let mut addend = RatSeries::zero(series.vars.clone(), series.order.clone());
            addend.add_term(zero_exp, constant);
            series = series.add(&addend)?;
        }
    }
    if !k.is_zero() {
        series = series.add(&state.series.scale(&-k.clone()))?;
    }
    Ok(LogState {
        log_scale: &state.log_scale * -k.clone(),
        series,
    })
}

impl ChargeData {
    fn q_matrix_entry(&self, i: usize, a: usize) -> BigInt {
        self.q_matrix[i][a].clone()
    }
}

/// Result of applying the box operator for lattice class `d` to a component.
#[derive(Clone, Debug)]
pub struct AnnihilationResult {
    pub component: String,
    pub d: ExponentVector,
    /// Degree through which vanishing is verifiable given the truncation.
    pub verifiable_order: BigRational,
    /// Exact vanishing through the verifiable order.
    pub annihilated: bool,
    /// Lowest-degree surviving term, if any.
    pub residual: Option<(Vec<BigRational>, BigRational)>,
}

/// Apply the box operator for integral class `d` to one component.
///
/// Both operator sides are exact where the input is; the monomial
/// multiplication by y^d shifts exactness by the degree of d, so the
/// verifiable window is `truncation - |deg d|`.
pub fn apply_box_operator(
    data: &ChargeData,
    component: &LogComponent,
    d: &ExponentVector,
) -> Result<AnnihilationResult> {
    if !d.is_integral() {
        return Err(Error::InvalidInput(
            "box operators are indexed by integral classes".into(),
        ));
    }
    let pairings = data.pair_all_divisors(d);
    let vars = component.series.vars.clone();
    let order = component.series.order.clone();
    let start = LogState {
        log_scale: BigRational::from_integer(BigInt::from(1)),
        series: component.series.clone(),
    };

    // The pure-series component has no log part at all.
    let start = if component.log_var.is_some() {
        start
    } else {
        LogState {
            log_scale: BigRational::zero(),
            series: component.series.clone(),
        }
    };

    let run_side = |positive: bool| -> Result<LogState> {
        let mut state = start.clone();
        for (i, p) in pairings.iter().enumerate() {
            let count = if positive { p.clone() } else { -p.clone() };
            if !count.is_positive() {
                continue;
            }
            let n: i64 = count
                .to_integer()
                .try_into()
                .map_err(|_| Error::InvalidInput("pairing too large".into()))?;
            for k in 0..n {
                state = apply_shifted_euler(
                    data,
                    i,
                    &BigRational::from_integer(BigInt::from(k)),
                    &state,
                    component.log_var,
                )?;
            }
        }
        Ok(state)
    };

    let first = run_side(true)?;
    let second = run_side(false)?;
    // Nonempty products contain a k = 0 factor that kills log parts; for the
    // zero class both sides are untouched and the logs cancel in the
    // difference. Anything else would be a structural failure.
    let d_is_zero = d.pairings.iter().all(Zero::is_zero);
    if d_is_zero {
        if first.log_scale != second.log_scale {
            return Err(Error::IdentityFailure(
                "log part survived a box operator product".into(),
            ));
        }
    } else if !first.log_scale.is_zero() || !second.log_scale.is_zero() {
        return Err(Error::IdentityFailure(
            "log part survived a box operator product".into(),
        ));
    }
    let shifted = second.series.shift(&d.pairings);
    let residue = first.series.sub(&shifted)?;

    let deg_d = data.degree(d);
    let verifiable = if deg_d.is_negative() {
        &order + &deg_d
    } else {
        order.clone()
    };
    let mut residual = None;
    for (exp, c) in residue.terms() {
        let deg = vars.degree(exp);
        if deg <= verifiable {
            residual = Some((exp.clone(), c.clone()));
            break;
        }
    }
    Ok(AnnihilationResult {
        component: component.name.clone(),
        d: d.clone(),
        verifiable_order: verifiable,
        annihilated: residual.is_none(),
        residual,
    })
}

/// The mirror-map coordinates as log components.
pub fn mirror_map_components(data: &ChargeData, mm: &MirrorMap) -> Vec<LogComponent> {
    let mut out = Vec::new();
    for a in 0..data.r_prime {
        out.push(LogComponent {
            log_var: Some(a),
            series: mm.log_corrections[a].clone(),
            name: format!("log q{}", a + 1),
        });
    }
    for (j, tau) in mm.tau_components.iter().enumerate() {
        out.push(LogComponent {
            log_var: None,
            series: tau.clone(),
            name: format!("tau[{j}]"),
        });
    }
    out
}

/// Annihilation report over all (component, d) pairs; `d_list` defaults to
/// the kernel basis of L.
pub fn annihilation_check(
    data: &ChargeData,
    mm: &MirrorMap,
    d_list: Option<Vec<ExponentVector>>,
) -> Result<Vec<AnnihilationResult>> {
    let components = mirror_map_components(data, mm);
    let ds = d_list.unwrap_or_else(|| data.lattice_generators());
    let mut jobs = Vec::new();
    for c in &components {
        for d in &ds {
            jobs.push((c.clone(), d.clone()));
        }
    }
    let results = parallel_map(jobs, |(c, d)| apply_box_operator(data, c, d));
    results.into_iter().collect()
}

pub fn report_to_json(results: &[AnnihilationResult]) -> serde_json::Value {
    serde_json::json!(results
        .iter()
        .map(|r| {
            serde_json::json!({
                "component": r.component,
                "d": r.d.pairings.iter().map(rat_string).collect::<Vec<_>>(),
                "verifiable_order": rat_string(&r.verifiable_order),
                "annihilated": r.annihilated,
                "residual": r.residual.as_ref().map(|(e, c)| {
                    serde_json::json!({
                        "exp": e.iter().map(rat_string).collect::<Vec<_>>(),
                        "coeff": rat_string(c),
                    })
                }),
            })
        })
        .collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charges::build_charges;
    use crate::fan::StackyFan;
    use crate::mirror_map::assemble_mirror_map;
    use crate::util::{big, rat, rat_int};

    fn c2zm_data(m: i64) -> ChargeData {
        let fan = StackyFan {
            rank: 2,
            rays: vec![vec![big(0), big(1)], vec![big(m), big(1)]],
            max_cones: vec![vec![0, 1]],
            extra: (1..m).map(|k| vec![big(k), big(1)]).collect(),
            cy_covector: vec![big(0), big(1)],
        };
        build_charges(&fan, None).unwrap()
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
        build_charges(&fan, None).unwrap()
    }

    #[test]
    fn euler_acts_diagonally() {
        let data = kp2_data();
        let vars = crate::mirror_map::y_system(&data);
        let mono = RatSeries::monomial(vars.clone(), rat_int(4), vec![rat_int(2)], rat_int(5));
        // <D_1, 2 line> = 2
        let out = euler_apply(&data, 1, &mono);
        assert_eq!(out.coefficient(&[rat_int(2)]).unwrap(), rat_int(10));
        // constants die
        let one = RatSeries::one(vars, rat_int(4));
        assert!(euler_apply(&data, 0, &one).is_zero());
    }

    #[test]
    fn box_zero_class_kills_everything() {
        // d = 0: both product sides are empty, residue = S - y^0 S = 0
        let data = kp2_data();
        let mm = assemble_mirror_map(&data, &rat_int(4)).unwrap();
        let comps = mirror_map_components(&data, &mm);
        let zero = ExponentVector::zero(1);
        for c in &comps {
            let r = apply_box_operator(&data, c, &zero).unwrap();
            assert!(r.annihilated, "{}", c.name);
        }
    }

    #[test]
    fn kp2_line_class_annihilates() {
        let data = kp2_data();
        let mm = assemble_mirror_map(&data, &rat_int(6)).unwrap();
        let results = annihilation_check(&data, &mm, None).unwrap();
        assert!(!results.is_empty());
        for r in &results {
            assert!(
                r.annihilated,
                "component {} residual {:?}",
                r.component, r.residual
            );
        }
    }

    #[test]
    fn c2z2_gamma_class_annihilates() {
        let data = c2zm_data(2);
        let mm = assemble_mirror_map(&data, &rat(9, 2)).unwrap();
        let results = annihilation_check(&data, &mm, None).unwrap();
        for r in &results {
            assert!(
                r.annihilated,
                "component {} residual {:?}",
                r.component, r.residual
            );
        }
    }

    #[test]
    fn kf2_annihilation_requires_full_omega_sets() {
        // the discriminating case: both kernel directions annihilate the
        // mirror map only because the pure-fiber classes are present in the
        // zero-ray component
        let data = kf2_data();
        let mm = assemble_mirror_map(&data, &rat_int(5)).unwrap();
        let results = annihilation_check(&data, &mm, None).unwrap();
        for r in &results {
            assert!(
                r.annihilated,
                "component {} d {:?} residual {:?}",
                r.component, r.d.pairings, r.residual
            );
        }
        // and the doubled generators as a non-generator spot check
        let doubled: Vec<ExponentVector> = data
            .lattice_generators()
            .iter()
            .map(|d| d.add(d))
            .collect();
        for r in annihilation_check(&data, &mm, Some(doubled)).unwrap() {
            assert!(r.annihilated, "{} doubled", r.component);
        }
    }

    #[test]
    fn restricted_component_fails_annihilation() {
        // dropping the pure-fiber classes from the zero-ray component breaks
        // the certificate: this is the executable form of the omega-set
        // decision recorded in the ledger
        let data = kf2_data();
        let mut mm = assemble_mirror_map(&data, &rat_int(5)).unwrap();
        let e_slot = {
            let g1 = ExponentVector::new(vec![rat_int(1), rat_int(0)]);
            usize::from(!data.pair_divisor(2, &g1).is_negative())
        };
        let mut filtered = RatSeries::zero(mm.a_series[0].vars.clone(), rat_int(5));
        for (exp, c) in mm.a_series[0].terms() {
            if !exp[e_slot].is_zero() {
                filtered.add_term(exp.clone(), c.clone());
            }
        }
        mm.a_series[0] = filtered.clone();
        // rebuild the corrections with the filtered component
        for a in 0..data.r_prime {
            let mut corr = RatSeries::zero(filtered.vars.clone(), rat_int(5));
            for (j, series) in mm.a_series.iter().enumerate().take(5) {
                let q = &data.q_matrix[j][a];
                if q.is_zero() {
                    continue;
                }
                corr = corr
                    .add(&series.scale(&BigRational::from_integer(q.clone())))
                    .unwrap();
            }
            mm.log_corrections[a] = corr;
        }
        let results = annihilation_check(&data, &mm, None).unwrap();
        assert!(
            results.iter().any(|r| !r.annihilated),
            "restricted component unexpectedly annihilated"
        );
    }
}
