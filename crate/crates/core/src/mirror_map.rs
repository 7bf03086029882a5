//! Hypergeometric mirror-map components, their assembly, and the graded
//! formal inverse.
//!
//! For each ray the component is a factorial-coefficient series over its
//! index set; for each extra vector it is a telescoped-gamma series over the
//! twisted coset, with unit leading coefficient at the dual curve class.
//! The assembled map is identity-plus-higher-order in the grading, so a
//! fixed-point iteration inverts it one grade per pass.

use crate::charges::{ChargeData, ExponentVector};
use crate::enumerate::{enumerate_omega, OmegaSpec};
use crate::error::{Error, Result};
use crate::series::{substitute, MonomialUnit, RatSeries, VarSystem};
use crate::util::{ceil_int, is_negative_integer, parallel_map, rat_string};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// The telescoped ratio of the twisted-sector coefficient product for a
/// single pairing value `c`:
/// ceil(c) >= 1 gives 1 / (c (c-1) ... (c - ceil(c) + 1));
/// ceil(c) <= 0 gives (c - ceil(c)) (c - ceil(c) - 1) ... (c + 1), the empty
/// product being 1. Negative integers are poles and must not reach here.
pub fn gamma_ratio(c: &BigRational) -> Result<BigRational> {
    if is_negative_integer(c) {
        return Err(Error::GammaRatioPole(rat_string(c)));
    }
    let ceil = ceil_int(c);
    if ceil.is_positive() {
        let mut prod = BigRational::one();
        let mut k = BigInt::zero();
        while k < ceil {
            prod *= c - BigRational::from_integer(k.clone());
            k += 1;
        }
        Ok(prod.recip())
    } else {
        let mut prod = BigRational::one();
        let mut k = ceil;
        while k < BigInt::zero() {
            prod *= c - BigRational::from_integer(k.clone());
            k += 1;
        }
        Ok(prod)
    }
}

/// The y-chart variable system attached to a charge datum.
pub fn y_system(data: &ChargeData) -> VarSystem {
    VarSystem::y(data.grading.clone())
}

/// The (q, tau) system: q-weights are the grading weights of the first r'
/// variables, tau-weights the grading degrees of the dual curve classes.
pub fn qtau_system(data: &ChargeData) -> VarSystem {
    let q_weights = data.grading[..data.r_prime].to_vec();
    let tau_weights: Vec<BigRational> = data.d_dual.iter().map(|d| data.degree(d)).collect();
    let tau_names: Vec<String> = data
        .fan
        .extra
        .iter()
        .map(|v| {
            let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("t[{}]", coords.join(","))
        })
        .collect();
    VarSystem::qtau(q_weights, tau_weights, tau_names)
}

/// Coefficient of one index in a smooth-ray component:
/// (-1)^(-<D_j,d>-1) (-<D_j,d>-1)! / prod_{i != j} <D_i,d>!.
fn smooth_coefficient(data: &ChargeData, j: usize, d: &ExponentVector) -> Result<BigRational> {
    let pair = data.pair_all_divisors(d);
    let k = -pair[j].clone();
    if !crate::util::is_integer(&k) || !k.is_positive() {
        return Err(Error::InvalidInput(
            "smooth coefficient outside its index set".into(),
        ));
    }
    let kk = k.to_integer();
    let mut numer = BigRational::one();
    let mut t = BigInt::one();
    // (-1)^(k-1) (k-1)!
    while t < kk {
        numer *= BigRational::from_integer(t.clone());
        t += 1;
    }
    if ((&kk - BigInt::one()) % BigInt::from(2)).is_one() {
        numer = -numer;
    }
    let mut denom = BigRational::one();
    for (i, p) in pair.iter().enumerate() {
        if i == j {
            continue;
        }
        let pi = p.to_integer();
        let mut f = BigInt::one();
        let mut acc = BigRational::one();
        while f <= pi {
            acc *= BigRational::from_integer(f.clone());
            f += 1;
        }
        denom *= acc;
    }
    Ok(numer / denom)
}

/// One mirror-map component A_j as a series in the y-chart.
pub fn compute_a(data: &ChargeData, j: usize, bound: &BigRational) -> Result<RatSeries> {
    let vars = y_system(data);
    let mut series = RatSeries::zero(vars, bound.clone());
    let m = data.fan.num_rays();
    if j < m {
        let omega = enumerate_omega(data, &OmegaSpec::Smooth { j }, bound)?;
        for d in &omega {
            series.add_term(d.pairings.clone(), smooth_coefficient(data, j, d)?);
        }
    } else {
        let omega = enumerate_omega(data, &OmegaSpec::Twisted { j }, bound)?;
        for d in &omega {
            let mut coeff = BigRational::one();
            for p in data.pair_all_divisors(d) {
                coeff *= gamma_ratio(&p)?;
            }
            series.add_term(d.pairings.clone(), coeff);
        }
    }
    Ok(series)
}

/// The assembled toric mirror map.
#[derive(Clone, Debug)]
pub struct MirrorMap {
    /// A_j for every stacky vector, rays first.
    pub a_series: Vec<RatSeries>,
    /// For a < r': the series sum_j Q[j][a] A_j over the rays, the non-log
    /// part of log q_a - log y_a.
    pub log_corrections: Vec<RatSeries>,
    /// tau components: A_j for the extras, repeated here for direct access.
    pub tau_components: Vec<RatSeries>,
    pub bound: BigRational,
}

pub fn assemble_mirror_map(data: &ChargeData, bound: &BigRational) -> Result<MirrorMap> {
    let total = data.fan.num_vectors();
    let indices: Vec<usize> = (0..total).collect();
    let computed = parallel_map(indices, |&j| compute_a(data, j, bound));
    let mut a_series = Vec::with_capacity(total);
    for s in computed {
        a_series.push(s?);
    }
    // twisted components lead with coefficient exactly 1 at the dual class
    let m = data.fan.num_rays();
    for (jj, dual) in data.d_dual.iter().enumerate() {
        let lead = a_series[m + jj].coefficient(&dual.pairings)?;
        if !lead.is_one() {
            return Err(Error::IdentityFailure(format!(
                "twisted component {jj} has leading coefficient {}",
                rat_string(&lead)
            )));
        }
    }
    let vars = y_system(data);
    let mut log_corrections = Vec::with_capacity(data.r_prime);
    for a in 0..data.r_prime {
        let mut corr = RatSeries::zero(vars.clone(), bound.clone());
        for (j, series) in a_series.iter().enumerate().take(m) {
            let q = &data.q_matrix[j][a];
            if q.is_zero() {
                continue;
            }
            corr = corr.add(&series.scale(&BigRational::from_integer(q.clone())))?;
        }
        log_corrections.push(corr);
    }
    let tau_components = a_series[m..].to_vec();
    Ok(MirrorMap {
        a_series,
        log_corrections,
        tau_components,
        bound: bound.clone(),
    })
}

/// Formal inverse of the mirror map: images of y_1 .. y_r as monomial times
/// unit series in the (q, tau) chart.
#[derive(Clone, Debug)]
pub struct InverseMirrorMap {
    pub images: Vec<MonomialUnit<BigRational>>,
    pub vars: VarSystem,
    pub bound: BigRational,
}

impl InverseMirrorMap {
    /// Compose a y-chart series with the inverse map.
    pub fn pull_back(&self, series: &RatSeries) -> Result<RatSeries> {
        substitute(series, &self.vars, &self.images)
    }

    /// The image of a rational class y^d as a series in (q, tau).
    pub fn monomial_image(&self, d: &ExponentVector) -> Result<RatSeries> {
        let vars_y = VarSystem::y(
            self.images
                .iter()
                .map(|img| self.vars.degree(&img.mono))
                .collect(),
        );
        let mono = RatSeries::monomial(
            vars_y,
            self.bound.clone(),
            d.pairings.clone(),
            BigRational::one(),
        );
        substitute(&mono, &self.vars, &self.images)
    }
}

/// Graded fixed-point inversion.
///
/// Initial images: y_a = q_a for a <= r'; for a > r' a monomial in (tau, q)
/// obtained by inverting the extra block. Each pass substitutes the current
/// images into the corrections and rebuilds; every pass is exact one grade
/// higher, and stabilization is asserted.
pub fn invert_mirror_map(
    data: &ChargeData,
    mm: &MirrorMap,
    bound: &BigRational,
) -> Result<InverseMirrorMap> {
    let vars_q = qtau_system(data);
    let r = data.r;
    let rp = data.r_prime;
    let m = data.fan.num_rays();
    let k = r - rp;

    // Monomial parts. For a <= r': q_a. For a = r' + b: the extra-block
    // inversion gives
    //   y_a = prod_j tau_j^{Q[m+j][a]} * prod_{c <= r'} q_c^{-sum_j Q[m+j][a] <p_c, D_j-dual>}
    // at leading order.
    let mut monos: Vec<Vec<BigRational>> = Vec::with_capacity(r);
    for a in 0..rp {
        let mut e = vec![BigRational::zero(); vars_q.len()];
        e[a] = BigRational::one();
        monos.push(e);
    }
    for a in rp..r {
        let mut e = vec![BigRational::zero(); vars_q.len()];
        for j in 0..k {
            let q = BigRational::from_integer(data.q_matrix[m + j][a].clone());
            e[rp + j] = q.clone();
            for c in 0..rp {
                let adj = &q * &data.d_dual[j].pairings[c];
                e[c] -= adj;
            }
        }
        monos.push(e);
    }

    // sanity: monomial degrees match variable weights
    for (a, e) in monos.iter().enumerate() {
        if vars_q.degree(e) != data.grading[a] {
            return Err(Error::GradingFailure(format!(
                "initial monomial for y_{} has degree {}, expected {}",
                a + 1,
                rat_string(&vars_q.degree(e)),
                rat_string(&data.grading[a])
            )));
        }
    }

    let unit_one = RatSeries::one(vars_q.clone(), bound.clone());
    let mut units: Vec<RatSeries> = vec![unit_one.clone(); r];

    // E_j = A_j / y^{D_j-dual}: unit series in y with constant term 1
    let vars_y = y_system(data);
    let mut e_units: Vec<RatSeries> = Vec::with_capacity(k);
    for j in 0..k {
        let neg_dual: Vec<BigRational> = data.d_dual[j]
            .pairings
            .iter()
            .map(|x| -x.clone())
            .collect();
        let shifted = mm.a_series[m + j].shift(&neg_dual);
        if !shifted.constant_term().is_one() {
            return Err(Error::IdentityFailure(format!(
                "twisted component {j} does not normalize to a unit"
            )));
        }
        e_units.push(shifted);
    }
    let _ = &vars_y;

    // number of passes: every pass gains at least the smallest positive
    // correction grade; corrections all have positive grade by construction
    let mut min_gain: Option<BigRational> = None;
    for s in mm.log_corrections.iter().chain(e_units.iter()) {
        if let Some(d) = s.min_positive_degree() {
            min_gain = Some(match min_gain {
                None => d,
                Some(g) => g.min(d),
            });
        }
    }
    let passes = match &min_gain {
        None => 1,
        Some(g) => {
            let ratio = bound / g;
            let p: i64 = ratio
                .floor()
                .to_integer()
                .try_into()
                .map_err(|_| Error::InvalidInput("bound too large".into()))?;
            (p + 2) as usize
        }
    };

    for _pass in 0..passes {
        let images: Vec<MonomialUnit<BigRational>> = monos
            .iter()
            .zip(&units)
            .map(|(mono, unit)| MonomialUnit::new(mono.clone(), unit.clone()))
            .collect();
        let mut next_units = Vec::with_capacity(r);
        for a in 0..rp {
            // y_a = q_a exp(-corr_a(y(q,tau)))
            let corr = substitute(&mm.log_corrections[a], &vars_q, &images)?;
            next_units.push(corr.neg().exp_series()?);
        }
        for a in rp..r {
            // unit part of y_a:
            //   prod_j E_j(y)^{-Q[m+j][a]} * prod_{c <= r'} U_c^{-sum_j Q[m+j][a] <p_c, D_j-dual>}
            // where the trailing exponent is rational: push it through
            // pow_series on the unit.
            let mut unit = unit_one.clone();
            for j in 0..k {
                let qja: i64 = (&data.q_matrix[m + j][a])
                    .try_into()
                    .map_err(|_| Error::InvalidInput("charge entry too large".into()))?;
                if qja == 0 {
                    continue;
                }
                let e_composed = substitute(&e_units[j], &vars_q, &images)?;
                unit = unit.mul(&e_composed.powi(-qja)?)?;
            }
            for c in 0..rp {
                let mut expo = BigRational::zero();
                for j in 0..k {
                    expo -= BigRational::from_integer(data.q_matrix[m + j][a].clone())
                        * &data.d_dual[j].pairings[c];
                }
                if expo.is_zero() {
                    continue;
                }
                unit = unit.mul(&units[c].pow_series(&expo)?)?;
            }
            next_units.push(unit);
        }
        if next_units == units {
            break;
        }
        units = next_units;
    }

    // stabilization check: one more pass must not change anything
    let images: Vec<MonomialUnit<BigRational>> = monos
        .iter()
        .zip(&units)
        .map(|(mono, unit)| MonomialUnit::new(mono.clone(), unit.clone()))
        .collect();
    for a in 0..rp {
        let corr = substitute(&mm.log_corrections[a], &vars_q, &images)?;
        let redo = corr.neg().exp_series()?;
        if redo != units[a] {
            return Err(Error::InversionStalled(format!("q-direction {}", a + 1)));
        }
    }

    let inverse = InverseMirrorMap {
        images,
        vars: vars_q,
        bound: bound.clone(),
    };
    check_round_trip(data, mm, &inverse)?;
    Ok(inverse)
}

/// Round trip: substituting the inverse images into the mirror map must
/// reproduce the (q, tau) coordinates identically up to truncation.
fn check_round_trip(data: &ChargeData, mm: &MirrorMap, inv: &InverseMirrorMap) -> Result<()> {
    let vars_q = &inv.vars;
    let rp = data.r_prime;
    for a in 0..rp {
        // q_a = y_a exp(corr_a(y)) composed with y(q,tau)
        let corr = substitute(&mm.log_corrections[a], vars_q, &inv.images)?;
        let y_img = RatSeries::monomial(
            vars_q.clone(),
            inv.bound.clone(),
            inv.images[a].mono.clone(),
            BigRational::one(),
        )
        .mul(&inv.images[a].unit)?;
        let recomposed = y_img.mul(&corr.exp_series()?)?;
        let mut q_mono = vec![BigRational::zero(); vars_q.len()];
        q_mono[a] = BigRational::one();
        let expect = RatSeries::monomial(
            vars_q.clone(),
            inv.bound.clone(),
            q_mono,
            BigRational::one(),
        );
        if recomposed != expect {
            return Err(Error::IdentityFailure(format!(
                "round trip fails on q_{}",
                a + 1
            )));
        }
    }
    for (j, tau_series) in mm.tau_components.iter().enumerate() {
        let composed = substitute(tau_series, vars_q, &inv.images)?;
        let mut t_mono = vec![BigRational::zero(); vars_q.len()];
        t_mono[rp + j] = BigRational::one();
        let expect = RatSeries::monomial(
            vars_q.clone(),
            inv.bound.clone(),
            t_mono,
            BigRational::one(),
        );
        if composed != expect {
            return Err(Error::IdentityFailure(format!(
                "round trip fails on tau component {j}"
            )));
        }
    }
    Ok(())
}
