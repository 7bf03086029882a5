//! Wall-crossing data for crepant-resolution pairs, exact hat-basis
//! changes of variables, and numeric analytic continuation of mirror-map
//! components by Mellin-Barnes contour quadrature.
//!
//! The continuation engine represents a component's coefficient function by
//! gamma-function interpolation along the continued lattice direction and
//! integrates the standard kernel over a vertical contour. On the series'
//! own chart this reproduces the sum (validated exactly in tests); evaluated
//! with the continued variable large it computes the analytic continuation,
//! with no pole bookkeeping. Resonant configurations (a left pole meeting
//! the contour window) are rejected, matching the simple-pole assumption of
//! the residue picture.

use crate::charges::{ChargeData, ExponentVector};
use crate::error::{Error, Result};
use crate::fan::StackyFan;
use crate::numeric::{gamma, rgamma};
use crate::series::RatSeries;
use crate::util::{frac, is_integer, rat_string};
use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Wall data for a single-wall crepant pair.
#[derive(Clone, Debug)]
pub struct WallData {
    /// Charge data of the refined side, with the contracted ray relabeled to
    /// the last ray position.
    pub resolved: ChargeData,
    /// Charge data of the coarse side (its own basis conventions).
    pub orbifold: ChargeData,
    /// The contracted ray vector.
    pub contracted: Vec<BigInt>,
    /// Wall functional on L-dual, as a pairing vector on classes; normalized
    /// to give -1 on the contracted divisor class.
    pub functional: ExponentVector,
    /// For each unified stacky vector: (flat index in resolved, flat index
    /// in orbifold). Unified order: orbifold rays, contracted ray, remaining
    /// shared extras.
    pub alignment: Vec<(usize, usize)>,
    /// Hat-basis denominator: exponents stay in (1/ell-hat) Z after the
    /// change of variables.
    pub ell_hat: BigInt,
}

/// Detect a single-wall crepant pair: the orbifold fan must be the resolved
/// fan with exactly one ray removed (and that ray appearing among the
/// orbifold's extra vectors).
pub fn detect_wall(resolved_fan: &StackyFan, orbifold_fan: &StackyFan) -> Result<WallData> {
    if resolved_fan.rank != orbifold_fan.rank {
        return Err(Error::NotSingleWall("rank mismatch".into()));
    }
    let missing: Vec<Vec<BigInt>> = resolved_fan
        .rays
        .iter()
        .filter(|r| !orbifold_fan.rays.contains(r))
        .cloned()
        .collect();
    if missing.len() != 1 {
        return Err(Error::NotSingleWall(format!(
            "{} rays contracted, need exactly one",
            missing.len()
        )));
    }
    let contracted = missing[0].clone();
    if !orbifold_fan.extra.contains(&contracted) {
        return Err(Error::NotSingleWall(
            "contracted ray is not an extra vector of the coarse fan".into(),
        ));
    }
    // shared extras must agree
    let mut resolved_extras = resolved_fan.extra.clone();
    resolved_extras.sort();
    let mut coarse_minus: Vec<Vec<BigInt>> = orbifold_fan
        .extra
        .iter()
        .filter(|e| *e != &contracted)
        .cloned()
        .collect();
    coarse_minus.sort();
    if resolved_extras != coarse_minus {
        return Err(Error::NotSingleWall(
            "extra vectors differ beyond the contracted ray".into(),
        ));
    }

    // Relabel the resolved fan: orbifold's rays first (in the orbifold's
    // order), contracted last.
    let mut new_rays: Vec<Vec<BigInt>> = orbifold_fan.rays.clone();
    new_rays.push(contracted.clone());
    let perm: Vec<usize> = resolved_fan
        .rays
        .iter()
        .map(|r| new_rays.iter().position(|x| x == r).unwrap())
        .collect();
    let new_cones: Vec<Vec<usize>> = resolved_fan
        .max_cones
        .iter()
        .map(|cone| {
            let mut c: Vec<usize> = cone.iter().map(|&i| perm[i]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    let relabeled = StackyFan {
        rank: resolved_fan.rank,
        rays: new_rays,
        max_cones: new_cones,
        extra: resolved_fan.extra.clone(),
        cy_covector: resolved_fan.cy_covector.clone(),
    };

    let resolved = crate::charges::build_charges(&relabeled, None)?;
    let orbifold = crate::charges::build_charges(orbifold_fan, None)?;

    // Wall functional: vanishes on the span of the shared chamber facet.
    // The coarse chamber, expressed in the refined side's coordinates, is
    // the intersection of cone(D_i : i in anticone) over the coarse fan's
    // anticones pushed through the alignment.
    let m2 = orbifold_fan.num_rays();
    let contracted_idx_resolved = m2; // by the relabeling
    let mut alignment = Vec::new();
    for i in 0..orbifold_fan.num_vectors() {
        let v = orbifold_fan.vector(i);
        let ri = if i < m2 {
            i
        } else if v == &contracted {
            contracted_idx_resolved
        } else {
            m2 + 1
                + resolved
                    .fan
                    .extra
                    .iter()
                    .position(|e| e == v)
                    .ok_or_else(|| Error::NotSingleWall("extra alignment failed".into()))?
        };
        alignment.push((ri, i));
    }
    // unified order: orbifold flat order but with contracted moved right
    // after the rays; reorder alignment accordingly
    alignment.sort_by_key(|&(ri, _)| ri);

    let functional = wall_functional(&resolved, &orbifold, &alignment, contracted_idx_resolved)?;

    // hat lattice: exponents x-hat_1 = sum_b Q[m-1][b] x_b over the coset
    // representatives must have a common denominator
    let mut ell_hat = BigInt::one();
    for rep in resolved
        .coset_reps
        .iter()
        .chain(resolved.d_dual.iter())
    {
        let hat = hat_exponent(&resolved, &rep.pairings);
        ell_hat = num::integer::lcm(ell_hat, crate::util::denominator_lcm(hat.iter()));
    }

    Ok(WallData {
        resolved,
        orbifold,
        contracted,
        functional,
        alignment,
        ell_hat,
    })
}

/// The functional cutting out the wall: zero on every shared divisor-class
/// direction of the two chambers' common facet, normalized to -1 on the
/// contracted divisor.
fn wall_functional(
    resolved: &ChargeData,
    orbifold: &ChargeData,
    alignment: &[(usize, usize)],
    contracted_idx: usize,
) -> Result<ExponentVector> {
    use crate::cone::{dd_from_inequalities, h_from_generators};
    let r = resolved.r;
    // both chambers in the resolved side's p-coordinates
    let mut ineqs: Vec<Vec<BigInt>> = Vec::new();
    for anticone in &resolved.anticones {
        let gens: Vec<Vec<BigInt>> = anticone.iter().map(|&i| resolved.q_matrix[i].clone()).collect();
        let (eqs, more) = h_from_generators(r, &gens)?;
        for e in eqs {
            ineqs.push(e.iter().map(|x| -x).collect());
            ineqs.push(e);
        }
        ineqs.extend(more);
    }
    for anticone in &orbifold.anticones {
        // push the coarse anticone through the alignment
        let gens: Vec<Vec<BigInt>> = anticone
            .iter()
            .map(|&oi| {
                let (ri, _) = alignment
                    .iter()
                    .find(|&&(_, o)| o == oi)
                    .expect("alignment covers all coarse vectors");
                resolved.q_matrix[*ri].clone()
            })
            .collect();
        let (eqs, more) = h_from_generators(r, &gens)?;
        for e in eqs {
            ineqs.push(e.iter().map(|x| -x).collect());
            ineqs.push(e);
        }
        ineqs.extend(more);
    }
    let common = dd_from_inequalities(r, &ineqs)?;
    // the facet spans a hyperplane; the functional is the kernel covector of
    // the span of (lineality + rays)
    let mut span: Vec<Vec<BigRational>> = Vec::new();
    for v in common.lineality.iter().chain(common.rays.iter()) {
        span.push(
            v.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        );
    }
    if span.is_empty() {
        // rank-one case: adjacent chambers meet only at the origin and the
        // wall "hyperplane" is the zero subspace
        span.push(vec![BigRational::zero(); r]);
    }
    let mat = crate::lattice::RatMatrix::from_rows(span);
    let kernel = crate::lattice::rational_kernel_basis(&mat);
    if kernel.len() != 1 {
        return Err(Error::NotSingleWall(format!(
            "shared facet has codimension {}, need a hyperplane",
            kernel.len()
        )));
    }
    let l_raw: Vec<BigRational> = kernel[0]
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    let l = ExponentVector::new(l_raw);
    // normalize so the contracted divisor pairs to -1
    let val = resolved.pair_divisor(contracted_idx, &l);
    if val.is_zero() {
        return Err(Error::NotSingleWall(
            "functional degenerate on the contracted divisor".into(),
        ));
    }
    let scale = -val.recip();
    let l = ExponentVector::new(l.pairings.iter().map(|x| x * &scale).collect());
    // sign pattern: exactly one ray negative (the contracted), extras zero
    let m = resolved.fan.num_rays();
    for i in 0..resolved.fan.num_vectors() {
        let p = resolved.pair_divisor(i, &l);
        if i == contracted_idx {
            if p != -BigRational::one() {
                return Err(Error::NotSingleWall("normalization failed".into()));
            }
        } else if i < m {
            if p.is_negative() {
                return Err(Error::NotSingleWall(format!(
                    "ray {i} also pairs negatively: not a single wall"
                )));
            }
        } else if !p.is_zero() {
            return Err(Error::NotSingleWall(format!(
                "extra {i} pairs nontrivially with the wall functional"
            )));
        }
    }
    Ok(l)
}

/// Exponent in the hat basis: first coordinate through the contracted
/// divisor class, the rest unchanged.
pub fn hat_exponent(resolved: &ChargeData, x: &[BigRational]) -> Vec<BigRational> {
    let m1 = resolved.fan.num_rays() - 1; // contracted index
    let mut out = Vec::with_capacity(x.len());
    let first: BigRational = resolved.q_matrix[m1]
        .iter()
        .zip(x)
        .map(|(q, v)| BigRational::from_integer(q.clone()) * v)
        .sum();
    out.push(first);
    out.extend(x.iter().skip(1).cloned());
    out
}

/// Inverse of [`hat_exponent`].
pub fn unhat_exponent(resolved: &ChargeData, xh: &[BigRational]) -> Result<Vec<BigRational>> {
    let m1 = resolved.fan.num_rays() - 1;
    let q0 = BigRational::from_integer(resolved.q_matrix[m1][0].clone());
    if q0.is_zero() {
        return Err(Error::NotSingleWall(
            "contracted divisor independent of the first coordinate".into(),
        ));
    }
    let mut rest_sum = BigRational::zero();
    for (b, v) in xh.iter().enumerate().skip(1) {
        rest_sum += BigRational::from_integer(resolved.q_matrix[m1][b].clone()) * v;
    }
    let x0 = (&xh[0] - rest_sum) / q0;
    let mut out = vec![x0];
    out.extend(xh.iter().skip(1).cloned());
    Ok(out)
}

/// Exact monomial-by-monomial relabeling into (or out of) the hat system.
pub fn change_of_variables(
    wall: &WallData,
    series: &RatSeries,
    to_hat: bool,
) -> Result<RatSeries> {
    let data = &wall.resolved;
    // hat weights keep degrees intact: degree of the hat variables follows
    // from expressing the grading in the new basis; for relabeling we only
    // need the exponents, so reuse the original weights transported.
    let vars = series.vars.clone();
    let mut out = RatSeries::zero(vars, series.order.clone());
    for (exp, c) in series.terms() {
        let new_exp = if to_hat {
            hat_exponent(data, exp)
        } else {
            unhat_exponent(data, exp)?
        };
        for x in &new_exp {
            let scaled = x * BigRational::from_integer(wall.ell_hat.clone());
            if !is_integer(&scaled) {
                return Err(Error::FractionalExponent(format!(
                    "exponent {} leaves the declared hat lattice",
                    rat_string(x)
                )));
            }
        }
        // degrees change under the relabeling; store without再 truncation by
        // keeping the original order bound (callers treat hat series as raw
        // exponent data)
        out.add_term(new_exp, c.clone());
    }
    Ok(out)
}

/// Parameters for the numeric continuation.
#[derive(Clone, Debug)]
pub struct ContinuationParams {
    /// Contour half-height scale; the vertical contour runs over
    /// [-T, T] with T = 8 + l_max.
    pub l_max: u32,
    /// Degree cap for the lattice sum over the non-continued directions.
    pub d_max: u32,
}

#[derive(Clone, Debug)]
pub struct ContinuedValue {
    pub value: Complex64,
    /// Crude truncation estimate: magnitude of the last row plus the
    /// integrand tail.
    pub estimate: f64,
}

/// Numeric analytic continuation of component `j` of `data`'s mirror map at
/// a complex point, continued along the first variable.
///
/// The point's remaining coordinates must be small enough for the row sums
/// to converge; the first coordinate may be arbitrarily large. Its sign
/// must make the effective contour weight positive real (the engine checks
/// and reports the required sign).
pub fn continue_component_numeric(
    data: &ChargeData,
    j: usize,
    point: &[Complex64],
    params: &ContinuationParams,
) -> Result<ContinuedValue> {
    let r = data.r;
    if point.len() != r {
        return Err(Error::InvalidInput("point arity mismatch".into()));
    }
    let m = data.fan.num_rays();
    let total = data.fan.num_vectors();
    let smooth = j < m;
    let rep: Vec<BigRational> = if smooth {
        vec![BigRational::zero(); r]
    } else {
        data.coset_reps[j - m].pairings.clone()
    };

    // slopes along the continued direction and the other generators
    let gens = data.lattice_generators();
    let slope = |i: usize, dir: usize| -> BigRational { data.pair_divisor(i, &gens[dir]) };

    // rows: offsets k_a for a >= 1 with bounded degree
    let row_offsets = enumerate_rows(data, &rep, params.d_max)?;

    let mut value = Complex64::new(0.0, 0.0);
    let mut estimate = 0.0f64;
    let mut last_row_mag = 0.0f64;

    for row in &row_offsets {
        // offsets alpha_i for this row
        let mut d_row = ExponentVector::new(rep.clone());
        for (a, k) in row.iter().enumerate() {
            let shift = BigRational::from_integer(k.clone());
            for (b, x) in d_row.pairings.iter_mut().enumerate() {
                *x += &shift * &gens[a + 1].pairings[b];
            }
        }
        let alphas: Vec<BigRational> = (0..total).map(|i| data.pair_divisor(i, &d_row)).collect();
        let slopes: Vec<BigRational> = (0..total).map(|i| slope(i, 0)).collect();

        // support scan along sigma
        let coeff_exact = |sigma: i64| -> Option<BigRational> {
            let mut d = d_row.clone();
            let s = BigRational::from_integer(BigInt::from(sigma));
            for (b, x) in d.pairings.iter_mut().enumerate() {
                *x += &s * &gens[0].pairings[b];
            }
            exact_coefficient(data, j, smooth, &d)
        };
        let window = 96i64;
        let mut t_min: Option<i64> = None;
        for sigma in -window..=window {
            if coeff_exact(sigma).is_some() {
                t_min = Some(sigma);
                break;
            }
        }
        let Some(t_min) = t_min else { continue };

        // terminating row: a negative-slope factor with integral offset
        // bounds the support above, so sum directly
        let terminating = (0..total).any(|i| {
            slopes[i].is_negative() && is_integer(&alphas[i]) && {
                // exclude the smooth component's own factor: the gamma
                // numerator handles it
                !(smooth && i == j)
            }
        });

        // monomial in the non-continued variables times the fractional part
        // of the continued one
        let mono = |sigma_offset: &BigRational| -> Complex64 {
            let mut acc = Complex64::new(1.0, 0.0);
            for (a, v) in point.iter().enumerate() {
                let e = if a == 0 {
                    sigma_offset.clone()
                } else {
                    d_row.pairings[a].clone()
                };
                if e.is_zero() {
                    continue;
                }
                let ef = e.to_f64().unwrap();
                if is_integer(&e) {
                    acc *= v.powi(ef as i32);
                } else {
                    acc *= v.powc(Complex64::new(ef, 0.0));
                }
            }
            acc
        };

        if terminating {
            // finite or rapidly-terminating support: direct summation
            let mut row_val = Complex64::new(0.0, 0.0);
            for sigma in t_min..=window {
                if let Some(c) = coeff_exact(sigma) {
                    let e0 = &d_row.pairings[0]
                        + BigRational::from_integer(BigInt::from(sigma));
                    row_val += Complex64::new(c.to_f64().unwrap(), 0.0) * mono(&e0);
                }
            }
            value += row_val;
            last_row_mag = row_val.norm();
            continue;
        }

        let (row_val, row_est) = mb_row_integral(
            data, j, smooth, &alphas, &slopes, &d_row, t_min, point, params, &mono,
        )?;
        value += row_val;
        estimate += row_est;
        last_row_mag = row_val.norm();
    }
    estimate += last_row_mag.min(1.0) * 1e-10 + last_row_mag * 0.0 + last_row_mag_tail(last_row_mag);
    Ok(ContinuedValue { value, estimate })
}

fn last_row_mag_tail(mag: f64) -> f64 {
    // conservative: the next (omitted) row is assumed no larger than the
    // last computed one
    mag
}

/// Exact coefficient of the component at a class, or None when the class is
/// outside the index set.
fn exact_coefficient(
    data: &ChargeData,
    j: usize,
    smooth: bool,
    d: &ExponentVector,
) -> Option<BigRational> {
    let spec = if smooth {
        crate::enumerate::OmegaSpec::Smooth { j }
    } else {
        crate::enumerate::OmegaSpec::Twisted { j }
    };
    if !spec.accepts(data, d) {
        return None;
    }
    let pair = data.pair_all_divisors(d);
    if smooth {
        let mut c = BigRational::one();
        let k = (-pair[j].clone()).to_integer();
        let mut t = BigInt::one();
        while t < k {
            c *= BigRational::from_integer(t.clone());
            t += 1;
        }
        if ((&k - BigInt::one()) % BigInt::from(2)).is_one() {
            c = -c;
        }
        for (i, p) in pair.iter().enumerate() {
            if i == j {
                continue;
            }
            let pi = p.to_integer();
            let mut f = BigInt::one();
            while f <= pi {
                c /= BigRational::from_integer(f.clone());
                f += 1;
            }
        }
        Some(c)
    } else {
        let mut c = BigRational::one();
        for p in &pair {
            c *= crate::mirror_map::gamma_ratio(p).ok()?;
        }
        Some(c)
    }
}

/// Row offsets (k_2 .. k_r) with bounded degree along the non-continued
/// generators.
fn enumerate_rows(
    data: &ChargeData,
    rep: &[BigRational],
    d_max: u32,
) -> Result<Vec<Vec<BigInt>>> {
    let r = data.r;
    if r == 1 {
        return Ok(vec![vec![]]);
    }
    let gens = data.lattice_generators();
    // conservative ranges: |k_a| small, filtered by a degree heuristic on
    // the non-continued part
    let cap = d_max as i64;
    let mut rows = vec![vec![]];
    for _a in 1..r {
        let mut next = Vec::new();
        for row in &rows {
            for k in -cap..=cap {
                let mut nr = row.clone();
                nr.push(BigInt::from(k));
                next.push(nr);
            }
        }
        rows = next;
    }
    // filter by degree of the offset part
    let mut kept = Vec::new();
    for row in rows {
        let mut d = ExponentVector::new(rep.to_vec());
        for (a, k) in row.iter().enumerate() {
            let shift = BigRational::from_integer(k.clone());
            for (b, x) in d.pairings.iter_mut().enumerate() {
                *x += &shift * &gens[a + 1].pairings[b];
            }
        }
        // degree of the non-continued coordinates only
        let deg: BigRational = d
            .pairings
            .iter()
            .zip(&data.grading)
            .skip(1)
            .map(|(x, w)| x * w)
            .sum();
        if deg.abs() <= BigRational::from_integer(BigInt::from(d_max)) {
            kept.push(row);
        }
    }
    Ok(kept)
}

/// One row's Mellin-Barnes integral.
#[allow(clippy::too_many_arguments)]
fn mb_row_integral(
    data: &ChargeData,
    j: usize,
    smooth: bool,
    alphas: &[BigRational],
    slopes: &[BigRational],
    d_row: &ExponentVector,
    t_min: i64,
    point: &[Complex64],
    params: &ContinuationParams,
    mono: &dyn Fn(&BigRational) -> Complex64,
) -> Result<(Complex64, f64)> {
    let total = alphas.len();
    // classify factors
    #[derive(Debug)]
    enum Factor {
        // 1/Gamma(alpha + q sigma + 1), entire
        InvGamma { alpha: f64, q: f64 },
        // reflected: -Gamma(-(alpha + q sigma)) * sin(pi alpha)/pi,
        // lattice-equal to 1/Gamma(.+1) after folding (-1)^{q sigma}
        Reflected { alpha: f64, q: f64, sin_alpha: f64 },
        // smooth numerator Gamma(-(alpha + q sigma)) with constant sign
        SmoothNum { alpha: f64, q: f64 },
    }
    let mut factors = Vec::new();
    let mut const_scale = Complex64::new(1.0, 0.0);
    let mut w_sign = -1.0f64; // kernel's own (-1)^sigma
    for i in 0..total {
        let a_f = alphas[i].to_f64().unwrap();
        let q_f = slopes[i].to_f64().unwrap();
        let q_int: i64 = slopes[i].to_integer().try_into().map_err(|_| {
            Error::InvalidInput("slope too large".into())
        })?;
        if smooth && i == j {
            // sign (-1)^{c_j(0)+1}, fold (-1)^{q_j sigma}
            let c0: i64 = alphas[i]
                .to_integer()
                .try_into()
                .map_err(|_| Error::InvalidInput("offset too large".into()))?;
            if (c0 + 1).rem_euclid(2) == 1 {
                const_scale = -const_scale;
            }
            if q_int.rem_euclid(2) == 1 {
                w_sign = -w_sign;
            }
            if slopes[i].is_positive() {
                return Err(Error::NumericFailure(
                    "smooth component with positive self-slope not supported".into(),
                ));
            }
            factors.push(Factor::SmoothNum { alpha: a_f, q: q_f });
            continue;
        }
        if slopes[i].is_zero() {
            // constant factor
            let g = crate::mirror_map::gamma_ratio(&alphas[i]).map_err(|_| {
                Error::NumericFailure("row has a constant pole factor".into())
            })?;
            const_scale *= Complex64::new(g.to_f64().unwrap(), 0.0);
            continue;
        }
        if slopes[i].is_positive() {
            // keep 1/Gamma but fold the telescoped constant: the exact
            // coefficient uses gamma_ratio = Gamma(f_i)/Gamma(c+1)
            let f_i = BigRational::one() - frac(&-alphas[i].clone());
            const_scale *= gamma(Complex64::new(f_i.to_f64().unwrap(), 0.0));
            factors.push(Factor::InvGamma { alpha: a_f, q: q_f });
        } else {
            // negative slope, fractional offset (integral handled upstream)
            if is_integer(&alphas[i]) {
                return Err(Error::NumericFailure(
                    "integral-offset negative slope reached the integrand".into(),
                ));
            }
            let f_i = BigRational::one() - frac(&-alphas[i].clone());
            const_scale *= gamma(Complex64::new(f_i.to_f64().unwrap(), 0.0));
            let sin_alpha = (std::f64::consts::PI * a_f).sin();
            // fold (-1)^{q sigma}
            if q_int.rem_euclid(2) == 1 {
                w_sign = -w_sign;
            }
            factors.push(Factor::Reflected {
                alpha: a_f,
                q: q_f,
                sin_alpha,
            });
        }
    }

    // effective positive-real weight: W = w_sign * y_0
    let y0 = point[0];
    let w = Complex64::new(w_sign, 0.0) * y0;
    if w.re <= 0.0 || w.im.abs() > 1e-9 * (1.0 + w.re.abs()) {
        return Err(Error::NumericFailure(format!(
            "continued coordinate must satisfy ({w_sign}) * y_1 > 0; got {y0}"
        )));
    }
    let ln_w = w.re.ln();

    // resonance guard: left poles must stay left of the contour
    let c0 = t_min as f64 - 0.5;
    for f in &factors {
        let (alpha, q) = match f {
            Factor::Reflected { alpha, q, .. } => (*alpha, *q),
            Factor::SmoothNum { alpha, q } => (*alpha, *q),
            _ => continue,
        };
        // poles where alpha + q sigma = -k, k >= 0 (Gamma(-(alpha+q sigma)))
        // i.e. sigma = (-k - alpha)/q with q < 0: rightmost at k = 0
        let rightmost = -alpha / q;
        if rightmost >= c0 {
            return Err(Error::Resonance(format!(
                "left pole at sigma = {rightmost} meets the contour at {c0}"
            )));
        }
    }

    let eval = |sigma: Complex64| -> Complex64 {
        let pi = std::f64::consts::PI;
        // kernel pi / sin(pi sigma)
        let mut v = Complex64::new(pi, 0.0) / (pi * sigma).sin();
        for f in &factors {
            match f {
                Factor::InvGamma { alpha, q } => {
                    v *= rgamma(Complex64::new(alpha + 1.0, 0.0) + q * sigma);
                }
                Factor::Reflected { alpha, q, sin_alpha } => {
                    v *= -gamma(-(Complex64::new(*alpha, 0.0) + *q * sigma))
                        * Complex64::new(sin_alpha / pi, 0.0);
                }
                Factor::SmoothNum { alpha, q } => {
                    v *= gamma(-(Complex64::new(*alpha, 0.0) + *q * sigma));
                }
            }
        }
        v * (sigma * ln_w).exp()
    };

    let t_height = 8.0 + params.l_max as f64;
    let steps = ((t_height / 0.004) as usize).max(4000) | 1; // odd count
    let h = 2.0 * t_height / (steps as f64 - 1.0);
    // composite Simpson over [c0 - iT, c0 + iT]
    let mut sum = Complex64::new(0.0, 0.0);
    let mut tail = 0.0f64;
    for k in 0..steps {
        let t = -t_height + h * k as f64;
        let val = eval(Complex64::new(c0, t));
        let wgt = if k == 0 || k == steps - 1 {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        sum += val * wgt;
        if k == 0 || k == steps - 1 {
            tail = tail.max(val.norm());
        }
    }
    // upward line = minus the (clockwise) right-closure residue sum
    let integral = -sum * (h / 3.0) / (2.0 * std::f64::consts::PI);
    // fractional offset of the continued exponent
    let frac_part = &d_row.pairings[0];
    let base = mono(frac_part);
    // the W-sign folding moved signs from y into w; undo on the fractional
    // prefactor by evaluating y_0^{frac} directly in `mono` (already done)
    let value = const_scale * base * integral;
    Ok((value, tail * 10.0 + 1e-14))
}

/// Scalar evaluation of a rational series at a complex point.
pub fn evaluate_series(series: &RatSeries, point: &[Complex64]) -> Complex64 {
    crate::series::evaluate_complex(series, point)
}

/// kappa-values of the [C^2/Z_m] closed-form mirror: zeta^{2k+1}
/// prod_r exp(zeta^{(2k+1) r} tau_r / m), zeta = exp(i pi / m).
pub fn c2zm_kappas(m: usize, tau: &[Complex64]) -> Vec<Complex64> {
    let pi = std::f64::consts::PI;
    (0..m)
        .map(|k| {
            let zeta_pow = |e: i64| -> Complex64 {
                Complex64::from_polar(1.0, pi * e as f64 / m as f64)
            };
            let mut v = zeta_pow((2 * k + 1) as i64);
            for (r, t) in tau.iter().enumerate() {
                let arg = zeta_pow(((2 * k + 1) * (r + 1)) as i64) * t / m as f64;
                v *= arg.exp();
            }
            v
        })
        .collect()
}

/// Elementary symmetric polynomial e_j of complex values.
pub fn elementary_symmetric(vals: &[Complex64], j: usize) -> Complex64 {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); vals.len() + 1];
    coeffs[0] = Complex64::new(1.0, 0.0);
    for v in vals {
        for k in (1..coeffs.len()).rev() {
            let add = coeffs[k - 1] * v;
            coeffs[k] += add;
        }
    }
    coeffs[j]
}
