//! Charge data of a stacky fan: the lattice L of relations, divisor classes,
//! a positive basis of L-dual, the charge matrix Q, dual curve classes of the
//! extra vectors, a grading covector, and coset representatives for the
//! twisted sectors.

use crate::cone::{dd_from_inequalities, h_contains, h_from_generators, hilbert_basis};
use crate::error::{Error, Result};
use crate::fan::{BoxElement, StackyFan};
use crate::lattice::{kernel_basis, solve_rational, IntMatrix, RatMatrix};

use crate::util::{denominator_lcm, frac, is_integer, rat_string};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// A rational class in L tensor Q, recorded by its pairings with the chosen
/// basis `p_1 .. p_r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExponentVector {
    pub pairings: Vec<BigRational>,
}

impl ExponentVector {
    pub fn new(pairings: Vec<BigRational>) -> Self {
        ExponentVector { pairings }
    }

    pub fn zero(r: usize) -> Self {
        ExponentVector {
            pairings: vec![BigRational::zero(); r],
        }
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector::new(
            self.pairings
                .iter()
                .zip(&other.pairings)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.pairings.iter().all(is_integer)
    }
}

/// The exact sequences of the fan, in coordinates.
///
/// L is identified with Z^r through a kernel basis of the fan map; divisor
/// classes and the basis p are covectors on L. All pairing computations
/// reduce to integer matrix arithmetic against these coordinates.
#[derive(Clone, Debug)]
pub struct ChargeData {
    pub fan: StackyFan,
    /// Kernel basis of the fan map: columns span L inside Z^{m'}.
    pub l_basis: Vec<Vec<BigInt>>,
    /// r = m' - n.
    pub r: usize,
    /// r' = m - n, the rank of H_2.
    pub r_prime: usize,
    /// Basis p_1..p_r of L-dual, each row in kernel-dual coordinates.
    pub basis_p: Vec<Vec<BigInt>>,
    /// Q[i][a]: expansion of divisor class D_i over the basis p.
    pub q_matrix: Vec<Vec<BigInt>>,
    /// Dual curve classes of the extra vectors, indexed by extra number.
    pub d_dual: Vec<ExponentVector>,
    /// Grading covector in p-coordinates; strictly positive on the
    /// enumerated effective classes.
    pub grading: Vec<BigRational>,
    /// Positivity certificates: for each anticone, coefficients expressing
    /// the grading covector over that anticone's divisors.
    pub grading_certificates: Vec<(Vec<usize>, Vec<BigRational>)>,
    /// Extreme rays of the closed extended Kahler cone, in p-coordinates.
    pub kahler_rays: Vec<Vec<BigInt>>,
    /// Coset representatives d_nu for the age-one Box elements, pairings
    /// in [0,1).
    pub coset_reps: Vec<ExponentVector>,
    /// Common denominator: ell * pairing is integral for every coset
    /// representative and dual class.
    pub ell: BigInt,
    /// Age-one Box elements in extra-vector order (lexicographic).
    pub box_elements: Vec<BoxElement>,
    /// Anticones of the fan, cached.
    pub anticones: Vec<Vec<usize>>,
}

impl ChargeData {
    /// Pairing of divisor class D_i with a class d.
    pub fn pair_divisor(&self, i: usize, d: &ExponentVector) -> BigRational {
        self.q_matrix[i]
            .iter()
            .zip(&d.pairings)
            .map(|(q, x)| BigRational::from_integer(q.clone()) * x)
            .sum()
    }

    pub fn pair_all_divisors(&self, d: &ExponentVector) -> Vec<BigRational> {
        (0..self.fan.num_vectors())
            .map(|i| self.pair_divisor(i, d))
            .collect()
    }

    /// Grading degree of a class.
    pub fn degree(&self, d: &ExponentVector) -> BigRational {
        self.grading
            .iter()
            .zip(&d.pairings)
            .map(|(w, x)| w * x)
            .sum()
    }

    /// The reduction of a class to its Box element: sum of ceil(<D_i, d>) b_i.
    pub fn reduction(&self, d: &ExponentVector) -> Vec<BigInt> {
        let n = self.fan.rank;
        let mut out = vec![BigInt::zero(); n];
        for i in 0..self.fan.num_vectors() {
            let c = crate::util::ceil_int(&self.pair_divisor(i, d));
            if c.is_zero() {
                continue;
            }
            for (row, item) in out.iter_mut().enumerate() {
                *item += &c * &self.fan.vector(i)[row];
            }
        }
        out
    }

    /// Membership in K: the set of indices with integral pairing must be an
    /// anticone.
    pub fn integrality_locus_is_anticone(&self, d: &ExponentVector) -> bool {
        let locus: Vec<usize> = (0..self.fan.num_vectors())
            .filter(|&i| is_integer(&self.pair_divisor(i, d)))
            .collect();
        self.anticones.contains(&locus)
    }

    /// Membership in K_eff: indices with nonnegative integral pairing form
    /// an anticone.
    pub fn is_effective(&self, d: &ExponentVector) -> bool {
        let locus: Vec<usize> = (0..self.fan.num_vectors())
            .filter(|&i| {
                let p = self.pair_divisor(i, d);
                is_integer(&p) && !p.is_negative()
            })
            .collect();
        self.anticones.contains(&locus)
    }

    /// Kernel basis vectors of L expressed as exponent vectors (pairings
    /// with the basis p). These are integral classes.
    pub fn lattice_generators(&self) -> Vec<ExponentVector> {
        (0..self.r)
            .map(|a| {
                ExponentVector::new(
                    (0..self.r)
                        .map(|b| BigRational::from_integer(self.basis_p[b][a].clone()))
                        .collect(),
                )
            })
            .collect()
    }

    /// Extra-vector index (0-based within extras) for a Box element vector.
    pub fn extra_index_of(&self, v: &[BigInt]) -> Option<usize> {
        self.fan.extra.iter().position(|e| e == v)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let d_dual: serde_json::Map<String, serde_json::Value> = self
            .d_dual
            .iter()
            .enumerate()
            .map(|(j, d)| {
                (
                    format!("{}", self.fan.num_rays() + j),
                    serde_json::json!(d.pairings.iter().map(rat_string).collect::<Vec<_>>()),
                )
            })
            .collect();
        serde_json::json!({
            "L_rank": self.r,
            "H2_rank": self.r_prime,
            "Q": self
                .q_matrix
                .iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "D_dual": d_dual,
            "grading": self.grading.iter().map(rat_string).collect::<Vec<_>>(),
            "coset_denominator": self.ell.to_string(),
        })
    }
}

/// Build the charge data for a validated fan with extras.
///
/// `basis_hint`, when given, lists r covectors in the kernel-dual
/// coordinates produced by this function's own kernel basis; hints phrased
/// as divisor combinations go through [`basis_hint_from_divisors`].
pub fn build_charges(fan: &StackyFan, basis_hint: Option<Vec<Vec<BigInt>>>) -> Result<ChargeData> {
    let report = fan.validate()?;
    if !report.valid() {
        let bad: Vec<String> = report
            .checks
            .iter()
            .filter(|c| !c.ok)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        return Err(Error::InvalidInput(format!(
            "fan failed validation: {}",
            bad.join("; ")
        )));
    }
    let n = fan.rank;
    let total = fan.num_vectors();
    let phi = IntMatrix::from_columns(
        &(0..total).map(|i| fan.vector(i).clone()).collect::<Vec<_>>(),
    );
    let l_basis = kernel_basis(&phi);
    let r = l_basis.len();
    if r != total - n {
        return Err(Error::InvalidInput(format!(
            "kernel rank {} != m' - n = {}",
            r,
            total - n
        )));
    }
    let r_prime = fan.num_rays() - n;

    // Divisor classes in kernel-dual coordinates: D_i(lambda_a) = lambda_a[i].
    let divisor_rows: Vec<Vec<BigInt>> = (0..total)
        .map(|i| l_basis.iter().map(|lam| lam[i].clone()).collect())
        .collect();

    // CY identity: sum of divisor classes vanishes.
    for a in 0..r {
        let s: BigInt = divisor_rows.iter().map(|row| row[a].clone()).sum();
        if !s.is_zero() {
            return Err(Error::InvalidInput(
                "CY identity sum D_i = 0 fails; fan is not Calabi-Yau".into(),
            ));
        }
    }

    let anticones = fan.anticones();

    // Closure of the extended Kahler cone: intersection over anticones of
    // cone(D_i : i in anticone).
    let mut combined: Vec<Vec<BigInt>> = Vec::new();
    for anticone in &anticones {
        let gens: Vec<Vec<BigInt>> = anticone.iter().map(|&i| divisor_rows[i].clone()).collect();
        let (eqs, ineqs) = h_from_generators(r, &gens)?;
        for e in eqs {
            combined.push(e.iter().map(|x| -x).collect());
            combined.push(e);
        }
        combined.extend(ineqs);
    }
    let kahler = dd_from_inequalities(r, &combined)?;
    if !kahler.lineality.is_empty() {
        return Err(Error::InvalidInput(
            "extended Kahler cone is not pointed".into(),
        ));
    }

    // H-representation of the closure, for membership tests.
    let (kc_eqs, kc_ineqs) = h_from_generators(r, &kahler.rays)?;
    // Cone spanned by the extra divisor classes, for the trailing basis block.
    let extra_rows: Vec<Vec<BigInt>> = (fan.num_rays()..total)
        .map(|i| divisor_rows[i].clone())
        .collect();
    let (ex_eqs, ex_ineqs) = if extra_rows.is_empty() {
        (vec![], vec![])
    } else {
        h_from_generators(r, &extra_rows)?
    };
    let in_kahler = |v: &[BigInt]| {
        let x: Vec<BigRational> = v
            .iter()
            .map(|t| BigRational::from_integer(t.clone()))
            .collect();
        h_contains(&kc_eqs, &kc_ineqs, &x)
    };
    let in_extra_cone = |v: &[BigInt]| {
        if extra_rows.is_empty() {
            return false;
        }
        let x: Vec<BigRational> = v
            .iter()
            .map(|t| BigRational::from_integer(t.clone()))
            .collect();
        h_contains(&ex_eqs, &ex_ineqs, &x)
    };

    let basis_p: Vec<Vec<BigInt>> = match basis_hint {
        Some(p) => {
            validate_basis(&p, r, r_prime, &in_kahler, &in_extra_cone)?;
            p
        }
        None => {
            if r > 4 {
                return Err(Error::BasisSearchFailed(format!(
                    "automatic search capped at rank 4, fan has rank {r}"
                )));
            }
            search_basis(r, r_prime, &kahler.rays, &in_kahler, &in_extra_cone)?
        }
    };

    // Q matrix: D_i = sum_a Q[i][a] p_a, solved exactly; must be integral.
    let mut p_t = RatMatrix::zero(r, r);
    for a in 0..r {
        for b in 0..r {
            p_t[(b, a)] = BigRational::from_integer(basis_p[a][b].clone());
        }
    }
    let mut q_matrix: Vec<Vec<BigInt>> = Vec::with_capacity(total);
    for row in &divisor_rows {
        let rhs: Vec<BigRational> = row
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        let sol = solve_rational(&p_t, &rhs)?
            .ok_or_else(|| Error::InvalidInput("divisor outside basis span".into()))?;
        if !sol.iter().all(is_integer) {
            return Err(Error::BasisRejected(
                "divisor class has non-integral expansion over the basis".into(),
            ));
        }
        q_matrix.push(sol.iter().map(|x| x.to_integer()).collect());
    }

    // Q[i][a] = 0 for extras i and a <= r'.
    for i in fan.num_rays()..total {
        for (a, entry) in q_matrix[i].iter().enumerate().take(r_prime) {
            if !entry.is_zero() {
                return Err(Error::BasisRejected(format!(
                    "extra divisor {i} has nonzero coordinate on p_{}",
                    a + 1
                )));
            }
        }
    }

    // Box elements sorted lexicographically must match the extras.
    let boxes = fan.compute_box()?;
    let age_one: Vec<BoxElement> = boxes.into_iter().filter(|b| b.age.is_one()).collect();
    if age_one.len() != fan.extra.len()
        || age_one.iter().zip(&fan.extra).any(|(b, e)| &b.vector != e)
    {
        return Err(Error::InvalidInput(
            "extras must be exactly the age-one Box elements in lexicographic order".into(),
        ));
    }

    let mut data = ChargeData {
        fan: fan.clone(),
        l_basis,
        r,
        r_prime,
        basis_p,
        q_matrix,
        d_dual: vec![],
        grading: vec![],
        grading_certificates: vec![],
        kahler_rays: vec![],
        coset_reps: vec![],
        ell: BigInt::one(),
        box_elements: age_one,
        anticones,
    };
    data.kahler_rays = kahler_rays_in_p(&data)?;

    // Dual curve classes.
    for j in 0..fan.extra.len() {
        let d = dual_curve_class(&data, fan.num_rays() + j)?;
        data.d_dual.push(d);
    }

    // Grading covector.
    let (grading, certificates) = grading_covector(&data)?;
    data.grading = grading;
    data.grading_certificates = certificates;

    // Coset representatives: reduce the dual classes into [0,1)^r.
    for (j, d) in data.d_dual.clone().iter().enumerate() {
        let rep = ExponentVector::new(d.pairings.iter().map(frac).collect());
        let nu = data.reduction(&rep);
        if &nu != data.fan.vector(fan.num_rays() + j) {
            return Err(Error::IdentityFailure(format!(
                "coset representative of extra {j} reduces to {nu:?}, expected the Box vector"
            )));
        }
        if !data.integrality_locus_is_anticone(&rep) {
            return Err(Error::IdentityFailure(format!(
                "coset representative of extra {j} lies outside K"
            )));
        }
        data.coset_reps.push(rep);
    }

    // Common denominator ell.
    let mut all_pairings: Vec<BigRational> = Vec::new();
    for d in data.d_dual.iter().chain(data.coset_reps.iter()) {
        all_pairings.extend(d.pairings.iter().cloned());
    }
    data.ell = denominator_lcm(all_pairings.iter());

    // Mutual-inverse identity on the extra block.
    check_extra_block_inverse(&data)?;

    Ok(data)
}

/// Convert a basis hint given as divisor-class combinations into kernel-dual
/// coordinates: each hint row lists integer coefficients c_i with
/// p = sum_i c_i D_i.
pub fn basis_hint_from_divisors(
    fan: &StackyFan,
    combos: &[Vec<BigInt>],
) -> Result<Vec<Vec<BigInt>>> {
    let total = fan.num_vectors();
    let phi = IntMatrix::from_columns(
        &(0..total).map(|i| fan.vector(i).clone()).collect::<Vec<_>>(),
    );
    let l_basis = kernel_basis(&phi);
    let r = l_basis.len();
    combos
        .iter()
        .map(|c| {
            if c.len() != total {
                return Err(Error::InvalidInput(format!(
                    "basis hint row has {} entries, expected {}",
                    c.len(),
                    total
                )));
            }
            Ok((0..r)
                .map(|a| c.iter().zip(&l_basis[a]).map(|(x, y)| x * y).sum())
                .collect())
        })
        .collect()
}

fn validate_basis(
    p: &[Vec<BigInt>],
    r: usize,
    r_prime: usize,
    in_kahler: &dyn Fn(&[BigInt]) -> bool,
    in_extra_cone: &dyn Fn(&[BigInt]) -> bool,
) -> Result<()> {
    if p.len() != r || p.iter().any(|row| row.len() != r) {
        return Err(Error::BasisRejected(format!(
            "expected {r} covectors of arity {r}"
        )));
    }
    let det = IntMatrix::from_rows(p.to_vec()).determinant();
    if det.abs() != BigInt::one() {
        return Err(Error::BasisRejected(format!(
            "not an integral basis of the dual lattice (determinant {det})"
        )));
    }
    for (a, row) in p.iter().enumerate() {
        if !in_kahler(row) {
            return Err(Error::BasisRejected(format!(
                "p_{} is outside the closure of the extended Kahler cone",
                a + 1
            )));
        }
        if a >= r_prime && !in_extra_cone(row) {
            return Err(Error::BasisRejected(format!(
                "p_{} is not in the cone spanned by the extra divisor classes",
                a + 1
            )));
        }
    }
    Ok(())
}

/// Deterministic search over Hilbert-basis elements of the Kahler-cone
/// closure: the trailing block comes from elements of the extra-divisor
/// cone, the leading block from the rest; first unimodular combination wins.
fn search_basis(
    r: usize,
    r_prime: usize,
    kahler_rays: &[Vec<BigInt>],
    in_kahler: &dyn Fn(&[BigInt]) -> bool,
    in_extra_cone: &dyn Fn(&[BigInt]) -> bool,
) -> Result<Vec<Vec<BigInt>>> {
    if r == 0 {
        return Ok(vec![]);
    }
    let mut hb = hilbert_basis(r, kahler_rays)?;
    hb.sort();
    let tail_candidates: Vec<usize> = (0..hb.len()).filter(|&i| in_extra_cone(&hb[i])).collect();
    let head_candidates: Vec<usize> = (0..hb.len()).collect();
    let tail_size = r - r_prime;
    let tails = crate::cone::combinations(&tail_candidates, tail_size);
    let heads = crate::cone::combinations(&head_candidates, r_prime);
    for tail in &tails {
        for head in &heads {
            if head.iter().any(|h| tail.contains(h)) {
                continue;
            }
            let mut rows: Vec<Vec<BigInt>> = head.iter().map(|&i| hb[i].clone()).collect();
            rows.extend(tail.iter().map(|&i| hb[i].clone()));
            if IntMatrix::from_rows(rows.clone()).determinant().abs() == BigInt::one()
                && rows.iter().all(|row| in_kahler(row))
            {
                return Ok(rows);
            }
        }
    }
    Err(Error::BasisSearchFailed(format!(
        "no unimodular basis among {} Hilbert-basis elements",
        hb.len()
    )))
}

/// Solve the defining pairing table for the dual curve class of vector `j`
/// (a flat index into rays-then-extras; must be an extra).
pub fn dual_curve_class(data: &ChargeData, j: usize) -> Result<ExponentVector> {
    let fan = &data.fan;
    let m = fan.num_rays();
    if j < m || j >= fan.num_vectors() {
        return Err(Error::InvalidInput(format!(
            "dual curve class index {j} is not an extra vector"
        )));
    }
    let b = &data.box_elements[j - m];
    let total = fan.num_vectors();
    let mut rhs = vec![BigRational::zero(); total];
    rhs[j] = BigRational::one();
    for (&i, c) in b.cone.iter().zip(&b.coords) {
        rhs[i] = -c.clone();
    }
    let q_rat = RatMatrix::from_rows(
        data.q_matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect()
            })
            .collect(),
    );
    let x = solve_rational(&q_rat, &rhs)?.ok_or_else(|| {
        Error::IdentityFailure(format!("dual class system inconsistent for extra {j}"))
    })?;
    let d = ExponentVector::new(x);
    // postcondition: the full pairing table holds exactly
    for i in 0..total {
        if data.pair_divisor(i, &d) != rhs[i] {
            return Err(Error::IdentityFailure(format!(
                "dual class pairing table fails at divisor {i}"
            )));
        }
    }
    Ok(d)
}

/// Extreme rays of the Kahler-cone closure as covectors in p-coordinates.
fn kahler_rays_in_p(data: &ChargeData) -> Result<Vec<Vec<BigInt>>> {
    use crate::cone::dd_from_inequalities;
    let r = data.r;
    if r == 0 {
        return Ok(vec![]);
    }
    let mut combined: Vec<Vec<BigInt>> = Vec::new();
    for anticone in &data.anticones {
        let gens: Vec<Vec<BigInt>> = anticone.iter().map(|&i| data.q_matrix[i].clone()).collect();
        let (eqs, ineqs) = h_from_generators(r, &gens)?;
        for e in eqs {
            combined.push(e.iter().map(|x| -x).collect());
            combined.push(e);
        }
        combined.extend(ineqs);
    }
    let cone = dd_from_inequalities(r, &combined)?;
    if !cone.lineality.is_empty() {
        return Err(Error::GradingFailure(
            "extended Kahler cone degenerated under basis change".into(),
        ));
    }
    let mut rays = cone.rays;
    rays.sort();
    Ok(rays)
}

/// The grading covector is the sum of the primitive extreme rays of the
/// Kahler-cone closure (an interior point with natural scale), certified by
/// an exact LP per anticone: strictly positive coefficients expressing the
/// covector over that anticone's divisors.
fn grading_covector(
    data: &ChargeData,
) -> Result<(Vec<BigRational>, Vec<(Vec<usize>, Vec<BigRational>)>)> {
    let r = data.r;
    if r == 0 {
        return Ok((vec![], vec![]));
    }
    let omega: Vec<BigRational> = (0..r)
        .map(|b| {
            data.kahler_rays
                .iter()
                .map(|ray| BigRational::from_integer(ray[b].clone()))
                .sum()
        })
        .collect();
    let mut certs = Vec::new();
    for anticone in &data.anticones {
        // omega = sum_{i in anticone} t_i D_i with every t_i maximizing the
        // minimum coefficient; strictly positive by interior membership
        let rows: Vec<Vec<BigRational>> = (0..r)
            .map(|b| {
                anticone
                    .iter()
                    .map(|&i| BigRational::from_integer(data.q_matrix[i][b].clone()))
                    .collect()
            })
            .collect();
        match crate::lp::positive_solution(&rows, &omega)? {
            Some((coeffs, margin)) if margin.is_positive() => {
                certs.push((anticone.clone(), coeffs));
            }
            _ => {
                return Err(Error::GradingFailure(format!(
                    "no strictly positive certificate on anticone {anticone:?}"
                )))
            }
        }
    }
    Ok((omega, certs))
}

/// The (r-r') x (r-r') blocks Q[extra][a>r'] and <p_a, D_j-dual> must be
/// mutually inverse.
fn check_extra_block_inverse(data: &ChargeData) -> Result<()> {
    let m = data.fan.num_rays();
    let k = data.fan.extra.len();
    for a in 0..k {
        for b in 0..k {
            let mut sum = BigRational::zero();
            for (jj, dual) in data.d_dual.iter().enumerate() {
                let q = &data.q_matrix[m + jj][data.r_prime + a];
                sum += BigRational::from_integer(q.clone()) * &dual.pairings[data.r_prime + b];
            }
            let expect = if a == b {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            if sum != expect {
                return Err(Error::IdentityFailure(format!(
                    "extra blocks of Q and the dual pairings are not inverse at ({a},{b})"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::{big, rat, rat_int};

    pub fn c2zm(m: i64) -> StackyFan {
        StackyFan {
            rank: 2,
            rays: vec![vec![big(0), big(1)], vec![big(m), big(1)]],
            max_cones: vec![vec![0, 1]],
            extra: (1..m).map(|k| vec![big(k), big(1)]).collect(),
            cy_covector: vec![big(0), big(1)],
        }
    }

    pub fn kp2() -> StackyFan {
        StackyFan {
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
        }
    }

    pub fn kf2() -> StackyFan {
        StackyFan {
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
        }
    }

    pub fn c3z3() -> StackyFan {
        StackyFan {
            rank: 3,
            rays: vec![
                vec![big(1), big(0), big(1)],
                vec![big(0), big(1), big(1)],
                vec![big(-1), big(-1), big(1)],
            ],
            max_cones: vec![vec![0, 1, 2]],
            extra: vec![vec![big(0), big(0), big(1)]],
            cy_covector: vec![big(0), big(0), big(1)],
        }
    }

    #[test]
    fn c2z2_charges() {
        let data = build_charges(&c2zm(2), None).unwrap();
        assert_eq!(data.r, 1);
        assert_eq!(data.r_prime, 0);
        // D_0 = D_1, D_2 = -2 D_0 in L-dual; the nef generator is -D_0-dual,
        // so the Q column is (-1, -1, 2).
        let col: Vec<BigInt> = data.q_matrix.iter().map(|row| row[0].clone()).collect();
        assert_eq!(col, vec![big(-1), big(-1), big(2)]);
        assert_eq!(data.d_dual[0].pairings, vec![rat(1, 2)]);
        assert_eq!(data.ell, big(2));
        let pair = data.pair_all_divisors(&data.coset_reps[0]);
        assert_eq!(pair, vec![rat(-1, 2), rat(-1, 2), rat_int(1)]);
        assert_eq!(data.reduction(&data.coset_reps[0]), vec![big(1), big(1)]);
    }

    #[test]
    fn kp2_charges() {
        let data = build_charges(&kp2(), None).unwrap();
        assert_eq!(data.r, 1);
        assert_eq!(data.r_prime, 1);
        let col: Vec<BigInt> = data.q_matrix.iter().map(|row| row[0].clone()).collect();
        assert_eq!(col, vec![big(-3), big(1), big(1), big(1)]);
        assert_eq!(data.ell, big(1));
        let line = ExponentVector::new(vec![rat_int(1)]);
        assert!(data.degree(&line).is_positive());
        assert!(data.is_effective(&line));
        let negline = ExponentVector::new(vec![rat_int(-1)]);
        assert!(!data.is_effective(&negline));
    }

    #[test]
    fn kf2_charges_auto_basis() {
        let data = build_charges(&kf2(), None).unwrap();
        assert_eq!((data.r, data.r_prime), (2, 2));
        // The dual basis classes are {e, f} in some order; identify them by
        // their intersection pattern and check the full table.
        let g1 = ExponentVector::new(vec![rat_int(1), rat_int(0)]);
        let g2 = ExponentVector::new(vec![rat_int(0), rat_int(1)]);
        let (e, f) = if data.pair_divisor(2, &g1).is_negative() {
            (g1, g2)
        } else {
            (g2, g1)
        };
        assert_eq!(data.pair_all_divisors(&e), vec![
            rat_int(0), rat_int(1), rat_int(-2), rat_int(1), rat_int(0)
        ]);
        assert_eq!(data.pair_all_divisors(&f), vec![
            rat_int(-2), rat_int(0), rat_int(1), rat_int(0), rat_int(1)
        ]);
        assert!(data.is_effective(&e) && data.is_effective(&f));
    }

    #[test]
    fn kf2_paper_presentation_basis_rejected() {
        // p_1 = D_0, p_2 = D_2 is the presentation basis of the worked
        // example; it has index 4 in L-dual and D_0 is not nef, so the
        // basis contract rejects it.
        let fan = kf2();
        let mut d0 = vec![big(0); 5];
        d0[0] = big(1);
        let mut d2 = vec![big(0); 5];
        d2[2] = big(1);
        let hint = basis_hint_from_divisors(&fan, &[d0, d2]).unwrap();
        let err = build_charges(&fan, Some(hint)).unwrap_err();
        assert!(matches!(err, Error::BasisRejected(_)), "{err}");
    }

    #[test]
    fn kf2_nef_divisor_hint_accepted() {
        let fan = kf2();
        let mut d1 = vec![big(0); 5];
        d1[1] = big(1);
        let mut d4 = vec![big(0); 5];
        d4[4] = big(1);
        let hint = basis_hint_from_divisors(&fan, &[d1, d4]).unwrap();
        let data = build_charges(&fan, Some(hint)).unwrap();
        let e = ExponentVector::new(vec![rat_int(1), rat_int(0)]);
        assert_eq!(data.pair_divisor(2, &e), rat_int(-2));
    }

    #[test]
    fn c3z3_charges() {
        let data = build_charges(&c3z3(), None).unwrap();
        assert_eq!((data.r, data.r_prime), (1, 0));
        assert_eq!(data.d_dual[0].pairings, vec![rat(1, 3)]);
        assert_eq!(data.ell, big(3));
        let pair = data.pair_all_divisors(&data.coset_reps[0]);
        assert_eq!(pair, vec![rat(-1, 3), rat(-1, 3), rat(-1, 3), rat_int(1)]);
    }

    #[test]
    fn c2z3_dual_class_table() {
        let data = build_charges(&c2zm(3), None).unwrap();
        // extra (1,1): barycentric (2/3, 1/3) in cone {(0,1),(3,1)}, so the
        // defining pairing table is basis independent
        let d = &data.d_dual[0];
        assert_eq!(
            data.pair_all_divisors(d),
            vec![rat(-2, 3), rat(-1, 3), rat_int(1), rat_int(0)]
        );
        let d2 = &data.d_dual[1];
        assert_eq!(
            data.pair_all_divisors(d2),
            vec![rat(-1, 3), rat(-2, 3), rat_int(0), rat_int(1)]
        );
        // the coset representative depends on the basis, but it reduces to
        // the Box vector and its pairings with the basis lie in [0,1)
        for (j, rep) in data.coset_reps.iter().enumerate() {
            assert_eq!(&data.reduction(rep), data.fan.vector(2 + j));
            assert!(rep
                .pairings
                .iter()
                .all(|x| !x.is_negative() && x < &rat_int(1)));
        }
    }

    #[test]
    fn coset_invariance_of_reduction() {
        let data = build_charges(&c2zm(3), None).unwrap();
        for (j, rep) in data.coset_reps.iter().enumerate() {
            let nu = data.reduction(rep);
            for lam in data.lattice_generators() {
                let shifted = rep.add(&lam);
                assert_eq!(data.reduction(&shifted), nu, "extra {j}");
            }
        }
    }

    #[test]
    fn grading_certificates_are_positive() {
        for fan in [c2zm(2), c2zm(3), kp2(), kf2(), c3z3()] {
            let data = build_charges(&fan, None).unwrap();
            for (anticone, coeffs) in &data.grading_certificates {
                assert!(coeffs.iter().all(|c| c.is_positive()), "{anticone:?}");
                let mut sum = vec![BigRational::zero(); data.r];
                for (&i, c) in anticone.iter().zip(coeffs) {
                    for (b, item) in sum.iter_mut().enumerate() {
                        *item += c * BigRational::from_integer(data.q_matrix[i][b].clone());
                    }
                }
                assert_eq!(sum, data.grading);
            }
            for d in &data.d_dual {
                assert!(data.degree(d).is_positive());
            }
        }
    }

    #[test]
    fn c2z5_rank_four_basis_search() {
        let data = build_charges(&c2zm(5), None).unwrap();
        assert_eq!(data.r, 4);
        assert_eq!(data.ell, big(5));
    }
}
