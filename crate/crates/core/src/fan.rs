//! Stacky fans of toric Calabi-Yau orbifolds: validation, Box elements,
//! anticones and extra-vector selection.
//!
//! A fan here is a simplicial fan over a triangulation of the lattice
//! polytope cut out by the CY covector, together with age-one Box elements
//! as extra vectors.

use crate::cone::{affine_hull, combinations, parallelepiped_points, AffineHull};
use crate::error::{Error, Result};
use crate::lattice::{content, solve_rational_int, IntMatrix};
use crate::lp::{maximize, Cmp, Constraint, LpOutcome};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Combinatorial source of truth for a toric CY orbifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyFan {
    /// Lattice rank n.
    pub rank: usize,
    /// Primitive ray generators b_0 .. b_{m-1}.
    pub rays: Vec<Vec<BigInt>>,
    /// Maximal cones as index sets of size n into `rays`.
    pub max_cones: Vec<Vec<usize>>,
    /// Extra vectors b_m .. b_{m'-1} (age-one Box elements).
    pub extra: Vec<Vec<BigInt>>,
    /// CY covector pairing to 1 with every ray and extra vector.
    pub cy_covector: Vec<BigInt>,
}

/// A nonzero Box element: lattice point in the fundamental domain of its
/// minimal cone, with exact barycentric coordinates and age.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxElement {
    pub vector: Vec<BigInt>,
    /// Ray indices of the minimal cone containing the element.
    pub cone: Vec<usize>,
    /// Barycentric coordinates c_i in [0,1), indexed parallel to `cone`.
    pub coords: Vec<BigRational>,
    pub age: BigRational,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

impl StackyFan {
    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    /// Total number of stacky vectors m' = m + #extra.
    pub fn num_vectors(&self) -> usize {
        self.rays.len() + self.extra.len()
    }

    /// Ray or extra vector by flat index 0..m'-1.
    pub fn vector(&self, i: usize) -> &Vec<BigInt> {
        if i < self.rays.len() {
            &self.rays[i]
        } else {
            &self.extra[i - self.rays.len()]
        }
    }

    pub fn pair_cy(&self, v: &[BigInt]) -> BigInt {
        self.cy_covector.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// Solve for the CY covector from the rays (unique when the rays span).
    pub fn solve_cy_covector(rank: usize, rays: &[Vec<BigInt>]) -> Result<Vec<BigInt>> {
        let m = IntMatrix::from_rows(rays.to_vec());
        let b = vec![BigRational::one(); rays.len()];
        let x = solve_rational_int(&m, &b)?
            .ok_or_else(|| Error::NoCyCovector("pairing system is inconsistent".into()))?;
        if x.len() != rank {
            return Err(Error::NoCyCovector("wrong arity".into()));
        }
        if m.rank() < rank {
            return Err(Error::NoCyCovector(
                "rays do not span the lattice over Q; covector not unique".into(),
            ));
        }
        if !x.iter().all(crate::util::is_integer) {
            return Err(Error::NoCyCovector(format!(
                "solution {:?} is not integral",
                x.iter().map(crate::util::rat_string).collect::<Vec<_>>()
            )));
        }
        Ok(x.iter().map(|v| v.to_integer()).collect())
    }

    /// Hull of the height-one slice polytope P = conv(rays).
    pub fn slice_polytope(&self) -> Result<AffineHull> {
        affine_hull(&self.rays)
    }

    /// All cones of the fan as sorted index sets (faces of maximal cones,
    /// including the zero cone as the empty set).
    pub fn all_cones(&self) -> Vec<Vec<usize>> {
        let mut cones: BTreeSet<Vec<usize>> = BTreeSet::new();
        cones.insert(vec![]);
        for c in &self.max_cones {
            let sorted: Vec<usize> = {
                let mut s = c.clone();
                s.sort_unstable();
                s
            };
            for k in 1..=sorted.len() {
                for sub in combinations(&sorted, k) {
                    cones.insert(sub);
                }
            }
        }
        cones.into_iter().collect()
    }

    /// Anticones: subsets of {0..m'-1} whose complement generates a cone.
    /// Every anticone contains all extra indices.
    pub fn anticones(&self) -> Vec<Vec<usize>> {
        let total = self.num_vectors();
        let all: BTreeSet<usize> = (0..total).collect();
        let mut out: Vec<Vec<usize>> = self
            .all_cones()
            .iter()
            .map(|cone| {
                let cone_set: BTreeSet<usize> = cone.iter().cloned().collect();
                all.difference(&cone_set).cloned().collect()
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Barycentric coordinates of `v` in the cone with the given ray indices,
    /// if `v` lies in that cone (all coordinates nonnegative).
    pub fn barycentric_in_cone(
        &self,
        cone: &[usize],
        v: &[BigInt],
    ) -> Result<Option<Vec<BigRational>>> {
        let cols: Vec<Vec<BigInt>> = cone.iter().map(|&i| self.rays[i].clone()).collect();
        let m = IntMatrix::from_columns(&cols);
        let b: Vec<BigRational> = v
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        match solve_rational_int(&m, &b)? {
            None => Ok(None),
            Some(c) => {
                // verify exactly (solver zero-fills free variables)
                let mv = crate::lattice::RatMatrix::from_int(&m).mul_vec(&c);
                if mv != b || c.iter().any(Signed::is_negative) {
                    Ok(None)
                } else {
                    Ok(Some(c))
                }
            }
        }
    }

    /// Full validation per the CY-orbifold setting. Returns a report with
    /// one entry per condition; `Err` only on malformed input that prevents
    /// checking at all.
    pub fn validate(&self) -> Result<ValidationReport> {
        let mut checks = Vec::new();
        let n = self.rank;
        if n == 0 || n > 6 {
            return Err(Error::DimensionCap(format!("rank {n} outside 1..=6")));
        }
        if self.rays.iter().any(|r| r.len() != n)
            || self.extra.iter().any(|r| r.len() != n)
            || self.cy_covector.len() != n
        {
            return Err(Error::InvalidInput("vector arity != rank".into()));
        }
        if self.rays.is_empty() || self.max_cones.is_empty() {
            return Err(Error::InvalidInput("no rays or no maximal cones".into()));
        }

        // primitivity
        for (i, r) in self.rays.iter().enumerate() {
            let g = content(r);
            checks.push(CheckResult {
                name: format!("ray {i} primitive"),
                ok: g.is_one(),
                detail: if g.is_one() {
                    String::new()
                } else {
                    format!("gcd of entries is {g}")
                },
            });
        }

        // CY covector pairs to 1 with every stacky vector
        for i in 0..self.num_vectors() {
            let p = self.pair_cy(self.vector(i));
            checks.push(CheckResult {
                name: format!("cy pairing with vector {i}"),
                ok: p.is_one(),
                detail: if p.is_one() {
                    String::new()
                } else {
                    format!("pairing is {p}, expected 1")
                },
            });
        }

        // simplicial maximal cones of full dimension
        for (ci, cone) in self.max_cones.iter().enumerate() {
            let ok_size = cone.len() == n && cone.iter().all(|&i| i < self.rays.len());
            let mut ok_indep = false;
            if ok_size {
                let m = IntMatrix::from_columns(
                    &cone.iter().map(|&i| self.rays[i].clone()).collect::<Vec<_>>(),
                );
                ok_indep = !m.determinant().is_zero();
            }
            checks.push(CheckResult {
                name: format!("cone {ci} simplicial"),
                ok: ok_size && ok_indep,
                detail: if ok_size && ok_indep {
                    String::new()
                } else {
                    "generators not independent or wrong cone size".into()
                },
            });
        }
        if !checks.iter().all(|c| c.ok) {
            return Ok(ValidationReport { checks });
        }

        // every ray used by some maximal cone
        for i in 0..self.rays.len() {
            let used = self.max_cones.iter().any(|c| c.contains(&i));
            checks.push(CheckResult {
                name: format!("ray {i} used"),
                ok: used,
                detail: if used {
                    String::new()
                } else {
                    "ray belongs to no maximal cone".into()
                },
            });
        }

        // support: the slice polytope must be (n-1)-dimensional
        let hull = self.slice_polytope()?;
        checks.push(CheckResult {
            name: "support full-dimensional".into(),
            ok: hull.dim == n - 1,
            detail: format!("slice polytope has dimension {}", hull.dim),
        });
        if hull.dim != n - 1 {
            return Ok(ValidationReport { checks });
        }

        // pairwise proper intersections of maximal simplices in the slice
        for a in 0..self.max_cones.len() {
            for b in a + 1..self.max_cones.len() {
                let ok = self.simplices_intersect_properly(&self.max_cones[a], &self.max_cones[b])?;
                checks.push(CheckResult {
                    name: format!("cones {a},{b} intersect in a face"),
                    ok,
                    detail: if ok {
                        String::new()
                    } else {
                        return Ok(ValidationReport {
                            checks: push_failure(checks, a, b),
                        });
                    },
                });
            }
        }

        // facet matching: every interior facet shared by exactly two
        // simplices, boundary facets by exactly one
        let facet_check = self.facet_matching(&hull);
        checks.push(CheckResult {
            name: "triangulation covers the polytope".into(),
            ok: facet_check.is_ok(),
            detail: facet_check.err().unwrap_or_default(),
        });

        // extras: age one, inside some maximal cone, not a ray
        for (k, e) in self.extra.iter().enumerate() {
            let mut ok = false;
            let mut detail = "not contained in any maximal cone".to_string();
            if self.rays.contains(e) {
                detail = "coincides with a ray".into();
            } else {
                for cone in &self.max_cones {
                    if let Some(c) = self.barycentric_in_cone(cone, e)? {
                        let age: BigRational = c.iter().cloned().sum();
                        if age.is_one() && c.iter().all(|x| x < &BigRational::one()) {
                            ok = true;
                            detail = String::new();
                        } else {
                            detail = format!("age {} != 1", crate::util::rat_string(&age));
                        }
                        break;
                    }
                }
            }
            checks.push(CheckResult {
                name: format!("extra vector {k} is an age-one Box element"),
                ok,
                detail,
            });
        }

        // rays + extras generate N over Z
        let all_vectors: Vec<Vec<BigInt>> = (0..self.num_vectors())
            .map(|i| self.vector(i).clone())
            .collect();
        let gen_matrix = IntMatrix::from_columns(&all_vectors);
        let snf = crate::lattice::smith_normal_form(&gen_matrix);
        let generates = snf.rank == n && (0..n).all(|i| snf.d[(i, i)].is_one());
        checks.push(CheckResult {
            name: "stacky vectors generate the lattice".into(),
            ok: generates,
            detail: if generates {
                String::new()
            } else {
                "invariant factors differ from 1".into()
            },
        });

        Ok(ValidationReport { checks })
    }

    /// conv(A) and conv(B) must meet exactly in conv(A cap B): for each
    /// vertex v of A outside B, maximize its barycentric weight over the
    /// intersection; a positive maximum is a violation.
    fn simplices_intersect_properly(&self, a: &[usize], b: &[usize]) -> Result<bool> {
        let avs: Vec<&Vec<BigInt>> = a.iter().map(|&i| &self.rays[i]).collect();
        let bvs: Vec<&Vec<BigInt>> = b.iter().map(|&i| &self.rays[i]).collect();
        let n = self.rank;
        let na = avs.len();
        let nb = bvs.len();
        // variables: lambda (na), mu (nb); constraints: sum l v - sum m w = 0,
        // sum l = 1, sum m = 1.
        let mut constraints = Vec::new();
        for row in 0..n {
            let mut coeffs = Vec::with_capacity(na + nb);
            for v in &avs {
                coeffs.push(BigRational::from_integer(v[row].clone()));
            }
            for w in &bvs {
                coeffs.push(BigRational::from_integer(-w[row].clone()));
            }
            constraints.push(Constraint {
                coeffs,
                cmp: Cmp::Eq,
                rhs: BigRational::zero(),
            });
        }
        let mut sum_l = vec![BigRational::zero(); na + nb];
        for x in sum_l.iter_mut().take(na) {
            *x = BigRational::one();
        }
        constraints.push(Constraint {
            coeffs: sum_l,
            cmp: Cmp::Eq,
            rhs: BigRational::one(),
        });
        let mut sum_m = vec![BigRational::zero(); na + nb];
        for x in sum_m.iter_mut().skip(na) {
            *x = BigRational::one();
        }
        constraints.push(Constraint {
            coeffs: sum_m,
            cmp: Cmp::Eq,
            rhs: BigRational::one(),
        });

        for (k, &ai) in a.iter().enumerate() {
            if b.contains(&ai) {
                continue;
            }
            let mut obj = vec![BigRational::zero(); na + nb];
            obj[k] = BigRational::one();
            match maximize(&obj, &constraints)? {
                LpOutcome::Optimal { objective, .. } => {
                    if objective.is_positive() {
                        return Ok(false);
                    }
                }
                LpOutcome::Infeasible => return Ok(true), // disjoint simplices
                LpOutcome::Unbounded => {
                    return Err(Error::LinearProgram(
                        "bounded polytope LP reported unbounded".into(),
                    ))
                }
            }
        }
        Ok(true)
    }

    /// Each (n-2)-face of the slice triangulation lies on the polytope
    /// boundary (then it must belong to exactly one maximal simplex) or is
    /// interior (exactly two).
    fn facet_matching(&self, hull: &AffineHull) -> std::result::Result<(), String> {
        let n = self.rank;
        let mut facet_count: std::collections::BTreeMap<Vec<usize>, usize> = Default::default();
        for cone in &self.max_cones {
            let sorted: Vec<usize> = {
                let mut s = cone.clone();
                s.sort_unstable();
                s
            };
            for drop in &sorted {
                let facet: Vec<usize> = sorted.iter().filter(|&&i| i != *drop).cloned().collect();
                *facet_count.entry(facet).or_insert(0) += 1;
            }
        }
        for (facet, count) in facet_count {
            if n == 1 {
                continue;
            }
            let on_boundary = hull.facets.iter().any(|(c, d)| {
                facet.iter().all(|&i| {
                    let v: BigRational = c
                        .iter()
                        .zip(&self.rays[i])
                        .map(|(ci, xi)| ci * BigRational::from_integer(xi.clone()))
                        .sum();
                    v == *d
                })
            });
            let expected = if on_boundary { 1 } else { 2 };
            if count != expected {
                return Err(format!(
                    "facet {facet:?} belongs to {count} maximal cones, expected {expected}"
                ));
            }
        }
        Ok(())
    }

    /// All nonzero Box elements of the fan, deduplicated across cones, in
    /// lexicographic vector order.
    pub fn compute_box(&self) -> Result<Vec<BoxElement>> {
        let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        let mut out: Vec<BoxElement> = Vec::new();
        for cone in &self.max_cones {
            let gens: Vec<Vec<BigInt>> = cone.iter().map(|&i| self.rays[i].clone()).collect();
            for point in parallelepiped_points(&gens)? {
                if point.iter().all(|x| x.is_zero()) {
                    continue;
                }
                if seen.contains(&point) {
                    continue;
                }
                let coords = self
                    .barycentric_in_cone(cone, &point)?
                    .ok_or_else(|| Error::InvalidInput("Box point outside its cone".into()))?;
                let support: Vec<usize> = cone
                    .iter()
                    .zip(&coords)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(&i, _)| i)
                    .collect();
                let support_coords: Vec<BigRational> =
                    coords.iter().filter(|c| !c.is_zero()).cloned().collect();
                let age: BigRational = support_coords.iter().cloned().sum();
                seen.insert(point.clone());
                out.push(BoxElement {
                    vector: point,
                    cone: support,
                    coords: support_coords,
                    age,
                });
            }
        }
        out.sort_by(|a, b| a.vector.cmp(&b.vector));
        Ok(out)
    }

    /// Populate `extra` with all age-one Box elements (lexicographic), and
    /// assert that the slice-polytope lattice points are exactly rays plus
    /// extras.
    pub fn select_extra_vectors(mut self) -> Result<StackyFan> {
        let boxes = self.compute_box()?;
        self.extra = boxes
            .iter()
            .filter(|b| b.age.is_one())
            .map(|b| b.vector.clone())
            .collect();
        let hull = self.slice_polytope()?;
        let lattice = hull.lattice_points(&self.rays);
        let mut expect: BTreeSet<Vec<BigInt>> = self.rays.iter().cloned().collect();
        expect.extend(self.extra.iter().cloned());
        let got: BTreeSet<Vec<BigInt>> = lattice.into_iter().collect();
        if expect != got {
            return Err(Error::InvalidInput(format!(
                "P cap N has {} points but rays+extras give {}",
                got.len(),
                expect.len()
            )));
        }
        Ok(self)
    }
}

fn push_failure(mut checks: Vec<CheckResult>, a: usize, b: usize) -> Vec<CheckResult> {
    checks.push(CheckResult {
        name: format!("cones {a},{b} intersect in a face"),
        ok: false,
        detail: "improper intersection".into(),
    });
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::{big, rat};

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
    fn c2zm_validates() {
        for m in [2, 3, 5] {
            let fan = c2zm(m);
            let report = fan.validate().unwrap();
            assert!(report.valid(), "m={m}: {:#?}", report.checks);
        }
    }

    #[test]
    fn wrong_cy_covector_fails_pairing() {
        let mut fan = c2zm(2);
        fan.cy_covector = vec![big(1), big(0)];
        let report = fan.validate().unwrap();
        assert!(!report.valid());
        let failed: Vec<&CheckResult> = report.checks.iter().filter(|c| !c.ok).collect();
        assert!(failed.iter().all(|c| c.name.contains("cy pairing")));
    }

    #[test]
    fn kf2_validates() {
        let report = kf2().validate().unwrap();
        assert!(report.valid(), "{:#?}", report.checks);
    }

    #[test]
    fn kp2_validates_and_has_no_box() {
        let fan = kp2();
        assert!(fan.validate().unwrap().valid());
        assert!(fan.compute_box().unwrap().is_empty());
    }

    #[test]
    fn non_primitive_ray_detected() {
        let mut fan = c2zm(2);
        fan.rays[1] = vec![big(4), big(2)];
        // keep cy pairing broken too; just check the primitivity line exists
        let report = fan.validate().unwrap();
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "ray 1 primitive" && !c.ok));
    }

    #[test]
    fn missing_cone_detected() {
        // two maximal cones needed to cover P; give only one
        let fan = StackyFan {
            rank: 2,
            rays: vec![
                vec![big(0), big(1)],
                vec![big(1), big(1)],
                vec![big(2), big(1)],
            ],
            max_cones: vec![vec![0, 1]],
            extra: vec![],
            cy_covector: vec![big(0), big(1)],
        };
        let report = fan.validate().unwrap();
        assert!(!report.valid());
    }

    #[test]
    fn overlapping_cones_detected() {
        let fan = StackyFan {
            rank: 2,
            rays: vec![
                vec![big(0), big(1)],
                vec![big(1), big(1)],
                vec![big(2), big(1)],
            ],
            max_cones: vec![vec![0, 2], vec![0, 1], vec![1, 2]],
            extra: vec![],
            cy_covector: vec![big(0), big(1)],
        };
        let report = fan.validate().unwrap();
        assert!(!report.valid());
        assert!(report
            .checks
            .iter()
            .any(|c| c.name.contains("intersect in a face") && !c.ok));
    }

    #[test]
    fn box_of_c2zm() {
        let fan = c2zm(3);
        let boxes = fan.compute_box().unwrap();
        assert_eq!(boxes.len(), 2);
        for (k, b) in boxes.iter().enumerate() {
            assert_eq!(b.vector, vec![big(k as i64 + 1), big(1)]);
            assert!(b.age.is_one());
        }
        // parallelepiped count = |det|
        let gens = vec![fan.rays[0].clone(), fan.rays[1].clone()];
        let count = parallelepiped_points(&gens).unwrap().len();
        assert_eq!(count, 3);
    }

    #[test]
    fn box_of_c3z3_is_barycenter() {
        let fan = c3z3();
        let boxes = fan.compute_box().unwrap();
        let age_one: Vec<&BoxElement> = boxes.iter().filter(|b| b.age.is_one()).collect();
        assert_eq!(age_one.len(), 1);
        assert_eq!(age_one[0].vector, vec![big(0), big(0), big(1)]);
        assert_eq!(
            age_one[0].coords,
            vec![rat(1, 3), rat(1, 3), rat(1, 3)]
        );
    }

    #[test]
    fn box_inverse_element_property() {
        // for age-one nu with all coords in (0,1), sum (1-c_i) b_i is Box too
        for fan in [c2zm(5), c3z3()] {
            let boxes = fan.compute_box().unwrap();
            for b in &boxes {
                if b.coords.iter().any(|c| c.is_zero()) {
                    continue;
                }
                let mut inv = vec![BigRational::zero(); fan.rank];
                for (&i, c) in b.cone.iter().zip(&b.coords) {
                    let w = BigRational::one() - c;
                    for (row, item) in inv.iter_mut().enumerate() {
                        *item += &w * BigRational::from_integer(fan.rays[i][row].clone());
                    }
                }
                if inv.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let inv_int: Vec<BigInt> = inv.iter().map(|x| x.to_integer()).collect();
                assert!(
                    boxes.iter().any(|o| o.vector == inv_int),
                    "inverse of {:?} missing",
                    b.vector
                );
            }
        }
    }

    #[test]
    fn anticones_c2z2() {
        let fan = c2zm(2);
        let anticones = fan.anticones();
        let expect: Vec<Vec<usize>> = vec![vec![2], vec![0, 2], vec![1, 2], vec![0, 1, 2]];
        let mut expect_sorted = expect;
        expect_sorted.sort();
        assert_eq!(anticones, expect_sorted);
    }

    #[test]
    fn anticones_kp2_count() {
        // 14 cones (1 zero + 4 rays + 6 two-dim + 3 maximal) -> 14 anticones
        let fan = kp2();
        assert_eq!(fan.all_cones().len(), 14);
        assert_eq!(fan.anticones().len(), 14);
    }

    #[test]
    fn select_extras_c2zm() {
        for m in [2, 3, 5] {
            let mut fan = c2zm(m);
            fan.extra.clear();
            let fan = fan.select_extra_vectors().unwrap();
            let expect: Vec<Vec<BigInt>> = (1..m).map(|k| vec![big(k), big(1)]).collect();
            assert_eq!(fan.extra, expect);
            // re-validation passes (idempotence)
            assert!(fan.validate().unwrap().valid());
        }
    }

    #[test]
    fn select_extras_kf2_empty() {
        let mut fan = kf2();
        fan.extra.clear();
        let fan = fan.select_extra_vectors().unwrap();
        assert!(fan.extra.is_empty());
    }

    #[test]
    fn select_extras_c3z5() {
        // [C^3/Z_5]: rays in the basis where N is standard; extras are the
        // images of (k,k,5-2k)/5 for k=1,2.
        let mut fan = StackyFan {
            rank: 3,
            rays: vec![
                vec![big(5), big(-1), big(-3)],
                vec![big(0), big(1), big(0)],
                vec![big(0), big(0), big(1)],
            ],
            max_cones: vec![vec![0, 1, 2]],
            extra: vec![],
            cy_covector: vec![big(1), big(1), big(1)],
        };
        fan = fan.select_extra_vectors().unwrap();
        assert_eq!(
            fan.extra,
            vec![vec![big(1), big(0), big(0)], vec![big(2), big(0), big(-1)]]
        );
        assert!(fan.validate().unwrap().valid());
    }
}
