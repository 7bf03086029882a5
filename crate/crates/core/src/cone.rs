//! Rational polyhedral cone algebra: double description, dual cones,
//! Hilbert bases, and brute-force facet hulls for small polytopes.
//!
//! Cones live in `Q^r` with `r` small (at most 6 here), so the incremental
//! double-description method with the zero-set adjacency test is entirely
//! adequate.

use crate::error::{Error, Result};
use crate::lattice::{clear_denominators, rational_kernel_basis, RatMatrix};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::BTreeSet;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_rat_int(a: &[BigRational], b: &[BigInt]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| x * BigRational::from_integer(y.clone()))
        .sum()
}

/// A cone in V-representation: lineality space plus extreme rays, all
/// primitive integer vectors.
#[derive(Clone, Debug)]
pub struct VCone {
    pub dim: usize,
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

/// Extreme rays and lineality of `{ x : a . x >= 0 for all a in ineqs }`.
///
/// Incremental double description over the inequality list.
pub fn dd_from_inequalities(dim: usize, ineqs: &[Vec<BigInt>]) -> Result<VCone> {
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::one();
            e
        })
        .collect();
    let mut rays: Vec<(Vec<BigInt>, BTreeSet<usize>)> = Vec::new(); // (ray, zero-set)
    let mut seen: Vec<Vec<BigInt>> = Vec::new();

    for (idx, a) in ineqs.iter().enumerate() {
        if a.len() != dim {
            return Err(Error::InvalidInput(format!(
                "inequality arity {} != dim {dim}",
                a.len()
            )));
        }
        // Split lineality against the new halfspace.
        let mut pos_lin: Option<Vec<BigInt>> = None;
        let mut new_lin = Vec::new();
        for l in lineality.drain(..) {
            let v = dot(a, &l);
            if v.is_zero() {
                new_lin.push(l);
            } else if let Some(w) = &pos_lin {
                // project l onto a-perp using w
                let vw = dot(a, w);
                let proj: Vec<BigRational> = l
                    .iter()
                    .zip(w)
                    .map(|(li, wi)| {
                        BigRational::from_integer(li.clone())
                            - BigRational::new(v.clone(), vw.clone())
                                * BigRational::from_integer(wi.clone())
                    })
                    .collect();
                let proj = clear_denominators(&proj);
                if proj.iter().any(|x| !x.is_zero()) {
                    new_lin.push(proj);
                }
            } else {
                let l = if v.is_negative() {
                    l.iter().map(|x| -x).collect()
                } else {
                    l
                };
                pos_lin = Some(l);
            }
        }
        lineality = new_lin;
        if let Some(w) = pos_lin {
            // Existing rays get projected to the hyperplane using w, and w
            // becomes a new ray on the positive side.
            let vw = dot(a, &w);
            let mut adjusted = Vec::new();
            for (r, _) in rays.drain(..) {
                let v = dot(a, &r);
                if v.is_zero() {
                    adjusted.push(r);
                } else {
                    let proj: Vec<BigRational> = r
                        .iter()
                        .zip(&w)
                        .map(|(ri, wi)| {
                            BigRational::from_integer(ri.clone())
                                - BigRational::new(v.clone(), vw.clone())
                                    * BigRational::from_integer(wi.clone())
                        })
                        .collect();
                    let proj = clear_denominators(&proj);
                    if proj.iter().any(|x| !x.is_zero()) {
                        adjusted.push(proj);
                    }
                }
            }
            adjusted.push(w);
            rays = adjusted
                .into_iter()
                .map(|r| {
                    let zero = zero_set(&r, ineqs, idx + 1);
                    (r, zero)
                })
                .collect();
            dedupe_rays(&mut rays);
            continue;
        }

        // Standard DD step: partition rays by sign.
        let signs: Vec<i8> = rays
            .iter()
            .map(|(r, _)| {
                let v = dot(a, r);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .collect();
        if signs.iter().all(|&s| s >= 0) {
            for ((_, z), &s) in rays.iter_mut().zip(&signs) {
                if s == 0 {
                    z.insert(idx);
                }
            }
            continue;
        }
        let mut next: Vec<(Vec<BigInt>, BTreeSet<usize>)> = Vec::new();
        for (i, (r, z)) in rays.iter().enumerate() {
            if signs[i] >= 0 {
                let mut z = z.clone();
                if signs[i] == 0 {
                    z.insert(idx);
                }
                next.push((r.clone(), z));
            }
        }
        for i in 0..rays.len() {
            for j in 0..rays.len() {
                if signs[i] != 1 || signs[j] != -1 {
                    continue;
                }
                if !adjacent(&rays, i, j, dim, lineality.len()) {
                    continue;
                }
                let (ri, zi) = &rays[i];
                let (rj, zj) = &rays[j];
                let vi = dot(a, ri);
                let vj = dot(a, rj);
                // combo = vi * rj - vj * ri lies on the hyperplane
                let combo: Vec<BigInt> = rj
                    .iter()
                    .zip(ri)
                    .map(|(x, y)| &vi * x - &vj * y)
                    .collect();
                let combo_rat: Vec<BigRational> = combo
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                let combo = clear_denominators(&combo_rat);
                if combo.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let mut z: BTreeSet<usize> = zi.intersection(zj).cloned().collect();
                z.insert(idx);
                next.push((combo, z));
            }
        }
        rays = next;
        dedupe_rays(&mut rays);
        seen.push(a.clone());
    }

    Ok(VCone {
        dim,
        lineality,
        rays: rays.into_iter().map(|(r, _)| r).collect(),
    })
}

fn zero_set(r: &[BigInt], ineqs: &[Vec<BigInt>], upto: usize) -> BTreeSet<usize> {
    (0..upto).filter(|&k| dot(&ineqs[k], r).is_zero()).collect()
}

fn dedupe_rays(rays: &mut Vec<(Vec<BigInt>, BTreeSet<usize>)>) {
    let mut out: Vec<(Vec<BigInt>, BTreeSet<usize>)> = Vec::new();
    for (r, z) in rays.drain(..) {
        if !out.iter().any(|(o, _)| o == &r) {
            out.push((r, z));
        }
    }
    *rays = out;
}

/// Combinatorial adjacency test: rays i, j are adjacent iff no third ray's
/// zero set contains the intersection of theirs (valid once enough
/// inequalities have accumulated; we also allow low-dimensional early exits).
fn adjacent(
    rays: &[(Vec<BigInt>, BTreeSet<usize>)],
    i: usize,
    j: usize,
    dim: usize,
    lin_dim: usize,
) -> bool {
    let meet: BTreeSet<usize> = rays[i].1.intersection(&rays[j].1).cloned().collect();
    if dim - lin_dim <= 2 {
        return true;
    }
    for (k, (_, z)) in rays.iter().enumerate() {
        if k != i && k != j && meet.is_subset(z) {
            return false;
        }
    }
    true
}

/// H-representation of `cone(generators)`: returns `(equalities, inequalities)`
/// such that the cone is `{ x : e . x = 0, a . x >= 0 }`.
pub fn h_from_generators(
    dim: usize,
    generators: &[Vec<BigInt>],
) -> Result<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)> {
    // Dual cone {y : g . y >= 0} in V-form; its rays are the inequalities,
    // its lineality gives equalities (both signs).
    let dual = dd_from_inequalities(dim, generators)?;
    Ok((dual.lineality, dual.rays))
}

/// Extreme rays (and lineality) of `cone(generators)` via double dualization.
pub fn extreme_rays(dim: usize, generators: &[Vec<BigInt>]) -> Result<VCone> {
    let (eqs, ineqs) = h_from_generators(dim, generators)?;
    let mut all = Vec::new();
    for e in &eqs {
        all.push(e.clone());
        all.push(e.iter().map(|x| -x).collect());
    }
    all.extend(ineqs.iter().cloned());
    dd_from_inequalities(dim, &all)
}

/// Membership of `x` in the closed cone `{e . x = 0, a . x >= 0}`.
pub fn h_contains(eqs: &[Vec<BigInt>], ineqs: &[Vec<BigInt>], x: &[BigRational]) -> bool {
    eqs.iter().all(|e| dot_rat_int(x, e).is_zero())
        && ineqs.iter().all(|a| !dot_rat_int(x, a).is_negative())
}

/// Hilbert basis of a pointed cone given by its extreme rays.
///
/// Candidates are the primitive rays together with the lattice points of the
/// fundamental parallelepipeds of a star triangulation; reducible candidates
/// (expressible as a sum of two nonzero cone lattice points) are filtered out.
pub fn hilbert_basis(dim: usize, rays: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    if rays.is_empty() {
        return Ok(Vec::new());
    }
    let (eqs, ineqs) = h_from_generators(dim, rays)?;
    let mut candidates: BTreeSet<Vec<BigInt>> = rays.iter().cloned().collect();
    for simplex in triangulate(dim, rays)? {
        let gens: Vec<Vec<BigInt>> = simplex.iter().map(|&i| rays[i].clone()).collect();
        for p in parallelepiped_points(&gens)? {
            if p.iter().any(|x| !x.is_zero()) {
                candidates.insert(p);
            }
        }
    }
    let is_member = |v: &[BigInt]| {
        let x: Vec<BigRational> = v
            .iter()
            .map(|t| BigRational::from_integer(t.clone()))
            .collect();
        h_contains(&eqs, &ineqs, &x)
    };
    let cand_vec: Vec<Vec<BigInt>> = candidates.iter().cloned().collect();
    let mut basis = Vec::new();
    'outer: for h in &cand_vec {
        for s in &cand_vec {
            if s == h {
                continue;
            }
            let diff: Vec<BigInt> = h.iter().zip(s).map(|(a, b)| a - b).collect();
            if diff.iter().all(|x| x.is_zero()) {
                continue;
            }
            if is_member(&diff) {
                continue 'outer; // h = s + diff, both nonzero members
            }
        }
        basis.push(h.clone());
    }
    Ok(basis)
}

/// Star triangulation of a pointed cone into simplicial subcones, returned as
/// index sets into `rays`. Greedy/recursive over the facet structure.
fn triangulate(dim: usize, rays: &[Vec<BigInt>]) -> Result<Vec<Vec<usize>>> {
    let rank = RatMatrix::from_rows(
        rays.iter()
            .map(|r| {
                r.iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect()
            })
            .collect(),
    )
    .rank();
    if rays.len() == rank {
        return Ok(vec![(0..rays.len()).collect()]);
    }
    // Star from ray 0 over facets not containing it.
    let (_, ineqs) = h_from_generators(dim, rays)?;
    let apex = 0usize;
    let mut simplices = Vec::new();
    for a in &ineqs {
        if dot(a, &rays[apex]).is_zero() {
            continue;
        }
        let facet: Vec<usize> = (0..rays.len())
            .filter(|&i| dot(a, &rays[i]).is_zero())
            .collect();
        if facet.is_empty() {
            continue;
        }
        let facet_rays: Vec<Vec<BigInt>> = facet.iter().map(|&i| rays[i].clone()).collect();
        for sub in triangulate(dim, &facet_rays)? {
            let mut s: Vec<usize> = sub.iter().map(|&k| facet[k]).collect();
            s.push(apex);
            s.sort_unstable();
            simplices.push(s);
        }
    }
    simplices.sort();
    simplices.dedup();
    Ok(simplices)
}

/// Lattice points of `{ sum t_i g_i : t_i in [0,1) }` for independent
/// generators `g_i` (may span a sublattice of lower dimension than the
/// ambient space). Enumeration runs over the finite group Z^k / D Z^k given
/// by the Smith form of the generator matrix.
pub fn parallelepiped_points(generators: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    use crate::lattice::{smith_normal_form, IntMatrix};
    if generators.is_empty() {
        return Ok(vec![]);
    }
    let dim = generators[0].len();
    let k = generators.len();
    let g = IntMatrix::from_columns(generators);
    let snf = smith_normal_form(&g);
    if snf.rank < k {
        return Err(Error::InvalidInput(
            "parallelepiped generators are dependent".into(),
        ));
    }
    // Solve g t = p over Q for candidate p; enumerate residues via u^{-1}.
    // Candidates: x = u_inv * (a_1, ..., a_rank, 0...) with 0 <= a_i < d_i;
    // these hit every residue class of the target lattice inside span(g).
    let u_inv = invert_unimodular(&snf.u);
    let diag: Vec<BigInt> = (0..snf.rank).map(|i| snf.d[(i, i)].clone()).collect();
    let mut tuples = vec![vec![]];
    for d in &diag {
        let mut next = Vec::new();
        let mut a = BigInt::zero();
        while &a < d {
            for t in &tuples {
                let mut t = t.clone();
                t.push(a.clone());
                next.push(t);
            }
            a += 1;
        }
        tuples = next;
    }
    let g_rat = RatMatrix::from_int(&g);
    let mut points = Vec::new();
    for t in tuples {
        let mut rhs = vec![BigInt::zero(); dim];
        for (i, a) in t.iter().enumerate() {
            for row in 0..dim {
                rhs[row] += a * &u_inv[(row, i)];
            }
        }
        let rhs_rat: Vec<BigRational> = rhs
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        let Some(coords) = crate::lattice::solve_rational(&g_rat, &rhs_rat)? else {
            continue; // residue class not in span(g)
        };
        // reduce coordinates into [0,1)
        let reduced: Vec<BigRational> = coords.iter().map(crate::util::frac).collect();
        let mut point = vec![BigRational::zero(); dim];
        for (i, c) in reduced.iter().enumerate() {
            for row in 0..dim {
                point[row] += c * BigRational::from_integer(generators[i][row].clone());
            }
        }
        if point.iter().all(crate::util::is_integer) {
            points.push(point.iter().map(|x| x.to_integer()).collect());
        }
    }
    points.sort();
    points.dedup();
    Ok(points)
}

fn invert_unimodular(u: &crate::lattice::IntMatrix) -> crate::lattice::IntMatrix {
    use crate::lattice::IntMatrix;
    let n = u.rows;
    let rat = RatMatrix::from_int(u);
    let mut inv = IntMatrix::zero(n, n);
    for j in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[j] = BigRational::one();
        let col = crate::lattice::solve_rational(&rat, &e)
            .expect("square solve")
            .expect("unimodular matrix is invertible");
        for i in 0..n {
            debug_assert!(col[i].denom().is_one());
            inv[(i, j)] = col[i].to_integer();
        }
    }
    inv
}

/// Facets of the convex hull of `points` inside the affine hyperplane they
/// span, as pairs `(normal, offset)` with `normal . x >= offset` for all
/// points. Brute force over point subsets; fine for the handful of lattice
/// points a desk-scale fan carries.
pub struct AffineHull {
    /// Equations `c . x = d` cutting out the affine span.
    pub span_eqs: Vec<(Vec<BigRational>, BigRational)>,
    /// Facet inequalities `c . x >= d` (within the affine span).
    pub facets: Vec<(Vec<BigRational>, BigRational)>,
    pub dim: usize,
}

pub fn affine_hull(points: &[Vec<BigInt>]) -> Result<AffineHull> {
    let n = points.first().map(Vec::len).ok_or_else(|| {
        Error::InvalidInput("affine hull of empty point set".into())
    })?;
    if n > 6 {
        return Err(Error::DimensionCap(format!(
            "affine hull in ambient dimension {n} > 6 not supported"
        )));
    }
    // Affine span: solve for all (c, d) with c . p = d for all p.
    let rows: Vec<Vec<BigRational>> = points
        .iter()
        .map(|p| {
            let mut row: Vec<BigRational> = p
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            row.push(-BigRational::one());
            row
        })
        .collect();
    let mat = RatMatrix::from_rows(rows);
    let span_kernel = rational_kernel_basis(&mat);
    let span_eqs: Vec<(Vec<BigRational>, BigRational)> = span_kernel
        .iter()
        .map(|v| {
            let c: Vec<BigRational> = v[..n]
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            let d = BigRational::from_integer(v[n].clone());
            (c, d)
        })
        .collect();
    let dim = n - span_eqs.len();

    // Facets: hyperplanes through dim affinely independent points with all
    // points on one side and not containing the whole span.
    let mut facets: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    if dim == 0 {
        return Ok(AffineHull {
            span_eqs,
            facets,
            dim,
        });
    }
    let idx: Vec<usize> = (0..points.len()).collect();
    for subset in combinations(&idx, dim) {
        // hyperplanes containing subset: kernel of [p | -1] rows + span eqs
        let mut rows: Vec<Vec<BigRational>> = subset
            .iter()
            .map(|&i| {
                let mut row: Vec<BigRational> = points[i]
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                row.push(-BigRational::one());
                row
            })
            .collect();
        // force orthogonality to the span normals (as vectors in R^{n+1}) so
        // the pencil through the affine span is quotiented out
        for (c, d) in &span_eqs {
            let mut row = c.clone();
            row.push(d.clone());
            rows.push(row);
        }
        let mat = RatMatrix::from_rows(rows);
        let kernel = rational_kernel_basis(&mat);
        // facet hyperplane must be unique modulo the span equations
        if kernel.len() != 1 {
            continue;
        }
        let v = &kernel[0];
        let mut c: Vec<BigRational> = v[..n]
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        let mut d = BigRational::from_integer(v[n].clone());
        let mut pos = false;
        let mut neg = false;
        for p in points {
            let val = c
                .iter()
                .zip(p)
                .map(|(ci, pi)| ci * BigRational::from_integer(pi.clone()))
                .fold(BigRational::zero(), |a, t| a + t)
                - &d;
            if val.is_positive() {
                pos = true;
            }
            if val.is_negative() {
                neg = true;
            }
        }
        if pos && neg {
            continue; // not supporting
        }
        if neg {
            c = c.iter().map(|x| -x).collect();
            d = -d;
        }
        if !facets.iter().any(|(fc, fd)| fc == &c && fd == &d) {
            facets.push((c, d));
        }
    }
    Ok(AffineHull {
        span_eqs,
        facets,
        dim,
    })
}

impl AffineHull {
    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.span_eqs.iter().all(|(c, d)| {
            c.iter()
                .zip(x)
                .map(|(ci, xi)| ci * xi)
                .fold(BigRational::zero(), |a, t| a + t)
                == *d
        }) && self.facets.iter().all(|(c, d)| {
            c.iter()
                .zip(x)
                .map(|(ci, xi)| ci * xi)
                .fold(BigRational::zero(), |a, t| a + t)
                >= *d
        })
    }

    /// Points on the boundary: at least one facet inequality tight.
    pub fn on_boundary(&self, x: &[BigRational]) -> bool {
        self.contains(x)
            && self.facets.iter().any(|(c, d)| {
                c.iter()
                    .zip(x)
                    .map(|(ci, xi)| ci * xi)
                    .fold(BigRational::zero(), |a, t| a + t)
                    == *d
            })
    }

    /// All lattice points of the hull, by scanning the bounding box of the
    /// vertex set.
    pub fn lattice_points(&self, points: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let n = points[0].len();
        let mut lo = points[0].clone();
        let mut hi = points[0].clone();
        for p in points {
            for i in 0..n {
                if p[i] < lo[i] {
                    lo[i] = p[i].clone();
                }
                if p[i] > hi[i] {
                    hi[i] = p[i].clone();
                }
            }
        }
        let mut out = Vec::new();
        let mut cursor = lo.clone();
        'scan: loop {
            let x: Vec<BigRational> = cursor
                .iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect();
            if self.contains(&x) {
                out.push(cursor.clone());
            }
            // odometer increment
            for i in 0..n {
                cursor[i] += 1;
                if cursor[i] <= hi[i] {
                    continue 'scan;
                }
                cursor[i] = lo[i].clone();
            }
            break;
        }
        out.sort();
        out
    }
}

pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        if idx[i] == i + n - k {
            return out;
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
