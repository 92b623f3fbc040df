use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;

use super::{Divide, DoublePoint, Sign, SignedRegion};
use crate::branch::{monomial_parametrization, BranchSpec, GermSpec, Polynomial, PuiseuxCharacteristic};
use crate::error::{Error, Result};

/// A generated divide together with a germ it models.
#[derive(Clone, Debug)]
pub struct GeneratedDivide {
    pub germ: GermSpec,
    pub divide: Divide,
}

/// Divide of `d` lines in general position, each tangent to the parabola
/// `y = x^2`, modelling the ordinary `d`-fold point.
///
/// Line `k` (for `k = 0..d`) is `y = 2k x - k^2`; lines `k` and `l` meet at
/// `((k + l)/2, kl)`. Regions are the bounded faces. Signs alternate across
/// every line; the global sign is fixed so that there are at most as many
/// plus regions as minus regions, with region 1 taken plus on a tie.
pub fn generate_line_arrangement_divide(d: usize) -> Result<GeneratedDivide> {
    if d < 2 {
        return Err(Error::InvalidArity(d));
    }
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|k| (k + 1..d).map(move |l| (k, l))).collect();
    let vid: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(v, &p)| (p, v)).collect();
    // coordinates scaled by 2 so that they are integers: (k + l, 2kl)
    let coords: Vec<(i64, i64)> = pairs.iter().map(|&(k, l)| ((k + l) as i64, (2 * k * l) as i64)).collect();

    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); pairs.len()];
    for k in 0..d {
        // vertices on line k, ordered by the other line's index (= by x)
        let on_line: Vec<usize> = (0..d).filter(|&l| l != k).map(|l| vid[&(k.min(l), k.max(l))]).collect();
        for w in on_line.windows(2) {
            nbrs[w[0]].push(w[1]);
            nbrs[w[1]].push(w[0]);
        }
    }
    for (v, list) in nbrs.iter_mut().enumerate() {
        let origin = coords[v];
        list.sort_by(|&a, &b| ccw_cmp(dir(origin, coords[a]), dir(origin, coords[b])));
    }

    // trace faces: leaving u -> v, continue to the neighbor of v preceding u
    let mut face_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for u in 0..pairs.len() {
        for &v in &nbrs[u] {
            if face_of.contains_key(&(u, v)) {
                continue;
            }
            let id = faces.len();
            let mut cycle = Vec::new();
            let (mut a, mut b) = (u, v);
            while !face_of.contains_key(&(a, b)) {
                face_of.insert((a, b), id);
                cycle.push(a);
                let list = &nbrs[b];
                let pos = list.iter().position(|&x| x == a).expect("edges are symmetric");
                let c = list[(pos + list.len() - 1) % list.len()];
                (a, b) = (b, c);
            }
            faces.push(cycle);
        }
    }
    let area2 = |cycle: &[usize]| -> i64 {
        (0..cycle.len())
            .map(|i| {
                let (x0, y0) = coords[cycle[i]];
                let (x1, y1) = coords[cycle[(i + 1) % cycle.len()]];
                x0 * y1 - x1 * y0
            })
            .sum()
    };
    let mut bounded: Vec<(Vec<usize>, usize)> = faces
        .iter()
        .enumerate()
        .filter(|(_, c)| area2(c) > 0)
        .map(|(f, c)| {
            let mut key = c.clone();
            key.sort_unstable();
            (key, f)
        })
        .collect();
    bounded.sort();
    let region_of_face: BTreeMap<usize, usize> = bounded.iter().enumerate().map(|(r, (_, f))| (*f, r + 1)).collect();

    let raw_sign = |cycle: &[usize]| -> Sign {
        let m = cycle.len() as i64;
        let sx: i64 = cycle.iter().map(|&v| coords[v].0).sum();
        let sy: i64 = cycle.iter().map(|&v| coords[v].1).sum();
        // m * (Y - 2kX + 2k^2) at the centroid
        let negatives = (0..d as i64).filter(|&k| sy - 2 * k * sx + 2 * k * k * m < 0).count();
        if negatives % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    };
    let mut signs: Vec<Sign> = bounded.iter().map(|(_, f)| raw_sign(&faces[*f])).collect();
    let plus = signs.iter().filter(|&&s| s == Sign::Plus).count();
    let minus = signs.len() - plus;
    if plus > minus || (plus == minus && signs.first() == Some(&Sign::Minus)) {
        signs.iter_mut().for_each(|s| *s = s.opposite());
    }

    let mut neighbors: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); bounded.len()];
    for (&(u, v), f) in &face_of {
        let (Some(&r1), Some(&r2)) = (region_of_face.get(f), face_of.get(&(v, u)).and_then(|g| region_of_face.get(g))) else {
            continue;
        };
        neighbors[r1 - 1].insert(r2);
    }
    let regions = bounded
        .iter()
        .enumerate()
        .map(|(r, (key, _))| SignedRegion {
            id: r + 1,
            sign: signs[r],
            closure_double_points: key.iter().map(|v| v + 1).collect(),
            segment_neighbors: neighbors[r].clone(),
        })
        .collect();
    let dps = pairs
        .iter()
        .enumerate()
        .map(|(v, &(k, l))| DoublePoint { id: v + 1, branches: (k + 1, l + 1) })
        .collect();
    let divide = Divide::new(dps, regions)?;
    Ok(GeneratedDivide { germ: lines_germ(d)?, divide })
}

fn dir(from: (i64, i64), to: (i64, i64)) -> (i64, i64) {
    (to.0 - from.0, to.1 - from.1)
}

/// Counter-clockwise angular order of direction vectors starting at angle 0.
fn ccw_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    let half = |(x, y): (i64, i64)| if y > 0 || (y == 0 && x > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&(a.0 * b.1 - a.1 * b.0)))
}

/// The lines `y = 2k x` through the origin, `k = 0..d`.
fn lines_germ(d: usize) -> Result<GermSpec> {
    let branches = (0..d)
        .map(|k| {
            let slope = 2 * k as i64;
            let poly = Polynomial::monomial(1, 0, 1).add(&Polynomial::monomial(-slope, 1, 0));
            BranchSpec::new(
                k + 1,
                PuiseuxCharacteristic::smooth(),
                Some(monomial_parametrization((1, 1), (slope, 1))),
                Some(poly),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    GermSpec::new(branches, None)
}

/// Divide for `x^p - y^q`.
///
/// For `gcd(p, q) <= 2` this is the Chebyshev divide `T_p(x) = T_q(y)` on the
/// square: grid points `(k, l)`, `0 < k < p`, `0 < l < q`, with `k + l` even
/// are double points and those with `k + l` odd are regions (plus when `k`
/// is even), bounded by their horizontal and vertical grid neighbours and
/// sharing segments with their diagonal ones. For `p = q >= 3` the germ is an
/// ordinary `p`-fold point and the line arrangement is used. Other exponent
/// pairs have non-real branches and are rejected.
pub fn generate_grid_divide(p: u64, q: u64) -> Result<GeneratedDivide> {
    if p < 2 || q < 2 {
        return Err(Error::InvalidExponent(p, q));
    }
    let g = p.gcd(&q);
    if p == q && p >= 3 {
        return generate_line_arrangement_divide(p as usize);
    }
    if g > 2 {
        return Err(Error::UnsupportedExponents(
            p,
            q,
            format!("gcd {} > 2 gives branches that are not real; only p = q is supported in that case", g),
        ));
    }
    let (pi, qi) = (p as i64, q as i64);
    let mut dp_index: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut dps = Vec::new();
    let mut cells = Vec::new();
    for k in 1..pi {
        for l in 1..qi {
            if (k + l) % 2 == 0 {
                let branches = if g == 1 {
                    (1, 1)
                } else if k % 2 == 1 {
                    (1, 2)
                } else if (k / 2 + l / 2) % 2 == 0 {
                    (1, 1)
                } else {
                    (2, 2)
                };
                let id = dps.len() + 1;
                dp_index.insert((k, l), id);
                dps.push(DoublePoint { id, branches });
            } else {
                cells.push((k, l));
            }
        }
    }
    let region_index: BTreeMap<(i64, i64), usize> = cells.iter().enumerate().map(|(r, &c)| (c, r + 1)).collect();
    let regions = cells
        .iter()
        .enumerate()
        .map(|(r, &(k, l))| SignedRegion {
            id: r + 1,
            sign: if k % 2 == 0 { Sign::Plus } else { Sign::Minus },
            closure_double_points: [(k - 1, l), (k + 1, l), (k, l - 1), (k, l + 1)]
                .iter()
                .filter_map(|c| dp_index.get(c).copied())
                .collect(),
            segment_neighbors: [(k - 1, l - 1), (k - 1, l + 1), (k + 1, l - 1), (k + 1, l + 1)]
                .iter()
                .filter_map(|c| region_index.get(c).copied())
                .collect(),
        })
        .collect();
    let divide = Divide::new(dps, regions)?;
    Ok(GeneratedDivide { germ: grid_germ(p, q)?, divide })
}

fn characteristic(a: u64, b: u64) -> Result<PuiseuxCharacteristic> {
    if a.min(b) == 1 {
        Ok(PuiseuxCharacteristic::smooth())
    } else {
        PuiseuxCharacteristic::new(a.min(b), vec![a.max(b)])
    }
}

fn grid_germ(p: u64, q: u64) -> Result<GermSpec> {
    let exp = |e: u64| u32::try_from(e).map_err(|_| Error::InvalidExponent(p, q));
    let binomial = |a: u64, b: u64, sign: i64| -> Result<Polynomial> {
        Ok(Polynomial::monomial(1, exp(a)?, 0).add(&Polynomial::monomial(sign, 0, exp(b)?)))
    };
    let branches = if p.gcd(&q) == 1 {
        vec![BranchSpec::new(
            1,
            characteristic(p, q)?,
            Some(monomial_parametrization((1, exp(q)?), (1, exp(p)?))),
            Some(binomial(p, q, -1)?),
        )?]
    } else {
        let (a, b) = (p / 2, q / 2);
        // x^a + y^b = 0 is parametrized by flipping the sign of an odd-power coordinate
        let flipped = if a % 2 == 1 {
            monomial_parametrization((-1, exp(b)?), (1, exp(a)?))
        } else {
            monomial_parametrization((1, exp(b)?), (-1, exp(a)?))
        };
        vec![
            BranchSpec::new(
                1,
                characteristic(a, b)?,
                Some(monomial_parametrization((1, exp(b)?), (1, exp(a)?))),
                Some(binomial(a, b, -1)?),
            )?,
            BranchSpec::new(2, characteristic(a, b)?, Some(flipped), Some(binomial(a, b, 1)?))?,
        ]
    };
    GermSpec::new(branches, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::germ_invariants;
    use crate::divide::validate;

    #[test]
    fn line_arrangement_counts() {
        for d in 2..=7 {
            let g = generate_line_arrangement_divide(d).unwrap();
            assert_eq!(g.divide.mu_zero(), d * (d - 1) / 2);
            assert_eq!(g.divide.regions().len(), (d - 1) * (d - 2) / 2);
            assert_eq!(g.divide.mu(), (d - 1) * (d - 1));
            assert!(validate(&g.divide, &g.germ).unwrap().passed, "d = {d}");
        }
        let four = generate_line_arrangement_divide(4).unwrap().divide;
        assert_eq!((four.mu_plus(), four.mu_minus()), (1, 2));
        assert!(matches!(generate_line_arrangement_divide(1), Err(Error::InvalidArity(1))));
    }

    #[test]
    fn grid_examples() {
        let cusp = generate_grid_divide(2, 3).unwrap();
        let inv = germ_invariants(&cusp.germ).unwrap();
        assert_eq!((inv.r, inv.delta, inv.mu), (1, 1, 2));
        assert_eq!(cusp.divide.mu_zero(), 1);

        let node = generate_grid_divide(2, 2).unwrap();
        assert_eq!(germ_invariants(&node.germ).unwrap().mu, 1);

        let three = generate_grid_divide(3, 3).unwrap();
        assert_eq!(three.divide, generate_line_arrangement_divide(3).unwrap().divide);
    }

    #[test]
    fn grid_divides_validate() {
        for p in 2..=8u64 {
            for q in 2..=8u64 {
                match generate_grid_divide(p, q) {
                    Ok(g) => {
                        let report = validate(&g.divide, &g.germ).unwrap();
                        assert!(report.passed, "({p}, {q}):\n{report}");
                        let g_ = p.gcd(&q);
                        assert_eq!(g.divide.mu() as u64, (p - 1) * (q - 1));
                        assert_eq!(2 * g.divide.mu_zero() as u64, (p - 1) * (q - 1) + g_ - 1);
                    }
                    Err(Error::UnsupportedExponents(..)) => assert!(p.gcd(&q) > 2 && p != q),
                    Err(e) => panic!("({p}, {q}): {e}"),
                }
            }
        }
        assert!(matches!(generate_grid_divide(1, 3), Err(Error::InvalidExponent(1, 3))));
    }
}
