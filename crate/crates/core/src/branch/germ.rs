use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::poly::Polynomial;
use super::puiseux::{semigroup_and_delta, PuiseuxCharacteristic};
use super::series::{ratio, TruncatedSeries};
use crate::error::{Error, Result};

/// A parametrization `t -> (x(t), y(t))` of a branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    pub x: TruncatedSeries,
    pub y: TruncatedSeries,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchSpec {
    /// 1-based branch index.
    pub id: usize,
    pub characteristic: PuiseuxCharacteristic,
    pub parametrization: Option<Parametrization>,
    pub polynomial: Option<Polynomial>,
}

impl BranchSpec {
    pub fn new(
        id: usize,
        characteristic: PuiseuxCharacteristic,
        parametrization: Option<Parametrization>,
        polynomial: Option<Polynomial>,
    ) -> Result<Self> {
        let b = BranchSpec { id, characteristic, parametrization, polynomial };
        b.check_self_consistency()?;
        Ok(b)
    }

    /// When both representations are present, `P(x(t), y(t))` must vanish to
    /// every order the parametrization determines.
    fn check_self_consistency(&self) -> Result<()> {
        let (Some(par), Some(poly)) = (&self.parametrization, &self.polynomial) else {
            return Ok(());
        };
        let value = poly.eval_series(&par.x, &par.y);
        if let Some(e) = value.order() {
            return Err(Error::InconsistentBranch(format!(
                "branch {}: its polynomial {} does not vanish on its parametrization (term of order {})",
                self.id, poly, e
            )));
        }
        Ok(())
    }

    pub fn delta(&self) -> Result<u64> {
        Ok(semigroup_and_delta(&self.characteristic)?.delta)
    }
}

/// Where an intersection number came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Given,
    Computed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionEntry {
    pub value: u64,
    pub provenance: Provenance,
}

/// The germ: its branches and the pairwise intersection numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermSpec {
    branches: Vec<BranchSpec>,
    matrix: Vec<Vec<Option<IntersectionEntry>>>,
}

impl GermSpec {
    /// Builds a germ from its branches and an optional (partial) intersection
    /// matrix. Missing off-diagonal entries are computed with
    /// [`intersection_multiplicity`] when one branch of the pair carries a
    /// parametrization and the other a polynomial; otherwise they stay empty
    /// and [`germ_invariants`] reports the germ as incomplete.
    pub fn new(branches: Vec<BranchSpec>, given: Option<Vec<Vec<Option<u64>>>>) -> Result<Self> {
        let r = branches.len();
        if r == 0 {
            return Err(Error::Validation("a germ needs at least one branch".into()));
        }
        for (k, b) in branches.iter().enumerate() {
            if b.id != k + 1 {
                return Err(Error::Validation(format!("branch ids must be 1..{} in order, found {} at position {}", r, b.id, k + 1)));
            }
        }
        let mut matrix = vec![vec![None; r]; r];
        if let Some(given) = given {
            if given.len() != r || given.iter().any(|row| row.len() != r) {
                return Err(Error::Shape(format!("intersection matrix must be {}x{}", r, r)));
            }
            for i in 0..r {
                for j in 0..r {
                    if i == j {
                        continue;
                    }
                    if given[i][j] != given[j][i] {
                        return Err(Error::Validation(format!("intersection matrix is not symmetric at ({}, {})", i + 1, j + 1)));
                    }
                    if let Some(v) = given[i][j] {
                        if v == 0 {
                            return Err(Error::Validation(format!(
                                "intersection number of branches {} and {} must be positive",
                                i + 1,
                                j + 1
                            )));
                        }
                        matrix[i][j] = Some(IntersectionEntry { value: v, provenance: Provenance::Given });
                    }
                }
            }
        }
        for i in 0..r {
            for j in i + 1..r {
                if matrix[i][j].is_some() {
                    continue;
                }
                let computed = match intersection_multiplicity(&branches[i], &branches[j]) {
                    Err(Error::NotApplicable(_)) => intersection_multiplicity(&branches[j], &branches[i]),
                    other => other,
                };
                match computed {
                    Ok(v) => {
                        let e = Some(IntersectionEntry { value: v, provenance: Provenance::Computed });
                        matrix[i][j] = e;
                        matrix[j][i] = e;
                    }
                    Err(Error::NotApplicable(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(GermSpec { branches, matrix })
    }

    pub fn branches(&self) -> &[BranchSpec] {
        &self.branches
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    /// Entry for the 0-based pair `(i, j)`, `i != j`.
    pub fn intersection(&self, i: usize, j: usize) -> Option<IntersectionEntry> {
        self.matrix.get(i).and_then(|row| row.get(j)).copied().flatten()
    }

    /// The full off-diagonal matrix of intersection numbers (diagonal 0).
    pub fn intersection_matrix(&self) -> Result<Vec<Vec<u64>>> {
        let r = self.branch_count();
        let mut out = vec![vec![0; r]; r];
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                out[i][j] = self
                    .intersection(i, j)
                    .ok_or_else(|| {
                        Error::IncompleteGerm(format!("no intersection number for branches {} and {}", i + 1, j + 1))
                    })?
                    .value;
            }
        }
        Ok(out)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GermFile = serde_json::from_str(text)?;
        file.into_spec()
    }

    pub fn to_file(&self) -> GermFile {
        let r = self.branch_count();
        let has_any = (0..r).any(|i| (0..r).any(|j| i != j && self.intersection(i, j).is_some()));
        GermFile {
            branches: self.branches.iter().map(BranchFile::from_spec).collect(),
            intersection_matrix: has_any.then(|| {
                (0..r)
                    .map(|i| (0..r).map(|j| if i == j { Some(0) } else { self.intersection(i, j).map(|e| e.value) }).collect())
                    .collect()
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("germ files serialize")
    }
}

/// `ord_t P_2(x_1(t), y_1(t))` for a parametrized branch `b1` and a branch
/// `b2` given by its equation.
pub fn intersection_multiplicity(b1: &BranchSpec, b2: &BranchSpec) -> Result<u64> {
    let Some(par) = &b1.parametrization else {
        return Err(Error::NotApplicable(format!("branch {} has no parametrization", b1.id)));
    };
    let Some(poly) = &b2.polynomial else {
        return Err(Error::NotApplicable(format!("branch {} has no polynomial", b2.id)));
    };
    let value = poly.eval_series(&par.x, &par.y);
    let Some(order) = value.order() else {
        return match value.truncation_order() {
            Some(t) => Err(Error::NeedsMoreTerms(format!(
                "P_{}(x_{}(t), y_{}(t)) is only known modulo t^{}; extend the parametrization of branch {} past that order",
                b2.id, b1.id, b1.id, t, b1.id
            ))),
            None => Err(Error::NonIsolated(format!("branch {} lies on the curve of branch {}", b1.id, b2.id))),
        };
    };
    if !order.is_integer() {
        return Err(Error::Validation(format!(
            "order {} is not an integer; the parametrization of branch {} is not in a uniformizing parameter",
            order, b1.id
        )));
    }
    let k = order.to_integer().to_u64().unwrap_or(0);
    if k == 0 {
        return Err(Error::Validation(format!("branches {} and {} do not both pass through the origin", b1.id, b2.id)));
    }
    Ok(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GermInvariants {
    pub r: usize,
    pub branch_deltas: Vec<u64>,
    pub delta: u64,
    pub mu: u64,
    /// Upper bound for the Tjurina number, present when every branch has an
    /// equation (the bound is then `mu`).
    pub tau_hint: Option<u64>,
}

impl fmt::Display for GermInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r = {}, delta = {}, mu = {}", self.r, self.delta, self.mu)?;
        if let Some(t) = self.tau_hint {
            write!(f, ", tau <= {}", t)?;
        }
        Ok(())
    }
}

/// `delta = sum delta_i + sum_{i<j} C_ij` and `mu = 2 delta - r + 1`.
pub fn germ_invariants(g: &GermSpec) -> Result<GermInvariants> {
    let r = g.branch_count();
    let c = g.intersection_matrix()?;
    let branch_deltas = g.branches.iter().map(BranchSpec::delta).collect::<Result<Vec<_>>>()?;
    let overflow = || Error::Validation("delta overflows 64 bits".into());
    let mut delta: u64 = 0;
    for d in &branch_deltas {
        delta = delta.checked_add(*d).ok_or_else(overflow)?;
    }
    for i in 0..r {
        for j in i + 1..r {
            delta = delta.checked_add(c[i][j]).ok_or_else(overflow)?;
        }
    }
    let mu = delta.checked_mul(2).ok_or_else(overflow)? + 1 - r as u64;
    let tau_hint = g.branches.iter().all(|b| b.polynomial.is_some()).then_some(mu);
    Ok(GermInvariants { r, branch_deltas, delta, mu, tau_hint })
}

// ---- JSON file format ----

/// On-disk germ description.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermFile {
    pub branches: Vec<BranchFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersection_matrix: Option<Vec<Vec<Option<u64>>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchFile {
    pub id: usize,
    pub characteristic: PuiseuxCharacteristic,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parametrization: Option<ParametrizationFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
}

/// Terms are `[coef_num, coef_den, exp_num, exp_den]`. Without
/// `truncation_order` (given as `[num, den]`) the series are exact.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParametrizationFile {
    pub x: Vec<[i64; 4]>,
    pub y: Vec<[i64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation_order: Option<[i64; 2]>,
}

impl GermFile {
    pub fn into_spec(self) -> Result<GermSpec> {
        let branches = self.branches.into_iter().map(BranchFile::into_spec).collect::<Result<Vec<_>>>()?;
        GermSpec::new(branches, self.intersection_matrix)
    }
}

impl BranchFile {
    fn into_spec(self) -> Result<BranchSpec> {
        let parametrization = self.parametrization.map(|p| p.into_param()).transpose()?;
        let polynomial = self.polynomial.map(|s| s.parse::<Polynomial>()).transpose()?;
        BranchSpec::new(self.id, self.characteristic, parametrization, polynomial)
    }

    fn from_spec(b: &BranchSpec) -> Self {
        BranchFile {
            id: b.id,
            characteristic: b.characteristic.clone(),
            parametrization: b.parametrization.as_ref().map(ParametrizationFile::from_param),
            polynomial: b.polynomial.as_ref().map(|p| p.to_string()),
        }
    }
}

impl ParametrizationFile {
    fn into_param(self) -> Result<Parametrization> {
        let trunc = self.truncation_order.map(|[n, d]| ratio(n, d)).transpose()?;
        let series = |terms: Vec<[i64; 4]>| -> Result<TruncatedSeries> {
            let parsed = terms
                .into_iter()
                .map(|[cn, cd, en, ed]| Ok((ratio(en, ed)?, ratio(cn, cd)?)))
                .collect::<Result<Vec<_>>>()?;
            TruncatedSeries::new(parsed, trunc.clone())
        };
        Ok(Parametrization { x: series(self.x)?, y: series(self.y)? })
    }

    fn from_param(p: &Parametrization) -> Self {
        let small = |r: &BigRational| -> [i64; 2] {
            [
                r.numer().to_i64().expect("coefficient fits in i64"),
                r.denom().to_i64().expect("coefficient fits in i64"),
            ]
        };
        let terms = |s: &TruncatedSeries| -> Vec<[i64; 4]> {
            s.terms()
                .map(|(e, c)| {
                    let [cn, cd] = small(c);
                    let [en, ed] = small(e);
                    [cn, cd, en, ed]
                })
                .collect()
        };
        let trunc = min_trunc(p.x.truncation_order(), p.y.truncation_order()).map(|t| small(&t));
        ParametrizationFile { x: terms(&p.x), y: terms(&p.y), truncation_order: trunc }
    }
}

fn min_trunc(a: Option<&BigRational>, b: Option<&BigRational>) -> Option<BigRational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y).clone()),
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

/// Exact parametrization `x = cx t^ex`, `y = cy t^ey`.
pub fn monomial_parametrization((cx, ex): (i64, u32), (cy, ey): (i64, u32)) -> Parametrization {
    let int = |k: i64| BigRational::from_integer(BigInt::from(k));
    let term = |c: i64, e: u32| TruncatedSeries::monomial(int(c), int(e as i64));
    Parametrization { x: term(cx, ex), y: term(cy, ey) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn line(id: usize, poly: &str, slope: i64) -> BranchSpec {
        BranchSpec::new(
            id,
            PuiseuxCharacteristic::smooth(),
            Some(monomial_parametrization((1, 1), (slope, 1))),
            Some(poly.parse().unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn transverse_lines() {
        let a = line(1, "x - y", 1);
        let b = line(2, "x + y", -1);
        assert_eq!(intersection_multiplicity(&a, &b).unwrap(), 1);
        assert_eq!(intersection_multiplicity(&b, &a).unwrap(), 1);
    }

    #[test]
    fn cusp_against_axis() {
        let cusp = BranchSpec::new(
            1,
            PuiseuxCharacteristic::new(2, vec![3]).unwrap(),
            Some(monomial_parametrization((1, 2), (1, 3))),
            Some("x^3 - y^2".parse().unwrap()),
        )
        .unwrap();
        let axis = BranchSpec::new(2, PuiseuxCharacteristic::smooth(), None, Some("y".parse().unwrap())).unwrap();
        assert_eq!(intersection_multiplicity(&cusp, &axis).unwrap(), 3);
    }

    #[test]
    fn tangent_parabolas() {
        let p = |id, sign: i64, poly: &str| {
            BranchSpec::new(id, PuiseuxCharacteristic::smooth(), Some(monomial_parametrization((1, 1), (sign, 2))), Some(poly.parse().unwrap()))
                .unwrap()
        };
        let a = p(1, 1, "y - x^2");
        let b = p(2, -1, "y + x^2");
        assert_eq!(intersection_multiplicity(&a, &b).unwrap(), 2);
        assert_eq!(intersection_multiplicity(&b, &a).unwrap(), 2);
    }

    #[test]
    fn truncation_and_common_components() {
        let trunc = TruncatedSeries::new(vec![], Some(BigRational::from_integer(3.into()))).unwrap();
        let x = TruncatedSeries::monomial(BigRational::one(), BigRational::one());
        let b1 = BranchSpec::new(
            1,
            PuiseuxCharacteristic::smooth(),
            Some(Parametrization { x, y: trunc }),
            None,
        )
        .unwrap();
        let b2 = BranchSpec::new(2, PuiseuxCharacteristic::smooth(), None, Some("y".parse().unwrap())).unwrap();
        assert!(matches!(intersection_multiplicity(&b1, &b2), Err(Error::NeedsMoreTerms(_))));
        let same = line(3, "y", 0);
        assert!(matches!(intersection_multiplicity(&same, &b2), Err(Error::NonIsolated(_))));
    }

    #[test]
    fn inconsistent_branch_rejected() {
        let r = BranchSpec::new(1, PuiseuxCharacteristic::smooth(), Some(monomial_parametrization((1, 1), (1, 1))), Some("x + y".parse().unwrap()));
        assert!(matches!(r, Err(Error::InconsistentBranch(_))));
    }

    #[test]
    fn invariants_of_four_lines() {
        let vertical = BranchSpec::new(
            3,
            PuiseuxCharacteristic::smooth(),
            Some(Parametrization {
                x: TruncatedSeries::constant(BigRational::zero()),
                y: TruncatedSeries::monomial(BigRational::one(), BigRational::one()),
            }),
            Some("x".parse().unwrap()),
        )
        .unwrap();
        let germ = GermSpec::new(vec![line(1, "y", 0), line(2, "x - y", 1), vertical, line(4, "x + y", -1)], None).unwrap();
        let inv = germ_invariants(&germ).unwrap();
        assert_eq!((inv.r, inv.delta, inv.mu, inv.tau_hint), (4, 6, 9, Some(9)));
        assert_eq!(germ.intersection(0, 1).unwrap().provenance, Provenance::Computed);
    }

    #[test]
    fn incomplete_germ() {
        let a = BranchSpec::new(1, PuiseuxCharacteristic::smooth(), None, None).unwrap();
        let b = BranchSpec::new(2, PuiseuxCharacteristic::smooth(), None, None).unwrap();
        let g = GermSpec::new(vec![a, b], None).unwrap();
        assert!(matches!(germ_invariants(&g), Err(Error::IncompleteGerm(_))));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{
            "branches": [
                {"id": 1, "characteristic": [2, 3],
                 "parametrization": {"x": [[1,1,2,1]], "y": [[1,1,3,1]]},
                 "polynomial": "x^3 - y^2"}
            ]
        }"#;
        let g = GermSpec::from_json(text).unwrap();
        let inv = germ_invariants(&g).unwrap();
        assert_eq!((inv.delta, inv.mu), (1, 2));
        assert_eq!(GermSpec::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn asymmetric_matrix_rejected() {
        let a = BranchSpec::new(1, PuiseuxCharacteristic::smooth(), None, None).unwrap();
        let b = BranchSpec::new(2, PuiseuxCharacteristic::smooth(), None, None).unwrap();
        let m = vec![vec![None, Some(1)], vec![Some(2), None]];
        assert!(GermSpec::new(vec![a, b], Some(m)).is_err());
    }
}
