use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Puiseux characteristic `(beta0; beta1, ..., beta_g)` of a branch.
///
/// `beta0` is the multiplicity; the characteristic exponents are strictly
/// increasing, exceed `beta0`, and their running gcd with `beta0` drops at
/// every step until it reaches 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PuiseuxCharacteristic {
    beta0: u64,
    betas: Vec<u64>,
}

impl PuiseuxCharacteristic {
    pub fn new(beta0: u64, betas: Vec<u64>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidCharacteristic(msg));
        if beta0 == 0 {
            return bad("multiplicity must be positive".into());
        }
        if beta0 == 1 && !betas.is_empty() {
            return bad("a smooth branch has no characteristic exponents".into());
        }
        let mut prev = beta0;
        let mut e = beta0;
        for &b in &betas {
            if b <= prev {
                return bad(format!("exponent {} does not increase past {}", b, prev));
            }
            let next = e.gcd(&b);
            if next == e {
                return bad(format!("exponent {} does not lower the gcd {}", b, e));
            }
            e = next;
            prev = b;
        }
        if e != 1 {
            return bad(format!("gcd chain ends at {} instead of 1", e));
        }
        Ok(PuiseuxCharacteristic { beta0, betas })
    }

    pub fn smooth() -> Self {
        PuiseuxCharacteristic { beta0: 1, betas: Vec::new() }
    }

    pub fn multiplicity(&self) -> u64 {
        self.beta0
    }

    pub fn exponents(&self) -> &[u64] {
        &self.betas
    }

    /// The gcd chain `e_0 = beta0, e_q = gcd(e_{q-1}, beta_q)`.
    pub fn gcd_chain(&self) -> Vec<u64> {
        let mut chain = vec![self.beta0];
        for &b in &self.betas {
            let last = *chain.last().unwrap();
            chain.push(last.gcd(&b));
        }
        chain
    }
}

impl TryFrom<Vec<u64>> for PuiseuxCharacteristic {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        match v.split_first() {
            Some((&b0, rest)) => Self::new(b0, rest.to_vec()),
            None => Err(Error::InvalidCharacteristic("empty characteristic".into())),
        }
    }
}

impl From<PuiseuxCharacteristic> for Vec<u64> {
    fn from(c: PuiseuxCharacteristic) -> Self {
        let mut v = vec![c.beta0];
        v.extend(c.betas);
        v
    }
}

/// Minimal generators of the value semigroup, its conductor and `delta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemigroupData {
    pub generators: Vec<u64>,
    pub conductor: u64,
    pub delta: u64,
}

fn overflow() -> Error {
    Error::InvalidCharacteristic("semigroup data overflows 64 bits".into())
}

/// Semigroup generators `bbeta_0 = n`, `bbeta_1 = beta_1`,
/// `bbeta_{q+1} = n_q bbeta_q - beta_q + beta_{q+1}` with `n_q = e_{q-1}/e_q`,
/// conductor `n_g bbeta_g - beta_g - n + 1` and `delta = conductor / 2`.
pub fn semigroup_and_delta(ch: &PuiseuxCharacteristic) -> Result<SemigroupData> {
    let n = ch.beta0;
    if ch.betas.is_empty() {
        return Ok(SemigroupData { generators: vec![1], conductor: 0, delta: 0 });
    }
    let e = ch.gcd_chain();
    let mut gens = vec![n, ch.betas[0]];
    for q in 1..ch.betas.len() {
        let nq = e[q - 1] / e[q];
        let prev = gens[q];
        let next = nq
            .checked_mul(prev)
            .and_then(|v| v.checked_add(ch.betas[q]))
            .and_then(|v| v.checked_sub(ch.betas[q - 1]))
            .ok_or_else(overflow)?;
        gens.push(next);
    }
    let g = ch.betas.len();
    let ng = e[g - 1] / e[g];
    let conductor = ng
        .checked_mul(gens[g])
        .and_then(|v| v.checked_add(1))
        .and_then(|v| v.checked_sub(ch.betas[g - 1]))
        .and_then(|v| v.checked_sub(n))
        .ok_or_else(overflow)?;
    Ok(SemigroupData { generators: gens, conductor, delta: conductor / 2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_branch() {
        let d = semigroup_and_delta(&PuiseuxCharacteristic::smooth()).unwrap();
        assert_eq!(d.delta, 0);
    }

    #[test]
    fn cusp() {
        let d = semigroup_and_delta(&PuiseuxCharacteristic::new(2, vec![3]).unwrap()).unwrap();
        assert_eq!(d.generators, vec![2, 3]);
        assert_eq!(d.delta, 1);
    }

    #[test]
    fn two_pairs() {
        let d = semigroup_and_delta(&PuiseuxCharacteristic::new(4, vec![6, 7]).unwrap()).unwrap();
        assert_eq!(d.generators, vec![4, 6, 13]);
        assert_eq!(d.conductor, 16);
        assert_eq!(d.delta, 8);
    }

    #[test]
    fn malformed() {
        assert!(PuiseuxCharacteristic::new(0, vec![]).is_err());
        assert!(PuiseuxCharacteristic::new(2, vec![4]).is_err());
        assert!(PuiseuxCharacteristic::new(4, vec![6]).is_err());
        assert!(PuiseuxCharacteristic::new(4, vec![6, 6]).is_err());
        assert!(PuiseuxCharacteristic::new(3, vec![2]).is_err());
        assert!(PuiseuxCharacteristic::new(1, vec![2]).is_err());
        assert!(PuiseuxCharacteristic::try_from(vec![]).is_err());
    }

    #[test]
    fn serde_shape() {
        let c: PuiseuxCharacteristic = serde_json::from_str("[4, 6, 7]").unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), "[4,6,7]");
        assert!(serde_json::from_str::<PuiseuxCharacteristic>("[2, 4]").is_err());
    }
}
