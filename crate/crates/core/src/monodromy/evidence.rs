use serde::Serialize;

use super::fp::{self, FpMatrix};
use super::SymplecticQuotient;
use crate::error::{Error, Result};

/// Number of algebra elements tried when looking for a singular element
/// with a one-dimensional kernel.
const CANDIDATE_WORDS: usize = 64;
/// Largest number of lines a kernel may have before Norton's test is skipped
/// for that candidate.
const KERNEL_LINE_BUDGET: u64 = 10_000;
/// Largest projective space searched exhaustively.
const EXHAUSTIVE_LINE_BUDGET: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IrreducibilityMethod {
    /// Norton's criterion applied to a singular element of the group algebra.
    Norton,
    /// Spinning every line of `W ⊗ F_p`.
    Exhaustive,
}

/// Checks made over one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeEvidence {
    pub prime: u64,
    /// No proper nonzero subspace of `W ⊗ F_p` is stable under the generators.
    pub irreducible: bool,
    /// Dimension of a stable subspace found, when reducible.
    pub invariant_subspace_dimension: Option<usize>,
    pub method: IrreducibilityMethod,
    /// Every generator `g` has `rank(g - 1) <= 1` and `(g - 1)^2 = 0` mod `p`.
    pub generators_are_transvections: bool,
    /// `g^T F g = F` mod `p` for every generator `g`.
    pub form_preserved: bool,
    /// The induced form stays nondegenerate mod `p`.
    pub form_nondegenerate: bool,
}

/// Checkable facts about the image of monodromy in `GL(W ⊗ F_p)`.
///
/// This records irreducibility, the transvection property and preservation
/// of the form for each prime; it makes no claim about Zariski closures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvidenceReport {
    pub quotient_rank: usize,
    pub generator_count: usize,
    pub form_determinant: String,
    pub primes: Vec<PrimeEvidence>,
}

pub fn sp_fullness_evidence(sq: &SymplecticQuotient, primes: &[u64]) -> Result<EvidenceReport> {
    if sq.quotient_rank < 2 {
        return Err(Error::NotApplicable(format!("the symplectic quotient has rank {}", sq.quotient_rank)));
    }
    if let Some(&p) = primes.iter().find(|&&p| p < 3 || p >= 1 << 31 || !fp::is_prime(p)) {
        return Err(Error::NotApplicable(format!("{} is not an odd prime below 2^31", p)));
    }
    let per_prime = primes.iter().map(|&p| prime_evidence(sq, p)).collect::<Result<Vec<_>>>()?;
    Ok(EvidenceReport {
        quotient_rank: sq.quotient_rank,
        generator_count: sq.induced_generators.len(),
        form_determinant: sq.form_determinant().to_string(),
        primes: per_prime,
    })
}

fn prime_evidence(sq: &SymplecticQuotient, p: u64) -> Result<PrimeEvidence> {
    let n = sq.quotient_rank;
    let form = fp::reduce(&sq.induced_form, p);
    let gens: Vec<FpMatrix> = sq.induced_generators.iter().map(|g| fp::reduce(g, p)).collect();
    let id = fp::identity(n);

    let generators_are_transvections = gens.iter().all(|g| {
        let d = fp::add_scaled(g, &id, p - 1, p);
        fp::rank(&d, p) <= 1 && fp::mul(&d, &d, p).iter().flatten().all(|&x| x == 0)
    });
    let form_preserved = gens.iter().all(|g| fp::mul(&fp::mul(&fp::transpose(g), &form, p), g, p) == form);
    let form_nondegenerate = fp::rank(&form, p) == n;
    let (irreducible, invariant_subspace_dimension, method) = irreducibility(&gens, n, p)?;
    Ok(PrimeEvidence {
        prime: p,
        irreducible,
        invariant_subspace_dimension,
        method,
        generators_are_transvections,
        form_preserved,
        form_nondegenerate,
    })
}

fn line_count(dim: usize, p: u64) -> Option<u64> {
    let total = p.checked_pow(dim as u32)?;
    Some((total - 1) / (p - 1))
}

/// Deterministic sequence of group-algebra elements built from the generators.
fn candidate_words(gens: &[FpMatrix], p: u64) -> Vec<FpMatrix> {
    let m = gens.len();
    let mut words = Vec::with_capacity(CANDIDATE_WORDS);
    let mut x = gens[0].clone();
    for k in 0..CANDIDATE_WORDS {
        words.push(x.clone());
        let g = &gens[(k + 1) % m];
        let h = &gens[(3 * k + 2) % m];
        x = fp::add_scaled(&fp::mul(&x, g, p), h, (k as u64 % (p - 1)) + 1, p);
    }
    words
}

fn irreducibility(gens: &[FpMatrix], n: usize, p: u64) -> Result<(bool, Option<usize>, IrreducibilityMethod)> {
    if !gens.is_empty() {
        let words = candidate_words(gens, p);
        let id = fp::identity(n);
        // first look for a kernel of dimension one, then settle for any small kernel
        for max_dim in [1, n] {
            for w in &words {
                for lambda in 0..p.min(64) {
                    let theta = fp::add_scaled(w, &id, (p - lambda) % p, p);
                    let kernel = fp::nullspace(&theta, p);
                    if kernel.is_empty() || kernel.len() > max_dim || kernel.len() == n {
                        continue;
                    }
                    if line_count(kernel.len(), p).map_or(true, |c| c > KERNEL_LINE_BUDGET) {
                        continue;
                    }
                    let (irr, dim) = norton(gens, &theta, &kernel, n, p);
                    return Ok((irr, dim, IrreducibilityMethod::Norton));
                }
            }
        }
    }
    if line_count(n, p).map_or(true, |c| c > EXHAUSTIVE_LINE_BUDGET) {
        return Err(Error::BudgetExceeded(format!("exhaustive irreducibility search over F_{}^{} is too large", p, n)));
    }
    let basis = fp::identity(n);
    let mut witness = None;
    fp::projective_points(&basis, p, |v| {
        let d = fp::spin(v, gens, p);
        if d < n {
            witness = Some(d);
            return false;
        }
        true
    });
    Ok((witness.is_none(), witness, IrreducibilityMethod::Exhaustive))
}

/// Norton's criterion: with `theta` singular in the algebra, the module is
/// irreducible iff every nonzero vector of `ker theta` spins to everything
/// and some nonzero vector of `ker theta^T` spins to everything under the
/// transposed generators.
fn norton(gens: &[FpMatrix], theta: &FpMatrix, kernel: &[Vec<u64>], n: usize, p: u64) -> (bool, Option<usize>) {
    let mut witness = None;
    fp::projective_points(kernel, p, |v| {
        let d = fp::spin(v, gens, p);
        if d < n {
            witness = Some(d);
            return false;
        }
        true
    });
    if witness.is_some() {
        return (false, witness);
    }
    let dual_kernel = fp::nullspace(&fp::transpose(theta), p);
    let transposed: Vec<FpMatrix> = gens.iter().map(fp::transpose).collect();
    let d = fp::spin(&dual_kernel[0], &transposed, p);
    if d < n {
        // the annihilator of a stable subspace of the dual is stable
        return (false, Some(n - d));
    }
    (true, None)
}
