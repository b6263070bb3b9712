//! Standard generating sets for common permutation group families.

use crate::perm::{GenSet, PermError, Permutation};

/// `Sym(n)` on `0..n`: a transposition and an `n`-cycle.
pub fn symmetric_gens(n: usize) -> Result<GenSet, PermError> {
    if n == 0 {
        return Err(PermError::ZeroDegree);
    }
    if n == 1 {
        return Ok(GenSet::trivial(1));
    }
    let mut gens = vec![Permutation::from_cycles(n, "(0 1)")?];
    if n > 2 {
        let cycle: Vec<usize> = (1..n).chain(std::iter::once(0)).collect();
        gens.push(Permutation::from_images(cycle)?);
    }
    GenSet::new(n, gens)
}

/// `Alt(n)` on `0..n`: a 3-cycle together with an even long cycle.
pub fn alternating_gens(n: usize) -> Result<GenSet, PermError> {
    if n == 0 {
        return Err(PermError::ZeroDegree);
    }
    if n <= 2 {
        return Ok(GenSet::trivial(n));
    }
    let mut gens = vec![Permutation::from_cycles(n, "(0 1 2)")?];
    if n > 3 {
        let images: Vec<usize> = if n % 2 == 1 {
            // n-cycle (0 1 … n-1), even since n is odd
            (1..n).chain(std::iter::once(0)).collect()
        } else {
            // (n-1)-cycle (1 2 … n-1) fixing 0, even since n-1 is odd
            std::iter::once(0).chain(2..n).chain(std::iter::once(1)).collect()
        };
        gens.push(Permutation::from_images(images)?);
    }
    GenSet::new(n, gens)
}

/// Cyclic group of order `m` as an `m`-cycle on `0..m`.
pub fn cyclic_gens(m: usize) -> Result<GenSet, PermError> {
    if m == 0 {
        return Err(PermError::ZeroDegree);
    }
    if m == 1 {
        return Ok(GenSet::trivial(1));
    }
    let cycle: Vec<usize> = (1..m).chain(std::iter::once(0)).collect();
    GenSet::new(m, vec![Permutation::from_images(cycle)?])
}

/// Dihedral group of order `2m` (`m ≥ 3`) as symmetries of an `m`-gon.
pub fn dihedral_gens(m: usize) -> Result<GenSet, PermError> {
    if m < 3 {
        return Err(PermError::BadCycleNotation {
            text: format!("dihedral({m})"),
            reason: "dihedral groups need m >= 3".to_string(),
        });
    }
    let rotation: Vec<usize> = (1..m).chain(std::iter::once(0)).collect();
    let reflection: Vec<usize> = (0..m).map(|i| (m - i) % m).collect();
    GenSet::new(
        m,
        vec![
            Permutation::from_images(rotation)?,
            Permutation::from_images(reflection)?,
        ],
    )
}

/// Direct product on disjoint point sets.
pub fn direct_product_gens(factors: &[GenSet]) -> Result<GenSet, PermError> {
    let degree: usize = factors.iter().map(|f| f.degree()).sum();
    if degree == 0 {
        return Err(PermError::ZeroDegree);
    }
    let mut gens = Vec::new();
    let mut offset = 0;
    for factor in factors {
        gens.extend(factor.shifted(offset, degree)?.gens().iter().cloned());
        offset += factor.degree();
    }
    GenSet::new(degree, gens)
}
