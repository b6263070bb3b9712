//! Permutations on finite point sets.
//!
//! Points are `0..degree`. A permutation is stored as its image array:
//! `images[x]` is the image of point `x`. Composition is left-to-right,
//! so `compose(p, q)` maps `x` to `q[p[x]]` (apply `p` first, then `q`).

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("image array of length {len} is not a bijection on 0..{len}")]
    NotBijective { len: usize },
    #[error("point {point} is out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("cannot parse cycle notation {text:?}: {reason}")]
    BadCycleNotation { text: String, reason: String },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("degree must be positive")]
    ZeroDegree,
}

/// A bijection on `{0, …, degree-1}` in image-array form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// The identity permutation of the given degree.
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Validates that `images` is a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n {
                return Err(PermError::PointOutOfRange { point: y, degree: n });
            }
            if seen[y] {
                return Err(PermError::NotBijective { len: n });
            }
            seen[y] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `"(0 1)(2 3 4)"`. Whitespace and commas
    /// both separate points; `"()"` and `""` denote the identity.
    pub fn from_cycles(degree: usize, text: &str) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let bad = |reason: &str| PermError::BadCycleNotation {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(open) = rest.find('(') else {
                return Err(bad("expected '('"));
            };
            if !rest[..open].trim().is_empty() {
                return Err(bad("unexpected text outside parentheses"));
            }
            let Some(close) = rest.find(')') else {
                return Err(bad("unbalanced '('"));
            };
            let body = &rest[open + 1..close];
            rest = rest[close + 1..].trim_start();
            let points: Vec<usize> = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad("not a point")))
                .collect::<Result<_, _>>()?;
            for &p in &points {
                if p >= degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if moved[p] {
                    return Err(bad("point repeated across cycles"));
                }
                moved[p] = true;
            }
            for w in points.windows(2) {
                images[w[0]] = w[1];
            }
            if points.len() > 1 {
                images[points[points.len() - 1]] = points[0];
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a single point.
    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// `compose(p, q)` applies `p` first, then `q`: the group product `pq`.
    ///
    /// # Panics
    /// Panics on degree mismatch; mixed-degree inputs are rejected earlier at
    /// the [`GenSet`] boundary.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "compose requires equal degrees"
        );
        Permutation {
            images: self.images.iter().map(|&y| other.images[y]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    /// The conjugate `self^g = g⁻¹ · self · g`.
    pub fn conjugate(&self, g: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            g.degree(),
            "conjugate requires equal degrees"
        );
        // image array of g⁻¹pg, filled via images[g[x]] = g[p[x]]
        let mut out = vec![0; self.images.len()];
        for (x, &px) in self.images.iter().enumerate() {
            out[g.images[x]] = g.images[px];
        }
        Permutation { images: out }
    }

    /// Multiplicative order: lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.images.len()];
        let mut ord: u64 = 1;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    /// True when the permutation is even (product of an even number of
    /// transpositions).
    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        let mut transpositions = 0usize;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions.is_multiple_of(2)
    }

    /// Non-singleton cycles, each starting at its smallest unvisited point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted cycle lengths including fixed points; conjugation-invariant.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.images.len()];
        let mut lens = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;
    fn try_from(images: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// A list of same-degree generators. The empty list denotes the trivial
/// group of that degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSet {
    degree: usize,
    gens: Vec<Permutation>,
}

impl GenSet {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(GenSet { degree, gens })
    }

    pub fn trivial(degree: usize) -> Self {
        GenSet {
            degree,
            gens: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Re-embeds the generators on `new_degree` points, shifting every moved
    /// point by `offset`. Used to place factors of direct products and wreath
    /// blocks on disjoint points.
    pub fn shifted(&self, offset: usize, new_degree: usize) -> Result<GenSet, PermError> {
        if offset + self.degree > new_degree {
            return Err(PermError::PointOutOfRange {
                point: offset + self.degree - 1,
                degree: new_degree,
            });
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut images: Vec<usize> = (0..new_degree).collect();
                for (x, &y) in g.images().iter().enumerate() {
                    images[x + offset] = y + offset;
                }
                Permutation::from_images(images).expect("shifted image stays bijective")
            })
            .collect();
        Ok(GenSet {
            degree: new_degree,
            gens,
        })
    }
}
