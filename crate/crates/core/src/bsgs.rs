//! Base and strong generating sets (deterministic Schreier–Sims).
//!
//! A [`BsgsGroup`] gives exact group order, membership testing by sifting,
//! exactly uniform random elements, and a full element iterator. The build is
//! deterministic so identical generators always produce identical chains.

use crate::perm::{GenSet, Permutation};
use crate::rng::RngStream;
use num_bigint::BigUint;

/// One level of the stabilizer chain.
#[derive(Clone, Debug)]
struct Level {
    point: usize,
    /// Orbit of `point` under this level's generators, in discovery order.
    orbit: Vec<usize>,
    /// point → position in `orbit`, or -1.
    slot: Vec<i32>,
    /// `reps[i]` maps `point` to `orbit[i]`.
    reps: Vec<Permutation>,
    rep_invs: Vec<Permutation>,
    gens: Vec<Permutation>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Level {
        let mut level = Level {
            point,
            orbit: Vec::new(),
            slot: vec![-1; degree],
            reps: Vec::new(),
            rep_invs: Vec::new(),
            gens: Vec::new(),
        };
        level.recompute_orbit(degree);
        level
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.reps.clear();
        self.rep_invs.clear();
        self.slot.iter_mut().for_each(|s| *s = -1);
        self.orbit.push(self.point);
        self.slot[self.point] = 0;
        self.reps.push(Permutation::identity(degree));
        self.rep_invs.push(Permutation::identity(degree));
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for g in &self.gens {
                let y = g.image(x);
                if self.slot[y] < 0 {
                    self.slot[y] = self.orbit.len() as i32;
                    self.orbit.push(y);
                    let rep = self.reps[i].compose(g);
                    self.rep_invs.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            i += 1;
        }
    }
}

/// A permutation group in base/strong-generating-set form.
#[derive(Clone, Debug)]
pub struct BsgsGroup {
    degree: usize,
    levels: Vec<Level>,
    order: BigUint,
}

impl BsgsGroup {
    /// Builds a verified BSGS from generators via deterministic Schreier–Sims.
    pub fn from_gens(gens: &GenSet) -> BsgsGroup {
        let degree = gens.degree();
        let mut levels: Vec<Level> = Vec::new();
        for g in gens.gens() {
            if !g.is_identity() {
                add_strong_generator(&mut levels, 0, g.clone(), degree);
            }
        }
        // Verify levels bottom-up; a failed Schreier generator is adjoined at
        // the level where its sift stops and verification resumes there.
        let mut i = levels.len() as isize - 1;
        while i >= 0 {
            match verify_level(&mut levels, i as usize, degree) {
                None => i -= 1,
                Some(j) => i = j as isize,
            }
        }
        let order = levels
            .iter()
            .map(|level| BigUint::from(level.orbit.len()))
            .product();
        BsgsGroup {
            degree,
            levels,
            order,
        }
    }

    pub fn trivial(degree: usize) -> BsgsGroup {
        BsgsGroup::from_gens(&GenSet::trivial(degree))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Exact group order (product of transversal sizes).
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Group order as `u64` when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|level| level.point).collect()
    }

    /// All strong generators (deduplicated, identity omitted).
    pub fn strong_gens(&self) -> GenSet {
        let mut gens: Vec<Permutation> = Vec::new();
        for level in &self.levels {
            for g in &level.gens {
                if !gens.contains(g) {
                    gens.push(g.clone());
                }
            }
        }
        GenSet::new(self.degree, gens).expect("strong gens share the group degree")
    }

    /// Sifts `g` through the stabilizer chain; the residue is the identity
    /// exactly when `g` is a member.
    pub fn sift(&self, g: &Permutation) -> Permutation {
        assert_eq!(g.degree(), self.degree, "sift requires equal degrees");
        let mut h = g.clone();
        for level in &self.levels {
            let y = h.image(level.point);
            let slot = level.slot[y];
            if slot < 0 {
                return h;
            }
            h = h.compose(&level.rep_invs[slot as usize]);
        }
        h
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.sift(g).is_identity()
    }

    /// Allocation-free membership test on a raw image buffer; `buf` is
    /// consumed as scratch. Both buffers must have length `degree`.
    pub(crate) fn contains_image_buffer(
        &self,
        buf: &mut Vec<usize>,
        scratch: &mut Vec<usize>,
    ) -> bool {
        for level in &self.levels {
            let y = buf[level.point];
            let slot = level.slot[y];
            if slot < 0 {
                return false;
            }
            if y == level.point {
                continue; // representative is the identity
            }
            let inv = &level.rep_invs[slot as usize];
            for x in 0..self.degree {
                scratch[x] = inv.image(buf[x]);
            }
            std::mem::swap(buf, scratch);
        }
        buf.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Exactly uniform random element: an independently uniform coset
    /// representative is chosen at every level and the product taken.
    pub fn random_element(&self, rng: &mut RngStream) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let rep = &level.reps[rng.index(level.orbit.len())];
            g = g.compose(rep);
        }
        g
    }

    /// Iterates every element exactly once (transversal products).
    pub fn elements(&self) -> Elements<'_> {
        Elements::new(self)
    }
}

/// Adds `g` (known to fix the base points of levels `0..start`) as a strong
/// generator, extending the base when `g` fixes every current base point.
/// Returns the deepest level it was added to.
fn add_strong_generator(
    levels: &mut Vec<Level>,
    start: usize,
    g: Permutation,
    degree: usize,
) -> usize {
    debug_assert!(!g.is_identity());
    let mut j = start;
    while j < levels.len() && g.image(levels[j].point) == levels[j].point {
        j += 1;
    }
    if j == levels.len() {
        let moved = (0..degree)
            .find(|&x| g.image(x) != x)
            .expect("non-identity permutation moves a point");
        levels.push(Level::new(moved, degree));
    }
    for level in levels.iter_mut().take(j + 1).skip(start) {
        if !level.gens.contains(&g) {
            level.gens.push(g.clone());
            level.recompute_orbit(degree);
        }
    }
    j
}

/// Checks every Schreier generator of level `i` sifts to the identity through
/// the chain below. On failure the residue is adjoined and the level to
/// re-verify from is returned.
fn verify_level(levels: &mut Vec<Level>, i: usize, degree: usize) -> Option<usize> {
    let orbit_len = levels[i].orbit.len();
    let gen_count = levels[i].gens.len();
    for oi in 0..orbit_len {
        for gi in 0..gen_count {
            let schreier = {
                let level = &levels[i];
                let u = &level.reps[oi];
                let s = &level.gens[gi];
                let ys = s.image(level.orbit[oi]);
                let slot = level.slot[ys];
                debug_assert!(slot >= 0, "orbit closed under generators");
                u.compose(s).compose(&level.rep_invs[slot as usize])
            };
            if schreier.is_identity() {
                continue;
            }
            let mut residue = schreier;
            let mut stop = levels.len();
            for (m, level) in levels.iter().enumerate().skip(i + 1) {
                let y = residue.image(level.point);
                let slot = level.slot[y];
                if slot < 0 {
                    stop = m;
                    break;
                }
                residue = residue.compose(&level.rep_invs[slot as usize]);
            }
            if !residue.is_identity() {
                let j = add_strong_generator(levels, (i + 1).min(stop), residue, degree);
                return Some(j);
            }
        }
    }
    None
}

/// Iterator over all group elements in transversal-product order.
pub struct Elements<'a> {
    group: &'a BsgsGroup,
    digits: Vec<usize>,
    /// `partial[i]` is the product of the chosen representatives from the
    /// deepest level down to level `i`.
    partial: Vec<Permutation>,
    done: bool,
}

impl<'a> Elements<'a> {
    fn new(group: &'a BsgsGroup) -> Elements<'a> {
        let k = group.levels.len();
        let mut it = Elements {
            group,
            digits: vec![0; k],
            partial: vec![Permutation::identity(group.degree); k],
            done: false,
        };
        if k > 0 {
            it.recompute_from(k - 1);
        }
        it
    }

    fn recompute_from(&mut self, top: usize) {
        for j in (0..=top).rev() {
            let above = if j + 1 < self.group.levels.len() {
                self.partial[j + 1].clone()
            } else {
                Permutation::identity(self.group.degree)
            };
            self.partial[j] = above.compose(&self.group.levels[j].reps[self.digits[j]]);
        }
    }
}

impl<'a> Iterator for Elements<'a> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let result = if self.group.levels.is_empty() {
            Permutation::identity(self.group.degree)
        } else {
            self.partial[0].clone()
        };
        // odometer increment, level 0 fastest
        let mut i = 0;
        loop {
            if i >= self.group.levels.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < self.group.levels[i].orbit.len() {
                self.recompute_from(i);
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(result)
    }
}
