//! Homocyclic abelian kernels `(Z_m)^k` and their endomorphism matrices.
//!
//! `m = 0` selects the free module `Z^k` with plain integer arithmetic, where
//! the invertible matrices are exactly those of determinant ±1. All matrix
//! entries are kept canonical: reduced into `0..m` when `m > 0`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AbelianError {
    #[error("matrix of determinant {det} is not invertible modulo {modulus}")]
    NotInvertible { det: i64, modulus: u64 },
    #[error("cannot enumerate the infinite group {spec}")]
    InfiniteGroup { spec: String },
    #[error("group spec must look like z<m>^<k> with k >= 1, got {0:?}")]
    BadSpec(String),
}

/// The group `(Z_m)^k` (or `Z^k` when `m = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AbGroup {
    modulus: u64,
    rank: usize,
}

impl AbGroup {
    pub fn new(modulus: u64, rank: usize) -> AbGroup {
        assert!(rank >= 1, "rank must be at least 1");
        assert!(modulus != 1, "modulus 1 would make the group trivial");
        AbGroup { modulus, rank }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of elements, `None` for the infinite `Z^k`.
    pub fn order(&self) -> Option<usize> {
        if self.modulus == 0 {
            None
        } else {
            Some((self.modulus as usize).pow(self.rank as u32))
        }
    }

    pub fn zero(&self) -> AbVec {
        AbVec {
            group: *self,
            coords: vec![0; self.rank],
        }
    }

    pub fn vec(&self, coords: Vec<i64>) -> AbVec {
        assert_eq!(coords.len(), self.rank, "coordinate count must match rank");
        AbVec {
            group: *self,
            coords: coords.into_iter().map(|c| self.reduce(c)).collect(),
        }
    }

    fn reduce(&self, v: i64) -> i64 {
        if self.modulus == 0 {
            v
        } else {
            v.rem_euclid(self.modulus as i64)
        }
    }

    /// Enumerates all elements in lexicographic coordinate order (first
    /// coordinate most significant). Errors for the infinite `Z^k`.
    pub fn elements(&self) -> Result<Vec<AbVec>, AbelianError> {
        let order = self.order().ok_or_else(|| AbelianError::InfiniteGroup {
            spec: self.to_string(),
        })?;
        Ok((0..order).map(|r| self.unrank(r)).collect())
    }

    /// Lexicographic rank of an element; inverse of [`AbGroup::unrank`].
    pub fn rank_of(&self, v: &AbVec) -> usize {
        assert_eq!(v.group, *self);
        let m = self.modulus as usize;
        v.coords.iter().fold(0, |acc, &c| acc * m + c as usize)
    }

    pub fn unrank(&self, mut r: usize) -> AbVec {
        let m = self.modulus as usize;
        let mut coords = vec![0i64; self.rank];
        for i in (0..self.rank).rev() {
            coords[i] = (r % m) as i64;
            r /= m;
        }
        AbVec {
            group: *self,
            coords,
        }
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}^{}", self.modulus, self.rank)
    }
}

impl FromStr for AbGroup {
    type Err = AbelianError;

    /// Parses `z<m>^<k>`; the `^<k>` part defaults to rank 1.
    fn from_str(s: &str) -> Result<AbGroup, AbelianError> {
        let bad = || AbelianError::BadSpec(s.to_string());
        let rest = s
            .strip_prefix('z')
            .or_else(|| s.strip_prefix('Z'))
            .ok_or_else(bad)?;
        let (m_str, k_str) = match rest.split_once('^') {
            Some((m, k)) => (m, k),
            None => (rest, "1"),
        };
        let modulus: u64 = m_str.parse().map_err(|_| bad())?;
        let rank: usize = k_str.parse().map_err(|_| bad())?;
        if rank == 0 || modulus == 1 {
            return Err(bad());
        }
        Ok(AbGroup::new(modulus, rank))
    }
}

/// An element of an [`AbGroup`], with canonical coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbVec {
    group: AbGroup,
    coords: Vec<i64>,
}

impl AbVec {
    pub fn group(&self) -> AbGroup {
        self.group
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &AbVec) -> AbVec {
        assert_eq!(self.group, other.group, "group mismatch");
        self.group.vec(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &AbVec) -> AbVec {
        assert_eq!(self.group, other.group, "group mismatch");
        self.group.vec(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> AbVec {
        self.group.vec(self.coords.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for AbVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.coords.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", strs.join(", "))
    }
}

/// A k×k matrix over `Z_m`, acting on column vectors.
///
/// This is a plain endomorphism; [`ModMatrix::is_automorphism`] tells whether
/// it is invertible. Sums of automorphisms arise in the extension conditions
/// and are ordinary matrices — they are compared, never inverted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    group: AbGroup,
    entries: Vec<i64>, // row-major k×k
}

impl ModMatrix {
    pub fn identity(group: AbGroup) -> ModMatrix {
        let k = group.rank();
        let mut entries = vec![0; k * k];
        for i in 0..k {
            entries[i * k + i] = 1;
        }
        ModMatrix { group, entries }
    }

    pub fn from_entries(group: AbGroup, entries: Vec<i64>) -> ModMatrix {
        let k = group.rank();
        assert_eq!(entries.len(), k * k, "expected {} entries", k * k);
        ModMatrix {
            group,
            entries: entries.into_iter().map(|e| group.reduce(e)).collect(),
        }
    }

    pub fn group(&self) -> AbGroup {
        self.group
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.group.rank() + col]
    }

    pub fn is_identity(&self) -> bool {
        *self == ModMatrix::identity(self.group)
    }

    /// Matrix product `self * other` (apply `other` first on column vectors).
    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.group, other.group, "group mismatch");
        let k = self.group.rank();
        let mut entries = vec![0i64; k * k];
        for i in 0..k {
            for j in 0..k {
                let mut acc: i128 = 0;
                for l in 0..k {
                    acc += self.entries[i * k + l] as i128 * other.entries[l * k + j] as i128;
                }
                entries[i * k + j] = self.group.reduce_i128(acc);
            }
        }
        ModMatrix {
            group: self.group,
            entries,
        }
    }

    pub fn add(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.group, other.group, "group mismatch");
        ModMatrix::from_entries(
            self.group,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn apply(&self, v: &AbVec) -> AbVec {
        assert_eq!(self.group, v.group, "group mismatch");
        let k = self.group.rank();
        let coords = (0..k)
            .map(|i| {
                let acc: i128 = (0..k)
                    .map(|j| self.entries[i * k + j] as i128 * v.coords[j] as i128)
                    .sum();
                self.group.reduce_i128(acc)
            })
            .collect();
        AbVec {
            group: self.group,
            coords,
        }
    }

    /// Determinant, canonical mod m.
    pub fn det(&self) -> i64 {
        let k = self.group.rank();
        let det = det_laplace(&self.entries, k);
        self.group.reduce_i128(det)
    }

    /// Invertible over `Z_m` iff `gcd(det, m) = 1`; over `Z` iff `det = ±1`.
    pub fn is_automorphism(&self) -> bool {
        let d = self.det();
        if self.group.modulus == 0 {
            d == 1 || d == -1
        } else {
            gcd(d.unsigned_abs(), self.group.modulus) == 1
        }
    }

    /// Inverse via the adjugate times the modular inverse of the determinant.
    pub fn invert(&self) -> Result<ModMatrix, AbelianError> {
        let k = self.group.rank();
        let m = self.group.modulus;
        let det = self.det();
        let det_inv: i128 = if m == 0 {
            match det {
                1 => 1,
                -1 => -1,
                _ => return Err(AbelianError::NotInvertible { det, modulus: m }),
            }
        } else {
            mod_inverse(det, m).ok_or(AbelianError::NotInvertible { det, modulus: m })? as i128
        };
        let mut entries = vec![0i64; k * k];
        for i in 0..k {
            for j in 0..k {
                // adjugate(i, j) = cofactor(j, i)
                let minor = minor_matrix(&self.entries, k, j, i);
                let cof = det_laplace(&minor, k - 1) * if (i + j) % 2 == 0 { 1 } else { -1 };
                entries[i * k + j] = self.group.reduce_i128(cof * det_inv);
            }
        }
        Ok(ModMatrix {
            group: self.group,
            entries,
        })
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.group.rank();
        for i in 0..k {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = (0..k).map(|j| self.entry(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl AbGroup {
    fn reduce_i128(&self, v: i128) -> i64 {
        if self.modulus == 0 {
            i64::try_from(v).expect("integer matrix entry overflow")
        } else {
            v.rem_euclid(self.modulus as i128) as i64
        }
    }
}

fn minor_matrix(entries: &[i64], k: usize, skip_row: usize, skip_col: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity((k - 1) * (k - 1));
    for r in 0..k {
        if r == skip_row {
            continue;
        }
        for c in 0..k {
            if c == skip_col {
                continue;
            }
            out.push(entries[r * k + c]);
        }
    }
    out
}

fn det_laplace(entries: &[i64], k: usize) -> i128 {
    match k {
        0 => 1,
        1 => entries[0] as i128,
        2 => entries[0] as i128 * entries[3] as i128 - entries[1] as i128 * entries[2] as i128,
        _ => {
            let mut acc: i128 = 0;
            for c in 0..k {
                let minor = minor_matrix(entries, k, 0, c);
                let term = entries[c] as i128 * det_laplace(&minor, k - 1);
                acc += if c % 2 == 0 { term } else { -term };
            }
            acc
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
fn mod_inverse(a: i64, m: u64) -> Option<i64> {
    let m = m as i64;
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m))
}

/// Draws a uniformly random invertible matrix by rejection sampling (`m > 0`),
/// or a random product of elementary unimodular operations (`m = 0`).
pub fn random_automorphism<R: Rng>(group: AbGroup, rng: &mut R) -> ModMatrix {
    let k = group.rank();
    if group.modulus() > 0 {
        let m = group.modulus() as i64;
        loop {
            let entries: Vec<i64> = (0..k * k).map(|_| rng.gen_range(0..m)).collect();
            let cand = ModMatrix::from_entries(group, entries);
            if cand.is_automorphism() {
                return cand;
            }
        }
    } else {
        // Z^k: accumulate elementary operations, each of determinant ±1.
        let mut mat = ModMatrix::identity(group);
        for _ in 0..3 * k {
            let mut entries = {
                let id = ModMatrix::identity(group);
                id.entries
            };
            match rng.gen_range(0..3u8) {
                0 => {
                    // add c × row j to row i
                    let i = rng.gen_range(0..k);
                    let mut j = rng.gen_range(0..k);
                    if k > 1 {
                        while j == i {
                            j = rng.gen_range(0..k);
                        }
                        entries[i * k + j] = rng.gen_range(-2..=2);
                    }
                }
                1 => {
                    // negate a row
                    let i = rng.gen_range(0..k);
                    entries[i * k + i] = -1;
                }
                _ => {
                    // swap two rows
                    if k > 1 {
                        let i = rng.gen_range(0..k);
                        let mut j = rng.gen_range(0..k);
                        while j == i {
                            j = rng.gen_range(0..k);
                        }
                        entries[i * k + i] = 0;
                        entries[j * k + j] = 0;
                        entries[i * k + j] = 1;
                        entries[j * k + i] = 1;
                    }
                }
            }
            mat = mat.mul(&ModMatrix::from_entries(group, entries));
        }
        debug_assert!(mat.is_automorphism());
        mat
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn spec_string_round_trip() {
        let g: AbGroup = "z3^2".parse().unwrap();
        assert_eq!(g, AbGroup::new(3, 2));
        assert_eq!(g.to_string(), "z3^2");
        let g: AbGroup = "z5".parse().unwrap();
        assert_eq!(g, AbGroup::new(5, 1));
        let g: AbGroup = "z0^2".parse().unwrap();
        assert_eq!(g.order(), None);
        assert!("q3^2".parse::<AbGroup>().is_err());
        assert!("z3^0".parse::<AbGroup>().is_err());
        assert!("z1^2".parse::<AbGroup>().is_err());
    }

    #[test]
    fn unimodular_inverse_mod_4() {
        let g = AbGroup::new(4, 2);
        let m = ModMatrix::from_entries(g, vec![1, 1, 0, 1]);
        assert!(m.is_automorphism());
        let inv = m.invert().unwrap();
        assert_eq!(inv.entries(), &[1, 3, 0, 1]);
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn det_2_mod_4_is_rejected() {
        let g = AbGroup::new(4, 2);
        let m = ModMatrix::from_entries(g, vec![2, 0, 0, 1]);
        assert!(!m.is_automorphism());
        assert_eq!(
            m.invert().unwrap_err(),
            AbelianError::NotInvertible { det: 2, modulus: 4 }
        );
    }

    #[test]
    fn integer_matrices_need_det_pm_one() {
        let g = AbGroup::new(0, 2);
        let m = ModMatrix::from_entries(g, vec![1, 5, 0, -1]);
        assert_eq!(m.det(), -1);
        assert!(m.is_automorphism());
        let inv = m.invert().unwrap();
        assert!(m.mul(&inv).is_identity());
        let bad = ModMatrix::from_entries(g, vec![2, 0, 0, 1]);
        assert!(!bad.is_automorphism());
        assert!(bad.invert().is_err());
    }

    #[test]
    fn vector_arithmetic_is_canonical() {
        let g = AbGroup::new(3, 2);
        let a = g.vec(vec![2, 2]);
        let b = g.vec(vec![2, 1]);
        assert_eq!(a.add(&b).coords(), &[1, 0]);
        assert_eq!(a.sub(&b).coords(), &[0, 1]);
        assert_eq!(a.neg().coords(), &[1, 1]);
    }

    #[test]
    fn rank_unrank_is_lexicographic() {
        let g = AbGroup::new(3, 2);
        let elems = g.elements().unwrap();
        assert_eq!(elems.len(), 9);
        assert_eq!(elems[0].coords(), &[0, 0]);
        assert_eq!(elems[1].coords(), &[0, 1]);
        assert_eq!(elems[3].coords(), &[1, 0]);
        for (r, v) in elems.iter().enumerate() {
            assert_eq!(g.rank_of(v), r);
        }
        assert!(AbGroup::new(0, 1).elements().is_err());
    }

    #[test]
    fn random_automorphisms_are_automorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = AbGroup::new(3, 2);
        for _ in 0..1000 {
            assert!(random_automorphism(g, &mut rng).is_automorphism());
        }
        let free = AbGroup::new(0, 2);
        for _ in 0..200 {
            assert!(random_automorphism(free, &mut rng).is_automorphism());
        }
    }
}
