use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::snf::{smith_summary, SmithSummary};
use crate::sparse::SparseMatrix;
use crate::LinalgError;

/// A finitely generated abelian group `ℤ^rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `d₁ | … | d_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FGAbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FGAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { rank, torsion: Vec::new() }
    }

    /// Normalizes arbitrary cyclic orders into an invariant-factor chain.
    /// An order of 0 contributes a free summand, orders ±1 vanish.
    pub fn new(rank: usize, cyclic_orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut rank = rank;
        let mut orders = Vec::new();
        for d in cyclic_orders {
            let d = d.abs();
            if d.is_zero() {
                rank += 1;
            } else if !d.is_one() {
                orders.push(d);
            }
        }
        for i in 0..orders.len() {
            for j in i + 1..orders.len() {
                let g = orders[i].gcd(&orders[j]);
                let l = &orders[i] / &g * &orders[j];
                orders[i] = g;
                orders[j] = l;
            }
        }
        orders.retain(|d| !d.is_one());
        orders.sort();
        FGAbelianGroup { rank, torsion: orders }
    }

    pub fn from_small(rank: usize, torsion: &[u64]) -> Self {
        Self::new(rank, torsion.iter().map(|&d| BigInt::from(d)))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(self.rank + other.rank, self.torsion.iter().chain(&other.torsion).cloned())
    }

    /// `self ⊗ ℤ/m`.
    pub fn tensor_zmod(&self, m: &BigInt) -> Self {
        let orders = std::iter::repeat_n(m.clone(), self.rank).chain(self.torsion.iter().map(|d| d.gcd(m)));
        Self::new(0, orders)
    }

    /// `Tor(self, ℤ/m)`.
    pub fn tor_zmod(&self, m: &BigInt) -> Self {
        Self::new(0, self.torsion.iter().map(|d| d.gcd(m)))
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == d).count();
            parts.push(if run == 1 { format!("Z/{d}") } else { format!("(Z/{d})^{run}") });
            i += run;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl std::str::FromStr for FGAbelianGroup {
    type Err = LinalgError;

    /// Parses the display form: `0`, or `+`-separated summands `Z`, `Z^r`, `Z/d`, `(Z/d)^k`.
    fn from_str(s: &str) -> Result<Self, LinalgError> {
        let bad = || LinalgError::Parse(s.to_string());
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut rank = 0;
        let mut torsion = Vec::new();
        for part in s.split(['+', '⊕']).map(str::trim) {
            let (base, power) = match part.rsplit_once('^') {
                Some((b, p)) => (b.trim(), p.trim().parse::<usize>().map_err(|_| bad())?),
                None => (part, 1),
            };
            let base = base.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(base);
            match base.split_once('/') {
                None if base == "Z" => rank += power,
                Some(("Z", d)) => {
                    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                    if d < BigInt::from(2) {
                        return Err(bad());
                    }
                    torsion.extend(std::iter::repeat_n(d, power));
                }
                _ => return Err(bad()),
            }
        }
        Ok(Self::new(rank, torsion))
    }
}

/// Invariant factors serialize as JSON numbers, falling back to strings past `u64`.
enum FactorRepr {
    Small(u64),
    Big(String),
}

impl From<&BigInt> for FactorRepr {
    fn from(d: &BigInt) -> Self {
        match d.to_u64() {
            Some(x) => FactorRepr::Small(x),
            None => FactorRepr::Big(d.to_string()),
        }
    }
}

impl Serialize for FactorRepr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            FactorRepr::Small(x) => s.serialize_u64(*x),
            FactorRepr::Big(x) => s.serialize_str(x),
        }
    }
}

impl Serialize for FGAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FGAbelianGroup", 2)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("torsion", &self.torsion.iter().map(FactorRepr::from).collect::<Vec<_>>())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for FGAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            rank: usize,
            #[serde(default)]
            torsion: Vec<u64>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.torsion.iter().any(|&t| t < 2) {
            return Err(de::Error::custom("torsion factors must be at least 2"));
        }
        if raw.torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(de::Error::custom("torsion factors must form a divisibility chain"));
        }
        Ok(FGAbelianGroup::from_small(raw.rank, &raw.torsion))
    }
}

/// A bounded chain complex of free abelian groups, `C_lo ← … ← C_hi`.
///
/// `boundary(n)` maps `C_n → C_{n-1}`; columns index the basis of `C_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex<T> {
    lo: i64,
    ranks: Vec<usize>,
    boundaries: Vec<SparseMatrix<T>>,
}

impl<T: Scalar> ChainComplex<T> {
    /// `boundaries[k]` is `d_{lo+k+1}`; there is one fewer boundary than rank.
    pub fn new(lo: i64, ranks: Vec<usize>, boundaries: Vec<SparseMatrix<T>>) -> Result<Self, LinalgError> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} ranks need {} boundaries, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.ncols() != ranks[k + 1] || d.nrows() != ranks[k] {
                return Err(LinalgError::DimensionMismatch(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    lo + k as i64 + 1,
                    d.nrows(),
                    d.ncols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        Ok(ChainComplex { lo, ranks, boundaries })
    }

    /// Builds and checks `d∘d = 0`.
    pub fn new_checked(lo: i64, ranks: Vec<usize>, boundaries: Vec<SparseMatrix<T>>) -> Result<Self, LinalgError> {
        let c = Self::new(lo, ranks, boundaries)?;
        c.validate()?;
        Ok(c)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn rank_at(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.ranks[(n - self.lo) as usize]
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d_n`, or `None` when it maps to or from a zero module outside the range.
    pub fn boundary(&self, n: i64) -> Option<&SparseMatrix<T>> {
        if n <= self.lo || n > self.hi() {
            None
        } else {
            Some(&self.boundaries[(n - self.lo - 1) as usize])
        }
    }

    pub fn validate(&self) -> Result<(), LinalgError> {
        for n in self.lo + 2..=self.hi() {
            let (Some(a), Some(b)) = (self.boundary(n - 1), self.boundary(n)) else { continue };
            if !a.mul(b)?.is_zero() {
                return Err(LinalgError::NotAComplex { degree: n });
            }
        }
        Ok(())
    }

    fn smith_of(&self, n: i64) -> SmithSummary {
        match self.boundary(n) {
            Some(d) => smith_summary(d),
            None => SmithSummary { rank: 0, invariants: Vec::new() },
        }
    }

    /// `H_n` from the Smith data of `d_n` and `d_{n+1}`.
    ///
    /// Exact for `n < hi`; at `n = hi` it reports `ker d_hi`, the homology of
    /// the complex truncated there.
    pub fn homology(&self, n: i64) -> FGAbelianGroup {
        let out = self.smith_of(n);
        let inc = self.smith_of(n + 1);
        homology_from(self.rank_at(n), &out, &inc)
    }

    /// `H_n` for every `n` in `lo..=upto`, computing each Smith form once.
    pub fn homology_upto(&self, upto: i64) -> Vec<FGAbelianGroup> {
        let top = upto.min(self.hi());
        let smiths: Vec<SmithSummary> = (self.lo..=top + 1).map(|n| self.smith_of(n)).collect();
        (self.lo..=upto)
            .map(|n| {
                if n > top {
                    return FGAbelianGroup::zero();
                }
                let k = (n - self.lo) as usize;
                homology_from(self.rank_at(n), &smiths[k], &smiths[k + 1])
            })
            .collect()
    }

    pub fn map_scalars<U: Scalar>(&self) -> Option<ChainComplex<U>> {
        Some(ChainComplex {
            lo: self.lo,
            ranks: self.ranks.clone(),
            boundaries: self.boundaries.iter().map(|d| d.try_convert()).collect::<Option<_>>()?,
        })
    }
}

fn homology_from(dim: usize, outgoing: &SmithSummary, incoming: &SmithSummary) -> FGAbelianGroup {
    FGAbelianGroup::new(dim - outgoing.rank - incoming.rank, incoming.invariants.iter().cloned())
}

/// Homology with `ℤ/m` coefficients from integral homology in consecutive
/// degrees, by the universal coefficient theorem for free complexes.
/// `integral[0]` must be the lowest degree of the complex.
pub fn universal_coefficients_zmod(integral: &[FGAbelianGroup], m: &BigInt) -> Vec<FGAbelianGroup> {
    (0..integral.len())
        .map(|n| {
            let tensor = integral[n].tensor_zmod(m);
            if n == 0 {
                tensor
            } else {
                tensor.direct_sum(&integral[n - 1].tor_zmod(m))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sm(rows: &[&[i64]]) -> SparseMatrix<i64> {
        SparseMatrix::from_dense_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn parses_display_form() {
        for g in [FGAbelianGroup::zero(), FGAbelianGroup::free(1), FGAbelianGroup::from_small(2, &[2, 2, 6]), FGAbelianGroup::from_small(0, &[6])] {
            assert_eq!(g.to_string().parse::<FGAbelianGroup>().unwrap(), g);
        }
        assert_eq!("Z/2 + Z/3".parse::<FGAbelianGroup>().unwrap(), FGAbelianGroup::from_small(0, &[6]));
        assert_eq!("Z ⊕ Z".parse::<FGAbelianGroup>().unwrap(), FGAbelianGroup::free(2));
        for bad in ["", "Q", "Z/1", "Z^x", "(Z/2"] {
            assert!(bad.parse::<FGAbelianGroup>().is_err(), "{bad}");
        }
    }

    #[test]
    fn invariant_factor_normalization() {
        let g = FGAbelianGroup::from_small(1, &[4, 6, 1]);
        assert_eq!(g.torsion(), &[BigInt::from(2), BigInt::from(12)]);
        assert_eq!(g.to_string(), "Z + Z/2 + Z/12");
        let g = FGAbelianGroup::from_small(0, &[2, 3]);
        assert_eq!(g.torsion(), &[BigInt::from(6)]);
    }

    #[test]
    fn times_two() {
        let c = ChainComplex::new_checked(0, vec![1, 1], vec![sm(&[&[2]])]).unwrap();
        assert_eq!(c.homology(0), FGAbelianGroup::from_small(0, &[2]));
        assert_eq!(c.homology(1), FGAbelianGroup::zero());
    }

    #[test]
    fn zero_complex() {
        let c = ChainComplex::<i64>::new_checked(0, vec![0, 0, 0], vec![sm(&[]), sm(&[])]).unwrap();
        assert!(c.homology_upto(2).iter().all(FGAbelianGroup::is_zero));
    }

    #[test]
    fn d_squared_is_rejected() {
        let c = ChainComplex::new(0, vec![1, 1, 1], vec![sm(&[&[1]]), sm(&[&[1]])]).unwrap();
        assert_eq!(c.validate(), Err(LinalgError::NotAComplex { degree: 2 }));
    }

    #[test]
    fn circle_has_z_in_degrees_zero_and_one() {
        // three vertices, three edges 01, 02, 12
        let d1 = sm(&[&[-1, -1, 0], &[1, 0, -1], &[0, 1, 1]]);
        let c = ChainComplex::new_checked(0, vec![3, 3], vec![d1]).unwrap();
        assert_eq!(c.homology_upto(1), vec![FGAbelianGroup::free(1), FGAbelianGroup::free(1)]);
    }

    #[test]
    fn universal_coefficients() {
        let hz = vec![FGAbelianGroup::free(1), FGAbelianGroup::from_small(0, &[2]), FGAbelianGroup::zero()];
        let h2 = universal_coefficients_zmod(&hz, &BigInt::from(2));
        assert_eq!(h2, vec![
            FGAbelianGroup::from_small(0, &[2]),
            FGAbelianGroup::from_small(0, &[2]),
            FGAbelianGroup::from_small(0, &[2])
        ]);
        let h3 = universal_coefficients_zmod(&hz, &BigInt::from(3));
        assert_eq!(h3[1], FGAbelianGroup::zero());
    }

    #[test]
    fn json_shape() {
        let g = FGAbelianGroup::from_small(2, &[2, 2]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"rank":2,"torsion":[2,2]}"#);
        assert_eq!(serde_json::from_str::<FGAbelianGroup>(&s).unwrap(), g);
        assert!(serde_json::from_str::<FGAbelianGroup>(r#"{"rank":0,"torsion":[4,2]}"#).is_err());
    }
}
