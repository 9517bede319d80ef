//! Finitely generated Puiseux monoids.
//!
//! A finitely generated submonoid of `Q≥0` is a rational multiple of a
//! submonoid of `N₀`: dividing by the rational gcd of the generators gives
//! integer generators with gcd 1, and multiplication by a positive rational
//! preserves factorizations and lengths. Queries are answered on that integer
//! image when it is small enough to tabulate, and by [`crate::solver`]
//! otherwise.

mod stream;

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::arith::{factor_biguint, is_prime};
use crate::solver::{self, Strategy};
use crate::{Error, FactorizationVector, IntSubmonoid, LengthSet, Limits, Rational, Result};

pub use stream::{has_zero_limit_point, AtomStream, InfimumBound, TriState};

/// Largest integer atom for which the integer image is tabulated.
const IMAGE_ATOM_CAP: u64 = 1 << 24;

/// An ascending, duplicate-free list of primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrimeSet(Vec<u64>);

impl PrimeSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut v: Vec<u64> = primes.into_iter().collect();
        if let Some(&bad) = v.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::domain(format!("{bad} is not prime")));
        }
        v.sort_unstable();
        v.dedup();
        Ok(PrimeSet(v))
    }

    pub fn empty() -> Self {
        PrimeSet(Vec::new())
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn is_disjoint(&self, other: &PrimeSet) -> bool {
        self.iter().all(|p| !other.contains(p))
    }

    pub fn intersection(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet(self.iter().filter(|&p| other.contains(p)).collect())
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        let mut v: Vec<u64> = self.iter().chain(other.iter()).collect();
        v.sort_unstable();
        v.dedup();
        PrimeSet(v)
    }

    pub(crate) fn insert(&mut self, p: u64) {
        if let Err(pos) = self.0.binary_search(&p) {
            self.0.insert(pos, p);
        }
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Primes dividing the denominator of at least one value.
///
/// ```
/// use puiseux::{puiseux::denominator_primes, Rational};
/// let s: Vec<Rational> = vec!["5/21".parse()?, "4/33".parse()?];
/// assert_eq!(denominator_primes(&s)?.as_slice(), &[3, 7, 11]);
/// # Ok::<(), puiseux::Error>(())
/// ```
pub fn denominator_primes<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Result<PrimeSet> {
    let mut out = PrimeSet::empty();
    for v in values {
        for (p, _) in factor_biguint(v.denom())? {
            out.insert(p);
        }
    }
    Ok(out)
}

/// Finite sets always have bounded denominators; an empty list trivially so.
pub fn is_bounded_denominators(gens: &[Rational]) -> bool {
    denominator_bound(gens).is_some() || gens.is_empty()
}

/// The lcm of the denominators, a uniform bound for every element of the
/// generated monoid (each element is an integer multiple of `1/lcm`).
pub fn denominator_bound(gens: &[Rational]) -> Option<BigUint> {
    if gens.is_empty() {
        return None;
    }
    Some(gens.iter().fold(BigUint::one(), |acc, g| acc.lcm(g.denom())))
}

/// A finitely generated Puiseux monoid, stored by its atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FGPuiseux {
    atoms: Vec<Rational>,
    scale_factor: Rational,
    integer_image: Option<IntSubmonoid>,
}

impl Serialize for FGPuiseux {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FGPuiseux", 2)?;
        st.serialize_field("atoms", &self.atoms)?;
        st.serialize_field("scale_factor", &self.scale_factor)?;
        st.end()
    }
}

impl FGPuiseux {
    /// The monoid generated by `gens`, reduced to its atoms.
    ///
    /// ```
    /// use puiseux::{FGPuiseux, Limits, Rational};
    /// let gens: Vec<Rational> = vec![Rational::from(1), "2/3".parse()?];
    /// let m = FGPuiseux::normalize(&gens, &Limits::default())?;
    /// assert_eq!(m.atoms(), &["2/3".parse()?, Rational::from(1)]);
    /// # Ok::<(), puiseux::Error>(())
    /// ```
    pub fn normalize(gens: &[Rational], limits: &Limits) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::domain("a monoid needs at least one generator"));
        }
        if gens.iter().any(Rational::is_zero) {
            return Err(Error::domain("generators must be positive"));
        }
        let mut sorted = gens.to_vec();
        sorted.sort();
        sorted.dedup();
        let scale = Rational::gcd_of(&sorted);

        if let Some(image) = Self::integer_generators(&sorted, &scale) {
            match IntSubmonoid::minimalize(&image) {
                Ok(n) => {
                    let atoms = n
                        .atoms()
                        .iter()
                        .map(|&a| Rational::from(a) * &scale)
                        .collect();
                    return Ok(FGPuiseux {
                        atoms,
                        scale_factor: scale,
                        integer_image: Some(n),
                    });
                }
                Err(e) if e.kind() == crate::ErrorKind::Resource => {}
                Err(e) => return Err(e),
            }
        }

        // Only smaller generators can sum to a given one.
        let mut atoms: Vec<Rational> = Vec::new();
        for g in sorted {
            if atoms.is_empty() || !solver::is_member(&atoms, &g, limits)? {
                atoms.push(g);
            }
        }
        let scale_factor = Rational::gcd_of(&atoms);
        Ok(FGPuiseux {
            atoms,
            scale_factor,
            integer_image: None,
        })
    }

    fn integer_generators(sorted: &[Rational], scale: &Rational) -> Option<Vec<u64>> {
        let image: Vec<u64> = sorted
            .iter()
            .map(|g| (g / scale).to_u64())
            .collect::<Option<_>>()?;
        (image[0] <= IMAGE_ATOM_CAP).then_some(image)
    }

    /// Atoms, strictly ascending.
    pub fn atoms(&self) -> &[Rational] {
        &self.atoms
    }

    pub fn min_atom(&self) -> &Rational {
        &self.atoms[0]
    }

    /// `gcd(numerators) / lcm(denominators)` of the atoms.
    pub fn scale_factor(&self) -> &Rational {
        &self.scale_factor
    }

    /// Atoms divided by the scale factor, when small enough to tabulate.
    pub fn integer_image(&self) -> Option<&IntSubmonoid> {
        self.integer_image.as_ref()
    }

    /// `q·M`.
    pub fn scale(&self, q: &Rational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::domain("scaling factor must be positive"));
        }
        Ok(FGPuiseux {
            atoms: self.atoms.iter().map(|a| a * q).collect(),
            scale_factor: &self.scale_factor * q,
            integer_image: self.integer_image.clone(),
        })
    }

    /// `x / scale_factor` as an index into the integer image, if `x` is an
    /// integer multiple of the scale factor that fits in a `u64`.
    fn image_index(&self, x: &Rational) -> ImageIndex {
        let y = x / &self.scale_factor;
        if !y.is_integer() {
            return ImageIndex::NotMultiple;
        }
        match (&self.integer_image, y.to_u64()) {
            (Some(_), Some(v)) => ImageIndex::Value(v),
            _ => ImageIndex::Untabulated,
        }
    }

    /// Membership of `x` in `M`. Only fails when `x` is too large for the
    /// configured caps.
    pub fn is_member(&self, x: &Rational, limits: &Limits) -> Result<bool> {
        match self.image_index(x) {
            ImageIndex::NotMultiple => Ok(false),
            ImageIndex::Value(v) => Ok(self.image().is_member(v)),
            ImageIndex::Untabulated => solver::is_member(&self.atoms, x, limits),
        }
    }

    /// `Z(x)` as exponent vectors over [`Self::atoms`], in lexicographic order.
    pub fn factorizations(&self, x: &Rational, limits: &Limits) -> Result<Vec<FactorizationVector>> {
        match self.image_index(x) {
            ImageIndex::NotMultiple => Ok(Vec::new()),
            ImageIndex::Value(v) => self.image().factorizations(v, limits),
            ImageIndex::Untabulated => Err(Error::Resource {
                what: "integer image for factorization enumeration",
                cap: IMAGE_ATOM_CAP,
            }),
        }
    }

    /// `L(x)`.
    pub fn length_set(&self, x: &Rational, limits: &Limits) -> Result<LengthSet> {
        match self.image_index(x) {
            ImageIndex::NotMultiple => Ok(LengthSet::empty()),
            ImageIndex::Value(v) => self.image().length_set(v, limits),
            ImageIndex::Untabulated => solver::length_set(&self.atoms, x, Strategy::Auto, limits),
        }
    }

    fn image(&self) -> &IntSubmonoid {
        self.integer_image.as_ref().expect("checked by image_index")
    }

    pub fn denominator_primes(&self) -> Result<PrimeSet> {
        denominator_primes(&self.atoms)
    }

    /// The `r > 0` with `self = r·other`, if any.
    ///
    /// Every isomorphism between such monoids is multiplication by a
    /// positive rational, and it sends atoms to atoms in order, so the only
    /// candidate is the ratio of the smallest atoms.
    ///
    /// ```
    /// use puiseux::{FGPuiseux, Limits, Rational};
    /// let lim = Limits::default();
    /// let q = |s: &str| s.parse::<Rational>().unwrap();
    /// let m = FGPuiseux::normalize(&[q("2"), q("3")], &lim)?;
    /// let n = FGPuiseux::normalize(&[q("8/5"), q("12/5")], &lim)?;
    /// assert_eq!(m.isomorphism_factor(&n), Some(q("5/4")));
    /// # Ok::<(), puiseux::Error>(())
    /// ```
    pub fn isomorphism_factor(&self, other: &FGPuiseux) -> Option<Rational> {
        if self.atoms.len() != other.atoms.len() {
            return None;
        }
        let r = self.min_atom() / other.min_atom();
        self.atoms
            .iter()
            .zip(&other.atoms)
            .all(|(a, b)| *a == b * &r)
            .then_some(r)
    }
}

enum ImageIndex {
    NotMultiple,
    Value(u64),
    Untabulated,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn m(gens: &[&str]) -> FGPuiseux {
        let g: Vec<Rational> = gens.iter().map(|s| q(s)).collect();
        FGPuiseux::normalize(&g, &Limits::default()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(m(&["1", "2/3"]).atoms(), &[q("2/3"), q("1")]);
        assert_eq!(m(&["1/2", "1"]).atoms(), &[q("1/2")]);
        assert_eq!(m(&["4/5"]).atoms(), &[q("4/5")]);
        assert_eq!(m(&["1", "2/3"]).scale_factor(), &q("1/3"));
        assert_eq!(m(&["1", "2/3"]).integer_image().unwrap().atoms(), &[2, 3]);
    }

    #[test]
    fn normalize_rejects_bad_input() {
        let lim = Limits::default();
        assert!(matches!(FGPuiseux::normalize(&[], &lim), Err(Error::Domain(_))));
        assert!(matches!(
            FGPuiseux::normalize(&[Rational::zero()], &lim),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn normalize_without_integer_image() {
        // Common denominator 2·3·5·…·47 has no small integer image.
        let primes = crate::arith::primes_up_to(47);
        let mut gens: Vec<Rational> = primes.iter().map(|&p| Rational::new(1u64, p).unwrap()).collect();
        gens.push(q("1/2") + q("1/3"));
        let monoid = FGPuiseux::normalize(&gens, &Limits::default()).unwrap();
        assert!(monoid.integer_image().is_none());
        assert_eq!(monoid.atoms().len(), primes.len());
        let lim = Limits::default();
        assert!(monoid.is_member(&q("5/6"), &lim).unwrap());
        assert!(!monoid.is_member(&q("1/4"), &lim).unwrap());
        assert_eq!(monoid.length_set(&q("5/6"), &lim).unwrap().as_slice(), &[2]);
    }

    #[test]
    fn scale_examples() {
        let n = m(&["2", "3"]);
        assert_eq!(n.scale(&q("4/5")).unwrap().atoms(), &[q("8/5"), q("12/5")]);
        assert_eq!(n.scale(&q("1")).unwrap(), n);
        assert_eq!(m(&["1"]).scale(&q("4/5")).unwrap().atoms(), &[q("4/5")]);
        assert!(n.scale(&Rational::zero()).is_err());
    }

    #[test]
    fn membership() {
        let n = m(&["1", "2/3"]);
        let lim = Limits::default();
        assert!(n.is_member(&q("5/3"), &lim).unwrap());
        assert!(!n.is_member(&q("1/3"), &lim).unwrap());
        assert!(!n.is_member(&q("1/2"), &lim).unwrap());
        assert!(n.is_member(&Rational::zero(), &lim).unwrap());
    }

    #[test]
    fn factorizations_and_lengths() {
        let lim = Limits::default();
        let n = m(&["1", "2/3"]);
        let z = n.factorizations(&q("2"), &lim).unwrap();
        let got: Vec<&[u64]> = z.iter().map(|f| f.exponents()).collect();
        // atoms ascending: (2/3, 1); so 3·(2/3) is (3, 0) and 1 + 1 is (0, 2).
        assert_eq!(got, vec![&[0, 2][..], &[3, 0][..]]);
        assert_eq!(n.length_set(&q("2"), &lim).unwrap().as_slice(), &[2, 3]);
        assert_eq!(m(&["4/5"]).length_set(&q("8/5"), &lim).unwrap().as_slice(), &[2]);
        assert_eq!(n.length_set(&Rational::zero(), &lim).unwrap().as_slice(), &[0]);
        assert_eq!(n.factorizations(&Rational::zero(), &lim).unwrap(), vec![FactorizationVector::new(vec![0, 0])]);
    }

    #[test]
    fn denominator_prime_examples() {
        assert_eq!(denominator_primes(&[q("1"), q("2/3")]).unwrap().as_slice(), &[3]);
        assert_eq!(denominator_primes(&[q("5/21"), q("4/33")]).unwrap().as_slice(), &[3, 7, 11]);
        assert!(denominator_primes(&[q("7")]).unwrap().is_empty());
    }

    #[test]
    fn isomorphism_examples() {
        assert_eq!(m(&["2", "3"]).isomorphism_factor(&m(&["8/5", "12/5"])), Some(q("5/4")));
        assert_eq!(m(&["1", "2/3"]).isomorphism_factor(&m(&["1", "2/3"])), Some(q("1")));
        assert_eq!(m(&["1", "2/3"]).isomorphism_factor(&m(&["1", "2/5"])), None);
    }

    #[test]
    fn bounded_denominators() {
        assert!(is_bounded_denominators(&[q("1"), q("2/3"), q("2/5")]));
        assert_eq!(denominator_bound(&[q("1"), q("2/3"), q("2/5")]), Some(BigUint::from(15u32)));
    }

    #[test]
    fn prime_set_ops() {
        let a = PrimeSet::new([7, 3, 3, 11]).unwrap();
        let b = PrimeSet::new([5, 7]).unwrap();
        assert_eq!(a.as_slice(), &[3, 7, 11]);
        assert_eq!(a.intersection(&b).as_slice(), &[7]);
        assert!(!a.is_disjoint(&b));
        assert!(PrimeSet::new([4]).is_err());
        assert_eq!(a.to_string(), "{3, 7, 11}");
    }
}
