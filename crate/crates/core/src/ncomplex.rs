//! Finite-support N-complexes of finite-dimensional vector spaces.
//!
//! An [`NComplex`] stores a dense window of degrees `[lo, hi]` with one
//! dimension per degree and one differential per consecutive pair of degrees.
//! Every degree outside the window is the zero space, and every differential
//! touching a zero space is the zero map of the matching shape.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result, Violation};
use crate::exactla::{Matrix, PrimeField};

/// The indecomposable `M_i^l`: one-dimensional on `[start, start + length]`
/// with identity differentials inside the segment.
///
/// Ordering is lexicographic in `(start, length)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Indec {
    pub start: i64,
    pub length: usize,
}

impl Indec {
    pub fn new(start: i64, length: usize) -> Self {
        Indec { start, length }
    }

    /// Last degree where the module is nonzero.
    pub fn end(self) -> i64 {
        self.start + self.length as i64
    }

    /// Projective (equivalently injective) iff the segment has maximal length.
    pub fn is_projective(self, order: usize) -> bool {
        self.length + 1 == order
    }

    pub(crate) fn check(self, order: usize) -> Result<()> {
        if self.length >= order {
            return Err(Error::LengthOutOfRange {
                length: self.length,
                max: order - 1,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Indec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[{}]^{}", self.start, self.length)
    }
}

/// A finite multiset of indecomposables with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SummandMultiset {
    entries: BTreeMap<Indec, usize>,
}

impl SummandMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `count` copies of `indec`. Adding zero copies is a no-op.
    pub fn insert(&mut self, indec: Indec, count: usize) {
        if count > 0 {
            *self.entries.entry(indec).or_insert(0) += count;
        }
    }

    pub fn multiplicity(&self, indec: Indec) -> usize {
        self.entries.get(&indec).copied().unwrap_or(0)
    }

    /// Entries in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Indec, usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct indecomposables.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Sum of all multiplicities.
    pub fn total_multiplicity(&self) -> usize {
        self.entries.values().sum()
    }

    /// The entries with `length < order - 1`.
    pub fn non_projective(&self, order: usize) -> SummandMultiset {
        self.iter()
            .filter(|(m, _)| !m.is_projective(order))
            .collect()
    }

    pub fn is_projective(&self, order: usize) -> bool {
        self.iter().all(|(m, _)| m.is_projective(order))
    }

    /// Degreewise dimension of the direct sum, zero degrees omitted.
    pub fn dimension_vector(&self) -> BTreeMap<i64, usize> {
        let mut dims = BTreeMap::new();
        for (m, n) in self.iter() {
            for d in m.start..=m.end() {
                *dims.entry(d).or_insert(0) += n;
            }
        }
        dims
    }
}

impl FromIterator<(Indec, usize)> for SummandMultiset {
    fn from_iter<I: IntoIterator<Item = (Indec, usize)>>(iter: I) -> Self {
        let mut ms = SummandMultiset::new();
        for (m, n) in iter {
            ms.insert(m, n);
        }
        ms
    }
}

/// One line per entry, `M[i]^l x n`, in lexicographic order.
impl fmt::Display for SummandMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, n) in self.iter() {
            writeln!(f, "{m} x {n}")?;
        }
        Ok(())
    }
}

/// A finite-support N-complex over a prime field.
///
/// Values built through [`NComplex::from_parts`] are shape-coherent but may
/// violate the nilpotency law; [`NComplex::validate`] decides that. All other
/// constructors return valid complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NComplex {
    field: PrimeField,
    order: usize,
    lo: i64,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

fn check_order(order: usize) -> Result<()> {
    if order < 2 {
        return Err(Error::InvalidOrder(order));
    }
    Ok(())
}

impl NComplex {
    /// Checks the order, the fields and the shape coherence of the maps, but
    /// not the nilpotency law.
    pub fn from_parts(
        field: PrimeField,
        order: usize,
        lo: i64,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        check_order(order)?;
        let expected = dims.len().saturating_sub(1);
        if maps.len() != expected {
            return Err(Violation::MapCount {
                expected,
                found: maps.len(),
            }
            .into());
        }
        for (k, m) in maps.iter().enumerate() {
            if m.field() != field {
                return Err(Error::FieldMismatch(field.modulus(), m.field().modulus()));
            }
            let want = (dims[k + 1], dims[k]);
            if m.shape() != want {
                return Err(Violation::Shape {
                    degree: lo + k as i64,
                    expected: want,
                    found: m.shape(),
                }
                .into());
            }
        }
        let lo = if dims.is_empty() { 0 } else { lo };
        Ok(NComplex {
            field,
            order,
            lo,
            dims,
            maps,
        })
    }

    /// Like [`NComplex::from_parts`], additionally requiring the nilpotency law.
    pub fn new(
        field: PrimeField,
        order: usize,
        lo: i64,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        let m = Self::from_parts(field, order, lo, dims, maps)?;
        m.validate()?;
        Ok(m)
    }

    pub fn zero(field: PrimeField, order: usize) -> Result<Self> {
        Self::from_parts(field, order, 0, Vec::new(), Vec::new())
    }

    /// The indecomposable `M_start^length`.
    pub fn indecomposable(field: PrimeField, order: usize, start: i64, length: usize) -> Result<Self> {
        check_order(order)?;
        Indec::new(start, length).check(order)?;
        let maps = vec![Matrix::identity(field, 1); length];
        Self::from_parts(field, order, start, vec![1; length + 1], maps)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// The nilpotency order N.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Lowest degree of the stored window (0 for an empty window).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Stored dimensions, `dims()[k]` being the degree `lo() + k`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Stored differentials, `maps()[k]` leaving degree `lo() + k`.
    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// The stored window of degrees, `None` when no degrees are stored.
    pub fn window(&self) -> Option<RangeInclusive<i64>> {
        if self.dims.is_empty() {
            None
        } else {
            Some(self.lo..=self.lo + self.dims.len() as i64 - 1)
        }
    }

    /// Smallest and largest degree with nonzero dimension.
    pub fn support(&self) -> Option<(i64, i64)> {
        let first = self.dims.iter().position(|&d| d > 0)?;
        let last = self.dims.iter().rposition(|&d| d > 0)?;
        Some((self.lo + first as i64, self.lo + last as i64))
    }

    pub fn dim(&self, degree: i64) -> usize {
        let k = degree - self.lo;
        if k < 0 {
            return 0;
        }
        self.dims.get(k as usize).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// The differential `d_degree`, of shape `dim(degree + 1) x dim(degree)`.
    pub fn differential(&self, degree: i64) -> Matrix {
        let k = degree - self.lo;
        if k >= 0 && (k as usize) < self.maps.len() {
            return self.maps[k as usize].clone();
        }
        Matrix::zeros(self.field, self.dim(degree + 1), self.dim(degree))
    }

    /// The composite `d_{start+steps-1} ∘ … ∘ d_start`; the identity of
    /// `dim(start)` when `steps` is zero.
    pub fn composite(&self, start: i64, steps: usize) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.dim(start));
        for k in 0..steps as i64 {
            if acc.rows() == 0 || acc.cols() == 0 {
                return Matrix::zeros(self.field, self.dim(start + steps as i64), self.dim(start));
            }
            acc = self
                .differential(start + k)
                .multiply(&acc)
                .expect("differential shapes are coherent");
        }
        acc
    }

    /// Nonzero dimensions by degree.
    pub fn dimension_vector(&self) -> BTreeMap<i64, usize> {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(k, &d)| (self.lo + k as i64, d))
            .collect()
    }

    /// Checks shape coherence, then that every run of N consecutive
    /// differentials composes to zero. Reports the first violating start degree.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let expected = self.dims.len().saturating_sub(1);
        if self.maps.len() != expected {
            return Err(Violation::MapCount {
                expected,
                found: self.maps.len(),
            });
        }
        for (k, m) in self.maps.iter().enumerate() {
            let want = (self.dims[k + 1], self.dims[k]);
            if m.shape() != want {
                return Err(Violation::Shape {
                    degree: self.lo + k as i64,
                    expected: want,
                    found: m.shape(),
                });
            }
        }
        let n = self.order as i64;
        let last = self.lo + self.dims.len() as i64 - 1;
        for start in self.lo..=last - n {
            if !self.composite(start, self.order).is_zero() {
                return Err(Violation::Nilpotency { start });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    fn check_compatible(&self, other: &NComplex) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        Ok(())
    }

    /// Builds a complex over the window `[lo, hi]` from per-degree dimension and
    /// differential callbacks.
    pub(crate) fn from_fn(
        field: PrimeField,
        order: usize,
        window: Option<(i64, i64)>,
        dim: impl Fn(i64) -> usize,
        map: impl Fn(i64) -> Matrix,
    ) -> Result<Self> {
        let Some((lo, hi)) = window else {
            return Self::zero(field, order);
        };
        let dims = (lo..=hi).map(&dim).collect();
        let maps = (lo..hi).map(map).collect();
        Self::from_parts(field, order, lo, dims, maps)
    }

    pub fn direct_sum(&self, other: &NComplex) -> Result<NComplex> {
        self.check_compatible(other)?;
        let window = match (self.window(), other.window()) {
            (None, None) => None,
            (Some(w), None) | (None, Some(w)) => Some((*w.start(), *w.end())),
            (Some(a), Some(b)) => Some(((*a.start()).min(*b.start()), (*a.end()).max(*b.end()))),
        };
        Self::from_fn(
            self.field,
            self.order,
            window,
            |d| self.dim(d) + other.dim(d),
            |d| {
                self.differential(d)
                    .block_diagonal(&other.differential(d))
                    .expect("same field")
            },
        )
    }

    /// Translates every degree by `t`.
    pub fn shift(&self, t: i64) -> NComplex {
        let mut out = self.clone();
        if !out.dims.is_empty() {
            out.lo += t;
        }
        out
    }

    /// Drops zero-dimensional degrees at both ends of the window.
    pub fn trimmed(&self) -> NComplex {
        match self.support() {
            None => NComplex::zero(self.field, self.order).expect("order already checked"),
            Some((lo, hi)) => {
                let a = (lo - self.lo) as usize;
                let b = (hi - self.lo) as usize;
                NComplex {
                    field: self.field,
                    order: self.order,
                    lo,
                    dims: self.dims[a..=b].to_vec(),
                    maps: self.maps[a..b].to_vec(),
                }
            }
        }
    }

    /// Conjugates every degree by a random invertible matrix, giving an
    /// isomorphic complex in a different basis.
    pub fn change_basis(&self, seed: u64) -> NComplex {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.change_basis_with(&mut rng)
    }

    fn change_basis_with<R: Rng>(&self, rng: &mut R) -> NComplex {
        let bases: Vec<Matrix> = self
            .dims
            .iter()
            .map(|&d| Matrix::random_invertible_with(self.field, d, rng))
            .collect();
        let inverses: Vec<Matrix> = bases
            .iter()
            .map(|b| b.inverse().expect("drawn invertible"))
            .collect();
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(k, m)| {
                bases[k + 1]
                    .multiply(m)
                    .and_then(|x| x.multiply(&inverses[k]))
                    .expect("shapes are coherent")
            })
            .collect();
        NComplex {
            maps,
            ..self.clone()
        }
    }

    /// The direct sum of the listed indecomposables in lexicographic order,
    /// optionally presented in a random basis drawn from `seed`.
    pub fn assemble(
        summands: &SummandMultiset,
        field: PrimeField,
        order: usize,
        seed: Option<u64>,
    ) -> Result<NComplex> {
        check_order(order)?;
        let mut acc = NComplex::zero(field, order)?;
        for (m, n) in summands.iter() {
            m.check(order)?;
            let block = NComplex::indecomposable(field, order, m.start, m.length)?;
            for _ in 0..n {
                acc = acc.direct_sum(&block)?;
            }
        }
        Ok(match seed {
            Some(s) => acc.change_basis(s),
            None => acc,
        })
    }
}

/// A random multiset of at most `max_total` summands with starts in `window`
/// and lengths uniform in `[0, order - 1]`.
pub fn random_multiset(
    order: usize,
    window: RangeInclusive<i64>,
    max_total: usize,
    seed: u64,
) -> Result<SummandMultiset> {
    check_order(order)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_multiset_with(&mut rng, order, window, max_total)
}

fn random_multiset_with<R: Rng>(
    rng: &mut R,
    order: usize,
    window: RangeInclusive<i64>,
    max_total: usize,
) -> Result<SummandMultiset> {
    if window.is_empty() {
        return Err(Error::Shape("empty degree window".into()));
    }
    let total = rng.gen_range(0..=max_total);
    Ok((0..total)
        .map(|_| {
            let start = rng.gen_range(window.clone());
            let length = rng.gen_range(0..order);
            (Indec::new(start, length), 1)
        })
        .collect())
}

/// A random valid N-complex with its ground-truth decomposition: a random
/// multiset of summands, assembled, then presented in a random basis.
pub fn random_ncomplex(
    field: PrimeField,
    order: usize,
    window: RangeInclusive<i64>,
    max_total: usize,
    seed: u64,
) -> Result<(NComplex, SummandMultiset)> {
    check_order(order)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let summands = random_multiset_with(&mut rng, order, window, max_total)?;
    let plain = NComplex::assemble(&summands, field, order, None)?;
    Ok((plain.change_basis_with(&mut rng), summands))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn zero_complex_validates() {
        let z = NComplex::zero(f(5), 3).unwrap();
        assert!(z.validate().is_ok());
        assert!(z.dimension_vector().is_empty());
        assert!(NComplex::zero(f(5), 1).is_err());
    }

    #[test]
    fn indecomposable_examples() {
        let m = NComplex::indecomposable(f(5), 3, 0, 0).unwrap();
        assert_eq!(m.dimension_vector(), BTreeMap::from([(0, 1)]));
        assert!(m.maps().is_empty());

        let m = NComplex::indecomposable(f(5), 3, 2, 2).unwrap();
        assert_eq!(m.dimension_vector(), BTreeMap::from([(2, 1), (3, 1), (4, 1)]));
        assert_eq!(m.maps(), &[Matrix::identity(f(5), 1), Matrix::identity(f(5), 1)]);
        assert!(m.validate().is_ok());

        let m = NComplex::indecomposable(f(7), 4, -1, 3).unwrap();
        assert_eq!(m.window(), Some(-1..=2));
        assert!(m.validate().is_ok());

        assert!(matches!(
            NComplex::indecomposable(f(7), 4, 0, 4),
            Err(Error::LengthOutOfRange { .. })
        ));
    }

    #[test]
    fn nilpotency_violation_is_located() {
        let one = Matrix::identity(f(5), 1);
        let m = NComplex::from_parts(f(5), 2, 0, vec![1, 1, 1], vec![one.clone(), one]).unwrap();
        assert_eq!(m.validate(), Err(Violation::Nilpotency { start: 0 }));

        let one = Matrix::identity(f(5), 1);
        let m = NComplex::from_parts(f(5), 2, 5, vec![0, 1, 1, 1], vec![Matrix::zeros(f(5), 1, 0), one.clone(), one])
            .unwrap();
        assert_eq!(m.validate(), Err(Violation::Nilpotency { start: 6 }));
    }

    #[test]
    fn shape_errors_come_first() {
        let bad = Matrix::zeros(f(5), 2, 1);
        let err = NComplex::from_parts(f(5), 2, 0, vec![1, 1], vec![bad]).unwrap_err();
        assert!(matches!(err, Error::Invalid(Violation::Shape { degree: 0, .. })));
        let err = NComplex::from_parts(f(5), 2, 0, vec![1, 1], vec![]).unwrap_err();
        assert!(matches!(err, Error::Invalid(Violation::MapCount { .. })));
    }

    #[test]
    fn direct_sum_examples() {
        let a = NComplex::indecomposable(f(5), 3, 0, 1).unwrap();
        let z = NComplex::zero(f(5), 3).unwrap();
        assert_eq!(a.direct_sum(&z).unwrap(), a);

        let s = NComplex::indecomposable(f(5), 3, 0, 0).unwrap();
        let ss = s.direct_sum(&s).unwrap();
        assert_eq!(ss.dimension_vector(), BTreeMap::from([(0, 2)]));

        let other = NComplex::indecomposable(f(7), 3, 0, 0).unwrap();
        assert!(a.direct_sum(&other).is_err());
        let other = NComplex::indecomposable(f(5), 4, 0, 0).unwrap();
        assert!(a.direct_sum(&other).is_err());
    }

    #[test]
    fn assemble_examples() {
        let field = f(5);
        let empty = NComplex::assemble(&SummandMultiset::new(), field, 3, None).unwrap();
        assert!(empty.is_zero());

        let ms: SummandMultiset = [(Indec::new(0, 1), 1)].into_iter().collect();
        assert_eq!(
            NComplex::assemble(&ms, field, 3, None).unwrap(),
            NComplex::indecomposable(field, 3, 0, 1).unwrap()
        );

        let ms: SummandMultiset = [(Indec::new(0, 1), 2), (Indec::new(1, 0), 1)].into_iter().collect();
        let m = NComplex::assemble(&ms, field, 3, Some(7)).unwrap();
        assert_eq!(m.dimension_vector(), BTreeMap::from([(0, 2), (1, 3)]));
        assert!(m.validate().is_ok());

        let bad: SummandMultiset = [(Indec::new(0, 3), 1)].into_iter().collect();
        assert!(NComplex::assemble(&bad, field, 3, None).is_err());
    }

    #[test]
    fn shift_examples() {
        let m = NComplex::indecomposable(f(5), 3, 1, 2).unwrap();
        assert_eq!(m.shift(0), m);
        assert_eq!(m.shift(4), NComplex::indecomposable(f(5), 3, 5, 2).unwrap());
        assert_eq!(m.shift(3).shift(-3), m);
    }

    #[test]
    fn random_examples() {
        let field = f(7);
        let (z, ms) = random_ncomplex(field, 3, 0..=4, 0, 9).unwrap();
        assert!(z.is_zero());
        assert!(ms.is_empty());
        let a = random_ncomplex(field, 4, -2..=3, 8, 11).unwrap();
        let b = random_ncomplex(field, 4, -2..=3, 8, 11).unwrap();
        assert_eq!(a, b);
        assert!(random_ncomplex(field, 4, 3..=2, 8, 11).is_err());
    }

    #[test]
    fn composite_crossing_support_is_zero_of_right_shape() {
        let m = NComplex::indecomposable(f(5), 4, 0, 2).unwrap();
        assert_eq!(m.composite(-1, 2), Matrix::zeros(f(5), 1, 0));
        assert_eq!(m.composite(0, 2), Matrix::identity(f(5), 1));
        assert_eq!(m.composite(1, 2), Matrix::zeros(f(5), 0, 1));
        assert_eq!(m.composite(5, 0).shape(), (0, 0));
    }

    #[test]
    fn trimming_drops_empty_ends() {
        let z = Matrix::zeros(f(5), 1, 0);
        let m = NComplex::from_parts(f(5), 2, -3, vec![0, 1], vec![z]).unwrap();
        let t = m.trimmed();
        assert_eq!(t.window(), Some(-2..=-2));
        assert_eq!(t, NComplex::indecomposable(f(5), 2, -2, 0).unwrap());
    }

    #[test]
    fn multiset_rendering() {
        let ms: SummandMultiset = [(Indec::new(1, 0), 1), (Indec::new(-1, 2), 3)].into_iter().collect();
        assert_eq!(ms.to_string(), "M[-1]^2 x 3\nM[1]^0 x 1\n");
        assert_eq!(ms.total_multiplicity(), 4);
    }

    fn complex_strategy() -> impl Strategy<Value = (NComplex, SummandMultiset)> {
        (2usize..6, prop::sample::select(vec![2u64, 3, 5, 7]), -3i64..3, 0usize..8, any::<u64>())
            .prop_map(|(order, p, lo, max, seed)| {
                random_ncomplex(f(p), order, lo..=lo + 4, max, seed).unwrap()
            })
    }

    proptest! {
        #[test]
        fn random_complexes_validate((m, ms) in complex_strategy()) {
            prop_assert!(m.validate().is_ok());
            prop_assert_eq!(m.dimension_vector(), ms.dimension_vector());
            // Every window of N consecutive differentials vanishes, degree by degree.
            for start in m.lo() - 1..=m.lo() + m.dims().len() as i64 {
                prop_assert!(m.composite(start, m.order()).is_zero());
            }
        }

        #[test]
        fn indecomposables_validate(order in 2usize..8, start in -5i64..5, l in 0usize..8) {
            let l = l % order;
            prop_assert!(NComplex::indecomposable(f(3), order, start, l).unwrap().validate().is_ok());
        }

        #[test]
        fn direct_sums_validate(
            (a, _) in complex_strategy(),
            lo in -3i64..3,
            max in 0usize..6,
            seed in any::<u64>(),
        ) {
            let (b, _) = random_ncomplex(a.field(), a.order(), lo..=lo + 3, max, seed).unwrap();
            let s = a.direct_sum(&b).unwrap();
            prop_assert!(s.validate().is_ok());
            let mut expected = a.dimension_vector();
            for (d, n) in b.dimension_vector() {
                *expected.entry(d).or_insert(0) += n;
            }
            prop_assert_eq!(s.dimension_vector(), expected);
        }

        #[test]
        fn shift_translates_dimensions((m, _) in complex_strategy(), t in -10i64..10) {
            let shifted: BTreeMap<i64, usize> =
                m.dimension_vector().into_iter().map(|(d, n)| (d + t, n)).collect();
            prop_assert_eq!(m.shift(t).dimension_vector(), shifted);
        }
    }
}
