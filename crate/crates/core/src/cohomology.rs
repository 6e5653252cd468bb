//! Amplitude cohomology and the contraction to ordinary 2-complexes.
//!
//! For an N-complex `M`, an amplitude `a` in `[1, N-1]` and a degree `i`,
//! the amplitude cohomology is `Ker(d^a at i) / Im(d^(N-a) into i)`. The
//! image always lies in the kernel because the composite is `d^N = 0`, so its
//! dimension is the nullity of one composite minus the rank of the other.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ncomplex::NComplex;

/// Dimensions of amplitude cohomology keyed by `(degree, amplitude)`.
/// Absent keys are zero; stored values are always positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AHTable {
    order: usize,
    entries: BTreeMap<(i64, usize), usize>,
}

impl AHTable {
    pub fn new(order: usize) -> Self {
        AHTable {
            order,
            entries: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, degree: i64, amplitude: usize) -> usize {
        self.entries.get(&(degree, amplitude)).copied().unwrap_or(0)
    }

    /// Sets an entry, removing it when `dim` is zero.
    pub fn set(&mut self, degree: i64, amplitude: usize, dim: usize) -> Result<()> {
        check_amplitude(self.order, amplitude)?;
        if dim == 0 {
            self.entries.remove(&(degree, amplitude));
        } else {
            self.entries.insert((degree, amplitude), dim);
        }
        Ok(())
    }

    /// Nonzero entries as `((degree, amplitude), dim)`, sorted by degree then amplitude.
    pub fn iter(&self) -> impl Iterator<Item = ((i64, usize), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Whether row `amplitude` is identically zero.
    pub fn row_vanishes(&self, amplitude: usize) -> bool {
        self.entries.keys().all(|&(_, a)| a != amplitude)
    }

    /// Pointwise sum.
    pub fn sum(&self, other: &AHTable) -> Result<AHTable> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        let mut out = self.clone();
        for ((i, a), n) in other.iter() {
            *out.entries.entry((i, a)).or_insert(0) += n;
        }
        Ok(out)
    }

    /// Lowest and highest degree with a nonzero entry.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.entries.keys().map(|k| k.0).min()?;
        let hi = self.entries.keys().map(|k| k.0).max()?;
        Some((lo, hi))
    }

    pub(crate) fn first(&self) -> Option<((i64, usize), usize)> {
        self.entries.iter().next().map(|(&k, &v)| (k, v))
    }

    /// Subtracts `n` from an entry, failing if it would go negative.
    pub(crate) fn take(&mut self, degree: i64, amplitude: usize, n: usize) -> Result<()> {
        let current = self.get(degree, amplitude);
        if current < n {
            return Err(Error::InconsistentTable { degree, amplitude });
        }
        self.set(degree, amplitude, current - n)
    }
}

pub(crate) fn check_amplitude(order: usize, amplitude: usize) -> Result<()> {
    if amplitude == 0 || amplitude >= order {
        return Err(Error::AmplitudeOutOfRange {
            amplitude,
            max: order.saturating_sub(1),
        });
    }
    Ok(())
}

/// `dim (AH)_a^i(M)`.
pub fn ah_dim(m: &NComplex, amplitude: usize, degree: i64) -> Result<usize> {
    check_amplitude(m.order(), amplitude)?;
    let coamplitude = m.order() - amplitude;
    let kernel = m.composite(degree, amplitude).nullity();
    let image = m.composite(degree - coamplitude as i64, coamplitude).rank();
    // Only an input violating the nilpotency law can make this negative.
    Ok(kernel.saturating_sub(image))
}

/// All amplitudes at one degree, reusing partial composites.
fn ah_column(m: &NComplex, degree: i64) -> Vec<((i64, usize), usize)> {
    let n = m.order();
    let dim = m.dim(degree);
    if dim == 0 {
        return Vec::new();
    }
    // kernel_rank[a] = rank of d^a leaving the degree
    let mut kernel_rank = vec![0; n];
    let mut acc = m.differential(degree);
    for a in 1..n {
        if a > 1 {
            acc = m
                .differential(degree + a as i64 - 1)
                .multiply(&acc)
                .expect("coherent shapes");
        }
        kernel_rank[a] = acc.rank();
    }
    // image_rank[b] = rank of d^b arriving at the degree
    let mut image_rank = vec![0; n];
    let mut acc = m.differential(degree - 1);
    for b in 1..n {
        if b > 1 {
            acc = acc
                .multiply(&m.differential(degree - b as i64))
                .expect("coherent shapes");
        }
        image_rank[b] = acc.rank();
    }
    (1..n)
        .map(|a| ((degree, a), (dim - kernel_rank[a]).saturating_sub(image_rank[n - a])))
        .filter(|&(_, d)| d > 0)
        .collect()
}

/// The full amplitude cohomology table.
pub fn ah_table(m: &NComplex) -> AHTable {
    let mut table = AHTable::new(m.order());
    let Some((lo, hi)) = m.support() else {
        return table;
    };
    let columns: Vec<_> = (lo..=hi)
        .into_par_iter()
        .map(|d| ah_column(m, d))
        .collect();
    table.entries.extend(columns.into_iter().flatten());
    table
}

/// Closed form of `dim (AH)_a^j(M_i^l)`: one exactly when `j` lies in
/// `[i, i + l]` and `l + 1 - (j - i) <= a <= N - 1 - (j - i)`, zero otherwise.
pub fn ah_indec(order: usize, start: i64, length: usize, amplitude: usize, degree: i64) -> Result<usize> {
    if order < 2 {
        return Err(Error::InvalidOrder(order));
    }
    if length >= order {
        return Err(Error::LengthOutOfRange {
            length,
            max: order - 1,
        });
    }
    check_amplitude(order, amplitude)?;
    let offset = degree - start;
    if offset < 0 || offset > length as i64 {
        return Ok(0);
    }
    let a = amplitude as i64;
    let lower = length as i64 + 1 - offset;
    let upper = order as i64 - 1 - offset;
    Ok(usize::from(lower <= a && a <= upper))
}

/// Whether row `amplitude` of the amplitude cohomology vanishes.
pub fn is_acyclic(m: &NComplex, amplitude: usize) -> Result<bool> {
    check_amplitude(m.order(), amplitude)?;
    let Some((lo, hi)) = m.support() else {
        return Ok(true);
    };
    for d in lo..=hi {
        if ah_dim(m, amplitude, d)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Projectivity, tested through acyclicity at amplitude 1.
pub fn is_projective(m: &NComplex) -> bool {
    is_acyclic(m, 1).expect("amplitude 1 is in range for N >= 2")
}

/// Original degree sitting in degree `n` of the contraction `C_{e,a}`.
pub fn contraction_degree(order: usize, initial: i64, amplitude: usize, n: i64) -> i64 {
    initial + n.div_euclid(2) * order as i64 + if n.rem_euclid(2) == 1 { amplitude as i64 } else { 0 }
}

/// Rewrites `(e, a)` as `(e', a', offset)` with `0 <= e' < N - a'` such that
/// degree `n` of `C_{e,a}` is degree `n + offset` of `C_{e',a'}`.
pub fn canonical_contraction(order: usize, initial: i64, amplitude: usize) -> Result<(i64, usize, i64)> {
    check_amplitude(order, amplitude)?;
    let n = order as i64;
    let turns = initial.div_euclid(n);
    let rest = initial.rem_euclid(n);
    let coamplitude = (order - amplitude) as i64;
    if rest < coamplitude {
        Ok((rest, amplitude, 2 * turns))
    } else {
        Ok((rest - coamplitude, order - amplitude, 2 * turns + 1))
    }
}

/// The 2-complex `C_{e,a}M`: `M_e` in degree 0, with alternating `d^a` and
/// `d^(N-a)` composites. Any integer `e` is accepted; the window covers the
/// support of `M`.
pub fn contract(m: &NComplex, initial: i64, amplitude: usize) -> Result<NComplex> {
    check_amplitude(m.order(), amplitude)?;
    let order = m.order();
    let degree = |n: i64| contraction_degree(order, initial, amplitude, n);
    let window = m.support().and_then(|(lo, hi)| {
        // The degree map is strictly increasing with slope about N/2.
        let mut n_lo = 2 * (lo - initial).div_euclid(order as i64) - 2;
        while degree(n_lo) < lo {
            n_lo += 1;
        }
        let mut n_hi = 2 * (hi - initial).div_euclid(order as i64) + 2;
        while degree(n_hi) > hi {
            n_hi -= 1;
        }
        (n_lo <= n_hi).then_some((n_lo, n_hi))
    });
    NComplex::from_fn(
        m.field(),
        2,
        window,
        |n| m.dim(degree(n)),
        |n| m.composite(degree(n), (degree(n + 1) - degree(n)) as usize),
    )
}

/// Ordinary cohomology `dim Ker d_n / Im d_{n-1}` of a 2-complex.
pub fn h2_dim(c: &NComplex, degree: i64) -> Result<usize> {
    if c.order() != 2 {
        return Err(Error::OrderMismatch(c.order(), 2));
    }
    Ok(c.dim(degree) - c.differential(degree).rank() - c.differential(degree - 1).rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{Matrix, PrimeField};
    use crate::ncomplex::{random_ncomplex, Indec, SummandMultiset};
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn indec(order: usize, i: i64, l: usize) -> NComplex {
        NComplex::indecomposable(f(7), order, i, l).unwrap()
    }

    #[test]
    fn length_one_at_order_three() {
        for i in -2..3 {
            let m = indec(3, i, 1);
            for j in i - 3..i + 4 {
                for a in 1..3 {
                    let expected = usize::from((a, j) == (2, i) || (a, j) == (1, i + 1));
                    assert_eq!(ah_dim(&m, a, j).unwrap(), expected, "a={a} j={j}");
                    assert_eq!(ah_indec(3, i, 1, a, j).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn projective_indecomposable_has_no_cohomology() {
        for n in 2..7 {
            let m = indec(n, 0, n - 1);
            assert!(ah_table(&m).is_empty());
            assert!(is_projective(&m));
            for a in 1..n {
                for j in -2..n as i64 + 2 {
                    assert_eq!(ah_indec(n, 0, n - 1, a, j).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn simple_is_not_projective() {
        for n in 2..6 {
            assert!(!is_projective(&indec(n, 0, 0)));
        }
    }

    #[test]
    fn zero_complex_table_is_empty() {
        let z = NComplex::zero(f(5), 4).unwrap();
        assert!(ah_table(&z).is_empty());
        assert_eq!(ah_dim(&z, 2, 0).unwrap(), 0);
        assert!(is_acyclic(&z, 3).unwrap());
    }

    #[test]
    fn amplitude_range_is_checked() {
        let m = indec(3, 0, 1);
        assert!(ah_dim(&m, 0, 0).is_err());
        assert!(ah_dim(&m, 3, 0).is_err());
        assert!(ah_indec(3, 0, 3, 1, 0).is_err());
        assert!(is_acyclic(&m, 3).is_err());
        assert!(contract(&m, 0, 0).is_err());
    }

    #[test]
    fn closed_form_matches_direct_computation() {
        for n in 2..=6 {
            for i in -2..=2 {
                for l in 0..n {
                    let m = indec(n, i, l);
                    for a in 1..n {
                        for j in i - 1..=i + l as i64 + 1 {
                            assert_eq!(
                                ah_dim(&m, a, j).unwrap(),
                                ah_indec(n, i, l, a, j).unwrap(),
                                "N={n} i={i} l={l} a={a} j={j}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn table_matches_pointwise_dims() {
        let (m, _) = random_ncomplex(f(5), 4, -1..=3, 8, 3).unwrap();
        let t = ah_table(&m);
        for j in -6..8 {
            for a in 1..4 {
                assert_eq!(t.get(j, a), ah_dim(&m, a, j).unwrap());
            }
        }
    }

    #[test]
    fn contraction_of_length_one() {
        let m = indec(3, 0, 1);
        let c = contract(&m, 0, 1).unwrap();
        assert!(c.validate().is_ok());
        assert_eq!(h2_dim(&c, 0).unwrap(), 0);
        // The odd degree sees amplitude 2 at degree 1, which is zero for M_0^1.
        assert_eq!(h2_dim(&c, 1).unwrap(), ah_dim(&m, 2, 1).unwrap());
        assert_eq!(h2_dim(&c, 1).unwrap(), 0);
        let shifted = contract(&m, -1, 2).unwrap();
        assert_eq!(h2_dim(&shifted, 1).unwrap(), 1);
        assert!(contract(&NComplex::zero(f(7), 3).unwrap(), 0, 1).unwrap().is_zero());
    }

    #[test]
    fn h2_examples() {
        let field = f(5);
        let exact = NComplex::new(field, 2, 0, vec![1, 1], vec![Matrix::identity(field, 1)]).unwrap();
        assert_eq!(h2_dim(&exact, 0).unwrap(), 0);
        assert_eq!(h2_dim(&exact, 1).unwrap(), 0);

        let ms: SummandMultiset = [(Indec::new(0, 0), 2), (Indec::new(1, 0), 3)].into_iter().collect();
        let flat = NComplex::assemble(&ms, field, 2, Some(1)).unwrap();
        assert_eq!(h2_dim(&flat, 0).unwrap(), 2);
        assert_eq!(h2_dim(&flat, 1).unwrap(), 3);

        assert!(h2_dim(&indec(3, 0, 0), 0).is_err());
    }

    #[test]
    fn canonical_contraction_examples() {
        // N = 5, a = 2, b = 3: e = 4 >= b becomes e' = 1 with a' = 3.
        assert_eq!(canonical_contraction(5, 4, 2).unwrap(), (1, 3, 1));
        assert_eq!(canonical_contraction(5, 2, 2).unwrap(), (2, 2, 0));
        assert_eq!(canonical_contraction(5, 7, 2).unwrap(), (2, 2, 2));
        assert_eq!(canonical_contraction(5, -1, 2).unwrap(), (1, 3, -1));
    }

    proptest! {
        #[test]
        fn additivity(
            order in 2usize..6,
            seeds in (any::<u64>(), any::<u64>()),
            los in (-3i64..3, -3i64..3),
        ) {
            let (a, _) = random_ncomplex(f(5), order, los.0..=los.0 + 3, 6, seeds.0).unwrap();
            let (b, _) = random_ncomplex(f(5), order, los.1..=los.1 + 3, 6, seeds.1).unwrap();
            let sum = ah_table(&a.direct_sum(&b).unwrap());
            prop_assert_eq!(sum, ah_table(&a).sum(&ah_table(&b)).unwrap());
        }

        #[test]
        fn isomorphism_invariance(order in 2usize..6, seed in any::<u64>(), basis in any::<u64>()) {
            let ms = crate::ncomplex::random_multiset(order, -2..=2, 7, seed).unwrap();
            let plain = NComplex::assemble(&ms, f(3), order, None).unwrap();
            let moved = NComplex::assemble(&ms, f(3), order, Some(basis)).unwrap();
            prop_assert_eq!(ah_table(&plain), ah_table(&moved));
        }

        #[test]
        fn contraction_lemma(order in 3usize..6, seed in any::<u64>()) {
            let (m, _) = random_ncomplex(f(7), order, 0..=5, 8, seed).unwrap();
            for a in 1..order {
                let b = order - a;
                for e in 0..b as i64 {
                    let c = contract(&m, e, a).unwrap();
                    prop_assert!(c.validate().is_ok());
                    for i in -2i64..5 {
                        let j = e + i * order as i64;
                        prop_assert_eq!(h2_dim(&c, 2 * i).unwrap(), ah_dim(&m, a, j).unwrap());
                        prop_assert_eq!(h2_dim(&c, 2 * i + 1).unwrap(), ah_dim(&m, b, j + a as i64).unwrap());
                    }
                }
            }
        }

        #[test]
        fn any_initial_condition_is_a_shifted_canonical_one(
            order in 2usize..6,
            seed in any::<u64>(),
            e in -12i64..12,
            a in 1usize..6,
        ) {
            let a = 1 + (a - 1) % (order - 1);
            let (m, _) = random_ncomplex(f(5), order, -3..=3, 8, seed).unwrap();
            let (e2, a2, offset) = canonical_contraction(order, e, a).unwrap();
            prop_assert!(0 <= e2 && e2 < (order - a2) as i64);
            let direct = contract(&m, e, a).unwrap().trimmed();
            let canonical = contract(&m, e2, a2).unwrap().shift(-offset).trimmed();
            prop_assert_eq!(direct, canonical);
        }
    }
}
