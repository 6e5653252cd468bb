//! Krull–Schmidt multisets from amplitude cohomology.
//!
//! The non-projective summands are peeled off the amplitude cohomology table
//! in lexicographic order: the smallest nonzero entry `(i, a)` (smallest degree,
//! then smallest amplitude) is produced only by summands `M_i^(a-1)`, and its
//! dimension is their multiplicity. Projective summands have no cohomology, so
//! their multiplicities come from the dimension vector that is left over.

use std::collections::BTreeMap;

use crate::cohomology::{ah_indec, ah_table, AHTable};
use crate::error::{Error, Result};
use crate::ncomplex::{Indec, NComplex, SummandMultiset};

/// The non-projective part of the decomposition of any finite complex whose
/// amplitude cohomology is `table`.
pub fn peel_nonprojectives(table: &AHTable, order: usize) -> Result<SummandMultiset> {
    if table.order() != order {
        return Err(Error::OrderMismatch(table.order(), order));
    }
    let mut rest = table.clone();
    let mut found = SummandMultiset::new();
    while let Some(((start, amplitude), count)) = rest.first() {
        let summand = Indec::new(start, amplitude - 1);
        for j in summand.start..=summand.end() {
            for a in 1..order {
                if ah_indec(order, summand.start, summand.length, a, j)? == 1 {
                    rest.take(j, a, count)?;
                }
            }
        }
        found.insert(summand, count);
    }
    Ok(found)
}

/// The full Krull–Schmidt multiset of a valid complex, projective summands included.
pub fn decompose(m: &NComplex) -> Result<SummandMultiset> {
    m.validate()?;
    let order = m.order();
    let mut found = peel_nonprojectives(&ah_table(m), order)?;

    let mut residual: BTreeMap<i64, i64> = m
        .dimension_vector()
        .into_iter()
        .map(|(d, n)| (d, n as i64))
        .collect();
    for (d, n) in found.dimension_vector() {
        let slot = residual.entry(d).or_insert(0);
        *slot -= n as i64;
        if *slot < 0 {
            return Err(Error::Residual(d));
        }
    }

    for (s, n) in projective_starts(&residual, order)? {
        found.insert(Indec::new(s, order - 1), n);
    }
    Ok(found)
}

/// Multiplicities of the projectives `M_s^(N-1)` whose dimension vector is
/// exactly `residual`. Each covers `[s, s + N - 1]`; scanning upward, the count
/// starting at `s` is whatever the earlier segments leave uncovered.
fn projective_starts(residual: &BTreeMap<i64, i64>, order: usize) -> Result<BTreeMap<i64, usize>> {
    let mut starts: BTreeMap<i64, usize> = BTreeMap::new();
    let Some((&lo, &hi)) = residual.keys().next().zip(residual.keys().next_back()) else {
        return Ok(starts);
    };
    let span = order as i64 - 1;
    for s in lo..=hi {
        let covering: i64 = starts.range(s - span..s).map(|(_, &n)| n as i64).sum();
        let here = residual.get(&s).copied().unwrap_or(0) - covering;
        if here < 0 {
            return Err(Error::Residual(s));
        }
        if here > 0 {
            if s + span > hi {
                return Err(Error::Residual(hi + 1));
            }
            starts.insert(s, here as usize);
        }
    }
    Ok(starts)
}

fn check_pair(a: &NComplex, b: &NComplex) -> Result<()> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch(a.order(), b.order()));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field().modulus(), b.field().modulus()));
    }
    Ok(())
}

/// Isomorphism test by comparing decompositions.
pub fn iso(a: &NComplex, b: &NComplex) -> Result<bool> {
    check_pair(a, b)?;
    Ok(decompose(a)? == decompose(b)?)
}

/// Isomorphism up to projective summands.
pub fn stably_equal(a: &NComplex, b: &NComplex) -> Result<bool> {
    check_pair(a, b)?;
    Ok(peel_nonprojectives(&ah_table(a), a.order())? == peel_nonprojectives(&ah_table(b), b.order())?)
}
