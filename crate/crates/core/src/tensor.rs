//! The q-twisted tensor product of N-complexes and its fusion rules.
//!
//! Degree `i` of `A ⊗ B` is the direct sum of `A_j ⊗ B_r` over `j + r = i`,
//! and `d(x ⊗ y) = x ⊗ dy + q^r dx ⊗ y` for `y` of degree `r`. The product is
//! again an N-complex exactly when the q-binomial coefficients of order N
//! vanish, which holds when `q` has multiplicative order N.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::decompose::decompose;
use crate::error::{Error, Result, Violation};
use crate::exactla::{primitive_root_of_unity, Matrix, PrimeField, Scalar};
use crate::ncomplex::{Indec, NComplex, SummandMultiset};

/// An element of exact multiplicative order N.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootOfUnity {
    q: Scalar,
    order: usize,
}

impl RootOfUnity {
    /// Accepts `q` only if its multiplicative order is exactly `order`.
    pub fn new(q: Scalar, order: usize) -> Result<Self> {
        let actual = q.order().unwrap_or(0) as usize;
        if actual != order {
            return Err(Error::WrongRootOrder {
                q: q.value(),
                modulus: q.field().modulus(),
                actual,
                expected: order,
            });
        }
        Ok(RootOfUnity { q, order })
    }

    /// The smallest root of exact order `order` in `field`.
    pub fn primitive(field: PrimeField, order: usize) -> Result<Self> {
        Ok(RootOfUnity {
            q: primitive_root_of_unity(field, order)?,
            order,
        })
    }

    pub fn value(self) -> Scalar {
        self.q
    }

    pub fn order(self) -> usize {
        self.order
    }
}

/// `A ⊗ B` for a root of exact order N. The result is a valid N-complex.
pub fn tensor(a: &NComplex, b: &NComplex, q: &RootOfUnity) -> Result<NComplex> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch(a.order(), b.order()));
    }
    if q.order != a.order() {
        return Err(Error::OrderMismatch(q.order, a.order()));
    }
    twisted_tensor(a, b, q.q)
}

/// Offsets of the blocks `A_j ⊗ B_(i-j)` inside degree `i`, ascending in `j`.
struct Layout {
    offsets: BTreeMap<i64, usize>,
    dim: usize,
}

fn layout(a: &NComplex, b: &NComplex, degree: i64, left: (i64, i64)) -> Layout {
    let mut offsets = BTreeMap::new();
    let mut dim = 0;
    for j in left.0..=left.1 {
        let size = a.dim(j) * b.dim(degree - j);
        if size > 0 {
            offsets.insert(j, dim);
            dim += size;
        }
    }
    Layout { offsets, dim }
}

/// The twisted product for an arbitrary nonzero `q`, without any check on its
/// order. The result is shape-coherent but satisfies the nilpotency law only
/// for suitable `q`; use [`NComplex::validate`] to find out.
pub fn twisted_tensor(a: &NComplex, b: &NComplex, q: Scalar) -> Result<NComplex> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch(a.order(), b.order()));
    }
    let field = a.field();
    for other in [b.field(), q.field()] {
        if other != field {
            return Err(Error::FieldMismatch(field.modulus(), other.modulus()));
        }
    }
    let q_inv = q
        .inv()
        .ok_or_else(|| Error::Internal("twisting scalar must be nonzero".into()))?;
    let (Some(left), Some(right)) = (a.support(), b.support()) else {
        return NComplex::zero(field, a.order());
    };
    let (lo, hi) = (left.0 + right.0, left.1 + right.1);
    let layouts: Vec<Layout> = (lo..=hi + 1).map(|i| layout(a, b, i, left)).collect();
    let at = |i: i64| &layouts[(i - lo) as usize];

    let twist = |r: i64| -> u32 {
        if r >= 0 {
            q.pow(r as u64).value()
        } else {
            q_inv.pow(r.unsigned_abs()).value()
        }
    };

    NComplex::from_fn(
        field,
        a.order(),
        Some((lo, hi)),
        |i| at(i).dim,
        |i| {
            let (src, dst) = (at(i), at(i + 1));
            let mut m = Matrix::zeros(field, dst.dim, src.dim);
            for (&j, &from) in &src.offsets {
                let r = i - j;
                let (da, db) = (a.dim(j), b.dim(r));
                // x ⊗ dy lands in A_j ⊗ B_(r+1)
                if let Some(&to) = dst.offsets.get(&j) {
                    let d = b.differential(r);
                    let db_next = b.dim(r + 1);
                    for x in 0..da {
                        for y in 0..db {
                            for y2 in 0..db_next {
                                let v = d.entry(y2, y);
                                if v != 0 {
                                    m.set(to + x * db_next + y2, from + x * db + y, v);
                                }
                            }
                        }
                    }
                }
                // q^r dx ⊗ y lands in A_(j+1) ⊗ B_r
                if let Some(&to) = dst.offsets.get(&(j + 1)) {
                    let d = a.differential(j).scale(field.elem(twist(r) as i64));
                    let da_next = a.dim(j + 1);
                    for x in 0..da {
                        for x2 in 0..da_next {
                            let v = d.entry(x2, x);
                            if v == 0 {
                                continue;
                            }
                            for y in 0..db {
                                m.set(to + x2 * db + y, from + x * db + y, v);
                            }
                        }
                    }
                }
            }
            m
        },
    )
}

/// Closed-form decomposition of `M_i^u ⊗ M_j^v`.
pub fn clebsch_gordan(order: usize, i: i64, u: usize, j: i64, v: usize) -> Result<SummandMultiset> {
    if order < 2 {
        return Err(Error::InvalidOrder(order));
    }
    for length in [u, v] {
        Indec::new(0, length).check(order)?;
    }
    let start = i + j;
    let top = u + v;
    let mut out = SummandMultiset::new();
    // Past N - 1 the first `excess + 1` summands saturate to projectives.
    let excess = (top + 1).checked_sub(order);
    for l in 0..=u.min(v) {
        let length = match excess {
            Some(e) if l <= e => order - 1,
            _ => top - 2 * l,
        };
        out.insert(Indec::new(start + l as i64, length), 1);
    }
    Ok(out)
}

/// A tensor product whose computed decomposition disagrees with the closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionMismatch {
    pub left: Indec,
    pub right: Indec,
    pub expected: SummandMultiset,
    pub computed: std::result::Result<SummandMultiset, Error>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionReport {
    pub order: usize,
    pub modulus: u32,
    pub root: u32,
    pub cases: usize,
    pub mismatches: Vec<FusionMismatch>,
}

impl FusionReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Decomposes `M_i^u ⊗ M_j^v` for all starts in `window` and all lengths,
/// comparing each against [`clebsch_gordan`].
pub fn fusion_check(order: usize, modulus: u64, window: RangeInclusive<i64>) -> Result<FusionReport> {
    let field = PrimeField::new(modulus)?;
    let q = RootOfUnity::primitive(field, order)?;
    let mut cases = Vec::new();
    for i in window.clone() {
        for j in window.clone() {
            for u in 0..order {
                for v in 0..order {
                    cases.push((Indec::new(i, u), Indec::new(j, v)));
                }
            }
        }
    }
    let outcomes: Vec<Result<Option<FusionMismatch>>> = cases
        .par_iter()
        .map(|&(left, right)| {
            let expected = clebsch_gordan(order, left.start, left.length, right.start, right.length)?;
            let a = NComplex::indecomposable(field, order, left.start, left.length)?;
            let b = NComplex::indecomposable(field, order, right.start, right.length)?;
            let computed = tensor(&a, &b, &q).and_then(|t| decompose(&t));
            Ok((computed.as_ref() != Ok(&expected)).then_some(FusionMismatch {
                left,
                right,
                expected,
                computed,
            }))
        })
        .collect();
    let mut mismatches = Vec::new();
    for outcome in outcomes {
        mismatches.extend(outcome?);
    }
    Ok(FusionReport {
        order,
        modulus: field.modulus(),
        root: q.q.value(),
        cases: cases.len(),
        mismatches,
    })
}

/// Where the twisted product of indecomposables starting at 0 fails the
/// nilpotency law, for an arbitrary nonzero `q`.
pub fn diagnose_root(field: PrimeField, order: usize, q: Scalar) -> Result<Vec<(Indec, Indec, Violation)>> {
    let mut failures = Vec::new();
    for u in 0..order {
        for v in 0..order {
            let a = NComplex::indecomposable(field, order, 0, u)?;
            let b = NComplex::indecomposable(field, order, 0, v)?;
            if let Err(violation) = twisted_tensor(&a, &b, q)?.validate() {
                failures.push((Indec::new(0, u), Indec::new(0, v), violation));
            }
        }
    }
    Ok(failures)
}
