//! Chain-map spaces, projective resolutions and Ext in the positive category.
//!
//! The indecomposable projectives of positive N-complexes are the
//! `M_s^(N-1)` with `s >= 0`, each generated by one vector in degree `s`. A
//! direct sum of them is described here by its list of generator degrees, and
//! a chain map out of `M_s^(N-1)` is determined by the image of its generator.

use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField};
use crate::ncomplex::{Indec, NComplex};

fn check_pair(a: &NComplex, b: &NComplex) -> Result<()> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch(a.order(), b.order()));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field().modulus(), b.field().modulus()));
    }
    Ok(())
}

/// Dimension of the space of chain maps `A -> B`.
///
/// The unknowns are the entries of every component `f_i : A_i -> B_i`, the
/// equations are `f_(i+1) d^A_i = d^B_i f_i`.
pub fn hom_dim(a: &NComplex, b: &NComplex) -> Result<usize> {
    check_pair(a, b)?;
    let (Some(sa), Some(sb)) = (a.support(), b.support()) else {
        return Ok(0);
    };
    let (lo, hi) = (sa.0.max(sb.0), sa.1.min(sb.1));
    if lo > hi {
        return Ok(0);
    }
    let mut offsets = Vec::new();
    let mut unknowns = 0;
    for d in lo..=hi {
        offsets.push(unknowns);
        unknowns += a.dim(d) * b.dim(d);
    }
    let var = |d: i64, r: usize, c: usize| -> Option<usize> {
        if d < lo || d > hi {
            return None;
        }
        Some(offsets[(d - lo) as usize] + r * a.dim(d) + c)
    };

    let field = a.field();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for d in lo - 1..=hi {
        let (da, db) = (a.differential(d), b.differential(d));
        for r in 0..b.dim(d + 1) {
            for c in 0..a.dim(d) {
                let mut row = vec![0u32; unknowns];
                for k in 0..a.dim(d + 1) {
                    if let Some(v) = var(d + 1, r, k) {
                        row[v] = field.add(row[v], da.entry(k, c));
                    }
                }
                for k in 0..b.dim(d) {
                    if let Some(v) = var(d, k, c) {
                        row[v] = field.sub(row[v], db.entry(r, k));
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Matrix::new(field, rows.len(), unknowns, rows.concat())?;
    Ok(system.nullity())
}

/// Vanishing in negative degrees.
pub fn is_positive(m: &NComplex) -> bool {
    m.support().map_or(true, |(lo, _)| lo >= 0)
}

/// Membership in the list of injective indecomposables of the positive
/// category: `M_0^l` for any `l`, and `M_i^(N-1)` for `i >= 1`.
pub fn is_injective_positive(m: Indec, order: usize) -> bool {
    m.length < order && (m.start == 0 || (m.start >= 1 && m.is_projective(order)))
}

fn check_positive(m: &NComplex) -> Result<()> {
    match m.support() {
        Some((lo, _)) if lo < 0 => Err(Error::NotPositive(lo)),
        _ => Ok(()),
    }
}

/// A family of matrices, one per degree of a window. Degrees outside the
/// window carry the zero map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreewiseMap {
    lo: i64,
    blocks: Vec<Matrix>,
}

impl DegreewiseMap {
    pub fn at(&self, degree: i64) -> Option<&Matrix> {
        let k = degree - self.lo;
        if k < 0 {
            return None;
        }
        self.blocks.get(k as usize)
    }

    pub fn degrees(&self) -> impl Iterator<Item = (i64, &Matrix)> + '_ {
        self.blocks
            .iter()
            .enumerate()
            .map(move |(k, m)| (self.lo + k as i64, m))
    }

    /// The component at `degree` as a `rows x cols` matrix.
    fn component(&self, degree: i64, field: PrimeField, rows: usize, cols: usize) -> Matrix {
        match self.at(degree) {
            Some(m) => m.clone(),
            None => Matrix::zeros(field, rows, cols),
        }
    }
}

/// A sum of projectives `M_s^(N-1)`, one per generator degree, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
struct FreeSum {
    order: usize,
    generators: Vec<i64>,
}

impl FreeSum {
    /// Indices of generators alive at `degree`: those with `s <= degree <= s + N - 1`.
    fn alive(&self, degree: i64) -> std::ops::Range<usize> {
        let span = self.order as i64 - 1;
        let first = self.generators.partition_point(|&s| s < degree - span);
        let last = self.generators.partition_point(|&s| s <= degree);
        first..last.max(first)
    }

    fn dim(&self, degree: i64) -> usize {
        self.alive(degree).len()
    }

    fn window(&self) -> Option<(i64, i64)> {
        let lo = *self.generators.first()?;
        let hi = *self.generators.last()? + self.order as i64 - 1;
        Some((lo, hi))
    }

    fn complex(&self, field: PrimeField) -> Result<NComplex> {
        NComplex::from_fn(
            field,
            self.order,
            self.window(),
            |d| self.dim(d),
            |d| {
                let (src, dst) = (self.alive(d), self.alive(d + 1));
                let mut m = Matrix::zeros(field, dst.len(), src.len());
                for g in src.clone() {
                    if dst.contains(&g) {
                        m.set(g - dst.start, g - src.start, 1);
                    }
                }
                m
            },
        )
    }
}

/// A surjection from a sum of positive projectives.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    /// The projective, one summand `M_s^(N-1)` per generator.
    pub projective: NComplex,
    /// Generator degrees, ascending; the basis of the projective at degree
    /// `d` lists the generators alive at `d` in this order.
    pub generators: Vec<i64>,
    /// The degreewise components of the surjection.
    pub epi: DegreewiseMap,
}

/// The projective cover of a valid positive complex: one generator for each
/// basis vector of the top `M_i / Im d_(i-1)` at each degree.
pub fn projective_cover(m: &NComplex) -> Result<ProjectiveCover> {
    m.validate()?;
    check_positive(m)?;
    let field = m.field();
    let order = m.order();
    let mut generators = Vec::new();
    let mut tops: Vec<(i64, Matrix)> = Vec::new();
    if let Some((lo, hi)) = m.support() {
        for d in lo..=hi {
            // Standard vectors off the pivots of the transposed image complete
            // the image to a basis.
            let image = m.differential(d - 1).transpose();
            let mut is_pivot = vec![false; m.dim(d)];
            for c in image.echelon().pivots {
                is_pivot[c] = true;
            }
            for (k, _) in is_pivot.iter().enumerate().filter(|(_, &p)| !p) {
                let mut x = Matrix::zeros(field, m.dim(d), 1);
                x.set(k, 0, 1);
                generators.push(d);
                tops.push((d, x));
            }
        }
    }
    let free = FreeSum { order, generators };
    let projective = free.complex(field)?;
    let mut blocks = Vec::new();
    let lo = free.window().map_or(0, |w| w.0);
    if let Some((lo, hi)) = free.window() {
        for d in lo..=hi {
            let alive = free.alive(d);
            let mut block = Matrix::zeros(field, m.dim(d), alive.len());
            for (col, g) in alive.enumerate() {
                let (s, x) = &tops[g];
                let image = m.composite(*s, (d - s) as usize).multiply(x)?;
                for r in 0..image.rows() {
                    block.set(r, col, image.entry(r, 0));
                }
            }
            if block.rank() != m.dim(d) {
                return Err(Error::Internal(format!("cover is not surjective at degree {d}")));
            }
            blocks.push(block);
        }
    }
    Ok(ProjectiveCover {
        projective,
        generators: free.generators,
        epi: DegreewiseMap { lo, blocks },
    })
}

/// Kernel of a degreewise surjection `P -> M` as a complex, with its inclusion into `P`.
fn kernel(p: &NComplex, target: &NComplex, epi: &DegreewiseMap) -> Result<(NComplex, DegreewiseMap)> {
    let field = p.field();
    let Some((lo, hi)) = p.window().map(|w| (*w.start(), *w.end())) else {
        return Ok((NComplex::zero(field, p.order())?, DegreewiseMap { lo: 0, blocks: Vec::new() }));
    };
    let inclusions: Vec<Matrix> = (lo..=hi)
        .map(|d| epi.component(d, field, target.dim(d), p.dim(d)).kernel_basis())
        .collect();
    let at = |d: i64| &inclusions[(d - lo) as usize];
    let failure = std::cell::Cell::new(None);
    let k = NComplex::from_fn(
        field,
        p.order(),
        Some((lo, hi)),
        |d| at(d).cols(),
        |d| {
            let pushed = p.differential(d).multiply(at(d)).expect("coherent shapes");
            match at(d + 1).solve_right(&pushed) {
                Ok(Some(x)) => x,
                _ => {
                    if failure.get().is_none() {
                        failure.set(Some(d));
                    }
                    Matrix::zeros(field, at(d + 1).cols(), at(d).cols())
                }
            }
        },
    )?;
    if let Some(d) = failure.get() {
        return Err(Error::Internal(format!("kernel is not a subcomplex at degree {d}")));
    }
    Ok((k, DegreewiseMap { lo, blocks: inclusions }))
}

/// A projective resolution `… -> P_1 -> P_0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    /// `P_0, …, P_length`; zero complexes once the resolution has stopped.
    pub modules: Vec<NComplex>,
    /// Generator degrees of each `P_n`.
    pub generators: Vec<Vec<i64>>,
    /// `P_0 -> M`.
    pub augmentation: DegreewiseMap,
    /// `differentials[n] : P_(n+1) -> P_n`.
    pub differentials: Vec<DegreewiseMap>,
}

impl Resolution {
    /// Index of the last nonzero module (0 when even `P_0` is zero).
    pub fn effective_length(&self) -> usize {
        self.modules.iter().rposition(|m| !m.is_zero()).unwrap_or(0)
    }

    /// Component of `P_n -> P_(n-1)` (or `P_0 -> M` for `n = 0`) at `degree`.
    fn outgoing(&self, n: usize, target: &NComplex, degree: i64) -> Matrix {
        let field = target.field();
        let src = &self.modules[n];
        if n == 0 {
            self.augmentation
                .component(degree, field, target.dim(degree), src.dim(degree))
        } else {
            self.differentials[n - 1].component(degree, field, self.modules[n - 1].dim(degree), src.dim(degree))
        }
    }

    /// Checks the chain-map property of every map, surjectivity of the
    /// augmentation, and exactness at every `P_n` below the last one by rank
    /// arithmetic: `dim P_n = rank(in) + rank(out)` in each degree.
    pub fn verify(&self, m: &NComplex) -> Result<()> {
        let fail = |what: String| Err(Error::Internal(what));
        let last = self.modules.len() - 1;
        for n in 0..=last {
            let src = &self.modules[n];
            let dst = if n == 0 { m } else { &self.modules[n - 1] };
            let Some((lo, hi)) = src.support() else { continue };
            for d in lo - 1..=hi {
                let left = dst.differential(d).multiply(&self.outgoing(n, m, d))?;
                let right = self.outgoing(n, m, d + 1).multiply(&src.differential(d))?;
                if left != right {
                    return fail(format!("map out of P_{n} is not a chain map at degree {d}"));
                }
            }
        }
        let (lo, hi) = m.support().unwrap_or((0, -1));
        for d in lo..=hi {
            if self.outgoing(0, m, d).rank() != m.dim(d) {
                return fail(format!("augmentation is not onto at degree {d}"));
            }
        }
        for n in 0..last {
            let p = &self.modules[n];
            let Some((lo, hi)) = p.support() else { continue };
            for d in lo..=hi {
                let out = self.outgoing(n, m, d);
                let incoming = self.outgoing(n + 1, m, d);
                if !out.multiply(&incoming)?.is_zero() {
                    return fail(format!("consecutive maps at P_{n} do not compose to zero"));
                }
                if incoming.rank() + out.rank() != p.dim(d) {
                    return fail(format!("not exact at P_{n}, degree {d}"));
                }
            }
        }
        Ok(())
    }
}

/// Resolves a valid positive complex by successive projective covers of
/// kernels, up to and including `P_length`. The result is verified before it
/// is returned.
pub fn projective_resolution(m: &NComplex, length: usize) -> Result<Resolution> {
    let field = m.field();
    let cover = projective_cover(m)?;
    let (mut syzygy, mut inclusion) = kernel(&cover.projective, m, &cover.epi)?;
    let mut res = Resolution {
        modules: vec![cover.projective],
        generators: vec![cover.generators],
        augmentation: cover.epi,
        differentials: Vec::new(),
    };
    for _ in 0..length {
        let cover = projective_cover(&syzygy)?;
        let p = &cover.projective;
        let mut blocks = Vec::new();
        let lo = p.window().map_or(0, |w| *w.start());
        if let Some(w) = p.window() {
            for d in w {
                let into = inclusion.component(d, field, res.modules.last().unwrap().dim(d), syzygy.dim(d));
                let onto = cover.epi.component(d, field, syzygy.dim(d), p.dim(d));
                blocks.push(into.multiply(&onto)?);
            }
        }
        let (next, next_inclusion) = kernel(p, &syzygy, &cover.epi)?;
        res.differentials.push(DegreewiseMap { lo, blocks });
        res.modules.push(cover.projective);
        res.generators.push(cover.generators);
        syzygy = next;
        inclusion = next_inclusion;
    }
    res.verify(m)?;
    Ok(res)
}

/// Degree-`n` coboundary of `Hom(P_•, B)` in generator coordinates, where
/// `Hom(M_s^(N-1), B) = B_s`.
fn coboundary(res: &Resolution, b: &NComplex, n: usize) -> Matrix {
    let field = b.field();
    let order = b.order();
    let (src_gens, dst_gens) = (&res.generators[n], &res.generators[n + 1]);
    let offsets = |gens: &[i64]| -> (Vec<usize>, usize) {
        let mut out = Vec::with_capacity(gens.len());
        let mut total = 0;
        for &s in gens {
            out.push(total);
            total += b.dim(s);
        }
        (out, total)
    };
    let (cols_at, cols) = offsets(src_gens);
    let (rows_at, rows) = offsets(dst_gens);
    let src = FreeSum { order, generators: src_gens.clone() };
    let dst = FreeSum { order, generators: dst_gens.clone() };
    let mut delta = Matrix::zeros(field, rows, cols);
    for (h, &t) in dst_gens.iter().enumerate() {
        let Some(boundary) = res.differentials[n].at(t) else { continue };
        let column = h - dst.alive(t).start;
        for g in src.alive(t) {
            let c = boundary.entry(g - src.alive(t).start, column);
            if c == 0 {
                continue;
            }
            let s = src_gens[g];
            let block = b.composite(s, (t - s) as usize).scale(field.elem(c as i64));
            for r in 0..block.rows() {
                for k in 0..block.cols() {
                    let v = field.add(delta.entry(rows_at[h] + r, cols_at[g] + k), block.entry(r, k));
                    delta.set(rows_at[h] + r, cols_at[g] + k, v);
                }
            }
        }
    }
    delta
}

/// `dim Ext^n(A, B)` in the positive category, from a projective resolution
/// of `A`.
pub fn ext_dim(a: &NComplex, b: &NComplex, n: usize) -> Result<usize> {
    check_pair(a, b)?;
    b.validate()?;
    check_positive(b)?;
    let res = projective_resolution(a, n + 1)?;
    let cochains: usize = res.generators[n].iter().map(|&s| b.dim(s)).sum();
    let outgoing = coboundary(&res, b, n).rank();
    let incoming = if n == 0 { 0 } else { coboundary(&res, b, n - 1).rank() };
    Ok(cochains - outgoing - incoming)
}
