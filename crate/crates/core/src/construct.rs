//! Product-basis constructions.
//!
//! * [`complete_to_bases`]: extend several independent tuples to bases of the
//!   whole space with one shared family of product vectors.
//! * [`product_tuple`]: `d̃ − rⁿ` independent product vectors inside a
//!   codimension-`r` subspace, by peeling off party 1 and recursing.
//! * [`bipartite_codim1_basis`]: a product basis of `w^⊥` in `F^{d₁} ⊗ F^{d₂}`
//!   through the rank normal form of the matricized covector.
//! * [`product_basis_codim1`]: dispatch for hyperplanes of any shape.
//! * [`witness_no_product_basis`]: a `(d̃ − 2)`-dimensional subspace without
//!   a product basis.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::linalg::{Echelon, Matrix};
use crate::tensor::{
    kron, standard_basis_vector, ProductVector, Subspace, TensorShape, TensorVector,
};
use crate::verify;

/// Default cap on brute-force enumeration (candidates).
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructOptions {
    pub seed: u64,
    /// Run outside the guaranteed finite-field regime (best effort).
    pub force: bool,
    /// Random candidates per completion vector; `None` uses `64·m·r·n`.
    pub max_trials: Option<u64>,
    /// Cap for the exhaustive fallback of the completion search.
    pub enumeration_budget: u128,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            force: false,
            max_trials: None,
            enumeration_budget: DEFAULT_ENUMERATION_BUDGET,
        }
    }
}

impl ConstructOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn forced(mut self) -> Self {
        self.force = true;
        self
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// An ordered family of product vectors together with its rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductTuple {
    pub vectors: Vec<ProductVector>,
    pub claimed_rank: usize,
}

impl ProductTuple {
    fn new(vectors: Vec<ProductVector>) -> Self {
        let claimed_rank = vectors.len();
        Self {
            vectors,
            claimed_rank,
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn embedded(&self) -> Vec<TensorVector> {
        self.vectors.iter().map(|p| p.embedded().clone()).collect()
    }
}

/// `m` tuples of `d̃ − r` independent vectors to be completed by `r` shared
/// product vectors.
#[derive(Debug, Clone)]
pub struct CompletionRequest {
    shape: TensorShape,
    field: FieldSpec,
    tuples: Vec<Vec<TensorVector>>,
    r: usize,
    pub seed: u64,
    pub max_trials: Option<u64>,
    pub enumeration_budget: u128,
}

impl CompletionRequest {
    pub fn new(
        shape: &TensorShape,
        field: FieldSpec,
        tuples: Vec<Vec<TensorVector>>,
        r: usize,
        seed: u64,
    ) -> Result<Self> {
        let total = shape.total();
        if r == 0 || r > total {
            return Err(Error::InvalidArgument(format!(
                "completion size {r} outside [1, {total}]"
            )));
        }
        if tuples.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one tuple is required".into(),
            ));
        }
        for (k, t) in tuples.iter().enumerate() {
            if t.len() != total - r {
                return Err(Error::DimensionMismatch(format!(
                    "tuple {k} has {} vectors, expected {}",
                    t.len(),
                    total - r
                )));
            }
            let mut ech = Echelon::new(field, total);
            for v in t {
                if v.shape() != shape || v.field() != field {
                    return Err(Error::DimensionMismatch(format!(
                        "tuple {k} has a foreign vector"
                    )));
                }
                if !ech.insert(v.coords()) {
                    return Err(Error::LinearlyDependent(format!("tuple {k}")));
                }
            }
        }
        Ok(Self {
            shape: shape.clone(),
            field,
            tuples,
            r,
            seed,
            max_trials: None,
            enumeration_budget: DEFAULT_ENUMERATION_BUDGET,
        })
    }

    pub fn m(&self) -> usize {
        self.tuples.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn tuples(&self) -> &[Vec<TensorVector>] {
        &self.tuples
    }

    /// Whether existence is guaranteed: always over Q; over GF(q) when
    /// `m ≤ q − 1`, since each greedy step is a single-vector completion of
    /// `m` tuples of size `d̃ − 1`.
    pub fn guaranteed(&self) -> bool {
        match self.field.order() {
            None => true,
            Some(q) => (self.m() as u64) < q,
        }
    }
}

/// Finds product vectors `v₁, …, v_r` with
/// `det[u_{k,1}, …, u_{k,d̃−r}, v₁, …, v_r] ≠ 0` for every tuple `k`.
pub fn complete_to_bases(req: &CompletionRequest) -> Result<Vec<ProductVector>> {
    let mut rng = ChaCha8Rng::seed_from_u64(req.seed);
    let spans = req
        .tuples
        .iter()
        .map(|t| t.iter().map(|v| v.coords().to_vec()).collect())
        .collect();
    complete(
        &req.shape,
        req.field,
        spans,
        req.r,
        req.max_trials,
        req.enumeration_budget,
        &mut rng,
    )
}

/// Greedy completion: each new vector must lie outside every current span.
/// Candidates are random product vectors; on a finite field the trial budget
/// is backed by an exhaustive scan of projective product vectors.
fn complete<R: Rng>(
    shape: &TensorShape,
    field: FieldSpec,
    tuples: Vec<Vec<Vec<Scalar>>>,
    r: usize,
    max_trials: Option<u64>,
    enumeration_budget: u128,
    rng: &mut R,
) -> Result<Vec<ProductVector>> {
    let m = tuples.len() as u64;
    let n = shape.parties() as u64;
    let trials = max_trials.unwrap_or(64 * m * r as u64 * n).max(1);
    let bound = 2 * m * r as u64 * n * shape.total() as u64;
    let mut spans: Vec<Echelon> = tuples
        .iter()
        .map(|t| {
            let mut e = Echelon::new(field, shape.total());
            for v in t {
                e.insert(v);
            }
            e
        })
        .collect();
    let avoids_all = |spans: &[Echelon], v: &ProductVector| {
        spans.iter().all(|e| !e.contains(v.embedded().coords()))
    };

    let mut out = Vec::with_capacity(r);
    let mut used = 0u64;
    for _ in 0..r {
        let mut found = None;
        for _ in 0..trials {
            used += 1;
            let factors = shape
                .dims()
                .iter()
                .map(|&d| (0..d).map(|_| field.sample(rng, bound)).collect())
                .collect();
            let cand = kron(field, factors)?;
            if avoids_all(&spans, &cand) {
                found = Some(cand);
                break;
            }
        }
        if found.is_none() && field.is_finite() {
            if let Ok(space) = verify::ProjectiveProducts::new(shape, field, enumeration_budget) {
                found = (0..space.len())
                    .map(|i| space.get(i))
                    .find(|c| avoids_all(&spans, c));
                used += space.len() as u64;
            }
        }
        let Some(v) = found else {
            return Err(Error::CompletionNotFound { trials: used });
        };
        for e in spans.iter_mut() {
            e.insert(v.embedded().coords());
        }
        out.push(v);
    }
    Ok(out)
}

/// `w_r = Σ_{i<r} e_i ⊗ e_i` in a bipartite space; its matricization is `B_r`.
pub fn canonical_covector(shape: &TensorShape, field: FieldSpec, r: usize) -> Result<TensorVector> {
    let [d1, d2] = shape.dims() else {
        return Err(Error::InvalidShape(format!("{shape} is not bipartite")));
    };
    if r == 0 || r > (*d1).min(*d2) {
        return Err(Error::IndexOutOfRange(format!("r = {r} for shape {shape}")));
    }
    TensorVector::vectorize(&Matrix::rank_normal(field, *d1, *d2, r), shape)
}

/// Product basis of `{u : ⟨w, u⟩ = 0}` in `F^{d₁} ⊗ F^{d₂}`, valid over every
/// field. With `mat(w) = Pᵀ·B_r·Q`, the basis of `w_r^⊥`
///
/// ```text
/// e_i ⊗ e_j  for (i, j) ∉ {(0,0), …, (r−1,r−1)},   (e_k − e_{k+1}) ⊗ u₀  for k < r−1,
/// ```
///
/// with `u₀ = Σ_{i<r} e_i`, is mapped factorwise by `(P⁻¹, Q⁻¹)`.
pub fn bipartite_codim1_basis(w: &TensorVector) -> Result<ProductTuple> {
    let shape = w.shape();
    let field = w.field();
    let &[d1, d2] = shape.dims() else {
        return Err(Error::InvalidShape(format!("{shape} is not bipartite")));
    };
    if w.is_zero() {
        return Err(Error::NotCodimensionOne);
    }
    let rnf = w.matricize(1)?.rank_normal_form();
    let r = rnf.rank;
    let p_inv = rnf.p.inverse()?;
    let q_inv = rnf.q.inverse()?;
    let e = |d: usize, i: usize| -> Vec<Scalar> {
        let mut v = vec![field.zero(); d];
        v[i] = field.one();
        v
    };

    let mut family: Vec<(Vec<Scalar>, Vec<Scalar>)> = Vec::with_capacity(d1 * d2 - 1);
    for i in 0..d1 {
        for j in 0..d2 {
            if !(i == j && i < r) {
                family.push((e(d1, i), e(d2, j)));
            }
        }
    }
    let mut u0 = vec![field.zero(); d2];
    for x in u0.iter_mut().take(r) {
        *x = field.one();
    }
    for k in 0..r.saturating_sub(1) {
        let mut diff = e(d1, k);
        diff[k + 1] = -field.one();
        family.push((diff, u0.clone()));
    }

    let vectors = family
        .into_iter()
        .map(|(a, b)| kron(field, vec![p_inv.mul_vec(&a)?, q_inv.mul_vec(&b)?]))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProductTuple::new(vectors))
}

struct Recursion<'a, R> {
    field: FieldSpec,
    bipartite_tail: bool,
    opts: &'a ConstructOptions,
    rng: &'a mut R,
}

impl<R: Rng> Recursion<'_, R> {
    /// `d̃ − rⁿ` independent product vectors annihilated by `cogens`, which
    /// must be `r` independent covectors.
    fn run(&mut self, shape: &TensorShape, cogens: &[TensorVector]) -> Result<Vec<ProductVector>> {
        let field = self.field;
        let r = cogens.len();
        let n = shape.parties();
        if n == 1 {
            let rows: Vec<Vec<Scalar>> = cogens.iter().map(|w| w.coords().to_vec()).collect();
            let kernel = Matrix::from_rows(field, shape.total(), &rows)?.kernel();
            return kernel.into_iter().map(|k| kron(field, vec![k])).collect();
        }
        if n == 2 && r == 1 && self.bipartite_tail {
            return Ok(bipartite_codim1_basis(&cogens[0])?.vectors);
        }

        let d1 = shape.dims()[0];
        let tail = shape.sub(1..n)?;
        let mut tuples = Vec::with_capacity(d1);
        for k in 0..d1 {
            let ek = standard_basis_vector(shape, field, 0, k)?;
            let restricted = cogens
                .iter()
                .map(|w| w.contract_first(&ek))
                .collect::<Result<Vec<_>>>()?;
            let padded = pad_to_rank(&tail, field, &restricted, r)?;
            tuples.push(self.run(&tail, &padded)?);
        }

        let count = r.pow((n - 1) as u32);
        let spans = tuples
            .iter()
            .map(|t| t.iter().map(|p| p.embedded().coords().to_vec()).collect())
            .collect();
        let shared = complete(
            &tail,
            field,
            spans,
            count,
            self.opts.max_trials,
            self.opts.enumeration_budget,
            self.rng,
        )?;

        let mut out = Vec::with_capacity(shape.total() - r.pow(n as u32));
        for (k, tuple) in tuples.into_iter().enumerate() {
            let ek = standard_basis_vector(shape, field, 0, k)?;
            for u in tuple {
                out.push(prepend(field, ek.clone(), &u)?);
            }
        }
        for v in &shared {
            let rows = cogens
                .iter()
                .map(|w| w.contract_rest(v.embedded()))
                .collect::<Result<Vec<_>>>()?;
            let kernel = Matrix::from_rows(field, d1, &rows)?.kernel();
            for a in kernel.into_iter().take(d1 - r) {
                out.push(prepend(field, a, v)?);
            }
        }
        Ok(out)
    }
}

fn prepend(field: FieldSpec, head: Vec<Scalar>, tail: &ProductVector) -> Result<ProductVector> {
    let mut factors = Vec::with_capacity(tail.factors().len() + 1);
    factors.push(head);
    factors.extend(tail.factors().iter().cloned());
    kron(field, factors)
}

/// Independent subset of `covectors`, extended by standard basis vectors to
/// exactly `r` covectors; the zero set only shrinks.
fn pad_to_rank(
    shape: &TensorShape,
    field: FieldSpec,
    covectors: &[TensorVector],
    r: usize,
) -> Result<Vec<TensorVector>> {
    let mut ech = Echelon::new(field, shape.total());
    let mut out: Vec<TensorVector> = covectors
        .iter()
        .filter(|w| ech.insert(w.coords()))
        .cloned()
        .collect();
    for flat in 0..shape.total() {
        if out.len() >= r {
            break;
        }
        let e = TensorVector::basis(shape, field, &shape.multi_index(flat))?;
        if ech.insert(e.coords()) {
            out.push(e);
        }
    }
    Ok(out)
}

fn check_regime(
    shape: &TensorShape,
    field: FieldSpec,
    peeled: &[usize],
    force: bool,
) -> Result<()> {
    let Some(q) = field.order() else {
        return Ok(());
    };
    if force {
        return Ok(());
    }
    if let Some(&d) = peeled.iter().max() {
        if q <= d as u64 {
            return Err(Error::FieldTooSmall(format!(
                "q = {q} must exceed {d} for shape {shape}; pass force to try anyway"
            )));
        }
    }
    Ok(())
}

/// `d̃ − rⁿ` linearly independent product vectors in a subspace of
/// codimension `r`, `1 ≤ r ≤ min dᵢ`.
///
/// Party 1 is expanded in the standard basis, every slice is solved
/// recursively, and a shared family of tail product vectors is found with
/// the completion search. For `r = 1` the last two parties are finished by
/// [`bipartite_codim1_basis`]. Over GF(q) every completion step runs with
/// `m = dⱼ` tuples and needs `q > dⱼ` for a guarantee; otherwise the call
/// fails with [`Error::FieldTooSmall`] unless `opts.force` is set, and the
/// search is best effort.
pub fn product_tuple(l: &Subspace, opts: &ConstructOptions) -> Result<ProductTuple> {
    let shape = l.shape();
    let field = l.field();
    let r = l.codim();
    let min_d = *shape.dims().iter().min().expect("nonempty shape");
    if r == 0 || r > min_d {
        return Err(Error::IndexOutOfRange(format!(
            "codimension {r} outside [1, {min_d}]"
        )));
    }
    let n = shape.parties();
    let peeled_count = if r == 1 { n.saturating_sub(2) } else { n - 1 };
    check_regime(shape, field, &shape.dims()[..peeled_count], opts.force)?;
    let mut rng = opts.rng();
    let mut rec = Recursion {
        field,
        bipartite_tail: r == 1,
        opts,
        rng: &mut rng,
    };
    let vectors = rec.run(shape, l.cogenerators())?;
    Ok(ProductTuple::new(vectors))
}

/// Product basis of a hyperplane `L = w^⊥` of any shape.
///
/// Parties are sorted by ascending dimension (stable), so the guarantee over
/// GF(q) with `n ≥ 3` is `q > d_{n−2}` in sorted order, i.e. q exceeds the
/// third-largest dimension. Results are reported in the caller's party order.
pub fn product_basis_codim1(l: &Subspace, opts: &ConstructOptions) -> Result<ProductTuple> {
    if l.codim() != 1 {
        return Err(Error::InvalidArgument(format!(
            "expected codimension 1, got {}",
            l.codim()
        )));
    }
    let shape = l.shape();
    let field = l.field();
    let n = shape.parties();
    let w = &l.cogenerators()[0];
    if n == 1 {
        return product_tuple(l, opts);
    }
    if n == 2 {
        return bipartite_codim1_basis(w);
    }

    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by_key(|&j| shape.dims()[j]);
    let sorted = w.permute_parties(&perm)?;
    check_regime(shape, field, &sorted.shape().dims()[..n - 2], opts.force)?;

    let mut inverse = vec![0; n];
    for (t, &p) in perm.iter().enumerate() {
        inverse[p] = t;
    }
    let mut rng = opts.rng();
    let mut rec = Recursion {
        field,
        bipartite_tail: true,
        opts,
        rng: &mut rng,
    };
    let vectors = rec
        .run(sorted.shape(), std::slice::from_ref(&sorted))?
        .into_iter()
        .map(|v| v.permute_parties(&inverse))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProductTuple::new(vectors))
}

/// Subspace cut out by `r` random independent covectors, reproducible from
/// `seed`. Rational entries are integers in `[-9, 9]`.
pub fn random_subspace(
    shape: &TensorShape,
    field: FieldSpec,
    r: usize,
    seed: u64,
) -> Result<Subspace> {
    if r == 0 || r > shape.total() {
        return Err(Error::IndexOutOfRange(format!(
            "codimension {r} for shape {shape}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ech = Echelon::new(field, shape.total());
    let mut covectors = Vec::with_capacity(r);
    while covectors.len() < r {
        let coords: Vec<Scalar> = (0..shape.total())
            .map(|_| {
                if field.is_finite() {
                    field.sample(&mut rng, 0)
                } else {
                    field.from_i64(rng.gen_range(-9..=9))
                }
            })
            .collect();
        if ech.insert(&coords) {
            covectors.push(TensorVector::new(shape.clone(), field, coords)?);
        }
    }
    Subspace::from_cogenerators(shape, field, covectors)
}

/// A `(d̃ − 2)`-dimensional subspace with no product basis, in generator form.
///
/// For two parties it is spanned by `e₀⊗e₀ + e₁⊗e₁` and every `e_i ⊗ e_j`
/// with `(i, j) ∉ {(0,0), (1,0), (1,1)}`. For more parties that subspace is
/// tensored with `u₀ = e₀ ⊗ … ⊗ e₀` on parties 3..n, and every standard
/// basis vector whose parties-3..n part differs from `u₀` is added.
pub fn witness_no_product_basis(shape: &TensorShape, field: FieldSpec) -> Result<Subspace> {
    let n = shape.parties();
    if n < 2 {
        return Err(Error::InvalidShape(
            "the witness needs at least two parties".into(),
        ));
    }
    let (d1, d2) = (shape.dims()[0], shape.dims()[1]);
    let tail_total = shape.total() / (d1 * d2);
    let at = |i: usize, j: usize, t: usize| (i * d2 + j) * tail_total + t;

    let mut gens = Vec::with_capacity(shape.total() - 2);
    let mut entangled = TensorVector::zeros(shape, field).into_coords();
    entangled[at(0, 0, 0)] = field.one();
    entangled[at(1, 1, 0)] = field.one();
    gens.push(TensorVector::new(shape.clone(), field, entangled)?);
    for flat in 0..shape.total() {
        let (ij, t) = (flat / tail_total, flat % tail_total);
        let (i, j) = (ij / d2, ij % d2);
        let excluded = t == 0 && matches!((i, j), (0, 0) | (1, 0) | (1, 1));
        if !excluded {
            gens.push(TensorVector::basis(shape, field, &shape.multi_index(flat))?);
        }
    }
    debug_assert_eq!(gens.len(), shape.total() - 2);
    Subspace::from_generators(shape, field, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_product_basis;

    const Q: FieldSpec = FieldSpec::rational();

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn shape(dims: &[usize]) -> TensorShape {
        TensorShape::new(dims.to_vec()).unwrap()
    }

    fn ints(f: FieldSpec, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    fn factors_of(t: &ProductTuple) -> Vec<Vec<Vec<Scalar>>> {
        t.vectors.iter().map(|p| p.factors().to_vec()).collect()
    }

    #[test]
    fn canonical_covector_examples() {
        let w = canonical_covector(&shape(&[2, 2]), Q, 2).unwrap();
        assert_eq!(
            w,
            TensorVector::from_i64(&shape(&[2, 2]), Q, &[1, 0, 0, 1]).unwrap()
        );
        let w = canonical_covector(&shape(&[2, 3]), Q, 1).unwrap();
        assert_eq!(w, TensorVector::basis(&shape(&[2, 3]), Q, &[0, 0]).unwrap());
        let w = canonical_covector(&shape(&[3, 3]), Q, 3).unwrap();
        assert_eq!(w.matricize(1).unwrap(), Matrix::identity(Q, 3));
        assert!(canonical_covector(&shape(&[2, 3]), Q, 3).is_err());
        assert!(canonical_covector(&shape(&[2, 3]), Q, 0).is_err());
        assert!(canonical_covector(&shape(&[2, 2, 2]), Q, 1).is_err());
    }

    #[test]
    fn bipartite_rank_one_covector() {
        let s = shape(&[2, 2]);
        let w = TensorVector::basis(&s, Q, &[0, 0]).unwrap();
        let t = bipartite_codim1_basis(&w).unwrap();
        let expected = vec![
            vec![ints(Q, &[1, 0]), ints(Q, &[0, 1])],
            vec![ints(Q, &[0, 1]), ints(Q, &[1, 0])],
            vec![ints(Q, &[0, 1]), ints(Q, &[0, 1])],
        ];
        assert_eq!(factors_of(&t), expected);
    }

    #[test]
    fn bipartite_rank_two_covector() {
        let s = shape(&[2, 2]);
        let w = canonical_covector(&s, Q, 2).unwrap();
        let t = bipartite_codim1_basis(&w).unwrap();
        let expected = vec![
            vec![ints(Q, &[1, 0]), ints(Q, &[0, 1])],
            vec![ints(Q, &[0, 1]), ints(Q, &[1, 0])],
            vec![ints(Q, &[1, -1]), ints(Q, &[1, 1])],
        ];
        assert_eq!(factors_of(&t), expected);
        let l = Subspace::from_cogenerators(&s, Q, vec![w]).unwrap();
        assert!(verify_product_basis(&t.embedded(), &l).ok);
    }

    #[test]
    fn bipartite_gf2_example() {
        let f = gf(2);
        let s = shape(&[2, 2]);
        let w = TensorVector::from_i64(&s, f, &[1, 1, 0, 0]).unwrap();
        let t = bipartite_codim1_basis(&w).unwrap();
        let expected = vec![
            vec![ints(f, &[1, 0]), ints(f, &[1, 1])],
            vec![ints(f, &[0, 1]), ints(f, &[1, 0])],
            vec![ints(f, &[0, 1]), ints(f, &[1, 1])],
        ];
        assert_eq!(factors_of(&t), expected);
        let l = Subspace::from_cogenerators(&s, f, vec![w]).unwrap();
        assert!(verify_product_basis(&t.embedded(), &l).ok);
    }

    #[test]
    fn bipartite_zero_covector_rejected() {
        let w = TensorVector::zeros(&shape(&[2, 3]), Q);
        assert_eq!(
            bipartite_codim1_basis(&w).unwrap_err(),
            Error::NotCodimensionOne
        );
    }

    #[test]
    fn completion_of_empty_tuple() {
        let s = shape(&[2, 2]);
        let req = CompletionRequest::new(&s, gf(3), vec![vec![]], 4, 1).unwrap();
        let vs = complete_to_bases(&req).unwrap();
        let cols: Vec<Vec<Scalar>> = vs.iter().map(|v| v.embedded().coords().to_vec()).collect();
        assert!(!Matrix::from_columns(gf(3), 4, &cols)
            .unwrap()
            .det()
            .unwrap()
            .is_zero());
    }

    #[test]
    fn completion_example_gf3() {
        let f = gf(3);
        let s = shape(&[2, 2]);
        let tuple = vec![
            TensorVector::from_i64(&s, f, &[1, 0, 0, 1]).unwrap(),
            TensorVector::basis(&s, f, &[0, 1]).unwrap(),
        ];
        // (e₁⊗e₁, e₂⊗e₁) is a valid completion
        let given: Vec<Vec<Scalar>> = tuple
            .iter()
            .map(|v| v.coords().to_vec())
            .chain([ints(f, &[1, 0, 0, 0]), ints(f, &[0, 0, 1, 0])])
            .collect();
        assert!(!Matrix::from_columns(f, 4, &given)
            .unwrap()
            .det()
            .unwrap()
            .is_zero());

        let req = CompletionRequest::new(&s, f, vec![tuple.clone()], 2, 9).unwrap();
        let vs = complete_to_bases(&req).unwrap();
        let cols: Vec<Vec<Scalar>> = tuple
            .iter()
            .map(|v| v.coords().to_vec())
            .chain(vs.iter().map(|v| v.embedded().coords().to_vec()))
            .collect();
        assert!(!Matrix::from_columns(f, 4, &cols)
            .unwrap()
            .det()
            .unwrap()
            .is_zero());
    }

    #[test]
    fn completion_reports_failure() {
        // Over GF(2) the complements of the three lines of F² cover every
        // nonzero vector, so no v avoids all three spans.
        let f = gf(2);
        let s = shape(&[2]);
        let tuples = vec![
            vec![TensorVector::from_i64(&s, f, &[1, 0]).unwrap()],
            vec![TensorVector::from_i64(&s, f, &[0, 1]).unwrap()],
            vec![TensorVector::from_i64(&s, f, &[1, 1]).unwrap()],
        ];
        let mut req = CompletionRequest::new(&s, f, tuples, 1, 0).unwrap();
        req.max_trials = Some(10);
        assert!(!req.guaranteed());
        assert!(matches!(
            complete_to_bases(&req),
            Err(Error::CompletionNotFound { .. })
        ));
    }

    #[test]
    fn completion_request_validation() {
        let s = shape(&[2, 2]);
        let e = |i, j| TensorVector::basis(&s, Q, &[i, j]).unwrap();
        assert!(CompletionRequest::new(&s, Q, vec![vec![e(0, 0)]], 2, 0).is_err());
        assert!(CompletionRequest::new(&s, Q, vec![vec![e(0, 0), e(0, 0)]], 2, 0).is_err());
        assert!(CompletionRequest::new(&s, Q, vec![], 2, 0).is_err());
        assert!(CompletionRequest::new(&s, Q, vec![vec![e(0, 0), e(0, 1)]], 2, 0).is_ok());
    }

    #[test]
    fn product_tuple_examples() {
        let s = shape(&[2, 2]);
        let w = canonical_covector(&s, Q, 2).unwrap();
        let l = Subspace::from_cogenerators(&s, Q, vec![w]).unwrap();
        let t = product_tuple(&l, &ConstructOptions::default()).unwrap();
        assert_eq!(t.len(), 3);
        assert!(verify_product_basis(&t.embedded(), &l).ok);

        let covs = vec![
            TensorVector::from_i64(&s, Q, &[1, 2, 3, 5]).unwrap(),
            TensorVector::from_i64(&s, Q, &[2, 0, 7, 1]).unwrap(),
        ];
        let l = Subspace::from_cogenerators(&s, Q, covs).unwrap();
        assert!(product_tuple(&l, &ConstructOptions::default())
            .unwrap()
            .is_empty());

        let f = gf(5);
        let s = shape(&[2, 2, 2]);
        let w = TensorVector::from_i64(&s, f, &[1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
        let l = Subspace::from_cogenerators(&s, f, vec![w]).unwrap();
        let t = product_tuple(&l, &ConstructOptions::default()).unwrap();
        assert_eq!(t.len(), 7);
        assert!(verify_product_basis(&t.embedded(), &l).ok);
    }

    #[test]
    fn product_tuple_range_checks() {
        let s = shape(&[2, 3]);
        assert!(matches!(
            product_tuple(&Subspace::full(&s, Q), &ConstructOptions::default()),
            Err(Error::IndexOutOfRange(_))
        ));
        let covs: Vec<_> = (0..3)
            .map(|i| TensorVector::basis(&s, Q, &[0, i]).unwrap())
            .collect();
        let l = Subspace::from_cogenerators(&s, Q, covs).unwrap();
        assert!(matches!(
            product_tuple(&l, &ConstructOptions::default()),
            Err(Error::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn codim1_dispatch_examples() {
        let s = shape(&[2, 2, 2]);
        let w = TensorVector::from_i64(&s, Q, &[1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
        let l = Subspace::from_cogenerators(&s, Q, vec![w]).unwrap();
        let t = product_basis_codim1(&l, &ConstructOptions::default()).unwrap();
        assert_eq!(t.len(), 7);
        assert!(verify_product_basis(&t.embedded(), &l).ok);

        let f = gf(2);
        let w = TensorVector::from_i64(&s, f, &[1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
        let l = Subspace::from_cogenerators(&s, f, vec![w]).unwrap();
        assert!(matches!(
            product_basis_codim1(&l, &ConstructOptions::default()),
            Err(Error::FieldTooSmall(_))
        ));

        let f = gf(3);
        let s = shape(&[3, 2, 2]);
        let coords: Vec<i64> = (0..12).map(|i| (i * 7 + 1) % 3).collect();
        let w = TensorVector::from_i64(&s, f, &coords).unwrap();
        let l = Subspace::from_cogenerators(&s, f, vec![w]).unwrap();
        let t = product_basis_codim1(&l, &ConstructOptions::with_seed(3)).unwrap();
        assert_eq!(t.len(), 11);
        assert_eq!(t.vectors[0].shape(), &s);
        assert!(verify_product_basis(&t.embedded(), &l).ok);
    }

    #[test]
    fn exhaustive_bipartite_gf2() {
        let f = gf(2);
        let s = shape(&[2, 2]);
        for bits in 1..16i64 {
            let coords: Vec<i64> = (0..4).map(|i| (bits >> i) & 1).collect();
            let w = TensorVector::from_i64(&s, f, &coords).unwrap();
            let l = Subspace::from_cogenerators(&s, f, vec![w]).unwrap();
            let t = product_basis_codim1(&l, &ConstructOptions::default()).unwrap();
            assert!(
                verify_product_basis(&t.embedded(), &l).ok,
                "covector {coords:?}"
            );
        }
    }

    #[test]
    fn witness_examples() {
        let f = gf(2);
        let s = shape(&[2, 2]);
        let l = witness_no_product_basis(&s, f).unwrap();
        let expected = vec![
            TensorVector::from_i64(&s, f, &[1, 0, 0, 1]).unwrap(),
            TensorVector::basis(&s, f, &[0, 1]).unwrap(),
        ];
        assert_eq!(l.generators(), expected.as_slice());

        let s = shape(&[3, 2]);
        let l = witness_no_product_basis(&s, Q).unwrap();
        let expected = vec![
            TensorVector::from_i64(&s, Q, &[1, 0, 0, 1, 0, 0]).unwrap(),
            TensorVector::basis(&s, Q, &[0, 1]).unwrap(),
            TensorVector::basis(&s, Q, &[2, 0]).unwrap(),
            TensorVector::basis(&s, Q, &[2, 1]).unwrap(),
        ];
        assert_eq!(l.generators(), expected.as_slice());

        let s = shape(&[2, 2, 2]);
        let l = witness_no_product_basis(&s, Q).unwrap();
        assert_eq!(l.dim(), 6);
        // Slice at e₀ on party 3 is the bipartite witness.
        let bip = witness_no_product_basis(&shape(&[2, 2]), Q).unwrap();
        for g in bip.generators() {
            let lifted = kron(Q, vec![g.coords().to_vec(), ints(Q, &[1, 0])]).unwrap();
            let v = TensorVector::new(s.clone(), Q, lifted.embedded().coords().to_vec()).unwrap();
            assert!(l.contains(&v).unwrap());
        }
        assert!(!l
            .contains(&TensorVector::basis(&s, Q, &[0, 0, 0]).unwrap())
            .unwrap());
        assert!(l
            .contains(&TensorVector::basis(&s, Q, &[1, 1, 1]).unwrap())
            .unwrap());
        assert!(witness_no_product_basis(&shape(&[4]), Q).is_err());
    }

    #[test]
    fn random_subspaces() {
        let s = shape(&[2, 3]);
        let a = random_subspace(&s, gf(2), 3, 7).unwrap();
        assert_eq!(a.codim(), 3);
        assert!(a
            .same_as(&random_subspace(&s, gf(2), 3, 7).unwrap())
            .unwrap());
        assert_eq!(random_subspace(&s, Q, 6, 1).unwrap().dim(), 0);
        assert!(random_subspace(&s, Q, 0, 1).is_err());
    }

    #[test]
    fn seeded_runs_are_deterministic() {
        let s = shape(&[2, 3, 2]);
        let coords: Vec<i64> = (0..12).map(|i| i * i - 3).collect();
        let w = TensorVector::from_i64(&s, Q, &coords).unwrap();
        let l = Subspace::from_cogenerators(&s, Q, vec![w]).unwrap();
        let a = product_basis_codim1(&l, &ConstructOptions::with_seed(11)).unwrap();
        let b = product_basis_codim1(&l, &ConstructOptions::with_seed(11)).unwrap();
        assert_eq!(a, b);
    }
}
