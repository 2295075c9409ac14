//! Tensor-product spaces `F^{d₁} ⊗ … ⊗ F^{dₙ}` with row-major coordinates.
//!
//! The multi-index `(i₁, …, iₙ)` (0-based) maps to the flat index
//! `Σ iⱼ·∏_{l>j} d_l`, so party 1 is the most significant digit. With this
//! order `matricize(v, 1)` is the matrix `A` with `vec(A) = v` and
//! `vec(P·A·Qᵀ) = (P ⊗ Q)·vec(A)`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::linalg::{dot, Echelon, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorShape {
    dims: Vec<usize>,
    total: usize,
}

impl TensorShape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidShape("at least one party is required".into()));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidShape(format!("local dimension {d} < 2")));
        }
        let total = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::InvalidShape("total dimension overflows".into()))?;
        Ok(Self { dims, total })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Shape of parties `range` (e.g. `1..n` for the tail after party 1).
    pub fn sub(&self, range: std::ops::Range<usize>) -> Result<TensorShape> {
        TensorShape::new(self.dims[range].to_vec())
    }

    pub fn flat_index(&self, multi: &[usize]) -> Result<usize> {
        if multi.len() != self.dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "multi-index of length {} for {} parties",
                multi.len(),
                self.dims.len()
            )));
        }
        let mut flat = 0;
        for (&i, &d) in multi.iter().zip(&self.dims) {
            if i >= d {
                return Err(Error::IndexOutOfRange(format!(
                    "index {i} for local dimension {d}"
                )));
            }
            flat = flat * d + i;
        }
        Ok(flat)
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut multi = vec![0; self.dims.len()];
        for (slot, &d) in multi.iter_mut().zip(&self.dims).rev() {
            *slot = flat % d;
            flat /= d;
        }
        multi
    }

    /// Sizes `(d₁⋯d_k, d_{k+1}⋯dₙ)` of the `k`-split.
    pub fn split_sizes(&self, k: usize) -> Result<(usize, usize)> {
        if k == 0 || k >= self.dims.len() {
            return Err(Error::IndexOutOfRange(format!(
                "split point {k} for {} parties",
                self.dims.len()
            )));
        }
        let left: usize = self.dims[..k].iter().product();
        Ok((left, self.total / left))
    }
}

impl fmt::Display for TensorShape {
    /// `d1xd2x…xdn`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for TensorShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let dims = s
            .trim()
            .split('x')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad shape {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        TensorShape::new(dims)
    }
}

/// A dense vector of the tensor space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorVector {
    shape: TensorShape,
    field: FieldSpec,
    coords: Vec<Scalar>,
}

impl TensorVector {
    pub fn new(shape: TensorShape, field: FieldSpec, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != shape.total() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for shape {shape} (total {})",
                coords.len(),
                shape.total()
            )));
        }
        if let Some(bad) = coords.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(Self {
            shape,
            field,
            coords,
        })
    }

    pub fn from_i64(shape: &TensorShape, field: FieldSpec, coords: &[i64]) -> Result<Self> {
        Self::new(
            shape.clone(),
            field,
            coords.iter().map(|&x| field.from_i64(x)).collect(),
        )
    }

    pub fn zeros(shape: &TensorShape, field: FieldSpec) -> Self {
        Self {
            shape: shape.clone(),
            field,
            coords: vec![field.zero(); shape.total()],
        }
    }

    /// `e_{i₁} ⊗ … ⊗ e_{iₙ}` (0-based indices).
    pub fn basis(shape: &TensorShape, field: FieldSpec, multi: &[usize]) -> Result<Self> {
        let mut v = Self::zeros(shape, field);
        let flat = shape.flat_index(multi)?;
        v.coords[flat] = field.one();
        Ok(v)
    }

    pub fn shape(&self) -> &TensorShape {
        &self.shape
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    fn check_compatible(&self, other: &TensorVector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.shape != other.shape {
            return Err(Error::DimensionMismatch(format!(
                "shapes {} and {}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorVector) -> Result<TensorVector> {
        self.check_compatible(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            shape: self.shape.clone(),
            field: self.field,
            coords,
        })
    }

    pub fn sub(&self, other: &TensorVector) -> Result<TensorVector> {
        self.check_compatible(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            shape: self.shape.clone(),
            field: self.field,
            coords,
        })
    }

    pub fn scale(&self, s: &Scalar) -> TensorVector {
        let coords = self.coords.iter().map(|c| c * s).collect();
        Self {
            shape: self.shape.clone(),
            field: self.field,
            coords,
        }
    }

    /// `⟨self, other⟩ = Σ self(i)·other(i)` (no conjugation).
    pub fn bilinear_form(&self, other: &TensorVector) -> Result<Scalar> {
        self.check_compatible(other)?;
        Ok(dot(&self.coords, &other.coords))
    }

    /// Reshapes into the `(d₁⋯d_k) × (d_{k+1}⋯dₙ)` matrix.
    pub fn matricize(&self, k: usize) -> Result<Matrix> {
        let (rows, cols) = self.shape.split_sizes(k)?;
        Matrix::new(self.field, rows, cols, self.coords.clone())
    }

    /// Inverse of [`TensorVector::matricize`].
    pub fn vectorize(m: &Matrix, shape: &TensorShape) -> Result<TensorVector> {
        if m.rows() * m.cols() != shape.total() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for shape {shape}",
                m.rows(),
                m.cols()
            )));
        }
        Self::new(shape.clone(), m.field(), m.data().to_vec())
    }

    /// Rank of the `k`-split matricization.
    pub fn schmidt_rank(&self, k: usize) -> Result<usize> {
        Ok(self.matricize(k)?.rank())
    }

    /// Contracts party 1 against `u`: the tail vector `Σᵢ u(i)·self(i, ·)`.
    pub fn contract_first(&self, u: &[Scalar]) -> Result<TensorVector> {
        let tail = self.shape.sub(1..self.shape.parties())?;
        let m = self.matricize(1)?;
        let coords = m.transpose().mul_vec(u)?;
        TensorVector::new(tail, self.field, coords)
    }

    /// Contracts parties 2..n against `v`: the party-1 vector `a ↦ ⟨self, a ⊗ v⟩`.
    pub fn contract_rest(&self, v: &TensorVector) -> Result<Vec<Scalar>> {
        let m = self.matricize(1)?;
        if v.field != self.field || v.coords.len() != m.cols() {
            return Err(Error::DimensionMismatch(
                "tail vector does not match".into(),
            ));
        }
        m.mul_vec(&v.coords)
    }

    /// Reorders parties: party `t` of the result is party `perm[t]` of `self`.
    pub fn permute_parties(&self, perm: &[usize]) -> Result<TensorVector> {
        let n = self.shape.parties();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidArgument(format!(
                "{perm:?} is not a permutation of {n} parties"
            )));
        }
        let dims = perm.iter().map(|&p| self.shape.dims[p]).collect();
        let shape = TensorShape::new(dims)?;
        let mut coords = vec![self.field.zero(); shape.total()];
        for (flat, c) in self.coords.iter().enumerate() {
            let old = self.shape.multi_index(flat);
            let new: Vec<usize> = perm.iter().map(|&p| old[p]).collect();
            coords[shape.flat_index(&new)?] = c.clone();
        }
        Ok(TensorVector {
            shape,
            field: self.field,
            coords,
        })
    }

    /// Single-line text form: `shape d1 … dn; FIELD; c1 … cN`.
    pub fn to_text(&self) -> String {
        let dims: Vec<String> = self.shape.dims.iter().map(ToString::to_string).collect();
        let coords: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        format!(
            "shape {}; {}; {}",
            dims.join(" "),
            self.field,
            coords.join(" ")
        )
    }

    pub fn parse(line: &str) -> Result<TensorVector> {
        let mut parts = line.split(';');
        let (Some(shape_part), Some(field_part), Some(coord_part), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(Error::Parse(format!(
                "expected `shape …; field; coords …`, got {line:?}"
            )));
        };
        let (shape, field) = parse_shape_field(&format!("{shape_part};{field_part}"))?;
        let coords = coord_part
            .split_whitespace()
            .map(|t| field.parse_scalar(t))
            .collect::<Result<Vec<_>>>()?;
        TensorVector::new(shape, field, coords).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Parses `shape d1 … dn; FIELD`.
fn parse_shape_field(text: &str) -> Result<(TensorShape, FieldSpec)> {
    let (shape_part, field_part) = text
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("expected `shape …; field`, got {text:?}")))?;
    let dims = shape_part
        .trim()
        .strip_prefix("shape")
        .ok_or_else(|| Error::Parse(format!("missing `shape` keyword in {text:?}")))?
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad dimension {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((TensorShape::new(dims)?, field_part.parse()?))
}

/// Per-party unit vector `e_i` of length `shape.dims()[party]` (0-based).
pub fn standard_basis_vector(
    shape: &TensorShape,
    field: FieldSpec,
    party: usize,
    i: usize,
) -> Result<Vec<Scalar>> {
    let d = *shape
        .dims()
        .get(party)
        .ok_or_else(|| Error::IndexOutOfRange(format!("party {party} of {}", shape.parties())))?;
    if i >= d {
        return Err(Error::IndexOutOfRange(format!(
            "index {i} for local dimension {d}"
        )));
    }
    let mut v = vec![field.zero(); d];
    v[i] = field.one();
    Ok(v)
}

/// Kronecker product of two coordinate vectors (row-major).
pub fn kron_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// A product vector with its factors and embedded coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductVector {
    factors: Vec<Vec<Scalar>>,
    embedded: TensorVector,
}

impl ProductVector {
    pub fn factors(&self) -> &[Vec<Scalar>] {
        &self.factors
    }

    pub fn embedded(&self) -> &TensorVector {
        &self.embedded
    }

    pub fn into_embedded(self) -> TensorVector {
        self.embedded
    }

    pub fn shape(&self) -> &TensorShape {
        self.embedded.shape()
    }

    pub fn is_zero(&self) -> bool {
        self.embedded.is_zero()
    }

    /// Reorders parties as in [`TensorVector::permute_parties`].
    pub fn permute_parties(&self, perm: &[usize]) -> Result<ProductVector> {
        let factors: Vec<Vec<Scalar>> = perm
            .iter()
            .map(|&p| {
                self.factors
                    .get(p)
                    .cloned()
                    .ok_or_else(|| Error::InvalidArgument("bad permutation".into()))
            })
            .collect::<Result<_>>()?;
        let field = self.embedded.field();
        let p = kron(field, factors)?;
        debug_assert_eq!(p.embedded, self.embedded.permute_parties(perm)?);
        Ok(p)
    }

    /// Applies a linear map to every factor: `(M₁a₁) ⊗ … ⊗ (Mₙaₙ)`.
    pub fn map_factors(&self, maps: &[&Matrix]) -> Result<ProductVector> {
        if maps.len() != self.factors.len() {
            return Err(Error::DimensionMismatch(
                "one map per party required".into(),
            ));
        }
        let factors = self
            .factors
            .iter()
            .zip(maps)
            .map(|(f, m)| m.mul_vec(f))
            .collect::<Result<Vec<_>>>()?;
        kron(self.embedded.field(), factors)
    }
}

/// Builds `u⁽¹⁾ ⊗ … ⊗ u⁽ⁿ⁾`.
pub fn kron(field: FieldSpec, factors: Vec<Vec<Scalar>>) -> Result<ProductVector> {
    let shape = TensorShape::new(factors.iter().map(Vec::len).collect())?;
    if let Some(bad) = factors.iter().flatten().find(|s| s.field() != field) {
        return Err(Error::FieldMismatch(field, bad.field()));
    }
    let mut coords = vec![field.one()];
    for f in &factors {
        coords = kron_vec(&coords, f);
    }
    let embedded = TensorVector::new(shape, field, coords)?;
    Ok(ProductVector { factors, embedded })
}

/// A subspace of a tensor space, held as generators (a basis), cogenerators
/// (a basis of the orthogonal complement under the bilinear form) or both.
/// A missing representation is computed on first use.
#[derive(Debug, Clone)]
pub struct Subspace {
    shape: TensorShape,
    field: FieldSpec,
    dim: usize,
    generators: OnceLock<Vec<TensorVector>>,
    cogenerators: OnceLock<Vec<TensorVector>>,
}

fn check_family(shape: &TensorShape, field: FieldSpec, vs: &[TensorVector]) -> Result<()> {
    for v in vs {
        if v.field() != field {
            return Err(Error::FieldMismatch(field, v.field()));
        }
        if v.shape() != shape {
            return Err(Error::DimensionMismatch(format!(
                "vector of shape {} in space {shape}",
                v.shape()
            )));
        }
    }
    Ok(())
}

fn independent(field: FieldSpec, len: usize, vs: &[TensorVector]) -> bool {
    let mut ech = Echelon::new(field, len);
    vs.iter().all(|v| ech.insert(v.coords()))
}

/// Basis of `{u : ⟨v, u⟩ = 0 for all v in vs}`.
fn annihilator(shape: &TensorShape, field: FieldSpec, vs: &[TensorVector]) -> Vec<TensorVector> {
    let rows: Vec<Vec<Scalar>> = vs.iter().map(|v| v.coords().to_vec()).collect();
    if rows.is_empty() {
        return (0..shape.total())
            .map(|i| TensorVector::basis(shape, field, &shape.multi_index(i)).expect("in range"))
            .collect();
    }
    let m = Matrix::from_rows(field, shape.total(), &rows).expect("consistent lengths");
    m.kernel()
        .into_iter()
        .map(|c| TensorVector::new(shape.clone(), field, c).expect("kernel vector has full length"))
        .collect()
}

impl Subspace {
    pub fn from_generators(
        shape: &TensorShape,
        field: FieldSpec,
        generators: Vec<TensorVector>,
    ) -> Result<Self> {
        check_family(shape, field, &generators)?;
        if !independent(field, shape.total(), &generators) {
            return Err(Error::LinearlyDependent("generators".into()));
        }
        Ok(Self {
            shape: shape.clone(),
            field,
            dim: generators.len(),
            generators: OnceLock::from(generators),
            cogenerators: OnceLock::new(),
        })
    }

    pub fn from_cogenerators(
        shape: &TensorShape,
        field: FieldSpec,
        cogenerators: Vec<TensorVector>,
    ) -> Result<Self> {
        check_family(shape, field, &cogenerators)?;
        if !independent(field, shape.total(), &cogenerators) {
            return Err(Error::LinearlyDependent("cogenerators".into()));
        }
        Ok(Self {
            shape: shape.clone(),
            field,
            dim: shape.total() - cogenerators.len(),
            generators: OnceLock::new(),
            cogenerators: OnceLock::from(cogenerators),
        })
    }

    /// Span of an arbitrary family; dependent vectors are dropped.
    pub fn spanned_by(
        shape: &TensorShape,
        field: FieldSpec,
        vectors: &[TensorVector],
    ) -> Result<Self> {
        check_family(shape, field, vectors)?;
        let mut ech = Echelon::new(field, shape.total());
        let basis = vectors
            .iter()
            .filter(|v| ech.insert(v.coords()))
            .cloned()
            .collect();
        Self::from_generators(shape, field, basis)
    }

    /// Common zero set of an arbitrary family of covectors.
    pub fn annihilated_by(
        shape: &TensorShape,
        field: FieldSpec,
        covectors: &[TensorVector],
    ) -> Result<Self> {
        check_family(shape, field, covectors)?;
        let mut ech = Echelon::new(field, shape.total());
        let basis = covectors
            .iter()
            .filter(|v| ech.insert(v.coords()))
            .cloned()
            .collect();
        Self::from_cogenerators(shape, field, basis)
    }

    /// Both representations given; they must describe the same subspace.
    pub fn from_both(
        shape: &TensorShape,
        field: FieldSpec,
        generators: Vec<TensorVector>,
        cogenerators: Vec<TensorVector>,
    ) -> Result<Self> {
        let s = Self::from_generators(shape, field, generators)?;
        check_family(shape, field, &cogenerators)?;
        if !independent(field, shape.total(), &cogenerators)
            || s.dim + cogenerators.len() != shape.total()
        {
            return Err(Error::InconsistentSubspace);
        }
        for g in s.generators() {
            for w in &cogenerators {
                if !g.bilinear_form(w)?.is_zero() {
                    return Err(Error::InconsistentSubspace);
                }
            }
        }
        s.cogenerators.set(cogenerators).expect("fresh subspace");
        Ok(s)
    }

    pub fn full(shape: &TensorShape, field: FieldSpec) -> Self {
        Self::from_cogenerators(shape, field, Vec::new()).expect("empty family")
    }

    pub fn zero(shape: &TensorShape, field: FieldSpec) -> Self {
        Self::from_generators(shape, field, Vec::new()).expect("empty family")
    }

    pub fn shape(&self) -> &TensorShape {
        &self.shape
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.shape.total() - self.dim
    }

    pub fn generators(&self) -> &[TensorVector] {
        self.generators.get_or_init(|| {
            annihilator(
                &self.shape,
                self.field,
                self.cogenerators
                    .get()
                    .expect("one representation is present"),
            )
        })
    }

    pub fn cogenerators(&self) -> &[TensorVector] {
        self.cogenerators.get_or_init(|| {
            annihilator(
                &self.shape,
                self.field,
                self.generators
                    .get()
                    .expect("one representation is present"),
            )
        })
    }

    /// `L^⊥` with respect to the bilinear form: the roles of generators and
    /// cogenerators swap.
    pub fn orthogonal_complement(&self) -> Subspace {
        let generators = OnceLock::new();
        let cogenerators = OnceLock::new();
        if let Some(c) = self.cogenerators.get() {
            let _ = generators.set(c.clone());
        }
        if let Some(g) = self.generators.get() {
            let _ = cogenerators.set(g.clone());
        }
        Subspace {
            shape: self.shape.clone(),
            field: self.field,
            dim: self.codim(),
            generators,
            cogenerators,
        }
    }

    fn check_vector(&self, v: &TensorVector) -> Result<()> {
        check_family(&self.shape, self.field, std::slice::from_ref(v))
    }

    /// `v ∈ L` iff every cogenerator pairs to zero with `v`.
    pub fn contains(&self, v: &TensorVector) -> Result<bool> {
        self.check_vector(v)?;
        Ok(self
            .cogenerators()
            .iter()
            .all(|w| dot(w.coords(), v.coords()).is_zero()))
    }

    /// Membership by rank: appending `v` to the generators does not grow the rank.
    pub fn contains_by_rank(&self, v: &TensorVector) -> Result<bool> {
        self.check_vector(v)?;
        let mut ech = Echelon::new(self.field, self.shape.total());
        for g in self.generators() {
            ech.insert(g.coords());
        }
        Ok(ech.contains(v.coords()))
    }

    /// Same subspace (equal dimension and mutual containment of generators).
    pub fn same_as(&self, other: &Subspace) -> Result<bool> {
        if self.shape != other.shape || self.field != other.field {
            return Ok(false);
        }
        if self.dim != other.dim {
            return Ok(false);
        }
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Text form: a `subspace` header then one tagged vector per line.
    pub fn to_text(&self) -> String {
        let dims: Vec<String> = self.shape.dims.iter().map(ToString::to_string).collect();
        let mut out = format!(
            "subspace shape {}; {}; dim {}\n",
            dims.join(" "),
            self.field,
            self.dim
        );
        for g in self.generators() {
            out.push_str("gen ");
            out.push_str(&g.to_text());
            out.push('\n');
        }
        for w in self.cogenerators() {
            out.push_str("cogen ");
            out.push_str(&w.to_text());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Subspace> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty subspace file".into()))?;
        let body = header
            .strip_prefix("subspace")
            .ok_or_else(|| Error::Parse(format!("expected `subspace` header, got {header:?}")))?;
        let (vec_part, dim_part) = body
            .rsplit_once(';')
            .ok_or_else(|| Error::Parse("header lacks `; dim N`".into()))?;
        let dim: usize = dim_part
            .trim()
            .strip_prefix("dim")
            .and_then(|d| d.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad dim in header {header:?}")))?;
        let (shape, field) = parse_shape_field(vec_part)?;
        let mut gens = Vec::new();
        let mut cogens = Vec::new();
        for line in lines {
            let (tag, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let v = TensorVector::parse(rest)?;
            if v.shape != shape || v.field != field {
                return Err(Error::Parse(format!(
                    "vector {rest:?} does not match header"
                )));
            }
            match tag {
                "gen" => gens.push(v),
                "cogen" => cogens.push(v),
                other => return Err(Error::Parse(format!("unknown role tag {other:?}"))),
            }
        }
        let s = match (gens.is_empty(), cogens.is_empty()) {
            (false, false) => Subspace::from_both(&shape, field, gens, cogens)?,
            (false, true) => Subspace::from_generators(&shape, field, gens)?,
            (true, false) => Subspace::from_cogenerators(&shape, field, cogens)?,
            (true, true) if dim == 0 => Subspace::zero(&shape, field),
            (true, true) if dim == shape.total() => Subspace::full(&shape, field),
            (true, true) => {
                return Err(Error::Parse(
                    "no vectors given for a proper subspace".into(),
                ))
            }
        };
        if s.dim != dim {
            return Err(Error::InconsistentSubspace);
        }
        Ok(s)
    }
}

/// Writes a list of vectors, one `vec` line each, under a `vectors` header.
pub fn vectors_to_text(shape: &TensorShape, field: FieldSpec, vectors: &[TensorVector]) -> String {
    let dims: Vec<String> = shape.dims.iter().map(ToString::to_string).collect();
    let mut out = format!(
        "vectors shape {}; {}; count {}\n",
        dims.join(" "),
        field,
        vectors.len()
    );
    for v in vectors {
        out.push_str("vec ");
        out.push_str(&v.to_text());
        out.push('\n');
    }
    out
}

/// Reads every vector line (`vec`, `gen`, `cogen` or untagged) of a file,
/// skipping headers, blanks and `#` comments.
pub fn parse_vectors(text: &str) -> Result<Vec<TensorVector>> {
    text.lines()
        .map(str::trim)
        .filter(|l| {
            !l.is_empty()
                && !l.starts_with('#')
                && !l.starts_with("vectors")
                && !l.starts_with("subspace")
        })
        .map(|l| {
            let rest = ["vec ", "gen ", "cogen "]
                .iter()
                .find_map(|t| l.strip_prefix(t))
                .unwrap_or(l);
            TensorVector::parse(rest)
        })
        .collect()
}
