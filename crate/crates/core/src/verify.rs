//! Independent checks: product factorization, basis verification, exhaustive
//! enumeration of product vectors over finite fields and codimension-1 sweeps.

use std::fmt;

use crate::construct::{product_basis_codim1, ConstructOptions, DEFAULT_ENUMERATION_BUDGET};
use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::linalg::{dot, Echelon};
use crate::par::{filter_map_range, map_range, Exec};
use crate::tensor::{kron, ProductVector, Subspace, TensorShape, TensorVector};

/// Splits `v` into factors with `v = a₁ ⊗ … ⊗ a_n`, or `None` if `v` is not a
/// product vector. The zero vector factors as all-zero factors.
pub fn factor_product(v: &TensorVector) -> Option<Vec<Vec<Scalar>>> {
    let shape = v.shape();
    let field = v.field();
    if v.is_zero() {
        return Some(
            shape
                .dims()
                .iter()
                .map(|&d| vec![field.zero(); d])
                .collect(),
        );
    }
    if shape.parties() == 1 {
        return Some(vec![v.coords().to_vec()]);
    }
    let m = v.matricize(1).ok()?;
    if m.rank() != 1 {
        return None;
    }
    let j0 = (0..m.cols()).find(|&j| (0..m.rows()).any(|i| !m[(i, j)].is_zero()))?;
    let head = m.column(j0);
    let i0 = head.iter().position(|x| !x.is_zero())?;
    let pivot = head[i0].inv().ok()?;
    let rest: Vec<Scalar> = m.row(i0).iter().map(|x| x * &pivot).collect();
    let tail = TensorVector::new(shape.sub(1..shape.parties()).ok()?, field, rest).ok()?;
    let mut factors = vec![head];
    factors.extend(factor_product(&tail)?);
    Some(factors)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    NotProduct,
    NotMember,
    Dependent,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::NotProduct => "not_product",
            FailureReason::NotMember => "not_member",
            FailureReason::Dependent => "dependent",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub ok: bool,
    pub failures: Vec<(usize, FailureReason)>,
    pub rank_found: usize,
    pub expected: usize,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ok={} rank={} expected={}",
            self.ok, self.rank_found, self.expected
        )?;
        for (i, reason) in &self.failures {
            writeln!(f, "failure {i} {reason}")?;
        }
        Ok(())
    }
}

/// Checks that `candidates` are product vectors, lie in `l`, are independent
/// and number exactly `dim l`.
pub fn verify_product_basis(candidates: &[TensorVector], l: &Subspace) -> VerificationReport {
    let mut failures = Vec::new();
    let mut ech = Echelon::new(l.field(), l.shape().total());
    for (i, v) in candidates.iter().enumerate() {
        if v.shape() != l.shape() || v.field() != l.field() || !l.contains(v).unwrap_or(false) {
            failures.push((i, FailureReason::NotMember));
            continue;
        }
        if factor_product(v).is_none() {
            failures.push((i, FailureReason::NotProduct));
        }
        if !ech.insert(v.coords()) {
            failures.push((i, FailureReason::Dependent));
        }
    }
    let rank_found = ech.rank();
    VerificationReport {
        ok: failures.is_empty() && rank_found == l.dim() && candidates.len() == l.dim(),
        failures,
        rank_found,
        expected: l.dim(),
    }
}

/// Projective points of `GF(q)^d`: nonzero vectors with leading nonzero entry
/// 1, in lexicographic order.
pub fn projective_points(field: FieldSpec, d: usize) -> Result<Vec<Vec<Scalar>>> {
    let elems = field.enumerate_elements()?;
    let q = elems.len();
    let mut out = Vec::new();
    // Leading 1 at position p, free entries after it.
    for p in (0..d).rev() {
        let free = d - p - 1;
        let count = q.checked_pow(free as u32).ok_or(Error::BudgetExceeded {
            required: u128::MAX,
            budget: 0,
        })?;
        for mut idx in 0..count {
            let mut v = vec![field.zero(); d];
            v[p] = field.one();
            for slot in (p + 1..d).rev() {
                v[slot] = elems[idx % q].clone();
                idx /= q;
            }
            out.push(v);
        }
    }
    Ok(out)
}

fn projective_count(q: u64, d: usize) -> Option<u128> {
    let q = q as u128;
    let qd = q.checked_pow(d as u32)?;
    Some((qd - 1) / (q - 1))
}

/// Every projective product vector of a shape over a finite field, indexed
/// mixed-radix with party 1 most significant.
#[derive(Debug, Clone)]
pub struct ProjectiveProducts {
    field: FieldSpec,
    points: Vec<Vec<Vec<Scalar>>>,
    len: usize,
}

impl ProjectiveProducts {
    pub fn new(shape: &TensorShape, field: FieldSpec, budget: u128) -> Result<Self> {
        let q = field.order().ok_or(Error::NotEnumerable(field))?;
        let required = shape
            .dims()
            .iter()
            .try_fold(1u128, |acc, &d| {
                projective_count(q, d).and_then(|c| acc.checked_mul(c))
            })
            .unwrap_or(u128::MAX);
        if required > budget {
            return Err(Error::BudgetExceeded { required, budget });
        }
        let points = shape
            .dims()
            .iter()
            .map(|&d| projective_points(field, d))
            .collect::<Result<_>>()?;
        Ok(Self {
            field,
            points,
            len: required as usize,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn factors(&self, mut index: usize) -> Vec<Vec<Scalar>> {
        let mut factors = vec![Vec::new(); self.points.len()];
        for (slot, pts) in factors.iter_mut().zip(&self.points).rev() {
            *slot = pts[index % pts.len()].clone();
            index /= pts.len();
        }
        factors
    }

    pub fn get(&self, index: usize) -> ProductVector {
        kron(self.field, self.factors(index)).expect("points match the shape")
    }
}

/// All projective product vectors in `l`, in enumeration order.
pub fn enumerate_product_vectors(
    l: &Subspace,
    budget: u128,
    exec: Exec,
) -> Result<Vec<ProductVector>> {
    let space = ProjectiveProducts::new(l.shape(), l.field(), budget)?;
    let cogens = l.cogenerators();
    Ok(filter_map_range(exec, space.len(), |i| {
        let v = space.get(i);
        cogens
            .iter()
            .all(|w| dot(w.coords(), v.embedded().coords()).is_zero())
            .then_some(v)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceVerdict {
    pub has_basis: bool,
    /// Rank of the span of all product vectors in `l`.
    pub span_rank: usize,
    /// Greedy basis of that span, first independent vectors in enumeration order.
    pub basis: Vec<ProductVector>,
    pub product_count: usize,
}

/// Decides whether `l` has a product basis by enumerating every product
/// vector in it: a basis exists iff they span `l`.
pub fn has_product_basis_bruteforce(
    l: &Subspace,
    budget: u128,
    exec: Exec,
) -> Result<BruteForceVerdict> {
    let products = enumerate_product_vectors(l, budget, exec)?;
    let mut ech = Echelon::new(l.field(), l.shape().total());
    let mut basis = Vec::new();
    for p in &products {
        if ech.rank() == l.dim() {
            break;
        }
        if ech.insert(p.embedded().coords()) {
            basis.push(p.clone());
        }
    }
    Ok(BruteForceVerdict {
        has_basis: ech.rank() == l.dim(),
        span_rank: ech.rank(),
        basis,
        product_count: products.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepEntry {
    pub class_id: usize,
    pub covector: TensorVector,
    pub constructed: bool,
    pub oracle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub shape: TensorShape,
    pub field: FieldSpec,
    pub entries: Vec<SweepEntry>,
}

impl SweepReport {
    pub fn classes(&self) -> usize {
        self.entries.len()
    }

    pub fn with_product_basis(&self) -> usize {
        self.entries.iter().filter(|e| e.oracle).count()
    }

    pub fn constructed(&self) -> usize {
        self.entries.iter().filter(|e| e.constructed).count()
    }

    /// Classes where the construction and the oracle disagree.
    pub fn discrepancies(&self) -> Vec<&SweepEntry> {
        self.entries
            .iter()
            .filter(|e| e.constructed != e.oracle)
            .collect()
    }

    /// Hyperplanes without a product basis.
    pub fn counterexamples(&self) -> Vec<&SweepEntry> {
        self.entries.iter().filter(|e| !e.oracle).collect()
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# sweep shape {}; {}", self.shape, self.field)?;
        for e in &self.entries {
            let cov: Vec<String> = e.covector.coords().iter().map(|x| x.to_string()).collect();
            writeln!(
                f,
                "{}; {}; constructed:{}; oracle:{}",
                e.class_id,
                cov.join(" "),
                if e.constructed { "ok" } else { "fail" },
                e.oracle
            )?;
        }
        writeln!(
            f,
            "# summary: {} classes, {} with product basis, {} constructed, {} discrepancies",
            self.classes(),
            self.with_product_basis(),
            self.constructed(),
            self.discrepancies().len()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOptions {
    pub seed: u64,
    /// Cap on the number of classes and on each oracle run.
    pub budget: u128,
    pub exec: Exec,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            budget: DEFAULT_ENUMERATION_BUDGET,
            exec: Exec::default(),
        }
    }
}

/// Runs the construction and the brute-force oracle on every hyperplane
/// `w^⊥`, one `w` per projective class.
pub fn sweep_codim1(
    shape: &TensorShape,
    field: FieldSpec,
    opts: &SweepOptions,
) -> Result<SweepReport> {
    let q = field.order().ok_or(Error::NotEnumerable(field))?;
    let classes = projective_count(q, shape.total()).unwrap_or(u128::MAX);
    if classes > opts.budget {
        return Err(Error::BudgetExceeded {
            required: classes,
            budget: opts.budget,
        });
    }
    // Fails early when a single oracle run is over budget.
    ProjectiveProducts::new(shape, field, opts.budget)?;
    let covectors = projective_points(field, shape.total())?;
    let results = map_range(opts.exec, covectors.len(), |id| -> Result<SweepEntry> {
        let w = TensorVector::new(shape.clone(), field, covectors[id].clone())?;
        let l = Subspace::from_cogenerators(shape, field, vec![w.clone()])?;
        let copts = ConstructOptions {
            seed: opts.seed ^ (id as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
            force: true,
            ..ConstructOptions::default()
        };
        let constructed = product_basis_codim1(&l, &copts)
            .map(|t| verify_product_basis(&t.embedded(), &l).ok)
            .unwrap_or(false);
        let oracle = has_product_basis_bruteforce(&l, opts.budget, Exec::Sequential)?.has_basis;
        Ok(SweepEntry {
            class_id: id,
            covector: w,
            constructed,
            oracle,
        })
    });
    Ok(SweepReport {
        shape: shape.clone(),
        field,
        entries: results.into_iter().collect::<Result<_>>()?,
    })
}
