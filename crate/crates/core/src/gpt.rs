//! Real-GPT certificates over Q: partial transposes, exact inertia, the
//! entanglement certificate for the projection onto a two-dimensional
//! subspace, and perfect distinguishability by trace pairing.

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::linalg::Matrix;
use crate::tensor::{kron, ProductVector, Subspace, TensorShape, TensorVector};

const Q: FieldSpec = FieldSpec::rational();

/// A rational symmetric matrix acting on the space of a tensor shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix {
    shape: TensorShape,
    matrix: Matrix,
}

impl SymMatrix {
    pub fn new(shape: &TensorShape, matrix: Matrix) -> Result<Self> {
        let n = shape.total();
        if matrix.field() != Q {
            return Err(Error::FieldMismatch(matrix.field(), Q));
        }
        if matrix.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for shape {shape}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix != matrix.transpose() {
            return Err(Error::InvalidArgument("matrix is not symmetric".into()));
        }
        Ok(Self {
            shape: shape.clone(),
            matrix,
        })
    }

    /// `|v⟩⟨v|`.
    pub fn outer(v: &TensorVector) -> Result<Self> {
        let n = v.shape().total();
        let c = v.coords();
        let data = (0..n * n).map(|k| &c[k / n] * &c[k % n]).collect();
        Self::new(v.shape(), Matrix::new(v.field(), n, n, data)?)
    }

    pub fn shape(&self) -> &TensorShape {
        &self.shape
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        if self.shape != other.shape {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {}",
                self.shape, other.shape
            )));
        }
        let data = self
            .matrix
            .data()
            .iter()
            .zip(other.matrix.data())
            .map(|(a, b)| a + b)
            .collect();
        let n = self.shape.total();
        Self::new(&self.shape, Matrix::new(Q, n, n, data)?)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.shape.total()).fold(Q.zero(), |acc, i| &acc + &self.matrix[(i, i)])
    }

    pub fn det(&self) -> Scalar {
        self.matrix.det().expect("square")
    }

    /// Transposes the indices of `party` (0-based):
    /// `(i, j), (k, l) ↦ (i, l), (k, j)` for `party = 1` of a bipartite shape.
    pub fn partial_transpose(&self, party: usize) -> Result<SymMatrix> {
        if party >= self.shape.parties() {
            return Err(Error::IndexOutOfRange(format!(
                "party {party} of {}",
                self.shape
            )));
        }
        let n = self.shape.total();
        let mut out = Matrix::zeros(Q, n, n);
        for a in 0..n {
            for b in 0..n {
                let mut ma = self.shape.multi_index(a);
                let mut mb = self.shape.multi_index(b);
                std::mem::swap(&mut ma[party], &mut mb[party]);
                let a2 = self.shape.flat_index(&ma)?;
                let b2 = self.shape.flat_index(&mb)?;
                out[(a, b)] = self.matrix[(a2, b2)].clone();
            }
        }
        Self::new(&self.shape, out)
    }

    pub fn inertia(&self) -> Inertia {
        inertia(&self.matrix).expect("validated symmetric rational matrix")
    }

    /// Header `sym N N Q shape d1 … dn`, then one row per line.
    pub fn to_text(&self) -> String {
        let n = self.shape.total();
        let dims: Vec<String> = self.shape.dims().iter().map(|d| d.to_string()).collect();
        let mut s = format!("sym {n} {n} Q shape {}\n", dims.join(" "));
        for i in 0..n {
            let row: Vec<String> = self.matrix.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<SymMatrix> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        if tokens.len() < 6 || tokens[0] != "sym" || tokens[4] != "shape" {
            return Err(Error::Parse(format!("bad header: {header}")));
        }
        if tokens[3].parse::<FieldSpec>()? != Q {
            return Err(Error::Parse("symmetric matrices are rational".into()));
        }
        let dims = tokens[5..]
            .iter()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad dimension {t}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let shape = TensorShape::new(dims)?;
        let n = shape.total();
        let rows: Vec<usize> = tokens[1..3]
            .iter()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad size {t}"))))
            .collect::<Result<_>>()?;
        if rows != [n, n] {
            return Err(Error::Parse(format!(
                "size {}x{} does not match shape {shape}",
                rows[0], rows[1]
            )));
        }
        let mut data = Vec::with_capacity(n * n);
        for line in lines {
            for tok in line.split_whitespace() {
                data.push(Q.parse_scalar(tok)?);
            }
        }
        if data.len() != n * n {
            return Err(Error::Parse(format!(
                "expected {} entries, found {}",
                n * n,
                data.len()
            )));
        }
        Self::new(&shape, Matrix::new(Q, n, n, data)?)
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Numbers of positive, negative and zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.positive, self.negative, self.zero)
    }
}

/// Inertia of a rational symmetric matrix by symmetric elimination
/// (Sylvester's law), using 1×1 pivots and `[[0, b], [b, 0]]` pivots when
/// the diagonal vanishes.
pub fn inertia(m: &Matrix) -> Result<Inertia> {
    if m.field() != Q {
        return Err(Error::FieldMismatch(m.field(), Q));
    }
    if m.rows() != m.cols() || *m != m.transpose() {
        return Err(Error::InvalidArgument(
            "inertia needs a symmetric matrix".into(),
        ));
    }
    let mut a: Vec<Vec<BigRational>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.as_rational().expect("rational").clone())
                .collect()
        })
        .collect();
    let zero = BigRational::from_integer(0.into());
    let mut res = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    while !a.is_empty() {
        let k = a.len();
        if let Some(i) = (0..k).find(|&i| a[i][i] != zero) {
            let p = a[i][i].clone();
            if p > zero {
                res.positive += 1;
            } else {
                res.negative += 1;
            }
            let keep: Vec<usize> = (0..k).filter(|&x| x != i).collect();
            a = keep
                .iter()
                .map(|&x| {
                    keep.iter()
                        .map(|&y| &a[x][y] - &a[x][i] * &a[i][y] / &p)
                        .collect()
                })
                .collect();
        } else if let Some((i, j)) = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .find(|&(i, j)| a[i][j] != zero)
        {
            let b = a[i][j].clone();
            res.positive += 1;
            res.negative += 1;
            let keep: Vec<usize> = (0..k).filter(|&x| x != i && x != j).collect();
            a = keep
                .iter()
                .map(|&x| {
                    keep.iter()
                        .map(|&y| &a[x][y] - (&a[x][i] * &a[j][y] + &a[x][j] * &a[i][y]) / &b)
                        .collect()
                })
                .collect();
        } else {
            res.zero += k;
            break;
        }
    }
    Ok(res)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    NotSeparable,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotSeparable => "NOT_SEPARABLE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Certificate that the projection onto `L = span{e₁⊗e₁, (e₁+e₂)⊗(e₁+e₂)}`
/// (times `e₁` on the remaining parties) is not a separable real effect.
#[derive(Debug, Clone)]
pub struct EntanglementCertificate {
    /// Product basis of `L` in the full shape.
    pub basis: Vec<ProductVector>,
    pub subspace: Subspace,
    /// `B = |e₁₁⟩⟨e₁₁| + |u⟩⟨u|` with `u = (e₁₂ + e₂₁ + e₂₂)/√3`, on `F² ⊗ F²`.
    pub block: SymMatrix,
    /// Orthogonal projection onto `L` in the full shape.
    pub projection: SymMatrix,
    pub partial_transpose: SymMatrix,
    pub det: Scalar,
    pub inertia: Inertia,
    pub verdict: Verdict,
}

impl fmt::Display for EntanglementCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "det={}, inertia={}, verdict={}",
            self.det, self.inertia, self.verdict
        )
    }
}

/// Builds the certificate for a shape with at least two parties; the
/// subspace lives in the leading `2 × 2` block of parties 1 and 2.
pub fn build_entanglement_certificate(shape: &TensorShape) -> Result<EntanglementCertificate> {
    if shape.parties() < 2 {
        return Err(Error::InvalidShape(
            "at least two parties are needed".into(),
        ));
    }
    let e = |d: usize, i: usize| -> Vec<Scalar> {
        let mut v = vec![Q.zero(); d];
        v[i] = Q.one();
        v
    };
    let plus = |d: usize| -> Vec<Scalar> {
        let mut v = e(d, 0);
        v[1] = Q.one();
        v
    };
    let dims = shape.dims();
    let tail: Vec<Vec<Scalar>> = dims[2..].iter().map(|&d| e(d, 0)).collect();
    let lift = |a: Vec<Scalar>, b: Vec<Scalar>| {
        let mut factors = vec![a, b];
        factors.extend(tail.iter().cloned());
        kron(Q, factors)
    };
    let basis = vec![
        lift(e(dims[0], 0), e(dims[1], 0))?,
        lift(plus(dims[0]), plus(dims[1]))?,
    ];
    let subspace = Subspace::from_generators(
        shape,
        Q,
        basis.iter().map(|p| p.embedded().clone()).collect(),
    )?;

    let block_shape = TensorShape::new(vec![2, 2])?;
    let third = Q.fraction(1, 3)?;
    let u = TensorVector::new(
        block_shape.clone(),
        Q,
        vec![Q.zero(), third.clone(), third.clone(), third],
    )?;
    let mut block = SymMatrix::outer(&TensorVector::basis(&block_shape, Q, &[0, 0])?)?;
    // |u⟩⟨u| for the normalized u has entries 1/3 on {01, 10, 11}.
    let uu = SymMatrix::outer(&u)?;
    let scaled: Vec<Scalar> = uu
        .matrix()
        .data()
        .iter()
        .map(|x| x * &Q.from_i64(3))
        .collect();
    block = block.add(&SymMatrix::new(
        &block_shape,
        Matrix::new(Q, 4, 4, scaled)?,
    )?)?;

    let n = shape.total();
    let mut full = Matrix::zeros(Q, n, n);
    let embed = |i: usize| -> Result<usize> {
        let mut multi = vec![0; shape.parties()];
        multi[0] = i / 2;
        multi[1] = i % 2;
        shape.flat_index(&multi)
    };
    for i in 0..4 {
        for j in 0..4 {
            full[(embed(i)?, embed(j)?)] = block.matrix()[(i, j)].clone();
        }
    }
    let projection = SymMatrix::new(shape, full)?;

    let partial_transpose = block.partial_transpose(1)?;
    let det = partial_transpose.det();
    let inertia = partial_transpose.inertia();
    let verdict = if inertia.negative > 0 {
        Verdict::NotSeparable
    } else {
        Verdict::Inconclusive
    };
    Ok(EntanglementCertificate {
        basis,
        subspace,
        block,
        projection,
        partial_transpose,
        det,
        inertia,
        verdict,
    })
}

/// States and measurement effects with the unit effect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ensemble {
    pub states: Vec<SymMatrix>,
    pub measurement: Vec<SymMatrix>,
    pub unit: SymMatrix,
}

fn trace_pairing(x: &SymMatrix, y: &SymMatrix) -> Result<Scalar> {
    if x.shape() != y.shape() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {}",
            x.shape(),
            y.shape()
        )));
    }
    // Tr(XY) = Σ X_ij Y_ji = Σ X_ij Y_ij for symmetric Y.
    Ok(x.matrix()
        .data()
        .iter()
        .zip(y.matrix().data())
        .fold(Q.zero(), |acc, (a, b)| acc + a * b))
}

/// `Tr(ρ_i M_j) = δ_ij`, `Σ M_j = unit`, and optionally every state and
/// effect positive semidefinite.
pub fn verify_distinguishable(ensemble: &Ensemble, check_psd: bool) -> Result<bool> {
    let Ensemble {
        states,
        measurement,
        unit,
    } = ensemble;
    if states.len() != measurement.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} states and {} measurement elements",
            states.len(),
            measurement.len()
        )));
    }
    for (i, rho) in states.iter().enumerate() {
        for (j, m) in measurement.iter().enumerate() {
            let t = trace_pairing(rho, m)?;
            if (i == j && !t.is_one()) || (i != j && !t.is_zero()) {
                return Ok(false);
            }
        }
    }
    let mut sum = SymMatrix::new(
        unit.shape(),
        Matrix::zeros(Q, unit.shape().total(), unit.shape().total()),
    )?;
    for m in measurement {
        sum = sum.add(m)?;
    }
    if &sum != unit {
        return Ok(false);
    }
    if check_psd
        && states
            .iter()
            .chain(measurement)
            .any(|x| x.inertia().negative > 0)
    {
        return Ok(false);
    }
    Ok(true)
}

/// Computational-basis states `|e_ij⟩⟨e_ij|` measured by the same projectors.
pub fn standard_ensemble(d1: usize, d2: usize) -> Result<Ensemble> {
    let shape = &TensorShape::new(vec![d1, d2])?;
    let n = shape.total();
    let projectors = (0..n)
        .map(|k| SymMatrix::outer(&TensorVector::basis(shape, Q, &shape.multi_index(k))?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ensemble {
        states: projectors.clone(),
        measurement: projectors,
        unit: SymMatrix::new(shape, Matrix::identity(Q, n))?,
    })
}
