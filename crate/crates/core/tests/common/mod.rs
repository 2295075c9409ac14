#![allow(dead_code)]

use prodbasis::{FieldSpec, Matrix, Scalar, TensorShape, TensorVector};
use proptest::prelude::*;

pub const Q: FieldSpec = FieldSpec::rational();

pub fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

pub fn fields() -> Vec<FieldSpec> {
    vec![gf(2), gf(3), gf(5), gf(101), Q]
}

pub fn shape(dims: &[usize]) -> TensorShape {
    TensorShape::new(dims.to_vec()).unwrap()
}

/// `num/den` in `field`, falling back to `num` when `den` vanishes there.
pub fn scalar(field: FieldSpec, num: i64, den: i64) -> Scalar {
    field
        .fraction(num, den)
        .unwrap_or_else(|_| field.from_i64(num))
}

pub fn entry() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=6, 1i64..=4)
}

pub fn entries(n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    proptest::collection::vec(entry(), n)
}

pub fn to_scalars(field: FieldSpec, raw: &[(i64, i64)]) -> Vec<Scalar> {
    raw.iter().map(|&(a, b)| scalar(field, a, b)).collect()
}

pub fn matrix(field: FieldSpec, rows: usize, cols: usize, raw: &[(i64, i64)]) -> Matrix {
    Matrix::new(field, rows, cols, to_scalars(field, &raw[..rows * cols])).unwrap()
}

pub fn vector(shape: &TensorShape, field: FieldSpec, raw: &[(i64, i64)]) -> TensorVector {
    TensorVector::new(
        shape.clone(),
        field,
        to_scalars(field, &raw[..shape.total()]),
    )
    .unwrap()
}

pub fn ints(field: FieldSpec, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| field.from_i64(x)).collect()
}
