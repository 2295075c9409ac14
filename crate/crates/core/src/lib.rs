//! Exact construction and certification of product bases in tensor-product
//! spaces `F^{d₁} ⊗ … ⊗ F^{dₙ}` over prime fields GF(p) and the rationals.

pub mod construct;
pub mod error;
pub mod fields;
pub mod gpt;
pub mod linalg;
pub mod par;
pub mod tensor;
pub mod verify;

pub use construct::{
    product_basis_codim1, product_tuple, witness_no_product_basis, ConstructOptions, ProductTuple,
};
pub use error::{Error, Result};
pub use fields::{FieldSpec, Scalar};
pub use linalg::Matrix;
pub use par::Exec;
pub use tensor::{ProductVector, Subspace, TensorShape, TensorVector};
pub use verify::{verify_product_basis, VerificationReport};
