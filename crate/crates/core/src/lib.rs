//! Exact computations with graded modules for `sl_{n+1}[t]`: fusion products
//! of Kirillov–Reshetikhin modules and generalized Demazure modules.
//!
//! The guide in `book/` walks through each module with runnable examples.

pub mod affine;
pub mod cache;
pub mod demazure;
pub mod error;
pub mod linalg;
pub mod lweight;
pub mod module;
pub mod rational;
pub mod typea;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Q;

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/affine.md")]
    mod affine {}
    #[doc = include_str!("../../../book/src/lweights.md")]
    mod lweights {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/demazure.md")]
    mod demazure {}
    #[doc = include_str!("../../../book/src/verify.md")]
    mod verify {}
}
