//! The binary tree of coprime pairs generated from `[1,2]` by `tau0[a,b] = [a,a+b]` and
//! `tau1[a,b] = [b,a+b]`, the codes naming its vertices, and exhaustive sweeps over it.
//!
//! ```
//! use coprime_tree::{apply_code, decode, norm1, Code, Pair};
//!
//! let code: Code = "1011".parse().unwrap();
//! assert_eq!(apply_code(&code), Pair::from((7, 12)));
//! assert_eq!(decode(&Pair::from((7, 12))).unwrap(), code);
//! assert_eq!(norm1(&apply_code(&code)).to_string(), "19");
//! ```

pub mod analysis;
pub mod cli;
pub mod code;
pub mod export;
pub mod tree;

pub use code::{
    cluster_average, cluster_number, cluster_variance, complement, format_code, is_palindrome,
    parse_code, refl, weight, Code, CodeError, Rational,
};
pub use tree::{
    add, apply_code, apply_code_from, code_length, decode, is_tree_pair, norm1, parent, reduce,
    scale, tau, tau0, tau1, trajectory, Pair, Step, Trajectory, TreeError,
};
