//! The reference automata used throughout the test suites.
//!
//! | name    | states | language                          |
//! |---------|--------|-----------------------------------|
//! | EVEN_A  | 2      | even number of `a`                |
//! | ODD_A   | 2      | odd number of `a`                 |
//! | Z3      | 3      | unary, length divisible by three  |
//! | AB_STAR | 3      | `(ab)*`, not a permutation        |
//! | S3      | 3      | identity in the symmetric group   |

use super::Dfa;

pub const EVEN_A: &str = include_str!("../../fixtures/even_a.aut");
pub const ODD_A: &str = include_str!("../../fixtures/odd_a.aut");
pub const Z3: &str = include_str!("../../fixtures/z3.aut");
pub const AB_STAR: &str = include_str!("../../fixtures/ab_star.aut");
pub const S3: &str = include_str!("../../fixtures/s3.aut");

fn load(text: &str) -> Dfa {
    text.parse().expect("bundled fixture parses")
}

pub fn even_a() -> Dfa {
    load(EVEN_A)
}

pub fn odd_a() -> Dfa {
    load(ODD_A)
}

pub fn z3() -> Dfa {
    load(Z3)
}

pub fn ab_star() -> Dfa {
    load(AB_STAR)
}

pub fn s3() -> Dfa {
    load(S3)
}

/// Z3 with a different final set.
pub fn z3_with_finals(finals: &[usize]) -> Dfa {
    let z = z3();
    Dfa::new(z.alphabet().clone(), 3, &[vec![1, 2, 0]], 0, finals).expect("valid states")
}

pub fn all() -> Vec<Dfa> {
    vec![even_a(), odd_a(), z3(), ab_star(), s3()]
}

/// The permutation fixtures only.
pub fn permutation() -> Vec<Dfa> {
    vec![even_a(), odd_a(), z3(), s3()]
}
