//! Finitely generated abelian groups and symbolic group expressions.

mod expr;
mod group;

pub use expr::{Bounds, GroupExpression, ParseExprError, Summand};
pub use group::{factorize, is_prime, ko_point_table, FGAbelianGroup};
