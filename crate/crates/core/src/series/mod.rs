//! Truncated power series, Chebyshev rational functions and the catalog of
//! closed-form generating functions.

pub mod catalog;
mod poly;
mod truncated;

pub use catalog::{
    catalog_class, gf_catalog, i_incr_recurrence, j_incr_recurrence, s_incr_exactly, thg_combine, CatalogName, Params,
};
pub use poly::{cheb_p, rk_series, ChebPoly, Poly, RationalGF};
pub use truncated::{catalan_series, ps_add, ps_mul, ps_reciprocal, ps_sub, ps_sub_x2, TruncatedSeries};
