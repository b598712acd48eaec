pub mod degfun;
pub mod fields;
pub mod laurent;
pub mod poly;
pub mod value;
pub mod wild;
