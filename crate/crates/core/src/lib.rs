pub mod data;
pub mod error;
pub mod frobenius;
pub mod hyper;
pub mod linalg;
pub mod moonshine;
pub mod poly;
pub mod qvalue;
pub mod ratfunc;
pub mod rational;
pub mod schwarzfit;
pub mod series;
