pub mod constants;
pub mod degrees;
pub mod distances;
pub mod generate;
pub mod gfun;
pub mod percolation;
