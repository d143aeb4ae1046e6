pub mod bdtriple;
pub mod centralizer;
pub mod cli;
pub mod exactnum;
pub mod orders;
pub mod rmatrix;
pub mod rootsys;
pub mod twisted;
