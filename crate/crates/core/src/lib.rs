pub mod algebra;
pub mod error;
pub mod exactla;
pub mod fpfun;
pub mod modcat;
pub mod verify;
pub mod cli;
