//! Exact computations on Adams-Hilton models: free chain algebras over the
//! integers, their morphisms and homotopies, and the exact sequences that
//! describe groups of self-homotopy equivalences of cell attachments.

pub mod dga;
pub mod exactlinalg;
pub mod exec;
pub mod homotopy;
pub mod morphisms;
pub mod random;
pub mod selfequiv;
pub mod tensoralg;
