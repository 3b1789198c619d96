//! Exact base-phi (golden mean) expansions of the natural numbers, the
//! parity of their digit sums, and the substitution that generates that
//! parity sequence.

pub mod exactnum;
pub mod harness;
pub mod morphic;
pub mod par;
pub mod phicodec;
