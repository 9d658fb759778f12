//! Exact computer algebra for graded braided algebras of diagonal type.
//!
//! The pipeline is: a presentation (alphabet, bicharacter, homogeneous
//! relations) is completed to a truncated Gröbner basis, whose irreducible
//! Lyndon words give PBW generators via braided bracketing. Around that core
//! sit checks for comultiplications, coideal subalgebras, Hilbert series and
//! Anick chains.

pub mod braiding;
pub mod cli;
pub mod coalg;
pub mod freealg;
pub mod groebner;
pub mod linalg;
pub mod oracle;
pub mod pbw;
pub mod presentation;
pub mod scalar;
pub mod series;
pub mod words;
