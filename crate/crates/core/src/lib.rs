//! Poset pinball on Weyl group Bruhat boards: Coxeter combinatorics, Billey
//! restrictions, Hessenberg fixed points, flow-up bases over `Q[t]` and the
//! subregular Springer representation.

pub mod billey;
pub mod coxeter;
pub mod flowup;
pub mod game_server;
pub mod hessenberg;
pub mod pinball;
pub mod poly;
pub mod poset;
pub mod repro;
pub mod springer_rep;
mod zpoly;

pub use billey::{BilleyError, RestrictionClass};
pub use coxeter::{CoxeterError, GroupElement, LieType, Root, RootSystem, SignedRoot, WeylGroup, Word};
pub use flowup::{CandidateBasis, FlowupError, IndexPoset, RestrictionVector};
pub use game_server::{GameStore, Reply};
pub use hessenberg::{HessenbergError, HessenbergSpace, Partition};
pub use pinball::{Enumeration, GameConfig, Outcome, PinballError, PinballState, Transcript, Variant, WallReason};
pub use poly::{PolyError, RootPolynomial, TPolynomial};
pub use poset::{ElementSubset, GradedPoset, PosetError, PosetJson};
pub use repro::{ReproError, ReproReport, ReproTarget};
pub use springer_rep::KKMatrix;
