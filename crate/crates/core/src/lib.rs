//! Verification toolkit for Diophantine tuples: exact tuple algebra, Pell
//! enumeration, rigorous bound chains for linear forms in logarithms, and
//! Baker-Davenport reduction campaigns.

pub mod campaigns;
pub mod linforms;
pub mod pell;
pub mod real;
pub mod reduction;
pub mod tuple;

pub use campaigns::{CampaignKind, CampaignReport, CampaignSpec};
pub use linforms::BoundCertificate;
pub use pell::{FundamentalSolution, PellProblem, PellSolution};
pub use real::Interval;
pub use reduction::{ReductionOutcome, ReductionProblem};
pub use rug::Integer;
pub use tuple::{DiophantinePair, DiophantineTriple, RegularQuadruple, TripleClassification};
