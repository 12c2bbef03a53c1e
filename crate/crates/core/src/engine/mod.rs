//! Σ-sets, Beauville structures, strong reality and purity.

mod classify;
mod reality;
mod report;
mod search;
mod structure;

pub use classify::{
    check_classifiable, classify, Classification, ClassifyOptions, FoundStructure, SrStatus, Verdict,
};
pub use reality::{sr_check, sr_check_elements, RealityWitness, SrOutcome};
pub use report::{class_inversion_report, obstructed_slot, ClassInversion};
pub use search::{search, SearchOutcome, SearchStrategy};
pub use structure::{
    sigma, verify_structure, BeauvilleStructure, GeneratingPair, Refutation, SigmaSet, StructureType,
    Verification,
};
