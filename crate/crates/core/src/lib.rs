//! Factor statistics of fixed points of primitive substitutions: complexity,
//! special factors, symmetry groups, exact factor frequencies, Rauzy graphs
//! and bounds on the number of distinct frequencies.

pub mod bounds;
pub mod checks;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod frequency;
pub mod language;
pub mod morphism;
pub mod number;
pub mod poly;
pub mod rauzy;
pub mod spectral;
pub mod symmetry;
pub mod word;

pub use error::*;
pub use language::{ExtensionRecord, LanguageIndex, SpecialFactors};
pub use morphism::{IntegerMatrix, Morphism};
pub use number::{AlgebraicNumber, ApproxValue, FrequencyValue, NumberField};
pub use spectral::{perron_data, Mode, SpectralData};
pub use word::{Alphabet, Letter, LetterSet, Word};
pub use symmetry::{Orientation, Symmetry, SymmetryGroup};
pub use frequency::{FrequencyEngine, FrequencyMap, Interpretation};
pub use rauzy::{RauzyGraph, ReducedRauzyGraph, SimplePath};
pub use bounds::{BoundContext, BoundReport};
