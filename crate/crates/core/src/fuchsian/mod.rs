//! Pants groups and closed-geodesic enumeration.

mod enumerate;
mod mobius;
mod pants;
mod word;

pub use enumerate::{
    calibrated_word_length, class_length, cyclic_classes, enumerate_classes, length_rate, length_spectrum,
    primitive_classes, EnumerationConfig, GeodesicClass, LengthSpectrum, ORIENTATIONS,
};
pub use mobius::{classify_trace, cosh_dist, hyperbolic_generator, translation_length, Isometry, Mobius};
pub use pants::{pants_group, pants_group_with, PantsGroup, DEFAULT_CHECK_LEN, DEFAULT_MAX_BOUNDARY};
pub use word::{is_cyclically_reduced, parse_letters, syllables_of, CyclicWord, Letter, Syllable};
