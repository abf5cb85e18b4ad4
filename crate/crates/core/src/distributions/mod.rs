//! Null laws, the g1–g7 alternative families and their samplers.

mod alternative;
mod null;
mod sample;

pub use alternative::{Alternative, AlternativeFamily};
pub use null::NullDistribution;
pub use sample::{sample_alternative, sample_null, Sample};
