//! Exact surgery calculus on framed links in the 3-sphere.

pub mod checks;
pub mod diagram;
pub mod document;
mod error;
pub mod families;
pub mod invariants;
pub mod laurent;
pub mod oracle;
pub mod random;
pub mod surgery;

pub use diagram::{BandSpec, Crossing, Diagram, DiagramError, Edge, Layer, Side, Sign};
pub use invariants::{bracket, jones, skein_triple, BracketError, BracketResult};
pub use laurent::LaurentPoly;
pub use surgery::{AbstractLink, Body, FramedLink, Slope, SlideRecord, SurgeryError};
pub use families::{FamilyError, FamilySpec};
pub use document::{Document, LinkBody, NamedLink, ParseError, PdCode, parse_pd};
pub use error::Error;
