pub mod coefficient;
pub mod cyclotomic;
pub mod int;
pub mod padic;
pub mod record;
pub mod ring;
pub mod series;

pub use coefficient::Coefficient;
pub use cyclotomic::CyclotomicRational;
pub use padic::{s_exponent, teichmuller, PadicScalar};
pub use ring::OkRing;
pub use series::{binom_series, LambdaSeries, Pole};
pub use record::{EmbeddingRecord, ScalarRecord, SeriesRecord};
