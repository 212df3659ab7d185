//! Fractional Gaussian noise, fractional Brownian paths and symmetric
//! alpha-stable samples.

mod fgn;
mod io;
mod stable;

pub use fgn::{
    fgn_autocovariance, fgn_to_fbm, generate_fgn, generate_fgn_batch, generate_fgn_hosking,
    FgnGenerator, FgnSeries, HOSKING_MAX_LEN,
};
pub use io::{read_series, write_series, SeriesFile, SeriesFormat, SeriesKind};
pub use stable::{generate_stable, StableSeries};
