//! Witnesses, deformation families, strata census and the `H(c)` series.

pub mod census;
pub mod construction;
pub mod series;
pub mod witness;

pub use census::{strata_census, CensusTarget, StrataCensus, Strategy, StrategyStats};
pub use construction::{verify_partition_construction, PartitionReport};
pub use series::{
    alpha, component_count, h_of_c, pell_alphas, series_data, series_dimensions, SeriesData,
    SeriesDimensions,
};
pub use witness::{deformation, random_linear_change, witness, Family, Witness, H1, H2};
