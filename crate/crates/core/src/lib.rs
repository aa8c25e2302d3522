//! Rearranges the member order of each dimension of a sparse data cube so
//! that full cells cluster geometrically, and scores the result with a
//! neighborhood-based homogeneity index.
//!
//! The pipeline flattens the cube's facts into a complete disjunctive
//! (one-hot) table, runs a multiple correspondence analysis on it, maps every
//! dimension to the factorial axis it contributes most to, and sorts that
//! dimension's modalities by their coordinates on the chosen axis. Quality is
//! measured by counting Moore-adjacent pairs of full cells before and after.
//!
//! * [`cube`]: schema, fact ingestion, occupancy, sampling, permutation.
//! * [`mca`]: disjunctive table, Burt table, eigensystem, contributions.
//! * [`arrange`]: axis selection and modality ordering.
//! * [`homogeneity`]: neighborhood index, gain, brute-force oracle.
//! * [`synthetic`]: seeded fixture generators (planted blocks, random cubes).

pub mod arrange;
pub mod cube;
mod error;
pub mod homogeneity;
mod jacobi;
pub mod mca;
pub mod synthetic;

pub use arrange::{arrange_cube, Arrangement, AxisSelection, DimensionArrangement};
pub use cube::{load_fact_table, Cube, CubeSchema, DimensionSpec, Fact, SchemaDoc};
pub use error::{Error, Result};
pub use homogeneity::HomogeneityReport;
pub use mca::{BurtTable, Contributions, DisjunctiveTable, EigenSystem};
