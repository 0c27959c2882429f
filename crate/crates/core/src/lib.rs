pub mod ddouble;
pub mod error;
pub mod exact;
pub mod reduce;
pub mod rootsys;
pub mod torus;

pub use error::{Error, Result};
pub use rootsys::{DegenerateSplit, Family, RootSystem, RootSystemSpec, WeightVec};
pub use torus::TorusPoint;
pub mod asymptotics;
pub mod charcalc;
pub mod orbit;
pub mod spectral;
pub mod weylgroup;
