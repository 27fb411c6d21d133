//! Comparator metaheuristics in their usual textbook forms. Each one shares
//! the GEWA run contract: best-so-far trace, points inside the box, exact
//! evaluation accounting and seed determinism.

pub mod de;
pub mod hs;
pub mod pso;
pub mod random;
pub mod sa;

pub use de::{de_run, DeConfig};
pub use hs::{hs_run, HsConfig};
pub use pso::{pso_run, PsoConfig};
pub use random::random_search_run;
pub use sa::{sa_run, SaConfig};
