//! Root systems, Chevalley bases, compact real forms, and the sp(n) family.

mod chevalley;
mod compact;
mod roots;
mod sp;

pub use chevalley::ChevalleyConstants;
pub use compact::{compact_form, torus_rotation, Algebra, AlgebraDto, Element, LieAlgebra};
pub use roots::{RootSystem, RootVec};
pub use sp::{block_subalgebra_indices, compact_sp, off_block_module_indices};
