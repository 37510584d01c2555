pub mod de;
pub mod ga;
pub mod gwo;
pub mod pso;
pub mod sa;
