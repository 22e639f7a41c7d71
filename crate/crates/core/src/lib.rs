//! Balanced cluster completion, deletion and editing: kernels, exact FPT
//! solvers, a brute-force oracle and a small instance harness.

pub mod algo;
pub mod binb;
pub mod cccd;
pub mod fast;
pub mod graph;
pub mod harness;
pub mod kernel;
pub mod kernel_bcc;
pub mod kernel_bcd;
pub mod kernel_bce;
pub mod oracle;
pub mod partition;

pub use graph::{verify_solution, EditSet, Graph, Instance, Variant};
pub use kernel::{KernelError, KernelResult, Outcome};

/// Runs the kernel matching the instance's variant.
pub fn kernelize(inst: &Instance) -> Result<KernelResult, KernelError> {
    match inst.variant {
        Variant::Bcc => kernel_bcc::kernelize_bcc(inst),
        Variant::Bcd => kernel_bcd::kernelize_bcd(inst),
        Variant::Bce => kernel_bce::kernelize_bce(inst),
    }
}

/// Vertex bound a reduced instance of this variant is guaranteed to meet.
pub fn kernel_bound(variant: Variant, k: usize) -> usize {
    match variant {
        Variant::Bcc => kernel_bcc::bcc_vertex_bound(k),
        Variant::Bcd => kernel_bcd::bcd_vertex_bound(k),
        Variant::Bce => kernel_bce::bce_vertex_bound(k),
    }
}
