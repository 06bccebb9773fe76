//! Shape gradient flow for the renormalized energy, the non-existence
//! mechanisms (cutting, erase-and-dilate, chains) and the (α, m) scan.

mod flow;
mod gradient;
mod mechanisms;
mod phase;

pub use flow::{gradient_flow, FlowConfig, FlowResult};
pub use gradient::{el_residual, energy_eps, shape_gradient, ShapeGradient};
pub use mechanisms::{
    chain_ansatz_energy, cut_delta, cut_delta_by_energies, diameter_bounds_check,
    erase_dilate_gain, interpolation_ratio, line_cut_test, ChainAnsatz, DiameterCheck, LineCut,
};
pub use phase::{
    classify, phase_csv, phase_scan, PhaseCell, PhaseScanConfig, PhaseVerdict, Verdict,
};
