use serde::Serialize;

/// Time series recorded along a run at the diagnostic cadence.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    pub t: Vec<f64>,
    /// `‖θ‖_∞`, refined-grid maximum polished by Newton steps.
    pub sup: Vec<f64>,
    /// `‖θ‖_{Ḃ^0_{∞,1}}`
    pub besov0: Vec<f64>,
    /// `‖θ‖_{Ḃ^1_{∞,1}}`
    pub besov1: Vec<f64>,
    /// `‖θ‖_{L²}`
    pub l2: Vec<f64>,
    /// Trapezoidal `∫_0^t ‖θ‖_{Ḃ^1_{∞,1}} dτ`.
    pub besov1_integral: Vec<f64>,
    /// `‖θ(t)‖² + 2∫_0^t ⟨Gθ, θ⟩ dτ - ‖θ_0‖²`, relative to `‖θ_0‖²`.
    pub energy_defect: Vec<f64>,
}

impl Diagnostics {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Column names and values, in CSV order.
    pub fn columns(&self) -> Vec<(&'static str, &[f64])> {
        vec![
            ("t", &self.t),
            ("sup", &self.sup),
            ("besov0_inf1", &self.besov0),
            ("besov1_inf1", &self.besov1),
            ("l2", &self.l2),
            ("besov1_integral", &self.besov1_integral),
            ("energy_defect", &self.energy_defect),
        ]
    }
}
