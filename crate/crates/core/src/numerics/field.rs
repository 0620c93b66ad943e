use crate::spinor::Spinor4;

/// A spinor field ψ(x, t) as consumed by the verifiers.
pub trait SpinorField: Sync {
    fn psi(&self, x: [f64; 3], t: f64) -> Spinor4;

    /// Analytic ∂ψ/∂t + i(mc²/ħ)ψ: the time derivative with the rest-energy
    /// phase e^{-imc²t/ħ} taken out. `None` means the verifier falls back to
    /// finite differences.
    fn envelope_rate(&self, _x: [f64; 3], _t: f64) -> Option<Spinor4> {
        None
    }

    /// True when ψ = e^{-iEt/ħ}φ(x), so every bilinear is time independent.
    fn is_stationary(&self) -> bool {
        false
    }
}

/// Wraps a closure as a field without analytic time information.
pub struct FnField<F>(pub F);

impl<F> SpinorField for FnField<F>
where
    F: Fn([f64; 3], f64) -> Spinor4 + Sync,
{
    fn psi(&self, x: [f64; 3], t: f64) -> Spinor4 {
        (self.0)(x, t)
    }
}

impl<T: SpinorField + ?Sized> SpinorField for &T {
    fn psi(&self, x: [f64; 3], t: f64) -> Spinor4 {
        (**self).psi(x, t)
    }
    fn envelope_rate(&self, x: [f64; 3], t: f64) -> Option<Spinor4> {
        (**self).envelope_rate(x, t)
    }
    fn is_stationary(&self) -> bool {
        (**self).is_stationary()
    }
}
