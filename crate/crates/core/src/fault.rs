//! Deliberate defects used by the law checkers' mutation fixtures.
//!
//! Each flag corrupts one construction in a way a correct checker must
//! detect. Production code paths always pass [`Faults::NONE`].

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct Faults {
    /// Action morphism composition uses `ξ₂∘ξ₁` instead of `ξ₁∘ξ₂`.
    pub isa_reversed_xi: bool,
    /// Couple composition pairs every arrow of `K₁` with every arrow of `K₂`.
    pub pullback_ignores_matching: bool,
    /// Spectral action uses `ζ(s e s*)` instead of `ζ(s* e s)`.
    pub spectral_conjugation_reversed: bool,
    /// Transformation groupoid identifies `(s,x)` and `(t,x)` whenever
    /// `se = te` for some idempotent `e`, ignoring `x ∈ D_e`.
    pub classes_ignore_domain: bool,
    /// Slice action uses `d ∘ (r|_U)⁻¹` instead of `r ∘ (d|_U)⁻¹`.
    pub slice_inverse_direction: bool,
    /// `σ_φ` keeps only the first preimage of each arrow.
    pub sigma_first_preimage_only: bool,
    /// Counit picks the arrow of the bisection with the given range.
    pub counit_by_range: bool,
    /// Paterson map sends `δ_s` to the bisection of `s*`.
    pub paterson_inverse_bisection: bool,
}

impl Faults {
    pub const NONE: Faults = Faults {
        isa_reversed_xi: false,
        pullback_ignores_matching: false,
        spectral_conjugation_reversed: false,
        classes_ignore_domain: false,
        slice_inverse_direction: false,
        sigma_first_preimage_only: false,
        counit_by_range: false,
        paterson_inverse_bisection: false,
    };
}
