//! Sample budgets and adaptive stopping terms.
//!
//! All logarithms written `log` below are natural; the vertex-diameter
//! term uses an explicit base-2 floor.

use serde::Serialize;

/// Fallback budget `ω = (C/λ²)(⌊log₂(VD − 2)⌋ + 1 + ln(2/δ))`, rounded up.
///
/// The `⌊log₂(VD − 2)⌋` term is taken as 0 when `VD < 4`.
pub fn compute_omega(c: f64, lambda: f64, delta: f64, vd_upper_bound: usize) -> u64 {
    let levels = if vd_upper_bound >= 4 {
        (vd_upper_bound - 2).ilog2() as f64
    } else {
        0.0
    };
    (c / (lambda * lambda) * (levels + 1.0 + (2.0 / delta).ln())).ceil() as u64
}

/// Lower/upper deviation terms `(A, B)` after `tau` samples with running
/// mean `c`, fallback budget `omega` and range factor `alpha`.
///
/// ```text
/// A = (1/τ) log(1/δ₁) (1/3 − ωα/τ + sqrt((1/3 − ωα/τ)² + 2cωα / log(1/δ₁)))
/// B = (1/τ) log(1/δ₂) (1/3 + ωα/τ + sqrt((1/3 + ωα/τ)² + 2cωα / log(1/δ₂)))
/// ```
pub fn stopping_terms(c: f64, tau: u64, omega: u64, alpha: f64, delta1: f64, delta2: f64) -> (f64, f64) {
    debug_assert!(tau >= 1);
    let tau = tau as f64;
    let spread = omega as f64 * alpha;
    let x = spread / tau;
    let term = |log_inv: f64, shift: f64| {
        let base = 1.0 / 3.0 + shift;
        log_inv / tau * (base + (base * base + 2.0 * c * spread / log_inv).sqrt())
    };
    let l1 = (1.0 / delta1).ln();
    let l2 = (1.0 / delta2).ln();
    (term(l1, -x), term(l2, x))
}

/// Which stopping budget a k-path run uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "samples")]
pub enum KPathStopping {
    /// Exactly this many samples.
    Fixed(u64),
    /// `⌈α′² ln(2/δ) / (2λ²)⌉` samples.
    Hoeffding,
    /// Adaptive rule with fallback `⌈α′² ln(4/δ) / (2λ²)⌉`.
    Adaptive,
}

/// The form used for the adaptive k-path deviation terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KPathBoundForm {
    /// `A′`, `B′` mirror the betweenness terms with `ω′`, `α′` substituted.
    #[default]
    Symmetric,
    /// Both terms carry a leading `−1/τ`, `δ₁` and the minus sign.
    Verbatim,
}

/// Hoeffding-style budget for k-path sampling; `None` for fixed budgets.
pub fn compute_omega_prime(stopping: KPathStopping, alpha_prime: f64, lambda: f64, delta: f64) -> Option<u64> {
    let log_term = match stopping {
        KPathStopping::Fixed(_) => return None,
        KPathStopping::Hoeffding => (2.0 / delta).ln(),
        KPathStopping::Adaptive => (4.0 / delta).ln(),
    };
    Some((alpha_prime * alpha_prime * log_term / (2.0 * lambda * lambda)).ceil() as u64)
}

/// `(A′, B′)` for the adaptive k-path rule.
pub fn kpath_stopping_terms(
    c: f64,
    tau: u64,
    omega_prime: u64,
    alpha_prime: f64,
    delta1: f64,
    delta2: f64,
    form: KPathBoundForm,
) -> (f64, f64) {
    match form {
        KPathBoundForm::Symmetric => stopping_terms(c, tau, omega_prime, alpha_prime, delta1, delta2),
        KPathBoundForm::Verbatim => {
            let (a, _) = stopping_terms(c, tau, omega_prime, alpha_prime, delta1, delta1);
            (-a, -a)
        }
    }
}

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_examples() {
        assert_eq!(compute_omega(0.5, 0.1, 0.1, 4), 250);
        assert_eq!(compute_omega(0.5, 0.1, 0.1, 3), 200);
        assert_eq!(compute_omega(0.5, 0.1, 0.1, 2), 200);
        assert_eq!(compute_omega(0.5, 0.1, 0.1, 0), 200);
        // ⌊log₂ 8⌋ = 3
        assert_eq!(compute_omega(0.5, 0.1, 0.1, 10), (50.0f64 * (4.0 + 20f64.ln())).ceil() as u64);
    }

    #[test]
    fn omega_prime_examples() {
        assert_eq!(compute_omega_prime(KPathStopping::Hoeffding, 1.0, 0.05, 0.1), Some(600));
        assert_eq!(compute_omega_prime(KPathStopping::Hoeffding, 0.5, 0.05, 0.1), Some(150));
        assert_eq!(compute_omega_prime(KPathStopping::Hoeffding, 0.0, 0.05, 0.1), Some(0));
        assert_eq!(compute_omega_prime(KPathStopping::Fixed(9), 0.5, 0.05, 0.1), None);
        let adaptive = compute_omega_prime(KPathStopping::Adaptive, 1.0, 0.05, 0.1).unwrap();
        assert_eq!(adaptive, (40f64.ln() / 0.005).ceil() as u64);
    }

    #[test]
    fn terms_match_independent_evaluation() {
        // reference values computed separately from the printed formula
        let (a, b) = stopping_terms(0.01, 1000, 100_000, 0.001, 0.025, 0.025);
        assert!((a - 0.003710059465628605).abs() < 1e-15);
        assert!((b - 0.004750181812870299).abs() < 1e-15);
        let (a, b) = stopping_terms(0.2, 300, 600, 0.5, 0.025, 0.025);
        assert!((a - 0.06241201571535138).abs() < 1e-15);
        assert!((b - 0.08841795095643505).abs() < 1e-15);
    }

    #[test]
    fn zero_alpha_collapses() {
        for tau in [1u64, 7, 50, 1000] {
            let (a, b) = stopping_terms(0.3, tau, 5000, 0.0, 0.025, 0.01);
            assert!((a - 2.0 / (3.0 * tau as f64) * 40f64.ln()).abs() < 1e-12);
            assert!((b - 2.0 / (3.0 * tau as f64) * 100f64.ln()).abs() < 1e-12);
            let (a, b) = kpath_stopping_terms(0.3, tau, 5000, 0.0, 0.025, 0.025, KPathBoundForm::Symmetric);
            assert!((a - b).abs() < 1e-15);
            assert!((a - 2.0 / (3.0 * tau as f64) * 40f64.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn terms_shrink_as_tau_doubles() {
        // B falls for every τ; A rises while ωα/τ > 1/6 and falls after that.
        for &(c, alpha) in &[(0.0, 0.01), (0.01, 0.05), (0.2, 0.5), (0.9, 1.0)] {
            let omega = 10_000;
            let a_from = (6.0 * omega as f64 * alpha).ceil().max(1.0) as u64;
            let mut prev = stopping_terms(c, 1, omega, alpha, 0.025, 0.025);
            let mut prev_a = stopping_terms(c, a_from, omega, alpha, 0.025, 0.025).0;
            let mut prev_k = kpath_stopping_terms(c, 1, omega, alpha, 0.025, 0.025, KPathBoundForm::Symmetric);
            for step in 1..24 {
                let tau = 1u64 << step;
                let cur = stopping_terms(c, tau, omega, alpha, 0.025, 0.025);
                assert!(cur.1 <= prev.1 + 1e-12, "{c} {alpha} {tau}");
                let cur_k = kpath_stopping_terms(c, tau, omega, alpha, 0.025, 0.025, KPathBoundForm::Symmetric);
                assert!(cur_k.1 <= prev_k.1 + 1e-12);
                let cur_a = stopping_terms(c, a_from << step, omega, alpha, 0.025, 0.025).0;
                assert!(cur_a <= prev_a + 1e-12, "{c} {alpha} {}", a_from << step);
                prev = cur;
                prev_k = cur_k;
                prev_a = cur_a;
            }
            assert!(prev.0 < 1e-3 && prev.1 < 1e-3 && prev_a < 1e-3);
        }
    }

    #[test]
    fn lower_term_is_zero_while_spread_dominates() {
        let (a, b) = stopping_terms(0.0, 10, 1000, 0.5, 0.025, 0.025);
        assert!(a.abs() < 1e-15);
        assert!(b > 1.0);
    }

    #[test]
    fn verbatim_kpath_terms_are_never_positive() {
        let (a, b) = kpath_stopping_terms(0.1, 10, 500, 0.4, 0.025, 0.025, KPathBoundForm::Verbatim);
        assert_eq!(a, b);
        assert!(a <= 0.0);
    }

    #[test]
    fn compensated_sum() {
        let mut s = CompensatedSum::default();
        s.add(1.0);
        for _ in 0..10_000 {
            s.add(1e-16);
        }
        assert!((s.value() - (1.0 + 1e-12)).abs() < 1e-18);
    }
}
