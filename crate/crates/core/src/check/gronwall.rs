use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sampled data for the Gronwall-type lemma: if `f' + χ ≤ L f + M` with
/// `χ, L ≥ 0`, then
/// `f(t) + ∫₀ᵗ χ ≤ exp(∫₀ᵗ L)[f(0) + ∫₀ᵗ exp(−∫₀ˢ L) M(s) ds]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GronwallInput {
    pub times: Vec<f64>,
    pub f: Vec<f64>,
    pub chi: Vec<f64>,
    pub l: Vec<f64>,
    pub m: Vec<f64>,
}

impl GronwallInput {
    pub fn validate(&self) -> Result<()> {
        let n = self.times.len();
        if n == 0 {
            return Err(Error::Contract("Gronwall input needs at least one sample".into()));
        }
        if [self.f.len(), self.chi.len(), self.l.len(), self.m.len()].iter().any(|&k| k != n) {
            return Err(Error::Contract("Gronwall series have different lengths".into()));
        }
        if self.times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Contract("sample times must be strictly increasing".into()));
        }
        if let Some(i) = self.chi.iter().position(|&c| !(c >= 0.0)) {
            return Err(Error::Contract(format!("chi must be nonnegative, chi[{i}] = {}", self.chi[i])));
        }
        if let Some(i) = self.l.iter().position(|&c| !(c >= 0.0)) {
            return Err(Error::Contract(format!("L must be nonnegative, L[{i}] = {}", self.l[i])));
        }
        Ok(())
    }

    /// `f(t) + ∫₀ᵗ χ` at every sample.
    pub fn lhs(&self) -> Vec<f64> {
        let chi = cumulative_trapezoid(&self.times, &self.chi);
        self.f.iter().zip(chi).map(|(f, c)| f + c).collect()
    }
}

/// Running trapezoid integral, starting at zero.
pub fn cumulative_trapezoid(times: &[f64], values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    for i in 0..values.len() {
        if i > 0 {
            acc += 0.5 * (times[i] - times[i - 1]) * (values[i] + values[i - 1]);
        }
        out.push(acc);
    }
    out
}

/// Right-hand bound `exp(G(t))[f0 + ∫₀ᵗ exp(−G(s)) M(s) ds]`, `G = ∫L`, with
/// both integrals trapezoidal on the sample grid.
///
/// The weighted integral is accumulated as `I_k = ∫₀^{t_k} exp(G(t_k) − G(s)) M`
/// so that only differences of `G` are ever exponentiated.
pub fn bound_from(times: &[f64], f0: f64, l: &[f64], m: &[f64]) -> Vec<f64> {
    let g = cumulative_trapezoid(times, l);
    let mut out = Vec::with_capacity(times.len());
    let mut acc = 0.0;
    for k in 0..times.len() {
        if k > 0 {
            let grow = (g[k] - g[k - 1]).exp();
            let h = times[k] - times[k - 1];
            let mut next = 0.5 * h * m[k];
            if m[k - 1] != 0.0 {
                next += 0.5 * h * grow * m[k - 1];
            }
            if acc != 0.0 {
                next += grow * acc;
            }
            acc = next;
        }
        let carried = if f0 == 0.0 { 0.0 } else { f0 * g[k].exp() };
        out.push(carried + acc);
    }
    out
}

/// Evaluates the lemma's bound for validated input.
pub fn gronwall_bound(input: &GronwallInput) -> Result<Vec<f64>> {
    input.validate()?;
    Ok(bound_from(&input.times, input.f[0], &input.l, &input.m))
}

/// Allowed relative error of the closed-form cases.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-6;
/// Allowed relative error against the comparison-equation solve.
pub const COMPARISON_TOLERANCE: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GronwallSelfTest {
    pub samples: usize,
    pub closed_form_error: f64,
    pub comparison_error: f64,
    pub pass: bool,
}

fn max_rel(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs() / y.abs().max(1e-300)).fold(0.0, f64::max)
}

/// Random smooth `L ≥ 0` and `M` built from a few sinusoids.
fn random_coefficients(seed: u64) -> (impl Fn(f64) -> f64, impl Fn(f64) -> f64) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |n: usize| -> Vec<(f64, f64, f64)> {
        (0..n)
            .map(|_| (rng.random_range(-1.0..1.0), rng.random_range(0.5..6.0), rng.random_range(0.0..6.3)))
            .collect()
    };
    let lt = draw(3);
    let mt = draw(3);
    let l = move |t: f64| 1.5 + lt.iter().map(|(a, w, p)| 0.4 * a * (w * t + p).sin()).sum::<f64>();
    let m = move |t: f64| mt.iter().map(|(a, w, p)| a * (w * t + p).sin()).sum::<f64>();
    (l, m)
}

/// Solves `g' = L g + M`, `g(0) = f0` with RK4 on `substeps` steps per
/// sample interval and returns `g` at the samples.
fn comparison_solution(times: &[f64], f0: f64, l: &impl Fn(f64) -> f64, m: &impl Fn(f64) -> f64, substeps: usize) -> Vec<f64> {
    let rhs = |t: f64, g: f64| l(t) * g + m(t);
    let mut g = f0;
    let mut out = vec![g];
    for w in times.windows(2) {
        let h = (w[1] - w[0]) / substeps as f64;
        for k in 0..substeps {
            let t = w[0] + k as f64 * h;
            let k1 = rhs(t, g);
            let k2 = rhs(t + 0.5 * h, g + 0.5 * h * k1);
            let k3 = rhs(t + 0.5 * h, g + 0.5 * h * k2);
            let k4 = rhs(t + h, g + h * k3);
            g += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        out.push(g);
    }
    out
}

/// Closed-form cases (`L`, `M` constant) and a random smooth case compared
/// with a direct solve of the comparison equation, on `samples` points in
/// `[0, 1]`.
pub fn gronwall_selftest(samples: usize, seed: u64) -> Result<GronwallSelfTest> {
    if samples < 2 {
        return Err(Error::Contract("Gronwall self-test needs at least two samples".into()));
    }
    let times: Vec<f64> = (0..samples).map(|i| i as f64 / (samples - 1) as f64).collect();
    let n = samples;
    let mut closed: f64 = 0.0;
    for &(f0, l, m) in &[(3.0, 0.0, 0.0), (1.5, 1.0, 0.0), (1.0, 1.0, 2.0), (0.5, 2.0, -0.25), (2.0, 0.0, 1.0)] {
        let bound = bound_from(&times, f0, &vec![l; n], &vec![m; n]);
        let exact: Vec<f64> = times
            .iter()
            .map(|&t| if l == 0.0 { f0 + m * t } else { (f0 + m / l) * (l * t).exp() - m / l })
            .collect();
        closed = closed.max(max_rel(&bound, &exact));
    }
    let (l, m) = random_coefficients(seed);
    let lv: Vec<f64> = times.iter().map(|&t| l(t)).collect();
    let mv: Vec<f64> = times.iter().map(|&t| m(t)).collect();
    let f0 = 1.0;
    let bound = bound_from(&times, f0, &lv, &mv);
    let reference = comparison_solution(&times, f0, &l, &m, 4);
    let comparison = max_rel(&bound, &reference);
    Ok(GronwallSelfTest {
        samples,
        closed_form_error: closed,
        comparison_error: comparison,
        pass: closed <= CLOSED_FORM_TOLERANCE && comparison <= COMPARISON_TOLERANCE,
    })
}
