//! Closed-form tail bounds for self-bounding, (a, b)-self-bounding and
//! subadditive functions of independent bits.
//!
//! Every bound is computed as a log-probability first; the probability is
//! `exp(log_bound)`.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue {
    pub bound: f64,
    pub log_bound: f64,
}

impl BoundValue {
    pub fn from_log(log_bound: f64) -> Self {
        BoundValue {
            bound: log_bound.exp(),
            log_bound,
        }
    }

    pub const ONE: BoundValue = BoundValue {
        bound: 1.0,
        log_bound: 0.0,
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Deviation {
    /// `delta`, with the event at `(1 ± delta) E[Z]`.
    Relative(f64),
    /// `t`, with the event at `E[Z] ± t`.
    Absolute(f64),
}

/// A tail event around the mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailQuery {
    pub mean: f64,
    pub deviation: Deviation,
    pub side: Side,
}

impl TailQuery {
    pub fn new(mean: f64, deviation: Deviation, side: Side) -> Result<Self> {
        check_mean(mean)?;
        let d = match deviation {
            Deviation::Relative(d) | Deviation::Absolute(d) => d,
        };
        if !(d >= 0.0 && d.is_finite()) {
            return Err(Error::Domain(format!(
                "deviation must be finite and >= 0, got {d}"
            )));
        }
        Ok(TailQuery {
            mean,
            deviation,
            side,
        })
    }

    pub fn t(&self) -> f64 {
        match self.deviation {
            Deviation::Relative(d) => d * self.mean,
            Deviation::Absolute(t) => t,
        }
    }

    pub fn delta(&self) -> f64 {
        match self.deviation {
            Deviation::Relative(d) => d,
            Deviation::Absolute(t) => t / self.mean,
        }
    }
}

fn check_mean(mean: f64) -> Result<()> {
    if mean > 0.0 && mean.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "mean must be finite and > 0, got {mean}"
        )))
    }
}

fn check_nonneg(name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{name} must be finite and >= 0, got {v}"
        )))
    }
}

fn check_ab(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && a >= 1.0 / 3.0) {
        return Err(Error::Domain(format!("a must be >= 1/3, got {a}")));
    }
    check_nonneg("b", b)
}

/// `(e^lambda - lambda - 1) E[Z]`, the log-moment-generating bound for
/// self-bounding `Z`.
pub fn entropy_moment_bound(lambda: f64, mean: f64) -> f64 {
    (lambda.exp_m1() - lambda) * mean
}

/// `Pr[Z >= (1+delta) E[Z]] <= (e^delta / (1+delta)^(1+delta))^E[Z]`.
pub fn chernoff_upper(mean: f64, delta: f64) -> Result<BoundValue> {
    check_mean(mean)?;
    check_nonneg("delta", delta)?;
    let log = mean * (delta - (1.0 + delta) * delta.ln_1p());
    Ok(BoundValue::from_log(log.min(0.0)))
}

/// `Pr[Z <= (1-delta) E[Z]] <= exp(-delta^2 E[Z] / 2)` for `delta <= 1`.
pub fn chernoff_lower(mean: f64, delta: f64) -> Result<BoundValue> {
    check_mean(mean)?;
    check_nonneg("delta", delta)?;
    if delta > 1.0 {
        return Err(Error::Domain(format!(
            "lower tail needs delta <= 1 (the event is Z < 0 otherwise), got {delta}"
        )));
    }
    Ok(BoundValue::from_log(-delta * delta * mean / 2.0))
}

/// `Pr[Z >= E[Z] + t] <= exp(-t^2 / (2 E[Z] + 2t/3))`.
pub fn alt_upper(mean: f64, t: f64) -> Result<BoundValue> {
    check_mean(mean)?;
    check_nonneg("t", t)?;
    Ok(BoundValue::from_log(-t * t / (2.0 * mean + 2.0 * t / 3.0)))
}

/// `Pr[Z >= E[Z] + t] <= exp(-t^2 / 2 / (a E[Z] + b + c t))`, `c = (3a - 1)/6`.
pub fn ab_upper(a: f64, b: f64, mean: f64, t: f64) -> Result<BoundValue> {
    check_ab(a, b)?;
    check_mean(mean)?;
    check_nonneg("t", t)?;
    if t == 0.0 {
        return Ok(BoundValue::ONE);
    }
    let c = (3.0 * a - 1.0) / 6.0;
    Ok(BoundValue::from_log(-0.5 * t * t / (a * mean + b + c * t)))
}

/// `Pr[Z <= E[Z] - t] <= exp(-t^2 / 2 / (a E[Z] + b))` for `t <= E[Z]`.
pub fn ab_lower(a: f64, b: f64, mean: f64, t: f64) -> Result<BoundValue> {
    check_ab(a, b)?;
    check_mean(mean)?;
    check_nonneg("t", t)?;
    if t > mean {
        return Err(Error::Domain(format!(
            "lower tail needs t <= E[Z] = {mean}, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(BoundValue::ONE);
    }
    Ok(BoundValue::from_log(-0.5 * t * t / (a * mean + b)))
}

/// Evaluate the bound matching a [`TailQuery`] under the named form.
pub fn evaluate(spec: BoundSpec, query: &TailQuery) -> Result<BoundValue> {
    match (spec, query.side) {
        (BoundSpec::ChernoffUpper, Side::Upper) => chernoff_upper(query.mean, query.delta()),
        (BoundSpec::ChernoffLower, Side::Lower) => chernoff_lower(query.mean, query.delta()),
        (BoundSpec::AltUpper, Side::Upper) => alt_upper(query.mean, query.t()),
        (BoundSpec::AbUpper { a, b }, Side::Upper) => ab_upper(a, b, query.mean, query.t()),
        (BoundSpec::AbLower { a, b }, Side::Lower) => ab_lower(a, b, query.mean, query.t()),
        (spec, side) => Err(Error::Domain(format!(
            "{} does not bound the {side:?} tail",
            spec.name()
        ))),
    }
}

/// A bound form addressable by name, e.g. in tail tables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum BoundSpec {
    ChernoffUpper,
    ChernoffLower,
    AltUpper,
    AbUpper { a: f64, b: f64 },
    AbLower { a: f64, b: f64 },
}

impl BoundSpec {
    pub fn side(self) -> Side {
        match self {
            BoundSpec::ChernoffUpper | BoundSpec::AltUpper | BoundSpec::AbUpper { .. } => {
                Side::Upper
            }
            BoundSpec::ChernoffLower | BoundSpec::AbLower { .. } => Side::Lower,
        }
    }

    /// Column name: `chernoff_upper`, `ab_upper(a=2;b=0)`, ...
    pub fn name(self) -> String {
        match self {
            BoundSpec::ChernoffUpper => "chernoff_upper".into(),
            BoundSpec::ChernoffLower => "chernoff_lower".into(),
            BoundSpec::AltUpper => "alt_upper".into(),
            BoundSpec::AbUpper { a, b } => format!("ab_upper(a={a};b={b})"),
            BoundSpec::AbLower { a, b } => format!("ab_lower(a={a};b={b})"),
        }
    }

    /// Parse `chernoff-upper`, `chernoff-lower`, `alt-upper`,
    /// `ab-upper:A:B`, `ab-lower:A:B`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = text.trim().split(':');
        let head = parts.next().unwrap_or_default();
        let rest: Vec<&str> = parts.collect();
        let ab = |rest: &[&str]| -> Result<(f64, f64)> {
            match rest {
                [a, b] => {
                    let a: f64 = a
                        .parse()
                        .map_err(|_| Error::Input(format!("bad a in {text:?}")))?;
                    let b: f64 = b
                        .parse()
                        .map_err(|_| Error::Input(format!("bad b in {text:?}")))?;
                    check_ab(a, b)?;
                    Ok((a, b))
                }
                _ => Err(Error::Input(format!(
                    "{head} needs parameters as {head}:A:B"
                ))),
            }
        };
        let spec = match (head, rest.as_slice()) {
            ("chernoff-upper", []) => BoundSpec::ChernoffUpper,
            ("chernoff-lower", []) => BoundSpec::ChernoffLower,
            ("alt-upper", []) => BoundSpec::AltUpper,
            ("ab-upper", r) => {
                let (a, b) = ab(r)?;
                BoundSpec::AbUpper { a, b }
            }
            ("ab-lower", r) => {
                let (a, b) = ab(r)?;
                BoundSpec::AbLower { a, b }
            }
            _ => return Err(Error::Input(format!("unknown bound {text:?}"))),
        };
        Ok(spec)
    }
}

/// Level `a`, `Pr[Z <= a]`, and integers `q`, `k` for the subadditive
/// upper-tail bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubadditiveTailQuery {
    pub threshold: f64,
    pub p_below: f64,
    pub q: u32,
    pub k: u32,
}

/// Smallest `q` the general statement is proved for.
pub const SUBADDITIVE_MIN_Q: u32 = 18;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubadditiveTail {
    /// `p_below^(-q) q^(-k)`; may exceed 1.
    pub bound: f64,
    pub log_bound: f64,
    /// `(q + 1) a + k`: the bound controls `Pr[Z >= event_threshold]`.
    pub event_threshold: f64,
    /// `false` when `q < 18` or `a = 0` was accepted in permissive mode.
    pub hypothesis_met: bool,
}

/// `Pr[Z >= (q+1) a + k] <= Pr[Z <= a]^(-q) q^(-k)`.
///
/// With `strict_hypothesis`, `q < 18` or `a = 0` is rejected; otherwise
/// any `q >= 2` and `a >= 0` is evaluated and flagged.
pub fn subadditive_tail(
    query: &SubadditiveTailQuery,
    strict_hypothesis: bool,
) -> Result<SubadditiveTail> {
    let SubadditiveTailQuery {
        threshold,
        p_below,
        q,
        k,
    } = *query;
    if !(threshold >= 0.0 && threshold.is_finite()) {
        return Err(Error::Domain(format!(
            "threshold a must be >= 0, got {threshold}"
        )));
    }
    if !(p_below > 0.0 && p_below <= 1.0) {
        return Err(Error::Domain(format!(
            "Pr[Z <= a] must lie in (0, 1], got {p_below}"
        )));
    }
    if q < 2 {
        return Err(Error::Domain(format!("q must be an integer >= 2, got {q}")));
    }
    if k < 1 {
        return Err(Error::Domain(format!("k must be >= 1, got {k}")));
    }
    let hypothesis_met = q >= SUBADDITIVE_MIN_Q && threshold > 0.0;
    if strict_hypothesis && !hypothesis_met {
        return Err(Error::Hypothesis(format!(
            "the subadditive tail bound is stated for a > 0 and q >= {SUBADDITIVE_MIN_Q}, \
             got a = {threshold}, q = {q}"
        )));
    }
    let qf = f64::from(q);
    let log_bound = -qf * p_below.ln() - f64::from(k) * qf.ln();
    Ok(SubadditiveTail {
        bound: log_bound.exp(),
        log_bound,
        event_threshold: (qf + 1.0) * threshold + f64::from(k),
        hypothesis_met,
    })
}

/// Upper-tail forms compared by [`min_deviation_for_target`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum UpperForm {
    /// Deviation is `delta`.
    Chernoff,
    /// Deviation is `t`.
    Alt,
    /// Deviation is `t`.
    Ab { a: f64, b: f64 },
}

impl UpperForm {
    fn log_bound(self, mean: f64, deviation: f64) -> Result<f64> {
        Ok(match self {
            UpperForm::Chernoff => chernoff_upper(mean, deviation)?.log_bound,
            UpperForm::Alt => alt_upper(mean, deviation)?.log_bound,
            UpperForm::Ab { a, b } => ab_upper(a, b, mean, deviation)?.log_bound,
        })
    }
}

pub const DEVIATION_REL_TOL: f64 = 1e-9;

/// Smallest deviation at which the form's bound drops to `target_p`,
/// by bisection (each bound is non-increasing in the deviation).
pub fn min_deviation_for_target(form: UpperForm, mean: f64, target_p: f64) -> Result<f64> {
    check_mean(mean)?;
    if target_p.is_nan() || target_p <= 0.0 {
        return Err(Error::Domain(format!(
            "target probability must be > 0, got {target_p}"
        )));
    }
    if target_p >= 1.0 {
        return Ok(0.0);
    }
    let log_target = target_p.ln();
    let ok = |d: f64| -> Result<bool> { Ok(form.log_bound(mean, d)? <= log_target) };

    let mut hi = 1.0;
    while !ok(hi)? {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Domain("bound does not reach the target".into()));
        }
    }
    let mut lo = 0.0;
    while hi - lo > DEVIATION_REL_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if ok(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
