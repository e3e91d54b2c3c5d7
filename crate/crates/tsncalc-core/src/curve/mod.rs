//! Exact piecewise-linear, ultimately pseudo-periodic curves and the
//! min-plus operations the rest of the engine is built on.
//!
//! A [`Curve`] stores an alternating point/segment element list that
//! tiles `[0, T0 + d)` together with the pseudo-period data `(T0, d, c)`:
//! for every `t >= T0`, `f(t + d) = f(t) + c`. Burst-delay curves carry
//! an `eventually_infinite` marker instead: their elements tile a closed
//! interval `[0, E]` and the value is `+inf` for `t > E`. This encodes
//! both continuity conventions exactly — staircase curves with jumps as
//! well as continuous rate-latency curves.
//!
//! All public constructors canonicalize (collinear elements merged,
//! minimal period, minimal period start), so structural equality of two
//! curves is equality of the functions they represent.

mod closure;
mod compose;
mod convolution;
mod deconvolution;
mod deviation;
mod pointwise;
mod primitives;
mod sampling;
mod sweep;

pub use compose::compose;
pub use convolution::min_plus_convolution;
pub use deconvolution::min_plus_deconvolution;
pub use deviation::{horizontal_deviation, vertical_deviation};
pub use pointwise::{pointwise, PointwiseMode};
pub use sampling::sample_csv;

use crate::rational::{rem_euclid, Rational};
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Errors produced by curve construction and the min-plus operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("time argument must be non-negative, got {0}")]
    NegativeTime(String),
    #[error("invalid curve parameter: {0}")]
    InvalidParameter(String),
    #[error("operation requires non-decreasing curves: {0}")]
    NotNonDecreasing(String),
    #[error("unbounded result: {0}")]
    Unbounded(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Extended value: finite rational or an infinity.
///
/// Public curves only ever hold finite values (plus the eventual-infinity
/// marker); the infinite variants appear while combining intermediate
/// pieces inside the min-plus algorithms. Ordering follows the derived
/// variant order: `MinusInfinity < Finite(_) < PlusInfinity`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Value {
    MinusInfinity,
    Finite(Rational),
    PlusInfinity,
}

impl Value {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Value::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Value::Finite(_))
    }

    pub fn expect_finite(&self) -> &Rational {
        self.finite().expect("expected a finite curve value")
    }

    fn add_rat(&self, r: &Rational) -> Value {
        match self {
            Value::Finite(v) => Value::Finite(v + r),
            other => other.clone(),
        }
    }

    fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a + b),
            (Value::PlusInfinity, Value::MinusInfinity)
            | (Value::MinusInfinity, Value::PlusInfinity) => {
                panic!("undefined sum of opposite infinities")
            }
            (Value::PlusInfinity, _) | (_, Value::PlusInfinity) => Value::PlusInfinity,
            (Value::MinusInfinity, _) | (_, Value::MinusInfinity) => Value::MinusInfinity,
        }
    }

    fn neg(&self) -> Value {
        match self {
            Value::Finite(v) => Value::Finite(-v),
            Value::PlusInfinity => Value::MinusInfinity,
            Value::MinusInfinity => Value::PlusInfinity,
        }
    }

    fn scale(&self, k: &Rational) -> Value {
        if k.is_zero() {
            return Value::Finite(Rational::zero());
        }
        match self {
            Value::Finite(v) => Value::Finite(v * k),
            Value::PlusInfinity => {
                if k.is_negative() {
                    Value::MinusInfinity
                } else {
                    Value::PlusInfinity
                }
            }
            Value::MinusInfinity => {
                if k.is_negative() {
                    Value::PlusInfinity
                } else {
                    Value::MinusInfinity
                }
            }
        }
    }
}

/// One element of a curve: an isolated point or an open segment.
///
/// The value on the open interval `(start, end)` of a segment is
/// `y_start + slope * (t - start)`; `y_start` is the right-limit at
/// `start`, which together with explicit points encodes jumps exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveElement {
    Point {
        x: Rational,
        y: Value,
    },
    Segment {
        start: Rational,
        end: Rational,
        y_start: Value,
        slope: Rational,
    },
}

impl CurveElement {
    pub fn point(x: Rational, y: Value) -> Self {
        CurveElement::Point { x, y }
    }

    pub fn segment(start: Rational, end: Rational, y_start: Value, slope: Rational) -> Self {
        debug_assert!(start < end, "segment must have positive length");
        let slope = if y_start.is_finite() { slope } else { Rational::zero() };
        CurveElement::Segment { start, end, y_start, slope }
    }

    pub fn x_start(&self) -> &Rational {
        match self {
            CurveElement::Point { x, .. } => x,
            CurveElement::Segment { start, .. } => start,
        }
    }

    pub fn x_end(&self) -> &Rational {
        match self {
            CurveElement::Point { x, .. } => x,
            CurveElement::Segment { end, .. } => end,
        }
    }

    /// Value at `x`, which must lie inside the element.
    pub fn value_at(&self, at: &Rational) -> Value {
        match self {
            CurveElement::Point { x, y } => {
                debug_assert_eq!(x, at);
                y.clone()
            }
            CurveElement::Segment { start, end, y_start, slope } => {
                debug_assert!(start < at && at < end);
                y_start.add_rat(&(slope * (at - start)))
            }
        }
    }

    /// Right limit at `start` for segments, the value itself for points.
    pub fn start_limit(&self) -> Value {
        match self {
            CurveElement::Point { y, .. } => y.clone(),
            CurveElement::Segment { y_start, .. } => y_start.clone(),
        }
    }

    /// Left limit at `end` for segments, the value itself for points.
    pub fn end_limit(&self) -> Value {
        match self {
            CurveElement::Point { y, .. } => y.clone(),
            CurveElement::Segment { start, end, y_start, slope } => {
                y_start.add_rat(&(slope * (end - start)))
            }
        }
    }

    fn shift_x(&self, dx: &Rational) -> CurveElement {
        match self {
            CurveElement::Point { x, y } => CurveElement::Point { x: x + dx, y: y.clone() },
            CurveElement::Segment { start, end, y_start, slope } => CurveElement::Segment {
                start: start + dx,
                end: end + dx,
                y_start: y_start.clone(),
                slope: slope.clone(),
            },
        }
    }

    fn shift_y(&self, dy: &Rational) -> CurveElement {
        match self {
            CurveElement::Point { x, y } => {
                CurveElement::Point { x: x.clone(), y: y.add_rat(dy) }
            }
            CurveElement::Segment { start, end, y_start, slope } => CurveElement::Segment {
                start: start.clone(),
                end: end.clone(),
                y_start: y_start.add_rat(dy),
                slope: slope.clone(),
            },
        }
    }

    fn scale_y(&self, k: &Rational) -> CurveElement {
        match self {
            CurveElement::Point { x, y } => {
                CurveElement::Point { x: x.clone(), y: y.scale(k) }
            }
            CurveElement::Segment { start, end, y_start, slope } => CurveElement::Segment {
                start: start.clone(),
                end: end.clone(),
                y_start: y_start.scale(k),
                slope: slope * k,
            },
        }
    }
}

/// Exact piecewise-linear, ultimately pseudo-periodic curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    /// Alternating point/segment list. Tiles `[0, period_start +
    /// period_length)` for ordinary curves and `[0, E]` (ending with a
    /// point) for eventually infinite ones.
    elements: Vec<CurveElement>,
    period_start: Rational,
    period_length: Rational,
    period_increment: Rational,
    eventually_infinite: bool,
}

impl Curve {
    /// Builds a curve from raw parts and canonicalizes it.
    ///
    /// `elements` must tile `[0, period_start + period_length)` and the
    /// pseudo-periodic contract must hold for the given parameters; both
    /// are the caller's responsibility (checked by debug assertions).
    pub(crate) fn from_raw_parts(
        elements: Vec<CurveElement>,
        period_start: Rational,
        period_length: Rational,
        period_increment: Rational,
    ) -> Curve {
        let curve = Curve {
            elements,
            period_start,
            period_length,
            period_increment,
            eventually_infinite: false,
        };
        debug_assert!(sweep::is_well_formed(&curve.elements), "{curve:?}");
        curve.canonicalize()
    }

    /// Builds an eventually infinite curve: finite on the closed interval
    /// covered by `elements`, `+inf` afterwards.
    pub(crate) fn from_finite_closed(elements: Vec<CurveElement>) -> Curve {
        debug_assert!(sweep::is_well_formed(&elements));
        debug_assert!(matches!(elements.last(), Some(CurveElement::Point { .. })));
        let end = elements.last().unwrap().x_end().clone();
        Curve {
            elements: sweep::merge_collinear(elements),
            period_start: end,
            period_length: Rational::from_integer(1.into()),
            period_increment: Rational::zero(),
            eventually_infinite: true,
        }
    }

    pub fn elements(&self) -> &[CurveElement] {
        &self.elements
    }

    /// Start of the pseudo-periodic part (`T0`).
    pub fn period_start(&self) -> &Rational {
        &self.period_start
    }

    /// Pseudo-period length (`d`).
    pub fn period_length(&self) -> &Rational {
        &self.period_length
    }

    /// Per-period increment (`c`).
    pub fn period_increment(&self) -> &Rational {
        &self.period_increment
    }

    /// True for burst-delay style curves that are `+inf` beyond a point.
    pub fn is_eventually_infinite(&self) -> bool {
        self.eventually_infinite
    }

    /// End of the finite element domain: `T0 + d`, or `E` when marked.
    pub(crate) fn domain_end(&self) -> Rational {
        if self.eventually_infinite {
            self.period_start.clone()
        } else {
            &self.period_start + &self.period_length
        }
    }

    /// Long-term growth rate; `None` for eventually infinite curves.
    pub fn long_run_rate(&self) -> Option<Rational> {
        if self.eventually_infinite {
            None
        } else {
            Some(&self.period_increment / &self.period_length)
        }
    }

    /// Exact value at `t >= 0`. Points take precedence at breakpoints.
    pub fn evaluate(&self, t: &Rational) -> Result<Value, CurveError> {
        if t.is_negative() {
            return Err(CurveError::NegativeTime(t.to_string()));
        }
        Ok(self.value_unchecked(t))
    }

    pub(crate) fn value_unchecked(&self, t: &Rational) -> Value {
        if self.eventually_infinite {
            let end = self.domain_end();
            if *t > end {
                return Value::PlusInfinity;
            }
            return sweep::eval(&self.elements, t);
        }
        let end = self.domain_end();
        if *t < end {
            return sweep::eval(&self.elements, t);
        }
        let offset = t - &self.period_start;
        let reduced = &self.period_start + rem_euclid(&offset, &self.period_length);
        let periods = ((t - &reduced) / &self.period_length).to_integer();
        let shift = Rational::from_integer(periods) * &self.period_increment;
        sweep::eval(&self.elements, &reduced).add_rat(&shift)
    }

    /// Materializes the curve on `[0, horizon]` as a closed element list.
    pub(crate) fn unroll(&self, horizon: &Rational) -> Vec<CurveElement> {
        debug_assert!(!horizon.is_negative());
        if self.eventually_infinite {
            let end = self.domain_end();
            if *horizon <= end {
                return sweep::slice(&self.elements, &Rational::zero(), horizon, true);
            }
            let mut out = self.elements.clone();
            out.push(CurveElement::segment(
                end,
                horizon.clone(),
                Value::PlusInfinity,
                Rational::zero(),
            ));
            out.push(CurveElement::point(horizon.clone(), Value::PlusInfinity));
            return out;
        }
        let end = self.domain_end();
        if *horizon < end {
            return sweep::slice(&self.elements, &Rational::zero(), horizon, true);
        }
        let window = sweep::slice(&self.elements, &self.period_start, &end, false);
        let mut out = self.elements.clone();
        let mut covered = end.clone();
        let mut dx = self.period_length.clone();
        let mut dy = self.period_increment.clone();
        while covered <= *horizon {
            out.extend(
                window
                    .iter()
                    .map(|el| el.shift_x(&dx).shift_y(&dy)),
            );
            covered += &self.period_length;
            dx += &self.period_length;
            dy += &self.period_increment;
        }
        sweep::slice(&out, &Rational::zero(), horizon, true)
    }

    /// True when the curve never decreases over its whole domain.
    pub fn is_non_decreasing(&self) -> bool {
        !self.period_increment.is_negative() && sweep::is_non_decreasing(&self.elements)
    }

    /// Scales all values by a non-negative factor.
    pub fn scale(&self, k: &Rational) -> Result<Curve, CurveError> {
        if k.is_negative() {
            return Err(CurveError::InvalidParameter(format!(
                "scale factor must be non-negative, got {k}"
            )));
        }
        Ok(self.scale_unchecked(k))
    }

    pub(crate) fn scale_unchecked(&self, k: &Rational) -> Curve {
        if self.eventually_infinite {
            let elements = self.elements.iter().map(|el| el.scale_y(k)).collect();
            return Curve::from_finite_closed(elements);
        }
        Curve::from_raw_parts(
            self.elements.iter().map(|el| el.scale_y(k)).collect(),
            self.period_start.clone(),
            self.period_length.clone(),
            &self.period_increment * k,
        )
    }

    /// Time shift with clamping at zero: returns `t -> f(max(0, t + dt))`.
    ///
    /// A positive `dt` advances the curve, a negative `dt` delays it and
    /// extends the initial value over `[0, -dt]`.
    pub fn shift_time(&self, dt: &Rational) -> Curve {
        if dt.is_zero() {
            return self.clone();
        }
        if dt.is_negative() {
            let delay = -dt;
            let at_zero = sweep::eval(&self.elements, &Rational::zero());
            let mut out = vec![
                CurveElement::point(Rational::zero(), at_zero.clone()),
                CurveElement::segment(
                    Rational::zero(),
                    delay.clone(),
                    at_zero,
                    Rational::zero(),
                ),
            ];
            out.extend(self.elements.iter().map(|el| el.shift_x(&delay)));
            if self.eventually_infinite {
                return Curve::from_finite_closed(out);
            }
            return Curve::from_raw_parts(
                out,
                &self.period_start + &delay,
                self.period_length.clone(),
                self.period_increment.clone(),
            );
        }
        // Advance: drop the prefix [0, dt).
        if self.eventually_infinite {
            let end = self.domain_end();
            if *dt >= end {
                // Only the closing value (or nothing) remains finite.
                let y = self.value_unchecked(dt);
                if y.is_finite() {
                    return Curve::from_finite_closed(vec![CurveElement::point(
                        Rational::zero(),
                        y,
                    )]);
                }
                // Entirely infinite: represent as a zero-length finite part
                // is impossible, so keep a single infinite point curve.
                return Curve::from_finite_closed(vec![CurveElement::point(
                    Rational::zero(),
                    Value::PlusInfinity,
                )]);
            }
            let sliced = sweep::slice(&self.elements, dt, &end, true);
            let neg = -dt;
            let out: Vec<_> = sliced.iter().map(|el| el.shift_x(&neg)).collect();
            return Curve::from_finite_closed(out);
        }
        let new_start = if *dt >= self.period_start {
            Rational::zero()
        } else {
            &self.period_start - dt
        };
        let needed = &new_start + &self.period_length + dt;
        let unrolled = self.unroll(&needed);
        let sliced = sweep::slice(&unrolled, dt, &needed, false);
        let neg = -dt;
        let out: Vec<_> = sliced.iter().map(|el| el.shift_x(&neg)).collect();
        Curve::from_raw_parts(
            out,
            new_start,
            self.period_length.clone(),
            self.period_increment.clone(),
        )
    }

    /// Canonical form: collinear elements merged, minimal period, minimal
    /// period start. Equal functions have equal canonical forms, so the
    /// derived `PartialEq` decides function equality.
    fn canonicalize(self) -> Curve {
        debug_assert!(!self.eventually_infinite);
        let merged = sweep::merge_collinear(self.elements);
        let mut curve = Curve { elements: merged, ..self };

        // Ultimately affine? Then the canonical period is 1 with the slope
        // as increment.
        let end = curve.domain_end();
        let window = sweep::slice(&curve.elements, &curve.period_start, &end, false);
        let rho = &curve.period_increment / &curve.period_length;
        let affine = match window.as_slice() {
            [CurveElement::Point { y, .. }, CurveElement::Segment { y_start, slope, .. }] => {
                y == y_start && *slope == rho
            }
            _ => false,
        };
        let one = Rational::from_integer(1.into());
        if affine {
            if curve.period_length != one {
                let needed = &curve.period_start + &one;
                let unrolled = curve.unroll(&needed);
                curve.elements = sweep::slice(&unrolled, &Rational::zero(), &needed, false);
            }
            curve.period_length = one;
            curve.period_increment = rho;
        } else {
            curve = curve.minimize_period();
        }
        curve.minimize_period_start()
    }

    fn minimize_period(mut self) -> Curve {
        let end = self.domain_end();
        let window = sweep::slice(&self.elements, &self.period_start, &end, false);
        let pairs = window
            .iter()
            .filter(|el| matches!(el, CurveElement::Segment { .. }))
            .count() as i64;
        for k in (2..=pairs).rev() {
            let cand_d = &self.period_length / Rational::from_integer(k.into());
            let cand_c = &self.period_increment / Rational::from_integer(k.into());
            // The shorter period is valid iff shifting the window by it
            // reproduces the window (with the scaled increment).
            let upper = &end - &cand_d;
            let base = sweep::slice(&window, &self.period_start, &upper, false);
            let moved = sweep::slice(&window, &(&self.period_start + &cand_d), &end, false);
            let neg_d = -&cand_d;
            let neg_c = -&cand_c;
            let moved_back: Vec<_> = moved
                .iter()
                .map(|el| el.shift_x(&neg_d).shift_y(&neg_c))
                .collect();
            if sweep::merge_collinear(base) == sweep::merge_collinear(moved_back) {
                let new_end = &self.period_start + &cand_d;
                self.elements = sweep::slice(&self.elements, &Rational::zero(), &new_end, false);
                self.period_length = cand_d;
                self.period_increment = cand_c;
                return self;
            }
        }
        self
    }

    fn minimize_period_start(mut self) -> Curve {
        let d = self.period_length.clone();
        let c = self.period_increment.clone();
        let end = self.domain_end();
        // Difference list D(t) = f(t+d) - f(t) - c over [0, T0 + d).
        let horizon = &end + &d;
        let unrolled = self.unroll(&horizon);
        let shifted_src = sweep::slice(&unrolled, &d, &horizon, false);
        let neg_d = -&d;
        let shifted: Vec<_> = shifted_src.iter().map(|el| el.shift_x(&neg_d)).collect();
        let base = sweep::slice(&unrolled, &Rational::zero(), &end, false);
        let neg_base: Vec<_> = base
            .iter()
            .map(|el| el.scale_y(&Rational::from_integer((-1).into())))
            .collect();
        let mut diff = sweep::combine(sweep::CombineMode::Add, &shifted, &neg_base);
        let neg_c = -&c;
        diff = diff.iter().map(|el| el.shift_y(&neg_c)).collect();

        let (tau, valid_at) = sweep::last_nonzero(&diff);
        let t0_min = match tau {
            None => Rational::zero(),
            Some(tau) => {
                if valid_at {
                    tau
                } else {
                    // First real breakpoint strictly after tau, else tau + d.
                    let fallback = &tau + &d;
                    self.elements
                        .iter()
                        .filter_map(|el| match el {
                            CurveElement::Point { x, .. } if *x > tau => Some(x.clone()),
                            _ => None,
                        })
                        .next()
                        .unwrap_or(fallback)
                }
            }
        };
        if t0_min != self.period_start {
            let new_end = &t0_min + &d;
            let unrolled = self.unroll(&new_end);
            self.elements = sweep::slice(&unrolled, &Rational::zero(), &new_end, false);
            self.period_start = t0_min;
        }
        self.elements = sweep::merge_collinear(std::mem::take(&mut self.elements));
        self
    }
}

pub use primitives::{affine, burst_delay, constant, leaky_bucket, rate_latency, staircase, zero};

#[cfg(test)]
mod tests;
