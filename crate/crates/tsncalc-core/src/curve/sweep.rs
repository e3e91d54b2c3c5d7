//! Exact algorithms on finite element lists.
//!
//! An element list is an alternating point/segment sequence tiling an
//! interval: `P(x0), S(x0,x1), P(x1), S(x1,x2), ...` ending either with
//! a segment (half-open domain) or a point (closed domain). All curve
//! operations reduce to slicing, aligning, and combining such lists.

use super::{CurveElement, Value};
use crate::rational::Rational;
use num_traits::Zero;

pub(crate) fn is_well_formed(list: &[CurveElement]) -> bool {
    if list.is_empty() {
        return false;
    }
    if !matches!(list[0], CurveElement::Point { .. }) {
        return false;
    }
    for pair in list.windows(2) {
        match (&pair[0], &pair[1]) {
            (CurveElement::Point { x, .. }, CurveElement::Segment { start, end, .. }) => {
                if x != start || start >= end {
                    return false;
                }
            }
            (CurveElement::Segment { end, .. }, CurveElement::Point { x, .. }) => {
                if end != x {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}

pub(crate) fn domain(list: &[CurveElement]) -> (&Rational, &Rational, bool) {
    let closed = matches!(list.last(), Some(CurveElement::Point { .. }));
    (
        list.first().expect("empty element list").x_start(),
        list.last().expect("empty element list").x_end(),
        closed,
    )
}

/// Exact value at `x`; points take precedence over adjacent segments.
pub(crate) fn eval(list: &[CurveElement], x: &Rational) -> Value {
    let idx = list.partition_point(|el| el.x_end() < x);
    debug_assert!(idx < list.len(), "eval at {x} outside domain");
    match &list[idx] {
        CurveElement::Point { y, .. } => y.clone(),
        seg @ CurveElement::Segment { start, end, .. } => {
            if x == end {
                match list.get(idx + 1) {
                    Some(CurveElement::Point { y, .. }) => y.clone(),
                    _ => panic!("eval at {x}: segment end without closing point"),
                }
            } else {
                debug_assert!(start < x && x < end);
                seg.value_at(x)
            }
        }
    }
}

/// Extracts `[a, b)` (or `[a, b]` when `closed_end`) as a fresh list.
pub(crate) fn slice(
    list: &[CurveElement],
    a: &Rational,
    b: &Rational,
    closed_end: bool,
) -> Vec<CurveElement> {
    debug_assert!(a <= b);
    debug_assert!(list.first().map(|el| el.x_start() <= a).unwrap_or(false));
    let mut out = vec![CurveElement::point(a.clone(), eval(list, a))];
    if a == b {
        debug_assert!(closed_end, "empty half-open slice");
        return out;
    }
    for el in list {
        match el {
            CurveElement::Point { x, .. } => {
                if x > a && x < b {
                    out.push(el.clone());
                }
            }
            CurveElement::Segment { start, end, y_start, slope } => {
                if end <= a || start >= b {
                    continue;
                }
                let s = if start > a { start.clone() } else { a.clone() };
                let e = if end < b { end.clone() } else { b.clone() };
                if s >= e {
                    continue;
                }
                let ys = y_start.add_rat(&(slope * (&s - start)));
                out.push(CurveElement::segment(s, e, ys, slope.clone()));
            }
        }
    }
    if closed_end {
        out.push(CurveElement::point(b.clone(), eval(list, b)));
    }
    debug_assert!(is_well_formed(&out));
    out
}

/// Inserts explicit points at the given sorted positions.
pub(crate) fn split_at(list: &[CurveElement], xs: &[Rational]) -> Vec<CurveElement> {
    let mut out: Vec<CurveElement> = Vec::with_capacity(list.len() + 2 * xs.len());
    for el in list {
        match el {
            CurveElement::Point { .. } => out.push(el.clone()),
            CurveElement::Segment { start, end, y_start, slope } => {
                let mut cursor = start.clone();
                let mut y_cursor = y_start.clone();
                for x in xs {
                    if x > &cursor && x < end {
                        let y_at = y_cursor.add_rat(&(slope * (x - &cursor)));
                        out.push(CurveElement::segment(
                            cursor.clone(),
                            x.clone(),
                            y_cursor.clone(),
                            slope.clone(),
                        ));
                        out.push(CurveElement::point(x.clone(), y_at.clone()));
                        cursor = x.clone();
                        y_cursor = y_at;
                    }
                }
                out.push(CurveElement::segment(
                    cursor,
                    end.clone(),
                    y_cursor,
                    slope.clone(),
                ));
            }
        }
    }
    out
}

/// Removes interior points that neither jump nor change slope.
pub(crate) fn merge_collinear(list: Vec<CurveElement>) -> Vec<CurveElement> {
    let mut out: Vec<CurveElement> = Vec::with_capacity(list.len());
    for el in list {
        let mergeable = match (&el, out.last()) {
            (
                CurveElement::Segment { y_start, slope, .. },
                Some(CurveElement::Point { y, .. }),
            ) if out.len() >= 2 => {
                // Pattern ... S1 P S2: drop P and fuse when collinear.
                let prev_seg = &out[out.len() - 2];
                match prev_seg {
                    CurveElement::Segment { slope: prev_slope, .. } => {
                        let continuous = prev_seg.end_limit() == *y && *y == *y_start;
                        let same_slope = prev_slope == slope
                            || (!y.is_finite() && !y_start.is_finite());
                        continuous && same_slope
                    }
                    _ => false,
                }
            }
            _ => false,
        };
        if mergeable {
            let new_end = el.x_end().clone();
            out.pop();
            if let Some(CurveElement::Segment { end, .. }) = out.last_mut() {
                *end = new_end;
            }
        } else {
            out.push(el);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum CombineMode {
    Add,
    Min,
    Max,
}

/// Pointwise combination of two lists over the same domain.
///
/// For `Min`/`Max`, crossing points inside segments are inserted so the
/// result is exact.
pub(crate) fn combine(
    mode: CombineMode,
    a: &[CurveElement],
    b: &[CurveElement],
) -> Vec<CurveElement> {
    debug_assert_eq!(domain(a), domain(b), "combine requires equal domains");
    let mut xs: Vec<Rational> = a
        .iter()
        .chain(b.iter())
        .filter_map(|el| match el {
            CurveElement::Point { x, .. } => Some(x.clone()),
            _ => None,
        })
        .collect();
    xs.sort();
    xs.dedup();
    let mut a2 = split_at(a, &xs);
    let mut b2 = split_at(b, &xs);

    if mode != CombineMode::Add {
        let mut crossings: Vec<Rational> = Vec::new();
        for (ea, eb) in a2.iter().zip(b2.iter()) {
            if let (
                CurveElement::Segment {
                    start,
                    end,
                    y_start: Value::Finite(ya),
                    slope: ma,
                },
                CurveElement::Segment {
                    y_start: Value::Finite(yb),
                    slope: mb,
                    ..
                },
            ) = (ea, eb)
            {
                if ma != mb {
                    let x = start + (yb - ya) / (ma - mb);
                    if &x > start && &x < end {
                        crossings.push(x);
                    }
                }
            }
        }
        if !crossings.is_empty() {
            crossings.sort();
            crossings.dedup();
            a2 = split_at(&a2, &crossings);
            b2 = split_at(&b2, &crossings);
        }
    }

    let mut out = Vec::with_capacity(a2.len());
    for (ea, eb) in a2.iter().zip(b2.iter()) {
        match (ea, eb) {
            (CurveElement::Point { x, y: ya }, CurveElement::Point { y: yb, .. }) => {
                let y = match mode {
                    CombineMode::Add => ya.add(yb),
                    CombineMode::Min => ya.clone().min(yb.clone()),
                    CombineMode::Max => ya.clone().max(yb.clone()),
                };
                out.push(CurveElement::point(x.clone(), y));
            }
            (
                sa @ CurveElement::Segment { start, end, y_start: ya, slope: ma },
                sb @ CurveElement::Segment { y_start: yb, slope: mb, .. },
            ) => {
                let el = match mode {
                    CombineMode::Add => CurveElement::segment(
                        start.clone(),
                        end.clone(),
                        ya.add(yb),
                        if ya.is_finite() && yb.is_finite() {
                            ma + mb
                        } else {
                            Rational::zero()
                        },
                    ),
                    CombineMode::Min | CombineMode::Max => {
                        let (sa_lo, sa_hi) = (sa.start_limit(), sa.end_limit());
                        let (sb_lo, sb_hi) = (sb.start_limit(), sb.end_limit());
                        // No interior crossings remain, so one segment
                        // dominates the other throughout.
                        let a_wins = match mode {
                            CombineMode::Min => sa_lo <= sb_lo && sa_hi <= sb_hi,
                            _ => sa_lo >= sb_lo && sa_hi >= sb_hi,
                        };
                        if a_wins { sa.clone() } else { sb.clone() }
                    }
                };
                out.push(el);
            }
            _ => unreachable!("aligned lists must have identical skeletons"),
        }
    }
    debug_assert!(is_well_formed(&out));
    out
}

/// Supremum over the whole list, segment limits included.
pub(crate) fn sup_value(list: &[CurveElement]) -> Value {
    let mut best = Value::MinusInfinity;
    for el in list {
        best = best.max(el.start_limit()).max(el.end_limit());
    }
    best
}

pub(crate) fn is_non_decreasing(list: &[CurveElement]) -> bool {
    let mut prev = Value::MinusInfinity;
    for el in list {
        match el {
            CurveElement::Point { y, .. } => {
                if *y < prev {
                    return false;
                }
                prev = y.clone();
            }
            CurveElement::Segment { y_start, slope, .. } => {
                if *y_start < prev || (y_start.is_finite() && slope < &Rational::zero()) {
                    return false;
                }
                prev = el.end_limit();
            }
        }
    }
    true
}

/// Running supremum `t -> sup_{u <= t} f(u)`, exact.
pub(crate) fn running_sup(list: &[CurveElement]) -> Vec<CurveElement> {
    let mut out: Vec<CurveElement> = Vec::with_capacity(list.len());
    let mut best = Value::MinusInfinity;
    for el in list {
        match el {
            CurveElement::Point { x, y } => {
                best = best.max(y.clone());
                out.push(CurveElement::point(x.clone(), best.clone()));
            }
            CurveElement::Segment { start, end, y_start, slope } => {
                let rising = y_start.is_finite() && slope > &Rational::zero();
                if !rising {
                    // Non-increasing segment: the running sup is flat at
                    // max(best, right limit at start).
                    best = best.max(y_start.clone());
                    out.push(CurveElement::segment(
                        start.clone(),
                        end.clone(),
                        best.clone(),
                        Rational::zero(),
                    ));
                    continue;
                }
                let lo = y_start.clone();
                let hi = el.end_limit();
                if lo >= best {
                    out.push(el.clone());
                    best = best.max(hi);
                } else if hi <= best {
                    out.push(CurveElement::segment(
                        start.clone(),
                        end.clone(),
                        best.clone(),
                        Rational::zero(),
                    ));
                } else {
                    // Crosses the plateau strictly inside.
                    let (lo_r, best_r) = (lo.expect_finite().clone(), best.expect_finite().clone());
                    let x_cross = start + (&best_r - &lo_r) / slope;
                    out.push(CurveElement::segment(
                        start.clone(),
                        x_cross.clone(),
                        best.clone(),
                        Rational::zero(),
                    ));
                    out.push(CurveElement::point(x_cross.clone(), best.clone()));
                    out.push(CurveElement::segment(
                        x_cross,
                        end.clone(),
                        best.clone(),
                        slope.clone(),
                    ));
                    best = hi;
                }
            }
        }
    }
    merge_collinear(out)
}

/// Backward scan for the last element where the list is non-zero.
///
/// Returns `(None, true)` when the list is identically zero. Otherwise
/// returns the supremum `tau` of the non-zero set and whether the list
/// is zero at `tau` itself.
pub(crate) fn last_nonzero(list: &[CurveElement]) -> (Option<Rational>, bool) {
    fn is_zero_el(el: &CurveElement) -> bool {
        match el {
            CurveElement::Point { y, .. } => matches!(y, Value::Finite(r) if r.is_zero()),
            CurveElement::Segment { y_start, slope, .. } => {
                matches!(y_start, Value::Finite(r) if r.is_zero()) && slope.is_zero()
            }
        }
    }
    for el in list.iter().rev() {
        if is_zero_el(el) {
            continue;
        }
        return match el {
            CurveElement::Point { x, .. } => (Some(x.clone()), false),
            CurveElement::Segment { end, .. } => (Some(end.clone()), true),
        };
    }
    (None, true)
}
