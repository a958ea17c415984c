//! Graphical-derivative membership through the limit definition.
//!
//! For a Lipschitz map only the base point needs to be perturbed along the
//! direction `u`; a pair `(u, v)` belongs to the graph of the derivative at
//! `(x, y)` exactly when `dist(y + h v, F(x + h u)) = o(h)`. The residual
//! curve `r_k = dist(y + h_k v, F(x + h_k u)) / h_k` is evaluated along a
//! shrinking schedule and accepted by its tail behavior.

use crate::derivative::schedule::{DerivativeProbe, LimitSchedule, TAIL_POINTS};
use crate::error::Error;
use crate::geometry::directions::{sample_unit, substream};
use crate::maps::{GraphPoint, SetValuedMap};
use crate::scalar::Real;
use crate::{Result, Vector};

/// Residual curve of the pair `(u, v)` at the graph point `gp`.
pub fn residual_curve<T: Real>(
    map: &SetValuedMap<T>,
    gp: &GraphPoint<T>,
    u: &Vector<T>,
    v: &Vector<T>,
    schedule: &LimitSchedule<T>,
) -> Result<DerivativeProbe<T>> {
    let mut residuals = Vec::with_capacity(schedule.count());
    for h in schedule.steps() {
        let x = gp.x() + u * h;
        let target = gp.y() + v * h;
        let (dist, _) = map.eval(&x)?.distance_to(&target)?;
        residuals.push((h, dist / h));
    }
    Ok(DerivativeProbe {
        u: u.clone(),
        v: v.clone(),
        residuals,
        noise: DerivativeProbe::<T>::noise_scale(gp.y().norm()),
    })
}

/// Membership of `(u, v)` in the graphical derivative within `tol`.
///
/// Deterministic given the schedule: accepts iff the minimum over the last
/// [`TAIL_POINTS`] residuals is below `tol` and the log-log slope of the
/// curve is nonnegative (or the whole curve is below `tol`).
pub fn derivative_membership<T: Real>(
    map: &SetValuedMap<T>,
    gp: &GraphPoint<T>,
    u: &Vector<T>,
    v: &Vector<T>,
    schedule: &LimitSchedule<T>,
    tol: T,
) -> Result<bool> {
    Ok(residual_curve(map, gp, u, v, schedule)?.accepts(tol))
}

/// Candidate image direction for `u`: refine `v` by projecting `y + h v`
/// onto `F(x + h u)` down the schedule, then iterate at the smallest step to
/// a fixed point.
fn candidate_direction<T: Real>(
    map: &SetValuedMap<T>,
    gp: &GraphPoint<T>,
    u: &Vector<T>,
    schedule: &LimitSchedule<T>,
) -> Result<Vector<T>> {
    let mut v = Vector::<T>::zeros(map.codomain_dim());
    for h in schedule.steps() {
        let body = map.eval(&(gp.x() + u * h))?;
        let (_, nearest) = body.distance_to(&(gp.y() + &v * h))?;
        v = (nearest - gp.y()) / h;
    }
    let h = schedule.smallest();
    let body = map.eval(&(gp.x() + u * h))?;
    for _ in 0..10 {
        let (_, nearest) = body.distance_to(&(gp.y() + &v * h))?;
        let next = (nearest - gp.y()) / h;
        let delta = (&next - &v).norm();
        v = next;
        if delta <= T::of(1e-12) * (T::one() + v.norm()) {
            break;
        }
    }
    Ok(v)
}

/// Deterministic seeded sampling of the derivative graph.
///
/// Unit directions `u` are drawn from the sphere and scaled by `{1, 0.5, 2}`;
/// each candidate `v` comes from the projection fixed point and survives
/// only if the residual test accepts the pair. At most `budget` probes are
/// attempted, so the list may come back short.
pub fn sample_derivative_graph<T: Real>(
    map: &SetValuedMap<T>,
    gp: &GraphPoint<T>,
    budget: usize,
    schedule: &LimitSchedule<T>,
    tol: T,
    seed: u64,
) -> Result<Vec<(Vector<T>, Vector<T>)>> {
    let mut rng = substream(seed, 0xD1FF);
    let scales = [T::one(), T::of(0.5), T::of(2.0)];
    let mut accepted = Vec::new();
    let mut attempts = 0;
    while attempts < budget {
        let dir = sample_unit::<T, _>(map.domain_dim(), &mut rng);
        for scale in scales {
            if attempts >= budget {
                break;
            }
            attempts += 1;
            let u = &dir * scale;
            let v = match candidate_direction(map, gp, &u, schedule) {
                Ok(v) => v,
                Err(_) => continue,
            };
            if let Ok(true) = derivative_membership(map, gp, &u, &v, schedule, tol) {
                accepted.push((u, v));
            }
        }
    }
    Ok(accepted)
}

/// Witness of the intersection of `DF(x, y)(u)` with the ball `k |u| B`.
///
/// Projects `y` onto `F(x + h_k u)`, rescales by `h_k`, and averages the
/// tail of the bounded sequence; the result must pass the membership test
/// with `|v| <= k |u| (1 + tol)`, otherwise the stated Lipschitz constant is
/// violated.
pub fn intersection_witness<T: Real>(
    map: &SetValuedMap<T>,
    gp: &GraphPoint<T>,
    u: &Vector<T>,
    k: T,
    schedule: &LimitSchedule<T>,
    tol: T,
) -> Result<Vector<T>> {
    let mut tail: Vec<Vector<T>> = Vec::new();
    for h in schedule.steps() {
        let body = map.eval(&(gp.x() + u * h))?;
        let (_, nearest) = body.distance_to(gp.y())?;
        tail.push((nearest - gp.y()) / h);
    }
    let n = tail.len().min(TAIL_POINTS);
    let mut v = Vector::<T>::zeros(map.codomain_dim());
    for w in tail.iter().rev().take(n) {
        v += w;
    }
    v /= T::of_usize(n);

    let bound = k * u.norm() * (T::one() + tol);
    if v.norm() > bound || !derivative_membership(map, gp, u, &v, schedule, tol)? {
        return Err(Error::NoWitness {
            k: k.as_f64(),
            best: v.norm().as_f64(),
        });
    }
    Ok(v)
}
