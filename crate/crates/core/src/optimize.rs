//! Minimization over the square `[-1, 1]²`: coarse grid plus Nelder–Mead.

use crate::scalar::Scalar;

pub(crate) type Point<T> = [T; 2];

/// `n` evenly spaced values covering `[-1, 1]`, both ends included.
pub(crate) fn axis<T: Scalar>(n: usize) -> impl Iterator<Item = T> {
    let last = T::from_usize(n - 1).expect("grid size fits");
    (0..n).map(move |i| {
        if i + 1 == n {
            T::one()
        } else {
            -T::one() + T::lit(2.0) * T::from_usize(i).expect("grid index fits") / last
        }
    })
}

/// Smallest value on an `n × n` grid. Ties go to the lexicographically
/// smallest `(x, y)`; non-finite values never win.
pub(crate) fn grid_min<T: Scalar>(n: usize, f: impl Fn(Point<T>) -> T) -> (T, Point<T>) {
    let mut best = (T::infinity(), [-T::one(), -T::one()]);
    for x in axis::<T>(n) {
        for y in axis::<T>(n) {
            let v = f([x, y]);
            if v < best.0 {
                best = (v, [x, y]);
            }
        }
    }
    best
}

fn clamp<T: Scalar>(p: Point<T>) -> Point<T> {
    p.map(|c| c.max(-T::one()).min(T::one()))
}

fn lerp<T: Scalar>(from: Point<T>, to: Point<T>, t: T) -> Point<T> {
    clamp([from[0] + t * (to[0] - from[0]), from[1] + t * (to[1] - from[1])])
}

/// Nelder–Mead from a right-angled simplex at `start` with legs `step`.
/// Trial points are clamped into the square. Runs exactly `iterations`
/// iterations and returns the best vertex.
pub(crate) fn nelder_mead<T: Scalar>(
    start: Point<T>,
    step: T,
    iterations: usize,
    f: impl Fn(Point<T>) -> T,
) -> (T, Point<T>) {
    let (two, half) = (T::lit(2.0), T::lit(0.5));
    let leg = |k: usize| {
        let mut p = start;
        // Step inward when the start sits on the boundary.
        p[k] = if p[k] + step <= T::one() { p[k] + step } else { p[k] - step };
        p
    };
    let mut simplex: [(T, Point<T>); 3] = [start, leg(0), leg(1)].map(|p| (f(p), p));

    for _ in 0..iterations {
        simplex.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Greater));
        let [best, mid, worst] = simplex;
        let centroid = [(best.1[0] + mid.1[0]) * half, (best.1[1] + mid.1[1]) * half];

        let reflected = lerp(worst.1, centroid, two);
        let fr = f(reflected);
        if fr < best.0 {
            let expanded = lerp(worst.1, centroid, T::lit(3.0));
            let fe = f(expanded);
            simplex[2] = if fe < fr { (fe, expanded) } else { (fr, reflected) };
            continue;
        }
        if fr < mid.0 {
            simplex[2] = (fr, reflected);
            continue;
        }
        let contracted = if fr < worst.0 {
            lerp(centroid, reflected, half)
        } else {
            lerp(centroid, worst.1, half)
        };
        let fc = f(contracted);
        if fc < worst.0.min(fr) {
            simplex[2] = (fc, contracted);
            continue;
        }
        for v in simplex.iter_mut().skip(1) {
            let p = lerp(best.1, v.1, half);
            *v = (f(p), p);
        }
    }
    simplex
        .into_iter()
        .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Greater))
        .expect("three vertices")
}
