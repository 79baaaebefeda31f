//! Oriented solid angles of closed loops on the Bloch sphere.
//!
//! Signs follow the right-hand rule about the outward normal: a loop that
//! runs counterclockwise when seen from outside the sphere encloses a
//! positive solid angle. Values are reported in (-2π, 2π].

use std::f64::consts::PI;

use super::su2::{cross, dot};
use crate::error::{Error, Result};
use crate::states::norm3;

const UNIT_TOL: f64 = 1e-10;

/// Closed loop on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub enum BlochLoop {
    /// Vertices joined by great-circle arcs; the closing edge is implied.
    GeodesicPolygon(Vec<[f64; 3]>),
    /// Densely sampled loop with the first sample repeated at the end.
    Discretized(Vec<[f64; 3]>),
}

impl BlochLoop {
    pub fn geodesic_polygon(vertices: Vec<[f64; 3]>) -> Result<Self> {
        check_unit(&vertices)?;
        closed_vertices(&vertices)?;
        Ok(Self::GeodesicPolygon(vertices))
    }

    pub fn discretized(samples: Vec<[f64; 3]>) -> Result<Self> {
        check_unit(&samples)?;
        if samples.len() < 4 {
            return Err(Error::InvalidPath("a discretized loop needs at least 4 samples".into()));
        }
        let (first, last) = (samples[0], samples[samples.len() - 1]);
        let gap = norm3(std::array::from_fn(|i| first[i] - last[i]));
        if gap > UNIT_TOL {
            return Err(Error::InvalidPath(format!("loop is not closed (gap {gap:.3e})")));
        }
        Ok(Self::Discretized(samples))
    }

    /// Circle at polar angle `theta0`, traversed with increasing azimuth.
    pub fn latitude_circle(theta0: f64, samples: usize) -> Result<Self> {
        let (s, c) = theta0.sin_cos();
        let pts = (0..=samples)
            .map(|j| {
                let phi = 2.0 * PI * (j % samples.max(1)) as f64 / samples.max(1) as f64;
                [s * phi.cos(), s * phi.sin(), c]
            })
            .collect();
        Self::discretized(pts)
    }

    /// Samples a geodesic polygon along its arcs, `total_samples` points in
    /// all, distributed in proportion to arc length.
    pub fn sample(&self, total_samples: usize) -> Result<Self> {
        match self {
            Self::Discretized(_) => Ok(self.clone()),
            Self::GeodesicPolygon(vertices) => {
                let verts = closed_vertices(vertices)?;
                let n = verts.len();
                let lengths: Vec<f64> = (0..n)
                    .map(|i| arc_length(verts[i], verts[(i + 1) % n]))
                    .collect();
                let perimeter: f64 = lengths.iter().sum();
                let mut pts = Vec::with_capacity(total_samples + 1);
                for i in 0..n {
                    let (a, b) = (verts[i], verts[(i + 1) % n]);
                    let steps = ((lengths[i] / perimeter) * total_samples as f64).round().max(1.0) as usize;
                    for s in 0..steps {
                        pts.push(slerp(a, b, s as f64 / steps as f64));
                    }
                }
                pts.push(verts[0]);
                Self::discretized(pts)
            }
        }
    }

    /// Reverses traversal direction, which flips the sign of the solid angle.
    pub fn reversed(&self) -> Self {
        match self {
            Self::GeodesicPolygon(v) => {
                let mut v = v.clone();
                v[1..].reverse();
                Self::GeodesicPolygon(v)
            }
            Self::Discretized(v) => Self::Discretized(v.iter().rev().copied().collect()),
        }
    }

    pub fn vertices(&self) -> &[[f64; 3]] {
        match self {
            Self::GeodesicPolygon(v) | Self::Discretized(v) => v,
        }
    }
}

/// Oriented solid angle enclosed by the loop.
///
/// Polygons use the spherical excess Σ(interior angles) - (n-2)π, with each
/// interior angle measured on the left of the direction of travel.
/// Discretized loops use Ω = ∮(1 - cos θ) dφ with unwrapped azimuth steps.
pub fn solid_angle(bloch_loop: &BlochLoop) -> Result<f64> {
    let raw = match bloch_loop {
        BlochLoop::GeodesicPolygon(vertices) => spherical_excess(vertices)?,
        BlochLoop::Discretized(samples) => line_integral(samples),
    };
    Ok(wrap_solid_angle(raw))
}

fn spherical_excess(vertices: &[[f64; 3]]) -> Result<f64> {
    let verts = closed_vertices(vertices)?;
    let n = verts.len();
    let mut total = 0.0;
    for i in 0..n {
        let prev = verts[(i + n - 1) % n];
        let here = verts[i];
        let next = verts[(i + 1) % n];
        let t_prev = tangent(here, prev);
        let t_next = tangent(here, next);
        let mut angle = dot(here, cross(t_next, t_prev)).atan2(dot(t_next, t_prev));
        if angle < 0.0 {
            angle += 2.0 * PI;
        }
        total += angle;
    }
    Ok(total - (n as f64 - 2.0) * PI)
}

fn line_integral(samples: &[[f64; 3]]) -> f64 {
    samples
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let mut dphi = b[1].atan2(b[0]) - a[1].atan2(a[0]);
            while dphi > PI {
                dphi -= 2.0 * PI;
            }
            while dphi <= -PI {
                dphi += 2.0 * PI;
            }
            (1.0 - 0.5 * (a[2] + b[2])) * dphi
        })
        .sum()
}

fn wrap_solid_angle(mut omega: f64) -> f64 {
    let eps = 1e-12;
    while omega > 2.0 * PI + eps {
        omega -= 4.0 * PI;
    }
    while omega <= -2.0 * PI + eps {
        omega += 4.0 * PI;
    }
    omega
}

/// Geodesic triangle with the given positive solid angle in (0, 2π),
/// counterclockwise, first vertex at +z. Built as an equilateral triangle
/// around the pole and rotated into place.
pub fn triangle_with_solid_angle(omega: f64) -> Result<[[f64; 3]; 3]> {
    if !(omega > 0.0 && omega < 2.0 * PI) {
        return Err(Error::InvalidParameter(format!(
            "triangle solid angle must lie in (0, 2π), got {omega}"
        )));
    }
    let triangle = |colat: f64| -> [[f64; 3]; 3] {
        std::array::from_fn(|i| {
            let phi = 2.0 * PI * i as f64 / 3.0;
            [colat.sin() * phi.cos(), colat.sin() * phi.sin(), colat.cos()]
        })
    };
    let (mut lo, mut hi) = (0.0_f64, PI / 2.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let area = spherical_excess(&triangle(mid))?;
        if area < omega {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let tri = triangle(0.5 * (lo + hi));
    let rotate = rotation_to_north(tri[0]);
    Ok(tri.map(|v| {
        let r = rotate(v);
        let n = norm3(r);
        r.map(|x| x / n)
    }))
}

/// Validates a polygon and drops a repeated closing vertex.
pub(crate) fn closed_vertices(vertices: &[[f64; 3]]) -> Result<Vec<[f64; 3]>> {
    let mut verts = vertices.to_vec();
    if verts.len() >= 2 {
        let (first, last) = (verts[0], verts[verts.len() - 1]);
        if norm3(std::array::from_fn(|i| first[i] - last[i])) < UNIT_TOL {
            verts.pop();
        }
    }
    if verts.len() < 3 {
        return Err(Error::InvalidPath("a polygon needs at least 3 distinct vertices".into()));
    }
    check_unit(&verts)?;
    let n = verts.len();
    for i in 0..n {
        let (a, b) = (verts[i], verts[(i + 1) % n]);
        let c = dot(a, b);
        let s = norm3(cross(a, b));
        if s < 1e-12 {
            return if c < 0.0 {
                Err(Error::AntipodalVertices(i, (i + 1) % n))
            } else {
                Err(Error::InvalidPath(format!("vertices {i} and {} coincide", (i + 1) % n)))
            };
        }
    }
    Ok(verts)
}

fn check_unit(points: &[[f64; 3]]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        let len = norm3(*p);
        if (len - 1.0).abs() > UNIT_TOL {
            return Err(Error::InvalidPath(format!("point {i} has length {len}, expected 1")));
        }
    }
    Ok(())
}

fn tangent(at: [f64; 3], toward: [f64; 3]) -> [f64; 3] {
    let c = dot(at, toward);
    std::array::from_fn(|i| toward[i] - c * at[i])
}

fn arc_length(a: [f64; 3], b: [f64; 3]) -> f64 {
    norm3(cross(a, b)).atan2(dot(a, b))
}

fn slerp(a: [f64; 3], b: [f64; 3], t: f64) -> [f64; 3] {
    let omega = arc_length(a, b);
    let s = omega.sin();
    let (wa, wb) = (((1.0 - t) * omega).sin() / s, (t * omega).sin() / s);
    std::array::from_fn(|i| wa * a[i] + wb * b[i])
}

fn rotation_to_north(v: [f64; 3]) -> impl Fn([f64; 3]) -> [f64; 3] {
    let z = [0.0, 0.0, 1.0];
    let axis = cross(v, z);
    let s = norm3(axis);
    let c = dot(v, z);
    let k = if s > 1e-15 { axis.map(|x| x / s) } else { [1.0, 0.0, 0.0] };
    move |p: [f64; 3]| {
        // Rodrigues: p cos + (k×p) sin + k (k·p)(1 - cos)
        let kxp = cross(k, p);
        let kp = dot(k, p);
        std::array::from_fn(|i| p[i] * c + kxp[i] * s + k[i] * kp * (1.0 - c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    const X: [f64; 3] = [1.0, 0.0, 0.0];
    const Y: [f64; 3] = [0.0, 1.0, 0.0];
    const Z: [f64; 3] = [0.0, 0.0, 1.0];

    #[test]
    fn octant_triangle() {
        let lp = BlochLoop::geodesic_polygon(vec![Z, X, Y]).unwrap();
        assert!((solid_angle(&lp).unwrap() - FRAC_PI_2).abs() < 1e-14);
        assert!((solid_angle(&lp.reversed()).unwrap() + FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn equator_discretized() {
        let lp = BlochLoop::latitude_circle(FRAC_PI_2, 10_000).unwrap();
        assert!((solid_angle(&lp).unwrap() - 2.0 * PI).abs() < 1e-4);
    }

    #[test]
    fn latitude_cap() {
        let lp = BlochLoop::latitude_circle(PI / 3.0, 10_000).unwrap();
        assert!((solid_angle(&lp).unwrap() - PI).abs() < 1e-4);
    }

    #[test]
    fn polygon_and_samples_agree() {
        let lp = BlochLoop::geodesic_polygon(vec![Z, X, Y]).unwrap();
        let sampled = lp.sample(10_000).unwrap();
        let a = solid_angle(&lp).unwrap();
        let b = solid_angle(&sampled).unwrap();
        assert!((a - b).abs() < 1e-4, "{a} vs {b}");
    }

    #[test]
    fn antipodal_edge_is_rejected() {
        let err = BlochLoop::geodesic_polygon(vec![Z, X, [-1.0, 0.0, 0.0]]).unwrap_err();
        assert_eq!(err, Error::AntipodalVertices(1, 2));
    }

    #[test]
    fn non_unit_and_open_loops() {
        assert!(BlochLoop::geodesic_polygon(vec![Z, X, [0.0, 2.0, 0.0]]).is_err());
        assert!(BlochLoop::discretized(vec![Z, X, Y, X]).is_err());
    }

    #[test]
    fn triangles_hit_requested_area() {
        for omega in [0.3, FRAC_PI_2, PI, 1.5 * PI, 6.0] {
            let tri = triangle_with_solid_angle(omega).unwrap();
            assert!((tri[0][2] - 1.0).abs() < 1e-12);
            let lp = BlochLoop::geodesic_polygon(tri.to_vec()).unwrap();
            let got = solid_angle(&lp).unwrap();
            assert!((got - omega).abs() < 1e-12, "{omega}: {got}");
        }
    }

    #[test]
    fn clockwise_large_loop_wraps_to_negative() {
        let tri = triangle_with_solid_angle(1.5 * PI).unwrap();
        let lp = BlochLoop::geodesic_polygon(tri.to_vec()).unwrap().reversed();
        assert!((solid_angle(&lp).unwrap() + 1.5 * PI).abs() < 1e-12);
    }
}
