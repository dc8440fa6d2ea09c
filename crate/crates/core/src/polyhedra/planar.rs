//! Vertex and ray enumeration in one and two dimensions.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::Halfspaces;
use crate::linalg::gcd_slice;
use crate::scalar::{q_int, Scalar, Q};
use crate::Error;

/// Vertices in boundary order and primitive generators of the recession cone.
///
/// For a bounded polygon the vertices run counterclockwise from the lowest
/// (then leftmost) one. For an unbounded one they run counterclockwise from
/// the vertex where the incoming ray attaches, and the rays are listed in the
/// order a counterclockwise walk meets them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Planar<T: Scalar> {
    pub vertices: Vec<Vec<Q<T>>>,
    pub rays: Vec<Vec<T>>,
}

pub(super) fn enumerate<T: Scalar>(h: &Halfspaces<T>) -> Result<Planar<T>, Error> {
    match h.dim() {
        1 => enumerate_line(h),
        2 => enumerate_plane(h),
        found => Err(Error::DimensionMismatch { expected: 2, found }),
    }
}

fn enumerate_line<T: Scalar>(h: &Halfspaces<T>) -> Result<Planar<T>, Error> {
    if !h.strict_interior_nonempty() {
        return Err(Error::EmptyInterior);
    }
    let mut lower: Option<Q<T>> = None;
    let mut upper: Option<Q<T>> = None;
    for i in 0..h.len() {
        let a = &h.constraints()[(i, 0)];
        if a.is_zero() {
            continue;
        }
        let bound = -h.offset()[i].clone() / q_int(a.clone());
        if a.is_positive() {
            if lower.as_ref().is_none_or(|l| bound > *l) {
                lower = Some(bound);
            }
        } else if upper.as_ref().is_none_or(|u| bound < *u) {
            upper = Some(bound);
        }
    }
    let mut rays = Vec::new();
    if lower.is_none() {
        rays.push(vec![-T::one()]);
    }
    if upper.is_none() {
        rays.push(vec![T::one()]);
    }
    let vertices = lower.into_iter().chain(upper).map(|v| vec![v]).collect();
    Ok(Planar { vertices, rays })
}

fn cross<T: Scalar>(a: &[Q<T>], b: &[Q<T>]) -> Q<T> {
    a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone()
}

fn icross<T: Scalar>(a: &[T], b: &[T]) -> T {
    a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone()
}

fn qv<T: Scalar>(v: &[T]) -> Vec<Q<T>> {
    v.iter().cloned().map(q_int).collect()
}

fn primitive<T: Scalar>(v: Vec<T>) -> Vec<T> {
    let g = gcd_slice(&v);
    if g.is_zero() {
        v
    } else {
        v.into_iter().map(|x| x / g.clone()).collect()
    }
}

/// Counterclockwise angular comparison of two directions, starting at +x.
fn angle_cmp<T: Scalar>(a: &[Q<T>], b: &[Q<T>]) -> Ordering {
    let half = |w: &[Q<T>]| w[1].is_negative() || (w[1].is_zero() && w[0].is_negative());
    match (half(a), half(b)) {
        (false, true) => Ordering::Less,
        (true, false) => Ordering::Greater,
        _ => {
            let c = cross(a, b);
            if c.is_positive() {
                Ordering::Less
            } else if c.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        }
    }
}

fn sort_ccw<T: Scalar>(points: &mut [Vec<Q<T>>]) {
    let n = Q::<T>::from_integer(T::of(points.len() as i64));
    let centre: Vec<Q<T>> = (0..2).map(|k| points.iter().fold(Q::zero(), |acc, p| acc + p[k].clone()) / n.clone()).collect();
    points.sort_by(|a, b| {
        let wa = vec![a[0].clone() - centre[0].clone(), a[1].clone() - centre[1].clone()];
        let wb = vec![b[0].clone() - centre[0].clone(), b[1].clone() - centre[1].clone()];
        angle_cmp(&wa, &wb)
    });
}

fn raw_vertices<T: Scalar>(h: &Halfspaces<T>) -> Vec<Vec<Q<T>>> {
    let c = h.constraints();
    let mut out: Vec<Vec<Q<T>>> = Vec::new();
    for i in 0..h.len() {
        for j in i + 1..h.len() {
            let (a, b) = (qv(c.row(i)), qv(c.row(j)));
            let det = cross(&a, &b);
            if det.is_zero() {
                continue;
            }
            // a·ξ = -oi, b·ξ = -oj
            let (ri, rj) = (-h.offset()[i].clone(), -h.offset()[j].clone());
            let x = (ri.clone() * b[1].clone() - rj.clone() * a[1].clone()) / det.clone();
            let y = (a[0].clone() * rj - b[0].clone() * ri) / det;
            let p = vec![x, y];
            if h.contains(&p) && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

fn recession_rays<T: Scalar>(h: &Halfspaces<T>) -> Vec<Vec<T>> {
    let c = h.constraints();
    let normals: Vec<Vec<T>> = (0..h.len()).map(|i| c.row(i).to_vec()).filter(|r| r.iter().any(|v| !v.is_zero())).collect();
    if normals.is_empty() {
        return vec![vec![T::one(), T::zero()], vec![T::zero(), T::one()], vec![-T::one(), T::zero()], vec![T::zero(), -T::one()]];
    }
    let in_cone = |v: &[T]| normals.iter().all(|n| !(n[0].clone() * v[0].clone() + n[1].clone() * v[1].clone()).is_negative());
    let mut cand: Vec<Vec<T>> = Vec::new();
    for n in &normals {
        for d in [primitive(vec![n[1].clone(), -n[0].clone()]), primitive(vec![-n[1].clone(), n[0].clone()])] {
            if in_cone(&d) && !cand.contains(&d) {
                cand.push(d);
            }
        }
    }
    let has_line = cand.iter().any(|d| cand.contains(&vec![-d[0].clone(), -d[1].clone()]));
    if has_line {
        // all normals parallel; a half-plane if they all point the same way
        let n0 = &normals[0];
        let same = normals.iter().all(|n| (n[0].clone() * n0[0].clone() + n[1].clone() * n0[1].clone()).is_positive());
        let mut u = cand[0].clone();
        if icross(&u, n0).is_negative() {
            u = vec![-u[0].clone(), -u[1].clone()];
        }
        let back = vec![-u[0].clone(), -u[1].clone()];
        return if same { vec![back, primitive(n0.clone()), u] } else { vec![back, u] };
    }
    if cand.len() == 2 && icross(&cand[0], &cand[1]).is_positive() {
        cand.swap(0, 1);
    }
    cand
}

fn enumerate_plane<T: Scalar>(h: &Halfspaces<T>) -> Result<Planar<T>, Error> {
    if !h.strict_interior_nonempty() {
        return Err(Error::EmptyInterior);
    }
    let mut vertices = raw_vertices(h);
    let rays = recession_rays(h);
    if !rays.is_empty() && vertices.len() >= 2 {
        // Cut the unbounded polygon beyond every vertex, order the bounded
        // piece, then start right after the cut points.
        let d: Vec<T> =
            rays.iter().fold(vec![T::zero(), T::zero()], |acc, r| vec![acc[0].clone() + r[0].clone(), acc[1].clone() + r[1].clone()]);
        let dq = qv(&d);
        let far = vertices.iter().map(|v| dq[0].clone() * v[0].clone() + dq[1].clone() * v[1].clone()).max().expect("nonempty") + Q::one();
        let cut = h.with_row(vec![-d[0].clone(), -d[1].clone()], far)?;
        let mut all = raw_vertices(&cut);
        sort_ccw(&mut all);
        let is_real = |p: &Vec<Q<T>>| vertices.contains(p);
        let start = (0..all.len())
            .find(|&i| is_real(&all[i]) && !is_real(&all[(i + all.len() - 1) % all.len()]))
            .expect("cut points precede the first real vertex");
        all.rotate_left(start);
        all.retain(is_real);
        vertices = all;
    } else if rays.is_empty() && vertices.len() >= 2 {
        sort_ccw(&mut vertices);
        let lowest = (0..vertices.len())
            .min_by(|&a, &b| (&vertices[a][1], &vertices[a][0]).cmp(&(&vertices[b][1], &vertices[b][0])))
            .expect("nonempty");
        vertices.rotate_left(lowest);
    }
    Ok(Planar { vertices, rays })
}
