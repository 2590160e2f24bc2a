use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::fidelity::{sample_block_region, FidelityVector, Source};
use super::sphere::SphereScheme;
use super::support::{n_point_with, NPointConvention};
use crate::error::{invalid, Error, Result};
use crate::irreps::Decomposition;

/// Half-space `<normal, x> <= offset` with a unit outward normal.
#[derive(Clone, Debug, PartialEq)]
pub struct Facet {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Facet {
    pub fn excess(&self, p: &[f64]) -> f64 {
        self.normal.iter().zip(p).map(|(a, b)| a * b).sum::<f64>() - self.offset
    }
}

/// Convex hull of sampled block regions and the N-point, in 2 or 3 dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionHull {
    pub dim: usize,
    pub vertices: Vec<FidelityVector>,
    pub facets: Vec<Facet>,
    pub sources: Vec<Source>,
    /// For a 3D hull, triangles as indices into `vertices` (outward orientation).
    /// For a 2D hull the vertices are already in counter-clockwise order.
    pub triangles: Vec<[usize; 3]>,
}

impl RegionHull {
    /// Area (2D) or volume (3D).
    pub fn volume(&self) -> f64 {
        let v: Vec<&[f64]> = self.vertices.iter().map(|p| p.values()).collect();
        match self.dim {
            2 => {
                let m = v.len();
                0.5 * (0..m).map(|i| cross2(v[i], v[(i + 1) % m])).sum::<f64>()
            }
            _ => {
                let c = centroid(&v);
                self.triangles
                    .iter()
                    .map(|t| {
                        let a = sub3(v[t[0]], &c);
                        let b = sub3(v[t[1]], &c);
                        let e = sub3(v[t[2]], &c);
                        dot3(&a, &cross3(&b, &e)) / 6.0
                    })
                    .sum()
            }
        }
    }

    /// Largest facet violation of `p` (non-positive iff `p` lies in the hull).
    pub fn max_excess(&self, p: &[f64]) -> f64 {
        self.facets.iter().map(|f| f.excess(p)).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        self.max_excess(p) <= tol
    }

    /// Certifies convexity from local conditions, in time linear in the hull
    /// size: in 2D every turn is to the left and the boundary winds once; in 3D
    /// the triangles form a closed surface of Euler characteristic 2 and each
    /// neighbour's opposite vertex lies below the facet plane within `tol`.
    pub fn is_locally_convex(&self, tol: f64) -> bool {
        let v: Vec<&[f64]> = self.vertices.iter().map(|p| p.values()).collect();
        match self.dim {
            2 => {
                let m = v.len();
                let mut winding = 0.0;
                for i in 0..m {
                    let (a, b, c) = (v[i], v[(i + 1) % m], v[(i + 2) % m]);
                    if turn(a, b, c) < -tol {
                        return false;
                    }
                    let (e1, e2) = ([b[0] - a[0], b[1] - a[1]], [c[0] - b[0], c[1] - b[1]]);
                    winding += libm::atan2(cross2(&e1, &e2), e1[0] * e2[0] + e1[1] * e2[1]);
                }
                (winding - 2.0 * core::f64::consts::PI).abs() < 1e-6
            }
            _ => {
                let mut edges = BTreeMap::new();
                for (f, t) in self.triangles.iter().enumerate() {
                    for k in 0..3 {
                        if edges.insert((t[k], t[(k + 1) % 3]), f).is_some() {
                            return false;
                        }
                    }
                }
                let euler = v.len() as i64 - (edges.len() / 2) as i64 + self.triangles.len() as i64;
                if edges.len() % 2 != 0 || euler != 2 {
                    return false;
                }
                self.triangles.iter().zip(&self.facets).all(|(t, facet)| {
                    (0..3).all(|k| match edges.get(&(t[(k + 1) % 3], t[k])) {
                        None => false,
                        Some(&g) => self.triangles[g].iter().all(|&q| facet.excess(v[q]) <= tol),
                    })
                })
            }
        }
    }

    pub fn facet_normals(&self) -> Vec<Vec<f64>> {
        self.facets.iter().map(|f| f.normal.clone()).collect()
    }

    /// Index of the vertex maximising `<w, v>`.
    pub fn argmax(&self, w: &[f64]) -> Option<usize> {
        (0..self.vertices.len()).max_by(|&a, &b| self.vertices[a].dot(w).total_cmp(&self.vertices[b].dot(w)))
    }
}

/// Hull of the default-convention region with the default sphere scheme.
pub fn build_hull(dec: &Decomposition, samples_per_block: usize) -> Result<RegionHull> {
    build_hull_with(dec, samples_per_block, NPointConvention::default(), None)
}

/// Hull with an explicit N-point convention and optional sphere scheme
/// (`None` picks the grid for block dimension at most three).
pub fn build_hull_with(
    dec: &Decomposition,
    samples_per_block: usize,
    convention: NPointConvention,
    scheme: Option<SphereScheme>,
) -> Result<RegionHull> {
    let dim = dec.clone_count();
    if dim > 3 {
        return Err(Error::UnsupportedDimension(dim));
    }
    let mut points = Vec::new();
    let mut sources = Vec::new();
    for block in &dec.blocks {
        let scheme = scheme.unwrap_or_else(|| SphereScheme::default_for(block.dim()));
        let sample = sample_block_region(block, samples_per_block, scheme)?;
        sources.extend(core::iter::repeat_n(sample.source.clone(), sample.points.len()));
        points.extend(sample.points);
    }
    points.push(n_point_with(dec.n, dec.d, convention)?);
    sources.push(Source::NIdeal);
    hull_of_points(dim, points, sources)
}

/// Convex hull of labelled points in two or three dimensions.
pub fn hull_of_points(dim: usize, points: Vec<FidelityVector>, sources: Vec<Source>) -> Result<RegionHull> {
    if points.len() != sources.len() {
        return Err(invalid!("{} points but {} sources", points.len(), sources.len()));
    }
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(invalid!("point of length {} in a {}-dimensional hull", p.len(), dim));
    }
    match dim {
        2 => hull_2d(&points, &sources),
        3 => hull_3d(&points, &sources),
        other => Err(Error::UnsupportedDimension(other)),
    }
}

fn cross2(a: &[f64], b: &[f64]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn turn(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn hull_2d(points: &[FidelityVector], sources: &[Source]) -> Result<RegionHull> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (p, q) = (points[a].values(), points[b].values());
        p[0].total_cmp(&q[0]).then(p[1].total_cmp(&q[1]))
    });
    order.dedup_by(|a, b| points[*a] == points[*b]);
    if order.len() < 3 {
        return Err(Error::Inconsistency(alloc::format!("hull needs 3 distinct points, got {}", order.len())));
    }
    let scale = points.iter().flat_map(|p| p.values()).fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    let eps = 1e-14 * scale * scale;
    let v = |i: usize| points[i].values();

    let mut chain: Vec<usize> = Vec::with_capacity(2 * order.len());
    for pass in 0..2 {
        let start = chain.len();
        let iter: Vec<usize> = if pass == 0 { order.clone() } else { order.iter().rev().copied().collect() };
        for i in iter {
            while chain.len() >= start + 2 && turn(v(chain[chain.len() - 2]), v(chain[chain.len() - 1]), v(i)) <= eps {
                chain.pop();
            }
            chain.push(i);
        }
        chain.pop();
    }
    if chain.len() < 3 {
        return Err(Error::Inconsistency("degenerate 2D hull".into()));
    }

    let m = chain.len();
    let mut facets = Vec::with_capacity(m);
    for i in 0..m {
        let (a, b) = (v(chain[i]), v(chain[(i + 1) % m]));
        let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
        let len = libm::sqrt(dx * dx + dy * dy);
        let normal = alloc::vec![dy / len, -dx / len];
        let offset = normal[0] * a[0] + normal[1] * a[1];
        facets.push(Facet { normal, offset });
    }
    Ok(RegionHull {
        dim: 2,
        vertices: chain.iter().map(|&i| points[i].clone()).collect(),
        sources: chain.iter().map(|&i| sources[i].clone()).collect(),
        facets,
        triangles: Vec::new(),
    })
}

type V3 = [f64; 3];

fn sub3(a: &[f64], b: &[f64]) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot3(a: &V3, b: &V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: &V3, b: &V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn norm3(a: &V3) -> f64 {
    libm::sqrt(dot3(a, a))
}

fn centroid(v: &[&[f64]]) -> V3 {
    let mut c = [0.0; 3];
    for p in v {
        for k in 0..3 {
            c[k] += p[k];
        }
    }
    c.map(|x| x / v.len() as f64)
}

struct Face {
    v: [usize; 3],
    normal: V3,
    offset: f64,
    outside: Vec<usize>,
    alive: bool,
}

struct Quickhull<'a> {
    pts: &'a [V3],
    faces: Vec<Face>,
    /// Directed edge `(a, b)` to the face traversing it.
    edges: BTreeMap<(usize, usize), usize>,
    eps: f64,
}

impl<'a> Quickhull<'a> {
    fn make_face(&self, v: [usize; 3]) -> Face {
        let (a, b, c) = (&self.pts[v[0]], &self.pts[v[1]], &self.pts[v[2]]);
        let n = cross3(&sub3(b, a), &sub3(c, a));
        let len = norm3(&n);
        let normal = n.map(|x| x / len);
        Face { v, normal, offset: dot3(&normal, a), outside: Vec::new(), alive: true }
    }

    fn dist(&self, f: usize, p: usize) -> f64 {
        dot3(&self.faces[f].normal, &self.pts[p]) - self.faces[f].offset
    }

    fn add_face(&mut self, v: [usize; 3]) -> usize {
        let face = self.make_face(v);
        let id = self.faces.len();
        for k in 0..3 {
            self.edges.insert((v[k], v[(k + 1) % 3]), id);
        }
        self.faces.push(face);
        id
    }

    fn assign(&mut self, candidates: &[usize], faces: &[usize]) {
        for &p in candidates {
            let mut best: Option<(f64, usize)> = None;
            for &f in faces {
                let dist = self.dist(f, p);
                if dist > self.eps && best.is_none_or(|(b, _)| dist > b) {
                    best = Some((dist, f));
                }
            }
            if let Some((_, f)) = best {
                self.faces[f].outside.push(p);
            }
        }
    }

    fn run(&mut self) -> Result<()> {
        let mut pending: Vec<usize> = (0..self.faces.len()).collect();
        while let Some(start) = pending.pop() {
            if !self.faces[start].alive || self.faces[start].outside.is_empty() {
                continue;
            }
            let apex = *self.faces[start]
                .outside
                .iter()
                .max_by(|&&a, &&b| self.dist(start, a).total_cmp(&self.dist(start, b)))
                .expect("non-empty");

            let mut visible = alloc::vec![start];
            let mut is_visible = BTreeMap::new();
            is_visible.insert(start, true);
            let mut head = 0;
            while head < visible.len() {
                let f = visible[head];
                head += 1;
                let v = self.faces[f].v;
                for k in 0..3 {
                    let twin = *self.edges.get(&(v[(k + 1) % 3], v[k])).ok_or_else(|| Error::Inconsistency("open hull surface".into()))?;
                    if is_visible.contains_key(&twin) {
                        continue;
                    }
                    let vis = self.dist(twin, apex) > self.eps;
                    is_visible.insert(twin, vis);
                    if vis {
                        visible.push(twin);
                    }
                }
            }

            let mut horizon = Vec::new();
            let mut orphans = Vec::new();
            for &f in &visible {
                let v = self.faces[f].v;
                for k in 0..3 {
                    let (a, b) = (v[k], v[(k + 1) % 3]);
                    let twin = self.edges[&(b, a)];
                    if !is_visible[&twin] {
                        horizon.push((a, b));
                    }
                }
                orphans.append(&mut self.faces[f].outside);
                self.faces[f].alive = false;
            }
            for &f in &visible {
                let v = self.faces[f].v;
                for k in 0..3 {
                    self.edges.remove(&(v[k], v[(k + 1) % 3]));
                }
            }
            let new_faces: Vec<usize> = horizon.iter().map(|&(a, b)| self.add_face([a, b, apex])).collect();
            orphans.retain(|&p| p != apex);
            self.assign(&orphans, &new_faces);
            pending.extend(new_faces.iter().copied().filter(|&f| !self.faces[f].outside.is_empty()));
        }
        Ok(())
    }
}

fn initial_simplex(pts: &[V3], eps: f64) -> Result<[usize; 4]> {
    let mut extremes = Vec::new();
    for k in 0..3 {
        let lo = (0..pts.len()).min_by(|&a, &b| pts[a][k].total_cmp(&pts[b][k])).expect("non-empty");
        let hi = (0..pts.len()).max_by(|&a, &b| pts[a][k].total_cmp(&pts[b][k])).expect("non-empty");
        extremes.push(lo);
        extremes.push(hi);
    }
    let mut best = (0.0, 0, 0);
    for &a in &extremes {
        for &b in &extremes {
            let dist = norm3(&sub3(&pts[a], &pts[b]));
            if dist > best.0 {
                best = (dist, a, b);
            }
        }
    }
    let (_, a, b) = best;
    let ab = sub3(&pts[b], &pts[a]);
    let c = (0..pts.len())
        .max_by(|&x, &y| norm3(&cross3(&ab, &sub3(&pts[x], &pts[a]))).total_cmp(&norm3(&cross3(&ab, &sub3(&pts[y], &pts[a])))))
        .expect("non-empty");
    let n = cross3(&ab, &sub3(&pts[c], &pts[a]));
    if norm3(&n) <= eps {
        return Err(Error::Inconsistency("degenerate 3D hull: points are collinear".into()));
    }
    let height = |x: usize| dot3(&n, &sub3(&pts[x], &pts[a])).abs();
    let e = (0..pts.len()).max_by(|&x, &y| height(x).total_cmp(&height(y))).expect("non-empty");
    if height(e) / norm3(&n) <= eps {
        return Err(Error::Inconsistency("degenerate 3D hull: points are coplanar".into()));
    }
    Ok([a, b, c, e])
}

fn hull_3d(points: &[FidelityVector], sources: &[Source]) -> Result<RegionHull> {
    let pts: Vec<V3> = points.iter().map(|p| [p.values()[0], p.values()[1], p.values()[2]]).collect();
    if pts.len() < 4 {
        return Err(Error::Inconsistency("3D hull needs at least 4 points".into()));
    }
    let scale = pts.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    let eps = 1e-12 * scale;
    let [a, b, c, e] = initial_simplex(&pts, eps)?;
    let mut qh = Quickhull { pts: &pts, faces: Vec::new(), edges: BTreeMap::new(), eps };

    let inner = centroid(&[&pts[a][..], &pts[b][..], &pts[c][..], &pts[e][..]]);
    let tris = [[a, b, c], [a, c, e], [a, e, b], [b, e, c]];
    let orient = |t: [usize; 3]| {
        let n = cross3(&sub3(&pts[t[1]], &pts[t[0]]), &sub3(&pts[t[2]], &pts[t[0]]));
        if dot3(&n, &sub3(&inner, &pts[t[0]])) > 0.0 {
            [t[0], t[2], t[1]]
        } else {
            t
        }
    };
    let first: Vec<usize> = tris.iter().map(|&t| qh.add_face(orient(t))).collect();
    let rest: Vec<usize> = (0..pts.len()).filter(|&i| ![a, b, c, e].contains(&i)).collect();
    qh.assign(&rest, &first);
    qh.run()?;

    let mut index = BTreeMap::new();
    let mut vertices = Vec::new();
    let mut vsources = Vec::new();
    let mut triangles = Vec::new();
    let mut facets = Vec::new();
    for f in qh.faces.iter().filter(|f| f.alive) {
        let mut t = [0; 3];
        for (slot, &p) in t.iter_mut().zip(&f.v) {
            *slot = *index.entry(p).or_insert_with(|| {
                vertices.push(points[p].clone());
                vsources.push(sources[p].clone());
                vertices.len() - 1
            });
        }
        triangles.push(t);
        facets.push(Facet { normal: f.normal.to_vec(), offset: f.offset });
    }
    Ok(RegionHull { dim: 3, vertices, facets, sources: vsources, triangles })
}
