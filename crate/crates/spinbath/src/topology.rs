//! Bath interaction graphs of fixed connectivity K.
//!
//! K = 0 leaves the bath spins mutually non-interacting; K = 2, 4, 6 place
//! them on periodic ring, square and triangular lattices; K = N-1 couples
//! every pair. Periodic boundaries keep every vertex at degree exactly K.

use crate::error::{Error, Result};

/// Unordered bath-spin pairs (i < j), lexicographically sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    edges: Vec<(usize, usize)>,
}

impl EdgeList {
    pub fn empty() -> Self {
        EdgeList { edges: Vec::new() }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Degree of every vertex among `n` bath spins.
    pub fn degrees(&self, n: usize) -> Vec<usize> {
        let mut deg = vec![0; n];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    fn from_pairs(mut edges: Vec<(usize, usize)>) -> Self {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        EdgeList { edges }
    }
}

/// Supported connectivities: K in {0, 2, 4, 6, N-1}.
pub fn build_topology(k: usize, n_bath: usize) -> Result<EdgeList> {
    if n_bath < 2 {
        return Err(Error::config(format!(
            "bath topology needs at least 2 spins, got {n_bath}"
        )));
    }
    let list = match k {
        0 => EdgeList::empty(),
        2 => ring(n_bath)?,
        4 => square_torus(n_bath)?,
        6 => triangular_torus(n_bath)?,
        _ if k == n_bath - 1 => complete(n_bath),
        _ => {
            return Err(Error::config(format!(
                "unsupported connectivity K={k} for N={n_bath} (allowed: 0, 2, 4, 6, N-1)"
            )))
        }
    };
    debug_assert!(list.degrees(n_bath).iter().all(|&d| d == k));
    Ok(list)
}

fn ring(n: usize) -> Result<EdgeList> {
    if n < 3 {
        return Err(Error::config(format!(
            "K=2 needs a ring of at least 3 spins, got {n}"
        )));
    }
    Ok(EdgeList::from_pairs(
        (0..n).map(|i| (i, (i + 1) % n)).collect(),
    ))
}

fn square_torus(n: usize) -> Result<EdgeList> {
    let side = (n as f64).sqrt().round() as usize;
    if side * side != n || side < 3 {
        return Err(Error::config(format!(
            "K=4 needs N = L x L with L >= 3, got N={n}"
        )));
    }
    let site = |x: usize, y: usize| (y % side) * side + (x % side);
    let mut edges = Vec::with_capacity(2 * n);
    for y in 0..side {
        for x in 0..side {
            edges.push((site(x, y), site(x + 1, y)));
            edges.push((site(x, y), site(x, y + 1)));
        }
    }
    Ok(EdgeList::from_pairs(edges))
}

fn triangular_torus(n: usize) -> Result<EdgeList> {
    let (lx, ly) = factor_near_square(n).ok_or_else(|| {
        Error::config(format!(
            "K=6 needs N = Lx x Ly with Lx, Ly >= 3, got N={n}"
        ))
    })?;
    let site = |x: usize, y: usize| (y % ly) * lx + (x % lx);
    let mut edges = Vec::with_capacity(3 * n);
    for y in 0..ly {
        for x in 0..lx {
            // square bonds plus one diagonal make the triangular lattice
            edges.push((site(x, y), site(x + 1, y)));
            edges.push((site(x, y), site(x, y + 1)));
            edges.push((site(x, y), site(x + 1, y + 1)));
        }
    }
    Ok(EdgeList::from_pairs(edges))
}

fn complete(n: usize) -> EdgeList {
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    EdgeList { edges }
}

/// Largest divisor pair (lx, ly), lx <= ly, both >= 3, with lx closest to sqrt(n).
fn factor_near_square(n: usize) -> Option<(usize, usize)> {
    let mut best = None;
    let mut lx = (n as f64).sqrt() as usize;
    while lx >= 3 {
        if n % lx == 0 && n / lx >= 3 {
            best = Some((lx, n / lx));
            break;
        }
        lx -= 1;
    }
    best
}
