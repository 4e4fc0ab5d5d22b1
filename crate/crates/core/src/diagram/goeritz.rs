//! Goeritz matrices and the Gordon–Litherland signature.
//!
//! Faces of a connected diagram are 2-coloured; the white class is the one
//! containing corner 0 of the piece's lowest crossing (a PD code carries no
//! distinguished unbounded region). At a crossing the white corners either
//! sit counterclockwise of the under-strand ends (corners 0 and 2, incidence
//! `η = +1`) or clockwise of them (`η = −1`). A crossing is of type II when each
//! white corner is bounded by one incoming and one outgoing half-edge.
//!
//! `G'ᵢⱼ = −Σ η(c)` over crossings joining white regions `i ≠ j`, with the
//! diagonal fixed by zero row sums; the Goeritz matrix drops the first white
//! region. Then `det L = |det G|` and `σ(L) = sign(G) − μ`, `μ = Σ_{II} η(c)`.

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoeritzData {
    pub matrix: IntMatrix,
    /// Gordon–Litherland correction `μ`.
    pub correction: i64,
}

impl GoeritzData {
    pub fn determinant(&self) -> Result<i128> {
        self.matrix.determinant()
    }

    pub fn signature(&self) -> Result<i64> {
        Ok(self.matrix.inertia()?.signature() - self.correction)
    }

    fn empty() -> Self {
        GoeritzData {
            matrix: IntMatrix::zeros(0, 0),
            correction: 0,
        }
    }
}

/// Goeritz data of a connected diagram. A crossingless unknot gives the empty
/// matrix.
pub fn goeritz(d: &LinkDiagram) -> Result<GoeritzData> {
    if d.is_split_diagram() {
        return Err(Error::DisconnectedDiagram(d.n_pieces()));
    }
    Ok(goeritz_pieces(d)?.pop().unwrap_or_else(GoeritzData::empty))
}

/// Goeritz data for each connected piece; crossingless loops contribute an
/// empty matrix each.
pub fn goeritz_pieces(d: &LinkDiagram) -> Result<Vec<GoeritzData>> {
    let mut out = Vec::new();
    for piece in d.crossing_pieces() {
        out.push(piece_goeritz(d, piece, false)?);
    }
    out.extend((0..d.free_loops()).map(|_| GoeritzData::empty()));
    Ok(out)
}

pub(crate) fn piece_goeritz(
    d: &LinkDiagram,
    piece: &[usize],
    flip_colors: bool,
) -> Result<GoeritzData> {
    let faces: Vec<&Vec<(usize, usize)>> = d
        .faces()
        .iter()
        .filter(|f| piece.contains(&f[0].0))
        .collect();
    let mut face_of = std::collections::HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for &corner in f.iter() {
            face_of.insert(corner, fi);
        }
    }
    // 2-colour faces: adjacent corners of a crossing differ
    let mut color: Vec<Option<bool>> = vec![None; faces.len()];
    let seed = face_of[&(piece[0], 0)];
    color[seed] = Some(!flip_colors);
    let mut stack = vec![seed];
    while let Some(fi) = stack.pop() {
        let c = color[fi].unwrap();
        for &(x, k) in faces[fi].iter() {
            for nk in [(k + 1) % 4, (k + 3) % 4] {
                let nf = face_of[&(x, nk)];
                match color[nf] {
                    None => {
                        color[nf] = Some(!c);
                        stack.push(nf);
                    }
                    Some(nc) if nc == c => {
                        return Err(Error::NonPlanarOrInconsistent(
                            "faces admit no checkerboard colouring".into(),
                        ))
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let white: Vec<usize> = (0..faces.len())
        .filter(|&f| color[f] == Some(true))
        .collect();
    let index_of = |f: usize| white.iter().position(|&w| w == f);

    let m = white.len();
    let mut full = IntMatrix::zeros(m, m);
    let mut correction = 0i64;
    for &c in piece {
        let white_at_even = color[face_of[&(c, 0)]] == Some(true);
        let eta: i128 = if white_at_even { 1 } else { -1 };
        let positive = d.over_enters_at_d(c);
        // corner 0 is (a in, b) and b is outgoing iff the crossing is positive
        let mixed = white_at_even == positive;
        if mixed {
            correction += eta as i64;
        }
        let (r, s) = if white_at_even {
            (face_of[&(c, 0)], face_of[&(c, 2)])
        } else {
            (face_of[&(c, 1)], face_of[&(c, 3)])
        };
        if r != s {
            let (i, j) = (index_of(r).unwrap(), index_of(s).unwrap());
            full[(i, j)] -= eta;
            full[(j, i)] -= eta;
        }
    }
    for i in 0..m {
        let off: i128 = (0..m).filter(|&j| j != i).map(|j| full[(i, j)]).sum();
        full[(i, i)] = -off;
    }
    let matrix = if m == 0 { full } else { full.minor(0, 0) };
    Ok(GoeritzData { matrix, correction })
}
