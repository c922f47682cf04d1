use super::field::{Field, FiniteField};

/// Largest number of homogeneous coordinates a model point may have.
pub const MAX_COORDS: usize = 8;

/// A point of a projective space given by homogeneous coordinates.
pub type Coords<F> = [F; MAX_COORDS];

/// Points of a projective space of dimension `d` with a rank oracle.
///
/// Over a finite field [`ProjectiveModel::pg`] lists every point of
/// PG(d, q), normalized so the first nonzero coordinate is one. Over other
/// fields the points are whatever [`ProjectiveModel::from_points`] is given.
#[derive(Debug, Clone)]
pub struct ProjectiveModel<F: Field> {
    dimension: u32,
    points: Vec<Coords<F>>,
}

impl<F: FiniteField> ProjectiveModel<F> {
    /// The full projective space PG(d, q), q the order of `F`.
    pub fn pg(dimension: u32) -> Self {
        let cols = dimension as usize + 1;
        assert!(
            (2..=MAX_COORDS).contains(&cols),
            "dimension must be in 1..={}",
            MAX_COORDS - 1
        );
        let elements = F::elements();
        let q = elements.len();
        let mut points = Vec::new();
        // Leading one at position `lead`, zeros before, anything after.
        for lead in 0..cols {
            let free = cols - lead - 1;
            let count = q.pow(free as u32);
            for mut code in 0..count {
                let mut p = [F::zero(); MAX_COORDS];
                p[lead] = F::one();
                for c in (lead + 1..cols).rev() {
                    p[c] = elements[code % q];
                    code /= q;
                }
                points.push(p);
            }
        }
        ProjectiveModel { dimension, points }
    }

    pub fn field_order(&self) -> usize {
        F::order()
    }
}

impl<F: Field> ProjectiveModel<F> {
    /// A model over explicit coordinate vectors of length `dimension + 1`.
    ///
    /// Panics on a zero vector or on a vector of the wrong length.
    pub fn from_points(dimension: u32, vectors: &[Vec<F>]) -> Self {
        let cols = dimension as usize + 1;
        assert!(cols <= MAX_COORDS);
        let points = vectors
            .iter()
            .map(|v| {
                assert_eq!(v.len(), cols, "coordinate vector of wrong length");
                assert!(v.iter().any(|c| !c.is_zero()), "zero vector is not a point");
                let mut p = [F::zero(); MAX_COORDS];
                p[..cols].copy_from_slice(v);
                p
            })
            .collect();
        ProjectiveModel { dimension, points }
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn columns(&self) -> usize {
        self.dimension as usize + 1
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[F] {
        &self.points[i][..self.columns()]
    }

    pub fn points(&self) -> impl Iterator<Item = &[F]> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    /// Rank of the coordinate matrix of the listed points; 0 for none.
    pub fn rank(&self, indices: &[usize]) -> u32 {
        let mut basis = RankBasis::new(self.columns());
        for &i in indices {
            basis.insert(&self.points[i]);
            if basis.rank() == self.columns() {
                break;
            }
        }
        basis.rank() as u32
    }

    /// Rank of the points `of[i]` for the members `i` of `set`.
    pub fn rank_of_set(&self, of: &[usize], set: crate::PointSet) -> u32 {
        let mut basis = RankBasis::new(self.columns());
        for i in set.iter() {
            basis.insert(&self.points[of[i]]);
            if basis.rank() == self.columns() {
                break;
            }
        }
        basis.rank() as u32
    }
}

/// `rk` of a list of model points.
pub fn model_rank<F: Field>(model: &ProjectiveModel<F>, points: &[usize]) -> u32 {
    model.rank(points)
}

/// Row-echelon basis grown one vector at a time.
#[derive(Debug, Clone)]
pub struct RankBasis<F: Field> {
    cols: usize,
    rows: [Coords<F>; MAX_COORDS],
    pivots: [usize; MAX_COORDS],
    len: usize,
}

impl<F: Field> RankBasis<F> {
    pub fn new(cols: usize) -> Self {
        assert!(cols <= MAX_COORDS);
        RankBasis {
            cols,
            rows: [[F::zero(); MAX_COORDS]; MAX_COORDS],
            pivots: [0; MAX_COORDS],
            len: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.len
    }

    /// Reduces `v` against the basis and keeps the remainder if nonzero.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let mut r = [F::zero(); MAX_COORDS];
        r[..self.cols].copy_from_slice(&v[..self.cols]);
        for k in 0..self.len {
            let p = self.pivots[k];
            let c = r[p];
            if !c.is_zero() {
                // Basis rows are normalized to 1 at their pivot.
                for (x, &b) in r[p..self.cols].iter_mut().zip(&self.rows[k][p..self.cols]) {
                    *x = *x - c * b;
                }
            }
        }
        let Some(p) = (0..self.cols).find(|&j| !r[j].is_zero()) else {
            return false;
        };
        let inv = F::one() / r[p];
        for x in &mut r[p..self.cols] {
            *x = *x * inv;
        }
        self.rows[self.len] = r;
        self.pivots[self.len] = p;
        self.len += 1;
        true
    }
}
