use num_rational::Ratio;
use num_traits::Zero;

use crate::{NewtonError, Result};

type Slope = Ratio<i64>;

/// nondecreasing slopes with positive multiplicities; the polygon is the
/// piecewise-linear path from (0,0) using each slope multiplicity-many times
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NewtonPolygon {
    slopes: Vec<(Slope, usize)>,
}

impl NewtonPolygon {
    pub fn new<I: IntoIterator<Item = (Slope, usize)>>(pairs: I) -> Result<Self> {
        let mut raw: Vec<(Slope, usize)> = pairs.into_iter().filter(|&(_, m)| m > 0).collect();
        raw.sort();
        let mut slopes: Vec<(Slope, usize)> = Vec::new();
        for (s, m) in raw {
            match slopes.last_mut() {
                Some(last) if last.0 == s => last.1 += m,
                _ => slopes.push((s, m)),
            }
        }
        if slopes.is_empty() {
            return Err(NewtonError::Shape);
        }
        Ok(NewtonPolygon { slopes })
    }

    pub fn isoclinic(slope: Slope, mult: usize) -> Result<Self> {
        NewtonPolygon::new([(slope, mult)])
    }

    pub fn slopes(&self) -> &[(Slope, usize)] {
        &self.slopes
    }

    pub fn width(&self) -> usize {
        self.slopes.iter().map(|&(_, m)| m).sum()
    }

    pub fn total_rise(&self) -> Slope {
        self.slopes
            .iter()
            .map(|&(s, m)| s * Ratio::from_integer(m as i64))
            .sum()
    }

    pub fn min_slope(&self) -> Slope {
        self.slopes[0].0
    }

    pub fn max_slope(&self) -> Slope {
        self.slopes[self.slopes.len() - 1].0
    }

    pub fn is_isoclinic(&self) -> Option<Slope> {
        (self.slopes.len() == 1).then(|| self.slopes[0].0)
    }

    pub fn has_even_multiplicities(&self) -> bool {
        self.slopes.iter().all(|&(_, m)| m % 2 == 0)
    }

    /// height of the polygon at integer abscissa x <= width; exact because
    /// every breakpoint sits at an integer abscissa
    pub fn value_at(&self, x: usize) -> Slope {
        assert!(x <= self.width(), "abscissa beyond the polygon");
        let mut rem = x;
        let mut acc = Slope::zero();
        for &(s, m) in &self.slopes {
            let take = rem.min(m);
            acc += s * Ratio::from_integer(take as i64);
            rem -= take;
            if rem == 0 {
                break;
            }
        }
        acc
    }
}

impl std::fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for &(s, m) in &self.slopes {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if *s.denom() == 1 {
                write!(f, "{}^{}", s.numer(), m)?;
            } else {
                write!(f, "({}/{})^{}", s.numer(), s.denom(), m)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Below,
    Above,
    Equal,
    Incomparable,
}

/// pointwise comparison of two polygons with matching endpoints; "below"
/// means the first never rises above the second
pub fn polygon_dominance(p: &NewtonPolygon, q: &NewtonPolygon) -> Result<Dominance> {
    if p.width() != q.width() || p.total_rise() != q.total_rise() {
        return Err(NewtonError::Endpoints);
    }
    let (mut some_below, mut some_above) = (false, false);
    for x in 0..=p.width() {
        let (a, b) = (p.value_at(x), q.value_at(x));
        if a < b {
            some_below = true;
        } else if a > b {
            some_above = true;
        }
    }
    Ok(match (some_below, some_above) {
        (false, false) => Dominance::Equal,
        (true, false) => Dominance::Below,
        (false, true) => Dominance::Above,
        (true, true) => Dominance::Incomparable,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StratumLabel {
    Supersingular,
    N { a: usize, b: usize },
}

impl std::fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StratumLabel::Supersingular => write!(f, "ss"),
            StratumLabel::N { a, b } => write!(f, "N[{a},{b}]"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct NewtonStratum {
    pub label: StratumLabel,
    pub polygon: NewtonPolygon,
    pub dimension: usize,
}

impl NewtonStratum {
    /// the open stratum N[1, n-1]
    pub fn is_mu_ordinary(&self, n: usize) -> bool {
        self.label == StratumLabel::N { a: 1, b: n - 1 }
    }
}

/// all Newton strata for rank parameter n: the supersingular one plus N[a,b]
/// for 1 <= a <= b <= n-1, each with its polygon and recorded dimension
pub fn newton_strata(n: usize) -> Result<Vec<NewtonStratum>> {
    if n < 2 {
        return Err(NewtonError::RankRange);
    }
    let half = Ratio::new(1, 2);
    let mut out = Vec::new();
    for a in 1..n {
        for b in a..n {
            let polygon = NewtonPolygon::new([
                (Ratio::new(a as i64 - 1, 2 * a as i64), 2 * a),
                (half, 2 * b - 2 * a),
                (
                    Ratio::new(n as i64 - b as i64 + 1, 2 * (n - b) as i64),
                    2 * (n - b),
                ),
            ])?;
            out.push(NewtonStratum {
                label: StratumLabel::N { a, b },
                polygon,
                dimension: b - a + n,
            });
        }
    }
    out.push(NewtonStratum {
        label: StratumLabel::Supersingular,
        polygon: NewtonPolygon::isoclinic(half, 2 * n)?,
        dimension: n - 1,
    });
    out.sort_by(|x, y| {
        y.dimension
            .cmp(&x.dimension)
            .then_with(|| x.polygon.slopes().cmp(y.polygon.slopes()))
    });
    Ok(out)
}

/// cover relations of the "below" partial order on the strata polygons,
/// indices into the input slice, edge (i, j) meaning i sits strictly below j
pub fn poset_cover_edges(strata: &[NewtonStratum]) -> Result<Vec<(usize, usize)>> {
    let k = strata.len();
    let mut strictly_below = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j
                && polygon_dominance(&strata[i].polygon, &strata[j].polygon)? == Dominance::Below
            {
                strictly_below[i][j] = true;
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if !strictly_below[i][j] {
                continue;
            }
            let covered = (0..k).any(|m| strictly_below[i][m] && strictly_below[m][j]);
            if !covered {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}
