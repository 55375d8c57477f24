//! Low-distortion, non-contracting embeddings of graph shortest-path metrics
//! into the integer line and into bounded-degree trees.
//!
//! * [`line`] decides line embeddings of unweighted and weighted graph
//!   metrics with a dynamic program over sliding windows of width
//!   `2(d + 1) + 1` (`2(dW + 1) + 1` for maximum weight `W`).
//! * [`tree`] decides embeddings into a rooted tree of bounded degree with a
//!   bottom-up table over `u`-states (partial embeddings plus typelists).
//! * [`oracle`] holds exhaustive searches used as ground truth.
//! * [`hardness`] builds the weighted instances that encode 3-coloring as a
//!   distortion-`a/b` line embedding problem.

pub mod error;
pub mod graph;
pub mod hardness;
pub mod line;
pub mod metric;
pub mod oracle;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{Edge, WeightedGraph};
pub use metric::{ball, local_density, shortest_path_metric, Distances, Metric};

/// Exact rational numbers used for distortion bounds.
pub type Rational = num_rational::Ratio<i64>;

/// Formats a rational as `p/q`, always showing the denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `a/b` or a plain integer. Zero denominators are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("`{text}` is not a rational number"));
    let (num, den) = match text.trim().split_once('/') {
        Some((a, b)) => (
            a.trim().parse::<i64>().map_err(|_| bad())?,
            b.trim().parse::<i64>().map_err(|_| bad())?,
        ),
        None => (text.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Verdict of an exact distortion check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    /// `gap < dist` for the pair.
    Contracts {
        u: usize,
        v: usize,
        dist: u64,
        gap: u64,
    },
    /// `gap > d * dist` for the pair.
    Expands {
        u: usize,
        v: usize,
        dist: u64,
        gap: u64,
    },
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Ok => write!(f, "OK"),
            Verdict::Contracts { u, v, dist, gap } => write!(f, "CONTRACTS {u} {v} D={dist} gap={gap}"),
            Verdict::Expands { u, v, dist, gap } => write!(f, "EXPANDS {u} {v} D={dist} gap={gap}"),
        }
    }
}

/// Checks every pair `u < v` in order; `gap_of(u, v)` is the host distance.
pub(crate) fn check_pairs(m: &Metric, d: &Rational, mut gap_of: impl FnMut(usize, usize) -> u64) -> Verdict {
    let n = m.size();
    let (a, b) = (*d.numer() as i128, *d.denom() as i128);
    for u in 0..n {
        for v in u + 1..n {
            let dist = m.get(u, v);
            let gap = gap_of(u, v);
            if gap < dist {
                return Verdict::Contracts { u, v, dist, gap };
            }
            if gap as i128 * b > a * dist as i128 {
                return Verdict::Expands { u, v, dist, gap };
            }
        }
    }
    Verdict::Ok
}
