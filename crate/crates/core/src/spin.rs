//! Half-integer spins and the argument set of a 6j-symbol.

use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A non-negative integer or half-integer spin, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Spin(u32);

impl Spin {
    pub const ZERO: Spin = Spin(0);

    pub const fn from_twice(twice: u32) -> Self {
        Spin(twice)
    }

    /// Integer spin `n`.
    pub const fn integer(n: u32) -> Self {
        Spin(2 * n)
    }

    pub const fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// `j + 1/2`, the length that enters the semiclassical geometry.
    pub fn shifted(self) -> f64 {
        (f64::from(self.0) + 1.0) / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Parses `"3"`, `"3.5"`, `"7/2"` and similar.
impl FromStr for Spin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| Error::InvalidSpin)?;
            return match den.trim() {
                "1" => Ok(Spin(2 * num)),
                "2" => Ok(Spin(num)),
                _ => Err(Error::InvalidSpin),
            };
        }
        if let Some((int, frac)) = s.split_once('.') {
            let int: u32 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| Error::InvalidSpin)?
            };
            let frac = frac.trim_end_matches('0');
            return match frac {
                "" => Ok(Spin(2 * int)),
                "5" => Ok(Spin(2 * int + 1)),
                _ => Err(Error::InvalidSpin),
            };
        }
        let n: u32 = s.parse().map_err(|_| Error::InvalidSpin)?;
        Ok(Spin(2 * n))
    }
}

/// `true` iff `|a-b| <= c <= a+b` and `a+b+c` is an integer.
pub fn triangle_satisfied(a: Spin, b: Spin, c: Spin) -> bool {
    let (a, b, c) = (a.0, b.0, c.0);
    (a + b + c) % 2 == 0 && a.abs_diff(b) <= c && c <= a + b
}

/// The four coupling triads of `{j1 j2 j12; j3 j4 j23}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Triad {
    J1J2J12,
    J3J4J12,
    J2J3J23,
    J1J4J23,
}

impl fmt::Display for Triad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Triad::J1J2J12 => "(j1,j2,j12)",
            Triad::J3J4J12 => "(j3,j4,j12)",
            Triad::J2J3J23 => "(j2,j3,j23)",
            Triad::J1J4J23 => "(j1,j4,j23)",
        })
    }
}

/// Ranges of the intermediate spins for fixed `j1..j4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub j12_min: Spin,
    pub j12_max: Spin,
    pub j23_min: Spin,
    pub j23_max: Spin,
    /// Dimension of the zero-total-angular-momentum subspace.
    pub dim: usize,
    /// `(dim - 1) / 2`.
    pub j: Spin,
}

impl Bounds {
    /// `(j12_min + j12_max) / 2` as a float.
    pub fn j12_avg(&self) -> f64 {
        f64::from(self.j12_min.0 + self.j12_max.0) / 4.0
    }

    pub fn j23_avg(&self) -> f64 {
        f64::from(self.j23_min.0 + self.j23_max.0) / 4.0
    }

    /// Radius `D/2` of both spherical phase spaces.
    pub fn radius(&self) -> f64 {
        self.dim as f64 / 2.0
    }

    pub fn j12_values(&self) -> impl Iterator<Item = Spin> + '_ {
        (0..self.dim as u32).map(move |k| Spin(self.j12_min.0 + 2 * k))
    }

    pub fn j23_values(&self) -> impl Iterator<Item = Spin> + '_ {
        (0..self.dim as u32).map(move |k| Spin(self.j23_min.0 + 2 * k))
    }
}

/// Bounds on `j12` and `j23` implied by the four outer spins.
pub fn intermediate_bounds(j1: Spin, j2: Spin, j3: Spin, j4: Spin) -> Result<Bounds> {
    let (a, b, c, d) = (j1.0, j2.0, j3.0, j4.0);
    if (a + b + c + d) % 2 != 0 {
        return Err(Error::EmptySubspace);
    }
    let j12_min = a.abs_diff(b).max(c.abs_diff(d));
    let j12_max = (a + b).min(c + d);
    let j23_min = b.abs_diff(c).max(a.abs_diff(d));
    let j23_max = (b + c).min(a + d);
    if j12_max < j12_min || j23_max < j23_min {
        return Err(Error::EmptySubspace);
    }
    let dim = ((j12_max - j12_min) / 2 + 1) as usize;
    debug_assert_eq!(dim, ((j23_max - j23_min) / 2 + 1) as usize);
    Ok(Bounds {
        j12_min: Spin(j12_min),
        j12_max: Spin(j12_max),
        j23_min: Spin(j23_min),
        j23_max: Spin(j23_max),
        dim,
        j: Spin(dim as u32 - 1),
    })
}

/// The six spins of `{j1 j2 j12; j3 j4 j23}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SixJArguments {
    pub j1: Spin,
    pub j2: Spin,
    pub j3: Spin,
    pub j4: Spin,
    pub j12: Spin,
    pub j23: Spin,
}

impl SixJArguments {
    /// Validates the four triads.
    pub fn new(j1: Spin, j2: Spin, j3: Spin, j4: Spin, j12: Spin, j23: Spin) -> Result<Self> {
        let args = SixJArguments { j1, j2, j3, j4, j12, j23 };
        args.validate()?;
        Ok(args)
    }

    /// Convenience constructor from twice-values.
    pub fn from_twice(t: [u32; 6]) -> Result<Self> {
        Self::new(
            Spin(t[0]),
            Spin(t[1]),
            Spin(t[2]),
            Spin(t[3]),
            Spin(t[4]),
            Spin(t[5]),
        )
    }

    /// Convenience constructor for integer spins.
    pub fn integers(j: [u32; 6]) -> Result<Self> {
        Self::from_twice(j.map(|x| 2 * x))
    }

    pub fn validate(&self) -> Result<()> {
        let triads = [
            (self.j1, self.j2, self.j12, Triad::J1J2J12),
            (self.j3, self.j4, self.j12, Triad::J3J4J12),
            (self.j2, self.j3, self.j23, Triad::J2J3J23),
            (self.j1, self.j4, self.j23, Triad::J1J4J23),
        ];
        for (a, b, c, t) in triads {
            if !triangle_satisfied(a, b, c) {
                return Err(Error::TriangleViolation(t));
            }
        }
        Ok(())
    }

    pub fn bounds(&self) -> Bounds {
        // Valid triads guarantee a non-empty range.
        intermediate_bounds(self.j1, self.j2, self.j3, self.j4)
            .expect("validated arguments have a non-empty coupling range")
    }

    /// Same outer spins with different intermediate values.
    pub fn with_intermediate(&self, j12: Spin, j23: Spin) -> Result<Self> {
        Self::new(self.j1, self.j2, self.j3, self.j4, j12, j23)
    }

    /// Shifted edge lengths `[J1, J2, J3, J4, J12, J23]`.
    pub fn edges(&self) -> [f64; 6] {
        [
            self.j1.shifted(),
            self.j2.shifted(),
            self.j3.shifted(),
            self.j4.shifted(),
            self.j12.shifted(),
            self.j23.shifted(),
        ]
    }

    pub fn twice(&self) -> [u32; 6] {
        [
            self.j1.0, self.j2.0, self.j3.0, self.j4.0, self.j12.0, self.j23.0,
        ]
    }
}

impl fmt::Display for SixJArguments {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{} {} {}; {} {} {}}}",
            self.j1, self.j2, self.j12, self.j3, self.j4, self.j23
        )
    }
}

/// Proptest strategy for valid argument sets with every spin at most
/// `max_twice / 2`.
#[cfg(test)]
pub(crate) fn arb_args(max_twice: u32) -> impl proptest::strategy::Strategy<Value = SixJArguments> {
    use proptest::prelude::*;
    (prop::array::uniform4(0..=max_twice), any::<u32>(), any::<u32>()).prop_filter_map(
        "empty coupling range",
        move |(mut t, u, v)| {
            if (t.iter().sum::<u32>()) % 2 == 1 {
                t[3] = if t[3] == max_twice { t[3] - 1 } else { t[3] + 1 };
            }
            let b = intermediate_bounds(Spin(t[0]), Spin(t[1]), Spin(t[2]), Spin(t[3])).ok()?;
            let j12 = Spin(b.j12_min.0 + 2 * (u % b.dim as u32));
            let j23 = Spin(b.j23_min.0 + 2 * (v % b.dim as u32));
            if j12.0 > max_twice || j23.0 > max_twice {
                return None;
            }
            SixJArguments::new(Spin(t[0]), Spin(t[1]), Spin(t[2]), Spin(t[3]), j12, j23).ok()
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Spin {
        x.parse().unwrap()
    }

    #[test]
    fn triangle_rule() {
        assert!(triangle_satisfied(s("1"), s("1"), s("2")));
        assert!(!triangle_satisfied(s("1"), s("1"), s("3")));
        assert!(triangle_satisfied(s("1/2"), s("1/2"), s("1")));
        // perimeter 5/2 is not an integer
        assert!(!triangle_satisfied(s("1/2"), s("1"), s("1")));
        assert!(!triangle_satisfied(s("1/2"), s("1/2"), s("1/2")));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(s("3.5"), Spin::from_twice(7));
        assert_eq!(s("7/2"), Spin::from_twice(7));
        assert_eq!(s("4"), Spin::integer(4));
        assert_eq!(s("4.0"), Spin::integer(4));
        assert_eq!(s("8/2"), Spin::from_twice(8));
        assert!("3.25".parse::<Spin>().is_err());
        assert!("-1".parse::<Spin>().is_err());
        assert!("1/3".parse::<Spin>().is_err());
    }

    #[test]
    fn bounds_examples() {
        let b = intermediate_bounds(s("2"), s("3"), s("4"), s("5")).unwrap();
        assert_eq!((b.j12_min, b.j12_max), (s("1"), s("5")));
        assert_eq!((b.j23_min, b.j23_max), (s("3"), s("7")));
        assert_eq!((b.dim, b.j), (5, s("2")));

        let b = intermediate_bounds(s("1"), s("1"), s("1"), s("1")).unwrap();
        assert_eq!((b.j12_min, b.j12_max, b.j23_min, b.j23_max), (s("0"), s("2"), s("0"), s("2")));
        assert_eq!((b.dim, b.j), (3, s("1")));

        let h = s("1/2");
        let b = intermediate_bounds(h, h, h, h).unwrap();
        assert_eq!((b.j12_min, b.j12_max, b.j23_min, b.j23_max), (s("0"), s("1"), s("0"), s("1")));
        assert_eq!((b.dim, b.j), (2, h));
    }

    #[test]
    fn empty_subspace() {
        assert_eq!(
            intermediate_bounds(s("1"), s("1"), s("5"), s("1")),
            Err(Error::EmptySubspace)
        );
        assert_eq!(
            intermediate_bounds(s("1/2"), s("1"), s("1"), s("1")),
            Err(Error::EmptySubspace)
        );
    }

    #[test]
    fn names_failing_triad() {
        let err = SixJArguments::integers([1, 1, 1, 1, 3, 1]).unwrap_err();
        assert_eq!(err, Error::TriangleViolation(Triad::J1J2J12));
        let err = SixJArguments::integers([1, 1, 1, 1, 1, 3]).unwrap_err();
        assert_eq!(err, Error::TriangleViolation(Triad::J2J3J23));
    }
}
