//! Exact planar predicates over rational coordinates.
//!
//! Every predicate reduces to the sign of an integer determinant. Drawings
//! are rescaled to a common denominator before bulk work (see
//! [`IntFrame`]) and small coordinates take an `i128` fast path.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A point with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point {
            x: BigRational::from_integer(x.into()),
            y: BigRational::from_integer(y.into()),
        }
    }

    /// Builds a point from numerator/denominator pairs.
    pub fn from_fractions(xn: i64, xd: i64, yn: i64, yd: i64) -> Result<Self> {
        Ok(Point {
            x: ratio(xn.into(), xd.into())?,
            y: ratio(yn.into(), yd.into())?,
        })
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn translate(&self, dx: &BigRational, dy: &BigRational) -> Point {
        Point::new(&self.x + dx, &self.y + dy)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Builds a rational, rejecting a zero denominator.
pub fn ratio(numer: BigInt, denom: BigInt) -> Result<BigRational> {
    if denom.is_zero() {
        return Err(Error::Input("zero denominator".into()));
    }
    Ok(BigRational::new(numer, denom))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    fn from_sign(o: Ordering) -> Self {
        match o {
            Ordering::Greater => Orientation::CounterClockwise,
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
        }
    }
}

pub fn orient(a: &Point, b: &Point, c: &Point) -> Orientation {
    let det = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    Orientation::from_sign(det.cmp(&BigRational::zero()))
}

/// True when every consecutive triple (cyclically) turns the same strict way.
///
/// Returns the common orientation, or `None` if the polygon is not strictly
/// convex.
pub fn strict_convex_orientation(points: &[Point]) -> Option<Orientation> {
    let n = points.len();
    if n < 3 {
        return None;
    }
    let first = orient(&points[0], &points[1], &points[2]);
    if first == Orientation::Collinear {
        return None;
    }
    for i in 0..n {
        let o = orient(&points[i], &points[(i + 1) % n], &points[(i + 2) % n]);
        if o != first {
            return None;
        }
    }
    // Consistent turning can still wind more than once (a pentagram). Every
    // vertex must see all others on the same side of each edge.
    for i in 0..n {
        let a = &points[i];
        let b = &points[(i + 1) % n];
        for (j, c) in points.iter().enumerate() {
            if j == i || j == (i + 1) % n {
                continue;
            }
            if orient(a, b, c) != first {
                return None;
            }
        }
    }
    Some(first)
}

/// Counterclockwise angular order of `a` and `b` around `origin`, starting
/// from the positive x direction.
pub fn ccw_angle_cmp(origin: &Point, a: &Point, b: &Point) -> Ordering {
    let (ax, ay) = (&a.x - &origin.x, &a.y - &origin.y);
    let (bx, by) = (&b.x - &origin.x, &b.y - &origin.y);
    let half = |x: &BigRational, y: &BigRational| -> u8 {
        if y > &BigRational::zero() || (y.is_zero() && x > &BigRational::zero()) {
            0
        } else {
            1
        }
    };
    half(&ax, &ay).cmp(&half(&bx, &by)).then_with(|| {
        let cross = &ax * &by - &ay * &bx;
        BigRational::zero().cmp(&cross)
    })
}

/// Points on the integer parabola `y = x^2`, `x = 0..n`, in counterclockwise
/// boundary order.
pub fn parabola_points(n: usize) -> Vec<Point> {
    (0..n as i64).map(|i| Point::from_ints(i, i * i)).collect()
}

/// Common-denominator integer image of a point set.
///
/// All points are multiplied by the least common multiple of their
/// denominators. The transformation is a positive scaling, so every
/// orientation and incidence predicate is preserved.
#[derive(Clone, Debug)]
pub struct IntFrame {
    coords: Coords,
}

#[derive(Clone, Debug)]
enum Coords {
    Small(Vec<(i128, i128)>),
    Big(Vec<(BigInt, BigInt)>),
}

const SMALL_LIMIT: i64 = 1 << 62;

impl IntFrame {
    pub fn new(points: &[Point]) -> Self {
        let mut lcm = BigInt::one();
        for p in points {
            lcm = lcm.lcm(p.x.denom());
            lcm = lcm.lcm(p.y.denom());
        }
        let scale = |r: &BigRational| -> BigInt { r.numer() * (&lcm / r.denom()) };
        let big: Vec<(BigInt, BigInt)> = points.iter().map(|p| (scale(&p.x), scale(&p.y))).collect();
        let limit = BigInt::from(SMALL_LIMIT);
        if big.iter().all(|(x, y)| x.abs() < limit && y.abs() < limit) {
            let small = big
                .iter()
                .map(|(x, y)| (x.to_i128().unwrap(), y.to_i128().unwrap()))
                .collect();
            IntFrame {
                coords: Coords::Small(small),
            }
        } else {
            IntFrame {
                coords: Coords::Big(big),
            }
        }
    }

    pub fn len(&self) -> usize {
        match &self.coords {
            Coords::Small(v) => v.len(),
            Coords::Big(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sign of the cross product `(b - a) x (c - a)`.
    pub fn orient(&self, a: usize, b: usize, c: usize) -> Ordering {
        match &self.coords {
            Coords::Small(v) => {
                let (ax, ay) = v[a];
                let (bx, by) = v[b];
                let (cx, cy) = v[c];
                // |differences| < 2^63, products < 2^126: no overflow.
                let l = (bx - ax) * (cy - ay);
                let r = (by - ay) * (cx - ax);
                l.cmp(&r)
            }
            Coords::Big(v) => {
                let (ax, ay) = &v[a];
                let (bx, by) = &v[b];
                let (cx, cy) = &v[c];
                let l = (bx - ax) * (cy - ay);
                let r = (by - ay) * (cx - ax);
                l.cmp(&r)
            }
        }
    }

    /// Sign of the dot product `(b - a) . (c - a)`.
    pub fn dot_sign(&self, a: usize, b: usize, c: usize) -> Ordering {
        match &self.coords {
            Coords::Small(v) => {
                let (ax, ay) = v[a];
                let (bx, by) = v[b];
                let (cx, cy) = v[c];
                let d = (bx - ax) * (cx - ax) + (by - ay) * (cy - ay);
                d.cmp(&0)
            }
            Coords::Big(v) => {
                let (ax, ay) = &v[a];
                let (bx, by) = &v[b];
                let (cx, cy) = &v[c];
                let d = (bx - ax) * (cx - ax) + (by - ay) * (cy - ay);
                d.cmp(&BigInt::zero())
            }
        }
    }

    pub fn same_point(&self, a: usize, b: usize) -> bool {
        match &self.coords {
            Coords::Small(v) => v[a] == v[b],
            Coords::Big(v) => v[a] == v[b],
        }
    }

    fn cmp_x(&self, a: usize, b: usize) -> Ordering {
        match &self.coords {
            Coords::Small(v) => v[a].0.cmp(&v[b].0),
            Coords::Big(v) => v[a].0.cmp(&v[b].0),
        }
    }

    fn cmp_y(&self, a: usize, b: usize) -> Ordering {
        match &self.coords {
            Coords::Small(v) => v[a].1.cmp(&v[b].1),
            Coords::Big(v) => v[a].1.cmp(&v[b].1),
        }
    }

    /// `c` lies on the closed segment `ab` (given `a != b` as points, or
    /// degenerate equality otherwise).
    pub fn on_segment(&self, a: usize, b: usize, c: usize) -> bool {
        if self.orient(a, b, c) != Ordering::Equal {
            return false;
        }
        self.in_box(a, b, c)
    }

    fn in_box(&self, a: usize, b: usize, c: usize) -> bool {
        let within = |lo: Ordering, hi: Ordering| lo != Ordering::Greater && hi != Ordering::Greater;
        let (minx, maxx) = if self.cmp_x(a, b) == Ordering::Greater { (b, a) } else { (a, b) };
        let (miny, maxy) = if self.cmp_y(a, b) == Ordering::Greater { (b, a) } else { (a, b) };
        within(self.cmp_x(minx, c), self.cmp_x(c, maxx))
            && within(self.cmp_y(miny, c), self.cmp_y(c, maxy))
    }

    /// Closed segments `ab` and `cd` share at least one point.
    pub fn segments_touch(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        let o1 = self.orient(a, b, c);
        let o2 = self.orient(a, b, d);
        let o3 = self.orient(c, d, a);
        let o4 = self.orient(c, d, b);
        let eq = Ordering::Equal;
        if o1 != eq && o2 != eq && o3 != eq && o4 != eq {
            return o1 != o2 && o3 != o4;
        }
        (o1 == eq && self.in_box(a, b, c))
            || (o2 == eq && self.in_box(a, b, d))
            || (o3 == eq && self.in_box(c, d, a))
            || (o4 == eq && self.in_box(c, d, b))
    }
}
