//! Planar points and angle arithmetic shared by the imaging and landmark
//! modules.
//!
//! Image coordinates are x = column increasing right, y = row increasing
//! down. All angle math converts to mathematical orientation (y up) before
//! taking inverse tangents, so angles are counterclockwise degrees in
//! [0, 360) with 0 along +x.

/// A point with real coordinates in image space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        Point::new((self.x + other.x) / 2.0, (self.y + other.y) / 2.0)
    }

    /// Rotates this point by `degrees` counterclockwise (screen sense:
    /// y down) about `center`.
    pub fn rotated_about(&self, center: &Point, degrees: f64) -> Point {
        let rad = degrees.to_radians();
        let (sin, cos) = rad.sin_cos();
        let dx = self.x - center.x;
        let dy = self.y - center.y;
        Point::new(
            center.x + cos * dx - sin * dy,
            center.y + sin * dx + cos * dy,
        )
    }
}

/// An integer pixel location, used for contour points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PixelPoint {
    pub x: i32,
    pub y: i32,
}

impl PixelPoint {
    pub fn new(x: i32, y: i32) -> Self {
        PixelPoint { x, y }
    }

    pub fn to_point(self) -> Point {
        Point::new(self.x as f64, self.y as f64)
    }

    /// True when the two pixels are 8-adjacent (and distinct).
    pub fn adjacent8(&self, other: &PixelPoint) -> bool {
        let dx = (self.x - other.x).abs();
        let dy = (self.y - other.y).abs();
        dx <= 1 && dy <= 1 && (dx + dy) > 0
    }
}

/// Counterclockwise angle of the ray `from -> to` in degrees, [0, 360),
/// measured y-up. With the reference line UV horizontal after rotation,
/// this is the angle the ray makes with UV.
pub fn angle_ccw_deg(from: &Point, to: &Point) -> crate::Result<f64> {
    let dx = to.x - from.x;
    let dy = from.y - to.y; // flip to y-up
    if dx == 0.0 && dy == 0.0 {
        return Err(crate::Error::InvalidInput(
            "angle of coincident points".into(),
        ));
    }
    let deg = dy.atan2(dx).to_degrees();
    Ok(normalize_deg(deg))
}

/// Maps any angle to [0, 360).
pub fn normalize_deg(deg: f64) -> f64 {
    let mut d = deg % 360.0;
    if d < 0.0 {
        d += 360.0;
    }
    // -1e-13 % 360 can round to 360.0 exactly after the add
    if d >= 360.0 {
        d -= 360.0;
    }
    d
}

/// Signed difference `a - b` folded into (-180, 180].
pub fn angle_diff_deg(a: f64, b: f64) -> f64 {
    let mut d = normalize_deg(a - b);
    if d > 180.0 {
        d -= 360.0;
    }
    d
}

/// An angular interval used for radial landmark searches.
///
/// The window is the minor arc between two rays (span <= 180 degrees).
/// `inset` shrinks it symmetrically or on one end to keep an adjacent
/// finger out of the search.
#[derive(Debug, Clone, Copy)]
pub struct AngleWindow {
    center: f64,
    half_span: f64,
}

impl AngleWindow {
    /// The minor arc between the rays at `a_deg` and `b_deg`.
    pub fn between(a_deg: f64, b_deg: f64) -> Self {
        let a = normalize_deg(a_deg);
        let diff = angle_diff_deg(b_deg, a);
        AngleWindow {
            center: normalize_deg(a + diff / 2.0),
            half_span: diff.abs() / 2.0,
        }
    }

    pub fn lo(&self) -> f64 {
        normalize_deg(self.center - self.half_span)
    }

    pub fn hi(&self) -> f64 {
        normalize_deg(self.center + self.half_span)
    }

    pub fn span(&self) -> f64 {
        2.0 * self.half_span
    }

    /// Shrinks the window by `amount` degrees on the end nearer to
    /// `ray_deg` only.
    pub fn inset_toward(&self, ray_deg: f64, amount: f64) -> Self {
        let d = angle_diff_deg(ray_deg, self.center);
        let half = (self.half_span - amount / 2.0).max(0.0);
        let shift = if d >= 0.0 { -amount / 2.0 } else { amount / 2.0 };
        AngleWindow {
            center: normalize_deg(self.center + shift),
            half_span: half,
        }
    }

    pub fn contains(&self, deg: f64) -> bool {
        angle_diff_deg(deg, self.center).abs() <= self.half_span + 1e-12
    }

    pub fn is_empty(&self) -> bool {
        self.half_span <= 0.0
    }
}
