//! Binary silhouette extraction: grayscale conversion, Otsu thresholding,
//! median filtering, connected components, principal-axis rotation, and
//! wrist trimming.
//!
//! Every operation is a pure function of its inputs and safe to call
//! concurrently on distinct images.

use crate::error::{Error, Result};
use crate::geometry::{PixelPoint, Point};

/// An 8-bit grayscale image, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    pub width: u32,
    pub height: u32,
    pub pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: u32, height: u32, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || pixels.len() != (width * height) as usize {
            return Err(Error::InvalidInput(format!(
                "gray image {}x{} with {} pixels",
                width,
                height,
                pixels.len()
            )));
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> u8) -> Self {
        let mut pixels = Vec::with_capacity((width * height) as usize);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        GrayImage {
            width,
            height,
            pixels,
        }
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> u8 {
        self.pixels[(y * self.width + x) as usize]
    }

    /// Clamped access, used by windowed filters at image edges.
    #[inline]
    pub fn get_clamped(&self, x: i64, y: i64) -> u8 {
        let cx = x.clamp(0, self.width as i64 - 1) as u32;
        let cy = y.clamp(0, self.height as i64 - 1) as u32;
        self.get(cx, cy)
    }

    /// Bilinear resize to the target dimensions. Returns a clone when the
    /// size already matches.
    pub fn resized(&self, width: u32, height: u32) -> Result<GrayImage> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidInput("resize to empty image".into()));
        }
        if width == self.width && height == self.height {
            return Ok(self.clone());
        }
        let sx = self.width as f64 / width as f64;
        let sy = self.height as f64 / height as f64;
        Ok(GrayImage::from_fn(width, height, |x, y| {
            let fx = (x as f64 + 0.5) * sx - 0.5;
            let fy = (y as f64 + 0.5) * sy - 0.5;
            let x0 = fx.floor() as i64;
            let y0 = fy.floor() as i64;
            let tx = fx - x0 as f64;
            let ty = fy - y0 as f64;
            let p00 = self.get_clamped(x0, y0) as f64;
            let p10 = self.get_clamped(x0 + 1, y0) as f64;
            let p01 = self.get_clamped(x0, y0 + 1) as f64;
            let p11 = self.get_clamped(x0 + 1, y0 + 1) as f64;
            let v = p00 * (1.0 - tx) * (1.0 - ty)
                + p10 * tx * (1.0 - ty)
                + p01 * (1.0 - tx) * ty
                + p11 * tx * ty;
            v.round().clamp(0.0, 255.0) as u8
        }))
    }
}

/// An RGB image used only as conversion input.
#[derive(Debug, Clone)]
pub struct RgbImage {
    pub width: u32,
    pub height: u32,
    /// Interleaved r, g, b.
    pub pixels: Vec<u8>,
}

impl RgbImage {
    pub fn new(width: u32, height: u32, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || pixels.len() != (width * height * 3) as usize {
            return Err(Error::InvalidInput("rgb image dimension mismatch".into()));
        }
        Ok(RgbImage {
            width,
            height,
            pixels,
        })
    }
}

/// A binary silhouette. After [`largest_component`] the foreground is a
/// single 8-connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryHandImage {
    pub width: u32,
    pub height: u32,
    pub mask: Vec<bool>,
}

impl BinaryHandImage {
    pub fn new(width: u32, height: u32, mask: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 || mask.len() != (width * height) as usize {
            return Err(Error::InvalidInput("mask dimension mismatch".into()));
        }
        Ok(BinaryHandImage {
            width,
            height,
            mask,
        })
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> bool) -> Self {
        let mut mask = Vec::with_capacity((width * height) as usize);
        for y in 0..height {
            for x in 0..width {
                mask.push(f(x, y));
            }
        }
        BinaryHandImage {
            width,
            height,
            mask,
        }
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> bool {
        self.mask[(y * self.width + x) as usize]
    }

    #[inline]
    pub fn get_i(&self, x: i64, y: i64) -> bool {
        if x < 0 || y < 0 || x >= self.width as i64 || y >= self.height as i64 {
            false
        } else {
            self.get(x as u32, y as u32)
        }
    }

    #[inline]
    pub fn set(&mut self, x: u32, y: u32, v: bool) {
        self.mask[(y * self.width + x) as usize] = v;
    }

    pub fn foreground_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Samples the mask at real coordinates by nearest pixel; outside the
    /// image is background.
    pub fn sample(&self, x: f64, y: f64) -> bool {
        self.get_i(x.round() as i64, y.round() as i64)
    }

    /// Inclusive row range [min, max] containing foreground.
    pub fn row_extent(&self) -> Option<(u32, u32)> {
        let mut min = None;
        let mut max = None;
        for y in 0..self.height {
            let any = (0..self.width).any(|x| self.get(x, y));
            if any {
                if min.is_none() {
                    min = Some(y);
                }
                max = Some(y);
            }
        }
        min.zip(max)
    }

    pub fn to_gray(&self) -> GrayImage {
        GrayImage {
            width: self.width,
            height: self.height,
            pixels: self.mask.iter().map(|&m| if m { 255 } else { 0 }).collect(),
        }
    }

    /// Count of pixels set in exactly one of the two masks.
    pub fn symmetric_difference(&self, other: &BinaryHandImage) -> usize {
        assert_eq!(self.mask.len(), other.mask.len());
        self.mask
            .iter()
            .zip(&other.mask)
            .filter(|(a, b)| a != b)
            .count()
    }
}

/// The ordered boundary of the hand: an 8-connected closed loop.
#[derive(Debug, Clone)]
pub struct HandContour {
    pub points: Vec<PixelPoint>,
}

impl HandContour {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Arc length of one forward step from point `i` to `i + 1` (wrapping).
    pub fn step_len(&self, i: usize) -> f64 {
        let a = self.points[i];
        let b = self.points[(i + 1) % self.points.len()];
        if a.x != b.x && a.y != b.y {
            std::f64::consts::SQRT_2
        } else {
            1.0
        }
    }
}

/// The wrist reference frame produced by [`trim_wrist`].
#[derive(Debug, Clone, Copy)]
pub struct ReferenceFrame {
    /// Centroid of the upright component before trimming (Eq. of moments).
    pub centroid: Point,
    /// Midpoint of UV; the reference point for all landmark searches.
    pub r: Point,
    /// Leftmost foreground pixel on the UV row.
    pub u: Point,
    /// Rightmost foreground pixel on the UV row.
    pub v: Point,
    /// Wrist-cut height in pixels: 20% of the component row extent.
    pub h: u32,
}

const LUMA_R: f64 = 0.299;
const LUMA_G: f64 = 0.587;
const LUMA_B: f64 = 0.114;

/// Per-pixel luminance with ITU-R 601 weights, rounded to nearest integer.
pub fn to_grayscale(img: &RgbImage) -> Result<GrayImage> {
    if img.pixels.is_empty() {
        return Err(Error::InvalidInput("empty image".into()));
    }
    let pixels = img
        .pixels
        .chunks_exact(3)
        .map(|rgb| {
            let v = LUMA_R * rgb[0] as f64 + LUMA_G * rgb[1] as f64 + LUMA_B * rgb[2] as f64;
            v.round().clamp(0.0, 255.0) as u8
        })
        .collect();
    GrayImage::new(img.width, img.height, pixels)
}

/// 256-bin intensity histogram.
pub fn histogram(img: &GrayImage) -> [u64; 256] {
    let mut h = [0u64; 256];
    for &p in &img.pixels {
        h[p as usize] += 1;
    }
    h
}

/// Otsu's threshold: maximizes between-class variance over the 256-bin
/// histogram. Ties resolve to the lowest threshold. Foreground is defined
/// as intensity strictly greater than the returned value.
pub fn otsu_threshold(img: &GrayImage) -> Result<u8> {
    otsu_from_histogram(&histogram(img))
}

pub fn otsu_from_histogram(hist: &[u64; 256]) -> Result<u8> {
    let occupied = hist.iter().filter(|&&c| c > 0).count();
    if occupied < 2 {
        return Err(Error::DegenerateHistogram);
    }
    let total: u64 = hist.iter().sum();
    let total_f = total as f64;
    let mut sum_all = 0.0;
    for (i, &c) in hist.iter().enumerate() {
        sum_all += i as f64 * c as f64;
    }

    let mut w0 = 0u64;
    let mut sum0 = 0.0;
    let mut best_t = 0u8;
    let mut best_var = f64::NEG_INFINITY;
    // classes: background <= t, foreground > t
    for t in 0..255usize {
        w0 += hist[t];
        sum0 += t as f64 * hist[t] as f64;
        let w1 = total - w0;
        if w0 == 0 || w1 == 0 {
            continue;
        }
        let m0 = sum0 / w0 as f64;
        let m1 = (sum_all - sum0) / w1 as f64;
        let var = (w0 as f64 / total_f) * (w1 as f64 / total_f) * (m0 - m1) * (m0 - m1);
        if var > best_var {
            best_var = var;
            best_t = t as u8;
        }
    }
    Ok(best_t)
}

/// Foreground = pixels strictly above the threshold (hand brighter than
/// the dark background).
pub fn binarize(img: &GrayImage, threshold: u8) -> BinaryHandImage {
    BinaryHandImage {
        width: img.width,
        height: img.height,
        mask: img.pixels.iter().map(|&p| p > threshold).collect(),
    }
}

/// Median filter with a square window of the given radius (radius 1 means
/// 3x3). Edges are handled by clamping coordinates.
pub fn median_filter(img: &GrayImage, radius: u32) -> Result<GrayImage> {
    if radius == 0 {
        return Err(Error::InvalidInput("median filter radius must be >= 1".into()));
    }
    let r = radius as i64;
    let win = ((2 * r + 1) * (2 * r + 1)) as usize;
    let mut window = Vec::with_capacity(win);
    Ok(GrayImage::from_fn(img.width, img.height, |x, y| {
        window.clear();
        for dy in -r..=r {
            for dx in -r..=r {
                window.push(img.get_clamped(x as i64 + dx, y as i64 + dy));
            }
        }
        let mut w = window.clone();
        let mid = w.len() / 2;
        *w.select_nth_unstable(mid).1
    }))
}

const NEIGHBORS8: [(i64, i64); 8] = [
    (-1, -1),
    (0, -1),
    (1, -1),
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
];

/// Labels 8-connected foreground components; returns (labels, sizes) where
/// labels are 1-based and 0 is background. Label order follows the raster
/// position of each component's first pixel.
pub fn label_components(mask: &BinaryHandImage) -> (Vec<u32>, Vec<usize>) {
    let w = mask.width as i64;
    let h = mask.height as i64;
    let mut labels = vec![0u32; mask.mask.len()];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    let mut next = 1u32;
    for start in 0..mask.mask.len() {
        if !mask.mask[start] || labels[start] != 0 {
            continue;
        }
        let label = next;
        next += 1;
        let mut size = 0usize;
        labels[start] = label;
        stack.push(start);
        while let Some(idx) = stack.pop() {
            size += 1;
            let x = (idx as i64) % w;
            let y = (idx as i64) / w;
            for (dx, dy) in NEIGHBORS8 {
                let nx = x + dx;
                let ny = y + dy;
                if nx < 0 || ny < 0 || nx >= w || ny >= h {
                    continue;
                }
                let nidx = (ny * w + nx) as usize;
                if mask.mask[nidx] && labels[nidx] == 0 {
                    labels[nidx] = label;
                    stack.push(nidx);
                }
            }
        }
        sizes.push(size);
    }
    (labels, sizes)
}

/// Keeps only the maximum-area 8-connected component. Area ties resolve to
/// the component whose first pixel comes first in raster order.
pub fn largest_component(mask: &BinaryHandImage) -> Result<BinaryHandImage> {
    let (labels, sizes) = label_components(mask);
    if sizes.is_empty() {
        return Err(Error::EmptyMask);
    }
    // max_by_key keeps the later element on ties, so scan manually.
    let mut best = 0usize;
    for (i, &s) in sizes.iter().enumerate() {
        if s > sizes[best] {
            best = i;
        }
    }
    let keep = best as u32 + 1;
    Ok(BinaryHandImage {
        width: mask.width,
        height: mask.height,
        mask: labels.iter().map(|&l| l == keep).collect(),
    })
}

/// Centroid (x̄, ȳ) = (M10/M00, M01/M00) of the foreground.
pub fn centroid(mask: &BinaryHandImage) -> Result<Point> {
    let mut m00 = 0.0;
    let mut m10 = 0.0;
    let mut m01 = 0.0;
    for y in 0..mask.height {
        for x in 0..mask.width {
            if mask.get(x, y) {
                m00 += 1.0;
                m10 += x as f64;
                m01 += y as f64;
            }
        }
    }
    if m00 == 0.0 {
        return Err(Error::EmptyMask);
    }
    Ok(Point::new(m10 / m00, m01 / m00))
}

/// Second-order central moments (mu20, mu02, mu11).
pub fn central_moments(mask: &BinaryHandImage) -> Result<(f64, f64, f64)> {
    let c = centroid(mask)?;
    let mut mu20 = 0.0;
    let mut mu02 = 0.0;
    let mut mu11 = 0.0;
    for y in 0..mask.height {
        for x in 0..mask.width {
            if mask.get(x, y) {
                let dx = x as f64 - c.x;
                let dy = y as f64 - c.y;
                mu20 += dx * dx;
                mu02 += dy * dy;
                mu11 += dx * dy;
            }
        }
    }
    Ok((mu20, mu02, mu11))
}

/// Rotation applied by [`rotate_upright`], reported so callers can map
/// points between the original and the normalized frame.
#[derive(Debug, Clone, Copy)]
pub struct UprightRotation {
    pub center: Point,
    /// Degrees the image content was rotated (screen sense).
    pub degrees: f64,
}

impl UprightRotation {
    /// Maps a point from the pre-rotation image into the upright frame.
    pub fn apply(&self, p: &Point) -> Point {
        p.rotated_about(&self.center, self.degrees)
    }
}

/// Rotations smaller than this skip resampling entirely, keeping
/// already-upright inputs bit-identical.
const UPRIGHT_SKIP_DEG: f64 = 0.25;

/// Aligns the principal axis of the component with the vertical, fingers
/// up, rotating about the centroid with bilinear interpolation and
/// re-thresholding at 0.5.
///
/// The orientation comes from second-order central moments; the fingers-up
/// disambiguation places the longer mass extent above the centroid.
pub fn rotate_upright(img: &BinaryHandImage) -> Result<(BinaryHandImage, UprightRotation)> {
    let c = centroid(img)?;
    let (mu20, mu02, mu11) = central_moments(img)?;
    if img.foreground_count() < 3 || (mu20 + mu02) < 1e-9 {
        return Err(Error::DegenerateShape);
    }
    // Major-axis angle from +x, in (-90, 90].
    let theta = 0.5 * (2.0 * mu11).atan2(mu20 - mu02).to_degrees();
    let mut delta = 90.0 - theta;
    if delta > 90.0 {
        delta -= 180.0;
    }

    let rotated = if delta.abs() < UPRIGHT_SKIP_DEG {
        img.clone()
    } else {
        resample_rotated(img, &c, delta)
    };
    let mut applied = if delta.abs() < UPRIGHT_SKIP_DEG { 0.0 } else { delta };

    // Fingers up: longer extent above the centroid.
    let c2 = centroid(&rotated).unwrap_or(c);
    let mut above: f64 = 0.0;
    let mut below: f64 = 0.0;
    for y in 0..rotated.height {
        for x in 0..rotated.width {
            if rotated.get(x, y) {
                let d = y as f64 - c2.y;
                if d < 0.0 {
                    above = above.max(-d);
                } else {
                    below = below.max(d);
                }
            }
        }
    }
    let final_img = if below > above {
        applied += 180.0;
        resample_rotated(&rotated, &c2, 180.0)
    } else {
        rotated
    };
    if final_img.foreground_count() == 0 {
        return Err(Error::DegenerateShape);
    }
    Ok((
        final_img,
        UprightRotation {
            center: c,
            degrees: applied,
        },
    ))
}

/// Rotates mask content by `degrees` (screen sense) about `center`,
/// sampling bilinearly and re-thresholding at 0.5.
fn resample_rotated(img: &BinaryHandImage, center: &Point, degrees: f64) -> BinaryHandImage {
    let rad = degrees.to_radians();
    let (sin, cos) = rad.sin_cos();
    BinaryHandImage::from_fn(img.width, img.height, |x, y| {
        // inverse map: rotate output coordinate by -degrees
        let dx = x as f64 - center.x;
        let dy = y as f64 - center.y;
        let sx = center.x + cos * dx + sin * dy;
        let sy = center.y - sin * dx + cos * dy;
        bilinear_mask(img, sx, sy) >= 0.5
    })
}

fn bilinear_mask(img: &BinaryHandImage, x: f64, y: f64) -> f64 {
    let x0 = x.floor() as i64;
    let y0 = y.floor() as i64;
    let tx = x - x0 as f64;
    let ty = y - y0 as f64;
    let p = |ix: i64, iy: i64| -> f64 {
        if img.get_i(ix, iy) {
            1.0
        } else {
            0.0
        }
    };
    p(x0, y0) * (1.0 - tx) * (1.0 - ty)
        + p(x0 + 1, y0) * tx * (1.0 - ty)
        + p(x0, y0 + 1) * (1.0 - tx) * ty
        + p(x0 + 1, y0 + 1) * tx * ty
}

/// Removes the wrist: places the reference line UV at h = 20% of the
/// component row extent above the bottom, clears everything below it, and
/// closes the boundary flat along UV. Returns the trimmed silhouette and
/// the reference frame with R at the midpoint of UV.
pub fn trim_wrist(img: &BinaryHandImage) -> Result<(BinaryHandImage, ReferenceFrame)> {
    let (min_row, max_row) = img.row_extent().ok_or(Error::EmptyMask)?;
    let c = centroid(img)?;
    let extent = max_row - min_row + 1;
    let h = (0.20 * extent as f64).round() as u32;
    let uv_row = max_row - h.min(max_row);

    let mut u_x = None;
    let mut v_x = None;
    for x in 0..img.width {
        if img.get(x, uv_row) {
            if u_x.is_none() {
                u_x = Some(x);
            }
            v_x = Some(x);
        }
    }
    let (ux, vx) = match (u_x, v_x) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::WristNotFound),
    };

    let mut out = img.clone();
    for y in (uv_row + 1)..img.height {
        for x in 0..img.width {
            out.set(x, y, false);
        }
    }
    // Fig. 4 smoothing: the cut row is closed flat between U and V.
    for x in ux..=vx {
        out.set(x, uv_row, true);
    }

    let u = Point::new(ux as f64, uv_row as f64);
    let v = Point::new(vx as f64, uv_row as f64);
    Ok((
        out,
        ReferenceFrame {
            centroid: c,
            r: u.midpoint(&v),
            u,
            v,
            h,
        },
    ))
}

/// Sobel gradient magnitude of the mask, thresholded at zero: true where
/// an edge pixel sits on the foreground.
pub fn sobel_edge_mask(img: &BinaryHandImage) -> BinaryHandImage {
    let v = |x: i64, y: i64| -> i32 {
        if img.get_i(x, y) {
            1
        } else {
            0
        }
    };
    BinaryHandImage::from_fn(img.width, img.height, |x, y| {
        if !img.get(x, y) {
            return false;
        }
        let (x, y) = (x as i64, y as i64);
        let gx = -v(x - 1, y - 1) + v(x + 1, y - 1) - 2 * v(x - 1, y) + 2 * v(x + 1, y)
            - v(x - 1, y + 1)
            + v(x + 1, y + 1);
        let gy = -v(x - 1, y - 1) - 2 * v(x, y - 1) - v(x + 1, y - 1)
            + v(x - 1, y + 1)
            + 2 * v(x, y + 1)
            + v(x + 1, y + 1);
        gx != 0 || gy != 0
    })
}

/// Traces the silhouette boundary into one closed 8-connected loop.
///
/// Edge pixels come from the Sobel magnitude of the mask; they are ordered
/// by Moore boundary following starting from the topmost-leftmost edge
/// pixel, clockwise. Two disjoint edge loops (disjoint blobs or interior
/// holes) are rejected as [`Error::ContourBroken`].
pub fn trace_contour(img: &BinaryHandImage) -> Result<HandContour> {
    let edges = sobel_edge_mask(img);
    if edges.foreground_count() == 0 {
        return Err(Error::EmptyMask);
    }
    let (_, sizes) = label_components(&edges);
    if sizes.len() > 1 {
        return Err(Error::ContourBroken);
    }

    // topmost-leftmost edge pixel
    let mut start = None;
    'outer: for y in 0..edges.height {
        for x in 0..edges.width {
            if edges.get(x, y) {
                start = Some(PixelPoint::new(x as i32, y as i32));
                break 'outer;
            }
        }
    }
    let start = start.unwrap();

    let is_edge = |p: PixelPoint| edges.get_i(p.x as i64, p.y as i64);

    // Moore neighborhood in clockwise order starting from west.
    const MOORE: [(i32, i32); 8] = [
        (-1, 0),
        (-1, -1),
        (0, -1),
        (1, -1),
        (1, 0),
        (1, 1),
        (0, 1),
        (-1, 1),
    ];
    let dir_index = |from: PixelPoint, to: PixelPoint| -> usize {
        let d = (to.x - from.x, to.y - from.y);
        MOORE.iter().position(|&m| m == d).unwrap()
    };

    // Backtrack starts west of the start pixel (start is topmost-leftmost,
    // so west is guaranteed background). The trace ends when the
    // (position, backtrack) state recurs, i.e. the cycle has closed.
    let b0 = PixelPoint::new(start.x - 1, start.y);
    let mut current = start;
    let mut backtrack = b0;
    let mut points = Vec::new();
    let limit = 4 * edges.foreground_count() + 8;

    loop {
        let mut dir = dir_index(current, backtrack);
        let mut found = None;
        let mut last_bg = backtrack;
        for _ in 0..8 {
            dir = (dir + 1) % 8;
            let cand = PixelPoint::new(current.x + MOORE[dir].0, current.y + MOORE[dir].1);
            if is_edge(cand) {
                found = Some(cand);
                break;
            }
            last_bg = cand;
        }
        points.push(current);
        let next = match found {
            Some(n) => n,
            // isolated pixel
            None => break,
        };
        current = next;
        backtrack = last_bg;
        if current == start && backtrack == b0 {
            break;
        }
        if points.len() > limit {
            return Err(Error::ContourBroken);
        }
    }

    if points.len() < 3 {
        return Err(Error::ContourBroken);
    }
    // Closed loop: last point must be 8-adjacent to the first.
    if !points[points.len() - 1].adjacent8(&points[0]) {
        return Err(Error::ContourBroken);
    }
    Ok(HandContour { points })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect_mask(w: u32, h: u32, x0: u32, y0: u32, x1: u32, y1: u32) -> BinaryHandImage {
        BinaryHandImage::from_fn(w, h, |x, y| x >= x0 && x <= x1 && y >= y0 && y <= y1)
    }

    #[test]
    fn grayscale_trivial_and_derived() {
        let img = RgbImage::new(3, 1, vec![255, 255, 255, 0, 0, 0, 100, 150, 200]).unwrap();
        let g = to_grayscale(&img).unwrap();
        assert_eq!(g.pixels, vec![255, 0, 141]);
    }

    #[test]
    fn grayscale_rejects_empty() {
        let img = RgbImage {
            width: 0,
            height: 0,
            pixels: vec![],
        };
        assert!(to_grayscale(&img).is_err());
    }

    /// Independent oracle: scan all 256 thresholds, return the argmax set
    /// of between-class variance.
    fn otsu_brute_force(hist: &[u64; 256]) -> Vec<u8> {
        let total: u64 = hist.iter().sum();
        let mut best = f64::NEG_INFINITY;
        let mut ties = Vec::new();
        for t in 0..255usize {
            let w0: u64 = hist[..=t].iter().sum();
            let w1 = total - w0;
            if w0 == 0 || w1 == 0 {
                continue;
            }
            let m0: f64 = hist[..=t]
                .iter()
                .enumerate()
                .map(|(i, &c)| i as f64 * c as f64)
                .sum::<f64>()
                / w0 as f64;
            let m1: f64 = hist[t + 1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| (i + t + 1) as f64 * c as f64)
                .sum::<f64>()
                / w1 as f64;
            let var = w0 as f64 * w1 as f64 * (m0 - m1) * (m0 - m1);
            if var > best + 1e-9 {
                best = var;
                ties = vec![t as u8];
            } else if (var - best).abs() <= 1e-9 {
                ties.push(t as u8);
            }
        }
        ties
    }

    #[test]
    fn otsu_bimodal_separates_modes() {
        let mut pixels = vec![10u8; 8];
        pixels.extend(vec![200u8; 8]);
        let img = GrayImage::new(4, 4, pixels).unwrap();
        let t = otsu_threshold(&img).unwrap();
        assert!((10..200).contains(&t), "t = {t}");
        let mask = binarize(&img, t);
        assert_eq!(mask.foreground_count(), 8);
    }

    #[test]
    fn otsu_constant_image_degenerate() {
        let img = GrayImage::new(4, 4, vec![77; 16]).unwrap();
        assert!(matches!(
            otsu_threshold(&img),
            Err(Error::DegenerateHistogram)
        ));
    }

    #[test]
    fn otsu_two_pixel_extremes() {
        let img = GrayImage::new(2, 1, vec![0, 255]).unwrap();
        let t = otsu_threshold(&img).unwrap();
        assert!(t < 255);
        let mask = binarize(&img, t);
        assert_eq!(mask.foreground_count(), 1);
    }

    #[test]
    fn otsu_matches_brute_force_on_random_histograms() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let mut hist = [0u64; 256];
            let bins = rng.gen_range(2..40);
            for _ in 0..bins {
                let b = rng.gen_range(0..256);
                hist[b] += rng.gen_range(1..500);
            }
            if hist.iter().filter(|&&c| c > 0).count() < 2 {
                continue;
            }
            let got = otsu_from_histogram(&hist).unwrap();
            let ties = otsu_brute_force(&hist);
            assert!(ties.contains(&got), "t={got} not in tie set {ties:?}");
        }
    }

    #[test]
    fn median_constant_image_unchanged() {
        let img = GrayImage::new(5, 5, vec![9; 25]).unwrap();
        assert_eq!(median_filter(&img, 1).unwrap().pixels, img.pixels);
    }

    #[test]
    fn median_removes_salt_pixel() {
        let mut pixels = vec![0u8; 25];
        pixels[12] = 255;
        let img = GrayImage::new(5, 5, pixels).unwrap();
        let out = median_filter(&img, 1).unwrap();
        assert_eq!(out.get(2, 2), 0);
    }

    #[test]
    fn median_matches_brute_force_5x5() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let pixels: Vec<u8> = (0..25).map(|_| rng.gen()).collect();
        let img = GrayImage::new(5, 5, pixels).unwrap();
        let out = median_filter(&img, 1).unwrap();
        for y in 0..5i64 {
            for x in 0..5i64 {
                let mut win = Vec::new();
                for dy in -1..=1 {
                    for dx in -1..=1 {
                        win.push(img.get_clamped(x + dx, y + dy));
                    }
                }
                win.sort_unstable();
                assert_eq!(out.get(x as u32, y as u32), win[4]);
            }
        }
    }

    #[test]
    fn median_rejects_zero_radius() {
        let img = GrayImage::new(2, 2, vec![0, 1, 2, 3]).unwrap();
        assert!(median_filter(&img, 0).is_err());
    }

    #[test]
    fn largest_component_keeps_bigger_blob() {
        let mut mask = rect_mask(30, 30, 2, 2, 11, 11); // 100 px
        for y in 20..25 {
            mask.set(20, y, true); // 5 px line
        }
        let out = largest_component(&mask).unwrap();
        assert_eq!(out.foreground_count(), 100);
        assert!(out.get(5, 5));
        assert!(!out.get(20, 22));
    }

    #[test]
    fn largest_component_single_blob_identity() {
        let mask = rect_mask(10, 10, 1, 1, 4, 4);
        let out = largest_component(&mask).unwrap();
        assert_eq!(out, mask);
    }

    #[test]
    fn largest_component_tie_breaks_by_raster_order() {
        // two 2x2 blobs; the one whose first pixel comes first wins
        let mut mask = BinaryHandImage::from_fn(10, 10, |_, _| false);
        for (x, y) in [(5, 1), (6, 1), (5, 2), (6, 2)] {
            mask.set(x, y, true);
        }
        for (x, y) in [(1, 3), (2, 3), (1, 4), (2, 4)] {
            mask.set(x, y, true);
        }
        // brute-force count confirms the tie
        let (_, sizes) = label_components(&mask);
        assert_eq!(sizes, vec![4, 4]);
        let out = largest_component(&mask).unwrap();
        assert!(out.get(5, 1), "raster-first blob retained");
        assert!(!out.get(1, 3));
    }

    #[test]
    fn largest_component_empty_mask_error() {
        let mask = BinaryHandImage::from_fn(4, 4, |_, _| false);
        assert!(matches!(largest_component(&mask), Err(Error::EmptyMask)));
    }

    #[test]
    fn centroid_single_pixel() {
        let mut mask = BinaryHandImage::from_fn(10, 10, |_, _| false);
        mask.set(3, 7, true);
        assert_eq!(centroid(&mask).unwrap(), Point::new(3.0, 7.0));
    }

    #[test]
    fn centroid_2x2_block() {
        let mask = rect_mask(4, 4, 0, 0, 1, 1);
        assert_eq!(centroid(&mask).unwrap(), Point::new(0.5, 0.5));
    }

    #[test]
    fn centroid_matches_brute_force_blob() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut mask = BinaryHandImage::from_fn(20, 20, |_, _| false);
        let mut sx = 0.0;
        let mut sy = 0.0;
        let mut n = 0.0;
        while n < 20.0 {
            let x = rng.gen_range(0..20u32);
            let y = rng.gen_range(0..20u32);
            if !mask.get(x, y) {
                mask.set(x, y, true);
                sx += x as f64;
                sy += y as f64;
                n += 1.0;
            }
        }
        let c = centroid(&mask).unwrap();
        assert!((c.x - sx / n).abs() < 1e-12);
        assert!((c.y - sy / n).abs() < 1e-12);
    }

    #[test]
    fn centroid_translation_equivariant() {
        let mask = rect_mask(30, 30, 2, 3, 7, 11);
        let shifted = rect_mask(30, 30, 6, 8, 11, 16);
        let c0 = centroid(&mask).unwrap();
        let c1 = centroid(&shifted).unwrap();
        assert_eq!(c1.x, c0.x + 4.0);
        assert_eq!(c1.y, c0.y + 5.0);
    }

    #[test]
    fn trace_contour_square_perimeter() {
        let mask = rect_mask(14, 14, 2, 2, 11, 11);
        let contour = trace_contour(&mask).unwrap();
        assert_eq!(contour.len(), 36); // 10x10 square has 36 boundary pixels
        assert!(contour.points[0].adjacent8(contour.points.last().unwrap()));
        // no duplicate consecutive points
        for i in 0..contour.len() {
            assert_ne!(contour.points[i], contour.points[(i + 1) % contour.len()]);
        }
    }

    #[test]
    fn trace_contour_empty_mask() {
        let mask = BinaryHandImage::from_fn(5, 5, |_, _| false);
        assert!(matches!(trace_contour(&mask), Err(Error::EmptyMask)));
    }

    #[test]
    fn trace_contour_two_blobs_rejected() {
        let mut mask = rect_mask(20, 20, 1, 1, 5, 5);
        for y in 10..15 {
            for x in 10..15 {
                mask.set(x, y, true);
            }
        }
        assert!(matches!(trace_contour(&mask), Err(Error::ContourBroken)));
    }

    #[test]
    fn rotate_upright_vertical_line_unchanged() {
        // mu11 = 0 and the axis is already vertical
        let mask = rect_mask(11, 21, 5, 2, 5, 18);
        let (out, rot) = rotate_upright(&mask).unwrap();
        assert_eq!(out, mask);
        assert_eq!(rot.degrees, 0.0);
    }

    #[test]
    fn rotate_upright_aligns_horizontal_bar() {
        let mask = rect_mask(41, 41, 5, 18, 35, 22);
        let (out, _) = rotate_upright(&mask).unwrap();
        let (mu20, mu02, _) = central_moments(&out).unwrap();
        assert!(mu02 > mu20, "major axis vertical after rotation");
    }

    #[test]
    fn rotate_upright_flips_mass_upward() {
        // T tetromino-ish: heavy long arm below; fingers-up rule must flip it
        let mut mask = BinaryHandImage::from_fn(31, 41, |_, _| false);
        for y in 5..35 {
            for x in 14..17 {
                mask.set(x, y, true);
            }
        }
        for y in 30..35 {
            for x in 8..23 {
                mask.set(x, y, true);
            }
        }
        let (out, _) = rotate_upright(&mask).unwrap();
        let c = centroid(&out).unwrap();
        let (min_row, max_row) = out.row_extent().unwrap();
        let above = c.y - min_row as f64;
        let below = max_row as f64 - c.y;
        assert!(above > below);
    }

    #[test]
    fn trim_wrist_rectangle_20_percent() {
        // 100 rows: UV lands 20 rows above the bottom, bottom 20 removed
        let mask = rect_mask(40, 120, 10, 10, 29, 109);
        let (out, frame) = trim_wrist(&mask).unwrap();
        assert_eq!(frame.h, 20);
        assert_eq!(frame.u.y, 89.0);
        assert_eq!(frame.v.y, 89.0);
        assert_eq!(frame.u.x, 10.0);
        assert_eq!(frame.v.x, 29.0);
        assert_eq!(frame.r, Point::new(19.5, 89.0));
        let (_, max_row) = out.row_extent().unwrap();
        assert_eq!(max_row, 89);
        // every retained pixel is at or above the UV row
        for y in 0..out.height {
            for x in 0..out.width {
                if out.get(x, y) {
                    assert!(y <= 89);
                }
            }
        }
    }

    #[test]
    fn trim_wrist_empty_uv_row() {
        // disconnected mask: UV row falls in the gap between the blobs
        let mut mask = rect_mask(20, 100, 5, 0, 15, 49);
        mask.set(10, 99, true);
        assert!(matches!(trim_wrist(&mask), Err(Error::WristNotFound)));
    }

    #[test]
    fn resized_identity_when_same_size() {
        let img = GrayImage::new(3, 2, vec![1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(img.resized(3, 2).unwrap(), img);
    }
}
