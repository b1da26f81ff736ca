//! Anti-aliased polyline rasterizer feeding the ink metric.
//!
//! Pixel coverage is `clamp(w/2 + 1/2 − d, 0, 1)` where `d` is the distance
//! from the pixel centre to the nearest segment; overlapping strokes take the
//! maximum. The frame is fixed by the vertex positions, so an original and a
//! bundled drawing of the same graph rasterize onto the same grid.

use crate::error::{Error, Result};
use crate::geometry::{bounds, point_segment_distance, Point};
use crate::graph::Drawing;
use std::io::BufWriter;
use std::path::Path;

#[derive(Clone, Debug, PartialEq)]
pub struct RasterImage {
    pub width: usize,
    pub height: usize,
    /// Row-major ink coverage, 0 = background, 1 = full ink.
    pub grey: Vec<f64>,
    /// A pixel counts as inked when its value exceeds this.
    pub threshold: f64,
}

impl RasterImage {
    pub fn lit_pixels(&self) -> usize {
        self.grey.iter().filter(|&&g| g > self.threshold).count()
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.grey[y * self.width + x]
    }

    /// Greyscale PNG, ink drawn dark on white.
    pub fn save_png(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        let mut enc = png::Encoder::new(BufWriter::new(file), self.width as u32, self.height as u32);
        enc.set_color(png::ColorType::Grayscale);
        enc.set_depth(png::BitDepth::Eight);
        let data: Vec<u8> = self
            .grey
            .iter()
            .map(|g| (255.0 * (1.0 - g.clamp(0.0, 1.0))).round() as u8)
            .collect();
        let mut writer = enc
            .write_header()
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
        writer
            .write_image_data(&data)
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
        Ok(())
    }
}

/// Maps drawing coordinates to pixel coordinates (pixel centres at `.5`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    origin: Point,
    scale: f64,
    margin: f64,
    pub width: usize,
    pub height: usize,
}

impl Frame {
    pub fn for_drawing(drawing: &Drawing, width: usize, line_width: f64) -> Result<Frame> {
        if width < 16 {
            return Err(Error::InvalidParam(format!("raster width {width} is below 16")));
        }
        if !(line_width > 0.0 && line_width.is_finite()) {
            return Err(Error::InvalidParam("line width must be positive".into()));
        }
        let (lo, hi) = bounds(&drawing.positions)
            .ok_or_else(|| Error::Degenerate("drawing has no vertices".into()))?;
        let (w, h) = (hi.x - lo.x, hi.y - lo.y);
        if w <= 0.0 && h <= 0.0 {
            return Err(Error::Degenerate("all vertices coincide".into()));
        }
        let margin = line_width.ceil() + 1.0;
        let span = width as f64 - 2.0 * margin - 1.0;
        let scale = if w > 0.0 { span / w } else { span / h };
        let height = (h * scale).ceil() as usize + 2 * margin as usize + 1;
        Ok(Frame {
            origin: lo,
            scale,
            margin,
            width,
            height,
        })
    }

    pub fn to_pixel(&self, p: Point) -> Point {
        Point::new(
            self.margin + 0.5 + (p.x - self.origin.x) * self.scale,
            self.margin + 0.5 + (p.y - self.origin.y) * self.scale,
        )
    }
}

pub fn rasterize(drawing: &Drawing, width: usize, line_width: f64) -> Result<RasterImage> {
    let frame = Frame::for_drawing(drawing, width, line_width)?;
    Ok(rasterize_in_frame(drawing, &frame, line_width, 0.5))
}

pub fn rasterize_in_frame(drawing: &Drawing, frame: &Frame, line_width: f64, threshold: f64) -> RasterImage {
    let (w, h) = (frame.width, frame.height);
    let mut grey = vec![0.0; w * h];
    let reach = line_width / 2.0 + 0.5;
    for line in &drawing.polylines {
        let px: Vec<Point> = line.iter().map(|&p| frame.to_pixel(p)).collect();
        for seg in px.windows(2) {
            let (a, b) = (seg[0], seg[1]);
            let x0 = (a.x.min(b.x) - reach).floor().max(0.0) as usize;
            let x1 = ((a.x.max(b.x) + reach).ceil().max(0.0) as usize).min(w);
            let y0 = (a.y.min(b.y) - reach).floor().max(0.0) as usize;
            let y1 = ((a.y.max(b.y) + reach).ceil().max(0.0) as usize).min(h);
            for y in y0..y1 {
                for x in x0..x1 {
                    let c = Point::new(x as f64 + 0.5, y as f64 + 0.5);
                    let cov = (reach - point_segment_distance(c, a, b)).clamp(0.0, 1.0);
                    let slot = &mut grey[y * w + x];
                    if cov > *slot {
                        *slot = cov;
                    }
                }
            }
        }
    }
    RasterImage {
        width: w,
        height: h,
        grey,
        threshold,
    }
}
