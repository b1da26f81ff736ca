use super::raster::RasterImage;
use crate::error::{Error, Result};
use crate::graph::Drawing;

/// Inked pixels of the bundled raster over inked pixels of the original.
/// Lower means less ink; values above 1 are possible.
pub fn ink_reduction(original: &RasterImage, bundled: &RasterImage) -> Result<f64> {
    if (original.width, original.height) != (bundled.width, bundled.height) {
        return Err(Error::Mismatch(format!(
            "raster sizes {}x{} and {}x{}",
            original.width, original.height, bundled.width, bundled.height
        )));
    }
    if original.threshold != bundled.threshold {
        return Err(Error::Mismatch("binarization thresholds differ".into()));
    }
    let base = original.lit_pixels();
    if base == 0 {
        return Err(Error::EmptyRaster);
    }
    Ok(bundled.lit_pixels() as f64 / base as f64)
}

/// Mean ratio of drawn length to endpoint distance, and that mean minus one.
pub fn distortion(drawing: &Drawing) -> Result<(f64, f64)> {
    if drawing.edge_count() == 0 {
        return Err(Error::Degenerate("drawing has no edges".into()));
    }
    let mut sum = 0.0;
    for i in 0..drawing.edge_count() {
        let chord = drawing.chord_length(i);
        if chord == 0.0 {
            let (u, v) = drawing.edges[i];
            return Err(Error::Degenerate(format!("edge ({u}, {v}) has coincident endpoints")));
        }
        // A polyline can never be shorter than its chord.
        sum += (drawing.arc_length(i) / chord).max(1.0);
    }
    let raw = sum / drawing.edge_count() as f64;
    Ok((raw, raw - 1.0))
}
