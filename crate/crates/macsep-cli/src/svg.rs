//! Minimal SVG construction: fixed-precision coordinates so repeated runs
//! produce identical bytes.

use std::fmt::Write as _;

/// Accumulates SVG elements on a fixed-size canvas.
pub struct Canvas {
    width: f64,
    height: f64,
    body: String,
}

fn c2(v: f64) -> String {
    format!("{v:.2}")
}

impl Canvas {
    pub fn new(width: f64, height: f64) -> Self {
        let mut body = String::new();
        let _ = writeln!(
            body,
            "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>",
            c2(width),
            c2(height)
        );
        Self { width, height, body }
    }

    pub fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, width: f64) {
        let _ = writeln!(
            self.body,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\" stroke-width=\"{}\"/>",
            c2(x1), c2(y1), c2(x2), c2(y2), c2(width)
        );
    }

    pub fn dashed_line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, width: f64) {
        let _ = writeln!(
            self.body,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\" stroke-width=\"{}\" stroke-dasharray=\"6 4\"/>",
            c2(x1), c2(y1), c2(x2), c2(y2), c2(width)
        );
    }

    pub fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str, width: f64) {
        if pts.len() < 2 {
            return;
        }
        let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{},{}", c2(*x), c2(*y))).collect();
        let _ = writeln!(
            self.body,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{}\"/>",
            coords.join(" "),
            c2(width)
        );
    }

    pub fn circle(&mut self, cx: f64, cy: f64, r: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\"/>",
            c2(cx),
            c2(cy),
            c2(r)
        );
    }

    /// A "+" marker with the given arm length.
    pub fn plus(&mut self, cx: f64, cy: f64, arm: f64, stroke: &str) {
        self.line(cx - arm, cy, cx + arm, cy, stroke, 1.4);
        self.line(cx, cy - arm, cx, cy + arm, stroke, 1.4);
    }

    /// Text anchored at its start; callers must not pass markup characters.
    pub fn text(&mut self, x: f64, y: f64, size: f64, fill: &str, content: &str) {
        let _ = writeln!(
            self.body,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"{}\" fill=\"{fill}\">{content}</text>",
            c2(x),
            c2(y),
            c2(size)
        );
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n{}</svg>\n",
            c2(self.width),
            c2(self.height),
            c2(self.width),
            c2(self.height),
            self.body
        )
    }
}

/// Affine map from data coordinates to canvas pixels, y inverted.
pub struct Frame {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub left: f64,
    pub right: f64,
    pub top: f64,
    pub bottom: f64,
}

impl Frame {
    pub fn px(&self, x: f64) -> f64 {
        self.left + (x - self.x0) / (self.x1 - self.x0) * (self.right - self.left)
    }

    pub fn py(&self, y: f64) -> f64 {
        self.bottom - (y - self.y0) / (self.y1 - self.y0) * (self.bottom - self.top)
    }

    /// Border, four ticks per axis with numeric labels, and axis titles.
    pub fn draw_axes(&self, canvas: &mut Canvas, x_title: &str, y_title: &str) {
        canvas.line(self.left, self.bottom, self.right, self.bottom, "black", 1.0);
        canvas.line(self.left, self.bottom, self.left, self.top, "black", 1.0);
        canvas.line(self.left, self.top, self.right, self.top, "#cccccc", 0.5);
        canvas.line(self.right, self.bottom, self.right, self.top, "#cccccc", 0.5);
        for i in 0..=4 {
            let t = i as f64 / 4.0;
            let x = self.x0 + t * (self.x1 - self.x0);
            let pxx = self.px(x);
            canvas.line(pxx, self.bottom, pxx, self.bottom + 4.0, "black", 1.0);
            canvas.text(pxx - 12.0, self.bottom + 16.0, 10.0, "black", &format!("{x:.2}"));
            let y = self.y0 + t * (self.y1 - self.y0);
            let pyy = self.py(y);
            canvas.line(self.left - 4.0, pyy, self.left, pyy, "black", 1.0);
            canvas.text(self.left - 34.0, pyy + 3.0, 10.0, "black", &format!("{y:.2}"));
        }
        canvas.text(
            0.5 * (self.left + self.right) - 20.0,
            self.bottom + 32.0,
            11.0,
            "black",
            x_title,
        );
        canvas.text(8.0, self.top - 8.0, 11.0, "black", y_title);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canvas_produces_wellformed_document() {
        let mut c = Canvas::new(100.0, 50.0);
        c.line(0.0, 0.0, 10.0, 10.0, "black", 1.0);
        c.polyline(&[(0.0, 0.0), (5.0, 5.0), (10.0, 0.0)], "red", 1.0);
        c.circle(3.0, 3.0, 2.0, "blue");
        c.plus(8.0, 8.0, 2.0, "green");
        c.text(1.0, 1.0, 10.0, "black", "label");
        let doc = c.finish();
        assert!(doc.starts_with("<svg "));
        assert!(doc.ends_with("</svg>\n"));
        assert!(doc.contains("<polyline"));
        assert!(doc.contains("viewBox=\"0 0 100.00 50.00\""));
    }

    #[test]
    fn frame_maps_corners_and_inverts_y() {
        let f = Frame {
            x0: 0.0,
            x1: 2.0,
            y0: 0.0,
            y1: 4.0,
            left: 50.0,
            right: 250.0,
            top: 20.0,
            bottom: 180.0,
        };
        assert_eq!(f.px(0.0), 50.0);
        assert_eq!(f.px(2.0), 250.0);
        assert_eq!(f.py(0.0), 180.0);
        assert_eq!(f.py(4.0), 20.0);
        assert_eq!(f.py(2.0), 100.0);
    }

    #[test]
    fn degenerate_polyline_is_dropped() {
        let mut c = Canvas::new(10.0, 10.0);
        c.polyline(&[(1.0, 1.0)], "red", 1.0);
        assert!(!c.finish().contains("polyline"));
    }
}
