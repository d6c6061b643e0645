//! Minimal static SVG charts.
//!
//! Hand-rolled string assembly: fixed 800x600 viewport, linear axes with
//! ticks, polyline series, shaded bands, point markers, and text labels.
//! Rendering is a pure function of the inputs, so chart artifacts are
//! byte-reproducible. Layout is intentionally simple; the series content
//! is the contract, not the styling.

use std::fmt::Write as _;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;

const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 60.0;
const TICKS: usize = 5;

/// Builder for one chart; `render` produces the document.
#[derive(Debug, Clone)]
pub struct Chart {
    title: String,
    x_label: String,
    y_label: String,
    x_range: (f64, f64),
    y_range: (f64, f64),
    elements: Vec<String>,
}

fn fmt_coord(v: f64) -> String {
    format!("{:.2}", v)
}

fn fmt_tick(v: f64) -> String {
    let rounded = (v * 1000.0).round() / 1000.0;
    format!("{}", rounded)
}

impl Chart {
    /// Ranges are padded when degenerate so the mapping stays finite.
    pub fn new(
        title: &str,
        x_label: &str,
        y_label: &str,
        x_range: (f64, f64),
        y_range: (f64, f64),
    ) -> Self {
        let pad = |(lo, hi): (f64, f64)| {
            if hi > lo {
                (lo, hi)
            } else {
                (lo - 0.5, lo + 0.5)
            }
        };
        Self {
            title: title.to_string(),
            x_label: x_label.to_string(),
            y_label: y_label.to_string(),
            x_range: pad(x_range),
            y_range: pad(y_range),
            elements: Vec::new(),
        }
    }

    fn x_px(&self, x: f64) -> f64 {
        let (lo, hi) = self.x_range;
        MARGIN_LEFT + (x - lo) / (hi - lo) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn y_px(&self, y: f64) -> f64 {
        let (lo, hi) = self.y_range;
        HEIGHT - MARGIN_BOTTOM - (y - lo) / (hi - lo) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }

    /// Adds a stroked polyline through `(xs, ys)`; lengths must match.
    pub fn polyline(&mut self, xs: &[f64], ys: &[f64], color: &str, width: f64) {
        debug_assert_eq!(xs.len(), ys.len());
        if xs.len() < 2 {
            return;
        }
        let points: Vec<String> = xs
            .iter()
            .zip(ys)
            .map(|(&x, &y)| format!("{},{}", fmt_coord(self.x_px(x)), fmt_coord(self.y_px(y))))
            .collect();
        self.elements.push(format!(
            r#"<polyline fill="none" stroke="{}" stroke-width="{}" points="{}"/>"#,
            color,
            width,
            points.join(" ")
        ));
    }

    /// Adds a filled band between `lo` and `hi` along `xs`.
    pub fn band(&mut self, xs: &[f64], lo: &[f64], hi: &[f64], color: &str, opacity: f64) {
        debug_assert_eq!(xs.len(), lo.len());
        debug_assert_eq!(xs.len(), hi.len());
        if xs.len() < 2 {
            return;
        }
        let mut points = Vec::with_capacity(2 * xs.len());
        for (&x, &y) in xs.iter().zip(hi) {
            points.push(format!(
                "{},{}",
                fmt_coord(self.x_px(x)),
                fmt_coord(self.y_px(y))
            ));
        }
        for (&x, &y) in xs.iter().zip(lo).rev() {
            points.push(format!(
                "{},{}",
                fmt_coord(self.x_px(x)),
                fmt_coord(self.y_px(y))
            ));
        }
        self.elements.push(format!(
            r#"<polygon fill="{}" fill-opacity="{}" stroke="none" points="{}"/>"#,
            color,
            opacity,
            points.join(" ")
        ));
    }

    /// Adds a filled circle marker at a data point.
    pub fn point(&mut self, x: f64, y: f64, radius: f64, color: &str) {
        self.elements.push(format!(
            r#"<circle cx="{}" cy="{}" r="{}" fill="{}"/>"#,
            fmt_coord(self.x_px(x)),
            fmt_coord(self.y_px(y)),
            radius,
            color
        ));
    }

    /// Adds a text label anchored at a data point.
    pub fn label(&mut self, x: f64, y: f64, text: &str, color: &str) {
        self.elements.push(format!(
            r#"<text x="{}" y="{}" fill="{}" font-family="sans-serif" font-size="14">{}</text>"#,
            fmt_coord(self.x_px(x)),
            fmt_coord(self.y_px(y)),
            color,
            text
        ));
    }

    /// Renders the complete SVG document.
    pub fn render(&self) -> String {
        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">"#
        );
        let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

        let (x0, x1) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
        let (y0, y1) = (HEIGHT - MARGIN_BOTTOM, MARGIN_TOP);
        let _ = writeln!(
            svg,
            r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#
        );

        for i in 0..=TICKS {
            let frac = i as f64 / TICKS as f64;
            let xv = self.x_range.0 + frac * (self.x_range.1 - self.x_range.0);
            let xp = fmt_coord(self.x_px(xv));
            let _ = writeln!(
                svg,
                r#"<line x1="{xp}" y1="{y0}" x2="{xp}" y2="{}" stroke="black"/>"#,
                y0 + 5.0
            );
            let _ = writeln!(
                svg,
                r#"<text x="{xp}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">{}</text>"#,
                y0 + 20.0,
                fmt_tick(xv)
            );

            let yv = self.y_range.0 + frac * (self.y_range.1 - self.y_range.0);
            let yp = fmt_coord(self.y_px(yv));
            let _ = writeln!(
                svg,
                r#"<line x1="{}" y1="{yp}" x2="{x0}" y2="{yp}" stroke="black"/>"#,
                x0 - 5.0
            );
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{yp}" text-anchor="end" dominant-baseline="middle" font-family="sans-serif" font-size="12">{}</text>"#,
                x0 - 8.0,
                fmt_tick(yv)
            );
        }

        let _ = writeln!(
            svg,
            r#"<text x="{}" y="28" text-anchor="middle" font-family="sans-serif" font-size="17">{}</text>"#,
            WIDTH / 2.0,
            self.title
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
            WIDTH / 2.0,
            HEIGHT - 15.0,
            self.x_label
        );
        let _ = writeln!(
            svg,
            r#"<text x="22" y="{}" text-anchor="middle" font-family="sans-serif" font-size="14" transform="rotate(-90 22 {})">{}</text>"#,
            HEIGHT / 2.0,
            HEIGHT / 2.0,
            self.y_label
        );

        for element in &self.elements {
            svg.push_str(element);
            svg.push('\n');
        }
        svg.push_str("</svg>\n");
        svg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_chart() -> Chart {
        let mut chart = Chart::new("Test", "time", "entropy", (0.0, 100.0), (0.0, 2.0));
        let xs: Vec<f64> = (0..=10).map(|i| i as f64 * 10.0).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x / 50.0).collect();
        let lo: Vec<f64> = ys.iter().map(|y| y - 0.1).collect();
        let hi: Vec<f64> = ys.iter().map(|y| y + 0.1).collect();
        chart.band(&xs, &lo, &hi, "#c0392b", 0.2);
        chart.polyline(&xs, &ys, "#c0392b", 2.0);
        chart.point(50.0, 1.0, 4.0, "black");
        chart.label(50.0, 1.5, "marker", "black");
        chart
    }

    #[test]
    fn render_is_wellformed_and_complete() {
        let svg = sample_chart().render();
        assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("viewBox=\"0 0 800 600\""));
        assert!(svg.contains("<polyline"));
        assert!(svg.contains("<polygon"));
        assert!(svg.contains("<circle"));
        assert!(svg.contains(">marker</text>"));
        assert!(svg.contains(">Test</text>"));
        // 6 ticks per axis.
        assert_eq!(svg.matches("text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\"").count(), 6);
    }

    #[test]
    fn render_is_deterministic() {
        assert_eq!(sample_chart().render(), sample_chart().render());
    }

    #[test]
    fn mapping_is_affine_and_oriented() {
        let chart = Chart::new("t", "x", "y", (0.0, 10.0), (0.0, 1.0));
        assert!(chart.x_px(0.0) < chart.x_px(10.0));
        // SVG y grows downward; data y grows upward.
        assert!(chart.y_px(1.0) < chart.y_px(0.0));
        let mid = chart.x_px(5.0);
        assert!((mid - (chart.x_px(0.0) + chart.x_px(10.0)) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_range_is_padded() {
        let chart = Chart::new("t", "x", "y", (2.0, 2.0), (0.0, 1.0));
        assert!(chart.x_px(2.0).is_finite());
    }
}
