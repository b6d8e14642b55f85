//! Minimal static SVG charts: length box plot, length histogram and
//! per-genre bar chart.

use std::fmt::Write as _;

use lyricav::corpus::TukeyBounds;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 70.0;
const FILL: &str = "#4c72b0";
const FENCE: &str = "#c44e52";

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.2}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Tick positions covering `[lo, hi]` on a 1-2-5 step.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = (hi - lo).max(1.0);
    let raw = span / 6.0;
    let magnitude = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * magnitude)
        .find(|&s| s >= raw)
        .unwrap_or(10.0 * magnitude);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + 1e-9 {
        out.push(t);
        t += step;
    }
    out
}

struct Frame {
    svg: String,
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn new(title: &str, x: (f64, f64), y: (f64, f64)) -> Self {
        let mut svg = String::new();
        writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        )
        .unwrap();
        writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();
        writeln!(
            svg,
            r#"<text x="{}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
            WIDTH / 2.0,
            escape(title)
        )
        .unwrap();
        Self { svg, x, y }
    }

    fn px(&self, v: f64) -> f64 {
        LEFT + (v - self.x.0) / (self.x.1 - self.x.0).max(f64::EPSILON) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, v: f64) -> f64 {
        HEIGHT - BOTTOM - (v - self.y.0) / (self.y.1 - self.y.0).max(f64::EPSILON) * (HEIGHT - TOP - BOTTOM)
    }

    fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, style: &str) {
        writeln!(
            self.svg,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" {style}/>"#,
            fmt(x1),
            fmt(y1),
            fmt(x2),
            fmt(y2)
        )
        .unwrap();
    }

    fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, style: &str) {
        writeln!(
            self.svg,
            r#"<rect x="{}" y="{}" width="{}" height="{}" {style}/>"#,
            fmt(x),
            fmt(y),
            fmt(w.max(0.0)),
            fmt(h.max(0.0))
        )
        .unwrap();
    }

    fn text(&mut self, x: f64, y: f64, anchor: &str, content: &str) {
        writeln!(
            self.svg,
            r#"<text x="{}" y="{}" text-anchor="{anchor}">{}</text>"#,
            fmt(x),
            fmt(y),
            escape(content)
        )
        .unwrap();
    }

    fn x_axis(&mut self, label: &str, numeric: bool) {
        let base = HEIGHT - BOTTOM;
        self.line(LEFT, base, WIDTH - RIGHT, base, r#"stroke="black""#);
        if numeric {
            for t in ticks(self.x.0, self.x.1) {
                let x = self.px(t);
                self.line(x, base, x, base + 5.0, r#"stroke="black""#);
                self.text(x, base + 18.0, "middle", &fmt(t));
            }
        }
        self.text((LEFT + WIDTH - RIGHT) / 2.0, HEIGHT - 20.0, "middle", label);
    }

    fn y_axis(&mut self, label: &str) {
        self.line(LEFT, TOP, LEFT, HEIGHT - BOTTOM, r#"stroke="black""#);
        for t in ticks(self.y.0, self.y.1) {
            let y = self.py(t);
            self.line(LEFT - 5.0, y, LEFT, y, r#"stroke="black""#);
            self.text(LEFT - 8.0, y + 4.0, "end", &fmt(t));
        }
        writeln!(
            self.svg,
            r#"<text x="18" y="{}" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
            fmt(HEIGHT / 2.0),
            fmt(HEIGHT / 2.0),
            escape(label)
        )
        .unwrap();
    }

    fn fences(&mut self, fences: TukeyBounds) {
        for (v, name) in [(fences.lower, "lower"), (fences.upper, "upper")] {
            if v < self.x.0 || v > self.x.1 {
                continue;
            }
            let x = self.px(v);
            self.line(
                x,
                TOP,
                x,
                HEIGHT - BOTTOM,
                &format!(r#"stroke="{FENCE}" stroke-dasharray="4 3""#),
            );
            self.text(x, TOP - 6.0, "middle", &format!("{name} {}", fmt(v)));
        }
    }

    fn finish(mut self) -> String {
        self.svg.push_str("</svg>\n");
        self.svg
    }
}

fn length_range(lengths: &[usize], fences: TukeyBounds) -> (f64, f64) {
    let min = *lengths.iter().min().unwrap_or(&0) as f64;
    let max = *lengths.iter().max().unwrap_or(&1) as f64;
    let lo = min.min(fences.lower).max(0.0);
    let hi = max.max(fences.upper);
    let pad = ((hi - lo) * 0.05).max(1.0);
    ((lo - pad).max(0.0), hi + pad)
}

/// Horizontal box plot with whiskers at the most extreme lengths inside the
/// fences and outliers drawn as points.
pub fn length_box(title: &str, lengths: &[usize], q1: f64, median: f64, q3: f64, fences: TukeyBounds) -> String {
    let mut frame = Frame::new(title, length_range(lengths, fences), (0.0, 1.0));
    frame.x_axis("song length (lines)", true);
    frame.fences(fences);
    let inside: Vec<f64> = lengths
        .iter()
        .filter(|&&l| fences.contains(l))
        .map(|&l| l as f64)
        .collect();
    let whisker_lo = inside.iter().copied().fold(f64::INFINITY, f64::min).min(q1);
    let whisker_hi = inside.iter().copied().fold(f64::NEG_INFINITY, f64::max).max(q3);
    let (top, bottom) = (frame.py(0.7), frame.py(0.3));
    let mid = (top + bottom) / 2.0;
    let style = r#"stroke="black""#;
    let (xl, xh) = (frame.px(whisker_lo), frame.px(whisker_hi));
    let (x1, x3) = (frame.px(q1), frame.px(q3));
    frame.line(xl, mid, x1, mid, style);
    frame.line(x3, mid, xh, mid, style);
    frame.line(xl, top + 10.0, xl, bottom - 10.0, style);
    frame.line(xh, top + 10.0, xh, bottom - 10.0, style);
    frame.rect(
        x1,
        top,
        x3 - x1,
        bottom - top,
        &format!(r#"fill="{FILL}" fill-opacity="0.5" stroke="black""#),
    );
    let xm = frame.px(median);
    frame.line(xm, top, xm, bottom, r#"stroke="black" stroke-width="2""#);
    let mut outliers: Vec<usize> = lengths.iter().copied().filter(|&l| !fences.contains(l)).collect();
    outliers.sort_unstable();
    outliers.dedup();
    for l in outliers {
        let x = frame.px(l as f64);
        writeln!(
            frame.svg,
            r#"<circle cx="{}" cy="{}" r="3" fill="none" stroke="{FENCE}"/>"#,
            fmt(x),
            fmt(mid)
        )
        .unwrap();
    }
    frame.finish()
}

/// Histogram of lengths in `bin_width`-line bins starting at a multiple of
/// the width.
pub fn length_hist(title: &str, lengths: &[usize], bin_width: usize, fences: TukeyBounds) -> String {
    let width = bin_width.max(1);
    let min_bin = lengths.iter().min().copied().unwrap_or(0) / width;
    let max_bin = lengths.iter().max().copied().unwrap_or(0) / width;
    let mut counts = vec![0usize; max_bin - min_bin + 1];
    for &l in lengths {
        counts[l / width - min_bin] += 1;
    }
    let lo = (min_bin * width) as f64;
    let hi = ((max_bin + 1) * width) as f64;
    let (x_lo, x_hi) = (lo.min(fences.lower.max(0.0)), hi.max(fences.upper));
    let peak = counts.iter().copied().max().unwrap_or(1).max(1) as f64;
    let mut frame = Frame::new(title, (x_lo, x_hi), (0.0, peak * 1.1));
    frame.x_axis("song length (lines)", true);
    frame.y_axis("songs");
    for (i, &c) in counts.iter().enumerate() {
        let start = lo + (i * width) as f64;
        let (xa, xb) = (frame.px(start), frame.px(start + width as f64));
        let (yt, yb) = (frame.py(c as f64), frame.py(0.0));
        frame.rect(xa, yt, xb - xa, yb - yt, &format!(r#"fill="{FILL}" stroke="white""#));
    }
    frame.fences(fences);
    frame.finish()
}

/// Vertical bars, one per label, in the given order.
pub fn bar_chart(title: &str, y_label: &str, bars: &[(String, usize)]) -> String {
    let peak = bars.iter().map(|b| b.1).max().unwrap_or(1).max(1) as f64;
    let n = bars.len().max(1) as f64;
    let mut frame = Frame::new(title, (0.0, n), (0.0, peak * 1.1));
    frame.x_axis("genre", false);
    frame.y_axis(y_label);
    for (i, (label, count)) in bars.iter().enumerate() {
        let (xa, xb) = (frame.px(i as f64 + 0.15), frame.px(i as f64 + 0.85));
        let (yt, yb) = (frame.py(*count as f64), frame.py(0.0));
        frame.rect(xa, yt, xb - xa, yb - yt, &format!(r#"fill="{FILL}""#));
        frame.text((xa + xb) / 2.0, yt - 4.0, "middle", &count.to_string());
        frame.text((xa + xb) / 2.0, HEIGHT - BOTTOM + 18.0, "middle", label);
    }
    frame.finish()
}
