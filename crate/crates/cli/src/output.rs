//! Rendering of step functions and polylines: JSON (round-trips through the
//! library parsers), CSV tables, and self-contained SVG plots with exact
//! rational tick labels.

use clasp4::numeric::{rat_string, rat_to_f64, PLFunction, Rat, StepFunction};

pub fn step_csv(f: &StepFunction) -> String {
    let mut out = String::from("lo,hi,value\n");
    for (lo, hi, v) in f.intervals() {
        out.push_str(&format!("{},{},{v}\n", rat_string(&lo), rat_string(&hi)));
    }
    out
}

pub fn pl_csv(u: &PLFunction) -> String {
    let mut out = String::from("t,value\n");
    for (b, v) in u.breakpoints().iter().zip(u.values()) {
        out.push_str(&format!("{},{}\n", rat_string(b), rat_string(v)));
    }
    out
}

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

const W: f64 = 720.0;
const H: f64 = 420.0;
const ML: f64 = 60.0; // left margin
const MR: f64 = 20.0;
const MT: f64 = 20.0;
const MB: f64 = 50.0;

impl Frame {
    fn new(x_min: f64, x_max: f64, ys: impl Iterator<Item = f64>) -> Frame {
        let (mut y_min, mut y_max) = (0.0f64, 0.0f64);
        for y in ys {
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
        let pad = ((y_max - y_min) * 0.08).max(0.5);
        Frame { x_min, x_max, y_min: y_min - pad, y_max: y_max + pad }
    }

    fn x(&self, v: f64) -> f64 {
        ML + (v - self.x_min) / (self.x_max - self.x_min) * (W - ML - MR)
    }

    fn y(&self, v: f64) -> f64 {
        H - MB - (v - self.y_min) / (self.y_max - self.y_min) * (H - MT - MB)
    }
}

fn svg_header() -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
         viewBox=\"0 0 {W} {H}\" font-family=\"monospace\" font-size=\"11\">\n\
         <rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n"
    )
}

fn axes(frame: &Frame, x_ticks: &[(Rat, String)], y_ticks: &[i64]) -> String {
    let mut s = String::new();
    let x0 = frame.x(frame.x_min);
    let x1 = frame.x(frame.x_max);
    let yb = frame.y(frame.y_min);
    let yt = frame.y(frame.y_max);
    s.push_str(&format!(
        "<line x1=\"{x0}\" y1=\"{yb}\" x2=\"{x1}\" y2=\"{yb}\" stroke=\"black\"/>\n\
         <line x1=\"{x0}\" y1=\"{yb}\" x2=\"{x0}\" y2=\"{yt}\" stroke=\"black\"/>\n"
    ));
    // zero line if visible
    if frame.y_min < 0.0 && frame.y_max > 0.0 {
        let y0 = frame.y(0.0);
        s.push_str(&format!(
            "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"#cccccc\"/>\n"
        ));
    }
    for (t, label) in x_ticks {
        let x = frame.x(rat_to_f64(t));
        s.push_str(&format!(
            "<line x1=\"{x}\" y1=\"{yb}\" x2=\"{x}\" y2=\"{}\" stroke=\"black\"/>\n\
             <text x=\"{x}\" y=\"{}\" text-anchor=\"middle\">{label}</text>\n",
            yb + 5.0,
            yb + 18.0,
        ));
    }
    for v in y_ticks {
        let y = frame.y(*v as f64);
        s.push_str(&format!(
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{x0}\" y2=\"{y}\" stroke=\"black\"/>\n\
             <text x=\"{}\" y=\"{}\" text-anchor=\"end\">{v}</text>\n",
            x0 - 5.0,
            x0 - 8.0,
            y + 4.0,
        ));
    }
    s
}

/// Tick positions: every breakpoint when there are few, otherwise the domain
/// endpoints and quartiles (still labelled as exact rationals).
fn x_ticks_for(breakpoints: &[Rat], lo: Rat, hi: Rat) -> Vec<(Rat, String)> {
    let mut ticks: Vec<Rat> = vec![lo.clone()];
    if breakpoints.len() <= 14 {
        ticks.extend(breakpoints.iter().cloned());
    } else {
        let span = &hi - &lo;
        for k in 1..4 {
            ticks.push(&lo + &span * Rat::new(k.into(), 4.into()));
        }
    }
    ticks.push(hi);
    ticks.sort();
    ticks.dedup();
    ticks.into_iter().map(|t| { let s = rat_string(&t); (t, s) }).collect()
}

fn y_ticks_for(min: f64, max: f64) -> Vec<i64> {
    let lo = min.floor() as i64;
    let hi = max.ceil() as i64;
    let step = (((hi - lo) as usize / 10) + 1) as i64;
    (lo..=hi).step_by(step as usize).collect()
}

/// Self-contained SVG plot of a signature step function on (0,1).
pub fn step_svg(f: &StepFunction) -> String {
    let frame = Frame::new(0.0, 1.0, f.values().iter().map(|&v| v as f64));
    let mut s = svg_header();
    let ticks = x_ticks_for(f.breakpoints(), Rat::new(0.into(), 1.into()), Rat::new(1.into(), 1.into()));
    s.push_str(&axes(&frame, &ticks, &y_ticks_for(frame.y_min, frame.y_max)));
    for (lo, hi, v) in f.intervals() {
        let y = frame.y(v as f64);
        s.push_str(&format!(
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"#1f4e9c\" stroke-width=\"2\"/>\n",
            frame.x(rat_to_f64(&lo)),
            frame.x(rat_to_f64(&hi)),
        ));
    }
    s.push_str("</svg>\n");
    s
}

/// Self-contained SVG plot of a polyline on [0,2].
pub fn pl_svg(u: &PLFunction) -> String {
    let frame = Frame::new(0.0, 2.0, u.values().iter().map(rat_to_f64));
    let mut s = svg_header();
    let ticks = x_ticks_for(u.breakpoints(), Rat::new(0.into(), 1.into()), Rat::new(2.into(), 1.into()));
    s.push_str(&axes(&frame, &ticks, &y_ticks_for(frame.y_min, frame.y_max)));
    let points: Vec<String> = u
        .breakpoints()
        .iter()
        .zip(u.values())
        .map(|(b, v)| format!("{},{}", frame.x(rat_to_f64(b)), frame.y(rat_to_f64(v))))
        .collect();
    s.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\"/>\n",
        points.join(" ")
    ));
    s.push_str("</svg>\n");
    s
}
