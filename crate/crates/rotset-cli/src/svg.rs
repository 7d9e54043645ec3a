//! Static SVG scatter plots over fixed axes [−0.2, 1.2]², the framing every
//! rotation-set figure uses. Presentation only: plots are generated from
//! already-computed data and never feed back into any number.

use std::fmt::Write;

use rotset::Vec2;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 48.0;
const WORLD_MIN: f64 = -0.2;
const WORLD_MAX: f64 = 1.2;

fn px(t: f64) -> f64 {
    MARGIN + (t - WORLD_MIN) / (WORLD_MAX - WORLD_MIN) * (SIZE - 2.0 * MARGIN)
}

fn x(p: Vec2) -> f64 {
    px(p.x)
}

fn y(p: Vec2) -> f64 {
    SIZE - px(p.y) // flip: world y grows upward
}

pub fn scatter(points: &[Vec2], hull: Option<&[Vec2]>, title: &str) -> String {
    let mut s = String::new();
    let _ = write!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"##
    );
    let _ = write!(s, r##"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"##);
    let _ = write!(
        s,
        r##"<clipPath id="plot"><rect x="{m:.1}" y="{m:.1}" width="{w:.1}" height="{w:.1}"/></clipPath>"##,
        m = MARGIN,
        w = SIZE - 2.0 * MARGIN,
    );

    // grid lines and axis labels at 0, 0.5, 1
    for t in [0.0, 0.5, 1.0] {
        let _ = write!(
            s,
            r##"<line x1="{a:.1}" y1="{b:.1}" x2="{a:.1}" y2="{c:.1}" stroke="#ddd"/>"##,
            a = px(t),
            b = MARGIN,
            c = SIZE - MARGIN,
        );
        let _ = write!(
            s,
            r##"<line x1="{b:.1}" y1="{a:.1}" x2="{c:.1}" y2="{a:.1}" stroke="#ddd"/>"##,
            a = SIZE - px(t),
            b = MARGIN,
            c = SIZE - MARGIN,
        );
        let _ = write!(
            s,
            r##"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle" fill="#444">{t}</text>"##,
            px(t),
            SIZE - MARGIN + 16.0,
        );
        let _ = write!(
            s,
            r##"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="end" fill="#444">{t}</text>"##,
            MARGIN - 6.0,
            SIZE - px(t) + 4.0,
        );
    }

    // the unit square, the reference rotation set
    let _ = write!(
        s,
        r##"<rect x="{a:.1}" y="{b:.1}" width="{w:.1}" height="{w:.1}" fill="none" stroke="#999" stroke-dasharray="5 4"/>"##,
        a = px(0.0),
        b = SIZE - px(1.0),
        w = px(1.0) - px(0.0),
    );

    let _ = write!(s, r##"<g clip-path="url(#plot)">"##);
    if let Some(hv) = hull {
        if hv.len() >= 2 {
            let pts: Vec<String> =
                hv.iter().map(|p| format!("{:.2},{:.2}", x(*p), y(*p))).collect();
            let _ = write!(
                s,
                r##"<polygon points="{}" fill="none" stroke="#d95f02" stroke-width="1.5"/>"##,
                pts.join(" ")
            );
        }
    }
    for p in points {
        let _ = write!(
            s,
            r##"<circle cx="{:.2}" cy="{:.2}" r="2" fill="#1f77b4" fill-opacity="0.65"/>"##,
            x(*p),
            y(*p)
        );
    }
    let _ = write!(s, "</g>");

    // frame over the data
    let _ = write!(
        s,
        r##"<rect x="{m:.1}" y="{m:.1}" width="{w:.1}" height="{w:.1}" fill="none" stroke="black"/>"##,
        m = MARGIN,
        w = SIZE - 2.0 * MARGIN,
    );
    let _ = write!(
        s,
        r##"<text x="{:.1}" y="{:.1}" font-size="14" text-anchor="middle" fill="black">{}</text>"##,
        SIZE / 2.0,
        MARGIN - 14.0,
        xml_escape(title),
    );
    s.push_str("</svg>\n");
    s
}

fn xml_escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
