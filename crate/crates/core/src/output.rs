//! CSV and SVG writers for fronts.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;

use crate::fronts::Front;
use crate::spheres::Sphere;

#[derive(Debug, Error)]
pub enum OutputError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("SVG output needs planar geometry, got dimension {0}")]
    Dimension(usize),
}

const AXES: [&str; 3] = ["x", "y", "z"];

/// `front_index,sample_index,x,y[,z],nx,ny[,nz]`
pub fn csv_header(dim: usize) -> String {
    let coords = AXES[..dim].iter().map(|a| a.to_string());
    let normals = AXES[..dim].iter().map(|a| format!("n{a}"));
    ["front_index".to_string(), "sample_index".to_string()]
        .into_iter()
        .chain(coords)
        .chain(normals)
        .collect::<Vec<_>>()
        .join(",")
}

// At least 12 significant digits: fixed 12 decimals from 0.1 up, scientific
// below. Negative zero prints as zero.
fn decimal(x: f64) -> String {
    if x == 0.0 {
        return format!("{:.12}", 0.0);
    }
    if x.abs() < 0.1 {
        return format!("{x:.11e}");
    }
    format!("{x:.12}")
}

/// Writes the header and one row per sample, in sample order.
pub fn write_fronts_csv<'a, const N: usize, W: Write>(
    mut w: W,
    fronts: impl IntoIterator<Item = (usize, &'a Front<N>)>,
) -> io::Result<()> {
    writeln!(w, "{}", csv_header(N))?;
    for (front_index, front) in fronts {
        for (i, sample) in front.samples().iter().enumerate() {
            let values = sample.base.0.iter().chain(sample.normal()).map(|&v| decimal(v));
            let row: Vec<String> = [front_index.to_string(), i.to_string()]
                .into_iter()
                .chain(values)
                .collect();
            writeln!(w, "{}", row.join(","))?;
        }
    }
    Ok(())
}

/// Writes a single front with index `front_index` to `path`.
pub fn write_csv<const N: usize>(front: &Front<N>, front_index: usize, path: &Path) -> io::Result<()> {
    let mut file = io::BufWriter::new(std::fs::File::create(path)?);
    write_fronts_csv(&mut file, [(front_index, front)])?;
    file.flush()
}

/// Renders fronts as paths and wavelets as circles. The first front is
/// drawn as the source layer, the rest as propagated fronts.
pub fn render_svg<const N: usize>(fronts: &[Front<N>], wavelets: &[Sphere<N>]) -> Result<String, OutputError> {
    if N != 2 {
        return Err(OutputError::Dimension(N));
    }
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    let mut grow = |x: f64, y: f64, r: f64| {
        lo = [lo[0].min(x - r), lo[1].min(y - r)];
        hi = [hi[0].max(x + r), hi[1].max(y + r)];
    };
    for p in fronts.iter().flat_map(|f| f.points()) {
        grow(p.0[0], p.0[1], 0.0);
    }
    for s in wavelets {
        grow(s.center.0[0], s.center.0[1], s.radius.get());
    }
    if lo[0] > hi[0] {
        (lo, hi) = ([-1.0, -1.0], [1.0, 1.0]);
    }
    let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let margin = [0.05 * (hi[0] - lo[0]).max(extent * 1e-3), 0.05 * (hi[1] - lo[1]).max(extent * 1e-3)];
    // SVG's y axis points down; geometry is flipped on output.
    let view = [
        lo[0] - margin[0],
        -hi[1] - margin[1],
        hi[0] - lo[0] + 2.0 * margin[0],
        hi[1] - lo[1] + 2.0 * margin[1],
    ];

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        view[0], view[1], view[2], view[3]
    );
    svg.push_str(concat!(
        "<style>\n",
        "  path, circle { fill: none; vector-effect: non-scaling-stroke; }\n",
        "  .source { stroke: #1f3a93; stroke-width: 2; }\n",
        "  .propagated { stroke: #c0392b; stroke-width: 2; }\n",
        "  .wavelet { stroke: #7f8c8d; stroke-width: 1; stroke-dasharray: 4 3; }\n",
        "</style>\n"
    ));
    for (k, front) in fronts.iter().enumerate() {
        let class = if k == 0 { "source" } else { "propagated" };
        let mut d = String::new();
        for (i, p) in front.points().enumerate() {
            let _ = write!(d, "{}{:.6} {:.6}", if i == 0 { "M" } else { " L" }, p.0[0], -p.0[1]);
        }
        if front.is_closed() && !front.is_empty() {
            d.push_str(" Z");
        }
        let _ = writeln!(svg, r#"<path class="front {class}" data-front="{k}" d="{d}"/>"#);
    }
    for s in wavelets {
        let _ = writeln!(
            svg,
            r#"<circle class="wavelet" cx="{:.6}" cy="{:.6}" r="{:.6}"/>"#,
            s.center.0[0],
            -s.center.0[1],
            s.radius.get()
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn write_svg<const N: usize>(
    fronts: &[Front<N>],
    wavelets: &[Sphere<N>],
    path: &Path,
) -> Result<(), OutputError> {
    let svg = render_svg(fronts, wavelets)?;
    std::fs::write(path, svg)?;
    Ok(())
}
