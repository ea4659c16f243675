//! Wavefront OBJ export: surface grids as quad faces, striction curves
//! as polyline (`l`) elements, with a header naming the metric
//! signature of the coordinates.

use drall::{Mesh, Vec3};

use crate::report::fmt_f;

/// One surface to be written into an OBJ file.
pub struct ObjSurface<'a> {
    /// Object name (`o` line).
    pub name: &'a str,
    /// Sampled grid.
    pub mesh: &'a Mesh<f64>,
    /// Striction polyline points, if the surface has a striction curve.
    pub striction: Option<&'a [Vec3<f64>]>,
    /// Whether the polyline closes onto its first point.
    pub closed: bool,
}

/// Renders the surfaces into one OBJ document with shared vertex
/// numbering.
pub fn render_obj(surfaces: &[ObjSurface<'_>]) -> String {
    let mut out = String::new();
    out.push_str("# ruled surface mesh, Minkowski 3-space, metric signature (-,+,+)\n");
    out.push_str("# vertex order: x1 x2 x3\n");
    let mut next_index = 1usize; // OBJ indices are 1-based.
    for surf in surfaces {
        out.push_str(&format!("o {}\n", surf.name));
        let rows = surf.mesh.s_values.len();
        let cols = surf.mesh.v_samples;
        for i in 0..rows {
            for j in 0..cols {
                let p = surf.mesh.at(i, j);
                out.push_str(&format!(
                    "v {} {} {}\n",
                    fmt_f(p[0]),
                    fmt_f(p[1]),
                    fmt_f(p[2])
                ));
            }
        }
        let grid = next_index;
        for i in 0..rows.saturating_sub(1) {
            for j in 0..cols - 1 {
                let a = grid + i * cols + j;
                let b = grid + (i + 1) * cols + j;
                out.push_str(&format!("f {} {} {} {}\n", a, b, b + 1, a + 1));
            }
        }
        next_index += rows * cols;
        if let Some(points) = surf.striction {
            let start = next_index;
            for p in points {
                out.push_str(&format!(
                    "v {} {} {}\n",
                    fmt_f(p[0]),
                    fmt_f(p[1]),
                    fmt_f(p[2])
                ));
            }
            out.push('l');
            for k in 0..points.len() {
                out.push_str(&format!(" {}", start + k));
            }
            if surf.closed && !points.is_empty() {
                out.push_str(&format!(" {start}"));
            }
            out.push('\n');
            next_index += points.len();
        }
    }
    out
}

/// Reads back every `v` line of an OBJ document (for round-trip
/// checks).
#[cfg(test)]
pub fn parse_obj_vertices(text: &str) -> Vec<[f64; 3]> {
    text.lines()
        .filter_map(|line| {
            let rest = line.strip_prefix("v ")?;
            let mut it = rest.split_whitespace();
            let x = it.next()?.parse().ok()?;
            let y = it.next()?.parse().ok()?;
            let z = it.next()?.parse().ok()?;
            Some([x, y, z])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use drall::catalog::circular_skew;

    #[test]
    fn mesh_round_trips_through_obj_text() {
        let surf = circular_skew(0.5, 1.0).unwrap();
        let mesh = surf.mesh(16, (-1.0, 1.0), 5).unwrap();
        let striction: Vec<Vec3<f64>> = surf
            .probes(16)
            .into_iter()
            .map(|s| surf.striction_point(s).unwrap())
            .collect();
        let text = render_obj(&[ObjSurface {
            name: "skew",
            mesh: &mesh,
            striction: Some(&striction),
            closed: true,
        }]);
        let verts = parse_obj_vertices(&text);
        assert_eq!(verts.len(), 16 * 5 + 16);
        for (k, v) in verts.iter().take(16 * 5).enumerate() {
            let p = mesh.points[k];
            for i in 0..3 {
                // Formatting precision: re-parsing the printed value
                // must agree to the printed 15 significant digits.
                let reprinted: f64 = fmt_f(p[i]).parse().unwrap();
                assert_eq!(v[i], reprinted);
                assert!((v[i] - p[i]).abs() <= 1e-14 * p[i].abs().max(1.0));
            }
        }
        // Quad count and closed striction polyline.
        let faces = text.lines().filter(|l| l.starts_with("f ")).count();
        assert_eq!(faces, 15 * 4);
        let polyline = text.lines().find(|l| l.starts_with('l')).unwrap();
        let indices: Vec<usize> = polyline[1..]
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        assert_eq!(indices.len(), 17);
        assert_eq!(indices.first(), indices.last());
        assert_eq!(indices[0], 16 * 5 + 1);
    }
}
