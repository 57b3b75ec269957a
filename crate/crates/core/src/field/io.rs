use std::io::Write;

use super::{BoundaryCurve, ScalarField};

/// Row-major `x,y,value` CSV with 17 significant digits.
pub fn write_field_csv(field: &ScalarField, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "x,y,value")?;
    let g = field.grid();
    for (idx, v) in field.values().iter().enumerate() {
        let [x, y] = g.point(idx);
        writeln!(out, "{x:.16e},{y:.16e},{v:.16e}")?;
    }
    Ok(())
}

/// `mx,my,len,nx,ny` CSV, one row per segment.
pub fn write_boundary_csv(curve: &BoundaryCurve, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "mx,my,len,nx,ny")?;
    for s in &curve.segments {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            s.midpoint[0], s.midpoint[1], s.length, s.normal[0], s.normal[1]
        )?;
    }
    Ok(())
}
