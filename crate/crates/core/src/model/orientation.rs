use super::FieldVector;
use crate::error::invalid;
use crate::Result;

type Vec3 = [f64; 3];

const S3: f64 = 0.577_350_269_189_625_8; // 1/√3

/// The four ⟨111⟩ NV orientations of the diamond lattice; the first one is
/// the reference (aligned) class.
pub const NV_AXES: [Vec3; 4] = [[S3, S3, S3], [S3, -S3, -S3], [-S3, S3, -S3], [-S3, -S3, S3]];

fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn normalize(a: &Vec3) -> Option<Vec3> {
    let n = dot(a, a).sqrt();
    (n > 1e-300 && n.is_finite()).then(|| [a[0] / n, a[1] / n, a[2] / n])
}

/// Rotation taking unit vector `from` onto unit vector `to` (Rodrigues).
fn rotation_between(from: &Vec3, to: &Vec3) -> [Vec3; 3] {
    let v = cross(from, to);
    let c = dot(from, to);
    let id = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    if (1.0 + c).abs() < 1e-12 {
        // antiparallel: rotate by π around any axis perpendicular to `from`
        let trial = if from[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let k = normalize(&cross(from, &trial)).expect("non-degenerate");
        let mut r = id;
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] = 2.0 * k[i] * k[j] - id[i][j];
            }
        }
        return r;
    }
    let vx = [[0.0, -v[2], v[1]], [v[2], 0.0, -v[0]], [-v[1], v[0], 0.0]];
    let f = 1.0 / (1.0 + c);
    let mut r = id;
    for i in 0..3 {
        for j in 0..3 {
            let vx2: f64 = (0..3).map(|k| vx[i][k] * vx[k][j]).sum();
            r[i][j] += vx[i][j] + vx2 * f;
        }
    }
    r
}

fn apply(r: &[Vec3; 3], a: &Vec3) -> Vec3 {
    [dot(&r[0], a), dot(&r[1], a), dot(&r[2], a)]
}

/// Resolves a lab-frame field into the local frame of each of the four NV
/// orientation classes.
///
/// The tetrahedron of classes is rotated so that its first member points
/// along `axis`. In each class frame z is the N–V axis and x is the
/// projection of the crystal [001] direction onto the transverse plane.
/// Index 0 of the result is the class aligned with `axis`.
pub fn orientation_projections(b_lab: &FieldVector, axis: [f64; 3]) -> Result<Vec<FieldVector>> {
    let axis = normalize(&axis).ok_or_else(|| invalid("axis", "must have non-zero finite length"))?;
    if !b_lab.is_finite() {
        return Err(invalid("b_lab", "components must be finite"));
    }
    let r = rotation_between(&NV_AXES[0], &axis);
    let b = b_lab.as_array();

    Ok(NV_AXES
        .iter()
        .map(|n0| {
            let z = apply(&r, n0);
            let x0 = normalize(&[-n0[2] * n0[0], -n0[2] * n0[1], 1.0 - n0[2] * n0[2]]).expect("⟨111⟩ not parallel to [001]");
            let x = apply(&r, &x0);
            let y = cross(&z, &x);
            FieldVector::new(dot(&b, &x), dot(&b, &y), dot(&b, &z))
        })
        .collect())
}

/// Field of magnitude `b` (T) along the crystal (1,1,1) direction.
pub fn field_along_111(b: f64) -> FieldVector {
    FieldVector::new(b * S3, b * S3, b * S3)
}
