use crate::error::{Error, Result};

/// Full weighting: `coarse[j] = (fine[2j] + 2 fine[2j+1] + fine[2j+2]) / 4`.
pub fn restrict(fine: &[f64]) -> Result<Vec<f64>> {
    let mut coarse = vec![0.0; fine.len().saturating_sub(1) / 2];
    restrict_into(fine, &mut coarse)?;
    Ok(coarse)
}

pub fn restrict_into(fine: &[f64], coarse: &mut [f64]) -> Result<()> {
    if fine.len() < 3 || fine.len().is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "restriction needs an odd fine length >= 3, got {}",
            fine.len()
        )));
    }
    if coarse.len() != (fine.len() - 1) / 2 {
        return Err(Error::LengthMismatch {
            expected: (fine.len() - 1) / 2,
            actual: coarse.len(),
        });
    }
    for (c, w) in coarse.iter_mut().zip(fine.windows(3).step_by(2)) {
        *c = 0.25 * (w[0] + 2.0 * w[1] + w[2]);
    }
    Ok(())
}

/// Linear interpolation onto `2m + 1` points, zero Dirichlet ends.
pub fn prolong(coarse: &[f64]) -> Vec<f64> {
    let mut fine = vec![0.0; 2 * coarse.len() + 1];
    prolong_add(coarse, &mut fine, 0.0);
    fine
}

/// `fine += P coarse`.
pub fn prolong_into(coarse: &[f64], fine: &mut [f64]) -> Result<()> {
    if fine.len() != 2 * coarse.len() + 1 {
        return Err(Error::LengthMismatch {
            expected: 2 * coarse.len() + 1,
            actual: fine.len(),
        });
    }
    prolong_add(coarse, fine, 1.0);
    Ok(())
}

fn prolong_add(coarse: &[f64], fine: &mut [f64], keep: f64) {
    let m = coarse.len();
    for (i, f) in fine.iter_mut().enumerate() {
        let v = if i % 2 == 1 {
            coarse[i / 2]
        } else {
            let left = if i >= 2 { coarse[i / 2 - 1] } else { 0.0 };
            let right = if i / 2 < m { coarse[i / 2] } else { 0.0 };
            0.5 * (left + right)
        };
        *f = keep * *f + v;
    }
}
