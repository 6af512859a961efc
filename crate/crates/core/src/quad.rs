//! Adaptive one-dimensional quadrature (15-point Gauss–Kronrod).
//!
//! The adaptive driver bisects the interval with the largest Kronrod error
//! estimate until the summed error meets the requested tolerance. Integrands
//! in this crate are smooth on the open interval with at worst a boundary
//! layer, which plain bisection resolves geometrically.

use crate::error::{CoreError, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// One GK15 panel: returns (integral, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);

    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..3 {
        let x = half * XGK[2 * j + 1];
        let fsum = f(center - x) + f(center + x);
        gauss += WG[j] * fsum;
        kronrod += WGK[2 * j + 1] * fsum;
    }
    for j in 0..4 {
        let x = half * XGK[2 * j];
        let fsum = f(center - x) + f(center + x);
        kronrod += WGK[2 * j] * fsum;
    }
    let err = ((kronrod - gauss) * half).abs();
    (kronrod * half, err)
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub panels: usize,
}

/// Integrate `f` over `[a, b]` to relative tolerance `rel_tol`.
///
/// `abs_floor` caps the absolute error target from below so that integrals
/// whose true value is ~0 still terminate.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_floor: f64,
) -> Result<QuadResult> {
    const MAX_PANELS: usize = 4096;
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(CoreError::Domain(format!(
            "bad integration bounds [{a}, {b}]"
        )));
    }

    // (error, a, b, value), worst panel kept at the end.
    let mut panels: Vec<(f64, f64, f64, f64)> = Vec::new();
    let (v, e) = gk15(&f, a, b);
    panels.push((e, a, b, v));

    loop {
        let total_value: f64 = panels.iter().map(|p| p.3).sum();
        let total_err: f64 = panels.iter().map(|p| p.0).sum();
        let target = (rel_tol * total_value.abs()).max(abs_floor);
        if total_err <= target {
            return Ok(QuadResult {
                value: total_value,
                abs_error: total_err,
                panels: panels.len(),
            });
        }
        if panels.len() >= MAX_PANELS {
            return Err(CoreError::Numerical(format!(
                "quadrature did not converge on [{a}, {b}]: {} panels, \
                 error {total_err:.3e} > target {target:.3e}",
                panels.len()
            )));
        }
        // Split the panel with the largest error estimate.
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .0.total_cmp(&y.1 .0))
            .map(|(i, _)| i)
            .unwrap();
        let (_, pa, pb, _) = panels.swap_remove(worst);
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            return Err(CoreError::Numerical(format!(
                "quadrature interval collapsed at [{pa}, {pb}]"
            )));
        }
        let (v1, e1) = gk15(&f, pa, mid);
        let (v2, e2) = gk15(&f, mid, pb);
        panels.push((e1, pa, mid, v1));
        panels.push((e2, mid, pb, v2));
    }
}
