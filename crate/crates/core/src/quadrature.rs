//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

// Kronrod abscissae; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
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

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Kronrod estimate on `[a, b]` with `|K − G|` as error estimate.
pub fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let kronrod = kronrod * half;
    let gauss = gauss * half;
    (kronrod, (kronrod - gauss).norm())
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Why [`integrate_panels`] gave up.
#[derive(Debug, Clone, PartialEq)]
pub enum QuadratureFailure {
    DepthExceeded { a: f64, b: f64, depth: u32 },
    SegmentLimit { segments: usize, err: f64 },
}

/// Integrates over the consecutive panels delimited by `breaks`, bisecting the
/// worst segment until the summed error estimate is below `tol`.
pub fn integrate_panels<F: Fn(f64) -> Complex64>(
    f: &F,
    breaks: &[f64],
    tol: f64,
    max_depth: u32,
    max_segments: usize,
) -> Result<(Complex64, f64), QuadratureFailure> {
    let mut heap = BinaryHeap::with_capacity(breaks.len());
    let mut total_err = 0.0;
    for w in breaks.windows(2) {
        let (value, err) = gk15(f, w[0], w[1]);
        total_err += err;
        heap.push(Segment {
            a: w[0],
            b: w[1],
            value,
            err,
            depth: 0,
        });
    }

    while total_err > tol {
        if heap.len() >= max_segments {
            return Err(QuadratureFailure::SegmentLimit {
                segments: heap.len(),
                err: total_err,
            });
        }
        let Some(worst) = heap.pop() else { break };
        if worst.depth >= max_depth {
            return Err(QuadratureFailure::DepthExceeded {
                a: worst.a,
                b: worst.b,
                depth: worst.depth,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le) = gk15(f, worst.a, mid);
        let (rv, re) = gk15(f, mid, worst.b);
        total_err += le + re - worst.err;
        for (a, b, value, err) in [(worst.a, mid, lv, le), (mid, worst.b, rv, re)] {
            heap.push(Segment {
                a,
                b,
                value,
                err,
                depth: worst.depth + 1,
            });
        }
        if worst.err > 0.5 * total_err {
            // refresh the running sum after large cancellations
            total_err = heap.iter().map(|s| s.err).sum();
        }
    }

    let mut segments = heap.into_vec();
    segments.sort_by(|l, r| l.a.total_cmp(&r.a));
    let value = segments.iter().map(|s| s.value).sum();
    let err = segments.iter().map(|s| s.err).sum();
    Ok((value, err))
}
