//! 2D complex FFT on row-major `ny × nx` buffers.
//!
//! Convention used everywhere in the crate: the forward transform is
//! unnormalized, the inverse carries the full `1/(nx·ny)` factor.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::cell::RefCell;
use std::sync::Arc;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(len)
        } else {
            p.plan_fft_forward(len)
        }
    })
}

fn transform(data: &mut [Complex64], nx: usize, ny: usize, inverse: bool) {
    debug_assert_eq!(data.len(), nx * ny);
    let row = plan(nx, inverse);
    let col = plan(ny, inverse);
    let mut scratch = vec![
        Complex64::default();
        row.get_inplace_scratch_len()
            .max(col.get_inplace_scratch_len())
    ];
    row.process_with_scratch(data, &mut scratch);

    let mut t = vec![Complex64::default(); nx * ny];
    for iy in 0..ny {
        for ix in 0..nx {
            t[ix * ny + iy] = data[iy * nx + ix];
        }
    }
    col.process_with_scratch(&mut t, &mut scratch);
    for ix in 0..nx {
        for iy in 0..ny {
            data[iy * nx + ix] = t[ix * ny + iy];
        }
    }
}

pub(crate) fn forward(data: &mut [Complex64], nx: usize, ny: usize) {
    transform(data, nx, ny, false);
}

pub(crate) fn inverse(data: &mut [Complex64], nx: usize, ny: usize) {
    transform(data, nx, ny, true);
    let s = 1.0 / (nx * ny) as f64;
    for c in data.iter_mut() {
        *c *= s;
    }
}
