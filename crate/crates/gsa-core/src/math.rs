//! Scalar float routines, dispatched to `std` or `libm`.

#[cfg(feature = "std")]
mod imp {
    pub fn exp(x: f64) -> f64 {
        x.exp()
    }
    pub fn ln_1p(x: f64) -> f64 {
        x.ln_1p()
    }
    pub fn sqrt(x: f64) -> f64 {
        x.sqrt()
    }
    pub fn sin(x: f64) -> f64 {
        x.sin()
    }
    pub fn cos(x: f64) -> f64 {
        x.cos()
    }
    pub fn atan2(y: f64, x: f64) -> f64 {
        y.atan2(x)
    }
    pub fn round(x: f64) -> f64 {
        x.round()
    }
    pub fn ceil(x: f64) -> f64 {
        x.ceil()
    }
    pub fn exp_m1(x: f64) -> f64 {
        x.exp_m1()
    }
}

#[cfg(all(not(feature = "std"), feature = "libm"))]
mod imp {
    pub fn exp(x: f64) -> f64 {
        libm::exp(x)
    }
    pub fn ln_1p(x: f64) -> f64 {
        libm::log1p(x)
    }
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }
    pub fn sin(x: f64) -> f64 {
        libm::sin(x)
    }
    pub fn cos(x: f64) -> f64 {
        libm::cos(x)
    }
    pub fn atan2(y: f64, x: f64) -> f64 {
        libm::atan2(y, x)
    }
    pub fn round(x: f64) -> f64 {
        libm::round(x)
    }
    pub fn ceil(x: f64) -> f64 {
        libm::ceil(x)
    }
    pub fn exp_m1(x: f64) -> f64 {
        libm::expm1(x)
    }
}

pub use imp::*;
