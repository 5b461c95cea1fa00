#![allow(dead_code)]

use astro_float::ctx::Context;
use astro_float::{BigFloat, Consts, RoundingMode};

pub const BITS: usize = 256;

pub fn ctx() -> Context {
    Context::new(BITS, RoundingMode::ToEven, Consts::new().expect("constant cache"), -100000, 100000)
}

pub fn big(x: f64) -> BigFloat {
    BigFloat::from_f64(x, BITS)
}

pub fn to_f64(x: &BigFloat) -> f64 {
    x.to_string().parse().expect("decimal")
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
}
