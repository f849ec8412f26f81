use std::marker::PhantomData;

use super::lattice::parse_coords;
use super::{Group, ModelKind};
use crate::error::Result;
use crate::scalar::Coord;

/// The Klein bottle group on pairs `(m, n)` with
/// `(m1, n1)(m2, n2) = (m1 + (-1)^n1 m2, n1 + n2)`.
///
/// `x = (1,0)`, `y = (0,1)` satisfy `xyx = y`; `u = (0,1)`, `v = (1,1)`
/// satisfy `u^2 = v^2`.
#[derive(Clone, Debug, Default)]
pub struct KleinBottle<T> {
    _t: PhantomData<T>,
}

impl<T: Coord> KleinBottle<T> {
    pub fn new() -> Self {
        KleinBottle { _t: PhantomData }
    }

    pub fn u(&self) -> (T, T) {
        (T::zero(), T::one())
    }

    pub fn v(&self) -> (T, T) {
        (T::one(), T::one())
    }

    fn sign(n: &T) -> T {
        if n.is_even() {
            T::one()
        } else {
            -T::one()
        }
    }
}

impl<T: Coord> Group for KleinBottle<T> {
    type Elem = (T, T);

    fn kind(&self) -> ModelKind {
        ModelKind::KleinBottle
    }

    fn name(&self) -> String {
        "klein".into()
    }

    fn identity(&self) -> (T, T) {
        (T::zero(), T::zero())
    }

    fn multiply(&self, a: &(T, T), b: &(T, T)) -> (T, T) {
        (
            a.0.clone() + Self::sign(&a.1) * b.0.clone(),
            a.1.clone() + b.1.clone(),
        )
    }

    fn inverse(&self, a: &(T, T)) -> (T, T) {
        (-(Self::sign(&a.1) * a.0.clone()), -a.1.clone())
    }

    fn generators(&self) -> [(T, T); 2] {
        [(T::one(), T::zero()), (T::zero(), T::one())]
    }

    fn format(&self, a: &(T, T)) -> String {
        format!("{},{}", a.0, a.1)
    }

    fn parse_element(&self, s: &str) -> Result<(T, T)> {
        let c = parse_coords::<T>(s, 2)?;
        Ok((c[0].clone(), c[1].clone()))
    }
}
