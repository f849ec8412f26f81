use std::marker::PhantomData;

use super::lattice::parse_coords;
use super::{Group, ModelKind};
use crate::error::Result;
use crate::scalar::Coord;

/// Upper unitriangular integer matrices `[[1,a,c],[0,1,b],[0,0,1]]` stored as
/// `(a, b, c)`; `x = (1,0,0)`, `y = (0,1,0)`, `[x, y] = (0,0,1)` is central.
#[derive(Clone, Debug, Default)]
pub struct Heisenberg<T> {
    _t: PhantomData<T>,
}

impl<T: Coord> Heisenberg<T> {
    pub fn new() -> Self {
        Heisenberg { _t: PhantomData }
    }
}

impl<T: Coord> Group for Heisenberg<T> {
    type Elem = (T, T, T);

    fn kind(&self) -> ModelKind {
        ModelKind::Heisenberg
    }

    fn name(&self) -> String {
        "heisenberg".into()
    }

    fn identity(&self) -> (T, T, T) {
        (T::zero(), T::zero(), T::zero())
    }

    fn multiply(&self, p: &(T, T, T), q: &(T, T, T)) -> (T, T, T) {
        (
            p.0.clone() + q.0.clone(),
            p.1.clone() + q.1.clone(),
            p.2.clone() + q.2.clone() + p.0.clone() * q.1.clone(),
        )
    }

    fn inverse(&self, p: &(T, T, T)) -> (T, T, T) {
        (-p.0.clone(), -p.1.clone(), p.0.clone() * p.1.clone() - p.2.clone())
    }

    fn generators(&self) -> [(T, T, T); 2] {
        [(T::one(), T::zero(), T::zero()), (T::zero(), T::one(), T::zero())]
    }

    fn format(&self, a: &(T, T, T)) -> String {
        format!("{},{},{}", a.0, a.1, a.2)
    }

    fn parse_element(&self, s: &str) -> Result<(T, T, T)> {
        let c = parse_coords::<T>(s, 3)?;
        Ok((c[0].clone(), c[1].clone(), c[2].clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Word;

    #[test]
    fn commutator_is_central_and_nontrivial() {
        let h = Heisenberg::<i64>::new();
        let c = h.eval(&Word::parse("xyXY").unwrap());
        assert_eq!(c, (0, 0, 1));
        for g in crate::group::standard_ball(&h, 3) {
            assert!(h.commutes(&c, &g));
        }
    }
}
