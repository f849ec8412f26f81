use std::marker::PhantomData;

use super::{Group, ModelKind};
use crate::error::{PslError, Result};
use crate::scalar::Coord;

/// `Z^2` with coordinatewise addition; `x = (1,0)`, `y = (0,1)`.
#[derive(Clone, Debug, Default)]
pub struct FreeAbelian2<T> {
    _t: PhantomData<T>,
}

impl<T: Coord> FreeAbelian2<T> {
    pub fn new() -> Self {
        FreeAbelian2 { _t: PhantomData }
    }
}

impl<T: Coord> Group for FreeAbelian2<T> {
    type Elem = (T, T);

    fn kind(&self) -> ModelKind {
        ModelKind::FreeAbelian2
    }

    fn name(&self) -> String {
        "z2".into()
    }

    fn identity(&self) -> (T, T) {
        (T::zero(), T::zero())
    }

    fn multiply(&self, a: &(T, T), b: &(T, T)) -> (T, T) {
        (a.0.clone() + b.0.clone(), a.1.clone() + b.1.clone())
    }

    fn inverse(&self, a: &(T, T)) -> (T, T) {
        (-a.0.clone(), -a.1.clone())
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

/// Parses `n` comma-separated integers; `e` is the zero vector.
pub(crate) fn parse_coords<T: Coord>(s: &str, n: usize) -> Result<Vec<T>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s == "e" {
        return Ok(vec![T::zero(); n]);
    }
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(PslError::Parse(format!("expected {n} coordinates in {s:?}")));
    }
    parts
        .iter()
        .map(|p| p.parse::<T>().map_err(|_| PslError::Parse(format!("bad integer {p:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_ball() {
        let z = FreeAbelian2::<i64>::new();
        assert_eq!(z.inverse(&(3, -2)), (-3, 2));
        assert_eq!(super::super::standard_ball(&z, 1).len(), 5);
        assert_eq!(super::super::standard_ball(&z, 2).len(), 13);
        assert_eq!(z.parse_element("(3, -2)").unwrap(), (3, -2));
        assert!(z.parse_element("1,2,3").is_err());
    }
}
