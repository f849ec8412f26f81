use super::{Group, ModelKind};
use crate::error::Result;
use crate::presentation::{Gen, Word};

/// The free group on `x`, `y`; elements are freely reduced words.
#[derive(Clone, Debug, Default)]
pub struct Free2;

impl Group for Free2 {
    type Elem = Word;

    fn kind(&self) -> ModelKind {
        ModelKind::Free2
    }

    fn name(&self) -> String {
        "free2".into()
    }

    fn identity(&self) -> Word {
        Word::identity()
    }

    fn multiply(&self, a: &Word, b: &Word) -> Word {
        a.mul(b)
    }

    fn inverse(&self, a: &Word) -> Word {
        a.inverse()
    }

    fn generators(&self) -> [Word; 2] {
        [Word::gen(Gen::X), Word::gen(Gen::Y)]
    }

    fn format(&self, a: &Word) -> String {
        a.to_string()
    }

    fn parse_element(&self, s: &str) -> Result<Word> {
        Word::parse(s)
    }

    fn eval(&self, w: &Word) -> Word {
        w.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::standard_ball;

    #[test]
    fn products_and_balls() {
        let f = Free2;
        let w = |s: &str| Word::parse(s).unwrap();
        assert_eq!(f.multiply(&w("x^2y"), &w("y^-1x")), w("x^3"));
        assert_eq!(f.inverse(&w("xY")), w("yX"));
        assert_eq!(standard_ball(&f, 2).len(), 17);
        assert_eq!(standard_ball(&f, 3).len(), 53);
    }
}
