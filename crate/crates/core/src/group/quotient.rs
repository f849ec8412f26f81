use std::sync::Arc;

use super::{Group, ModelKind};
use crate::error::{PslError, Result};
use crate::presentation::rewriting::{complete_any, KbCaps, RewritingSystem};
use crate::presentation::{Gen, Presentation, Word};

/// `<x, y | relators>` with equality decided by a confluent rewriting system.
/// Elements are irreducible words.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    presentation: Presentation,
    system: Arc<RewritingSystem>,
}

impl QuotientGroup {
    /// Wraps a completed system; refuses a non-confluent one.
    pub fn from_system(presentation: Presentation, system: RewritingSystem) -> Result<QuotientGroup> {
        if !system.confluent {
            return Err(PslError::Undecidable(format!(
                "completion of {presentation} is inconclusive: {} rules after {} passes",
                system.rule_count(),
                system.passes
            )));
        }
        Ok(QuotientGroup { presentation, system: Arc::new(system) })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn system(&self) -> &RewritingSystem {
        &self.system
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        self.system.reduce(w)
    }
}

/// Completes `p` and returns the quotient model, or `Undecidable` when the
/// caps are reached first.
pub fn instantiate_quotient(p: &Presentation, max_rules: usize, max_passes: usize) -> Result<QuotientGroup> {
    let system = complete_any(p, KbCaps { max_rules, max_passes });
    QuotientGroup::from_system(p.clone(), system)
}

impl Group for QuotientGroup {
    type Elem = Word;

    fn kind(&self) -> ModelKind {
        ModelKind::RewritingQuotient
    }

    fn name(&self) -> String {
        format!("quotient{}", self.presentation)
    }

    fn identity(&self) -> Word {
        Word::identity()
    }

    fn multiply(&self, a: &Word, b: &Word) -> Word {
        self.system.reduce(&a.mul(b))
    }

    fn inverse(&self, a: &Word) -> Word {
        self.system.reduce(&a.inverse())
    }

    fn generators(&self) -> [Word; 2] {
        [self.normal_form(&Word::gen(Gen::X)), self.normal_form(&Word::gen(Gen::Y))]
    }

    fn format(&self, a: &Word) -> String {
        a.to_string()
    }

    fn parse_element(&self, s: &str) -> Result<Word> {
        Ok(self.normal_form(&Word::parse(s)?))
    }

    fn eval(&self, w: &Word) -> Word {
        self.normal_form(w)
    }
}
